"""Main screen for the results viewer."""

##############################################################################
# Backward compatibility.
from __future__ import annotations

##############################################################################
# Python imports.
from pathlib import Path
from typing import Any, Optional

##############################################################################
# Textual imports.
from textual.app import ComposeResult
from textual.binding import Binding
from textual.containers import Horizontal, Vertical
from textual.reactive import reactive
from textual.screen import Screen
from textual.widgets import Footer, Header, Tree

##############################################################################
# Other imports.
from textual_fspicker import FileOpen, Filters

##############################################################################
# Local imports.
from ...harness.output import MANIFEST_NAME
from ...widgets import EntryInfo, ManifestNode, ManifestView, StudyTable


##############################################################################
def manifest_in(target: Path) -> Path:
    """Work out which manifest a command line target means.

    Args:
        target: A manifest, or a run directory.

    Returns:
        The manifest in the run directory if there is one, else the target.
    """
    if target.is_dir() and (candidate := target / MANIFEST_NAME).is_file():
        return candidate
    return target


##############################################################################
class MainDisplay(Screen):
    """The main display of the viewer."""

    DEFAULT_CSS = """
    Vertical {
        width: 1fr;
    }

    ManifestView {
        border: solid $primary-background-lighten-2;
        width: 10fr;
    }

    ManifestView:focus-within {
        border: double $primary-lighten-2;
    }

    StudyTable {
        width: 10fr;
    }
    """

    BINDINGS = [
        Binding("ctrl+left", "shrink_left", "", show=False),
        Binding("ctrl+right", "shrink_right", "", show=False),
        Binding("ctrl+o", "open_new", "Open"),
        Binding("ctrl+d", "app.toggle_dark", "Light/Dark"),
        Binding("ctrl+q", "app.quit", "Quit"),
    ]
    """The keys the viewer responds to."""

    tree_width: reactive[int] = reactive(10, init=False)
    """The relative width of the manifest pane."""

    def __init__(self, target: Path, *args: Any, **kwargs: Any) -> None:
        """Initialise the main screen.

        Args:
            target: The manifest or run directory to show.
        """
        super().__init__(*args, **kwargs)
        self._manifest = manifest_in(target)

    @property
    def manifest_path(self) -> Path:
        """Path: The manifest (or directory) being shown."""
        return self._manifest

    def table_for(self, manifest: Path) -> Optional[Path]:
        """Find the CSV table a manifest refers to.

        Args:
            manifest: The manifest.

        Returns:
            The table, if the manifest names one.
        """
        if manifest.is_dir():
            return None
        if loaded := self.query_one(ManifestView).manifest:
            if csv_name := loaded.outputs.get("csv"):
                return manifest.parent / csv_name
        return None

    def compose(self) -> ComposeResult:
        """Compose the main screen.

        Returns:
            The result of composing the screen.
        """
        yield Header()
        with Vertical():
            with Horizontal():
                yield ManifestView(self._manifest, id="manifest-view")
                yield StudyTable()
            yield EntryInfo()
        yield Footer()

    def _init_tree(self) -> None:
        """Expand and focus the manifest tree, and show its study table."""
        view = self.query_one(ManifestView)
        view.root.expand()
        view.focus()
        self.query_one(EntryInfo).show(view.root)
        self.query_one(StudyTable).show_file(self.table_for(self._manifest))

    def on_mount(self) -> None:
        """Load the manifest, or ask for one, once the screen is mounted."""
        if self._manifest.is_dir():
            self.action_open_new()
        else:
            self._init_tree()

    def on_tree_node_highlighted(self, event: Tree.NodeHighlighted[Any]) -> None:
        """React to a node in the tree being highlighted.

        Args:
            event: The highlight event.
        """
        if event.node.tree.id == "manifest-view":
            self.show_entry(event.node)

    def show_entry(self, node: ManifestNode) -> None:
        """Update the information bar for the given node.

        Args:
            node: The node to describe.
        """
        self.query_one(EntryInfo).show(node)

    async def open_file(self, new_file: Path | None) -> None:
        """Open a new manifest for viewing.

        Args:
            new_file: The new manifest to view.
        """
        if new_file is not None:
            self._manifest = new_file
            self.query_one(ManifestView).reset(new_file)
            self._init_tree()
        elif self._manifest.is_dir():
            # Backing out of the picker with nothing loaded leaves nothing
            # to show.
            self.app.exit()

    def action_open_new(self) -> None:
        """Open a new manifest for viewing."""
        self.app.push_screen(
            FileOpen(
                self._manifest if self._manifest.is_dir() else self._manifest.parent,
                filters=Filters(
                    ("Run manifest", lambda p: p.name == MANIFEST_NAME),
                    ("JSON", lambda p: p.suffix.lower() == ".json"),
                    ("Any", lambda _: True),
                ),
                must_exist=True,
            ),
            callback=self.open_file,
        )

    def watch_tree_width(self) -> None:
        """React to the manifest view width being changed by the user."""
        self.query_one(ManifestView).styles.width = f"{self.tree_width}fr"
        self.query_one(StudyTable).styles.width = f"{10 + (10 - self.tree_width)}fr"

    def action_shrink_left(self) -> None:
        """Give the study table more room."""
        if self.tree_width > 2:
            self.tree_width -= 1

    def action_shrink_right(self) -> None:
        """Give the manifest tree more room."""
        if self.tree_width < 18:
            self.tree_width += 1


### main.py ends here
