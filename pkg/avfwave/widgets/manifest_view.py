"""A tree view of a study's run manifest."""

##############################################################################
# Backward compatibility.
from __future__ import annotations

##############################################################################
# Python imports.
import json
from functools import singledispatchmethod
from pathlib import Path
from typing import Any, ClassVar, Dict, NamedTuple, Optional

##############################################################################
# Rich imports.
from rich.text import Text

##############################################################################
# Textual imports.
from textual import on
from textual.binding import Binding
from textual.events import Mount
from textual.widgets import Tree
from textual.widgets.tree import TreeNode

##############################################################################
# Local imports.
from ..harness.output import RunManifest

##############################################################################
ManifestNode = TreeNode[Any]


##############################################################################
class ManifestEntry(NamedTuple):
    """The data attached to a node of the manifest tree."""

    key: str
    """The key (or list index) of the entry."""

    value: Any
    """The value held under the key."""


##############################################################################
class ManifestView(Tree[Any]):
    """The tree view of a run manifest."""

    COMPONENT_CLASSES: ClassVar[set[str]] = Tree.COMPONENT_CLASSES | {
        "manifestview--value"
    }
    """Classes that can be used to style the manifest view."""

    DEFAULT_CSS = """
    .manifestview--value {
        text-style: italic;
        color: #888;
    }
    """
    """The default CSS for the component."""

    BINDINGS = [
        Binding("ctrl+a", "toggle_all", "Toggle all"),
    ]
    """The bindings for the control."""

    def __init__(self, manifest: Path, *args: Any, **kwargs: Any) -> None:
        """Initialise the view of the given manifest.

        Args:
            manifest: The path of the manifest to show; a directory shows
                nothing until a manifest is picked.
        """
        self._manifest_path = manifest
        self._manifest: Optional[Dict[str, Any]] = None
        if not manifest.is_dir():
            self._load(manifest)
        kwargs["label"] = manifest.name
        kwargs["data"] = self._manifest_path
        super().__init__(*args, **kwargs)

    @on(Mount)
    def _populate_tree(self) -> None:
        """Populate the tree with the manifest's content."""
        if self._manifest is not None:
            self.add(self._manifest, self.root)
            self.select_node(self.root)

    def _load(self, manifest: Path) -> None:
        """Load the manifest.

        Args:
            manifest: The manifest to load.
        """
        try:
            self._manifest = json.loads(manifest.read_text())
        except (OSError, json.JSONDecodeError):
            self._manifest = None

    def reset(self, manifest: Path) -> None:
        """Reset the display to show a new manifest.

        Args:
            manifest: The new manifest to show.
        """
        if not manifest.is_dir():
            self._manifest_path = manifest
            self._load(manifest)
            super().reset(manifest.name, manifest)
            self._populate_tree()

    @property
    def manifest_path(self) -> Path:
        """Path: The path of the manifest being shown."""
        return self._manifest_path

    @property
    def manifest(self) -> Optional[RunManifest]:
        """Optional[RunManifest]: The manifest being shown, if it loaded."""
        if self._manifest is None or "study" not in self._manifest:
            return None
        return RunManifest.read(self._manifest_path)

    @singledispatchmethod
    def describe(self, value: Any) -> str:
        """Describe a leaf value for display.

        Args:
            value: The value to describe.

        Returns:
            The text to show for it.
        """
        return repr(value)

    @describe.register
    def _(self, value: float) -> str:
        return f"{value:.6g}"

    @describe.register
    def _(self, value: bool) -> str:
        return "true" if value else "false"

    @describe.register(type(None))
    def _(self, value: None) -> str:
        return "null"

    def _label(self, key: str, value: Any) -> Text:
        """Make the label for a keyed leaf.

        Args:
            key: The key of the entry.
            value: The value of the entry.

        Returns:
            The label.
        """
        (shown := Text(self.describe(value))).stylize(
            self.get_component_rich_style("manifestview--value", partial=True)
        )
        return Text(f"{key} = ") + shown

    def _attach_entry(self, key: str, value: Any, to_node: ManifestNode) -> None:
        """Attach one keyed entry under a node.

        Args:
            key: The key of the entry.
            value: The value of the entry.
            to_node: The node to attach to.
        """
        entry = ManifestEntry(key, value)
        if isinstance(value, (dict, list)) and value:
            self.add(value, to_node.add(key, data=entry))
        elif isinstance(value, (dict, list)):
            to_node.add_leaf(f"{key} (empty)", data=entry)
        else:
            to_node.add_leaf(self._label(key, value), data=entry)

    @singledispatchmethod
    def add(self, item: Any, to_node: ManifestNode) -> None:
        """Add an entry to the tree.

        Args:
            item: The manifest entry to add.
            to_node: The node to add to.
        """
        to_node.add_leaf(self.describe(item), data=ManifestEntry("", item))

    @add.register
    def _(self, item: dict, to_node: ManifestNode) -> None:
        """Add a table of the manifest to the tree.

        Args:
            item: The table to add.
            to_node: The node to add to.
        """
        for key, value in item.items():
            self._attach_entry(str(key), value, to_node)

    @add.register
    def _(self, item: list, to_node: ManifestNode) -> None:
        """Add a list from the manifest to the tree.

        Args:
            item: The list to add.
            to_node: The node to add to.
        """
        for index, value in enumerate(item):
            self._attach_entry(f"[{index}]", value, to_node)

    def action_toggle_all(self) -> None:
        """Toggle all the nodes from the selected node down."""
        if self.cursor_node is not None:
            self.cursor_node.toggle_all()


### manifest_view.py ends here
