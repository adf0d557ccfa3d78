"""Provides a widget for displaying where a manifest entry sits and what it holds."""

##############################################################################
# Backward compatibility.
from __future__ import annotations

##############################################################################
# Python imports.
from pathlib import Path
from typing import Iterator

##############################################################################
# Textual imports.
from textual.app import ComposeResult
from textual.containers import Horizontal
from textual.widgets import Static

##############################################################################
# Local imports.
from .manifest_view import ManifestEntry, ManifestNode


##############################################################################
class EntryInfo(Horizontal):
    """Displays the path to, and the size of, a manifest entry."""

    DEFAULT_CSS = """
    EntryInfo {
        background: $panel;
        padding-left: 1;
        height: 1;
        border: none;
    }

    EntryInfo Static#--entry-path {
        width: 1fr;
    }

    EntryInfo Static#--entry-size {
        dock: right;
        width: 20;
    }
    """

    def compose(self) -> ComposeResult:
        """Compose the information bar.

        Returns:
            The result of composing the bar.
        """
        yield Static(id="--entry-path")
        yield Static(id="--entry-size")

    @classmethod
    def path_from(cls, node: ManifestNode) -> Iterator[str]:
        """Generate the path to the root from the given node.

        Args:
            node: The manifest node to get the path from.

        Yields:
            The text for the node.
        """
        if isinstance(node.data, ManifestEntry):
            if node.data.key:
                yield node.data.key
        elif isinstance(node.data, Path):
            yield node.data.name
        elif node.data is not None:
            yield str(node.data)
        if node.parent is not None:
            yield from cls.path_from(node.parent)

    @staticmethod
    def size_of(node: ManifestNode) -> str:
        """Describe how much a node holds.

        Args:
            node: The node to describe.

        Returns:
            A count of items for collections, otherwise nothing.
        """
        if isinstance(node.data, ManifestEntry) and isinstance(
            value := node.data.value, (dict, list)
        ):
            return f"{len(value)} item{'' if len(value) == 1 else 's'}"
        return ""

    def show(self, node: ManifestNode) -> None:
        """Show some details for the given node.

        Args:
            node: The node to show the data for.
        """
        self.query_one("#--entry-size", Static).update(self.size_of(node))
        self.query_one("#--entry-path", Static).update(
            " > ".join(reversed(list(self.path_from(node))))
        )


### entry_info.py ends here
