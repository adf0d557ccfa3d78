"""The Textual application for browsing study output."""

##############################################################################
# Backward compatibility.
from __future__ import annotations

##############################################################################
# Python imports.
from pathlib import Path
from typing import Any

##############################################################################
# Textual imports.
from textual.app import App

##############################################################################
# Local imports.
from .. import __version__
from .screens import MainDisplay


##############################################################################
class RunViewer(App[None]):
    """Main Textual application class."""

    TITLE = "avfwave"
    """The main title of the app."""

    SUB_TITLE = f"A study results viewer ({__version__})"
    """The sub title of the app."""

    def __init__(self, target: Path, *args: Any, **kwargs: Any) -> None:
        """Initialise the app.

        Args:
            target: The manifest or run directory to show.
        """
        super().__init__(*args, **kwargs)
        self._target = target

    def on_mount(self) -> None:
        """Set up the application on startup."""
        self.push_screen(MainDisplay(self._target))


### viewer.py ends here
