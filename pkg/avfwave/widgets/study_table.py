"""Provides a widget for displaying the CSV table a study wrote."""

##############################################################################
# Backward compatibility.
from __future__ import annotations

##############################################################################
# Python imports.
import csv
from pathlib import Path
from typing import Any, List, Optional

##############################################################################
# Textual imports.
from textual.widgets import DataTable


##############################################################################
class StudyTable(DataTable[str]):
    """Displays the rows of a study's CSV output."""

    DEFAULT_CSS = """
    StudyTable {
        height: 1fr;
        border: solid $primary-background-lighten-2;
        background: $panel;
    }

    StudyTable:focus {
        border: double $primary-lighten-2;
    }
    """

    def __init__(self, table: Optional[Path] = None, *args: Any, **kwargs: Any) -> None:
        """Initialise the table.

        Args:
            table (optional): The CSV file to show.
        """
        super().__init__(*args, zebra_stripes=True, **kwargs)
        self._table_file = table

    @property
    def table_file(self) -> Optional[Path]:
        """Optional[Path]: The CSV file being shown."""
        return self._table_file

    @staticmethod
    def read(table: Path) -> List[List[str]]:
        """Read a CSV file.

        Args:
            table: The file to read.

        Returns:
            The rows of the file, header first; empty if it can't be read.
        """
        try:
            with table.open(newline="", encoding="utf-8") as source:
                return list(csv.reader(source))
        except OSError:
            return []

    def _populate(self) -> None:
        """Repopulate the table from the current file."""
        self.clear(columns=True)
        if self._table_file is None or not self._table_file.is_file():
            return
        if rows := self.read(self._table_file):
            self.add_columns(*rows[0])
            self.add_rows(rows[1:])

    def show_file(self, new_file: Optional[Path]) -> None:
        """Show a new CSV file in the widget.

        Args:
            new_file: The new file to show, or `None` to show nothing.
        """
        self._table_file = new_file
        self._populate()

    def on_mount(self) -> None:
        """Configure the widget after the DOM is up and going."""
        self._populate()


### study_table.py ends here
