"""Writing study results: CSV tables and the run manifest."""

##############################################################################
# Backward compatibility.
from __future__ import annotations

##############################################################################
# Python imports.
import csv
import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Final, Iterable, Sequence

##############################################################################
# Local imports.
from .. import __version__

##############################################################################
log = logging.getLogger(__name__)

MANIFEST_NAME: Final = "manifest.json"
"""The file name the run manifest is written under."""


##############################################################################
def format_number(value: float) -> str:
    """Format a number the way every CSV cell is written.

    Args:
        value: The value to format.

    Returns:
        The value with 17 significant digits.
    """
    return f"{value:.17g}"


##############################################################################
def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[float]]) -> Path:
    """Write a table of numbers.

    Args:
        path: Where to write.
        header: The column names.
        rows: The rows of numbers.

    Returns:
        The path written to.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as target:
        writer = csv.writer(target, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [cell if isinstance(cell, str) else format_number(cell) for cell in row]
            )
    log.info("Wrote %s", path)
    return path


##############################################################################
@dataclass
class RunManifest:
    """Everything needed to understand and rerun a study."""

    study: str
    """The name of the study."""

    config: Dict[str, Any]
    """The fully resolved configuration."""

    version: str = __version__
    """The version of avfwave that produced the run."""

    derived: Dict[str, Any] = field(default_factory=dict)
    """Quantities derived by the study: traces, slopes, intervals."""

    outputs: Dict[str, str] = field(default_factory=dict)
    """The files the study wrote, by role."""

    def write(self, directory: Path) -> Path:
        """Write the manifest into a run directory.

        Args:
            directory: The run directory.

        Returns:
            The path of the manifest.
        """
        directory.mkdir(parents=True, exist_ok=True)
        target = directory / MANIFEST_NAME
        target.write_text(json.dumps(asdict(self), indent=2, sort_keys=True) + "\n")
        log.info("Wrote %s", target)
        return target

    @classmethod
    def read(cls, path: Path) -> RunManifest:
        """Read a manifest back in.

        Args:
            path: The manifest file.

        Returns:
            The manifest.
        """
        data = json.loads(Path(path).read_text())
        return cls(
            study=data["study"],
            config=data["config"],
            version=data.get("version", "unknown"),
            derived=data.get("derived", {}),
            outputs=data.get("outputs", {}),
        )


### output.py ends here
