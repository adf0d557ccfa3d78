"""The widgets used to browse study output."""

##############################################################################
# Import the widgets to make them easier to get at.
from .entry_info import EntryInfo
from .manifest_view import ManifestEntry, ManifestNode, ManifestView
from .study_table import StudyTable

##############################################################################
# Export the widgets.
__all__ = ["EntryInfo", "ManifestEntry", "ManifestNode", "ManifestView", "StudyTable"]

### __init__.py ends here
