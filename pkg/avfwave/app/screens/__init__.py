"""Screens that make up the results viewer."""

##############################################################################
# Import screens for easier access.
from .main import MainDisplay

##############################################################################
# Export the screens.
__all__ = ["MainDisplay"]

### __init__.py ends here
