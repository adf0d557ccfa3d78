"""A splitting AVF solver for the stochastic cubic wave equation, plus a study harness and results viewer."""

######################################################################
# Main app information.
__author__ = "The avf-wave developers"
__copyright__ = "Copyright 2026, The avf-wave developers"
__credits__ = ["The avf-wave developers"]
__maintainer__ = "The avf-wave developers"
__email__ = "avf-wave@users.noreply.github.com"
__version__ = "0.1.0"
__licence__ = "MIT"

### __init__.py ends here
