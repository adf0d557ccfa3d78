"""Main entry point when running the package."""

##############################################################################
# Local imports.
from .app.avfwave import main

##############################################################################
# If we're being run as main...
if __name__ == "__main__":
    main()

### __main__.py ends here
