"""The avfwave command line tool and its results viewer."""

### __init__.py ends here
