"""Setup file for the avf-wave package."""

##############################################################################
# Python imports.
from setuptools import setup

##############################################################################
# Perform the setup.
if __name__ == "__main__":
    setup()

### setup.py ends here
