"""Single source of the build identifier embedded in artifact file headers."""

__version__ = "0.1.0"

BUILD_ID = f"paramine {__version__}"
