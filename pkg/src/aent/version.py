"""Single source for the package version, importable without cycles."""

__version__ = "0.1.0"
