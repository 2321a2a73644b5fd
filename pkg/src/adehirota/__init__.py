"""Exact ADE hierarchy coefficients, principal vertex operators and Hirota checks."""
from importlib import resources

__version__ = "0.1.0"


def schema_path(name: str):
    """Path-like handle to a shipped JSON schema, e.g. ``schema_path("hirota_residual")``."""
    return resources.files(__name__) / "schemas" / f"{name}.schema.json"
