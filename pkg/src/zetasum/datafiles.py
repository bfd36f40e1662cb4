"""Access to the field data files shipped with the package."""

from __future__ import annotations

from importlib import resources

from .nf_core import FieldData, parse_field


def bundled_field_names() -> list[str]:
    root = resources.files("zetasum.data")
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def bundled_field_path(name: str):
    """Filesystem path of a bundled field file (name without .json)."""
    root = resources.files("zetasum.data")
    p = root / f"{name}.json"
    if not p.is_file():
        raise FileNotFoundError(f"no bundled field {name!r}; have {bundled_field_names()}")
    return p


def load_bundled(name: str) -> FieldData:
    return parse_field(bundled_field_path(name).read_text(encoding="utf-8"))


def resolve_field_argument(arg: str) -> FieldData:
    """CLI helper: treat the argument as a path if it exists, else as a
    bundled field name."""
    import os

    if os.path.exists(arg):
        with open(arg, "r", encoding="utf-8") as fh:
            return parse_field(fh.read())
    return load_bundled(arg)
