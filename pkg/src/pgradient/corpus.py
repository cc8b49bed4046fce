"""The presentations shipped with the package, and path-or-name loading."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .words import Presentation, parse_presentation

# finite groups used by the rank-gradient and p-gradient suites
FINITE_CORPUS = ("z2", "z3", "z4", "z6", "z8", "s3", "v4", "d4", "q8", "z2z4", "a4", "s3z2", "s4", "s4z2")


def names() -> list[str]:
    return sorted(f.name[:-4] for f in resources.files(__package__).joinpath("data").iterdir()
                  if f.name.endswith(".grp"))


def read_text(name_or_path: str) -> str:
    """File contents for a path, or for a bundled name such as ``f2`` or ``f2.grp``."""
    path = Path(name_or_path)
    if path.is_file():
        return path.read_text()
    stem = path.name[:-4] if path.name.endswith(".grp") else path.name
    res = resources.files(__package__).joinpath("data", stem + ".grp")
    if res.is_file():
        return res.read_text()
    raise FileNotFoundError(f"{name_or_path}: no such file or bundled presentation")


def load(name_or_path: str) -> Presentation:
    return parse_presentation(read_text(name_or_path))
