"""Bundled pictures, polynomials and lattices for the printed examples."""

from __future__ import annotations

import os
from importlib import resources


def path(name: str) -> str:
    """A user path if it exists, otherwise the bundled file of that name."""
    if os.path.exists(name):
        return name
    bundled = resources.files(__name__).joinpath(os.path.basename(name))
    if bundled.is_file():
        return str(bundled)
    raise FileNotFoundError(name)


def read(name: str) -> str:
    with open(path(name)) as fh:
        return fh.read()


def read_joined(name: str) -> str:
    """File contents with comments dropped and lines joined by spaces."""
    lines = [ln.split("#", 1)[0].strip() for ln in read(name).splitlines()]
    return " ".join(ln for ln in lines if ln)
