"""Access to the reference data files shipped with the package.

``SEDGEO_GOLDEN_DIR`` points the loaders at a different directory, which is
how the fault-injection tests swap in corrupted copies.
"""

from __future__ import annotations

import hashlib
import os
from pathlib import Path

ENV_VAR = "SEDGEO_GOLDEN_DIR"
FILES = ("table1.txt", "fr_poly.txt", "cert_r0.txt", "cert_r49.txt")

_PACKAGED = Path(__file__).resolve().parent / "golden"


def golden_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    return Path(override) if override else _PACKAGED


def packaged_dir() -> Path:
    return _PACKAGED


def read_text(name: str) -> str:
    if name not in FILES:
        raise KeyError(f"unknown golden file {name!r}")
    return (golden_dir() / name).read_text(encoding="utf-8")


def sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def data_lines(text: str) -> list[str]:
    """Non-empty lines that are not ``#`` comments, stripped."""
    return [s for s in (line.strip() for line in text.splitlines()) if s and not s.startswith("#")]
