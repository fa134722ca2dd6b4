"""The curated categories every sweep runs over."""

from __future__ import annotations

import json
import os
from pathlib import Path

from deltacat.fincat import FinCategory, validate_category

NAMES = ("one", "two", "loop", "discrete2", "parallel", "composable")

BUILTIN_DIR = Path(__file__).parent / "fixtures"


def fixture_dir() -> Path:
    """Directory holding fixture files; ``DELTACAT_FIXTURES`` overrides the built-in one."""
    return Path(os.environ.get("DELTACAT_FIXTURES") or BUILTIN_DIR)


def fixture(name: str) -> FinCategory:
    path = fixture_dir() / f"{name}.cat.json"
    return validate_category(json.loads(path.read_text(encoding="utf-8")))


def all_fixtures() -> dict[str, FinCategory]:
    return {name: fixture(name) for name in NAMES}
