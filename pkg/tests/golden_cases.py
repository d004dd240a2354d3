"""Catalog entries pinned by golden report files; run as a script to regenerate."""

from __future__ import annotations

import sys
from pathlib import Path

from lieexp.pipeline.catalog import catalog_algebra, entry_name
from lieexp.pipeline.report import analyze

GOLDEN_DIR = Path(__file__).parent / "golden"
CASES = [
    ("dim2_solvable", None),
    ("heisenberg3", None),
    ("example6dim", None),
    ("cn_sln", 2),
    ("cn_sln", 3),
    ("abelian", 3),
]


def render(name: str, param: int | None) -> tuple[str, str]:
    g, split = catalog_algebra(name, param)
    label = entry_name(name, param)
    return label, analyze(g, split, name=label).to_json()


def main() -> int:
    GOLDEN_DIR.mkdir(exist_ok=True)
    for name, param in CASES:
        label, text = render(name, param)
        (GOLDEN_DIR / f"{label}.json").write_text(text, encoding="utf-8")
        print(f"wrote {label}.json")
    return 0


if __name__ == "__main__":
    sys.exit(main())
