#!/usr/bin/env python3
"""Scan the bundled fixture corpus and print the reviewer-facing text report.

Usage: python scripts/scan_corpus.py [root]
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from privlens.report import render, run_scan  # noqa: E402

ROOT = Path(__file__).parent.parent / "tests" / "fixtures" / "corpus"


def main() -> int:
    root = Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT
    report = run_scan(root)
    sys.stdout.buffer.write(render(report, "text"))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
