"""Command-line entry point.

Exit codes: 0 clean run, 1 usage or rule error, 2 when --fail-on matched
at least one reported finding.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .grouper import UnknownLabelError
from .report import Report, ScanOptions, render, run_scan
from .rules import RuleError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="privlens",
        description="Scan source code for personal-data occurrences and processing flows.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    scan = sub.add_parser("scan", help="scan a directory tree and emit a report")
    scan.add_argument("root", help="directory to scan")
    scan.add_argument("--rules", metavar="FILE", help="rule file (defaults to bundled rules)")
    scan.add_argument("--format", choices=["json", "text"], default="json")
    scan.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")
    scan.add_argument("--include", action="append", default=[], metavar="GLOB")
    scan.add_argument("--exclude", action="append", default=[], metavar="GLOB")
    scan.add_argument(
        "--langs", default="js,ts,java",
        help="comma-separated languages for flow analysis (js,ts,java)",
    )
    scan.add_argument("--line-threshold", type=int, default=10, metavar="N")
    scan.add_argument("--name-threshold", type=float, default=0.5, metavar="R")
    scan.add_argument(
        "--labels", default="", metavar="L1,L2,...",
        help="keep only findings carrying every listed label",
    )
    scan.add_argument("--no-mask", action="store_true", help="reveal matched clear-text data")
    scan.add_argument("--jobs", type=int, default=1, metavar="N")
    scan.add_argument("--fail-on", metavar="LABEL", help="exit 2 if any finding has this label")
    return parser


def _scan_command(args: argparse.Namespace) -> int:
    labels = tuple(l.strip() for l in args.labels.split(",") if l.strip())
    options = ScanOptions(
        rules_path=args.rules,
        include=tuple(args.include),
        exclude=tuple(args.exclude),
        langs=tuple(l.strip() for l in args.langs.split(",") if l.strip()),
        line_threshold=args.line_threshold,
        name_threshold=args.name_threshold,
        labels=labels,
        mask=not args.no_mask,
        jobs=max(1, args.jobs),
    )
    report = run_scan(args.root, options)
    payload = render(report, args.format)
    if args.out:
        Path(args.out).write_bytes(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    if args.fail_on:
        if args.fail_on not in report.labels_available:
            print(f"error: unknown label for --fail-on: {args.fail_on}", file=sys.stderr)
            return 1
        if _label_present(report, args.fail_on):
            return 2
    return 0


def _label_present(report: Report, name: str) -> bool:
    return any(name in lf.labels for lf in report.all_findings())


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "scan":
            return _scan_command(args)
        parser.error(f"unknown command {args.command}")
        return 1
    except (RuleError, UnknownLabelError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
