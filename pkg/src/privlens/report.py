"""Pipeline orchestration and report serialization.

A scan walks the fixed three phases (match, label, group) over every
discovered file and assembles a Report: occurrences first, processing
flows second, criterion groups, and a source-by-sink count matrix. The
JSON rendering is schema-versioned and byte-deterministic for identical
inputs, so reports diff cleanly and the viewer can rely on the layout.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .cleartext import OccurrenceFinding, scan_literals
from .frontend import NormalizedUnit, SourceFile, discover_files, parse_file
from .grouper import (
    DEFAULT_LINE_THRESHOLD,
    DEFAULT_NAME_THRESHOLD,
    Group,
    LabeledFinding,
    filter_by_labels,
    group_by_api,
    group_by_name,
    merge_neighbors,
)
from .labeler import classify_shape, label, label_inventory, sink_label_token
from .rules import SINK_ALPHABET, CompiledRuleSet, compile_rules, load_default_rules, load_rules
from .taint import FlowFinding, detect_flows

SCHEMA_VERSION = 1

_LANG_SHORT = {"js": "javascript", "ts": "typescript", "java": "java"}


@dataclass(frozen=True)
class ScanOptions:
    rules_path: str | None = None
    include: tuple[str, ...] = ()
    exclude: tuple[str, ...] = ()
    langs: tuple[str, ...] = ("javascript", "typescript", "java")
    line_threshold: int = DEFAULT_LINE_THRESHOLD
    name_threshold: float = DEFAULT_NAME_THRESHOLD
    labels: tuple[str, ...] = ()
    mask: bool = True
    jobs: int = 1


@dataclass(frozen=True)
class Report:
    tool_version: str
    rules_fingerprint: str
    root: str
    files_scanned: int
    files_by_language: dict[str, int]
    notes: tuple[str, ...]
    warnings: tuple[str, ...]
    labels_available: tuple[str, ...]
    occurrences: tuple[LabeledFinding, ...]
    flows: tuple[LabeledFinding, ...]
    groups: dict[str, tuple[Group, ...]]
    matrix: dict[str, dict[str, int]]
    source_order: tuple[str, ...]
    sink_order: tuple[str, ...]
    options: ScanOptions

    def all_findings(self) -> tuple[LabeledFinding, ...]:
        return self.occurrences + self.flows


def run_scan(root: str | Path, options: ScanOptions = ScanOptions()) -> Report:
    """Scan a tree and build the full report; deterministic per input."""
    if options.rules_path is not None:
        spec = load_rules(options.rules_path)
    else:
        spec = load_default_rules()
    compiled = compile_rules(spec)

    notes: list[str] = []
    files = discover_files(root, options.include, options.exclude, notes=notes)
    langs = {_LANG_SHORT.get(l, l) for l in options.langs}

    warnings: list[str] = []
    results = _scan_files(files, compiled, options, langs, warnings)

    occurrences: list[OccurrenceFinding] = []
    flows: list[FlowFinding] = []
    by_language: dict[str, int] = {}
    for f in files:
        by_language[f.language] = by_language.get(f.language, 0) + 1
        occ, flo, unit_notes = results[f.path]
        occurrences.extend(occ)
        flows.extend(flo)
        notes.extend(f"{f.path}: {n}" for n in unit_notes)

    occurrences.sort(key=lambda o: (o.file, o.span.key(), o.pattern, o.category))
    flows.sort(key=lambda fl: (fl.file, fl.span.key(), fl.sink.chain, fl.sources[0].chain))

    labeled: list[LabeledFinding] = []
    width = max(4, len(str(len(occurrences) + len(flows))))
    for i, occ in enumerate(occurrences):
        labeled.append(LabeledFinding(f"F{i + 1:0{width}d}", occ, label(occ)))
    base = len(occurrences)
    for i, flow in enumerate(flows):
        shape = classify_shape(flow)
        labeled.append(LabeledFinding(f"F{base + i + 1:0{width}d}", flow, label(flow, shape), shape))

    inventory = label_inventory(spec)
    selected = labeled
    label_filter_groups: tuple[Group, ...] = ()
    if options.labels:
        selected = filter_by_labels(labeled, options.labels, inventory)
        if selected:
            members = tuple(f.id for f in selected)
            union_labels = sorted(set().union(*(f.labels for f in selected)))
            label_filter_groups = (
                Group("label:" + ",".join(sorted(options.labels)), "label-filter",
                      members, tuple(union_labels)),
            )

    sel_occ = tuple(f for f in selected if f.label_set.kind == "occurrence")
    sel_flows = tuple(f for f in selected if f.label_set.kind == "flow")

    groups: dict[str, tuple[Group, ...]] = {
        "neighboring": tuple(merge_neighbors(selected, options.line_threshold)),
        "name-similarity": tuple(group_by_name(selected, options.name_threshold)),
        "api": tuple(group_by_api(selected)),
    }
    if label_filter_groups:
        groups["label-filter"] = label_filter_groups

    matrix = _count_matrix(sel_flows, compiled)

    return Report(
        tool_version=__version__,
        rules_fingerprint=compiled.fingerprint,
        root=str(root),
        files_scanned=len(files),
        files_by_language=dict(sorted(by_language.items())),
        notes=tuple(notes),
        warnings=tuple(warnings),
        labels_available=inventory,
        occurrences=sel_occ,
        flows=sel_flows,
        groups=groups,
        matrix=matrix,
        source_order=compiled.source_order,
        sink_order=tuple(n for n in SINK_ALPHABET if n in compiled.sink_order),
        options=options,
    )


def _scan_files(
    files: list[SourceFile],
    compiled: CompiledRuleSet,
    options: ScanOptions,
    langs: set[str],
    warnings: list[str],
) -> dict[str, tuple[list[OccurrenceFinding], list[FlowFinding], tuple[str, ...]]]:
    def work(f: SourceFile):
        local_warnings: list[str] = []
        unit = parse_file(f)
        occ = scan_literals(unit, compiled, mask=options.mask, warnings=local_warnings)
        flo: list[FlowFinding] = []
        if f.language in langs and unit.parse_quality == "full":
            flo = detect_flows(unit, compiled)
        return f.path, (occ, flo, unit.notes), local_warnings

    results: dict[str, tuple[list[OccurrenceFinding], list[FlowFinding], tuple[str, ...]]] = {}
    if options.jobs <= 1 or len(files) <= 1:
        outputs = [work(f) for f in files]
    else:
        with ThreadPoolExecutor(max_workers=options.jobs) as pool:
            outputs = list(pool.map(work, files))
    # Merge in path order no matter which worker finished first.
    for path, payload, local_warnings in sorted(outputs, key=lambda t: t[0]):
        results[path] = payload
        warnings.extend(local_warnings)
    return results


def _count_matrix(
    flows: tuple[LabeledFinding, ...], compiled: CompiledRuleSet
) -> dict[str, dict[str, int]]:
    # Multi-source findings count once per distinct source category.
    sinks = [n for n in SINK_ALPHABET if n in compiled.sink_order]
    matrix = {src: {snk: 0 for snk in sinks} for src in compiled.source_order}
    for lf in flows:
        flow = lf.finding
        assert isinstance(flow, FlowFinding)
        for cat in sorted({s.category for s in flow.sources}):
            matrix[cat][flow.sink.category] += 1
    return matrix


def render(report: Report, fmt: str = "json") -> bytes:
    if fmt == "json":
        return _render_json(report)
    if fmt == "text":
        return _render_text(report)
    raise ValueError(f"unknown format: {fmt}")


def _finding_dict(lf: LabeledFinding) -> dict:
    f = lf.finding
    base = {
        "id": lf.id,
        "kind": lf.label_set.kind,
        "file": f.file,
        "start_line": f.span.start_line,
        "end_line": f.span.end_line,
        "snippet": f.snippet,
        "labels": list(lf.label_set.labels()),
    }
    if isinstance(f, OccurrenceFinding):
        base.update(
            {
                "category": f.category,
                "pattern": f.pattern,
                "context": f.context,
                "matched_text": f.matched_text,
            }
        )
    else:
        base.update(
            {
                "sources": [
                    {
                        "name": s.name(),
                        "category": s.category,
                        "origin": s.origin,
                        "line": s.site.start_line,
                    }
                    for s in f.sources
                ],
                "sink": {
                    "name": f.sink.name(),
                    "category": f.sink.category,
                    "matched_via": f.sink.matched_via,
                    "library": f.sink.library,
                    "line": f.sink.site.start_line,
                },
                "source_specific": f.source_specific,
                "shape": lf.shape,
                "sensitivity": lf.label_set.sensitivity,
            }
        )
    return base


def _render_json(report: Report) -> bytes:
    doc = {
        "schema": SCHEMA_VERSION,
        "tool": {"name": "privlens", "version": report.tool_version},
        "rules_fingerprint": report.rules_fingerprint,
        "root": report.root,
        "files": {
            "scanned": report.files_scanned,
            "by_language": report.files_by_language,
            "notes": list(report.notes),
        },
        "warnings": list(report.warnings),
        "labels_available": list(report.labels_available),
        "settings": {
            "line_threshold": report.options.line_threshold,
            "name_threshold": report.options.name_threshold,
            "labels": list(report.options.labels),
            "masked": report.options.mask,
        },
        "occurrences": [_finding_dict(o) for o in report.occurrences],
        "flows": [_finding_dict(f) for f in report.flows],
        "groups": {
            criterion: [
                {
                    "id": g.id,
                    "criterion": g.criterion,
                    "members": list(g.members),
                    "labels": list(g.labels),
                }
                for g in groups
            ]
            for criterion, groups in report.groups.items()
        },
        "matrix": report.matrix,
        "source_order": list(report.source_order),
        "sink_order": list(report.sink_order),
    }
    return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def _render_text(report: Report) -> bytes:
    lines: list[str] = []
    lines.append(f"privlens {report.tool_version} — scan of {report.root}")
    lines.append(f"rules {report.rules_fingerprint}")
    lines.append(
        f"files scanned: {report.files_scanned} "
        + " ".join(f"{k}={v}" for k, v in report.files_by_language.items())
    )
    lines.append("")

    lines.append("== Personal data occurrences ==")
    if not report.occurrences:
        lines.append("  (none)")
    for lf in report.occurrences:
        f = lf.finding
        assert isinstance(f, OccurrenceFinding)
        lines.append(
            f"  {lf.id} {f.file}:{f.span.start_line} [{f.category}/{f.pattern}]"
            f" {f.matched_text!r} in {f.context}"
        )
    lines.append("")

    lines.append("== Personal data processing ==")
    if not report.flows:
        lines.append("  (none)")
    for lf in report.flows:
        f = lf.finding
        assert isinstance(f, FlowFinding)
        cats = ",".join(sorted({s.category for s in f.sources}))
        marker = " ssink" if f.source_specific else ""
        lines.append(
            f"  {lf.id} {f.file}:{f.span.start_line} [{cats} -> {f.sink.category}]"
            f" shape={lf.shape} sens={lf.label_set.sensitivity}{marker}  {f.snippet}"
        )
    lines.append("")

    lines.append("== Findings per source and sink ==")
    lines.extend(_matrix_lines(report))
    lines.append("")

    for criterion, groups in report.groups.items():
        lines.append(f"== Groups by {criterion} ==")
        if not groups:
            lines.append("  (none)")
        for g in groups:
            lines.append(f"  {g.id}: {len(g.members)} finding(s): {', '.join(g.members)}")
        lines.append("")

    return ("\n".join(lines) + "\n").encode("utf-8")


def _matrix_lines(report: Report) -> list[str]:
    sinks = list(report.sink_order)
    name_w = max([len("source")] + [len(s) for s in report.source_order])
    cols = [max(len(s), 4) for s in sinks]
    header = "  " + "source".ljust(name_w) + "".join(
        f"  {s.rjust(w)}" for s, w in zip(sinks, cols)
    )
    lines = [header]
    for src in report.source_order:
        row = report.matrix.get(src, {})
        cells = []
        for snk, w in zip(sinks, cols):
            count = row.get(snk, 0)
            cells.append(f"  {(str(count) if count else '-').rjust(w)}")
        lines.append("  " + src.ljust(name_w) + "".join(cells))
    return lines
