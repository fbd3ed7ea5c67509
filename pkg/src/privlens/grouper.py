"""Cluster labeled findings for review: line proximity, name similarity,
shared API usage, and label filtering."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .cleartext import OccurrenceFinding
from .frontend import tokenize_identifier
from .labeler import LabelSet
from .taint import FlowFinding

DEFAULT_LINE_THRESHOLD = 10
DEFAULT_NAME_THRESHOLD = 0.5


@dataclass(frozen=True)
class LabeledFinding:
    id: str
    finding: OccurrenceFinding | FlowFinding
    label_set: LabelSet
    shape: int | None = None

    @property
    def file(self) -> str:
        return self.finding.file

    @property
    def start_line(self) -> int:
        return self.finding.span.start_line

    @property
    def end_line(self) -> int:
        return self.finding.span.end_line

    @property
    def labels(self) -> frozenset[str]:
        return frozenset(self.label_set.labels())

    def source_names(self) -> tuple[str, ...]:
        if isinstance(self.finding, FlowFinding):
            return tuple(s.chain[-1] for s in self.finding.sources)
        return ()

    def sink_name(self) -> str | None:
        if isinstance(self.finding, FlowFinding):
            return self.finding.sink.chain[-1]
        return None

    def api_library(self) -> str | None:
        if isinstance(self.finding, FlowFinding) and self.finding.sink.matched_via == "api":
            return self.finding.sink.library
        return None


@dataclass(frozen=True)
class Group:
    id: str
    criterion: str  # "neighboring" | "name-similarity" | "api" | "label-filter"
    members: tuple[str, ...]  # finding ids, ordered
    labels: tuple[str, ...]  # union of member labels


class UnknownLabelError(ValueError):
    def __init__(self, name: str):
        super().__init__(f"unknown label: {name}")
        self.label = name


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _sorted_findings(findings: Iterable[LabeledFinding]) -> list[LabeledFinding]:
    return sorted(findings, key=lambda f: (f.file, f.start_line, f.end_line, f.id))


def _build_groups(
    criterion: str,
    sorted_items: Sequence[LabeledFinding],
    uf: _UnionFind,
    prefix: str,
) -> list[Group]:
    clusters: dict[int, list[LabeledFinding]] = {}
    for i, item in enumerate(sorted_items):
        clusters.setdefault(uf.find(i), []).append(item)
    ordered = sorted(clusters.values(), key=lambda ms: (ms[0].file, ms[0].start_line, ms[0].id))
    groups = []
    for n, members in enumerate(ordered):
        labels = sorted(set().union(*(m.labels for m in members)))
        groups.append(
            Group(
                id=f"{prefix}:{n:03d}",
                criterion=criterion,
                members=tuple(m.id for m in members),
                labels=tuple(labels),
            )
        )
    return groups


def merge_neighbors(
    findings: Iterable[LabeledFinding], line_threshold: int = DEFAULT_LINE_THRESHOLD
) -> list[Group]:
    """Transitively join findings in the same file within the line threshold."""
    items = _sorted_findings(findings)
    uf = _UnionFind(len(items))
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[j].file != items[i].file:
                break
            # Starts are sorted, so the gap to a fixed i only grows with j.
            if items[j].start_line - items[i].end_line > line_threshold:
                break
            uf.union(i, j)
    return _build_groups("neighboring", items, uf, "near")


def _token_set(names: Iterable[str]) -> frozenset[str]:
    toks: set[str] = set()
    for name in names:
        toks.update(tokenize_identifier(name))
    return frozenset(toks)


def jaccard(a: frozenset[str], b: frozenset[str]) -> float:
    if not a and not b:
        return 0.0
    return len(a & b) / len(a | b)


def group_by_name(
    findings: Iterable[LabeledFinding],
    similarity_threshold: float = DEFAULT_NAME_THRESHOLD,
) -> list[Group]:
    """Join flows whose source or sink identifier tokens are similar enough.

    Similarity is Jaccard over tokenized names, so userEmail and
    userEmailAddress land together while unrelated prefixes stay apart;
    exact name equality always joins.
    """
    items = [f for f in _sorted_findings(findings) if isinstance(f.finding, FlowFinding)]
    src_tokens = [_token_set(f.source_names()) for f in items]
    src_names = [frozenset(f.source_names()) for f in items]
    sink_tokens = [_token_set([f.sink_name()] if f.sink_name() else []) for f in items]
    sink_names = [f.sink_name() for f in items]
    uf = _UnionFind(len(items))
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if src_names[i] & src_names[j]:
                uf.union(i, j)
                continue
            if sink_names[i] is not None and sink_names[i] == sink_names[j]:
                uf.union(i, j)
                continue
            if jaccard(src_tokens[i], src_tokens[j]) >= similarity_threshold:
                uf.union(i, j)
                continue
            if jaccard(sink_tokens[i], sink_tokens[j]) >= similarity_threshold:
                uf.union(i, j)
    return _build_groups("name-similarity", items, uf, "name")


def group_by_api(findings: Iterable[LabeledFinding]) -> list[Group]:
    """One group per external library among api-matched sinks."""
    by_lib: dict[str, list[LabeledFinding]] = {}
    for f in _sorted_findings(findings):
        lib = f.api_library()
        if lib is not None:
            by_lib.setdefault(lib, []).append(f)
    groups = []
    for lib in sorted(by_lib):
        members = by_lib[lib]
        labels = sorted(set().union(*(m.labels for m in members)))
        groups.append(
            Group(
                id=f"api:{lib}",
                criterion="api",
                members=tuple(m.id for m in members),
                labels=tuple(labels),
            )
        )
    return groups


def filter_by_labels(
    findings: Iterable[LabeledFinding],
    wanted: Iterable[str],
    inventory: Iterable[str] | None = None,
) -> list[LabeledFinding]:
    """Findings whose labels contain every wanted label (conjunction)."""
    wanted_set = frozenset(wanted)
    if inventory is not None:
        known = frozenset(inventory)
        for name in sorted(wanted_set):
            if name not in known:
                raise UnknownLabelError(name)
    return [f for f in findings if wanted_set <= f.labels]
