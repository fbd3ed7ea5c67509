"""Intra-file, intra-procedural taint tracking from data sources to sinks.

Sources are identifiers whose name tokens hit a category keyword; sinks are
calls whose final name starts with an action verb or matches a known API
member. Propagation is a forward, flow-sensitive walk over each scope's
statements: an assignment taints its target when the value side mentions a
tainted or source-named identifier, and a plain reassignment from clean
values clears it. Assignments inside branch arms only ever add taint, so
the state after a conditional is the union of its arms.

A method whose name carries both a verb and a source keyword (setLatitude)
is a source-specific sink: it re-roots, becoming the source itself while
its receiver becomes the sink.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .frontend import (
    ExprSummary,
    FunctionScope,
    NormalizedUnit,
    Span,
    Stmt,
    tokenize_identifier,
)
from .rules import MAIN_SINKS, CompiledRuleSet

Chain = tuple[str, ...]


@dataclass(frozen=True)
class SourceRef:
    chain: Chain
    category: str
    site: Span
    origin: str  # "name-match" | "propagated" | "rerooted"

    def name(self) -> str:
        return ".".join(self.chain)


@dataclass(frozen=True)
class SinkRef:
    chain: Chain
    category: str
    matched_via: str  # "verb" | "api"
    site: Span
    library: str | None = None

    def name(self) -> str:
        return ".".join(self.chain)


@dataclass(frozen=True)
class FlowFinding:
    file: str
    statement: Stmt
    sources: tuple[SourceRef, ...]
    sink: SinkRef
    source_specific: bool
    snippet: str
    span: Span


def _name_match_refs(chain: Chain, rules: CompiledRuleSet, site: Span) -> list[SourceRef]:
    """A ref per chain segment whose tokens hit a keyword, first category wins."""
    refs = []
    for i, segment in enumerate(chain):
        cat = rules.source_category_for(tokenize_identifier(segment))
        if cat is not None:
            refs.append(SourceRef(chain[: i + 1], cat, site, "name-match"))
    return refs


def _rerootable(chain: Chain, rules: CompiledRuleSet) -> tuple[str, str] | None:
    """(source category, sink category) when the final name re-roots."""
    if not chain:
        return None
    tokens = tokenize_identifier(chain[-1])
    if len(tokens) < 2:
        return None
    sink_cat = rules.sink_for(tokens)
    if sink_cat is None or sink_cat not in MAIN_SINKS:
        return None
    src_cat = rules.source_category_for(tokens[1:])
    if src_cat is None:
        return None
    return src_cat, sink_cat


class _TaintState:
    """Chains currently holding source-derived values, with origin spans."""

    def __init__(self) -> None:
        self.map: dict[Chain, dict[str, Span]] = {}

    def lookup(self, chain: Chain) -> dict[str, Span]:
        # Member access on a tainted base is tainted: any prefix counts.
        found: dict[str, Span] = {}
        for i in range(1, len(chain) + 1):
            for cat, span in self.map.get(chain[:i], {}).items():
                found.setdefault(cat, span)
        return found

    def assign(self, chain: Chain, cats: dict[str, Span], strong: bool) -> None:
        if cats:
            if strong:
                self._clear(chain)
                self.map[chain] = dict(cats)
            else:
                merged = dict(self.map.get(chain, {}))
                for cat, span in cats.items():
                    merged.setdefault(cat, span)
                self.map[chain] = merged
        elif strong:
            self._clear(chain)

    def _clear(self, chain: Chain) -> None:
        doomed = [k for k in self.map if k[: len(chain)] == chain]
        for k in doomed:
            del self.map[k]


def _value_categories(stmt: Stmt, state: _TaintState, rules: CompiledRuleSet) -> dict[str, Span]:
    """Categories carried by the value side of an assignment."""
    cats: dict[str, Span] = {}
    for chain in stmt.mentions:
        for ref in _name_match_refs(chain, rules, stmt.span):
            cats.setdefault(ref.category, stmt.span)
        for cat, span in state.lookup(chain).items():
            cats.setdefault(cat, span)
    for call in stmt.calls:
        rerooted = _rerootable(call, rules)
        if rerooted is not None:
            cats.setdefault(rerooted[0], stmt.span)
    return cats


def _step_taint(stmt: Stmt, state: _TaintState, rules: CompiledRuleSet) -> None:
    if stmt.kind != "assignment" or stmt.lhs is None:
        return
    cats = _value_categories(stmt, state, rules)
    strong = stmt.clears and stmt.depth == 0
    state.assign(stmt.lhs, cats, strong)


def find_sources(unit: NormalizedUnit, rules: CompiledRuleSet) -> list[SourceRef]:
    """Every identifier occurrence whose name tokens match a source keyword."""
    refs: list[SourceRef] = []
    seen: set[tuple[Chain, str, tuple[int, int, int, int]]] = set()
    for scope in unit.scopes():
        for stmt in scope.statements:
            chains: list[Chain] = list(stmt.mentions)
            if stmt.lhs is not None:
                chains.append(stmt.lhs)
            for chain in chains:
                for ref in _name_match_refs(chain, rules, stmt.span):
                    key = (ref.chain, ref.category, stmt.span.key())
                    if key not in seen:
                        seen.add(key)
                        refs.append(ref)
    refs.sort(key=lambda r: (r.site.key(), r.chain, r.category))
    return refs


def find_sinks(unit: NormalizedUnit, rules: CompiledRuleSet) -> list[SinkRef]:
    """Every call whose callee is an action verb or a known API member."""
    refs: list[SinkRef] = []
    for scope in unit.scopes():
        for stmt in scope.statements:
            if stmt.callee is None:
                continue
            ref = _match_sink(stmt.callee, stmt.span, rules)
            if ref is not None:
                refs.append(ref)
    refs.sort(key=lambda r: (r.site.key(), r.chain))
    return refs


def _match_sink(callee: Chain, site: Span, rules: CompiledRuleSet) -> SinkRef | None:
    tokens = tokenize_identifier(callee[-1])
    verb_cat = rules.sink_for(tokens)
    if verb_cat is not None:
        return SinkRef(callee, verb_cat, "verb", site)
    api = rules.api_for(tokens)
    if api is not None:
        library, cat = api
        return SinkRef(callee, cat, "api", site, library=library)
    return None


def reroot_source_specific_sink(
    stmt: Stmt, rules: CompiledRuleSet
) -> tuple[SourceRef, SinkRef] | None:
    """Re-root a source-specific sink call: method becomes the source, its
    receiver the sink. Absent when the call does not qualify."""
    if stmt.callee is None or len(stmt.callee) < 2:
        return None
    rerooted = _rerootable(stmt.callee, rules)
    if rerooted is None:
        return None
    src_cat, sink_cat = rerooted
    source = SourceRef((stmt.callee[-1],), src_cat, stmt.span, "rerooted")
    sink = SinkRef(stmt.callee[:-1], sink_cat, "verb", stmt.span)
    return source, sink


def propagate(
    scope: FunctionScope, seeds: Iterable[SourceRef], rules: CompiledRuleSet
) -> dict[str, tuple[SourceRef, ...]]:
    """Forward flow-sensitive taint map for one scope.

    Returns identifier chain (dotted) -> provenance refs after the last
    statement. Seeds participate implicitly because source-named mentions
    taint on their own; the parameter exists so callers can pre-taint
    additional chains.
    """
    state = _TaintState()
    for seed in seeds:
        state.assign(seed.chain, {seed.category: seed.site}, strong=False)
    for stmt in scope.statements:
        _step_taint(stmt, state, rules)
    out: dict[str, tuple[SourceRef, ...]] = {}
    for chain, cats in state.map.items():
        refs = tuple(
            SourceRef(chain, cat, span, "propagated")
            for cat, span in sorted(cats.items(), key=lambda kv: kv[0])
        )
        out[".".join(chain)] = refs
    return out


def _chain_sources(
    chain: Chain, state: _TaintState, rules: CompiledRuleSet, site: Span
) -> list[SourceRef]:
    refs = _name_match_refs(chain, rules, site)
    named = {r.category for r in refs}
    for i in range(1, len(chain) + 1):
        prefix = chain[:i]
        for cat in state.map.get(prefix, {}):
            if cat not in named:
                refs.append(SourceRef(prefix, cat, site, "propagated"))
                named.add(cat)
    return refs


def _involved_sources(
    stmt: Stmt, state: _TaintState, rules: CompiledRuleSet
) -> list[SourceRef]:
    """Sources touching the sink call: receiver, arguments, assignment target."""
    refs: list[SourceRef] = []
    if stmt.callee is not None and len(stmt.callee) > 1:
        refs.extend(_chain_sources(stmt.callee[:-1], state, rules, stmt.span))
    for arg in stmt.args:
        refs.extend(_arg_sources(arg, stmt, state, rules))
    if stmt.kind == "assignment" and stmt.lhs is not None:
        refs.extend(_name_match_refs(stmt.lhs, rules, stmt.span))
    return _dedupe(refs)


def _arg_sources(
    arg: ExprSummary, stmt: Stmt, state: _TaintState, rules: CompiledRuleSet
) -> list[SourceRef]:
    refs: list[SourceRef] = []
    if arg.kind == "chain":
        refs.extend(_chain_sources(arg.chain, state, rules, stmt.span))
    else:
        for chain in arg.mentions:
            refs.extend(_chain_sources(chain, state, rules, stmt.span))
    for call in arg.calls:
        rerooted = _rerootable(call, rules)
        if rerooted is not None:
            refs.append(SourceRef(call, rerooted[0], stmt.span, "rerooted"))
    return refs


def _dedupe(refs: Iterable[SourceRef]) -> list[SourceRef]:
    out: list[SourceRef] = []
    seen: set[tuple[Chain, str, str]] = set()
    for ref in refs:
        key = (ref.chain, ref.category, ref.origin)
        if key not in seen:
            seen.add(key)
            out.append(ref)
    out.sort(key=lambda r: (r.category, r.chain, r.origin))
    return out


def detect_flows(unit: NormalizedUnit, rules: CompiledRuleSet) -> list[FlowFinding]:
    """Run the per-scope pipeline and emit one finding per involved sink call."""
    findings: list[FlowFinding] = []
    for scope in unit.scopes():
        state = _TaintState()
        for stmt in scope.statements:
            findings.extend(_stmt_findings(unit.file, stmt, state, rules))
            _step_taint(stmt, state, rules)
    findings.sort(key=lambda f: (f.span.key(), f.sink.chain))
    return findings


def _stmt_findings(
    file: str, stmt: Stmt, state: _TaintState, rules: CompiledRuleSet
) -> list[FlowFinding]:
    out: list[FlowFinding] = []
    if stmt.callee is None:
        return out
    snippet = _snippet(stmt.text)

    rerooted = reroot_source_specific_sink(stmt, rules)
    if rerooted is not None:
        source, sink = rerooted
        arg_refs = [r for arg in stmt.args for r in _arg_sources(arg, stmt, state, rules)]
        out.append(
            FlowFinding(
                file=file,
                statement=stmt,
                sources=tuple(_dedupe([source] + arg_refs)),
                sink=sink,
                source_specific=True,
                snippet=snippet,
                span=stmt.span,
            )
        )
    else:
        sink = _match_sink(stmt.callee, stmt.span, rules)
        if sink is not None:
            involved = _involved_sources(stmt, state, rules)
            if involved:
                out.append(
                    FlowFinding(
                        file=file,
                        statement=stmt,
                        sources=tuple(involved),
                        sink=sink,
                        source_specific=False,
                        snippet=snippet,
                        span=stmt.span,
                    )
                )

    # Source-specific sinks nested in the value side re-root on their own.
    for call in stmt.calls:
        if call == stmt.callee or len(call) < 2:
            continue
        nested = _rerootable(call, rules)
        if nested is None:
            continue
        src_cat, sink_cat = nested
        out.append(
            FlowFinding(
                file=file,
                statement=stmt,
                sources=(SourceRef((call[-1],), src_cat, stmt.span, "rerooted"),),
                sink=SinkRef(call[:-1], sink_cat, "verb", stmt.span),
                source_specific=True,
                snippet=snippet,
                span=stmt.span,
            )
        )
    return out


def _snippet(text: str, limit: int = 240) -> str:
    flat = " ".join(text.split())
    return flat if len(flat) <= limit else flat[: limit - 1] + "…"
