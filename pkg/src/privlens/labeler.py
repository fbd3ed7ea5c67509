"""Flow-shape classification and label assignment.

Each processing flow maps onto one of ten abstract statement shapes built
from five structural facts: is it an assignment, is the assigned name a
source, does the receiver chain hold a source, do the arguments, and is
the sink source-specific. The shape then fixes the sensitivity-change
label (does the processed data become more, equally, or less sensitive).
"""

from __future__ import annotations

from dataclasses import dataclass

from .cleartext import OccurrenceFinding
from .rules import MAIN_SINKS, SINK_ALPHABET, RuleSpec
from .taint import Chain, FlowFinding

SENSITIVITY_UP = frozenset({1, 4, 5})
SENSITIVITY_EQUAL = frozenset({2, 3, 6, 7, 8, 9})
SENSITIVITY_DOWN = frozenset({10})

SHAPE_PATTERNS = {
    0: "unclassified",
    1: "O = _.I(_)",
    2: "O2 = _.I(O1, _)",
    3: "O2 = _.O1.I(_)",
    4: "_ = _.O.I(_)",
    5: "_ = _.I(O..., _)",
    6: "_.O.I(_)",
    7: "_.O.I(_, O...)",
    8: "_.I^O(_)",
    9: "_.I^O(_, O...)",
    10: "_.I(O..., _)",
}


def shape_from_flags(
    assignment: bool,
    lhs_source: bool,
    receiver_source: bool,
    source_args: bool,
    source_specific: bool,
) -> int:
    """Decision table over the five structural facts, most specific first."""
    if source_specific:
        return 9 if source_args else 8
    if assignment:
        if lhs_source:
            if receiver_source:
                return 3
            if source_args:
                return 2
            return 1
        if receiver_source:
            return 4
        if source_args:
            return 5
        return 0
    if receiver_source:
        return 7 if source_args else 6
    if source_args:
        return 10
    return 0


def classify_shape(f: FlowFinding) -> int:
    """Shape id for a flow finding; 0 when outside the ten grammars."""
    stmt = f.statement
    if not stmt.callee_top:
        return 0  # call buried under an operator or ternary
    flags = _structural_flags(f)
    return shape_from_flags(*flags)


def _structural_flags(f: FlowFinding) -> tuple[bool, bool, bool, bool, bool]:
    stmt = f.statement
    assignment = stmt.kind == "assignment"
    named = [s for s in f.sources if s.origin != "rerooted"]

    lhs_source = stmt.lhs is not None and any(
        s.chain == stmt.lhs for s in named if s.origin == "name-match"
    )

    receiver: Chain = stmt.callee[:-1] if stmt.callee else ()
    receiver_source = any(_is_prefix(s.chain, receiver) for s in named)

    arg_chains: list[Chain] = []
    arg_calls: list[Chain] = []
    for arg in stmt.args:
        if arg.kind == "chain":
            arg_chains.append(arg.chain)
        arg_chains.extend(arg.mentions)
        arg_calls.extend(arg.calls)
    source_args = any(
        any(_is_prefix(s.chain, c) for c in arg_chains) for s in named
    ) or any(s.origin == "rerooted" and s.chain in arg_calls for s in f.sources)

    return assignment, lhs_source, receiver_source, source_args, f.source_specific


def _is_prefix(prefix: Chain, chain: Chain) -> bool:
    return 0 < len(prefix) <= len(chain) and chain[: len(prefix)] == prefix


def sensitivity_of(shape: int) -> str:
    """Sensitivity-change bucket for a shape; unclassified stays equal."""
    if shape in SENSITIVITY_UP:
        return "up"
    if shape in SENSITIVITY_DOWN:
        return "down"
    return "equal"


def sink_label_token(category: str) -> str:
    return category.replace("/", "")


@dataclass(frozen=True)
class LabelSet:
    source_categories: frozenset[str]
    sink_category: str | None
    ssink_category: str | None
    sensitivity: str | None
    kind: str  # "occurrence" | "flow"

    def labels(self) -> tuple[str, ...]:
        out = [f"kind.{self.kind}"]
        out.extend(f"source.{c}" for c in sorted(self.source_categories))
        if self.sink_category is not None:
            out.append(f"sink.{sink_label_token(self.sink_category)}")
        if self.ssink_category is not None:
            out.append(f"ssink.{sink_label_token(self.ssink_category)}")
        if self.sensitivity is not None:
            out.append(f"sens.{self.sensitivity}")
        return tuple(out)


def label(finding: OccurrenceFinding | FlowFinding, shape: int | None = None) -> LabelSet:
    """Full label set for a finding; flows need their shape for sensitivity."""
    if isinstance(finding, OccurrenceFinding):
        return LabelSet(
            source_categories=frozenset({finding.category}),
            sink_category=None,
            ssink_category=None,
            sensitivity=None,
            kind="occurrence",
        )
    if shape is None:
        shape = classify_shape(finding)
    return LabelSet(
        source_categories=frozenset(s.category for s in finding.sources),
        sink_category=finding.sink.category,
        ssink_category=finding.sink.category if finding.source_specific else None,
        sensitivity=sensitivity_of(shape),
        kind="flow",
    )


def label_inventory(spec: RuleSpec) -> tuple[str, ...]:
    """Every label a scan with this rule set can emit, in a stable order."""
    out = [f"source.{name}" for name in sorted(s.name for s in spec.sources)]
    present = {s.name for s in spec.sinks}
    out.extend(f"sink.{sink_label_token(n)}" for n in SINK_ALPHABET if n in present)
    out.extend(f"ssink.{sink_label_token(n)}" for n in MAIN_SINKS if n in present)
    out.extend(["sens.up", "sens.down", "sens.equal"])
    out.extend(["kind.occurrence", "kind.flow"])
    return tuple(out)
