"""Verbatim personal data in string literals and comments.

Every literal in a unit is run against the compiled clear-text regexes;
matches that fail their validator (Luhn for card numbers, a syntactic
check for emails) are dropped. Matched text is masked before it leaves
this module so reports never carry the data they flag.
"""

from __future__ import annotations

from dataclasses import dataclass

from .frontend import Literal, NormalizedUnit, Span
from .rules import CompiledRuleSet

MAX_LITERAL_SCAN_CHARS = 20_000  # per-literal step budget for the regex pass


@dataclass(frozen=True)
class OccurrenceFinding:
    file: str
    span: Span
    matched_text: str  # masked unless the caller opted out
    category: str
    pattern: str
    context: str  # "string" | "comment"
    snippet: str


def mask_match(text: str) -> str:
    """Keep at most the first 3 and last 2 characters of a match."""
    if len(text) <= 5:
        return "*" * len(text)
    return text[:3] + "***" + text[-2:]


def luhn_ok(digits: str) -> bool:
    """Luhn checksum over the digit characters of the candidate."""
    ds = [int(c) for c in digits if c.isdigit()]
    if len(ds) < 12:
        return False
    total = 0
    for i, d in enumerate(reversed(ds)):
        if i % 2 == 1:
            d *= 2
            if d > 9:
                d -= 9
        total += d
    return total % 10 == 0


def email_syntax_ok(text: str) -> bool:
    if text.count("@") != 1:
        return False
    local, _, domain = text.partition("@")
    if not local or ".." in local:
        return False
    labels = domain.split(".")
    if len(labels) < 2 or not all(labels):
        return False
    return labels[-1].isalpha() and len(labels[-1]) >= 2


_VALIDATORS = {
    "luhn": luhn_ok,
    "email-syntax": email_syntax_ok,
    "none": lambda _text: True,
}


def scan_literals(
    unit: NormalizedUnit,
    rules: CompiledRuleSet,
    mask: bool = True,
    warnings: list[str] | None = None,
) -> list[OccurrenceFinding]:
    """Match every literal against every clear-text pattern.

    Ordered by (line, pattern name). Oversized literals are truncated to the
    scan budget and reported through `warnings` rather than as findings.
    """
    findings: list[OccurrenceFinding] = []
    for literal in unit.literals:
        text = literal.text
        if len(text) > MAX_LITERAL_SCAN_CHARS:
            text = text[:MAX_LITERAL_SCAN_CHARS]
            if warnings is not None:
                warnings.append(
                    f"{unit.file}:{literal.span.start_line}: literal truncated to "
                    f"{MAX_LITERAL_SCAN_CHARS} chars for clear-text scan"
                )
        for matcher in rules.cleartext:
            for m in matcher.pattern.finditer(text):
                raw = m.group(0)
                if not _VALIDATORS[matcher.validator](raw):
                    continue
                span = _match_span(literal, text, m.start(), m.end())
                shown = mask_match(raw) if mask else raw
                findings.append(
                    OccurrenceFinding(
                        file=unit.file,
                        span=span,
                        matched_text=shown,
                        category=matcher.category,
                        pattern=matcher.name,
                        context=literal.context,
                        snippet=_context_snippet(text, m.start(), m.end(), raw, shown),
                    )
                )
    findings.sort(key=lambda f: (f.span.key(), f.pattern, f.category))
    return findings


def _match_span(literal: Literal, text: str, start: int, end: int) -> Span:
    """Line span of the match inside the literal's own span."""
    before = text[:start]
    inner = text[start:end]
    start_line = literal.span.start_line + before.count("\n")
    end_line = start_line + inner.count("\n")
    if "\n" in before:
        start_col = len(before.rsplit("\n", 1)[1])
    else:
        start_col = literal.span.start_col + len(before)
    return Span(start_line, start_col, end_line, 0 if end_line > start_line else start_col + len(inner))


def _context_snippet(text: str, start: int, end: int, raw: str, shown: str) -> str:
    lead = max(0, start - 30)
    tail = min(len(text), end + 30)
    window = text[lead:start] + shown + text[end:tail]
    window = " ".join(window.split())
    prefix = "…" if lead > 0 else ""
    suffix = "…" if tail < len(text) else ""
    return prefix + window + suffix
