"""Personal-data rule model: load, validate, extend, and compile rule files.

A rule file is a single JSON document with three sections: source categories
(keyword dictionaries plus optional clear-text regexes), sink categories
(action-verb dictionaries over a closed alphabet), and external-API member
patterns. Compilation turns a validated spec into immutable matchers that
operate on pre-tokenized identifier names.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Mapping, Pattern, Sequence

SINK_ALPHABET = ("M", "T", "C/D", "DB", "E", "L")
FIXED_CATEGORIES = ("account", "contact", "national_id", "personal_id")
VALIDATORS = ("luhn", "email-syntax", "none")
MAIN_SINKS = ("M", "T", "C/D", "DB", "E")  # source-specific sinks draw from these

_NAME_RE = re.compile(r"^[a-z][a-z0-9_]*$")
_TOKEN_RE = re.compile(r"^[a-z0-9]+$")


class RuleError(ValueError):
    """Malformed rule document; the message names the offending field path."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass(frozen=True)
class CleartextPattern:
    name: str
    regex: str
    validator: str = "none"


@dataclass(frozen=True)
class SourceCategorySpec:
    name: str
    kind: str  # "fixed" | "contextual"
    keywords: tuple[str, ...]
    cleartext_patterns: tuple[CleartextPattern, ...] = ()
    extension: bool = False


@dataclass(frozen=True)
class SinkCategorySpec:
    name: str
    verbs: tuple[str, ...]
    description: str = ""
    extension: bool = False


@dataclass(frozen=True)
class ApiSpec:
    library: str
    member_patterns: tuple[str, ...]
    sink_category: str


@dataclass(frozen=True)
class RuleSpec:
    version: int
    sources: tuple[SourceCategorySpec, ...]
    sinks: tuple[SinkCategorySpec, ...]
    apis: tuple[ApiSpec, ...]

    def source_names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.sources)

    def sink_names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.sinks)


def default_rules_path() -> Path:
    return Path(__file__).parent / "data" / "default_rules.json"


def load_rules(path: str | Path) -> RuleSpec:
    """Read and validate a rule file, raising RuleError with a field path."""
    p = Path(path)
    if not p.is_file():
        raise RuleError(str(p), "rule file not found")
    try:
        doc = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise RuleError(str(p), f"invalid JSON: {e}") from e
    return parse_rules(doc)


def load_default_rules() -> RuleSpec:
    return load_rules(default_rules_path())


def parse_rules(doc: object) -> RuleSpec:
    """Validate a decoded rule document and build a RuleSpec."""
    if not isinstance(doc, dict):
        raise RuleError("$", "rule document must be a JSON object")
    unknown = set(doc) - {"version", "sources", "sinks", "apis"}
    if unknown:
        raise RuleError("$", f"unknown top-level keys: {sorted(unknown)}")
    version = doc.get("version")
    if not isinstance(version, int) or isinstance(version, bool):
        raise RuleError("version", "must be an integer")

    sources = _parse_sources(doc.get("sources"))
    sinks = _parse_sinks(doc.get("sinks"))
    apis = _parse_apis(doc.get("apis", []), {s.name for s in sinks})
    return RuleSpec(version=version, sources=sources, sinks=sinks, apis=apis)


def _require_list(value: object, path: str) -> list:
    if not isinstance(value, list):
        raise RuleError(path, "must be a list")
    return value


def _require_str(value: object, path: str) -> str:
    if not isinstance(value, str):
        raise RuleError(path, "must be a string")
    return value


def _parse_token_list(value: object, path: str) -> tuple[str, ...]:
    items = _require_list(value, path)
    out = []
    for i, item in enumerate(items):
        tok = _require_str(item, f"{path}[{i}]")
        if not _TOKEN_RE.match(tok):
            raise RuleError(f"{path}[{i}]", f"not a lowercase token: {tok!r}")
        out.append(tok)
    return tuple(out)


def _parse_sources(value: object) -> tuple[SourceCategorySpec, ...]:
    items = _require_list(value, "sources")
    if not items:
        raise RuleError("sources", "at least one source category required")
    out: list[SourceCategorySpec] = []
    seen: set[str] = set()
    for i, item in enumerate(items):
        path = f"sources[{i}]"
        if not isinstance(item, dict):
            raise RuleError(path, "must be an object")
        unknown = set(item) - {"name", "kind", "keywords", "cleartext_patterns", "extension"}
        if unknown:
            raise RuleError(path, f"unknown keys: {sorted(unknown)}")
        name = _require_str(item.get("name"), f"{path}.name")
        if not _NAME_RE.match(name):
            raise RuleError(f"{path}.name", f"not an identifier: {name!r}")
        if name in seen:
            raise RuleError(f"{path}.name", f"duplicate source category {name!r}")
        seen.add(name)
        kind = _require_str(item.get("kind"), f"{path}.kind")
        if kind not in ("fixed", "contextual"):
            raise RuleError(f"{path}.kind", "must be 'fixed' or 'contextual'")
        if kind == "fixed" and name not in FIXED_CATEGORIES:
            raise RuleError(f"{path}.kind", f"kind=fixed is reserved for {FIXED_CATEGORIES}")
        keywords = _parse_token_list(item.get("keywords"), f"{path}.keywords")
        if not keywords:
            raise RuleError(f"{path}.keywords", "at least one keyword required")
        patterns = _parse_patterns(item.get("cleartext_patterns", []), f"{path}.cleartext_patterns")
        extension = bool(item.get("extension", False))
        out.append(SourceCategorySpec(name, kind, keywords, patterns, extension))
    return tuple(out)


def _parse_patterns(value: object, path: str) -> tuple[CleartextPattern, ...]:
    items = _require_list(value, path)
    out = []
    for i, item in enumerate(items):
        ipath = f"{path}[{i}]"
        if not isinstance(item, dict):
            raise RuleError(ipath, "must be an object")
        unknown = set(item) - {"name", "regex", "validator"}
        if unknown:
            raise RuleError(ipath, f"unknown keys: {sorted(unknown)}")
        name = _require_str(item.get("name"), f"{ipath}.name")
        regex = _require_str(item.get("regex"), f"{ipath}.regex")
        validator = item.get("validator", "none")
        if validator not in VALIDATORS:
            raise RuleError(f"{ipath}.validator", f"must be one of {VALIDATORS}")
        out.append(CleartextPattern(name, regex, validator))
    return tuple(out)


def _parse_sinks(value: object) -> tuple[SinkCategorySpec, ...]:
    items = _require_list(value, "sinks")
    if not items:
        raise RuleError("sinks", "at least one sink category required")
    out: list[SinkCategorySpec] = []
    seen: set[str] = set()
    for i, item in enumerate(items):
        path = f"sinks[{i}]"
        if not isinstance(item, dict):
            raise RuleError(path, "must be an object")
        unknown = set(item) - {"name", "verbs", "description", "extension"}
        if unknown:
            raise RuleError(path, f"unknown keys: {sorted(unknown)}")
        name = _require_str(item.get("name"), f"{path}.name")
        if name not in SINK_ALPHABET:
            raise RuleError(f"{path}.name", f"sink name must be one of {SINK_ALPHABET}")
        if name in seen:
            raise RuleError(f"{path}.name", f"duplicate sink category {name!r}")
        seen.add(name)
        verbs = _parse_token_list(item.get("verbs"), f"{path}.verbs")
        if not verbs:
            raise RuleError(f"{path}.verbs", "at least one verb required")
        description = item.get("description", "")
        extension = bool(item.get("extension", False))
        out.append(SinkCategorySpec(name, verbs, description, extension))
    return tuple(out)


def _parse_apis(value: object, sink_names: set[str]) -> tuple[ApiSpec, ...]:
    items = _require_list(value, "apis")
    out = []
    for i, item in enumerate(items):
        path = f"apis[{i}]"
        if not isinstance(item, dict):
            raise RuleError(path, "must be an object")
        unknown = set(item) - {"library", "member_patterns", "sink_category"}
        if unknown:
            raise RuleError(path, f"unknown keys: {sorted(unknown)}")
        library = _require_str(item.get("library"), f"{path}.library")
        members = _parse_token_list(item.get("member_patterns"), f"{path}.member_patterns")
        if not members:
            raise RuleError(f"{path}.member_patterns", "at least one member pattern required")
        sink = _require_str(item.get("sink_category"), f"{path}.sink_category")
        if sink not in sink_names:
            raise RuleError(f"{path}.sink_category", f"unknown sink category {sink!r}")
        out.append(ApiSpec(library, members, sink))
    return tuple(out)


def serialize_rules(spec: RuleSpec) -> str:
    """Render a RuleSpec back to its JSON document form (round-trips)."""
    doc = {
        "version": spec.version,
        "sources": [
            _drop_defaults({
                "name": s.name,
                "kind": s.kind,
                "keywords": list(s.keywords),
                "cleartext_patterns": [
                    {"name": p.name, "regex": p.regex, "validator": p.validator}
                    for p in s.cleartext_patterns
                ],
                "extension": s.extension,
            })
            for s in spec.sources
        ],
        "sinks": [
            _drop_defaults({
                "name": s.name,
                "verbs": list(s.verbs),
                "description": s.description,
                "extension": s.extension,
            })
            for s in spec.sinks
        ],
        "apis": [
            {
                "library": a.library,
                "member_patterns": list(a.member_patterns),
                "sink_category": a.sink_category,
            }
            for a in spec.apis
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def _drop_defaults(entry: dict) -> dict:
    if entry.get("extension") is False:
        entry.pop("extension")
    if entry.get("description") == "":
        entry.pop("description", None)
    return entry


def extend_with_custom_category(
    spec: RuleSpec, name: str, keywords: Sequence[str], kind: str = "contextual"
) -> RuleSpec:
    """Return a new spec with an extra source category; the input is unchanged.

    Custom categories get the same matcher machinery as built-in ones, so a
    reviewer adding e.g. a "salary" category only supplies the keywords.
    """
    if not _NAME_RE.match(name or ""):
        raise RuleError("name", f"not an identifier: {name!r}")
    if name in spec.source_names():
        raise RuleError("name", f"duplicate source category {name!r}")
    if kind not in ("fixed", "contextual"):
        raise RuleError("kind", "must be 'fixed' or 'contextual'")
    if kind == "fixed" and name not in FIXED_CATEGORIES:
        raise RuleError("kind", f"kind=fixed is reserved for {FIXED_CATEGORIES}")
    if not keywords:
        raise RuleError("keywords", "at least one keyword required")
    toks = []
    for i, kw in enumerate(keywords):
        if not isinstance(kw, str) or not _TOKEN_RE.match(kw):
            raise RuleError(f"keywords[{i}]", f"not a lowercase token: {kw!r}")
        toks.append(kw)
    category = SourceCategorySpec(
        name=name, kind=kind, keywords=tuple(toks), extension=True
    )
    return replace(spec, sources=spec.sources + (category,))


@dataclass(frozen=True)
class CompiledCleartext:
    category: str
    name: str
    pattern: Pattern[str]
    validator: str


@dataclass(frozen=True)
class CompiledRuleSet:
    """Immutable matchers compiled from a RuleSpec.

    All matching operates on identifier token lists produced by
    frontend.tokenize_identifier; besides exact token hits, two adjacent
    tokens are also tried joined (so the keyword "userid" matches the
    identifier userId).
    """

    spec: RuleSpec
    source_order: tuple[str, ...]  # category names ascending
    sink_order: tuple[str, ...]  # rule-file order
    keyword_categories: Mapping[str, tuple[str, ...]]
    verb_categories: Mapping[str, str]
    cleartext: tuple[CompiledCleartext, ...]
    api_members: Mapping[str, tuple[tuple[str, str], ...]]  # pattern -> ((library, sink), ...)
    fingerprint: str

    def source_category_for(self, tokens: Sequence[str]) -> str | None:
        """First matching source category by rule order, or None."""
        cats = self.source_categories_for(tokens)
        return cats[0] if cats else None

    def source_categories_for(self, tokens: Sequence[str]) -> tuple[str, ...]:
        """All source categories matched by the token list, in rule order."""
        hit: set[str] = set()
        for gram in _token_grams(tokens):
            for cat in self.keyword_categories.get(gram, ()):
                hit.add(cat)
        return tuple(c for c in self.source_order if c in hit)

    def sink_for(self, tokens: Sequence[str]) -> str | None:
        """Sink category whose verb list starts the token sequence, or None."""
        if not tokens:
            return None
        return self.verb_categories.get(tokens[0])

    def api_for(self, tokens: Sequence[str]) -> tuple[str, str] | None:
        """(library, sink category) for a member-pattern match, or None."""
        if not tokens:
            return None
        grams = [tokens[0]]
        if len(tokens) > 1:
            grams.append(tokens[0] + tokens[1])
        for gram in grams:
            refs = self.api_members.get(gram)
            if refs:
                return refs[0]
        return None

    def source_kind(self, category: str) -> str:
        for s in self.spec.sources:
            if s.name == category:
                return s.kind
        raise KeyError(category)


def _token_grams(tokens: Sequence[str]) -> Iterable[str]:
    for i, tok in enumerate(tokens):
        yield tok
        if i + 1 < len(tokens):
            yield tok + tokens[i + 1]


def rules_fingerprint(spec: RuleSpec) -> str:
    """Content hash over the canonical serialized form of the spec."""
    canon = json.dumps(json.loads(serialize_rules(spec)), sort_keys=True)
    return "sha256:" + hashlib.sha256(canon.encode("utf-8")).hexdigest()


def compile_rules(spec: RuleSpec) -> CompiledRuleSet:
    """Compile a valid RuleSpec; deterministic for equal specs."""
    source_order = tuple(sorted(s.name for s in spec.sources))
    sink_order = tuple(s.name for s in spec.sinks)

    keyword_categories: dict[str, tuple[str, ...]] = {}
    by_name = {s.name: s for s in spec.sources}
    for cat in source_order:
        for kw in by_name[cat].keywords:
            keyword_categories[kw] = keyword_categories.get(kw, ()) + (cat,)

    verb_categories: dict[str, str] = {}
    for sink in spec.sinks:
        for verb in sink.verbs:
            verb_categories.setdefault(verb, sink.name)

    cleartext: list[CompiledCleartext] = []
    for cat in source_order:
        for pat in by_name[cat].cleartext_patterns:
            try:
                compiled = re.compile(pat.regex)
            except re.error as e:
                raise RuleError(f"pattern {pat.name!r}", f"regex does not compile: {e}") from e
            cleartext.append(CompiledCleartext(cat, pat.name, compiled, pat.validator))
    cleartext.sort(key=lambda c: (c.category, c.name))

    api_members: dict[str, tuple[tuple[str, str], ...]] = {}
    for api in sorted(spec.apis, key=lambda a: a.library):
        for member in api.member_patterns:
            api_members[member] = api_members.get(member, ()) + ((api.library, api.sink_category),)

    return CompiledRuleSet(
        spec=spec,
        source_order=source_order,
        sink_order=sink_order,
        keyword_categories=keyword_categories,
        verb_categories=verb_categories,
        cleartext=tuple(cleartext),
        api_members=api_members,
        fingerprint=rules_fingerprint(spec),
    )
