"""File ingestion and normalization into a language-neutral unit.

Each source file becomes a NormalizedUnit: function scopes holding ordered
statements (assignment / call / other), plus every string and comment
literal with its span. Parsing is deliberately tolerant; files the grammar
walk cannot handle degrade to a tokens-only unit that still carries the
literals, so clear-text scanning keeps working on broken or minified input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path, PurePosixPath
from typing import Iterable, Sequence

from . import lexer
from .lexer import Token

MAX_FILE_BYTES = 4 * 1024 * 1024  # discover_files drops bigger files entirely
MINIFIED_FILE_BYTES = 1024 * 1024  # larger files are scanned for clear text only
MINIFIED_LINE_CHARS = 5000

_EXT_LANG = {
    ".js": "javascript", ".mjs": "javascript", ".cjs": "javascript", ".jsx": "javascript",
    ".ts": "typescript", ".mts": "typescript", ".cts": "typescript", ".tsx": "typescript",
    ".java": "java",
}
_BINARY_EXTS = {
    ".png", ".jpg", ".jpeg", ".gif", ".ico", ".bmp", ".webp", ".pdf", ".zip",
    ".gz", ".tar", ".jar", ".class", ".woff", ".woff2", ".ttf", ".eot", ".so",
    ".dylib", ".exe", ".wasm",
}
_SKIP_DIRS = {".git", "node_modules", "__pycache__"}

_CONTROL_KEYWORDS = {"if", "for", "while", "switch", "catch", "synchronized", "with"}
_STMT_KEYWORDS = _CONTROL_KEYWORDS | {
    "else", "try", "finally", "do", "case", "default", "break", "continue",
    "import", "package",
}
_SKIP_MODIFIERS = {
    "const", "let", "var", "await", "async", "new", "return", "throw", "yield",
    "typeof", "void", "delete", "public", "private", "protected", "static",
    "final", "abstract", "transient", "volatile", "native", "export", "default",
}
_NON_CHAIN_IDENTS = _STMT_KEYWORDS | _SKIP_MODIFIERS | {
    "function", "class", "interface", "enum", "extends", "implements", "throws",
    "instanceof", "in", "of", "true", "false", "null", "undefined",
}

_CONTINUATION_ENDERS = {
    ".", ",", "=", "+", "-", "*", "/", "%", "&&", "||", "??", "?", ":", "=>",
    "(", "[", "&", "|", "^", "<", ">", "<=", ">=", "==", "===", "!=", "!==",
    "+=", "-=", "*=", "/=", "%=", "return", "new", "typeof", "instanceof",
    "in", "of", "else", "case",
}
_CONTINUATION_STARTERS = {
    ".", ",", ")", "]", "=>", "=", "+", "*", "/", "%", "?", ":", "&&", "||",
    "??", "&", "|", "<", ">", "==", "===", "!=", "!==", "<=", ">=",
    "instanceof", "else", "catch", "finally", "while", "(", "[", "?.",
}

_ASSIGN_OPS = {"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "**=", "<<=", ">>="}

_WORD_RE = re.compile(r"[A-Z]+(?![a-z])|[A-Z][a-z]*|[a-z]+|[0-9]+")


def tokenize_identifier(name: str) -> tuple[str, ...]:
    """Split an identifier into lowercase word tokens.

    Splits at camelCase humps, underscores and other separators, and
    digit/letter boundaries; a run of capitals is one acronym token.
    """
    return tuple(m.group(0).lower() for m in _WORD_RE.finditer(name))


@dataclass(frozen=True)
class Span:
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def key(self) -> tuple[int, int, int, int]:
        return (self.start_line, self.start_col, self.end_line, self.end_col)


@dataclass(frozen=True)
class Literal:
    text: str
    context: str  # "string" | "comment"
    span: Span


@dataclass(frozen=True)
class ExprSummary:
    kind: str  # "chain" | "literal" | "opaque"
    text: str
    chain: tuple[str, ...] = ()
    mentions: tuple[tuple[str, ...], ...] = ()
    calls: tuple[tuple[str, ...], ...] = ()  # callee chains nested in the expression


@dataclass(frozen=True)
class Stmt:
    kind: str  # "assignment" | "call" | "other"
    lhs: tuple[str, ...] | None
    callee: tuple[str, ...] | None
    args: tuple[ExprSummary, ...]
    span: Span
    text: str
    depth: int  # conditional nesting inside the scope; >0 means branch arm
    mentions: tuple[tuple[str, ...], ...]  # identifier chains on the value side
    callee_top: bool = True  # False when the call sits under an operator/ternary
    clears: bool = True  # plain "=" assignment; compound ops keep prior taint
    calls: tuple[tuple[str, ...], ...] = ()  # every callee chain on the value side


@dataclass(frozen=True)
class FunctionScope:
    name: str
    span: Span
    statements: tuple[Stmt, ...]


@dataclass(frozen=True)
class SourceFile:
    path: str
    content: str
    language: str
    lossy_decode: bool = False


@dataclass(frozen=True)
class NormalizedUnit:
    file: str
    language: str
    functions: tuple[FunctionScope, ...]
    top_level: FunctionScope
    literals: tuple[Literal, ...]
    parse_quality: str  # "full" | "tokens-only"
    notes: tuple[str, ...] = ()

    def scopes(self) -> Iterable[FunctionScope]:
        yield self.top_level
        yield from self.functions


def detect_language(path: str) -> str:
    return _EXT_LANG.get(PurePosixPath(path).suffix.lower(), "unknown")


def discover_files(
    root: str | Path,
    include: Sequence[str] = (),
    exclude: Sequence[str] = (),
    max_bytes: int = MAX_FILE_BYTES,
    notes: list[str] | None = None,
) -> list[SourceFile]:
    """Collect scannable files under root in deterministic path order.

    Binary and oversized files are dropped; a human-readable note is pushed
    to `notes` for each drop so the report can account for them.
    """
    rootp = Path(root)
    if not rootp.is_dir():
        raise FileNotFoundError(f"scan root not found: {root}")
    out: list[SourceFile] = []
    paths = sorted(
        (p for p in rootp.rglob("*") if p.is_file()),
        key=lambda p: p.relative_to(rootp).as_posix(),
    )
    for p in paths:
        rel = p.relative_to(rootp).as_posix()
        if any(part in _SKIP_DIRS for part in PurePosixPath(rel).parts[:-1]):
            continue
        if include and not any(_glob_match(rel, g) for g in include):
            continue
        if any(_glob_match(rel, g) for g in exclude):
            continue
        if PurePosixPath(rel).suffix.lower() in _BINARY_EXTS:
            _note(notes, f"skipped {rel}: binary file type")
            continue
        size = p.stat().st_size
        if size > max_bytes:
            _note(notes, f"skipped {rel}: {size} bytes exceeds limit {max_bytes}")
            continue
        raw = p.read_bytes()
        if b"\0" in raw[:8192]:
            _note(notes, f"skipped {rel}: binary content")
            continue
        lossy = False
        try:
            content = raw.decode("utf-8")
        except UnicodeDecodeError:
            content = raw.decode("utf-8", errors="replace")
            lossy = True
            _note(notes, f"decoded {rel} with replacement characters")
        out.append(SourceFile(rel, content, detect_language(rel), lossy))
    return out


def _glob_match(rel: str, pattern: str) -> bool:
    import fnmatch

    return fnmatch.fnmatch(rel, pattern) or fnmatch.fnmatch(PurePosixPath(rel).name, pattern)


def _note(notes: list[str] | None, message: str) -> None:
    if notes is not None:
        notes.append(message)


def parse_file(f: SourceFile) -> NormalizedUnit:
    """Normalize one file; total, degrades to tokens-only instead of failing."""
    notes: list[str] = []
    if f.lossy_decode:
        notes.append("lossy utf-8 decode")

    if f.language == "unknown":
        return _tokens_only_unit(f, _line_literals(f.content), notes + ["unknown language"])

    minified = len(f.content) > MINIFIED_FILE_BYTES or any(
        len(line) > MINIFIED_LINE_CHARS for line in f.content.splitlines()
    )
    lex = lexer.tokenize(f.content, f.language)
    literals = tuple(
        Literal(l.text, l.context, _span(l.start, l.end)) for l in lex.literals
    )
    if minified:
        return _tokens_only_unit(f, literals, notes + ["minified or generated file"])
    if not lex.ok:
        return _tokens_only_unit(f, literals, notes + ["lexical error"])

    builder = _UnitBuilder(f, lex.tokens)
    top_level, functions, clean = builder.build()
    if not clean:
        return _tokens_only_unit(f, literals, notes + ["unbalanced braces"])
    return NormalizedUnit(
        file=f.path,
        language=f.language,
        functions=functions,
        top_level=top_level,
        literals=literals,
        parse_quality="full",
        notes=tuple(notes),
    )


def _tokens_only_unit(
    f: SourceFile, literals: tuple[Literal, ...], notes: list[str]
) -> NormalizedUnit:
    empty = FunctionScope("<top>", Span(1, 0, 1, 0), ())
    return NormalizedUnit(
        file=f.path,
        language=f.language,
        functions=(),
        top_level=empty,
        literals=literals,
        parse_quality="tokens-only",
        notes=tuple(notes),
    )


def _line_literals(content: str) -> tuple[Literal, ...]:
    # Plain-text formats carry data outside quotes; scan every line.
    out = []
    for i, line in enumerate(content.splitlines(), start=1):
        if line.strip():
            out.append(Literal(line, "string", Span(i, 0, i, len(line))))
    return tuple(out)


def _span(start, end) -> Span:
    return Span(start.line, start.col, end.line, end.col)


def _tokens_span(tokens: Sequence[Token]) -> Span:
    return Span(
        tokens[0].start.line, tokens[0].start.col,
        tokens[-1].end.line, tokens[-1].end.col,
    )


# --- statement and scope assembly ---------------------------------------


@dataclass
class _Ctx:
    kind: str  # "file" | "function" | "control" | "class"
    stmts: list[Stmt] | None = None  # own list only for file/function
    name: str = ""
    header_start: Token | None = None
    saved_buffer: list[Token] = field(default_factory=list)
    saved_parens: int = 0
    saved_expr_braces: int = 0


class _UnitBuilder:
    """Walks the token stream, splitting statements and function scopes.

    Brace classification drives everything: a `{` either opens a block
    (function body, control arm, class body) or belongs to an expression
    (object literal, array initializer) and stays inside the statement
    buffer.
    """

    def __init__(self, f: SourceFile, tokens: list[Token]):
        self.f = f
        self.tokens = tokens
        self.java = f.language == "java"
        self.stack: list[_Ctx] = [_Ctx("file", stmts=[])]
        self.functions: list[FunctionScope] = []
        self.buffer: list[Token] = []
        self.parens = 0
        self.expr_braces = 0
        self.clean = True

    def build(self) -> tuple[FunctionScope, tuple[FunctionScope, ...], bool]:
        for tok in self.tokens:
            self._step(tok)
        self._flush()
        if len(self.stack) != 1:
            self.clean = False
        top_stmts = tuple(self.stack[0].stmts or [])
        span = _tokens_span(self.tokens) if self.tokens else Span(1, 0, 1, 0)
        self.functions.sort(key=lambda fs: fs.span.key())
        return (
            FunctionScope("<top>", span, top_stmts),
            tuple(self.functions),
            self.clean,
        )

    def _depth(self) -> int:
        return sum(1 for c in self.stack if c.kind == "control")

    def _scope_stmts(self) -> list[Stmt]:
        for ctx in reversed(self.stack):
            if ctx.stmts is not None:
                return ctx.stmts
        raise AssertionError("file context always has a statement list")

    def _step(self, tok: Token) -> None:
        text = tok.text
        if self.buffer and self.expr_braces == 0 and self.parens == 0:
            if self._soft_break(tok):
                self._flush()
        if text == "{" and tok.type == "punct":
            if self._brace_is_block():
                self._open_block(tok)
            else:
                self.expr_braces += 1
                self.buffer.append(tok)
            return
        if text == "}" and tok.type == "punct":
            if self.expr_braces > 0:
                self.expr_braces -= 1
                self.buffer.append(tok)
                return
            self._flush()
            self._close_block()
            return
        if text == ";" and tok.type == "punct":
            if self.expr_braces == 0 and self.parens == 0:
                self._flush()
            else:
                self.buffer.append(tok)  # for-loop header separators
            return
        if tok.type == "punct":
            if text in "([":
                self.parens += 1
            elif text in ")]":
                self.parens = max(0, self.parens - 1)
        self.buffer.append(tok)

    def _soft_break(self, tok: Token) -> bool:
        last = self.buffer[-1]
        if tok.start.line == last.end.line:
            return False
        if last.text in _CONTINUATION_ENDERS and last.type == "punct" or (
            last.type == "ident" and last.text in _CONTINUATION_ENDERS
        ):
            return False
        if tok.text in _CONTINUATION_STARTERS:
            return False
        return True

    def _brace_is_block(self) -> bool:
        if not self.buffer:
            return True
        if any(
            t.type == "ident" and t.text in ("class", "interface", "enum", "function")
            for t in self.buffer
        ):
            return True
        prev = self.buffer[-1]
        if self.java:
            return not (prev.type == "punct" and prev.text in ("=", ",", "(", "[", "]", "{"))
        if prev.type == "punct":
            return prev.text in (")", "=>", ";", "{", "}")
        if prev.type == "ident":
            return prev.text in ("else", "try", "finally", "do") or self._after_return_type()
        return False

    def _after_return_type(self) -> bool:
        # TS signatures close with `): Type {`; walk back over the type part.
        typeish = {".", "<", ">", "[", "]", ",", "|", "&", "?"}
        i = len(self.buffer) - 1
        while i >= 0 and (
            self.buffer[i].type == "ident"
            or (self.buffer[i].type == "punct" and self.buffer[i].text in typeish)
        ):
            i -= 1
        if i <= 0 or self.buffer[i].text != ":":
            return False
        return self.buffer[i - 1].type == "punct" and self.buffer[i - 1].text == ")"

    def _open_block(self, tok: Token) -> None:
        header = self.buffer
        kind, name = self._classify_header(header)
        if kind == "function":
            ctx = _Ctx(
                "function",
                stmts=[],
                name=name,
                header_start=header[0] if header else tok,
                saved_buffer=[],
                saved_parens=self.parens,
                saved_expr_braces=self.expr_braces,
            )
            # An arrow/function expression can open mid-statement; park the
            # outer statement and resume it after the body closes.
            ctx.saved_buffer = header if self._header_is_partial(header) else []
            if not ctx.saved_buffer and header:
                pass  # plain declaration header; signature is not a statement
            self.stack.append(ctx)
        elif kind == "class":
            self.stack.append(_Ctx("class", header_start=header[0] if header else tok))
        else:
            if header:
                self._emit_stmt(header)
            self.stack.append(_Ctx("control"))
        self.buffer = []
        self.parens = 0
        self.expr_braces = 0

    def _header_is_partial(self, header: list[Token]) -> bool:
        # Inside an argument list or object literal the header belongs to an
        # enclosing statement that must survive the function body.
        return self.parens > 0 or self.expr_braces > 0

    def _classify_header(self, header: list[Token]) -> tuple[str, str]:
        if any(t.type == "ident" and t.text in ("class", "interface", "enum") for t in header):
            return "class", ""
        if not header:
            return "control", ""
        if header[-1].text in ("=>", "->"):
            return "function", self._assigned_name(header)
        before = self._ident_before_params(header)
        if before is None:
            if any(t.text == "function" for t in header):
                return "function", self._assigned_name(header)
            return "control", ""
        if before in _CONTROL_KEYWORDS:
            return "control", ""
        if before == "function":
            return "function", self._assigned_name(header)
        return "function", before

    def _ident_before_params(self, header: list[Token]) -> str | None:
        # Find the token just before the last balanced (...) group.
        depth = 0
        close_seen = False
        for i in range(len(header) - 1, -1, -1):
            t = header[i]
            if t.type != "punct":
                if not close_seen:
                    continue
            if t.text == ")":
                depth += 1
                close_seen = True
            elif t.text == "(":
                depth -= 1
                if depth == 0 and close_seen:
                    j = i - 1
                    if j >= 0 and header[j].type == "ident":
                        return header[j].text
                    return None
        return None

    def _assigned_name(self, header: list[Token]) -> str:
        for i, t in enumerate(header):
            if t.type == "punct" and t.text == "=":
                for j in range(i - 1, -1, -1):
                    if header[j].type == "ident" and header[j].text not in _NON_CHAIN_IDENTS:
                        return header[j].text
                    if header[j].type == "punct" and header[j].text in (".", ":"):
                        continue
                break
        return "<anonymous>"

    def _close_block(self) -> None:
        if len(self.stack) == 1:
            self.clean = False  # stray closing brace
            return
        ctx = self.stack.pop()
        if ctx.kind == "function":
            start = ctx.header_start
            stmts = tuple(ctx.stmts or [])
            if stmts or start is not None:
                first = start or self.tokens[0]
                span = Span(
                    first.start.line, first.start.col,
                    stmts[-1].span.end_line if stmts else first.end.line,
                    stmts[-1].span.end_col if stmts else first.end.col,
                )
                self.functions.append(FunctionScope(ctx.name or "<anonymous>", span, stmts))
            self.buffer = ctx.saved_buffer
            self.parens = ctx.saved_parens
            self.expr_braces = ctx.saved_expr_braces

    def _flush(self) -> None:
        if not self.buffer:
            return
        self._emit_stmt(self.buffer)
        self.buffer = []
        self.parens = 0
        self.expr_braces = 0

    def _emit_stmt(self, toks: list[Token]) -> None:
        stmt = _parse_statement(toks, self.f.content, self._depth())
        if stmt is not None:
            self._scope_stmts().append(stmt)


def _parse_statement(toks: list[Token], source: str, depth: int) -> Stmt | None:
    toks = [t for t in toks if t.type != "regex"]
    if not toks:
        return None
    span = _tokens_span(toks)
    text = source[toks[0].start.offset : toks[-1].end.offset]

    first = toks[0]
    starts_control = first.type == "ident" and first.text in _STMT_KEYWORDS
    if starts_control:
        # Headers like `if (cond)` or `case x:`; keep the mentions, bump the
        # depth so any inline branch assignment cannot strong-clear taint.
        mentions = _collect_mentions(toks)
        return Stmt("other", None, None, (), span, text, depth + 1, mentions)

    body = _strip_modifiers(toks)
    if not body:
        return None

    eq = _find_assign(body)
    if eq is not None:
        idx, op = eq
        lhs = _lhs_chain(body[:idx])
        rhs = body[idx + 1 :]
        callee, args, callee_top = _find_call(rhs)
        mentions = _collect_mentions(rhs)
        calls = _collect_calls(rhs)
        if lhs is not None:
            return Stmt(
                "assignment", lhs, callee, args, span, text, depth, mentions,
                callee_top, clears=(op == "="), calls=calls,
            )
        return Stmt(
            "other", None, callee, args, span, text, depth, mentions, callee_top, calls=calls
        )

    callee, args, callee_top = _find_call(body)
    mentions = _collect_mentions(body)
    calls = _collect_calls(body)
    if callee is not None:
        return Stmt(
            "call", None, callee, args, span, text, depth, mentions, callee_top, calls=calls
        )
    return Stmt("other", None, None, (), span, text, depth, mentions, calls=calls)


def _strip_modifiers(toks: list[Token]) -> list[Token]:
    i = 0
    while i < len(toks) and toks[i].type == "ident" and toks[i].text in _SKIP_MODIFIERS:
        i += 1
    return toks[i:]


def _find_assign(toks: list[Token]) -> tuple[int, str] | None:
    depth = 0
    for i, t in enumerate(toks):
        if t.type != "punct":
            continue
        if t.text in "([{":
            depth += 1
        elif t.text in ")]}":
            depth -= 1
        elif depth == 0 and t.text in _ASSIGN_OPS:
            return i, t.text
    return None


def _lhs_chain(toks: list[Token]) -> tuple[str, ...] | None:
    # Trailing `: Type` annotations (TS) never hold the assigned name.
    depth = 0
    cut = len(toks)
    for i, t in enumerate(toks):
        if t.type != "punct":
            continue
        if t.text in "([{<":
            depth += 1
        elif t.text in ")]}>":
            depth -= 1
        elif t.text == ":" and depth == 0:
            cut = i
            break
    toks = toks[:cut]
    if not toks:
        return None
    chain: list[str] = []
    i = len(toks) - 1
    if toks[i].type != "ident" or toks[i].text in _NON_CHAIN_IDENTS:
        return None
    chain.append(toks[i].text)
    i -= 1
    while i >= 1 and toks[i].type == "punct" and toks[i].text in (".", "?."):
        if toks[i - 1].type == "ident":
            chain.append(toks[i - 1].text)
            i -= 2
        else:
            break
    chain.reverse()
    return tuple(chain)


def _iter_chains(toks: Sequence[Token]):
    """Yield (chain, start_index, end_index_exclusive, is_callee)."""
    i = 0
    n = len(toks)
    while i < n:
        t = toks[i]
        if t.type == "ident" and t.text not in _NON_CHAIN_IDENTS:
            chain = [t.text]
            j = i + 1
            while (
                j + 1 < n
                and toks[j].type == "punct"
                and toks[j].text in (".", "?.")
                and toks[j + 1].type == "ident"
            ):
                chain.append(toks[j + 1].text)
                j += 2
            is_callee = j < n and toks[j].type == "punct" and toks[j].text == "("
            yield tuple(chain), i, j, is_callee
            i = j
        else:
            i += 1


def _collect_mentions(toks: Sequence[Token]) -> tuple[tuple[str, ...], ...]:
    """Identifier chains whose values feed the statement.

    Callee chains contribute their receiver (the called name itself is not
    data); template literals contribute the chains of their interpolations.
    """
    out: list[tuple[str, ...]] = []
    seen: set[tuple[str, ...]] = set()

    def add(chain: tuple[str, ...]) -> None:
        if chain and chain not in seen:
            seen.add(chain)
            out.append(chain)

    def walk(ts: Sequence[Token]) -> None:
        for chain, _s, _e, is_callee in _iter_chains(ts):
            if is_callee:
                if len(chain) > 1:
                    add(chain[:-1])
            else:
                add(chain)
        for t in ts:
            if t.type == "template":
                walk(t.subtokens)

    walk(toks)
    return tuple(out)


def _collect_calls(toks: Sequence[Token]) -> tuple[tuple[str, ...], ...]:
    out: list[tuple[str, ...]] = []
    seen: set[tuple[str, ...]] = set()

    def walk(ts: Sequence[Token]) -> None:
        for chain, _s, _e, is_callee in _iter_chains(ts):
            if is_callee and chain not in seen:
                seen.add(chain)
                out.append(chain)
        for t in ts:
            if t.type == "template":
                walk(t.subtokens)

    walk(toks)
    return tuple(out)


def _find_call(toks: Sequence[Token]) -> tuple[tuple[str, ...] | None, tuple[ExprSummary, ...], bool]:
    """Locate the primary call: first at top nesting, else first anywhere."""
    calls: list[tuple[tuple[str, ...], int, int, int]] = []  # chain, open idx, close idx, depth
    depth = 0
    opens: dict[int, int] = {}
    depths = []
    for idx, t in enumerate(toks):
        depths.append(depth)
        if t.type == "punct":
            if t.text in "([{":
                depth += 1
            elif t.text in ")]}":
                depth -= 1
    for chain, _s, e, is_callee in _iter_chains(toks):
        if not is_callee:
            continue
        close = _match_paren(toks, e)
        if close is None:
            continue
        calls.append((chain, e, close, depths[e]))
    if not calls:
        return None, (), True
    top = [c for c in calls if c[3] == 0]
    chain, open_idx, close_idx, d = top[0] if top else calls[0]
    args = _split_args(toks[open_idx + 1 : close_idx])
    return chain, args, bool(top)


def _match_paren(toks: Sequence[Token], open_idx: int) -> int | None:
    depth = 0
    for i in range(open_idx, len(toks)):
        t = toks[i]
        if t.type != "punct":
            continue
        if t.text == "(":
            depth += 1
        elif t.text == ")":
            depth -= 1
            if depth == 0:
                return i
    return None


def _split_args(toks: Sequence[Token]) -> tuple[ExprSummary, ...]:
    if not toks:
        return ()
    groups: list[list[Token]] = [[]]
    depth = 0
    for t in toks:
        if t.type == "punct":
            if t.text in "([{":
                depth += 1
            elif t.text in ")]}":
                depth -= 1
            elif t.text == "," and depth == 0:
                groups.append([])
                continue
        groups[-1].append(t)
    return tuple(_summarize_arg(g) for g in groups if g)


def _summarize_arg(toks: list[Token]) -> ExprSummary:
    text = " ".join(t.text for t in toks)
    if len(toks) == 1 and toks[0].type in ("number", "string", "template"):
        mentions = _collect_mentions(toks) if toks[0].type == "template" else ()
        calls = _collect_calls(toks) if toks[0].type == "template" else ()
        return ExprSummary("literal", toks[0].text, mentions=mentions, calls=calls)
    chains = list(_iter_chains(toks))
    if len(chains) == 1:
        chain, s, e, is_callee = chains[0]
        if not is_callee and s == 0 and e == len(toks):
            return ExprSummary("chain", text, chain=chain)
    return ExprSummary(
        "opaque", text, mentions=_collect_mentions(toks), calls=_collect_calls(toks)
    )
