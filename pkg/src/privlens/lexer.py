"""Shared token scanner for JavaScript, TypeScript, and Java sources.

Produces a flat code-token stream plus the string/comment literals with
their spans. Template literals stay single tokens; their interpolated
expressions are re-scanned so identifier mentions inside them survive.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Pos:
    line: int  # 1-based
    col: int  # 0-based
    offset: int


@dataclass(frozen=True)
class Token:
    type: str  # ident | number | string | template | regex | punct
    text: str
    start: Pos
    end: Pos
    subtokens: tuple["Token", ...] = ()  # interpolation expressions, templates only


@dataclass(frozen=True)
class RawLiteral:
    text: str  # decoded-ish payload (quotes/comment markers stripped)
    context: str  # "string" | "comment"
    start: Pos
    end: Pos


@dataclass
class LexResult:
    tokens: list[Token] = field(default_factory=list)
    literals: list[RawLiteral] = field(default_factory=list)
    ok: bool = True  # False on unterminated string/comment


# Longest first so compound operators win over their prefixes.
_PUNCTS = [
    "===", "!==", "**=", ">>>", "...", "<<=", ">>=",
    "=>", "->", "==", "!=", "<=", ">=", "&&", "||", "??", "?.",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "++", "--", "**", "<<", ">>",
]

# A '/' after one of these token texts starts a regex literal, not division.
_REGEX_PRECEDERS = {
    "=", "(", "[", ",", ":", ";", "!", "&", "|", "?", "{", "}",
    "=>", "==", "===", "!=", "!==", "&&", "||", "return", "typeof",
    "case", "in", "of", "+", "-", "*", "%", "<", ">", "<=", ">=",
}


class _Scanner:
    def __init__(self, text: str, language: str):
        self.text = text
        self.n = len(text)
        self.i = 0
        self.line = 1
        self.col = 0
        self.js_like = language in ("javascript", "typescript")
        self.result = LexResult()

    def pos(self) -> Pos:
        return Pos(self.line, self.col, self.i)

    def _bump(self, k: int = 1) -> None:
        for _ in range(k):
            if self.i >= self.n:
                return
            if self.text[self.i] == "\n":
                self.line += 1
                self.col = 0
            else:
                self.col += 1
            self.i += 1

    def peek(self, k: int = 0) -> str:
        j = self.i + k
        return self.text[j] if j < self.n else ""

    def run(self) -> LexResult:
        while self.i < self.n:
            c = self.text[self.i]
            if c in " \t\r\n":
                self._bump()
            elif c == "/" and self.peek(1) == "/":
                self._line_comment()
            elif c == "/" and self.peek(1) == "*":
                self._block_comment()
            elif c in "\"'":
                self._string(c)
            elif c == "`" and self.js_like:
                self._template()
            elif c == "/" and self.js_like and self._regex_allowed():
                self._regex()
            elif c.isdigit() or (c == "." and self.peek(1).isdigit()):
                self._number()
            elif c.isalpha() or c in "_$":
                self._ident()
            else:
                self._punct()
        return self.result

    def _regex_allowed(self) -> bool:
        toks = self.result.tokens
        if not toks:
            return True
        prev = toks[-1]
        if prev.type in ("number", "string", "template", "regex"):
            return False
        return prev.text in _REGEX_PRECEDERS

    def _emit(self, type_: str, start: Pos, subtokens: tuple[Token, ...] = ()) -> None:
        end = self.pos()
        self.result.tokens.append(
            Token(type_, self.text[start.offset : end.offset], start, end, subtokens)
        )

    def _line_comment(self) -> None:
        start = self.pos()
        self._bump(2)
        body_start = self.i
        while self.i < self.n and self.text[self.i] != "\n":
            self._bump()
        self.result.literals.append(
            RawLiteral(self.text[body_start : self.i], "comment", start, self.pos())
        )

    def _block_comment(self) -> None:
        start = self.pos()
        self._bump(2)
        body_start = self.i
        while self.i < self.n:
            if self.text[self.i] == "*" and self.peek(1) == "/":
                body = self.text[body_start : self.i]
                self._bump(2)
                self.result.literals.append(RawLiteral(body, "comment", start, self.pos()))
                return
            self._bump()
        self.result.ok = False
        self.result.literals.append(
            RawLiteral(self.text[body_start : self.i], "comment", start, self.pos())
        )

    def _string(self, quote: str) -> None:
        start = self.pos()
        self._bump()
        body_start = self.i
        while self.i < self.n:
            c = self.text[self.i]
            if c == "\\":
                self._bump(2)
                continue
            if c == quote:
                body = self.text[body_start : self.i]
                self._bump()
                self._emit("string", start)
                self.result.literals.append(RawLiteral(body, "string", start, self.pos()))
                return
            if c == "\n":
                break  # plain strings do not span lines
            self._bump()
        self.result.ok = False
        self._emit("string", start)
        self.result.literals.append(
            RawLiteral(self.text[body_start : self.i], "string", start, self.pos())
        )

    def _template(self) -> None:
        start = self.pos()
        self._bump()
        frag_start = self.i
        frag_pos = self.pos()
        subtokens: list[Token] = []

        def flush_fragment(end_offset: int) -> None:
            body = self.text[frag_start:end_offset]
            if body:
                self.result.literals.append(RawLiteral(body, "string", frag_pos, self.pos()))

        while self.i < self.n:
            c = self.text[self.i]
            if c == "\\":
                self._bump(2)
                continue
            if c == "`":
                flush_fragment(self.i)
                self._bump()
                self._emit("template", start, tuple(subtokens))
                return
            if c == "$" and self.peek(1) == "{":
                flush_fragment(self.i)
                self._bump(2)
                expr_start = self.i
                depth = 1
                while self.i < self.n and depth:
                    ch = self.text[self.i]
                    if ch == "{":
                        depth += 1
                    elif ch == "}":
                        depth -= 1
                        if not depth:
                            break
                    self._bump()
                inner = tokenize(self.text[expr_start : self.i], "javascript")
                subtokens.extend(inner.tokens)
                self._bump()  # closing }
                frag_start = self.i
                frag_pos = self.pos()
                continue
            self._bump()
        self.result.ok = False
        flush_fragment(self.i)
        self._emit("template", start, tuple(subtokens))

    def _regex(self) -> None:
        start = self.pos()
        self._bump()
        in_class = False
        while self.i < self.n:
            c = self.text[self.i]
            if c == "\\":
                self._bump(2)
                continue
            if c == "[":
                in_class = True
            elif c == "]":
                in_class = False
            elif c == "/" and not in_class:
                self._bump()
                while self.i < self.n and self.text[self.i].isalpha():
                    self._bump()
                self._emit("regex", start)
                return
            elif c == "\n":
                break
            self._bump()
        # Not a regex after all; emit the slash as punctuation and rewind.
        self.i, self.line, self.col = start.offset, start.line, start.col
        self._bump()
        self._emit("punct", start)

    def _number(self) -> None:
        start = self.pos()
        while self.i < self.n and (self.text[self.i].isalnum() or self.text[self.i] in "._"):
            # Stop a trailing member access like 100.toString from being eaten.
            if self.text[self.i] == "." and not self.peek(1).isdigit():
                break
            self._bump()
        self._emit("number", start)

    def _ident(self) -> None:
        start = self.pos()
        while self.i < self.n and (self.text[self.i].isalnum() or self.text[self.i] in "_$"):
            self._bump()
        self._emit("ident", start)

    def _punct(self) -> None:
        start = self.pos()
        rest = self.text[self.i : self.i + 3]
        for p in _PUNCTS:
            if rest.startswith(p):
                self._bump(len(p))
                self._emit("punct", start)
                return
        self._bump()
        self._emit("punct", start)


def tokenize(text: str, language: str) -> LexResult:
    """Scan source text; never raises, sets ok=False on lexical damage."""
    return _Scanner(text, language).run()
