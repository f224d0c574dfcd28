"""Text form of Laurent polynomials: parser and deterministic printer.

Grammar (whitespace-insensitive)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" ["-" | "+"] INT)?
    atom   := INT | "x[" INT ("," INT){0,2} "]" | "(" expr ")"

Terms print in ascending graded order, so constants come first.
"""
from __future__ import annotations

from dataclasses import dataclass

from .laurent import LaurentPoly, grlex_key


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class _Tok:
    kind: str  # "int", "name", or the punctuation character; "end" at EOF
    text: str
    pos: int


_PUNCT = set("+-*^()[],")


def _tokenize(text: str, where) -> list[_Tok]:
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Tok("int", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("name", text[i:j], i))
            i = j
        elif ch in _PUNCT:
            toks.append(_Tok(ch, ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", *where(i))
    toks.append(_Tok("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, line: int, column: int):
        self.text = text
        self.line = line
        self.column = column
        self.toks = _tokenize(text, self.where)
        self.i = 0

    def where(self, pos: int) -> tuple[int, int]:
        # expressions are single-line; column is 1-based
        return self.line, self.column + pos

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, *self.where(tok.pos))

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str | None = None) -> _Tok:
        tok = self.toks[self.i]
        if kind is not None and tok.kind != kind:
            want = "integer" if kind == "int" else repr(kind)
            got = "end of input" if tok.kind == "end" else repr(tok.text)
            self.error(f"expected {want}, got {got}", tok)
        self.i += 1
        return tok

    def parse(self) -> LaurentPoly:
        if self.peek().kind == "end":
            self.error("empty expression")
        p = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().text!r}")
        return p

    def expr(self) -> LaurentPoly:
        p = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> LaurentPoly:
        p = self.unary()
        while True:
            k = self.peek().kind
            if k == "*":
                self.take()
                p = p * self.unary()
            elif k in ("int", "name", "("):
                self.error("juxtaposition is not allowed; use '*'")
            else:
                return p

    def unary(self) -> LaurentPoly:
        k = self.peek().kind
        if k == "-":
            self.take()
            return -self.unary()
        if k == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> LaurentPoly:
        start = self.peek()
        base = self.atom()
        if self.peek().kind != "^":
            return base
        self.take()
        sign = 1
        if self.peek().kind in ("-", "+"):
            sign = -1 if self.take().kind == "-" else 1
        exp = sign * int(self.take("int").text)
        if exp < 0 and not base.is_unit():
            self.error("negative exponent needs a variable or unit monomial base", start)
        return base ** exp

    def atom(self) -> LaurentPoly:
        tok = self.peek()
        if tok.kind == "int":
            self.take()
            return LaurentPoly.const(int(tok.text))
        if tok.kind == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        if tok.kind == "name":
            if tok.text != "x":
                self.error(f"unknown symbol {tok.text!r}; only x[...] variables exist", tok)
            self.take()
            return LaurentPoly.var(self.index())
        self.error("expected a number, variable or '('")

    def index(self) -> tuple:
        self.take("[")
        parts = [self.signed_int()]
        while self.peek().kind == ",":
            self.take()
            parts.append(self.signed_int())
        close = self.take("]")
        if len(parts) > 3:
            self.error("variable index has more than 3 components", close)
        return tuple(parts)

    def signed_int(self) -> int:
        sign = 1
        if self.peek().kind in ("-", "+"):
            sign = -1 if self.take().kind == "-" else 1
        return sign * int(self.take("int").text)


def parse_expr(text: str, line: int = 1, column: int = 1) -> LaurentPoly:
    """Parse an expression into a canonical LaurentPoly."""
    return _Parser(text, line, column).parse()


def parse_var(text: str, line: int = 1, column: int = 1) -> tuple:
    """Parse a single variable token such as ``x[0,-1]`` into its index."""
    p = parse_expr(text, line, column)
    items = list(p.items())
    if len(items) == 1:
        mono, c = items[0]
        if c == 1 and len(mono) == 1 and mono[0][1] == 1:
            return mono[0][0]
    raise ParseError(f"not a variable: {text!r}", line, column)


def format_var(v: tuple) -> str:
    return "x[" + ",".join(str(i) for i in v) + "]"


def _format_mono(mono) -> str:
    parts = []
    for v, e in mono:
        s = format_var(v)
        parts.append(s if e == 1 else f"{s}^{e}")
    return "*".join(parts)


def print_expr(p: LaurentPoly) -> str:
    """Deterministic text; ``parse_expr(print_expr(p)) == p``."""
    if p.is_zero():
        return "0"
    out = []
    for mono in sorted(p.terms, key=grlex_key):
        c = p.terms[mono]
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = _format_mono(mono)
        else:
            body = f"{mag}*{_format_mono(mono)}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def format_var_pretty(v: tuple) -> str:
    if len(v) == 1:
        return f"x_{{{v[0]}}}"
    return f"x_{{{v[0]}}}^{{{','.join(str(i) for i in v[1:])}}}"


def pretty_expr(p: LaurentPoly) -> str:
    """Sub/superscript layout (x_{n}^{m,l}); display only, not parsed back."""
    if p.is_zero():
        return "0"
    out = []
    for mono in sorted(p.terms, key=grlex_key):
        c = p.terms[mono]
        factors = []
        for v, e in mono:
            s = format_var_pretty(v)
            if e != 1:
                s = f"({s})^{{{e}}}" if len(v) > 1 else f"{s}^{{{e}}}"
            factors.append(s)
        body = "".join(factors) or "1"
        mag = abs(c)
        if mag != 1:
            body = f"{mag}{body}" if mono else str(mag)
        sign = "-" if c < 0 else "+"
        out.append(body if not out and c > 0 else (f"-{body}" if not out else f" {sign} {body}"))
    return "".join(out)


__all__ = ["ParseError", "parse_expr", "parse_var", "print_expr", "pretty_expr", "format_var"]
