"""Seed files: a small line-based text format.

::

    # comments run to end of line
    name: example
    arity: 1
    x[0] = x[1]^2 + 1
    frozen x[5] = x[4] + x[6]

or a reference to a built-in template::

    template: dbkp
    radius: 2
    param N: 4
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass, field

from .expr import ParseError, format_var, parse_expr, parse_var, print_expr
from .lattice import Window, get_template, instantiate
from .seed import Seed, SeedEntry, SeedError, validate_seed


class SeedFileError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0, source: str = "<seed>"):
        where = f"{source}:{line}:{column}: " if line else f"{source}: "
        super().__init__(where + message)
        self.message = message
        self.line = line
        self.column = column


@dataclass
class SeedFile:
    header: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    # (var text, expr text, frozen, line, var column, expr column)
    entries: list[tuple] = field(default_factory=list)


_HEADER = re.compile(r"^(name|arity|rank|template|radius|param\s+(\w+))\s*:\s*(.*)$")


def parse_seed_text(text: str, source: str = "<seed>") -> SeedFile:
    sf = SeedFile()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        m = _HEADER.match(body)
        if m:
            key, pname, value = m.group(1), m.group(2), m.group(3).strip()
            if pname:
                sf.params[pname] = value
            else:
                if key in sf.header:
                    raise SeedFileError(f"duplicate header {key!r}", lineno, indent + 1, source)
                sf.header[key] = value
            continue
        frozen = False
        col = indent
        if body.startswith("frozen ") or body.startswith("frozen\t"):
            frozen = True
            rest = body[len("frozen"):]
            col += len("frozen") + (len(rest) - len(rest.lstrip()))
            body = rest.lstrip()
        if "=" not in body:
            raise SeedFileError("expected 'x[..] = expression' or 'key: value'", lineno, col + 1, source)
        lhs, rhs = body.split("=", 1)
        rhs_col = col + len(lhs) + 2 + (len(rhs) - len(rhs.lstrip()))
        sf.entries.append((lhs.strip(), rhs.strip(), frozen, lineno, col + 1, rhs_col))
    return sf


def _int_header(sf: SeedFile, key: str, source: str):
    if key not in sf.header:
        return None
    try:
        return int(sf.header[key])
    except ValueError:
        raise SeedFileError(f"{key} must be an integer, got {sf.header[key]!r}", source=source) from None


def _template_params(params: dict) -> dict:
    out = {}
    for k, v in params.items():
        parts = [p.strip() for p in v.split(",") if p.strip()]
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise SeedFileError(f"param {k} must be integers, got {v!r}") from None
        if k == "exponents":
            out[k] = tuple(nums)
        elif len(nums) == 1:
            out[k] = nums[0]
        else:
            out[k] = tuple(nums)
    return out


def build_seed(sf: SeedFile, source: str = "<seed>", radius: int | None = None, validate: bool = True) -> Seed:
    if "template" in sf.header:
        if sf.entries:
            line = sf.entries[0][3]
            raise SeedFileError("a template seed cannot also list entries", line, 1, source)
        r = _int_header(sf, "radius", source)
        return template_seed(sf.header["template"], r if r is not None else radius, **_template_params(sf.params))
    if not sf.entries:
        raise SeedFileError("no entries", source=source)
    arity = _int_header(sf, "arity", source)
    rank = _int_header(sf, "rank", source)
    entries, lines = [], {}
    for var_text, expr_text, frozen, line, col, rhs_col in sf.entries:
        try:
            v = parse_var(var_text, line, col)
            f = parse_expr(expr_text, line, rhs_col)
        except ParseError as exc:
            raise SeedFileError(exc.message, exc.line, exc.column, source) from None
        if arity is not None and (len(v) != arity or f.arity not in (None, arity)):
            raise SeedFileError(f"entry does not have arity {arity}", line, col, source)
        if v in lines:
            raise SeedFileError(f"duplicate variable {format_var(v)} (first on line {lines[v]})", line, col, source)
        lines[v] = line
        entries.append(SeedEntry(v, f, frozen))
    if rank is not None and rank != len(entries):
        raise SeedFileError(f"rank {rank} but {len(entries)} entries", source=source)
    try:
        s = Seed(entries)
    except SeedError as exc:
        raise SeedFileError(str(exc), source=source) from None
    if validate:
        report = validate_seed(s)
        if not report.ok:
            bad = report.violations[0]
            raise SeedFileError(f"{format_var(bad.var)}: {bad.check}: {bad.detail}", lines[bad.var], 1, source)
    return s


def template_seed(name: str, radius: int | None = None, **params) -> Seed:
    t = get_template(name, **params)
    if t.arity == 1:
        return instantiate(t)
    return instantiate(t, Window(radius if radius is not None else 2))


def load_seed(ref: str, radius: int | None = None, validate: bool = True) -> Seed:
    """A seed file path, or a built-in template name."""
    if os.path.isfile(ref):
        with open(ref, encoding="utf-8") as fh:
            text = fh.read()
        return build_seed(parse_seed_text(text, ref), ref, radius, validate)
    try:
        return template_seed(ref, radius)
    except KeyError:
        raise SeedFileError(f"no such file or template {ref!r}") from None


def loads_seed(text: str, validate: bool = True) -> Seed:
    return build_seed(parse_seed_text(text), validate=validate)


def dump_seed(s: Seed, name: str | None = None) -> str:
    lines = []
    if name:
        lines.append(f"name: {name}")
    if s.arity is not None:
        lines.append(f"arity: {s.arity}")
    lines.append(f"rank: {len(s)}")
    for e in s:
        prefix = "frozen " if e.frozen else ""
        lines.append(f"{prefix}{format_var(e.var)} = {print_expr(e.exch)}")
    return "\n".join(lines) + "\n"
