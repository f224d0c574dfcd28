"""Sparse multivariate Laurent polynomials with integer coefficients.

Variables are index tuples (``(n,)``, ``(n, m)`` or ``(n, m, l)``) of a single
family ``x``.  A monomial is a tuple of ``(VarKey, exponent)`` pairs sorted by
key with no zero exponents; a polynomial maps monomials to nonzero ints.
Values are immutable and all operations are pure.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd as igcd
from typing import Callable, Iterable, Mapping

VarKey = tuple
Monomial = tuple

ONE_MONO: Monomial = ()


class ArityError(ValueError):
    """Variables with different index arity were mixed."""


# -- monomials ---------------------------------------------------------------

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            e = ea + eb
            if e:
                out.append((va, e))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    if i < la:
        out.extend(a[i:])
    if j < lb:
        out.extend(b[j:])
    return tuple(out)


def mono_inv(a: Monomial) -> Monomial:
    return tuple((v, -e) for v, e in a)


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return mono_mul(a, mono_inv(b))


def mono_pow(a: Monomial, k: int) -> Monomial:
    if k == 0:
        return ONE_MONO
    return tuple((v, e * k) for v, e in a)


def mono_degree(a: Monomial) -> int:
    return sum(e for _, e in a)


def grlex_key(m: Monomial):
    """Graded order: total degree, then lex with the largest variable most significant."""
    return (mono_degree(m), m[::-1])


def _canon_mono(mono) -> Monomial:
    acc: dict = {}
    for v, e in mono:
        acc[tuple(v)] = acc.get(tuple(v), 0) + e
    return tuple(sorted((v, e) for v, e in acc.items() if e))


# -- the polynomial type -----------------------------------------------------

class LaurentPoly:
    """Immutable sparse Laurent polynomial over Z."""

    __slots__ = ("_terms", "_hash", "_support", "_arity")

    def __init__(self, terms: Mapping | Iterable | None = None):
        acc: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for mono, c in items:
                if not isinstance(c, int):
                    raise TypeError(f"coefficients must be int, got {type(c).__name__}")
                if c:
                    m = _canon_mono(mono)
                    acc[m] = acc.get(m, 0) + c
        self._terms = {m: c for m, c in acc.items() if c}
        self._hash = None
        self._support = None
        self._arity = _arity_of(self._terms)

    @classmethod
    def _make(cls, terms: dict) -> "LaurentPoly":
        # terms must already be canonical
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        obj._support = None
        obj._arity = -1
        return obj

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls._make({ONE_MONO: c} if c else {})

    @classmethod
    def var(cls, index: VarKey, exp: int = 1) -> "LaurentPoly":
        index = tuple(index)
        if not 1 <= len(index) <= 3:
            raise ArityError(f"index arity must be 1..3, got {len(index)}")
        return cls._make({((index, exp),): 1} if exp else {ONE_MONO: 1})

    @classmethod
    def monomial(cls, mono: Monomial, coeff: int = 1) -> "LaurentPoly":
        return cls._make({mono: coeff} if coeff else {})

    # -- basic accessors

    @property
    def terms(self) -> dict:
        return self._terms

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def arity(self) -> int | None:
        if self._arity == -1:
            self._arity = _arity_of(self._terms)
        return self._arity

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONO in self._terms)

    def constant_value(self) -> int:
        return self._terms.get(ONE_MONO, 0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        """Units of Z[x^±] are ±monomials."""
        if len(self._terms) != 1:
            return False
        (c,) = self._terms.values()
        return c in (1, -1)

    def is_polynomial(self) -> bool:
        return all(e > 0 for m in self._terms for _, e in m)

    def support(self) -> frozenset:
        if self._support is None:
            self._support = frozenset(v for m in self._terms for v, _ in m)
        return self._support

    def depends_on(self, v: VarKey) -> bool:
        return tuple(v) in self.support()

    def degree_in(self, v: VarKey) -> int:
        return max((dict(m).get(v, 0) for m in self._terms), default=0)

    def min_degree_in(self, v: VarKey) -> int:
        return min((dict(m).get(v, 0) for m in self._terms), default=0)

    def total_degree(self) -> int:
        return max((mono_degree(m) for m in self._terms), default=0)

    def leading_term(self) -> tuple[Monomial, int]:
        m = max(self._terms, key=grlex_key)
        return m, self._terms[m]

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = igcd(g, c)
        return g

    # -- arithmetic

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        _join_arity(self, other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                del out[m]
        return LaurentPoly._make(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._make({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        _join_arity(self, other)
        a, b = self._terms, other._terms
        if not a or not b:
            return LaurentPoly._make({})
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (mb, cb), = b.items()
            if not mb:
                return LaurentPoly._make({m: c * cb for m, c in a.items()})
            return LaurentPoly._make({mono_mul(m, mb): c * cb for m, c in a.items()})
        out: dict = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = mono_mul(ma, mb)
                out[m] = get(m, 0) + ca * cb
        return LaurentPoly._make({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_unit():
                raise ValueError("negative power of a non-unit Laurent polynomial")
            (m, c), = self._terms.items()
            return LaurentPoly._make({mono_pow(m, k): c ** (-k)})
        if len(self._terms) == 1:
            (m, c), = self._terms.items()
            return LaurentPoly._make({mono_pow(m, k): c ** k})
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison / hashing

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        from .expr import print_expr

        return f"LaurentPoly({print_expr(self)!r})"

    def __str__(self):
        from .expr import print_expr

        return print_expr(self)

    # -- structural maps

    def map_vars(self, fn: Callable[[VarKey], VarKey]) -> "LaurentPoly":
        """Rename variables; identified variables have their exponents merged."""
        cache: dict = {}
        out: dict = {}
        for m, c in self._terms.items():
            acc: dict = {}
            for v, e in m:
                w = cache.get(v)
                if w is None:
                    w = cache[v] = tuple(fn(v))
                acc[w] = acc.get(w, 0) + e
            nm = tuple(sorted((w, e) for w, e in acc.items() if e))
            out[nm] = out.get(nm, 0) + c
        return LaurentPoly({m: c for m, c in out.items() if c})

    def shift(self, offset: VarKey) -> "LaurentPoly":
        """Translate every variable index by ``offset`` (order preserving)."""
        offset = tuple(offset)
        if self.arity is not None and len(offset) != self.arity:
            raise ArityError(f"shift of arity {len(offset)} on arity-{self.arity} polynomial")
        cache: dict = {}

        def mv(v):
            w = cache.get(v)
            if w is None:
                w = cache[v] = tuple(a + b for a, b in zip(v, offset))
            return w

        return LaurentPoly._make(
            {tuple((mv(v), e) for v, e in m): c for m, c in self._terms.items()}
        )

    def derivative(self, v: VarKey) -> "LaurentPoly":
        v = tuple(v)
        out: dict = {}
        for m, c in self._terms.items():
            d = dict(m)
            e = d.get(v, 0)
            if e:
                d[v] = e - 1
                nm = tuple(sorted((w, f) for w, f in d.items() if f))
                out[nm] = out.get(nm, 0) + c * e
        return LaurentPoly._make({m: c for m, c in out.items() if c})

    def evaluate(self, values: Mapping):
        """Evaluate at numbers (int/Fraction) or other ring elements.

        Negative powers of integers become Fractions; negative powers of
        LaurentPoly values require those values to be units.
        """
        cache: dict = {}

        def power(v, e):
            key = (v, e)
            r = cache.get(key)
            if r is None:
                try:
                    val = values[v]
                except KeyError:
                    raise KeyError(f"no value for variable x{list(v)}") from None
                if e >= 0:
                    r = val ** e
                elif isinstance(val, LaurentPoly):
                    r = val ** e
                else:
                    r = Fraction(1) / Fraction(val) ** (-e)
                cache[key] = r
            return r

        total = 0
        for m, c in self._terms.items():
            t = c
            for v, e in m:
                t = t * power(v, e)
            total = total + t
        if isinstance(total, Fraction) and total.denominator == 1:
            return int(total)
        return total


def _arity_of(terms) -> int | None:
    arity = None
    for m in terms:
        for v, _ in m:
            if arity is None:
                arity = len(v)
            elif len(v) != arity:
                raise ArityError(f"mixed index arities {arity} and {len(v)}")
    return arity


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    return NotImplemented


def _join_arity(p: LaurentPoly, q: LaurentPoly) -> None:
    a, b = p.arity, q.arity
    if a is not None and b is not None and a != b:
        raise ArityError(f"arity mismatch: {a} vs {b}")


ZERO = LaurentPoly._make({})
ONE = LaurentPoly._make({ONE_MONO: 1})


def x(*index: int) -> LaurentPoly:
    """The variable ``x[index]`` as a polynomial."""
    return LaurentPoly.var(index)


# -- higher-level operations -------------------------------------------------

def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def support(p: LaurentPoly) -> frozenset:
    return p.support()


def depends_on(p: LaurentPoly, v: VarKey) -> bool:
    return p.depends_on(v)


def strip_monomial(p: LaurentPoly) -> tuple[Monomial, LaurentPoly]:
    """Split ``p = m * q`` with ``q`` a polynomial not divisible by any variable."""
    if p.is_zero():
        raise ValueError("strip_monomial of the zero polynomial")
    lows: dict = {}
    seen: dict = {}
    for mono in p._terms:
        for v, e in mono:
            if v in lows:
                if e < lows[v]:
                    lows[v] = e
                seen[v] += 1
            else:
                lows[v] = e
                seen[v] = 1
    n = len(p._terms)
    for v, k in seen.items():
        # a term without v contributes exponent 0
        if k < n and lows[v] > 0:
            lows[v] = 0
    m = tuple(sorted((v, e) for v, e in lows.items() if e))
    if not m:
        return ONE_MONO, p
    inv = mono_inv(m)
    return m, LaurentPoly._make({mono_mul(t, inv): c for t, c in p._terms.items()})


class _Desc:
    __slots__ = ("key", "mono")

    def __init__(self, mono):
        self.key = grlex_key(mono)
        self.mono = mono

    def __lt__(self, other):
        return self.key > other.key


def _poly_divide(p: dict, d: dict) -> dict | None:
    """Exact division of polynomial term maps under grlex; None if inexact."""
    lead = max(d, key=grlex_key)
    lc = d[lead]
    rest = [(m, c) for m, c in d.items() if m != lead]
    rem = dict(p)
    heap = [_Desc(m) for m in rem]
    heapq.heapify(heap)
    quo: dict = {}
    while heap:
        top = heapq.heappop(heap).mono
        c = rem.get(top)
        if c is None:
            continue
        qm = mono_div(top, lead)
        for _, e in qm:
            if e < 0:
                return None
        qc, r = divmod(c, lc)
        if r:
            return None
        quo[qm] = qc
        del rem[top]
        for m, dc in rest:
            nm = mono_mul(qm, m)
            old = rem.get(nm)
            v = (old or 0) - qc * dc
            if v:
                if old is None:
                    heapq.heappush(heap, _Desc(nm))
                rem[nm] = v
            elif old is not None:
                del rem[nm]
    return quo


def exact_divide(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly | None:
    """Return ``q`` with ``p == d * q`` in the Laurent ring, or None."""
    if d.is_zero():
        raise ZeroDivisionError("exact_divide by the zero polynomial")
    _join_arity(p, d)
    if p.is_zero():
        return ZERO
    if len(d._terms) == 1:
        (md, cd), = d._terms.items()
        out = {}
        inv = mono_inv(md)
        for m, c in p._terms.items():
            qc, r = divmod(c, cd)
            if r:
                return None
            out[mono_mul(m, inv)] = qc
        return LaurentPoly._make(out)
    mp, p0 = strip_monomial(p)
    md, d0 = strip_monomial(d)
    q0 = _poly_divide(p0._terms, d0._terms)
    if q0 is None:
        return None
    shift = mono_div(mp, md)
    if shift:
        q0 = {mono_mul(m, shift): c for m, c in q0.items()}
    return LaurentPoly._make(q0)


def divide_out(p: LaurentPoly, f: LaurentPoly) -> tuple[LaurentPoly, int]:
    """Remove every factor ``f`` from ``p``: returns ``(q, e)`` with ``p = q * f**e``."""
    if p.is_zero():
        raise ValueError("multiplicity in the zero polynomial is undefined")
    if f.is_zero():
        raise ZeroDivisionError("multiplicity of the zero polynomial")
    if f.is_unit():
        raise ValueError("multiplicity of a unit is undefined")
    e = 0
    while True:
        q = exact_divide(p, f)
        if q is None:
            return p, e
        p = q
        e += 1


def multiplicity(p: LaurentPoly, f: LaurentPoly) -> int:
    """Largest ``e`` with ``f**e`` dividing ``p`` in the Laurent ring."""
    return divide_out(p, f)[1]


def coefficients_in(p: LaurentPoly, v: VarKey) -> dict[int, LaurentPoly]:
    """View ``p`` as a Laurent polynomial in ``v``: exponent -> coefficient."""
    v = tuple(v)
    out: dict = {}
    for mono, c in p._terms.items():
        e = 0
        rest = mono
        for i, (w, ew) in enumerate(mono):
            if w == v:
                e = ew
                rest = mono[:i] + mono[i + 1:]
                break
        bucket = out.get(e)
        if bucket is None:
            bucket = out[e] = {}
        bucket[rest] = c
    return {e: LaurentPoly._make(t) for e, t in out.items()}


def substitute(p: LaurentPoly, v: VarKey, r: LaurentPoly) -> LaurentPoly:
    """Replace every occurrence of ``v`` in ``p`` by ``r``."""
    v = tuple(v)
    if not p.depends_on(v):
        return p
    coeffs = coefficients_in(p, v)
    if min(coeffs) < 0 and not r.is_unit():
        raise ValueError("negative power of the substituted variable needs a unit monomial")
    total = ZERO
    powers = {0: ONE, 1: r}
    for e in sorted(coeffs):
        if e not in powers:
            powers[e] = r ** e
        total = total + coeffs[e] * powers[e]
    return total


def eval_at_quotient(p: LaurentPoly, v: VarKey, f: LaurentPoly) -> tuple[LaurentPoly, int]:
    """Compute ``p|_{v <- f/v}`` as ``(Q, e)`` with result ``Q * f**e`` and ``f`` not dividing ``Q``."""
    v = tuple(v)
    if p.min_degree_in(v) < 0:
        raise ValueError("eval_at_quotient needs nonnegative exponents in the variable")
    if f.is_zero() or f.is_unit():
        raise ValueError("eval_at_quotient needs a nonzero non-unit divisor")
    r = substitute(p, v, f * LaurentPoly.var(v, -1))
    if r.is_zero():
        raise ValueError("substitution annihilated the polynomial")
    return divide_out(r, f)


# -- gcd ---------------------------------------------------------------------

def _normalize_sign(p: LaurentPoly) -> LaurentPoly:
    if p.is_zero():
        return p
    return -p if p.leading_term()[1] < 0 else p


def _content_in(p: LaurentPoly, v: VarKey) -> LaurentPoly:
    g = ZERO
    for c in coefficients_in(p, v).values():
        g = _poly_gcd(g, c)
        if g.is_unit():
            return ONE
    return g


def _prem(a: LaurentPoly, b: LaurentPoly, v: VarKey) -> LaurentPoly:
    cb = coefficients_in(b, v)
    db = max(cb)
    lb = cb[db]
    r = a
    while not r.is_zero():
        cr = coefficients_in(r, v)
        dr = max(cr)
        if dr < db:
            break
        t = cr[dr] * b
        if dr > db:
            t = t * LaurentPoly.var(v, dr - db)
        r = lb * r - t
    return r


def _primitive_in(p: LaurentPoly, v: VarKey) -> LaurentPoly:
    c = _content_in(p, v)
    if c == ONE:
        return p
    q = exact_divide(p, c)
    assert q is not None
    return q


def _poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """gcd of two ordinary polynomials via recursive primitive PRS."""
    if a.is_zero():
        return _normalize_sign(b)
    if b.is_zero():
        return _normalize_sign(a)
    if a.is_constant() or b.is_constant():
        return LaurentPoly.const(igcd(a.content(), b.content()))
    sa, sb = a.support(), b.support()
    v = max(sa | sb)
    if v not in sa:
        return _poly_gcd(a, _content_in(b, v))
    if v not in sb:
        return _poly_gcd(_content_in(a, v), b)
    ca, cb = _content_in(a, v), _content_in(b, v)
    pa = a if ca == ONE else exact_divide(a, ca)
    pb = b if cb == ONE else exact_divide(b, cb)
    c = _poly_gcd(ca, cb)
    if pa.degree_in(v) < pb.degree_in(v):
        pa, pb = pb, pa
    while True:
        r = _prem(pa, pb, v)
        if r.is_zero():
            g = pb
            break
        if not r.depends_on(v):
            g = ONE
            break
        pa, pb = pb, _primitive_in(r, v)
    return _normalize_sign(c * g)


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    da, db = dict(a), dict(b)
    out = []
    for v in sorted(set(da) | set(db)):
        e = min(da.get(v, 0), db.get(v, 0))
        if e:
            out.append((v, e))
    return tuple(out)


def gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """A greatest common divisor, normalized to positive leading coefficient."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    _join_arity(p, q)
    if p.is_zero():
        return _normalize_sign(q)
    if q.is_zero():
        return _normalize_sign(p)
    mp, p0 = strip_monomial(p)
    mq, q0 = strip_monomial(q)
    g = _poly_gcd(p0, q0)
    m = mono_gcd(mp, mq)
    if m:
        g = g * LaurentPoly.monomial(m)
    return g


def is_squarefree(p: LaurentPoly) -> bool:
    """True when no non-unit polynomial factor appears squared (p a polynomial)."""
    _, q = strip_monomial(p)
    for v in q.support():
        g = _poly_gcd(q, q.derivative(v))
        if not g.is_constant():
            return False
    return True


def content_in(p: LaurentPoly, v: VarKey) -> LaurentPoly:
    """gcd of the coefficients of ``p`` viewed as a polynomial in ``v``."""
    return _content_in(p, tuple(v))
