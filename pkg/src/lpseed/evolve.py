"""Numeric and symbolic evolution of the recurrences and lattice equations.

A successful symbolic run is a Laurentness certificate: every step divides
exactly in the Laurent ring of the initial variables.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .laurent import LaurentPoly, VarKey, exact_divide
from .lattice import get_template


class InexactDivision(ArithmeticError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class LaurentFailure(ArithmeticError):
    def __init__(self, step: int, message: str):
        super().__init__(f"step {step}: {message}")
        self.step = step


@dataclass(frozen=True)
class Recurrence:
    """x_{n+N} x_n = f(x_{n+1}, ..., x_{n+N-1}), f written in x[1]..x[N-1]."""

    name: str
    order: int
    rhs: LaurentPoly

    def __post_init__(self):
        for v in self.rhs.support():
            if not 0 < v[0] < self.order or len(v) != 1:
                raise ValueError(f"{self.name}: rhs mentions x{list(v)}")


def get_recurrence(name: str, **params) -> Recurrence:
    """Recurrence of a rank-N period-1 template: f is its first exchange polynomial."""
    t = get_template(name, **params)
    if t.arity != 1:
        raise KeyError(f"{name} is a lattice template; use a lattice equation")
    return Recurrence(t.name, t.rank, t.polys[0])


def _divide(num, den, step: int):
    if den == 0:
        raise ZeroDivisionError(f"step {step}: zero divisor")
    if isinstance(num, int) and isinstance(den, int):
        q, rem = divmod(num, den)
        if rem:
            raise InexactDivision(f"step {step}: {num} is not divisible by {den}")
        return q
    q = Fraction(num) / Fraction(den)
    return int(q) if q.denominator == 1 else q


def numeric_evolve(r: Recurrence, initial, steps: int) -> list:
    """Initial values followed by ``steps`` new terms.

    Integer data must divide exactly; Fraction data is carried exactly.
    """
    seq = list(initial)
    if len(seq) != r.order:
        raise ValueError(f"{r.name} needs {r.order} initial values, got {len(seq)}")
    n_order = r.order
    for step in range(1, steps + 1):
        window = seq[-n_order:]
        vals = {(i,): window[i] for i in range(n_order)}
        num = r.rhs.evaluate(vals)
        seq.append(_divide(num, window[0], step))
    return seq


def _compose(f: LaurentPoly, values: dict) -> LaurentPoly:
    """f with every variable replaced by a LaurentPoly (non-negative exponents)."""
    total = LaurentPoly.const(0)
    for mono, c in f.items():
        term = LaurentPoly.const(c)
        for v, e in mono:
            term = term * values[v] ** e
        total = total + term
    return total


def symbolic_evolve(r: Recurrence, depth: int, budget: int = 200_000) -> list[LaurentPoly]:
    """Initial variables x[0]..x[N-1] followed by ``depth`` iterates.

    Raises BudgetExceeded when an intermediate exceeds ``budget`` terms and
    LaurentFailure when a division is not exact.
    """
    n_order = r.order
    seq = [LaurentPoly.var((i,)) for i in range(n_order)]
    for step in range(1, depth + 1):
        window = seq[-n_order:]
        num = _compose(r.rhs, {(i,): window[i] for i in range(n_order)})
        if len(num) > budget:
            raise BudgetExceeded(f"step {step}: {len(num)} terms exceeds budget {budget}")
        q = exact_divide(num, window[0])
        if q is None:
            raise LaurentFailure(step, "numerator is not divisible by x_n")
        seq.append(q)
    return seq


# -- lattice equations -------------------------------------------------------

Pair = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class LatticeEquation:
    """lhs[0] * lhs[1] = sum of rhs products, all as offsets from a base site."""

    name: str
    layer_coeffs: tuple[int, ...]
    lhs: Pair
    rhs: tuple[Pair, ...]

    @property
    def arity(self) -> int:
        return len(self.layer_coeffs)

    def layer(self, v) -> int:
        return sum(c * a for c, a in zip(self.layer_coeffs, v))

    @property
    def top(self) -> tuple[int, ...]:
        return max(self.lhs, key=self.layer)

    @property
    def base(self) -> tuple[int, ...]:
        return min(self.lhs, key=self.layer)

    @property
    def rank(self) -> int:
        return self.layer(self.top) - self.layer(self.base)

    def offsets(self) -> set:
        return {o for pair in (self.lhs,) + self.rhs for o in pair}


def _add(p, q):
    return tuple(a + b for a, b in zip(p, q))


EQUATIONS = {
    "dbkp": LatticeEquation(
        "dbkp", (1, 2, 3),
        ((1, 1, 1), (0, 0, 0)),
        (((0, 1, 1), (1, 0, 0)), ((1, 1, 0), (0, 0, 1)), ((1, 0, 1), (0, 1, 0))),
    ),
    "dbkp-alt": LatticeEquation(
        "dbkp-alt", (1, 4, 2),
        ((1, 1, 1), (0, 0, 0)),
        (((0, 1, 1), (1, 0, 0)), ((1, 1, 0), (0, 0, 1)), ((1, 0, 1), (0, 1, 0))),
    ),
    "2d1": LatticeEquation(
        "2d1", (1, 2),
        ((2, 2), (0, 0)),
        (((1, 2), (1, 0)), ((1, 1), (1, 1)), ((2, 1), (0, 1))),
    ),
    "2d2": LatticeEquation(
        "2d2", (1, 4),
        ((3, 1), (0, 0)),
        (((2, 1), (1, 0)), ((1, 1), (2, 0)), ((3, 0), (0, 1))),
    ),
    "somos6": LatticeEquation(
        "somos6", (1,), ((6,), (0,)), (((5,), (1,)), ((3,), (3,)), ((4,), (2,))),
    ),
    "somos7": LatticeEquation(
        "somos7", (1,), ((7,), (0,)), (((6,), (1,)), ((5,), (2,)), ((3,), (4,))),
    ),
}


def get_equation(name: str) -> LatticeEquation:
    try:
        return EQUATIONS[name]
    except KeyError:
        raise KeyError(f"unknown equation {name!r}") from None


def cell_residual(e: LatticeEquation, values: dict, p: VarKey):
    """Left product minus right sum for the cell based at ``p``."""

    def val(o):
        site = _add(p, o)
        try:
            return values[site]
        except KeyError:
            raise KeyError(f"missing value at x{list(site)}") from None

    a, b = e.lhs
    res = val(a) * val(b)
    for c, d in e.rhs:
        res = res - val(c) * val(d)
    return res


def complete_cells(e: LatticeEquation, values: dict) -> list[VarKey]:
    """Base sites whose whole cell is covered by ``values``, sorted."""
    offs = e.offsets()
    out = []
    for p in values:
        if len(p) != e.arity:
            continue
        base = tuple(a - b for a, b in zip(p, e.base))
        if all(_add(base, o) in values for o in offs):
            out.append(base)
    return sorted(set(out))


def lattice_residual(e: LatticeEquation, values: dict, cells=None) -> dict:
    """Residual per cell; every cell passes when all values are zero."""
    if cells is None:
        cells = complete_cells(e, values)
    return {tuple(p): cell_residual(e, values, tuple(p)) for p in cells}


def initial_slab(e: LatticeEquation, radius: int, value=1) -> dict:
    """Sites on layers 0..R-1 with transverse indices in [-radius, radius].

    ``value`` is a constant or a function of the site.
    """
    dims = e.arity - 1
    slab = {}
    for t in itertools.product(range(-radius, radius + 1), repeat=dims):
        shift = sum(c * a for c, a in zip(e.layer_coeffs[1:], t))
        for i in range(e.rank):
            site = (i - shift,) + t
            slab[site] = value(site) if callable(value) else value
    return slab


def lattice_numeric_evolve(e: LatticeEquation, initial: dict, sweeps: int) -> dict:
    """Fill layers R, R+1, ... by solving each cell for its top site.

    A sweep handles every cell based on one layer, in increasing layer order,
    wherever the rest of the cell is known.
    """
    values = dict(initial)
    if not values:
        return values
    lo = min(e.layer(s) for s in values)
    offs = e.offsets()
    top, base = e.top, e.base
    for k in range(sweeps):
        layer = lo + k
        for p in sorted(s for s in values if e.layer(s) == layer):
            cell = tuple(a - b for a, b in zip(p, base))
            target = _add(cell, top)
            if target in values:
                continue
            if not all(_add(cell, o) in values for o in offs if o != top):
                continue
            num = 0
            for c, d in e.rhs:
                num = num + values[_add(cell, c)] * values[_add(cell, d)]
            values[target] = _divide(num, values[p], k + 1)
    return values
