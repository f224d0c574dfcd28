"""Finite windows of lattice seed templates and layer sweeps.

The infinite seeds are truncated to transverse positions ``|t_q| <= radius``.
Entries whose polynomial reaches outside the window are frozen.  A sweep
mutates every mutable variable of one layer once, shell by shell; after each
sweep the trustworthy region shrinks by ``margin``.
"""
from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field

from .laurent import ONE, LaurentPoly, VarKey, strip_monomial, substitute
from .seed import (
    MutationError,
    MutationTrace,
    Seed,
    SeedEntry,
    mutate,
)
from .templates import NAMED_TEMPLATES, SeedTemplate, _named_templates


@dataclass(frozen=True)
class Window:
    radius: int
    margin: int = 2

    def __post_init__(self):
        if self.margin < 2 or self.radius < self.margin:
            raise ValueError(f"window needs radius >= margin >= 2, got {self.radius}, {self.margin}")

    def points(self, dims: int):
        r = range(-self.radius, self.radius + 1)
        return itertools.product(r, repeat=dims)

    def interior(self, sweeps: int = 1) -> int:
        return self.radius - self.margin * sweeps


@dataclass
class MutationSchedule:
    shells: list[list[VarKey]] = field(default_factory=list)

    def order(self) -> list[VarKey]:
        return [v for shell in self.shells for v in shell]

    def __len__(self) -> int:
        return sum(len(s) for s in self.shells)


def _norm(t) -> int:
    return max((abs(a) for a in t), default=0)


# -- instantiation -----------------------------------------------------------

def instantiate(t: SeedTemplate, w: Window | None = None) -> Seed:
    """Finite seed: every layer at every transverse position of the window."""
    dims = t.arity - 1
    if dims == 0:
        return Seed(SeedEntry(t.var_at(i), t.polys[i]) for i in range(t.rank))
    if w is None:
        raise ValueError(f"template {t.name} needs a window")
    points = list(w.points(dims))
    inside = {t.var_at(i, p) for i in range(t.rank) for p in points}
    entries = []
    for i in range(t.rank):
        for p in points:
            f = t.poly_at(i, p)
            frozen = not f.support() <= inside
            entries.append(SeedEntry(t.var_at(i, p), f, frozen))
    return Seed(entries)


# -- schedules ---------------------------------------------------------------

def shell_labels(n: int, dims: int) -> list[tuple[int, ...]]:
    """Labels with |j|+|k| = n in the order the sweep applies them.

    Two transverse dimensions walk the diamond counter-clockwise from (n, 0);
    one dimension takes n then -n.
    """
    if dims == 0:
        return [()] if n == 0 else []
    if n == 0:
        return [(0,) * dims]
    if dims == 1:
        return [(n,), (-n,)]
    if dims != 2:
        raise ValueError("at most two transverse dimensions")
    pts = [(n - a, a) for a in range(n)]
    pts += [(-a, n - a) for a in range(n)]
    pts += [(-n + a, -a) for a in range(n)]
    pts += [(a, -n + a) for a in range(n)]
    return pts


def schedule_mu_tilde(
    t: SeedTemplate,
    w: Window | None,
    layer: int,
    seed: Seed | None = None,
    sweep: int = 0,
) -> MutationSchedule:
    """Mutable variables of ``layer``, grouped into shells.

    Sweep ``s`` keeps transverse positions with norm at most
    ``radius - margin * s``; frozen entries of ``seed`` are skipped.
    """
    dims = t.arity - 1
    if dims == 0:
        v = t.var_at(layer)
        if seed is not None and (v not in seed or seed.entry(v).frozen):
            return MutationSchedule([])
        return MutationSchedule([[v]])
    if seed is None:
        seed = instantiate(t, w)
    limit = w.radius - w.margin * sweep
    by_label = {}
    for p in w.points(dims):
        if _norm(p) > limit:
            continue
        v = t.var_at(layer, p)
        if v not in seed or seed.entry(v).frozen:
            continue
        by_label[t.labels(p)] = v
    if not by_label:
        return MutationSchedule([])
    top = max(sum(abs(a) for a in lab) for lab in by_label)
    shells = []
    for n in range(top + 1):
        shell = [by_label[lab] for lab in shell_labels(n, dims) if lab in by_label]
        if shell:
            shells.append(shell)
    return MutationSchedule(shells)


def relabel_key(v: VarKey, rho: VarKey) -> VarKey:
    return tuple(a + b for a, b in zip(v, rho))


def run_schedule(
    s: Seed, sched: MutationSchedule | list, relabel: VarKey
) -> tuple[Seed, list[MutationTrace]]:
    """Mutate in schedule order, renaming each mutated ``x`` to ``x + relabel``."""
    order = sched.order() if isinstance(sched, MutationSchedule) else list(sched)
    traces = []
    for v in order:
        s, tr = mutate(s, v, relabel_key(v, relabel))
        traces.append(tr)
    return s, traces


# -- verification ------------------------------------------------------------

@dataclass
class Diff:
    var: VarKey
    expected: LaurentPoly | None
    got: LaurentPoly | None


@dataclass
class CovarianceResult:
    ok: bool
    checked: int
    diffs: list[Diff] = field(default_factory=list)


def interior_vars(s: Seed, t: SeedTemplate, limit: int) -> set:
    return {e.var for e in s if _norm(t.transverse(e.var)) <= limit}


def verify_shift_covariance(
    before: Seed,
    after: Seed,
    t: SeedTemplate,
    w: Window | None = None,
    interior: int | None = None,
) -> CovarianceResult:
    """On the interior, ``after`` must hold the unit n-shift of every entry of ``before``."""
    if interior is None:
        interior = w.interior() if (w is not None and t.arity > 1) else 0
    got = after.as_dict()
    diffs = []
    checked = 0
    for e in before:
        if _norm(t.transverse(e.var)) > interior:
            continue
        checked += 1
        v = t.shift_up(e.var)
        want = e.exch.shift((1,) + (0,) * (t.arity - 1))
        have = got.get(v)
        if have is None:
            diffs.append(Diff(v, want, None))
        elif have[0] != want:
            diffs.append(Diff(v, want, have[0]))
    return CovarianceResult(not diffs and checked > 0, checked, diffs)


def verify_order_independence(
    s: Seed,
    sched: MutationSchedule,
    relabel: VarKey,
    trials: int = 5,
    rng_seed: int = 0,
    region: set | None = None,
) -> tuple[bool, list]:
    """Random permutations of the schedule must give the same final seed on ``region``."""
    order = sched.order()
    base, _ = run_schedule(s, order, relabel)

    def view(seed: Seed):
        d = seed.as_dict()
        if region is None:
            return d
        return {v: d[v] for v in d if v in region}

    want = view(base)
    rng = random.Random(rng_seed)
    failures = []
    for trial in range(trials):
        perm = list(order)
        rng.shuffle(perm)
        try:
            out, _ = run_schedule(s, perm, relabel)
        except MutationError as exc:
            failures.append({"trial": trial, "error": str(exc)})
            continue
        have = view(out)
        if have != want:
            bad = sorted(v for v in set(want) | set(have) if want.get(v) != have.get(v))
            failures.append({"trial": trial, "first_diff": bad[0], "diffs": len(bad)})
    return not failures, failures


@dataclass
class SweepResult:
    layer: int
    mutations: int
    seed: Seed
    traces: list[MutationTrace]
    interior: int


def sweep(t: SeedTemplate, w: Window | None, s: Seed, index: int) -> SweepResult:
    """Apply the layer-``index`` sweep to the seed produced by ``index`` earlier sweeps."""
    sched = schedule_mu_tilde(t, w, index, seed=s, sweep=index)
    out, traces = run_schedule(s, sched, t.relabel)
    interior = (w.interior(index + 1) if w is not None and t.arity > 1 else 0)
    return SweepResult(index, len(sched), out, traces, interior)


# -- rank-N period-1 families --------------------------------------------------

def _update_at_first(f: LaurentPoly, i: int, f0: LaurentPoly, n: int) -> LaurentPoly:
    """Exchange-polynomial update of ``F_i`` when ``x_0`` mutates to ``x_n`` (F-hat = F_0)."""
    from .seed import _remove_common_factors

    if not f.depends_on((0,)):
        return f
    a = substitute(f0, (i,), LaurentPoly.const(0))
    g = substitute(f, (0,), a * LaurentPoly.var((n,), -1))
    h = _remove_common_factors(g, a)
    return strip_monomial(h)[1]


def period1_closure(f0: LaurentPoly, n: int) -> tuple[LaurentPoly, ...]:
    """Exchange polynomials of the rank-``n`` period-1 seed whose first polynomial is ``f0``.

    Runs the period-1 condition backwards: ``F_{n-1} = u^{-1}(F_0)`` and
    ``F_{i-1} = u^{-1}(F_i')``.  Raises if the cycle does not close on ``f0``.
    """
    down = (-1,)
    polys = [None] * n
    polys[n - 1] = f0.shift(down)
    for i in range(n - 1, 0, -1):
        polys[i - 1] = _update_at_first(polys[i], i, f0, n).shift(down)
    if polys[0] != f0:
        raise ValueError(f"period-1 closure does not return to F_0: got {polys[0]}")
    return tuple(polys)


def product_family(n: int, exponents: tuple[int, ...] | None = None) -> SeedTemplate:
    """x_{n+N} x_n = prod x_{n+i}^{a_i} + 1."""
    if n < 2:
        raise ValueError("rank must be at least 2")
    exponents = tuple(exponents) if exponents else (1,) * (n - 1)
    if len(exponents) != n - 1 or min(exponents) < 1:
        raise ValueError("need N-1 positive exponents")
    f0 = ONE
    for i, a in enumerate(exponents, start=1):
        f0 = f0 * LaurentPoly.var((i,), a)
    f0 = f0 + 1
    return SeedTemplate(f"rank{n}-product", 1, (1,), period1_closure(f0, n), (n,))


def affine_family(n: int, a: int = 1, b: int = 1) -> SeedTemplate:
    """x_{n+N} x_n = x_{n+1} x_{n+N-1} + A * sum x_{n+i} + B."""
    if n < 2:
        raise ValueError("rank must be at least 2")
    if n == 3 and b == a * a:
        # x1*x2 + A*(x1 + x2) + A^2 = (x1 + A)(x2 + A)
        raise ValueError(f"rank-3 affine recurrence with B = A^2 is reducible (A={a}, B={b})")
    f0 = LaurentPoly.var((1,)) * LaurentPoly.var((n - 1,))
    for i in range(1, n):
        f0 = f0 + a * LaurentPoly.var((i,))
    f0 = f0 + b
    return SeedTemplate(f"rank{n}-affine", 1, (1,), period1_closure(f0, n), (n,))


_FAMILY = re.compile(r"^rank(\d+)-(product|affine)$")


def get_template(name: str, **params) -> SeedTemplate:
    """Look up a template by registry name.

    Families take ``rankN-product`` / ``rankN-affine`` with N a number (or
    ``N=`` in params), plus ``exponents`` or ``A``/``B``.
    """
    named = _named_templates()
    if name in named:
        return named[name]
    n = params.get("N")
    m = _FAMILY.match(name)
    if m:
        n, kind = int(m.group(1)), m.group(2)
    elif name in ("rankN-product", "rankN-affine"):
        kind = name.split("-")[1]
        if n is None:
            raise KeyError(f"{name} needs the rank N")
    else:
        raise KeyError(f"unknown template {name!r}")
    n = int(n)
    if kind == "product":
        return product_family(n, params.get("exponents"))
    return affine_family(n, int(params.get("A", 1)), int(params.get("B", 1)))


def template_names() -> list[str]:
    return list(NAMED_TEMPLATES) + ["rankN-product", "rankN-affine"]


def builtin_seeds(max_rank: int = 5, radius: int = 2) -> dict[str, Seed]:
    """Every built-in seed at a test size: windows for lattices, rank 2..max_rank families."""
    out = {}
    for name in NAMED_TEMPLATES:
        t = get_template(name)
        out[name] = instantiate(t, Window(radius) if t.arity > 1 else None)
    for n in range(2, max_rank + 1):
        out[f"rank{n}-product"] = instantiate(get_template(f"rank{n}-product"))
        # the default A = B = 1 is reducible at rank 3
        params = {"B": 2} if n == 3 else {}
        out[f"rank{n}-affine"] = instantiate(get_template(f"rank{n}-affine", **params))
    return out
