"""Seeds of a Laurent phenomenon algebra and their mutation.

A seed is an ordered list of (cluster variable, exchange polynomial) pairs.
Entries can be frozen: they bound a finite window of an infinite seed, so
their polynomials may mention variables outside the seed, and they are never
mutated.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .laurent import (
    ONE,
    LaurentPoly,
    Monomial,
    VarKey,
    content_in,
    divide_out,
    eval_at_quotient,
    exact_divide,
    gcd,
    is_squarefree,
    mono_inv,
    strip_monomial,
    substitute,
)


class SeedError(ValueError):
    """Malformed seed (duplicate variables, mixed arity)."""


class MutationError(ValueError):
    """A mutation was refused or one of its postconditions failed."""


@dataclass(frozen=True)
class SeedEntry:
    var: VarKey
    exch: LaurentPoly
    frozen: bool = False


class Seed:
    """Immutable ordered collection of seed entries."""

    __slots__ = ("_entries", "_pos", "_arity")

    def __init__(self, entries: Iterable):
        es = []
        for e in entries:
            if not isinstance(e, SeedEntry):
                e = SeedEntry(tuple(e[0]), e[1], bool(e[2]) if len(e) > 2 else False)
            es.append(SeedEntry(tuple(e.var), e.exch, e.frozen))
        pos = {}
        arity = None
        for i, e in enumerate(es):
            if e.var in pos:
                raise SeedError(f"duplicate cluster variable x{list(e.var)}")
            pos[e.var] = i
            if arity is None:
                arity = len(e.var)
            elif len(e.var) != arity:
                raise SeedError("cluster variables of mixed index arity")
            pa = e.exch.arity
            if pa is not None and pa != arity:
                raise SeedError(f"exchange polynomial of x{list(e.var)} has arity {pa}")
        self._entries = tuple(es)
        self._pos = pos
        self._arity = arity

    @property
    def entries(self) -> tuple[SeedEntry, ...]:
        return self._entries

    @property
    def arity(self) -> int | None:
        return self._arity

    @property
    def variables(self) -> list[VarKey]:
        return [e.var for e in self._entries]

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def __contains__(self, v) -> bool:
        return tuple(v) in self._pos

    def entry(self, v: VarKey) -> SeedEntry:
        try:
            return self._entries[self._pos[tuple(v)]]
        except KeyError:
            raise KeyError(f"x{list(v)} is not a cluster variable of this seed") from None

    def exch(self, v: VarKey) -> LaurentPoly:
        return self.entry(v).exch

    def as_dict(self) -> dict[VarKey, tuple[LaurentPoly, bool]]:
        return {e.var: (e.exch, e.frozen) for e in self._entries}

    def same_as(self, other: "Seed") -> bool:
        """Entrywise equality, ignoring entry order."""
        return self.as_dict() == other.as_dict()

    def __eq__(self, other):
        if not isinstance(other, Seed):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self):
        return hash(self._entries)

    def replace(self, updates: dict[VarKey, SeedEntry]) -> "Seed":
        """New seed with the entries at the given positions swapped out."""
        return Seed(updates.get(e.var, e) for e in self._entries)

    def map_indices(self, fn: Callable[[VarKey], VarKey]) -> "Seed":
        return Seed(
            SeedEntry(tuple(fn(e.var)), e.exch.map_vars(fn), e.frozen) for e in self._entries
        )

    def shift(self, offset: VarKey) -> "Seed":
        offset = tuple(offset)
        return Seed(
            SeedEntry(tuple(a + b for a, b in zip(e.var, offset)), e.exch.shift(offset), e.frozen)
            for e in self._entries
        )

    def restrict(self, keep: Callable[[SeedEntry], bool]) -> "Seed":
        return Seed(e for e in self._entries if keep(e))

    def __repr__(self):
        return f"Seed({len(self._entries)} entries, arity={self._arity})"


# -- validation --------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    var: VarKey
    check: str
    detail: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)
    irreducibility: str = "not certified"

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, var, check, detail):
        self.violations.append(Violation(var, check, detail))


def check_entry(var: VarKey, f: LaurentPoly, frozen: bool = False) -> list[tuple[str, str]]:
    """Decidable LP1/LP2 checks for one exchange polynomial."""
    if f.is_zero():
        return [("LP1", "exchange polynomial is zero")]
    out = []
    if not f.is_polynomial():
        out.append(("LP1", "exchange polynomial has negative exponents"))
    if f.depends_on(var):
        out.append(("LP2", f"depends on its own variable x{list(var)}"))
    if frozen:
        return out
    m, q = strip_monomial(f)
    for v, e in m:
        if e > 0:
            out.append(("LP1", f"divisible by x{list(v)}"))
    if q.content() != 1:
        out.append(("LP1", f"integer content {q.content()}"))
    if q.is_constant():
        # a nonzero constant other than ±1 is reported above; ±1 is allowed
        return out
    for v in sorted(q.support()):
        if content_in(q, v) != ONE:
            out.append(("LP1", f"reducible: nontrivial content in x{list(v)}"))
            break
    if not is_squarefree(q):
        out.append(("LP1", "reducible: has a repeated factor"))
    return out


def validate_seed(s: Seed) -> ValidationReport:
    report = ValidationReport()
    for e in s:
        for check, detail in check_entry(e.var, e.exch, e.frozen):
            report.add(e.var, check, detail)
        if not e.frozen:
            outside = [v for v in e.exch.support() if v not in s]
            if outside:
                report.add(e.var, "window", f"mentions x{list(min(outside))} outside the seed; mark it frozen")
    return report


# -- mutation ----------------------------------------------------------------

@dataclass(frozen=True)
class NormalizedExchange:
    fhat: LaurentPoly
    exponents: dict  # VarKey -> nonpositive int

    def is_trivial(self) -> bool:
        return all(a == 0 for a in self.exponents.values())


@dataclass(frozen=True)
class EntryUpdate:
    var: VarKey
    g: LaurentPoly
    h: LaurentPoly
    m: Monomial
    f_new: LaurentPoly


@dataclass(frozen=True)
class MutationTrace:
    at: VarKey
    new_var: VarKey
    fhat: NormalizedExchange
    new_var_value: LaurentPoly
    updates: tuple[EntryUpdate, ...]


def _mutable_entry(s: Seed, k: VarKey) -> SeedEntry:
    ent = s.entry(k)
    if ent.frozen:
        raise MutationError(f"x{list(k)} is frozen and cannot be mutated")
    return ent


def normalize_exchange(s: Seed, k: VarKey) -> NormalizedExchange:
    """Find the exponents a_j <= 0 that make x^a * F_k pass every substitution test."""
    k = tuple(k)
    f = _mutable_entry(s, k).exch
    exps = {}
    mono = []
    for j in sorted(f.support()):
        if j == k:
            raise MutationError(f"exchange polynomial of x{list(k)} depends on x{list(k)}")
        if j not in s:
            raise MutationError(f"x{list(k)}'s polynomial mentions x{list(j)} outside the seed")
        _, e = eval_at_quotient(f, j, s.exch(j))
        exps[j] = -e
        if e:
            mono.append((j, -e))
    fhat = f * LaurentPoly.monomial(tuple(mono)) if mono else f
    _recheck_normalization(s, k, f, exps)
    return NormalizedExchange(fhat, exps)


def _recheck_normalization(s: Seed, k: VarKey, f: LaurentPoly, exps: dict) -> None:
    for j, a in exps.items():
        fj = s.exch(j)
        r = substitute(f, j, fj * LaurentPoly.var(j, -1))
        if a:
            r = exact_divide(r, fj ** (-a))
            if r is None:
                raise MutationError(f"normalization of x{list(k)} is not Laurent at x{list(j)}")
        if exact_divide(r, fj) is not None:
            raise MutationError(f"normalization of x{list(k)} still divisible by F at x{list(j)}")
    sup = f.support()
    for e in s:
        if e.var == k or e.var in exps or e.exch.is_constant():
            continue
        # a non-monomial F_j with a variable outside supp(F_k) cannot divide it
        if e.exch.support() <= sup and exact_divide(f, e.exch) is not None:
            raise MutationError(f"exchange polynomial of x{list(k)} divisible by F at x{list(e.var)}")


def default_new_var(s: Seed, k: VarKey) -> VarKey:
    """Fresh key: first index one past every index used in the seed."""
    used = set(s.variables)
    for e in s:
        used |= e.exch.support()
    top = max(v[0] for v in used)
    return (top + 1,) + tuple(k[1:])


def dependence_closure(s: Seed, k: VarKey) -> list[VarKey]:
    """Variables whose exchange polynomial depends on ``x_k``."""
    k = tuple(k)
    return [e.var for e in s if e.exch.depends_on(k)]


def _remove_common_factors(g: LaurentPoly, a: LaurentPoly) -> LaurentPoly:
    m, g0 = strip_monomial(g)
    _, a0 = strip_monomial(a)
    while True:
        c = gcd(g0, a0)
        if c.is_unit():
            break
        q = exact_divide(g0, c)
        assert q is not None
        g0 = q
    return g0 * LaurentPoly.monomial(m) if m else g0


def mutate(s: Seed, k: VarKey, new_var: VarKey | None = None) -> tuple[Seed, MutationTrace]:
    """Mutate ``s`` at ``x_k``; the new cluster variable is named ``new_var``."""
    k = tuple(k)
    ent = _mutable_entry(s, k)
    nx = normalize_exchange(s, k)
    fhat = nx.fhat
    if new_var is None:
        new_var = default_new_var(s, k)
    new_var = tuple(new_var)
    if new_var != k and new_var in s:
        raise MutationError(f"new variable x{list(new_var)} already in the seed")
    for e in s:
        if e.exch.depends_on(new_var) and new_var != k:
            raise MutationError(f"new variable x{list(new_var)} clashes with a variable of F at x{list(e.var)}")
    x_new_inv = LaurentPoly.var(new_var, -1)
    new_value = fhat * LaurentPoly.var(k, -1)

    updates = {k: SeedEntry(new_var, ent.exch, ent.frozen)}
    records = []
    for e in s:
        i = e.var
        if i == k or not e.exch.depends_on(k):
            continue
        if fhat.min_degree_in(i) < 0:
            raise MutationError(f"F-hat at x{list(k)} has a negative power of x{list(i)}")
        a = substitute(fhat, i, LaurentPoly.const(0))
        g = substitute(e.exch, k, a * x_new_inv)
        h = _remove_common_factors(g, a)
        m, f_new = strip_monomial(h)
        if f_new.depends_on(i):
            raise MutationError(f"updated F at x{list(i)} depends on its own variable")
        records.append(EntryUpdate(i, g, h, mono_inv(m), f_new))
        updates[i] = SeedEntry(i, f_new, e.frozen)
    trace = MutationTrace(k, new_var, nx, new_value, tuple(records))
    return s.replace(updates), trace


def mutate_sequence(s: Seed, steps: Sequence[tuple[VarKey, VarKey | None]]):
    traces = []
    for k, new in steps:
        s, t = mutate(s, k, new)
        traces.append(t)
    return s, traces


# -- properties --------------------------------------------------------------

@dataclass
class CheckResult:
    ok: bool
    witness: object = None


def check_involution(s: Seed, k: VarKey, new_var: VarKey | None = None) -> CheckResult:
    """Mutate at ``k`` and back; the original seed must come back exactly."""
    k = tuple(k)
    once, t = mutate(s, k, new_var)
    twice, _ = mutate(once, t.new_var, k)
    if twice == s:
        return CheckResult(True)
    for a, b in zip(s, twice):
        if a != b:
            return CheckResult(False, {"at": k, "expected": a, "got": b})
    return CheckResult(False, {"at": k})


def dependence_preserved(before: Seed, after: Seed, trace: MutationTrace) -> bool:
    """F'_i depends on x'_k exactly when F_i depended on x_k."""
    old = set(dependence_closure(before, trace.at)) - {trace.at}
    new = set(dependence_closure(after, trace.new_var)) - {trace.new_var}
    return old == new


def unit_shift(v: VarKey, n: int = 1) -> VarKey:
    return (v[0] + n,) + tuple(v[1:])


def detect_period1(s: Seed, shift: VarKey | None = None) -> CheckResult:
    """Is ``mu_0(s)`` the shift of ``s`` (mutating at the first entry)?"""
    if any(e.frozen for e in s):
        return CheckResult(False, "seed has frozen entries")
    arity = s.arity
    shift = tuple(shift) if shift is not None else (1,) + (0,) * (arity - 1)
    first = s.entries[0].var
    n = len(s)
    relabel = tuple(a + n * b for a, b in zip(first, shift))
    mutated, _ = mutate(s, first, relabel)
    expected = s.shift(shift).as_dict()
    got = mutated.as_dict()
    for v in sorted(set(expected) | set(got)):
        if expected.get(v) != got.get(v):
            return CheckResult(False, {"var": v, "expected": expected.get(v), "got": got.get(v)})
    return CheckResult(True)
