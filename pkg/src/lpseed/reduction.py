"""Reductions: linear index maps that collapse one lattice onto a smaller one.

Each map is stored in closed form as an integer matrix acting on index
vectors.  The one-step identification it comes from (two indices naming the
same variable) is kept as ``step``; ``check_derivation`` confirms the matrix
is its closure.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .laurent import ArityError, LaurentPoly, VarKey
from .templates import SeedTemplate


def _matvec(mat, v) -> tuple[int, ...]:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in mat)


def _matmul(a, b) -> tuple[tuple[int, ...], ...]:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


@dataclass(frozen=True)
class ReductionMap:
    name: str
    matrix: tuple[tuple[int, ...], ...]  # target_arity rows, source_arity columns
    # difference between two source indices that name the same variable
    step: tuple[int, ...] | None = None

    @property
    def source_arity(self) -> int:
        return len(self.matrix[0])

    @property
    def target_arity(self) -> int:
        return len(self.matrix)

    def __call__(self, v: VarKey) -> VarKey:
        if len(v) != self.source_arity:
            raise ArityError(f"{self.name} expects arity {self.source_arity}, got {len(v)}")
        return _matvec(self.matrix, v)

    def check_derivation(self) -> bool:
        """The matrix kills the one-step identification and fixes the kept coordinates.

        Together these say the closed form is the closure of the one-step rule
        with representatives normalized to zero in the eliminated coordinates.
        """
        if self.step is None:
            return True
        if any(_matvec(self.matrix, self.step)):
            return False
        for i in range(self.target_arity):
            e = tuple(int(j == i) for j in range(self.source_arity))
            if self(e) != tuple(int(j == i) for j in range(self.target_arity)):
                return False
        return True

    def step_twice(self, v: VarKey) -> bool:
        """Applying the one-step identity twice lands on the same image."""
        if self.step is None:
            return True
        w = tuple(a + 2 * s for a, s in zip(v, self.step))
        return self(w) == self(v)


REDUCTIONS = {
    # x_n^{m,l+1} = x_{n+1}^{m+1,l}
    "reduction1": ReductionMap("reduction1", ((1, 0, 1), (0, 1, 1)), (-1, -1, 1)),
    # x_n^{m+1} = x_{n+2}^m
    "reduction2": ReductionMap("reduction2", ((1, 2),), (-2, 1)),
    # x_n^{m,l+1} = x_{n+2}^{m,l}
    "reduction3": ReductionMap("reduction3", ((1, 0, 2), (0, 1, 0)), (-2, 0, 1)),
    # x_n^{m+1} = x_{n+4}^m
    "reduction4": ReductionMap("reduction4", ((1, 4),), (-4, 1)),
}

# reductions chained from the first template to the second
PAIRINGS = {
    "reduction1": ("dbkp", "2d1"),
    "reduction2": ("2d1", "somos6"),
    "reduction3": ("dbkp-alt", "2d2"),
    "reduction4": ("2d2", "somos7"),
}


def identity(arity: int) -> ReductionMap:
    return ReductionMap(
        f"id{arity}", tuple(tuple(int(i == j) for j in range(arity)) for i in range(arity))
    )


def compose(r1: ReductionMap, r2: ReductionMap) -> ReductionMap:
    """Apply ``r1`` then ``r2``."""
    if r1.target_arity != r2.source_arity:
        raise ArityError(f"cannot chain {r1.name} (arity {r1.target_arity}) into {r2.name}")
    if r1.name.startswith("id"):
        return r2
    if r2.name.startswith("id"):
        return r1
    return ReductionMap(f"{r1.name};{r2.name}", _matmul(r2.matrix, r1.matrix))


def get_reduction(name: str) -> ReductionMap:
    """Registry lookup; ``a;b`` chains registered maps."""
    parts = [p.strip() for p in name.split(";")]
    try:
        maps = [REDUCTIONS[p] for p in parts]
    except KeyError as exc:
        raise KeyError(f"unknown reduction {exc.args[0]!r}") from None
    out = maps[0]
    for r in maps[1:]:
        out = compose(out, r)
    return out


def apply_reduction(p: LaurentPoly, r: ReductionMap) -> LaurentPoly:
    if p.arity not in (None, r.source_arity):
        raise ArityError(f"{r.name} expects arity {r.source_arity}, got {p.arity}")
    return p.map_vars(r)


@dataclass
class LayerDiff:
    layer: int
    expected: LaurentPoly | None
    got: LaurentPoly | None


@dataclass
class ReductionCheck:
    ok: bool
    diffs: list[LayerDiff] = field(default_factory=list)
    layer_function_ok: bool = True
    relabel_ok: bool = True
    problems: list[str] = field(default_factory=list)


def verify_reduction(src: SeedTemplate, r: ReductionMap, dst: SeedTemplate) -> ReductionCheck:
    """Layer-by-layer identity ``r(src.F_i) == dst.F_i`` plus layer/relabel compatibility."""
    out = ReductionCheck(True)
    if src.arity != r.source_arity or dst.arity != r.target_arity:
        out.ok = False
        out.problems.append(
            f"arity mismatch: {src.name} {src.arity} -> {dst.name} {dst.arity} via {r.name}"
        )
        return out
    if src.rank != dst.rank:
        out.ok = False
        out.problems.append(f"rank mismatch: {src.rank} vs {dst.rank}")
        return out
    for i, (f, g) in enumerate(zip(src.polys, dst.polys)):
        got = apply_reduction(f, r)
        if got != g:
            out.diffs.append(LayerDiff(i, g, got))
    # lambda_dst(r(v)) == lambda_src(v) for every v
    pulled = _matvec(tuple(zip(*r.matrix)), dst.layer_coeffs)
    if pulled != tuple(src.layer_coeffs):
        out.layer_function_ok = False
        out.problems.append(f"layer function pulls back to {pulled}, expected {src.layer_coeffs}")
    if r(src.relabel) != tuple(dst.relabel):
        out.relabel_ok = False
        out.problems.append(f"relabel maps to {r(src.relabel)}, expected {dst.relabel}")
    out.ok = not out.diffs and out.layer_function_ok and out.relabel_ok
    return out
