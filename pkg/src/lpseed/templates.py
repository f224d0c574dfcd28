"""Built-in seed templates: layer polynomials, layer functions and relabel shifts.

A template of arity ``a`` and rank ``R`` has one exchange polynomial per layer
``i in [0, R-1]`` written at transverse position 0.  The layer of ``x[n,m,l]``
is ``n + c1*m + c2*l``; the polynomial at layer ``i`` and transverse ``t`` is
the base polynomial translated by ``(-(c . t), *t)``.  Mutated variables are
renamed by adding ``relabel``, which raises the layer by ``R``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .expr import parse_expr
from .laurent import LaurentPoly, VarKey


@dataclass(frozen=True)
class SeedTemplate:
    name: str
    arity: int
    layer_coeffs: tuple[int, ...]  # c with c[0] == 1
    polys: tuple[LaurentPoly, ...]
    relabel: tuple[int, ...]
    # rows map transverse (m, l) to the (j, k) labels that order mutation shells
    label_matrix: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.layer_coeffs[0] != 1 or len(self.layer_coeffs) != self.arity:
            raise ValueError(f"{self.name}: bad layer function {self.layer_coeffs}")
        if len(self.relabel) != self.arity:
            raise ValueError(f"{self.name}: relabel arity mismatch")
        if self.layer(self.relabel) != self.rank:
            raise ValueError(f"{self.name}: relabel must raise the layer by the rank")
        for i, f in enumerate(self.polys):
            if f.arity not in (None, self.arity):
                raise ValueError(f"{self.name}: F_{i} has arity {f.arity}")
            for v in f.support():
                if not 0 <= self.layer(v) < self.rank:
                    raise ValueError(f"{self.name}: F_{i} mentions x{list(v)} outside layers 0..{self.rank - 1}")
                if self.layer(v) == i and self.transverse(v) == (0,) * (self.arity - 1):
                    raise ValueError(f"{self.name}: F_{i} depends on its own variable")

    @property
    def rank(self) -> int:
        return len(self.polys)

    def layer(self, v: VarKey) -> int:
        return sum(c * a for c, a in zip(self.layer_coeffs, v))

    @staticmethod
    def transverse(v: VarKey) -> tuple[int, ...]:
        return tuple(v[1:])

    def var_at(self, layer: int, t: tuple[int, ...] = ()) -> VarKey:
        n = layer - sum(c * a for c, a in zip(self.layer_coeffs[1:], t))
        return (n,) + tuple(t)

    def site_of(self, v: VarKey) -> tuple[int, tuple[int, ...]]:
        return self.layer(v), self.transverse(v)

    def offset(self, t: tuple[int, ...]) -> VarKey:
        return self.var_at(0, t)

    def poly_at(self, layer: int, t: tuple[int, ...] = ()) -> LaurentPoly:
        """F at layer ``layer`` (0..R-1) and transverse position ``t``."""
        f = self.polys[layer]
        if not any(t):
            return f
        return f.shift(self.offset(t))

    def labels(self, t: tuple[int, ...]) -> tuple[int, ...]:
        if not self.label_matrix:
            return tuple(t)
        return tuple(sum(r * a for r, a in zip(row, t)) for row in self.label_matrix)

    def footprint(self) -> int:
        """Largest transverse offset of any variable in any layer polynomial."""
        return max((abs(a) for f in self.polys for v in f.support() for a in v[1:]), default=0)

    def shift_up(self, v: VarKey, n: int = 1) -> VarKey:
        return (v[0] + n,) + tuple(v[1:])


def _polys(*texts: str) -> tuple[LaurentPoly, ...]:
    return tuple(parse_expr(t) for t in texts)


DBKP_POLYS = (
    "x[0,1,1]*x[1,0,0] + x[0,1,0]*x[1,0,1] + x[0,0,1]*x[1,1,0]",
    "x[0,1,0]*x[1,0,1]*x[2,0,0] + x[0,0,1]*x[1,1,0]*x[2,0,0]"
    " + x[0,0,0]*x[1,1,0]*x[2,0,1] + x[0,0,0]*x[1,0,1]*x[2,1,0]",
    "x[1,1,0]*x[2,-1,0]*x[2,0,1]*x[3,0,0] + x[1,0,1]*x[2,-1,0]*x[2,1,0]*x[3,0,0]"
    " + x[1,0,0]*x[2,-1,1]*x[2,1,0]*x[3,0,0] + x[1,0,0]*x[2,-1,0]*x[2,0,1]*x[3,1,0]"
    " + x[1,0,0]*x[2,0,1]*x[2,1,0]*x[3,-1,0]",
    "x[4,-1,0]*x[3,1,0]*x[3,0,-1]*x[2,0,0] + x[4,0,-1]*x[3,1,0]*x[3,-1,0]*x[2,0,0]"
    " + x[4,0,0]*x[3,1,-1]*x[3,-1,0]*x[2,0,0] + x[4,0,0]*x[3,1,0]*x[3,0,-1]*x[2,-1,0]"
    " + x[4,0,0]*x[3,0,-1]*x[3,-1,0]*x[2,1,0]",
    "x[5,-1,0]*x[4,0,-1]*x[3,0,0] + x[5,0,-1]*x[4,-1,0]*x[3,0,0]"
    " + x[5,0,0]*x[4,-1,0]*x[3,0,-1] + x[5,0,0]*x[4,0,-1]*x[3,-1,0]",
    "x[5,-1,-1]*x[4,0,0] + x[5,-1,0]*x[4,0,-1] + x[5,0,-1]*x[4,-1,0]",
)

DBKP_ALT_POLYS = (
    "x[0,1,1]*x[1,0,0] + x[0,1,0]*x[1,0,1] + x[0,0,1]*x[1,1,0]",
    "x[0,1,0]*x[1,0,1]*x[2,0,0] + x[0,0,1]*x[1,1,0]*x[2,0,0]"
    " + x[0,0,0]*x[1,1,0]*x[2,0,1] + x[0,0,0]*x[1,0,1]*x[2,1,0]",
    "x[1,1,0]*x[2,0,1]*x[2,0,-1]*x[3,0,0] + x[1,0,1]*x[2,0,-1]*x[2,1,0]*x[3,0,0]"
    " + x[1,0,0]*x[2,0,1]*x[2,1,-1]*x[3,0,0] + x[1,0,0]*x[2,0,-1]*x[2,1,0]*x[3,0,1]"
    " + x[1,0,0]*x[2,0,1]*x[2,1,0]*x[3,0,-1]",
    "x[2,0,-1]*x[3,0,1]*x[4,0,0] + x[2,0,1]*x[3,0,-1]*x[4,0,0]"
    " + x[2,0,0]*x[3,0,-1]*x[4,0,1] + x[2,0,0]*x[3,0,1]*x[4,0,-1]",
    "x[5,-1,0]*x[4,0,-1]*x[4,0,1]*x[3,0,0] + x[5,0,-1]*x[4,0,1]*x[4,-1,0]*x[3,0,0]"
    " + x[5,0,0]*x[4,0,-1]*x[4,-1,1]*x[3,0,0] + x[5,0,0]*x[4,0,1]*x[4,-1,0]*x[3,0,-1]"
    " + x[5,0,0]*x[4,0,-1]*x[4,-1,0]*x[3,0,1]",
    "x[6,-1,0]*x[5,0,-1]*x[4,0,0] + x[6,0,-1]*x[5,-1,0]*x[4,0,0]"
    " + x[6,0,0]*x[5,-1,0]*x[4,0,-1] + x[6,0,0]*x[5,0,-1]*x[4,-1,0]",
    "x[6,-1,-1]*x[5,0,0] + x[6,-1,0]*x[5,0,-1] + x[6,0,-1]*x[5,-1,0]",
)

TWO_D1_POLYS = (
    "x[1,2]*x[1,0] + x[0,1]*x[2,1] + x[1,1]^2",
    "x[0,1]*x[2,1]*x[2,0] + x[1,1]^2*x[2,0] + x[0,0]*x[1,1]*x[3,1] + x[0,0]*x[2,1]^2",
    "x[1,1]*x[2,-1]*x[3,1]*x[3,0] + x[2,1]^2*x[2,-1]*x[3,0] + x[1,0]*x[3,0]^2*x[2,1]"
    " + x[1,0]*x[2,-1]*x[3,1]^2 + x[1,0]*x[3,1]*x[2,1]*x[3,-1]",
    "x[4,-1]*x[3,1]*x[2,-1]*x[2,0] + x[3,-1]^2*x[3,1]*x[2,0] + x[4,0]*x[2,0]^2*x[3,-1]"
    " + x[4,0]*x[3,1]*x[2,-1]^2 + x[4,0]*x[2,-1]*x[3,-1]*x[2,1]",
    "x[5,-1]*x[3,-1]*x[3,0] + x[4,-1]^2*x[3,0] + x[5,0]*x[4,-1]*x[2,-1] + x[5,0]*x[3,-1]^2",
    "x[4,-2]*x[4,0] + x[5,-1]*x[3,-1] + x[4,-1]^2",
)

TWO_D2_POLYS = (
    "x[2,1]*x[1,0] + x[0,1]*x[3,0] + x[2,0]*x[1,1]",
    "x[0,1]*x[3,0]*x[2,0] + x[2,0]^2*x[1,1] + x[0,0]*x[1,1]*x[4,0] + x[0,0]*x[3,0]*x[2,1]",
    "x[1,1]*x[4,0]*x[0,0]*x[3,0] + x[3,0]^2*x[0,0]*x[2,1] + x[1,0]*x[4,0]*x[0,1]*x[3,0]"
    " + x[1,0]*x[0,0]*x[2,1]*x[5,0] + x[1,0]^2*x[4,0]*x[2,1]",
    "x[0,0]*x[5,0]*x[4,0] + x[4,0]^2*x[1,0] + x[2,0]*x[1,0]*x[6,0] + x[2,0]^2*x[5,0]",
    "x[5,-1]*x[2,0]*x[6,0]*x[3,0] + x[3,0]^2*x[6,0]*x[4,-1] + x[5,0]*x[2,0]*x[6,-1]*x[3,0]"
    " + x[5,0]*x[6,0]*x[4,-1]*x[1,0] + x[5,0]^2*x[2,0]*x[4,-1]",
    "x[6,-1]*x[3,0]*x[4,0] + x[4,0]^2*x[5,-1] + x[6,0]*x[5,-1]*x[2,0] + x[6,0]*x[3,0]*x[4,-1]",
    "x[4,-1]*x[5,0] + x[6,-1]*x[3,0] + x[4,0]*x[5,-1]",
)

SOMOS6_POLYS = (
    "x[5]*x[1] + x[2]*x[4] + x[3]^2",
    "x[2]^2*x[4] + x[3]^2*x[2] + x[0]*x[3]*x[5] + x[0]*x[4]^2",
    "x[3]^2*x[0]*x[5] + x[4]^2*x[0]*x[3] + x[1]*x[3]^2*x[4] + x[1]*x[0]*x[5]^2 + x[1]^2*x[5]*x[4]",
    "x[2]^2*x[5]*x[0] + x[1]^2*x[5]*x[2] + x[4]*x[2]^2*x[1] + x[4]*x[5]*x[0]^2 + x[4]^2*x[0]*x[1]",
    "x[3]^2*x[1] + x[2]^2*x[3] + x[5]*x[2]*x[0] + x[5]*x[1]^2",
    "x[0]*x[4] + x[3]*x[1] + x[2]^2",
)

SOMOS7_POLYS = (
    "x[6]*x[1] + x[4]*x[3] + x[2]*x[5]",
    "x[4]*x[3]*x[2] + x[2]^2*x[5] + x[0]*x[5]*x[4] + x[0]*x[3]*x[6]",
    "x[5]*x[4]*x[0]*x[3] + x[3]^2*x[0]*x[6] + x[1]*x[4]^2*x[3] + x[1]*x[0]*x[6]*x[5] + x[1]^2*x[4]*x[6]",
    "x[0]*x[5]*x[4] + x[4]^2*x[1] + x[2]*x[1]*x[6] + x[2]^2*x[5]",
    "x[1]*x[2]*x[6]*x[3] + x[3]^2*x[6]*x[0] + x[5]*x[2]^2*x[3] + x[5]*x[6]*x[0]*x[1] + x[5]^2*x[2]*x[0]",
    "x[2]*x[3]*x[4] + x[4]^2*x[1] + x[6]*x[1]*x[2] + x[6]*x[3]*x[0]",
    "x[0]*x[5] + x[2]*x[3] + x[4]*x[1]",
)


@lru_cache(maxsize=None)
def _named_templates() -> dict[str, SeedTemplate]:
    return {
        "dbkp": SeedTemplate("dbkp", 3, (1, 2, 3), _polys(*DBKP_POLYS), (1, 1, 1), ((1, 1), (0, 1))),
        "dbkp-alt": SeedTemplate("dbkp-alt", 3, (1, 4, 2), _polys(*DBKP_ALT_POLYS), (1, 1, 1)),
        "2d1": SeedTemplate("2d1", 2, (1, 2), _polys(*TWO_D1_POLYS), (2, 2)),
        "2d2": SeedTemplate("2d2", 2, (1, 4), _polys(*TWO_D2_POLYS), (3, 1)),
        "somos6": SeedTemplate("somos6", 1, (1,), _polys(*SOMOS6_POLYS), (6,)),
        "somos7": SeedTemplate("somos7", 1, (1,), _polys(*SOMOS7_POLYS), (7,)),
    }


NAMED_TEMPLATES = ("dbkp", "dbkp-alt", "2d1", "2d2", "somos6", "somos7")
FAMILY_TEMPLATES = ("rankN-product", "rankN-affine")
