# src/torus/grading.py - Torus actions as integer gradings: weights, homogeneity, H-stability

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ..algebra.pbw_core import AlgebraPresentation, Monomial, NcPoly
from ..utils.errors import PresentationError

logger = logging.getLogger(__name__)

Weight = Tuple[int, ...]

GRADING_PRESETS = ("affine", "matrix", "sl2-style")


@dataclass(frozen=True)
class GradingSpec:
    """Z^rank grading: one weight vector per generator"""

    rank: int
    weights: Tuple[Weight, ...]
    name: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(tuple(int(x) for x in w) for w in self.weights))
        for w in self.weights:
            if len(w) != self.rank:
                raise PresentationError(f"Weight {w} does not have length {self.rank}", grading=self.name)

    def zero(self) -> Weight:
        return (0,) * self.rank

    def check_fits(self, presentation: AlgebraPresentation):
        if len(self.weights) != len(presentation.gens):
            raise PresentationError(
                f"Grading {self.name} has {len(self.weights)} weights for {len(presentation.gens)} generators"
            )

    def to_dict(self) -> dict:
        return {"name": self.name, "rank": self.rank, "weights": [list(w) for w in self.weights]}


def weight_of(m: Monomial, g: GradingSpec) -> Weight:
    """Sum of generator weights times exponents"""
    total = [0] * g.rank
    for e, w in zip(m, g.weights):
        if e:
            for k in range(g.rank):
                total[k] += e * w[k]
    return tuple(total)


def is_homogeneous(p: NcPoly, g: GradingSpec) -> Optional[Weight]:
    """Common weight of all terms, or None when the terms disagree.

    The zero polynomial is reported with the zero weight.
    """
    g.check_fits(p.presentation)
    common = None
    for mono, _ in p.terms():
        w = weight_of(mono, g)
        if common is None:
            common = w
        elif w != common:
            return None
    return common if common is not None else g.zero()


def h_stable_by_generators(gens: Sequence[NcPoly], g: GradingSpec) -> bool:
    """Homogeneous generators give an H-stable ideal (sufficient, not necessary)"""
    return all(is_homogeneous(p, g) is not None for p in gens)


def unbalanced_relations(presentation: AlgebraPresentation, g: GradingSpec) -> List[str]:
    """Rules whose correction terms change the weight of left*right"""
    g.check_fits(presentation)
    bad = []
    for (u, v), rule in sorted(presentation.rules.items()):
        expected = tuple(a + b for a, b in zip(g.weights[u], g.weights[v]))
        for mono, _ in rule.corrections:
            if weight_of(mono, g) != expected:
                bad.append(f"{presentation.gens[u]}*{presentation.gens[v]}")
                break
    return bad


def relations_balanced(presentation: AlgebraPresentation, g: GradingSpec) -> bool:
    return not unbalanced_relations(presentation, g)


def affine_grading(size: int) -> GradingSpec:
    """weight(x_i) = e_i"""
    return GradingSpec(size, tuple(tuple(1 if k == i else 0 for k in range(size)) for i in range(size)), "affine")


def matrix_grading(n: int) -> GradingSpec:
    """weight(X[i,j]) = e_i + f_j in Z^2n"""
    weights = []
    for i in range(n):
        for j in range(n):
            w = [0] * (2 * n)
            w[i] = 1
            w[n + j] = 1
            weights.append(tuple(w))
    return GradingSpec(2 * n, tuple(weights), "matrix")


def sl2_style_grading(n: int) -> GradingSpec:
    """weight(X[i,j]) = (3 - 2i, 3 - 2j)"""
    weights = [(3 - 2 * i, 3 - 2 * j) for i in range(1, n + 1) for j in range(1, n + 1)]
    return GradingSpec(2, tuple(weights), "sl2-style")


def grading_from_presentation(presentation: AlgebraPresentation) -> GradingSpec:
    if presentation.weights is None:
        raise PresentationError(f"Presentation {presentation.kind} carries no weights")
    rank = len(presentation.weights[0]) if presentation.weights else 0
    return GradingSpec(rank, presentation.weights, f"{presentation.kind}-weights")


def create_grading(name: Optional[str], presentation: AlgebraPresentation) -> GradingSpec:
    """Factory function: named grading preset for a presentation (None = its own weights)"""
    if name is None:
        return grading_from_presentation(presentation)
    if name == "affine":
        return affine_grading(len(presentation.gens))
    if name in ("matrix", "sl2-style"):
        if not presentation.kind.startswith("quantum-matrices") or presentation.n is None:
            raise PresentationError(f"Grading {name} needs a quantum matrix algebra", grading=name)
        if len(presentation.gens) != presentation.n ** 2:
            raise PresentationError(f"Grading {name} needs the full set of X[i,j] generators", grading=name)
        return matrix_grading(presentation.n) if name == "matrix" else sl2_style_grading(presentation.n)
    raise PresentationError(f"Unknown grading {name!r}", known=list(GRADING_PRESETS))
