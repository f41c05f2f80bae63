# src/twist/quotient_map.py - Topological quotient map k^3 -> prim O_q(k^3), fibres and preimages

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from ..algebra.pbw_core import AlgebraPresentation, NcPoly
from ..algebra.presets import preset_algebra
from ..scalars.scalar_ring import ParamSpace, Scalar
from ..torus.strata import orbit_index
from ..utils.errors import TwistError

logger = logging.getLogger(__name__)

Coordinate = Union[Scalar, int]

# zero-pattern (which coordinates vanish) -> shape tag
SHAPES = {
    (True, True, True): "origin",
    (False, True, True): "axis-1",
    (True, False, True): "axis-2",
    (True, True, False): "axis-3",
    (False, False, True): "plane-12",
    (False, True, False): "plane-13",
    (True, False, False): "plane-23",
    (False, False, False): "torus",
}


def quotient_space(*extra: str) -> ParamSpace:
    """p with q = p^2, plus extra formal symbols for point coordinates"""
    return ParamSpace.parse("p;q=p^2").extend(*extra)


@lru_cache(maxsize=None)
def _affine_three_space(space: ParamSpace) -> AlgebraPresentation:
    return preset_algebra("quantum-affine", 3, space.symbol("q"))


def quantum_affine_three_space(space: ParamSpace) -> AlgebraPresentation:
    """O_q(k^3) over a space declaring p with q = p^2"""
    if not (space.knows("p") and space.knows("q")) or space.symbol("q") != space.symbol("p") ** 2:
        raise TwistError("The quotient map needs a parameter p with q = p^2", space=str(space))
    return _affine_three_space(space)


def _is_zero(value: Coordinate) -> bool:
    return value.is_zero() if isinstance(value, Scalar) else value == 0


@dataclass
class IdealDescriptor:
    """Primitive ideal of O_q(k^3) attached to a point"""

    shape: str
    point: Tuple[Scalar, ...]
    generators: List[NcPoly] = field(default_factory=list)
    stratum: Tuple[int, ...] = ()

    def contains_generator(self, i: int) -> bool:
        """x_i lies in the ideal exactly when it is one of the pure generators"""
        return any(g == g.presentation.gen(i - 1) for g in self.generators)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "shape": self.shape,
            "point": [str(c) for c in self.point],
            "generators": [str(g) for g in self.generators],
            "stratum": list(self.stratum),
        }

    def __str__(self) -> str:
        return "<" + ", ".join(str(g) for g in self.generators) + ">"


def example216_map(point: Sequence[Coordinate], space: Optional[ParamSpace] = None) -> IdealDescriptor:
    """(l1, l2, l3) -> primitive ideal, one case per zero-pattern of the point"""
    if len(point) != 3:
        raise TwistError(f"Points of k^3 have three coordinates, got {len(point)}")
    if space is None:
        scalars = [c for c in point if isinstance(c, Scalar)]
        space = scalars[0].space if scalars else quotient_space()
    coords = tuple(c if isinstance(c, Scalar) else Scalar.constant(space, c) for c in point)
    algebra = quantum_affine_three_space(space)
    x = [algebra.gen(i) for i in range(3)]
    l1, l2, l3 = coords

    zeros = tuple(_is_zero(c) for c in coords)
    shape = SHAPES[zeros]
    if shape == "torus":
        generators = [(x[0] * x[2]).scale(l2) - x[1].scale(space.symbol("p") * l1 * l3)]
    elif shape.startswith("plane"):
        generators = [x[zeros.index(True)]]
    else:
        generators = [x[i] - coords[i] if not zeros[i] else x[i] for i in range(3)]

    stratum, _ = orbit_index(coords)
    return IdealDescriptor(shape, coords, generators, stratum)


def _proportional(a: NcPoly, b: NcPoly) -> bool:
    """a = u*b for a scalar u: same support and cross-multiplied coefficients agree"""
    terms_a, terms_b = dict(a.terms()), dict(b.terms())
    if terms_a.keys() != terms_b.keys():
        return False
    monos = list(terms_a)
    if not monos:
        return True
    m0 = monos[0]
    return all(terms_a[m] * terms_b[m0] == terms_a[m0] * terms_b[m] for m in monos[1:])


def fibre_equal(pt1: Sequence[Coordinate], pt2: Sequence[Coordinate], space: Optional[ParamSpace] = None) -> bool:
    """Both points map to the same primitive ideal"""
    d1, d2 = example216_map(pt1, space), example216_map(pt2, space)
    if d1.shape != d2.shape or len(d1.generators) != len(d2.generators):
        return False
    return all(_proportional(a, b) for a, b in zip(d1.generators, d2.generators))


def preimage_closed_check(generator: Union[int, str], space: Optional[ParamSpace] = None) -> Dict[str, Any]:
    """Points whose ideal contains x_i, as a union of coordinate subspaces, and its closedness"""
    names = ("x1", "x2", "x3")
    if isinstance(generator, str):
        if generator not in names:
            raise TwistError(f"Unsupported generator {generator!r}; expected one of {list(names)}")
        index = names.index(generator) + 1
    else:
        index = int(generator)
        if index not in (1, 2, 3):
            raise TwistError(f"Unsupported generator index {generator}")

    space = space or quotient_space("l1", "l2", "l3")
    symbols = [space.symbol(f"l{i}") if space.knows(f"l{i}") else Scalar.constant(space, i + 1) for i in (1, 2, 3)]

    in_preimage = []
    for zeros in itertools.product((False, True), repeat=3):
        point = [Scalar.zero(space) if z else s for z, s in zip(zeros, symbols)]
        if example216_map(point, space).contains_generator(index):
            in_preimage.append(frozenset(i + 1 for i in range(3) if zeros[i]))

    # closed under specialization: zeroing further coordinates stays inside
    closed = all(
        any(z | {extra} == other for other in in_preimage)
        for z in in_preimage for extra in (1, 2, 3)
    )
    minimal = sorted(
        (sorted(z) for z in in_preimage if not any(other < z for other in in_preimage)), key=lambda s: (len(s), s)
    )
    defining = [", ".join(f"l{i}" for i in component) if component else "0" for component in minimal]
    report = {
        "generator": names[index - 1],
        "zero_patterns": sorted((sorted(z) for z in in_preimage), key=lambda s: (len(s), s)),
        "components": minimal,
        "defining_polynomials": defining,
        "closed": closed,
        "hyperplane": minimal == [[index]],
    }
    logger.info(f"Preimage of {names[index - 1]}: components {minimal}, closed={closed}")
    return report
