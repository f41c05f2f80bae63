# src/algebra/qmatrix.py - Quantum determinant, quantum minors and the bialgebra maps of O_q(M_n)

import itertools
import logging
import weakref
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation

from ..scalars.scalar_ring import ParamSpace, Scalar
from ..utils.errors import MinorIndexError, PresentationError
from .pbw_core import (
    AlgebraHom,
    AlgebraPresentation,
    NcPoly,
    compose_homs,
    ground_algebra,
    identity_hom,
    quotient_by_generators,
    tensor_element,
    tensor_homs,
    tensor_product,
    tensor_square,
)
from .presets import matrix_generator, preset_algebra

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MinorIndex:
    """Row set I and column set J of a quantum minor [I|J]"""

    I: Tuple[int, ...]
    J: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "I", tuple(self.I))
        object.__setattr__(self, "J", tuple(self.J))

    @property
    def size(self) -> int:
        return len(self.I)

    def validate(self, n: int):
        if len(self.I) != len(self.J):
            raise MinorIndexError(f"Index sets {list(self.I)} and {list(self.J)} differ in size")
        if not self.I:
            raise MinorIndexError("Minor index sets must be nonempty")
        for label, indices in (("row", self.I), ("column", self.J)):
            if any(b <= a for a, b in zip(indices, indices[1:])):
                raise MinorIndexError(f"{label} indices {list(indices)} are not strictly increasing")
            if indices[0] < 1 or indices[-1] > n:
                raise MinorIndexError(f"{label} indices {list(indices)} fall outside 1..{n}", n=n)

    def __str__(self) -> str:
        return f"[{','.join(map(str, self.I))}|{','.join(map(str, self.J))}]"


def permutation_length(images: Sequence[int]) -> int:
    """Inversion count of a permutation given by its 1-based images"""
    return Permutation([i - 1 for i in images]).inversions()


def _require_matrix_algebra(algebra: AlgebraPresentation):
    if algebra.kind != "quantum-matrices" or algebra.parameter is None:
        raise PresentationError(f"Operation needs a quantum matrix algebra, got {algebra.kind}")


class QuantumMatrixBialgebra:
    """O_q(M_n) with its tensor square, comultiplication, counit and mu*_q maps"""

    def __init__(self, algebra: AlgebraPresentation):
        _require_matrix_algebra(algebra)
        self.algebra = algebra
        self.n: int = algebra.n
        self.q: Scalar = algebra.parameter
        self.space: ParamSpace = algebra.space
        self._tensor_square: Optional[AlgebraPresentation] = None
        self._delta: Optional[AlgebraHom] = None
        self._counit: Optional[AlgebraHom] = None
        self._smaller: Dict[int, AlgebraPresentation] = {}
        self._mu_star: Dict[int, AlgebraHom] = {}
        self._minors: Dict[MinorIndex, NcPoly] = {}

    # ---------- generators and determinants ---------- #

    def X(self, i: int, j: int) -> NcPoly:
        return self.algebra.gen(matrix_generator(i, j))

    def _square_algebra(self, t: int) -> AlgebraPresentation:
        if t == self.n:
            return self.algebra
        if t not in self._smaller:
            self._smaller[t] = preset_algebra("quantum-matrices", t, self.q)
        return self._smaller[t]

    def qdet(self) -> NcPoly:
        """Sum over S_n of (-q)^len(pi) X[1,pi(1)]...X[n,pi(n)]"""
        return self._determinant(self.algebra, self.n)

    def _determinant(self, algebra: AlgebraPresentation, t: int) -> NcPoly:
        minus_q = -self.q
        size = len(algebra.gens)
        terms = {}
        for images in itertools.permutations(range(1, t + 1)):
            mono = [0] * size
            for row, col in enumerate(images, start=1):
                mono[algebra.index(matrix_generator(row, col))] += 1
            # row-ordered products are already sorted monomials
            terms[tuple(mono)] = minus_q ** permutation_length(images)
        return NcPoly._raw(algebra, terms)

    def minor_embedding(self, index: MinorIndex) -> AlgebraHom:
        """phi_{I,J}: O_q(M_t) -> O_q(M_n), X[l,m] -> X[i_l, j_m]"""
        index.validate(self.n)
        small = self._square_algebra(index.size)
        images = {
            matrix_generator(l, m): self.X(index.I[l - 1], index.J[m - 1])
            for l in range(1, index.size + 1)
            for m in range(1, index.size + 1)
        }
        return AlgebraHom(small, self.algebra, images, name=f"phi{index}")

    def qminor(self, index: MinorIndex) -> NcPoly:
        index.validate(self.n)
        if index not in self._minors:
            small = self._square_algebra(index.size)
            self._minors[index] = self.minor_embedding(index)(self._determinant(small, index.size))
        return self._minors[index]

    # ---------- bialgebra structure ---------- #

    @property
    def tensor_square(self) -> AlgebraPresentation:
        if self._tensor_square is None:
            self._tensor_square = tensor_square(self.algebra)
        return self._tensor_square

    def tensor(self, left: NcPoly, right: NcPoly) -> NcPoly:
        return tensor_element(self.tensor_square, left, right)

    @property
    def delta_hom(self) -> AlgebraHom:
        """X[i,j] -> sum_l X[i,l] (x) X[l,j]"""
        if self._delta is None:
            square, size = self.tensor_square, len(self.algebra.gens)
            images = []
            for name in self.algebra.gens:
                i, j = matrix_position(name)
                image = square.zero()
                for l in range(1, self.n + 1):
                    left = square.gen(self.algebra.index(matrix_generator(i, l)))
                    right = square.gen(size + self.algebra.index(matrix_generator(l, j)))
                    image = image + left * right
                images.append(image)
            self._delta = AlgebraHom(self.algebra, square, images, name="delta")
        return self._delta

    @property
    def counit_hom(self) -> AlgebraHom:
        """X[i,j] -> delta_ij in the ground field"""
        if self._counit is None:
            ground = ground_algebra(self.space)
            images = []
            for name in self.algebra.gens:
                i, j = matrix_position(name)
                images.append(ground.one() if i == j else ground.zero())
            self._counit = AlgebraHom(self.algebra, ground, images, name="counit")
        return self._counit

    def delta(self, p: NcPoly) -> NcPoly:
        return self.delta_hom(p)

    def counit(self, p: NcPoly) -> Scalar:
        return self.counit_hom(p).constant_term()

    def coassociativity_failures(self) -> List[str]:
        """Generators where (delta (x) id) delta and (id (x) delta) delta disagree"""
        algebra, square = self.algebra, self.tensor_square
        left_triple = tensor_product(square, algebra)
        right_triple = tensor_product(algebra, square)
        left_map = tensor_homs(self.delta_hom, identity_hom(algebra), square, left_triple)
        right_map = tensor_homs(identity_hom(algebra), self.delta_hom, square, right_triple)
        failures = []
        for name in algebra.gens:
            image = self.delta(algebra.gen(name))
            # both triple tensors order generators slot by slot, so positions match
            if left_map(image) != right_map(image):
                failures.append(name)
        return failures

    # ---------- the comorphism mu*_q ---------- #

    def mu_star_hom(self, t: int) -> AlgebraHom:
        """Delta followed by the quotients by X[i,j], j >= t (left) and X[i,j], i >= t (right)"""
        if not 1 <= t <= self.n:
            raise MinorIndexError(f"mu*_q needs 1 <= t <= {self.n}, got {t}", t=t)
        if t not in self._mu_star:
            rng = range(1, self.n + 1)
            left, left_quo = quotient_by_generators(
                self.algebra, [matrix_generator(i, j) for i in rng for j in rng if j >= t]
            )
            right, right_quo = quotient_by_generators(
                self.algebra, [matrix_generator(i, j) for i in rng for j in rng if i >= t]
            )
            target = tensor_product(left, right)
            quo_pair = tensor_homs(left_quo, right_quo, self.tensor_square, target)
            hom = compose_homs(quo_pair, self.delta_hom)
            hom.name = f"mu_star[t={t}]"
            self._mu_star[t] = hom
            logger.debug(f"Built mu*_q for t={t} with {len(target.gens)} target generators")
        return self._mu_star[t]

    def mu_q_star(self, t: int, p: NcPoly) -> NcPoly:
        return self.mu_star_hom(t)(p)

    # ---------- determinantal generator sets ---------- #

    def all_minors(self, t: int) -> List[MinorIndex]:
        rows = list(itertools.combinations(range(1, self.n + 1), t))
        return [MinorIndex(I, J) for I in rows for J in rows]

    def detgen_rank_le1(self, R: Sequence[int], C: Sequence[int]) -> List[NcPoly]:
        """All 2x2 minors, then X[i,j] for i in R, then X[i,j] for j in C"""
        rng = range(1, self.n + 1)
        if any(i not in rng for i in list(R) + list(C)):
            raise MinorIndexError(f"Row/column sets must lie in 1..{self.n}", R=list(R), C=list(C))
        gens = [self.qminor(m) for m in self.all_minors(2)] if self.n >= 2 else []
        gens += [self.X(i, j) for i in sorted(set(R)) for j in rng]
        gens += [self.X(i, j) for j in sorted(set(C)) for i in rng]
        return gens


def matrix_position(name: str) -> Tuple[int, int]:
    i, j = name[2:-1].split(",")
    return int(i), int(j)


def is_central(p: NcPoly) -> bool:
    """p commutes with every generator of its presentation"""
    algebra = p.presentation
    for index in range(len(algebra.gens)):
        g = algebra.gen(index)
        if not (p * g - g * p).is_zero():
            return False
    return True


_BY_ALGEBRA: "weakref.WeakKeyDictionary[AlgebraPresentation, QuantumMatrixBialgebra]" = weakref.WeakKeyDictionary()


@lru_cache(maxsize=None)
def _standard_bialgebra(n: int) -> QuantumMatrixBialgebra:
    return QuantumMatrixBialgebra(preset_algebra("quantum-matrices", n))


def create_bialgebra(n: int, algebra: Optional[AlgebraPresentation] = None) -> QuantumMatrixBialgebra:
    """Factory function: the bialgebra of a given matrix algebra, or the cached generic one"""
    if algebra is not None:
        return QuantumMatrixBialgebra(algebra)
    return _standard_bialgebra(n)


def qdet(n: int) -> NcPoly:
    return create_bialgebra(n).qdet()


def qminor(index: MinorIndex, n: int) -> NcPoly:
    return create_bialgebra(n).qminor(index)


def bialgebra_of(p: NcPoly) -> QuantumMatrixBialgebra:
    """The bialgebra of the matrix algebra p lives in"""
    return bialgebra_for(p.presentation)


def bialgebra_for(algebra: AlgebraPresentation) -> QuantumMatrixBialgebra:
    cached = _BY_ALGEBRA.get(algebra)
    if cached is None:
        _require_matrix_algebra(algebra)
        standard = _standard_bialgebra(algebra.n)
        cached = standard if standard.algebra is algebra else QuantumMatrixBialgebra(algebra)
        _BY_ALGEBRA[algebra] = cached
    return cached


def delta(p: NcPoly) -> NcPoly:
    return bialgebra_of(p).delta(p)


def counit(p: NcPoly) -> Scalar:
    return bialgebra_of(p).counit(p)


def mu_q_star(t: int, p: NcPoly) -> NcPoly:
    return bialgebra_of(p).mu_q_star(t, p)


def detgen_rank_le1(R: Sequence[int], C: Sequence[int], n: int) -> List[NcPoly]:
    return create_bialgebra(n).detgen_rank_le1(R, C)
