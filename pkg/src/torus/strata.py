# src/torus/strata.py - Quantum torus centers and the torus-orbit strata of quantum affine spaces

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..algebra.pbw_core import AlgebraPresentation
from ..algebra.presets import affine_generators, quantum_affine_presentation
from ..scalars.scalar_ring import ParamSpace, Scalar
from ..utils.errors import AntisymmetryError, NonUnitError, PresentationError
from .lattice import in_left_kernel, integer_left_kernel

logger = logging.getLogger(__name__)

ExponentMatrix = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class CommutationSpec:
    """q_ij = prod_t param_t ^ E_t[i][j] for an n-generator quantum affine space"""

    n: int
    space: ParamSpace
    exponents: Tuple[ExponentMatrix, ...]
    names: Tuple[str, ...] = ()

    def __post_init__(self):
        exponents = tuple(tuple(tuple(int(x) for x in row) for row in E) for E in self.exponents)
        object.__setattr__(self, "exponents", exponents)
        if not self.names:
            object.__setattr__(self, "names", tuple(affine_generators(self.n)))
        if len(exponents) != len(self.space.names):
            raise AntisymmetryError("One exponent matrix per parameter is required", space=str(self.space))
        if len(self.names) != self.n:
            raise AntisymmetryError(f"Expected {self.n} generator names, got {len(self.names)}")
        for t, E in enumerate(exponents):
            if len(E) != self.n or any(len(row) != self.n for row in E):
                raise AntisymmetryError(f"Exponent matrix for {self.space.names[t]} is not {self.n}x{self.n}")
            for i in range(self.n):
                if E[i][i] != 0:
                    raise AntisymmetryError(f"q_{i + 1}{i + 1} must be 1", parameter=self.space.names[t])
                for j in range(i + 1, self.n):
                    if E[j][i] != -E[i][j]:
                        raise AntisymmetryError(
                            f"q_{j + 1}{i + 1} must equal q_{i + 1}{j + 1}^-1", parameter=self.space.names[t]
                        )

    # ---------- constructors ---------- #

    @classmethod
    def from_q_matrix(cls, q_matrix: Sequence[Sequence[Scalar]], names: Sequence[str] = ()) -> "CommutationSpec":
        n = len(q_matrix)
        if n == 0:
            raise AntisymmetryError("Empty parameter matrix")
        space = q_matrix[0][0].space
        exponents = [[[0] * n for _ in range(n)] for _ in space.names]
        for i in range(n):
            for j in range(n):
                try:
                    vec = q_matrix[i][j].exponents()
                except NonUnitError:
                    raise AntisymmetryError(
                        f"q_{i + 1}{j + 1} = {q_matrix[i][j]} is not a pure parameter monomial"
                    ) from None
                for t, e in enumerate(vec):
                    exponents[t][i][j] = e
        return cls(n, space, tuple(tuple(map(tuple, E)) for E in exponents), tuple(names))

    @classmethod
    def single_parameter(cls, n: int, space: Optional[ParamSpace] = None, parameter: str = "q") -> "CommutationSpec":
        """q_ij = q for i < j"""
        space = space or ParamSpace((parameter,))
        exps = space.symbol(parameter).exponents()
        exponents = []
        for e in exps:
            exponents.append(tuple(
                tuple(e if i < j else (-e if i > j else 0) for j in range(n)) for i in range(n)
            ))
        return cls(n, space, tuple(exponents))

    @classmethod
    def commutative(cls, n: int, space: Optional[ParamSpace] = None) -> "CommutationSpec":
        space = space or ParamSpace(("q",))
        zero = tuple(tuple(0 for _ in range(n)) for _ in range(n))
        return cls(n, space, tuple(zero for _ in space.names))

    @classmethod
    def from_presentation(cls, presentation: AlgebraPresentation) -> "CommutationSpec":
        """Read q_ij off a quantum affine presentation (no correction terms allowed)"""
        n = len(presentation.gens)
        one = Scalar.one(presentation.space)
        q_matrix = [[one] * n for _ in range(n)]
        for (u, v), rule in presentation.rules.items():
            if rule.corrections:
                raise PresentationError(
                    f"{presentation.kind} is not a quantum affine space: "
                    f"{presentation.gens[u]}*{presentation.gens[v]} has correction terms"
                )
            q_matrix[u][v] = rule.scalar
            q_matrix[v][u] = rule.scalar.inv_monomial()
        return cls.from_q_matrix(q_matrix, presentation.gens)

    # ---------- derived data ---------- #

    def q_entry(self, i: int, j: int) -> Scalar:
        """q_ij for 0-based generator positions"""
        return Scalar.monomial(self.space, tuple(E[i][j] for E in self.exponents))

    def q_matrix(self) -> List[List[Scalar]]:
        return [[self.q_entry(i, j) for j in range(self.n)] for i in range(self.n)]

    def pairing_matrix(self) -> List[List[int]]:
        """Rows a_i coefficients, columns (parameter, j)"""
        return [[E[i][j] for E in self.exponents for j in range(self.n)] for i in range(self.n)]

    def restrict(self, keep: Sequence[int]) -> "CommutationSpec":
        """Sub-spec on the 0-based positions in keep"""
        keep = list(keep)
        exponents = tuple(tuple(tuple(E[i][j] for j in keep) for i in keep) for E in self.exponents)
        return CommutationSpec(len(keep), self.space, exponents, tuple(self.names[i] for i in keep))

    def permuted(self, order: Sequence[int]) -> "CommutationSpec":
        """Relabel generators: new position k holds old generator order[k]"""
        if sorted(order) != list(range(self.n)):
            raise AntisymmetryError("Relabeling must be a permutation of the generators")
        return self.restrict(order)

    def presentation(self) -> AlgebraPresentation:
        return quantum_affine_presentation(self.q_matrix(), gens=self.names, kind="quantum-torus-part")


@dataclass
class StratumReport:
    """Center of the quantum torus attached to the stratum indexed by w"""

    w: Tuple[int, ...]
    n: int
    torus_rank: int
    center_rank: int
    center_basis: List[Tuple[int, ...]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "w": list(self.w),
            "torus_rank": self.torus_rank,
            "center_rank": self.center_rank,
            "basis": [list(v) for v in self.center_basis],
        }


def center_lattice(c: CommutationSpec) -> List[Tuple[int, ...]]:
    """Exponents a of central Laurent monomials x^a: sum_i E_t[i][j] a_i = 0 for all j, t"""
    if c.n == 0:
        return []
    basis = integer_left_kernel(c.pairing_matrix(), c.n)
    return [tuple(v) for v in basis]


def strata_report(c: CommutationSpec) -> List[StratumReport]:
    """One report per subset w of {1..n}, in bitmask order"""
    reports = []
    for mask in range(1 << c.n):
        w = tuple(i + 1 for i in range(c.n) if mask >> i & 1)
        keep = [i for i in range(c.n) if not mask >> i & 1]
        sub_basis = center_lattice(c.restrict(keep))
        basis = []
        for vec in sub_basis:
            full = [0] * c.n
            for position, value in zip(keep, vec):
                full[position] = value
            basis.append(tuple(full))
        reports.append(StratumReport(w, c.n, len(keep), len(basis), basis))
    logger.info(f"Computed {len(reports)} strata for an {c.n}-generator quantum affine space")
    return reports


def laurent_monomial_text(names: Sequence[str], vec: Sequence[int]) -> str:
    factors = [name if e == 1 else f"{name}^{e}" for name, e in zip(names, vec) if e]
    return "*".join(factors) if factors else "1"


def primitive_profile(r: StratumReport, names: Optional[Sequence[str]] = None) -> Dict[str, Any]:
    """Shape of the stratum: a Laurent ring spectrum whose maximal ideals are the primitive primes"""
    names = list(names) if names is not None else affine_generators(r.n)
    in_w = set(r.w)
    killed = [names[i - 1] for i in sorted(in_w)]
    surviving = [names[i] for i in range(r.n) if i + 1 not in in_w]
    central = [laurent_monomial_text(names, vec) for vec in r.center_basis]

    ideal = "<" + ", ".join(killed) + ">" if killed else "<0>"
    if r.center_rank == 0:
        family = ideal
        primitive = "single prime, primitive"
    else:
        betas = [f"b{k}" for k in range(1, r.center_rank + 1)]
        family_gens = killed + [f"{z} - {b}" for z, b in zip(central, betas)]
        family = "<" + ", ".join(family_gens) + "> (" + ", ".join(betas) + " in k^x)"
        primitive = f"{r.center_rank}-parameter family; primitives are the maximal ideals of the Laurent ring"

    laurent_vars = ", ".join(f"z{k}^+-1" for k in range(1, r.center_rank + 1))
    return {
        "w": list(r.w),
        "torus_rank": r.torus_rank,
        "center_rank": r.center_rank,
        "homeomorphic_to": f"spec k[{laurent_vars}]" if r.center_rank else "spec k",
        "primitive": primitive,
        "stratum_ideal": ideal,
        "surviving_variables": surviving,
        "central_monomials": central,
        "family": family,
    }


def verify_central_exponent(c: CommutationSpec, a: Sequence[int], presentation: Optional[AlgebraPresentation] = None) -> bool:
    """Check x^a central in the quantum torus by straightening x^(a+) and x^(a-) past each generator.

    x^(a+) x_j = lambda_+ x_j x^(a+) and x^(a-) x_j = lambda_- x_j x^(a-); x^a is
    central exactly when lambda_+ = lambda_- for every j.
    """
    if len(a) != c.n:
        raise AntisymmetryError(f"Exponent vector {list(a)} has the wrong length for n={c.n}")
    algebra = presentation or c.presentation()
    plus = tuple(max(x, 0) for x in a)
    minus = tuple(max(-x, 0) for x in a)

    def ratio(mono: Tuple[int, ...], j: int) -> Scalar:
        m, g = algebra.monomial(mono), algebra.gen(j)
        left, right = m * g, g * m
        (_, left_coeff), = left.terms()
        (_, right_coeff), = right.terms()
        return left_coeff * right_coeff.inv_monomial()

    return all(ratio(plus, j) == ratio(minus, j) for j in range(c.n))


def central_exponent_in_kernel(c: CommutationSpec, a: Sequence[int]) -> bool:
    return in_left_kernel(a, c.pairing_matrix())


def orbit_index(point: Sequence[Any]) -> Tuple[Tuple[int, ...], int]:
    """(w, torus rank) for a point of k^n: w = {i : a_i = 0}, rank n - |w|"""
    w = tuple(
        i + 1 for i, a in enumerate(point) if (a.is_zero() if isinstance(a, Scalar) else a == 0)
    )
    return w, len(point) - len(w)


def create_commutation_spec(
    preset: str, n: int, mode: str = "generic", space: Optional[ParamSpace] = None
) -> CommutationSpec:
    """Factory function: commutation data of the affine presets"""
    from ..algebra.presets import create_preset, resolve_kind

    kind = resolve_kind(preset)
    if kind == "quantum-matrices":
        raise PresentationError("Strata are computed for quantum affine spaces only", preset=preset)
    if kind == "quantum-affine" and mode == "generic" and space is None:
        return CommutationSpec.single_parameter(n)
    return CommutationSpec.from_presentation(create_preset(kind, n, mode, space))
