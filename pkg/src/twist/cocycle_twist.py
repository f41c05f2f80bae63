# src/twist/cocycle_twist.py - Bilinear cocycles, twisted (semigroup) algebras and the basis map Phi_c

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from ..algebra.pbw_core import AlgebraPresentation, NcPoly
from ..algebra.presets import affine_generators, quantum_affine_presentation
from ..scalars.scalar_ring import ParamSpace, Scalar
from ..torus.strata import CommutationSpec
from ..utils.errors import TwistError

logger = logging.getLogger(__name__)

Degree = Tuple[int, ...]
FormMatrix = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class CocycleSpec:
    """c(alpha, beta) = prod_t param_t ^ B_t(alpha, beta) for integer bilinear forms B_t on Z^n"""

    n: int
    space: ParamSpace
    forms: Tuple[FormMatrix, ...]

    def __post_init__(self):
        forms = tuple(tuple(tuple(int(x) for x in row) for row in B) for B in self.forms)
        object.__setattr__(self, "forms", forms)
        if len(forms) != len(self.space.names):
            raise TwistError("One bilinear form per parameter is required", space=str(self.space))
        for B in forms:
            if len(B) != self.n or any(len(row) != self.n for row in B):
                raise TwistError(f"Bilinear forms must be {self.n}x{self.n}")

    def exponent(self, alpha: Sequence[int], beta: Sequence[int]) -> Degree:
        return tuple(
            sum(alpha[i] * B[i][j] * beta[j] for i in range(self.n) for j in range(self.n) if alpha[i] and beta[j])
            for B in self.forms
        )

    def value(self, alpha: Sequence[int], beta: Sequence[int]) -> Scalar:
        return Scalar.monomial(self.space, self.exponent(alpha, beta))

    def __call__(self, alpha: Sequence[int], beta: Sequence[int]) -> Scalar:
        return self.value(alpha, beta)

    def unit(self, i: int) -> Degree:
        return tuple(1 if k == i else 0 for k in range(self.n))

    def ratio(self, i: int, j: int) -> Scalar:
        """c(e_i, e_j) c(e_j, e_i)^-1 for 0-based i, j"""
        ei, ej = self.unit(i), self.unit(j)
        return self.value(ei, ej) * self.value(ej, ei).inv_monomial()

    def satisfies_cocycle_identity(self, alpha: Sequence[int], beta: Sequence[int], gamma: Sequence[int]) -> bool:
        """c(a,b) c(a+b,c) = c(b,c) c(a,b+c)"""
        ab = [x + y for x, y in zip(alpha, beta)]
        bc = [x + y for x, y in zip(beta, gamma)]
        return self.value(alpha, beta) * self.value(ab, gamma) == self.value(beta, gamma) * self.value(alpha, bc)

    def commutation_spec(self) -> CommutationSpec:
        """q_ij = c(e_i, e_j) / c(e_j, e_i) as exponent matrices B_t - B_t^T"""
        exponents = tuple(
            tuple(tuple(B[i][j] - B[j][i] for j in range(self.n)) for i in range(self.n)) for B in self.forms
        )
        return CommutationSpec(self.n, self.space, exponents)

    def inverse(self) -> "CocycleSpec":
        return CocycleSpec(self.n, self.space, tuple(tuple(tuple(-x for x in row) for row in B) for B in self.forms))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "parameters": list(self.space.names),
            "forms": {name: [list(row) for row in B] for name, B in zip(self.space.names, self.forms)},
        }


def standard_cocycle(q: Union[CommutationSpec, Sequence[Sequence[Scalar]]]) -> CocycleSpec:
    """Upper-triangular choice: B(e_i, e_j) = exponent of q_ij for i < j, 0 otherwise"""
    spec = q if isinstance(q, CommutationSpec) else CommutationSpec.from_q_matrix(q)
    forms = tuple(
        tuple(tuple(E[i][j] if i < j else 0 for j in range(spec.n)) for i in range(spec.n)) for E in spec.exponents
    )
    return CocycleSpec(spec.n, spec.space, forms)


def pbw_cocycle(c: CocycleSpec) -> CocycleSpec:
    """c'(alpha, beta) = c(beta, alpha)^-1, realized by the sorted-monomial basis of O_q(k^n)"""
    forms = tuple(tuple(tuple(-B[j][i] for j in range(c.n)) for i in range(c.n)) for B in c.forms)
    return CocycleSpec(c.n, c.space, forms)


class TwistedElement:
    """Finite sum of basis elements y^alpha of a twisted algebra"""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "TwistedAlgebra", terms: Optional[Dict[Degree, Scalar]] = None):
        self.algebra = algebra
        self.terms: Dict[Degree, Scalar] = {}
        for alpha, coeff in (terms or {}).items():
            if not isinstance(coeff, Scalar):
                coeff = Scalar.constant(algebra.space, coeff)
            if not coeff.is_zero():
                self.terms[tuple(alpha)] = coeff

    def _check(self, other: "TwistedElement"):
        if other.algebra is not self.algebra:
            raise TwistError("Operands belong to different twisted algebras")

    def __add__(self, other: "TwistedElement") -> "TwistedElement":
        self._check(other)
        terms = dict(self.terms)
        for alpha, coeff in other.terms.items():
            terms[alpha] = terms[alpha] + coeff if alpha in terms else coeff
        return TwistedElement(self.algebra, terms)

    def __neg__(self) -> "TwistedElement":
        return TwistedElement(self.algebra, {alpha: -c for alpha, c in self.terms.items()})

    def __sub__(self, other: "TwistedElement") -> "TwistedElement":
        return self + (-other)

    def scale(self, s: Any) -> "TwistedElement":
        return TwistedElement(self.algebra, {alpha: c * s for alpha, c in self.terms.items()})

    def __mul__(self, other: "TwistedElement") -> "TwistedElement":
        return self.algebra.twist_product(self, other)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, TwistedElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for alpha, coeff in sorted(self.terms.items(), key=lambda item: (sum(item[0]), item[0]), reverse=True):
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(self.algebra.basis_names, alpha) if e
            )
            if not mono:
                pieces.append(f"({coeff})" if len(coeff) > 1 else str(coeff))
            elif coeff.is_one():
                pieces.append(mono)
            else:
                pieces.append(f"({coeff})*{mono}")
        return " + ".join(pieces)

    __repr__ = __str__


class TwistedAlgebra:
    """Z^n-graded commutative monomial algebra with product r*s = c(alpha, beta) rs"""

    def __init__(
        self,
        cocycle: CocycleSpec,
        generator_degrees: Optional[Sequence[Sequence[int]]] = None,
        bound: Optional[int] = None,
        names: Optional[Sequence[str]] = None,
        basis_names: Optional[Sequence[str]] = None,
    ):
        self.cocycle = cocycle
        self.space = cocycle.space
        self.n = cocycle.n
        self.is_polynomial = generator_degrees is None
        degrees = generator_degrees if generator_degrees is not None else [cocycle.unit(i) for i in range(self.n)]
        self.generator_degrees: Tuple[Degree, ...] = tuple(tuple(int(x) for x in d) for d in degrees)
        for d in self.generator_degrees:
            if len(d) != self.n:
                raise TwistError(f"Generator degree {d} does not lie in Z^{self.n}")
        self.bound = bound
        self.names = tuple(names) if names is not None else tuple(
            affine_generators(len(self.generator_degrees)) if self.is_polynomial
            else (f"y{i}" for i in range(1, len(self.generator_degrees) + 1))
        )
        # basis elements y^alpha are printed in the coordinates of Z^n
        self.basis_names = tuple(basis_names) if basis_names is not None else tuple(
            affine_generators(self.n) if self.is_polynomial else (f"t{i}" for i in range(1, self.n + 1))
        )
        self._members: Optional[set] = None

    @classmethod
    def polynomial(cls, cocycle: CocycleSpec, names: Optional[Sequence[str]] = None) -> "TwistedAlgebra":
        return cls(cocycle, None, None, names, names)

    @classmethod
    def semigroup(
        cls, generator_degrees: Sequence[Sequence[int]], bound: int, cocycle: CocycleSpec
    ) -> "TwistedAlgebra":
        """Twisted semigroup algebra generated in the given degrees, products truncated at bound generators"""
        if bound < 1:
            raise TwistError("Truncation bound must be positive", bound=bound)
        return cls(cocycle, generator_degrees, bound)

    # ---------- membership ---------- #

    def members(self) -> set:
        """Semigroup elements reachable with at most bound generators"""
        if self.is_polynomial:
            raise TwistError("Polynomial algebras have an unbounded basis")
        if self._members is None:
            frontier = {tuple([0] * self.n)}
            members = set(frontier)
            for _ in range(self.bound):
                frontier = {
                    tuple(a + b for a, b in zip(alpha, d)) for alpha in frontier for d in self.generator_degrees
                }
                members |= frontier
            self._members = members
            logger.debug(f"Semigroup truncated at {self.bound} generators has {len(members)} elements")
        return self._members

    def contains(self, alpha: Sequence[int]) -> bool:
        if len(alpha) != self.n:
            return False
        if self.is_polynomial:
            return all(a >= 0 for a in alpha)
        return tuple(alpha) in self.members()

    # ---------- elements ---------- #

    def element(self, terms: Dict[Degree, Any]) -> TwistedElement:
        for alpha in terms:
            if not self.contains(alpha):
                raise TwistError(f"Degree {tuple(alpha)} is not a basis element of this algebra")
        return TwistedElement(self, terms)

    def basis(self, alpha: Sequence[int], coeff: Any = 1) -> TwistedElement:
        return self.element({tuple(alpha): coeff})

    def one(self) -> TwistedElement:
        return self.basis([0] * self.n)

    def gen(self, i: int) -> TwistedElement:
        return self.basis(self.generator_degrees[i])

    def generator_ratio(self, i: int, j: int) -> Scalar:
        """q_ij of the generators: c(d_i, d_j) / c(d_j, d_i)"""
        di, dj = self.generator_degrees[i], self.generator_degrees[j]
        return self.cocycle.value(di, dj) * self.cocycle.value(dj, di).inv_monomial()

    def twist_product(self, r: TwistedElement, s: TwistedElement) -> TwistedElement:
        if r.algebra is not self or s.algebra is not self:
            raise TwistError("Operands belong to a different twisted algebra")
        terms: Dict[Degree, Scalar] = {}
        for alpha, a in r.terms.items():
            for beta, b in s.terms.items():
                gamma = tuple(x + y for x, y in zip(alpha, beta))
                if not self.contains(gamma):
                    raise TwistError(
                        f"Product degree {gamma} exceeds the truncation bound {self.bound}", degree=list(gamma)
                    )
                coeff = self.cocycle.value(alpha, beta) * a * b
                terms[gamma] = terms[gamma] + coeff if gamma in terms else coeff
        return TwistedElement(self, terms)

    def commutative_product(self, r: TwistedElement, s: TwistedElement) -> TwistedElement:
        terms: Dict[Degree, Scalar] = {}
        for alpha, a in r.terms.items():
            for beta, b in s.terms.items():
                gamma = tuple(x + y for x, y in zip(alpha, beta))
                terms[gamma] = terms[gamma] + a * b if gamma in terms else a * b
        return TwistedElement(self, terms)

    def ordered_product(self, exponents: Sequence[int]) -> TwistedElement:
        """y_1^a_1 * ... * y_m^a_m with twisted products, left to right"""
        result = self.one()
        for i, e in enumerate(exponents):
            for _ in range(e):
                result = self.twist_product(result, self.gen(i))
        return result


def twist_product(r: TwistedElement, s: TwistedElement, t: TwistedAlgebra) -> TwistedElement:
    return t.twist_product(r, s)


def twisted_presentation(t: TwistedAlgebra) -> AlgebraPresentation:
    """Quantum affine presentation on the generators of t with q_ij = generator ratios"""
    m = len(t.generator_degrees)
    q_matrix = [[t.generator_ratio(i, j) for j in range(m)] for i in range(m)]
    return quantum_affine_presentation(q_matrix, gens=t.names, kind="twisted")


def _check_same_q(t: TwistedAlgebra, presentation: AlgebraPresentation):
    if len(presentation.gens) != len(t.generator_degrees):
        raise TwistError(
            f"Presentation has {len(presentation.gens)} generators, twisted algebra {len(t.generator_degrees)}"
        )
    if presentation.space.names != t.space.names:
        raise TwistError("Presentation and cocycle use different parameter spaces")
    for (u, v), rule in presentation.rules.items():
        if rule.corrections or rule.scalar != t.generator_ratio(u, v):
            raise TwistError(
                f"Commutation scalar of {presentation.gens[u]}*{presentation.gens[v]} does not match the cocycle",
                expected=str(t.generator_ratio(u, v)),
                found=str(rule.scalar),
            )


def phi_c(p: NcPoly, t: TwistedAlgebra) -> TwistedElement:
    """Identity on basis monomials: x^alpha -> y^alpha"""
    if not t.is_polynomial:
        raise TwistError("Phi_c is defined on polynomial twisted algebras")
    _check_same_q(t, p.presentation)
    return TwistedElement(t, {mono: coeff for mono, coeff in p.terms()})


def phi_c_inverse(r: TwistedElement, presentation: AlgebraPresentation) -> NcPoly:
    _check_same_q(r.algebra, presentation)
    result = presentation.zero()
    for alpha, coeff in r.terms.items():
        result = result + presentation.monomial(alpha, coeff)
    return result


def verify_twist_isomorphism(t: TwistedAlgebra, presentation: AlgebraPresentation, degree: int) -> Dict[str, Any]:
    """Check x_i -> y_i is multiplicative on sorted monomials up to a total degree.

    psi(x^a) is the left-to-right twisted product of generators; for every pair of
    sorted monomials m1, m2 with deg m1 + deg m2 <= degree, psi(m1 m2) must equal
    psi(m1) * psi(m2).
    """
    _check_same_q(t, presentation)
    size = len(presentation.gens)

    def monomials(max_degree: int) -> List[Tuple[int, ...]]:
        out = []
        for d in range(max_degree + 1):
            for combo in itertools.combinations_with_replacement(range(size), d):
                mono = [0] * size
                for g in combo:
                    mono[g] += 1
                out.append(tuple(mono))
        return out

    if t.bound is not None:
        degree = min(degree, t.bound)

    def psi(p: NcPoly) -> TwistedElement:
        result = TwistedElement(t)
        for mono, coeff in p.terms():
            result = result + t.ordered_product(mono).scale(coeff)
        return result

    checked, failures = 0, []
    basis = monomials(degree)
    for m1 in basis:
        for m2 in basis:
            if sum(m1) + sum(m2) > degree:
                continue
            checked += 1
            p1, p2 = presentation.monomial(m1), presentation.monomial(m2)
            if psi(p1 * p2) != psi(p1) * psi(p2):
                failures.append([list(m1), list(m2)])

    relations_ok = all(
        t.twist_product(t.gen(u), t.gen(v)) == t.twist_product(t.gen(v), t.gen(u)).scale(rule.scalar)
        for (u, v), rule in presentation.rules.items()
    ) if (t.bound is None or t.bound >= 2) else True

    logger.info(f"Twist check up to degree {degree}: {checked} products, {len(failures)} failure(s)")
    return {"degree": degree, "checked_pairs": checked, "failures": failures[:10], "relations_ok": relations_ok,
            "ok": not failures and relations_ok}


def create_twisted_algebra(
    q: Union[CommutationSpec, Sequence[Sequence[Scalar]]],
    generator_degrees: Optional[Sequence[Sequence[int]]] = None,
    bound: Optional[int] = None,
) -> TwistedAlgebra:
    """Factory function: twisted algebra for q with the standard cocycle"""
    cocycle = standard_cocycle(q)
    if generator_degrees is None:
        names = q.names if isinstance(q, CommutationSpec) else None
        return TwistedAlgebra.polynomial(cocycle, names)
    return TwistedAlgebra.semigroup(generator_degrees, bound or 2, cocycle)
