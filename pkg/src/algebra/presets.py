# src/algebra/presets.py - Built-in presentations: quantum plane, quantum affine spaces, quantum matrices

import logging
from typing import List, Optional, Sequence, Union

from ..scalars.scalar_ring import ParamSpace, Scalar
from ..utils.errors import AntisymmetryError, PresentationError
from .pbw_core import AlgebraPresentation, Rule

logger = logging.getLogger(__name__)

PRESET_KINDS = ("quantum-plane", "quantum-affine", "quantum-affine-multiparam", "quantum-matrices")

# short names accepted on the command line
PRESET_ALIASES = {
    "plane": "quantum-plane",
    "affine": "quantum-affine",
    "multiparam": "quantum-affine-multiparam",
    "matrix": "quantum-matrices",
    "matrices": "quantum-matrices",
}

QMatrix = List[List[Scalar]]


def resolve_kind(kind: str) -> str:
    resolved = PRESET_ALIASES.get(kind, kind)
    if resolved not in PRESET_KINDS:
        raise PresentationError(f"Unknown preset {kind!r}", known=list(PRESET_KINDS) + sorted(PRESET_ALIASES))
    return resolved


def matrix_generator(i: int, j: int) -> str:
    return f"X[{i},{j}]"


def matrix_generators(n: int) -> List[str]:
    """X[i,j] in lexicographic (row, column) order"""
    return [matrix_generator(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]


def affine_generators(n: int) -> List[str]:
    return [f"x{i}" for i in range(1, n + 1)]


def multiparam_space(n: int) -> ParamSpace:
    """Independent parameters q12, q13, ..., one per pair i < j"""
    return ParamSpace(tuple(f"q{i}{j}" for i in range(1, n + 1) for j in range(i + 1, n + 1)))


def default_q_matrix(n: int, space: ParamSpace) -> QMatrix:
    """q_ij = symbol q{i}{j} above the diagonal, inverses below"""
    one = Scalar.one(space)
    matrix = [[one for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            q_ij = space.symbol(f"q{i + 1}{j + 1}")
            matrix[i][j] = q_ij
            matrix[j][i] = q_ij.inv_monomial()
    return matrix


def single_parameter_q_matrix(n: int, q: Scalar) -> QMatrix:
    """q_ij = q for i < j, as in O_q(k^n)"""
    one = Scalar.one(q.space)
    q_inv = q.inv_monomial()
    return [[one if i == j else (q if i < j else q_inv) for j in range(n)] for i in range(n)]


def check_antisymmetric(q_matrix: Sequence[Sequence[Scalar]]):
    n = len(q_matrix)
    for i in range(n):
        if len(q_matrix[i]) != n:
            raise AntisymmetryError("Parameter matrix must be square", size=n)
        if not q_matrix[i][i].is_one():
            raise AntisymmetryError(f"q_{i + 1}{i + 1} must be 1, got {q_matrix[i][i]}", entry=[i + 1, i + 1])
        for j in range(i + 1, n):
            if not (q_matrix[i][j] * q_matrix[j][i]).is_one():
                raise AntisymmetryError(
                    f"q_{j + 1}{i + 1} must equal q_{i + 1}{j + 1}^-1",
                    entry=[j + 1, i + 1],
                    found=str(q_matrix[j][i]),
                )


def _unit_vector(size: int, index: int) -> List[int]:
    vec = [0] * size
    vec[index] = 1
    return vec


def quantum_affine_presentation(
    q_matrix: Sequence[Sequence[Scalar]],
    gens: Optional[Sequence[str]] = None,
    kind: str = "quantum-affine-multiparam",
    parameter: Optional[Scalar] = None,
) -> AlgebraPresentation:
    """k<x_1..x_n | x_i x_j = q_ij x_j x_i>"""
    check_antisymmetric(q_matrix)
    n = len(q_matrix)
    if n == 0:
        raise PresentationError("A quantum affine space needs at least one generator")
    space = q_matrix[0][0].space
    gens = list(gens) if gens is not None else affine_generators(n)
    # x_j x_i = q_ji x_i x_j for i < j
    rules = [Rule(j, i, q_matrix[j][i]) for i in range(n) for j in range(i + 1, n)]
    weights = [_unit_vector(n, i) for i in range(n)]
    return AlgebraPresentation(gens, space, rules, weights=weights, kind=kind, n=n, parameter=parameter)


def quantum_matrix_presentation(n: int, q: Scalar) -> AlgebraPresentation:
    """O_q(M_n) with generators X[i,j] ordered lexicographically"""
    space = q.space
    one = Scalar.one(space)
    q_inv = q.inv_monomial()
    correction = -(q - q_inv)
    position = {(i, j): (i - 1) * n + (j - 1) for i in range(1, n + 1) for j in range(1, n + 1)}
    size = n * n

    rules = []
    for (i, j), v in position.items():
        for (l, m), u in position.items():
            if u <= v:
                continue
            # gens[u] = X[l,m] comes after gens[v] = X[i,j], so i < l or (i == l and j < m)
            if i == l:
                rules.append(Rule(u, v, q_inv))
            elif j == m:
                rules.append(Rule(u, v, q_inv))
            elif m < j:
                rules.append(Rule(u, v, one))
            else:
                corr = [0] * size
                corr[position[(i, m)]] += 1
                corr[position[(l, j)]] += 1
                rules.append(Rule(u, v, one, ((tuple(corr), correction),)))

    weights = [_unit_vector(n, i - 1) + _unit_vector(n, j - 1) for (i, j) in position]
    return AlgebraPresentation(
        matrix_generators(n), space, rules, weights=weights, kind="quantum-matrices", n=n, parameter=q
    )


def preset_algebra(
    kind: str,
    n: Optional[int] = None,
    q: Union[Scalar, Sequence[Sequence[Scalar]], None] = None,
    space: Optional[ParamSpace] = None,
) -> AlgebraPresentation:
    """Build a preset presentation.

    q is a single Scalar for the one-parameter presets and a multiplicatively
    antisymmetric matrix for quantum-affine-multiparam. When q is omitted the
    generic parameter is used: "q" from the space, or q12, q13, ... for the
    multiparameter preset.
    """
    kind = resolve_kind(kind)
    if kind == "quantum-plane":
        n = 2
    elif n is None or n < 1:
        raise PresentationError(f"Preset {kind} needs n >= 1", n=n)

    if kind == "quantum-affine-multiparam":
        if q is None:
            q = default_q_matrix(n, space or multiparam_space(n))
        elif isinstance(q, Scalar):
            q = single_parameter_q_matrix(n, q)
        if len(q) != n:
            raise AntisymmetryError(f"Parameter matrix has size {len(q)}, expected {n}")
        presentation = quantum_affine_presentation(q, kind=kind)
    else:
        if q is None:
            space = space or ParamSpace(("q",))
            q = space.symbol("q")
        if not isinstance(q, Scalar):
            raise PresentationError(f"Preset {kind} takes a single parameter")
        if not q.is_unit():
            raise PresentationError(f"The parameter of {kind} must be a unit, got {q}")
        if kind == "quantum-matrices":
            presentation = quantum_matrix_presentation(n, q)
        else:
            gens = ["x", "y"] if kind == "quantum-plane" else None
            presentation = quantum_affine_presentation(
                single_parameter_q_matrix(n, q), gens=gens, kind=kind, parameter=q
            )

    logger.info(f"Built preset {kind} (n={presentation.n}) with {len(presentation)} generators")
    return presentation


def create_preset(kind: str, n: Optional[int] = None, mode: str = "generic", space: Optional[ParamSpace] = None):
    """Factory function: preset by name with q either generic or set to 1"""
    kind = resolve_kind(kind)
    if kind == "quantum-affine-multiparam":
        space = space or multiparam_space(n or 0)
        if mode == "commutative":
            one = Scalar.one(space)
            return preset_algebra(kind, n, [[one] * n for _ in range(n)])
        return preset_algebra(kind, n, space=space)

    space = space or ParamSpace(("q",))
    q = Scalar.one(space) if mode == "commutative" else space.symbol("q")
    return preset_algebra(kind, n, q)
