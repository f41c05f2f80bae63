# src/torus/lattice.py - Exact integer kernels through sympy's Smith and Hermite normal forms

import logging
from typing import List, Sequence

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form, smith_normal_decomp

logger = logging.getLogger(__name__)

IntMatrix = List[List[int]]


def _domain_matrix(rows: Sequence[Sequence[int]], width: int) -> DomainMatrix:
    return DomainMatrix([[ZZ(int(x)) for x in row] for row in rows], (len(rows), width), ZZ)


def hermite_rows(vectors: Sequence[Sequence[int]]) -> IntMatrix:
    """Row Hermite normal form: positive leading pivots, entries above each pivot reduced into [0, pivot)

    sympy reduces columns with pivots at the bottom, so the coordinates are
    reversed going in and coming out.
    """
    if not vectors:
        return []
    width = len(vectors[0])
    flipped = _domain_matrix([list(reversed(v)) for v in vectors], width).transpose()
    form = hermite_normal_form(flipped).to_list()
    rank = len(form[0]) if form else 0
    return [[int(form[width - 1 - p][c]) for p in range(width)] for c in reversed(range(rank))]


def integer_left_kernel(matrix: Sequence[Sequence[int]], size: int) -> IntMatrix:
    """Basis, in Hermite form, of {a in Z^size : sum_i a_i * matrix[i] = 0}"""
    if not size:
        return []
    cols = len(matrix[0])
    if not cols:
        return [[1 if k == i else 0 for k in range(size)] for i in range(size)]
    # S*M*T = D with S, T unimodular; a row of S is in the kernel iff its row of D vanishes
    smith, left, _ = smith_normal_decomp(_domain_matrix(matrix, cols))
    diagonal, transform = smith.to_list(), left.to_list()
    kernel = [transform[i] for i in range(size) if not any(diagonal[i])]
    logger.debug(f"Left kernel of a {size}x{cols} matrix has rank {len(kernel)}")
    return hermite_rows(kernel)


def in_left_kernel(vector: Sequence[int], matrix: Sequence[Sequence[int]]) -> bool:
    if not matrix or not matrix[0]:
        return True
    product = _domain_matrix([vector], len(vector)) * _domain_matrix(matrix, len(matrix[0]))
    return product.is_zero_matrix
