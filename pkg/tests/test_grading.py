"""
Torus gradings: weights, homogeneity and H-stability
"""
import random

import pytest

from src.torus.grading import (
    GradingSpec,
    affine_grading,
    create_grading,
    h_stable_by_generators,
    is_homogeneous,
    matrix_grading,
    relations_balanced,
    sl2_style_grading,
    unbalanced_relations,
    weight_of,
)
from src.utils.errors import PresentationError


def test_matrix_weights(m2):
    g = matrix_grading(2)
    assert weight_of((1, 0, 0, 0), g) == (1, 0, 1, 0)
    assert weight_of((0, 1, 1, 0), g) == (1, 1, 1, 1)


def test_qdet_is_homogeneous(b2):
    assert is_homogeneous(b2.qdet(), matrix_grading(2)) == (1, 1, 1, 1)
    assert is_homogeneous(b2.qdet(), sl2_style_grading(2)) == (0, 0)


def test_mixed_weights_are_not_homogeneous(m2):
    p = m2.gen("X[1,1]") + m2.gen("X[1,2]")
    assert is_homogeneous(p, matrix_grading(2)) is None
    # under the row grading alone both terms have weight e_1
    rows_only = GradingSpec(2, ((1, 0), (1, 0), (0, 1), (0, 1)), "rows")
    assert is_homogeneous(p, rows_only) == (1, 0)


def test_zero_is_homogeneous_of_weight_zero(m2):
    assert is_homogeneous(m2.zero(), matrix_grading(2)) == (0, 0, 0, 0)


@pytest.mark.parametrize("grading", ["matrix", "sl2-style", None])
def test_matrix_relations_are_balanced(m3, grading):
    assert relations_balanced(m3, create_grading(grading, m3))


def test_affine_grading_of_plane(plane):
    g = create_grading("affine", plane)
    assert g == affine_grading(2)
    assert relations_balanced(plane, g)


def test_unbalanced_grading_is_reported(m2):
    lopsided = GradingSpec(1, ((1,), (0,), (0,), (0,)))
    assert unbalanced_relations(m2, lopsided) == ["X[2,2]*X[1,1]"]


def test_h_stability_by_generators(b2):
    g = matrix_grading(2)
    assert h_stable_by_generators([b2.X(1, 1), b2.qdet()], g)
    assert not h_stable_by_generators([b2.X(1, 1) + b2.X(2, 2)], g)


def test_matrix_grading_needs_matrix_algebra(plane):
    with pytest.raises(PresentationError):
        create_grading("matrix", plane)


def test_grading_must_fit_presentation(plane):
    with pytest.raises(PresentationError):
        is_homogeneous(plane.gen("x"), matrix_grading(2))


def test_weight_lengths_are_checked():
    with pytest.raises(PresentationError):
        GradingSpec(2, ((1, 0), (1,)))


@pytest.mark.parametrize("grading", ["matrix", "sl2-style"])
def test_weights_add_over_normal_form_products(m3, grading):
    g = create_grading(grading, m3)
    rng = random.Random(31)
    for _ in range(50):
        left = [rng.randrange(len(m3.gens)) for _ in range(rng.randint(1, 3))]
        right = [rng.randrange(len(m3.gens)) for _ in range(rng.randint(1, 3))]
        a, b = m3.normal_form([(1, left)]), m3.normal_form([(1, right)])
        wa, wb = is_homogeneous(a, g), is_homogeneous(b, g)
        assert wa is not None and wb is not None
        product = m3.normal_form([(1, left + right)])
        assert product == a * b
        expected = tuple(x + y for x, y in zip(wa, wb))
        for mono, _ in product.terms():
            assert weight_of(mono, g) == expected
