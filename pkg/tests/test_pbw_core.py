"""
PBW rewriting: straightening, rule validation, homomorphisms, tensor products and quotients
"""
import random

import pytest

from src.algebra.pbw_core import (
    AlgebraHom,
    AlgebraPresentation,
    Rule,
    apply_hom,
    compose_homs,
    identity_hom,
    quotient_by_generators,
    tensor_element,
    tensor_homs,
    tensor_square,
)
from src.scalars.scalar_ring import Scalar
from src.utils.errors import (
    ClosureViolationError,
    PresentationError,
    PresentationMismatchError,
    UnknownGeneratorError,
)


def test_plane_commutation(plane, q):
    x, y = plane.gen("x"), plane.gen("y")
    assert y * x == (x * y).scale(q.inv_monomial())
    assert str(y * x) == "q^-1*x*y"


def test_matrix_straightening(m2, q):
    X11, X12, X21, X22 = (m2.gen(g) for g in m2.gens)
    expected = X11 * X22 - (X12 * X21).scale(q - q.inv_monomial())
    assert X22 * X11 == expected
    assert str(X22 * X11) == "X[1,1]*X[2,2] + (-q + q^-1)*X[1,2]*X[2,1]"


def test_every_rule_holds_after_normalization(m3):
    for rule in m3.rules.values():
        assert m3.rule_residue(rule).is_zero()


def test_products_are_associative(m2):
    rng = random.Random(7)
    gens = [m2.gen(g) for g in m2.gens]
    for _ in range(20):
        a, b, c = (sum((rng.choice(gens) * rng.choice(gens) for _ in range(2)), m2.zero()) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_normal_form_of_words(plane, q):
    by_name = plane.normal_form([(1, ["y", "x", "y"]), (2, ["x"])])
    by_index = plane.normal_form([(1, [1, 0, 1]), (2, [0])])
    assert by_name == by_index
    assert by_name == plane.monomial((1, 2), q.inv_monomial()) + plane.gen("x").scale(2)


def test_missing_rule_rejected(space, q):
    with pytest.raises(PresentationError, match="Missing straightening rule"):
        AlgebraPresentation(["a", "b", "c"], space, [Rule(1, 0, q)])


def test_non_unit_scalar_rejected(space, q):
    with pytest.raises(PresentationError, match="not a unit"):
        AlgebraPresentation(["a", "b"], space, [Rule(1, 0, q + 1)])


def test_correction_must_lie_below(space, q):
    one = Scalar.one(space)
    # b*a = a*b + a^2: a^2 sits above a*b
    with pytest.raises(PresentationError, match="not below"):
        AlgebraPresentation(["a", "b"], space, [Rule(1, 0, one, (((2, 0), one),))])


def test_overlap_check_catches_non_associative_rules(space, q):
    one = Scalar.one(space)
    rules = [Rule(1, 0, q), Rule(2, 0, q), Rule(2, 1, one, (((1, 0, 0), one),))]
    with pytest.raises(PresentationError, match="Overlap"):
        AlgebraPresentation(["a", "b", "c"], space, rules)


def test_unknown_generator(plane):
    with pytest.raises(UnknownGeneratorError):
        plane.gen("z")
    with pytest.raises(UnknownGeneratorError):
        plane.normal_form([(1, [5])])


def test_mixing_presentations_rejected(plane, affine3):
    with pytest.raises(PresentationMismatchError):
        plane.gen("x") + affine3.gen("x1")


def test_identity_and_composition(m2):
    ident = identity_hom(m2)
    assert ident.verify()
    p = m2.gen("X[2,2]") * m2.gen("X[1,1]")
    assert compose_homs(ident, ident)(p) == p


def test_hom_that_breaks_relations_is_reported(plane):
    swap = AlgebraHom(plane, plane, {"x": plane.gen("y"), "y": plane.gen("x")}, name="swap")
    assert not swap.verify()
    assert swap.failures() == ["y*x"]


def test_tensor_square_names_and_commuting_slots(m2):
    square = tensor_square(m2)
    assert square.gens[0] == "X[1,1]@1"
    assert square.gens[4] == "X[1,1]@2"
    assert square.slots == (1, 1, 1, 1, 2, 2, 2, 2)
    left, right = square.gen("X[2,2]@1"), square.gen("X[1,1]@2")
    assert left * right == right * left
    assert tensor_element(square, m2.gen(0), m2.gen(3)) == square.gen("X[1,1]@1") * square.gen("X[2,2]@2")


def test_tensor_of_homs(plane):
    square = tensor_square(plane)
    ident = identity_hom(plane)
    pair = tensor_homs(ident, ident, square, square)
    assert pair.verify()
    p = square.gen("y@1") * square.gen("x@1") + square.gen("x@2")
    assert apply_hom(pair, p) == p


def test_quotient_by_closed_set(m2):
    quotient, hom = quotient_by_generators(m2, ["X[1,2]"])
    assert quotient.gens == ("X[1,1]", "X[2,1]", "X[2,2]")
    assert quotient.kind == "quantum-matrices/quotient"
    assert hom.verify()
    # the correction term dies with X[1,2]
    assert quotient.gen("X[2,2]") * quotient.gen("X[1,1]") == quotient.gen("X[1,1]") * quotient.gen("X[2,2]")


def test_quotient_by_unclosed_set_raises(m2):
    with pytest.raises(ClosureViolationError) as info:
        quotient_by_generators(m2, ["X[1,1]"])
    assert info.value.details["relation"] == "X[2,2]*X[1,1]"


def test_presentation_equality_is_positional(space):
    one = Scalar.one(space)
    first = AlgebraPresentation(["a", "b"], space, [Rule(1, 0, one)])
    second = AlgebraPresentation(["a", "b"], space, [Rule(1, 0, one)])
    renamed = AlgebraPresentation(["b", "a"], space, [Rule(1, 0, one)])
    assert first.same_shape(second)
    assert not first.same_shape(renamed)


def test_power_and_scalar_multiples(plane, q):
    x = plane.gen("x")
    assert x ** 0 == plane.one()
    assert (x * 2 + x * -2).is_zero()
    assert (x ** 3).monomials() == [(3, 0)]


def _random_element(algebra, rng):
    gens = [algebra.gen(name) for name in algebra.gens]
    total = algebra.zero()
    for _ in range(rng.randint(1, 3)):
        word = algebra.one()
        for _ in range(rng.randint(1, 3)):
            word = word * rng.choice(gens)
        total = total + word.scale(rng.randint(-2, 3))
    return total


def test_homomorphisms_preserve_sampled_products(m2, q):
    _, to_quotient = quotient_by_generators(m2, ["X[1,2]"])
    first_row = {name: m2.gen(name).scale(q) if name.startswith("X[1,") else m2.gen(name) for name in m2.gens}
    rescale = AlgebraHom(m2, m2, first_row, name="rescale")
    assert rescale.verify()
    rng = random.Random(23)
    for h in (to_quotient, rescale):
        for _ in range(15):
            p, r = _random_element(m2, rng), _random_element(m2, rng)
            assert h(p * r) == h(p) * h(r)
            assert h(p + r) == h(p) + h(r)
