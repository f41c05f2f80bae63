"""
The quotient map k^3 -> prim O_q(k^3): case table, fibres and preimages
"""
import pytest

from src.scalars.scalar_ring import ParamSpace, Scalar
from src.twist.quotient_map import (
    SHAPES,
    example216_map,
    fibre_equal,
    preimage_closed_check,
    quantum_affine_three_space,
    quotient_space,
)
from src.utils.errors import TwistError


@pytest.fixture(scope="module")
def pspace():
    return quotient_space("l1", "l2", "l3", "t1", "t3")


@pytest.fixture(scope="module")
def coords(pspace):
    return {name: pspace.symbol(name) for name in ("l1", "l2", "l3", "t1", "t3")}


def _point(pspace, coords, zeros):
    return [Scalar.zero(pspace) if z else coords[f"l{i}"] for i, z in zip((1, 2, 3), zeros)]


def test_table_covers_every_zero_pattern(pspace, coords):
    shapes = {example216_map(_point(pspace, coords, zeros), pspace).shape for zeros in SHAPES}
    assert len(SHAPES) == 8
    assert shapes == set(SHAPES.values())


@pytest.mark.parametrize("zeros,text", [
    ((False, False, False), "<l2*x1*x3 - p*l1*l3*x2>"),
    ((False, True, False), "<x2>"),
    ((True, False, False), "<x1>"),
    ((False, True, True), "<x1 - l1, x2, x3>"),
    ((True, True, True), "<x1, x2, x3>"),
])
def test_table_rows(pspace, coords, zeros, text):
    assert str(example216_map(_point(pspace, coords, zeros), pspace)) == text


def test_stratum_of_point(pspace, coords):
    descriptor = example216_map(_point(pspace, coords, (False, True, False)), pspace)
    assert descriptor.stratum == (2,)
    assert descriptor.to_dict()["shape"] == "plane-13"


def test_fibre_of_torus_action(pspace, coords):
    l1, l2, l3, t1, t3 = (coords[k] for k in ("l1", "l2", "l3", "t1", "t3"))
    assert fibre_equal((l1, l2, l3), (t1 * l1, t1 * t3 * l2, t3 * l3), pspace)
    assert not fibre_equal((l1, l2, l3), (l1, t1 * l2, l3), pspace)


def test_fibre_separates_axis_points(pspace, coords):
    zero = Scalar.zero(pspace)
    l1, t1 = coords["l1"], coords["t1"]
    assert not fibre_equal((l1, zero, zero), (t1 * l1, zero, zero), pspace)
    assert fibre_equal((l1, zero, coords["l3"]), (t1 * l1, zero, coords["l3"]), pspace)


@pytest.mark.parametrize("i", [1, 2, 3])
def test_preimage_is_coordinate_hyperplane(i):
    report = preimage_closed_check(i)
    assert report["components"] == [[i]]
    assert report["closed"]
    assert report["hyperplane"]
    assert report["defining_polynomials"] == [f"l{i}"]


def test_preimage_by_name():
    assert preimage_closed_check("x2")["generator"] == "x2"
    with pytest.raises(TwistError):
        preimage_closed_check("x4")


def test_integer_points(pspace):
    descriptor = example216_map([1, 0, 2], pspace)
    assert descriptor.shape == "plane-13"


def test_requires_square_root_parameter():
    with pytest.raises(TwistError):
        quantum_affine_three_space(ParamSpace(("q",)))
    with pytest.raises(TwistError):
        example216_map([1, 2])
