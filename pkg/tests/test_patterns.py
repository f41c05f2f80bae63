"""
H-prime generator patterns: condition (*), (I, J, f, g) data and rank <= 1 counts
"""
import pytest

from config.settings import PATTERN_CONFIG
from src.algebra.qmatrix import create_bialgebra, detgen_rank_le1, matrix_position
from src.patterns.hprime_patterns import (
    GridPattern,
    IJfgData,
    catalog_consistency,
    catalog_data,
    check_pattern_quotient,
    create_pattern,
    enumerate_star,
    is_star,
    iter_IJfg,
    pattern_from_IJfg,
    rank_le1_count,
    rank_le1_families,
    rank_le1_formula,
    verify_parametrization,
)
from src.utils.errors import ExhaustiveLimitError, PatternDataError


@pytest.mark.parametrize("n,count", [(1, 2), (2, 13)])
def test_star_counts(n, count):
    assert len(enumerate_star(n)) == count


def test_star_condition_examples():
    assert not is_star(create_pattern(2, [(1, 1)]))
    assert is_star(create_pattern(2, [(1, 1), (1, 2)]))
    assert is_star(create_pattern(2, [(1, 1), (2, 1)]))
    assert is_star(create_pattern(2, [(1, 2)]))
    assert is_star(GridPattern(2))


def test_enumeration_is_sorted_by_mask():
    masks = [p.mask for p in enumerate_star(2)]
    assert masks == sorted(masks)
    assert masks[0] == 0


def test_pattern_bounds_are_checked():
    with pytest.raises(PatternDataError):
        create_pattern(2, [(3, 1)])


def test_render():
    assert create_pattern(2, [(1, 2)]).render() == "∘ •\n∘ ∘"


def test_transpose_preserves_condition():
    for pattern in enumerate_star(3):
        assert is_star(pattern.transpose())


def test_ijfg_example():
    data = IJfgData(2, set(), set(), {1: 2, 2: 3}, {1: 3, 2: 3})
    pattern = pattern_from_IJfg(data)
    assert pattern.cells == frozenset({(2, 1)})
    assert is_star(pattern)


@pytest.mark.parametrize("f,g", [
    ({1: 3, 2: 2}, {1: 3, 2: 3}),  # f decreasing
    ({1: 2}, {1: 3, 2: 3}),  # f misses a column
    ({1: 1, 2: 3}, {1: 3, 2: 3}),  # value outside 2..n+1
])
def test_invalid_ijfg_data(f, g):
    with pytest.raises(PatternDataError):
        IJfgData(2, set(), set(), f, g)


@pytest.mark.parametrize("n,I,J", [
    (2, {2}, set()),
    (2, set(), {2}),
    (3, {1, 3}, set()),
])
def test_ijfg_rows_and_columns_are_initial_segments(n, I, J):
    with pytest.raises(PatternDataError) as excinfo:
        IJfgData(n, I, J)
    assert "initial segment" in excinfo.value.message


def test_ijfg_iteration_uses_initial_segments():
    for data in iter_IJfg(3):
        assert data.I == frozenset(range(1, len(data.I) + 1))
        assert data.J == frozenset(range(1, len(data.J) + 1))


def test_full_first_row_from_ijfg():
    data = IJfgData(2, {1}, set(), {1: 3, 2: 3}, {2: 3})
    assert pattern_from_IJfg(data).cells == frozenset({(1, 1), (1, 2)})


def test_ijfg_images_are_star():
    for data in iter_IJfg(2):
        assert is_star(pattern_from_IJfg(data))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_parametrization_matches_enumeration(n):
    report = verify_parametrization(n)
    assert report["equal"]
    assert report["star_count"] == report["image_count"] == len(enumerate_star(n))
    assert report["images_not_star"] == []


def test_parametrization_at_four():
    report = verify_parametrization(4)
    assert report["equal"]
    assert report["star_count"] == report["image_count"] == 1146
    assert report["images_not_star"] == []


def test_star_patterns_give_closed_quotients(m2):
    for pattern in enumerate_star(2):
        check = check_pattern_quotient(pattern, m2)
        assert check["closed"] and check["sound"] and check["faithful"], check["cells"]


def test_non_star_pattern_is_not_closed(m2):
    check = check_pattern_quotient(create_pattern(2, [(1, 1)]), m2)
    assert not check["closed"]
    assert "X[2,2]*X[1,1]" in check["error"]


@pytest.mark.parametrize("n,count", [(1, 2), (2, 10), (3, 50), (4, 226)])
def test_rank_le1_counts(n, count):
    assert rank_le1_count(n) == count == rank_le1_formula(n)


def test_rank_le1_families_dedupe_the_full_grid():
    families = rank_le1_families(2)
    full = [f for f in families if f["saturated"]]
    assert len(full) == 1
    assert full[0]["aliases"] == 7


@pytest.mark.parametrize("n", [2, 3])
def test_rank_le1_families_follow_detgen_generators(n):
    bialgebra = create_bialgebra(n)
    for family in rank_le1_families(n):
        gens = detgen_rank_le1(family["R"], family["C"], n)
        linear = [p for p in gens if len(p) == 1 and sum(p.monomials()[0]) == 1]
        assert family["cells"] == [list(c) for c in sorted({matrix_position(str(p)) for p in linear})]
        assert len(gens) == len(bialgebra.all_minors(2)) + len(linear)
        assert family["saturated"] == (len(family["cells"]) == n * n)


def test_rank_le1_row_family():
    families = {(tuple(f["R"]), tuple(f["C"])): f for f in rank_le1_families(2)}
    assert families[((1,), ())]["cells"] == [[1, 1], [1, 2]]
    assert families[((), ())]["cells"] == []
    assert not families[((1,), (1,))]["saturated"]


def test_catalog_is_recorded_and_consistent():
    catalog = catalog_data()
    assert catalog["recomputed"] is False
    assert catalog["2x2"]["total"] == 14
    assert catalog["3x3"]["total"] == 230
    assert catalog["4x4"]["total"] == 6902
    assert all(catalog_consistency(catalog).values())


def test_exhaustive_ceiling(monkeypatch):
    monkeypatch.setitem(PATTERN_CONFIG, "exhaustive_ceiling", 2)
    with pytest.raises(ExhaustiveLimitError):
        enumerate_star(3)


def test_parallel_scan_matches_serial(monkeypatch):
    serial = enumerate_star(3, workers=1)
    monkeypatch.setitem(PATTERN_CONFIG, "chunk_size", 128)
    assert enumerate_star(3, workers=2) == serial
