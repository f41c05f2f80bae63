# src/patterns/hprime_patterns.py - X-generated H-prime patterns of O_q(M_n): condition (*), (I,J,f,g) data, counts

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..algebra.pbw_core import AlgebraPresentation, NcPoly, quotient_by_generators
from ..algebra.presets import matrix_generator
from ..algebra.qmatrix import create_bialgebra, matrix_position
from ..utils.errors import ClosureViolationError, ExhaustiveLimitError, PatternDataError

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]

MEMBER = "•"
PLACEHOLDER = "∘"


def _bit(n: int, i: int, j: int) -> int:
    return (i - 1) * n + (j - 1)


@dataclass(frozen=True)
class GridPattern:
    """Subset of the n x n generator grid, cells 1-based"""

    n: int
    cells: FrozenSet[Cell] = frozenset()

    def __post_init__(self):
        cells = frozenset((int(i), int(j)) for i, j in self.cells)
        object.__setattr__(self, "cells", cells)
        for i, j in cells:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise PatternDataError(f"Cell ({i},{j}) lies outside the {self.n}x{self.n} grid")

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "GridPattern":
        cells = [(b // n + 1, b % n + 1) for b in range(n * n) if mask >> b & 1]
        return cls(n, frozenset(cells))

    @property
    def mask(self) -> int:
        return sum(1 << _bit(self.n, i, j) for i, j in self.cells)

    def transpose(self) -> "GridPattern":
        return GridPattern(self.n, frozenset((j, i) for i, j in self.cells))

    def sorted_cells(self) -> List[Cell]:
        return sorted(self.cells)

    def generator_names(self) -> List[str]:
        return [matrix_generator(i, j) for i, j in self.sorted_cells()]

    def render(self) -> str:
        """ASCII grid with a bullet for each member cell"""
        lines = []
        for i in range(1, self.n + 1):
            lines.append(" ".join(MEMBER if (i, j) in self.cells else PLACEHOLDER for j in range(1, self.n + 1)))
        return "\n".join(lines)

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "cells": [list(c) for c in self.sorted_cells()]}


@lru_cache(maxsize=None)
def _corner_masks(n: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Per cell bit: southwest {l >= i, m <= j} and northeast {l <= i, m >= j} masks"""
    southwest, northeast = [], []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            sw = ne = 0
            for l in range(1, n + 1):
                for m in range(1, n + 1):
                    if l >= i and m <= j:
                        sw |= 1 << _bit(n, l, m)
                    if l <= i and m >= j:
                        ne |= 1 << _bit(n, l, m)
            southwest.append(sw)
            northeast.append(ne)
    return tuple(southwest), tuple(northeast)


def _is_star_mask(n: int, mask: int) -> bool:
    southwest, northeast = _corner_masks(n)
    remaining = mask
    while remaining:
        low = remaining & -remaining
        b = low.bit_length() - 1
        remaining ^= low
        sw, ne = southwest[b], northeast[b]
        if mask & sw != sw and mask & ne != ne:
            return False
    return True


def is_star(p: GridPattern) -> bool:
    """Condition (*): each member's southwest block or northeast block lies in the pattern"""
    return _is_star_mask(p.n, p.mask)


def _scan_chunk(args: Tuple[int, int, int]) -> List[int]:
    n, start, stop = args
    return [mask for mask in range(start, stop) if _is_star_mask(n, mask)]


def enumerate_star(n: int, workers: Optional[int] = None) -> List[GridPattern]:
    """All subsets of the n x n grid satisfying (*), in ascending bitmask order"""
    from config.settings import PATTERN_CONFIG

    if n < 1:
        raise PatternDataError(f"Grid size must be positive, got {n}")
    ceiling = PATTERN_CONFIG["exhaustive_ceiling"]
    if n > ceiling:
        raise ExhaustiveLimitError(f"Exhaustive enumeration is limited to n <= {ceiling}", n=n, ceiling=ceiling)

    total = 1 << (n * n)
    chunk = PATTERN_CONFIG["chunk_size"]
    workers = workers if workers is not None else PATTERN_CONFIG["workers"]
    jobs = [(n, start, min(start + chunk, total)) for start in range(0, total, chunk)]

    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_scan_chunk, jobs))
    else:
        chunks = [_scan_chunk(job) for job in jobs]

    masks = [mask for found in chunks for mask in found]
    logger.info(f"Star patterns for n={n}: {len(masks)} of {total} subsets")
    return [GridPattern.from_mask(n, mask) for mask in masks]


@dataclass(frozen=True)
class IJfgData:
    """Initial segments I = {1..a}, J = {1..b} with nondecreasing f: {1..n}\\J -> {2..n+1}\\I and g: {1..n}\\I -> {2..n+1}\\J"""

    n: int
    I: FrozenSet[int]
    J: FrozenSet[int]
    f: Tuple[Tuple[int, int], ...] = field(default=())
    g: Tuple[Tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "I", frozenset(self.I))
        object.__setattr__(self, "J", frozenset(self.J))
        object.__setattr__(self, "f", _as_pairs(self.f))
        object.__setattr__(self, "g", _as_pairs(self.g))
        rng = set(range(1, self.n + 1))
        if not self.I <= rng or not self.J <= rng:
            raise PatternDataError(f"I and J must lie in 1..{self.n}", I=sorted(self.I), J=sorted(self.J))
        for label, part in (("I", self.I), ("J", self.J)):
            if part != frozenset(range(1, len(part) + 1)):
                raise PatternDataError(f"{label} must be an initial segment 1..a", **{label: sorted(part)})
        self._check_map("f", self.f, rng - self.J, set(range(2, self.n + 2)) - self.I)
        self._check_map("g", self.g, rng - self.I, set(range(2, self.n + 2)) - self.J)

    def _check_map(self, label: str, pairs: Tuple[Tuple[int, int], ...], domain: set, codomain: set):
        keys = [k for k, _ in pairs]
        if sorted(keys) != sorted(domain):
            raise PatternDataError(f"{label} must be defined exactly on {sorted(domain)}", given=keys)
        values = [v for _, v in pairs]
        bad = [v for v in values if v not in codomain]
        if bad:
            raise PatternDataError(f"{label} takes values {bad} outside {sorted(codomain)}")
        if any(b < a for a, b in zip(values, values[1:])):
            raise PatternDataError(f"{label} is not nondecreasing", values=values)

    @property
    def f_map(self) -> Dict[int, int]:
        return dict(self.f)

    @property
    def g_map(self) -> Dict[int, int]:
        return dict(self.g)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "I": sorted(self.I),
            "J": sorted(self.J),
            "f": {str(k): v for k, v in self.f},
            "g": {str(k): v for k, v in self.g},
        }


def _as_pairs(value: Any) -> Tuple[Tuple[int, int], ...]:
    if isinstance(value, Mapping):
        value = value.items()
    return tuple(sorted((int(k), int(v)) for k, v in value))


def pattern_from_IJfg(d: IJfgData) -> GridPattern:
    """Rows in I, columns in J, and the cells cut out by f (below) and g (to the right)"""
    f, g = d.f_map, d.g_map
    cells = set()
    for i in range(1, d.n + 1):
        for j in range(1, d.n + 1):
            if i in d.I or j in d.J:
                cells.add((i, j))
            elif i >= f[j] or j >= g[i]:
                cells.add((i, j))
    return GridPattern(d.n, frozenset(cells))


def iter_IJfg(n: int) -> Iterable[IJfgData]:
    """Every valid (I, J, f, g) for the n x n grid"""
    universe = list(range(1, n + 1))
    subsets = [frozenset(range(1, a + 1)) for a in range(n + 1)]
    for I in subsets:
        for J in subsets:
            f_domain = [j for j in universe if j not in J]
            g_domain = [i for i in universe if i not in I]
            f_codomain = [v for v in range(2, n + 2) if v not in I]
            g_codomain = [v for v in range(2, n + 2) if v not in J]
            for f_values in itertools.combinations_with_replacement(f_codomain, len(f_domain)):
                for g_values in itertools.combinations_with_replacement(g_codomain, len(g_domain)):
                    yield IJfgData(n, I, J, tuple(zip(f_domain, f_values)), tuple(zip(g_domain, g_values)))


def verify_parametrization(n: int) -> Dict[str, Any]:
    """Compare the images of pattern_from_IJfg with the star patterns"""
    from config.settings import PATTERN_CONFIG

    ceiling = PATTERN_CONFIG["parametrization_ceiling"]
    if n > ceiling:
        raise ExhaustiveLimitError(f"Parametrization check is limited to n <= {ceiling}", n=n, ceiling=ceiling)

    star = {p.mask for p in enumerate_star(n)}
    images = set()
    data_count = 0
    not_star = []
    for d in iter_IJfg(n):
        data_count += 1
        pattern = pattern_from_IJfg(d)
        if not is_star(pattern) and len(not_star) < 5:
            not_star.append(d.to_dict())
        images.add(pattern.mask)

    missing = sorted(star - images)
    extra = sorted(images - star)
    report = {
        "n": n,
        "star_count": len(star),
        "image_count": len(images),
        "data_count": data_count,
        "equal": not missing and not extra,
        "missing": [GridPattern.from_mask(n, m).to_dict()["cells"] for m in missing[:10]],
        "extra": [GridPattern.from_mask(n, m).to_dict()["cells"] for m in extra[:10]],
        "images_not_star": not_star,
    }
    logger.info(f"Parametrization n={n}: {len(star)} star patterns, {len(images)} images, equal={report['equal']}")
    return report


def check_pattern_quotient(pattern: GridPattern, algebra: AlgebraPresentation) -> Dict[str, Any]:
    """Quotient by the pattern's generators: closure, relation soundness, surviving generators nonzero"""
    result = {"cells": pattern.to_dict()["cells"], "closed": True, "sound": True, "faithful": True}
    try:
        quotient, hom = quotient_by_generators(algebra, pattern.generator_names())
    except ClosureViolationError as exc:
        result.update(closed=False, sound=False, faithful=False, error=exc.message)
        return result
    result["sound"] = all(quotient.rule_residue(rule).is_zero() for rule in quotient.rules.values())
    killed = set(pattern.generator_names())
    result["faithful"] = all(
        hom(algebra.gen(name)).is_zero() == (name in killed) for name in algebra.gens
    )
    return result


def _generator_cells(gens: Sequence[NcPoly]) -> FrozenSet[Cell]:
    """Grid cells of the generators that are a single X[i,j]"""
    cells = set()
    for p in gens:
        if len(p) == 1 and sum(p.monomials()[0]) == 1:
            cells.add(matrix_position(p.presentation.gens[p.monomials()[0].index(1)]))
    return frozenset(cells)


def rank_le1_families(n: int) -> List[Dict[str, Any]]:
    """Distinct generator data of the ideals <2x2 minors> + <rows R> + <columns C>"""
    from config.settings import PATTERN_CONFIG

    ceiling = PATTERN_CONFIG["rank_count_ceiling"]
    if n > ceiling:
        raise ExhaustiveLimitError(f"Rank <= 1 enumeration is limited to n <= {ceiling}", n=n, ceiling=ceiling)

    universe = list(range(1, n + 1))
    subsets = [tuple(c) for k in range(n + 1) for c in itertools.combinations(universe, k)]
    bialgebra = create_bialgebra(n)
    seen: Dict[FrozenSet[Cell], Dict[str, Any]] = {}
    for R in subsets:
        for C in subsets:
            cells = _generator_cells(bialgebra.detgen_rank_le1(R, C))
            if cells in seen:
                seen[cells]["aliases"] += 1
                continue
            seen[cells] = {
                "R": list(R),
                "C": list(C),
                "cells": sorted([list(c) for c in cells]),
                "minors": n >= 2,
                "saturated": len(R) == n or len(C) == n,
                "aliases": 1,
            }
    return list(seen.values())


def rank_le1_count(n: int) -> int:
    """Number of distinct rank <= 1 determinantal ideals; (2^n - 1)^2 + 1"""
    count = len(rank_le1_families(n))
    if n == 1:
        logger.info("n=1 has no 2x2 minors; the count 2 covers <0> and <X[1,1]>")
    return count


def rank_le1_formula(n: int) -> int:
    return (2 ** n - 1) ** 2 + 1


def catalog_data() -> Dict[str, Any]:
    """Recorded H-prime totals, reference data that is not recomputed here"""
    return {
        "provenance": "recorded",
        "recomputed": False,
        "2x2": {"total": 14},
        "3x3": {"by_rank": {"0": 1, "1": 49, "2": 144, "3": 36}, "total": 230},
        "4x4": {"total": 6902},
    }


def catalog_consistency(catalog: Optional[Dict[str, Any]] = None) -> Dict[str, bool]:
    """Internal consistency of the recorded tables"""
    catalog = catalog or catalog_data()
    by_rank = catalog["3x3"]["by_rank"]
    return {
        "3x3_ranks_sum_to_total": sum(by_rank.values()) == catalog["3x3"]["total"],
        "3x3_rank_le1_matches_formula": by_rank["0"] + by_rank["1"] == rank_le1_formula(3),
    }


def create_pattern(n: int, cells: Sequence[Sequence[int]]) -> GridPattern:
    """Factory function: pattern from a list of (i, j) cells"""
    return GridPattern(n, frozenset(tuple(c) for c in cells))
