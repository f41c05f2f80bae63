#!/usr/bin/env python3
"""
Acceptance Suite for the Quantized Coordinate Ring Workbench

Runs the ten acceptance criteria with wall-clock timing and writes
output/test_results/acceptance_<timestamp>.json.
"""

import sys
import time
import random
import logging
import itertools
from pathlib import Path
from datetime import datetime
from typing import Any, Callable, Dict, List, Optional

# Add project root to Python path
PROJECT_ROOT = Path(__file__).parent
sys.path.insert(0, str(PROJECT_ROOT))

from config.settings import ENGINE_CONFIG, OUTPUT_CONFIG, RESULTS_DIR, SCHEMA_PATH
from src.algebra.presets import default_q_matrix, multiparam_space, preset_algebra
from src.algebra.qmatrix import create_bialgebra, is_central
from src.formatters.json_formatter import create_result_formatter
from src.patterns.hprime_patterns import (
    catalog_consistency,
    catalog_data,
    check_pattern_quotient,
    enumerate_star,
    rank_le1_count,
    rank_le1_formula,
    verify_parametrization,
)
from src.scalars.scalar_ring import Scalar
from src.torus.strata import CommutationSpec, strata_report
from src.twist.cocycle_twist import TwistedAlgebra, standard_cocycle
from src.twist.quotient_map import SHAPES, example216_map, fibre_equal, preimage_closed_check, quotient_space
from src.utils.errors import WorkbenchError

logger = logging.getLogger(__name__)


# ---------- criteria ---------- #

def check_relations_and_confluence() -> Dict[str, Any]:
    algebras = {
        "O_q(k^2)": preset_algebra("quantum-plane"),
        "O_q(k^3) multiparameter": preset_algebra("quantum-affine-multiparam", 3),
        "O_q(M_2)": preset_algebra("quantum-matrices", 2),
        "O_q(M_3)": preset_algebra("quantum-matrices", 3),
    }
    details = {}
    for label, algebra in algebras.items():
        residues = [r for r in algebra.rules.values() if not algebra.rule_residue(r).is_zero()]
        triples = [(a, b, c) for a, b, c in itertools.product(range(len(algebra.gens)), repeat=3)]
        failures = algebra.overlap_failures(triples)
        details[label] = {"relations": len(algebra.rules), "bad_relations": len(residues),
                          "triples": len(triples), "associativity_failures": len(failures)}
    passed = all(d["bad_relations"] == 0 and d["associativity_failures"] == 0 for d in details.values())
    return {"passed": passed, "details": details}


def check_qdet_central() -> Dict[str, Any]:
    details = {f"n={n}": is_central(create_bialgebra(n).qdet()) for n in (2, 3)}
    return {"passed": all(details.values()), "details": details}


def check_bialgebra_identities() -> Dict[str, Any]:
    details = {}
    for n in (2, 3):
        bialgebra = create_bialgebra(n)
        d = bialgebra.qdet()
        details[f"n={n}"] = {
            "grouplike": bialgebra.delta(d) == bialgebra.tensor(d, d),
            "counit_one": bialgebra.counit(d).is_one(),
        }
    details["coassociativity_n=2"] = not create_bialgebra(2).coassociativity_failures()
    passed = all(all(v.values()) if isinstance(v, dict) else v for v in details.values())
    return {"passed": passed, "details": details}


def check_kernel_containment() -> Dict[str, Any]:
    details = {}
    for n in (1, 2, 3):
        bialgebra = create_bialgebra(n)
        for t in range(1, n + 1):
            survivors = [
                str(index) for index in bialgebra.all_minors(t)
                if not bialgebra.mu_q_star(t, bialgebra.qminor(index)).is_zero()
            ]
            details[f"n={n},t={t}"] = {"minors": len(bialgebra.all_minors(t)), "not_annihilated": survivors}
    passed = all(not d["not_annihilated"] for d in details.values())
    return {"passed": passed, "details": details}


def check_stratification() -> Dict[str, Any]:
    plane = [r.center_rank for r in strata_report(CommutationSpec.single_parameter(2))]
    counts = {n: len(strata_report(CommutationSpec.single_parameter(n))) for n in range(1, 7)}
    full_torus = strata_report(CommutationSpec.single_parameter(3))[0]
    details = {
        "plane_center_ranks": plane,
        "strata_counts": counts,
        "n3_full_torus": full_torus.to_dict(),
    }
    passed = (
        plane == [0, 1, 1, 0]
        and all(count == 2 ** n for n, count in counts.items())
        and full_torus.center_rank == 1
        and full_torus.center_basis == [(1, -1, 1)]
    )
    return {"passed": passed, "details": details}


def check_star_parametrization() -> Dict[str, Any]:
    details = {}
    passed = True
    for n in (1, 2, 3):
        report = verify_parametrization(n)
        algebra = preset_algebra("quantum-matrices", n)
        checks = [check_pattern_quotient(p, algebra) for p in enumerate_star(n)]
        bad = [c["cells"] for c in checks if not (c["closed"] and c["sound"] and c["faithful"])]
        details[f"n={n}"] = {"star_count": report["star_count"], "equal": report["equal"], "bad_quotients": bad[:5]}
        passed = passed and report["equal"] and not bad
    return {"passed": passed, "details": details}


def check_rank_le1_counts() -> Dict[str, Any]:
    details = {n: {"count": rank_le1_count(n), "formula": rank_le1_formula(n)} for n in range(2, 7)}
    return {"passed": all(d["count"] == d["formula"] for d in details.values()), "details": details}


def check_twist_relations() -> Dict[str, Any]:
    details = {}
    passed = True
    rng = random.Random(ENGINE_CONFIG["random_seed"])
    for n in (2, 3, 4):
        q = default_q_matrix(n, multiparam_space(n))
        t = TwistedAlgebra.polynomial(standard_cocycle(q))
        bad_pairs = [
            (i + 1, j + 1) for i in range(n) for j in range(n)
            if t.twist_product(t.gen(i), t.gen(j)) != t.twist_product(t.gen(j), t.gen(i)).scale(q[i][j])
        ]
        triples = [[tuple(rng.randint(0, 3) for _ in range(n)) for _ in range(3)] for _ in range(100)]
        bad_triples = [tr for tr in triples if not t.cocycle.satisfies_cocycle_identity(*tr)]
        details[f"n={n}"] = {"bad_pairs": bad_pairs, "cocycle_failures": len(bad_triples)}
        passed = passed and not bad_pairs and not bad_triples
    return {"passed": passed, "details": details}


def check_quotient_map() -> Dict[str, Any]:
    space = quotient_space("l1", "l2", "l3", "t1", "t3")
    l1, l2, l3, t1, t3 = (space.symbol(name) for name in ("l1", "l2", "l3", "t1", "t3"))
    zero = Scalar.zero(space)

    table = []
    for zeros in SHAPES:
        point = [zero if z else s for z, s in zip(zeros, (l1, l2, l3))]
        table.append(example216_map(point, space).to_dict())

    fibre = fibre_equal((l1, l2, l3), (t1 * l1, t1 * t3 * l2, t3 * l3), space)
    not_fibre = fibre_equal((l1, l2, l3), (l1, t1 * l2, l3), space)
    preimages = {f"x{i}": preimage_closed_check(i)["components"] for i in (1, 2, 3)}
    details = {"table": table, "fibre_identity": fibre, "non_fibre_rejected": not not_fibre, "preimages": preimages}
    passed = (
        len(table) == len(SHAPES)
        and fibre
        and not not_fibre
        and all(preimages[f"x{i}"] == [[i]] for i in (1, 2, 3))
    )
    return {"passed": passed, "details": details}


def check_recorded_catalog() -> Dict[str, Any]:
    catalog = catalog_data()
    consistency = catalog_consistency(catalog)
    values = (
        catalog["2x2"]["total"],
        *(catalog["3x3"]["by_rank"][k] for k in ("0", "1", "2", "3")),
        catalog["3x3"]["total"],
        catalog["4x4"]["total"],
    )
    passed = values == (14, 1, 49, 144, 36, 230, 6902) and not catalog["recomputed"] and all(consistency.values())
    return {"passed": passed, "details": {"values": list(values), "consistency": consistency,
                                          "provenance": catalog["provenance"]}}


CRITERIA: List[Dict[str, Any]] = [
    {"id": 1, "name": "relation soundness and confluence", "check": check_relations_and_confluence, "budget": 10},
    {"id": 2, "name": "quantum determinant is central", "check": check_qdet_central, "budget": 30},
    {"id": 3, "name": "bialgebra identities", "check": check_bialgebra_identities, "budget": 60},
    {"id": 4, "name": "mu*_q kernel containment", "check": check_kernel_containment, "budget": 60},
    {"id": 5, "name": "stratification shape", "check": check_stratification, "budget": 5},
    {"id": 6, "name": "star patterns equal (I,J,f,g) images", "check": check_star_parametrization, "budget": 60},
    {"id": 7, "name": "rank <= 1 count", "check": check_rank_le1_counts, "budget": 10},
    {"id": 8, "name": "twist relations", "check": check_twist_relations, "budget": 5},
    {"id": 9, "name": "quotient map table, fibres and preimages", "check": check_quotient_map, "budget": 10},
    {"id": 10, "name": "recorded catalog consistency", "check": check_recorded_catalog, "budget": None},
]


class AcceptanceSuite:
    """Timed runner over the acceptance criteria"""

    def __init__(self, selected: Optional[List[int]] = None):
        self.criteria = [c for c in CRITERIA if selected is None or c["id"] in selected]
        self.results: List[Dict[str, Any]] = []

    def run_criterion(self, criterion: Dict[str, Any]) -> Dict[str, Any]:
        check: Callable[[], Dict[str, Any]] = criterion["check"]
        result = {"id": criterion["id"], "name": criterion["name"], "status": "UNKNOWN", "error": None}
        start = time.perf_counter()
        try:
            outcome = check()
            result["status"] = "PASS" if outcome["passed"] else "FAIL"
            result["details"] = outcome["details"]
        except Exception as e:
            logger.exception(f"Criterion {criterion['id']} crashed")
            result["status"] = "ERROR"
            result["error"] = f"{type(e).__name__}: {str(e)}"
        elapsed = time.perf_counter() - start
        result["seconds"] = round(elapsed, 3)
        result["budget_seconds"] = criterion["budget"]
        result["within_budget"] = criterion["budget"] is None or elapsed < criterion["budget"]
        logger.info(f"Criterion {criterion['id']} ({criterion['name']}): {result['status']} in {elapsed:.2f}s")
        return result

    def run_all(self) -> Dict[str, Any]:
        self.results = [self.run_criterion(c) for c in self.criteria]
        return {"results": self.results, "summary": self.generate_summary(), "timestamp": datetime.now().isoformat()}

    def generate_summary(self) -> Dict[str, Any]:
        passed = sum(1 for r in self.results if r["status"] == "PASS")
        return {
            "total": len(self.results),
            "passed": passed,
            "failed": [r["id"] for r in self.results if r["status"] != "PASS"],
            "over_budget": [r["id"] for r in self.results if not r["within_budget"]],
            "all_passed": passed == len(self.results),
        }

    def save_results(self, report: Dict[str, Any], output_dir: Path = RESULTS_DIR) -> Path:
        """Write the report as a validated {"command": "acceptance", "result": ...} envelope"""
        formatter = create_result_formatter(OUTPUT_CONFIG, SCHEMA_PATH)
        output = formatter.envelope("acceptance", report)
        if not formatter.validate_output(output):
            raise WorkbenchError("Acceptance report does not match the result schema")
        output_file = output_dir / f"acceptance_{datetime.now().strftime('%Y%m%d_%H%M%S')}.json"
        if not formatter.save_output(output, output_file):
            raise WorkbenchError(f"Could not write acceptance results to {output_file}", path=str(output_file))
        logger.info(f"Acceptance results saved to: {output_file}")
        return output_file


def run_acceptance(selected: Optional[List[int]] = None, save: bool = True) -> Dict[str, Any]:
    suite = AcceptanceSuite(selected)
    report = suite.run_all()
    if save:
        report["results_file"] = str(suite.save_results(report))
    return report


def main() -> int:
    logging.basicConfig(level=logging.WARNING, format="%(asctime)s - %(levelname)s - %(message)s")
    report = run_acceptance()
    for r in report["results"]:
        print(f"[{r['id']:>2}] {r['status']:<5} {r['seconds']:>8.2f}s  {r['name']}")
    summary = report["summary"]
    print(f"\n{summary['passed']}/{summary['total']} criteria passed; results in {report['results_file']}")
    return 0 if summary["all_passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
