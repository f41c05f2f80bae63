#!/usr/bin/env python3
"""
Command-line workbench for quantized coordinate rings

Normal forms, quantum determinants and minors, bialgebra maps, torus gradings,
strata of quantum affine spaces, H-prime patterns and cocycle twists. Every
algebra element is printed in the expression grammar it is read in, so output
can be fed back as input.

Examples:
    python workbench_cli.py qdet -n 2
    python workbench_cli.py nf "X[2,2]*X[1,1]" -n 2
    python workbench_cli.py strata --preset affine -n 2 -q generic
    python workbench_cli.py patterns enumerate -n 1
    python workbench_cli.py quotient-map l1 0 l3 --json
"""

import sys
import json
import logging
import argparse
import dataclasses
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import jsonschema

# Add project root to Python path
PROJECT_ROOT = Path(__file__).parent
sys.path.insert(0, str(PROJECT_ROOT))

from config.settings import (
    ALGEBRA_CONFIG,
    DEFAULT_PARAMS,
    DEFAULT_WORKBENCH_PATH,
    LOGGING_CONFIG,
    OUTPUT_CONFIG,
    PATTERN_CONFIG,
    SCHEMA_PATH,
    WORKBENCH_SCHEMA_PATH,
)
from src.algebra.pbw_core import AlgebraPresentation, NcPoly
from src.algebra.presets import create_preset, multiparam_space, resolve_kind
from src.algebra.qmatrix import MinorIndex, bialgebra_for, is_central
from src.formatters.json_formatter import create_result_formatter
from src.formatters.presentation_io import load_presentation
from src.parsing.expression_parser import Minor, parse_element, parse_expression, parse_scalar
from src.patterns.hprime_patterns import (
    catalog_consistency,
    catalog_data,
    enumerate_star,
    rank_le1_count,
    rank_le1_families,
    rank_le1_formula,
    verify_parametrization,
)
from src.scalars.scalar_ring import ParamSpace
from src.torus.grading import create_grading, h_stable_by_generators, is_homogeneous
from src.torus.strata import CommutationSpec, center_lattice, laurent_monomial_text, primitive_profile, strata_report
from src.twist.cocycle_twist import (
    TwistedAlgebra,
    pbw_cocycle,
    standard_cocycle,
    twisted_presentation,
    verify_twist_isomorphism,
)
from src.twist.quotient_map import example216_map, fibre_equal, preimage_closed_check, quotient_space
from src.utils.errors import CommandError, ConfigError, WorkbenchError

logger = logging.getLogger("workbench_cli")

POINT_SYMBOLS = ("l1", "l2", "l3", "t1", "t2", "t3")


@dataclass
class WorkbenchConfig:
    """Active algebra, parameter declaration, grading and output format"""

    preset: str = ALGEBRA_CONFIG["preset"]
    presentation: Optional[str] = None
    n: int = ALGEBRA_CONFIG["n"]
    q: str = ALGEBRA_CONFIG["q"]
    params: str = DEFAULT_PARAMS
    grading: Optional[str] = ALGEBRA_CONFIG["grading"]
    output: str = OUTPUT_CONFIG["format"]

    def param_space(self) -> ParamSpace:
        return ParamSpace.parse(self.params)

    def to_dict(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)


def load_workbench_config(path: Optional[Path] = None) -> WorkbenchConfig:
    """Read and validate a workbench config file; missing fields keep their defaults"""
    path = Path(path) if path is not None else DEFAULT_WORKBENCH_PATH
    if not path.exists():
        if path == DEFAULT_WORKBENCH_PATH:
            return WorkbenchConfig()
        raise ConfigError(f"Config file not found: {path}", path=str(path))
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
        with open(WORKBENCH_SCHEMA_PATH, "r", encoding="utf-8") as f:
            schema = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"Cannot read config file {path}: {str(e)}", path=str(path)) from None

    try:
        jsonschema.validate(data, schema)
    except jsonschema.exceptions.ValidationError as e:
        field = ".".join(str(p) for p in e.absolute_path) or "<root>"
        raise ConfigError(f"Invalid config value for {field}: {e.message}", path=str(path), field=field) from None

    cfg = WorkbenchConfig(**data)
    cfg.param_space()
    logger.info(f"Loaded workbench config from {path}")
    return cfg


def build_presentation(cfg: WorkbenchConfig) -> AlgebraPresentation:
    if cfg.presentation:
        return load_presentation(Path(cfg.presentation))
    kind = resolve_kind(cfg.preset)
    space: Optional[ParamSpace] = cfg.param_space()
    if kind == "quantum-affine-multiparam":
        needed = multiparam_space(cfg.n).names
        if not all(space.knows(name) for name in needed):
            space = None
    elif not space.knows("q"):
        raise ConfigError(f"Preset {kind} needs a parameter named q; declared {space}", params=cfg.params)
    return create_preset(kind, cfg.n, cfg.q, space)


# ---------- argument parsing ---------- #

class _CommandParser(argparse.ArgumentParser):
    """ArgumentParser that raises CommandError instead of exiting"""

    def error(self, message):
        raise CommandError(message, usage=self.format_usage().strip())


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--preset", help="plane | affine | multiparam | matrices (or the full preset name)")
    common.add_argument("-n", type=int, help="Generator count (affine) or matrix size")
    common.add_argument("-q", choices=["generic", "commutative"], help="Keep q formal or set it to 1")
    common.add_argument("--params", help="Parameter declaration, e.g. q or 'p;q=p^2'")
    common.add_argument("--presentation", help="Presentation JSON file instead of a preset")
    common.add_argument("--grading", choices=["affine", "matrix", "sl2-style"], help="Grading preset")
    common.add_argument("--json", action="store_const", const="json", dest="output", help="Schema'd JSON output")
    common.add_argument("--config", help="Workbench config file")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = _CommandParser(prog="workbench_cli.py", description="Quantized coordinate ring workbench", parents=[common])
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help_text, description=help_text, parents=[common])

    add("nf", "Normal form of an expression").add_argument("expr")
    p = add("mul", "Normal form of a product")
    p.add_argument("left")
    p.add_argument("right")
    add("qdet", "Quantum determinant of O_q(M_n)")
    add("qminor", "Quantum minor, e.g. '[1,2|1,3]'").add_argument("index")
    add("central", "Whether an element commutes with every generator").add_argument("expr")
    add("delta", "Comultiplication of an element of O_q(M_n)").add_argument("expr")
    add("counit", "Counit of an element of O_q(M_n)").add_argument("expr")
    p = add("mu-star", "Image under mu*_q for a given t")
    p.add_argument("expr")
    p.add_argument("-t", type=int, required=True, help="1 <= t <= n")
    add("weight", "Weight of a homogeneous element").add_argument("expr")
    add("homog", "Whether an element is homogeneous").add_argument("expr")
    add("stable", "Whether the ideal generated by the expressions is H-stable").add_argument("exprs", nargs="+")
    add("center", "Central Laurent monomials of the quantum torus")
    p = add("strata", "Torus-orbit strata and the centers of their quantum tori")
    p.add_argument("--profile", action="store_true", help="Include the primitive-ideal family of each stratum")
    p = add("patterns", "H-prime generator patterns of O_q(M_n)")
    p.add_argument("action", choices=["enumerate", "verify", "counts"])
    p = add("twist", "Cocycle twist of a quantum affine space")
    p.add_argument("--degree", type=int, default=3, help="Total degree bound of the product check")
    p.add_argument("--degrees", help="Semigroup generator degrees, e.g. '2,0;1,1;0,2'")
    p.add_argument("--bound", type=int, default=3, help="Generator count truncation of the semigroup")
    p = add("quotient-map", "Primitive ideal of O_q(k^3) attached to a point (q = p^2)")
    p.add_argument("coords", nargs=3)
    p = add("fibre", "Whether two points of k^3 have the same image")
    p.add_argument("coords", nargs=6)
    add("preimage", "Points whose ideal contains a generator x1, x2 or x3").add_argument("generator")
    add("catalog", "Recorded H-prime totals and their internal consistency")
    p = add("acceptance", "Run the acceptance criteria")
    p.add_argument("--criteria", help="Comma-separated criterion ids")
    return parser


# ---------- command handlers ---------- #

class WorkbenchSession:
    """One command invocation against a config"""

    def __init__(self, cfg: WorkbenchConfig):
        self.cfg = cfg
        self._presentation: Optional[AlgebraPresentation] = None

    @property
    def presentation(self) -> AlgebraPresentation:
        if self._presentation is None:
            self._presentation = build_presentation(self.cfg)
        return self._presentation

    def element(self, text: str) -> NcPoly:
        return parse_element(text, self.presentation)

    def grading(self):
        return create_grading(self.cfg.grading, self.presentation)

    def commutation_spec(self) -> CommutationSpec:
        return CommutationSpec.from_presentation(self.presentation)

    def dispatch(self, args: argparse.Namespace) -> Tuple[Any, Optional[str]]:
        """(result, text override) for the parsed command"""
        handler = getattr(self, "cmd_" + args.command.replace("-", "_"))
        return handler(args)

    def cmd_nf(self, args):
        return self.element(args.expr), None

    def cmd_mul(self, args):
        return self.element(args.left) * self.element(args.right), None

    def cmd_qdet(self, args):
        return bialgebra_for(self.presentation).qdet(), None

    def cmd_qminor(self, args):
        text = args.index.strip()
        node = parse_expression(text if text.startswith("[") else f"[{text}]")
        if not isinstance(node, Minor):
            raise CommandError(f"Expected a minor index such as [1,2|1,3], got {args.index!r}")
        return bialgebra_for(self.presentation).qminor(MinorIndex(node.I, node.J)), None

    def cmd_central(self, args):
        return is_central(self.element(args.expr)), None

    def cmd_delta(self, args):
        return bialgebra_for(self.presentation).delta(self.element(args.expr)), None

    def cmd_counit(self, args):
        return bialgebra_for(self.presentation).counit(self.element(args.expr)), None

    def cmd_mu_star(self, args):
        return bialgebra_for(self.presentation).mu_q_star(args.t, self.element(args.expr)), None

    def cmd_weight(self, args):
        weight = is_homogeneous(self.element(args.expr), self.grading())
        return (list(weight) if weight is not None else None), None

    def cmd_homog(self, args):
        return is_homogeneous(self.element(args.expr), self.grading()) is not None, None

    def cmd_stable(self, args):
        return h_stable_by_generators([self.element(e) for e in args.exprs], self.grading()), None

    def cmd_center(self, args):
        spec = self.commutation_spec()
        basis = center_lattice(spec)
        monomials = [laurent_monomial_text(spec.names, v) for v in basis]
        result = {"rank": len(basis), "basis": [list(v) for v in basis], "central_monomials": monomials}
        return result, "\n".join(monomials) if monomials else "1"

    def cmd_strata(self, args):
        spec = self.commutation_spec()
        rows = []
        for report in strata_report(spec):
            row = report.to_dict()
            if args.profile:
                row["profile"] = primitive_profile(report, spec.names)
            rows.append(row)
        return rows, None

    def cmd_patterns(self, args):
        n = self.cfg.n
        if args.action == "enumerate":
            patterns = enumerate_star(n)
            result = {"n": n, "count": len(patterns), "patterns": [p.to_dict()["cells"] for p in patterns]}
            text = f"{len(patterns)} star patterns for n={n}\n\n" + "\n\n".join(p.render() for p in patterns)
            return result, text
        if args.action == "verify":
            return verify_parametrization(n), None
        result = {
            "n": n,
            "rank_le1_count": rank_le1_count(n),
            "rank_le1_formula": rank_le1_formula(n),
            "rank_le1_families": rank_le1_families(n),
        }
        if n <= PATTERN_CONFIG["exhaustive_ceiling"]:
            result["star_count"] = len(enumerate_star(n))
        return result, None

    def cmd_twist(self, args):
        spec = self.commutation_spec()
        cocycle = standard_cocycle(spec)
        if args.degrees:
            degrees = [[int(x) for x in part.split(",")] for part in args.degrees.split(";") if part.strip()]
            algebra = TwistedAlgebra.semigroup(degrees, args.bound, cocycle)
            target = twisted_presentation(algebra)
        else:
            algebra = TwistedAlgebra.polynomial(pbw_cocycle(cocycle), spec.names)
            target = self.presentation
        report = verify_twist_isomorphism(algebra, target, args.degree)
        report["cocycle"] = algebra.cocycle.to_dict()
        report["relations"] = [
            f"{target.gens[u]}*{target.gens[v]} = {rule.scalar}*{target.gens[v]}*{target.gens[u]}"
            for (u, v), rule in sorted(target.rules.items())
        ]
        return report, None

    def _point(self, coords: Sequence[str], space: ParamSpace) -> List:
        return [parse_scalar(c, space) for c in coords]

    def cmd_quotient_map(self, args):
        space = quotient_space(*POINT_SYMBOLS)
        descriptor = example216_map(self._point(args.coords, space), space)
        return descriptor, str(descriptor)

    def cmd_fibre(self, args):
        space = quotient_space(*POINT_SYMBOLS)
        return fibre_equal(self._point(args.coords[:3], space), self._point(args.coords[3:], space), space), None

    def cmd_preimage(self, args):
        return preimage_closed_check(args.generator), None

    def cmd_catalog(self, args):
        catalog = catalog_data()
        return {"catalog": catalog, "consistency": catalog_consistency(catalog)}, None

    def cmd_acceptance(self, args):
        from acceptance_suite import run_acceptance

        selected = [int(x) for x in args.criteria.split(",")] if args.criteria else None
        report = run_acceptance(selected)
        lines = [f"[{r['id']:>2}] {r['status']:<5} {r['seconds']:>8.2f}s  {r['name']}" for r in report["results"]]
        summary = report["summary"]
        lines.append(f"{summary['passed']}/{summary['total']} criteria passed")
        return report, "\n".join(lines)


def run_command(cfg: WorkbenchConfig, argv: Sequence[str]) -> Tuple[int, str]:
    """Parse argv, run one command, and return (exit status, stdout text)"""
    try:
        args = build_parser().parse_args(list(argv))
        options = vars(args)
        if "config" in options:
            cfg = load_workbench_config(Path(options["config"]))
        overrides = {f.name: options[f.name] for f in dataclasses.fields(WorkbenchConfig) if f.name in options}
        cfg = dataclasses.replace(cfg, **overrides)
        if cfg.presentation is None and cfg.n is not None and cfg.n < 1:
            raise CommandError(f"-n must be positive, got {cfg.n}")

        logger.info(f"Running '{args.command}' with {cfg.to_dict()}")
        result, text = WorkbenchSession(cfg).dispatch(args)
        formatter = create_result_formatter(OUTPUT_CONFIG, SCHEMA_PATH)
        if cfg.output == "json":
            return 0, formatter.render(args.command, result, as_json=True)
        return 0, text if text is not None else formatter.render(args.command, result, as_json=False)
    except (CommandError, ConfigError) as e:
        logger.error(f"{type(e).__name__}: {e.message}")
        return 2, json.dumps(e.to_dict(), ensure_ascii=False)
    except WorkbenchError as e:
        logger.error(f"{type(e).__name__}: {e.message}")
        return 1, json.dumps(e.to_dict(), ensure_ascii=False)


def setup_logging():
    """Log file plus stderr; stdout carries only command output"""
    logging.basicConfig(
        level=getattr(logging, LOGGING_CONFIG["level"]),
        format=LOGGING_CONFIG["format"],
        handlers=[
            logging.FileHandler(LOGGING_CONFIG["file"]),
            logging.StreamHandler(sys.stderr),
        ],
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    setup_logging()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = load_workbench_config()
        code, output = run_command(cfg, argv)
    except ConfigError as e:
        code, output = 2, json.dumps(e.to_dict(), ensure_ascii=False)
    except Exception as e:
        logger.exception("Unexpected failure")
        code, output = 1, json.dumps({"error": type(e).__name__, "message": str(e)}, ensure_ascii=False)
    if output:
        print(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
