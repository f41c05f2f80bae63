# src/formatters/presentation_io.py - Presentation files: JSON load/save validated by presentation_schema.json

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple

import jsonschema

from config.settings import PRESENTATION_SCHEMA_PATH
from ..algebra.pbw_core import AlgebraPresentation, Monomial, Rule
from ..parsing.expression_parser import parse_scalar
from ..scalars.scalar_ring import ParamSpace
from ..utils.errors import PresentationError, UnknownGeneratorError

logger = logging.getLogger(__name__)


def load_schema(path: Path = PRESENTATION_SCHEMA_PATH) -> Dict[str, Any]:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def _space_from_json(data: Dict[str, Any]) -> ParamSpace:
    declaration = ";".join(list(data["names"]) + [f"{k}={v}" for k, v in data.get("derived", {}).items()])
    return ParamSpace.parse(declaration)


def _space_to_json(space: ParamSpace) -> Dict[str, Any]:
    derived = {}
    for name, vec in space.derived:
        factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(space.names, vec) if e]
        derived[name] = "*".join(factors) if factors else "1"
    return {"names": list(space.names), "derived": derived}


def monomial_from_text(text: str, gens: Sequence[str]) -> Monomial:
    """Inverse of AlgebraPresentation.monomial_text"""
    exps = [0] * len(gens)
    text = text.strip()
    if text == "1":
        return tuple(exps)
    for factor in text.split("*"):
        name, _, power = factor.strip().partition("^")
        if name not in gens:
            raise UnknownGeneratorError(f"Unknown generator {name!r} in monomial {text!r}", generator=name)
        exps[gens.index(name)] += int(power) if power else 1
    return tuple(exps)


def presentation_from_dict(data: Dict[str, Any], validate: bool = True) -> AlgebraPresentation:
    if validate:
        try:
            jsonschema.validate(data, load_schema())
        except jsonschema.exceptions.ValidationError as e:
            raise PresentationError(f"Presentation file does not match the schema: {e.message}") from None

    gens: List[str] = list(data["generators"])
    space = _space_from_json(data["parameters"])
    rules = []
    for entry in data["rules"]:
        for name in (entry["left"], entry["right"]):
            if name not in gens:
                raise UnknownGeneratorError(f"Rule refers to unknown generator {name!r}", generator=name)
        left, right = gens.index(entry["left"]), gens.index(entry["right"])
        corrections: Tuple = tuple(
            (monomial_from_text(c["monomial"], gens), parse_scalar(c["coefficient"], space))
            for c in entry.get("corrections", [])
        )
        rules.append(Rule(left, right, parse_scalar(entry["scalar"], space), corrections))

    presentation = AlgebraPresentation(
        gens,
        space,
        rules,
        weights=data.get("weights"),
        kind=data.get("kind", "custom"),
        n=data.get("n"),
        parameter=parse_scalar(data["parameter"], space) if "parameter" in data else None,
    )
    logger.info(f"Loaded presentation {presentation.kind} with {len(gens)} generators over {space}")
    return presentation


def presentation_to_dict(presentation: AlgebraPresentation) -> Dict[str, Any]:
    gens = presentation.gens
    data: Dict[str, Any] = {
        "kind": presentation.kind,
        "generators": list(gens),
        "parameters": _space_to_json(presentation.space),
        "rules": [
            {
                "left": gens[rule.left],
                "right": gens[rule.right],
                "scalar": str(rule.scalar),
                "corrections": [
                    {"coefficient": str(coeff), "monomial": presentation.monomial_text(mono)}
                    for mono, coeff in rule.corrections
                ],
            }
            for _, rule in sorted(presentation.rules.items())
        ],
    }
    if presentation.weights is not None:
        data["weights"] = [list(w) for w in presentation.weights]
    if presentation.n is not None:
        data["n"] = presentation.n
    if presentation.parameter is not None:
        data["parameter"] = str(presentation.parameter)
    return data


def load_presentation(path: Path) -> AlgebraPresentation:
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise PresentationError(f"Cannot read presentation file {path}: {str(e)}", path=str(path)) from None
    return presentation_from_dict(data)


def save_presentation(presentation: AlgebraPresentation, path: Path) -> Path:
    path = Path(path)
    data = presentation_to_dict(presentation)
    jsonschema.validate(data, load_schema())
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, ensure_ascii=False)
    logger.info(f"Presentation saved to: {path}")
    return path
