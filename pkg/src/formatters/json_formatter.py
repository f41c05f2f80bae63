# src/formatters/json_formatter.py - Text and JSON rendering of command results

import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

import jsonschema

from ..algebra.pbw_core import NcPoly
from ..scalars.scalar_ring import Scalar

logger = logging.getLogger(__name__)


def poly_to_json(p: NcPoly) -> Dict[str, Any]:
    """{"terms": [{coefficient, monomial, exponents}]} in descending term order"""
    presentation = p.presentation
    return {
        "terms": [
            {
                "coefficient": str(coeff),
                "monomial": presentation.monomial_text(mono),
                "exponents": list(mono),
            }
            for mono, coeff in p.terms()
        ]
    }


def to_jsonable(value: Any) -> Any:
    """Recursively convert workbench objects into plain JSON data"""
    if isinstance(value, NcPoly):
        return poly_to_json(value)
    if isinstance(value, Scalar):
        return str(value)
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (frozenset, set)):
        return [to_jsonable(v) for v in sorted(value)]
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, Path):
        return str(value)
    return value


def to_text(value: Any) -> str:
    """Text rendering; algebra elements print in the expression grammar"""
    if isinstance(value, (NcPoly, Scalar)):
        return str(value)
    if isinstance(value, str):
        return value
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)) and all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        return json.dumps(list(value))
    if isinstance(value, (list, tuple)) and all(isinstance(v, (NcPoly, Scalar, str)) for v in value):
        return "\n".join(to_text(v) for v in value)
    return json.dumps(to_jsonable(value), indent=2, ensure_ascii=False)


class ResultFormatter:
    """Wrap command results in the {"command", "result"} envelope and validate them"""

    def __init__(self, config: Dict, schema_path: Optional[Path] = None):
        self.config = config
        self.indent = config.get("indent", 2)
        self.validate = config.get("validate_schema", True)
        self.schema = None

        if schema_path and schema_path.exists():
            try:
                with open(schema_path, "r", encoding="utf-8") as f:
                    self.schema = json.load(f)
                logger.debug(f"Result schema loaded from {schema_path}")
            except (OSError, json.JSONDecodeError) as e:
                logger.warning(f"Could not load schema: {str(e)}")

    def envelope(self, command: str, result: Any) -> Dict[str, Any]:
        return {"command": command, "result": to_jsonable(result)}

    def validate_output(self, output: Dict[str, Any]) -> bool:
        """Validate an envelope against the result schema"""
        if not self.schema:
            logger.warning("No schema available for validation")
            return True
        try:
            jsonschema.validate(output, self.schema)
            logger.info(f"Output of '{output.get('command')}' validated against schema")
            return True
        except jsonschema.exceptions.ValidationError as e:
            logger.error(f"Schema validation failed: {e.message}")
            return False

    def render(self, command: str, result: Any, as_json: bool) -> str:
        if not as_json:
            return to_text(result)
        output = self.envelope(command, result)
        if self.validate:
            self.validate_output(output)
        return json.dumps(output, indent=self.indent, ensure_ascii=False)

    def save_output(self, output: Dict[str, Any], output_path: Path) -> bool:
        """Save an envelope (or any JSON report) to a file"""
        try:
            output_path.parent.mkdir(parents=True, exist_ok=True)
            with open(output_path, "w", encoding="utf-8") as f:
                json.dump(to_jsonable(output), f, indent=self.indent, ensure_ascii=False)
            logger.info(f"Output saved to: {output_path}")
            return True
        except OSError as e:
            logger.error(f"Failed to save output: {str(e)}")
            return False


def create_result_formatter(config: Dict, schema_path: Optional[Path] = None) -> ResultFormatter:
    """Factory function to create the result formatter"""
    return ResultFormatter(config, schema_path)
