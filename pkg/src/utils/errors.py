# src/utils/errors.py - Exception hierarchy shared by every workbench module

from typing import Any, Dict


class WorkbenchError(Exception):
    """Base class for all workbench failures"""

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> Dict[str, Any]:
        """Machine-readable error object printed by the CLI"""
        payload = {"error": type(self).__name__, "message": self.message}
        payload.update({key: _jsonable(value) for key, value in self.details.items()})
        return payload


def _jsonable(value: Any) -> Any:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return str(value)


class ParameterSpaceError(WorkbenchError, ValueError):
    """Bad parameter declaration (duplicate names, numeric values, bad aliases)"""


class NonUnitError(WorkbenchError, ArithmeticError):
    """Inversion of a scalar that is not a single Laurent term"""


class PresentationError(WorkbenchError, ValueError):
    """Presentation fails validation (rule shape, term order or overlap check)"""


class PresentationMismatchError(WorkbenchError, ValueError):
    """Operands live in different presentations or parameter spaces"""


class UnknownGeneratorError(WorkbenchError, KeyError):
    """Generator identifier not present in the presentation"""

    def __str__(self) -> str:
        return self.message


class AntisymmetryError(WorkbenchError, ValueError):
    """Parameter matrix is not multiplicatively antisymmetric"""


class ClosureViolationError(WorkbenchError, ValueError):
    """Generator subset is not closed under the correction terms of the rules"""


class MinorIndexError(WorkbenchError, ValueError):
    """Malformed quantum minor index sets"""


class PatternDataError(WorkbenchError, ValueError):
    """Grid pattern or (I, J, f, g) data violating its invariants"""


class ExhaustiveLimitError(WorkbenchError, ValueError):
    """Requested size exceeds the exhaustive-search ceiling"""


class TwistError(WorkbenchError, ValueError):
    """Cocycle twist bookkeeping failure"""


class ExpressionSyntaxError(WorkbenchError, ValueError):
    """Lexical or syntax error in an expression, with its position"""

    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}", position=position, text=text)
        self.position = position


class UnknownSymbolError(WorkbenchError, ValueError):
    """Identifier that is neither a generator nor a declared parameter"""


class ConfigError(WorkbenchError, ValueError):
    """Invalid workbench configuration"""


class CommandError(WorkbenchError, ValueError):
    """Unknown command or bad arity on the command line"""
