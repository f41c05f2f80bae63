# src/parsing/expression_parser.py - Expression grammar: lexer, parser, printer and evaluator
#
#   expr  := term (('+' | '-') term)*
#   term  := unary ('*' unary)*
#   unary := '-' unary | power
#   power := atom ('^' '-'? INT)?
#   atom  := INT ('/' INT)? | IDENT ('@' INT)? | 'X' '[' INT ',' INT ']' ('@' INT)?
#          | '[' INT (',' INT)* '|' INT (',' INT)* ']' | '(' expr ')'

import logging
import re
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from ..algebra.pbw_core import AlgebraPresentation, NcPoly, ground_algebra
from ..scalars.scalar_ring import ParamSpace, Scalar
from ..utils.errors import ExpressionSyntaxError, NonUnitError, UnknownSymbolError

logger = logging.getLogger(__name__)


# ---------- AST ---------- #

@dataclass(frozen=True)
class Number:
    num: int
    den: int = 1


@dataclass(frozen=True)
class Symbol:
    """Parameter or generator name, optionally tagged with a tensor slot"""

    name: str
    slot: Optional[int] = None


@dataclass(frozen=True)
class MatrixEntry:
    i: int
    j: int
    slot: Optional[int] = None


@dataclass(frozen=True)
class Minor:
    I: Tuple[int, ...]
    J: Tuple[int, ...]


@dataclass(frozen=True)
class Neg:
    operand: "ExpressionAst"


@dataclass(frozen=True)
class Add:
    left: "ExpressionAst"
    right: "ExpressionAst"


@dataclass(frozen=True)
class Sub:
    left: "ExpressionAst"
    right: "ExpressionAst"


@dataclass(frozen=True)
class Mul:
    left: "ExpressionAst"
    right: "ExpressionAst"


@dataclass(frozen=True)
class Pow:
    base: "ExpressionAst"
    exponent: int


ExpressionAst = Union[Number, Symbol, MatrixEntry, Minor, Neg, Add, Sub, Mul, Pow]


# ---------- lexer ---------- #

TOKENS = OrderedDict([  # order matters: MATRIX before IDENT
    ("SPACE", r"\s+"),
    ("INT", r"\d+"),
    ("MATRIX", r"X(?=\s*\[)"),
    ("IDENT", r"[A-Za-z_][A-Za-z0-9_]*"),
    ("PLUS", r"\+"),
    ("MINUS", r"-"),
    ("STAR", r"\*"),
    ("CARET", r"\^"),
    ("SLASH", r"/"),
    ("AT", r"@"),
    ("LPAREN", r"\("),
    ("RPAREN", r"\)"),
    ("LBRACK", r"\["),
    ("RBRACK", r"\]"),
    ("COMMA", r","),
    ("PIPE", r"\|"),
])

_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in TOKENS.items()))


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    position = 0
    while position < len(text):
        match = _TOKEN_RE.match(text, position)
        if match is None:
            raise ExpressionSyntaxError(f"Unexpected character {text[position]!r}", position, text)
        if match.lastgroup != "SPACE":
            tokens.append(Token(match.lastgroup, match.group(), position))
        position = match.end()
    tokens.append(Token("END", "", len(text)))
    return tokens


# ---------- parser ---------- #

class ExpressionParser:
    """Recursive-descent parser over the token list of one expression"""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _error(self, message: str) -> ExpressionSyntaxError:
        token = self.current
        found = "end of input" if token.kind == "END" else repr(token.text)
        return ExpressionSyntaxError(f"{message}, found {found}", token.position, self.text)

    def _accept(self, kind: str) -> Optional[Token]:
        if self.current.kind == kind:
            token = self.current
            self.pos += 1
            return token
        return None

    def _expect(self, kind: str, what: str) -> Token:
        token = self._accept(kind)
        if token is None:
            raise self._error(f"Expected {what}")
        return token

    def _int(self) -> int:
        return int(self._expect("INT", "an integer").text)

    def _slot(self) -> Optional[int]:
        if self._accept("AT"):
            return self._int()
        return None

    def _int_list(self) -> Tuple[int, ...]:
        values = [self._int()]
        while self._accept("COMMA"):
            values.append(self._int())
        return tuple(values)

    def parse(self) -> ExpressionAst:
        ast = self.expr()
        if self.current.kind != "END":
            raise self._error("Unexpected trailing input")
        return ast

    def expr(self) -> ExpressionAst:
        node = self.term()
        while self.current.kind in ("PLUS", "MINUS"):
            op = self.tokens[self.pos].kind
            self.pos += 1
            right = self.term()
            node = Add(node, right) if op == "PLUS" else Sub(node, right)
        return node

    def term(self) -> ExpressionAst:
        node = self.unary()
        while self._accept("STAR"):
            node = Mul(node, self.unary())
        return node

    def unary(self) -> ExpressionAst:
        if self._accept("MINUS"):
            return Neg(self.unary())
        return self.power()

    def power(self) -> ExpressionAst:
        base = self.atom()
        if self._accept("CARET"):
            sign = -1 if self._accept("MINUS") else 1
            return Pow(base, sign * self._int())
        return base

    def atom(self) -> ExpressionAst:
        token = self.current
        if self._accept("INT"):
            if self._accept("SLASH"):
                den_token = self.current
                den = self._int()
                if den == 0:
                    raise ExpressionSyntaxError("Zero denominator", den_token.position, self.text)
                return Number(int(token.text), den)
            return Number(int(token.text))
        if self._accept("MATRIX"):
            self._expect("LBRACK", "'['")
            i = self._int()
            self._expect("COMMA", "','")
            j = self._int()
            self._expect("RBRACK", "']'")
            return MatrixEntry(i, j, self._slot())
        if self._accept("IDENT"):
            return Symbol(token.text, self._slot())
        if self._accept("LBRACK"):
            rows = self._int_list()
            self._expect("PIPE", "'|'")
            cols = self._int_list()
            self._expect("RBRACK", "']'")
            return Minor(rows, cols)
        if self._accept("LPAREN"):
            inner = self.expr()
            self._expect("RPAREN", "')'")
            return inner
        raise self._error("Expected a number, symbol, minor or '('")


def parse_expression(text: str) -> ExpressionAst:
    return ExpressionParser(text).parse()


# ---------- printer ---------- #

_PRECEDENCE = {Add: 1, Sub: 1, Mul: 2, Neg: 3, Pow: 4}
_ATOM = 5


def _precedence(node: ExpressionAst) -> int:
    if isinstance(node, Number) and node.den != 1:
        return _PRECEDENCE[Mul]  # n/d prints parenthesized as a power base
    return _PRECEDENCE.get(type(node), _ATOM)


def _wrap(node: ExpressionAst, minimum: int) -> str:
    text = print_expression(node)
    return f"({text})" if _precedence(node) < minimum else text


def _slot_suffix(slot: Optional[int]) -> str:
    return "" if slot is None else f"@{slot}"


def print_expression(node: ExpressionAst) -> str:
    """Minimal-parenthesis text that parses back to the same AST"""
    if isinstance(node, Number):
        return str(node.num) if node.den == 1 else f"{node.num}/{node.den}"
    if isinstance(node, Symbol):
        return node.name + _slot_suffix(node.slot)
    if isinstance(node, MatrixEntry):
        return f"X[{node.i},{node.j}]" + _slot_suffix(node.slot)
    if isinstance(node, Minor):
        return f"[{','.join(map(str, node.I))}|{','.join(map(str, node.J))}]"
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, _PRECEDENCE[Neg])
    if isinstance(node, Add):
        return f"{_wrap(node.left, 1)} + {_wrap(node.right, 2)}"
    if isinstance(node, Sub):
        return f"{_wrap(node.left, 1)} - {_wrap(node.right, 2)}"
    if isinstance(node, Mul):
        return f"{_wrap(node.left, 2)}*{_wrap(node.right, 3)}"
    if isinstance(node, Pow):
        return f"{_wrap(node.base, _ATOM)}^{node.exponent}"
    raise TypeError(f"Not an expression node: {node!r}")


# ---------- evaluation ---------- #

def _symbol_name(name: str, slot: Optional[int]) -> str:
    return name + _slot_suffix(slot)


def evaluate(node: ExpressionAst, presentation: AlgebraPresentation) -> NcPoly:
    """Value of an AST as an element of the presentation"""
    if isinstance(node, Number):
        return presentation.scalar(Scalar.constant(presentation.space, Fraction(node.num, node.den)))
    if isinstance(node, Symbol):
        full = _symbol_name(node.name, node.slot)
        if presentation.has_generator(full):
            return presentation.gen(full)
        if node.slot is None and presentation.space.knows(node.name):
            return presentation.scalar(presentation.space.symbol(node.name))
        raise UnknownSymbolError(
            f"Unknown symbol {full!r}", symbol=full, generators=list(presentation.gens),
            parameters=list(presentation.space.names),
        )
    if isinstance(node, MatrixEntry):
        full = _symbol_name(f"X[{node.i},{node.j}]", node.slot)
        if not presentation.has_generator(full):
            raise UnknownSymbolError(f"Unknown matrix entry {full!r}", symbol=full, generators=list(presentation.gens))
        return presentation.gen(full)
    if isinstance(node, Minor):
        from ..algebra.qmatrix import MinorIndex, bialgebra_for

        return bialgebra_for(presentation).qminor(MinorIndex(node.I, node.J))
    if isinstance(node, Neg):
        return -evaluate(node.operand, presentation)
    if isinstance(node, Add):
        return evaluate(node.left, presentation) + evaluate(node.right, presentation)
    if isinstance(node, Sub):
        return evaluate(node.left, presentation) - evaluate(node.right, presentation)
    if isinstance(node, Mul):
        return evaluate(node.left, presentation) * evaluate(node.right, presentation)
    if isinstance(node, Pow):
        base = evaluate(node.base, presentation)
        if node.exponent >= 0:
            return base ** node.exponent
        if not base.is_scalar():
            raise NonUnitError(f"Negative power of a non-scalar element {base}", exponent=node.exponent)
        return presentation.scalar(base.constant_term() ** node.exponent)
    raise TypeError(f"Not an expression node: {node!r}")


def parse_element(text: str, presentation: AlgebraPresentation) -> NcPoly:
    """Parse and evaluate in one step"""
    return evaluate(parse_expression(text), presentation)


def parse_scalar(text: str, space: ParamSpace) -> Scalar:
    """Scalar-valued expression such as a point coordinate 'p*l1'"""
    value = parse_element(text, ground_algebra(space))
    return value.constant_term()
