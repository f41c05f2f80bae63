"""
Expression grammar: parsing, printing and evaluation
"""
import random

import pytest

from src.algebra.pbw_core import tensor_square
from src.parsing.expression_parser import (
    Add,
    MatrixEntry,
    Minor,
    Mul,
    Neg,
    Number,
    Pow,
    Sub,
    Symbol,
    parse_element,
    parse_expression,
    parse_scalar,
    print_expression,
    tokenize,
)
from src.utils.errors import ExpressionSyntaxError, NonUnitError, UnknownSymbolError

NAMES = ["q", "p", "x1", "y", "t3"]


def test_precedence():
    assert parse_expression("a + b*c^2") == Add(Symbol("a"), Mul(Symbol("b"), Pow(Symbol("c"), 2)))
    assert parse_expression("-x^2") == Neg(Pow(Symbol("x"), 2))
    assert parse_expression("a - b - c") == Sub(Sub(Symbol("a"), Symbol("b")), Symbol("c"))


def test_atoms():
    assert parse_expression("3/4") == Number(3, 4)
    assert parse_expression("X[1,2]@2") == MatrixEntry(1, 2, 2)
    assert parse_expression("x1@1") == Symbol("x1", 1)
    assert parse_expression("[1,2|1,3]") == Minor((1, 2), (1, 3))
    assert parse_expression("q^-1") == Pow(Symbol("q"), -1)


def test_bare_x_is_a_symbol():
    assert parse_expression("X*y") == Mul(Symbol("X"), Symbol("y"))


@pytest.mark.parametrize("text,position", [
    ("X[1,1] +", 8),
    ("2 $ 3", 2),
    ("1/0", 2),
    ("(q", 2),
    ("X[1 1]", 4),
    ("q q", 2),
])
def test_syntax_errors_report_position(text, position):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expression(text)
    assert info.value.position == position
    assert info.value.details["text"] == text


def test_tokens_skip_whitespace():
    kinds = [t.kind for t in tokenize(" X [1, 2] ")]
    assert kinds == ["MATRIX", "LBRACK", "INT", "COMMA", "INT", "RBRACK", "END"]


def _random_ast(rng: random.Random, depth: int):
    if depth == 0 or rng.random() < 0.3:
        choice = rng.randrange(4)
        if choice == 0:
            return Number(rng.randint(0, 20), rng.choice([1, 1, 2, 3, 7]))
        if choice == 1:
            return Symbol(rng.choice(NAMES), rng.choice([None, None, 1, 2]))
        if choice == 2:
            return MatrixEntry(rng.randint(1, 4), rng.randint(1, 4), rng.choice([None, 1, 2]))
        size = rng.randint(1, 3)
        return Minor(tuple(rng.randint(1, 4) for _ in range(size)), tuple(rng.randint(1, 4) for _ in range(size)))
    kind = rng.randrange(5)
    if kind == 0:
        return Neg(_random_ast(rng, depth - 1))
    if kind == 1:
        return Pow(_random_ast(rng, depth - 1), rng.randint(-3, 3))
    node_type = (Add, Sub, Mul)[kind - 2]
    return node_type(_random_ast(rng, depth - 1), _random_ast(rng, depth - 1))


def test_printed_ast_parses_back():
    rng = random.Random(2024)
    for _ in range(300):
        ast = _random_ast(rng, 5)
        text = print_expression(ast)
        assert parse_expression(text) == ast, text


def test_qdet_from_text(m2, b2):
    assert parse_element("X[1,1]*X[2,2] - q*X[1,2]*X[2,1]", m2) == b2.qdet()
    assert parse_element("[1,2|1,2]", m2) == b2.qdet()


def test_minor_in_m3(b3, m3):
    assert parse_element("[1,2|1,3]", m3) == b3.qminor(b3.all_minors(2)[1])


def test_printed_elements_parse_back(m2, b2):
    p = m2.gen("X[2,2]") * m2.gen("X[1,1]") + m2.scalar(parse_scalar("1/2*q^-2 - 3", m2.space))
    assert parse_element(str(p), m2) == p
    image = b2.delta(b2.qdet())
    assert parse_element(str(image), b2.tensor_square) == image


def test_slots_address_tensor_generators(plane):
    square = tensor_square(plane)
    assert parse_element("x@2*y@1", square) == square.gen("y@1") * square.gen("x@2")


def test_parameters_and_scalars(plane, q):
    assert parse_element("q^-1", plane) == plane.scalar(q.inv_monomial())
    assert parse_element("(q - q^-1)*x", plane) == plane.gen("x").scale(q - q.inv_monomial())
    assert parse_element("2^-2", plane) == plane.scalar(parse_scalar("1/4", plane.space))


def test_negative_power_of_generator_rejected(plane):
    with pytest.raises(NonUnitError):
        parse_element("x^-1", plane)
    with pytest.raises(NonUnitError):
        parse_element("(q + 1)^-1", plane)


def test_unknown_symbols(plane, m2):
    with pytest.raises(UnknownSymbolError):
        parse_element("z", plane)
    with pytest.raises(UnknownSymbolError):
        parse_element("X[3,1]", m2)
    with pytest.raises(UnknownSymbolError):
        parse_element("q@1", plane)


def test_parse_scalar_rejects_generators(space):
    with pytest.raises(UnknownSymbolError):
        parse_scalar("x", space)
