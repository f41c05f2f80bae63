# src/scalars/scalar_ring.py - Exact Laurent polynomials in formal parameters over QQ

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

import sympy
from sympy import QQ

from ..utils.errors import NonUnitError, ParameterSpaceError, PresentationMismatchError

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]

_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")
_FACTOR_RE = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class ParamSpace:
    """Ordered formal parameters, plus derived names such as q = p^2.

    Parameters are algebraically independent, so a scalar equals 1 only
    when it is literally 1 (q is never a root of unity).
    """

    names: Tuple[str, ...]
    derived: Tuple[Tuple[str, Exponents], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "derived", tuple((name, tuple(vec)) for name, vec in self.derived))

        seen = set()
        for name in self.names:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise ParameterSpaceError(
                    f"Parameter name {name!r} is not an identifier; numeric parameter values are not supported",
                    name=str(name),
                )
            if name in seen:
                raise ParameterSpaceError(f"Duplicate parameter name {name!r}", name=name)
            seen.add(name)

        for name, vec in self.derived:
            if not _NAME_RE.match(name):
                raise ParameterSpaceError(f"Derived name {name!r} is not an identifier", name=name)
            if name in seen:
                raise ParameterSpaceError(
                    f"{name!r} is declared both independently and through other parameters", name=name
                )
            if len(vec) != len(self.names):
                raise ParameterSpaceError(f"Derived parameter {name!r} has a malformed exponent vector", name=name)
            seen.add(name)

    @classmethod
    def parse(cls, declaration: str) -> "ParamSpace":
        """Parse declarations like "q", "q12,q13,q23" or "p;q=p^2"."""
        base: List[str] = []
        pending: List[Tuple[str, str]] = []
        for raw in re.split(r"[;,]", declaration or ""):
            item = raw.strip()
            if not item:
                continue
            if "=" in item:
                name, rhs = (part.strip() for part in item.split("=", 1))
                pending.append((name, rhs))
            else:
                base.append(item)

        derived = []
        for name, rhs in pending:
            vec = [0] * len(base)
            for factor in rhs.replace(" ", "").split("*"):
                match = _FACTOR_RE.match(factor)
                if not match:
                    raise ParameterSpaceError(
                        f"Cannot declare {name} = {rhs}: only products of parameter powers are allowed "
                        f"(numeric values are not supported)",
                        name=name,
                    )
                symbol, power = match.group(1), int(match.group(2) or 1)
                if symbol not in base:
                    raise ParameterSpaceError(f"{name} refers to undeclared parameter {symbol!r}", name=name)
                vec[base.index(symbol)] += power
            derived.append((name, tuple(vec)))

        if not base:
            raise ParameterSpaceError("At least one formal parameter must be declared")
        return cls(tuple(base), tuple(derived))

    def __len__(self) -> int:
        return len(self.names)

    def __str__(self) -> str:
        parts = list(self.names)
        for name, vec in self.derived:
            parts.append(f"{name}={_monomial_text(self.names, vec)}")
        return ";".join(parts)

    def knows(self, name: str) -> bool:
        return name in self.names or any(name == d for d, _ in self.derived)

    def extend(self, *names: str) -> "ParamSpace":
        """New space with extra trailing parameters; derived names keep their meaning."""
        padding = (0,) * len(names)
        derived = tuple((d, vec + padding) for d, vec in self.derived)
        return ParamSpace(self.names + tuple(names), derived)

    def symbol(self, name: str) -> "Scalar":
        """The scalar for a base or derived parameter name"""
        if name in self.names:
            vec = [0] * len(self.names)
            vec[self.names.index(name)] = 1
            return Scalar.monomial(self, tuple(vec))
        for derived_name, vec in self.derived:
            if derived_name == name:
                return Scalar.monomial(self, vec)
        raise ParameterSpaceError(f"Unknown parameter {name!r}", name=name, space=str(self))

    def zero_vector(self) -> Exponents:
        return (0,) * len(self.names)


def _to_qq(value: Any):
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if QQ.of_type(value):
        return value
    raise TypeError(f"Cannot use {type(value).__name__} as an exact coefficient")


def _monomial_text(names: Tuple[str, ...], exps: Exponents) -> str:
    factors = []
    for name, e in zip(names, exps):
        if e == 0:
            continue
        factors.append(name if e == 1 else f"{name}^{e}")
    return "*".join(factors)


def rational_text(c) -> str:
    """Rational coefficient as "n" or "n/d" """
    num, den = int(c.numerator), int(c.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


class Scalar:
    """Immutable Laurent polynomial: exponent vector -> nonzero rational"""

    __slots__ = ("space", "_terms", "_key", "_hash")

    def __init__(self, space: ParamSpace, terms: Optional[Mapping[Exponents, Any]] = None):
        self.space = space
        width = len(space.names)
        clean: Dict[Exponents, Any] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != width:
                raise ParameterSpaceError(
                    f"Exponent vector {exps} does not match the {width} declared parameters",
                    space=str(space),
                )
            coeff = _to_qq(coeff)
            if coeff:
                clean[exps] = coeff
        self._terms = clean
        self._key = tuple(sorted(clean.items(), reverse=True))
        self._hash = None

    # ---------- constructors ---------- #

    @classmethod
    def zero(cls, space: ParamSpace) -> "Scalar":
        return cls(space)

    @classmethod
    def one(cls, space: ParamSpace) -> "Scalar":
        return cls(space, {space.zero_vector(): 1})

    @classmethod
    def constant(cls, space: ParamSpace, value: Any) -> "Scalar":
        return cls(space, {space.zero_vector(): value})

    @classmethod
    def monomial(cls, space: ParamSpace, exps: Exponents, coeff: Any = 1) -> "Scalar":
        return cls(space, {tuple(exps): coeff})

    @classmethod
    def _raw(cls, space: ParamSpace, terms: Dict[Exponents, Any]) -> "Scalar":
        # terms already canonical (nonzero QQ values, right width)
        obj = cls.__new__(cls)
        obj.space = space
        obj._terms = terms
        obj._key = tuple(sorted(terms.items(), reverse=True))
        obj._hash = None
        return obj

    # ---------- inspection ---------- #

    def terms(self) -> Iterator[Tuple[Exponents, Any]]:
        """Terms in canonical (descending exponent) order"""
        return iter(self._key)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return len(self._terms) == 1 and self._terms.get(self.space.zero_vector()) == 1

    def is_unit(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return self.is_zero() or (len(self._terms) == 1 and self.space.zero_vector() in self._terms)

    def single_term(self) -> Tuple[Exponents, Any]:
        if len(self._terms) != 1:
            raise NonUnitError(f"{self} is not a single Laurent term", scalar=str(self))
        return self._key[0]

    def exponents(self) -> Exponents:
        """Exponent vector of a pure parameter monomial (coefficient 1)"""
        exps, coeff = self.single_term()
        if coeff != 1:
            raise NonUnitError(f"{self} is not a pure parameter monomial", scalar=str(self))
        return exps

    def constant_value(self):
        """Rational value of a constant scalar"""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get(self.space.zero_vector(), QQ(0))

    # ---------- arithmetic ---------- #

    def _coerce(self, other: Any) -> "Scalar":
        if isinstance(other, Scalar):
            if other.space is not self.space and other.space != self.space:
                raise PresentationMismatchError(
                    "Scalars live in different parameter spaces",
                    left=str(self.space),
                    right=str(other.space),
                )
            return other
        return Scalar.constant(self.space, other)

    def __add__(self, other: Any) -> "Scalar":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self._terms)
        for exps, coeff in other._terms.items():
            total = terms.get(exps, 0) + coeff
            if total:
                terms[exps] = total
            else:
                terms.pop(exps, None)
        return Scalar._raw(self.space, terms)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._raw(self.space, {exps: -coeff for exps, coeff in self._terms.items()})

    def __sub__(self, other: Any) -> "Scalar":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "Scalar":
        return (-self) + other

    def __mul__(self, other: Any) -> "Scalar":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms: Dict[Exponents, Any] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                total = terms.get(exps, 0) + c1 * c2
                if total:
                    terms[exps] = total
                else:
                    terms.pop(exps, None)
        return Scalar._raw(self.space, terms)

    __rmul__ = __mul__

    def inv_monomial(self) -> "Scalar":
        """Inverse of a unit; only single Laurent terms are invertible"""
        if len(self._terms) != 1:
            raise NonUnitError(f"Cannot invert {self}: not a unit of the Laurent ring", scalar=str(self))
        exps, coeff = self._key[0]
        return Scalar._raw(self.space, {tuple(-e for e in exps): QQ(1) / coeff})

    def __pow__(self, k: int) -> "Scalar":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv_monomial() ** (-k)
        result = Scalar.one(self.space)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # ---------- comparison ---------- #

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, Scalar):
            return self.space.names == other.space.names and self._key == other._key
        try:
            return self == Scalar.constant(self.space, other)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.space.names, self._key))
        return self._hash

    # ---------- rendering ---------- #

    def to_sympy(self) -> sympy.Expr:
        symbols = sympy.symbols(self.space.names)
        if not isinstance(symbols, (list, tuple)):
            symbols = (symbols,)
        total = sympy.Integer(0)
        for exps, coeff in self._key:
            term = QQ.to_sympy(coeff)
            for sym, e in zip(symbols, exps):
                term *= sym ** e
            total += term
        return total

    def signed_parts(self) -> List[Tuple[bool, str]]:
        """(negative?, magnitude text) per term, in canonical order"""
        parts = []
        for exps, coeff in self._key:
            negative = coeff < 0
            magnitude = -coeff if negative else coeff
            mono = _monomial_text(self.space.names, exps)
            if not mono:
                text = rational_text(magnitude)
            elif magnitude == 1:
                text = mono
            else:
                text = f"{rational_text(magnitude)}*{mono}"
            parts.append((negative, text))
        return parts

    def __str__(self) -> str:
        parts = self.signed_parts()
        if not parts:
            return "0"
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for negative, text in parts[1:]:
            out += (" - " if negative else " + ") + text
        return out

    def __repr__(self) -> str:
        return f"Scalar({self})"


# Named operations, for callers that prefer functions over operators

def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def scalar_neg(a: Scalar) -> Scalar:
    return -a


def scalar_inv_monomial(a: Scalar) -> Scalar:
    return a.inv_monomial()


def is_one(a: Scalar) -> bool:
    return a.is_one()


def is_zero(a: Scalar) -> bool:
    return a.is_zero()


def scalar_product(factors: Iterable[Scalar], space: ParamSpace) -> Scalar:
    result = Scalar.one(space)
    for factor in factors:
        result = result * factor
    return result


def create_param_space(declaration: Optional[str] = None) -> ParamSpace:
    """Factory function: parameter space from a declaration string"""
    from config.settings import DEFAULT_PARAMS

    space = ParamSpace.parse(declaration or DEFAULT_PARAMS)
    logger.debug(f"Parameter space declared: {space}")
    return space
