# src/algebra/pbw_core.py - Presentation-driven PBW rewriting and normal-form arithmetic

import itertools
import logging
import random
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from ..scalars.scalar_ring import ParamSpace, Scalar
from ..utils.errors import (
    ClosureViolationError,
    PresentationError,
    PresentationMismatchError,
    UnknownGeneratorError,
)

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]
GeneratorRef = Union[int, str]


def grlex_key(m: Monomial) -> Tuple[int, Monomial]:
    """Graded lexicographic key; earlier generators weigh more on ties."""
    return (sum(m), m)


def _top_index(m: Monomial) -> int:
    for i in range(len(m) - 1, -1, -1):
        if m[i]:
            return i
    return -1


def _bump(m: Monomial, index: int, delta: int) -> Monomial:
    out = list(m)
    out[index] += delta
    return tuple(out)


def _word(m: Monomial) -> List[int]:
    word: List[int] = []
    for index, e in enumerate(m):
        word.extend([index] * e)
    return word


def _accumulate(terms: Dict[Monomial, Scalar], mono: Monomial, coeff: Scalar):
    if coeff.is_zero():
        return
    current = terms.get(mono)
    total = coeff if current is None else current + coeff
    if total.is_zero():
        terms.pop(mono, None)
    else:
        terms[mono] = total


@dataclass(frozen=True)
class Rule:
    """Straightening rule  gens[left] * gens[right] = scalar * gens[right] gens[left] + corrections

    left comes after right in the generator order.
    """

    left: int
    right: int
    scalar: Scalar
    corrections: Tuple[Tuple[Monomial, Scalar], ...] = ()


class AlgebraPresentation:
    """Ordered generators with quadratic straightening rules over a parameter space"""

    def __init__(
        self,
        gens: Sequence[str],
        space: ParamSpace,
        rules: Iterable[Rule],
        weights: Optional[Sequence[Sequence[int]]] = None,
        kind: str = "custom",
        n: Optional[int] = None,
        slots: Optional[Sequence[int]] = None,
        base_names: Optional[Sequence[str]] = None,
        parameter: Optional[Scalar] = None,
        check_overlaps: bool = True,
    ):
        self.gens: Tuple[str, ...] = tuple(gens)
        self.space = space
        self.kind = kind
        self.n = n
        self.parameter = parameter
        self.slots: Tuple[int, ...] = tuple(slots) if slots is not None else (0,) * len(self.gens)
        self.base_names: Tuple[str, ...] = tuple(base_names) if base_names is not None else self.gens
        self.weights: Optional[Tuple[Tuple[int, ...], ...]] = (
            tuple(tuple(int(x) for x in w) for w in weights) if weights is not None else None
        )
        self.rules: Dict[Tuple[int, int], Rule] = {}
        for rule in rules:
            self.rules[(rule.left, rule.right)] = rule

        self._index = {name: i for i, name in enumerate(self.gens)}
        self._one = Scalar.one(space)
        self._gen_cache: Dict[Tuple[Monomial, int], Dict[Monomial, Scalar]] = {}
        self._mono_cache: Dict[Tuple[Monomial, Monomial], Dict[Monomial, Scalar]] = {}

        self._validate_rules()
        if check_overlaps:
            self.check_overlaps()

    # ---------- validation ---------- #

    def _validate_rules(self):
        if len(self._index) != len(self.gens):
            raise PresentationError("Generator names must be unique", generators=list(self.gens))
        size = len(self.gens)
        if self.weights is not None:
            if len(self.weights) != size or len({len(w) for w in self.weights}) > 1:
                raise PresentationError("Grading needs one weight vector of common length per generator")

        for u, v in itertools.combinations(range(size), 2):
            if (v, u) not in self.rules:
                raise PresentationError(
                    f"Missing straightening rule for {self.gens[v]}*{self.gens[u]}",
                    left=self.gens[v],
                    right=self.gens[u],
                )

        for (u, v), rule in self.rules.items():
            if not (0 <= v < u < size):
                raise PresentationError(
                    f"Rule ({u}, {v}) is not an out-of-order generator pair", left=u, right=v
                )
            if rule.scalar.space.names != self.space.names:
                raise PresentationMismatchError("Rule scalar lives in another parameter space")
            if not rule.scalar.is_unit():
                raise PresentationError(
                    f"Leading scalar of {self.gens[u]}*{self.gens[v]} is not a unit",
                    scalar=str(rule.scalar),
                )
            sorted_pair = _bump(_bump((0,) * size, u, 1), v, 1)
            for mono, coeff in rule.corrections:
                if len(mono) != size or any(e < 0 for e in mono):
                    raise PresentationError(f"Malformed correction monomial {mono}")
                if not grlex_key(mono) < grlex_key(sorted_pair):
                    raise PresentationError(
                        f"Correction {self.monomial_text(mono)} of {self.gens[u]}*{self.gens[v]} "
                        f"is not below {self.monomial_text(sorted_pair)} in the term order"
                    )

    def _overlap_triples(self) -> List[Tuple[int, int, int]]:
        from config.settings import ENGINE_CONFIG

        size = len(self.gens)
        triples = [(a, b, c) for c, b, a in itertools.combinations(range(size), 3)]
        if size <= ENGINE_CONFIG["overlap_full_check_max_gens"]:
            return triples
        rng = random.Random(ENGINE_CONFIG["random_seed"])
        count = min(ENGINE_CONFIG["overlap_sample_triples"], len(triples))
        logger.debug(f"Sampling {count} of {len(triples)} overlap triples for a {size}-generator presentation")
        return rng.sample(triples, count)

    def overlap_failures(self, triples: Optional[Iterable[Tuple[int, int, int]]] = None) -> List[Tuple[str, str, str]]:
        """Triples (a, b, c) with (a*b)*c != a*(b*c) after normalization"""
        failures = []
        for a, b, c in triples if triples is not None else self._overlap_triples():
            ga, gb, gc = self.gen(a), self.gen(b), self.gen(c)
            if (ga * gb) * gc != ga * (gb * gc):
                failures.append((self.gens[a], self.gens[b], self.gens[c]))
        return failures

    def check_overlaps(self):
        failures = self.overlap_failures()
        if failures:
            raise PresentationError(
                f"Overlap self-check failed on {len(failures)} generator triple(s)", triples=failures[:5]
            )
        logger.debug(f"Presentation {self.kind} ({len(self.gens)} generators) passed the overlap check")

    # ---------- generators and elements ---------- #

    def __len__(self) -> int:
        return len(self.gens)

    def __repr__(self) -> str:
        return f"AlgebraPresentation(kind={self.kind!r}, gens={list(self.gens)}, space={self.space})"

    def index(self, ref: GeneratorRef) -> int:
        if isinstance(ref, int) and not isinstance(ref, bool):
            if 0 <= ref < len(self.gens):
                return ref
            raise UnknownGeneratorError(f"Generator index {ref} out of range", generator=ref)
        try:
            return self._index[ref]
        except KeyError:
            raise UnknownGeneratorError(
                f"Unknown generator {ref!r}", generator=str(ref), known=list(self.gens)
            ) from None

    def has_generator(self, name: str) -> bool:
        return name in self._index

    def unit_monomial(self) -> Monomial:
        return (0,) * len(self.gens)

    def gen(self, ref: GeneratorRef) -> "NcPoly":
        index = self.index(ref)
        return NcPoly._raw(self, {_bump(self.unit_monomial(), index, 1): self._one})

    def one(self) -> "NcPoly":
        return NcPoly._raw(self, {self.unit_monomial(): self._one})

    def zero(self) -> "NcPoly":
        return NcPoly._raw(self, {})

    def scalar(self, value: Any) -> "NcPoly":
        if not isinstance(value, Scalar):
            value = Scalar.constant(self.space, value)
        if value.space.names != self.space.names:
            raise PresentationMismatchError("Scalar lives in another parameter space")
        if value.is_zero():
            return self.zero()
        return NcPoly._raw(self, {self.unit_monomial(): value})

    def monomial(self, exps: Monomial, coeff: Any = 1) -> "NcPoly":
        exps = tuple(exps)
        if len(exps) != len(self.gens) or any(e < 0 for e in exps):
            raise PresentationError(f"Malformed monomial {exps}")
        return self.scalar(coeff) * NcPoly._raw(self, {exps: self._one})

    def monomial_text(self, m: Monomial) -> str:
        factors = []
        for name, e in zip(self.gens, m):
            if e:
                factors.append(name if e == 1 else f"{name}^{e}")
        return "*".join(factors) if factors else "1"

    # ---------- straightening ---------- #

    def _mul_mono_gen(self, m: Monomial, g: int) -> Dict[Monomial, Scalar]:
        key = (m, g)
        cached = self._gen_cache.get(key)
        if cached is not None:
            return cached

        top = _top_index(m)
        if top <= g:
            out = {_bump(m, g, 1): self._one}
        else:
            # m = rest * gens[top] and gens[top] * gens[g] is out of order
            rule = self.rules[(top, g)]
            rest = _bump(m, top, -1)
            out: Dict[Monomial, Scalar] = {}
            for mono, coeff in self._mul_mono_gen(rest, g).items():
                for mono2, coeff2 in self._mul_mono_gen(mono, top).items():
                    _accumulate(out, mono2, rule.scalar * coeff * coeff2)
            for corr_mono, corr_coeff in rule.corrections:
                for mono, coeff in self._mul_monomials(rest, corr_mono).items():
                    _accumulate(out, mono, corr_coeff * coeff)

        self._gen_cache[key] = out
        return out

    def _mul_monomials(self, m1: Monomial, m2: Monomial) -> Dict[Monomial, Scalar]:
        key = (m1, m2)
        cached = self._mono_cache.get(key)
        if cached is not None:
            return cached

        current: Dict[Monomial, Scalar] = {m1: self._one}
        for g in _word(m2):
            step: Dict[Monomial, Scalar] = {}
            for mono, coeff in current.items():
                for mono2, coeff2 in self._mul_mono_gen(mono, g).items():
                    _accumulate(step, mono2, coeff * coeff2)
            current = step

        self._mono_cache[key] = current
        return current

    def normal_form(self, expression: Union["NcPoly", Iterable[Tuple[Any, Sequence[GeneratorRef]]]]) -> "NcPoly":
        """Normal form of a raw product expression: a sum of coefficient * word terms"""
        if isinstance(expression, NcPoly):
            self._require_same(expression)
            return expression

        terms: Dict[Monomial, Scalar] = {}
        for coeff, word in expression:
            if not isinstance(coeff, Scalar):
                coeff = Scalar.constant(self.space, coeff)
            current: Dict[Monomial, Scalar] = {self.unit_monomial(): coeff}
            for ref in word:
                g = self.index(ref)
                step: Dict[Monomial, Scalar] = {}
                for mono, c in current.items():
                    for mono2, c2 in self._mul_mono_gen(mono, g).items():
                        _accumulate(step, mono2, c * c2)
                current = step
            for mono, c in current.items():
                _accumulate(terms, mono, c)
        return NcPoly._raw(self, terms)

    def _require_same(self, poly: "NcPoly"):
        if poly.presentation is not self:
            raise PresentationMismatchError(
                "Polynomial belongs to another presentation",
                expected=self.kind,
                found=poly.presentation.kind,
            )

    def rule_residue(self, rule: Rule) -> "NcPoly":
        """left*right - (scalar*right*left + corrections), normalized"""
        lhs = self.normal_form([(1, [rule.left, rule.right])])
        rhs = self.normal_form([(rule.scalar, [rule.right, rule.left])])
        for mono, coeff in rule.corrections:
            rhs = rhs + self.monomial(mono, coeff)
        return lhs - rhs

    def same_shape(self, other: "AlgebraPresentation") -> bool:
        """Positional identity: same generator names, parameters and rules"""
        if self.gens != other.gens or self.space.names != other.space.names:
            return False
        if self.rules.keys() != other.rules.keys():
            return False
        return all(
            self.rules[k].scalar == other.rules[k].scalar
            and dict(self.rules[k].corrections) == dict(other.rules[k].corrections)
            for k in self.rules
        )


class NcPoly:
    """Immutable element of a presented algebra, stored in PBW normal form"""

    __slots__ = ("presentation", "_terms", "_key", "_hash")

    def __init__(self, presentation: AlgebraPresentation, terms: Optional[Mapping[Monomial, Any]] = None):
        clean: Dict[Monomial, Scalar] = {}
        for mono, coeff in (terms or {}).items():
            if not isinstance(coeff, Scalar):
                coeff = Scalar.constant(presentation.space, coeff)
            _accumulate(clean, tuple(mono), coeff)
        normal = presentation.normal_form(
            (coeff, _word(mono)) for mono, coeff in clean.items()
        )
        self.presentation = presentation
        self._terms = normal._terms
        self._key = normal._key
        self._hash = None

    @classmethod
    def _raw(cls, presentation: AlgebraPresentation, terms: Dict[Monomial, Scalar]) -> "NcPoly":
        obj = cls.__new__(cls)
        obj.presentation = presentation
        obj._terms = terms
        obj._key = None
        obj._hash = None
        return obj

    # ---------- inspection ---------- #

    def terms(self) -> List[Tuple[Monomial, Scalar]]:
        """Terms in descending graded-lex order"""
        if self._key is None:
            self._key = tuple(sorted(self._terms.items(), key=lambda item: grlex_key(item[0]), reverse=True))
        return list(self._key)

    def monomials(self) -> List[Monomial]:
        return [mono for mono, _ in self.terms()]

    def coefficient(self, mono: Monomial) -> Scalar:
        return self._terms.get(tuple(mono), Scalar.zero(self.presentation.space))

    def constant_term(self) -> Scalar:
        return self.coefficient(self.presentation.unit_monomial())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_scalar(self) -> bool:
        return all(not any(mono) for mono in self._terms)

    # ---------- arithmetic ---------- #

    def _coerce(self, other: Any) -> "NcPoly":
        if isinstance(other, NcPoly):
            if other.presentation is not self.presentation:
                raise PresentationMismatchError(
                    "Operands belong to different presentations",
                    left=self.presentation.kind,
                    right=other.presentation.kind,
                )
            return other
        return self.presentation.scalar(other)

    def __add__(self, other: Any) -> "NcPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self._terms)
        for mono, coeff in other._terms.items():
            _accumulate(terms, mono, coeff)
        return NcPoly._raw(self.presentation, terms)

    __radd__ = __add__

    def __neg__(self) -> "NcPoly":
        return NcPoly._raw(self.presentation, {mono: -coeff for mono, coeff in self._terms.items()})

    def __sub__(self, other: Any) -> "NcPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "NcPoly":
        return (-self) + other

    def scale(self, s: Any) -> "NcPoly":
        if not isinstance(s, Scalar):
            s = Scalar.constant(self.presentation.space, s)
        terms: Dict[Monomial, Scalar] = {}
        for mono, coeff in self._terms.items():
            _accumulate(terms, mono, coeff * s)
        return NcPoly._raw(self.presentation, terms)

    def __mul__(self, other: Any) -> "NcPoly":
        if isinstance(other, Scalar) or (not isinstance(other, NcPoly) and isinstance(other, int)):
            return self.scale(other)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        pres = self.presentation
        terms: Dict[Monomial, Scalar] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                c = c1 * c2
                for mono, coeff in pres._mul_monomials(m1, m2).items():
                    _accumulate(terms, mono, c * coeff)
        return NcPoly._raw(pres, terms)

    def __rmul__(self, other: Any) -> "NcPoly":
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "NcPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("Only nonnegative integer powers of algebra elements are defined")
        result = self.presentation.one()
        for _ in range(k):
            result = result * self
        return result

    # ---------- comparison ---------- #

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, NcPoly):
            return self.presentation.gens == other.presentation.gens and self._terms == other._terms
        try:
            return self == self.presentation.scalar(other)
        except (TypeError, PresentationMismatchError):
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.presentation.gens, tuple(self.terms())))
        return self._hash

    # ---------- rendering ---------- #

    def __str__(self) -> str:
        terms = self.terms()
        if not terms:
            return "0"
        pieces: List[Tuple[bool, str]] = []
        for mono, coeff in terms:
            mono_text = self.presentation.monomial_text(mono) if any(mono) else ""
            if coeff.is_unit():
                negative, magnitude = coeff.signed_parts()[0]
                if not mono_text:
                    text = magnitude
                elif magnitude == "1":
                    text = mono_text
                else:
                    text = f"{magnitude}*{mono_text}"
            else:
                negative = False
                text = f"({coeff})" if (mono_text or len(terms) > 1) else str(coeff)
                if mono_text:
                    text = f"{text}*{mono_text}"
            pieces.append((negative, text))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for negative, text in pieces[1:]:
            out += (" - " if negative else " + ") + text
        return out

    def __repr__(self) -> str:
        return f"NcPoly({self})"


class AlgebraHom:
    """Algebra map given by the images of the source generators"""

    def __init__(
        self,
        source: AlgebraPresentation,
        target: AlgebraPresentation,
        images: Union[Sequence["NcPoly"], Mapping[str, "NcPoly"]],
        name: str = "hom",
    ):
        if source.space.names != target.space.names:
            raise PresentationMismatchError("Source and target use different parameter spaces")
        if isinstance(images, Mapping):
            missing = [g for g in source.gens if g not in images]
            if missing:
                raise PresentationError(f"No image given for generators {missing}")
            images = [images[g] for g in source.gens]
        images = tuple(images)
        if len(images) != len(source.gens):
            raise PresentationError("One image per source generator is required")
        for image in images:
            if image.presentation is not target:
                raise PresentationMismatchError("Image lies outside the target presentation")
        self.source = source
        self.target = target
        self.images = images
        self.name = name
        self._mono_cache: Dict[Monomial, NcPoly] = {}

    def _image_of_monomial(self, mono: Monomial) -> "NcPoly":
        cached = self._mono_cache.get(mono)
        if cached is None:
            cached = self.target.one()
            for g in _word(mono):
                cached = cached * self.images[g]
            self._mono_cache[mono] = cached
        return cached

    def __call__(self, p: "NcPoly") -> "NcPoly":
        if p.presentation is not self.source:
            raise PresentationMismatchError(f"{self.name} is not defined on this presentation")
        result = self.target.zero()
        for mono, coeff in p.terms():
            result = result + self._image_of_monomial(mono).scale(coeff)
        return result

    def failures(self) -> List[str]:
        """Source rules whose image does not normalize to zero"""
        bad = []
        for rule in self.source.rules.values():
            if not self._rule_image(rule).is_zero():
                bad.append(f"{self.source.gens[rule.left]}*{self.source.gens[rule.right]}")
        return bad

    def _rule_image(self, rule: Rule) -> "NcPoly":
        u, v = self.images[rule.left], self.images[rule.right]
        residue = u * v - (v * u).scale(rule.scalar)
        for mono, coeff in rule.corrections:
            residue = residue - self._image_of_monomial(mono).scale(coeff)
        return residue

    def verify(self) -> bool:
        bad = self.failures()
        if bad:
            logger.info(f"{self.name}: {len(bad)} relation(s) not respected, e.g. {bad[0]}")
        return not bad


# ---------- module-level operations ---------- #

def normal_form(presentation: AlgebraPresentation, expression) -> NcPoly:
    return presentation.normal_form(expression)


def add(p: NcPoly, r: NcPoly) -> NcPoly:
    return p + r


def mul(p: NcPoly, r: NcPoly) -> NcPoly:
    return p * r


def scale(p: NcPoly, s: Scalar) -> NcPoly:
    return p.scale(s)


def apply_hom(h: AlgebraHom, p: NcPoly) -> NcPoly:
    return h(p)


def verify_hom(h: AlgebraHom) -> bool:
    return h.verify()


def ground_algebra(space: ParamSpace) -> AlgebraPresentation:
    """The coefficient field as a presentation without generators"""
    return AlgebraPresentation((), space, (), kind="ground")


def identity_hom(presentation: AlgebraPresentation) -> AlgebraHom:
    return AlgebraHom(
        presentation, presentation, [presentation.gen(i) for i in range(len(presentation))], name="id"
    )


def compose_homs(second: AlgebraHom, first: AlgebraHom) -> AlgebraHom:
    """second after first"""
    if first.target is not second.source:
        raise PresentationMismatchError("Homomorphisms are not composable")
    return AlgebraHom(
        first.source, second.target, [second(image) for image in first.images], name=f"{second.name}*{first.name}"
    )


def _embed(poly: NcPoly, target: AlgebraPresentation, offset: int) -> NcPoly:
    size = len(target.gens)
    terms = {}
    for mono, coeff in poly.terms():
        padded = [0] * size
        padded[offset:offset + len(mono)] = mono
        terms[tuple(padded)] = coeff
    # embedded monomials stay sorted because each factor occupies a contiguous block
    return NcPoly._raw(target, terms)


def tensor_product(left: AlgebraPresentation, right: AlgebraPresentation) -> AlgebraPresentation:
    """Two-factor tensor product; left generators precede right ones and the copies commute"""
    if left.space.names != right.space.names:
        raise PresentationMismatchError("Tensor factors use different parameter spaces")

    left_slots = [s or 1 for s in left.slots]
    right_slots = [s or 1 for s in right.slots]
    shift_slots = max(left_slots, default=0)
    slots = left_slots + [s + shift_slots for s in right_slots]
    base_names = list(left.base_names) + list(right.base_names)
    gens = [f"{name}@{slot}" for name, slot in zip(base_names, slots)]

    n_left, size = len(left.gens), len(left.gens) + len(right.gens)
    one = Scalar.one(left.space)

    def pad(mono: Monomial, offset: int) -> Monomial:
        padded = [0] * size
        padded[offset:offset + len(mono)] = mono
        return tuple(padded)

    rules = []
    for rule in left.rules.values():
        rules.append(Rule(rule.left, rule.right, rule.scalar, tuple((pad(m, 0), c) for m, c in rule.corrections)))
    for rule in right.rules.values():
        rules.append(Rule(
            rule.left + n_left,
            rule.right + n_left,
            rule.scalar,
            tuple((pad(m, n_left), c) for m, c in rule.corrections),
        ))
    for u in range(n_left, size):
        for v in range(n_left):
            rules.append(Rule(u, v, one))

    weights = None
    if left.weights is not None and right.weights is not None:
        r_left = len(left.weights[0]) if left.weights else 0
        r_right = len(right.weights[0]) if right.weights else 0
        weights = [tuple(w) + (0,) * r_right for w in left.weights]
        weights += [(0,) * r_left + tuple(w) for w in right.weights]

    result = AlgebraPresentation(
        gens,
        left.space,
        rules,
        weights=weights,
        kind=f"tensor({left.kind},{right.kind})",
        n=left.n if left.n == right.n else None,
        slots=slots,
        base_names=base_names,
        parameter=left.parameter if left.parameter == right.parameter else None,
    )
    logger.debug(f"Built tensor product with {size} generators")
    return result


def tensor_square(presentation: AlgebraPresentation) -> AlgebraPresentation:
    return tensor_product(presentation, presentation)


def tensor_inclusions(
    product: AlgebraPresentation, left: AlgebraPresentation, right: AlgebraPresentation
) -> Tuple[AlgebraHom, AlgebraHom]:
    """a -> a(x)1 and b -> 1(x)b"""
    n_left = len(left.gens)
    return (
        AlgebraHom(left, product, [product.gen(i) for i in range(n_left)], name="incl_left"),
        AlgebraHom(right, product, [product.gen(n_left + i) for i in range(len(right.gens))], name="incl_right"),
    )


def tensor_element(
    product: AlgebraPresentation, left_poly: NcPoly, right_poly: NcPoly
) -> NcPoly:
    """left_poly (x) right_poly inside a tensor product presentation"""
    n_left = len(left_poly.presentation.gens)
    return _embed(left_poly, product, 0) * _embed(right_poly, product, n_left)


def tensor_homs(
    first: AlgebraHom, second: AlgebraHom, source: AlgebraPresentation, target: AlgebraPresentation
) -> AlgebraHom:
    """first (x) second from source = A(x)B to target = A'(x)B'"""
    n_first_target = len(first.target.gens)
    images = [_embed(image, target, 0) for image in first.images]
    images += [_embed(image, target, n_first_target) for image in second.images]
    return AlgebraHom(source, target, images, name=f"{first.name}(x){second.name}")


def quotient_by_generators(
    presentation: AlgebraPresentation, killed: Iterable[GeneratorRef]
) -> Tuple[AlgebraPresentation, AlgebraHom]:
    """Quotient by the ideal generated by a subset of the generators.

    Every rule touching a killed generator must have all of its correction
    monomials divisible by a killed generator.
    """
    killed_idx = sorted({presentation.index(ref) for ref in killed})
    if not killed_idx:
        return presentation, identity_hom(presentation)
    killed_set = set(killed_idx)

    for (u, v), rule in sorted(presentation.rules.items()):
        if u in killed_set or v in killed_set:
            for mono, _ in rule.corrections:
                if not any(mono[k] for k in killed_set):
                    relation = f"{presentation.gens[u]}*{presentation.gens[v]}"
                    raise ClosureViolationError(
                        f"Killing {[presentation.gens[k] for k in killed_idx]} forces "
                        f"{presentation.monomial_text(mono)} to vanish through the {relation} relation",
                        relation=relation,
                        correction=presentation.monomial_text(mono),
                    )

    survivors = [i for i in range(len(presentation.gens)) if i not in killed_set]
    position = {old: new for new, old in enumerate(survivors)}

    def project(mono: Monomial) -> Monomial:
        return tuple(mono[i] for i in survivors)

    rules = []
    for (u, v), rule in presentation.rules.items():
        if u in killed_set or v in killed_set:
            continue
        corrections = tuple(
            (project(mono), coeff) for mono, coeff in rule.corrections if not any(mono[k] for k in killed_set)
        )
        rules.append(Rule(position[u], position[v], rule.scalar, corrections))

    weights = [presentation.weights[i] for i in survivors] if presentation.weights is not None else None
    quotient = AlgebraPresentation(
        [presentation.gens[i] for i in survivors],
        presentation.space,
        rules,
        weights=weights,
        kind=f"{presentation.kind}/quotient",
        n=presentation.n,
        slots=[presentation.slots[i] for i in survivors],
        base_names=[presentation.base_names[i] for i in survivors],
        parameter=presentation.parameter,
    )
    images = [
        quotient.zero() if i in killed_set else quotient.gen(position[i]) for i in range(len(presentation.gens))
    ]
    hom = AlgebraHom(presentation, quotient, images, name="quo")
    logger.debug(f"Quotient of {presentation.kind} by {len(killed_idx)} generator(s) has {len(survivors)} left")
    return quotient, hom
