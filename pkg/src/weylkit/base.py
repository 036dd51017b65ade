"""Shared sparse-element machinery for the operator and symbol rings.

Elements are immutable maps from Monomial to nonzero Fraction.  Subclasses
supply the ring product through ``_term_product`` and a printing dialect.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .monomial import Monomial, unit_monomial
from .orders import DEFAULT_ORDER, TermOrder

Scalar = int | Fraction


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class SparseElement:
    """Base class: a finite Fraction-linear combination of monomials."""

    __slots__ = ("_ambient", "_terms")

    def __init__(self, ambient: int, terms: Mapping[Monomial, Scalar] | Iterable = ()):
        if ambient < 0:
            raise ValueError("ambient must be nonnegative")
        clean: dict[Monomial, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, coeff in items:
            if len(mono.zexp) != ambient or len(mono.dexp) != ambient:
                raise ValueError("monomial ambient mismatch")
            if any(e < 0 for e in mono.zexp) or any(e < 0 for e in mono.dexp):
                raise ValueError("negative exponent")
            c = as_fraction(coeff)
            if c:
                acc = clean.get(mono)
                if acc is None:
                    clean[mono] = c
                else:
                    acc = acc + c
                    if acc:
                        clean[mono] = acc
                    else:
                        del clean[mono]
        object.__setattr__(self, "_ambient", ambient)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("elements are immutable")

    @property
    def ambient(self) -> int:
        return self._ambient

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, SparseElement):
            return (
                type(self) is type(other)
                and self._ambient == other._ambient
                and self._terms == other._terms
            )
        if isinstance(other, (int, Fraction)):
            return self == type(self).constant(other, self._ambient)
        return NotImplemented

    __hash__ = None  # mutable-looking value semantics; not hashable

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, ambient: int):
        return cls(ambient, {})

    @classmethod
    def constant(cls, value: Scalar, ambient: int):
        return cls(ambient, {unit_monomial(ambient): as_fraction(value)})

    @classmethod
    def one(cls, ambient: int):
        return cls.constant(1, ambient)

    @classmethod
    def from_monomial(cls, mono: Monomial, coeff: Scalar = 1):
        return cls(mono.ambient, {mono: as_fraction(coeff)})

    # -- linear structure ------------------------------------------------------

    def _require_same(self, other: "SparseElement") -> None:
        if type(self) is not type(other):
            raise TypeError(
                f"cannot combine {type(self).__name__} with {type(other).__name__}"
            )
        if self._ambient != other._ambient:
            raise ValueError(
                f"ambient mismatch: {self._ambient} vs {other._ambient}"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = type(self).constant(other, self._ambient)
        self._require_same(other)
        out = dict(self._terms)
        for mono, c in other._terms.items():
            acc = out.get(mono, Fraction(0)) + c
            if acc:
                out[mono] = acc
            else:
                out.pop(mono, None)
        return type(self)(self._ambient, out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)(self._ambient, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = type(self).constant(other, self._ambient)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scaled(self, value: Scalar):
        c = as_fraction(value)
        if not c:
            return type(self).zero(self._ambient)
        return type(self)(self._ambient, {m: k * c for m, k in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        self._require_same(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                for mono, coeff in self._term_product(m1, m2):
                    acc = out.get(mono, Fraction(0)) + c1 * c2 * coeff
                    if acc:
                        out[mono] = acc
                    else:
                        out.pop(mono, None)
        return type(self)(self._ambient, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = type(self).one(self._ambient)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base_needed = e > 1
            if base_needed:
                base = base * base
            e >>= 1
        return result

    def _term_product(self, m1: Monomial, m2: Monomial):
        raise NotImplementedError

    # -- leading data ----------------------------------------------------------

    def leading_monomial(self, order: TermOrder = DEFAULT_ORDER) -> Monomial:
        if not self._terms:
            raise ValueError("zero element has no leading monomial")
        return max(self._terms, key=order.key)

    def leading_coefficient(self, order: TermOrder = DEFAULT_ORDER) -> Fraction:
        return self._terms[self.leading_monomial(order)]

    def monic(self, order: TermOrder = DEFAULT_ORDER):
        if not self._terms:
            raise ValueError("cannot normalize the zero element")
        return self.scaled(1 / self.leading_coefficient(order))

    def total_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero element has no degree")
        return max(m.total_degree() for m in self._terms)

    def index_support(self) -> frozenset[int]:
        out: set[int] = set()
        for mono in self._terms:
            out |= mono.index_support()
        return frozenset(out)

    def sorted_terms(self, order: TermOrder = DEFAULT_ORDER) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: order.key(kv[0]), reverse=True)


def format_terms(element: SparseElement, dlabel: str) -> str:
    """Render an element in the shared expression grammar, leading term first."""
    if element.is_zero():
        return "0"
    parts: list[str] = []
    for position, (mono, coeff) in enumerate(element.sorted_terms()):
        factors = []
        for i, e in enumerate(mono.zexp):
            if e == 1:
                factors.append(f"z{i + 1}")
            elif e > 1:
                factors.append(f"z{i + 1}^{e}")
        for i, e in enumerate(mono.dexp):
            if e == 1:
                factors.append(f"{dlabel}{i + 1}")
            elif e > 1:
                factors.append(f"{dlabel}{i + 1}^{e}")
        magnitude = abs(coeff)
        if not factors:
            body = str(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(magnitude)] + factors)
        if position == 0:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(parts)
