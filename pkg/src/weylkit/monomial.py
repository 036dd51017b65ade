"""Exponent-vector monomials shared by the operator and symbol rings.

A monomial records exponents for the position variables z_1..z_m in ``zexp``
and for the companion block in ``dexp``.  In the Weyl algebra the companion
block holds derivation exponents; in the commutative symbol ring it holds the
zeta variables.  Both rings agree on the combinatorics below.
"""

from __future__ import annotations

from typing import NamedTuple


class Monomial(NamedTuple):
    zexp: tuple[int, ...]
    dexp: tuple[int, ...]

    @property
    def ambient(self) -> int:
        return len(self.zexp)

    def total_degree(self) -> int:
        return sum(self.zexp) + sum(self.dexp)

    def is_unit(self) -> bool:
        return not any(self.zexp) and not any(self.dexp)

    def slots(self) -> tuple[int, ...]:
        """Concatenated exponent vector of length 2m (z block then d block)."""
        return self.zexp + self.dexp

    def mul(self, other: "Monomial") -> "Monomial":
        return Monomial(
            tuple(a + b for a, b in zip(self.zexp, other.zexp)),
            tuple(a + b for a, b in zip(self.dexp, other.dexp)),
        )

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.zexp, other.zexp)) and all(
            a <= b for a, b in zip(self.dexp, other.dexp)
        )

    def quotient(self, other: "Monomial") -> "Monomial":
        """self / other, assuming other divides self."""
        return Monomial(
            tuple(a - b for a, b in zip(self.zexp, other.zexp)),
            tuple(a - b for a, b in zip(self.dexp, other.dexp)),
        )

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial(
            tuple(max(a, b) for a, b in zip(self.zexp, other.zexp)),
            tuple(max(a, b) for a, b in zip(self.dexp, other.dexp)),
        )

    def coprime(self, other: "Monomial") -> bool:
        """No slot is positive in both monomials."""
        return all(
            a == 0 or b == 0 for a, b in zip(self.slots(), other.slots())
        )

    def index_support(self) -> frozenset[int]:
        """1-based variable indices i with z_i or the companion of z_i present."""
        m = len(self.zexp)
        return frozenset(
            i + 1 for i in range(m) if self.zexp[i] or self.dexp[i]
        )


def unit_monomial(ambient: int) -> Monomial:
    return Monomial((0,) * ambient, (0,) * ambient)


def z_monomial(index: int, ambient: int, power: int = 1) -> Monomial:
    _check_index(index, ambient)
    zexp = [0] * ambient
    zexp[index - 1] = power
    return Monomial(tuple(zexp), (0,) * ambient)


def d_monomial(index: int, ambient: int, power: int = 1) -> Monomial:
    _check_index(index, ambient)
    dexp = [0] * ambient
    dexp[index - 1] = power
    return Monomial((0,) * ambient, tuple(dexp))


def _check_index(index: int, ambient: int) -> None:
    if not 1 <= index <= ambient:
        raise ValueError(f"variable index {index} out of range 1..{ambient}")
