"""Delta-type modules: operator actions on sections, annihilator certificates.

A module is fixed by choosing the set S of distribution directions.  Its
sections are spanned by z^a d^b "delta" with a supported off S and b on S;
variables in S act by lowering (z) and raising (d), the rest act by
multiplication (z) and differentiation (d).  The companion polynomial model
replaces d_i delta by -z_i for i in S, which intertwines the action through
the partial Fourier automorphism on S.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import perm
from typing import Sequence

from .base import Scalar, as_fraction, format_terms
from .charvar import HolonomicityCertificate, simplicity_certificate
from .groebner import LeftIdeal
from .monomial import Monomial
from .poly import Poly
from .weyl import PartialFourierSpec, WeylElement, partial_fourier


@dataclass(frozen=True)
class DeltaModule:
    """Choice of distribution directions S inside the m coordinates."""

    ambient: int
    support: frozenset[int]

    def __post_init__(self):
        for i in self.support:
            if not 1 <= i <= self.ambient:
                raise ValueError(f"variable index {i} out of range 1..{self.ambient}")

    def fourier_spec(self) -> PartialFourierSpec:
        return PartialFourierSpec(self.ambient, self.support)


class DeltaSection:
    """Finite combination of monomial sections of a fixed delta module."""

    __slots__ = ("module", "_data")

    def __init__(self, module: DeltaModule, data: Poly):
        if data.ambient != module.ambient:
            raise ValueError("section data has wrong ambient")
        m = module.ambient
        for mono in data.terms:
            for i in range(1, m + 1):
                if i in module.support and mono.zexp[i - 1]:
                    raise ValueError(f"z{i} cannot appear in a section term")
                if i not in module.support and mono.dexp[i - 1]:
                    raise ValueError(f"d{i} cannot appear in a section term")
        self.module = module
        self._data = data

    @property
    def data(self) -> Poly:
        return self._data

    def is_zero(self) -> bool:
        return self._data.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, DeltaSection):
            return NotImplemented
        return self.module == other.module and self._data == other._data

    def __add__(self, other: "DeltaSection") -> "DeltaSection":
        if self.module != other.module:
            raise ValueError("sections live in different modules")
        return DeltaSection(self.module, self._data + other._data)

    def __sub__(self, other: "DeltaSection") -> "DeltaSection":
        return self + other.scaled(-1)

    def scaled(self, value: Scalar) -> "DeltaSection":
        return DeltaSection(self.module, self._data.scaled(value))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        return f"({format_terms(self._data, 'd')}) delta"

    def __repr__(self) -> str:
        return f"DeltaSection({sorted(self.module.support)}, {self!s})"


def delta(module: DeltaModule) -> DeltaSection:
    return DeltaSection(module, Poly.one(module.ambient))


def act(op: WeylElement, section: DeltaSection) -> DeltaSection:
    """Apply an operator to a section.

    Monomials are normally ordered, so the d block acts first.  Per variable:
    on S, d raises the delta derivative and z lowers it with the factor
    -(current order); off S, z multiplies and d differentiates.
    """
    module = section.module
    m = module.ambient
    if op.ambient != m:
        raise ValueError("operator and section ambient mismatch")
    out: dict[Monomial, Fraction] = {}
    for omono, ocoeff in op:
        for smono, scoeff in section.data:
            coeff = ocoeff * scoeff
            alpha = list(smono.zexp)
            beta = list(smono.dexp)
            dead = False
            for slot in range(m):
                a = omono.zexp[slot]
                b = omono.dexp[slot]
                if slot + 1 in module.support:
                    order = beta[slot] + b
                    if a:
                        fall = perm(order, a)
                        if fall == 0:
                            dead = True
                            break
                        coeff *= Fraction((-1) ** a * fall)
                        order -= a
                    beta[slot] = order
                else:
                    power = alpha[slot]
                    if b:
                        fall = perm(power, b)
                        if fall == 0:
                            dead = True
                            break
                        coeff *= fall
                        power -= b
                    alpha[slot] = power + a
            if dead:
                continue
            mono = Monomial(tuple(alpha), tuple(beta))
            acc = out.get(mono, Fraction(0)) + coeff
            if acc:
                out[mono] = acc
            else:
                out.pop(mono, None)
    return DeltaSection(module, Poly(m, out))


def section_from_operator(module: DeltaModule, op: WeylElement) -> DeltaSection:
    """The section obtained by applying an operator to the canonical delta."""
    return act(op, delta(module))


def act_on_polynomial(op: WeylElement, polynomial: Poly) -> Poly:
    """Standard action on polynomials in z: d differentiates, z multiplies."""
    m = polynomial.ambient
    if op.ambient != m:
        raise ValueError("operator and polynomial ambient mismatch")
    if any(any(mono.dexp) for mono in polynomial.terms):
        raise ValueError("polynomial action target must not contain symbols")
    out: dict[Monomial, Fraction] = {}
    for omono, ocoeff in op:
        for pmono, pcoeff in polynomial:
            coeff = ocoeff * pcoeff
            exps = list(pmono.zexp)
            dead = False
            for slot in range(m):
                b = omono.dexp[slot]
                if b:
                    fall = perm(exps[slot], b)
                    if fall == 0:
                        dead = True
                        break
                    coeff *= fall
                    exps[slot] -= b
                exps[slot] += omono.zexp[slot]
            if dead:
                continue
            mono = Monomial(tuple(exps), pmono.dexp)
            acc = out.get(mono, Fraction(0)) + coeff
            if acc:
                out[mono] = acc
            else:
                out.pop(mono, None)
    return Poly(m, out)


def delta_to_polynomial(section: DeltaSection) -> Poly:
    """Dictionary z^a d^b delta -> (-1)^|b| z^a z^b onto plain polynomials."""
    m = section.module.ambient
    out: dict[Monomial, Fraction] = {}
    for mono, coeff in section.data:
        order = sum(mono.dexp)
        target = Monomial(
            tuple(z + dd for z, dd in zip(mono.zexp, mono.dexp)),
            (0,) * m,
        )
        out[target] = out.get(target, Fraction(0)) + coeff * (-1) ** order
    return Poly(m, out)


def fourier_intertwines(op: WeylElement, section: DeltaSection) -> bool:
    """Dictionary intertwining: moving the action through the partial Fourier map.

    Checks phi(op . s) == F(op) . phi(s) where phi is delta_to_polynomial and
    F is the partial Fourier automorphism on the module's directions.
    """
    spec = section.module.fourier_spec()
    lhs = delta_to_polynomial(act(op, section))
    rhs = act_on_polynomial(partial_fourier(op, spec), delta_to_polynomial(section))
    return lhs == rhs


def fourier_transport_check(
    spec: PartialFourierSpec,
    ideal: LeftIdeal,
    section: DeltaSection,
    polynomial: Poly,
) -> bool:
    """Transport an annihilation statement through the partial Fourier map.

    The claimed polynomial must be the dictionary image of the section, and
    the Fourier transform of every ideal generator must annihilate it (acting
    on plain polynomials).  The transform directions have to be exactly the
    section's distribution directions.
    """
    if spec.indices != section.module.support:
        raise ValueError(
            "subset mismatch: transform directions differ from the section's "
            "distribution directions"
        )
    if delta_to_polynomial(section) != polynomial:
        return False
    return all(
        act_on_polynomial(partial_fourier(g, spec), polynomial).is_zero()
        for g in ideal.generators
    )


def annihilates(generators: Sequence[WeylElement], section: DeltaSection) -> bool:
    return all(act(g, section).is_zero() for g in generators)


def first_non_annihilating(
    generators: Sequence[WeylElement], section: DeltaSection
) -> tuple[int, DeltaSection] | None:
    """1-based index and image of the first generator that fails to kill the section."""
    for i, g in enumerate(generators, start=1):
        image = act(g, section)
        if not image.is_zero():
            return i, image
    return None


@dataclass(frozen=True)
class AnnihilatorCertificate:
    """Proof sketch that an ideal is the exact annihilator of a section.

    The three ingredients: the section is nonzero, every generator kills it,
    and the cyclic module presented by the ideal is certified simple.  Then
    the annihilator contains the ideal and the simple quotient maps onto the
    nonzero submodule generated by the section, forcing equality.
    """

    verified: bool
    failing: str | None
    witness: int | None
    simplicity: HolonomicityCertificate | None


def certify_annihilator(ideal: LeftIdeal, section: DeltaSection) -> AnnihilatorCertificate:
    if section.is_zero():
        return AnnihilatorCertificate(False, "section_nonzero", None, None)
    failure = first_non_annihilating(ideal.generators, section)
    if failure is not None:
        return AnnihilatorCertificate(False, "generators_annihilate", failure[0], None)
    cert = simplicity_certificate(ideal)
    if cert.simple != "yes":
        return AnnihilatorCertificate(False, "simplicity", None, cert)
    return AnnihilatorCertificate(True, None, None, cert)


def lagrange_projector(euler: WeylElement, level: int, lmax: int) -> WeylElement:
    """Polynomial in the Euler-type operator: 1 at level, 0 at the other
    integers in 0..lmax."""
    out = WeylElement.one(euler.ambient)
    for other in range(lmax + 1):
        if other == level:
            continue
        out = (out * (euler - other)).scaled(Fraction(1, level - other))
    return out


def interpolation_lift(
    targets: Sequence[tuple[int, WeylElement]],
    lmax: int,
    euler: WeylElement | None = None,
) -> WeylElement:
    """Single operator agreeing with each target at its level.

    Builds sum of P_l times the projector at l, a polynomial in the
    Euler-type operator (default z1 d1) vanishing at every other integer
    level up to lmax.  Whenever an ideal contains euler - l, the difference
    between the lift and P_l is a left multiple of euler - l, hence lies in
    the ideal; that is the congruence the callers verify.
    """
    if not targets:
        raise ValueError("need at least one target")
    levels = [level for level, _ in targets]
    if len(set(levels)) != len(levels):
        raise ValueError("levels must be distinct")
    if any(not 0 <= level <= lmax for level in levels):
        raise ValueError(f"levels must lie in 0..{lmax}")
    if euler is None:
        ambient = targets[0][1].ambient
        euler = WeylElement.from_monomial(
            Monomial((1,) + (0,) * (ambient - 1), (1,) + (0,) * (ambient - 1))
        )
    total = WeylElement.zero(euler.ambient)
    for level, element in targets:
        total = total + element * lagrange_projector(euler, level, lmax)
    return total
