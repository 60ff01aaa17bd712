"""Exact plurigenus arithmetic for threefolds with terminal quotient singularities.

A singularity of type 1/r(a, -a, 1) contributes a correction term to the
plurigenus of a minimal threefold of general type.  The correction depends
only on the index r and on b' = min(b, r - b), where b is the inverse of a
modulo r, so baskets are keyed, sorted and deduplicated by (r, b').

Everything here is exact: rational values are `fractions.Fraction` (always
reduced, positive denominator) and correction sums are evaluated by direct
summation, never by closed forms or floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class Infeasible(Exception):
    """A structurally valid input admits no solution of the requested kind."""


def rat_str(value) -> str:
    """Wire form of an exact rational: "num/den" with den > 0 (e.g. "-3/1")."""
    q = Fraction(value)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or a plain integer literal into an exact rational."""
    body = text.strip()
    if "/" in body:
        num, _, den = body.partition("/")
        return Fraction(int(num), int(den))
    return Fraction(int(body))


@dataclass(frozen=True)
class Basket:
    """One singularity 1/r(a, -a, 1) with its inverse weight b and reduced b'."""

    r: int
    a: int
    b: int
    b_reduced: int

    @property
    def key(self) -> tuple[int, int]:
        return (self.r, self.b_reduced)


def make_basket(r: int, a: int) -> Basket:
    """Build a basket entry from (r, a); b and b' are derived."""
    if r < 2:
        raise ValueError(f"basket index must be at least 2, got r={r}")
    if not 0 < a < r:
        raise ValueError(f"weight must satisfy 0 < a < r, got a={a}, r={r}")
    if gcd(a, r) != 1:
        raise ValueError(f"weight must be coprime to the index: gcd({a}, {r}) != 1")
    b = pow(a, -1, r)
    return Basket(r, a, b, min(b, r - b))


def basket_from_b(r: int, b: int) -> Basket:
    """Build a basket entry from (r, b), synthesizing a as the inverse of b."""
    if r < 2:
        raise ValueError(f"basket index must be at least 2, got r={r}")
    if not 0 < b < r:
        raise ValueError(f"inverse weight must satisfy 0 < b < r, got b={b}, r={r}")
    if gcd(b, r) != 1:
        raise ValueError(f"inverse weight must be coprime to the index: gcd({b}, {r}) != 1")
    return Basket(r, pow(b, -1, r), b, min(b, r - b))


@dataclass(frozen=True, eq=False)
class BasketSet:
    """Multiset of baskets, stored in canonical order sorted by (r, b')."""

    baskets: tuple[Basket, ...]

    def __init__(self, baskets=()):
        entries = tuple(sorted(baskets, key=lambda q: q.key))
        object.__setattr__(self, "baskets", entries)

    @classmethod
    def from_pairs(cls, pairs) -> "BasketSet":
        """Build from (r, b') pairs; display weights are synthesized."""
        return cls(basket_from_b(r, bp) for r, bp in pairs)

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(q.key for q in self.baskets)

    def __iter__(self):
        return iter(self.baskets)

    def __len__(self) -> int:
        return len(self.baskets)

    # Identity is the sorted (r, b') sequence; the display weight a is not
    # part of it, since the correction terms cannot distinguish a from its
    # inverse.
    def __eq__(self, other) -> bool:
        if not isinstance(other, BasketSet):
            return NotImplemented
        return self.pairs == other.pairs

    def __hash__(self) -> int:
        return hash(self.pairs)


@dataclass(frozen=True)
class ReidModel:
    """Numerical model of a minimal threefold: K^3, chi(O) and its baskets."""

    k3: Fraction
    chi: int
    baskets: BasketSet


@dataclass(frozen=True)
class LinearInvariants:
    """The pair (sigma, tau_offset) recovered from P_2 and P_3.

    sigma equals the basket sum of b' and tau_offset is the constant with
    sum(b'^2 / r) = K^3 + tau_offset.
    """

    sigma: int
    tau_offset: Fraction


def correction_term(basket: Basket, m: int) -> Fraction:
    """Orbifold correction of one basket at level m.

    l_Q(m) = sum_{j=1}^{m-1} jb(r - jb)/(2r), with jb the smallest residue
    of b*j mod r.  Symmetric under b -> r - b, so only b' matters.
    """
    if m < 1:
        raise ValueError(f"correction terms are defined for m >= 1, got {m}")
    r, b = basket.r, basket.b_reduced
    total = 0
    for j in range(1, m):
        res = (b * j) % r
        total += res * (r - res)
    return Fraction(total, 2 * r)


def correction_sum(baskets: BasketSet, m: int) -> Fraction:
    """Total correction l(m) over a basket multiset."""
    return sum((correction_term(q, m) for q in baskets), Fraction(0))


def plurigenus(model: ReidModel, m: int) -> Fraction:
    """Exact plurigenus for m >= 2.

    P_m = m(m-1)(2m-1)/12 * K^3 - (2m-1) chi + l(m).
    """
    if m < 2:
        raise ValueError(f"the plurigenus formula requires m >= 2, got {m}")
    poly = Fraction(m * (m - 1) * (2 * m - 1), 12) * model.k3
    return poly - (2 * m - 1) * model.chi + correction_sum(model.baskets, m)


def pluri_table(model: ReidModel, m_max: int) -> dict[int, Fraction]:
    """Map m -> P_m for every m in [2, m_max]."""
    if m_max < 2:
        raise ValueError(f"table upper bound must be at least 2, got {m_max}")
    return {m: plurigenus(model, m) for m in range(2, m_max + 1)}


def invert_p2_p3(p2, p3, chi) -> LinearInvariants:
    """Recover (sigma, tau_offset) from P_2, P_3 and chi(O).

    Eliminating K^3 from the m = 2, 3 plurigenus formulas gives
    sigma = 5 P_2 - P_3 + 10 chi and sum(b'^2 / r) = K^3 + tau_offset with
    tau_offset = sigma - 2 P_2 - 6 chi.  Inputs are normally integers; exact
    rationals are accepted so the identity can be checked symbolically.
    """
    sigma = 5 * p2 - p3 + 10 * chi
    if sigma < 0:
        raise Infeasible(
            f"no geometric solution: sigma = 5*P2 - P3 + 10*chi = {sigma} < 0"
        )
    tau_offset = Fraction(sigma - 2 * p2 - 6 * chi)
    if isinstance(sigma, Fraction):
        if sigma.denominator != 1:
            raise Infeasible(f"no geometric solution: sigma = {sigma} is not integral")
        sigma = int(sigma)
    return LinearInvariants(sigma, tau_offset)
