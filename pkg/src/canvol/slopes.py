"""Slope bounds for direct images of pluricanonical sheaves over an elliptic base.

For a fibration over a genus-1 curve with fiber invariants (K_F^2, p_g(F)) =
(1, 2), let nu(E_m) denote a lower bound for the smallest slope of a direct
summand of the rank P_m(F) bundle E_m.  Multiplication maps E_i x E_j -> E_m
with small cokernel rank turn bounds at i and j into a bound at m = i + j,
capped at 1 whenever the cokernel can eat a summand.  Once nu(E_n) >= 1 the
fibration contributes K^3 >= K_F^2 / n.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .baskets import Infeasible


class MissingBound(Infeasible):
    """A rule was applied before its input slots had bounds."""


class NoValidRule(Infeasible):
    """No multiplication rule covers the requested pair."""


class InsufficientSlope(Infeasible):
    """The requested slot never reached slope 1."""


@dataclass(frozen=True)
class FiberData:
    kf2: int
    chi_f: int
    pg_f: int


FIBER_1_2 = FiberData(kf2=1, chi_f=3, pg_f=2)


@dataclass(frozen=True)
class MultiplicationRule:
    """Pair pattern (j = None matches anything), validity floor, cokernel cap."""

    pair: tuple[int, int | None]
    min_total: int
    coker_rank_bound: int


RULES_1_2: tuple[MultiplicationRule, ...] = (
    MultiplicationRule((1, None), 2, 1),
    MultiplicationRule((1, 2), 3, 0),
    MultiplicationRule((2, 2), 4, 1),
    MultiplicationRule((2, None), 8, 0),
    MultiplicationRule((2, 5), 7, 1),
)

DEFAULT_SCHEDULE: tuple[tuple[int, int], ...] = ((2, 2), (4, 1), (5, 2), (7, 2))


@dataclass(frozen=True)
class DerivationStep:
    pair: tuple[int, int]
    total: int
    coker_rank_bound: int
    raw_sum: Fraction
    result: Fraction
    previous: Fraction | None
    updated: Fraction


@dataclass(frozen=True)
class SlopeState:
    """Current slope bounds by level, with the rules and derivation so far."""

    fiber: FiberData
    bounds: dict[int, Fraction]
    rules: tuple[MultiplicationRule, ...]
    derivation: tuple[DerivationStep, ...] = ()


def surface_plurigenus(kf2: int, chi_f: int, m: int) -> int:
    """P_m of a minimal surface of general type: chi + m(m-1)/2 * K^2."""
    if m < 2:
        raise ValueError(f"surface plurigenera need m >= 2, got {m}")
    return chi_f + (m * (m - 1) // 2) * kf2


def base_bounds(fiber: FiberData) -> SlopeState:
    """Starting bounds for the (1,2) fiber: nu(E_1) >= 0 and nu(E_2) >= 1/4.

    E_2 has rank P_2(F) = 4 and degree at least 1, hence slope at least 1/4
    on some summand.  Other fiber types are not covered.
    """
    if fiber != FIBER_1_2:
        raise ValueError(
            f"only the (K_F^2, p_g) = (1, 2) fiber is supported, got {fiber}"
        )
    rank2 = surface_plurigenus(fiber.kf2, fiber.chi_f, 2)
    bounds = {1: Fraction(0), 2: Fraction(1, rank2)}
    return SlopeState(fiber, bounds, RULES_1_2)


def _rule_for(state: SlopeState, i: int, j: int) -> MultiplicationRule | None:
    lo, hi = sorted((i, j))
    best: MultiplicationRule | None = None
    for rule in state.rules:
        a, b = rule.pair
        if a != lo:
            continue
        if b is not None and b != hi:
            continue
        if lo + hi < rule.min_total:
            continue
        if best is None or rule.coker_rank_bound < best.coker_rank_bound:
            best = rule
    return best


def apply_rule(state: SlopeState, pair: tuple[int, int]) -> Fraction:
    """Evaluate one multiplication rule: bounds[i] + bounds[j], capped at 1
    when the cokernel rank bound is 1.  Pure; `propagate` folds the result in.
    """
    i, j = pair
    for slot in (i, j):
        if slot not in state.bounds:
            raise MissingBound(f"no slope bound at level {slot} yet")
    rule = _rule_for(state, i, j)
    if rule is None:
        raise NoValidRule(f"no multiplication rule covers the pair ({i}, {j})")
    candidate = state.bounds[i] + state.bounds[j]
    if rule.coker_rank_bound == 1:
        return min(candidate, Fraction(1))
    return candidate


def propagate(state: SlopeState, schedule=DEFAULT_SCHEDULE) -> SlopeState:
    """Apply a schedule of pairs in order, raising bounds monotonically."""
    current = state
    for pair in schedule:
        i, j = pair
        rule = _rule_for(current, i, j)
        value = apply_rule(current, pair)
        total = i + j
        previous = current.bounds.get(total)
        updated = value if previous is None else max(previous, value)
        bounds = dict(current.bounds)
        bounds[total] = updated
        step = DerivationStep(
            pair=(i, j),
            total=total,
            coker_rank_bound=rule.coker_rank_bound,
            raw_sum=current.bounds[i] + current.bounds[j],
            result=value,
            previous=previous,
            updated=updated,
        )
        current = replace(
            current, bounds=bounds, derivation=current.derivation + (step,)
        )
    return current


def fiber_volume_bound(state: SlopeState, n: int) -> Fraction:
    """K^3 >= K_F^2 / n, available once nu(E_n) >= 1."""
    bound = state.bounds.get(n)
    if bound is None or bound < 1:
        raise InsufficientSlope(
            f"slope bound at level {n} is {bound}, need at least 1"
        )
    return Fraction(state.fiber.kf2, n)
