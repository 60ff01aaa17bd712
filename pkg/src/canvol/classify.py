"""Exhaustive classification of basket configurations with prescribed plurigenera.

Given chi(O), P_2, P_3 and optional targets for higher plurigenera, the
search recovers sigma = sum(b') and the threshold tau_offset, partitions
sigma into reduced weights, and assigns an index r to each weight.  Branches
that cannot keep K^3 positive are pruned with an exact bound, and every
candidate examined inside the viable window is either kept as a solution or
recorded with a machine-readable exclusion reason.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .baskets import (
    BasketSet,
    Infeasible,
    ReidModel,
    invert_p2_p3,
    plurigenus,
)

REASON_K3_NONPOSITIVE = "K3_NONPOSITIVE"
REASON_PLURI_MISMATCH = "PLURI_MISMATCH"
REASON_NON_INTEGRAL = "NON_INTEGRAL"
REASON_COPRIMALITY = "COPRIMALITY"
REASON_REDUCEDNESS = "REDUCEDNESS"


@dataclass(frozen=True)
class ConstraintProblem:
    """Search instance: chi, P_2, P_3, higher plurigenus targets, horizon."""

    chi: int
    p2: int
    p3: int
    filters: tuple[tuple[int, int], ...] = ()
    r_max: int = 50

    def __post_init__(self):
        entries = self.filters
        if hasattr(entries, "items"):
            entries = entries.items()
        entries = tuple(sorted((int(m), int(v)) for m, v in entries))
        for m, _ in entries:
            if m < 4:
                raise ValueError(f"plurigenus targets start at m = 4, got m = {m}")
        if self.r_max < 2:
            raise ValueError(f"index horizon must be at least 2, got {self.r_max}")
        object.__setattr__(self, "filters", entries)

    @property
    def filter_map(self) -> dict[int, int]:
        return dict(self.filters)


@dataclass(frozen=True)
class Solution:
    """A surviving basket configuration with its volume and plurigenera."""

    baskets: BasketSet
    k3: Fraction
    pluri: dict[int, int]
    note: str | None = None


@dataclass(frozen=True)
class ExcludedCase:
    """A candidate rejected during the search, with the values that killed it.

    `pairs` are raw (r, b') pairs: coprimality and reducedness rows name
    combinations that cannot form a valid basket at all.
    """

    pairs: tuple[tuple[int, int], ...]
    reason: str
    at_m: int | None = None
    k3: Fraction | None = None
    pluri: dict[int, Fraction] | None = None


@dataclass(frozen=True)
class CaseReport:
    """Full outcome of one enumeration run."""

    sigma: int
    tau_offset: Fraction
    n_max: int
    partitions_examined: tuple[tuple[int, ...], ...]
    solutions: tuple[Solution, ...]
    excluded: tuple[ExcludedCase, ...]
    truncation_flag: bool


def basket_count_bound(p2: int, chi: int) -> int:
    """Largest possible number of baskets: each contributes > 1/4 to P_2 + 3chi.

    Every basket adds at least (r-1)/(2r) >= 1/4 to the level-2 correction,
    and K^3 > 0 makes the inequality strict, so n < 4 (P_2 + 3 chi).
    """
    head = p2 + 3 * chi
    if head <= 0:
        raise Infeasible(
            f"no geometric solution: P2 + 3*chi = {head} must be positive"
        )
    return 4 * head - 1


def _partitions(total: int, max_part: int, max_parts: int) -> list[tuple[int, ...]]:
    """Partitions of `total` with parts descending, in lex-decreasing order."""
    if total == 0:
        return [()]
    if max_parts == 0:
        return []
    out = []
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, first, max_parts - 1):
            out.append((first,) + rest)
    return out


def enumerate_solutions(problem: ConstraintProblem) -> CaseReport:
    """Enumerate every basket multiset compatible with the problem.

    Partitions of sigma are walked part by part; for each part b' the index
    loop is closed off as soon as the assigned sum of b'^2/r plus the largest
    possible remaining contribution (b'/2 per open part) can no longer exceed
    tau_offset, which is exactly the K^3 > 0 requirement.  When an index loop
    instead runs into the r_max horizon while still viable, the truncation
    flag is set: solutions may exist beyond the horizon.
    """
    invariants = invert_p2_p3(problem.p2, problem.p3, problem.chi)
    n_max = basket_count_bound(problem.p2, problem.chi)
    sigma, tau_offset = invariants.sigma, invariants.tau_offset
    filters = problem.filter_map
    m_hi = max([5] + list(filters))

    partitions = tuple(_partitions(sigma, sigma, n_max) if sigma else [()])
    solutions: list[Solution] = []
    excluded: list[ExcludedCase] = []
    truncated = False

    def finish(pairs: tuple[tuple[int, int], ...], tau: Fraction) -> None:
        k3 = tau - tau_offset
        if k3 <= 0:
            # Unreachable through the pruned walk (the last viability check
            # is exact) but kept so disabling the prune stays sound.
            excluded.append(ExcludedCase(pairs, REASON_K3_NONPOSITIVE, k3=k3))
            return
        model = ReidModel(k3, problem.chi, BasketSet.from_pairs(pairs))
        table = {m: plurigenus(model, m) for m in range(2, m_hi + 1)}
        for m in range(2, m_hi + 1):
            if table[m].denominator != 1:
                excluded.append(
                    ExcludedCase(pairs, REASON_NON_INTEGRAL, at_m=m, k3=k3, pluri=table)
                )
                return
        assert table[2] == problem.p2 and table[3] == problem.p3
        for m in sorted(filters):
            if table[m] != filters[m]:
                excluded.append(
                    ExcludedCase(pairs, REASON_PLURI_MISMATCH, at_m=m, k3=k3, pluri=table)
                )
                return
        solutions.append(
            Solution(model.baskets, k3, {m: int(v) for m, v in table.items()})
        )

    def walk(parts, suffix, idx, r_min, tau_part, chosen) -> bool:
        if idx == len(parts):
            finish(tuple(chosen), tau_part)
            return False
        b = parts[idx]
        hit_horizon = False
        r = max(2, r_min)
        while True:
            tau_best = tau_part + Fraction(b * b, r) + suffix[idx + 1]
            if tau_best <= tau_offset:
                break
            if r > problem.r_max:
                hit_horizon = True
                break
            here = tuple(chosen) + ((r, b),)
            if r < 2 * b:
                excluded.append(ExcludedCase(here, REASON_REDUCEDNESS))
            elif gcd(b, r) != 1:
                excluded.append(ExcludedCase(here, REASON_COPRIMALITY))
            else:
                next_min = r if idx + 1 < len(parts) and parts[idx + 1] == b else 2
                hit_horizon |= walk(
                    parts, suffix, idx + 1, next_min,
                    tau_part + Fraction(b * b, r), chosen + [(r, b)],
                )
            r += 1
        return hit_horizon

    for parts in partitions:
        suffix = [Fraction(0)] * (len(parts) + 1)
        for i in range(len(parts) - 1, -1, -1):
            suffix[i] = suffix[i + 1] + Fraction(parts[i], 2)
        if parts:
            truncated |= walk(parts, suffix, 0, 2, Fraction(0), [])
        else:
            finish((), Fraction(0))

    solutions.sort(key=lambda s: s.baskets.pairs)
    for first, second in zip(solutions, solutions[1:]):
        assert first.baskets != second.baskets, "duplicate solution"
    return CaseReport(
        sigma=sigma,
        tau_offset=tau_offset,
        n_max=n_max,
        partitions_examined=partitions,
        solutions=tuple(solutions),
        excluded=tuple(excluded),
        truncation_flag=truncated,
    )


SMALL_P5_UNREALIZED = BasketSet.from_pairs([(2, 1), (3, 1), (4, 1)])


def classify_small_p5() -> CaseReport:
    """Classify chi = 0 threefolds with P_2 = 1, P_3 = 2, P_4 = 3, P_5 = 4.

    The configuration {(2,1), (3,1), (4,1)} survives the numerical sieve but
    has no known geometric realization, and is annotated as such.
    """
    problem = ConstraintProblem(chi=0, p2=1, p3=2, filters={4: 3, 5: 4}, r_max=50)
    report = enumerate_solutions(problem)
    marked = tuple(
        dataclasses.replace(sol, note="no known geometric example")
        if sol.baskets == SMALL_P5_UNREALIZED
        else sol
        for sol in report.solutions
    )
    return dataclasses.replace(report, solutions=marked)
