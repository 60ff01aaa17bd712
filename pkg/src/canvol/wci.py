"""Invariants of quasi-smooth weighted complete-intersection threefolds.

A general member of multidegree (d_1, ..., d_c) in P(w_0, ..., w_k) with
k - c = 3 carries the canonical sheaf O(alpha) with alpha = sum(d) - sum(w).
The Hilbert series of the coordinate ring is expanded by exact integer
polynomial arithmetic, which for alpha = 1 reads off the plurigenera
directly and lets them be cross-checked against the basket formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .baskets import BasketSet, ReidModel, plurigenus

QUASI_SMOOTH_NOTE = "quasi-smoothness of the general member is assumed, not verified"


@dataclass(frozen=True)
class WeightedCI:
    """Weighted complete intersection data: ambient weights and degrees."""

    weights: tuple[int, ...]
    degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if any(w < 1 for w in self.weights):
            raise ValueError(f"weights must be positive, got {self.weights}")
        if any(d < 1 for d in self.degrees):
            raise ValueError(f"degrees must be positive, got {self.degrees}")
        if len(self.weights) != len(self.degrees) + 4:
            raise ValueError(
                "a threefold needs k - c = 3, i.e. %d weights for %d degrees"
                % (len(self.degrees) + 4, len(self.degrees))
            )


@dataclass(frozen=True)
class CoefficientTable:
    """Leading Hilbert-series coefficients, degree 0 upward."""

    values: tuple[int, ...]


@dataclass(frozen=True)
class ConsistencyReport:
    """Outcome of comparing series plurigenera with the basket formula."""

    passed: bool
    first_mismatch: tuple[int, Fraction, Fraction] | None
    assumption: str = QUASI_SMOOTH_NOTE


def canonical_amplitude(x: WeightedCI) -> int:
    """Amplitude alpha with K = O(alpha): sum of degrees minus sum of weights."""
    return sum(x.degrees) - sum(x.weights)


def canonical_volume(x: WeightedCI) -> Fraction:
    """K^3 = alpha^3 * prod(degrees) / prod(weights); requires alpha >= 1."""
    alpha = canonical_amplitude(x)
    if alpha < 1:
        raise ValueError(
            f"canonical class is not ample: amplitude {alpha} < 1"
        )
    num = alpha**3
    for d in x.degrees:
        num *= d
    den = 1
    for w in x.weights:
        den *= w
    return Fraction(num, den)


def hilbert_coeffs(x: WeightedCI, upto: int) -> CoefficientTable:
    """Coefficients of prod(1 - t^d) / prod(1 - t^w) through degree `upto`.

    The numerator is expanded exactly, then each weight factor is divided
    out by the stride-w prefix recurrence c[n] += c[n - w].  Integer
    polynomial arithmetic throughout.
    """
    if upto < 0:
        raise ValueError(f"truncation degree must be nonnegative, got {upto}")
    coeffs = [0] * (upto + 1)
    coeffs[0] = 1
    for d in x.degrees:
        if d <= upto:
            for n in range(upto, d - 1, -1):
                coeffs[n] -= coeffs[n - d]
    for w in x.weights:
        for n in range(w, upto + 1):
            coeffs[n] += coeffs[n - w]
    return CoefficientTable(tuple(coeffs))


def plurigenera_from_hilbert(x: WeightedCI, m_max: int) -> dict[int, int]:
    """P_m = series coefficient at degree m, valid only when alpha = 1."""
    alpha = canonical_amplitude(x)
    if alpha != 1:
        raise ValueError(
            f"unsupported normalization: plurigenera need amplitude 1, got {alpha}"
        )
    if m_max < 1:
        raise ValueError(f"m_max must be at least 1, got {m_max}")
    table = hilbert_coeffs(x, m_max)
    return {m: table.values[m] for m in range(1, m_max + 1)}


def reid_consistency(
    x: WeightedCI, claimed: BasketSet, chi: int, m_max: int
) -> ConsistencyReport:
    """Compare series plurigenera against the basket formula for 2 <= m <= m_max.

    The claimed basket is taken at face value; the report header records the
    quasi-smoothness assumption behind the series side.
    """
    if m_max < 2:
        raise ValueError(f"consistency checks need m_max >= 2, got {m_max}")
    from_series = plurigenera_from_hilbert(x, m_max)
    model = ReidModel(canonical_volume(x), chi, claimed)
    for m in range(2, m_max + 1):
        from_baskets = plurigenus(model, m)
        if from_baskets != from_series[m]:
            return ConsistencyReport(
                False, (m, from_baskets, Fraction(from_series[m]))
            )
    return ConsistencyReport(True, None)
