"""Iterated lower bounds for the canonical degree xi on a moving curve family.

The setting: a pluricanonical system at level m0 moves a family of curves C,
with p the fibration multiplicity, beta the portion of the canonical class
realized on the relevant surface, and deg_kc a lower bound for deg(K_C).
A single step at level m certifies m * xi >= deg_kc + alpha0 provided a side
condition on alpha = (m - 1 - m0/p - 1/beta) * xi holds; iterating the step
greedily improves the bound until a fixed point.  Volume bounds follow via
K^3 >= p * beta * xi / m0.

When beta is only an open limit (approached from below by a sequence), a
side condition must hold with slack to survive the limit, so only the
strict alpha > 1 route applies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .baskets import Infeasible

COND_ALPHA0_GE_2 = "ALPHA0_GE_2"
COND_EVEN_DIVISOR = "EVEN_DIVISOR"


@dataclass(frozen=True)
class XiProblem:
    """Inputs of the step inequality; beta may be exact or an open limit."""

    m0: int
    p: int
    beta: Fraction
    deg_kc: int
    beta_is_open_limit: bool = False
    even_c: bool = False

    def __post_init__(self):
        object.__setattr__(self, "beta", Fraction(self.beta))
        if self.m0 < 1 or self.p < 1:
            raise ValueError(f"m0 and p must be positive, got m0={self.m0}, p={self.p}")
        if self.beta <= 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if self.deg_kc < 1:
            raise ValueError(f"deg_kc must be a positive integer, got {self.deg_kc}")

    @property
    def k_constant(self) -> Fraction:
        """K = 1 + m0/p + 1/beta; always > 1."""
        return 1 + Fraction(self.m0, self.p) + 1 / self.beta


@dataclass(frozen=True)
class XiStep:
    """One applicable improvement step."""

    m: int
    alpha: Fraction
    alpha0: int
    new_bound: Fraction
    condition_used: str


@dataclass(frozen=True)
class XiTrace:
    """Adopted bounds in order, plus an optional certified supremum."""

    start: Fraction
    steps: tuple[XiStep, ...]
    final: Fraction
    sup_certified: Fraction | None = None


def xi_limit(prob: XiProblem) -> Fraction:
    """Large-m limit of the step inequality: xi >= deg_kc / K."""
    return prob.deg_kc / prob.k_constant


def xi_step(prob: XiProblem, current: Fraction, m: int) -> XiStep | None:
    """Step at level m from a certified bound `current`, or None.

    alpha is evaluated at beta's limiting value.  Applicable when
    alpha0 = ceil(alpha) >= 2, or when C is an even divisor and alpha > 0
    with beta exact.  Returns the new bound (deg_kc + alpha0) / m.
    """
    if m < 2:
        raise ValueError(f"steps are defined for m >= 2, got {m}")
    current = Fraction(current)
    if current <= 0:
        raise ValueError(f"current bound must be positive, got {current}")
    alpha = (m - prob.k_constant) * current
    alpha0 = ceil(alpha)
    if alpha0 >= 2:
        # alpha > 1 strictly, so the condition also survives an open beta.
        return XiStep(m, alpha, alpha0, Fraction(prob.deg_kc + alpha0, m), COND_ALPHA0_GE_2)
    if prob.even_c and not prob.beta_is_open_limit and alpha > 0:
        return XiStep(m, alpha, alpha0, Fraction(prob.deg_kc + alpha0, m), COND_EVEN_DIVISOR)
    return None


def xi_iterate(prob: XiProblem, m_max: int, round_max: int = 50) -> XiTrace:
    """Greedy improvement from the limit bound.

    Each round evaluates the step at every m in [2, m_max] and adopts the
    largest strict improvement, ties going to the smallest m.  Stops at a
    fixed point or after round_max rounds.
    """
    if m_max < 2:
        raise ValueError(f"m_max must be at least 2, got {m_max}")
    if round_max < 0:
        raise ValueError(f"round_max must be nonnegative, got {round_max}")
    start = xi_limit(prob)
    current = start
    steps: list[XiStep] = []
    for _ in range(round_max):
        best: XiStep | None = None
        for m in range(2, m_max + 1):
            step = xi_step(prob, current, m)
            if step is not None and step.new_bound > current:
                if best is None or step.new_bound > best.new_bound:
                    best = step
        if best is None:
            break
        steps.append(best)
        current = best.new_bound
    return XiTrace(start, tuple(steps), current)


def xi_verify_unit_limit(prob: XiProblem, l0: int) -> bool:
    """Certify xi >= (deg_kc + l + 1 - K)/(l + 1) for all l >= l0, hence xi >= 1.

    The certificate is deliberately narrow.  It requires K integral and
    l0 >= K + 1 (so every step in the family satisfies alpha0 >= 2), checks
    the induction inequality, which reduces to the linear criterion
    l * (deg_kc - K + 1) + (1 - K)(deg_kc - K) > 0, by the sign of the
    leading coefficient plus evaluation at l0, and confirms the base bound
    g(l0) is already attained by the greedy iteration.  Total: returns False
    on any shape it cannot certify.
    """
    if l0 < 2:
        raise ValueError(f"the family index must satisfy l0 >= 2, got {l0}")
    k = prob.k_constant
    if k.denominator != 1:
        return False
    if l0 < k + 1:
        return False
    d = prob.deg_kc
    coef = d + 1 - k
    const = (1 - k) * (d - k)
    if coef < 0:
        return False
    if coef * l0 + const <= 0:
        return False
    base = Fraction(d + l0 + 1 - k, l0 + 1)
    attained = xi_iterate(prob, m_max=l0 + 1).final
    return attained >= base


def volume_bound(p: int, beta: Fraction, m0: int, xi: Fraction) -> Fraction:
    """K^3 >= p * beta * xi / m0; closed even when beta was an open limit."""
    if p < 1 or m0 < 1:
        raise ValueError(f"p and m0 must be positive, got p={p}, m0={m0}")
    beta, xi = Fraction(beta), Fraction(xi)
    if beta <= 0 or xi < 0:
        raise ValueError(f"need beta > 0 and xi >= 0, got beta={beta}, xi={xi}")
    return p * beta * xi / m0


@dataclass(frozen=True)
class Preset:
    """A named problem instance with its reference step schedule."""

    name: str
    problem: XiProblem
    schedule: tuple[int, ...]
    unit_limit_l0: int | None
    summary: str


F = Fraction

PRESETS: dict[str, Preset] = {
    p.name: p
    for p in (
        Preset("i-a", XiProblem(4, 1, F(1, 4), 6), (11,), None,
               "level-4 system, threefold image"),
        Preset("i-b", XiProblem(4, 1, F(3, 4), 2), (10,), None,
               "level-4 system, surface image"),
        Preset("i-c", XiProblem(4, 5, F(1, 4), 20), (), None,
               "level-4 system, curve image of positive genus"),
        Preset("i-d", XiProblem(4, 4, F(1, 8), 18, beta_is_open_limit=True), (11,), None,
               "level-4 system, rational curve image"),
        Preset("ii-a", XiProblem(5, 1, F(1, 5), 10), (13,), 12,
               "level-5 system, threefold image"),
        Preset("ii-b", XiProblem(5, 1, F(3, 5), 2), (12, 11), None,
               "level-5 system, surface image"),
        Preset("iii-a", XiProblem(5, 5, F(1, 2), 6), (), None,
               "level-5 system, curve image of positive genus"),
        Preset("iii-b", XiProblem(5, 4, F(2, 9), 6, beta_is_open_limit=True), (8,), None,
               "level-5 system, rational curve image"),
    )
}


@dataclass(frozen=True)
class PresetRun:
    """Replayed schedule of one preset: trace, effective xi and volume bound."""

    preset: str
    trace: XiTrace
    xi: Fraction
    volume: Fraction


def run_preset(name: str) -> PresetRun:
    """Replay a preset's reference schedule (not the greedy one) exactly."""
    try:
        preset = PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; known: {sorted(PRESETS)}") from None
    prob = preset.problem
    current = xi_limit(prob)
    steps: list[XiStep] = []
    for m in preset.schedule:
        step = xi_step(prob, current, m)
        if step is None or step.new_bound <= current:
            raise Infeasible(f"preset {name}: scheduled step m={m} is not applicable")
        steps.append(step)
        current = step.new_bound
    sup: Fraction | None = None
    if preset.unit_limit_l0 is not None:
        if not xi_verify_unit_limit(prob, preset.unit_limit_l0):
            raise Infeasible(f"preset {name}: unit limit certificate failed")
        sup = Fraction(1)
    trace = XiTrace(xi_limit(prob), tuple(steps), current, sup)
    effective = sup if sup is not None and sup > current else current
    return PresetRun(name, trace, effective, volume_bound(prob.p, prob.beta, prob.m0, effective))
