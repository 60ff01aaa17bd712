"""Acceptance gate: one test per shipped guarantee, one line per outcome.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines alongside pytest's own pass/fail markers.  All values are exact
rational comparisons; there are no tolerances anywhere.
"""

import json
import random
import time
from dataclasses import replace
from fractions import Fraction as F
from math import ceil, gcd

from canvol.baskets import (
    BasketSet,
    ReidModel,
    basket_from_b,
    correction_term,
    invert_p2_p3,
    parse_rational,
    pluri_table,
    plurigenus,
    rat_str,
)
from canvol.classify import (
    ConstraintProblem,
    basket_count_bound,
    classify_small_p5,
    enumerate_solutions,
)
from canvol.jsonio import (
    parse_basket,
    parse_basket_set,
    parse_excluded_case,
    parse_solution,
    parse_xi_step,
    parse_xi_trace,
    serialize,
    to_jsonable,
)
from canvol.classify import ExcludedCase, Solution
from canvol.mainproof import AXIOM_CITED, prove_main
from canvol.slopes import FIBER_1_2, base_bounds, fiber_volume_bound, propagate
from canvol.wci import (
    WeightedCI,
    canonical_volume,
    plurigenera_from_hilbert,
    reid_consistency,
)
from canvol.xi import PRESETS, XiProblem, XiStep, XiTrace, run_preset, xi_iterate, xi_verify_unit_limit
from oracle import brute_force_solutions

_T0 = time.perf_counter()

CASES = {
    "C1": (((2, 1), (3, 1), (4, 1)), F(1, 12)),
    "C2": (((2, 1), (3, 1), (5, 1)), F(1, 30)),
    "C3": (((2, 1), (7, 2)), F(1, 14)),
    "C4": (((4, 1), (5, 2)), F(1, 20)),
}


def conclude(n, desc):
    print(f"criterion {n:02d}: PASS — {desc}")


def test_criterion_01_golden_plurigenus_tables():
    for pairs, k3 in CASES.values():
        model = ReidModel(k3, 0, BasketSet.from_pairs(pairs))
        assert pluri_table(model, 5) == {2: 1, 3: 2, 4: 3, 5: 4}
    conclude(1, "all four minimal models give P_2..P_5 = 1,2,3,4 exactly")


def test_criterion_02_inversion_and_count_bound():
    inv = invert_p2_p3(1, 2, 0)
    assert inv.sigma == 3
    assert inv.tau_offset == 1  # tau = K^3 + 1
    assert basket_count_bound(1, 0) == 3
    conclude(2, "sigma = 3, tau = K^3 + 1, basket count < 4")


def test_criterion_03_classification():
    started = time.perf_counter()
    report = classify_small_p5()
    elapsed = time.perf_counter() - started

    got = [(s.baskets.pairs, s.k3) for s in report.solutions]
    assert got == [CASES[c] for c in ("C1", "C2", "C3", "C4")]
    minimal = [s for s in report.solutions if s.k3 == F(1, 30)]
    assert len(minimal) == 1
    assert minimal[0].baskets.pairs == ((2, 1), (3, 1), (5, 1))

    rows = {e.pairs: e for e in report.excluded}
    expected_rows = {
        ((2, 1), (2, 1), (2, 1)): (F(1, 2), 5, 9),
        ((2, 1), (2, 1), (3, 1)): (F(1, 3), 4, 7),
        ((2, 1), (2, 1), (4, 1)): (F(1, 4), 4, 6),
        ((2, 1), (3, 1), (3, 1)): (F(1, 6), 3, 5),
        ((5, 2), (2, 1)): (F(3, 10), 4, 7),
        ((5, 2), (3, 1)): (F(2, 15), 3, 5),
        ((7, 3),): (F(2, 7), 4, 7),
        ((8, 3),): (F(1, 8), 3, 5),
    }
    for pairs, (k3, p4, p5) in expected_rows.items():
        row = rows[pairs]
        assert row.k3 == k3 and row.pluri[4] == p4 and row.pluri[5] == p5
    assert elapsed < 5.0
    conclude(3, f"four solutions, eight reference excluded rows, {elapsed:.2f}s at r_max=50")


def test_criterion_04_oracle_equivalence():
    checked = 0
    for filters in ({4: 3, 5: 4}, {4: 4, 5: 7}):
        for r_max in (8, 12):
            report = enumerate_solutions(ConstraintProblem(0, 1, 2, filters, r_max))
            got = sorted((s.baskets.pairs, s.k3) for s in report.solutions)
            want = brute_force_solutions(0, 1, 2, filters, r_max, 3)
            assert got == want
            checked += 1
    conclude(4, f"branch-and-bound matches brute force on {checked} instances")


def test_criterion_05_weighted_examples():
    x28 = WeightedCI((1, 3, 4, 5, 14), (28,))
    x21 = WeightedCI((1, 3, 4, 5, 7), (21,))
    x12_15 = WeightedCI((1, 3, 4, 5, 6, 7), (12, 15))
    assert canonical_volume(x28) == F(1, 30)
    assert canonical_volume(x21) == F(1, 20)
    assert canonical_volume(x12_15) == F(1, 14)
    assert plurigenera_from_hilbert(x28, 5) == {1: 1, 2: 1, 3: 2, 4: 3, 5: 4}
    for x, pairs in (
        (x28, [(2, 1), (3, 1), (5, 1)]),
        (x21, [(4, 1), (5, 2)]),
        (x12_15, [(2, 1), (7, 2)]),
    ):
        assert reid_consistency(x, BasketSet.from_pairs(pairs), 0, 20).passed
    perturbed = reid_consistency(
        x28, BasketSet.from_pairs([(2, 1), (3, 1), (5, 2)]), 0, 20
    )
    assert not perturbed.passed and perturbed.first_mismatch is not None
    conclude(5, "volumes 1/30, 1/20, 1/14; series and baskets agree through m=20")


def test_criterion_06_preset_replays():
    expected = {
        "i-a": (F(2, 3), [(11, F(8, 11))], F(1, 22)),
        "i-b": (F(6, 19), [(10, F(2, 5))], F(3, 40)),
        "i-c": (F(100, 29), [], F(125, 116)),
        "i-d": (F(9, 5), [(11, F(20, 11))], F(5, 22)),
        "ii-a": (F(10, 11), [(13, F(12, 13))], F(1, 25)),
        "ii-b": (F(6, 23), [(12, F(1, 3)), (11, F(4, 11))], F(12, 275)),
        "iii-a": (F(3, 2), [], F(3, 4)),
        "iii-b": (F(8, 9), [(8, F(1))], F(8, 45)),
    }
    assert set(expected) == set(PRESETS)
    for name, (start, steps, volume) in expected.items():
        run = run_preset(name)
        assert run.trace.start == start, name
        assert [(s.m, s.new_bound) for s in run.trace.steps] == steps, name
        assert run.volume == volume, name
    conclude(6, "all eight preset limits, steps and volume bounds are exact")


def test_criterion_07_unit_limit_certificate():
    assert xi_verify_unit_limit(PRESETS["ii-a"].problem, 12) is True
    assert run_preset("ii-a").volume == F(1, 25)
    assert xi_verify_unit_limit(PRESETS["i-a"].problem, 10) is False
    conclude(7, "sup xi >= 1 certified for ii-a (K^3 >= 1/25), refused for i-a")


def test_criterion_08_greedy_dominates_replays():
    for name, preset in PRESETS.items():
        greedy = xi_iterate(preset.problem, m_max=100, round_max=50)
        assert greedy.final >= run_preset(name).trace.final, name
    fixed = xi_iterate(PRESETS["i-a"].problem, m_max=12)
    assert fixed.final == F(3, 4)
    conclude(8, "greedy >= replayed bound for all presets; i-a fixed point 3/4")


def test_criterion_09_slope_chain():
    state = propagate(base_bounds(FIBER_1_2))
    assert {m: state.bounds[m] for m in (4, 5, 7, 9)} == {
        4: F(1, 2), 5: F(1, 2), 7: F(3, 4), 9: F(1),
    }
    assert fiber_volume_bound(state, 9) == F(1, 9)
    conclude(9, "default chain reaches nu(E_9) >= 1, volume bound 1/9")


def test_criterion_10_global_bound_assembly():
    report = prove_main()
    bounds = {b.branch_id: (b.bound, b.strict, b.provenance) for b in report.branches}
    assert bounds["PG_GE_2"] == (F(1, 3), False, AXIOM_CITED)
    assert bounds["Q_POSITIVE"][0] == F(1, 22)
    assert bounds["P5_GE_5"][:2] == (F(1, 25), True)
    assert bounds["P5_LE_4"][0] == F(1, 30)
    assert report.global_bound == F(1, 30)
    assert report.witness.baskets.pairs == ((2, 1), (3, 1), (5, 1))
    conclude(10, "global bound 1/30 with witness {(2,1),(3,1),(5,1)}")


def _random_basket_set(rng, max_size=4, r_lim=24):
    pairs = []
    for _ in range(rng.randrange(0, max_size)):
        r = rng.randrange(2, r_lim)
        b = rng.choice([x for x in range(1, r) if gcd(x, r) == 1])
        pairs.append((r, b))
    return BasketSet.from_pairs(pairs)


def _raw_correction(r, b, m):
    total = F(0)
    for j in range(1, m):
        res = j * b % r
        total += F(res * (r - res), 2 * r)
    return total


def test_criterion_11_property_suites():
    rng = random.Random(20260815)
    cases = 0

    # correction term depends only on the reflection class of b
    for _ in range(3200):
        r = rng.randrange(2, 60)
        b = rng.choice([x for x in range(1, r) if gcd(x, r) == 1])
        m = rng.randrange(1, 14)
        term = correction_term(basket_from_b(r, b), m)
        assert term == _raw_correction(r, b, m) == _raw_correction(r, r - b, m)
        assert 0 <= term <= (m - 1) * F(r, 8)
        cases += 1

    # plurigenus is affine in K^3 and chi with the expected coefficients
    for _ in range(3000):
        baskets = _random_basket_set(rng)
        k3 = F(rng.randrange(1, 60), rng.randrange(1, 60))
        chi = rng.randrange(-4, 5)
        m = rng.randrange(2, 10)
        delta = F(rng.randrange(1, 12), rng.randrange(1, 12))
        base = plurigenus(ReidModel(k3, chi, baskets), m)
        shifted_k3 = plurigenus(ReidModel(k3 + delta, chi, baskets), m)
        shifted_chi = plurigenus(ReidModel(k3, chi + 1, baskets), m)
        assert shifted_k3 - base == delta * m * (m - 1) * (2 * m - 1) / 12
        assert shifted_chi - base == -(2 * m - 1)
        cases += 1

    # every enumerated chi = 0 solution has strictly increasing P_2..P_5
    for p2, p3, r_max in ((1, 2, 12), (1, 3, 10), (1, 4, 10), (2, 4, 8), (2, 7, 8)):
        report = enumerate_solutions(ConstraintProblem(0, p2, p3, (), r_max))
        for sol in report.solutions:
            seq = [sol.pluri[m] for m in range(2, 6)]
            assert seq == sorted(seq) and len(set(seq)) == 4, (p2, p3, sol)
            cases += 3

    # xi traces are strictly increasing and stay under deg_kc + 1
    for _ in range(400):
        prob = XiProblem(
            m0=rng.randrange(1, 9),
            p=rng.randrange(1, 7),
            beta=F(rng.randrange(1, 10), rng.randrange(1, 10)),
            deg_kc=rng.randrange(1, 26),
            beta_is_open_limit=rng.random() < 0.5,
            even_c=rng.random() < 0.5,
        )
        trace = xi_iterate(prob, m_max=25, round_max=12)
        bounds = [trace.start] + [s.new_bound for s in trace.steps]
        assert all(x < y for x, y in zip(bounds, bounds[1:]))
        assert trace.final == bounds[-1] < prob.deg_kc + 1
        for step in trace.steps:
            assert step.alpha0 == ceil(step.alpha)
            assert step.new_bound == F(prob.deg_kc + step.alpha0, step.m)
        cases += 1

    # raising the level-2 base bound never lowers any propagated bound
    base = base_bounds(FIBER_1_2)
    for _ in range(1000):
        raw = rng.randrange(1, 401)
        lo = F(raw, 400)
        hi = F(rng.randrange(raw, 401), 400)
        low_state = propagate(replace(base, bounds={**base.bounds, 2: lo}))
        high_state = propagate(replace(base, bounds={**base.bounds, 2: hi}))
        for level, bound in low_state.bounds.items():
            assert high_state.bounds[level] >= bound
        cases += 1

    # serialization round-trips bit for bit
    conditions = ("ALPHA0_GE_2", "EVEN_DIVISOR")
    reasons = ("PLURI_MISMATCH", "NON_INTEGRAL", "COPRIMALITY", "REDUCEDNESS")
    for _ in range(2600):
        kind = rng.randrange(5)
        if kind == 0:
            value = F(rng.randrange(-10**6, 10**6), rng.randrange(1, 10**6))
            assert parse_rational(rat_str(value)) == value
        elif kind == 1:
            baskets = _random_basket_set(rng)
            assert parse_basket_set(json.loads(serialize(baskets))) == baskets
            for q in baskets:
                assert parse_basket(to_jsonable(q)) == q
        elif kind == 2:
            sol = Solution(
                baskets=_random_basket_set(rng),
                k3=F(rng.randrange(1, 99), rng.randrange(1, 99)),
                pluri={m: rng.randrange(0, 50) for m in range(2, rng.randrange(3, 8))},
                note=rng.choice([None, "no known geometric example"]),
            )
            assert parse_solution(json.loads(serialize(sol))) == sol
        elif kind == 3:
            case = ExcludedCase(
                pairs=_random_basket_set(rng).pairs,
                reason=rng.choice(reasons),
                at_m=rng.choice([None, rng.randrange(2, 9)]),
                k3=rng.choice([None, F(rng.randrange(1, 99), rng.randrange(1, 99))]),
                pluri=rng.choice(
                    [None, {m: F(rng.randrange(0, 40), rng.randrange(1, 7)) for m in (2, 3)}]
                ),
            )
            assert parse_excluded_case(json.loads(serialize(case))) == case
        else:
            steps = tuple(
                XiStep(
                    m=rng.randrange(2, 30),
                    alpha=F(rng.randrange(1, 40), rng.randrange(1, 9)),
                    alpha0=rng.randrange(2, 9),
                    new_bound=F(rng.randrange(1, 40), rng.randrange(1, 40)),
                    condition_used=rng.choice(conditions),
                )
                for _ in range(rng.randrange(0, 4))
            )
            trace = XiTrace(
                start=F(rng.randrange(1, 30), rng.randrange(1, 30)),
                steps=steps,
                final=F(rng.randrange(1, 30), rng.randrange(1, 30)),
                sup_certified=rng.choice([None, F(1)]),
            )
            assert parse_xi_trace(json.loads(serialize(trace))) == trace
            if steps:
                assert parse_xi_step(json.loads(serialize(steps[0]))) == steps[0]
        cases += 1

    assert cases >= 10_000
    total = time.perf_counter() - _T0
    assert total < 10.0
    conclude(11, f"{cases} randomized cases across six invariants in {total:.2f}s (gate total)")
