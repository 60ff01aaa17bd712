from fractions import Fraction
from math import gcd

import pytest

from canvol.baskets import BasketSet, Infeasible
from canvol.classify import (
    REASON_COPRIMALITY,
    REASON_NON_INTEGRAL,
    REASON_PLURI_MISMATCH,
    REASON_REDUCEDNESS,
    SMALL_P5_UNREALIZED,
    ConstraintProblem,
    basket_count_bound,
    classify_small_p5,
    enumerate_solutions,
)
from oracle import brute_force_solutions


def pairs_of(report):
    return [s.baskets.pairs for s in report.solutions]


def test_basket_count_bound():
    assert basket_count_bound(1, 0) == 3
    assert basket_count_bound(2, 0) == 7
    with pytest.raises(Infeasible):
        basket_count_bound(3, -1)


def test_problem_normalizes_filters():
    prob = ConstraintProblem(0, 1, 2, {5: 4, 4: 3})
    assert prob.filters == ((4, 3), (5, 4))
    assert prob.filter_map == {4: 3, 5: 4}
    with pytest.raises(ValueError):
        ConstraintProblem(0, 1, 2, {3: 2})
    with pytest.raises(ValueError):
        ConstraintProblem(0, 1, 2, (), r_max=1)


def test_enumerate_rejects_negative_sigma():
    with pytest.raises(Infeasible):
        enumerate_solutions(ConstraintProblem(0, 1, 9))


def test_reference_instance_solutions():
    report = classify_small_p5()
    assert report.sigma == 3
    assert report.tau_offset == 1
    assert report.n_max == 3
    assert report.truncation_flag is True

    expected = [
        (((2, 1), (3, 1), (4, 1)), Fraction(1, 12)),
        (((2, 1), (3, 1), (5, 1)), Fraction(1, 30)),
        (((2, 1), (7, 2)), Fraction(1, 14)),
        (((4, 1), (5, 2)), Fraction(1, 20)),
    ]
    assert [(s.baskets.pairs, s.k3) for s in report.solutions] == expected
    for sol in report.solutions:
        assert sol.pluri == {2: 1, 3: 2, 4: 3, 5: 4}
    assert all(sol.k3 <= Fraction(1, 2) for sol in report.solutions)

    notes = {s.baskets.pairs: s.note for s in report.solutions}
    assert notes[SMALL_P5_UNREALIZED.pairs] == "no known geometric example"
    assert notes[((2, 1), (3, 1), (5, 1))] is None


def test_reference_instance_exclusions():
    report = classify_small_p5()
    by_pairs = {e.pairs: e for e in report.excluded}

    def check(pairs, at_m, k3, p4=None, p5=None):
        row = by_pairs[pairs]
        assert row.reason == REASON_PLURI_MISMATCH
        assert row.at_m == at_m
        assert row.k3 == k3
        if p4 is not None:
            assert row.pluri[4] == p4
        if p5 is not None:
            assert row.pluri[5] == p5

    # excluded rows keep the raw walk order: largest reduced weight first
    check(((2, 1), (2, 1), (2, 1)), 4, Fraction(1, 2), p4=5, p5=9)
    check(((2, 1), (2, 1), (3, 1)), 4, Fraction(1, 3), p4=4, p5=7)
    check(((2, 1), (3, 1), (3, 1)), 5, Fraction(1, 6), p4=3, p5=5)
    check(((5, 2), (2, 1)), 4, Fraction(3, 10))
    check(((5, 2), (3, 1)), 5, Fraction(2, 15), p4=3, p5=5)
    check(((7, 3),), 4, Fraction(2, 7))
    check(((8, 3),), 5, Fraction(1, 8), p4=3)

    family = [
        e
        for e in report.excluded
        if len(e.pairs) == 3
        and e.pairs[:2] == ((2, 1), (2, 1))
        and e.pairs[2][0] >= 4
    ]
    assert len(family) == 47
    for row in family:
        r = row.pairs[2][0]
        assert row.pairs[2] == (r, 1)
        assert row.reason == REASON_PLURI_MISMATCH
        assert row.at_m == 4
        assert row.k3 == Fraction(1, r)
        assert row.pluri[4] == 4
        assert row.pluri[5] == 6

    coprime = {e.pairs for e in report.excluded if e.reason == REASON_COPRIMALITY}
    assert ((6, 3),) in coprime  # r = 2b' passes reducedness but shares a factor
    for row in report.excluded:
        if row.reason in (REASON_COPRIMALITY, REASON_REDUCEDNESS):
            assert row.k3 is None and row.pluri is None


def test_structural_rows_flag_the_offending_pair():
    report = classify_small_p5()
    reduced = [e for e in report.excluded if e.reason == REASON_REDUCEDNESS]
    coprime = [e for e in report.excluded if e.reason == REASON_COPRIMALITY]
    assert reduced and coprime
    for row in reduced:
        r, b = row.pairs[-1]
        assert r < 2 * b
    for row in coprime:
        r, b = row.pairs[-1]
        assert gcd(r, b) > 1 and r >= 2 * b


def test_alternate_filters_give_three_solutions():
    prob = ConstraintProblem(0, 1, 2, {4: 4, 5: 7}, r_max=10)
    report = enumerate_solutions(prob)
    assert pairs_of(report) == [
        ((2, 1), (2, 1), (3, 1)),
        ((2, 1), (5, 2)),
        ((7, 3),),
    ]
    assert [s.k3 for s in report.solutions] == [
        Fraction(1, 3),
        Fraction(3, 10),
        Fraction(2, 7),
    ]


def test_unfiltered_run_keeps_integral_tables():
    prob = ConstraintProblem(0, 1, 2, (), r_max=6)
    report = enumerate_solutions(prob)
    assert report.truncation_flag is True
    for sol in report.solutions:
        assert sol.pluri[2] == 1 and sol.pluri[3] == 2
        assert all(isinstance(v, int) for v in sol.pluri.values())
    # the two-node family (2,1),(2,1),(r,1) survives when no filters are set
    assert ((2, 1), (2, 1), (4, 1)) in pairs_of(report)
    non_integral = [e for e in report.excluded if e.reason == REASON_NON_INTEGRAL]
    for row in non_integral:
        assert row.pluri[row.at_m].denominator > 1


def test_matches_brute_force_reference():
    for filters in ({4: 3, 5: 4}, {4: 4, 5: 7}):
        for r_max in (8, 12):
            prob = ConstraintProblem(0, 1, 2, filters, r_max=r_max)
            report = enumerate_solutions(prob)
            got = sorted((s.baskets.pairs, s.k3) for s in report.solutions)
            want = brute_force_solutions(0, 1, 2, filters, r_max, 3)
            assert got == want


def test_brute_force_size_cap_is_not_binding():
    # raising the multiset size cap past the derived bound adds nothing
    want3 = brute_force_solutions(0, 1, 2, {4: 3, 5: 4}, 8, 3)
    want4 = brute_force_solutions(0, 1, 2, {4: 3, 5: 4}, 8, 4)
    assert want3 == want4


def test_enumeration_is_deterministic():
    a = classify_small_p5()
    b = classify_small_p5()
    assert a == b
    assert a.partitions_examined == ((3,), (2, 1), (1, 1, 1))
