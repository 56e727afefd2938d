import random
from fractions import Fraction
from itertools import combinations

import pytest

from subproducts.modcore import build_context, primes_up_to
from subproducts.subsetprod import (
    BadDifferenceError,
    NotCoprimeError,
    PrecisionRangeError,
    YOutOfRangeError,
    counts_via_characters,
    coverage_consume,
    coverage_from_residues,
    coverage_threshold,
    enumerate_subset_counts,
    error_report,
    initial_coverage,
    progression_subset_counts,
    subset_product_counts,
    y_of_p,
    y_of_progression,
    y_prime_of_p,
)


def brute_reachable(p, elements):
    """Oracle: subset products by explicit enumeration of all subsets."""
    reached = set()
    elems = [e for e in elements if e % p != 0]
    for r in range(len(elems) + 1):
        for combo in combinations(elems, r):
            prod = 1
            for v in combo:
                prod = prod * v % p
            reached.add(prod)
    return reached


# --- coverage ---------------------------------------------------------------


def test_coverage_consume_examples():
    ctx5 = build_context(5)
    s = coverage_from_residues(ctx5, {1})
    assert coverage_consume(s, 1).residues() == [1]

    s = coverage_from_residues(ctx5, {1, 2, 3})
    assert coverage_consume(s, 4).residues() == [1, 2, 3, 4]

    ctx7 = build_context(7)
    s = coverage_from_residues(ctx7, {1, 2, 3, 6})
    assert coverage_consume(s, 4).residues() == [1, 2, 3, 4, 5, 6]
    # cross-check: exhaustive enumeration over subsets of {1,2,3,4}
    assert set(coverage_consume(s, 4).residues()) == brute_reachable(7, [1, 2, 3, 4])


def test_coverage_rejects_multiples():
    ctx = build_context(5)
    with pytest.raises(NotCoprimeError):
        coverage_consume(initial_coverage(ctx), 10)
    with pytest.raises(NotCoprimeError):
        coverage_from_residues(ctx, {5})


def test_coverage_matches_brute_enumeration():
    for p in (5, 7, 11, 13):
        ctx = build_context(p)
        state = initial_coverage(ctx)
        for y in range(1, 13):
            if y % p != 0:  # callers skip multiples of p
                state = coverage_consume(state, y)
            assert set(state.residues()) == brute_reachable(p, range(1, y + 1))
            assert state.contains(1)


def test_coverage_monotone():
    ctx = build_context(101)
    state = initial_coverage(ctx)
    prev = set(state.residues())
    for n in range(1, 40):
        state = coverage_consume(state, n)
        cur = set(state.residues())
        assert prev <= cur
        prev = cur


def test_y_of_p_examples():
    assert y_of_p(2) == 1
    assert y_of_p(5) == 4
    assert y_of_p(7) == 4


def test_y_of_p_against_brute():
    for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        expected = next(
            y
            for y in range(1, p)
            if brute_reachable(p, range(1, y + 1)) == set(range(1, p))
        )
        assert y_of_p(p) == expected


def test_y_prime_examples():
    assert y_prime_of_p(2) == 1
    assert y_prime_of_p(7) is None  # residue 4 unreachable from {2,3,5}
    # exhaustive oracle over subsets of the primes 2,3,5,7
    assert brute_reachable(11, [2, 3, 5, 7]) == set(range(1, 11))
    assert brute_reachable(11, [2, 3, 5]) != set(range(1, 11))
    assert y_prime_of_p(11) == 7


def test_y_prime_at_least_y():
    for p in primes_up_to(300):
        if p < 3:
            continue
        ctx = build_context(p)
        yp = None
        state = initial_coverage(ctx)
        primes = set(primes_up_to(p - 1))
        for v in range(1, p):
            if v in primes:
                state = coverage_consume(state, v)
            if state.covered:
                yp = v
                break
        assert y_prime_of_p(p) == yp
        if yp is not None:
            assert yp >= coverage_threshold(ctx)


def test_progression_examples():
    assert y_of_progression(5, 1, 1, 10) == 4  # agrees with y_of_p(5)
    assert y_of_progression(5, 5, 5, 10) is None  # every term skipped
    # direct simulation oracle for (p=7, a=2, d=3)
    expected = next(
        (
            y
            for y in range(1, 21)
            if brute_reachable(7, [2 + 3 * j for j in range(y)]) == set(range(1, 7))
        ),
        None,
    )
    assert y_of_progression(7, 2, 3, 20) == expected == 4


def test_progression_bad_difference():
    with pytest.raises(BadDifferenceError):
        y_of_progression(5, 1, 10, 8)


def test_progression_equals_y_of_p():
    for p in (5, 11, 31, 101):
        assert y_of_progression(p, 1, 1, p) == y_of_p(p)


# --- exact counts -----------------------------------------------------------


def test_subset_product_counts_examples():
    assert subset_product_counts(5, 3).counts == (0, 4, 2, 2, 0)
    assert subset_product_counts(3, 2).counts == (0, 2, 2)
    assert subset_product_counts(7, 1).counts == (0, 2, 0, 0, 0, 0, 0)
    with pytest.raises(YOutOfRangeError):
        subset_product_counts(7, 0)


def test_counts_match_enumeration():
    for p in (3, 5, 7, 11, 13):
        for y in range(1, 15):
            assert subset_product_counts(p, y).counts == enumerate_subset_counts(p, y)


def test_counts_mass_conservation():
    rng = random.Random(0)
    for _ in range(60):
        p = rng.choice([q for q in primes_up_to(211) if q >= 3])
        y = rng.randint(1, p - 1)
        counts = subset_product_counts(p, y)
        assert counts.unit_mass() == 2**y
        assert counts.counts[0] == 0


def test_counts_beyond_p_track_zero_products():
    # {1..y} contains multiples of p once y >= p; those subsets land on 0
    counts = subset_product_counts(5, 7)
    assert sum(counts.counts) == 2**7
    assert counts.counts[0] == 2**7 - counts.unit_mass()
    assert counts.counts == enumerate_subset_counts(5, 7)


def test_positivity_boundary_matches_coverage():
    for p in (5, 7, 11, 13, 17, 19, 23, 29, 31):
        threshold = y_of_p(p)
        below = subset_product_counts(p, threshold - 1)
        at = subset_product_counts(p, threshold)
        assert min(below.counts[1:]) == 0
        assert min(at.counts[1:]) > 0
        assert at.reached() == list(range(1, p))


def test_counts_via_characters_examples():
    ctx5 = build_context(5)
    approx = counts_via_characters(ctx5, 3)
    assert approx[1:] == pytest.approx([4, 2, 2, 0], abs=1e-9)
    ctx3 = build_context(3)
    assert counts_via_characters(ctx3, 1)[1:] == pytest.approx([2, 0], abs=1e-9)
    ctx7 = build_context(7)
    assert sum(counts_via_characters(ctx7, 6)[1:]) == pytest.approx(64, abs=1e-6)


def test_counts_via_characters_matches_dp():
    for p in (3, 5, 7, 11, 13):
        ctx = build_context(p)
        for y in range(1, 21):
            exact = subset_product_counts(p, y).counts
            approx = counts_via_characters(ctx, y)
            tol = 1e-6 * 2**y / (p - 1) + 1e-6
            for b in range(1, p):
                assert abs(exact[b] - approx[b]) <= tol


def test_counts_via_characters_precision_guard():
    ctx = build_context(101)
    with pytest.raises(PrecisionRangeError):
        counts_via_characters(ctx, 61)


# --- error reports ----------------------------------------------------------


def test_error_report_examples():
    rep = error_report(5, 3)
    assert rep.main_term == Fraction(8, 4)
    assert rep.max_abs_error == Fraction(2)
    assert rep.normalized_ratio == 6.25

    rep = error_report(3, 2)
    assert rep.max_abs_error == 0
    assert rep.normalized_ratio == 0.0

    rep = error_report(101, 60)
    assert 0 < rep.normalized_ratio < 1


def test_error_report_recomputable():
    rep = error_report(13, 9)
    counts = subset_product_counts(13, 9).counts
    worst = max(abs(Fraction(c) - Fraction(2**9, 12)) for c in counts[1:])
    assert rep.max_abs_error == worst
    assert rep.normalized_ratio == float(worst * 13 * 13 / 2**9)
    with pytest.raises(YOutOfRangeError):
        error_report(13, 13)


def test_progression_counts_zero_term_mode():
    # terms 5,6,7,8 mod 5: one multiple of p; unit mass halves
    pc = progression_subset_counts(5, 5, 1, 4)
    assert pc.zero_terms == 1
    assert sum(pc.counts[1:]) == 2**3
    assert pc.counts[0] == 0
    # against brute enumeration over the nonzero terms
    reached = brute_reachable(5, [5, 6, 7, 8])
    assert {b for b in range(1, 5) if pc.counts[b] > 0} == reached

    plain = progression_subset_counts(7, 1, 1, 5)
    assert plain.zero_terms == 0
    assert plain.counts == subset_product_counts(7, 5).counts
