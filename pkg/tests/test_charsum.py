import math

import pytest
from hypothesis import given, strategies as st

from hamprim.charsum import (BOUND_PATTERNS, check_residue_counts, check_triple_bounds, eta_cubic_sum,
                             eta_cubic_sums, eta_quadratic_expected, eta_quadratic_sums, eta_sum,
                             lower_bound, residue_intersection_counts, triple_count,
                             triple_count_matrix, upper_bound)
from hamprim.ff import is_prime

from oracles import nonsquares_mod, squares_mod

SMALL_PRIMES = [q for q in range(3, 80) if is_prime(q)]


def _brute_counts(q):
    S, N = squares_mod(q), nonsquares_mod(q)
    shift = lambda A, c: {(x + c) % q for x in A}
    return (len(shift(S, 1) & {(-x) % q for x in S}), len(S & shift(S, 1)), len(N & shift(N, 1)),
            len(S & shift(N, 1)), len(S & shift(N, -1)))


@pytest.mark.parametrize("q", SMALL_PRIMES)
def test_counts_match_set_oracle(q):
    rc = residue_intersection_counts(q)
    assert (rc.c_sp1_minus_s, rc.c_ss, rc.c_nn, rc.c_sn_plus, rc.c_sn_minus) == _brute_counts(q)
    assert check_residue_counts(rc) == []


def test_count_examples():
    assert residue_intersection_counts(7).c_sp1_minus_s == 2
    assert residue_intersection_counts(13).c_ss == 2
    assert residue_intersection_counts(5).c_sp1_minus_s == 0


def test_tampered_counts_are_reported():
    rc = residue_intersection_counts(13)
    bad = type(rc)(rc.q, rc.c_sp1_minus_s + 1, rc.c_ss, rc.c_nn, rc.c_sn_plus, rc.c_sn_minus)
    assert check_residue_counts(bad) == ["sp1_minus_s"]


def test_rejects_non_primes():
    for q in (2, 9, 15):
        with pytest.raises(ValueError):
            residue_intersection_counts(q)


def test_bound_examples():
    assert upper_bound(7) == math.ceil((7 + 11 + 2 * math.sqrt(7)) / 8) == 3
    assert triple_count(7, 1, 2, ("S", "S", "N")) <= 3
    assert lower_bound(11) <= 0 <= triple_count(11, 1, 2, ("N", "N", "S"))
    assert all(r.holds for r in check_triple_bounds(199))


@pytest.mark.parametrize("q", [5, 7, 11, 13, 17, 23])
def test_triple_matrix_matches_pointwise(q):
    S, N = squares_mod(q), nonsquares_mod(q)
    cls = {"S": S, "N": N}
    for *pattern, _ in BOUND_PATTERNS:
        M = triple_count_matrix(q, tuple(pattern))
        for a in range(1, q):
            for b in range(1, q):
                if a == b:
                    continue
                brute = sum(1 for x in range(q) if (x - a) % q in cls[pattern[0]]
                            and (x - b) % q in cls[pattern[1]] and x in cls[pattern[2]])
                assert M[a, b] == brute == triple_count(q, a, b, tuple(pattern))


def test_triple_count_rejects_degenerate_shifts():
    with pytest.raises(ValueError):
        triple_count(7, 2, 2, ("S", "S", "N"))
    with pytest.raises(ValueError):
        triple_count(7, 0, 2, ("S", "S", "N"))


def test_cubic_examples():
    assert eta_cubic_sum(7, 0) == 1
    assert abs(eta_cubic_sum(7, 1)) <= 5
    assert abs(eta_cubic_sum(13, 2)) <= 7
    assert list(eta_cubic_sums(11)) == [eta_cubic_sum(11, t) for t in range(11)]


@pytest.mark.parametrize("q", SMALL_PRIMES)
def test_character_identities(q):
    assert eta_sum(q) == 0
    assert (eta_quadratic_sums(q) == eta_quadratic_expected(q)).all()


@given(st.sampled_from(SMALL_PRIMES), st.data())
def test_weil_bound_for_cubics(q, data):
    t = data.draw(st.integers(2, q - 1))
    assert eta_cubic_sum(q, t) ** 2 <= 4 * q


@given(st.sampled_from(SMALL_PRIMES), st.data())
def test_quadratic_sum_single_entry(q, data):
    A, B = data.draw(st.integers(0, q - 1)), data.draw(st.integers(0, q - 1))
    S = squares_mod(q)
    eta = lambda v: 0 if v % q == 0 else (1 if v % q in S else -1)
    brute = sum(eta(x * x + A * x + B) for x in range(q))
    assert brute == (q - 1 if (A * A - 4 * B) % q == 0 else -1)
