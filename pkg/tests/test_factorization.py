import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zsl.factorization import (
    CrtProjection,
    build_projection,
    factor,
    is_excluded_modulus,
    prime_power,
    sign_flip_holds,
    two_adic,
    valid_twists,
)

ALL_PAIRS = [(n, s) for n in range(2, 201) for s in valid_twists(n)]


@pytest.mark.parametrize(
    "n, s, n1, n2, case",
    [(8, 3, 4, 1, "B"), (8, 5, 1, 4, "B"), (15, 4, 5, 3, "A"), (12, 5, 3, 4, "A"), (12, 7, 4, 3, "A")],
)
def test_factor_examples(n, s, n1, n2, case):
    f = factor(n, s)
    assert (f.n1, f.n2, f.case) == (n1, n2, case)
    assert f.check() == []


def test_projection_examples():
    psi = build_projection(factor(15, 4))
    assert psi.apply(7) == (2, 1)
    assert psi.apply(4 * 7) == (3, 1)
    assert psi.is_bijective()
    two_to_one = build_projection(factor(8, 3))
    assert two_to_one.fibre_sizes() == {2}
    assert not two_to_one.is_bijective()


def test_factor_rejects_other_pairs():
    for n, s in [(8, 7), (8, 1), (8, 2)]:
        with pytest.raises(ValueError):
            factor(n, s)


def test_pairs_exist_and_start_at_eight():
    assert ALL_PAIRS
    assert min(n for n, _ in ALL_PAIRS) == 8


def test_invariants_for_every_pair_up_to_200():
    for n, s in ALL_PAIRS:
        f = factor(n, s)
        assert f.check() == [], (n, s)
        assert sign_flip_holds(f), (n, s)
        psi = build_projection(f)
        assert psi.fibre_sizes() == ({1} if f.case == "A" else {2}), (n, s)


def test_t_equals_one_convention():
    # the 2 goes to whichever side s+1 or s-1 is divisible by
    for n, s in ALL_PAIRS:
        f = factor(n, s)
        if f.t == 1:
            assert (f.n1 % 2 == 0) == ((s + 1) % (2 * f.m1) == 0)


def test_small_factor_exceptions():
    """Some pairs have no split with both factors >= 3; the invariants still hold."""
    odd = [(n, s) for n, s in ALL_PAIRS if min(factor(n, s).n1, factor(n, s).n2) < 3]
    assert (24, 11) in odd and (24, 13) in odd
    f = factor(24, 11)
    assert (f.n1, f.n2, f.case) == (12, 1, "B")
    # exhaustively: no coprime split n = n1 n2 or 2 n1 n2 with both parts >= 3 works for (24, 11)
    for c in (1, 2):
        for n1 in range(3, 25):
            if 24 % (c * n1):
                continue
            n2 = 24 // (c * n1)
            if n2 >= 3 and math.gcd(n1, n2) == 1:
                assert (11 + 1) % n1 or (11 - 1) % n2


def test_excluded_moduli_have_no_twists():
    for n in range(2, 201):
        if is_excluded_modulus(n):
            assert valid_twists(n) == [], n


def test_excluded_modulus_examples():
    assert is_excluded_modulus(9) and is_excluded_modulus(18) and is_excluded_modulus(7)
    assert not is_excluded_modulus(8) and not is_excluded_modulus(15) and not is_excluded_modulus(36)
    assert prime_power(27) == (3, 3)
    assert prime_power(12) is None


@given(st.integers(1, 10**6))
def test_two_adic(n):
    t, m = two_adic(n)
    assert m % 2 == 1 and m << t == n


@given(st.integers(1, 40), st.integers(1, 40), st.integers(-10**4, 10**4))
def test_crt_round_trip_when_coprime(n1, n2, k):
    psi = CrtProjection(n1 * n2, n1, n2)
    if math.gcd(n1, n2) == 1:
        assert psi.apply(k) == psi.apply(k % (n1 * n2))
        assert psi.is_bijective()
