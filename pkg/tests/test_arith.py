import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from prorel.arith import (INFINITE, PadicInt, is_prime, padic_exp, padic_log, power_exponent_report,
                          solve_power_exponent, unit_pow, unit_power_valuation, vp)
from prorel.errors import DomainError, InvalidParameter

primes = st.sampled_from([2, 3, 5, 7, 11])


def test_vp_examples():
    assert vp(63, 3) == 2
    assert vp(1, 5) == 0
    assert vp(0, 3) is INFINITE
    assert vp(-250, 5) == 3


def test_infinite_compares_above_integers():
    assert INFINITE > 10**9
    assert not INFINITE < 3
    assert INFINITE + 4 is INFINITE


def test_vp_rejects_composite_base():
    with pytest.raises(InvalidParameter):
        vp(12, 4)


@given(st.integers(min_value=1, max_value=10**12), primes)
def test_vp_matches_repeated_division(n, p):
    e = 0
    while n % p**(e + 1) == 0:
        e += 1
    assert vp(n, p) == e


@given(st.integers(-10**6, 10**6).filter(bool), st.integers(-10**6, 10**6).filter(bool), primes)
def test_vp_is_additive(a, b, p):
    assert vp(a * b, p) == vp(a, p) + vp(b, p)


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_unit_power_valuation_examples():
    assert unit_power_valuation(3, 3, 3) == 2
    assert unit_power_valuation(3, 3, 1) == 1
    assert unit_power_valuation(2, 4, 2) == 3


def test_unit_power_valuation_domain():
    with pytest.raises(DomainError):
        unit_power_valuation(2, 2, 2)  # v_2(2) = 1 < 2, and indeed v_2(3^2 - 1) = 3 != 2
    with pytest.raises(DomainError):
        unit_power_valuation(3, 1, 5)


@given(primes, st.integers(1, 6), st.integers(1, 500).filter(bool), st.integers(1, 2000), st.booleans())
def test_unit_power_valuation_identity(p, e, unit, n, neg):
    assume(unit % p)
    e = max(e, 2) if p == 2 else e
    alpha = p**e * unit * (-1 if neg else 1)
    assert unit_power_valuation(p, alpha, n) == e + vp(n, p)


def test_log_exp_examples():
    assert padic_log(PadicInt(3, 6, 1)).residue == 0
    assert padic_exp(padic_log(PadicInt(3, 6, 4))).congruent(4)
    assert padic_exp(padic_log(PadicInt(3, 6, 7))).congruent(7)
    assert padic_log(padic_exp(PadicInt(5, 8, 5))).congruent(5)


def test_log_is_a_homomorphism():
    lhs = padic_log(PadicInt(3, 6, 28))
    rhs = padic_log(PadicInt(3, 6, 4)) + padic_log(PadicInt(3, 6, 7))
    assert lhs.congruent(rhs.residue)


def test_log_domain():
    with pytest.raises(DomainError):
        padic_log(PadicInt(3, 5, 2))
    with pytest.raises(DomainError):
        padic_log(PadicInt(2, 5, 3))
    with pytest.raises(DomainError):
        padic_exp(PadicInt(3, 5, 1))


@given(st.sampled_from([3, 5, 7]), st.integers(1, 300))
def test_log_against_power_quotient(p, t):
    # log(u) = (u^(p^n) - 1) / p^n + O(p^(2(n+1)-n)), an oracle independent of the series
    u = 1 + p * t
    N = 6
    n = N + 2
    q = p**n
    approx = (pow(u, q, p**(2 * n + 2)) - 1) // q
    assert padic_log(PadicInt(p, N, u)).congruent(approx)


@given(st.sampled_from([3, 5, 7]), st.integers(1, 10**4), st.integers(2, 10))
def test_exp_log_round_trip(p, t, N):
    u = 1 + p * t
    assert padic_exp(padic_log(PadicInt(p, N, u))).congruent(u)


def test_solve_examples():
    v = solve_power_exponent(3, 1, 1, 8)
    assert v.residue == 1
    v = solve_power_exponent(3, 1, 2, 6)
    assert v.precision == 5
    assert (pow(7, v.residue, 3**5) - 4) % 3**5 == 0


def test_solve_domain():
    with pytest.raises(DomainError):
        solve_power_exponent(3, 1, 3, 6)
    with pytest.raises(DomainError):
        solve_power_exponent(2, 1, 1, 6)
    with pytest.raises(InvalidParameter):
        solve_power_exponent(3, 2, 1, 2)


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 3), st.integers(1, 10**3), st.integers(4, 14))
def test_solve_power_exponent(p, k, u, N):
    k = max(k, 2) if p == 2 else k
    assume(u % p and N > k)
    v = solve_power_exponent(p, k, u, N)
    assert v.precision == N - k
    assert (unit_pow(1 + p**k * u, v, N) - (1 + p**k)) % p**N == 0


def test_power_exponent_report_passes():
    rep = power_exponent_report(5, 2, 3, 12)
    assert rep.passed
    assert rep.data["v_precision"] == 10
