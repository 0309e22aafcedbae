"""Smoke tests for the Python module."""

import math
from fractions import Fraction

import pytest

import frobsum


@pytest.fixture(scope="module")
def sieve():
    return frobsum.FactorSieve(10_000)


def test_sieve_tables(sieve):
    assert sieve.limit == 10_000
    assert sieve.spf(30) == 2
    assert sieve.pmax(30) == 5
    assert sieve.mobius(6) == 1
    assert sieve.mobius(4) == 0
    assert sieve.distinct_primes(30) == [2, 3, 5]
    assert sieve.is_prime(9973)
    with pytest.raises(frobsum.RangeError):
        sieve.spf(10_001)
    with pytest.raises(frobsum.CapacityError):
        frobsum.FactorSieve(1)


def test_mertens(sieve):
    assert sieve.mertens_weighted_exact(4) == Fraction(1, 6)
    assert math.isclose(sieve.mertens_weighted(4), 1 / 6, rel_tol=1e-12)


def test_polynomial_and_patterns():
    f = frobsum.IntPolynomial("x^4+x+1")
    assert f.degree == 4
    assert f.discriminant == 229
    assert frobsum.classify_prime(f, 2) == [4]
    assert frobsum.classify_prime(f, 229) is None  # ramified
    assert frobsum.symmetric_density([3, 1], 4) == Fraction(1, 3)
    with pytest.raises(ValueError):
        frobsum.IntPolynomial("x^2-2x+1")  # (x-1)^2


def test_min_mobius_matches_mertens_identity(sieve):
    sel = frobsum.ClassSelector.all_primes()
    out = frobsum.min_mobius_sum(sieve, sel, 1000, [100, 1000], exact=True)
    for row in out["checkpoints"]:
        assert row["value_exact"] == 1 - Fraction(sieve.mertens_weighted_exact(row["x"]))


def test_pattern_selector_series(sieve):
    f = frobsum.IntPolynomial("x^4+x+1")
    sel = frobsum.ClassSelector.pattern_set(f, [[4], [2, 2]], ramified="root-count")
    assert sel.target_density == Fraction(3, 8)
    out = frobsum.min_mobius_sum(sieve, sel, 10_000, [10_000])
    assert abs(out["checkpoints"][0]["value"] - 0.375) < 0.01


def test_smooth_counts(sieve):
    assert frobsum.psi_exact(sieve, 30, 5) == 18
    table = frobsum.DickmanTable(beta_max=8.0)
    assert table.rho(0.5) == 1.0
    assert math.isclose(table.rho(2.0), 1 - math.log(2), abs_tol=1e-9)
    assert table.rho(3.0) <= frobsum.rho_upper_bound(3.0)
    est = frobsum.hildebrand_estimate(table, 10_000, 100)
    assert math.isclose(est, 10_000 * table.rho(2.0), rel_tol=1e-12)


def test_exact_identities(sieve):
    lhs, rhs, equal = frobsum.tetris_identity(sieve, 100, 2)
    assert equal and lhs == rhs
    f = {3: Fraction(1)}
    l1, r1, l2, r2, ok = frobsum.duality_check(sieve, 6, f)
    assert ok and l1 == r1 == 0 and l2 == r2 == -1


def test_prime_counts(sieve):
    sel = frobsum.ClassSelector.residue_set(4, [1])
    count, li_scaled = frobsum.prime_count_class(sieve, sel, 100)
    assert count == 11
    assert math.isclose(li_scaled, 0.5 * frobsum.li(100.0), rel_tol=1e-12)


def test_fit_convergence():
    xs = [10**k for k in range(3, 8)]
    errs = [math.exp(-2 * math.log(x) ** (1 / 3)) for x in xs]
    exact, k_hat, quality = frobsum.fit_convergence(xs, errs)
    assert not exact
    assert math.isclose(k_hat, 2.0, abs_tol=1e-6)
    assert quality > 0.999
