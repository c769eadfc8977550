from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from e8fold.exactfield import (
    ONE,
    PHI,
    SQRT2,
    SQRT5,
    SQRT10,
    SQRT_PHI,
    ZERO,
    TowerScalar,
    ts_from_parts,
    ts_galois5,
    ts_inv,
    ts_sign,
)
from tests.strategies import golden, tower


def mp_value(x: TowerScalar, dps: int = 60):
    """Independent high-precision evaluation straight from the coefficients."""
    with mpmath.workdps(dps):
        s2, s5 = mpmath.sqrt(2), mpmath.sqrt(5)
        r = mpmath.sqrt((1 + s5) / 2)
        basis = (1, s2, s5, s2 * s5, r, s2 * r, s5 * r, s2 * s5 * r)
        return mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * b for c, b in zip(x.coeffs, basis))


def test_defining_relations():
    assert SQRT2 * SQRT2 == 2
    assert SQRT5 * SQRT5 == 5
    assert SQRT2 * SQRT5 == SQRT10
    assert PHI * PHI == PHI + 1
    assert SQRT_PHI * SQRT_PHI == PHI
    assert (2 * SQRT_PHI) * ts_inv(2 * SQRT_PHI) == ONE


def test_phi_from_parts():
    assert ts_from_parts(0, 1) == (1 + SQRT5) / 2
    assert ts_from_parts(-1, 1) == ONE / PHI


@given(tower, tower, tower)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO


@given(tower)
def test_inverse(a):
    assume(not a.is_zero())
    assert a * ts_inv(a) == ONE
    assert a / a == ONE


@given(tower)
def test_sign_matches_high_precision(a):
    v = mp_value(a)
    expected = 0 if a.is_zero() else (1 if v > 0 else -1)
    assert ts_sign(a) == expected


@given(tower)
def test_float_close_to_exact(a):
    assert float(a) == pytest.approx(float(mp_value(a)), rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("n", [10, 25, 40, 60])
def test_sign_under_heavy_cancellation(n):
    # F(n) * phi - F(n+1) = -(1 - phi)^n, alternating in sign and tiny
    fib = [0, 1]
    while len(fib) < n + 2:
        fib.append(fib[-1] + fib[-2])
    x = fib[n] * PHI - fib[n + 1]
    assert ts_sign(x) == (-1) ** (n + 1)
    assert x == -((1 - PHI) ** n)


def test_ordering_and_abs():
    assert PHI > 1 > ONE / PHI > 0
    assert abs(-SQRT_PHI) == SQRT_PHI
    assert sorted([PHI, ONE, SQRT2]) == [ONE, SQRT2, PHI]


@given(tower)
def test_encode_round_trip(a):
    assert TowerScalar.decode(a.encode()) == a


@given(st.fractions(max_denominator=50))
def test_rational_hash_matches_fraction(q):
    t = TowerScalar.rational(q)
    assert t == q
    assert hash(t) == hash(q)
    assert t.to_fraction() == q


@given(golden, golden)
def test_galois5_is_ring_homomorphism(a, b):
    assert ts_galois5(a * b) == ts_galois5(a) * ts_galois5(b)
    assert ts_galois5(a + b) == ts_galois5(a) + ts_galois5(b)
    assert ts_galois5(ts_galois5(a)) == a


def test_galois5_sends_phi_to_conjugate():
    assert ts_galois5(PHI) == 1 - PHI
    with pytest.raises(ValueError):
        ts_galois5(SQRT_PHI)


def test_bad_construction():
    with pytest.raises(ValueError):
        TowerScalar([1, 2, 3])
    with pytest.raises(ZeroDivisionError):
        ts_inv(ZERO)


def test_interval_encloses_value():
    x = SQRT_PHI * 3 - SQRT10 / 7
    iv = x.interval(200)
    assert iv.a <= mp_value(x, 80) <= iv.b
    assert Fraction(1, 3) == TowerScalar.rational(Fraction(1, 3))
