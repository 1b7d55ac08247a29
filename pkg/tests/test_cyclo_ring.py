import cmath
import json
import math

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclodet import IntegrityError, NonRationalError, ParameterError
from cyclodet.cyclo_ring import (
    CycInt,
    as_integer,
    cyclotomic_poly,
    embed,
    euler_phi,
    exact_div,
    galois_apply,
    units,
    zeta_pow,
)


def value(a: CycInt, s: int = 1) -> complex:
    """Complex embedding zeta_m -> exp(2 pi i s/m), evaluated with cmath."""
    z = cmath.exp(2j * math.pi * s / a.m)
    return sum(c * z**i for i, c in enumerate(a.coeffs))


def close(a, b, tol=1e-7):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def z(m, e=1):
    return zeta_pow(m, e)


def test_phi_examples():
    assert cyclotomic_poly(5) == [1, 1, 1, 1, 1]
    assert cyclotomic_poly(6) == [1, -1, 1]
    assert cyclotomic_poly(1) == [-1, 1]


@pytest.mark.parametrize("m", range(1, 121))
def test_phi_matches_sympy(m):
    T = sympy.Symbol("T")
    expected = sympy.Poly(sympy.cyclotomic_poly(m, T), T).all_coeffs()[::-1]
    assert cyclotomic_poly(m) == [int(c) for c in expected]
    assert euler_phi(m) == sympy.totient(m)


def test_golden_product():
    t1 = z(5) + z(5, 4)
    t2 = z(5, 2) + z(5, 3)
    assert t1 * t2 == CycInt.from_int(5, -1)


def test_zeta_pow_examples():
    assert zeta_pow(5, 5) == 1
    assert zeta_pow(5, 4) == CycInt(5, [-1, -1, -1, -1])
    assert zeta_pow(6, 3) == -1
    assert zeta_pow(12, -1) * zeta_pow(12, 1) == 1


def test_galois_examples():
    theta = z(5) + z(5, 4)
    assert galois_apply(2, theta) == z(5, 2) + z(5, 3)
    assert galois_apply(1, theta) == theta
    with pytest.raises(ParameterError):
        galois_apply(2, z(6))


def test_embed_examples():
    assert embed(CycInt.from_int(3, 7), 6) == CycInt.from_int(6, 7)
    assert embed(z(3), 6) == z(6, 2) == z(6) - 1
    with pytest.raises(ParameterError):
        embed(z(4), 6)


def test_exact_div_examples():
    a = CycInt.from_int(5, 1) + z(5)
    b = CycInt.from_int(5, 2) + z(5, 2) * 3
    assert exact_div(a * b, b) == a
    assert exact_div(CycInt.zero(5), b) == 0
    with pytest.raises(IntegrityError):
        exact_div(CycInt.one(5), CycInt.from_int(5, 2))
    with pytest.raises(IntegrityError):
        exact_div(CycInt.one(7), CycInt.one(7) - z(7))  # 1 - zeta is not a unit
    with pytest.raises(ZeroDivisionError):
        exact_div(a, CycInt.zero(5))


def test_as_integer_examples():
    assert as_integer(z(5) + z(5, 2) + z(5, 3) + z(5, 4)) == -1
    assert as_integer(CycInt.from_int(9, 42)) == 42
    with pytest.raises(NonRationalError) as err:
        as_integer(z(5))
    assert "5" in str(err.value)


@pytest.mark.parametrize("m", range(1, 61))
def test_phi_vanishes_at_zeta(m):
    coeffs = cyclotomic_poly(m)
    acc = CycInt.zero(m)
    for i, c in enumerate(coeffs):
        acc = acc + zeta_pow(m, i) * c
    assert acc == 0


@pytest.mark.parametrize("m", [7, 12, 15, 20, 42])
def test_galois_orbit_of_zeta_is_distinct(m):
    orbit = {galois_apply(s, z(m)) for s in units(m)}
    assert len(orbit) == euler_phi(m)
    assert orbit == {zeta_pow(m, s) for s in units(m)}


def test_conductor_mismatch():
    with pytest.raises(ParameterError):
        z(5) + z(7)
    with pytest.raises(ParameterError):
        CycInt(5, [1, 2])


def test_json_round_trip():
    a = z(12, 5) * 3 - 7
    assert CycInt.from_json(a.to_json()) == a
    assert CycInt.from_json(json.dumps(a.to_json())) == a


# --- properties ---

CONDUCTORS = [5, 6, 12, 20, 30]


@st.composite
def cycints(draw, m=None, lo=-6, hi=6):
    m = m if m is not None else draw(st.sampled_from(CONDUCTORS))
    vec = draw(st.lists(st.integers(lo, hi), min_size=m, max_size=m))
    return CycInt.from_vector(m, vec)


@st.composite
def same_conductor(draw, count):
    m = draw(st.sampled_from(CONDUCTORS))
    return [draw(cycints(m)) for _ in range(count)]


@settings(max_examples=80, deadline=None)
@given(same_conductor(3))
def test_ring_axioms(xs):
    a, b, c = xs
    assert a + (-a) == 0
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=80, deadline=None)
@given(same_conductor(2))
def test_multiplication_matches_complex_values(xs):
    a, b = xs
    for s in units(a.m):
        assert close(value(a * b, s), value(a, s) * value(b, s))


@settings(max_examples=60, deadline=None)
@given(same_conductor(2), st.integers(0, 200))
def test_galois_is_a_homomorphism(xs, r):
    a, b = xs
    us = units(a.m)
    s = us[r % len(us)]
    assert galois_apply(s, a * b) == galois_apply(s, a) * galois_apply(s, b)
    assert galois_apply(s, a + b) == galois_apply(s, a) + galois_apply(s, b)
    assert close(value(galois_apply(s, a)), value(a, s))


@settings(max_examples=60, deadline=None)
@given(same_conductor(2), st.integers(2, 4))
def test_embed_is_a_homomorphism(xs, factor):
    a, b = xs
    big = a.m * factor
    assert embed(a * b, big) == embed(a, big) * embed(b, big)
    assert close(value(embed(a, big)), value(a))


@settings(max_examples=60, deadline=None)
@given(same_conductor(2))
def test_exact_div_round_trip(xs):
    a, b = xs
    if not b:
        return
    assert exact_div(a * b, b) == a
    assert (a * b) // b == a


@settings(max_examples=60, deadline=None)
@given(cycints())
def test_conj_is_complex_conjugate(a):
    assert close(value(a.conj()), value(a).conjugate())
    n = a * a.conj()
    assert close(value(n).imag, 0.0, 1e-6)
