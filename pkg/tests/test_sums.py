import cmath
import math

import pytest
from sympy import primerange

from cyclodet import ParameterError
from cyclodet.cyclo_ring import CycInt, embed, zeta_pow
from cyclodet.fp_base import DivisorPair, make_prime_context, valid_pairs
from cyclodet.sums import (
    char_at_minus_one,
    check_gauss_conjugate_product,
    check_gauss_jacobi_factorization,
    check_gauss_jacobi_relation,
    check_jacobi_norm,
    gauss_matrix,
    gauss_sum,
    jacobi_sum,
    matrix_X,
    matrix_Y,
)

from oracles import gauss_c, jacobi_c


def value(a: CycInt) -> complex:
    zz = cmath.exp(2j * math.pi / a.m)
    return sum(c * zz**i for i, c in enumerate(a.coeffs))


def test_gauss_p3():
    ctx = make_prime_context(3)
    g = gauss_sum(ctx, 1)
    z3 = embed(zeta_pow(3, 1), 6)
    assert g == z3 - z3 * z3
    assert (g * g).to_int() == -3


def test_gauss_trivial_is_minus_one():
    for p in (3, 5, 7, 31):
        assert gauss_sum(make_prime_context(p), 0) == -1


def test_quadratic_gauss_p5():
    ctx = make_prime_context(5)
    g = gauss_sum(ctx, 2)
    assert (g * g).to_int() == 5


def test_jacobi_examples():
    assert jacobi_sum(make_prime_context(3), 1, 1) == 1
    for p in (3, 5, 7, 13):
        assert jacobi_sum(make_prime_context(p), 0, 0) == p - 2
    assert jacobi_sum(make_prime_context(5), 2, 2) == -1


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_sums_match_brute_force(p):
    ctx = make_prime_context(p)
    for a in range(p - 1):
        assert abs(value(gauss_sum(ctx, a)) - gauss_c(p, ctx.g, a)) < 1e-8
        for b in range(p - 1):
            assert abs(value(jacobi_sum(ctx, a, b)) - jacobi_c(p, ctx.g, a, b)) < 1e-8


def test_matrix_examples():
    assert matrix_X(make_prime_context(5), DivisorPair.from_k(5, 2)).to_int_rows() == [[-1]]
    assert matrix_X(make_prime_context(7), DivisorPair.from_k(7, 3)).to_int_rows() == [[1]]
    assert matrix_X(make_prime_context(3), DivisorPair.from_k(3, 1)).to_int_rows() == [[1]]
    assert matrix_Y(make_prime_context(5), DivisorPair.from_k(5, 2)).to_int_rows() == [[3, -1], [-1, -1]]


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17])
def test_matrix_Y_border(p):
    ctx = make_prime_context(p)
    for pair in valid_pairs(p):
        Y = matrix_Y(ctx, pair)
        assert Y[0, 0] == p - 2
        assert all(Y[0, j] == -1 and Y[j, 0] == -1 for j in range(1, pair.n))
        assert Y.is_symmetric() and matrix_X(ctx, pair).is_symmetric()


def test_gauss_matrix_examples():
    ctx3 = make_prime_context(3)
    pair3 = DivisorPair.from_k(3, 1)
    g = gauss_sum(ctx3, 1)
    mat = gauss_matrix(ctx3, pair3, include_zero=True)
    assert mat.rows == [[CycInt.from_int(6, -1), g], [g, CycInt.from_int(6, -1)]]
    # chi^4 is trivial for p = 5, so the 1x1 matrix holds G(eps) = -1
    ctx5 = make_prime_context(5)
    assert gauss_matrix(ctx5, DivisorPair.from_k(5, 2), include_zero=False).rows == [[CycInt.from_int(20, -1)]]
    for p in (7, 11, 13):
        ctx = make_prime_context(p)
        for pair in valid_pairs(p):
            for iz in (True, False):
                assert gauss_matrix(ctx, pair, iz).is_symmetric()


def test_gauss_jacobi_relation_examples():
    ctx5 = make_prime_context(5)
    assert check_gauss_jacobi_relation(ctx5, 1, 1)
    assert check_gauss_jacobi_relation(ctx5, 1, 3)
    ctx7 = make_prime_context(7)
    assert all(check_gauss_jacobi_relation(ctx7, a, b) for a in range(6) for b in range(6) if a or b)
    with pytest.raises(ParameterError):
        check_gauss_jacobi_relation(ctx7, 0, 0)


@pytest.mark.parametrize("p", list(primerange(3, 20)))
def test_conjugate_product(p):
    ctx = make_prime_context(p)
    for j in range(1, p - 1):
        assert check_gauss_conjugate_product(ctx, j)
        assert (gauss_sum(ctx, j) * gauss_sum(ctx, j).conj()) == p
    with pytest.raises(ParameterError):
        check_gauss_conjugate_product(ctx, 0)


@pytest.mark.parametrize("p", list(primerange(3, 32)))
def test_jacobi_norm(p):
    ctx = make_prime_context(p)
    m = p - 1
    for a in range(1, m):
        for b in range(1, m):
            if (a + b) % m:
                assert check_jacobi_norm(ctx, a, b)
    if p > 3:
        with pytest.raises(ParameterError):
            check_jacobi_norm(ctx, 1, m - 1)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_factorization_through_gauss_sums(p):
    ctx = make_prime_context(p)
    for pair in valid_pairs(p):
        for i in range(1, pair.n):
            for j in range(1, pair.n):
                if (i + j) % pair.n:
                    assert check_gauss_jacobi_factorization(ctx, pair, i, j)


def test_minus_one_values():
    ctx = make_prime_context(13)
    assert [char_at_minus_one(ctx, j) for j in range(4)] == [1, -1, 1, -1]


@pytest.mark.parametrize("p", [7, 11, 13])
def test_sums_respond_to_generator_change_by_galois_action(p):
    # changing g to g^s relabels chi^j as chi^(j s^-1)
    base = make_prime_context(p)
    for s in range(2, p - 1):
        if math.gcd(s, p - 1) != 1:
            continue
        other = make_prime_context(p, generator=pow(base.g, s, p))
        sinv = pow(s, -1, p - 1)
        for j in range(p - 1):
            assert jacobi_sum(other, j, 1) == jacobi_sum(base, j * sinv, sinv)
