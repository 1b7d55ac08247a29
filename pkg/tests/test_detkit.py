import random

import pytest

from cyclodet import ParameterError
from cyclodet.cyclo_ring import CycInt, euler_phi, galois_apply, units, zeta_pow
from cyclodet.detkit import (
    CirculantSpec,
    HomContext,
    almost_circulant_det,
    aux_primes,
    bareiss_det,
    circulant_eigs,
    crt_int_det,
    det_mod,
    hadamard_bound,
    make_hom,
    modular_det,
)
from cyclodet.fp_base import DivisorPair, make_prime_context
from cyclodet.sums import CycMatrix, matrix_X, matrix_Y

from oracles import cofactor_det


def rand_cyc(rng, m, lo=-5, hi=5):
    return CycInt(m, [rng.randint(lo, hi) for _ in range(euler_phi(m))])


def rand_matrix(rng, m, n, lo=-5, hi=5):
    return CycMatrix([[rand_cyc(rng, m, lo, hi) for _ in range(n)] for _ in range(n)], m)


def integer_det_instance(rng):
    """U * diag(A, sigma_2 A, ...) over a full Galois orbit, U unimodular integral.

    Its determinant is U's sign times the norm of det A, hence rational.
    """
    m = rng.choice([3, 4, 5, 8, 12])
    size = rng.randint(1, 2)
    a = rand_matrix(rng, m, size, -3, 3)
    blocks = [a.galois(s) for s in units(m)]
    n = size * len(blocks)
    zero = CycInt.zero(m)
    rows = [[zero] * n for _ in range(n)]
    for b, blk in enumerate(blocks):
        for i in range(size):
            for j in range(size):
                rows[b * size + i][b * size + j] = blk[i, j]
    # row operations with integer multipliers keep the determinant
    for _ in range(2 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-2, 2)
        rows[i] = [x + y * c for x, y in zip(rows[i], rows[j])]
    return CycMatrix(rows, m)


def test_bareiss_examples():
    assert bareiss_det(CycMatrix([[zeta_pow(7, 3)]], 7)) == zeta_pow(7, 3)
    assert bareiss_det(CycMatrix.from_ints([[1, 2], [3, 4]], 5)) == -2
    assert bareiss_det([[1, 2], [3, 4]]) == -2
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[1, 2], [2, 4]]) == 0
    with pytest.raises(ParameterError):
        bareiss_det(CycMatrix.from_ints([[1, 2]], 5))


def test_bareiss_matches_cofactor_on_random_4x4_over_z12():
    rng = random.Random(12)
    for _ in range(100):
        a = rand_matrix(rng, 12, 4)
        assert bareiss_det(a) == cofactor_det(a.rows, CycInt.zero(12))


def test_bareiss_handles_zero_pivots():
    rng = random.Random(3)
    for _ in range(30):
        rows = [[rng.choice([0, 0, 0, rng.randint(-4, 4)]) for _ in range(5)] for _ in range(5)]
        assert bareiss_det(rows) == cofactor_det(rows)


def test_modular_examples():
    hom = make_hom(41, 4)
    X = matrix_X(make_prime_context(5), DivisorPair.from_k(5, 2))
    assert modular_det(X, hom) == 40
    for ell in (41, 61, 101):
        h = make_hom(ell, 4)
        assert modular_det(CycMatrix.from_ints([[1, 2], [3, 4]], 4), h) == (-2) % ell
    assert det_mod([[1, 2], [3, 4]], 7) == 5


def test_hom_validation():
    with pytest.raises(ParameterError):
        HomContext(43, 4, 2)  # 43 != 1 mod 4
    with pytest.raises(ParameterError):
        HomContext(41, 4, 1)  # 1 has order 1
    h = make_hom(41, 8)
    assert pow(h.w, 8, 41) == 1 and pow(h.w, 4, 41) != 1


def test_hom_is_a_ring_map():
    rng = random.Random(5)
    for m in (5, 12, 20):
        ell = next(aux_primes(m))
        h = make_hom(ell, m, choice=9)
        for _ in range(20):
            a, b = rand_cyc(rng, m), rand_cyc(rng, m)
            assert h.image(a * b) == h.image(a) * h.image(b) % ell
            assert h.image(a + b) == (h.image(a) + h.image(b)) % ell


def test_aux_primes_are_one_mod_m():
    gen = aux_primes(30)
    first = [next(gen) for _ in range(5)]
    assert all(ell % 30 == 1 and ell > 2**20 for ell in first)
    assert first == sorted(first)


def test_crt_matches_bareiss_on_integer_determinants():
    rng = random.Random(2024)
    for _ in range(50):
        mat = integer_det_instance(rng)
        exact = bareiss_det(mat)
        assert exact.is_rational()
        assert crt_int_det(mat) == exact.to_int()


def test_crt_independent_of_root_choice():
    rng = random.Random(77)
    for case in range(20):
        mat = integer_det_instance(rng)
        ref = crt_int_det(mat)
        assert crt_int_det(mat, choice=case + 1) == ref
        assert crt_int_det(mat, start=2**24, choice=case + 100) == ref


def test_crt_examples():
    ctx3 = make_prime_context(3)
    assert crt_int_det(matrix_X(ctx3, DivisorPair.from_k(3, 1))) == 1
    ctx7 = make_prime_context(7)
    assert crt_int_det(matrix_X(ctx7, DivisorPair.from_k(7, 2))) == 6
    ctx5 = make_prime_context(5)
    assert crt_int_det(matrix_Y(ctx5, DivisorPair.from_k(5, 2))) == -4


def test_hadamard_bound_dominates():
    rng = random.Random(8)
    for _ in range(20):
        mat = integer_det_instance(rng)
        assert abs(bareiss_det(mat).to_int()) <= hadamard_bound(mat)


def test_determinant_properties():
    rng = random.Random(99)
    for _ in range(20):
        m = rng.choice([5, 6, 12])
        a = rand_matrix(rng, m, 4, -3, 3)
        d = bareiss_det(a)
        assert bareiss_det(a.transpose()) == d
        rows = list(a.rows)
        rows[0], rows[2] = rows[2], rows[0]
        assert bareiss_det(CycMatrix(rows, m)) == -d
        scaled = [list(r) for r in a.rows]
        c = rand_cyc(rng, m, -2, 2)
        scaled[1] = [x * c for x in scaled[1]]
        assert bareiss_det(CycMatrix(scaled, m)) == d * c


# --- circulants ---


def test_circulant_eig_examples():
    assert circulant_eigs(CirculantSpec((5,))) == [CycInt.from_int(1, 5)]
    eigs = circulant_eigs(CirculantSpec((0, 1, 0)))
    assert set(eigs) == {zeta_pow(3, 0), zeta_pow(3, 1), zeta_pow(3, 2)}


def test_almost_circulant_examples():
    assert almost_circulant_det(CirculantSpec((4, -7))) == 4
    spec = CirculantSpec((0, 1, 0))
    assert spec.almost_circulant().to_int_rows() == [[0, 0], [1, 0]]
    assert almost_circulant_det(spec) == 0


def test_circulant_eigenvalue_product_is_determinant():
    rng = random.Random(41)
    for _ in range(100):
        n = rng.randint(1, 6)
        spec = CirculantSpec(tuple(rng.randint(-9, 9) for _ in range(n)))
        prod = CycInt.one(spec.conductor)
        for lam in circulant_eigs(spec):
            prod = prod * lam
        assert prod == bareiss_det(spec.circulant())


def test_almost_circulant_formula_on_random_integer_vectors():
    rng = random.Random(22)
    for _ in range(200):
        n = rng.randint(2, 8)
        spec = CirculantSpec(tuple(rng.randint(-9, 9) for _ in range(n)))
        direct = bareiss_det(spec.almost_circulant())
        formula = almost_circulant_det(spec)
        assert formula == direct
        assert formula.to_int() == cofactor_det(spec.almost_circulant().to_int_rows())


def test_almost_circulant_with_cyclotomic_entries():
    rng = random.Random(4)
    for _ in range(20):
        n = rng.randint(2, 5)
        spec = CirculantSpec(tuple(rand_cyc(rng, 5, -3, 3) for _ in range(n)))
        assert almost_circulant_det(spec) == bareiss_det(spec.almost_circulant())
