"""Determinant engines over Z[zeta_m].

Two engines: fraction-free Bareiss elimination with exact cyclotomic division,
and a multi-modular engine that maps zeta_m to an element of order m in F_ell
for primes ell = 1 (mod m) and reconstructs rational-integer determinants by
CRT under a Hadamard bound.  Also provides the circulant eigenvalues and the
almost-circulant determinant formula.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from math import lcm

import numpy as np
from sympy import isprime

from cyclodet.cyclo_ring import CycInt, embed, exact_div, units, zeta_pow
from cyclodet.errors import IntegrityError, ParameterError
from cyclodet.fp_base import has_order
from cyclodet.periods import sum_of_cofactor_products
from cyclodet.sums import CycMatrix

AUX_PRIME_START = 2**20
_AUX_PRIME_LIMIT = 2**31  # keeps products of residues inside int64


@dataclass(frozen=True)
class HomContext:
    """Ring map Z[zeta_m] -> F_ell sending zeta_m to ``w``."""

    ell: int
    m: int
    w: int

    def __post_init__(self):
        if (self.ell - 1) % self.m:
            raise ParameterError(f"ell={self.ell} is not 1 mod {self.m}")
        if not has_order(self.w % self.ell, self.m, lambda a, e: pow(a, e, self.ell)):
            raise ParameterError(f"w={self.w} does not have order {self.m} mod {self.ell}")

    def image(self, a: CycInt) -> int:
        ell, w = self.ell, self.w
        acc = 0
        for c in reversed(a.coeffs):
            acc = (acc * w + c) % ell
        return acc


def aux_primes(m: int, start: int = AUX_PRIME_START):
    """Increasing primes ell = 1 (mod m) above ``start``."""
    ell = start - (start - 1) % m + m
    while True:
        if ell >= _AUX_PRIME_LIMIT:
            raise ParameterError("ran out of word-size auxiliary primes")
        if isprime(ell):
            yield ell
        ell += m


def make_hom(ell: int, m: int, choice: int | str = "least") -> HomContext:
    """Pick w of order m in F_ell.

    ``choice="least"`` takes the least order-m element h**((ell-1)/m) over
    h = 2, 3, ...; an int seeds a random pick among all order-m elements.
    """
    e = (ell - 1) // m
    if choice == "least":
        for h in range(2, ell):
            w = pow(h, e, ell)
            if has_order(w, m, lambda a, t: pow(a, t, ell)):
                return HomContext(ell, m, w)
    else:
        rng = random.Random(f"{choice}:{ell}:{m}")
        while True:
            w = pow(rng.randrange(2, ell), e, ell)
            if has_order(w, m, lambda a, t: pow(a, t, ell)):
                return HomContext(ell, m, w)
    raise ParameterError(f"no element of order {m} mod {ell}")  # pragma: no cover


def bareiss(rows, div):
    """Fraction-free determinant of a square list-of-lists.

    ``div(a, b)`` must perform exact division.  Entries need +, -, * and
    truthiness; the first nonzero pivot in each column is used.
    """
    a = [list(r) for r in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ParameterError("determinant needs a square matrix")
    sign = 1
    prev = None
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return a[k][k] * 0
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                t = row_i[j] * pivot - lead * row_k[j]
                row_i[j] = div(t, prev) if prev is not None else t
            row_i[k] = lead * 0
        prev = pivot
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def _int_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise IntegrityError("non-exact integer division in Bareiss elimination")
    return q


def bareiss_det(mat: CycMatrix | list) -> CycInt | int:
    """Exact determinant by fraction-free elimination.

    A CycMatrix yields a CycInt; a list of int rows yields an int.
    """
    if isinstance(mat, CycMatrix):
        rows, cols = mat.shape
        if rows != cols:
            raise ParameterError("determinant needs a square matrix")
        return bareiss(mat.rows, exact_div)
    return bareiss([[int(e) for e in r] for r in mat], _int_div)


def det_mod(rows: list[list[int]], ell: int) -> int:
    """Determinant of an integer matrix over F_ell by Gaussian elimination."""
    a = np.array(rows, dtype=np.int64) % ell
    n = a.shape[0]
    if a.shape != (n, n):
        raise ParameterError("determinant needs a square matrix")
    det = 1
    for k in range(n):
        nz = np.nonzero(a[k:, k])[0]
        if nz.size == 0:
            return 0
        piv = k + int(nz[0])
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            det = -det
        pv = int(a[k, k])
        det = det * pv % ell
        if k + 1 < n:
            inv = pow(pv, -1, ell)
            factors = a[k + 1 :, k] * inv % ell
            a[k + 1 :, k:] = (a[k + 1 :, k:] - np.outer(factors, a[k, k:]) % ell) % ell
    return det % ell


def modular_det(mat: CycMatrix, hom: HomContext) -> int:
    """Image of det(mat) under zeta_m -> w, as an int in range(ell)."""
    if hom.m != mat.m:
        raise ParameterError(f"hom is for conductor {hom.m}, matrix has {mat.m}")
    rows, cols = mat.shape
    if rows != cols:
        raise ParameterError("determinant needs a square matrix")
    return det_mod([[hom.image(e) for e in r] for r in mat.rows], hom.ell)


def max_embedding_abs(a: CycInt) -> float:
    """max over complex embeddings of |a|, in floating point."""
    if a.is_rational():
        return float(abs(a.coeffs[0]))
    m = a.m
    best = 0.0
    for s in units(m):
        z = cmath.exp(2j * math.pi * s / m)
        acc, zi = 0j, 1 + 0j
        for c in a.coeffs:
            acc += c * zi
            zi *= z
        best = max(best, abs(acc))
    return best


def hadamard_bound(mat: CycMatrix) -> int:
    """Integer upper bound on |det| over every embedding (Hadamard's inequality).

    Uses per-entry maximal embedding magnitudes with a relative float slack of
    1e-9 plus one extra bit.
    """
    log2_bound = 0.0
    for r in mat.rows:
        sq = sum(max_embedding_abs(e) ** 2 for e in r)
        if sq == 0:
            return 0
        log2_bound += 0.5 * math.log2(sq * (1 + 1e-9))
    return 1 << (int(math.ceil(log2_bound)) + 1)


def crt_int_det(
    mat: CycMatrix,
    bound: int | None = None,
    start: int = AUX_PRIME_START,
    choice: int | str = "least",
) -> int:
    """Rational-integer determinant reconstructed by CRT.

    The caller asserts det(mat) is in Z.  Primes ell = 1 (mod m) are used until
    their product exceeds 2 * bound; the residue is lifted to the symmetric
    range.
    """
    if bound is None:
        bound = hadamard_bound(mat)
    if bound < 0:
        raise ParameterError("bound must be nonnegative")
    m = mat.m
    residue, modulus = 0, 1
    for ell in aux_primes(m, start):
        r = modular_det(mat, make_hom(ell, m, choice))
        # combine x = residue (mod modulus), x = r (mod ell)
        t = (r - residue) * pow(modulus, -1, ell) % ell
        residue += modulus * t
        modulus *= ell
        if modulus > 2 * bound:
            break
    if residue > modulus // 2:
        residue -= modulus
    return residue


@dataclass(frozen=True)
class CirculantSpec:
    """First column v = (a_0, ..., a_{n-1}) of the circulant C(v) = [a_{i-j}]."""

    v: tuple

    @property
    def n(self) -> int:
        return len(self.v)

    @property
    def conductor(self) -> int:
        ms = [a.m for a in self.v if isinstance(a, CycInt)]
        return lcm(self.n, *ms) if ms else self.n

    def _lifted(self) -> list[CycInt]:
        big = self.conductor
        return [embed(a, big) if isinstance(a, CycInt) else CycInt.from_int(big, int(a)) for a in self.v]

    def circulant(self) -> CycMatrix:
        a = self._lifted()
        n = self.n
        return CycMatrix([[a[(i - j) % n] for j in range(n)] for i in range(n)], self.conductor)

    def almost_circulant(self) -> CycMatrix:
        """C(v) with row 0 and column 0 removed (requires n >= 2)."""
        if self.n < 2:
            raise ParameterError("the almost circulant matrix needs n >= 2")
        a = self._lifted()
        n = self.n
        return CycMatrix([[a[(i - j) % n] for j in range(1, n)] for i in range(1, n)], self.conductor)


def circulant_eigs(spec: CirculantSpec) -> list[CycInt]:
    """lambda_l = sum_j a_j zeta_n^(l j) for l = 0..n-1."""
    big = spec.conductor
    n = spec.n
    a = spec._lifted()
    step = big // n
    eigs = []
    for l in range(n):
        lam = CycInt.zero(big)
        for j, aj in enumerate(a):
            if aj:
                lam = lam + aj * zeta_pow(big, step * l * j)
        eigs.append(lam)
    return eigs


def almost_circulant_det(spec: CirculantSpec) -> CycInt:
    """det W(v) = (1/n) sum_l prod_{r != l} lambda_r, with exact division by n."""
    eigs = circulant_eigs(spec)
    total = sum_of_cofactor_products(eigs)
    out = []
    for c in total.coeffs:
        q, r = divmod(c, spec.n)
        if r:
            raise IntegrityError("cofactor sum of circulant eigenvalues is not divisible by n")
        out.append(q)
    return CycInt(total.m, out)
