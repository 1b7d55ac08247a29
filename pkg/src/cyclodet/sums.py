"""Gauss sums, Jacobi sums and the matrices built from them.

Characters are indexed by exponent: ``j`` stands for chi^j where chi(g) =
zeta_{p-1} for the context's primitive root g.  Every character, including
the trivial one, is extended by chi^j(0) = 0, so G_p(eps) = -1 and
J_p(eps, eps) = p - 2.

Jacobi sums live in Z[zeta_{p-1}]; Gauss sums in Z[zeta_{p(p-1)}], where
zeta_p = zeta_{p(p-1)}**(p-1) and zeta_{p-1} = zeta_{p(p-1)}**p.
"""

from __future__ import annotations

from functools import lru_cache

from cyclodet.cyclo_ring import CycInt, embed, galois_apply
from cyclodet.errors import ParameterError
from cyclodet.fp_base import DivisorPair, PrimeContext


class CycMatrix:
    """A dense matrix of CycInt entries sharing one conductor."""

    __slots__ = ("m", "rows")

    def __init__(self, rows, m: int | None = None):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ParameterError("matrix dimensions must be positive")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ParameterError("ragged matrix rows")
        if m is None:
            m = next((e.m for r in rows for e in r if isinstance(e, CycInt)), 1)
        self.m = m
        self.rows = [[e if isinstance(e, CycInt) else CycInt.from_int(m, e) for e in r] for r in rows]
        for r in self.rows:
            for e in r:
                if e.m != m:
                    raise ParameterError(f"entry conductor {e.m} differs from matrix conductor {m}")

    @classmethod
    def from_ints(cls, rows, m: int = 1) -> CycMatrix:
        return cls([[CycInt.from_int(m, int(e)) for e in r] for r in rows], m)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, CycMatrix) and self.m == other.m and self.rows == other.rows

    def __repr__(self) -> str:
        return f"CycMatrix(m={self.m}, shape={self.shape})"

    def transpose(self) -> CycMatrix:
        return CycMatrix(list(map(list, zip(*self.rows))), self.m)

    def embed(self, big_m: int) -> CycMatrix:
        return CycMatrix([[embed(e, big_m) for e in r] for r in self.rows], big_m)

    def galois(self, s: int) -> CycMatrix:
        return CycMatrix([[galois_apply(s, e) for e in r] for r in self.rows], self.m)

    def is_symmetric(self) -> bool:
        return self.rows == [list(c) for c in zip(*self.rows)]

    def to_int_rows(self) -> list[list[int]]:
        return [[e.to_int() for e in r] for r in self.rows]


def char_value_exponent(ctx: PrimeContext, j: int, x: int) -> int | None:
    """Exponent e with chi^j(x) = zeta_{p-1}**e, or None when x = 0."""
    x %= ctx.p
    if x == 0:
        return None
    return j * ctx.ind[x] % (ctx.p - 1)


def char_at_minus_one(ctx: PrimeContext, j: int) -> int:
    """chi^j(-1) as +1 or -1."""
    return -1 if j % 2 else 1


@lru_cache(maxsize=4096)
def gauss_sum(ctx: PrimeContext, j: int) -> CycInt:
    """G_p(chi^j) = sum_x chi^j(x) zeta_p^x in conductor p(p-1)."""
    p = ctx.p
    m = p * (p - 1)
    j %= p - 1
    exps = [((p - 1) * x + p * j * ctx.ind[x]) % m for x in range(1, p)]
    return CycInt.from_exponents(m, exps)


@lru_cache(maxsize=65536)
def jacobi_sum(ctx: PrimeContext, a: int, b: int) -> CycInt:
    """J_p(chi^a, chi^b) = sum_x chi^a(x) chi^b(1-x) in conductor p-1."""
    p = ctx.p
    m = p - 1
    exps = [(a * ctx.ind[x] + b * ctx.ind[(1 - x) % p]) % m for x in range(2, p)]
    return CycInt.from_exponents(m, exps)


def _check_pair(ctx: PrimeContext, pair: DivisorPair) -> None:
    if pair.p != ctx.p:
        raise ParameterError(f"divisor pair belongs to p={pair.p}, not p={ctx.p}")


def matrix_X(ctx: PrimeContext, pair: DivisorPair) -> CycMatrix:
    """[J_p(chi^(ki), chi^(kj))] for 1 <= i, j <= n-1."""
    _check_pair(ctx, pair)
    k, n = pair.k, pair.n
    return CycMatrix([[jacobi_sum(ctx, k * i, k * j) for j in range(1, n)] for i in range(1, n)], ctx.p - 1)


def matrix_Y(ctx: PrimeContext, pair: DivisorPair) -> CycMatrix:
    """[J_p(chi^(ki), chi^(kj))] for 0 <= i, j <= n-1."""
    _check_pair(ctx, pair)
    k, n = pair.k, pair.n
    return CycMatrix([[jacobi_sum(ctx, k * i, k * j) for j in range(n)] for i in range(n)], ctx.p - 1)


def gauss_matrix(ctx: PrimeContext, pair: DivisorPair, include_zero: bool) -> CycMatrix:
    """[G_p(chi^(ki+kj))], indices from 0 (include_zero) or 1 up to n-1."""
    _check_pair(ctx, pair)
    k, n = pair.k, pair.n
    idx = range(0 if include_zero else 1, n)
    return CycMatrix([[gauss_sum(ctx, k * (i + j)) for j in idx] for i in idx], ctx.p * (ctx.p - 1))


def check_gauss_jacobi_relation(ctx: PrimeContext, a: int, b: int) -> bool:
    """J(A,B) * delta(AB) * G(AB) == G(A) * G(B), exactly in conductor p(p-1)."""
    p = ctx.p
    a %= p - 1
    b %= p - 1
    if a == 0 and b == 0:
        raise ParameterError("the relation needs at least one nontrivial character")
    big = p * (p - 1)
    delta = p if (a + b) % (p - 1) == 0 else 1
    lhs = embed(jacobi_sum(ctx, a, b), big) * gauss_sum(ctx, a + b) * delta
    return lhs == gauss_sum(ctx, a) * gauss_sum(ctx, b)


def check_gauss_conjugate_product(ctx: PrimeContext, j: int) -> bool:
    """G(A) G(A-bar) == p A(-1) for nontrivial A = chi^j."""
    if j % (ctx.p - 1) == 0:
        raise ParameterError("the identity needs a nontrivial character")
    return gauss_sum(ctx, j) * gauss_sum(ctx, -j) == ctx.p * char_at_minus_one(ctx, j)


def check_jacobi_norm(ctx: PrimeContext, a: int, b: int) -> bool:
    """J(A,B) * conj(J(A,B)) == p when A, B and AB are all nontrivial."""
    p = ctx.p
    if a % (p - 1) == 0 or b % (p - 1) == 0 or (a + b) % (p - 1) == 0:
        raise ParameterError("the norm identity needs A, B, AB nontrivial")
    jab = jacobi_sum(ctx, a, b)
    return jab * jab.conj() == p


def check_gauss_jacobi_factorization(ctx: PrimeContext, pair: DivisorPair, i: int, j: int) -> bool:
    """p J(chi^ki, chi^kj) == (-1)^(ki+kj) G(chi^ki) G(chi^kj) G(chi^(-ki-kj))."""
    p, k = ctx.p, pair.k
    big = p * (p - 1)
    lhs = embed(jacobi_sum(ctx, k * i, k * j), big) * p
    sign = -1 if (k * i + k * j) % 2 else 1
    rhs = gauss_sum(ctx, k * i) * gauss_sum(ctx, k * j) * gauss_sum(ctx, -k * i - k * j) * sign
    return lhs == rhs
