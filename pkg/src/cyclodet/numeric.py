"""High-precision complex evaluation and certified rounding (mpmath backend)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache

import mpmath

from cyclodet.cyclo_ring import CycInt
from cyclodet.errors import PrecisionError
from cyclodet.fp_base import DivisorPair, PrimeContext
from cyclodet.periods import periods
from cyclodet.sums import char_at_minus_one, gauss_sum

DEFAULT_PRECISION = 192
DEFAULT_GUARD = 32


@dataclass(frozen=True)
class NumericPolicy:
    precision_bits: int = DEFAULT_PRECISION
    guard_bits: int = DEFAULT_GUARD

    @property
    def threshold(self) -> mpmath.mpf:
        return mpmath.mpf(2) ** (-(self.guard_bits // 2))

    def for_bound(self, log2_bound: float) -> NumericPolicy:
        """This policy, raised if needed to cover a magnitude of 2**log2_bound."""
        need = int(math.ceil(log2_bound)) + self.guard_bits
        return self if self.precision_bits >= need else replace(self, precision_bits=need)

    @classmethod
    def default_for(cls, p: int, n: int) -> NumericPolicy:
        if p <= 31:
            return cls()
        return cls(precision_bits=int(math.ceil(4 * n * math.log2(p))) + 64)


@lru_cache(maxsize=256)
def _roots(m: int, prec: int) -> tuple:
    with mpmath.workprec(prec + 16):
        return tuple(mpmath.expjpi(mpmath.mpf(2 * i) / m) for i in range(m))


def complex_eval(a: CycInt, policy: NumericPolicy = NumericPolicy()) -> mpmath.mpc:
    """sum_i c_i exp(2 pi i * i / m) at the policy's working precision.

    Roots are computed with 16 extra bits, so the error is bounded by
    roughly (terms) * max|c_i| * 2**-precision.
    """
    if a.is_rational():
        return mpmath.mpc(a.coeffs[0])
    roots = _roots(a.m, policy.precision_bits)
    with mpmath.workprec(policy.precision_bits + 16):
        acc = mpmath.mpc(0)
        for c, z in zip(a.coeffs, roots):
            if c:
                acc += c * z
    return acc


def rounding_residual(z, prec: int = DEFAULT_PRECISION) -> tuple[int, mpmath.mpf]:
    """Nearest integer to Re z and max(|Re z - it|, |Im z|), computed at ``prec`` bits."""
    with mpmath.workprec(prec):
        z = mpmath.mpc(z)
        r = int(mpmath.nint(z.real))
        return r, max(abs(z.real - r), abs(z.imag))


def round_to_int(z, policy: NumericPolicy = NumericPolicy()) -> int:
    r, res = rounding_residual(z, policy.precision_bits + 16)
    if not res < policy.threshold:
        raise PrecisionError(
            f"rounding residual {mpmath.nstr(res, 5)} is not below 2^-{policy.guard_bits // 2}; "
            "increase the working precision"
        )
    return r


@dataclass
class EigenReport:
    p: int
    k: int
    n: int
    precision_bits: int
    claimed: list = field(repr=False)
    residuals: list
    trace_gap: object
    det_gap: object
    threshold: object

    @property
    def passed(self) -> bool:
        worst = max([self.trace_gap, self.det_gap, *self.residuals])
        return bool(worst < self.threshold)

    def to_json(self) -> dict:
        s = lambda x: mpmath.nstr(x, 8)
        return {
            "p": self.p,
            "k": self.k,
            "n": self.n,
            "precision_bits": self.precision_bits,
            "claimed": [[s(z.real), s(z.imag)] for z in self.claimed],
            "residuals": [s(r) for r in self.residuals],
            "trace_gap": s(self.trace_gap),
            "det_gap": s(self.det_gap),
            "threshold": s(self.threshold),
            "pass": self.passed,
        }


def inverse_gauss(ctx: PrimeContext, j: int, policy: NumericPolicy) -> mpmath.mpc:
    """1/G(chi^j) via the closed form A(-1) G(A-bar) / p; 1/G(eps) = -1."""
    if j % (ctx.p - 1) == 0:
        return mpmath.mpc(-1)
    g = complex_eval(gauss_sum(ctx, -j), policy)
    with mpmath.workprec(policy.precision_bits):
        return char_at_minus_one(ctx, j) * g / ctx.p


def verify_lemma23(ctx: PrimeContext, pair: DivisorPair, policy: NumericPolicy = NumericPolicy()) -> EigenReport:
    """Check that 1/p - 1 + (n/p) theta^(b) are the eigenvalues of [1/G(chi^(k(i-j)))]."""
    p, k, n = ctx.p, pair.k, pair.n
    prec = policy.precision_bits
    inv = [inverse_gauss(ctx, k * t, policy) for t in range(n)]
    ths = [complex_eval(th, policy) for th in periods(ctx, pair)]
    with mpmath.workprec(prec):
        mat = mpmath.matrix(n, n)
        for i in range(n):
            for j in range(n):
                mat[i, j] = inv[(i - j) % n]
        claimed = [mpmath.mpf(1) / p - 1 + mpmath.mpf(n) / p * th for th in ths]
        tr = mpmath.fsum(mat[i, i] for i in range(n))
        trace_gap = abs(mpmath.fsum(claimed) - tr)
        det_gap = abs(mpmath.fprod(claimed) - mpmath.det(mat))
        residuals = []
        for lam in claimed:
            shifted = mat.copy()
            for i in range(n):
                shifted[i, i] -= lam
            residuals.append(abs(mpmath.det(shifted)))
    return EigenReport(p, k, n, prec, claimed, residuals, trace_gap, det_gap, policy.threshold)


def gauss_det_complex(
    ctx: PrimeContext,
    pair: DivisorPair,
    include_zero: bool,
    policy: NumericPolicy = NumericPolicy(),
) -> tuple[mpmath.mpc, NumericPolicy]:
    """Numeric det [G(chi^(ki+kj))] and the (possibly raised) policy used."""
    k, n, p = pair.k, pair.n, ctx.p
    idx = range(0 if include_zero else 1, n)
    size = len(idx)
    # |G| <= sqrt(p) for every entry
    policy = policy.for_bound(0.5 * size * (math.log2(size) + math.log2(p)) + math.log2(size + 1) + 8)
    gs = {t: complex_eval(gauss_sum(ctx, k * t), policy) for t in range(n)}
    with mpmath.workprec(policy.precision_bits):
        mat = mpmath.matrix(size, size)
        for a, i in enumerate(idx):
            for b, j in enumerate(idx):
                mat[a, b] = gs[(i + j) % n]
        return mpmath.det(mat), policy


def gauss_det_numeric(
    ctx: PrimeContext,
    pair: DivisorPair,
    include_zero: bool,
    policy: NumericPolicy = NumericPolicy(),
) -> int:
    """det [G(chi^(ki+kj))] evaluated numerically and rounded with a certified residual."""
    det, policy = gauss_det_complex(ctx, pair, include_zero, policy)
    return round_to_int(det, policy)
