"""Point counts on x^n + y^n = z^n, the Jacobi-sum numerator H(T), and the
extension-field determinant comparison."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
import numpy as np

from cyclodet.cyclo_ring import CycInt
from cyclodet.detkit import bareiss_det
from cyclodet.errors import IntegrityError, NonRationalError, ParameterError
from cyclodet.fp_base import DivisorPair, ExtFieldContext, PrimeContext, make_ext_context, trace
from cyclodet.numeric import NumericPolicy, complex_eval
from cyclodet.periods import sum_of_cofactor_products
from cyclodet.sums import CycMatrix, jacobi_sum

POINT_COUNT_CAP = 2**12


@dataclass(frozen=True)
class CurveCount:
    p: int
    n: int
    m: int
    N: int


@dataclass(frozen=True)
class HPoly:
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def _element_digits(ext: ExtFieldContext) -> np.ndarray:
    """Row a holds the base-p digits of element a."""
    q, p = ext.q, ext.p
    a = np.arange(q)
    return np.stack([(a // p**i) % p for i in range(ext.m)], axis=1)


def count_points(p: int, n: int, m: int = 1, cap: int = POINT_COUNT_CAP) -> CurveCount:
    """Projective F_{p^m}-points of x^n + y^n = z^n by enumeration.

    Charts: z = 1 (all affine (x, y)); z = 0, y = 1; z = y = 0, x = 1.
    """
    if n < 1 or (p - 1) % n:
        raise ParameterError(f"n={n} must divide p-1={p - 1}")
    if m not in (1, 2):
        raise ParameterError("point counts are supported over F_p and F_{p^2}")
    if p**m > cap:
        raise ParameterError(f"q={p**m} exceeds the point-count cap {cap}")
    ext = make_ext_context(p, m)
    q = ext.q
    powers = np.array([ext.pow(x, n) for x in range(q)])
    digits = _element_digits(ext)
    pd = digits[powers]  # digits of x^n
    one = digits[1]
    minus_one = digits[ext.neg(1)]

    affine = 0
    for y in range(q):
        s = (pd + pd[y]) % p
        affine += int(np.count_nonzero(np.all(s == one, axis=1)))
    at_infinity = int(np.count_nonzero(np.all(pd == minus_one, axis=1)))
    # [1:0:0] would need 1 = 0
    return CurveCount(p, n, m, affine + at_infinity)


def h_poly(ctx: PrimeContext, pair: DivisorPair) -> HPoly:
    """prod over 1 <= i, j <= n-1 with i + j != 0 (mod n) of (1 + J(chi^ki, chi^kj) T)."""
    if pair.p != ctx.p:
        raise ParameterError("divisor pair does not belong to this prime")
    k, n = pair.k, pair.n
    m = ctx.p - 1
    poly = [CycInt.one(m)]
    for i in range(1, n):
        for j in range(1, n):
            if (i + j) % n == 0:
                continue
            jij = jacobi_sum(ctx, k * i, k * j)
            nxt = poly + [CycInt.zero(m)]
            for d in range(len(poly)):
                nxt[d + 1] = nxt[d + 1] + poly[d] * jij
            poly = nxt
    try:
        return HPoly(tuple(c.to_int() for c in poly))
    except NonRationalError as exc:
        raise IntegrityError(f"H(T) for p={ctx.p}, n={n} has a non-rational coefficient") from exc


def power_sums(h: HPoly, upto: int) -> list[int]:
    """s_1..s_upto of the inverse roots alpha_i of H(T) = prod (1 - alpha_i T).

    Newton's identities on e_i = (-1)^i h_i.
    """
    e = [(-1) ** i * c for i, c in enumerate(h.coeffs)]
    if e[0] != 1:
        raise ParameterError("H(0) must be 1")
    deg = h.degree
    s = [0] * (upto + 1)
    for r in range(1, upto + 1):
        acc = (-1) ** (r - 1) * r * (e[r] if r <= deg else 0)
        for i in range(1, min(r, deg + 1)):
            acc += (-1) ** (i - 1) * e[i] * s[r - i]
        s[r] = acc
    return s[1:]


def zeta_consistency(hp: HPoly, counts: list[CurveCount]) -> bool:
    """N(p^m) == p^m + 1 - s_m for every supplied count."""
    if not counts:
        raise ParameterError("need at least one point count")
    if {*(c.m for c in counts)} < {1, 2}:
        raise ParameterError("counts must include m = 1 and m = 2")
    s = power_sums(hp, max(c.m for c in counts))
    return all(c.N == c.p**c.m + 1 - s[c.m - 1] for c in counts)


# --- extension fields ---------------------------------------------------------


def ext_jacobi_sum(ext: ExtFieldContext, a: int, b: int) -> CycInt:
    """J_q(chi^a, chi^b) in conductor q-1, chi(generator) = zeta_{q-1}."""
    q = ext.q
    one = 1
    exps = []
    for x in range(2, q):
        y = ext.sub(one, x)
        if y == 0:
            continue
        exps.append((a * ext.log[x] + b * ext.log[y]) % (q - 1))
    return CycInt.from_exponents(q - 1, exps)


def ext_unit_subgroup(ext: ExtFieldContext, k: int) -> list[int]:
    n = (ext.q - 1) // k
    return sorted(ext.exp[n * t] for t in range(k))


def ext_period(ext: ExtFieldContext, k: int, c: int) -> CycInt:
    """mu_k^(c) = sum over y in U_k(F_q) of zeta_p^Tr(c y), conductor p."""
    return CycInt.from_exponents(ext.p, [trace(ext, ext.mul(c, y)) for y in ext_unit_subgroup(ext, k)])


@dataclass
class ExtReport:
    p: int
    m: int
    k: int
    n: int
    lhs: object
    rhs: object
    gap: object
    threshold: object
    lhs_exact: CycInt = field(repr=False)
    rhs_exact: CycInt = field(repr=False)

    @property
    def passed(self) -> bool:
        return bool(self.gap < self.threshold)

    def to_json(self) -> dict:
        s = lambda x: mpmath.nstr(x, 20)
        return {
            "p": self.p,
            "m": self.m,
            "q": self.p**self.m,
            "k": self.k,
            "n": self.n,
            "lhs": [s(self.lhs.real), s(self.lhs.imag)],
            "rhs": [s(self.rhs.real), s(self.rhs.imag)],
            "gap": mpmath.nstr(self.gap, 5),
            "pass": self.passed,
        }


def ext_jacobi_det_check(
    ext: ExtFieldContext,
    k: int,
    policy: NumericPolicy = NumericPolicy(),
    threshold=None,
) -> ExtReport:
    """Compare det[J_q(chi^ki, chi^kj)]_{1<=i,j<=n-1} with the period expression.

    The right side is sign * n^(n-2) * sum_b prod_{c != b} mu_k^(c) over coset
    representatives of F_q^x / U_k(F_q).  Both sides are exact; the comparison
    is numeric.  ``threshold`` defaults to 2**-40.
    """
    q = ext.q
    if k < 1 or (q - 1) % k or k >= q - 1:
        raise ParameterError(f"k={k} must be a divisor of q-1={q - 1} with k < q-1")
    n = (q - 1) // k
    mat = CycMatrix(
        [[ext_jacobi_sum(ext, k * i, k * j) for j in range(1, n)] for i in range(1, n)],
        q - 1,
    )
    lhs = bareiss_det(mat)
    reps = [ext.exp[t] for t in range(n)]
    mus = [ext_period(ext, k, c) for c in reps]
    sign = (-1) ** (((n - 1) * ((k + 1) * n - 2) // 2) % 2)
    rhs = sum_of_cofactor_products(mus) * (sign * n ** (n - 2))
    # both sides as complex numbers; add headroom for their magnitudes
    mag = max(1.0, math.log2(n) * (n - 2) + math.log2(n) + (n - 1) * math.log2(k))
    pol = policy.for_bound(mag)
    lv, rv = complex_eval(lhs, pol), complex_eval(rhs, pol)
    with mpmath.workprec(pol.precision_bits):
        gap = abs(lv - rv)
    thr = mpmath.mpf(2) ** -40 if threshold is None else threshold
    return ExtReport(ext.p, ext.m, k, n, lv, rv, gap, thr, lhs, rhs)
