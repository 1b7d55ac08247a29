"""Gaussian periods and their minimal polynomial P_k(T).

``min_poly`` expands prod_b (T - theta^(b)) with coefficients held as
length-p integer vectors modulo x^p - 1: multiplying by a period is then a
sum of k cyclic rotations.  ``x_via_proof_formula`` and
``y_via_proof_formula`` recompute the two low coefficients from the periods
with canonical :class:`CycInt` arithmetic, giving an independent route.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from cyclodet.cyclo_ring import CycInt
from cyclodet.errors import IntegrityError, NonRationalError, ParameterError
from cyclodet.fp_base import DivisorPair, PrimeContext, coset_reps, unit_subgroup


@dataclass(frozen=True)
class MinPoly:
    p: int
    k: int
    n: int
    coeffs: tuple[int, ...]

    @property
    def x(self) -> int:
        return self.coeffs[1]

    @property
    def y(self) -> int:
        return self.coeffs[0]

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def to_json(self) -> dict:
        d = asdict(self)
        d["coeffs"] = list(self.coeffs)
        d["x"], d["y"] = self.x, self.y
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _period_exponents(ctx: PrimeContext, pair: DivisorPair, b: int) -> list[int]:
    b %= ctx.p
    if b == 0:
        raise ParameterError("periods are defined for b in F_p^x")
    return [b * u % ctx.p for u in unit_subgroup(ctx, pair)]


def gaussian_period(ctx: PrimeContext, pair: DivisorPair, b: int) -> CycInt:
    """theta_k^(b) = sum over u in U_k of zeta_p^(b u), conductor p."""
    return CycInt.from_exponents(ctx.p, _period_exponents(ctx, pair, b))


def _rational_value(vec, p: int) -> int:
    # c_0 + c_1 z + ... + c_{p-1} z^{p-1} is rational iff c_1 = ... = c_{p-1}
    tail = vec[1:]
    if any(c != tail[0] for c in tail):
        raise NonRationalError(CycInt.from_vector(p, list(vec)).coeffs, p)
    return int(vec[0] - tail[0])


def min_poly(ctx: PrimeContext, pair: DivisorPair) -> MinPoly:
    """P_k(T) = prod over coset reps b of (T - theta^(b))."""
    p = ctx.p
    # row i holds the coefficient of T^i as a vector modulo x^p - 1
    poly = np.zeros((1, p), dtype=object)
    poly[0, 0] = 1
    for b in coset_reps(ctx, pair):
        times_theta = np.zeros_like(poly)
        for e in _period_exponents(ctx, pair, b):
            times_theta += np.roll(poly, e, axis=1)
        grown = np.zeros((poly.shape[0] + 1, p), dtype=object)
        grown[1:] += poly
        grown[:-1] -= times_theta
        poly = grown
    try:
        coeffs = tuple(_rational_value(row, p) for row in poly)
    except NonRationalError as exc:
        raise IntegrityError(f"P_{pair.k} for p={p} has a non-rational coefficient") from exc
    if len(coeffs) != pair.n + 1 or coeffs[-1] != 1:
        raise IntegrityError("period polynomial is not monic of degree n")
    return MinPoly(p, pair.k, pair.n, coeffs)


def check_congruence(mp: MinPoly, pair: DivisorPair, p: int) -> bool:
    """y == (-1)^n k^n and y == k^2 x modulo p."""
    k, n = pair.k, pair.n
    y, x = mp.y, mp.x
    return (y - (-1) ** n * k**n) % p == 0 and (y - k * k * x) % p == 0


def periods(ctx: PrimeContext, pair: DivisorPair) -> list[CycInt]:
    return [gaussian_period(ctx, pair, b) for b in coset_reps(ctx, pair)]


def _extract(value: CycInt, what: str) -> int:
    try:
        return value.to_int()
    except NonRationalError as exc:
        raise IntegrityError(f"{what} is not a rational integer") from exc


def sum_of_cofactor_products(values: list[CycInt]) -> CycInt:
    """sum over b of prod over c != b of values[c], via prefix/suffix products."""
    n = len(values)
    m = values[0].m
    prefix = [CycInt.one(m)]
    for v in values[:-1]:
        prefix.append(prefix[-1] * v)
    total, suffix = CycInt.zero(m), CycInt.one(m)
    for b in range(n - 1, -1, -1):
        total = total + prefix[b] * suffix
        suffix = suffix * values[b]
    return total


def x_via_proof_formula(ctx: PrimeContext, pair: DivisorPair) -> int:
    """(-1)^(n-1) * sum_b prod_{c != b} theta^(c)."""
    s = sum_of_cofactor_products(periods(ctx, pair))
    return (-1) ** (pair.n - 1) * _extract(s, "sum of period cofactor products")


def y_via_proof_formula(ctx: PrimeContext, pair: DivisorPair) -> int:
    """(-1)^n * prod_b theta^(b)."""
    prod = CycInt.one(ctx.p)
    for th in periods(ctx, pair):
        prod = prod * th
    return (-1) ** pair.n * _extract(prod, "product of periods")
