"""Exact arithmetic in Z[zeta_m].

A :class:`CycInt` stores the canonical residue of a polynomial in zeta_m modulo
the m-th cyclotomic polynomial: a tuple of phi(m) Python ints,
``coeffs[i]`` being the coefficient of zeta_m**i.
"""

from __future__ import annotations

import json
from functools import lru_cache
from math import gcd

from cyclodet.errors import IntegrityError, NonRationalError, ParameterError


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod_monic(a: list[int], f: list[int]) -> tuple[list[int], list[int]]:
    a = list(a)
    df = len(f) - 1
    if len(a) <= df:
        return [0], a
    q = [0] * (len(a) - df)
    for top in range(len(a) - 1, df - 1, -1):
        c = a[top]
        if c:
            s = top - df
            q[s] = c
            for i in range(df + 1):
                a[s + i] -= c * f[i]
    return q, a[:df]


@lru_cache(maxsize=None)
def _phi_poly(m: int) -> tuple[int, ...]:
    if m < 1:
        raise ParameterError("conductor must be >= 1")
    num = [-1] + [0] * (m - 1) + [1]
    den = [1]
    for d in range(1, m):
        if m % d == 0:
            den = _poly_mul(den, list(_phi_poly(d)))
    q, r = _poly_divmod_monic(num, den)
    if any(r):
        raise IntegrityError(f"x^{m}-1 not divisible by the lower cyclotomic factors")
    return tuple(q)


def cyclotomic_poly(m: int) -> list[int]:
    """Phi_m as an integer coefficient list, constant term first."""
    return list(_phi_poly(m))


def euler_phi(m: int) -> int:
    return len(_phi_poly(m)) - 1


@lru_cache(maxsize=None)
def _reducer(m: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    f = _phi_poly(m)
    d = len(f) - 1
    return d, tuple((i, c) for i, c in enumerate(f[:-1]) if c)


@lru_cache(maxsize=None)
def units(m: int) -> tuple[int, ...]:
    return tuple(s for s in range(1, m + 1) if gcd(s, m) == 1) if m > 1 else (1,)


def reduce_vector(m: int, vec) -> tuple[int, ...]:
    """Canonical coefficients of sum(vec[e] * zeta_m**e) for any-length ``vec``."""
    d, tail = _reducer(m)
    if len(vec) > m:
        folded = [0] * m
        for e, c in enumerate(vec):
            if c:
                folded[e % m] += c
        work = folded
    else:
        work = list(vec)
    for top in range(len(work) - 1, d - 1, -1):
        c = work[top]
        if c:
            s = top - d
            for i, fc in tail:
                work[s + i] -= c * fc
    if len(work) < d:
        work.extend([0] * (d - len(work)))
    return tuple(work[:d])


class CycInt:
    """An element of Z[zeta_m] in canonical form."""

    __slots__ = ("m", "coeffs", "_hash")

    def __init__(self, m: int, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != euler_phi(m):
            raise ParameterError(f"Z[zeta_{m}] elements need {euler_phi(m)} coefficients, got {len(coeffs)}")
        self.m = m
        self.coeffs = coeffs
        self._hash = None

    @classmethod
    def from_vector(cls, m: int, vec) -> CycInt:
        return cls(m, reduce_vector(m, vec))

    @classmethod
    def from_int(cls, m: int, c: int) -> CycInt:
        return cls(m, (c,) + (0,) * (euler_phi(m) - 1))

    @classmethod
    def from_exponents(cls, m: int, exponents, weights=None) -> CycInt:
        """sum over e of weight * zeta_m**e (weights default to 1)."""
        vec = [0] * m
        if weights is None:
            for e in exponents:
                vec[e % m] += 1
        else:
            for e, w in zip(exponents, weights):
                vec[e % m] += w
        return cls(m, reduce_vector(m, vec))

    @classmethod
    def zero(cls, m: int) -> CycInt:
        return cls.from_int(m, 0)

    @classmethod
    def one(cls, m: int) -> CycInt:
        return cls.from_int(m, 1)

    # -- comparison / hashing ------------------------------------------------

    def _coerce(self, other) -> CycInt:
        if isinstance(other, CycInt):
            if other.m != self.m:
                raise ParameterError(f"conductor mismatch: {self.m} vs {other.m}")
            return other
        if isinstance(other, int):
            return CycInt.from_int(self.m, other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        if isinstance(other, CycInt):
            return self.m == other.m and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.m, self.coeffs))
        return self._hash

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt(self.m, [x + y for x, y in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.m, [-x for x in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt(self.m, [x - y for x, y in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.m, [x * other for x in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_rational():
            return self * other.coeffs[0]
        if self.is_rational():
            return other * self.coeffs[0]
        return CycInt(self.m, reduce_vector(self.m, _poly_mul(list(self.coeffs), list(other.coeffs))))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ParameterError("negative powers are not ring elements")
        result, base = CycInt.one(self.m), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __floordiv__(self, other):
        return exact_div(self, self._coerce(other))

    def conj(self) -> CycInt:
        return galois_apply(-1, self)

    def to_int(self) -> int:
        return as_integer(self)

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, data) -> CycInt:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["m"], data["coeffs"])

    def __repr__(self) -> str:
        return f"CycInt({self.m}, {list(self.coeffs)})"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z^{i}")
        return " + ".join(terms) if terms else "0"


def _check_conductors(a: CycInt, b: CycInt) -> None:
    if a.m != b.m:
        raise ParameterError(f"conductor mismatch: {a.m} vs {b.m}")


def add(a: CycInt, b: CycInt) -> CycInt:
    _check_conductors(a, b)
    return a + b


def neg(a: CycInt) -> CycInt:
    return -a


def mul(a: CycInt, b: CycInt) -> CycInt:
    _check_conductors(a, b)
    return a * b


@lru_cache(maxsize=65536)
def zeta_pow(m: int, e: int) -> CycInt:
    """Canonical form of zeta_m ** (e mod m)."""
    vec = [0] * m
    vec[e % m] = 1
    return CycInt(m, reduce_vector(m, vec))


def galois_apply(s: int, a: CycInt) -> CycInt:
    """The automorphism zeta_m -> zeta_m**s."""
    m = a.m
    if gcd(s, m) != 1:
        raise ParameterError(f"s={s} is not coprime to the conductor {m}")
    vec = [0] * m
    for i, c in enumerate(a.coeffs):
        if c:
            vec[i * s % m] += c
    return CycInt(m, reduce_vector(m, vec))


def embed(a: CycInt, big_m: int) -> CycInt:
    """Image of a under zeta_m -> zeta_M**(M/m)."""
    if big_m % a.m != 0:
        raise ParameterError(f"conductor {a.m} does not divide {big_m}")
    step = big_m // a.m
    vec = [0] * big_m
    for i, c in enumerate(a.coeffs):
        if c:
            vec[i * step] = c
    return CycInt(big_m, reduce_vector(big_m, vec))


@lru_cache(maxsize=512)
def norm_data(b: CycInt) -> tuple[CycInt, int]:
    """(product of the non-identity conjugates of b, integer norm of b)."""
    if not b:
        raise ZeroDivisionError("division by zero in Z[zeta_m]")
    conj = CycInt.one(b.m)
    for s in units(b.m):
        if s % b.m != 1 % b.m:
            conj = conj * galois_apply(s, b)
    n = conj * b
    if not n.is_rational():
        raise IntegrityError("product of all conjugates is not rational")
    return conj, n.coeffs[0]


def exact_div(a: CycInt, b: CycInt) -> CycInt:
    """c with b*c == a, assuming b divides a in Z[zeta_m].

    Raises IntegrityError if the division turns out not to be exact.
    """
    _check_conductors(a, b)
    if not b:
        raise ZeroDivisionError("division by zero in Z[zeta_m]")
    if not a:
        return a
    if b.is_rational():
        conj, n = CycInt.one(b.m), b.coeffs[0]
    else:
        conj, n = norm_data(b)
    top = a * conj
    out = []
    for c in top.coeffs:
        qt, r = divmod(c, n)
        if r:
            raise IntegrityError(f"non-exact division in Z[zeta_{a.m}] (norm {n})")
        out.append(qt)
    return CycInt(a.m, out)


def as_integer(a: CycInt) -> int:
    """The rational integer a, or NonRationalError."""
    if not a.is_rational():
        raise NonRationalError(a.coeffs, a.m)
    return a.coeffs[0]
