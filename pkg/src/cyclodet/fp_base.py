"""Prime fields, primitive roots, discrete-log tables and small extension fields.

Elements of F_p are plain ints in ``range(p)``.  Elements of F_q (q = p^m) are
ints in ``range(q)`` whose base-p digits are the coefficients of a polynomial
in the residue class ring F_p[x]/(modulus), constant term in the lowest digit.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from sympy import factorint, isprime

from cyclodet.errors import ParameterError

CACHE_ENV = "CYCLODET_CACHE_DIR"
DEFAULT_EXT_CAP = 2**16


@lru_cache(maxsize=None)
def prime_factors(n: int) -> tuple[int, ...]:
    return tuple(sorted(factorint(n)))


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def has_order(a: int, order: int, mulpow) -> bool:
    """True iff ``a`` has multiplicative order exactly ``order``.

    ``mulpow(a, e)`` must compute a**e in the relevant group.
    """
    if mulpow(a, order) != 1:
        return False
    return all(mulpow(a, order // r) != 1 for r in prime_factors(order)) if order > 1 else True


def least_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    for g in range(2, p):
        if has_order(g, p - 1, lambda a, e: pow(a, e, p)):
            return g
    raise ParameterError(f"{p} has no primitive root")  # unreachable for primes


@dataclass(frozen=True)
class PrimeContext:
    """F_p together with a fixed primitive root ``g`` and its index tables.

    ``ind[x]`` is the discrete log of x base g for 1 <= x < p (``ind[0]`` is
    -1 as a sentinel); ``exp[t] = g**t mod p`` for 0 <= t < p-1.  The
    character chi^j is realized as x -> zeta_{p-1}^(j * ind[x]).
    """

    p: int
    g: int
    ind: tuple[int, ...] = field(repr=False)
    exp: tuple[int, ...] = field(repr=False)

    def index(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ParameterError("0 has no discrete logarithm")
        return self.ind[x]

    def power_of_g(self, t: int) -> int:
        return self.exp[t % (self.p - 1)]

    def to_json(self) -> dict:
        return {"p": self.p, "g": self.g, "ind": list(self.ind[1:])}


@dataclass(frozen=True)
class DivisorPair:
    """A factorization p - 1 = k * n with 1 <= k < p - 1."""

    p: int
    k: int
    n: int

    @classmethod
    def from_k(cls, p: int, k: int) -> DivisorPair:
        if k < 1 or (p - 1) % k != 0 or k >= p - 1:
            raise ParameterError(f"k={k} is not a divisor of p-1={p - 1} with 1 <= k < p-1")
        return cls(p, k, (p - 1) // k)

    def __post_init__(self):
        if self.k * self.n != self.p - 1 or not 1 <= self.k < self.p - 1:
            raise ParameterError(f"invalid divisor pair k={self.k}, n={self.n} for p={self.p}")


def valid_pairs(p: int) -> list[DivisorPair]:
    """All divisor pairs for p, ordered by k."""
    return [DivisorPair(p, k, (p - 1) // k) for k in divisors(p - 1) if k < p - 1]


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or p < 3 or not isprime(p):
        raise ParameterError(f"p={p} must be an odd prime")


def _cache_file(cache_dir: str | os.PathLike, p: int) -> Path:
    return Path(cache_dir) / f"prime_{p}.json"


def _build_tables(p: int, g: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    exp = [1] * (p - 1)
    for t in range(1, p - 1):
        exp[t] = exp[t - 1] * g % p
    ind = [-1] * p
    for t, x in enumerate(exp):
        ind[x] = t
    return tuple(ind), tuple(exp)


def make_prime_context(p: int, generator: int | None = None, cache_dir: str | os.PathLike | None = None) -> PrimeContext:
    """Build the context for an odd prime p.

    The least primitive root is used unless ``generator`` overrides it.  When a
    cache directory is given (or set through ``CYCLODET_CACHE_DIR``) the
    least-root tables are read from / written to ``prime_<p>.json`` there;
    overridden generators bypass the cache.
    """
    _check_prime(p)
    if generator is not None:
        g = generator % p
        if not has_order(g, p - 1, lambda a, e: pow(a, e, p)):
            raise ParameterError(f"{generator} is not a primitive root modulo {p}")
        ind, exp = _build_tables(p, g)
        return PrimeContext(p, g, ind, exp)

    cache_dir = cache_dir if cache_dir is not None else os.environ.get(CACHE_ENV)
    if cache_dir:
        path = _cache_file(cache_dir, p)
        if path.exists():
            data = json.loads(path.read_text())
            if data.get("p") != p:
                raise ParameterError(f"cache file {path} is keyed by a different prime")
            g = data["g"]
            ind = (-1, *data["ind"])
            exp = [0] * (p - 1)
            for x in range(1, p):
                exp[ind[x]] = x
            return PrimeContext(p, g, tuple(ind), tuple(exp))
    g = least_primitive_root(p)
    ind, exp = _build_tables(p, g)
    ctx = PrimeContext(p, g, ind, exp)
    if cache_dir:
        path = _cache_file(cache_dir, p)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(ctx.to_json()))
    return ctx


def unit_subgroup(ctx: PrimeContext, pair: DivisorPair) -> list[int]:
    """U_k = {x : x^k = 1}, sorted ascending."""
    _check_pair(ctx.p, pair)
    return sorted(ctx.power_of_g(pair.n * t) for t in range(pair.k))


def coset_reps(ctx: PrimeContext, pair: DivisorPair) -> list[int]:
    """Representatives g^0, ..., g^(n-1) of F_p^x / U_k, in exponent order."""
    _check_pair(ctx.p, pair)
    return [ctx.power_of_g(t) for t in range(pair.n)]


def _check_pair(p: int, pair: DivisorPair) -> None:
    if pair.p != p:
        raise ParameterError(f"divisor pair belongs to p={pair.p}, not p={p}")


# --- polynomials over F_p, coefficient lists constant term first ---------------


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _poly_trim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _poly_trim(a)
    return a


def _digits(e: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        e, r = divmod(e, p)
        out.append(r)
    return out


def _is_irreducible(f: list[int], p: int) -> bool:
    m = len(f) - 1
    if m == 1:
        return True
    for d in range(1, m // 2 + 1):
        for e in range(p**d):
            g = _digits(e, p, d) + [1]
            if not _poly_mod(list(f), g, p):
                return False
    return True


@dataclass(frozen=True)
class ExtFieldContext:
    """F_q for q = p^m with full exp/log tables."""

    p: int
    m: int
    modulus: tuple[int, ...]
    generator: int
    exp: tuple[int, ...] = field(repr=False)
    log: tuple[int, ...] = field(repr=False)

    @property
    def q(self) -> int:
        return self.p**self.m

    def digits(self, a: int) -> list[int]:
        return _digits(a, self.p, self.m)

    def from_digits(self, ds) -> int:
        out = 0
        for c in reversed(list(ds)):
            out = out * self.p + c % self.p
        return out

    def add(self, a: int, b: int) -> int:
        p = self.p
        out, scale = 0, 1
        for _ in range(self.m):
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += (ra + rb) % p * scale
            scale *= p
        return out

    def neg(self, a: int) -> int:
        return self.from_digits([-c for c in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 1 if e == 0 else 0
        return self.exp[self.log[a] * e % (self.q - 1)]

    def index(self, a: int) -> int:
        if a == 0:
            raise ParameterError("0 has no discrete logarithm")
        return self.log[a]

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)


def make_ext_context(p: int, m: int, cap: int = DEFAULT_EXT_CAP) -> ExtFieldContext:
    """Build F_{p^m} from the lexicographically least monic irreducible modulus.

    Candidates are ordered by the tuple (c_{m-1}, ..., c_0) of non-leading
    coefficients; the generator is the least element (by integer encoding) of
    order q - 1.
    """
    if not isinstance(p, int) or not isprime(p):
        raise ParameterError(f"p={p} is not prime")
    if m < 1:
        raise ParameterError("extension degree must be >= 1")
    q = p**m
    if q > cap:
        raise ParameterError(f"q={q} exceeds the enumeration cap {cap}")
    for e in range(p**m):
        f = _digits(e, p, m) + [1]
        if _is_irreducible(f, p):
            modulus = f
            break
    else:  # pragma: no cover - irreducibles exist in every degree
        raise ParameterError(f"no irreducible of degree {m} over F_{p}")

    def polymul(a: int, b: int) -> int:
        da, db = _digits(a, p, m), _digits(b, p, m)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        r = _poly_mod(prod, modulus, p)
        return sum(c * p**i for i, c in enumerate(r))

    def polypow(a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = polymul(result, base)
            base = polymul(base, base)
            e >>= 1
        return result

    if q == 2:
        gen = 1
    else:
        gen = next(a for a in range(1, q) if has_order(a, q - 1, polypow))
    exp = [1] * (q - 1)
    for t in range(1, q - 1):
        exp[t] = polymul(exp[t - 1], gen)
    log = [-1] * q
    for t, x in enumerate(exp):
        log[x] = t
    return ExtFieldContext(p, m, tuple(modulus), gen, tuple(exp), tuple(log))


def trace(ext: ExtFieldContext, a: int) -> int:
    """Absolute trace a + a^p + ... + a^(p^(m-1)), returned as an int in range(p)."""
    if not 0 <= a < ext.q:
        raise ParameterError(f"{a} is not an element of F_{ext.q}")
    total, x = 0, a
    for _ in range(ext.m):
        total = ext.add(total, x)
        x = ext.frobenius(x)
    if total >= ext.p:
        raise ArithmeticError("trace left the prime subfield")
    return total
