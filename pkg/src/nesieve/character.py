"""The canonical order-ell character modulo a prime conductor f.

For f = 1 (mod ell) there are ell - 1 characters of order ell; sieve verdicts
do not depend on the choice, but for reproducibility every engine here
evaluates the *canonical* one: with w = n0^((f-1)/ell) mod f for the smallest
integer n0 >= 2 whose power is not 1, the character maps n to exponent j
where n^((f-1)/ell) = w^j (mod f).

Two engines live in this module: a lookup table (constant-time evaluation,
memory proportional to f) and direct modular exponentiation (no setup cost).
A third engine for ell = 3 based on cubic reciprocity lives in
``nesieve.eisenstein``.  All engines for the same conductor are pointwise
identical.
"""

import cmath
import math
import os
from dataclasses import dataclass

import numpy as np

from .backend import kernel
from .errors import NoCharacterError, ResourceLimitError
from .primes import PrimeList, is_prime, pow_mod, sieve_eratosthenes

# Largest conductor for which a lookup table may be built (one byte per
# residue); NESIEVE_TABLE_LIMIT overrides.
DEFAULT_TABLE_LIMIT = 10**7

ZERO = kernel.ZERO_SENTINEL


def table_limit():
    return int(os.environ.get("NESIEVE_TABLE_LIMIT", DEFAULT_TABLE_LIMIT))


@dataclass(frozen=True)
class CharValue:
    """A character value: either zero or a power of a fixed ell-th root of unity."""

    order: int
    exponent: int | None  # None encodes the zero value

    @property
    def is_zero(self):
        return self.exponent is None

    @property
    def is_one(self):
        return self.exponent == 0

    def inverse(self):
        if self.exponent is None:
            raise ZeroDivisionError("the zero character value has no inverse")
        return CharValue(self.order, (self.order - self.exponent) % self.order)

    def __mul__(self, other):
        if self.order != other.order:
            raise ValueError("cannot multiply values of different orders")
        if self.exponent is None or other.exponent is None:
            return CharValue(self.order, None)
        return CharValue(self.order, (self.exponent + other.exponent) % self.order)

    def as_complex(self):
        if self.exponent is None:
            return 0j
        return cmath.exp(2j * cmath.pi * self.exponent / self.order)


@dataclass(frozen=True)
class CharacterSpec:
    """Conductor f, order ell, and the canonical root w fixing the character."""

    f: int
    ell: int
    w: int


def make_spec(f, ell):
    """Canonical character data for prime f = 1 (mod ell), ell an odd prime."""
    if ell < 3 or ell % 2 == 0 or not is_prime(ell):
        raise ValueError(f"order must be an odd prime, got {ell}")
    if f % ell != 1:
        raise NoCharacterError(f"no order-{ell} character mod {f}: {f} != 1 (mod {ell})")
    if not is_prime(f):
        raise ValueError(f"conductor must be prime, got {f}")
    texp = (f - 1) // ell
    n0 = 2
    while True:
        w = pow_mod(n0, texp, f)
        if w != 1:
            return CharacterSpec(f, ell, w)
        n0 += 1


class _Engine:
    """Shared engine surface: exponent() is the hot path, eval() the typed one."""

    spec: CharacterSpec

    def exponent(self, n):
        raise NotImplementedError

    def eval(self, n):
        e = self.exponent(n)
        return CharValue(self.spec.ell, None if e == ZERO else e)

    def scan_args(self):
        """(mode, w, pi_a, pi_b, table) consumed by kernel.scan_conductor."""
        raise NotImplementedError

    def exponent_array(self):
        """Full exponent table when one is materialized, else None."""
        return None


class TableEngine(_Engine):
    def __init__(self, spec, table):
        self.spec = spec
        self.table = table

    def exponent(self, n):
        return int(self.table[n % self.spec.f])

    def scan_args(self):
        return kernel.MODE_TABLE, 0, 0, 0, self.table

    def exponent_array(self):
        return self.table


class PowmodEngine(_Engine):
    def __init__(self, spec):
        self.spec = spec
        f, ell, w = spec.f, spec.ell, spec.w
        self._texp = (f - 1) // ell
        self._roots = {pow(w, j, f): j for j in range(ell)}

    def exponent(self, n):
        n %= self.spec.f
        if n == 0:
            return ZERO
        return self._roots[pow(n, self._texp, self.spec.f)]

    def scan_args(self):
        return kernel.MODE_POWMOD, self.spec.w, 0, 0, None


def _factor_with_list(n, primes):
    """Distinct prime factors of n by trial division; n's cofactor must be prime."""
    factors = []
    for p in primes:
        p = int(p)
        if p * p > n:
            break
        if n % p == 0:
            factors.append(p)
            while n % p == 0:
                n //= p
    if n > 1:
        if not is_prime(n):
            raise ResourceLimitError(
                f"prime list too short to factor {n}; extend the sieve limit"
            )
        factors.append(n)
    return factors


def find_primitive_root(f, primes=None):
    """Smallest primitive root of the prime f."""
    if primes is None:
        primes = sieve_eratosthenes(max(math.isqrt(f) + 1, 3)).primes
    factors = _factor_with_list(f - 1, primes)
    g = 2
    while True:
        if all(pow(g, (f - 1) // q, f) != 1 for q in factors):
            return g
        g += 1


def build_table_engine(spec, primes=None, limit=None):
    """Materialize the full exponent lookup table (constant-time evaluation)."""
    cap = table_limit() if limit is None else limit
    if spec.f > cap:
        raise ResourceLimitError(
            f"conductor {spec.f} exceeds the table-engine cap of {cap} entries"
        )
    g = find_primitive_root(spec.f, primes)
    table = kernel.build_exponent_table(spec.f, spec.ell, spec.w, g)
    return TableEngine(spec, table)


def build_powmod_engine(spec):
    """Exponentiation-based engine: no precomputation beyond the ell roots."""
    return PowmodEngine(spec)


def eval_char(engine, n):
    """Character value at n (zero exactly when f divides n)."""
    return engine.eval(n)


@dataclass(frozen=True)
class IntervalSumResult:
    """Counts per exponent over an interval, and |sum of the complex values|."""

    counts: np.ndarray
    magnitude: float

    @property
    def total(self):
        return int(self.counts.sum())


def interval_sum(engine, N, H):
    """Character sum over the integers n in (N, N+H].

    Every integer in the interval contributes its own term (zero terms for
    multiples of f), so intervals longer than a period accumulate repeats.
    """
    if H < 1:
        raise ValueError("interval length must be at least 1")
    ell = engine.spec.ell
    f = engine.spec.f
    table = engine.exponent_array()
    if table is not None:
        idx = np.arange(N + 1, N + H + 1, dtype=np.int64) % f
        exps = table[idx]
        counts = np.bincount(exps[exps != ZERO], minlength=ell)[:ell].astype(np.int64)
    else:
        counts = np.zeros(ell, dtype=np.int64)
        for n in range(N + 1, N + H + 1):
            e = engine.exponent(n)
            if e != ZERO:
                counts[e] += 1
    z = sum(int(counts[e]) * cmath.exp(2j * cmath.pi * e / ell) for e in range(ell))
    return IntervalSumResult(counts, abs(z))
