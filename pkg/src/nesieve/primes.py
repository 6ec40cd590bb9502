"""Prime generation, deterministic primality, and modular arithmetic.

Everything here is exact integer math; the sieve arrays are the only part
with a real memory footprint, so they carry an explicit budget.
"""

import math
from dataclasses import dataclass

import numpy as np

from .backend import kernel
from .errors import ResourceLimitError

# Workspace allowed for a direct sieve (one byte per candidate).
DEFAULT_SIEVE_BUDGET = 1 << 27

# Window size for segmented enumeration.
_SEGMENT = 1 << 21


@dataclass(frozen=True)
class PrimeList:
    """All primes up to ``limit``, ascending."""

    limit: int
    primes: np.ndarray

    def __len__(self):
        return len(self.primes)

    def __iter__(self):
        return iter(self.primes)

    def __getitem__(self, i):
        return int(self.primes[i])


def sieve_eratosthenes(limit, max_bytes=DEFAULT_SIEVE_BUDGET):
    """Sieve of Eratosthenes up to and including ``limit``."""
    if limit < 2:
        raise ValueError("sieve limit must be at least 2")
    if limit + 1 > max_bytes:
        raise ResourceLimitError(
            f"sieve up to {limit} needs {limit + 1} bytes, budget is {max_bytes}"
        )
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return PrimeList(limit, np.flatnonzero(mask).astype(np.int64))


def primes_in_range(lo, hi, base=None, max_bytes=DEFAULT_SIEVE_BUDGET):
    """All primes in [lo, hi] as an int64 array, by segmented sieve."""
    if hi < lo:
        return np.empty(0, dtype=np.int64)
    lo = max(lo, 2)
    root = math.isqrt(hi)
    if base is None or base.limit < root:
        base = sieve_eratosthenes(max(root, 2), max_bytes=max_bytes)
    out = []
    for start in range(lo, hi + 1, _SEGMENT):
        stop = min(start + _SEGMENT - 1, hi)
        mask = np.ones(stop - start + 1, dtype=bool)
        for p in base.primes:
            p = int(p)
            if p * p > stop:
                break
            first = max(p * p, (start + p - 1) // p * p)
            if first <= stop:
                mask[first - start :: p] = False
        if start <= 1:
            mask[: 2 - start] = False
        seg = np.flatnonzero(mask).astype(np.int64) + start
        out.append(seg)
    return np.concatenate(out) if out else np.empty(0, dtype=np.int64)


def is_prime(n):
    """Deterministic primality for 0 <= n < 2**64 (fixed Miller-Rabin bases)."""
    return kernel.is_prime(int(n))


def pow_mod(base, exp, m):
    """base**exp mod m; safe for moduli up to 2**63."""
    return kernel.pow_mod(int(base), int(exp), int(m))


def inv_mod(a, m):
    """Inverse of a mod m in [1, m); raises ValueError unless gcd(a, m) = 1."""
    return kernel.inv_mod(int(a), int(m))
