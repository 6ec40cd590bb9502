"""Pure-Python arithmetic kernels.

Drop-in fallback for the compiled extension (``nesieve._ckernel``).  Both
modules expose the same functions with identical semantics, so results never
depend on which backend is active; only speed does.
"""

import numpy as np

BACKEND_NAME = "python"

# Scan engine codes shared with the compiled kernel.
MODE_POWMOD = 0
MODE_CUBIC = 1
MODE_TABLE = 2

# Value used in exponent arrays/tables for arguments divisible by the modulus.
ZERO_SENTINEL = 255

# Miller-Rabin witnesses making the test deterministic for all n < 2**64
# (the first twelve primes suffice well beyond that range).
MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_U64_LIMIT = 1 << 64


def pow_mod(base, exp, mod):
    """base**exp mod ``mod`` with exp >= 0 and mod >= 2."""
    if mod < 2:
        raise ValueError("modulus must be at least 2")
    if exp < 0:
        raise ValueError("exponent must be nonnegative")
    return pow(base, exp, mod)


def is_prime(n):
    """Deterministic primality test for 0 <= n < 2**64."""
    if n < 0 or n >= _U64_LIMIT:
        raise ValueError("is_prime requires 0 <= n < 2**64")
    if n < 2:
        return False
    for p in MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def inv_mod(a, m):
    """Inverse of a modulo m in [1, m); ValueError when gcd(a, m) != 1."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    r0, r1 = m, a % m
    t0, t1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if r0 != 1:
        raise ValueError(f"{a} is not invertible modulo {m}")
    return t0 % m


# ---------------------------------------------------------------------------
# Arithmetic in Z[omega], omega^2 + omega + 1 = 0, on coordinate pairs
# (a, b) <-> a + b*omega.  norm(a, b) = a^2 - a*b + b^2.
# ---------------------------------------------------------------------------


def _mul(a1, b1, a2, b2):
    return a1 * a2 - b1 * b2, a1 * b2 + b1 * a2 - b1 * b2


def _norm(a, b):
    return a * a - a * b + b * b


def _round_div(p, q):
    # nearest integer to p/q for q > 0, ties toward +infinity
    return (2 * p + q) // (2 * q)


def eis_divmod(a1, b1, a2, b2):
    """(q, r) with a1+b1*w = q*(a2+b2*w) + r and norm(r) < norm(a2+b2*w)."""
    n = _norm(a2, b2)
    if n == 0:
        raise ZeroDivisionError("division by zero in Z[omega]")
    xr = a1 * a2 - a1 * b2 + b1 * b2  # coordinates of (a1+b1*w) * conj(a2+b2*w)
    xi = b1 * a2 - a1 * b2
    qa = _round_div(xr, n)
    qb = _round_div(xi, n)
    ra = a1 - (qa * a2 - qb * b2)
    rb = b1 - (qa * b2 + qb * a2 - qb * b2)
    return qa, qb, ra, rb


def eis_gcd(a1, b1, a2, b2):
    """A greatest common divisor (unique up to units)."""
    while a2 or b2:
        _, _, r1, r2 = eis_divmod(a1, b1, a2, b2)
        a1, b1, a2, b2 = a2, b2, r1, r2
    return a1, b1


# Units paired with their inverses: (1, w, w^2, -1, -w, -w^2).
_UNITS = (
    ((1, 0), (1, 0)),
    ((0, 1), (-1, -1)),
    ((-1, -1), (0, 1)),
    ((-1, 0), (-1, 0)),
    ((0, -1), (1, 1)),
    ((1, 1), (0, -1)),
)

# omega-exponent of each unit u = (+-1) * omega^k, keyed by coordinates.
_UNIT_OMEGA_EXP = {
    (1, 0): 0, (-1, 0): 0,
    (0, 1): 1, (0, -1): 1,
    (-1, -1): 2, (1, 1): 2,
}


def primary_associate(a, b):
    """The associate congruent to 1 mod 3, plus the unit factored out.

    Returns (pa, pb, ua, ub) with (a, b) = (ua, ub) * (pa, pb).  Exactly one
    of the six associates lies in the primary class; requires norm coprime
    to 3.
    """
    if _norm(a, b) % 3 == 0:
        raise ValueError("primary associate undefined when the norm is divisible by 3")
    for unit, inverse in _UNITS:
        pa, pb = _mul(unit[0], unit[1], a, b)
        if (pa - 1) % 3 == 0 and pb % 3 == 0:
            return pa, pb, inverse[0], inverse[1]
    raise AssertionError("unreachable: some associate is always primary")


def _primary_params(a, b):
    # (a, b) primary: a = 1 + 3m', b = 3n'; the symbol laws depend on
    # m' and n' modulo 3 only.
    return ((a - 1) // 3) % 3, (b // 3) % 3


def _omega_symbol_exp(m, n):
    # (omega / beta)_3 = omega^(-(m+n))  for primary beta
    return (-(m + n)) % 3


def _lambda_symbol_exp(m, n):
    # (lambda / beta)_3 for lambda = 1 - omega and primary beta; the exponent
    # is a linear form in (m, n) fixed here and frozen by the exhaustive
    # power-residue oracle tests.
    return m % 3


def cubic_symbol(a1, b1, a2, b2):
    """Exponent e in {0,1,2} of the cubic residue symbol, value omega^e.

    Jacobi-style: the denominator need not be prime; for prime denominators
    the result matches the classical power-residue definition.  ValueError
    when the denominator is a unit or has norm divisible by 3, or when the
    operands share a non-unit factor.
    """
    n2 = _norm(a2, b2)
    if n2 == 0 or n2 % 3 == 0:
        raise ValueError("denominator norm must be nonzero and coprime to 3")
    if n2 == 1:
        raise ValueError("denominator must not be a unit")
    a2, b2, _, _ = primary_associate(a2, b2)  # denominator units never matter
    t = 0
    while True:
        _, _, a1, b1 = eis_divmod(a1, b1, a2, b2)
        if a1 == 0 and b1 == 0:
            raise ValueError("cubic symbol undefined for non-coprime operands")
        v = 0
        while _norm(a1, b1) % 3 == 0:
            # strip lambda = 1 - omega:  x / lambda = x * (2 + omega) / 3
            xa, xb = _mul(a1, b1, 2, 1)
            a1, b1 = xa // 3, xb // 3
            v += 1
        m, n = _primary_params(a2, b2)
        if v:
            t += v * _lambda_symbol_exp(m, n)
        a1, b1, ua, ub = primary_associate(a1, b1)
        t += _UNIT_OMEGA_EXP[(ua, ub)] * _omega_symbol_exp(m, n)
        if a1 == 1 and b1 == 0:
            return t % 3
        a1, b1, a2, b2 = a2, b2, a1, b1


# ---------------------------------------------------------------------------
# Character-evaluation helpers
# ---------------------------------------------------------------------------


def _root_exponents(f, ell, w):
    # map w^j mod f -> j for j in [0, ell)
    roots = {}
    x = 1
    for j in range(ell):
        roots[x] = j
        x = x * w % f
    return roots


def build_exponent_table(f, ell, w, g):
    """Exponent lookup table for the canonical order-ell character mod f.

    ``g`` must be a primitive root of f; entry n holds the exponent of the
    character at n, entry 0 holds the zero sentinel.
    """
    roots = _root_exponents(f, ell, w)
    jg = roots[pow(g, (f - 1) // ell, f)]
    table = np.empty(f, dtype=np.uint8)
    table[0] = ZERO_SENTINEL
    x = 1
    e = 0
    for _ in range(f - 1):
        table[x] = e
        x = x * g % f
        e += jg
        if e >= ell:
            e -= ell
    return table


def powmod_exponents(f, ell, w, lo, hi):
    """Character exponents of n in [lo, hi) via modular exponentiation."""
    roots = _root_exponents(f, ell, w)
    texp = (f - 1) // ell
    out = np.empty(hi - lo, dtype=np.uint8)
    for i, n in enumerate(range(lo, hi)):
        out[i] = ZERO_SENTINEL if n % f == 0 else roots[pow(n, texp, f)]
    return out


def cubic_exponents(f, pi_a, pi_b, lo, hi):
    """Character exponents of n in [lo, hi) via the cubic residue symbol."""
    out = np.empty(hi - lo, dtype=np.uint8)
    for i, n in enumerate(range(lo, hi)):
        m = n % f
        out[i] = ZERO_SENTINEL if m == 0 else cubic_symbol(m, 0, pi_a, pi_b)
    return out


def scan_conductor(f, ell, primes, mode, w=0, pi_a=0, pi_b=0, table=None):
    """Inner sieve loop for one conductor; returns (q1, q2, r, evals).

    Scans the prime list in ascending order, evaluating the canonical
    character once per prime: the first two non-residues become q1 and q2,
    and the first later prime whose value is the inverse of the q2 value and
    whose residue class mod q1^2 is admissible becomes r.  r == 0 means the
    list was exhausted first.
    """
    if mode == MODE_POWMOD:
        roots = _root_exponents(f, ell, w)
        texp = (f - 1) // ell

        def expo(p):
            return roots[pow(p, texp, f)]
    elif mode == MODE_CUBIC:
        def expo(p):
            return cubic_symbol(p, 0, pi_a, pi_b)
    elif mode == MODE_TABLE:
        def expo(p):
            return int(table[p])
    else:
        raise ValueError(f"unknown scan mode {mode}")

    q1 = q2 = r = 0
    zeta = -1
    q1sq = xconst = 0
    evals = 0
    for p in primes:
        p = int(p)
        if p >= f:
            break
        e = expo(p)
        evals += 1
        if e == 0:
            continue
        if q1 == 0:
            q1 = p
        elif q2 == 0:
            q2 = p
            zeta = (ell - e) % ell
            q1sq = q1 * q1
            xconst = f % q1sq * inv_mod(q2, q1sq) % q1sq
        elif e == zeta:
            # p is excluded iff f * q2^-1 * p^-1 falls in [1, q1) mod q1^2
            x = xconst * inv_mod(p % q1sq, q1sq) % q1sq
            if not 1 <= x < q1:
                r = p
                break
    return q1, q2, r, evals
