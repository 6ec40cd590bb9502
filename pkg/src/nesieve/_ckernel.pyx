# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled arithmetic kernels.

Mirrors ``nesieve._pykernel`` function for function; the pure-Python module
is the reference implementation and the parity tests hold the two together.
Inputs beyond the guarded 64/128-bit ranges raise OverflowError so callers
can fall back.
"""

import numpy as np

BACKEND_NAME = "c"

MODE_POWMOD = 0
MODE_CUBIC = 1
MODE_TABLE = 2

ZERO_SENTINEL = 255

MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

cdef extern from *:
    ctypedef long long i128 "__int128_t"
    ctypedef unsigned long long u128 "__uint128_t"

ctypedef unsigned long long u64
ctypedef long long i64

cdef u64 _U63 = (<u64> 1) << 63
cdef i64 _COORD_GUARD = (<i64> 1) << 61
cdef unsigned char _ZERO = 255  # C-level copy of ZERO_SENTINEL


# ---------------------------------------------------------------------------
# Modular arithmetic
# ---------------------------------------------------------------------------

cdef u64 _powmod_u64(u64 base, u64 exp, u64 mod) noexcept nogil:
    cdef u128 acc = 1
    cdef u128 b = base % mod
    while exp:
        if exp & 1:
            acc = acc * b % mod
        b = b * b % mod
        exp >>= 1
    return <u64> acc


def pow_mod(base, exp, mod):
    """base**exp mod ``mod`` with exp >= 0 and mod >= 2."""
    if mod < 2:
        raise ValueError("modulus must be at least 2")
    if exp < 0:
        raise ValueError("exponent must be nonnegative")
    if mod >= _U63 or exp >= _U63:
        return pow(base, exp, mod)  # outside the fast path's range
    return _powmod_u64(base % mod, exp, mod)


cdef bint _mr_composite(u64 n, u64 a, u64 d, int s) noexcept nogil:
    cdef u128 x = 1
    cdef u128 b = a % n
    cdef u64 e = d
    cdef int i
    while e:
        if e & 1:
            x = x * b % n
        b = b * b % n
        e >>= 1
    if x == 1 or x == n - 1:
        return False
    for i in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n):
    """Deterministic primality test for 0 <= n < 2**64."""
    if n < 0 or n >> 64:
        raise ValueError("is_prime requires 0 <= n < 2**64")
    cdef u64 m = n
    if m < 2:
        return False
    cdef u64 p
    for p in MR_BASES:
        if m % p == 0:
            return m == p
    cdef u64 d = m - 1
    cdef int s = 0
    while not d & 1:
        d >>= 1
        s += 1
    for p in MR_BASES:
        if _mr_composite(m, p, d, s):
            return False
    return True


cdef u64 _inv_mod_u64(u64 a, u64 m) except? 0:
    cdef u64 r0 = m, r1 = a % m, tmp, q
    cdef i128 t0 = 0, t1 = 1, ttmp
    while r1:
        q = r0 // r1
        tmp = r0 - q * r1
        r0 = r1
        r1 = tmp
        ttmp = t0 - <i128> q * t1
        t0 = t1
        t1 = ttmp
    if r0 != 1:
        raise ValueError(f"{a} is not invertible modulo {m}")
    if t0 < 0:
        t0 += m
    return <u64> t0


def inv_mod(a, m):
    """Inverse of a modulo m in [1, m); ValueError when gcd(a, m) != 1."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    if m >= _U63:
        raise OverflowError("modulus beyond the compiled kernel's 2**63 range")
    return _inv_mod_u64(a % m, m)


# ---------------------------------------------------------------------------
# Z[omega] arithmetic on 128-bit coordinates
# ---------------------------------------------------------------------------

cdef inline i128 _fdiv(i128 a, i128 b) noexcept nogil:
    # floor division, b > 0
    cdef i128 q = a / b
    if a % b != 0 and a < 0:
        q -= 1
    return q

cdef inline int _pmod3(i128 a) noexcept nogil:
    # a mod 3 in [0, 3) regardless of sign (C % truncates toward zero)
    cdef int r = <int> (a % 3)
    return r + 3 if r < 0 else r

cdef inline i128 _round_div(i128 p, i128 q) noexcept nogil:
    # nearest integer to p/q for q > 0, ties toward +infinity
    return _fdiv(2 * p + q, 2 * q)

cdef inline i128 _norm128(i128 a, i128 b) noexcept nogil:
    return a * a - a * b + b * b

cdef void _divmod128(i128 a1, i128 b1, i128 a2, i128 b2,
                     i128 *ra, i128 *rb) noexcept nogil:
    cdef i128 n = _norm128(a2, b2)
    cdef i128 xr = a1 * a2 - a1 * b2 + b1 * b2
    cdef i128 xi = b1 * a2 - a1 * b2
    cdef i128 qa = _round_div(xr, n)
    cdef i128 qb = _round_div(xi, n)
    ra[0] = a1 - (qa * a2 - qb * b2)
    rb[0] = b1 - (qa * b2 + qb * a2 - qb * b2)

cdef void _gcd128(i128 a1, i128 b1, i128 a2, i128 b2,
                  i128 *ga, i128 *gb) noexcept nogil:
    cdef i128 ra, rb
    while a2 != 0 or b2 != 0:
        _divmod128(a1, b1, a2, b2, &ra, &rb)
        a1 = a2
        b1 = b2
        a2 = ra
        b2 = rb
    ga[0] = a1
    gb[0] = b1

# The six units (1, w, w^2, -1, -w, -w^2) with inverses and omega-exponents.
cdef i128[6][2] _UNIT = [[1, 0], [0, 1], [-1, -1], [-1, 0], [0, -1], [1, 1]]
cdef i128[6][2] _UNIT_INV = [[1, 0], [-1, -1], [0, 1], [-1, 0], [1, 1], [0, -1]]
cdef int[6] _UNIT_WEXP = [0, 1, 2, 0, 1, 2]

cdef int _primary128(i128 a, i128 b, i128 *pa, i128 *pb) noexcept nogil:
    # returns the unit index u with unit*x primary, writing primary to (pa, pb);
    # -1 when the norm is divisible by 3
    cdef int i
    cdef i128 ua, ub, ca, cb
    if _norm128(a, b) % 3 == 0:
        return -1
    for i in range(6):
        ua = _UNIT[i][0]
        ub = _UNIT[i][1]
        ca = ua * a - ub * b
        cb = ua * b + ub * a - ub * b
        if (ca - 1) % 3 == 0 and cb % 3 == 0:
            pa[0] = ca
            pb[0] = cb
            return i
    return -1  # unreachable

cdef int _cubic_core(i128 a1, i128 b1, i128 a2, i128 b2) except -2:
    cdef i128 n2 = _norm128(a2, b2)
    cdef i128 xa, xb, pa, pb
    cdef int t = 0, ui, m, n, v
    if n2 == 0 or n2 % 3 == 0:
        raise ValueError("denominator norm must be nonzero and coprime to 3")
    if n2 == 1:
        raise ValueError("denominator must not be a unit")
    _primary128(a2, b2, &pa, &pb)
    a2 = pa
    b2 = pb
    while True:
        _divmod128(a1, b1, a2, b2, &xa, &xb)
        a1 = xa
        b1 = xb
        if a1 == 0 and b1 == 0:
            raise ValueError("cubic symbol undefined for non-coprime operands")
        v = 0
        while _norm128(a1, b1) % 3 == 0:
            # divide by lambda = 1 - omega:  x / lambda = x * (2 + omega) / 3
            xa = (2 * a1 - b1) / 3
            xb = (a1 + b1) / 3
            a1 = xa
            b1 = xb
            v += 1
        m = _pmod3(_fdiv(a2 - 1, 3))
        n = _pmod3(b2 / 3)
        if v:
            t += v * m  # (lambda/beta) = omega^m
        ui = _primary128(a1, b1, &pa, &pb)
        a1 = pa
        b1 = pb
        # numerator = unit^-1 * primary; (omega/beta) = omega^(-(m+n))
        t += ((3 - _UNIT_WEXP[ui]) % 3) * _pmod3(-(m + n))
        if a1 == 1 and b1 == 0:
            return t % 3
        xa = a1
        xb = b1
        a1 = a2
        b1 = b2
        a2 = xa
        b2 = xb


cdef inline bint _coords_ok(object a, object b):
    return -_COORD_GUARD < a < _COORD_GUARD and -_COORD_GUARD < b < _COORD_GUARD


def eis_gcd(a1, b1, a2, b2):
    """A greatest common divisor in Z[omega] (unique up to units)."""
    if not (_coords_ok(a1, b1) and _coords_ok(a2, b2)):
        raise OverflowError("coordinates beyond the compiled kernel's range")
    cdef i128 ga, gb
    _gcd128(a1, b1, a2, b2, &ga, &gb)
    return int(ga), int(gb)


def primary_associate(a, b):
    """(pa, pb, ua, ub) with (a, b) = (ua, ub) * (pa, pb) and (pa, pb) = 1 mod 3."""
    if not _coords_ok(a, b):
        raise OverflowError("coordinates beyond the compiled kernel's range")
    cdef i128 pa, pb
    cdef int ui = _primary128(a, b, &pa, &pb)
    if ui < 0:
        raise ValueError("primary associate undefined when the norm is divisible by 3")
    return int(pa), int(pb), int(_UNIT_INV[ui][0]), int(_UNIT_INV[ui][1])


def cubic_symbol(a1, b1, a2, b2):
    """Exponent e in {0,1,2} of the cubic residue symbol, value omega^e."""
    if not (_coords_ok(a1, b1) and _coords_ok(a2, b2)):
        raise OverflowError("coordinates beyond the compiled kernel's range")
    return _cubic_core(a1, b1, a2, b2)


# ---------------------------------------------------------------------------
# Character evaluation and the conductor scan
# ---------------------------------------------------------------------------


def build_exponent_table(f, ell, w, g):
    """Exponent lookup table for the canonical order-ell character mod f."""
    cdef u64 cf = f, cw = w, cg = g
    cdef int cell = ell
    cdef u64[256] roots
    cdef int j, jg = -1
    cdef u64 x = 1
    for j in range(cell):
        roots[j] = x
        x = <u64> (<u128> x * cw % cf)
    x = _powmod_u64(cg, (cf - 1) // cell, cf)
    for j in range(cell):
        if roots[j] == x:
            jg = j
            break
    if jg < 0:
        raise ValueError("w does not generate the order-ell roots")
    table = np.empty(f, dtype=np.uint8)
    cdef unsigned char[::1] tv = table
    tv[0] = _ZERO
    cdef u64 i, e = 0
    x = 1
    with nogil:
        for i in range(cf - 1):
            tv[x] = <unsigned char> e
            x = <u64> (<u128> x * cg % cf)
            e += jg
            if e >= <u64> cell:
                e -= cell
    return table


def powmod_exponents(f, ell, w, lo, hi):
    """Character exponents of n in [lo, hi) via modular exponentiation."""
    cdef u64 cf = f, cw = w
    cdef int cell = ell
    cdef u64 texp = (cf - 1) // cell
    cdef u64[256] roots
    cdef int j
    cdef u64 x = 1
    for j in range(cell):
        roots[j] = x
        x = <u64> (<u128> x * cw % cf)
    out = np.empty(hi - lo, dtype=np.uint8)
    cdef unsigned char[::1] ov = out
    cdef u64 n, start = lo % cf
    cdef Py_ssize_t i, count = hi - lo
    cdef int e
    with nogil:
        n = start
        for i in range(count):
            if n == 0:
                ov[i] = _ZERO
            else:
                x = _powmod_u64(n, texp, cf)
                e = 0
                for j in range(cell):
                    if roots[j] == x:
                        e = j
                        break
                ov[i] = <unsigned char> e
            n += 1
            if n == cf:
                n = 0
    return out


def cubic_exponents(f, pi_a, pi_b, lo, hi):
    """Character exponents of n in [lo, hi) via the cubic residue symbol."""
    cdef u64 cf = f
    cdef i128 pa = pi_a, pb = pi_b
    out = np.empty(hi - lo, dtype=np.uint8)
    cdef unsigned char[::1] ov = out
    cdef u64 n, start = lo % cf
    cdef Py_ssize_t i, count = hi - lo
    n = start
    for i in range(count):
        if n == 0:
            ov[i] = _ZERO
        else:
            ov[i] = <unsigned char> _cubic_core(n, 0, pa, pb)
        n += 1
        if n == cf:
            n = 0
    return out


def scan_conductor(f, ell, primes, int mode, w=0, pi_a=0, pi_b=0, table=None):
    """Inner sieve loop for one conductor; returns (q1, q2, r, evals).

    Same contract as the pure-Python version: ascending scan of the prime
    list, q1/q2 the first two non-residues, r the first later prime with the
    inverse value of q2's that dodges the excluded classes mod q1^2.
    """
    if f >> 63:
        raise OverflowError("conductor beyond the compiled kernel's 2**63 range")
    cdef u64 cf = f, cw = w
    cdef int cell = ell
    cdef const i64[::1] pv = primes
    cdef const unsigned char[::1] tv
    cdef bint has_table = False
    if mode == MODE_TABLE:
        tv = table
        has_table = True
    elif mode == MODE_CUBIC:
        if cf >= <u64> _COORD_GUARD:
            raise OverflowError("cubic scan limited to conductors below 2**61")
    elif mode != MODE_POWMOD:
        raise ValueError(f"unknown scan mode {mode}")

    cdef u64[256] roots
    cdef u64 texp = 0, x
    cdef int j
    if mode == MODE_POWMOD:
        texp = (cf - 1) // cell
        x = 1
        for j in range(cell):
            roots[j] = x
            x = <u64> (<u128> x * cw % cf)

    cdef i128 pa = pi_a, pb = pi_b
    cdef u64 q1 = 0, q2 = 0, r = 0, zeta = 0, q1sq = 0, xconst = 0
    cdef u64 p, evals = 0, xv
    cdef int e
    cdef bint have_q2 = False
    cdef Py_ssize_t i, n_primes = pv.shape[0]

    for i in range(n_primes):
        p = <u64> pv[i]
        if p >= cf:
            break
        if mode == MODE_POWMOD:
            x = _powmod_u64(p, texp, cf)
            e = 0
            for j in range(cell):
                if roots[j] == x:
                    e = j
                    break
        elif mode == MODE_CUBIC:
            e = _cubic_core(p, 0, pa, pb)
        else:
            e = tv[p]
        evals += 1
        if e == 0:
            continue
        if q1 == 0:
            q1 = p
        elif not have_q2:
            q2 = p
            have_q2 = True
            zeta = (cell - e) % cell
            q1sq = q1 * q1
            xconst = <u64> (<u128> (cf % q1sq) * _inv_mod_u64(q2, q1sq) % q1sq)
        elif <u64> e == zeta:
            xv = <u64> (<u128> xconst * _inv_mod_u64(p % q1sq, q1sq) % q1sq)
            if not (1 <= xv < q1):
                r = p
                break
    return int(q1), int(q2), int(r), int(evals)
