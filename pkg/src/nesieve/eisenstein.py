"""Arithmetic in Z[omega] and the fast cubic-residue character engine.

omega is a primitive cube root of unity (omega^2 + omega + 1 = 0); elements
are stored as a + b*omega with norm a^2 - a*b + b^2.  The ring is
norm-Euclidean, which gives a gcd, which in turn produces a prime pi over any
rational prime f = 1 (mod 3).  Evaluating the canonical cubic character then
reduces to one cubic-residue-symbol computation per argument, done by the
reciprocity loop in the kernel (no exponentiation mod f required).
"""

from dataclasses import dataclass

from .backend import kernel
from . import _pykernel
from .errors import UnsupportedEngineError
from .character import CharacterSpec, ZERO, _Engine

# Coordinates at or beyond this magnitude are routed to the pure-Python
# kernel; the compiled one guards its 128-bit intermediates.
_SMALL = 1 << 61


def _pick(a1, b1, a2, b2):
    if max(abs(a1), abs(b1), abs(a2), abs(b2)) < _SMALL:
        return kernel
    return _pykernel


@dataclass(frozen=True)
class EisensteinInt:
    """a + b*omega."""

    a: int
    b: int

    def __add__(self, other):
        other = _coerce(other)
        return EisensteinInt(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        other = _coerce(other)
        return EisensteinInt(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return EisensteinInt(-self.a, -self.b)

    def __mul__(self, other):
        other = _coerce(other)
        a, b = _pykernel._mul(self.a, self.b, other.a, other.b)
        out = EisensteinInt(a, b)
        if out.norm() > 1 << 126:
            raise OverflowError("product norm exceeds the guarded 2**126 range")
        return out

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return _coerce(other) - self

    def conj(self):
        return EisensteinInt(self.a - self.b, -self.b)

    def norm(self):
        return _pykernel._norm(self.a, self.b)

    def is_unit(self):
        return self.norm() == 1

    def __divmod__(self, other):
        other = _coerce(other)
        qa, qb, ra, rb = _pykernel.eis_divmod(self.a, self.b, other.a, other.b)
        return EisensteinInt(qa, qb), EisensteinInt(ra, rb)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"({self.a}{self.b:+d}w)"


OMEGA = EisensteinInt(0, 1)
LAMBDA = EisensteinInt(1, -1)  # 1 - omega, the ramified prime over 3


def _coerce(x):
    if isinstance(x, EisensteinInt):
        return x
    if isinstance(x, int):
        return EisensteinInt(x, 0)
    raise TypeError(f"cannot coerce {type(x).__name__} to EisensteinInt")


def gcd(x, y):
    """A greatest common divisor, unique up to units."""
    x, y = _coerce(x), _coerce(y)
    k = _pick(x.a, x.b, y.a, y.b)
    try:
        ga, gb = k.eis_gcd(x.a, x.b, y.a, y.b)
    except OverflowError:
        ga, gb = _pykernel.eis_gcd(x.a, x.b, y.a, y.b)
    return EisensteinInt(ga, gb)


def primary_associate(x):
    """(primary, unit) with x = unit * primary and primary = 1 (mod 3).

    Exactly one associate is primary; requires norm(x) coprime to 3.
    """
    x = _coerce(x)
    pa, pb, ua, ub = _pykernel.primary_associate(x.a, x.b)
    return EisensteinInt(pa, pb), EisensteinInt(ua, ub)


def prime_over(f, w):
    """The canonical primary prime of norm f, for prime f = 1 (mod 3).

    w must satisfy w^2 + w + 1 = 0 (mod f); the returned pi divides
    omega - w, so omega = w in the residue field Z[omega]/(pi).
    """
    if (w * w + w + 1) % f != 0:
        raise ValueError(f"{w} is not a root of x^2+x+1 modulo {f}")
    pi = gcd(EisensteinInt(-w, 1), f)  # omega - w
    primary, _ = primary_associate(pi)
    if primary.norm() != f:
        raise ValueError(f"no prime of norm {f} over {f}; is it prime and 1 mod 3?")
    return primary


def cubic_symbol(x, y):
    """The cubic residue symbol (x/y)_3 as a CubicSymbol (exponent of omega).

    y must have norm coprime to 3 and must not be a unit; x and y must be
    coprime.  For prime y this is the classical power-residue symbol; for
    composite y it is the multiplicative (Jacobi-style) extension.
    """
    x, y = _coerce(x), _coerce(y)
    k = _pick(x.a, x.b, y.a, y.b)
    try:
        e = k.cubic_symbol(x.a, x.b, y.a, y.b)
    except OverflowError:
        e = _pykernel.cubic_symbol(x.a, x.b, y.a, y.b)
    return CubicSymbol(e)


@dataclass(frozen=True)
class CubicSymbol:
    """omega^j for j in {0, 1, 2}; multiplies by adding exponents mod 3."""

    j: int

    def __mul__(self, other):
        return CubicSymbol((self.j + other.j) % 3)

    @property
    def is_one(self):
        return self.j == 0


class CubicEngine(_Engine):
    """Character engine for ell = 3 backed by the cubic residue symbol."""

    def __init__(self, spec, pi):
        self.spec = spec
        self.pi = pi

    def exponent(self, n):
        n %= self.spec.f
        if n == 0:
            return ZERO
        k = _pick(n, 0, self.pi.a, self.pi.b)
        return k.cubic_symbol(n, 0, self.pi.a, self.pi.b)

    def scan_args(self):
        return kernel.MODE_CUBIC, self.spec.w, self.pi.a, self.pi.b, None


def cubic_char_engine(spec: CharacterSpec):
    """Reciprocity-based engine, pointwise identical to the powmod engine."""
    if spec.ell != 3:
        raise UnsupportedEngineError("the cubic-reciprocity engine requires ell = 3")
    return CubicEngine(spec, prime_over(spec.f, spec.w))
