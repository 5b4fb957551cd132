"""Sign-tracked Gamma arithmetic.

Real arguments go through :func:`math.lgamma` with an explicit sign rule, so
products of many Gamma values never overflow.  Complex arguments use a Lanczos
series with the reflection formula on the left half-plane.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number

__all__ = [
    "PoleError",
    "SignedLogValue",
    "signed_log_gamma",
    "log_gamma",
    "gamma",
    "reciprocal_gamma",
    "pochhammer",
    "pole_leading_coefficient",
    "pole_leading_coefficient_exact",
    "is_nonpositive_integer",
]


class PoleError(ValueError):
    """Raised when a Gamma function is evaluated at one of its poles."""


@dataclass(frozen=True)
class SignedLogValue:
    """A real number stored as ``sign * exp(logmag)``.

    ``sign == 0`` means exact zero and ``logmag`` is then ignored.
    """

    sign: int
    logmag: float = 0.0

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")

    @classmethod
    def from_float(cls, x: float) -> "SignedLogValue":
        if x == 0:
            return cls(0, -math.inf)
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    def __mul__(self, other):
        if not isinstance(other, SignedLogValue):
            other = SignedLogValue.from_float(float(other))
        if self.sign == 0 or other.sign == 0:
            return SignedLogValue(0, -math.inf)
        return SignedLogValue(self.sign * other.sign, self.logmag + other.logmag)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, SignedLogValue):
            other = SignedLogValue.from_float(float(other))
        if other.sign == 0:
            raise ZeroDivisionError("division by an exact zero")
        if self.sign == 0:
            return self
        return SignedLogValue(self.sign * other.sign, self.logmag - other.logmag)

    def inverse(self) -> "SignedLogValue":
        return SignedLogValue(1, 0.0) / self

    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.logmag)

    def __float__(self):
        return self.value()


def is_nonpositive_integer(z) -> bool:
    """True when ``z`` is exactly one of 0, -1, -2, ..."""
    if isinstance(z, complex):
        if z.imag != 0:
            return False
        z = z.real
    if isinstance(z, Fraction):
        return z.denominator == 1 and z <= 0
    z = float(z)
    return z <= 0 and z == math.floor(z)


def _real(z):
    """Return a float when ``z`` is real-valued, else None."""
    if isinstance(z, complex):
        return z.real if z.imag == 0 else None
    if isinstance(z, Number):
        return float(z)
    zc = complex(z)
    return zc.real if zc.imag == 0 else None


def signed_log_gamma(x: float) -> SignedLogValue:
    """Sign and ``log|Gamma(x)|`` for real ``x``.

    For ``x = k + a`` with integer ``k < 0`` and ``0 < a < 1`` the sign is
    ``(-1)**k``; it is +1 on the positive axis.
    """
    x = float(x)
    if is_nonpositive_integer(x):
        raise PoleError(f"Gamma has a pole at {x:g}")
    if x > 0:
        sign = 1
    else:
        sign = 1 if int(math.floor(x)) % 2 == 0 else -1
    return SignedLogValue(sign, math.lgamma(x))


# Lanczos coefficients, g = 7, n = 9 (Godfrey); ~1e-15 relative in the
# right half-plane.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)


def _lanczos_log_gamma(z: complex) -> complex:
    # valid for Re z >= 0.5
    z = z - 1
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(acc)


def _stirling_log_gamma(z: complex) -> complex:
    # large |z|, Re z > 0
    zi = 1.0 / z
    zi2 = zi * zi
    series = zi * (1 / 12 - zi2 * (1 / 360 - zi2 * (1 / 1260 - zi2 * (1 / 1680))))
    return (z - 0.5) * cmath.log(z) - z + _HALF_LOG_2PI + series


def log_gamma(z) -> complex:
    """Complex log-Gamma; the imaginary part is a branch-agnostic phase.

    Only ``exp(log_gamma(z))`` is meaningful, which is all the coefficient
    formulas need.
    """
    z = complex(z)
    if z.imag == 0 and is_nonpositive_integer(z.real):
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    if z.real < 0.5:
        # Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        return cmath.log(math.pi / cmath.sin(math.pi * z)) - log_gamma(1 - z)
    if abs(z) > 30:
        return _stirling_log_gamma(z)
    return _lanczos_log_gamma(z)


def gamma(z):
    """Gamma function; real input returns float, complex input complex."""
    x = _real(z)
    if x is not None:
        if is_nonpositive_integer(x):
            raise PoleError(f"Gamma has a pole at {x:g}")
        return math.gamma(x)
    return cmath.exp(log_gamma(z))


def reciprocal_gamma(z):
    """Entire function ``1/Gamma(z)``, exactly zero at 0, -1, -2, ...

    No snapping: arguments that are merely close to a pole are evaluated.
    """
    x = _real(z)
    if x is not None:
        if is_nonpositive_integer(x):
            return 0.0
        try:
            g = math.gamma(x)
        except OverflowError:
            g = math.inf
        if g != 0.0 and math.isfinite(g):
            return 1.0 / g
        s = signed_log_gamma(x)
        return s.sign * math.exp(-s.logmag)
    z = complex(z)
    if z.real < 0.5:
        return cmath.sin(math.pi * z) / math.pi * cmath.exp(log_gamma(1 - z))
    return cmath.exp(-log_gamma(z))


def pochhammer(a, k: int):
    """Rising factorial ``(a)_k``; for ``k < 0`` it is ``1/((a-1)...(a+k))``.

    Works for any numeric type closed under + and *, including Fraction.
    """
    k = int(k)
    if k >= 0:
        out = 1
        for i in range(k):
            out = out * (a + i)
        return out
    den = 1
    for i in range(1, -k + 1):
        f = a - i
        if f == 0:
            raise PoleError(f"({a})_{k} has a vanishing factor")
        den = den * f
    if isinstance(den, int):
        return Fraction(1, den)
    return 1 / den


def pole_leading_coefficient(k: int) -> float:
    """Residue of Gamma at ``-k``: ``(-1)**k / k!``."""
    return float(pole_leading_coefficient_exact(k))


def pole_leading_coefficient_exact(k: int) -> Fraction:
    if k < 0:
        raise ValueError("k must be non-negative")
    return Fraction((-1) ** k, math.factorial(k))
