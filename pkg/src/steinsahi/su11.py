"""The rank-one case: principal series of SU(1,1) on Fourier truncations.

Conventions: ``T_{p|q}`` acts on functions on the circle and the Lie algebra
acts on monomials by

    L_0 z^k = (k + (p-q)/2) z^k,  L_- z^k = (k - q) z^{k-1},  L_+ z^k = (k + p) z^{k+1}.

The intertwiner multiplies ``z^k`` by ``c_k = (-1)^k / (Gamma(p+k) Gamma(q-k))`` and
lands in ``T_{1-q|1-p}``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .gamma import pochhammer, reciprocal_gamma, signed_log_gamma

__all__ = [
    "Su11Params",
    "FourierTruncation",
    "WindowOverflowError",
    "Su11Class",
    "multiplier_c",
    "complementary_inner",
    "lie_apply",
    "pairing_pi",
    "classify_su11",
    "blowup_multiplier_10",
    "asymptotic_exponent",
    "intertwining_residual",
    "duality_residual",
    "highest_weight_norm",
    "form_invariance_residual",
]


class WindowOverflowError(ValueError):
    pass


@dataclass(frozen=True)
class Su11Params:
    p: complex
    q: complex

    @property
    def dual(self) -> "Su11Params":
        return Su11Params(1 - self.p, 1 - self.q)

    @property
    def target(self) -> "Su11Params":
        """Parameters of the image of the intertwiner."""
        return Su11Params(1 - self.q, 1 - self.p)


@dataclass
class FourierTruncation:
    """Coefficients ``a_k`` of ``sum_{|k|<=K} a_k z^k``."""

    K: int
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.coeffs.shape != (2 * self.K + 1,):
            raise ValueError("coefficient array must have length 2K+1")

    @classmethod
    def zeros(cls, K: int) -> "FourierTruncation":
        return cls(K, np.zeros(2 * K + 1, dtype=complex))

    @classmethod
    def monomial(cls, k: int, K: int, amp: complex = 1.0) -> "FourierTruncation":
        f = cls.zeros(K)
        f[k] = amp
        return f

    @classmethod
    def from_dict(cls, data: dict, K: int) -> "FourierTruncation":
        f = cls.zeros(K)
        for k, v in data.items():
            f[k] = v
        return f

    def __getitem__(self, k: int) -> complex:
        if abs(k) > self.K:
            return 0j
        return complex(self.coeffs[k + self.K])

    def __setitem__(self, k: int, v):
        if abs(k) > self.K:
            raise WindowOverflowError(f"mode {k} outside window [-{self.K}, {self.K}]")
        self.coeffs[k + self.K] = v

    def modes(self):
        return range(-self.K, self.K + 1)

    def as_dict(self) -> dict:
        return {k: self[k] for k in self.modes() if self[k] != 0}


def multiplier_c(k: int, params: Su11Params) -> complex:
    """``(-1)^k / (Gamma(p+k) Gamma(q-k))`` with exact zeros."""
    val = reciprocal_gamma(params.p + k) * reciprocal_gamma(params.q - k)
    return (-1) ** (k % 2) * val


def complementary_inner(k: int, params: Su11Params):
    """``<z^k, z^k> = (1-q)_k / ((p)_k Gamma(p) Gamma(q))``."""
    p, q = params.p, params.q
    return pochhammer(1 - q, k) / pochhammer(p, k) * reciprocal_gamma(p) * reciprocal_gamma(q)


def lie_apply(which: str, params: Su11Params, f: FourierTruncation) -> FourierTruncation:
    """Apply ``L0``, ``Lplus`` or ``Lminus`` mode by mode.

    A nonzero coefficient pushed outside the window raises
    :class:`WindowOverflowError` instead of being dropped.
    """
    p, q = params.p, params.q
    out = FourierTruncation.zeros(f.K)
    for k in f.modes():
        a = f[k]
        if a == 0:
            continue
        if which == "L0":
            out[k] = out[k] + (k + (p - q) / 2) * a
        elif which == "Lplus":
            v = (k + p) * a
            if v != 0:
                out[k + 1] = out[k + 1] + v
        elif which == "Lminus":
            v = (k - q) * a
            if v != 0:
                out[k - 1] = out[k - 1] + v
        else:
            raise ValueError(f"unknown generator {which!r}")
    return out


def pairing_pi(f1: FourierTruncation, f2: FourierTruncation) -> complex:
    """Bilinear pairing ``sum_k f1(k) f2(-k)`` (circle integral of the product)."""
    K = min(f1.K, f2.K)
    return complex(sum(f1[k] * f2[-k] for k in range(-K, K + 1)))


class Su11Class(enum.Enum):
    PrincipalUnitary = "PrincipalUnitary"
    Complementary = "Complementary"
    HighestWeight = "HighestWeight"
    LowestWeight = "LowestWeight"
    NONE = "None"


def _real(z):
    z = complex(z)
    return z.real if z.imag == 0 else None


def classify_su11(params: Su11Params, tol: float = 1e-12) -> set:
    """All unitarity labels that apply to ``T_{p|q}``."""
    p, q = complex(params.p), complex(params.q)
    out = set()
    if abs(p.imag - q.imag) <= tol and abs(p.real + q.real - 1) <= tol:
        out.add(Su11Class.PrincipalUnitary)
    pr, qr = _real(p), _real(q)
    if pr is not None and qr is not None:
        if 0 < pr < 1 and 0 < qr < 1:
            out.add(Su11Class.Complementary)
        if qr == 0 and pr > 0:
            out.add(Su11Class.HighestWeight)
        if pr == 0 and qr > 0:
            out.add(Su11Class.LowestWeight)
    return out or {Su11Class.NONE}


def blowup_multiplier_10(k: int, s, t):
    """Limit of ``Gamma(p+q-1) c_k`` at ``(p, q) = (1 + eps s, eps t)``."""
    if s + t == 0:
        raise ValueError("s + t must be nonzero")
    if isinstance(s, int) and isinstance(t, int):
        s, t = Fraction(s), Fraction(t)
    return t / (t + s) if k >= 0 else -s / (t + s)


def _log_abs_multiplier(k: int, p: float, q: float) -> float:
    return -(signed_log_gamma(p + k).logmag + signed_log_gamma(q - k).logmag)


def asymptotic_exponent(params: Su11Params, window=(100, 1000), side: int = 1) -> float:
    """Least squares slope of ``log|c_k|`` against ``log|k|`` over the window.

    ``side=+1`` fits positive ``k``, ``-1`` negative ``k``.  Should be close to
    ``1 - Re(p+q)``.
    """
    lo, hi = window
    if not 0 < lo < hi:
        raise ValueError("degenerate window")
    p, q = _real(params.p), _real(params.q)
    if p is None or q is None:
        raise ValueError("asymptotic_exponent is implemented for real p, q")
    ks = np.arange(lo, hi + 1) * side
    y = np.array([_log_abs_multiplier(int(k), p, q) for k in ks])
    x = np.log(np.abs(ks))
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def intertwining_residual(params: Su11Params, K: int = 100) -> dict:
    """Max relative residual of ``A L_pm = L_pm' A`` for both candidate targets.

    ``A z^k = c_k z^k``.  Keys ``"1-q|1-p"`` and ``"1-p|1-q"``.
    """
    p, q = params.p, params.q
    c = {k: multiplier_c(k, params) for k in range(-K - 1, K + 2)}
    out = {}
    for name, (pp, qq) in {"1-q|1-p": (1 - q, 1 - p), "1-p|1-q": (1 - p, 1 - q)}.items():
        worst = 0.0
        for k in range(-K, K + 1):
            lhs, rhs = (k + p) * c[k + 1], (k + pp) * c[k]
            worst = max(worst, abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300))
            lhs, rhs = (k - q) * c[k - 1], (k - qq) * c[k]
            worst = max(worst, abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300))
        out[name] = worst
    return out


def duality_residual(params: Su11Params, K: int = 100) -> float:
    """Max of ``|Pi(L f, g) + Pi(f, L' g)|`` over monomials; L' uses ``(1-p, 1-q)``."""
    dual = params.dual
    W = K + 2
    worst = 0.0
    for k in range(-K, K + 1):
        f = FourierTruncation.monomial(k, W)
        for which, shift in (("Lplus", 1), ("Lminus", -1), ("L0", 0)):
            g = FourierTruncation.monomial(-k - shift, W)
            r = pairing_pi(lie_apply(which, params, f), g) + pairing_pi(f, lie_apply(which, dual, g))
            worst = max(worst, abs(r))
    return worst


def highest_weight_norm(k: int, p):
    """``<z^k, z^k> = k! / (p)_k`` in the holomorphic model (``k >= 0``)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return math.factorial(k) / pochhammer(p, k)


def form_invariance_residual(params: Su11Params, K: int = 100):
    """Max of ``|(k+p) h_{k+1} - (k+1-q) h_k|``, up to the common Gamma constant.

    Exact for Fraction ``p, q``.
    """
    p, q = params.p, params.q

    def h(k):
        # the constant 1/(Gamma(p) Gamma(q)) is common to every term
        return pochhammer(1 - q, k) / pochhammer(p, k)

    worst = 0
    for k in range(-K, K):
        worst = max(worst, abs((k + p) * h(k + 1) - (k + 1 - q) * h(k)))
    return worst
