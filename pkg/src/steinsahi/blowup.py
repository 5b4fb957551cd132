"""Direction-dependent limits of the coefficients at integer points.

Near an integer point every Gamma factor of the closed form is either finite
or has a simple pole/zero.  Writing ``(sigma, tau) = (sigma0 + eps s, tau0 + eps t)``
and keeping only leading Laurent terms gives the exact limit, as a rational
function of ``(s, t)``:

* ``Gamma(-k + eps u)  ~ (-1)^k / (k! eps u)``
* ``1/Gamma(-k + eps u) ~ (-1)^k k! eps u``

All arithmetic is done in :class:`fractions.Fraction` when ``s`` and ``t`` are
rational, so tail zeros and the reconstruction identity are exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .gamma import PoleError
from .kernel import CoefficientTable, KernelParams
from .signatures import (
    Signature,
    UnipotentClass,
    classify_unipotent,
    enumerate_signatures,
    make_signature,
)

__all__ = [
    "BlowupParams",
    "directional_limit",
    "limit_coefficient",
    "limit_amplitude",
    "decompose_lj",
    "lj_via_derivative",
    "reconstruct",
]


@dataclass(frozen=True)
class BlowupParams:
    n: int
    alpha: int
    s: float
    t: float

    def __post_init__(self):
        if not 0 <= self.alpha <= self.n - 1:
            raise ValueError(f"alpha must lie in [0, {self.n - 1}]")
        if self.s == 0 and self.t == 0:
            raise ValueError("(s, t) must be nonzero")
        if self.s + self.t == 0:
            raise ValueError("s + t must be nonzero")

    @property
    def sigma0(self) -> int:
        return -self.n + self.alpha


def _as_exact(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    return x


def directional_limit(m, n: int, sigma0: int, tau0: int, s, t):
    """Exact ``lim_{eps->0} c_m(sigma0 + eps s, tau0 + eps t)``.

    Returns a Fraction for rational ``s, t``.  Raises :class:`PoleError` when
    the limit is infinite.
    """
    m = make_signature(m)
    if m.n != n:
        raise ValueError("signature length does not match n")
    s, t = _as_exact(s), _as_exact(t)
    u = s + t
    val = Fraction(-1 if (n * (n - 1) // 2) % 2 else 1) * Fraction(2) ** (-(sigma0 + tau0) * n)
    order = 0
    x0 = sigma0 + tau0
    for j in range(1, n + 1):
        a = x0 + j
        if a <= 0:
            if u == 0:
                raise PoleError("s + t = 0 along a prefactor pole")
            k = -a
            val = val * Fraction((-1) ** k, math.factorial(k)) / u
            order -= 1
        else:
            val = val * math.factorial(a - 1)
    labels = m.labels
    vander = 1
    for i in range(n):
        for k in range(i + 1, n):
            vander *= labels[i] - labels[k]
    val = val * vander * (-1) ** (sum(labels) % 2)
    for mj in labels:
        for a, direction in ((sigma0 - mj + n, s), (tau0 + mj + 1, t)):
            if a <= 0:
                k = -a
                val = val * ((-1) ** k * math.factorial(k)) * direction
                order += 1
            else:
                val = val / math.factorial(a - 1)
    if val == 0 or order > 0:
        return Fraction(0) if isinstance(val, Fraction) else 0.0
    if order < 0:
        raise PoleError(f"coefficient of {m} diverges at ({sigma0}, {tau0})")
    return val


def limit_coefficient(m, bp: BlowupParams):
    """Blow-up limit of ``c_m`` at ``(-n + alpha, 0)`` in direction ``(s, t)``."""
    return directional_limit(m, bp.n, bp.sigma0, 0, bp.s, bp.t)


def limit_amplitude(m, n: int, alpha: int) -> Fraction:
    """The ``(s, t)``-free factor ``A(m)`` of the limit.

    The limit equals ``A(m) s^{n-alpha-j} t^j / (s+t)^{n-alpha}`` on Z(j).
    """
    val = directional_limit(m, n, -n + alpha, 0, 1, 1)
    return val * Fraction(2) ** (n - alpha)


def _piece_table(n, alpha, M, j, exact, classes) -> CoefficientTable:
    table = CoefficientTable(KernelParams(n, -n + alpha, 0.0), M,
                             {m: complex(float(v)) for m, v in exact.items()})
    table.exact = exact
    table.classes = classes
    table.piece = j
    return table


def decompose_lj(n: int, alpha: int, M: int) -> list:
    """Tables of the pieces ``L_0, ..., L_{n-alpha}``.

    ``L_j`` is supported on Z(j) and independent of ``(s, t)``; tail
    signatures carry zeros everywhere.
    """
    if not 0 <= alpha <= n - 1:
        raise ValueError(f"alpha must lie in [0, {n - 1}]")
    sigs = list(enumerate_signatures(n, M))
    classes = {m: classify_unipotent(m, alpha) for m in sigs}
    amps = {m: limit_amplitude(m, n, alpha) for m in sigs}
    out = []
    for j in range(n - alpha + 1):
        exact = {m: (amps[m] if classes[m] == UnipotentClass.z(j) else Fraction(0)) for m in sigs}
        out.append(_piece_table(n, alpha, M, j, exact, classes))
    return out


def _poly_coefficients(xs, ys) -> list:
    """Exact coefficients of the interpolating polynomial (Newton form)."""
    k = len(xs)
    coef = list(ys)
    for level in range(1, k):
        for i in range(k - 1, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    poly = [Fraction(0)] * k
    for i in range(k - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        new = [Fraction(0)] * k
        for d in range(k - 1):
            new[d + 1] += poly[d]
        for d in range(k):
            new[d] -= xs[i] * poly[d]
        new[0] += coef[i]
        poly = new
    return poly


def lj_via_derivative(j: int, n: int, alpha: int, M: int) -> CoefficientTable:
    """``L_j = (1/j!) d^j/dt^j (1+t)^{n-alpha} l^{1:t} |_{t=0}`` per signature.

    ``(1+t)^{n-alpha} c_m(1:t)`` is a polynomial of degree ``n - alpha`` in ``t``;
    it is sampled at ``t = 0..n-alpha`` and its Taylor coefficient read off.
    """
    d = n - alpha
    if not 0 <= j <= d:
        raise ValueError(f"j must lie in [0, {d}]")
    xs = [Fraction(i) for i in range(d + 1)]
    sigs = list(enumerate_signatures(n, M))
    exact = {}
    for m in sigs:
        ys = [(1 + x) ** d * directional_limit(m, n, -n + alpha, 0, 1, x) for x in xs]
        exact[m] = _poly_coefficients(xs, ys)[j]
    classes = {m: classify_unipotent(m, alpha) for m in sigs}
    return _piece_table(n, alpha, M, j, exact, classes)


def reconstruct(pieces, m, s, t):
    """``sum_j t^j s^{n-alpha-j} / (s+t)^{n-alpha} L_j(m)``."""
    m = make_signature(m)
    d = len(pieces) - 1
    s, t = _as_exact(s), _as_exact(t)
    total = 0
    for j, piece in enumerate(pieces):
        total = total + t ** j * s ** (d - j) * piece.exact[m]
    return total / (s + t) ** d
