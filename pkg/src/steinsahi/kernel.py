"""Expansion coefficients of the kernels ``l_{sigma|tau}`` on U(n).

The kernel is

    l(z) = 2^{-(sigma+tau) n} det(1 - z)^sigma det(1 - zbar)^tau

and its character expansion ``l = sum_m c_m chi_m`` has the closed form

    c_m = (-1)^{n(n-1)/2} 2^{-(sigma+tau) n} prod_j Gamma(sigma+tau+j)
          * (-1)^{sum m} prod_{a<b} (m_a - m_b)
          * prod_j 1 / (Gamma(sigma - m_j + n) Gamma(tau + m_j + 1)).

Everything goes through reciprocal Gammas so that zeros are exact.
"""
from __future__ import annotations

import cmath
import enum
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from . import _kernels
from .gamma import (
    PoleError,
    SignedLogValue,
    is_nonpositive_integer,
    log_gamma,
    signed_log_gamma,
)
from .schur import as_angles
from .signatures import (
    Signature,
    dimension,
    enumerate_signatures,
    make_signature,
    omega_support,
    signature_array,
)

__all__ = [
    "KernelParams",
    "PrefactorPoleError",
    "CoefficientTable",
    "PositivityClass",
    "HarmonicVector",
    "coefficient",
    "coefficient_slv",
    "coefficients_array",
    "coefficient_sin_form",
    "normalized_coefficient",
    "kernel_pointwise",
    "classify_positivity",
    "sign_scan",
    "hermitian_form",
    "l2_diagonal_check",
    "berezin_wallach",
    "BerezinWallach",
    "tau_zero_coefficient",
    "sobolev_norm",
    "CutoffError",
    "KernelSingularityError",
]

LOG2 = math.log(2.0)


class PrefactorPoleError(PoleError):
    """``Gamma(sigma + tau + j)`` sits on a pole."""

    def __init__(self, j: int, value):
        self.j = j
        self.value = value
        super().__init__(f"prefactor pole: Gamma(sigma+tau+{j}) at argument {value}")


class CutoffError(ValueError):
    pass


class KernelSingularityError(ValueError):
    pass


@dataclass(frozen=True)
class KernelParams:
    n: int
    sigma: complex
    tau: complex

    def __post_init__(self):
        if int(self.n) < 1:
            raise ValueError("n must be >= 1")
        object.__setattr__(self, "n", int(self.n))

    @property
    def is_real(self) -> bool:
        return complex(self.sigma).imag == 0 and complex(self.tau).imag == 0

    @property
    def real_pair(self) -> tuple[float, float]:
        return complex(self.sigma).real, complex(self.tau).real


def _vander_int(labels) -> int:
    out = 1
    n = len(labels)
    for a in range(n):
        for b in range(a + 1, n):
            out *= labels[a] - labels[b]
    return out


def _prefactor_slv(n: int, sigma: float, tau: float) -> SignedLogValue:
    x = sigma + tau
    out = SignedLogValue(-1 if (n * (n - 1) // 2) % 2 else 1, -x * n * LOG2)
    for j in range(1, n + 1):
        if is_nonpositive_integer(x + j):
            raise PrefactorPoleError(j, x + j)
        out = out * signed_log_gamma(x + j)
    return out


def _body_slv(labels, n: int, sigma: float, tau: float) -> SignedLogValue:
    arr = np.asarray([labels], dtype=np.int64)
    sign, logmag = _kernels.coefficient_body(arr, float(sigma), float(tau))
    return SignedLogValue(int(sign[0]), float(logmag[0]))


def coefficient_slv(m, params: KernelParams) -> SignedLogValue:
    """Real-parameter coefficient as a :class:`SignedLogValue`."""
    m = make_signature(m)
    if m.n != params.n:
        raise ValueError("signature length does not match n")
    if not params.is_real:
        raise ValueError("coefficient_slv needs real sigma and tau")
    s, t = params.real_pair
    return _prefactor_slv(params.n, s, t) * _body_slv(m.labels, params.n, s, t)


def _coefficient_complex(labels, n, sigma: complex, tau: complex) -> complex:
    x = sigma + tau
    for j in range(1, n + 1):
        if is_nonpositive_integer(x + j):
            raise PrefactorPoleError(j, x + j)
    for mj in labels:
        if is_nonpositive_integer(sigma - mj + n) or is_nonpositive_integer(tau + mj + 1):
            return 0j
    vander = _vander_int(labels)
    phase = (n * (n - 1) // 2 + sum(labels) + (1 if vander < 0 else 0)) % 2
    L = -x * n * LOG2 + math.log(abs(vander))
    for j in range(1, n + 1):
        L += log_gamma(x + j)
    for mj in labels:
        L -= log_gamma(sigma - mj + n) + log_gamma(tau + mj + 1)
    return (-1 if phase else 1) * cmath.exp(L)


def coefficient(m, params: KernelParams) -> complex:
    """Closed-form expansion coefficient ``c_m(sigma, tau)``.

    Raises :class:`PrefactorPoleError` when some ``sigma + tau + j`` is a pole
    of Gamma; use :func:`normalized_coefficient` or the blow-up module there.
    """
    m = make_signature(m)
    if m.n != params.n:
        raise ValueError("signature length does not match n")
    if params.is_real:
        return complex(coefficient_slv(m, params).value())
    return _coefficient_complex(m.labels, params.n, complex(params.sigma), complex(params.tau))


def coefficients_array(labels: np.ndarray, params: KernelParams) -> np.ndarray:
    """Vectorised :func:`coefficient` over an ``(N, n)`` label array."""
    labels = np.asarray(labels, dtype=np.int64)
    if params.is_real:
        s, t = params.real_pair
        pre = _prefactor_slv(params.n, s, t)
        sign, logmag = _kernels.coefficient_body(labels, s, t)
        return (pre.sign * sign * np.exp(logmag + pre.logmag)).astype(complex)
    return np.array(
        [_coefficient_complex(tuple(int(v) for v in row), params.n,
                              complex(params.sigma), complex(params.tau)) for row in labels],
        dtype=complex,
    )


def normalized_coefficient(m, params: KernelParams) -> complex:
    """``c_m / prod_j Gamma(sigma + tau + j)``; finite on prefactor poles."""
    m = make_signature(m)
    n = params.n
    x = complex(params.sigma) + complex(params.tau)
    sign0 = -1 if (n * (n - 1) // 2) % 2 else 1
    if params.is_real:
        s, t = params.real_pair
        body = _body_slv(m.labels, n, s, t)
        return complex(sign0 * body.value() * math.exp(-(s + t) * n * LOG2))
    body = _coefficient_complex(m.labels, n, complex(params.sigma), complex(params.tau))
    # undo the prefactor Gammas
    for j in range(1, n + 1):
        body *= cmath.exp(-log_gamma(x + j))
    return body


def coefficient_sin_form(m, params: KernelParams) -> complex:
    """Cross-check: the sin-prefactor form of the same coefficient.

    Uses ``prod_j Gamma(1 - sigma + m_j - n) / Gamma(tau + m_j + 1)``; the overall
    sign carries ``(-1)^n`` from the reflection formula.
    """
    m = make_signature(m)
    n = params.n
    sigma, tau = complex(params.sigma), complex(params.tau)
    x = sigma + tau
    L = -x * n * LOG2 + n * cmath.log(cmath.sin(math.pi * sigma) / math.pi)
    for j in range(1, n + 1):
        L += log_gamma(x + j)
    vander = _vander_int(m.labels)
    L += math.log(abs(vander))
    for mj in m.labels:
        if is_nonpositive_integer(tau + mj + 1):
            return 0j
        L += log_gamma(1 - sigma + mj - n) - log_gamma(tau + mj + 1)
    sign = (-1) ** (n * (n - 1) // 2 + n) * (1 if vander > 0 else -1)
    return sign * cmath.exp(L)


def kernel_pointwise(angles, params: KernelParams) -> complex:
    """``exp{(i/2)(sigma-tau) sum(psi_k - pi)} prod sin^{sigma+tau}(psi_k/2)``."""
    psi = as_angles(angles)
    sigma, tau = complex(params.sigma), complex(params.tau)
    x = sigma + tau
    phase = 0.5j * (sigma - tau) * float(np.sum(psi - math.pi))
    out = cmath.exp(phase)
    for p in psi:
        sh = math.sin(p / 2)
        if sh == 0.0:
            if x.real > 0:
                return 0j
            if x == 0:
                continue
            raise KernelSingularityError("kernel is singular at eigenvalue 1")
        out *= cmath.exp(x * math.log(sh))
    return out


# ---------------------------------------------------------------------------
# coefficient tables
# ---------------------------------------------------------------------------


@dataclass
class CoefficientTable:
    params: KernelParams
    cutoff: int
    entries: dict = field(default_factory=dict)

    @classmethod
    def build(cls, params: KernelParams, cutoff: int) -> "CoefficientTable":
        if cutoff < 1:
            raise ValueError("cutoff must be >= 1")
        labels = signature_array(params.n, cutoff)
        vals = coefficients_array(labels, params)
        entries = {Signature(tuple(int(x) for x in row)): complex(v) for row, v in zip(labels, vals)}
        return cls(params, cutoff, entries)

    def __getitem__(self, m):
        return self.entries[make_signature(m)]

    def __contains__(self, m):
        return make_signature(m) in self.entries

    def __len__(self):
        return len(self.entries)

    def items(self):
        return sorted(self.entries.items())

    def to_tsv(self, extra: Mapping | None = None) -> str:
        n = self.params.n
        head = [f"m_{i + 1}" for i in range(n)] + ["re", "im"]
        if extra:
            head.append("class")
        lines = ["\t".join(head)]
        for m, v in self.items():
            row = [str(x) for x in m.labels] + [repr(float(v.real)), repr(float(v.imag))]
            if extra:
                row.append(str(extra.get(m, "")))
            lines.append("\t".join(row))
        return "\n".join(lines) + "\n"

    def to_json(self, extra: Mapping | None = None) -> str:
        rows = []
        for m, v in self.items():
            row = {"m": list(m.labels), "re": float(v.real), "im": float(v.imag)}
            if extra:
                row["class"] = str(extra.get(m, ""))
            rows.append(row)
        doc = {
            "schema": 1,
            "n": self.params.n,
            "sigma": _jsonable(self.params.sigma),
            "tau": _jsonable(self.params.tau),
            "cutoff": self.cutoff,
            "entries": rows,
        }
        return json.dumps(doc, indent=1)


def _jsonable(z):
    z = complex(z)
    return z.real if z.imag == 0 else [z.real, z.imag]


# ---------------------------------------------------------------------------
# positivity
# ---------------------------------------------------------------------------


class PositivityClass(enum.Enum):
    PositiveDefinite = "PositiveDefinite"
    NegativeDefinite = "NegativeDefinite"
    Indefinite = "Indefinite"
    SemiDefinite = "SemiDefinite"
    OnIntegerLocus = "OnIntegerLocus"

    @property
    def is_definite(self) -> bool:
        return self in (PositivityClass.PositiveDefinite, PositivityClass.NegativeDefinite)


def _is_int(x: float) -> bool:
    return x == math.floor(x)


def _global_sign(n: int, sigma: float, tau: float) -> int:
    """Sign of the m-independent factor; on prefactor poles the normalised one."""
    sign0 = -1 if (n * (n - 1) // 2) % 2 else 1
    x = sigma + tau
    for j in range(1, n + 1):
        if is_nonpositive_integer(x + j):
            return sign0
    return _prefactor_slv(n, sigma, tau).sign


def classify_positivity(params: KernelParams) -> PositivityClass:
    """Definite iff ``floor(-sigma-n) == floor(tau)`` off the integer lines.

    The sign of a definite form is read off at the signature (n-1, ..., 0).
    """
    if not params.is_real:
        raise ValueError("classify_positivity needs real sigma and tau")
    n = params.n
    s, t = params.real_pair
    if _is_int(s) or _is_int(t):
        return PositivityClass.OnIntegerLocus
    if math.floor(-s - n) != math.floor(t):
        return PositivityClass.Indefinite
    ref = tuple(range(n - 1, -1, -1))
    sign = _global_sign(n, s, t) * _body_slv(ref, n, s, t).sign
    return PositivityClass.PositiveDefinite if sign > 0 else PositivityClass.NegativeDefinite


def sign_scan(params: KernelParams, M: int) -> set:
    """Set of signs of ``c_m`` over all signatures with labels in [-M, M]."""
    n = params.n
    s, t = params.real_pair
    labels = signature_array(n, M)
    sign, _ = _kernels.coefficient_body(labels, s, t)
    g = _global_sign(n, s, t)
    return {int(g * v) for v in np.unique(sign)}


def scan_class(params: KernelParams, M: int) -> PositivityClass:
    """Brute-force counterpart of :func:`classify_positivity`."""
    s, t = params.real_pair
    if _is_int(s) or _is_int(t):
        return PositivityClass.OnIntegerLocus
    signs = sign_scan(params, M) - {0}
    if signs == {1}:
        return PositivityClass.PositiveDefinite
    if signs == {-1}:
        return PositivityClass.NegativeDefinite
    return PositivityClass.Indefinite


# ---------------------------------------------------------------------------
# Hermitian forms on harmonics
# ---------------------------------------------------------------------------


@dataclass
class HarmonicVector:
    """Finite sum of elementary harmonics ``f = sum_m f^m``.

    Every harmonic is stored as a complex amplitude along a fixed unit vector
    of ``V_m`` (the normalised character by default), so ``|amp|`` is the
    L2 norm of ``f^m``.
    """

    entries: dict = field(default_factory=dict)

    @classmethod
    def unit(cls, m, amp: complex = 1.0) -> "HarmonicVector":
        return cls({make_signature(m): complex(amp)})

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> "HarmonicVector":
        return cls({make_signature(m): complex(a) for m, a in pairs})

    def norm(self, m) -> float:
        return abs(self.entries.get(make_signature(m), 0.0))

    def support(self):
        return set(self.entries)


def hermitian_form(table: CoefficientTable, f1: HarmonicVector, f2: HarmonicVector) -> complex:
    """``sum_m (c_m / dim m) <f1^m, f2^m>``."""
    out = 0j
    for m in f1.support() | f2.support():
        if m not in table.entries:
            raise CutoffError(f"signature {m} lies outside the table cutoff {table.cutoff}")
    for m in f1.support() & f2.support():
        out += table.entries[m] / dimension(m) * f1.entries[m] * np.conj(f2.entries[m])
    return complex(out)


def sobolev_norm(f: HarmonicVector, s: float) -> float:
    """Matrix Sobolev norm squared ``sum_m |f^m|^2 prod_j (1 + |m_j|)^s``."""
    out = 0.0
    for m, a in f.entries.items():
        w = 1.0
        for mj in m.labels:
            w *= (1.0 + abs(mj)) ** s
        out += abs(a) ** 2 * w
    return out


# ---------------------------------------------------------------------------
# special lines
# ---------------------------------------------------------------------------


def l2_diagonal_check(m, n: int, tau: float) -> float:
    """Limit of ``c_m / prod_j Gamma(sigma+tau+j)`` on ``sigma = -n - tau``.

    Closed form ``(-1)^{n(n-1)/2 + n} 2^{n^2} sin^n(pi tau) / pi^n * prod(m_a - m_b)``.
    It is proportional to ``dim m``; the constant is real, but its sign is that
    of ``(-1)^{n(n-1)/2 + n} sin^n(pi tau)``.
    """
    m = make_signature(m)
    if m.n != n:
        raise ValueError("signature length does not match n")
    sign = (-1) ** (n * (n - 1) // 2 + n)
    const = sign * 2.0 ** (n * n) * (math.sin(math.pi * tau) / math.pi) ** n
    return const * _vander_int(m.labels)


@dataclass(frozen=True)
class BerezinWallach:
    member: bool
    n: int
    sigma: float
    alpha: int | None = None
    rule: str = ""

    def supports(self, m) -> bool:
        if not self.member:
            raise ValueError("sigma is not in the Berezin-Wallach set")
        return omega_support(m, self.sigma)


def berezin_wallach(sigma: float, n: int) -> BerezinWallach:
    """Is the ``tau = 0`` form positive semi-definite, and on which support."""
    sigma = float(sigma)
    if sigma < -(n - 1):
        return BerezinWallach(True, n, sigma, None, f"m_{n} >= 0")
    if _is_int(sigma) and sigma <= 0:
        alpha = int(sigma) + n
        if alpha == 0:
            rule = "empty"
        else:
            rule = ", ".join(f"m_{n - i}={i}" for i in range(alpha))
        return BerezinWallach(True, n, sigma, alpha, rule)
    return BerezinWallach(False, n, sigma, None, "")


def tau_zero_coefficient(m, n: int, sigma: float):
    """``c_m(sigma, 0)``; at integer sigma the limit ``sigma + eps`` is taken."""
    m = make_signature(m)
    sigma = float(sigma)
    if _is_int(sigma):
        from .blowup import directional_limit

        return directional_limit(m, n, int(sigma), 0, 1, 0)
    return coefficient(m, KernelParams(n, sigma, 0.0)).real
