"""U(n,n) acting on U(n) by matrix Moebius maps, and its universal cover.

An element is a block matrix ``g = [[a, b], [c, d]]`` with
``g diag(1, -1) g^* = diag(1, -1)``.  It acts on the right,
``z -> z^[g] = (a + z c)^{-1} (b + z d)``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .kernel import KernelParams, kernel_pointwise

__all__ = [
    "PseudoUnitaryElement",
    "CoveringElement",
    "CocycleDomainError",
    "SingularActionError",
    "check_pseudounitary",
    "random_unitary",
    "random_pseudounitary",
    "cartan_middle",
    "moebius_act",
    "jacobian",
    "cartan_decompose",
    "cartan_reassemble",
    "lift",
    "cover_multiply",
    "cocycle_defect",
    "log_det_factor",
    "double_power",
    "kernel_on_matrix",
    "kernel_covariance_residual",
    "weight_unitarity_residual",
    "stabilizer_dilation",
    "stabilizer_translation",
]


class CocycleDomainError(ValueError):
    """``|| a1^{-1} a3 a2^{-1} - 1 || >= 1``: the series logarithm is not available."""


class SingularActionError(ValueError):
    pass


@dataclass(frozen=True)
class PseudoUnitaryElement:
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray

    @property
    def n(self) -> int:
        return self.a.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        return np.block([[self.a, self.b], [self.c, self.d]])

    @classmethod
    def from_matrix(cls, g) -> "PseudoUnitaryElement":
        g = np.asarray(g, dtype=complex)
        n = g.shape[0] // 2
        return cls(g[:n, :n], g[:n, n:], g[n:, :n], g[n:, n:])

    @classmethod
    def identity(cls, n: int) -> "PseudoUnitaryElement":
        return cls.from_matrix(np.eye(2 * n, dtype=complex))

    @classmethod
    def block_diagonal(cls, u, v) -> "PseudoUnitaryElement":
        u = np.asarray(u, dtype=complex)
        z = np.zeros_like(u)
        return cls(u, z, z.copy(), np.asarray(v, dtype=complex))

    def __matmul__(self, other: "PseudoUnitaryElement") -> "PseudoUnitaryElement":
        return PseudoUnitaryElement.from_matrix(self.matrix @ other.matrix)


def _form(n: int) -> np.ndarray:
    return np.diag(np.r_[np.ones(n), -np.ones(n)]).astype(complex)


def check_pseudounitary(g: PseudoUnitaryElement) -> float:
    """Operator-norm residual of ``g J g^* - J``."""
    G = g.matrix
    J = _form(g.n)
    return float(np.linalg.norm(G @ J @ G.conj().T - J, 2))


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar unitary from QR of a complex Gaussian matrix with phase-fixed R."""
    X = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    Q, R = np.linalg.qr(X)
    ph = np.diag(R) / np.abs(np.diag(R))
    return Q * ph


def cartan_middle(t) -> PseudoUnitaryElement:
    t = np.asarray(t, dtype=float)
    CH = np.diag(np.cosh(t)).astype(complex)
    SH = np.diag(np.sinh(t)).astype(complex)
    return PseudoUnitaryElement(CH, SH, SH.copy(), CH.copy())


def random_pseudounitary(n: int, seed=None, tmax: float = 1.0,
                         rng: np.random.Generator | None = None) -> PseudoUnitaryElement:
    """``diag(u1, v1) [[CH, SH], [SH, CH]] diag(u2, v2)`` with random factors.

    ``t`` is uniform in ``[0, tmax]``.  Deterministic per seed.
    """
    rng = rng if rng is not None else np.random.default_rng(seed)
    u1, v1, u2, v2 = (random_unitary(n, rng) for _ in range(4))
    t = np.sort(rng.uniform(0.0, tmax, n))[::-1]
    return (PseudoUnitaryElement.block_diagonal(u1, v1) @ cartan_middle(t)
            @ PseudoUnitaryElement.block_diagonal(u2, v2))


def _a_plus_zc(z, g: PseudoUnitaryElement, cond_max: float = 1e12) -> np.ndarray:
    A = g.a + np.asarray(z) @ g.c
    if np.linalg.cond(A) > cond_max:
        raise SingularActionError("a + z c is numerically singular")
    return A


def moebius_act(z, g: PseudoUnitaryElement) -> np.ndarray:
    """``z^[g] = (a + z c)^{-1} (b + z d)``."""
    z = np.asarray(z, dtype=complex)
    A = _a_plus_zc(z, g)
    return np.linalg.solve(A, g.b + z @ g.d)


def jacobian(z, g: PseudoUnitaryElement) -> float:
    """Haar-measure Jacobian ``|det(a + z c)|^{-2n}``."""
    A = _a_plus_zc(z, g)
    n = g.n
    return float(abs(np.linalg.det(A)) ** (-2 * n))


# ---------------------------------------------------------------------------
# Cartan decomposition
# ---------------------------------------------------------------------------


def cartan_decompose(g: PseudoUnitaryElement):
    """Return ``(u1, v1, t, u2, v2)`` with ``g = diag(u1,v1) [[CH,SH],[SH,CH]] diag(u2,v2)``.

    ``t`` comes from the singular values of ``c = v1 SH u2`` (``sinh t``), which
    stay well separated for small ``t``; ``cosh t`` are then the singular values
    of ``a``.  The remaining factors follow from ``a = u1 CH u2`` and
    ``d = v1 CH v2``; any unitary freedom on blocks of equal ``t`` cancels.
    """
    v1, sc, u2 = np.linalg.svd(g.c)
    t = np.arcsinh(sc)
    ch = np.cosh(t)
    u1 = g.a @ u2.conj().T / ch[None, :]
    v2 = (v1.conj().T @ g.d) / ch[:, None]
    return u1, v1, t, u2, v2


def cartan_reassemble(u1, v1, t, u2, v2) -> PseudoUnitaryElement:
    return (PseudoUnitaryElement.block_diagonal(u1, v1) @ cartan_middle(t)
            @ PseudoUnitaryElement.block_diagonal(u2, v2))


# ---------------------------------------------------------------------------
# universal cover
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoveringElement:
    """``(g, s, t)`` with ``exp(s) = det a`` and ``exp(t) = det d``."""

    g: PseudoUnitaryElement
    s: complex
    t: complex

    def residual(self) -> float:
        return max(abs(cmath.exp(self.s) - np.linalg.det(self.g.a)),
                   abs(cmath.exp(self.t) - np.linalg.det(self.g.d)))


def lift(g: PseudoUnitaryElement, s_shift: int = 0, t_shift: int = 0) -> CoveringElement:
    """Lift with principal logarithms, optionally moved by ``2 pi i`` multiples."""
    s = cmath.log(np.linalg.det(g.a)) + 2j * math.pi * s_shift
    t = cmath.log(np.linalg.det(g.d)) + 2j * math.pi * t_shift
    return CoveringElement(g, s, t)


def _trace_log_near_one(X: np.ndarray) -> complex:
    """``tr ln X`` for ``||X - 1|| < 1`` as the sum of principal eigenvalue logs.

    Inside that ball the spectrum lies in the disk ``|w - 1| < 1`` where the
    principal branch agrees with the series ``ln(1 + Y)``.
    """
    if np.linalg.norm(X - np.eye(X.shape[0]), 2) >= 1.0:
        raise CocycleDomainError("||X - 1|| >= 1, logarithm series unavailable")
    return complex(np.sum(np.log(np.linalg.eigvals(X).astype(complex))))


def cocycle_defect(g1: PseudoUnitaryElement, g2: PseudoUnitaryElement) -> tuple[float, float]:
    """``(||a1^{-1} a3 a2^{-1} - 1||, ||d1^{-1} d3 d2^{-1} - 1||)`` for ``g3 = g1 g2``."""
    g3 = g1 @ g2
    n = g1.n
    X = np.linalg.solve(g1.a, g3.a) @ np.linalg.inv(g2.a)
    Y = np.linalg.solve(g1.d, g3.d) @ np.linalg.inv(g2.d)
    I = np.eye(n)
    return float(np.linalg.norm(X - I, 2)), float(np.linalg.norm(Y - I, 2))


def cover_multiply(x1: CoveringElement, x2: CoveringElement) -> CoveringElement:
    """Berezin cocycle: ``s3 = s1 + s2 + tr ln(a1^{-1} a3 a2^{-1})``, same for ``t``."""
    g3 = x1.g @ x2.g
    X = np.linalg.solve(x1.g.a, g3.a) @ np.linalg.inv(x2.g.a)
    Y = np.linalg.solve(x1.g.d, g3.d) @ np.linalg.inv(x2.g.d)
    s3 = x1.s + x2.s + _trace_log_near_one(X)
    t3 = x1.t + x2.t + _trace_log_near_one(Y)
    return CoveringElement(g3, s3, t3)


# ---------------------------------------------------------------------------
# kernel covariance
# ---------------------------------------------------------------------------


def log_det_factor(z, x: CoveringElement) -> complex:
    """``ln det(a + z c) = s + tr ln(1 + z c a^{-1})`` on the cover."""
    g = x.g
    z = np.asarray(z, dtype=complex)
    Y = z @ g.c @ np.linalg.inv(g.a)
    return x.s + complex(np.sum(np.log((1 + np.linalg.eigvals(Y)).astype(complex))))


def double_power(logA: complex, lam, mu) -> complex:
    """``A^{{lam|mu}} = A^lam conj(A)^mu`` given a chosen ``ln A``."""
    return cmath.exp(complex(lam) * logA + complex(mu) * logA.conjugate())


def kernel_on_matrix(z, params: KernelParams) -> complex:
    """``l_{sigma|tau}`` evaluated at a unitary matrix through its eigenvalues."""
    ev = np.linalg.eigvals(np.asarray(z, dtype=complex))
    return kernel_pointwise(np.angle(ev), params)


def kernel_covariance_residual(u, v, x, params: KernelParams) -> tuple[float, float]:
    """Residuals of the matrix and scalar covariance identities.

    Matrix: ``1 - u'v'^* = (a+uc)^{-1} (1 - uv^*) (a+vc)^{*-1}``.
    Scalar: ``l(u'v'^*) = l(uv^*) det(a+uc)^{{-sigma|-tau}} det(a+vc)^{{-tau|-sigma}}``
    with primes denoting the action of ``g``.  ``x`` may be a plain element, in
    which case its principal lift is used (the product is lift independent).
    """
    if isinstance(x, PseudoUnitaryElement):
        x = lift(x)
    g = x.g
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    n = g.n
    I = np.eye(n)
    if abs(np.linalg.det(I - u @ v.conj().T)) < 1e-12:
        raise SingularActionError("u v^* has eigenvalue 1")
    up, vp = moebius_act(u, g), moebius_act(v, g)
    Au, Av = _a_plus_zc(u, g), _a_plus_zc(v, g)
    lhs = I - up @ vp.conj().T
    rhs = np.linalg.solve(Au, I - u @ v.conj().T) @ np.linalg.inv(Av.conj().T)
    mat_res = float(np.linalg.norm(lhs - rhs, 2))

    sigma, tau = complex(params.sigma), complex(params.tau)
    Lu, Lv = log_det_factor(u, x), log_det_factor(v, x)
    left = kernel_on_matrix(up @ vp.conj().T, params)
    right = (kernel_on_matrix(u @ v.conj().T, params)
             * double_power(Lu, -sigma, -tau) * double_power(Lv, -tau, -sigma))
    scal_res = abs(left - right) / max(abs(left), abs(right), 1e-300)
    return mat_res, float(scal_res)


def weight_unitarity_residual(u, x, params: KernelParams) -> float:
    """``| |det(a+uc)^{{-n-tau|-n-sigma}}|^2 - J(u, g) |`` (relative).

    Meaningful on ``Re(sigma+tau) = -n``, ``Im sigma = Im tau``.
    """
    if isinstance(x, PseudoUnitaryElement):
        x = lift(x)
    n = x.g.n
    L = log_det_factor(u, x)
    w = double_power(L, -n - complex(params.tau), -n - complex(params.sigma))
    J = jacobian(u, x.g)
    return abs(abs(w) ** 2 - J) / J


def stabilizer_dilation(alpha) -> PseudoUnitaryElement:
    """``(1/2)[[al + al^{*-1}, al - al^{*-1}], [al - al^{*-1}, al + al^{*-1}]]``, fixes z = 1."""
    al = np.asarray(alpha, dtype=complex)
    ai = np.linalg.inv(al.conj().T)
    return PseudoUnitaryElement(0.5 * (al + ai), 0.5 * (al - ai), 0.5 * (al - ai), 0.5 * (al + ai))


def stabilizer_translation(T) -> PseudoUnitaryElement:
    """``[[1 + iT, iT], [-iT, 1 - iT]]`` with Hermitian ``T``, fixes z = 1."""
    T = np.asarray(T, dtype=complex)
    if np.linalg.norm(T - T.conj().T) > 1e-12:
        raise ValueError("T must be Hermitian")
    I = np.eye(T.shape[0])
    return PseudoUnitaryElement(I + 1j * T, 1j * T, -1j * T, I - 1j * T)
