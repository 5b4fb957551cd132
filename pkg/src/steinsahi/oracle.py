"""Independent numerical oracles for the closed forms.

Nothing here calls the Gamma-product coefficient formula: the determinant
reduction and the torus quadrature only integrate the kernel itself.
"""
from __future__ import annotations

import cmath
import itertools
import math

import numpy as np

from . import _kernels
from .gamma import PoleError, is_nonpositive_integer, log_gamma, reciprocal_gamma, gamma
from .kernel import KernelParams, coefficient, normalized_coefficient
from .quadrature import QuadratureConfig, tanh_sinh, tanh_sinh_nodes
from .signatures import make_signature

__all__ = [
    "IntegrabilityError",
    "lobachevsky_closed",
    "lobachevsky_numeric",
    "coefficient_det_reduction",
    "coefficient_full_quadrature",
    "orthogonality_residual",
    "gauss_2f1_check",
    "extrapolate_to_zero",
    "epsilon_limit",
    "l2_diagonal_limit",
]

TWO_PI = 2 * math.pi


class IntegrabilityError(ValueError):
    pass


def lobachevsky_closed(mu, b) -> complex:
    """``int_0^pi sin^{mu-1}(phi) e^{i b phi} dphi`` in closed form."""
    mu, b = complex(mu), complex(b)
    if is_nonpositive_integer(mu):
        raise PoleError(f"Gamma(mu) has a pole at mu={mu}")
    pre = 2.0 ** (1 - mu) * math.pi * cmath.exp(log_gamma(mu)) * cmath.exp(0.5j * math.pi * b)
    return pre * reciprocal_gamma((mu + b + 1) / 2) * reciprocal_gamma((mu - b + 1) / 2)


def lobachevsky_numeric(mu, b, cfg: QuadratureConfig | None = None):
    """Tanh-sinh value of the same integral; returns ``(value, error_estimate)``."""
    mu, b = complex(mu), complex(b)
    if mu.real <= 0:
        raise IntegrabilityError("need Re mu > 0")

    def f(x, da, db):
        s = np.sin(np.minimum(da, db))
        return np.exp((mu - 1) * np.log(s) + 1j * b * x)

    return tanh_sinh(f, 0.0, math.pi, cfg)


def _angle_factor(params: KernelParams):
    sigma, tau = complex(params.sigma), complex(params.tau)
    x = sigma + tau

    def f(psi, da, db):
        s = np.sin(0.5 * np.minimum(da, db))
        return np.exp(x * np.log(s) + 0.5j * (sigma - tau) * (psi - math.pi))

    return f


def _check_integrable(params: KernelParams, margin: float):
    x = complex(params.sigma) + complex(params.tau)
    if x.real < -1 + margin - 1e-12:
        raise IntegrabilityError(f"Re(sigma+tau) = {x.real:g} is too close to -1 for quadrature")


def coefficient_det_reduction(m, params: KernelParams, cfg: QuadratureConfig | None = None,
                              margin: float = 0.1) -> complex:
    """``c_m = (2 pi)^{-n} det I`` with ``I_{kj} = int f(psi) e^{i(n-k-m_j) psi} dpsi``.

    ``f`` is the one-angle factor of the kernel.  Rows run over the descending
    Vandermonde exponents ``n-1, ..., 0``, matching the product form of the
    Weyl denominator used by the characters.
    """
    m = make_signature(m)
    n = params.n
    if n != m.n:
        raise ValueError("signature length does not match n")
    if n > 4:
        raise ValueError("determinant reduction oracle is limited to n <= 4")
    _check_integrable(params, margin)
    cfg = cfg or QuadratureConfig()
    base = _angle_factor(params)
    cache = {}
    mat = np.empty((n, n), dtype=complex)
    for k in range(n):
        for j in range(n):
            e = (n - 1 - k) - m.labels[j]
            if e not in cache:
                cache[e] = tanh_sinh(lambda x, da, db: base(x, da, db) * np.exp(1j * e * x),
                                     0.0, TWO_PI, cfg)[0]
            mat[k, j] = cache[e]
    return complex(np.linalg.det(mat) / TWO_PI ** n)


def coefficient_full_quadrature(m, params: KernelParams, cfg: QuadratureConfig | None = None,
                                level: int = 5, margin: float = 0.1) -> complex:
    """Direct Weyl-integration value of ``c_m`` for ``n <= 2``.

    ``c_m = 1/((2 pi)^n n!) int l(psi) V(psi) conj(det e^{i m_j psi_k}) dpsi``
    on a tensor tanh-sinh grid (level 5 is about 400 nodes per axis).
    """
    m = make_signature(m)
    n = params.n
    if n > 2:
        raise ValueError("full quadrature is limited to n <= 2")
    _check_integrable(params, margin)
    f = _angle_factor(params)
    if n == 1:
        cfg = cfg or QuadratureConfig()
        val, _ = tanh_sinh(lambda x, da, db: f(x, da, db) * np.exp(-1j * m.labels[0] * x),
                           0.0, TWO_PI, cfg)
        return complex(val / TWO_PI)
    x, w, da, db = tanh_sinh_nodes(0.0, TWO_PI, level)
    fw = (w * f(x, da, db)).astype(complex)
    total = _kernels.torus_sum2(x, fw, m.labels[0], m.labels[1])
    return complex(total / (TWO_PI ** 2 * 2))


def orthogonality_residual(m1, m2, n: int, cfg: QuadratureConfig | None = None) -> float:
    """``|<chi_m1, chi_m2> - delta|`` under the Weyl measure on the torus.

    The integrand is a trigonometric polynomial, so a uniform grid with more
    points than its degree integrates it exactly.
    """
    m1, m2 = make_signature(m1), make_signature(m2)
    if not (m1.n == m2.n == n):
        raise ValueError("signature lengths must equal n")
    if n > 3:
        raise ValueError("orthogonality oracle is limited to n <= 3")
    span = max(abs(v) for v in m1.labels + m2.labels) * 2 + n + 2
    N = 2 * span + 1
    grid = np.arange(N) * (TWO_PI / N)
    total = 0j
    a1 = np.asarray(m1.labels)
    a2 = np.asarray(m2.labels)
    for idx in itertools.product(range(N), repeat=n):
        psi = grid[list(idx)]
        num1 = np.linalg.det(np.exp(1j * np.outer(a1, psi))) if n > 1 else np.exp(1j * a1[0] * psi[0])
        num2 = np.linalg.det(np.exp(1j * np.outer(a2, psi))) if n > 1 else np.exp(1j * a2[0] * psi[0])
        total += num1 * np.conj(num2)
    inner = total / N ** n / math.factorial(n)
    return float(abs(inner - (1.0 if m1 == m2 else 0.0)))


def gauss_2f1_check(p, q, terms: int = 200) -> float:
    """Residual of ``sum_k (1-p)_k (1-q)_k / (k!)^2 = Gamma(p+q-1)/(Gamma(p)Gamma(q))``.

    The partial sums converge like ``K^{1-p-q}``; the tail is removed by a least
    squares fit in the known powers ``K^{1-s}, K^{-s}, ...`` (``s = p+q``).
    Terminating series are summed exactly.
    """
    p, q = complex(p), complex(q)
    s = p + q
    if s.real <= 1:
        raise ValueError("the series diverges unless Re(p+q) > 1")
    a, b = 1 - p, 1 - q
    closed = gamma(s - 1) * reciprocal_gamma(p) * reciprocal_gamma(q)
    terminating = is_nonpositive_integer(a) or is_nonpositive_integer(b)
    K = terms
    if terminating:
        K = min(int(-v.real) for v in (a, b) if is_nonpositive_integer(v))
    partial = np.empty(K + 1, dtype=complex)
    term = 1.0 + 0j
    acc = 0j
    for k in range(K + 1):
        acc += term
        partial[k] = acc
        term *= (a + k) * (b + k) / ((k + 1) ** 2)
    if terminating:
        return float(abs(partial[-1] - closed))
    Ks = np.unique(np.linspace(K // 4, K, 24).astype(int))
    cols = [np.ones(len(Ks))] + [Ks.astype(float) ** (1 - s - i) for i in range(4)]
    A = np.column_stack(cols)
    coef, *_ = np.linalg.lstsq(A, partial[Ks], rcond=None)
    return float(abs(coef[0] - closed))


def extrapolate_to_zero(eps, values) -> complex:
    """Value at ``eps = 0`` of the polynomial through ``(eps_i, values_i)`` (Neville).

    Two points give linear Richardson extrapolation; each extra point removes
    one more power of ``eps`` from the error.
    """
    eps = [float(e) for e in eps]
    p = [complex(v) for v in values]
    k = len(eps)
    if k != len(p) or k == 0:
        raise ValueError("need matching, non-empty eps and values")
    for level in range(1, k):
        for i in range(k - level):
            j = i + level
            p[i] = (eps[j] * p[i] - eps[i] * p[i + 1]) / (eps[j] - eps[i])
    return p[0]


def epsilon_limit(m, n: int, sigma0, tau0, s, t, eps=(1e-4, 1e-5)) -> complex:
    """Numerical limit of the closed form along ``(sigma0 + eps s, tau0 + eps t)``.

    Polynomial extrapolation over the given step sizes (linear Richardson for
    the default pair); test oracle only.
    """
    vals = [coefficient(m, KernelParams(n, sigma0 + e * s, tau0 + e * t)) for e in eps]
    return extrapolate_to_zero(eps, vals)


def l2_diagonal_limit(m, n: int, tau, eps=(1e-3, 1e-4, 1e-5)) -> complex:
    """``c_m / prod_j Gamma(sigma+tau+j)`` as ``sigma -> -n - tau`` from above.

    Three step sizes give an ``O(eps^3)`` extrapolation error; two would leave
    ``O(1e-9)`` times the curvature, which is visible at the 1e-8 level.
    """
    vals = [normalized_coefficient(m, KernelParams(n, -n - tau + e, tau)) for e in eps]
    return extrapolate_to_zero(eps, vals)
