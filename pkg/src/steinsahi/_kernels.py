"""Hot inner loops, each with a numba body and a numpy twin.

The public names at the bottom of the module are bound to one or the other
according to :data:`steinsahi._backend.USE_NUMBA`.  Both variants are always
importable (``*_numba`` / ``*_numpy``) so the benchmark and the test-suite can
compare them directly.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import special

from ._backend import USE_NUMBA, njit

# ---------------------------------------------------------------------------
# sign-tracked coefficient body
# ---------------------------------------------------------------------------


@njit(cache=True)
def _is_pole(x):
    return x <= 0.0 and x == math.floor(x)


@njit(cache=True)
def _gamma_sign(x):
    if x > 0.0:
        return 1
    k = math.floor(x)
    return 1 if int(k) % 2 == 0 else -1


@njit(cache=True)
def coefficient_body_numba(labels, sigma, tau):
    """Sign and log-magnitude of the label-dependent factor of c_m.

    The factor is (-1)^{sum m} prod_{a<b}(m_a - m_b)
    prod_j 1/(Gamma(sigma - m_j + n) Gamma(tau + m_j + 1)) for real sigma, tau.
    A zero of a reciprocal Gamma gives sign 0.
    """
    N, n = labels.shape
    sign = np.empty(N, dtype=np.int64)
    logmag = np.empty(N, dtype=np.float64)
    for r in range(N):
        s = 1
        lm = 0.0
        tot = 0
        zero = False
        for a in range(n):
            ma = labels[r, a]
            tot += ma
            for b in range(a + 1, n):
                lm += math.log(float(ma - labels[r, b]))
            x = sigma - ma + n
            y = tau + ma + 1.0
            if _is_pole(x) or _is_pole(y):
                zero = True
                break
            s *= _gamma_sign(x) * _gamma_sign(y)
            lm -= math.lgamma(x) + math.lgamma(y)
        if zero:
            sign[r] = 0
            logmag[r] = -np.inf
            continue
        if tot % 2 != 0:
            s = -s
        sign[r] = s
        logmag[r] = lm
    return sign, logmag


def coefficient_body_numpy(labels, sigma, tau):
    labels = np.asarray(labels, dtype=np.int64)
    N, n = labels.shape
    x = sigma - labels + n
    y = tau + labels + 1.0
    pole = ((x <= 0) & (x == np.floor(x))) | ((y <= 0) & (y == np.floor(y)))
    zero = pole.any(axis=1)
    with np.errstate(all="ignore"):
        lg = special.gammaln(x) + special.gammaln(y)
        sg = special.gammasgn(x) * special.gammasgn(y)
    sg = np.where(pole, 1.0, sg)
    lg = np.where(pole, 0.0, lg)
    ia, ib = np.triu_indices(n, 1)
    vander = np.log((labels[:, ia] - labels[:, ib]).astype(float)).sum(axis=1)
    parity = np.where(labels.sum(axis=1) % 2 == 0, 1, -1)
    sign = (parity * np.prod(sg, axis=1)).astype(np.int64)
    logmag = vander - lg.sum(axis=1)
    sign[zero] = 0
    logmag[zero] = -np.inf
    return sign, logmag


# ---------------------------------------------------------------------------
# batched small determinants
# ---------------------------------------------------------------------------


@njit(cache=True)
def batch_det_numba(mats):
    N, k, _ = mats.shape
    out = np.empty(N, dtype=mats.dtype)
    work = np.empty((k, k), dtype=mats.dtype)
    for r in range(N):
        for i in range(k):
            for j in range(k):
                work[i, j] = mats[r, i, j]
        det = work[0, 0] * 0 + 1
        for c in range(k):
            piv = c
            best = abs(work[c, c])
            for i in range(c + 1, k):
                if abs(work[i, c]) > best:
                    best = abs(work[i, c])
                    piv = i
            if best == 0.0:
                det = det * 0
                break
            if piv != c:
                for j in range(k):
                    tmp = work[c, j]
                    work[c, j] = work[piv, j]
                    work[piv, j] = tmp
                det = -det
            det = det * work[c, c]
            for i in range(c + 1, k):
                f = work[i, c] / work[c, c]
                for j in range(c, k):
                    work[i, j] -= f * work[c, j]
        out[r] = det
    return out


def batch_det_numpy(mats):
    return np.linalg.det(mats)


# ---------------------------------------------------------------------------
# two-torus Weyl sum for the full-quadrature oracle
# ---------------------------------------------------------------------------


@njit(cache=True)
def torus_sum2_numba(psi, fw, m1, m2):
    """sum_{i,j} fw_i fw_j V(psi_i, psi_j) conj(num_m(psi_i, psi_j)).

    ``fw`` already carries quadrature weight times the one-angle kernel factor.
    """
    K = psi.shape[0]
    acc = 0.0 + 0.0j
    e1 = np.exp(1j * m1 * psi)
    e2 = np.exp(1j * m2 * psi)
    z = np.exp(1j * psi)
    for i in range(K):
        for j in range(K):
            v = z[i] - z[j]
            num = e1[i] * e2[j] - e2[i] * e1[j]
            acc += fw[i] * fw[j] * v * np.conj(num)
    return acc


def torus_sum2_numpy(psi, fw, m1, m2):
    e1 = np.exp(1j * m1 * psi)
    e2 = np.exp(1j * m2 * psi)
    z = np.exp(1j * psi)
    v = z[:, None] - z[None, :]
    num = np.outer(e1, e2) - np.outer(e2, e1)
    return np.sum(np.outer(fw, fw) * v * np.conj(num))


if USE_NUMBA:
    coefficient_body = coefficient_body_numba
    batch_det = batch_det_numba
    torus_sum2 = torus_sum2_numba
else:
    coefficient_body = coefficient_body_numpy
    batch_det = batch_det_numpy
    torus_sum2 = torus_sum2_numpy
