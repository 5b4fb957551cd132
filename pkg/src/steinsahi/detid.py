"""Residual checks for the Cauchy-type determinant identities."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels

__all__ = [
    "IdentityResidual",
    "SingularInputError",
    "IllConditionedWarning",
    "cauchy_matrix",
    "bordered_cauchy_matrix",
    "krattenthaler_matrix",
    "cauchy_rhs",
    "bordered_cauchy_rhs",
    "krattenthaler_rhs",
    "cauchy_residual",
    "bordered_cauchy_residual",
    "krattenthaler_residual",
    "batch_residuals",
    "random_inputs",
    "equilibrated_det",
    "exact_det",
]

COND_WARN = 1e10


class SingularInputError(ValueError):
    pass


class IllConditionedWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class IdentityResidual:
    residual: float
    condition: float
    lhs: float
    rhs: float

    def __float__(self):
        return self.residual


def _prod(xs):
    out = 1
    for x in xs:
        out = out * x
    return out


def _distinct(v, what):
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            if v[i] == v[j]:
                raise SingularInputError(f"{what} entries must be distinct")


def cauchy_matrix(x, y):
    n = len(x)
    if len(y) != n:
        raise ValueError("x and y must have the same length")
    for xk in x:
        for yl in y:
            if xk + yl == 0:
                raise SingularInputError("x_k + y_l vanishes")
    return [[1 / (x[k] + y[l]) for l in range(n)] for k in range(n)]


def cauchy_rhs(x, y):
    n = len(x)
    num = _prod((x[k] - x[l]) * (y[k] - y[l]) for k in range(n) for l in range(k + 1, n))
    den = _prod(x[k] + y[l] for k in range(n) for l in range(n))
    return num / den


def bordered_cauchy_matrix(x, b):
    n = len(x)
    if len(b) != n - 1:
        raise ValueError("b must have length n - 1")
    for xk in x:
        for ba in b:
            if xk + ba == 0:
                raise SingularInputError("x_k + b_a vanishes")
    rows = [[1] * n]
    rows += [[1 / (x[k] + ba) for k in range(n)] for ba in b]
    return rows


def bordered_cauchy_rhs(x, b):
    n = len(x)
    num = _prod(x[k] - x[l] for k in range(n) for l in range(k + 1, n))
    num = num * _prod(b[a] - b[c] for a in range(n - 1) for c in range(a + 1, n - 1))
    den = _prod(x[k] + ba for k in range(n) for ba in b)
    return num / den


def krattenthaler_matrix(x, a, b):
    """Row ``r`` holds ``prod_{i<r} (x_k + a_i) / (x_k + b_i)``; row 0 is all ones."""
    n = len(x)
    if len(a) != n - 1 or len(b) != n - 1:
        raise ValueError("a and b must have length n - 1")
    for xk in x:
        for bb in b:
            if xk + bb == 0:
                raise SingularInputError("x_k + b_b vanishes")
    rows = []
    for r in range(n):
        row = []
        for k in range(n):
            v = 1
            for i in range(r):
                v = v * (x[k] + a[i]) / (x[k] + b[i])
            row.append(v)
        rows.append(row)
    return rows


def krattenthaler_rhs(x, a, b):
    n = len(x)
    num = _prod(x[k] - x[l] for k in range(n) for l in range(k + 1, n))
    num = num * _prod(a[i] - b[j] for i in range(n - 1) for j in range(i, n - 1))
    den = _prod(x[k] + bb for k in range(n) for bb in b)
    return num / den


def exact_det(rows):
    """Determinant by fraction-free friendly Gaussian elimination (any field type)."""
    M = [list(r) for r in rows]
    n = len(M)
    det = Fraction(1) if isinstance(M[0][0], (int, Fraction)) else 1.0
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return det * 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            if f != 0:
                for j in range(c, n):
                    M[i][j] = M[i][j] - f * M[c][j]
    return det


def _residual(rows, rhs, warn=True) -> IdentityResidual:
    A = np.asarray(rows, dtype=float)
    lhs = float(equilibrated_det(A[None])[0])
    rhs = float(rhs)
    cond = float(np.linalg.cond(A)) if A.size > 1 else 1.0
    scale = max(abs(lhs), abs(rhs))
    res = abs(lhs - rhs) / scale if scale > 1e-300 else abs(lhs - rhs)
    if warn and cond > COND_WARN:
        warnings.warn(f"ill-conditioned input (cond ~ {cond:.2e})", IllConditionedWarning, stacklevel=3)
    return IdentityResidual(res, cond, lhs, rhs)


def cauchy_residual(x, y) -> IdentityResidual:
    x, y = list(map(float, x)), list(map(float, y))
    _distinct(x, "x")
    _distinct(y, "y")
    return _residual(cauchy_matrix(x, y), cauchy_rhs(x, y))


def bordered_cauchy_residual(x, b) -> IdentityResidual:
    x, b = list(map(float, x)), list(map(float, b))
    _distinct(x, "x")
    _distinct(b, "b")
    return _residual(bordered_cauchy_matrix(x, b), bordered_cauchy_rhs(x, b))


def krattenthaler_residual(x, a, b) -> IdentityResidual:
    x, a, b = list(map(float, x)), list(map(float, a)), list(map(float, b))
    _distinct(x, "x")
    return _residual(krattenthaler_matrix(x, a, b), krattenthaler_rhs(x, a, b))


def equilibrated_det(mats: np.ndarray) -> np.ndarray:
    """Batched determinant after exact power-of-two row/column scaling."""
    A = np.array(mats, dtype=float, copy=True)
    log2 = np.zeros(A.shape[0])
    for _ in range(2):
        r = np.exp2(np.round(np.log2(np.abs(A).max(axis=2))))
        A /= r[:, :, None]
        log2 += np.log2(r).sum(axis=1)
        c = np.exp2(np.round(np.log2(np.abs(A).max(axis=1))))
        A /= c[:, None, :]
        log2 += np.log2(c).sum(axis=1)
    return _kernels.batch_det(A) * np.exp2(log2)


def _geometric(rng, k, lo, ratio=4.0):
    # distinct magnitudes lo * ratio**j, shuffled, with 20% jitter
    return lo * ratio ** rng.permutation(k) * rng.uniform(1.0, 1.2, size=k)


def random_inputs(kind: str, n: int, rng: np.random.Generator):
    """Well-separated positive inputs (pairwise gaps >= 0.1) for one identity.

    Entries are geometrically spread so that the matrices stay well
    conditioned in double precision up to n = 6.
    """
    if kind == "cauchy":
        return _geometric(rng, n, 1.0, 3.0), _geometric(rng, n, 1.0, 3.0)
    if kind == "bordered":
        return _geometric(rng, n, 1.0, 3.0), _geometric(rng, n - 1, 1.0, 3.0)
    if kind == "krattenthaler":
        return (_geometric(rng, n, 1e4), _geometric(rng, n - 1, 1.0), _geometric(rng, n - 1, 1e8))
    raise ValueError(f"unknown identity {kind!r}")


_BUILD = {
    "cauchy": (cauchy_matrix, cauchy_rhs),
    "bordered": (bordered_cauchy_matrix, bordered_cauchy_rhs),
    "krattenthaler": (krattenthaler_matrix, krattenthaler_rhs),
}


def batch_residuals(kind: str, n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Relative residuals on ``count`` draws of :func:`random_inputs`."""
    build, rhs_of = _BUILD[kind]
    mats = np.empty((count, n, n))
    rhs = np.empty(count)
    for r in range(count):
        args = random_inputs(kind, n, rng)
        mats[r] = build(*args)
        rhs[r] = rhs_of(*args)
    lhs = equilibrated_det(mats)
    scale = np.maximum(np.abs(lhs), np.abs(rhs))
    return np.abs(lhs - rhs) / np.where(scale > 1e-300, scale, 1.0)
