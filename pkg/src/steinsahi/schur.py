"""U(n) characters evaluated at eigenvalues ``e^{i psi_k}``."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .signatures import Signature, dimension, make_signature

__all__ = ["EigenAngles", "as_angles", "weyl_denominator", "character", "COINCIDENT_GAP"]

TWO_PI = 2 * math.pi
# below this pairwise angular gap the bialternant loses digits like 1/gap^k
# and the Jacobi-Trudi form (no division) is used instead
COINCIDENT_GAP = 0.1


@dataclass(frozen=True)
class EigenAngles:
    """Eigenvalue angles, each reduced to ``[0, 2 pi)``."""

    values: tuple

    def __post_init__(self):
        vals = tuple(float(v) % TWO_PI for v in self.values)
        if not vals:
            raise ValueError("need at least one angle")
        object.__setattr__(self, "values", vals)

    @property
    def n(self):
        return len(self.values)

    def array(self) -> np.ndarray:
        return np.asarray(self.values)


def as_angles(angles) -> np.ndarray:
    if isinstance(angles, EigenAngles):
        return angles.array()
    return np.mod(np.atleast_1d(np.asarray(angles, dtype=float)), TWO_PI)


def weyl_denominator(angles) -> complex:
    """``prod_{l<k} (e^{i psi_l} - e^{i psi_k})``."""
    z = np.exp(1j * as_angles(angles))
    n = z.size
    out = 1.0 + 0.0j
    for l in range(n):
        for k in range(l + 1, n):
            out *= z[l] - z[k]
    return complex(out)


def _min_gap(psi: np.ndarray) -> float:
    if psi.size < 2:
        return math.inf
    d = np.abs(psi[:, None] - psi[None, :])
    d = np.minimum(d, TWO_PI - d)
    d[np.diag_indices_from(d)] = math.inf
    return float(d.min())


def _complete_homogeneous(z: np.ndarray, kmax: int) -> np.ndarray:
    # h_0..h_kmax from prod_i 1/(1 - z_i x)
    h = np.zeros(kmax + 1, dtype=complex)
    h[0] = 1.0
    for zi in z:
        for k in range(1, kmax + 1):
            h[k] += zi * h[k - 1]
    return h


def _jacobi_trudi(m: Signature, z: np.ndarray) -> complex:
    n = m.n
    mn = m.labels[-1]
    lam = [m.labels[i] - mn - (n - 1 - i) for i in range(n)]
    h = _complete_homogeneous(z, lam[0] + n)
    mat = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            k = lam[i] - i + j
            mat[i, j] = h[k] if k >= 0 else 0.0
    return complex(np.prod(z) ** mn * np.linalg.det(mat))


def character(m: Signature, angles) -> complex:
    """Schur character ``det{e^{i m_j psi_k}} / prod_{l<k}(e^{i psi_l}-e^{i psi_k})``.

    At all-zero angles the exact integer dimension is returned.  When two
    angles are closer than ``COINCIDENT_GAP`` the bialternant suffers from
    cancellation (0/0 in the limit) and the Jacobi-Trudi determinant in
    complete homogeneous polynomials is used.
    """
    m = make_signature(m)
    psi = as_angles(angles)
    if psi.size != m.n:
        raise ValueError(f"expected {m.n} angles, got {psi.size}")
    if not np.any(psi):
        return complex(dimension(m))
    z = np.exp(1j * psi)
    if _min_gap(psi) < COINCIDENT_GAP:
        return _jacobi_trudi(m, z)
    labels = np.asarray(m.labels)
    num = np.linalg.det(np.exp(1j * np.outer(labels, psi)))
    return complex(num / weyl_denominator(psi))
