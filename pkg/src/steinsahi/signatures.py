"""Signatures of U(n) irreducibles and the combinatorics around them."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "Signature",
    "UnipotentClass",
    "make_signature",
    "dual",
    "dimension",
    "shift_all",
    "classify_unipotent",
    "omega_support",
    "enumerate_signatures",
    "signature_array",
    "maya_diagram",
]


@dataclass(frozen=True, order=True)
class Signature:
    """Strictly decreasing integer tuple ``m_1 > ... > m_n``."""

    labels: tuple

    def __post_init__(self):
        labels = tuple(int(x) for x in self.labels)
        if len(labels) < 1:
            raise ValueError("a signature needs at least one label")
        if any(labels[i] <= labels[i + 1] for i in range(len(labels) - 1)):
            raise ValueError(f"labels must be strictly decreasing, got {labels}")
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)

    def __getitem__(self, i):
        return self.labels[i]

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.labels) + ")"


def make_signature(labels: Sequence[int]) -> Signature:
    if isinstance(labels, Signature):
        return labels
    return Signature(tuple(labels))


def dual(m: Signature) -> Signature:
    """``m* = (n-1-m_n, ..., n-1-m_1)``; the character of m* is conj(chi_m)."""
    m = make_signature(m)
    n = m.n
    return Signature(tuple(n - 1 - x for x in reversed(m.labels)))


def _vandermonde(labels) -> int:
    out = 1
    for a, b in itertools.combinations(labels, 2):
        out *= a - b
    return out


def _superfactorial(n: int) -> int:
    out = 1
    for j in range(1, n):
        out *= math.factorial(j)
    return out


def dimension(m: Signature) -> int:
    """Weyl dimension ``prod_{a<b}(m_a - m_b) / prod_{j=1}^{n-1} j!``."""
    m = make_signature(m)
    num = _vandermonde(m.labels)
    den = _superfactorial(m.n)
    q, r = divmod(num, den)
    if r:  # pragma: no cover - impossible for a valid signature
        raise ArithmeticError("dimension is not an integer")
    return q


def shift_all(m: Signature, k: int) -> Signature:
    """Tensor with ``det**k``."""
    m = make_signature(m)
    return Signature(tuple(x + int(k) for x in m.labels))


@dataclass(frozen=True)
class UnipotentClass:
    """Either the tail or one of the classes Z(j)."""

    kind: str  # "tail" or "Z"
    j: int | None = None

    @classmethod
    def tail(cls):
        return cls("tail", None)

    @classmethod
    def z(cls, j: int):
        return cls("Z", int(j))

    @property
    def is_tail(self) -> bool:
        return self.kind == "tail"

    def __str__(self):
        return "Tail" if self.is_tail else f"Z({self.j})"


def classify_unipotent(m: Signature, alpha: int) -> UnipotentClass:
    """Membership of ``m`` in Z(j) or the tail at ``(sigma, tau) = (-n+alpha, 0)``.

    Z(j): the labels alpha-1, ..., 0 all occur, j labels are negative and the
    remaining n-alpha-j are >= alpha.
    """
    m = make_signature(m)
    n = m.n
    if not 0 <= alpha <= n - 1:
        raise ValueError(f"alpha must lie in [0, {n - 1}], got {alpha}")
    labels = set(m.labels)
    if any(k not in labels for k in range(alpha)):
        return UnipotentClass.tail()
    neg = sum(1 for x in m.labels if x < 0)
    return UnipotentClass.z(neg)


def omega_support(m: Signature, sigma: float) -> bool:
    """Whether ``m`` survives in the semi-definite quotient at ``(sigma, 0)``."""
    m = make_signature(m)
    n = m.n
    sigma = float(sigma)
    if sigma < -(n - 1) and not (sigma == math.floor(sigma) and sigma > -n):
        return m.labels[-1] >= 0
    if sigma == math.floor(sigma) and -(n - 1) <= sigma <= 0:
        alpha = int(sigma) + n
        tail = m.labels[n - alpha:]
        return tail == tuple(range(alpha - 1, -1, -1))
    raise ValueError(f"sigma={sigma} is outside the Berezin-Wallach set for n={n}")


def enumerate_signatures(n: int, M: int) -> Iterator[Signature]:
    """All signatures with labels in ``[-M, M]``, lexicographic order."""
    rows = signature_array(n, M)
    for row in rows:
        yield Signature(tuple(int(x) for x in row))


def signature_array(n: int, M: int) -> np.ndarray:
    """Same set as :func:`enumerate_signatures`, as an ``(N, n)`` int64 array."""
    if n < 1 or M < 0:
        raise ValueError("need n >= 1 and M >= 0")
    combos = [c[::-1] for c in itertools.combinations(range(-M, M + 1), n)]
    combos.sort()
    if not combos:
        return np.empty((0, n), dtype=np.int64)
    return np.asarray(combos, dtype=np.int64)


def maya_diagram(m: Signature, lo: int | None = None, hi: int | None = None) -> str:
    """ASCII Maya diagram: one box per integer, ``#`` where a label sits.

    Boxes run left to right in increasing label order.
    """
    m = make_signature(m)
    lo = min(m.labels) - 1 if lo is None else lo
    hi = max(m.labels) + 1 if hi is None else hi
    occupied = set(m.labels)
    boxes = "".join("[#]" if k in occupied else "[ ]" for k in range(lo, hi + 1))
    zero = 3 * (0 - lo) + 1
    axis = " " * zero + "0" if lo <= 0 <= hi else ""
    return boxes + ("\n" + axis if axis else "")
