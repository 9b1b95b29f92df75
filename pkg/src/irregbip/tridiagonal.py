"""Tridiagonal matrices with constant interior diagonal.

The family has diagonal ``(b - alpha, b, ..., b, b - beta)``, subdiagonal
``a_1..a_{n-1}`` and superdiagonal ``c_1..c_{n-1}`` with ``a_i c_i = d^2``.
For ``alpha = d, beta = 0`` the spectrum is known in closed form; the
Sturm-sequence bisection here is the independent numeric check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class TridiagError(ValueError):
    pass


@dataclass(frozen=True)
class TridiagSpec:
    n: int
    b: float
    d: float
    alpha: float
    beta: float
    sub: tuple[float, ...]
    sup: tuple[float, ...]

    def __post_init__(self):
        if self.n < 1:
            raise TridiagError(f"order must be >= 1, got {self.n}")
        if self.d == 0:
            raise TridiagError("d must be nonzero")
        if len(self.sub) != self.n - 1 or len(self.sup) != self.n - 1:
            raise TridiagError("sub/super diagonals must have length n-1")
        d2 = self.d * self.d
        for a, c in zip(self.sub, self.sup):
            if not math.isclose(a * c, d2, rel_tol=1e-12, abs_tol=0.0):
                raise TridiagError(f"a_i*c_i = {a * c} != d^2 = {d2}")

    @classmethod
    def with_constant(cls, n: int, b: float, d: float, alpha: float | None = None,
                      beta: float = 0.0, sub=None) -> "TridiagSpec":
        """Spec with ``c_i = d^2 / a_i``; ``a_i`` defaults to ``d``, ``alpha`` to ``d``."""
        if d == 0:
            raise TridiagError("d must be nonzero")
        sub = tuple(float(a) for a in sub) if sub is not None else (float(d),) * (n - 1)
        if any(a == 0 for a in sub):
            raise TridiagError("subdiagonal entries must be nonzero")
        sup = tuple(d * d / a for a in sub)
        return cls(n, float(b), float(d), float(d if alpha is None else alpha), float(beta), sub, sup)

    def diagonal(self) -> np.ndarray:
        diag = np.full(self.n, float(self.b))
        diag[0] -= self.alpha
        diag[-1] -= self.beta
        return diag

    def to_dense(self) -> np.ndarray:
        a = np.diag(self.diagonal())
        if self.n > 1:
            idx = np.arange(self.n - 1)
            a[idx + 1, idx] = self.sub
            a[idx, idx + 1] = self.sup
        return a


def m_matrix(n: int) -> TridiagSpec:
    """The path-Laplacian-like matrix with ``(1, 2, ..., 2)`` diagonal and -1 off it."""
    if n < 1:
        raise TridiagError(f"M_n needs n >= 1, got {n}")
    # a_i = c_i = -1 so a_i c_i = 1; d = +1 makes alpha = d = 1
    return TridiagSpec(n, 2.0, 1.0, 1.0, 0.0, (-1.0,) * (n - 1), (-1.0,) * (n - 1))


def willms_eigenvalues(spec: TridiagSpec) -> np.ndarray:
    """Closed-form spectrum ``b + 2d cos(2i pi/(2n+1))``, ``i = 1..n``, ascending."""
    if spec.beta != 0 or not math.isclose(spec.alpha, spec.d, rel_tol=1e-15, abs_tol=0.0):
        raise TridiagError("closed form implemented only for alpha = d, beta = 0")
    i = np.arange(1, spec.n + 1)
    vals = spec.b + 2.0 * spec.d * np.cos(2.0 * i * np.pi / (2 * spec.n + 1))
    return np.sort(vals)


def m_least_eigenvalue_closed(n: int) -> float:
    if n < 1:
        raise TridiagError(f"M_n needs n >= 1, got {n}")
    return 4.0 * math.sin(math.pi / (4 * n + 2)) ** 2


def sturm_count(diag: np.ndarray, offsq: np.ndarray, x: float) -> int:
    """Number of eigenvalues strictly below ``x`` (LDL^T pivot signs)."""
    # a zero pivot is nudged below zero and counted as negative
    pivmin = np.finfo(float).tiny * max(1.0, float(np.max(offsq, initial=1.0)))
    count = 0
    q = diag[0] - x
    for i in range(len(diag)):
        if i:
            q = diag[i] - x - offsq[i - 1] / q
        if q == 0:
            q = -pivmin
        if q < 0:
            count += 1
    return count


def sturm_eigenvalues(diag, offsq, tol: float = 1e-12, count: int | None = None) -> np.ndarray:
    """Eigenvalues of the symmetric tridiagonal matrix with the given
    diagonal and squared off-diagonal, by bisection on Sturm counts.

    Returns the ``count`` smallest (all of them by default), ascending.
    """
    if tol <= 0:
        raise TridiagError("tol must be positive")
    diag = np.asarray(diag, dtype=float)
    offsq = np.asarray(offsq, dtype=float)
    n = len(diag)
    if np.any(offsq < 0):
        raise TridiagError("off-diagonal products must be nonnegative (symmetrizable)")
    off = np.sqrt(offsq)
    radius = np.zeros(n)
    if n > 1:
        radius[:-1] += off
        radius[1:] += off
    lo0 = float(np.min(diag - radius)) - 1.0
    hi0 = float(np.max(diag + radius)) + 1.0
    count = n if count is None else min(count, n)
    out = np.empty(count)
    for k in range(count):
        lo, hi = lo0, hi0
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if sturm_count(diag, offsq, mid) > k:
                hi = mid
            else:
                lo = mid
        out[k] = 0.5 * (lo + hi)
    return out


def tridiag_eigenvalues_numeric(spec: TridiagSpec, tol: float = 1e-12,
                                count: int | None = None) -> np.ndarray:
    offsq = np.array(spec.sub, dtype=float) * np.array(spec.sup, dtype=float)
    return sturm_eigenvalues(spec.diagonal(), offsq, tol, count)


def trig_identity_sum_sin(k: int) -> float:
    """Sum of ``sin^2(i pi / 2k)`` for ``i = 1..k-1``; equals ``(k-1)/2``."""
    if k < 3:
        raise TridiagError(f"k must be >= 3, got {k}")
    i = np.arange(1, k)
    return float(np.sum(np.sin(i * np.pi / (2 * k)) ** 2))


def trig_identity_sum_cos(k: int) -> float:
    """Sum of ``cos^2((2i+1) pi / 4k)`` for ``i = 0..k-1``; equals ``k/2``."""
    if k < 3:
        raise TridiagError(f"k must be >= 3, got {k}")
    i = np.arange(k)
    return float(np.sum(np.cos((2 * i + 1) * np.pi / (4 * k)) ** 2))
