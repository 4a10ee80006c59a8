"""Dense complex linear algebra on small square matrices.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  The Hermitian
eigensolver is a cyclic Jacobi iteration with complex rotations; everything
spectral (functional calculus, square roots, pseudoinverses, supports) is
built on top of it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .config import get_tolerances
from .errors import NoConvergence, NotHermitian, NotPositive, ShapeMismatch


def as_cmatrix(a, *, square: bool = True) -> np.ndarray:
    """Return ``a`` as a finite complex128 2-d array (copying only when needed)."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ShapeMismatch(f"expected a 2-d array, got shape {m.shape}")
    if square and m.shape[0] != m.shape[1]:
        raise ShapeMismatch(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def op_norm(a) -> float:
    """Operator norm (largest singular value)."""
    a = np.asarray(a, dtype=np.complex128)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def norm_at_most(a, bound: float) -> bool:
    """``op_norm(a) <= bound``, skipping the SVD when the Frobenius norm already decides."""
    a = np.asarray(a, dtype=np.complex128)
    if a.size == 0:
        return True
    fro = float(np.linalg.norm(a))
    if fro <= bound:
        return True
    if fro > bound * math.sqrt(min(a.shape)):
        return False
    return op_norm(a) <= bound


def _check_hermitian(a: np.ndarray) -> None:
    tol = get_tolerances().hermitian
    skew = a - dagger(a)
    # ||a||_F / sqrt(n) <= ||a||, so this bound never exceeds the exact one
    scale = max(1.0, float(np.linalg.norm(a)) / math.sqrt(max(a.shape[0], 1)))
    if not norm_at_most(skew, tol * scale) and op_norm(skew) > tol * max(1.0, op_norm(a)):
        raise NotHermitian(f"matrix is not self-adjoint (||a - a*|| = {op_norm(skew):.3g})")


@dataclass(frozen=True)
class EigenDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    tol_used: float
    sweeps: int = 0

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ dagger(v)


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Annihilate a[p, q] in place with one complex Jacobi rotation."""
    apq = a[p, q]
    r = abs(apq)
    phase = apq / r
    alpha = a[p, p].real
    beta = a[q, q].real
    theta = 0.5 * math.atan2(2.0 * r, beta - alpha)
    c = math.cos(theta)
    s = math.sin(theta)
    # G = diag(1, conj(phase)) @ [[c, s], [-s, c]]
    g00, g01 = c, s
    g10, g11 = -s * phase.conjugate(), c * phase.conjugate()

    col_p = a[:, p].copy()
    col_q = a[:, q]
    a[:, p] = col_p * g00 + col_q * g10
    a[:, q] = col_p * g01 + col_q * g11
    row_p = a[p, :].copy()
    row_q = a[q, :]
    a[p, :] = row_p * g00 + row_q * g10.conjugate()
    a[q, :] = row_p * g01 + row_q * g11.conjugate()
    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real

    vp = v[:, p].copy()
    vq = v[:, q]
    v[:, p] = vp * g00 + vq * g10
    v[:, q] = vp * g01 + vq * g11


def eig_hermitian(a) -> EigenDecomposition:
    """Eigendecomposition of a self-adjoint matrix by cyclic Jacobi sweeps.

    Pivots are visited in the fixed row-major order (0,1), (0,2), ..., so
    the result is deterministic for a given input.  Eigenvalues come back
    ascending, with eigenvectors as the columns of a unitary matrix.
    """
    m = as_cmatrix(a)
    _check_hermitian(m)
    tol = get_tolerances()
    n = m.shape[0]
    work = 0.5 * (m + dagger(m))
    vecs = np.eye(n, dtype=np.complex128)
    fro = float(np.linalg.norm(work))
    target = tol.eig_offdiag * fro
    sweeps = 0
    if n > 1:
        iu = np.triu_indices(n, 1)
        while True:
            off = math.sqrt(2.0) * float(np.linalg.norm(work[iu]))
            if off <= target:
                break
            if sweeps >= tol.eig_max_sweeps:
                raise NoConvergence(f"Jacobi did not converge in {sweeps} sweeps (off = {off:.3g})")
            # entries this small cannot move the off-diagonal mass any more
            skip = target / n
            for p in range(n - 1):
                for q in range(p + 1, n):
                    if abs(work[p, q]) > skip:
                        _rotate(work, vecs, p, q)
            sweeps += 1
    lam = work.diagonal().real.copy()
    order = np.argsort(lam, kind="stable")
    return EigenDecomposition(lam[order], vecs[:, order], tol.eig_offdiag, sweeps)


def rank_threshold(lam_max: float) -> float:
    tol = get_tolerances()
    return max(tol.rank * max(lam_max, 0.0), tol.rank_floor)


def apply_function(a, g: Callable[[float], complex], eig: Optional[EigenDecomposition] = None) -> np.ndarray:
    """Functional calculus: ``V diag(g(lambda_i)) V*``.

    ``g`` is called once per computed eigenvalue.  A precomputed
    decomposition of ``a`` may be passed in to avoid recomputing it.
    """
    if eig is None:
        eig = eig_hermitian(a)
    vals = np.array([g(float(x)) for x in eig.eigenvalues], dtype=np.complex128)
    v = eig.eigenvectors
    return (v * vals) @ dagger(v)


def _psd_spectrum(a, eig: Optional[EigenDecomposition]):
    if eig is None:
        eig = eig_hermitian(a)
    lam = eig.eigenvalues
    scale = max(float(np.max(np.abs(lam))) if lam.size else 0.0, 0.0)
    if lam.size and lam[0] < -get_tolerances().not_positive * max(scale, 1e-300):
        raise NotPositive(f"matrix has eigenvalue {lam[0]:.3g} < 0")
    lam = np.clip(lam, 0.0, None)
    cut = rank_threshold(float(lam[-1]) if lam.size else 0.0)
    return eig, lam, cut


def sqrt_psd(a, eig: Optional[EigenDecomposition] = None) -> np.ndarray:
    """Positive square root.  Eigenvalues at or below the rank threshold are
    treated as exact zeros, so a rank-deficient input keeps its kernel."""
    eig, lam, cut = _psd_spectrum(a, eig)
    root = np.where(lam > cut, np.sqrt(lam), 0.0)
    v = eig.eigenvectors
    return (v * root) @ dagger(v)


def pinv_psd(a, eig: Optional[EigenDecomposition] = None) -> np.ndarray:
    eig, lam, cut = _psd_spectrum(a, eig)
    inv = np.zeros_like(lam)
    keep = lam > cut
    inv[keep] = 1.0 / lam[keep]
    v = eig.eigenvectors
    return (v * inv) @ dagger(v)


def support_projection(a, eig: Optional[EigenDecomposition] = None) -> np.ndarray:
    """Projection onto the span of eigenvectors above the rank threshold."""
    eig, lam, cut = _psd_spectrum(a, eig)
    v = eig.eigenvectors[:, lam > cut]
    return v @ dagger(v)


def min_eigenvalue(a) -> float:
    lam = eig_hermitian(a).eigenvalues
    return float(lam[0]) if lam.size else 0.0


def is_positive(a, tol: Optional[float] = None) -> bool:
    """Spectral positivity test: ``min eig(a) >= -tol * max(1, ||a||)``."""
    m = as_cmatrix(a)
    if tol is None:
        tol = get_tolerances().positivity
    if m.shape[0] == 0:
        return True
    return min_eigenvalue(m) >= -tol * max(1.0, op_norm(m))


def is_positive_by_norm(a, tol: Optional[float] = None) -> bool:
    """Norm-only positivity test: a >= 0 iff || ||a|| - a || <= ||a||.

    Uses the same slack convention as :func:`is_positive`, so the two tests
    draw the line in the same place.
    """
    m = as_cmatrix(a)
    _check_hermitian(m)
    if tol is None:
        tol = get_tolerances().positivity
    if m.shape[0] == 0:
        return True
    n = op_norm(m)
    shifted = op_norm(n * np.eye(m.shape[0]) - m)
    return shifted <= n + tol * max(1.0, n)


def proportionality_coefficient(f, g) -> Optional[complex]:
    """Return alpha != 0 with f = alpha * g (Frobenius residual), or None.

    By convention two zero maps are proportional with alpha = 1.
    """
    f = np.asarray(f, dtype=np.complex128)
    g = np.asarray(g, dtype=np.complex128)
    if f.shape != g.shape:
        raise ShapeMismatch(f"shapes differ: {f.shape} vs {g.shape}")
    tol = get_tolerances().proportional
    nf = float(np.linalg.norm(f))
    ng = float(np.linalg.norm(g))
    scale = max(nf, ng)
    if scale == 0.0:
        return 1.0 + 0.0j
    if ng <= tol * scale:
        return None
    alpha = complex(np.vdot(g, f) / np.vdot(g, g))
    if abs(alpha) * ng <= tol * scale:
        return None
    if float(np.linalg.norm(f - alpha * g)) <= tol * scale:
        return alpha
    return None


def matrix_to_json(a) -> dict:
    m = np.asarray(a, dtype=np.complex128)
    entries = [[float(z.real), float(z.imag)] for z in m.ravel()]
    if m.shape[0] == m.shape[1]:
        return {"dim": int(m.shape[0]), "entries": entries}
    return {"shape": [int(m.shape[0]), int(m.shape[1])], "entries": entries}


def matrix_from_json(obj) -> np.ndarray:
    if "shape" in obj:
        rows, cols = (int(x) for x in obj["shape"])
    else:
        rows = cols = int(obj["dim"])
    entries = obj["entries"]
    if len(entries) != rows * cols:
        raise ShapeMismatch(f"expected {rows * cols} entries, got {len(entries)}")
    flat = np.array([complex(float(re), float(im)) for re, im in entries], dtype=np.complex128)
    return as_cmatrix(flat.reshape(rows, cols), square=False)
