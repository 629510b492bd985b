"""Dense complex linear algebra for small Hilbert spaces.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Every routine
validates its input instead of repairing it: a matrix that is not Hermitian
within :data:`HERMITIAN_TOL` is rejected, never symmetrized.
"""

from __future__ import annotations

import numpy as np

from .errors import MatrixTooLarge, NotHermitian, NotPSD, NotSquare

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10
MAX_ENTRIES = 4096


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a finite 2-D complex array within the size cap."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    if a.ndim != 2 or a.size == 0:
        raise NotSquare(f"expected a non-empty 2-D matrix, got shape {a.shape}")
    if a.size > MAX_ENTRIES:
        raise MatrixTooLarge(
            f"matrix of shape {a.shape} exceeds the {MAX_ENTRIES}-entry cap")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix contains NaN or Inf entries")
    return a


def _square(m) -> np.ndarray:
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {a.shape}")
    return a


def hermiticity_error(m) -> float:
    a = _square(m)
    return float(np.max(np.abs(a - a.conj().T)))


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    return hermiticity_error(m) <= tol


def _hermitian(m) -> np.ndarray:
    a = _square(m)
    err = float(np.max(np.abs(a - a.conj().T)))
    if err > HERMITIAN_TOL:
        raise NotHermitian(f"matrix is not Hermitian (max asymmetry {err:.3g})")
    return a


def _fix_phase(vecs: np.ndarray) -> np.ndarray:
    # Largest-magnitude component of each column made real and nonnegative.
    out = vecs.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        j = int(np.argmax(np.abs(col)))
        if abs(col[j]) > 0:
            out[:, k] = col * (abs(col[j]) / col[j])
    return out


def eig_hermitian(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with real eigenvalues sorted in
    descending order and orthonormal eigenvectors as the columns of the second
    array, so that ``m == V @ diag(w) @ V.conj().T``.

    Raises:
        NotSquare: ``m`` is not square.
        NotHermitian: ``m`` deviates from its adjoint by more than 1e-10.
    """
    a = _hermitian(m)
    # eigh reads one triangle only; the symmetry check above guards that.
    w, v = np.linalg.eigh(a)
    order = np.argsort(w)[::-1]
    return w[order], _fix_phase(v[:, order])


def _psd_eigen(m) -> tuple[np.ndarray, np.ndarray]:
    w, v = eig_hermitian(m)
    if w.size and w[-1] < -PSD_TOL:
        raise NotPSD(f"matrix has a negative eigenvalue {w[-1]:.3g}")
    return np.clip(w, 0.0, None), v


def sqrtm_psd(m) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix.

    Eigenvalues in ``[-1e-10, 0)`` are treated as zero; anything more negative
    raises :class:`NotPSD`.
    """
    w, v = _psd_eigen(m)
    return (v * np.sqrt(w)) @ v.conj().T


def trace_norm(m) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    w, _ = eig_hermitian(m)
    return float(np.sum(np.abs(w)))


def kron(a, b) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    n = a.shape[0] * b.shape[0] * a.shape[1] * b.shape[1]
    if n > MAX_ENTRIES:
        raise MatrixTooLarge(f"Kronecker product would have {n} entries")
    return np.kron(a, b)


def svd(m) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Full singular value decomposition ``m = U @ diag(s) @ V.conj().T``.

    Note the third factor is ``V`` itself, not its adjoint.
    """
    a = as_matrix(m)
    u, s, vh = np.linalg.svd(a, full_matrices=True)
    return u, s, vh.conj().T


def projector(vectors) -> np.ndarray:
    """Orthogonal projector onto the span of orthonormal column ``vectors``."""
    v = as_matrix(vectors)
    return v @ v.conj().T
