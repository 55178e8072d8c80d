"""Dense complex linear algebra used throughout the package.

Conventions fixed here and relied on everywhere else:

* vectorization is COLUMN stacking, ``vec(A)`` lists the columns of ``A``
  top to bottom, so the two-sided product ``A -> X A Y`` has matrix
  ``kron(Y.T, X)`` on vectorized input;
* all norms appearing in contracts are Frobenius norms.

Eigendecomposition, the matrix exponential and matrix inversion are backed
by numpy/scipy (LAPACK); the contracts they must meet are asserted in the
test suite against independent oracles (e.g. a scaled Taylor partial sum
for ``expm``).
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, NonHermitianInput, NonSquare

# Relative tolerance under which inputs are accepted as Hermitian.
HERMITICITY_RTOL = 1e-9


class HermitianEigenResult(NamedTuple):
    """Eigenvalues sorted ascending and the unitary of column eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def fro(A: np.ndarray) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(A))


def as_complex_matrix(A) -> np.ndarray:
    """Coerce to a 2-d complex array with finite entries."""
    M = np.asarray(A, dtype=complex)
    if M.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got an array of rank {M.ndim}")
    if not np.all(np.isfinite(M.real)) or not np.all(np.isfinite(M.imag)):
        raise ValueError("matrix entries must be finite")
    return M


def require_square(M: np.ndarray) -> int:
    """Return the side length of a square matrix, raising NonSquare otherwise."""
    if M.shape[0] != M.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {M.shape}")
    return M.shape[0]


def hermiticity_defect(M: np.ndarray) -> float:
    """Frobenius norm of M - M*."""
    return fro(M - M.conj().T)


def hermitian_part(M: np.ndarray) -> np.ndarray:
    return (M + M.conj().T) / 2


def require_hermitian(M: np.ndarray, rtol: float = HERMITICITY_RTOL) -> None:
    if hermiticity_defect(M) > rtol * fro(M):
        raise NonHermitianInput(
            f"matrix is not Hermitian within relative tolerance {rtol:g}"
        )


def hermitian_eig(M) -> HermitianEigenResult:
    """Eigendecomposition of a Hermitian matrix.

    Eigenvalues come back real and ascending; column j of the returned
    unitary is the eigenvector for eigenvalue j, so
    ``V @ diag(w) @ V.conj().T`` reconstructs the (symmetrized) input.
    """
    M = as_complex_matrix(M)
    require_square(M)
    require_hermitian(M)
    w, V = np.linalg.eigh(hermitian_part(M))
    return HermitianEigenResult(w, V)


def expm(M) -> np.ndarray:
    """Matrix exponential e^M of a square matrix."""
    M = as_complex_matrix(M)
    require_square(M)
    return scipy.linalg.expm(M)


def vec(A) -> np.ndarray:
    """Column-stack a matrix into a vector."""
    return np.asarray(A, dtype=complex).reshape(-1, order="F")


def unvec(v, n: int) -> np.ndarray:
    """Invert :func:`vec` for an n x n matrix."""
    w = np.asarray(v, dtype=complex).reshape(-1)
    if w.size != n * n:
        raise DimensionMismatch(f"vector of length {w.size} is not n^2 for n={n}")
    return w.reshape((n, n), order="F")


def kron(A, B) -> np.ndarray:
    """Kronecker product."""
    return np.kron(as_complex_matrix(A), as_complex_matrix(B))


def min_eig_hermitian(M) -> float:
    """Smallest eigenvalue of a Hermitian matrix."""
    M = as_complex_matrix(M)
    require_square(M)
    require_hermitian(M)
    return float(np.linalg.eigvalsh(hermitian_part(M))[0])


def is_psd(M, tol: float = 1e-9) -> bool:
    """True iff the Hermitian matrix M is PSD within tol (relative to max(1, ||M||))."""
    M = as_complex_matrix(M)
    return min_eig_hermitian(M) >= -tol * max(1.0, fro(M))
