"""Linear maps on n x n matrices (superoperators).

A map L is stored as its (n^2, n^2) matrix acting on column-stacked
vectorizations, so ``L(A) = unvec(mat @ vec(A))``. The coefficient form
expands L over the sandwich maps built from an orthonormal basis
(F_a)_{a=1..n^2},

    L(A) = sum_{a,b} c_{ab} F_a A F_b*,

and the coefficient matrix is Hermitian exactly when L preserves adjoints.
Coefficients are computed as the inner products

    c_{ab} = sum_k tr( (F_a F_k F_b*)* L(F_k) ),

which is the expansion over the orthonormal family Gamma_{ab}(A) = F_a A F_b*.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .basis import HSBasis, gell_mann_basis
from .errors import DimensionMismatch, InvalidDimension
from .linalg import as_complex_matrix, fro, unvec, vec

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class SuperOperator:
    """A linear map on n x n matrices, as an (n^2, n^2) matrix on vec(A)."""

    n: int
    mat: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise InvalidDimension(f"dimension must be >= 1, got {self.n}")
        M = as_complex_matrix(self.mat)
        if M.shape != (self.n**2, self.n**2):
            raise DimensionMismatch(
                f"superoperator for n={self.n} needs shape "
                f"{(self.n**2, self.n**2)}, got {M.shape}"
            )
        M = M.copy()
        M.setflags(write=False)
        object.__setattr__(self, "mat", M)

    def __call__(self, A) -> np.ndarray:
        return apply(self, A)


@dataclass(frozen=True)
class CoeffMatrix:
    """Coefficients c_{ab} of a superoperator in a chosen HS basis."""

    n: int
    c: np.ndarray

    def __post_init__(self):
        C = as_complex_matrix(self.c)
        if C.shape != (self.n**2, self.n**2):
            raise DimensionMismatch(
                f"coefficient matrix for n={self.n} must be "
                f"{(self.n**2, self.n**2)}, got {C.shape}"
            )
        C = C.copy()
        C.setflags(write=False)
        object.__setattr__(self, "c", C)


def identity_superop(n: int) -> SuperOperator:
    return SuperOperator(n, np.eye(n * n, dtype=complex))


def zero_superop(n: int) -> SuperOperator:
    return SuperOperator(n, np.zeros((n * n, n * n), dtype=complex))


def apply(L: SuperOperator, A) -> np.ndarray:
    """Evaluate L on a matrix."""
    A = as_complex_matrix(A)
    if A.shape != (L.n, L.n):
        raise DimensionMismatch(f"expected shape {(L.n, L.n)}, got {A.shape}")
    return unvec(L.mat @ vec(A), L.n)


def from_sandwich_terms(terms: Sequence[tuple[np.ndarray, np.ndarray]]) -> SuperOperator:
    """Build the map A -> sum_t X_t A Y_t.

    Uses vec(X A Y) = kron(Y.T, X) vec(A). The term list must be nonempty
    (use :func:`zero_superop` for the zero map).
    """
    if len(terms) == 0:
        raise DimensionMismatch("term list is empty; dimension is undetermined")
    n = None
    mat = None
    for X, Y in terms:
        X = as_complex_matrix(X)
        Y = as_complex_matrix(Y)
        if n is None:
            if X.shape[0] != X.shape[1] or X.shape != Y.shape:
                raise DimensionMismatch("sandwich factors must be square, same size")
            n = X.shape[0]
            mat = np.zeros((n * n, n * n), dtype=complex)
        if X.shape != (n, n) or Y.shape != (n, n):
            raise DimensionMismatch("all sandwich factors must be the same size")
        mat += np.kron(Y.T, X)
    return SuperOperator(n, mat)


def to_coeff_matrix(L: SuperOperator, basis: HSBasis | None = None) -> CoeffMatrix:
    """Expand L over the sandwich family of the basis.

    c_{ab} = sum_k tr((F_a F_k F_b*)* L(F_k)); the einsum below evaluates
    exactly this sum of traces over all (a, b) at once.
    """
    if basis is None:
        basis = gell_mann_basis(L.n)
    if basis.n != L.n:
        raise DimensionMismatch(f"basis n={basis.n} does not match map n={L.n}")
    F = basis.stacked()
    images = np.stack([apply(L, Fk) for Fk in basis.elements])
    c = np.einsum(
        "bxy,kzy,awz,kwx->ab", F, F.conj(), F.conj(), images, optimize=True
    )
    return CoeffMatrix(L.n, c)


def from_coeff_matrix(coeff: CoeffMatrix, basis: HSBasis | None = None) -> SuperOperator:
    """Inverse of :func:`to_coeff_matrix`: build sum_{ab} c_{ab} F_a . F_b*."""
    if basis is None:
        basis = gell_mann_basis(coeff.n)
    if basis.n != coeff.n:
        raise DimensionMismatch(
            f"basis n={basis.n} does not match coefficients n={coeff.n}"
        )
    n = coeff.n
    F = basis.stacked()
    # mat[i + n j, k + n l] = sum_{ab} c_{ab} F_a[i,k] conj(F_b[j,l])
    mat = np.einsum("ab,aik,bjl->jilk", coeff.c, F, F.conj(), optimize=True)
    return SuperOperator(n, mat.reshape(n * n, n * n))


def is_hermiticity_preserving(L: SuperOperator, tol: float = DEFAULT_TOL) -> bool:
    """True iff L(A*) = L(A)* within tol, i.e. the coefficient matrix is Hermitian."""
    c = to_coeff_matrix(L).c
    return fro(c - c.conj().T) <= tol * max(1.0, fro(c))


def is_trace_annihilating(L: SuperOperator, tol: float = DEFAULT_TOL) -> bool:
    """True iff tr(L(A)) = 0 for all A, checked on the default basis.

    By linearity it suffices that tr(L(F_k)) vanishes for every basis
    element; the tolerance is relative to max(1, ||L||).
    """
    bound = tol * max(1.0, fro(L.mat))
    for Fk in gell_mann_basis(L.n).elements:
        if abs(np.trace(apply(L, Fk))) > bound:
            return False
    return True


def ampliate(L: SuperOperator, k: int) -> SuperOperator:
    """The k-fold ampliation L (x) id_k, acting on (nk) x (nk) matrices.

    Writing an (nk) x (nk) matrix as a sum of Kronecker products A (x) E
    with A of size n and E a k x k matrix unit, the ampliation sends
    A (x) E to L(A) (x) E.
    """
    if k < 1:
        raise InvalidDimension(f"ampliation order must be >= 1, got {k}")
    n = L.n
    # mat[a + n b, a' + n b'] indexed as R4[b, a, b', a']
    R4 = L.mat.reshape(n, n, n, n)
    Ik = np.eye(k, dtype=complex)
    big = np.einsum("uqvs,jm,io->ujqivmso", R4, Ik, Ik, optimize=True)
    nk = n * k
    return SuperOperator(nk, big.reshape(nk * nk, nk * nk))
