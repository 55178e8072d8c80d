"""Orthonormal Hilbert-Schmidt bases of the n x n complex matrices.

The default basis is the generalized Gell-Mann family, ordered as all
symmetric off-diagonal elements (i < j, lexicographic), then all
antisymmetric ones, then the n - 1 diagonal traceless elements, and the
normalized identity 1/sqrt(n) last. The identity-last property is what the
canonical decompositions rely on; the HSBasis constructor enforces it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import sqrt
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidDimension, InvariantViolation
from .linalg import as_complex_matrix, fro

ORTHONORMALITY_ATOL = 1e-12


@dataclass(frozen=True)
class HSBasis:
    """Ordered orthonormal basis (F_1 .. F_{n^2}) with F_{n^2} = 1/sqrt(n)."""

    n: int
    elements: tuple[np.ndarray, ...]

    def __post_init__(self):
        n = self.n
        if n < 1:
            raise InvalidDimension(f"basis dimension must be >= 1, got {n}")
        els = tuple(np.asarray(F, dtype=complex) for F in self.elements)
        if len(els) != n * n:
            raise InvariantViolation(
                f"basis for n={n} needs {n * n} elements, got {len(els)}"
            )
        for F in els:
            if F.shape != (n, n):
                raise InvariantViolation(f"basis element has shape {F.shape}")
            F.setflags(write=False)
        flat = np.stack([F.reshape(-1) for F in els])
        gram = flat.conj() @ flat.T
        if np.max(np.abs(gram - np.eye(n * n))) > ORTHONORMALITY_ATOL:
            raise InvariantViolation("basis elements are not orthonormal")
        if not np.array_equal(els[-1], np.eye(n, dtype=complex) / sqrt(n)):
            raise InvariantViolation("last basis element must be 1/sqrt(n) exactly")
        object.__setattr__(self, "elements", els)

    def stacked(self) -> np.ndarray:
        """All elements as one (n^2, n, n) array."""
        return np.stack(self.elements)


def matrix_units(n: int) -> list[np.ndarray]:
    """The n^2 matrix units E_ij (single 1 at row i, column j), (i, j) lexicographic."""
    if n < 1:
        raise InvalidDimension(f"dimension must be >= 1, got {n}")
    units = []
    for i in range(n):
        for j in range(n):
            E = np.zeros((n, n), dtype=complex)
            E[i, j] = 1.0
            units.append(E)
    return units


@lru_cache(maxsize=None)
def gell_mann_basis(n: int) -> HSBasis:
    """Generalized Gell-Mann basis, identity-last.

    For n = 2 this is the Pauli family (sigma_x, sigma_y, sigma_z, 1)/sqrt(2).
    """
    if n < 1:
        raise InvalidDimension(f"dimension must be >= 1, got {n}")
    elements: list[np.ndarray] = []
    for i in range(n):
        for j in range(i + 1, n):
            F = np.zeros((n, n), dtype=complex)
            F[i, j] = F[j, i] = 1 / sqrt(2)
            elements.append(F)
    for i in range(n):
        for j in range(i + 1, n):
            F = np.zeros((n, n), dtype=complex)
            F[i, j] = -1j / sqrt(2)
            F[j, i] = 1j / sqrt(2)
            elements.append(F)
    for k in range(1, n):
        d = np.zeros(n, dtype=complex)
        d[:k] = 1.0
        d[k] = -k
        elements.append(np.diag(d) / sqrt(k * (k + 1)))
    elements.append(np.eye(n, dtype=complex) / sqrt(n))
    return HSBasis(n, tuple(elements))


def completeness_sum(basis: HSBasis | Sequence[np.ndarray], A) -> np.ndarray:
    """sum_a F_a A F_a* over an orthonormal basis; equals tr(A) * identity.

    Accepts an HSBasis or any sequence of orthonormal matrices, since the
    identity is basis independent.
    """
    elements = basis.elements if isinstance(basis, HSBasis) else tuple(basis)
    A = as_complex_matrix(A)
    n = elements[0].shape[0]
    if A.shape != (n, n):
        raise DimensionMismatch(f"matrix shape {A.shape} does not match basis n={n}")
    out = np.zeros((n, n), dtype=complex)
    for F in elements:
        out += F @ A @ F.conj().T
    return out
