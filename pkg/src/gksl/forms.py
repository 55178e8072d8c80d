"""Canonical forms of generators and their classification.

Two constructive decompositions are provided for a map L on n x n matrices:

* the K-form, valid whenever L preserves adjoints,

      L(A) = A K* + K A + sum_p rate_p G_p A G_p*,

  with traceless, mutually orthonormal jump operators G_p and
  tr(K) = trace_defect / 2;

* the commutator (GKSL) form, valid when L additionally annihilates traces,

      L(A) = -i[H, A] + sum_p rate_p (G_p A G_p* - (1/2){G_p* G_p, A}),

  with H self-adjoint and traceless.

Both are obtained by expanding L in an identity-last orthonormal basis and
eigendecomposing the traceless-sector coefficient block; L generates a
quantum dynamical semigroup exactly when it admits the commutator form with
all rates nonnegative, which is what :func:`classify` reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from typing import NamedTuple, Sequence

import numpy as np

from .basis import HSBasis, gell_mann_basis
from .errors import (
    DimensionMismatch,
    InternalConsistency,
    InvalidDimension,
    InvariantViolation,
    NotHermiticityPreserving,
    NotTraceAnnihilating,
    UnsatisfiableClass,
)
from .linalg import as_complex_matrix, fro, hermitian_part
from .superop import (
    DEFAULT_TOL,
    SuperOperator,
    from_sandwich_terms,
    is_trace_annihilating,
    to_coeff_matrix,
    zero_superop,
)

QDS_GEN = "QDS_GEN"
STAR_TRACE_SEMIGROUP_GEN = "STAR_TRACE_SEMIGROUP_GEN"
STAR_SEMIGROUP_GEN = "STAR_SEMIGROUP_GEN"
GENERAL = "GENERAL"
SAMPLE_CLASSES = (QDS_GEN, STAR_TRACE_SEMIGROUP_GEN, STAR_SEMIGROUP_GEN)

# Spectral noise below this (relative to max(1, ||c||)) is not a jump.
RATE_DROP_RTOL = 1e-12


class Jump(NamedTuple):
    """A rate paired with its jump operator."""

    rate: float
    G: np.ndarray


def _coerce_jumps(jumps, n: int) -> tuple[Jump, ...]:
    out = []
    for rate, G in jumps:
        G = as_complex_matrix(G)
        if G.shape != (n, n):
            raise DimensionMismatch(f"jump operator has shape {G.shape}, expected {(n, n)}")
        G = G.copy()
        G.setflags(write=False)
        out.append(Jump(float(rate), G))
    return tuple(out)


def _check_jump_family(jumps: Sequence[Jump]) -> None:
    for _, G in jumps:
        if abs(np.trace(G)) > 1e-10:
            raise InvariantViolation("jump operators must be traceless")
    for p, (_, Gp) in enumerate(jumps):
        for q, (_, Gq) in enumerate(jumps):
            want = 1.0 if p == q else 0.0
            if abs(np.vdot(Gp, Gq) - want) > 1e-9:
                raise InvariantViolation("jump operators must be orthonormal")


@dataclass(frozen=True)
class KForm:
    """A K* / K sandwich form plus jump terms; tr(K) equals trace_defect / 2."""

    K: np.ndarray
    jumps: tuple[Jump, ...]
    trace_defect: float

    def __post_init__(self):
        K = as_complex_matrix(self.K)
        if K.shape[0] != K.shape[1]:
            raise DimensionMismatch(f"K must be square, got shape {K.shape}")
        K = K.copy()
        K.setflags(write=False)
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "jumps", _coerce_jumps(self.jumps, K.shape[0]))
        object.__setattr__(self, "trace_defect", float(self.trace_defect))

    @property
    def n(self) -> int:
        return self.K.shape[0]

    def rates(self) -> list[float]:
        return [j.rate for j in self.jumps]

    def validate(self) -> None:
        if len(self.jumps) > self.n**2 - 1:
            raise InvariantViolation("more jumps than the traceless sector admits")
        if abs(np.trace(self.K) - self.trace_defect / 2) > 1e-9:
            raise InvariantViolation("tr(K) must equal trace_defect / 2")
        _check_jump_family(self.jumps)


@dataclass(frozen=True)
class GKSLForm:
    """Commutator form: Hamiltonian plus dissipative jump terms."""

    H: np.ndarray
    jumps: tuple[Jump, ...]

    def __post_init__(self):
        H = as_complex_matrix(self.H)
        if H.shape[0] != H.shape[1]:
            raise DimensionMismatch(f"H must be square, got shape {H.shape}")
        H = H.copy()
        H.setflags(write=False)
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "jumps", _coerce_jumps(self.jumps, H.shape[0]))

    @property
    def n(self) -> int:
        return self.H.shape[0]

    def rates(self) -> list[float]:
        return [j.rate for j in self.jumps]

    def validate(self) -> None:
        if len(self.jumps) > self.n**2 - 1:
            raise InvariantViolation("more jumps than the traceless sector admits")
        if fro(self.H - self.H.conj().T) > 1e-10:
            raise InvariantViolation("H must be self-adjoint")
        if abs(np.trace(self.H)) > 1e-10:
            raise InvariantViolation("H must be traceless")
        _check_jump_family(self.jumps)


@dataclass(frozen=True)
class GeneratorClass:
    """Classification verdict together with the three defining booleans."""

    hermiticity_preserving: bool
    trace_annihilating: bool
    rates_nonnegative: bool
    verdict: str


def _verdict(hp: bool, ta: bool, nonneg: bool) -> str:
    if hp and ta and nonneg:
        return QDS_GEN
    if hp and ta:
        return STAR_TRACE_SEMIGROUP_GEN
    if hp:
        return STAR_SEMIGROUP_GEN
    return GENERAL


def _phase_fixed(G: np.ndarray) -> np.ndarray:
    """Scale by a unit phase so the first nonzero entry (row-major) is real positive."""
    flat = G.reshape(-1)
    nz = np.flatnonzero(np.abs(flat) > 1e-12)
    if nz.size == 0:
        return G
    z = flat[nz[0]]
    return G * (abs(z) / z)


def _jump_sort_key(jump: Jump):
    # Descending rate; ties broken by the serialized phase-fixed operator.
    flat = jump.G.reshape(-1)
    return (-jump.rate, tuple((e.real, e.imag) for e in flat))


def decompose_k_form(
    L: SuperOperator, basis: HSBasis | None = None, tol: float = DEFAULT_TOL
) -> KForm:
    """Decompose an adjoint-preserving map into its K-form.

    The coefficient matrix c of L in the identity-last basis gives
    K = (1/sqrt(n)) sum_a c_{a,last} F_a + (c_{last,last} / 2n) 1; the
    leading (n^2-1) block of c is Hermitian-eigendecomposed and each
    eigenpair (rate, u) yields a jump operator from the coordinates of u.
    Rates are reported in descending order; near-zero rates are dropped.
    """
    if basis is None:
        basis = gell_mann_basis(L.n)
    if basis.n != L.n:
        raise DimensionMismatch(f"basis n={basis.n} does not match map n={L.n}")
    n = L.n
    m = n * n - 1
    c = to_coeff_matrix(L, basis).c
    if fro(c - c.conj().T) > tol * max(1.0, fro(c)):
        raise NotHermiticityPreserving(
            "coefficient matrix is not Hermitian; the K-form requires L(A*) = L(A)*"
        )
    F = basis.stacked()
    trace_defect = float(c[-1, -1].real)
    K = np.einsum("a,aij->ij", c[:m, -1], F[:m]) / sqrt(n)
    K = K + (trace_defect / (2 * n)) * np.eye(n, dtype=complex)

    jumps: list[Jump] = []
    if m > 0:
        w, V = np.linalg.eigh(hermitian_part(c[:m, :m]))
        drop = RATE_DROP_RTOL * max(1.0, fro(c))
        for p in range(m):
            if abs(w[p]) < drop:
                continue
            G = np.einsum("a,aij->ij", V[:, p], F[:m])
            jumps.append(Jump(float(w[p]), _phase_fixed(G)))
        jumps.sort(key=_jump_sort_key)
    return KForm(K=K, jumps=tuple(jumps), trace_defect=trace_defect)


def reconstruct_k(form: KForm) -> SuperOperator:
    """Build A -> A K* + K A + sum_p rate_p G_p A G_p* from a K-form."""
    form.validate()
    n = form.n
    eye = np.eye(n, dtype=complex)
    terms = [(form.K, eye), (eye, form.K.conj().T)]
    for rate, G in form.jumps:
        terms.append((rate * G, G.conj().T))
    return from_sandwich_terms(terms)


def decompose_gksl(
    L: SuperOperator, basis: HSBasis | None = None, tol: float = DEFAULT_TOL
) -> GKSLForm:
    """Decompose an adjoint-preserving, trace-annihilating map into GKSL form.

    Runs the K-form decomposition, certifies that the Hermitian part of K
    equals -(1/2) sum_p rate_p G_p* G_p (a consequence of trace
    annihilation, re-checked rather than assumed), and returns
    H = -Im(K) with the jumps unchanged.
    """
    kform = decompose_k_form(L, basis, tol)
    if not is_trace_annihilating(L, tol):
        raise NotTraceAnnihilating(
            "tr(L(A)) != 0; the commutator form requires trace annihilation"
        )
    K = kform.K
    n = kform.n
    acc = np.zeros((n, n), dtype=complex)
    for rate, G in kform.jumps:
        acc += rate * (G.conj().T @ G)
    if fro(hermitian_part(K) + acc / 2) > 1e-9 * max(1.0, fro(K)):
        raise InternalConsistency(
            "Re(K) does not match -(1/2) sum rate G*G; decomposition is inconsistent"
        )
    H = -(K - K.conj().T) / 2j
    return GKSLForm(H=H, jumps=kform.jumps)


def reconstruct_gksl(form: GKSLForm) -> SuperOperator:
    """Build -i[H, A] + sum_p rate_p (G_p A G_p* - (1/2){G_p* G_p, A})."""
    form.validate()
    n = form.n
    eye = np.eye(n, dtype=complex)
    terms = [(-1j * form.H, eye), (eye, 1j * form.H)]
    for rate, G in form.jumps:
        GdG = G.conj().T @ G
        terms.append((rate * G, G.conj().T))
        terms.append((-0.5 * rate * GdG, eye))
        terms.append((eye, -0.5 * rate * GdG))
    L = from_sandwich_terms(terms)
    # Both hold by construction; a failure here is a bug.
    assert is_trace_annihilating(L, 1e-10)
    c = to_coeff_matrix(L).c
    assert fro(c - c.conj().T) <= 1e-10 * max(1.0, fro(c))
    return L


def classify(L: SuperOperator, tol: float = DEFAULT_TOL) -> GeneratorClass:
    """Classify a map by adjoint preservation, trace annihilation and rate signs.

    ``rates_nonnegative`` is judged against -tol * max(1, ||c||) and is set
    to False outright when the map is not adjoint-preserving (the rate
    spectrum is only defined in that case).
    """
    c = to_coeff_matrix(L).c
    scale = max(1.0, fro(c))
    hp = fro(c - c.conj().T) <= tol * scale
    ta = is_trace_annihilating(L, tol)
    if hp:
        m = L.n**2 - 1
        if m > 0:
            w = np.linalg.eigvalsh(hermitian_part(c[:m, :m]))
            nonneg = bool(np.all(w >= -tol * scale))
        else:
            nonneg = True
    else:
        nonneg = False
    return GeneratorClass(hp, ta, nonneg, _verdict(hp, ta, nonneg))


def pad_jumps(jumps: Sequence[Jump], basis: HSBasis) -> tuple[Jump, ...]:
    """Extend a jump family with zero-rate jumps to a full orthonormal set.

    The complement is built by orthonormalizing the traceless basis
    elements against the existing jumps (modified Gram-Schmidt, one
    re-orthogonalization pass), so the result is deterministic.
    """
    n = basis.n
    need = n * n - 1 - len(jumps)
    if need < 0:
        raise InvariantViolation("more jumps than the traceless sector admits")
    if need == 0:
        return tuple(jumps)
    anchors = [basis.elements[-1]] + [G for _, G in jumps]
    added: list[np.ndarray] = []
    for cand in basis.elements[:-1]:
        if len(added) == need:
            break
        C = cand.copy()
        for _ in range(2):
            for B in anchors + added:
                C = C - np.vdot(B, C) * B
        norm = fro(C)
        if norm > 1e-6:
            added.append(C / norm)
    if len(added) < need:
        raise InternalConsistency("failed to complete the jump family")
    return tuple(jumps) + tuple(Jump(0.0, G) for G in added)


def _random_hermitian_traceless(n: int, rng: np.random.Generator) -> np.ndarray:
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    H = hermitian_part(Z)
    return H - (np.trace(H) / n) * np.eye(n, dtype=complex)


def _random_orthonormal_traceless(n: int, rng: np.random.Generator) -> list[np.ndarray]:
    """n^2 - 1 Gaussian matrices orthonormalized against the identity and each other."""
    anchors = [np.eye(n, dtype=complex) / sqrt(n)]
    out: list[np.ndarray] = []
    while len(out) < n * n - 1:
        C = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        for _ in range(2):
            for B in anchors + out:
                C = C - np.vdot(B, C) * B
        norm = fro(C)
        if norm < 1e-8:
            continue
        out.append(C / norm)
    return out


def sample_generator(n: int, seed: int, verdict: str) -> SuperOperator:
    """Draw a deterministic random generator of the requested class.

    The draw is a function of (n, seed, verdict) only; calling twice with
    the same arguments returns bit-identical matrices.
    """
    if verdict not in SAMPLE_CLASSES:
        raise ValueError(f"unknown generator class {verdict!r}")
    if n < 1:
        raise InvalidDimension(f"dimension must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    m = n * n - 1

    if n == 1:
        if verdict == QDS_GEN:
            # The only traceless Hamiltonian is 0 and there are no jumps.
            return zero_superop(1)
        if verdict == STAR_TRACE_SEMIGROUP_GEN:
            raise UnsatisfiableClass(
                "n=1 admits no jumps, so no negative rate can be realized"
            )
        shift = 0.3 + abs(rng.standard_normal())
        K = np.array([[shift]], dtype=complex)
        eye1 = np.eye(1, dtype=complex)
        return from_sandwich_terms([(K, eye1), (eye1, K.conj().T)])

    H = _random_hermitian_traceless(n, rng)
    Gs = _random_orthonormal_traceless(n, rng)

    if verdict == QDS_GEN:
        rates = np.abs(rng.standard_normal(m))
        form = GKSLForm(H, tuple(Jump(r, G) for r, G in zip(rates, Gs)))
        return reconstruct_gksl(form)

    if verdict == STAR_TRACE_SEMIGROUP_GEN:
        rates = np.abs(rng.standard_normal(m)) + 0.1
        signs = rng.choice(np.array([-1.0, 1.0]), size=m)
        signs[rng.integers(m)] = -1.0
        form = GKSLForm(H, tuple(Jump(r, G) for r, G in zip(rates * signs, Gs)))
        return reconstruct_gksl(form)

    # STAR_SEMIGROUP_GEN: a K with nonzero real trace breaks trace annihilation.
    rates = np.abs(rng.standard_normal(m)) + 0.1
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Z -= (np.trace(Z) / n) * np.eye(n, dtype=complex)
    shift = 0.3 + abs(rng.standard_normal())
    K = -1j * H + Z + shift * np.eye(n, dtype=complex)
    form = KForm(K, tuple(Jump(r, G) for r, G in zip(rates, Gs)), 2 * shift * n)
    return reconstruct_k(form)
