"""Dense complex linear algebra kernels.

All operators are plain ``numpy.ndarray`` values of dtype complex128; no
function mutates its inputs.  Decompositions delegate to LAPACK through
numpy; the matrix-polynomial evaluator is a straight Horner scheme so that
identity checks built on it do not inherit eigensolver error (an
eigendecomposition-based evaluator exists as a cross-check).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .defaults import EPS_HERM, EPS_PSD
from .errors import ConvergenceFailure, NotHermitian, NotPSD, NotSquare
from .polynomials import ComplexPolynomial


def as_matrix(values) -> np.ndarray:
    """Coerce to a 2-d complex128 array, rejecting non-finite entries.

    Scalars become 1x1 matrices; 1-d input is rejected as ambiguous.
    """
    m = np.asarray(values, dtype=np.complex128)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2:
        raise ValueError(f"expected a scalar or 2-d array, got shape {m.shape}")
    if m.size and not np.all(np.isfinite(m)):
        raise ValueError("matrix has NaN or Inf entries")
    return m


def dag(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return m.conj().T


def frob(m: np.ndarray) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(m))


def spectral_norm(m: np.ndarray) -> float:
    if min(m.shape) == 0:
        return 0.0
    return float(np.linalg.svd(m, compute_uv=False)[0])


def rng_from_seed(seed) -> np.random.Generator:
    """Generator backed by the Philox counter-based bit generator.

    Philox is counter-based and platform-independent, so any integer seed
    (or a ``numpy.random.SeedSequence``) reproduces the same stream
    everywhere.  An existing Generator passes through unchanged.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(seed))


@dataclass(frozen=True)
class HermitianEig:
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` are real and ascending; ``eigenvectors`` has orthonormal
    columns, so ``eigenvectors @ diag(eigenvalues) @ eigenvectors.conj().T``
    reconstructs the input.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.eigenvectors * self.eigenvalues) @ dag(self.eigenvectors)


@dataclass(frozen=True)
class SvdResult:
    """Full singular value decomposition ``m = left @ diag(singulars) @ right*``.

    ``left`` and ``right`` are square with orthonormal columns; ``singulars``
    is nonnegative and descending with length min(rows, cols).
    """

    left: np.ndarray
    singulars: np.ndarray
    right: np.ndarray

    def reconstruct(self) -> np.ndarray:
        rows = self.left.shape[0]
        cols = self.right.shape[0]
        sigma = np.zeros((rows, cols))
        k = len(self.singulars)
        sigma[:k, :k] = np.diag(self.singulars)
        return self.left @ sigma @ dag(self.right)


def require_hermitian(m: np.ndarray, *, eps_herm: float = EPS_HERM) -> np.ndarray:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise NotSquare(f"expected square matrix, got {m.shape}")
    if frob(m - dag(m)) > eps_herm * frob(m):
        raise NotHermitian(f"||M - M*|| = {frob(m - dag(m)):.3e} exceeds relative tolerance {eps_herm:.1e}")
    return m


def hermitian_eig(m, *, eps_herm: float = EPS_HERM) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix (eigenvalues ascending)."""
    m = require_hermitian(m, eps_herm=eps_herm)
    eigenvalues, eigenvectors = np.linalg.eigh(m)
    return HermitianEig(eigenvalues, eigenvectors)


def svd(m) -> SvdResult:
    """Full SVD with descending singular values."""
    m = as_matrix(m)
    try:
        left, singulars, right_h = np.linalg.svd(m, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"SVD did not converge for shape {m.shape}") from exc
    return SvdResult(left, singulars, dag(right_h))


def mat_poly_eval(p: ComplexPolynomial, m) -> np.ndarray:
    """Evaluate ``p`` at a square matrix by Horner's scheme."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise NotSquare(f"polynomial evaluation needs a square matrix, got {m.shape}")
    n = m.shape[0]
    result = np.zeros((n, n), dtype=np.complex128)
    eye = np.eye(n, dtype=np.complex128)
    for c in reversed(p.coeffs):
        result = result @ m + c * eye
    return result


def mat_poly_eval_eig(p: ComplexPolynomial, m, *, eps_herm: float = EPS_HERM) -> np.ndarray:
    """Evaluate ``p`` at a Hermitian matrix through its eigendecomposition.

    Cross-check path for :func:`mat_poly_eval`; requires a Hermitian input.
    """
    eig = hermitian_eig(m, eps_herm=eps_herm)
    values = np.array([p(complex(x)) for x in eig.eigenvalues])
    return (eig.eigenvectors * values) @ dag(eig.eigenvectors)


def psd_sqrt(m, *, eps_psd: float = EPS_PSD, eps_herm: float = EPS_HERM) -> np.ndarray:
    """Hermitian square root of a positive semidefinite matrix.

    Eigenvalues within ``eps_psd`` below zero are clamped to zero; anything
    lower raises :class:`NotPSD`.
    """
    eig = hermitian_eig(m, eps_herm=eps_herm)
    if eig.eigenvalues.size and float(eig.eigenvalues[0]) < -eps_psd:
        raise NotPSD(f"minimum eigenvalue {float(eig.eigenvalues[0]):.3e} < -{eps_psd:.1e}")
    roots = np.sqrt(np.clip(eig.eigenvalues, 0.0, None))
    return (eig.eigenvectors * roots) @ dag(eig.eigenvectors)


def haar_unitary(n: int, seed) -> np.ndarray:
    """Haar-distributed n x n unitary, deterministic per seed.

    QR of a complex Ginibre matrix with the R diagonal phase-normalized;
    seeding goes through :func:`rng_from_seed` (Philox), so equal seeds give
    bit-identical output on any platform.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    rng = rng_from_seed(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    phases = np.where(np.abs(d) == 0.0, 1.0 + 0.0j, d / np.abs(d))
    return q * phases
