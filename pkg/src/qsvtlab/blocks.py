"""Block structure of a unitary relative to a pair of subspace splits.

A unitary ``U`` together with a domain split (subspace and complement) and a
codomain split decomposes into four blocks ``[[a, b], [c, d]]``; unitarity
forces six Gram/cross relations among them.  This module extracts and
validates that structure, builds the standard unitary dilation of a
contraction, and verifies the coisometry / pulled-back-projector and rotated
projector identities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .defaults import EPS_PSD, EPS_UNIT
from .errors import DimensionMismatch, NotContraction, NotUnitary, RelationViolation
from .linalg import as_matrix, dag, frob, svd
from .reporting import CheckRecord, Report


@dataclass(frozen=True)
class SubspaceSplit:
    """Orthogonal split of C^N into a subspace and its complement.

    ``basis`` is an N x N matrix with orthonormal columns whose first
    ``sub_dim`` columns span the subspace; the rest span the complement.
    """

    basis: np.ndarray
    sub_dim: int

    def __post_init__(self):
        basis = as_matrix(self.basis)
        object.__setattr__(self, "basis", basis)
        n = basis.shape[0]
        if basis.shape != (n, n):
            raise DimensionMismatch(f"split basis must be square, got {basis.shape}")
        if not 0 <= self.sub_dim <= n:
            raise DimensionMismatch(f"sub_dim {self.sub_dim} outside [0, {n}]")
        if frob(dag(basis) @ basis - np.eye(n)) > EPS_UNIT:
            raise NotUnitary("split basis columns are not orthonormal")

    @staticmethod
    def coordinate(total_dim: int, sub_dim: int) -> "SubspaceSplit":
        """Split along the first ``sub_dim`` coordinate axes."""
        return SubspaceSplit(np.eye(total_dim, dtype=np.complex128), sub_dim)

    @property
    def total_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def perp_dim(self) -> int:
        return self.total_dim - self.sub_dim

    @property
    def sub_basis(self) -> np.ndarray:
        return self.basis[:, : self.sub_dim]

    @property
    def perp_basis(self) -> np.ndarray:
        return self.basis[:, self.sub_dim :]

    @property
    def projector(self) -> np.ndarray:
        """Orthogonal projector onto the subspace (ambient coordinates)."""
        q = self.sub_basis
        return q @ dag(q)

    def rotated_basis(self, sub_mix: np.ndarray, perp_mix: np.ndarray) -> "SubspaceSplit":
        """Same split with the bases of both components mixed by unitaries."""
        mixed = np.concatenate([self.sub_basis @ as_matrix(sub_mix), self.perp_basis @ as_matrix(perp_mix)], axis=1)
        return SubspaceSplit(mixed, self.sub_dim)


@dataclass(frozen=True)
class BlockUnitary:
    """A unitary with chosen domain/codomain splits and its four blocks.

    In split coordinates the operator reads ``[[a, b], [c, d]]`` where ``a``
    maps the domain subspace into the codomain subspace.  Constructed via
    :func:`decompose` or :func:`dilate`, which validate unitarity and the
    block relations.
    """

    matrix: np.ndarray
    domain: SubspaceSplit
    codomain: SubspaceSplit
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def dims(self) -> tuple[int, int, int]:
        """(ambient dim, domain sub_dim, codomain sub_dim)."""
        return (self.dim, self.domain.sub_dim, self.codomain.sub_dim)

    @property
    def split_matrix(self) -> np.ndarray:
        """The unitary expressed in split coordinates (codomain* U domain)."""
        return dag(self.codomain.basis) @ self.matrix @ self.domain.basis

    def to_domain(self, ambient: np.ndarray) -> np.ndarray:
        """Compress an ambient operator on the domain side: Qd* M Qd."""
        return dag(self.domain.basis) @ ambient @ self.domain.basis

    def embed_domain(self, sub_part: np.ndarray, perp_part: np.ndarray) -> np.ndarray:
        """Ambient columns from components in domain-split coordinates."""
        return self.domain.sub_basis @ sub_part + self.domain.perp_basis @ perp_part

    def embed_codomain(self, sub_part: np.ndarray, perp_part: np.ndarray) -> np.ndarray:
        return self.codomain.sub_basis @ sub_part + self.codomain.perp_basis @ perp_part


def unitarity_relations(bu: BlockUnitary, *, eps_unit: float = EPS_UNIT) -> Report:
    """Residuals of the six block relations a unitary forces."""
    a, b, c, d = bu.a, bu.b, bu.c, bu.d
    eye_h = np.eye(a.shape[1])
    eye_hp = np.eye(b.shape[1])
    eye_k = np.eye(a.shape[0])
    eye_kp = np.eye(c.shape[0])
    records = (
        CheckRecord("a*a+c*c=I", frob(dag(a) @ a + dag(c) @ c - eye_h), eps_unit),
        CheckRecord("b*b+d*d=I", frob(dag(b) @ b + dag(d) @ d - eye_hp), eps_unit),
        CheckRecord("aa*+bb*=I", frob(a @ dag(a) + b @ dag(b) - eye_k), eps_unit),
        CheckRecord("cc*+dd*=I", frob(c @ dag(c) + d @ dag(d) - eye_kp), eps_unit),
        CheckRecord("a*b+c*d=0", frob(dag(a) @ b + dag(c) @ d), eps_unit),
        CheckRecord("ac*+bd*=0", frob(a @ dag(c) + b @ dag(d)), eps_unit),
    )
    return Report(records)


def decompose(
    u,
    domain: SubspaceSplit,
    codomain: SubspaceSplit,
    *,
    eps_unit: float = EPS_UNIT,
) -> BlockUnitary:
    """Extract the four blocks of ``u`` relative to the two splits.

    Validates unitarity of ``u``, dimensional consistency, and all six block
    relations; raises loudly (naming the failing relation) otherwise.
    """
    u = as_matrix(u)
    n = u.shape[0]
    if u.shape[0] != u.shape[1]:
        raise DimensionMismatch(f"unitary must be square, got {u.shape}")
    if domain.total_dim != n or codomain.total_dim != n:
        raise DimensionMismatch(
            f"splits of dims {domain.total_dim}/{codomain.total_dim} do not match operator dim {n}"
        )
    if frob(dag(u) @ u - np.eye(n)) > eps_unit:
        raise NotUnitary(f"||U*U - I|| = {frob(dag(u) @ u - np.eye(n)):.3e}")

    split = dag(codomain.basis) @ u @ domain.basis
    dk = codomain.sub_dim
    dh = domain.sub_dim
    bu = BlockUnitary(
        matrix=u,
        domain=domain,
        codomain=codomain,
        a=split[:dk, :dh],
        b=split[:dk, dh:],
        c=split[dk:, :dh],
        d=split[dk:, dh:],
    )
    unitarity_relations(bu, eps_unit=eps_unit).require(RelationViolation)
    return bu


def dilate(a, normalize: bool = False, *, eps_psd: float = EPS_PSD) -> BlockUnitary:
    """Standard unitary dilation of a contraction.

    Embeds ``a`` as the top-left block of the unitary::

        [[ a,              sqrt(I - a a*) ],
         [ sqrt(I - a* a), -a*            ]]

    with coordinate splits.  Both square roots are built from one SVD of
    ``a`` so they share singular values exactly.  With ``normalize`` set the
    input is first scaled by 1/max(1, spectral norm); otherwise a spectral
    norm beyond ``1 + eps_psd`` raises :class:`NotContraction`.
    """
    a = as_matrix(a)
    rows, cols = a.shape
    res = svd(a)
    top = float(res.singulars[0]) if res.singulars.size else 0.0
    if normalize and top > 1.0:
        a = a / top
        res = svd(a)
    elif top > 1.0 + eps_psd:
        raise NotContraction(f"spectral norm {top:.6f} > 1; pass normalize=True to rescale")

    s = np.clip(res.singulars, 0.0, 1.0)
    comp = np.sqrt(1.0 - s**2)
    left_diag = np.ones(rows)
    left_diag[: len(s)] = comp
    right_diag = np.ones(cols)
    right_diag[: len(s)] = comp
    sqrt_codomain = (res.left * left_diag) @ dag(res.left)  # sqrt(I - a a*)
    sqrt_domain = (res.right * right_diag) @ dag(res.right)  # sqrt(I - a* a)

    u = np.block([[a, sqrt_codomain], [sqrt_domain, -dag(a)]])
    total = rows + cols
    return decompose(
        u,
        SubspaceSplit.coordinate(total, cols),
        SubspaceSplit.coordinate(total, rows),
    )


def pullback_projector(bu: BlockUnitary) -> np.ndarray:
    """The codomain-subspace projector pulled back through the unitary.

    Ambient form ``U* P_sub U``; in domain-split coordinates it has the
    Gram block structure ``[[a*a, a*b], [b*a, b*b]]``.
    """
    q = bu.codomain.projector
    return dag(bu.matrix) @ q @ bu.matrix


def pullback_projector_blocks(bu: BlockUnitary) -> np.ndarray:
    """The same projector assembled from the Gram blocks, in split coordinates."""
    a, b = bu.a, bu.b
    return np.block([[dag(a) @ a, dag(a) @ b], [dag(b) @ a, dag(b) @ b]])


def coisometry_check(bu: BlockUnitary, *, eps_unit: float = EPS_UNIT) -> Report:
    """The top block row ``[a, b]`` is a coisometry whose Gram matrix is the projector.

    Verifies ``T T* = I`` on the codomain subspace and ``T* T = P`` where P
    is the pulled-back projector.
    """
    top_row = np.concatenate([bu.a, bu.b], axis=1)
    eye_k = np.eye(bu.codomain.sub_dim)
    proj_split = bu.to_domain(pullback_projector(bu))
    return Report.of(
        CheckRecord("coisometry-identity", frob(top_row @ dag(top_row) - eye_k), eps_unit),
        CheckRecord("gram-equals-projector", frob(dag(top_row) @ top_row - proj_split), eps_unit),
    )


def rotated_projector_check(bu: BlockUnitary, angle: float, *, eps_unit: float = EPS_UNIT) -> Report:
    """Conjugating a codomain rotation by the unitary acts through the projector.

    Residual of ``U* R(angle) U = e^{i angle} P + e^{-i angle} (I - P)`` with
    R the phase rotation on the codomain split and P the pulled-back
    projector.
    """
    from .engine import rotation  # local import: engine depends on blocks

    n = bu.dim
    lhs = dag(bu.matrix) @ rotation(bu.codomain, angle) @ bu.matrix
    p = pullback_projector(bu)
    rhs = np.exp(1j * angle) * p + np.exp(-1j * angle) * (np.eye(n) - p)
    return Report.of(CheckRecord("rotated-projector", frob(lhs - rhs), eps_unit))
