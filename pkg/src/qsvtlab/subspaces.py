"""Invariant subspaces of the step operators and the induced spectral mapping.

A block unitary decides a family of subspaces on the domain side: the span
``L`` of Gram-image vectors, its complement (the two kernels), and for each
interior singular value a two-dimensional sector.  The unitary carries each
of these onto a matching family on the codomain side; step operators leave
the domain family invariant and act on every sector as a 2x2 rotation whose
spectrum is a trigonometric function of the singular value.  This module
constructs all bases, verifies the mappings and invariances, and checks the
resulting eigenvalue catalogue.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .blocks import BlockUnitary
from .defaults import DEGENERACY_CUTOFF, EPS_EIG, EPS_POLY, EPS_UNIT, SIGMA_HI, SIGMA_LO
from .engine import even_product, odd_product, step_operator
from .errors import DegenerateScaling
from .linalg import dag, frob, mat_poly_eval, svd
from .polynomials import PhaseSchedule, even_polynomials, odd_polynomials
from .reporting import CheckRecord, Report


@dataclass(frozen=True)
class SingularTriple:
    """Classified singular triple of the ``a`` block.

    ``left`` lives in codomain-subspace coordinates, ``right`` in
    domain-subspace coordinates.  Values at or below the low threshold are
    classified as exactly 0 (``right`` is then None); values at or above the
    high threshold as exactly 1.  Interior triples satisfy
    ``right = a* left / sigma``, hence ``<left, a right> = sigma``.
    """

    sigma: float
    left: np.ndarray
    right: np.ndarray | None

    @property
    def interior(self) -> bool:
        return 0.0 < self.sigma < 1.0

    @property
    def kind(self) -> str:
        if self.sigma == 0.0:
            return "zero"
        return "interior" if self.sigma < 1.0 else "one"


def singular_triples(
    bu: BlockUnitary,
    *,
    sigma_lo: float = SIGMA_LO,
    sigma_hi: float = SIGMA_HI,
) -> list[SingularTriple]:
    """One classified triple per codomain-subspace basis direction."""
    res = svd(bu.a)
    dk = bu.codomain.sub_dim
    sigmas = np.zeros(dk)
    sigmas[: len(res.singulars)] = res.singulars
    triples = []
    for i in range(dk):
        sigma = float(sigmas[i])
        left = res.left[:, i]
        if sigma <= sigma_lo:
            triples.append(SingularTriple(0.0, left, None))
        elif sigma >= sigma_hi:
            triples.append(SingularTriple(1.0, left, dag(bu.a) @ left))
        else:
            triples.append(SingularTriple(sigma, left, (dag(bu.a) @ left) / sigma))
    return triples


@dataclass(frozen=True)
class SubspaceBasis:
    """Orthonormal ambient basis of one named subspace.

    Labels: ``L``, ``L_perp``, ``L0``, ``L1``, ``L_sigma`` on the domain
    side and the ``L_tilde*`` counterparts on the codomain side.  Sector
    bases carry their singular value and triple index.
    """

    label: str
    columns: np.ndarray
    sigma: float | None = None
    index: int | None = None

    @property
    def dim(self) -> int:
        return self.columns.shape[1]


@dataclass(frozen=True)
class _Parts:
    """Split-coordinate ingredients shared by the subspace constructions."""

    kernel_a: np.ndarray        # ker a, domain-subspace coords
    kernel_b: np.ndarray        # ker b, domain-complement coords
    corange_a: np.ndarray       # orthonormal basis of range a*, domain-subspace coords
    corange_b: np.ndarray       # orthonormal basis of range b*, domain-complement coords
    zero_left: np.ndarray       # ker a* basis (sigma = 0 left vectors), codomain-subspace coords
    one_left: np.ndarray        # ker b* basis (sigma = 1 left vectors), codomain-subspace coords
    interior: tuple[SingularTriple, ...]
    interior_indices: tuple[int, ...]


def _subspace_parts(
    bu: BlockUnitary,
    triples: list[SingularTriple],
    *,
    sigma_lo: float = SIGMA_LO,
    sigma_hi: float = SIGMA_HI,
) -> _Parts:
    for triple in triples:
        if triple.kind == "interior" and not sigma_lo < triple.sigma < sigma_hi:
            raise DegenerateScaling(
                f"interior sigma {triple.sigma!r} outside ({sigma_lo}, {sigma_hi})"
            )

    res_a = svd(bu.a)
    dh = bu.domain.sub_dim
    sig_h = np.zeros(dh)
    sig_h[: len(res_a.singulars)] = res_a.singulars
    kernel_cols = [i for i in range(dh) if sig_h[i] <= sigma_lo]
    range_cols = [i for i in range(dh) if sig_h[i] > sigma_lo]
    kernel_a = res_a.right[:, kernel_cols]
    corange_a = res_a.right[:, range_cols]

    # b's singular values are sqrt(1 - sigma^2) over matched directions, so
    # the kernel threshold on the b side is derived from the high threshold.
    res_b = svd(bu.b)
    hp = bu.domain.perp_dim
    tau = np.zeros(hp)
    tau[: len(res_b.singulars)] = res_b.singulars
    tau_lo = math.sqrt(max(0.0, 1.0 - sigma_hi**2))
    kernel_cols_b = [i for i in range(hp) if tau[i] <= tau_lo]
    range_cols_b = [i for i in range(hp) if tau[i] > tau_lo]
    kernel_b = res_b.right[:, kernel_cols_b]
    corange_b = res_b.right[:, range_cols_b]

    n_one = sum(1 for t in triples if t.kind == "one")
    if len(range_cols_b) != bu.codomain.sub_dim - n_one:
        raise DegenerateScaling(
            "rank of the b block is inconsistent with the singular value classification; "
            "an instance sits too close to the classification thresholds"
        )

    interior = tuple(t for t in triples if t.interior)
    interior_indices = tuple(i for i, t in enumerate(triples) if t.interior)
    zero_left = np.stack([t.left for t in triples if t.kind == "zero"], axis=1) if any(
        t.kind == "zero" for t in triples
    ) else np.zeros((bu.codomain.sub_dim, 0), dtype=np.complex128)
    one_left = np.stack([t.left for t in triples if t.kind == "one"], axis=1) if any(
        t.kind == "one" for t in triples
    ) else np.zeros((bu.codomain.sub_dim, 0), dtype=np.complex128)
    return _Parts(kernel_a, kernel_b, corange_a, corange_b, zero_left, one_left, interior, interior_indices)


def _sector_domain_columns(bu: BlockUnitary, triple: SingularTriple) -> np.ndarray:
    """The two domain-side sector basis vectors (ambient columns)."""
    sigma = triple.sigma
    comp = math.sqrt(1.0 - sigma**2)
    zero_h = np.zeros((bu.domain.sub_dim, 1), dtype=np.complex128)
    zero_hp = np.zeros((bu.domain.perp_dim, 1), dtype=np.complex128)
    first = bu.embed_domain(triple.right.reshape(-1, 1), zero_hp)
    second = bu.embed_domain(zero_h, (dag(bu.b) @ triple.left).reshape(-1, 1) / comp)
    return np.concatenate([first, second], axis=1)


def _sector_codomain_columns(bu: BlockUnitary, triple: SingularTriple) -> np.ndarray:
    """The two codomain-side sector basis vectors (ambient columns)."""
    sigma = triple.sigma
    comp = math.sqrt(1.0 - sigma**2)
    zero_k = np.zeros((bu.codomain.sub_dim, 1), dtype=np.complex128)
    zero_kp = np.zeros((bu.codomain.perp_dim, 1), dtype=np.complex128)
    first = bu.embed_codomain(triple.left.reshape(-1, 1), zero_kp)
    cross = (bu.c @ (dag(bu.a) @ triple.left)).reshape(-1, 1) / (sigma * comp)
    second = bu.embed_codomain(zero_k, cross)
    return np.concatenate([first, second], axis=1)


def build_subspaces(
    bu: BlockUnitary,
    triples: list[SingularTriple],
    *,
    sigma_lo: float = SIGMA_LO,
    sigma_hi: float = SIGMA_HI,
) -> list[SubspaceBasis]:
    """All named subspace bases (domain family and codomain family).

    Domain side: ``L`` spans the Gram images (range a* in the subspace plus
    range b* in the complement), ``L_perp`` the two kernels, ``L0`` the
    b*-image of the left kernel of a, ``L1`` the a*-image of the left kernel
    of b, and one 2-dimensional sector per interior singular value.  The
    ``L_tilde*`` family is the codomain-side counterpart (the image of the
    domain family under the unitary).
    """
    parts = _subspace_parts(bu, triples, sigma_lo=sigma_lo, sigma_hi=sigma_hi)
    dh, hp = bu.domain.sub_dim, bu.domain.perp_dim
    dk, kp = bu.codomain.sub_dim, bu.codomain.perp_dim

    def dom(sub, perp):
        return bu.embed_domain(sub, perp)

    def cod(sub, perp):
        return bu.embed_codomain(sub, perp)

    z_h = lambda m: np.zeros((dh, m), dtype=np.complex128)
    z_hp = lambda m: np.zeros((hp, m), dtype=np.complex128)
    z_k = lambda m: np.zeros((dk, m), dtype=np.complex128)
    z_kp = lambda m: np.zeros((kp, m), dtype=np.complex128)

    bases: list[SubspaceBasis] = []
    span = np.concatenate(
        [dom(parts.corange_a, z_hp(parts.corange_a.shape[1])), dom(z_h(parts.corange_b.shape[1]), parts.corange_b)],
        axis=1,
    )
    bases.append(SubspaceBasis("L", span))
    perp = np.concatenate(
        [dom(parts.kernel_a, z_hp(parts.kernel_a.shape[1])), dom(z_h(parts.kernel_b.shape[1]), parts.kernel_b)],
        axis=1,
    )
    bases.append(SubspaceBasis("L_perp", perp))
    bases.append(SubspaceBasis("L0", dom(z_h(parts.zero_left.shape[1]), dag(bu.b) @ parts.zero_left)))
    bases.append(SubspaceBasis("L1", dom(dag(bu.a) @ parts.one_left, z_hp(parts.one_left.shape[1]))))
    for idx, triple in zip(parts.interior_indices, parts.interior):
        bases.append(SubspaceBasis("L_sigma", _sector_domain_columns(bu, triple), sigma=triple.sigma, index=idx))

    # Codomain family: the whole codomain subspace plus the cross images.
    cross = bu.c @ (dag(bu.a) @ np.stack([t.left for t in parts.interior], axis=1)) if parts.interior else np.zeros(
        (kp, 0), dtype=np.complex128
    )
    if parts.interior:
        scale = np.array([1.0 / (t.sigma * math.sqrt(1.0 - t.sigma**2)) for t in parts.interior])
        cross = cross * scale
    image_span = np.concatenate([cod(np.eye(dk, dtype=np.complex128), z_kp(dk)), cod(z_k(cross.shape[1]), cross)], axis=1)
    bases.append(SubspaceBasis("L_tilde", image_span))
    image_perp = np.concatenate(
        [cod(z_k(parts.kernel_a.shape[1]), bu.c @ parts.kernel_a), cod(z_k(parts.kernel_b.shape[1]), bu.d @ parts.kernel_b)],
        axis=1,
    )
    bases.append(SubspaceBasis("L_tilde_perp", image_perp))
    bases.append(SubspaceBasis("L_tilde0", cod(parts.zero_left, z_kp(parts.zero_left.shape[1]))))
    bases.append(SubspaceBasis("L_tilde1", cod(parts.one_left, z_kp(parts.one_left.shape[1]))))
    for idx, triple in zip(parts.interior_indices, parts.interior):
        bases.append(
            SubspaceBasis("L_tilde_sigma", _sector_codomain_columns(bu, triple), sigma=triple.sigma, index=idx)
        )
    return bases


def find_basis(bases: list[SubspaceBasis], label: str, index: int | None = None) -> SubspaceBasis:
    for basis in bases:
        if basis.label == label and (index is None or basis.index == index):
            return basis
    raise KeyError(f"no subspace basis labelled {label!r} (index {index!r})")


def find_all(bases: list[SubspaceBasis], label: str) -> list[SubspaceBasis]:
    return [basis for basis in bases if basis.label == label]


def _containment(columns: np.ndarray, target: np.ndarray) -> float:
    """Residual of span(columns) inside span(target): ||(I - P_target) columns||."""
    if columns.shape[1] == 0:
        return 0.0
    proj = target @ (dag(target) @ columns)
    return frob(columns - proj)


def u_mapping_check(
    bu: BlockUnitary,
    bases: list[SubspaceBasis],
    *,
    eps_unit: float = EPS_UNIT,
    eps_sector: float | None = None,
) -> Report:
    """The unitary maps each domain subspace into its codomain counterpart and back.

    Ten containment residuals (five forward under U, five backward under U*),
    plus the change-of-basis matrix on every sector, which must equal
    ``[[sigma, r], [r, -sigma]]`` with ``r = sqrt(1 - sigma^2)`` within
    ``eps_sector`` (defaults to ``eps_unit``).
    """
    if eps_sector is None:
        eps_sector = eps_unit
    u = bu.matrix
    records = []
    pairs = [("L", "L_tilde"), ("L_perp", "L_tilde_perp"), ("L0", "L_tilde0"), ("L1", "L_tilde1")]
    for dom_label, cod_label in pairs:
        dom_basis = find_basis(bases, dom_label).columns
        cod_basis = find_basis(bases, cod_label).columns
        records.append(CheckRecord(f"map:{dom_label}->{cod_label}", _containment(u @ dom_basis, cod_basis), eps_unit))
        records.append(
            CheckRecord(f"map:{cod_label}->{dom_label}", _containment(dag(u) @ cod_basis, dom_basis), eps_unit)
        )
    sectors = find_all(bases, "L_sigma")
    images = {basis.index: basis for basis in find_all(bases, "L_tilde_sigma")}
    for sector in sectors:
        image = images[sector.index]
        records.append(
            CheckRecord(
                f"map:L_sigma[{sector.index}]->image", _containment(u @ sector.columns, image.columns), eps_unit
            )
        )
        records.append(
            CheckRecord(
                f"map:image->L_sigma[{sector.index}]", _containment(dag(u) @ image.columns, sector.columns), eps_unit
            )
        )
        sigma = sector.sigma
        comp = math.sqrt(1.0 - sigma**2)
        expected = np.array([[sigma, comp], [comp, -sigma]], dtype=np.complex128)
        change = dag(image.columns) @ u @ sector.columns
        records.append(CheckRecord(f"sector-change-of-basis[{sector.index}]", frob(change - expected), eps_sector))
    return Report(tuple(records))


def invariance_check(
    bu: BlockUnitary,
    domain_angle: float,
    codomain_angle: float,
    bases: list[SubspaceBasis],
    *,
    eps_unit: float = EPS_UNIT,
) -> Report:
    """A single step leaves every domain-family subspace inside itself."""
    w = step_operator(bu, domain_angle, codomain_angle)
    records = []
    for label in ("L", "L_perp", "L0", "L1"):
        basis = find_basis(bases, label).columns
        records.append(CheckRecord(f"invariance:{label}", _containment(w @ basis, basis), eps_unit))
    for sector in find_all(bases, "L_sigma"):
        records.append(
            CheckRecord(f"invariance:L_sigma[{sector.index}]", _containment(w @ sector.columns, sector.columns), eps_unit)
        )
    return Report(tuple(records))


def _phase_products(schedule: PhaseSchedule) -> dict[str, complex]:
    thetas = schedule.domain_angles
    phis = schedule.codomain_angles
    return {
        "minus": cmath.exp(1j * float(np.sum(thetas - phis))),   # prod e^{i(theta-phi)}
        "plus": cmath.exp(1j * float(np.sum(thetas + phis))),    # prod e^{i(theta+phi)}
    }


def even_evolution_check(
    bu: BlockUnitary,
    schedule: PhaseSchedule,
    triples: list[SingularTriple],
    *,
    eps_poly: float = EPS_POLY,
    eps_phase: float = EPS_UNIT,
) -> Report:
    """Action of the even product on every structured family of vectors.

    Checks, at the operator level (no sampled test vectors):

    * the Gram-image map: columns ``(a* f, b* g)`` evolve through
      polynomials of the co-Gram discriminant ``a a*``;
    * kernel pairs are joint eigenvectors with the pure phase products;
    * the two kernel-sided lines (images of ker a* / ker b*) are eigenlines;
    * each interior sector evolves by the predicted 2x2 matrix.
    """
    pair = even_polynomials(schedule)
    prod = even_product(bu, schedule).matrix
    parts = _subspace_parts(bu, triples)
    phases = _phase_products(schedule)
    a, b = bu.a, bu.b
    dh, hp = bu.domain.sub_dim, bu.domain.perp_dim
    dk = bu.codomain.sub_dim
    records = []

    cogram = a @ dag(a)
    diag_co = mat_poly_eval(pair.diag, cogram)
    off_co = mat_poly_eval(pair.off_diag, cogram)
    diag_conj_co = mat_poly_eval(pair.diag.conj(), cogram)
    off_conj_co = mat_poly_eval(pair.off_diag.conj(), cogram)
    bb = b @ dag(b)

    z_h = np.zeros((dh, dk), dtype=np.complex128)
    z_hp = np.zeros((hp, dk), dtype=np.complex128)
    gram_images = np.concatenate(
        [bu.embed_domain(dag(a), z_hp), bu.embed_domain(z_h, dag(b))], axis=1
    )
    evolved_f = bu.embed_domain(dag(a) @ diag_co, dag(b) @ (1j * off_conj_co @ cogram))
    evolved_g = bu.embed_domain(dag(a) @ (1j * off_co @ bb), dag(b) @ diag_conj_co)
    predicted = np.concatenate([evolved_f, evolved_g], axis=1)
    records.append(CheckRecord("even-evolution:gram-images", frob(prod @ gram_images - predicted), eps_poly))

    kernel_a_amb = bu.embed_domain(parts.kernel_a, np.zeros((hp, parts.kernel_a.shape[1]), dtype=np.complex128))
    records.append(
        CheckRecord(
            "even-evolution:kernel-a-line",
            frob(prod @ kernel_a_amb - phases["minus"] * kernel_a_amb),
            eps_phase,
        )
    )
    kernel_b_amb = bu.embed_domain(np.zeros((dh, parts.kernel_b.shape[1]), dtype=np.complex128), parts.kernel_b)
    records.append(
        CheckRecord(
            "even-evolution:kernel-b-line",
            frob(prod @ kernel_b_amb - phases["plus"].conjugate() * kernel_b_amb),
            eps_phase,
        )
    )
    one_line = bu.embed_domain(dag(a) @ parts.one_left, np.zeros((hp, parts.one_left.shape[1]), dtype=np.complex128))
    records.append(
        CheckRecord(
            "even-evolution:one-line", frob(prod @ one_line - phases["plus"] * one_line), eps_phase
        )
    )
    zero_line = bu.embed_domain(
        np.zeros((dh, parts.zero_left.shape[1]), dtype=np.complex128), dag(b) @ parts.zero_left
    )
    records.append(
        CheckRecord(
            "even-evolution:zero-line",
            frob(prod @ zero_line - phases["minus"].conjugate() * zero_line),
            eps_phase,
        )
    )

    for idx, triple in zip(parts.interior_indices, parts.interior):
        sector = _sector_domain_columns(bu, triple)
        got = dag(sector) @ prod @ sector
        x = triple.sigma**2
        coupling = triple.sigma * math.sqrt(1.0 - triple.sigma**2)
        dv = pair.diag(x)
        ov = pair.off_diag(x)
        want = np.array([[dv, 1j * ov * coupling], [1j * ov.conjugate() * coupling, dv.conjugate()]])
        records.append(CheckRecord(f"even-evolution:sector[{idx}]", frob(got - want), eps_poly))
    return Report(tuple(records))


def odd_evolution_check(
    bu: BlockUnitary,
    schedule: PhaseSchedule,
    triples: list[SingularTriple],
    *,
    eps_poly: float = EPS_POLY,
) -> Report:
    """Action of the odd product on the same families (now landing codomain-side).

    The Gram-image map picks up the co-Gram polynomials of the odd pair; the
    kernel pair collapses into the codomain complement with pure phases; the
    two kernel-sided lines map onto their codomain counterparts with the odd
    polynomials' endpoint values; each sector evolves by the odd 2x2 matrix.
    """
    final = schedule.require_final()
    pair = odd_polynomials(schedule)
    prod = odd_product(bu, schedule).matrix
    parts = _subspace_parts(bu, triples)
    phases = _phase_products(schedule)
    a, b, c, d = bu.a, bu.b, bu.c, bu.d
    dh, hp = bu.domain.sub_dim, bu.domain.perp_dim
    dk, kp = bu.codomain.sub_dim, bu.codomain.perp_dim
    records = []

    cogram = a @ dag(a)
    diag_co = mat_poly_eval(pair.diag, cogram)
    off_co = mat_poly_eval(pair.off_diag, cogram)
    diag_conj_co = mat_poly_eval(pair.diag.conj(), cogram)
    off_conj_co = mat_poly_eval(pair.off_diag.conj(), cogram)
    bb = b @ dag(b)
    cross = c @ dag(a)

    z_h = np.zeros((dh, dk), dtype=np.complex128)
    z_hp = np.zeros((hp, dk), dtype=np.complex128)
    gram_images = np.concatenate([bu.embed_domain(dag(a), z_hp), bu.embed_domain(z_h, dag(b))], axis=1)
    evolved_f = bu.embed_codomain(cogram @ diag_co, cross @ off_conj_co)
    evolved_g = bu.embed_codomain(off_co @ bb, -cross @ diag_conj_co)
    predicted = np.concatenate([evolved_f, evolved_g], axis=1)
    records.append(CheckRecord("odd-evolution:gram-images", frob(prod @ gram_images - predicted), eps_poly))

    # Kernel pair: everything lands in the codomain complement with pure phases.
    all_phis = cmath.exp(-1j * (float(np.sum(schedule.codomain_angles)) + final))
    theta_prod = cmath.exp(1j * float(np.sum(schedule.domain_angles)))
    m_a = parts.kernel_a.shape[1]
    m_b = parts.kernel_b.shape[1]
    kernel_pair = np.concatenate(
        [
            bu.embed_domain(parts.kernel_a, np.zeros((hp, m_a), dtype=np.complex128)),
            bu.embed_domain(np.zeros((dh, m_b), dtype=np.complex128), parts.kernel_b),
        ],
        axis=1,
    )
    image = np.concatenate(
        [
            bu.embed_codomain(np.zeros((dk, m_a), dtype=np.complex128), all_phis * theta_prod * (c @ parts.kernel_a)),
            bu.embed_codomain(
                np.zeros((dk, m_b), dtype=np.complex128), all_phis * theta_prod.conjugate() * (d @ parts.kernel_b)
            ),
        ],
        axis=1,
    )
    records.append(CheckRecord("odd-evolution:kernel-pair", frob(prod @ kernel_pair - image), eps_poly))

    zero_line = bu.embed_domain(
        np.zeros((dh, parts.zero_left.shape[1]), dtype=np.complex128), dag(b) @ parts.zero_left
    )
    zero_image = bu.embed_codomain(
        pair.off_diag(0.0) * parts.zero_left, -pair.diag(0.0).conjugate() * (cross @ parts.zero_left)
    )
    records.append(CheckRecord("odd-evolution:zero-line", frob(prod @ zero_line - zero_image), eps_poly))

    one_line = bu.embed_domain(dag(a) @ parts.one_left, np.zeros((hp, parts.one_left.shape[1]), dtype=np.complex128))
    one_image = bu.embed_codomain(
        pair.diag(1.0) * parts.one_left, pair.off_diag(1.0).conjugate() * (cross @ parts.one_left)
    )
    records.append(CheckRecord("odd-evolution:one-line", frob(prod @ one_line - one_image), eps_poly))

    for idx, triple in zip(parts.interior_indices, parts.interior):
        sector = _sector_domain_columns(bu, triple)
        image_sector = _sector_codomain_columns(bu, triple)
        got = dag(image_sector) @ prod @ sector
        x = triple.sigma**2
        comp = math.sqrt(1.0 - x)
        dv = pair.diag(x)
        ov = pair.off_diag(x)
        want = np.array(
            [
                [dv * triple.sigma, ov * comp],
                [ov.conjugate() * comp, -dv.conjugate() * triple.sigma],
            ]
        )
        records.append(CheckRecord(f"odd-evolution:sector[{idx}]", frob(got - want), eps_poly))
    return Report(tuple(records))


def _pair_eigenvalues(computed: np.ndarray, predicted: list[complex]) -> float:
    """Greedy nearest matching of two equal-length eigenvalue multisets."""
    pool = list(computed)
    worst = 0.0
    for want in predicted:
        j = min(range(len(pool)), key=lambda t: abs(pool[t] - want))
        worst = max(worst, abs(pool.pop(j) - want))
    return worst


def spectral_map_check(
    bu: BlockUnitary,
    schedule: PhaseSchedule,
    *,
    eps_eig: float = EPS_EIG,
    eps_vector: float = 1e-8,
    degeneracy_tol: float = 1e-8,
    sigma_lo: float = SIGMA_LO,
    sigma_hi: float = SIGMA_HI,
) -> Report:
    """Eigenvalue catalogue of the even product on each invariant subspace.

    Compresses the product onto every family member and compares the
    spectrum with the predictions: pure phase products on the kernel-sided
    lines and kernels, and conjugate pairs ``e^{+-i lambda}`` with
    ``cos(lambda)`` the real part of the diagonal polynomial on every
    sector.  Degenerate singular values are handled on the direct sum of
    their sectors.  For single-step schedules the closed-form angle and the
    closed-form eigenvectors are checked as well (skipped with a note where
    the formulas degenerate).
    """
    triples = singular_triples(bu, sigma_lo=sigma_lo, sigma_hi=sigma_hi)
    parts = _subspace_parts(bu, triples, sigma_lo=sigma_lo, sigma_hi=sigma_hi)
    pair = even_polynomials(schedule)
    prod = even_product(bu, schedule).matrix
    phases = _phase_products(schedule)
    records = []

    def eig_records(name: str, columns: np.ndarray, predicted: list[complex]):
        if columns.shape[1] == 0:
            return
        compressed = dag(columns) @ prod @ columns
        eigs = np.linalg.eigvals(compressed)
        records.append(CheckRecord(f"spectrum:{name}", _pair_eigenvalues(eigs, predicted), eps_eig))
        records.append(CheckRecord(f"unit-modulus:{name}", float(np.max(np.abs(np.abs(eigs) - 1.0))), EPS_UNIT))

    dh, hp = bu.domain.sub_dim, bu.domain.perp_dim
    zero_line = bu.embed_domain(
        np.zeros((dh, parts.zero_left.shape[1]), dtype=np.complex128), dag(bu.b) @ parts.zero_left
    )
    eig_records("L0", zero_line, [phases["minus"].conjugate()] * zero_line.shape[1])
    one_line = bu.embed_domain(dag(bu.a) @ parts.one_left, np.zeros((hp, parts.one_left.shape[1]), dtype=np.complex128))
    eig_records("L1", one_line, [phases["plus"]] * one_line.shape[1])
    kernel_a = bu.embed_domain(parts.kernel_a, np.zeros((hp, parts.kernel_a.shape[1]), dtype=np.complex128))
    eig_records("kernel-a", kernel_a, [phases["minus"]] * kernel_a.shape[1])
    kernel_b = bu.embed_domain(np.zeros((dh, parts.kernel_b.shape[1]), dtype=np.complex128), parts.kernel_b)
    eig_records("kernel-b", kernel_b, [phases["plus"].conjugate()] * kernel_b.shape[1])

    # Group interior sectors by coincident sigma; compress on the direct sum.
    order = sorted(range(len(parts.interior)), key=lambda i: parts.interior[i].sigma)
    groups: list[list[int]] = []
    for i in order:
        if groups and abs(parts.interior[groups[-1][-1]].sigma - parts.interior[i].sigma) <= degeneracy_tol:
            groups[-1].append(i)
        else:
            groups.append([i])

    for group in groups:
        members = [parts.interior[i] for i in group]
        sigma = float(np.mean([t.sigma for t in members]))
        columns = np.concatenate([_sector_domain_columns(bu, t) for t in members], axis=1)
        lam = math.acos(min(1.0, max(-1.0, pair.diag(sigma**2).real)))
        predicted = [cmath.exp(1j * lam)] * len(group) + [cmath.exp(-1j * lam)] * len(group)
        label = f"L_sigma[{','.join(str(parts.interior_indices[i]) for i in group)}]"
        eig_records(label, columns, predicted)

        if schedule.n == 1 and len(group) == 1:
            records.extend(_single_step_sector_records(bu, schedule, members[0], lam, eps_eig, eps_vector))
    return Report(tuple(records))


def _single_step_sector_records(
    bu: BlockUnitary,
    schedule: PhaseSchedule,
    triple: SingularTriple,
    lam: float,
    eps_eig: float,
    eps_vector: float,
) -> list[CheckRecord]:
    """Closed-form angle and eigenvector checks for a one-step schedule."""
    theta, phi = schedule.pairs[0]
    sigma = triple.sigma
    signal_angle = math.acos(min(1.0, max(0.0, sigma)))
    closed = math.cos(theta) * math.cos(phi) - math.sin(theta) * math.sin(phi) * math.cos(2.0 * signal_angle)
    records = [
        CheckRecord(f"single-step-angle[{triple.sigma:.6f}]", abs(math.cos(lam) - closed), eps_eig)
    ]

    if abs(math.sin(lam)) <= DEGENERACY_CUTOFF:
        records.append(
            CheckRecord(
                f"single-step-vectors[{triple.sigma:.6f}]", 0.0, eps_vector, note="degenerate spectrum; skipped"
            )
        )
        return records

    sector = _sector_domain_columns(bu, triple)
    prod = even_product(bu, schedule).matrix
    compressed = dag(sector) @ prod @ sector
    eigs, vecs = np.linalg.eig(compressed)
    a_img = (dag(bu.a) @ triple.left).reshape(-1, 1)
    b_img = (dag(bu.b) @ triple.left).reshape(-1, 1)
    hp = bu.domain.perp_dim
    dh = bu.domain.sub_dim
    for branch, eig in ((+1, cmath.exp(1j * lam)), (-1, cmath.exp(-1j * lam))):
        denom_a = 1.0 - cmath.exp(1j * (phi - theta)) * eig
        denom_b = 1.0 - cmath.exp(1j * (theta + phi)) * eig
        name = f"single-step-vector[{triple.sigma:.6f}]{'+' if branch > 0 else '-'}"
        if min(abs(denom_a), abs(denom_b)) <= DEGENERACY_CUTOFF:
            records.append(CheckRecord(name, 0.0, eps_vector, note="eigenvector formula undefined; skipped"))
            continue
        predicted = bu.embed_domain(a_img / denom_a, np.zeros((hp, 1), dtype=np.complex128)) + bu.embed_domain(
            np.zeros((dh, 1), dtype=np.complex128), b_img / denom_b
        )
        predicted = predicted[:, 0]
        predicted /= np.linalg.norm(predicted)
        j = int(np.argmin(np.abs(eigs - eig)))
        numerical = sector @ vecs[:, j]
        numerical /= np.linalg.norm(numerical)
        overlap = abs(complex(np.vdot(predicted, numerical)))
        records.append(CheckRecord(name, 1.0 - overlap, eps_vector))
    return records
