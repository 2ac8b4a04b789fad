"""Products of rotation steps on a block unitary and their block-form checks.

One step is ``R_dom(theta) U* R_cod(phi) U``: conjugate a codomain-subspace
phase rotation by the unitary, then rotate the domain subspace.  Even
products iterate steps; an odd product applies one more ``R_cod U`` on the
left.  The four blocks of either product are polynomials of the Gram
discriminants times the original blocks, and the polynomial content is
exactly what :mod:`qsvtlab.polynomials` computes; :func:`block_form_check`
compares the two routes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable

import numpy as np

from .blocks import BlockUnitary, SubspaceSplit
from .defaults import EPS_POLY
from .errors import PhaseConventionViolation
from .linalg import dag, frob, mat_poly_eval
from .polynomials import PhaseSchedule, even_polynomials, odd_polynomials
from .reporting import CheckRecord, Report

if TYPE_CHECKING:  # pragma: no cover - typing only
    from .subspaces import SingularTriple


def rotation(split: SubspaceSplit, angle: float) -> np.ndarray:
    """Phase rotation ``e^{i angle}`` on the subspace, ``e^{-i angle}`` on its complement.

    Built from the split's projector, so it is correct in any basis.
    """
    q = split.projector
    n = split.total_dim
    return np.exp(1j * angle) * q + np.exp(-1j * angle) * (np.eye(n) - q)


def step_operator(bu: BlockUnitary, domain_angle: float, codomain_angle: float) -> np.ndarray:
    """Single iteration step ``R_dom(theta) U* R_cod(phi) U`` (ambient, maps domain side to itself)."""
    u = bu.matrix
    return rotation(bu.domain, domain_angle) @ dag(u) @ rotation(bu.codomain, codomain_angle) @ u


@dataclass(frozen=True)
class QsvtProduct:
    """An even or odd product of steps over one block unitary.

    ``matrix`` is the full ambient operator.  Even products map the domain
    side to itself; odd products map it to the codomain side.
    """

    matrix: np.ndarray
    parity: str  # "even" | "odd"
    schedule: PhaseSchedule
    source: BlockUnitary


def even_product(bu: BlockUnitary, schedule: PhaseSchedule) -> QsvtProduct:
    """Product of the schedule's steps, latest factor leftmost; empty schedule gives I."""
    out = np.eye(bu.dim, dtype=np.complex128)
    for domain_angle, codomain_angle in schedule.pairs:
        out = step_operator(bu, domain_angle, codomain_angle) @ out
    return QsvtProduct(out, "even", schedule, bu)


def odd_product(bu: BlockUnitary, schedule: PhaseSchedule) -> QsvtProduct:
    """Even product followed by ``R_cod(final) U`` on the left; requires a trailing angle."""
    final = schedule.require_final()
    even = even_product(bu, schedule)
    out = rotation(bu.codomain, final) @ bu.matrix @ even.matrix
    return QsvtProduct(out, "odd", schedule, bu)


def _even_predicted_blocks(bu: BlockUnitary, schedule: PhaseSchedule):
    pair = even_polynomials(schedule)
    a, b, d = bu.a, bu.b, bu.d
    gram_a = dag(a) @ a
    gram_d = dag(d) @ d
    return (
        mat_poly_eval(pair.diag, gram_a),
        1j * mat_poly_eval(pair.off_diag, gram_a) @ (dag(a) @ b),
        1j * mat_poly_eval(pair.off_diag.conj(), gram_d) @ (dag(b) @ a),
        mat_poly_eval(pair.diag.conj(), gram_d),
    )


def _odd_predicted_blocks(bu: BlockUnitary, schedule: PhaseSchedule):
    pair = odd_polynomials(schedule)
    a, b, c, d = bu.a, bu.b, bu.c, bu.d
    cogram_a = a @ dag(a)
    cogram_d = d @ dag(d)
    return (
        mat_poly_eval(pair.diag, cogram_a) @ a,
        mat_poly_eval(pair.off_diag, cogram_a) @ b,
        mat_poly_eval(pair.off_diag.conj(), cogram_d) @ c,
        mat_poly_eval(pair.diag.conj(), cogram_d) @ d,
    )


def block_form_check(prod: QsvtProduct, *, eps_poly: float = EPS_POLY) -> Report:
    """Compare the product's four blocks against their polynomial predictions.

    Even parity splits both sides on the domain; odd parity maps domain to
    codomain, so rows split on the codomain.  The threshold scales with the
    number of steps to absorb floating-point accumulation over long
    products.
    """
    bu = prod.source
    schedule = prod.schedule
    tol = eps_poly * max(1, schedule.n)
    if prod.parity == "even":
        split = bu.to_domain(prod.matrix)
        row_dim = bu.domain.sub_dim
        col_dim = bu.domain.sub_dim
        predicted = _even_predicted_blocks(bu, schedule)
    else:
        split = dag(bu.codomain.basis) @ prod.matrix @ bu.domain.basis
        row_dim = bu.codomain.sub_dim
        col_dim = bu.domain.sub_dim
        predicted = _odd_predicted_blocks(bu, schedule)
    actual = (
        split[:row_dim, :col_dim],
        split[:row_dim, col_dim:],
        split[row_dim:, :col_dim],
        split[row_dim:, col_dim:],
    )
    names = ("top-left", "top-right", "bottom-left", "bottom-right")
    records = tuple(
        CheckRecord(f"{prod.parity}-block-{name}", frob(got - want), tol)
        for name, got, want in zip(names, actual, predicted)
    )
    return Report(records)


def svt_values(
    prod: QsvtProduct,
    triples: Iterable["SingularTriple"],
    *,
    eps_poly: float = EPS_POLY,
) -> Report:
    """Scalar transform values on interior singular triples.

    Even products: ``<h, M h>`` equals the diagonal polynomial at sigma^2.
    Odd products: ``<f, M h>`` equals the odd diagonal polynomial at sigma^2
    times sigma.  Either claim needs the alignment ``<f, a h> = sigma``,
    which is enforced up front.
    """
    bu = prod.source
    schedule = prod.schedule
    if prod.parity == "even":
        poly = even_polynomials(schedule).diag
    else:
        poly = odd_polynomials(schedule).diag

    records = []
    for idx, triple in enumerate(triples):
        if not triple.interior:
            continue
        sigma = triple.sigma
        overlap = complex(np.vdot(triple.left, bu.a @ triple.right))
        if abs(overlap - sigma) > eps_poly:
            raise PhaseConventionViolation(
                f"triple {idx}: <f, a h> = {overlap:.6f} differs from sigma = {sigma:.6f}"
            )
        h_ambient = bu.domain.sub_basis @ triple.right
        if prod.parity == "even":
            value = complex(np.vdot(h_ambient, prod.matrix @ h_ambient))
            predicted = poly(sigma**2)
        else:
            f_ambient = bu.codomain.sub_basis @ triple.left
            value = complex(np.vdot(f_ambient, prod.matrix @ h_ambient))
            predicted = poly(sigma**2) * sigma
        records.append(
            CheckRecord(f"{prod.parity}-transform-value[{idx}]", abs(value - predicted), eps_poly)
        )
    return Report(tuple(records))
