"""Complex polynomial arithmetic and the phase-product bookkeeping.

A product of rotation steps acting on a block unitary is described by two
families of polynomials: a *diagonal* family evaluated on the discriminants
(``A*A`` / ``D*D`` for even products, ``AA*`` / ``DD*`` for odd ones) and an
*off-diagonal* family multiplying the cross blocks.  This module owns the
coefficient-level recursion producing those families, the degree-(<=1) pair
attached to a single step, the odd-product closing formulas, and the
endpoint identities that tie polynomial values at 0 and 1 to pure phase
products.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .defaults import EPS_POLY, TRIM_TOL
from .errors import MissingFinalPhase
from .reporting import CheckRecord, Report

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ComplexPolynomial:
    """Polynomial in one variable with complex coefficients.

    ``coeffs[k]`` multiplies ``x**k``.  Canonical form: trailing coefficients
    of magnitude <= TRIM_TOL are trimmed, and the zero polynomial has an
    empty coefficient tuple.
    """

    coeffs: tuple[complex, ...]

    @staticmethod
    def from_coeffs(seq) -> "ComplexPolynomial":
        coeffs = [complex(c) for c in seq]
        while coeffs and abs(coeffs[-1]) <= TRIM_TOL:
            coeffs.pop()
        return ComplexPolynomial(tuple(coeffs))

    @staticmethod
    def zero() -> "ComplexPolynomial":
        return ComplexPolynomial(())

    @staticmethod
    def one() -> "ComplexPolynomial":
        return ComplexPolynomial((1.0 + 0.0j,))

    @staticmethod
    def constant(value: complex) -> "ComplexPolynomial":
        return ComplexPolynomial.from_coeffs([value])

    @staticmethod
    def x() -> "ComplexPolynomial":
        return ComplexPolynomial((0.0j, 1.0 + 0.0j))

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "ComplexPolynomial") -> "ComplexPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        out = [0.0j] * n
        for i, c in enumerate(self.coeffs):
            out[i] += c
        for i, c in enumerate(other.coeffs):
            out[i] += c
        return ComplexPolynomial.from_coeffs(out)

    def __neg__(self) -> "ComplexPolynomial":
        return ComplexPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "ComplexPolynomial") -> "ComplexPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ComplexPolynomial):
            if self.is_zero or other.is_zero:
                return ComplexPolynomial.zero()
            prod = np.convolve(np.asarray(self.coeffs), np.asarray(other.coeffs))
            return ComplexPolynomial.from_coeffs(prod)
        return ComplexPolynomial.from_coeffs([complex(other) * c for c in self.coeffs])

    __rmul__ = __mul__

    def conj(self) -> "ComplexPolynomial":
        """Coefficient-wise conjugate; an involution.

        For Hermitian arguments this realizes the adjoint of the evaluated
        operator, which is exactly what the block identities need.
        """
        return ComplexPolynomial(tuple(c.conjugate() for c in self.coeffs))

    def __call__(self, x: complex) -> complex:
        value = 0.0j
        for c in reversed(self.coeffs):
            value = value * x + c
        return value

    def almost_equal(self, other: "ComplexPolynomial", tol: float = 1e-12) -> bool:
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0.0j] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0.0j] * (n - len(other.coeffs))
        return all(abs(x - y) <= tol for x, y in zip(a, b))


def conjugate(p: ComplexPolynomial) -> ComplexPolynomial:
    """Coefficient-wise conjugation of ``p`` (free-function form of ``p.conj()``)."""
    return p.conj()


def _check_angle(value: float, label: str) -> float:
    value = float(value)
    if not 0.0 <= value < TWO_PI:
        raise ValueError(f"{label} must lie in [0, 2*pi); got {value!r}")
    return value


@dataclass(frozen=True)
class PhaseSchedule:
    """Rotation angles driving a product of steps.

    Each pair is ``(domain_angle, codomain_angle)``: step k first rotates the
    codomain subspace by the second entry and then the domain subspace by the
    first.  ``final_angle`` is the extra trailing codomain rotation that odd
    products require.  All angles live in [0, 2*pi).
    """

    pairs: tuple[tuple[float, float], ...]
    final_angle: float | None = None

    def __post_init__(self):
        checked = tuple(
            (_check_angle(t, f"pair {k} domain angle"), _check_angle(f, f"pair {k} codomain angle"))
            for k, (t, f) in enumerate(self.pairs)
        )
        object.__setattr__(self, "pairs", checked)
        if self.final_angle is not None:
            object.__setattr__(self, "final_angle", _check_angle(self.final_angle, "final angle"))

    @staticmethod
    def of(pairs, final_angle: float | None = None) -> "PhaseSchedule":
        """Build a schedule, wrapping arbitrary angles into [0, 2*pi)."""
        wrapped = tuple((float(t) % TWO_PI, float(f) % TWO_PI) for t, f in pairs)
        final = None if final_angle is None else float(final_angle) % TWO_PI
        return PhaseSchedule(wrapped, final)

    @property
    def n(self) -> int:
        return len(self.pairs)

    @property
    def domain_angles(self) -> np.ndarray:
        return np.array([t for t, _ in self.pairs], dtype=float)

    @property
    def codomain_angles(self) -> np.ndarray:
        return np.array([f for _, f in self.pairs], dtype=float)

    def require_final(self) -> float:
        if self.final_angle is None:
            raise MissingFinalPhase("schedule has no trailing codomain angle")
        return self.final_angle

    def with_final(self, angle: float) -> "PhaseSchedule":
        return PhaseSchedule(self.pairs, angle)

    def extended(self, other: "PhaseSchedule") -> "PhaseSchedule":
        """Concatenate ``other`` after this schedule (final angle from ``other``)."""
        return PhaseSchedule(self.pairs + other.pairs, other.final_angle)


@dataclass(frozen=True)
class PolyPair:
    """Diagonal / off-diagonal polynomial pair after n steps.

    At n = 0 the pair is (1, 0).  The recursion keeps ``diag`` at degree <= n
    and ``off_diag`` at degree <= max(0, n - 1).
    """

    diag: ComplexPolynomial
    off_diag: ComplexPolynomial
    n: int


def step_polynomials(domain_angle: float, codomain_angle: float) -> tuple[ComplexPolynomial, ComplexPolynomial]:
    """Polynomials of a single step: a degree-<=1 diagonal part and a constant coupling.

    The diagonal part is ``e^{i*theta} (e^{-i*phi} + 2i sin(phi) x)`` and the
    coupling constant ``2 e^{i*theta} sin(phi)``, where theta/phi are the
    domain/codomain angles.  The coupling is stored as a degree-0 polynomial
    so the product recursion treats both entries uniformly.
    """
    theta = _check_angle(domain_angle, "domain angle")
    phi = _check_angle(codomain_angle, "codomain angle")
    phase = cmath.exp(1j * theta)
    linear = ComplexPolynomial.from_coeffs([phase * cmath.exp(-1j * phi), phase * 2j * math.sin(phi)])
    coupling = ComplexPolynomial.from_coeffs([2.0 * phase * math.sin(phi)])
    return linear, coupling


# (1 - x) x as a fixed polynomial factor of the recursion.
_X_MINUS_X2 = ComplexPolynomial((0.0j, 1.0 + 0.0j, -1.0 + 0.0j))


def even_polynomials(schedule: PhaseSchedule) -> PolyPair:
    """Coefficient recursion for the even product of ``schedule.n`` steps.

    Starting from (1, 0), each step maps the pair (p, q) to::

        p <- P p - Q (1 - x) x conj(q)
        q <- P q + Q conj(p)

    with (P, Q) the step polynomials and conj acting coefficient-wise.
    """
    diag = ComplexPolynomial.one()
    off = ComplexPolynomial.zero()
    for domain_angle, codomain_angle in schedule.pairs:
        linear, coupling = step_polynomials(domain_angle, codomain_angle)
        new_diag = linear * diag - coupling * off.conj() * _X_MINUS_X2
        new_off = linear * off + coupling * diag.conj()
        diag, off = new_diag, new_off
    return PolyPair(diag, off, schedule.n)


def odd_polynomials(schedule: PhaseSchedule) -> PolyPair:
    """Closing polynomials of the odd product.

    With (p, q) the even pair and ``phase`` the trailing rotation::

        diag     = phase * (p + i conj(q) (1 - x))
        off_diag = phase * (conj(p) + i q x)
    """
    final = schedule.require_final()
    even = even_polynomials(schedule)
    phase = cmath.exp(1j * final)
    one_minus_x = ComplexPolynomial((1.0 + 0.0j, -1.0 + 0.0j))
    diag = phase * (even.diag + 1j * even.off_diag.conj() * one_minus_x)
    off = phase * (even.diag.conj() + 1j * even.off_diag * ComplexPolynomial.x())
    return PolyPair(diag, off, schedule.n)


def pair_values(schedule: PhaseSchedule, x: float) -> tuple[complex, complex]:
    """Even pair evaluated at ``x`` through the recursion in value space.

    Identical algebra to :func:`even_polynomials` followed by evaluation, but
    numerically stable for long schedules: monomial coefficients grow
    exponentially with n while the value iteration stays bounded (and is
    triangular, hence exact, at the endpoints x = 0 and x = 1).
    """
    p, q = 1.0 + 0.0j, 0.0j
    weight = float(x) * (1.0 - float(x))
    for domain_angle, codomain_angle in schedule.pairs:
        step_phase = cmath.exp(1j * domain_angle)
        linear = step_phase * (cmath.exp(-1j * codomain_angle) + 2j * math.sin(codomain_angle) * x)
        coupling = 2.0 * step_phase * math.sin(codomain_angle)
        p, q = linear * p - coupling * weight * q.conjugate(), linear * q + coupling * p.conjugate()
    return p, q


def odd_values(schedule: PhaseSchedule, x: float) -> tuple[complex, complex]:
    """Odd pair (diag, off_diag) evaluated at ``x`` via the value recursion."""
    final = schedule.require_final()
    p, q = pair_values(schedule, x)
    phase = cmath.exp(1j * final)
    return phase * (p + 1j * q.conjugate() * (1.0 - x)), phase * (p.conjugate() + 1j * q * x)


def boundary_values(schedule: PhaseSchedule, *, eps_poly: float = EPS_POLY) -> Report:
    """Endpoint identities of the recursion against closed phase products.

    Checks, for the even pair, ``diag(0)`` and ``diag(1)`` against the
    products of ``e^{i(theta_k -/+ phi_k)}``; when a trailing angle is
    present also checks the odd pair's ``off_diag(0)`` and ``diag(1)``
    against the same products with the extra trailing phase.
    """
    thetas = schedule.domain_angles
    phis = schedule.codomain_angles
    prod_minus = cmath.exp(1j * float(np.sum(thetas - phis)))
    prod_plus = cmath.exp(1j * float(np.sum(thetas + phis)))

    at0, _ = pair_values(schedule, 0.0)
    at1, _ = pair_values(schedule, 1.0)
    records = [
        CheckRecord("even-diag-at-0", abs(at0 - prod_minus), eps_poly),
        CheckRecord("even-diag-at-1", abs(at1 - prod_plus), eps_poly),
    ]
    if schedule.final_angle is not None:
        phase = cmath.exp(1j * schedule.final_angle)
        odd_diag_1, _ = odd_values(schedule, 1.0)
        _, odd_off_0 = odd_values(schedule, 0.0)
        records.append(CheckRecord("odd-off-diag-at-0", abs(odd_off_0 - phase * prod_minus.conjugate()), eps_poly))
        records.append(CheckRecord("odd-diag-at-1", abs(odd_diag_1 - phase * prod_plus), eps_poly))
    return Report(tuple(records))
