"""The 2x2 reduction: signal unitaries, phased products, and the homogeneous closed form.

On every interior sector the step operators act as products of Pauli-Z phase
rotations with the real symmetric reflection parameterized by the singular
value.  This module multiplies those 2x2 products directly, predicts them
from the polynomial recursion, and gives the Chebyshev closed form and the
spectral decomposition for the homogeneous case (all steps equal).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .defaults import DEGENERACY_CUTOFF
from .errors import OutOfRange
from .linalg import frob
from .polynomials import PhaseSchedule, even_polynomials, odd_polynomials
from .reporting import CheckRecord, Report


def z_rotation(angle: float) -> np.ndarray:
    """diag(e^{i angle}, e^{-i angle})."""
    return np.diag([cmath.exp(1j * angle), cmath.exp(-1j * angle)])


def signal_unitary(sigma: float) -> np.ndarray:
    """The reflection ``[[sigma, r], [r, -sigma]]`` with ``r = sqrt(1 - sigma^2)``.

    Real, symmetric, unitary, and an involution; it is the change of basis a
    block unitary performs on each sector.
    """
    if not 0.0 <= sigma <= 1.0:
        raise OutOfRange(f"sigma must lie in [0, 1], got {sigma!r}")
    comp = math.sqrt(1.0 - sigma * sigma)
    return np.array([[sigma, comp], [comp, -sigma]], dtype=np.complex128)


@dataclass(frozen=True)
class QspInstance:
    """A 2x2 product instance: singular value, its arccosine, and a schedule."""

    sigma: float
    signal_angle: float
    schedule: PhaseSchedule

    def __post_init__(self):
        if not 0.0 <= self.sigma <= 1.0:
            raise OutOfRange(f"sigma must lie in [0, 1], got {self.sigma!r}")
        if abs(self.sigma - math.cos(self.signal_angle)) > 1e-12:
            raise OutOfRange(
                f"sigma = {self.sigma!r} is not cos(signal_angle) = {math.cos(self.signal_angle)!r}"
            )

    @staticmethod
    def from_sigma(sigma: float, schedule: PhaseSchedule) -> "QspInstance":
        sigma = float(sigma)
        if not 0.0 <= sigma <= 1.0:
            raise OutOfRange(f"sigma must lie in [0, 1], got {sigma!r}")
        return QspInstance(sigma, math.acos(sigma), schedule)

    @staticmethod
    def from_angle(signal_angle: float, schedule: PhaseSchedule) -> "QspInstance":
        signal_angle = float(signal_angle)
        if not 0.0 <= signal_angle <= math.pi / 2.0:
            raise OutOfRange(f"signal angle must lie in [0, pi/2], got {signal_angle!r}")
        return QspInstance(math.cos(signal_angle), signal_angle, schedule)


def qsp_product(inst: QspInstance) -> np.ndarray:
    """Direct 2x2 multiplication of the scheduled product.

    Even product of ``e^{i theta Z} U e^{i phi Z} U`` factors (latest factor
    leftmost); a trailing angle on the schedule closes it into the odd
    product ``e^{i final Z} U (...)``.
    """
    u = signal_unitary(inst.sigma)
    out = np.eye(2, dtype=np.complex128)
    for domain_angle, codomain_angle in inst.schedule.pairs:
        out = z_rotation(domain_angle) @ u @ z_rotation(codomain_angle) @ u @ out
    if inst.schedule.final_angle is not None:
        out = z_rotation(inst.schedule.final_angle) @ u @ out
    return out


def qsp_prediction(schedule: PhaseSchedule, sigma: float) -> np.ndarray:
    """The same 2x2 matrix built from the polynomial recursion.

    Even form ``[[p, i q s r], [i conj(q) s r, conj(p)]]`` at ``x = sigma^2``
    with ``r = sqrt(1 - sigma^2)``; the odd form replaces the entries with
    the odd pair as ``[[t s, w r], [conj(w) r, -conj(t) s]]``.
    """
    x = sigma * sigma
    comp = math.sqrt(max(0.0, 1.0 - x))
    if schedule.final_angle is None:
        pair = even_polynomials(schedule)
        p = pair.diag(x)
        q = pair.off_diag(x)
        return np.array(
            [[p, 1j * q * sigma * comp], [1j * q.conjugate() * sigma * comp, p.conjugate()]]
        )
    pair = odd_polynomials(schedule)
    t = pair.diag(x)
    w = pair.off_diag(x)
    return np.array([[t * sigma, w * comp], [w.conjugate() * comp, -t.conjugate() * sigma]])


def qsp_check(inst: QspInstance, *, eps: float = 1e-10) -> Report:
    """Product vs. recursion prediction, plus the unit-norm entry identity."""
    got = qsp_product(inst)
    want = qsp_prediction(inst.schedule, inst.sigma)
    records = [CheckRecord("qsp-product-vs-recursion", frob(got - want), eps)]
    pair = even_polynomials(inst.schedule)
    x = inst.sigma**2
    norm = abs(pair.diag(x)) ** 2 + x * (1.0 - x) * abs(pair.off_diag(x)) ** 2
    records.append(CheckRecord("qsp-unit-norm-identity", abs(norm - 1.0), eps))
    return Report(tuple(records))


@dataclass(frozen=True)
class HomogeneousStep:
    """Derived scalars of one homogeneous step ``e^{i theta Z} U e^{i phi Z} U``.

    The step matrix is ``[[diag_re + i diag_im, i e^{i theta} sin(phi) sin(2k)],
    [i e^{-i theta} sin(phi) sin(2k), diag_re - i diag_im]]``;
    ``diag_re`` is the cosine of the step's rotation angle.  ``sign`` tracks
    the sign of sin(phi).
    """

    theta: float
    phi: float
    signal_angle: float
    diag_re: float
    diag_im: float
    sign: int

    @staticmethod
    def from_angles(theta: float, phi: float, signal_angle: float) -> "HomogeneousStep":
        two_k = 2.0 * signal_angle
        diag_re = math.cos(theta) * math.cos(phi) - math.sin(theta) * math.sin(phi) * math.cos(two_k)
        diag_im = math.sin(theta) * math.cos(phi) + math.sin(phi) * math.cos(theta) * math.cos(two_k)
        sign = 1 if math.sin(phi) >= 0.0 else -1
        step = HomogeneousStep(theta, phi, signal_angle, diag_re, diag_im, sign)
        # Unit-determinant consistency of the derived scalars.
        total = diag_re**2 + diag_im**2 + (math.sin(phi) * math.sin(two_k)) ** 2
        if abs(total - 1.0) > 1e-12:
            raise OutOfRange(f"inconsistent step scalars: norm {total!r} != 1")
        return step


def chebyshev_pair(x: float, n: int) -> tuple[float, float]:
    """(T_n(x), U_{n-1}(x)) by the three-term recurrences.

    Stable on [-1, 1] including the endpoints, where the trigonometric
    closed forms degenerate.  ``U_{-1} = 0``.
    """
    if n < 0:
        raise OutOfRange(f"n must be >= 0, got {n}")
    if n == 0:
        return 1.0, 0.0
    t_prev, t_cur = 1.0, x
    u_prev, u_cur = 0.0, 1.0
    for _ in range(n - 1):
        t_prev, t_cur = t_cur, 2.0 * x * t_cur - t_prev
        u_prev, u_cur = u_cur, 2.0 * x * u_cur - u_prev
    return t_cur, u_cur


def homogeneous_closed_form(theta: float, phi: float, signal_angle: float, n: int) -> tuple[complex, complex]:
    """Closed form of the n-fold homogeneous product's polynomial values.

    Returns the (diagonal, off-diagonal) values at ``x = cos(signal_angle)^2``:
    ``T_n(g) + i z U_{n-1}(g)`` and ``2 e^{i theta} sin(phi) U_{n-1}(g)``
    where g, z are the step's diagonal real/imaginary parts.  The constant 2
    in the off-diagonal value matches the single-step coupling constant, so
    the pair plugs straight into the 2x2 product form.
    """
    if n < 1:
        raise OutOfRange(f"n must be >= 1, got {n}")
    step = HomogeneousStep.from_angles(theta, phi, signal_angle)
    t_n, u_prev = chebyshev_pair(step.diag_re, n)
    diag_value = t_n + 1j * step.diag_im * u_prev
    off_value = 2.0 * cmath.exp(1j * theta) * math.sin(phi) * u_prev
    return diag_value, off_value


@dataclass(frozen=True)
class HomogeneousEig:
    """Spectral data of one homogeneous step.

    ``angle`` is lambda with eigenvalues ``e^{+-i lambda}``; ``plus`` and
    ``minus`` are the rank-1 spectral projectors, or None when the spectrum
    degenerates (|sin lambda| below the cutoff), in which case the step is
    within that cutoff of ``+-I``.
    """

    angle: float
    plus: np.ndarray | None
    minus: np.ndarray | None
    degenerate: bool


def homogeneous_eig(theta: float, phi: float, signal_angle: float) -> HomogeneousEig:
    """Eigen-decomposition of ``e^{i theta Z} U e^{i phi Z} U``.

    ``cos(lambda)`` is the step's diagonal real part and ``sin(lambda) =
    sqrt(diag_im^2 + sin(phi)^2 sin(2k)^2)``.  The projectors divide by
    ``sin(lambda)``; below the degeneracy cutoff they are not built and the
    result is flagged degenerate.
    """
    step = HomogeneousStep.from_angles(theta, phi, signal_angle)
    sin_lam = math.sqrt(
        max(0.0, step.diag_im**2 + (math.sin(phi) * math.sin(2.0 * signal_angle)) ** 2)
    )
    lam = math.atan2(sin_lam, step.diag_re)
    if sin_lam <= DEGENERACY_CUTOFF:
        return HomogeneousEig(lam, None, None, True)
    off = cmath.exp(1j * theta) * math.sin(phi) * math.sin(2.0 * signal_angle)
    plus = (1.0 / (2.0 * sin_lam)) * np.array(
        [[sin_lam + step.diag_im, off], [off.conjugate(), sin_lam - step.diag_im]]
    )
    minus = (1.0 / (2.0 * sin_lam)) * np.array(
        [[sin_lam - step.diag_im, -off], [-off.conjugate(), sin_lam + step.diag_im]]
    )
    return HomogeneousEig(lam, plus, minus, False)


def homogeneous_step_matrix(theta: float, phi: float, signal_angle: float) -> np.ndarray:
    """The homogeneous step as an explicit 2x2 product."""
    u = signal_unitary(math.cos(signal_angle))
    return z_rotation(theta) @ u @ z_rotation(phi) @ u


def homogeneous_check(theta: float, phi: float, signal_angle: float, n: int, *, eps_closed: float = 1e-8, eps_spectral: float = 1e-9) -> Report:
    """Closed form and spectral reconstruction against direct matrix powers.

    Residuals scale with n.  In the degenerate regime the step is compared
    against ``+-I`` and its n-th power against ``(+-1)^n I`` instead of the
    projector reconstruction.
    """
    step = homogeneous_step_matrix(theta, phi, signal_angle)
    power = np.linalg.matrix_power(step, n)
    sigma = math.cos(signal_angle)
    comp = math.sin(signal_angle)
    diag_value, off_value = homogeneous_closed_form(theta, phi, signal_angle, n)
    closed = np.array(
        [
            [diag_value, 1j * off_value * sigma * comp],
            [1j * off_value.conjugate() * sigma * comp, diag_value.conjugate()],
        ]
    )
    records = [CheckRecord("homogeneous-closed-form", frob(power - closed), eps_closed * max(1, n))]

    eig = homogeneous_eig(theta, phi, signal_angle)
    if eig.degenerate:
        sign = 1.0 if step[0, 0].real > 0 else -1.0
        records.append(
            CheckRecord(
                "homogeneous-degenerate-step",
                frob(step - sign * np.eye(2)),
                DEGENERACY_CUTOFF * 4.0,
                note="spectrum degenerate; compared against +-I",
            )
        )
        records.append(
            CheckRecord(
                "homogeneous-degenerate-power",
                frob(power - sign**n * np.eye(2)),
                DEGENERACY_CUTOFF * 4.0 * max(1, n),
                note="spectrum degenerate",
            )
        )
        return Report(tuple(records))

    reconstructed = cmath.exp(1j * eig.angle * n) * eig.plus + cmath.exp(-1j * eig.angle * n) * eig.minus
    records.append(
        CheckRecord("homogeneous-spectral-power", frob(power - reconstructed), eps_spectral * max(1, n))
    )
    records.append(CheckRecord("homogeneous-projector-sum", frob(eig.plus + eig.minus - np.eye(2)), 1e-10))
    records.append(CheckRecord("homogeneous-projector-product", frob(eig.plus @ eig.minus), 1e-10))
    records.append(
        CheckRecord("homogeneous-projector-idempotent", frob(eig.plus @ eig.plus - eig.plus), 1e-10)
    )
    return Report(tuple(records))
