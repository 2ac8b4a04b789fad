"""Polynomial recursion tests: step pairs, even/odd families, endpoint identities."""

import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsvtlab.errors import MissingFinalPhase
from qsvtlab.polynomials import (
    ComplexPolynomial,
    PhaseSchedule,
    boundary_values,
    conjugate,
    even_polynomials,
    odd_polynomials,
    odd_values,
    pair_values,
    step_polynomials,
)

angles = st.floats(min_value=0.0, max_value=2.0 * math.pi, exclude_max=True, allow_nan=False)


def schedules(max_n=10, with_final=False):
    pair = st.tuples(angles, angles)
    final = angles if with_final else st.none()
    return st.builds(
        lambda pairs, fin: PhaseSchedule(tuple(pairs), fin),
        st.lists(pair, min_size=0, max_size=max_n),
        final,
    )


class TestComplexPolynomial:
    def test_trimming_and_zero(self):
        p = ComplexPolynomial.from_coeffs([1.0, 2.0, 1e-16])
        assert p.degree == 1
        assert ComplexPolynomial.from_coeffs([0.0]).is_zero
        assert ComplexPolynomial.zero().degree == -1

    def test_arithmetic(self):
        x = ComplexPolynomial.x()
        p = (x + ComplexPolynomial.one()) * (x - ComplexPolynomial.one())
        assert p.almost_equal(ComplexPolynomial.from_coeffs([-1.0, 0.0, 1.0]))
        assert (2.0 * x).coeffs == (0.0j, 2.0 + 0.0j)

    def test_horner_evaluation(self):
        p = ComplexPolynomial.from_coeffs([1.0, -2.0, 3.0j])
        x = 0.7
        assert p(x) == pytest.approx(1.0 - 2.0 * x + 3.0j * x * x)

    def test_conj_examples(self):
        assert conjugate(ComplexPolynomial.one()).almost_equal(ComplexPolynomial.one())
        p = ComplexPolynomial.from_coeffs([-1.0j, 2.0j])  # i(2x - 1)
        assert conjugate(p).almost_equal(ComplexPolynomial.from_coeffs([1.0j, -2.0j]))

    @given(coeffs=st.lists(st.complex_numbers(max_magnitude=10.0, allow_nan=False), max_size=8))
    def test_conj_is_involution(self, coeffs):
        p = ComplexPolynomial.from_coeffs(coeffs)
        assert conjugate(conjugate(p)) == p


class TestStepPolynomials:
    def test_idle_step(self):
        linear, coupling = step_polynomials(0.0, 0.0)
        assert linear.almost_equal(ComplexPolynomial.one())
        assert coupling.is_zero

    def test_quarter_turn(self):
        linear, coupling = step_polynomials(0.0, math.pi / 2.0)
        assert linear.almost_equal(ComplexPolynomial.from_coeffs([-1.0j, 2.0j]))  # i(2x - 1)
        assert coupling.almost_equal(ComplexPolynomial.constant(2.0))

    def test_double_quarter_turn(self):
        linear, coupling = step_polynomials(math.pi / 2.0, math.pi / 2.0)
        assert linear.almost_equal(ComplexPolynomial.from_coeffs([1.0, -2.0]))  # 1 - 2x
        assert coupling.almost_equal(ComplexPolynomial.constant(2.0j))


class TestEvenRecursion:
    def test_empty_schedule(self):
        pair = even_polynomials(PhaseSchedule(()))
        assert pair.diag.almost_equal(ComplexPolynomial.one())
        assert pair.off_diag.is_zero
        assert pair.n == 0

    def test_two_quarter_turns_collapse(self):
        # Hand recursion: diag_1 = i(2x-1), off_1 = 2, then
        # diag_2 = -(2x-1)^2 - 4x(1-x) = -1 and off_2 = 0.
        schedule = PhaseSchedule(((0.0, math.pi / 2.0), (0.0, math.pi / 2.0)))
        pair = even_polynomials(schedule)
        assert pair.diag.almost_equal(ComplexPolynomial.constant(-1.0))
        assert pair.off_diag.is_zero

    def test_single_step_endpoints(self):
        pair = even_polynomials(PhaseSchedule(((math.pi / 3.0, math.pi / 6.0),)))
        assert pair.diag(0.0) == pytest.approx(cmath.exp(1j * math.pi / 6.0))
        assert pair.diag(1.0) == pytest.approx(cmath.exp(1j * math.pi / 2.0))

    @settings(max_examples=40, deadline=None)
    @given(schedule=schedules(max_n=10))
    def test_degree_bounds(self, schedule):
        pair = even_polynomials(schedule)
        assert pair.diag.degree <= schedule.n
        assert pair.off_diag.degree <= max(0, schedule.n - 1)

    @settings(max_examples=40, deadline=None)
    @given(schedule=schedules(max_n=8), x=st.floats(min_value=0.0, max_value=1.0))
    def test_unit_norm_identity(self, schedule, x):
        # |diag|^2 + x(1-x)|off|^2 = 1: unitarity of the 2x2 transfer matrix.
        pair = even_polynomials(schedule)
        value = abs(pair.diag(x)) ** 2 + x * (1.0 - x) * abs(pair.off_diag(x)) ** 2
        assert value == pytest.approx(1.0, abs=1e-10)

    @settings(max_examples=30, deadline=None)
    @given(schedule=schedules(max_n=8), x=st.floats(min_value=0.0, max_value=1.0))
    def test_value_recursion_matches_coefficients(self, schedule, x):
        pair = even_polynomials(schedule)
        p, q = pair_values(schedule, x)
        assert p == pytest.approx(pair.diag(x), abs=1e-10)
        assert q == pytest.approx(pair.off_diag(x), abs=1e-10)


class TestOddPolynomials:
    def test_requires_final_angle(self):
        with pytest.raises(MissingFinalPhase):
            odd_polynomials(PhaseSchedule(()))

    def test_empty_with_zero_final(self):
        pair = odd_polynomials(PhaseSchedule((), 0.0))
        assert pair.diag.almost_equal(ComplexPolynomial.one())
        assert pair.off_diag.almost_equal(ComplexPolynomial.one())

    def test_empty_with_quarter_final(self):
        pair = odd_polynomials(PhaseSchedule((), math.pi / 2.0))
        assert pair.diag.almost_equal(ComplexPolynomial.constant(1.0j))
        assert pair.off_diag.almost_equal(ComplexPolynomial.constant(1.0j))

    def test_single_step_collapses_to_constant(self):
        # diag = i(2x-1) + 2i(1-x) = i;  off = -i(2x-1) + 2ix = i.
        schedule = PhaseSchedule(((0.0, math.pi / 2.0),), 0.0)
        pair = odd_polynomials(schedule)
        assert pair.diag.almost_equal(ComplexPolynomial.constant(1.0j))
        assert pair.off_diag.almost_equal(ComplexPolynomial.constant(1.0j))

    @settings(max_examples=30, deadline=None)
    @given(schedule=schedules(max_n=8, with_final=True), x=st.floats(min_value=0.0, max_value=1.0))
    def test_odd_value_recursion_matches_coefficients(self, schedule, x):
        pair = odd_polynomials(schedule)
        t, w = odd_values(schedule, x)
        assert t == pytest.approx(pair.diag(x), abs=1e-10)
        assert w == pytest.approx(pair.off_diag(x), abs=1e-10)


class TestBoundaryValues:
    def test_all_zero_phases(self):
        report = boundary_values(PhaseSchedule(((0.0, 0.0), (0.0, 0.0)), 0.0))
        assert report.passed
        assert report.max_residual <= 1e-15

    def test_single_step_values(self):
        schedule = PhaseSchedule(((math.pi / 3.0, math.pi / 6.0),))
        assert boundary_values(schedule).passed
        pair = even_polynomials(schedule)
        assert pair.diag(0.0) == pytest.approx(cmath.exp(1j * math.pi / 6.0))
        assert pair.diag(1.0) == pytest.approx(1.0j)

    def test_quarter_turn_pair_consistent_with_constant(self):
        schedule = PhaseSchedule(((0.0, math.pi / 2.0), (0.0, math.pi / 2.0)), 0.0)
        report = boundary_values(schedule)
        assert report.passed
        p0, _ = pair_values(schedule, 0.0)
        p1, _ = pair_values(schedule, 1.0)
        assert p0 == pytest.approx(-1.0)
        assert p1 == pytest.approx(-1.0)

    @settings(max_examples=60, deadline=None)
    @given(schedule=schedules(max_n=50, with_final=True))
    def test_long_schedules(self, schedule):
        report = boundary_values(schedule)
        assert report.max_residual <= 1e-9


class TestPhaseSchedule:
    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            PhaseSchedule(((0.0, 7.0),))

    def test_wrapping_constructor(self):
        schedule = PhaseSchedule.of([(2.0 * math.pi, -math.pi)], final_angle=3.0 * math.pi)
        assert schedule.pairs[0][0] == pytest.approx(0.0)
        assert schedule.pairs[0][1] == pytest.approx(math.pi)
        assert schedule.final_angle == pytest.approx(math.pi)

    def test_extended(self):
        a = PhaseSchedule(((0.1, 0.2),))
        b = PhaseSchedule(((0.3, 0.4),), 0.5)
        c = a.extended(b)
        assert c.pairs == ((0.1, 0.2), (0.3, 0.4))
        assert c.final_angle == 0.5
