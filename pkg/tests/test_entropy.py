"""
Tests for the Shannon/Renyi-2 entropy functions.
"""

import math

import numpy as np
import pytest

from tls_complexity.entropy import (
    LN2,
    EntropyTriple,
    clamp_radius,
    complexity_from_coeff,
    complexity_from_p,
    critical_r,
    density_matrix,
    eigenvalues_from_r,
    entropy_from_r,
    normalized_amplitude,
)
from tls_complexity.exceptions import DomainError, NonFiniteError

R_STAR = 0.7431614626
SC_AT_R_STAR = 0.1299541256


class TestEntropyFromR:
    """Entropies as a function of the Bloch radius."""

    def test_maximally_mixed_state_has_no_complexity(self):
        """At r = 0 both entropies equal ln 2."""
        # Exercise
        triple = entropy_from_r(0.0)

        # Verify
        assert triple.shannon == pytest.approx(LN2, abs=1e-15)
        assert triple.renyi2 == pytest.approx(LN2, abs=1e-15)
        assert triple.complexity == pytest.approx(0.0, abs=1e-15)

    def test_pure_state_returns_exact_zeros(self):
        """r = 1 is a pure state."""
        # Exercise
        triple = entropy_from_r(1.0)

        # Verify
        assert triple == EntropyTriple(0.0, 0.0, 0.0)

    def test_value_at_critical_radius(self):
        """S_C at r* is the global maximum, about 0.12995 nats."""
        # Exercise
        triple = entropy_from_r(R_STAR)

        # Verify
        assert triple.complexity == pytest.approx(SC_AT_R_STAR, abs=1e-9)

    def test_radius_next_to_maximum(self):
        """r = 0.7433 sits next to the maximum."""
        assert entropy_from_r(0.7433).complexity == pytest.approx(0.1299, abs=1e-4)

    def test_complexity_is_difference(self):
        """complexity = shannon - renyi2 to machine precision."""
        for r in np.linspace(0.0, 1.0, 101):
            triple = entropy_from_r(float(r))
            assert triple.complexity == pytest.approx(triple.shannon - triple.renyi2, abs=1e-15)

    def test_rounding_overshoot_is_clamped(self):
        """Radii a hair above 1 are treated as 1."""
        # Exercise
        triple = entropy_from_r(1.0 + 1e-10)

        # Verify
        assert triple.complexity == 0.0

    def test_rejects_radius_above_band(self):
        """r > 1 + 1e-9 is a domain error."""
        with pytest.raises(ValueError, match="r must lie in"):
            entropy_from_r(1.2)

    def test_rejects_negative_radius(self):
        with pytest.raises(DomainError):
            entropy_from_r(-0.1)

    def test_rejects_nan(self):
        with pytest.raises(NonFiniteError):
            entropy_from_r(float("nan"))

    def test_normalized_divides_by_ln2(self):
        """Normalized values are nats / ln 2 exactly."""
        # Setup
        rng = np.random.default_rng(11)

        for r in rng.uniform(0.0, 1.0, size=200):
            # Exercise
            nats = entropy_from_r(float(r))
            bits = entropy_from_r(float(r), normalized=True)

            # Verify
            assert bits.normalized is True
            assert bits.shannon == nats.shannon / LN2
            assert bits.renyi2 == nats.renyi2 / LN2
            assert bits.complexity == nats.complexity / LN2

    def test_unimodal_in_radius(self):
        """S_C increases strictly up to r* and decreases strictly after it."""
        # Setup
        r_star = critical_r()
        grid = np.linspace(0.0, 1.0, 10_001)

        # Exercise
        values = np.array([entropy_from_r(float(r)).complexity for r in grid])

        # Verify
        steps = np.diff(values)
        rising = grid[1:] <= r_star
        assert np.all(steps[rising] > 0.0)
        # the first falling step straddles r* and may go either way
        assert np.all(steps[~rising][1:] < 0.0)

    def test_non_negative(self):
        """Renyi-2 never exceeds Shannon."""
        rng = np.random.default_rng(3)
        for r in rng.uniform(0.0, 1.0, size=100_000):
            assert entropy_from_r(float(r)).complexity >= 0.0

    def test_non_negative_near_maximally_mixed_state(self):
        for r in np.geomspace(1e-12, 1e-1, 2000):
            assert entropy_from_r(float(r)).complexity >= 0.0

    def test_leading_order_near_maximally_mixed_state(self):
        """S_C = r^2/2 - 7r^4/12 + ... for small r."""
        for r in (1e-12, 1e-8, 1e-5, 5e-4, 2e-3, 1e-2):
            expected = 0.5 * r**2 - 7.0 / 12.0 * r**4 + 0.3 * r**6
            assert entropy_from_r(r).complexity == pytest.approx(expected, rel=1e-9)

    def test_continuous_across_series_switch(self):
        below = entropy_from_r(float(np.nextafter(1e-3, 0.0)))
        above = entropy_from_r(1e-3)
        assert below.complexity == pytest.approx(above.complexity, rel=1e-8)
        assert below.shannon == pytest.approx(above.shannon, abs=1e-15)


class TestComplexityFromP:
    """Entropies of a two-state occupation."""

    def test_uniform_and_deterministic_distributions(self):
        assert complexity_from_p(0.5).complexity == pytest.approx(0.0, abs=1e-15)
        assert complexity_from_p(1.0) == EntropyTriple(0.0, 0.0, 0.0)
        assert complexity_from_p(0.0) == EntropyTriple(0.0, 0.0, 0.0)

    def test_matches_radius_form(self):
        """p = 0.87165 corresponds to r = 0.7433."""
        # Exercise
        from_p = complexity_from_p(0.87165)
        from_r = entropy_from_r(0.7433)

        # Verify
        assert from_p.complexity == pytest.approx(from_r.complexity, abs=1e-12)

    def test_symmetric_under_swap(self):
        """complexity_from_p(p) == complexity_from_p(1 - p) exactly."""
        for p in np.linspace(0.0, 1.0, 257):
            p = float(p)
            assert complexity_from_p(p).complexity == complexity_from_p(1.0 - p).complexity

    def test_non_negative_near_uniform_distribution(self):
        for offset in np.geomspace(1e-13, 1e-1, 2000):
            assert complexity_from_p(0.5 + float(offset)).complexity >= 0.0
            assert complexity_from_p(0.5 - float(offset)).complexity >= 0.0

    def test_rejects_probability_outside_unit_interval(self):
        with pytest.raises(ValueError, match="p must lie in"):
            complexity_from_p(1.5)
        with pytest.raises(DomainError):
            complexity_from_p(-0.01)


class TestComplexityFromCoeff:
    """Entropies of the state c|1> + |0>."""

    def test_equal_amplitudes(self):
        assert complexity_from_coeff(1.0).complexity == pytest.approx(0.0, abs=1e-15)

    def test_large_coefficient_approaches_pure_state(self):
        assert complexity_from_coeff(1e8).complexity == pytest.approx(0.0, abs=1e-6)

    def test_zero_coefficient_is_pure(self):
        assert complexity_from_coeff(0.0) == EntropyTriple(0.0, 0.0, 0.0)

    def test_near_global_maximum(self):
        """c = 2.605 gives occupation 0.8716, next to r*."""
        # Exercise
        triple = complexity_from_coeff(2.605)

        # Verify
        assert 2.605**2 / (1 + 2.605**2) == pytest.approx(0.8716, abs=1e-4)
        assert triple.complexity == pytest.approx(SC_AT_R_STAR, abs=1e-4)

    def test_closed_form_expression(self):
        """-c^2/(1+c^2) ln c^2 + ln((1+c^4)/(1+c^2))."""
        for c in (0.3, 0.9, 1.7, 4.0):
            expected = -(c * c) / (1 + c * c) * math.log(c * c) + math.log((1 + c**4) / (1 + c * c))
            assert complexity_from_coeff(c).complexity == pytest.approx(expected, abs=1e-12)

    def test_consistency_triangle(self):
        """Coefficient, occupation and radius forms agree within 1e-12."""
        # Setup
        rng = np.random.default_rng(2024)
        coefficients = np.exp(rng.uniform(-5.0, 5.0, size=1000))

        for c in coefficients:
            c = float(c)
            # Exercise
            from_coeff = complexity_from_coeff(c).complexity
            from_p = complexity_from_p(c * c / (1.0 + c * c)).complexity
            from_r = entropy_from_r(abs(c * c - 1.0) / (c * c + 1.0)).complexity

            # Verify
            assert from_coeff == pytest.approx(from_p, abs=1e-12)
            assert from_coeff == pytest.approx(from_r, abs=1e-12)

    def test_non_negative_near_equal_amplitudes(self):
        for offset in np.geomspace(1e-13, 1e-1, 2000):
            assert complexity_from_coeff(1.0 + float(offset)).complexity >= 0.0
            assert complexity_from_coeff(1.0 - float(offset)).complexity >= 0.0

    def test_sign_does_not_matter(self):
        assert complexity_from_coeff(-2.0) == complexity_from_coeff(2.0)


class TestCriticalRadius:
    """The radius of maximal complexity."""

    def test_value(self):
        assert critical_r() == pytest.approx(R_STAR, abs=1e-9)

    def test_solves_stationarity_condition(self):
        """atanh(r*) = 2r*/(1 + r*^2)."""
        # Setup
        r = critical_r()

        # Verify
        assert abs(math.atanh(r) - 2.0 * r / (1.0 + r * r)) <= 1e-12

    def test_is_cached(self):
        assert critical_r() is critical_r()


class TestHelpers:
    """Radius clamping, eigenvalues, amplitudes and density matrices."""

    def test_clamp_radius(self):
        assert clamp_radius(0.25) == 0.25
        assert clamp_radius(1.0 + 5e-10) == 1.0

    def test_eigenvalues(self):
        assert eigenvalues_from_r(0.5) == (0.75, 0.25)

    def test_normalized_amplitude(self):
        """The LZ maximum has |1> amplitude 0.93358."""
        assert normalized_amplitude(2.6051) == pytest.approx(0.93358, abs=5e-4)
        assert normalized_amplitude(0.0) == 0.0

    def test_density_matrix_has_unit_trace_and_radius_eigenvalues(self):
        """The eigenvalues of rho are (1 +- r)/2."""
        # Setup
        s, c = 0.3, 0.4

        # Exercise
        rho = density_matrix(s, c)
        eigenvalues = np.sort(np.linalg.eigvalsh(rho))

        # Verify
        assert np.trace(rho) == pytest.approx(1.0)
        assert eigenvalues == pytest.approx([0.25, 0.75])

    def test_density_matrix_sign(self):
        # Exercise
        upper = density_matrix(0.3, 0.4, sign=1)
        lower = density_matrix(0.3, 0.4, sign=-1)

        # Verify
        assert upper + lower == pytest.approx(np.eye(2))

    def test_density_matrix_rejects_bad_sign(self):
        with pytest.raises(DomainError, match="sign"):
            density_matrix(0.3, 0.4, sign=0)

    def test_triple_as_dict(self):
        assert EntropyTriple(1.0, 0.5, 0.5).as_dict() == {
            "shannon": 1.0,
            "renyi2": 0.5,
            "complexity": 0.5,
            "normalized": False,
        }
