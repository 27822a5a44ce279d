#!/usr/bin/env python3
"""
Test the Dense Small-System Oracle

Builds BCS states of a few pair orbitals, traces out spin down and compares
the reduced state with the analytic spectrum, entropy and variance.
"""

import math
import unittest
from dataclasses import replace

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from bcs_spin_entanglement.amplitudes import ModelParams, coherence_factors
from bcs_spin_entanglement.errors import CapacityError, ParameterDomainError
from bcs_spin_entanglement.observables import entropy_discrete, variance_discrete
from bcs_spin_entanglement.oracle import (
    MAX_MODES,
    OracleState,
    build_state,
    oracle_entropy,
    oracle_spectrum,
    oracle_variance,
    pair_structure_violation,
    partial_trace_down,
    product_spectrum,
    run_oracle_checks,
    state_invariants,
)
from bcs_spin_entanglement.thermal import gge_density_matrix

PARAMS = ModelParams(1.0, 10.0, 100.0)


class TestBuildState(unittest.TestCase):
    """Dense amplitude vectors"""

    def test_single_mode_at_fermi_surface(self):
        """(|00> + |11>)/sqrt 2 at xi = 0"""
        state = build_state([0.0], PARAMS)
        expected = np.zeros(4)
        expected[0] = expected[3] = 1.0 / math.sqrt(2.0)
        np.testing.assert_allclose(state.amplitudes, expected, rtol=0, atol=1e-15)

    def test_single_mode_outside_shell(self):
        """Above the shell only the empty pair has weight"""
        state = build_state([50.0], PARAMS)
        np.testing.assert_array_equal(np.abs(state.amplitudes), [1.0, 0.0, 0.0, 0.0])

    def test_two_mode_product_structure(self):
        """Two modes give four paired amplitudes with product weights"""
        state = build_state([1.0, -1.0], PARAMS)
        probabilities = np.abs(state.amplitudes) ** 2
        nonzero = np.sort(probabilities[probabilities > 0])
        self.assertEqual(nonzero.size, 4)
        np.testing.assert_allclose(nonzero, product_spectrum([1.0, -1.0], PARAMS),
                                   rtol=0, atol=1e-15)
        self.assertAlmostEqual(float(np.linalg.norm(state.amplitudes)), 1.0, places=14)
        self.assertEqual(pair_structure_violation(state), 0.0)

    def test_capacity(self):
        """Zero modes and more than 8 are rejected"""
        with self.assertRaises(CapacityError):
            build_state([], PARAMS)
        with self.assertRaises(CapacityError):
            build_state(np.zeros(MAX_MODES + 1), PARAMS)

    def test_unknown_coupling(self):
        """Unknown couplings are rejected"""
        with self.assertRaises(ParameterDomainError):
            build_state([0.0], PARAMS, coupling="triplet")


class TestReducedState(unittest.TestCase):
    """Partial trace over the spin-down occupancies"""

    def test_single_mode_traces(self):
        """One mode traces to diag(u^2, v^2)"""
        rho = partial_trace_down(build_state([0.0], PARAMS))
        np.testing.assert_allclose(rho, np.diag([0.5, 0.5]), rtol=0, atol=1e-15)
        rho = partial_trace_down(build_state([1.0], PARAMS))
        np.testing.assert_allclose(np.diag(rho), [0.853553, 0.146447], atol=1e-6)

    def test_offdiagonal_vanishes(self):
        """The reduced state is diagonal, real and normalized"""
        rng = np.random.default_rng(7)
        state = build_state(rng.uniform(-10.0, 10.0, size=5), PARAMS)
        rho = state.rho_up
        offdiagonal = rho - np.diag(np.diag(rho))
        self.assertLess(float(np.max(np.abs(offdiagonal))), 1e-14)
        self.assertAlmostEqual(float(np.trace(rho).real), 1.0, places=13)
        self.assertEqual(float(np.max(np.abs(rho.imag))), 0.0)

    def test_imaginary_coherence_is_kept(self):
        """A pure spin-up superposition with an imaginary phase stays pure"""
        amplitudes = np.zeros(4, dtype=complex)
        # digit 2 n_up + n_down: up empty (0) and up occupied (2), down empty
        amplitudes[0] = 1.0 / math.sqrt(2.0)
        amplitudes[2] = 1j / math.sqrt(2.0)
        blank = OracleState(1, (0.0,), amplitudes, np.zeros((2, 2), dtype=complex))
        rho = partial_trace_down(blank)
        expected = np.array([[0.5, -0.5j], [0.5j, 0.5]])
        np.testing.assert_allclose(rho, expected, rtol=0, atol=1e-15)
        state = replace(blank, rho_up=rho)
        self.assertAlmostEqual(oracle_entropy(state), 0.0, places=12)
        deviations = {name: deviation for name, deviation, _ in state_invariants(state, PARAMS)}
        self.assertAlmostEqual(deviations["diagonality"], 0.5, places=15)
        self.assertAlmostEqual(deviations["imaginary_part"], 0.5, places=15)
        self.assertLess(deviations["hermitian"], 1e-15)

    def test_single_mode_observables(self):
        """ln 2 and 1/4 for one mode at the Fermi surface"""
        state = build_state([0.0], PARAMS)
        self.assertAlmostEqual(oracle_entropy(state), math.log(2.0), places=14)
        self.assertAlmostEqual(oracle_variance(state), 0.25, places=15)

    def test_two_modes_at_gap(self):
        """Two modes at +-delta carry twice S(delta)"""
        xis = [1.0, -1.0]
        state = build_state(xis, PARAMS)
        self.assertAlmostEqual(oracle_entropy(state), entropy_discrete(xis, PARAMS), places=12)
        self.assertAlmostEqual(oracle_entropy(state), 0.833, delta=1e-3)
        self.assertAlmostEqual(oracle_variance(state), 0.25, places=12)

    def test_spectrum_is_product_of_weights(self):
        """Eigenvalues are products of the per-mode weights"""
        xis = [-3.0, 0.4, 2.2]
        eigenvalues = oracle_spectrum(build_state(xis, PARAMS))
        np.testing.assert_allclose(eigenvalues, product_spectrum(xis, PARAMS),
                                   rtol=0, atol=1e-12)

    def test_matches_generalized_gibbs(self):
        """The traced state equals the Gibbs-form density operator"""
        xis = [-6.0, -0.5, 1.5, 9.0]
        state = build_state(xis, PARAMS)
        np.testing.assert_allclose(state.rho_up, gge_density_matrix(xis, PARAMS),
                                   rtol=0, atol=1e-12)

    def test_spin_flip_coupling_same_reduced_state(self):
        """Flipping the spin-down component leaves the reduced state unchanged"""
        xis = [-2.0, 0.7, 4.0]
        pairing = build_state(xis, PARAMS)
        flipped = build_state(xis, PARAMS, coupling="spin_flip")
        self.assertEqual(pair_structure_violation(flipped), 0.0)
        np.testing.assert_allclose(flipped.rho_up, pairing.rho_up, rtol=0, atol=1e-15)

    def test_phases_do_not_matter(self):
        """Phases on v drop out of the reduced state"""
        xis = [-2.0, 0.7, 4.0]
        plain = build_state(xis, PARAMS)
        phased = build_state(xis, PARAMS, phases=[0.3, 2.1, 5.0])
        np.testing.assert_allclose(phased.rho_up, plain.rho_up, rtol=0, atol=1e-14)

    @given(st.lists(st.floats(min_value=-10.0, max_value=10.0, allow_nan=False),
                    min_size=1, max_size=4),
           st.floats(min_value=0.1, max_value=3.0, allow_nan=False))
    @settings(max_examples=60, deadline=None)
    def test_oracle_matches_analytic_sums(self, xis, delta):
        """Dense entropy and variance equal the orbital sums"""
        params = ModelParams(delta, 10.0, 100.0)
        state = build_state(xis, params)
        self.assertAlmostEqual(oracle_entropy(state), entropy_discrete(xis, params), places=12)
        self.assertAlmostEqual(oracle_variance(state), variance_discrete(xis, params), places=12)


class TestOracleChecks(unittest.TestCase):
    """The full seeded invariant suite"""

    def test_default_suite_passes(self):
        """Every invariant passes for N = 1..6"""
        verdict = run_oracle_checks(PARAMS, seed=0, max_modes=6, trials=20)
        self.assertTrue(verdict.passed, [c.invariant for c in verdict.failures])
        names = {check.invariant for check in verdict.checks}
        for expected in ("entropy_equivalence", "variance_equivalence", "diagonality",
                         "hermitian", "imaginary_part",
                         "product_spectrum", "gge_density", "spin_flip_equivalence",
                         "phase_independence", "additivity"):
            self.assertIn(expected, names)
        self.assertEqual({check.n_modes for check in verdict.checks}, set(range(1, 7)))

    def test_normal_metal_suite_passes(self):
        """The suite passes at delta = 0 without the Gibbs comparison"""
        verdict = run_oracle_checks(ModelParams(0.0, 10.0, 100.0), max_modes=3, trials=5)
        self.assertTrue(verdict.passed)
        self.assertNotIn("gge_density", {check.invariant for check in verdict.checks})

    def test_same_seed_same_verdict(self):
        """A fixed seed reproduces the verdict"""
        first = run_oracle_checks(PARAMS, seed=3, max_modes=3, trials=4)
        second = run_oracle_checks(PARAMS, seed=3, max_modes=3, trials=4)
        self.assertEqual(first, second)

    def test_zero_tolerance_fails(self):
        """A corrupted tolerance names the failing invariants"""
        verdict = run_oracle_checks(PARAMS, max_modes=2, trials=2, tolerance=0.0)
        self.assertFalse(verdict.passed)
        self.assertIn("diagonality", {check.invariant for check in verdict.failures})

    def test_capacity(self):
        """More than 8 modes is a capacity error"""
        with self.assertRaises(CapacityError):
            run_oracle_checks(PARAMS, max_modes=9)

    def test_trials_must_be_positive(self):
        """At least one trial per mode count"""
        with self.assertRaises(ParameterDomainError):
            run_oracle_checks(PARAMS, max_modes=2, trials=0)


if __name__ == "__main__":
    unittest.main()
