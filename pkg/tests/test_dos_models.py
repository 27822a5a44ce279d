#!/usr/bin/env python3
"""
Test Density-of-States Models
"""

import math
import unittest

import numpy as np

from bcs_spin_entanglement.dos_models import DosModel, evaluate
from bcs_spin_entanglement.errors import ParameterDomainError


class TestConstantDos(unittest.TestCase):
    """Energy-independent density of states"""

    def test_value_everywhere(self):
        """A constant density ignores xi, scalar or array"""
        dos = DosModel.constant(2.5)
        self.assertEqual(evaluate(dos, 0.0), 2.5)
        self.assertEqual(evaluate(dos, -1e6), 2.5)
        np.testing.assert_array_equal(evaluate(dos, np.array([-3.0, 7.0])), [2.5, 2.5])

    def test_invalid_density(self):
        """Zero, negative and infinite densities are rejected"""
        for g0 in (0.0, -1.0, math.inf):
            with self.assertRaises(ParameterDomainError):
                DosModel.constant(g0)

    def test_unbounded_domain(self):
        """A constant density covers every shell"""
        dos = DosModel.constant(1.0)
        self.assertEqual(dos.domain(), (-math.inf, math.inf))
        self.assertTrue(dos.is_constant)
        dos.require_domain(-1e9, 1e9)


class TestPowerLawDos(unittest.TestCase):
    """Three-dimensional free-electron density (xi + mu)^(1/2)"""

    def setUp(self):
        self.dos = DosModel.power_law_3d(100.0)

    def test_fermi_surface(self):
        """g(0) = sqrt(mu)"""
        self.assertEqual(evaluate(self.dos, 0.0), 10.0)

    def test_band_bottom(self):
        """The density vanishes at xi = -mu"""
        self.assertEqual(evaluate(self.dos, -100.0), 0.0)

    def test_below_band_bottom(self):
        """Energies under the band bottom are a domain error"""
        with self.assertRaises(ParameterDomainError):
            evaluate(self.dos, -100.5)
        with self.assertRaises(ParameterDomainError):
            evaluate(self.dos, np.array([0.0, -101.0]))

    def test_scale(self):
        """The prefactor multiplies the density"""
        self.assertEqual(evaluate(DosModel.power_law_3d(100.0, scale=2.0), 0.0), 20.0)

    def test_domain(self):
        """The domain starts at -mu; a shell reaching below it fails"""
        self.assertEqual(self.dos.domain(), (-100.0, math.inf))
        self.dos.require_domain(-10.0, 10.0)
        with self.assertRaises(ParameterDomainError):
            DosModel.power_law_3d(5.0).require_domain(-10.0, 10.0)

    def test_invalid_parameters(self):
        """A nonpositive mu or scale is rejected"""
        with self.assertRaises(ParameterDomainError):
            DosModel.power_law_3d(0.0)
        with self.assertRaises(ParameterDomainError):
            DosModel.power_law_3d(100.0, scale=-1.0)


class TestTabulatedDos(unittest.TestCase):
    """Linearly interpolated density tables"""

    def setUp(self):
        self.xis = [-10.0, -2.0, 0.0, 5.0, 10.0]
        self.densities = [0.5, 1.5, 2.0, 1.0, 0.0]
        self.dos = DosModel.tabulated(self.xis, self.densities)

    def test_knots_exact(self):
        """Interpolation reproduces its own knots"""
        for xi, g in zip(self.xis, self.densities):
            self.assertEqual(evaluate(self.dos, xi), g)

    def test_linear_between_knots(self):
        """Values between knots are linear interpolations"""
        self.assertAlmostEqual(evaluate(self.dos, -6.0), 1.0, places=15)
        self.assertAlmostEqual(evaluate(self.dos, 2.5), 1.5, places=15)

    def test_out_of_range_is_error(self):
        """Queries beyond the table fail instead of extrapolating"""
        with self.assertRaises(ParameterDomainError):
            evaluate(self.dos, 10.5)
        with self.assertRaises(ParameterDomainError):
            evaluate(self.dos, -11.0)
        with self.assertRaises(ParameterDomainError):
            self.dos.require_domain(-20.0, 5.0)

    def test_invalid_tables(self):
        """Short, unsorted, negative, ragged or non-finite tables fail"""
        with self.assertRaises(ParameterDomainError):
            DosModel.tabulated([0.0], [1.0])
        with self.assertRaises(ParameterDomainError):
            DosModel.tabulated([0.0, 1.0, 1.0], [1.0, 1.0, 1.0])
        with self.assertRaises(ParameterDomainError):
            DosModel.tabulated([0.0, 1.0], [1.0, -0.1])
        with self.assertRaises(ParameterDomainError):
            DosModel.tabulated([0.0, 1.0], [1.0])
        with self.assertRaises(ParameterDomainError):
            DosModel.tabulated([0.0, math.nan], [1.0, 1.0])

    def test_models_are_immutable(self):
        """Models are frozen"""
        with self.assertRaises(AttributeError):
            self.dos.kind = "constant"

    def test_describe(self):
        """Short descriptions for the config echo"""
        self.assertEqual(self.dos.describe(), "table:5 points")
        self.assertEqual(DosModel.constant(2.0).describe(), "constant:2.0")


if __name__ == "__main__":
    unittest.main()
