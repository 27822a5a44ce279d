"""
Thermal Module

Effective thermal descriptions of the spin-up entanglement spectrum: the
orbital-dependent generalized-Gibbs reciprocal temperature beta_eff(xi), the
constant canonical value beta_eff0 fixed at xi = +-delta, and its comparison
with the BCS critical reciprocal temperature.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .amplitudes import occupation_probability
from .errors import ParameterDomainError
from .grid_utils import validate_grid

logger = logging.getLogger(__name__)

EULER_GAMMA = 0.57721566490153286061

# beta_eff0 * delta = 2 acoth(sqrt 2) = ln((sqrt2 + 1) / (sqrt2 - 1))
BETA_EFF0_DELTA = math.log((math.sqrt(2.0) + 1.0) / (math.sqrt(2.0) - 1.0))

# beta_c * delta = pi exp(-gamma)
BETA_C_DELTA = math.pi * math.exp(-EULER_GAMMA)

# below this |xi|/delta the quadratic Taylor form replaces the log form
SMALL_RATIO = 1e-7


@dataclass(frozen=True)
class EffectiveTemperatures:
    """Canonical and critical reciprocal temperatures for one gap."""

    beta_eff_0: float
    beta_c: float
    relative_gap: float


@dataclass(frozen=True)
class ResidualPoint:
    """Exact occupancy, canonical Fermi occupancy and their difference."""

    xi: float
    occupation: float
    fermi: float
    residual: float


def _require_gap(delta):
    if not (math.isfinite(delta) and delta > 0):
        raise ParameterDomainError(
            f"The thermal map needs a finite delta > 0, got {delta}")


def beta_eff(xi, delta):
    """
    Orbital-dependent effective reciprocal temperature.

    (2/xi) acoth(sqrt(xi^2 + delta^2) / xi), where
    acoth(x) = 1/2 ln((x + 1)/(x - 1)) reduces to asinh(|xi|/delta). Below
    |xi|/delta = 1e-7 the limit 2/delta with its quadratic correction
    is returned instead.

    Args:
        xi: Orbital energy or array of energies
        delta (float): Pairing energy, > 0

    Returns:
        float or numpy.ndarray: beta_eff > 0, even in xi

    Raises:
        ParameterDomainError: If delta <= 0
    """
    _require_gap(delta)
    xi_arr = np.asarray(xi, dtype=float)
    ratio = np.abs(xi_arr) / delta
    with np.errstate(divide="ignore", invalid="ignore"):
        exact = 2.0 * np.arcsinh(ratio) / (ratio * delta)
    series = (2.0 / delta) * (1.0 - ratio * ratio / 6.0)
    beta = np.where(ratio < SMALL_RATIO, series, exact)
    if np.ndim(xi) == 0:
        return float(beta)
    return beta


def fermi_occupation(xi, beta):
    """
    Fermi function 1 / (1 + exp(beta * xi)).

    Evaluated through the logistic function, so beta * xi of any size
    returns exactly 0.0 or 1.0 past the underflow threshold instead of
    overflowing.

    Args:
        xi: Orbital energy or array of energies
        beta: Reciprocal temperature (> 0), scalar or array

    Returns:
        float or numpy.ndarray: Occupation probability
    """
    beta_arr = np.asarray(beta, dtype=float)
    if not np.all(beta_arr > 0) or not np.all(np.isfinite(beta_arr)):
        raise ParameterDomainError("beta must be finite and > 0")
    with np.errstate(over="ignore", under="ignore"):
        occupation = expit(-beta_arr * np.asarray(xi, dtype=float))
    if np.ndim(occupation) == 0:
        return float(occupation)
    return occupation


def canonical_temperatures(delta):
    """
    Constant effective and BCS critical reciprocal temperatures.

    Args:
        delta (float): Pairing energy, > 0

    Returns:
        EffectiveTemperatures: beta_eff0, beta_c and |beta_eff0 - beta_c| / beta_c
    """
    _require_gap(delta)
    beta_eff_0 = BETA_EFF0_DELTA / delta
    beta_c = BETA_C_DELTA / delta
    return EffectiveTemperatures(
        beta_eff_0=beta_eff_0,
        beta_c=beta_c,
        relative_gap=abs(beta_eff_0 - beta_c) / beta_c,
    )


def canonical_residual(params, grid):
    """
    Pointwise |v(xi)|^2 minus the canonical Fermi function at beta_eff0.

    The residual vanishes at xi = 0 and, up to rounding, at xi = +-delta.

    Args:
        params (ModelParams): Model parameters with delta > 0
        grid: Strictly increasing orbital energies

    Returns:
        list of ResidualPoint: One record per grid node
    """
    _require_gap(params.delta)
    xi = validate_grid(grid)
    beta0 = canonical_temperatures(params.delta).beta_eff_0
    occupation = occupation_probability(xi, params)
    fermi = fermi_occupation(xi, beta0)
    return [
        ResidualPoint(float(x), float(v), float(f), float(v - f))
        for x, v, f in zip(xi, occupation, fermi)
    ]


def entanglement_energies(xis, params):
    """
    Single-particle entanglement energies beta_eff(xi) * xi = ln(|u|^2/|v|^2).

    Args:
        xis: Orbital energies inside the Debye shell
        params (ModelParams): Model parameters with delta > 0

    Returns:
        numpy.ndarray: One energy per orbital

    Raises:
        ParameterDomainError: For orbitals outside the shell, where the
            reciprocal temperature is infinite
    """
    _require_gap(params.delta)
    xis = np.asarray(xis, dtype=float).ravel()
    if np.any(np.abs(xis) > params.debye):
        raise ParameterDomainError(
            "Orbitals outside the Debye shell have no finite effective temperature")
    return beta_eff(xis, params.delta) * xis


def gge_density_matrix(xis, params):
    """
    Generalized-Gibbs density operator of free spin-up fermions.

    rho_e = exp(-sum_k beta_eff(xi_k) xi_k n_k) / Z on the 2^N occupation basis,
    indexed little-endian (bit k of the row index is n_k). It equals the
    partial-traced spin-up state of the BCS ground state.

    Args:
        xis: Orbital energies inside the Debye shell
        params (ModelParams): Model parameters with delta > 0

    Returns:
        numpy.ndarray: Dense (2^N, 2^N) diagonal density matrix
    """
    energies = entanglement_energies(xis, params)
    n_modes = energies.size
    indices = np.arange(2 ** n_modes)
    occupations = (indices[:, None] >> np.arange(n_modes)) & 1
    levels = occupations @ energies
    # shift by the ground level so every Boltzmann factor is <= 1
    weights = np.exp(-(levels - levels.min()))
    logger.debug("GGE density matrix built for %d modes", n_modes)
    return np.diag(weights / weights.sum())
