"""
Amplitudes Module

BCS coherence factors and the per-orbital entanglement spectrum of the
spin-up reduced state. Every function accepts a scalar or a numpy array of
orbital energies xi (measured from the Fermi energy) and returns the same
shape; scalars come back as plain floats.

All energies are dimensionless multiples of one user-chosen unit.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import xlogy

from .errors import ParameterDomainError
from .grid_utils import validate_grid

logger = logging.getLogger(__name__)

# delta <= debye / 10 and debye <= mu / 10 counts as "delta << debye << mu"
AREA_LAW_RATIO = 10.0


@dataclass(frozen=True)
class ModelParams:
    """
    Model inputs defining the Debye shell.

    Attributes:
        delta (float): Pairing energy; 0 is the normal-metal limit
        debye (float): Debye energy, half-width of the pairing shell
        mu (float): Fermi energy
    """

    delta: float
    debye: float
    mu: float

    def __post_init__(self):
        for name in ("delta", "debye", "mu"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ParameterDomainError(f"{name} must be finite, got {value}")
        if self.delta < 0:
            raise ParameterDomainError(f"delta must be >= 0, got {self.delta}")
        if self.debye <= 0:
            raise ParameterDomainError(f"debye must be > 0, got {self.debye}")
        if self.mu <= 0:
            raise ParameterDomainError(f"mu must be > 0, got {self.mu}")

    @property
    def in_area_law_regime(self):
        """bool: Whether delta << debye << mu holds at the factor-of-10 level."""
        return (self.delta <= self.debye / AREA_LAW_RATIO
                and self.debye <= self.mu / AREA_LAW_RATIO)

    def with_gap(self, delta):
        """Return a copy with a different pairing energy."""
        return replace(self, delta=delta)


@dataclass(frozen=True)
class SpectrumPoint:
    """
    Entanglement-spectrum record of one pair orbital.

    beta_eff is ``math.inf`` outside the Debye shell and at delta = 0.
    """

    xi: float
    u2: float
    v2: float
    entropy: float
    beta_eff: float


def _as_output(value, like):
    """Return a float for scalar input, the array otherwise."""
    if np.ndim(like) == 0:
        return float(value)
    return value


def minority_weight(xi, delta, debye):
    """
    Smaller of |u|^2 and |v|^2 for each orbital, zero outside the shell.

    Evaluated as delta^2 / (2E(E + |xi|)) with E = sqrt(xi^2 + delta^2), the
    cancellation-free form of (1 - |xi|/E) / 2. The interior formula covers
    the closed interval [-debye, debye]; xi = 0 gives exactly 1/2, also for
    delta = 0.

    Args:
        xi: Orbital energies
        delta: Pairing energy, scalar or array broadcastable against xi
        debye (float): Debye energy (``np.inf`` for an unbounded shell)

    Returns:
        numpy.ndarray: Minority weight in [0, 1/2]
    """
    xi = np.asarray(xi, dtype=float)
    delta = np.asarray(delta, dtype=float)
    magnitude = np.abs(xi)
    energy = np.hypot(xi, delta)
    with np.errstate(divide="ignore", invalid="ignore"):
        weight = 0.5 * (delta / energy) * (delta / (energy + magnitude))
    weight = np.where(magnitude == 0.0, 0.5, weight)
    return np.where(magnitude <= debye, weight, 0.0)


def binary_entropy(minority):
    """
    Two-outcome entropy -p ln p - (1-p) ln(1-p) from the smaller probability.

    0 ln 0 is taken as 0; log1p keeps the majority term exact for tiny p.
    """
    minority = np.asarray(minority, dtype=float)
    return -xlogy(minority, minority) - (1.0 - minority) * np.log1p(-minority)


def pair_weights(xi, delta, debye):
    """
    Return (|u|^2, |v|^2) arrays for the given gap and shell.

    The minority weight is computed directly and the majority as 1 minus it,
    so u2 + v2 == 1 and v2(-xi) == u2(xi) hold bit for bit.
    """
    xi = np.asarray(xi, dtype=float)
    minority = minority_weight(xi, delta, debye)
    majority = 1.0 - minority
    above = xi > 0
    u2 = np.where(above, majority, minority)
    v2 = np.where(above, minority, majority)
    return u2, v2


def pair_variance(xi, delta, debye):
    """
    Per-orbital number variance |u|^2 |v|^2.

    Uses delta^2 / (4(xi^2 + delta^2)) inside the shell; 1/4 at xi = 0 and
    0 outside.
    """
    xi = np.asarray(xi, dtype=float)
    delta = np.asarray(delta, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = delta / np.hypot(xi, delta)
        variance = 0.25 * ratio * ratio
    variance = np.where(xi == 0.0, 0.25, variance)
    return np.where(np.abs(xi) <= debye, variance, 0.0)


def occupation_probability(xi, params):
    """
    Probability |v(xi)|^2 that the pair orbital at energy xi is occupied.

    Args:
        xi: Orbital energy or array of energies
        params (ModelParams): Model parameters

    Returns:
        float or numpy.ndarray: 1/2 (1 - xi / sqrt(xi^2 + delta^2)) inside the
        shell, 1 below it and 0 above it; a step function when delta = 0
    """
    _, v2 = pair_weights(xi, params.delta, params.debye)
    return _as_output(v2, xi)


def coherence_factors(xi, params):
    """Return (|u|^2, |v|^2) as floats or arrays matching xi."""
    u2, v2 = pair_weights(xi, params.delta, params.debye)
    return _as_output(u2, xi), _as_output(v2, xi)


def orbital_entropy(xi, params):
    """Entanglement entropy S(xi) of one pair orbital, in nats."""
    minority = minority_weight(xi, params.delta, params.debye)
    return _as_output(binary_entropy(minority), xi)


def orbital_variance(xi, params):
    """Spin-up number variance |u|^2 |v|^2 of one pair orbital."""
    return _as_output(pair_variance(xi, params.delta, params.debye), xi)


def _beta_column(xi, params):
    # thermal builds on this module, so import at call time
    from .thermal import beta_eff

    beta = np.full(np.shape(xi), math.inf)
    if params.delta > 0:
        inside = np.abs(xi) <= params.debye
        if np.any(inside):
            beta[inside] = beta_eff(xi[inside], params.delta)
    return beta


def spectrum_point(xi, params):
    """
    Assemble the spectrum record {xi, u2, v2, S, beta_eff} of one orbital.

    Args:
        xi (float): Orbital energy
        params (ModelParams): Model parameters

    Returns:
        SpectrumPoint: The orbital's record
    """
    return spectrum_grid([xi], params)[0]


def spectrum_grid(grid, params):
    """
    Evaluate the entanglement spectrum on a strictly increasing grid.

    Values at +-debye are the raw piecewise ones; no smoothing is applied.

    Args:
        grid: Strictly increasing orbital energies
        params (ModelParams): Model parameters

    Returns:
        list of SpectrumPoint: One record per grid node

    Raises:
        GridError: If the grid is empty, non-finite or not strictly increasing
    """
    xi = validate_grid(grid)
    u2, v2 = pair_weights(xi, params.delta, params.debye)
    entropy = binary_entropy(minority_weight(xi, params.delta, params.debye))
    beta = _beta_column(xi, params)
    logger.debug("Spectrum evaluated on %d nodes", xi.size)
    return [
        SpectrumPoint(float(x), float(u), float(v), float(s), float(b))
        for x, u, v, s, b in zip(xi, u2, v2, entropy, beta)
    ]
