"""
DOS Models Module

Density-of-states models g(xi) used to weight per-orbital quantities in the
thermodynamic-limit integrals. Models are immutable once built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterDomainError

KINDS = ("constant", "power_law_3d", "tabulated")


@dataclass(frozen=True)
class DosModel:
    """
    A density of states.

    Build instances with :meth:`constant`, :meth:`power_law_3d` or
    :meth:`tabulated` rather than directly.

    Attributes:
        kind (str): One of "constant", "power_law_3d", "tabulated"
        g0 (float): Constant density (constant kind)
        mu (float): Fermi energy, band bottom at xi = -mu (power_law_3d kind)
        scale (float): Prefactor of (xi + mu)^(1/2) (power_law_3d kind)
        table_xi (tuple): Strictly increasing sample energies (tabulated kind)
        table_g (tuple): Densities at table_xi (tabulated kind)
    """

    kind: str
    g0: float = 0.0
    mu: float = 0.0
    scale: float = 1.0
    table_xi: tuple = ()
    table_g: tuple = ()

    @classmethod
    def constant(cls, g0):
        """Constant density g(xi) = g0 > 0."""
        if not (math.isfinite(g0) and g0 > 0):
            raise ParameterDomainError(f"g0 must be finite and > 0, got {g0}")
        return cls(kind="constant", g0=float(g0))

    @classmethod
    def power_law_3d(cls, mu, scale=1.0):
        """Three-dimensional free-electron density scale * (xi + mu)^(1/2)."""
        if not (math.isfinite(mu) and mu > 0):
            raise ParameterDomainError(f"mu must be finite and > 0, got {mu}")
        if not (math.isfinite(scale) and scale > 0):
            raise ParameterDomainError(f"scale must be finite and > 0, got {scale}")
        return cls(kind="power_law_3d", mu=float(mu), scale=float(scale))

    @classmethod
    def tabulated(cls, xis, densities):
        """
        Linearly interpolated table of (xi, g) samples.

        Args:
            xis: At least two strictly increasing energies
            densities: Non-negative densities at those energies
        """
        xs = np.asarray(xis, dtype=float).ravel()
        gs = np.asarray(densities, dtype=float).ravel()
        if xs.size < 2 or xs.size != gs.size:
            raise ParameterDomainError(
                "A DOS table needs at least 2 (xi, g) pairs of equal length")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(gs))):
            raise ParameterDomainError("DOS table contains non-finite values")
        if np.any(np.diff(xs) <= 0):
            raise ParameterDomainError("DOS table energies must be strictly increasing")
        if np.any(gs < 0):
            raise ParameterDomainError("DOS table densities must be non-negative")
        return cls(kind="tabulated", table_xi=tuple(xs.tolist()),
                   table_g=tuple(gs.tolist()))

    @property
    def is_constant(self):
        return self.kind == "constant"

    def domain(self):
        """Return the (lower, upper) energy range on which g is defined."""
        if self.kind == "constant":
            return -math.inf, math.inf
        if self.kind == "power_law_3d":
            return -self.mu, math.inf
        return self.table_xi[0], self.table_xi[-1]

    def require_domain(self, lower, upper):
        """Raise ParameterDomainError unless [lower, upper] lies in the domain."""
        low, high = self.domain()
        if lower < low or upper > high:
            raise ParameterDomainError(
                f"{self.kind} DOS is defined on [{low}, {high}], "
                f"not on [{lower}, {upper}]")

    def describe(self):
        """Short selector-style description used in config echoes."""
        if self.kind == "constant":
            return f"constant:{self.g0!r}"
        if self.kind == "power_law_3d":
            return f"power-law-3d:{self.scale!r}"
        return f"table:{len(self.table_xi)} points"


def evaluate(dos, xi):
    """
    Density of states at xi.

    Args:
        dos (DosModel): The model
        xi: Energy or array of energies

    Returns:
        float or numpy.ndarray: Non-negative density

    Raises:
        ParameterDomainError: If xi lies outside the model's domain
    """
    xs = np.asarray(xi, dtype=float)
    if np.any(np.isnan(xs)):
        raise ParameterDomainError("DOS queried at NaN")
    if dos.kind == "constant":
        density = np.full(xs.shape, dos.g0)
    elif dos.kind == "power_law_3d":
        if np.any(xs < -dos.mu):
            raise ParameterDomainError(
                f"power-law DOS is undefined below the band bottom xi = {-dos.mu}")
        density = dos.scale * np.sqrt(xs + dos.mu)
    elif dos.kind == "tabulated":
        low, high = dos.table_xi[0], dos.table_xi[-1]
        if np.any(xs < low) or np.any(xs > high):
            raise ParameterDomainError(
                f"Tabulated DOS queried outside its range [{low}, {high}]")
        density = np.interp(xs, dos.table_xi, dos.table_g)
    else:
        raise ParameterDomainError(f"Unknown DOS kind '{dos.kind}'")
    if np.ndim(xi) == 0:
        return float(density)
    return density
