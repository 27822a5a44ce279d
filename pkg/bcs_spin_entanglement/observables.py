"""
Observables Module

Integrated ground-state observables of the spin-partitioned BCS state:
the total spin entanglement entropy as a discrete orbital sum and as a
density-of-states weighted integral over the Debye shell, the closed-form
area law pi g(0) delta, spin-up and total number variances, the MEP obtained
from the entropy, and support for a slowly varying gap delta(xi).

The integrals always run over the finite shell so that finite-debye
corrections stay visible; the unbounded approximation is available
separately through :func:`area_law_quadrature`.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.integrate import quad

from .amplitudes import (
    binary_entropy,
    minority_weight,
    orbital_entropy,
    orbital_variance,
    pair_variance,
)
from .dos_models import evaluate
from .errors import ParameterDomainError, QuadratureError
from .grid_utils import validate_grid
from .thermal import canonical_temperatures, fermi_occupation

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-10
EVALUATION_BUDGET = 10 ** 6
# QUADPACK's 21-point Gauss-Kronrod rule per subinterval
KRONROD_NODES = 21
# keeps wide panels from failing on round-off at large |integral|
RELATIVE_FLOOR = 1e-12
# only ier=2 is accepted, and only while the error stays near the request;
# ier=4 also mentions round-off but means the extrapolation diverged
ROUNDOFF_MESSAGE = "The occurrence of roundoff error"
ROUNDOFF_MARGIN = 100.0

SLOWLY_VARYING_TOLERANCE = 0.1
SLOWLY_VARYING_WINDOW = 3.0


@dataclass(frozen=True)
class GapProfile:
    """
    Pairing energy as a function of orbital energy.

    Attributes:
        kind (str): "constant" or "function_of_xi"
        delta0 (float): Gap at the Fermi surface, > 0
        profile (callable, optional): xi -> delta(xi) >= 0 for function_of_xi
    """

    kind: str
    delta0: float
    profile: Optional[Callable] = None

    @classmethod
    def constant(cls, delta0):
        if not (math.isfinite(delta0) and delta0 > 0):
            raise ParameterDomainError(f"delta0 must be finite and > 0, got {delta0}")
        return cls(kind="constant", delta0=float(delta0))

    @classmethod
    def from_function(cls, profile):
        """Wrap a callable xi -> delta(xi); delta0 is taken as profile(0)."""
        delta0 = float(profile(0.0))
        if not (math.isfinite(delta0) and delta0 > 0):
            raise ParameterDomainError(f"delta(0) must be finite and > 0, got {delta0}")
        return cls(kind="function_of_xi", delta0=delta0, profile=profile)

    @classmethod
    def tabulated(cls, xis, deltas):
        """Linearly interpolated (xi, delta) table; queries outside it fail."""
        xs = validate_grid(xis)
        ds = np.asarray(deltas, dtype=float).ravel()
        if xs.size < 2 or ds.size != xs.size:
            raise ParameterDomainError("A gap table needs at least 2 matching samples")
        if np.any(ds < 0) or not np.all(np.isfinite(ds)):
            raise ParameterDomainError("Gap table values must be finite and >= 0")
        low, high = float(xs[0]), float(xs[-1])

        def profile(xi):
            if np.any(np.asarray(xi) < low) or np.any(np.asarray(xi) > high):
                raise ParameterDomainError(
                    f"Gap table queried outside its range [{low}, {high}]")
            return np.interp(xi, xs, ds)

        return cls.from_function(profile)

    def at(self, xi):
        """Gap at xi (scalar or array)."""
        if self.kind == "constant":
            return self.delta0
        value = self.profile(xi)
        if np.any(np.asarray(value) < 0):
            raise ParameterDomainError("Gap profile returned a negative value")
        return value

    def is_slowly_varying(self, tolerance=SLOWLY_VARYING_TOLERANCE,
                          window=SLOWLY_VARYING_WINDOW, samples=601):
        """
        Whether |delta(xi) - delta(0)| / delta(0) <= tolerance for |xi| <= window * delta(0).
        """
        if self.kind == "constant":
            return True
        xs = np.linspace(-window * self.delta0, window * self.delta0, samples)
        values = np.asarray([self.at(x) for x in xs], dtype=float)
        return bool(np.max(np.abs(values - self.delta0)) / self.delta0 <= tolerance)


@dataclass(frozen=True)
class IntegralResult:
    """Quadrature value with the integrator's absolute error estimate."""

    value: float
    error_estimate: float
    evaluations: int = 0


@dataclass(frozen=True)
class VarianceResult:
    """Spin-up and total number variances."""

    sigma_up_sq: float
    sigma_total_sq: float
    error_estimate: float


@dataclass(frozen=True)
class ObservablesReport:
    """All integrated observables at one parameter point."""

    entropy_total: float
    entropy_area_law: float
    variance_up: float
    variance_total: float
    mep: float
    quadrature_error_estimate: float

    @property
    def relative_gap(self):
        if not self.entropy_area_law:
            return math.nan
        return abs(self.entropy_total - self.entropy_area_law) / self.entropy_area_law

    @property
    def entropy_ratio(self):
        # both vanish in the normal-metal limit
        if not self.variance_total:
            return math.nan
        return self.entropy_total / self.variance_total


@dataclass(frozen=True)
class WeightedPoint:
    xi: float
    density: float
    entropy: float
    weighted: float


def breakpoints(debye, delta0):
    """
    Panel edges for the shell integral.

    Splits at 0, +-delta0 and each further decade +-10^k delta0 inside the
    shell, where the integrand changes from flat to its power-law tail.
    """
    edges = {-debye, 0.0, debye}
    knee = delta0
    while knee < debye:
        edges.update((knee, -knee))
        knee *= 10.0
    return sorted(edges)


def integrate_panels(integrand, edges, tolerance=DEFAULT_TOLERANCE,
                     max_evaluations=EVALUATION_BUDGET):
    """
    Adaptive Gauss-Kronrod quadrature over consecutive panels.

    Panels are integrated one after another and summed in a fixed order, so
    results are bit-reproducible. A round-off report from the integrator is
    logged and the estimate kept when its error is within ROUNDOFF_MARGIN of
    the requested accuracy; any other failure, or exhausting the evaluation
    budget, raises.

    Args:
        integrand (callable): Scalar function of xi
        edges (list): Sorted panel edges, may start/end at +-inf
        tolerance (float): Absolute tolerance for the whole integral
        max_evaluations (int): Integrand evaluation budget

    Returns:
        IntegralResult: Sum of the panel integrals

    Raises:
        QuadratureError: On non-convergence, carrying the partial result
    """
    if not tolerance > 0:
        raise ParameterDomainError(f"tolerance must be > 0, got {tolerance}")
    panels = [(a, b) for a, b in zip(edges[:-1], edges[1:]) if b > a]
    panel_tolerance = tolerance / max(len(panels), 1)
    limit = max(50, max_evaluations // (KRONROD_NODES * max(len(panels), 1)))
    total = 0.0
    error = 0.0
    evaluations = 0
    for lower, upper in panels:
        result = quad(integrand, lower, upper, epsabs=panel_tolerance,
                      epsrel=RELATIVE_FLOOR, limit=limit, full_output=1)
        value, abserr, info = result[0], result[1], result[2]
        total += value
        error += abserr
        evaluations += info["neval"]
        if len(result) > 3:
            # QUADPACK appends its message only when ier > 0
            message = str(result[3])
            target = max(panel_tolerance, RELATIVE_FLOOR * abs(value))
            if (message.startswith(ROUNDOFF_MESSAGE)
                    and abserr <= ROUNDOFF_MARGIN * target):
                logger.warning("Quadrature on [%g, %g] limited by round-off "
                               "(error %.3g against %.3g requested)",
                               lower, upper, abserr, target)
            else:
                raise QuadratureError(
                    f"Quadrature on [{lower}, {upper}] failed: {message}",
                    partial_result=total, error_estimate=error,
                    evaluations=evaluations)
        if evaluations > max_evaluations:
            raise QuadratureError(
                f"Quadrature exceeded its budget of {max_evaluations} evaluations",
                partial_result=total, error_estimate=error, evaluations=evaluations)
    logger.debug("Integrated %d panels with %d evaluations, error %.3g",
                 len(panels), evaluations, error)
    return IntegralResult(total, error, evaluations)


def _shell_integral(kernel, dos, params, gap, tolerance, max_evaluations):
    """Integrate kernel(xi, delta(xi)) * g(xi) over [-debye, debye]."""
    debye = params.debye
    dos.require_domain(-debye, debye)
    edges = breakpoints(debye, gap.delta0)

    if dos.is_constant:
        # a constant density factors out; tolerance then applies per unit density
        def integrand(xi):
            return float(kernel(xi, gap.at(xi)))
        result = integrate_panels(integrand, edges, tolerance, max_evaluations)
        return IntegralResult(dos.g0 * result.value, dos.g0 * result.error_estimate,
                              result.evaluations)

    def weighted(xi):
        return float(kernel(xi, gap.at(xi)) * evaluate(dos, xi))
    return integrate_panels(weighted, edges, tolerance, max_evaluations)


def _resolve_gap(params, gap):
    if gap is None:
        return GapProfile.constant(params.delta)
    window = min(SLOWLY_VARYING_WINDOW, params.debye / gap.delta0)
    if not gap.is_slowly_varying(window=window):
        logger.warning("Gap profile varies by more than %g of delta(0) within %g delta(0); "
                       "the local-gap approximation is not controlled",
                       SLOWLY_VARYING_TOLERANCE, window)
    return gap


def entropy_discrete(orbitals, params):
    """
    Total spin entanglement entropy of a finite set of pair orbitals.

    Orbitals outside the Debye shell contribute exactly zero.

    Args:
        orbitals: Orbital energies
        params (ModelParams): Model parameters

    Returns:
        float: Entropy in nats
    """
    xs = np.asarray(orbitals, dtype=float).ravel()
    if xs.size == 0:
        return 0.0
    return float(np.sum(orbital_entropy(xs, params)))


def variance_discrete(orbitals, params):
    """Spin-up number variance sum |u|^2 |v|^2 over a finite set of orbitals."""
    xs = np.asarray(orbitals, dtype=float).ravel()
    if xs.size == 0:
        return 0.0
    return float(np.sum(orbital_variance(xs, params)))


def entropy_integral(dos, params, gap=None, tolerance=DEFAULT_TOLERANCE,
                     max_evaluations=EVALUATION_BUDGET):
    """
    Thermodynamic-limit spin entanglement entropy over the Debye shell.

    Integrates S(xi; delta(xi)) g(xi) on [-debye, debye].

    Args:
        dos (DosModel): Density of states covering the shell
        params (ModelParams): Model parameters (debye, and delta when gap is None)
        gap (GapProfile, optional): Gap profile; constant params.delta by default
        tolerance (float): Requested absolute tolerance
        max_evaluations (int): Integrand evaluation budget

    Returns:
        IntegralResult: Entropy in nats and the error estimate

    Raises:
        ParameterDomainError: If the DOS does not cover the shell
        QuadratureError: If the quadrature does not converge
    """
    if gap is None and params.delta == 0:
        logger.debug("delta = 0: normal-metal state carries no spin entanglement")
        return IntegralResult(0.0, 0.0, 0)
    gap = _resolve_gap(params, gap)

    def kernel(xi, delta):
        return binary_entropy(minority_weight(xi, delta, params.debye))

    return _shell_integral(kernel, dos, params, gap, tolerance, max_evaluations)


def entropy_area_law(g0, delta0):
    """Closed-form area law pi g(0) delta for the spin entanglement entropy."""
    if g0 < 0 or delta0 < 0:
        raise ParameterDomainError("g0 and delta0 must be non-negative")
    return math.pi * g0 * delta0


def variance_area_law(g0, delta0):
    """Closed-form spin-up variance pi g(0) delta / 4 of the unbounded shell."""
    return entropy_area_law(g0, delta0) / 4.0


def variance_integral(dos, params, gap=None, tolerance=DEFAULT_TOLERANCE,
                      max_evaluations=EVALUATION_BUDGET):
    """
    Spin-up and total number variances over the Debye shell.

    sigma_up^2 is the integral of |u|^2 |v|^2 g over the shell and the total
    variance is defined as 4 sigma_up^2. For constant g and delta this equals
    (g0 delta / 2) arctan(debye / delta).

    Returns:
        VarianceResult: Both variances and the error estimate
    """
    if gap is None and params.delta == 0:
        return VarianceResult(0.0, 0.0, 0.0)
    gap = _resolve_gap(params, gap)

    def kernel(xi, delta):
        return pair_variance(xi, delta, params.debye)

    result = _shell_integral(kernel, dos, params, gap, tolerance, max_evaluations)
    return VarianceResult(result.value, 4.0 * result.value, result.error_estimate)


def variance_closed_form(g0, params):
    """(g0 delta / 2) arctan(debye / delta) for constant g and delta."""
    return 0.5 * g0 * params.delta * math.atan2(params.debye, params.delta)


def entropy_fluctuation_ratio(dos, params, tolerance=DEFAULT_TOLERANCE):
    """
    Entropy divided by total number variance for a constant gap.

    Tends to 1 as debye / delta grows; at finite shells it stays below 1
    because the entropy tail (ln xi / xi^2) outweighs the variance tail.
    """
    entropy = entropy_integral(dos, params, tolerance=tolerance)
    variance = variance_integral(dos, params, tolerance=tolerance)
    if variance.sigma_total_sq == 0:
        raise ParameterDomainError("Ratio undefined for a vanishing variance (delta = 0)")
    return entropy.value / variance.sigma_total_sq


def mep_from_entropy(entropy):
    """
    Macrocanonical entanglement of pairing from the spin entropy.

    Inverts S = -2 ln(1 - MEP), giving 1 - exp(-S/2).
    """
    if math.isnan(entropy) or entropy < 0:
        raise ParameterDomainError(f"Entropy must be >= 0, got {entropy}")
    return -math.expm1(-entropy / 2.0)


def weighted_entropy_profile(dos, params, grid):
    """
    DOS-weighted orbital entropy S(xi) g(xi) on a grid.

    Returns:
        list of WeightedPoint: xi, g(xi), S(xi) and their product
    """
    xs = validate_grid(grid)
    density = evaluate(dos, xs)
    entropy = orbital_entropy(xs, params)
    return [
        WeightedPoint(float(x), float(g), float(s), float(s * g))
        for x, g, s in zip(xs, density, entropy)
    ]


def area_law_quadrature(g0, delta0, tolerance=DEFAULT_TOLERANCE):
    """
    Entropy integral with g = g(0) and limits extended to +-infinity.

    This is the approximation behind the area law; it reproduces
    pi g0 delta0 and serves as a numerical check of it.
    """
    if not (g0 > 0 and delta0 > 0):
        raise ParameterDomainError("g0 and delta0 must be > 0")

    def integrand(xi):
        return float(binary_entropy(minority_weight(xi, delta0, math.inf)))

    edges = [-math.inf, -delta0, 0.0, delta0, math.inf]
    result = integrate_panels(integrand, edges, tolerance)
    return IntegralResult(g0 * result.value, g0 * result.error_estimate,
                          result.evaluations)


def canonical_entropy_integral(dos, params, tolerance=DEFAULT_TOLERANCE):
    """
    Entropy of the canonical approximation at beta_eff0 over the Debye shell.

    Each orbital is given the binary entropy of the Fermi function at the
    constant reciprocal temperature. For constant g and a wide shell the
    result tends to pi^2 g0 / (3 beta_eff0).
    """
    beta0 = canonical_temperatures(params.delta).beta_eff_0
    gap = GapProfile.constant(params.delta)

    def kernel(xi, delta):
        # minority occupation of a Fermi level at |xi|
        return binary_entropy(fermi_occupation(abs(xi), beta0))

    return _shell_integral(kernel, dos, params, gap, tolerance, EVALUATION_BUDGET)


def observables_report(dos, params, tolerance=DEFAULT_TOLERANCE):
    """
    Evaluate every integrated observable at one parameter point.

    Returns:
        ObservablesReport: Entropy, area law, variances, MEP and error bound
    """
    entropy = entropy_integral(dos, params, tolerance=tolerance)
    variance = variance_integral(dos, params, tolerance=tolerance)
    return ObservablesReport(
        entropy_total=entropy.value,
        entropy_area_law=entropy_area_law(evaluate(dos, 0.0), params.delta),
        variance_up=variance.sigma_up_sq,
        variance_total=variance.sigma_total_sq,
        mep=mep_from_entropy(entropy.value),
        quadrature_error_estimate=entropy.error_estimate,
    )
