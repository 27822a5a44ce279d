"""
Oracle Module

Brute-force validation of the closed forms. The BCS ground state of N pair
orbitals is built as a dense vector of 4^N amplitudes, the spin-down
occupancies are traced out numerically, and entropy, variance and
spectrum are read off the resulting 2^N x 2^N spin-up density matrix.

Basis ordering: mode-major and little-endian over modes, mode k being base-4
digit k of the amplitude index. Within a mode the spin-up bit comes first,
digit = 2 n_up + n_down. Pair creation operators commute, so the product
state carries no fermionic sign in this ordering.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy.special import xlogy

from .amplitudes import coherence_factors
from .errors import CapacityError, NumericalError, ParameterDomainError
from .observables import entropy_discrete, variance_discrete
from .thermal import gge_density_matrix

logger = logging.getLogger(__name__)

MAX_MODES = 8
COUPLINGS = ("pairing", "spin_flip")

# (empty, occupied) digits of one mode; spin_flip particle-hole transforms spin down
_PAIR_DIGITS = {"pairing": (0, 3), "spin_flip": (1, 2)}

DEFAULT_TOLERANCE = 1e-12
OFFDIAGONAL_TOLERANCE = 1e-14


@dataclass(frozen=True, eq=False)
class OracleState:
    """
    Dense N-mode BCS state and its partial-traced spin-up density matrix.

    Attributes:
        n_modes (int): Number of pair orbitals, 1..8
        xis (tuple): Orbital energies
        amplitudes (numpy.ndarray): 4^N complex amplitudes
        rho_up (numpy.ndarray): Dense complex 2^N x 2^N spin-up density matrix
        coupling (str): "pairing" or "spin_flip"
    """

    n_modes: int
    xis: tuple
    amplitudes: np.ndarray = field(repr=False)
    rho_up: np.ndarray = field(repr=False)
    coupling: str = "pairing"


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one invariant check at one mode count."""

    invariant: str
    n_modes: int
    worst: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class OracleVerdict:
    checks: tuple

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    @property
    def failures(self):
        return [check for check in self.checks if not check.passed]


def _trace_out_down(amplitudes, n_modes):
    # C-order axes run mode N-1 (up, down) ... mode 0 (up, down)
    tensor = amplitudes.reshape((2,) * (2 * n_modes))
    up_axes = list(range(0, 2 * n_modes, 2))
    down_axes = list(range(1, 2 * n_modes, 2))
    matrix = tensor.transpose(up_axes + down_axes).reshape(2 ** n_modes, 2 ** n_modes)
    return matrix @ matrix.conj().T


def build_state(xis, params, coupling="pairing", phases=None):
    """
    Build the dense BCS ground state of the given pair orbitals.

    Args:
        xis: Orbital energies, 1 to 8 of them
        params (ModelParams): Model parameters
        coupling (str): "pairing" for |00>, |11> pairs; "spin_flip" for the
            particle-hole transformed |01>, |10> pairs
        phases: Optional per-mode phases applied to v

    Returns:
        OracleState: Amplitudes and the traced spin-up density matrix

    Raises:
        CapacityError: If the number of orbitals is outside 1..8
    """
    xs = np.asarray(xis, dtype=float).ravel()
    n_modes = xs.size
    if not 1 <= n_modes <= MAX_MODES:
        raise CapacityError(
            f"The dense oracle holds 1 to {MAX_MODES} modes, got {n_modes}")
    if coupling not in COUPLINGS:
        raise ParameterDomainError(f"Unknown coupling '{coupling}'")

    u2, v2 = coherence_factors(xs, params)
    u = np.sqrt(u2).astype(complex)
    v = np.sqrt(v2).astype(complex)
    if phases is not None:
        v = v * np.exp(1j * np.asarray(phases, dtype=float).ravel())

    empty, occupied = _PAIR_DIGITS[coupling]
    factors = []
    for k in reversed(range(n_modes)):
        local = np.zeros(4, dtype=complex)
        local[empty] = u[k]
        local[occupied] = v[k]
        factors.append(local)
    amplitudes = functools.reduce(np.kron, factors)
    return OracleState(n_modes, tuple(xs.tolist()), amplitudes,
                       _trace_out_down(amplitudes, n_modes), coupling)


def partial_trace_down(state):
    """Trace the spin-down occupancies out of the state's density operator."""
    return _trace_out_down(state.amplitudes, state.n_modes)


def oracle_spectrum(state):
    """
    Eigenvalues of the Hermitian spin-up density matrix in ascending order.

    Raises:
        NumericalError: If the symmetric eigensolver fails
    """
    try:
        return scipy.linalg.eigh(state.rho_up, eigvals_only=True)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericalError(f"Eigensolve of the reduced state failed: {exc}") from exc


def oracle_entropy(state):
    """Von Neumann entropy -tr rho_up ln rho_up from the eigenvalues."""
    eigenvalues = np.clip(oracle_spectrum(state), 0.0, None)
    return float(-np.sum(xlogy(eigenvalues, eigenvalues)))


def oracle_variance(state):
    """Spin-up number variance <N_up^2> - <N_up>^2 in the occupancy basis."""
    indices = np.arange(2 ** state.n_modes)
    counts = np.array([bin(i).count("1") for i in indices], dtype=float)
    probabilities = np.diag(state.rho_up).real
    mean = float(probabilities @ counts)
    return float(probabilities @ (counts - mean) ** 2)


def product_spectrum(xis, params):
    """All products of the per-mode weights {|u|^2, |v|^2}, ascending."""
    u2, v2 = coherence_factors(np.asarray(xis, dtype=float).ravel(), params)
    factors = [np.array([a, b]) for a, b in zip(u2, v2)]
    return np.sort(functools.reduce(np.kron, factors))


def pair_structure_violation(state):
    """Largest amplitude on a basis state that breaks the pair structure."""
    digits = np.arange(4 ** state.n_modes)
    allowed = np.ones(digits.size, dtype=bool)
    paired = _PAIR_DIGITS[state.coupling]
    for k in range(state.n_modes):
        digit = (digits >> (2 * k)) & 3
        allowed &= np.isin(digit, paired)
    stray = np.abs(state.amplitudes[~allowed])
    return float(stray.max()) if stray.size else 0.0


def state_invariants(state, params):
    """
    Invariants of one state.

    The reduced matrix is checked as a complex matrix, so imaginary
    coherences count against hermiticity, diagonality and imaginary_part.

    Yields:
        tuple: (name, worst deviation, exact-zero flag)
    """
    rho = state.rho_up
    eigenvalues = oracle_spectrum(state)
    offdiagonal = rho - np.diag(np.diag(rho))
    singles = sum(oracle_entropy(build_state([xi], params)) for xi in state.xis)
    entropy = oracle_entropy(state)
    yield "normalization", abs(np.linalg.norm(state.amplitudes) - 1.0), False
    yield "pair_structure", pair_structure_violation(state), True
    yield "unit_trace", abs(np.trace(rho) - 1.0), False
    yield "hermitian", float(np.max(np.abs(rho - rho.conj().T))), False
    yield "imaginary_part", float(np.max(np.abs(rho.imag))), True
    yield "positive_semidefinite", max(0.0, -float(eigenvalues.min())), False
    yield "diagonality", float(np.max(np.abs(offdiagonal))), True
    yield "entropy_equivalence", abs(entropy - entropy_discrete(state.xis, params)), False
    yield ("variance_equivalence",
           abs(oracle_variance(state) - variance_discrete(state.xis, params)), False)
    yield ("product_spectrum",
           float(np.max(np.abs(eigenvalues - product_spectrum(state.xis, params)))), False)
    yield "additivity", abs(entropy - singles), False
    if params.delta > 0:
        gge = gge_density_matrix(state.xis, params)
        yield "gge_density", float(np.max(np.abs(gge - rho))), False


def run_oracle_checks(params, seed=0, max_modes=6, trials=20,
                      tolerance=DEFAULT_TOLERANCE):
    """
    Run every oracle invariant on seeded random orbitals inside the shell.

    For each N in 1..max_modes, `trials` random orbital lists are drawn from
    [-debye, debye]. Each is checked for the state invariants, for equality
    with the analytic sums, and for equality of the reduced state under the
    spin-flip coupling; one trial per N also randomizes the phases of v.
    A check passes when its worst deviation is strictly below tolerance;
    exact-zero invariants use min(tolerance, 1e-14).

    Args:
        params (ModelParams): Model parameters
        seed (int): Seed of the random generator
        max_modes (int): Largest N to test, at most 8
        trials (int): Random orbital lists per N
        tolerance (float): Tolerance of the comparisons

    Returns:
        OracleVerdict: One CheckResult per invariant and N

    Raises:
        CapacityError: If max_modes is outside 1..8
    """
    if not 1 <= max_modes <= MAX_MODES:
        raise CapacityError(
            f"The dense oracle holds 1 to {MAX_MODES} modes, got {max_modes}")
    if trials < 1:
        raise ParameterDomainError(f"trials must be >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    exact_tolerance = min(tolerance, OFFDIAGONAL_TOLERANCE)
    results = []
    for n_modes in range(1, max_modes + 1):
        worst = {}
        for trial in range(trials):
            xis = rng.uniform(-params.debye, params.debye, size=n_modes)
            state = build_state(xis, params)
            for name, deviation, exact in state_invariants(state, params):
                limit = exact_tolerance if exact else tolerance
                previous = worst.get(name, (0.0, limit))[0]
                worst[name] = (max(previous, float(deviation)), limit)
            flipped = build_state(xis, params, coupling="spin_flip")
            deviation = float(np.max(np.abs(flipped.rho_up - state.rho_up)))
            previous = worst.get("spin_flip_equivalence", (0.0, tolerance))[0]
            worst["spin_flip_equivalence"] = (max(previous, deviation), tolerance)
            if trial == 0:
                phases = rng.uniform(0.0, 2.0 * np.pi, size=n_modes)
                phased = build_state(xis, params, phases=phases)
                deviation = float(np.max(np.abs(phased.rho_up - state.rho_up)))
                worst["phase_independence"] = (deviation, tolerance)
        for name, (deviation, limit) in worst.items():
            check = CheckResult(name, n_modes, deviation, limit, deviation < limit)
            if check.passed:
                logger.info("N=%d %s: %.3g < %.3g", n_modes, name, deviation, limit)
            else:
                logger.error("N=%d %s failed: %.3g >= %.3g", n_modes, name, deviation, limit)
            results.append(check)
    return OracleVerdict(tuple(results))
