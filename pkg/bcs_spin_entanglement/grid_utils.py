"""
Grid Utilities Module

This module provides utilities for energy grids and parameter lists used by
the numerics and the command line. Parsing helpers return
``(value, error_message)`` tuples where error_message is None on success.
"""

import math
import os

import numpy as np

from .errors import GridError

OUTPUT_DIR_ENV = "BCS_SPIN_EE_OUTPUT_DIR"

SPACINGS = ("linear", "log-symmetric")


def validate_grid(grid):
    """
    Check that a grid is non-empty, finite and strictly increasing.

    Args:
        grid: Sequence or array of energies

    Returns:
        numpy.ndarray: The grid as a 1-D float array

    Raises:
        GridError: If any of the conditions fails
    """
    try:
        values = np.asarray(grid, dtype=float)
    except (TypeError, ValueError) as exc:
        raise GridError(f"Grid is not numeric: {exc}") from exc
    if values.ndim != 1 or values.size == 0:
        raise GridError("Grid must be a non-empty one-dimensional sequence")
    if not np.all(np.isfinite(values)):
        raise GridError("Grid contains non-finite values")
    if np.any(np.diff(values) <= 0):
        raise GridError("Grid must be strictly increasing")
    return values


def parse_grid_spec(text):
    """
    Parse a ``min:max:points`` grid specification.

    Args:
        text (str): The specification, e.g. ``-5:5:101``

    Returns:
        tuple: ((lower, upper, points), error_message)
    """
    parts = text.split(":") if text else []
    if len(parts) != 3:
        return None, f"Error: Grid must look like min:max:points, got '{text}'"
    try:
        lower, upper = float(parts[0]), float(parts[1])
        points = int(parts[2])
    except ValueError:
        return None, f"Error: Grid bounds must be numbers and points an integer: '{text}'"
    if not (math.isfinite(lower) and math.isfinite(upper)):
        return None, "Error: Grid bounds must be finite"
    if points < 2:
        return None, f"Error: Grid needs at least 2 points, got {points}"
    if lower >= upper:
        return None, f"Error: Grid minimum {lower} must be below maximum {upper}"
    return (lower, upper, points), None


def build_grid(lower, upper, points, spacing="linear"):
    """
    Build a linear or sign-symmetric logarithmic energy grid.

    The log-symmetric grid mirrors geomspace(lower, upper, points // 2) onto
    negative energies and adds xi = 0 when points is odd, so it is dense
    near the Fermi surface. It needs 0 < lower < upper and points >= 4.

    Args:
        lower (float): Lower bound (smallest magnitude for log-symmetric)
        upper (float): Upper bound
        points (int): Number of nodes
        spacing (str): "linear" or "log-symmetric"

    Returns:
        numpy.ndarray: Strictly increasing grid

    Raises:
        GridError: On an invalid combination of bounds and spacing
    """
    if spacing not in SPACINGS:
        raise GridError(f"Unknown grid spacing '{spacing}'")
    if points < 2 or not lower < upper:
        raise GridError("Grid needs at least 2 points and min < max")
    if spacing == "linear":
        return np.linspace(lower, upper, points)
    if lower <= 0:
        raise GridError("Log-symmetric grid needs 0 < min < max")
    if points < 4:
        # each sign needs both min and max
        raise GridError(f"Log-symmetric grid needs at least 4 points, got {points}")
    half = points // 2
    positive = np.geomspace(lower, upper, half)
    middle = [0.0] if points % 2 else []
    return np.concatenate([-positive[::-1], middle, positive])


def parse_number_list(text, allow_zero=False):
    """
    Parse a comma-separated list of positive numbers.

    Args:
        text (str): e.g. ``0.5,1,2``
        allow_zero (bool): Also accept 0, as for the gap list

    Returns:
        tuple: (list of float, error_message)
    """
    items = [item.strip() for item in (text or "").split(",") if item.strip()]
    if not items:
        return None, "Error: Parameter list is empty"
    try:
        values = [float(item) for item in items]
    except ValueError:
        return None, f"Error: Parameter list must contain numbers: '{text}'"
    if any(not math.isfinite(v) or v < 0 or (v == 0 and not allow_zero) for v in values):
        kind = "non-negative" if allow_zero else "positive"
        return None, f"Error: Parameter list values must be {kind} and finite: '{text}'"
    return values, None


def resolve_output_path(output, base_dir=None):
    """
    Resolve where an output table goes, creating parent directories.

    Relative paths are placed under ``base_dir`` or, when unset, under the
    directory named by the BCS_SPIN_EE_OUTPUT_DIR environment variable.

    Args:
        output (str or None): Requested path; None or "-" means stdout
        base_dir (str, optional): Directory for relative paths

    Returns:
        tuple: (resolved_path or None for stdout, error_message)
    """
    if output is None or output == "-":
        return None, None
    if base_dir is None:
        base_dir = os.environ.get(OUTPUT_DIR_ENV)
    path = output
    if base_dir and not os.path.isabs(output):
        path = os.path.join(base_dir, output)
    path = os.path.abspath(path)
    if os.path.isdir(path):
        return None, f"Error: Output path is a directory: {path}"
    try:
        os.makedirs(os.path.dirname(path), exist_ok=True)
    except OSError as exc:
        return None, f"Error: Cannot create output directory for {path}: {exc}"
    return path, None
