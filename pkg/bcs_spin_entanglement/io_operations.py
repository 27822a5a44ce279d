"""
I/O Operations Module

This module provides functions for reading and writing the data files of the
command line: CSV and JSON tables, and two-column density-of-states tables.

CSV: comma-separated, UTF-8, LF line endings, header line first, numbers
with 17 significant digits. JSON: {"config": {...}, "rows": [{...}, ...]}.
Non-finite numbers are written as "inf", "-inf" or "nan" in both formats.
"""

import csv
import io
import json
import logging
import math
import os

from .dos_models import DosModel
from .errors import ParameterDomainError

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")


def format_number(value):
    """
    Render a number for CSV output.

    Args:
        value: int, float or other value

    Returns:
        str: 17 significant digits for floats, "inf"/"-inf"/"nan" for non-finite
    """
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, ".17g")
    return str(value)


def _json_value(value):
    if isinstance(value, float) and not math.isfinite(value):
        return format_number(value)
    return value


def render_csv(rows, columns):
    """
    Render rows (mappings) as CSV text with a header line.

    Args:
        rows (list of dict): Table rows
        columns (list of str): Column order

    Returns:
        str: The CSV document
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_number(row[column]) for column in columns])
    return buffer.getvalue()


def render_json(rows, columns, config=None, extra=None):
    """
    Render rows as a JSON document with a config echo block.

    Args:
        rows (list of dict): Table rows
        columns (list of str): Key order inside each row
        config (dict, optional): Run configuration to echo
        extra (dict, optional): Additional top-level keys (e.g. a verdict)

    Returns:
        str: The JSON document, newline-terminated
    """
    document = {"config": {key: _json_value(value)
                           for key, value in sorted((config or {}).items())}}
    for key, value in (extra or {}).items():
        document[key] = value
    document["rows"] = [
        {column: _json_value(row[column]) for column in columns} for row in rows
    ]
    return json.dumps(document, indent=2) + "\n"


def render_table(rows, columns, fmt="csv", config=None, extra=None):
    """Render rows in the requested format ("csv" or "json")."""
    if fmt == "csv":
        return render_csv(rows, columns)
    if fmt == "json":
        return render_json(rows, columns, config, extra)
    raise ValueError(f"Unknown output format '{fmt}'")


def write_table(text, path=None, stream=None):
    """
    Write a rendered table to a file or a stream.

    Args:
        text (str): Rendered document
        path (str, optional): Destination file; stream is used when None
        stream (file, optional): Destination stream, e.g. sys.stdout
    """
    if path is None:
        stream.write(text)
        stream.flush()
        return
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)
    logger.info("Wrote %s", path)


def load_dos_table(path):
    """
    Read a two-column (xi, g) CSV file into a tabulated DOS.

    A non-numeric first line is taken as a header and skipped.

    Args:
        path (str): Path to the CSV file

    Returns:
        DosModel: Tabulated density of states

    Raises:
        ParameterDomainError: If the file is missing or malformed
    """
    if not os.path.exists(path):
        raise ParameterDomainError(f"DOS table not found: {path}")
    xis, densities = [], []
    with open(path, "r", encoding="utf-8", newline="") as handle:
        for line_number, record in enumerate(csv.reader(handle), start=1):
            if not record or all(not cell.strip() for cell in record):
                continue
            if len(record) < 2:
                raise ParameterDomainError(
                    f"{path}:{line_number}: expected two columns (xi, g)")
            try:
                xi, density = float(record[0]), float(record[1])
            except ValueError:
                if line_number == 1:
                    continue
                raise ParameterDomainError(
                    f"{path}:{line_number}: non-numeric DOS entry {record!r}")
            xis.append(xi)
            densities.append(density)
    logger.debug("Loaded %d DOS samples from %s", len(xis), path)
    return DosModel.tabulated(xis, densities)


def parse_dos_selector(text, mu):
    """
    Turn a command-line DOS selector into a model.

    Accepted forms: ``constant:G0``, ``power-law-3d`` or ``power-law-3d:SCALE``
    (uses mu), ``table:PATH``.

    Args:
        text (str): The selector
        mu (float): Fermi energy for the power-law model

    Returns:
        tuple: (DosModel, error_message)
    """
    kind, _, argument = (text or "").partition(":")
    try:
        if kind == "constant":
            return DosModel.constant(float(argument or 1.0)), None
        if kind == "power-law-3d":
            return DosModel.power_law_3d(mu, float(argument or 1.0)), None
        if kind == "table":
            if not argument:
                return None, "Error: table DOS needs a path, e.g. table:dos.csv"
            return load_dos_table(argument), None
    except ValueError as exc:
        return None, f"Error: Invalid DOS selector '{text}': {exc}"
    return None, (f"Error: Unknown DOS selector '{text}' "
                  "(use constant:G0, power-law-3d[:SCALE] or table:PATH)")
