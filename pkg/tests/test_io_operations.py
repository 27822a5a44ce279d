#!/usr/bin/env python3
"""
Test Table Rendering and DOS Table Loading
"""

import io
import json
import math
import os
import shutil
import tempfile
import unittest

from bcs_spin_entanglement.dos_models import evaluate
from bcs_spin_entanglement.errors import ParameterDomainError
from bcs_spin_entanglement.io_operations import (
    format_number,
    load_dos_table,
    parse_dos_selector,
    render_csv,
    render_json,
    render_table,
    write_table,
)

ROWS = [
    {"xi": -1.0, "v2": 0.8535533905932737, "beta_eff": 1.7627471740390861},
    {"xi": 30.0, "v2": 0.0, "beta_eff": math.inf},
]
COLUMNS = ["xi", "v2", "beta_eff"]


class TestRendering(unittest.TestCase):
    """CSV and JSON documents"""

    def test_format_number(self):
        """17 significant digits, inf/nan words and lowercase booleans"""
        self.assertEqual(format_number(0.1), "0.10000000000000001")
        self.assertEqual(format_number(math.inf), "inf")
        self.assertEqual(format_number(-math.inf), "-inf")
        self.assertEqual(format_number(math.nan), "nan")
        self.assertEqual(format_number(True), "true")
        self.assertEqual(format_number(21), "21")
        self.assertEqual(format_number("pairing"), "pairing")

    def test_csv_layout(self):
        """Header line, LF endings and a trailing newline"""
        text = render_csv(ROWS, COLUMNS)
        lines = text.split("\n")
        self.assertEqual(lines[0], "xi,v2,beta_eff")
        self.assertEqual(lines[2], "30,0,inf")
        self.assertEqual(lines[-1], "")
        self.assertNotIn("\r", text)

    def test_csv_round_trips_doubles(self):
        """17 significant digits restore every value exactly"""
        first = render_csv(ROWS, COLUMNS).split("\n")[1].split(",")
        self.assertEqual([float(value) for value in first],
                         [ROWS[0][column] for column in COLUMNS])

    def test_json_layout(self):
        """config, extra keys, then rows; config keys sorted"""
        document = json.loads(render_json(ROWS, COLUMNS, config={"mu": 100.0, "delta": 1.0},
                                          extra={"passed": True}))
        self.assertEqual(list(document), ["config", "passed", "rows"])
        self.assertEqual(list(document["config"]), ["delta", "mu"])
        self.assertEqual(document["rows"][1]["beta_eff"], "inf")
        self.assertEqual(document["rows"][0]["v2"], ROWS[0]["v2"])

    def test_json_config_non_finite(self):
        """Non-finite config values become strings"""
        document = json.loads(render_json([], [], config={"tolerance": math.nan}))
        self.assertEqual(document["config"]["tolerance"], "nan")
        self.assertEqual(document["rows"], [])

    def test_render_table_dispatch(self):
        """Format names select the renderer; unknown ones fail"""
        self.assertEqual(render_table(ROWS, COLUMNS, "csv"), render_csv(ROWS, COLUMNS))
        with self.assertRaises(ValueError):
            render_table(ROWS, COLUMNS, "xml")


class TestWriting(unittest.TestCase):
    """Writing tables to streams and files"""

    def setUp(self):
        self.test_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.test_dir)

    def test_write_to_stream(self):
        """Without a path the table goes to the stream"""
        stream = io.StringIO()
        write_table("a,b\n", None, stream)
        self.assertEqual(stream.getvalue(), "a,b\n")

    def test_write_to_file_keeps_lf(self):
        """Files are written with LF line endings on every platform"""
        path = os.path.join(self.test_dir, "table.csv")
        write_table("a,b\n1,2\n", path)
        with open(path, "rb") as handle:
            self.assertEqual(handle.read(), b"a,b\n1,2\n")


class TestDosTables(unittest.TestCase):
    """Two-column (xi, g) CSV input"""

    def setUp(self):
        self.test_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.test_dir)

    def write(self, name, content):
        path = os.path.join(self.test_dir, name)
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(content)
        return path

    def test_with_header(self):
        """A header line is skipped and values interpolate"""
        path = self.write("dos.csv", "xi,g\n-10,1.0\n0,2.0\n10,1.0\n")
        dos = load_dos_table(path)
        self.assertEqual(evaluate(dos, 0.0), 2.0)
        self.assertEqual(evaluate(dos, 5.0), 1.5)

    def test_without_header(self):
        """Headerless tables and blank lines are accepted"""
        path = self.write("dos.csv", "-1,3\n\n1,3\n")
        self.assertEqual(load_dos_table(path).table_xi, (-1.0, 1.0))

    def test_malformed(self):
        """Non-numeric rows, single columns and one-row tables fail"""
        for content in ("xi,g\n0,1\nx,2\n", "0\n1\n", "0,1\n"):
            path = self.write("bad.csv", content)
            with self.assertRaises(ParameterDomainError):
                load_dos_table(path)

    def test_missing_file(self):
        """A missing table is a domain error"""
        with self.assertRaises(ParameterDomainError):
            load_dos_table(os.path.join(self.test_dir, "absent.csv"))

    def test_selectors(self):
        """constant, power-law-3d and table selectors"""
        dos, error = parse_dos_selector("constant:2.5", 100.0)
        self.assertIsNone(error)
        self.assertEqual(dos.g0, 2.5)
        dos, _ = parse_dos_selector("power-law-3d", 100.0)
        self.assertEqual(evaluate(dos, 0.0), 10.0)
        dos, _ = parse_dos_selector("power-law-3d:2", 100.0)
        self.assertEqual(evaluate(dos, 0.0), 20.0)
        path = self.write("dos.csv", "-10,1\n10,1\n")
        dos, _ = parse_dos_selector(f"table:{path}", 100.0)
        self.assertEqual(dos.kind, "tabulated")

    def test_bad_selectors(self):
        """Malformed selectors return an error message"""
        for text in ("", "table:", "gaussian:1", "constant:-1", "constant:abc"):
            dos, error = parse_dos_selector(text, 100.0)
            self.assertIsNone(dos, text)
            self.assertTrue(error.startswith("Error:"), text)


if __name__ == "__main__":
    unittest.main()
