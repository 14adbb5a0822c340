"""
=================
Test Command Line
=================

The ``lcs_torsion`` driver, run in-process against a temporary cache.
"""

import json
import os
import tempfile
import unittest

from lcs_torsion.scripts.lcs import UsageError, main, parse_ints, parse_levels

SLOW = os.environ.get("LCS_TORSION_SLOW") == "1"


########################################################################
class TestCommandLine(unittest.TestCase):

    # ----------------------------------------------------------------------
    def setUp(self):
        self.folder = tempfile.TemporaryDirectory()
        self.cache = os.path.join(self.folder.name, "cells")
        self.output = os.path.join(self.folder.name, "report.txt")

    # ----------------------------------------------------------------------
    def tearDown(self):
        self.folder.cleanup()

    # ----------------------------------------------------------------------
    def _read(self) -> str:
        with open(self.output, "r", encoding="utf-8") as stream:
            return stream.read()

    # ----------------------------------------------------------------------
    def test_parsers(self):
        self.assertEqual(parse_ints("2, 2,2"), (2, 2, 2))
        self.assertEqual(parse_levels("2-4"), (2, 3, 4))
        self.assertEqual(parse_levels("3"), (3,))
        self.assertIsNone(parse_levels(None))
        with self.assertRaises(UsageError):
            parse_ints("a,b")
        with self.assertRaises(UsageError):
            parse_levels("5-2")

    # ----------------------------------------------------------------------
    def test_bi_cell(self):
        code = main([
            "bi", "--sig", "3,0", "--ring", "z", "--l", "2", "--deg", "2,2,2",
            "--cache-dir", self.cache, "--output", self.output,
        ])
        self.assertEqual(code, 0)
        (row,) = json.loads(self._read())
        self.assertEqual(row["group"]["factors"], [2])
        self.assertEqual(row["cell"], {"kind": "bi", "sig": "3,0", "ring": "z", "l": 2, "deg": [2, 2, 2]})
        self.assertIsNone(row["ms"])

        self.assertEqual(main(["cache", "--cache-dir", self.cache, "--list"]), 0)
        self.assertEqual(main(["cache", "--cache-dir", self.cache, "--clear"]), 0)

    # ----------------------------------------------------------------------
    def test_range_and_formats(self):
        code = main([
            "barb1", "--sig", "2,0", "--max-total", "4", "--descending", "--format", "csv",
            "--no-cache", "--output", self.output,
        ])
        self.assertEqual(code, 0)
        lines = self._read().splitlines()
        # (1, 1), (2, 1), (2, 2) and (3, 1)
        self.assertEqual(len(lines), 5)

        code = main([
            "derham", "--sig", "1,0", "--deg", "6", "--l", "1", "--format", "markdown",
            "--no-cache", "--output", self.output,
        ])
        self.assertEqual(code, 0)
        self.assertIn("Z/6", self._read())

    # ----------------------------------------------------------------------
    def test_usage_errors(self):
        self.assertEqual(main([]), 1)
        self.assertEqual(main(["bi", "--sig", "3,0", "--no-cache"]), 1)
        self.assertEqual(main(["bi", "--sig", "2,0", "--deg", "1,1,1", "--no-cache"]), 1)
        self.assertEqual(main(["bi", "--sig", "2,0", "--deg", "1,1", "--ring", "f4", "--no-cache"]), 1)
        self.assertEqual(main(["bi", "--sig", "2,0", "--max-total", "0", "--no-cache"]), 1)
        self.assertEqual(main(["tables", "--id", "99"]), 1)
        self.assertEqual(main(["scan", "--name", "no-such-scan", "--deg", "1,1"]), 1)

    # ----------------------------------------------------------------------
    def test_scan(self):
        code = main([
            "scan", "--name", "order-divides-degree", "--sig", "1,2", "--deg", "1,2,2",
            "--output", self.output,
        ])
        self.assertEqual(code, 0)
        report = json.loads(self._read())
        found = [c for c in report["counterexamples"] if c["l"] == 3]
        self.assertEqual(len(found), 1)
        self.assertTrue(found[0]["torsion"].endswith("Z/3"))

    # ----------------------------------------------------------------------
    def test_verify(self):
        code = main(["verify", "--suite", "uc", "--output", self.output])
        self.assertEqual(code, 0)
        self.assertRegex(self._read(), r"suite uc: (\d+)/\1 checks passed")

    # ----------------------------------------------------------------------
    @unittest.skipUnless(SLOW, "set LCS_TORSION_SLOW=1 for the golden tables")
    def test_golden_tables(self):
        code = main(["tables", "--cache-dir", self.cache, "--workers", "2", "--output", self.output])
        self.assertEqual(code, 0, self._read())


if __name__ == '__main__':
    unittest.main()
