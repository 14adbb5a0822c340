"""
==================
Test Cell Dispatch
==================

Inline and multi-process evaluation of independent cells.
"""

import math
import unittest

from lcs_torsion.reports import Cell, evaluate
from lcs_torsion.utils.auto import compute_cells


########################################################################
class TestComputeCells(unittest.IsolatedAsyncioTestCase):

    # ----------------------------------------------------------------------
    async def test_inline_keeps_input_order(self):
        self.assertEqual(await compute_cells([4, 2, 3], math.factorial), [24, 2, 6])
        self.assertEqual(await compute_cells([], math.factorial), [])

    # ----------------------------------------------------------------------
    async def test_pool_keeps_input_order(self):
        self.assertEqual(await compute_cells([5, 1, 3], math.factorial, workers=2), [120, 1, 6])

    # ----------------------------------------------------------------------
    async def test_results_sorted_by_cell(self):
        cells = [
            Cell("bi", "2,0", "z", 3, (2, 1)),
            Cell("bi", "2,0", "z", 2, (1, 1)),
            Cell("bi", "2,0", "z", 2, (2, 1)),
        ]
        results = await compute_cells(cells, evaluate, workers=2)
        self.assertEqual([r.cell for r in results], sorted(cells, key=lambda c: c.sort_key))
        inline = await compute_cells(cells, evaluate)
        self.assertEqual([r.group for r in inline], [r.group for r in results])


if __name__ == '__main__':
    unittest.main()
