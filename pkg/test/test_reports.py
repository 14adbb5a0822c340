"""
============
Test Reports
============

Degree ranges, batch jobs, rendering and the golden table files.
"""

import json
import tempfile
import unittest

from lcs_torsion.algebra import Signature
from lcs_torsion.engine import LcsEngine
from lcs_torsion.linalg import AbelianGroupInvariants
from lcs_torsion.reports import (
    TABLES,
    Cell,
    CellResult,
    DegreeRange,
    JobSpec,
    TableSpec,
    collect,
    discrepancies,
    evaluate,
    render,
    render_csv,
    render_json,
    render_markdown,
    reproduce_table,
    run,
)
from lcs_torsion.utils.persistent_storage import CellCache


########################################################################
class TestDegreeRange(unittest.TestCase):

    # ----------------------------------------------------------------------
    def test_cells(self):
        degrees = DegreeRange(2, min_each=1, max_total=4, descending=((0, 1),))
        self.assertEqual(degrees.cells(), [(1, 1), (2, 1), (2, 2), (3, 1)])
        self.assertNotIn((1, 2), degrees)
        self.assertNotIn((1, 1, 1), degrees)

    # ----------------------------------------------------------------------
    def test_caps_and_exclusions(self):
        degrees = DegreeRange(2, min_each=1, caps=((2, 2), (3, 1)), exclude=((2, 2),))
        self.assertEqual(degrees.cells(), [(1, 1), (1, 2), (2, 1), (3, 1)])

    # ----------------------------------------------------------------------
    def test_explicit(self):
        self.assertEqual(DegreeRange(2, exact=(3, 1)).cells(), [(3, 1)])
        self.assertEqual(DegreeRange(2, listed=((2, 1), (1, 1))).cells(), [(1, 1), (2, 1)])

    # ----------------------------------------------------------------------
    def test_invalid(self):
        with self.assertRaises(ValueError):
            DegreeRange(2).cells()
        with self.assertRaises(ValueError):
            DegreeRange(2, exact=(1, 1, 1))
        with self.assertRaises(ValueError):
            DegreeRange(2, min_each=-1)

    # ----------------------------------------------------------------------
    def test_dict_form(self):
        degrees = DegreeRange(3, min_each=1, descending=((0, 1, 2),), caps=((3, 3, 3), (4, 4, 2)))
        self.assertEqual(DegreeRange.from_dict(degrees.to_dict()), degrees)


########################################################################
class TestJobs(unittest.TestCase):

    # ----------------------------------------------------------------------
    def test_levels(self):
        job = JobSpec("bi", Signature(2), DegreeRange(2, exact=(2, 1)), ring="Q")
        self.assertEqual(job.ring, "q")
        self.assertEqual(job.cells(), [Cell("bi", "2,0", "q", 2, (2, 1)), Cell("bi", "2,0", "q", 3, (2, 1))])
        derham = JobSpec("derham", Signature(2), DegreeRange(2, exact=(2, 1)))
        self.assertEqual([c.l for c in derham.cells()], [0, 1, 2, 3])
        barb1 = JobSpec("barb1", Signature(2), DegreeRange(2, exact=(2, 1)), levels=(5,))
        self.assertEqual([c.l for c in barb1.cells()], [1])

    # ----------------------------------------------------------------------
    def test_validation(self):
        with self.assertRaises(ValueError):
            JobSpec("lie", Signature(2), DegreeRange(2, exact=(1, 1)))
        with self.assertRaises(ValueError):
            JobSpec("bi", Signature(3), DegreeRange(2, exact=(1, 1)))
        with self.assertRaises(ValueError):
            JobSpec("bi", Signature(2), DegreeRange(2, exact=(1, 1)), format="xml")
        with self.assertRaises(ValueError):
            JobSpec("bi", Signature(2), DegreeRange(2, exact=(1, 1)), ring="f6")

    # ----------------------------------------------------------------------
    def test_evaluate(self):
        engine = LcsEngine()
        result = evaluate(Cell("bi", "3,0", "z", 2, (2, 2, 2)), engine)
        self.assertEqual(result.group.torsion, (2,))
        modular = evaluate(Cell("bi", "3,0", "f2", 2, (2, 2, 2)), engine)
        rational = evaluate(Cell("bi", "3,0", "q", 2, (2, 2, 2)), engine)
        self.assertEqual(modular.dim - rational.dim, 1)
        self.assertEqual(discrepancies([modular, rational]), {((2, 2, 2), 2): 1})
        self.assertEqual(
            evaluate(Cell("derham", "1,0", "z", 1, (6,)), engine).group,
            AbelianGroupInvariants.from_factors([6]),
        )
        with self.assertRaises(ValueError):
            evaluate(Cell("derham", "1,0", "q", 1, (6,)), engine)
        with self.assertRaises(ValueError):
            evaluate(Cell("nquot", "2,0", "f2", 2, (1, 1)), engine)
        with self.assertRaises(ValueError):
            evaluate(Cell("lie", "2,0", "z", 2, (1, 1)), engine)

    # ----------------------------------------------------------------------
    def test_cache_is_consulted(self):
        with tempfile.TemporaryDirectory() as folder:
            cache = CellCache(folder)
            cell = Cell("bi", "2,0", "q", 2, (1, 1))
            cache.set(cell.cache_key(), {"dim": 99})
            (result,) = collect([cell], cache=cache)
            self.assertEqual(result.dim, 99)

    # ----------------------------------------------------------------------
    def test_run_fills_the_cache(self):
        with tempfile.TemporaryDirectory() as folder:
            job = JobSpec("derham", Signature(2), DegreeRange(2, exact=(2, 1)), cache_dir=folder)
            text, code = run(job)
            self.assertEqual(code, 0)
            rows = json.loads(text)
            self.assertEqual([row["cell"]["l"] for row in rows], [0, 1, 2, 3])
            self.assertEqual(len(CellCache(folder).keys()), 4)
            self.assertEqual(run(job)[0], text)


########################################################################
class TestRendering(unittest.TestCase):

    # ----------------------------------------------------------------------
    def setUp(self):
        self.results = [
            CellResult(Cell("bi", "3,0", "z", 2, (2, 2, 2)), AbelianGroupInvariants(2, (2,)), ms=1.5),
            CellResult(Cell("bi", "3,0", "z", 3, (2, 2, 2)), AbelianGroupInvariants(5), ms=2.0),
        ]

    # ----------------------------------------------------------------------
    def test_json(self):
        rows = json.loads(render_json(self.results))
        self.assertEqual(rows[0]["group"], {"free_rank": 2, "factors": [2]})
        self.assertEqual([row["display"] for row in rows], ["Z^2 + Z/2", "Z^5"])
        self.assertIsNone(rows[0]["ms"])
        self.assertEqual(json.loads(render_json(self.results, timings=True))[0]["ms"], 1.5)
        self.assertEqual(render_json(self.results), render_json(list(self.results)))

    # ----------------------------------------------------------------------
    def test_round_trip(self):
        result = CellResult(Cell("barb1", "2,0", "f3", 1, (2, 2)), dim=4)
        self.assertEqual(CellResult.from_dict(result.to_dict()), result)

    # ----------------------------------------------------------------------
    def test_csv(self):
        lines = render_csv(self.results).splitlines()
        self.assertEqual(lines[0], "kind,sig,ring,l,deg,free_rank,factors,group,dim,ms")
        self.assertEqual(lines[1], 'bi,"3,0",z,2,2 2 2,2,2,Z^2 + Z/2,,')

    # ----------------------------------------------------------------------
    def test_markdown(self):
        self.assertEqual(
            render_markdown(self.results, torsion_only=True),
            "| deg | l=2 |\n|---|---|\n| (2, 2, 2) | Z/2 |\n",
        )
        self.assertEqual(render_markdown([]), "_no cells_\n")
        self.assertEqual(render_markdown(self.results[1:], torsion_only=True), "_no torsion_\n")
        with self.assertRaises(ValueError):
            render(self.results, "xml")


########################################################################
class TestGoldenTables(unittest.TestCase):

    # ----------------------------------------------------------------------
    def test_every_table_loads(self):
        for table_id in TABLES:
            spec = TableSpec.load(table_id)
            self.assertEqual(spec.sig.n_gens, spec.degrees.n_gens)
            for deg, l in spec.expected():
                self.assertIn(deg, spec.degrees, (table_id, deg))
                self.assertTrue(spec.first_level <= l <= sum(deg), (table_id, deg, l))

    # ----------------------------------------------------------------------
    def test_unknown_table(self):
        with self.assertRaises(KeyError):
            TableSpec.load("9")

    # ----------------------------------------------------------------------
    def test_first_torsion_of_three_generators(self):
        spec = TableSpec.load("2")
        self.assertEqual(spec.expected()[((2, 2, 2), 2)], {"2": 1})
        self.assertEqual(TableSpec.load("d3").expected()[((3, 3, 3), 5)], -1)


########################################################################
class TestTableReproduction(unittest.TestCase):

    # ----------------------------------------------------------------------
    def setUp(self):
        self.folder = tempfile.TemporaryDirectory()
        self.cache = CellCache(self.folder.name)

    # ----------------------------------------------------------------------
    def tearDown(self):
        self.folder.cleanup()

    # ----------------------------------------------------------------------
    def _group(self, outcome, deg, l):
        (result,) = [r for r in outcome.results if r.cell.deg == deg and r.cell.l == l]
        return result.group

    # ----------------------------------------------------------------------
    def test_low_degree_cells_of_every_table(self):
        for table_id in sorted(TABLES):
            outcome = reproduce_table(table_id, cache=self.cache, max_total=5)
            self.assertTrue(outcome.ok, (table_id, outcome.mismatches))
            self.assertTrue(all(sum(m) > 5 for m in outcome.skipped), table_id)
            self.assertTrue(outcome.results, table_id)

        # Z/2 in the even-odd plane and Z/3 with one even generator.
        outcome = reproduce_table("4", cache=self.cache, max_total=5)
        self.assertEqual(self._group(outcome, (2, 2), 2).torsion, (2,))
        outcome = reproduce_table("7", cache=self.cache, max_total=5)
        self.assertEqual(self._group(outcome, (1, 2, 2), 3).torsion, (3,))

    # ----------------------------------------------------------------------
    def test_first_torsion_cells(self):
        outcome = reproduce_table("1", cache=self.cache, max_total=8)
        self.assertTrue(outcome.ok, outcome.mismatches)
        self.assertEqual(self._group(outcome, (4, 4), 5).torsion, (2,))

        outcome = reproduce_table("2", cache=self.cache, max_total=6)
        self.assertTrue(outcome.ok, outcome.mismatches)
        self.assertEqual(self._group(outcome, (2, 2, 2), 2).torsion, (2,))
        self.assertIn("skipped", outcome.render())

    # ----------------------------------------------------------------------
    def test_even_tables_are_not_gated(self):
        for table_id in ("1", "2", "3", "d2", "d3"):
            self.assertIsNone(TableSpec.load(table_id).fast_max_total, table_id)
        for table_id in ("4", "5", "6", "7", "8"):
            self.assertIsInstance(TableSpec.load(table_id).fast_max_total, int, table_id)


if __name__ == '__main__':
    unittest.main()
