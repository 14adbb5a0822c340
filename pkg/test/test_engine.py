"""
=================
Test Graded Spans
=================

Lower central series spans, the ideals ``M_i`` and the quotient groups
built from them, on cells small enough for the default test run.
"""

import unittest
from unittest import mock

from lcs_torsion.algebra import Signature
from lcs_torsion.engine import LcsEngine, LcsRequest, cyclic_representatives
from lcs_torsion.linalg import AbelianGroupInvariants, lattice_equal


########################################################################
class TestSpans(unittest.TestCase):

    # ----------------------------------------------------------------------
    def setUp(self):
        self.engine = LcsEngine()

    # ----------------------------------------------------------------------
    def test_requests_are_validated(self):
        with self.assertRaises(ValueError):
            LcsRequest(Signature(2), "z", 0, (1, 1))
        with self.assertRaises(ValueError):
            LcsRequest(Signature(2), "z", 2, (1, 1), kind="X")
        with self.assertRaises(ValueError):
            LcsRequest(Signature(2), "z", 2, (1, 1, 1))

    # ----------------------------------------------------------------------
    def test_degenerate_slices(self):
        sig = Signature(3)
        self.assertEqual(self.engine.lcs_span(sig, "z", 2, (2, 0, 0)).rank, 0)
        self.assertEqual(self.engine.lcs_span(sig, "z", 4, (1, 1, 1)).rank, 0)
        self.assertEqual(self.engine.lcs_span(sig, "z", 1, (1, 1, 0)).rank, 2)

    # ----------------------------------------------------------------------
    def test_odd_square(self):
        span = self.engine.lcs_span(Signature(0, 1), "z", 2, (2,))
        self.assertEqual(span.rank, 1)
        self.assertIn(span.span.to_dense(), ([[2]], [[-2]]))

    # ----------------------------------------------------------------------
    def test_bounded_left_factors_match_naive(self):
        naive = LcsEngine(naive=True)
        for sig, i, m in ((Signature(3), 3, (2, 2, 2)), (Signature(2), 4, (3, 2)), (Signature(1, 1), 3, (2, 2))):
            self.assertTrue(
                lattice_equal(self.engine.lcs_span(sig, "z", i, m).span, naive.lcs_span(sig, "z", i, m).span)
            )

    # ----------------------------------------------------------------------
    def test_cyclic_left_factors_match_naive(self):
        self.assertEqual(len(cyclic_representatives((2, 2))), 2)
        naive = LcsEngine(naive=True)
        cyclic = (None, cyclic_representatives)
        with mock.patch.object(LcsEngine, "_left_factors", return_value=cyclic):
            engine = LcsEngine()
            cells = ((Signature(3), 3, (2, 2, 2)), (Signature(2), 4, (3, 2)), (Signature(1, 1), 3, (2, 2)))
            for sig, i, m in cells:
                fast, slow = engine.lcs_span(sig, "z", i, m), naive.lcs_span(sig, "z", i, m)
                self.assertTrue(lattice_equal(fast.span, slow.span), m)

    # ----------------------------------------------------------------------
    def test_memo(self):
        self.engine.lcs_span(Signature(2), "z", 3, (2, 2))
        self.assertGreater(len(self.engine), 0)
        self.engine.clear()
        self.assertEqual(len(self.engine), 0)


########################################################################
class TestGroups(unittest.TestCase):

    # ----------------------------------------------------------------------
    def setUp(self):
        self.engine = LcsEngine()

    # ----------------------------------------------------------------------
    def test_cyclic_words(self):
        # aabb, abba, bbaa, baab and abab, baba
        self.assertEqual(self.engine.bi_group(Signature(2), 1, (2, 2)), AbelianGroupInvariants(2))

    # ----------------------------------------------------------------------
    def test_first_torsion_in_three_generators(self):
        sig = Signature(3)
        group = self.engine.bi_group(sig, 2, (2, 2, 2))
        self.assertEqual(group.torsion, (2,))
        self.assertEqual(self.engine.bi_group(sig, 2, (2, 2, 2), invert_two=True).torsion, ())
        dyadic = self.engine.bi_group_dyadic(sig, 2, (2, 2, 2))
        self.assertEqual(dyadic, AbelianGroupInvariants(group.free_rank))

    # ----------------------------------------------------------------------
    def test_second_quotient_of_two_generators_is_free(self):
        sig = Signature(2)
        for m in ((1, 1), (2, 1), (2, 2), (3, 2), (3, 3)):
            self.assertTrue(self.engine.bi_group(sig, 2, m).is_torsion_free, m)

    # ----------------------------------------------------------------------
    def test_odd_generator(self):
        self.assertEqual(
            self.engine.bi_group(Signature(0, 1), 1, (2,)), AbelianGroupInvariants.from_factors([2])
        )

    # ----------------------------------------------------------------------
    def test_field_dimensions(self):
        sig = Signature(3)
        self.assertEqual(self.engine.discrepancy(sig, 2, 2, (2, 2, 2)), 1)
        self.assertEqual(self.engine.discrepancy(sig, 2, 4, (2, 2, 2)), -1)
        self.assertEqual(self.engine.discrepancy(sig, 3, 2, (2, 2, 2)), 0)
        with self.assertRaises(ValueError):
            self.engine.bi_dim(sig, "z", 2, (2, 2, 2))

    # ----------------------------------------------------------------------
    def test_universal_coefficients(self):
        sig = Signature(3)
        self.assertTrue(self.engine.universal_coefficient_check(sig, 2, 2, (2, 2, 2)))
        self.assertFalse(self.engine.universal_coefficient_check(sig, 2, 4, (2, 2, 2)))
        self.assertTrue(self.engine.universal_coefficient_check(Signature(2), 2, "bar1", (2, 2)))

    # ----------------------------------------------------------------------
    def test_bar_b1(self):
        sig = Signature(2)
        group = self.engine.bar_b1_group(sig, (2, 2))
        self.assertEqual(group.torsion, (2,))
        self.assertEqual(self.engine.bar_b1_dim_fp(sig, 2, (2, 2)), group.free_rank + 1)
        self.assertEqual(self.engine.bar_b1_dim_fp(sig, 3, (2, 2)), group.free_rank)

    # ----------------------------------------------------------------------
    def test_ideal_quotient(self):
        # A/M_2 is the polynomial ring and A/M_3[(2,2)] has dimension 2.
        sig = Signature(2)
        group = self.engine.n_quotient(sig, 2, (2, 2))
        self.assertEqual(group.free_rank, 1)
        self.assertEqual(self.engine.m_ideal_span(sig, "z", 2, (2, 2)).rank, 5)
        self.assertEqual(self.engine.m_ideal_span(sig, "z", 3, (2, 2)).rank, 4)
        with self.assertRaises(ValueError):
            self.engine.n_quotient(sig, 1, (2, 2))


if __name__ == '__main__':
    unittest.main()
