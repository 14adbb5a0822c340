"""
===============
Test Identities
===============

Torsion elements of ``B_2``, closed one-form lifts, the Fedosov shuffle
expansion and the polynomial model of ``L_i[M, 1]``.
"""

import unittest

from lcs_torsion.algebra import Element, Signature
from lcs_torsion.engine import LcsEngine
from lcs_torsion.errors import NotInL2
from lcs_torsion.identities import (
    TorsionMeasurement,
    b2_cohomology_bound,
    b2_within_bound,
    closed_oneform_lift,
    fedosov_shuffle_identity,
    lift_defect,
    order_in_b2,
    polynomial_model,
    polynomial_model_check,
    sandwich,
    shuffle_divisibility,
    super_closed_lift,
    t_element,
    t_generates_torsion,
    verify_identity_ide,
)
from lcs_torsion.linalg import AbelianGroupInvariants


########################################################################
class TestTorsionElements(unittest.TestCase):

    # ----------------------------------------------------------------------
    def setUp(self):
        self.engine = LcsEngine()

    # ----------------------------------------------------------------------
    def test_t_element(self):
        t = t_element(2, 2, 2)
        self.assertEqual(len(t), 4)
        self.assertEqual(t.degree, (2, 2, 2))
        self.assertEqual(t_element(1, 2, 3).degree, (2, 3, 1))
        with self.assertRaises(ValueError):
            t_element(0, 1, 1)

    # ----------------------------------------------------------------------
    def test_orders(self):
        self.assertEqual(order_in_b2(t_element(1, 1, 1), self.engine), 1)
        measured = TorsionMeasurement.measure(t_element(2, 2, 2), self.engine)
        self.assertEqual(measured.order, 2)
        self.assertEqual(measured.m, (2, 2, 2))
        self.assertEqual(order_in_b2(t_element(2, 2, 2), self.engine, invert_two=True), 1)
        self.assertTrue(t_generates_torsion(2, 2, 2, self.engine))

    # ----------------------------------------------------------------------
    def test_infinite_order(self):
        sig = Signature(2)
        x, y = Element.generator(sig, 0), Element.generator(sig, 1)
        self.assertEqual(order_in_b2(x * y - y * x, self.engine), 0)

    # ----------------------------------------------------------------------
    def test_not_in_l2(self):
        sig = Signature(2)
        x, y = Element.generator(sig, 0), Element.generator(sig, 1)
        with self.assertRaises(NotInL2):
            order_in_b2(x * y, self.engine)

    # ----------------------------------------------------------------------
    def test_cohomology_bound(self):
        self.assertEqual(b2_cohomology_bound(3, (2, 2, 2)), AbelianGroupInvariants.from_factors([2]))
        self.assertTrue(b2_within_bound(3, (2, 2, 2), self.engine))

    # ----------------------------------------------------------------------
    def test_sandwich(self):
        self.assertEqual(sandwich(Signature(2, 1), (2, 2, 2), self.engine), (1, 2, 3))


########################################################################
class TestIdentities(unittest.TestCase):

    # ----------------------------------------------------------------------
    def test_five_term_identity(self):
        self.assertTrue(verify_identity_ide())

    # ----------------------------------------------------------------------
    def test_closed_lifts(self):
        for sig, m in ((Signature(2), (2, 2)), (Signature(2), (3, 1)), (Signature(1, 1), (1, 2)),
                       (Signature(0, 2), (1, 1))):
            lifts = closed_oneform_lift(sig, m)
            self.assertEqual(len(lifts), sig.n_gens)
            self.assertTrue(lift_defect(sig, lifts).is_zero(), (sig, m))

    # ----------------------------------------------------------------------
    def test_obstructed_lift(self):
        self.assertIsNone(super_closed_lift(Signature(0, 1), (2,)))
        with self.assertRaises(ValueError):
            closed_oneform_lift(Signature(2), (2, 0))

    # ----------------------------------------------------------------------
    def test_fedosov_expansion(self):
        for word in ((0, 1, 2), (0, 0, 1, 2, 1), (2, 1, 0, 1)):
            self.assertTrue(fedosov_shuffle_identity(word, 3), word)

    # ----------------------------------------------------------------------
    def test_shuffle_divisibility(self):
        for a, m in (((0, 1, 2), 2), ((0, 1, 2, 3), 2), ((0, 2, 1, 1, 3), 3)):
            self.assertTrue(shuffle_divisibility(a, m, 4))


########################################################################
class TestPolynomialModel(unittest.TestCase):

    # ----------------------------------------------------------------------
    def test_rows(self):
        model = polynomial_model(2, 1)
        self.assertEqual(model.n_rows, 1)
        self.assertEqual(sorted(v for _, v in model.rows[0]), [-1, 1])
        with self.assertRaises(ValueError):
            polynomial_model(1, 3)

    # ----------------------------------------------------------------------
    def test_lcs_matches_model(self):
        engine = LcsEngine()
        for i in (2, 3, 4):
            self.assertTrue(polynomial_model_check(Signature(2), i, 4, engine), i)
        self.assertTrue(polynomial_model_check(Signature(1, 1), 2, 3, engine))
        with self.assertRaises(ValueError):
            polynomial_model_check(Signature(0, 2), 2, 3, engine)


if __name__ == '__main__':
    unittest.main()
