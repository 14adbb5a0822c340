"""
=================
Test DeRham Forms
=================

Differential, products and integer cohomology of polynomial forms, and
the normal form of ``A_n / M_3``.
"""

import random
import unittest
from fractions import Fraction

from lcs_torsion.algebra import Element, Signature, commutator, random_element
from lcs_torsion.derham import (
    DifferentialForm,
    bar_b1_via_forms,
    cohomology,
    cohomology_closed_form,
    d,
    exactness_witness,
    fedosov_mul,
    fedosov_word,
    form_basis,
    kunneth_prediction,
    lie_image_equals_exact,
    normal_form_mod_m3,
    super_lie_image_check,
    supercase_check,
    varphi,
    varphi_is_bijective,
    varphi_leibniz,
    wedge,
)
from lcs_torsion.engine import LcsEngine
from lcs_torsion.errors import NoHalf
from lcs_torsion.linalg import AbelianGroupInvariants
from lcs_torsion.rings import ZZ_HALF


########################################################################
class TestForms(unittest.TestCase):

    # ----------------------------------------------------------------------
    def test_differential_squares_to_zero(self):
        for n, k, m in ((3, 0, (2, 1, 3)), (1, 1, (2, 2)), (1, 2, (1, 1, 2))):
            for r in range(sum(m)):
                for mono in form_basis(n, k, r, m):
                    omega = DifferentialForm(n, k, {mono: 1})
                    self.assertTrue(d(d(omega)).is_zero(), mono)

    # ----------------------------------------------------------------------
    def test_odd_differentials_anticommute(self):
        dx1 = DifferentialForm.monomial(2, dx=[0])
        dx2 = DifferentialForm.monomial(2, dx=[1])
        self.assertTrue(wedge(dx1, dx1).is_zero())
        self.assertEqual(wedge(dx1, dx2), -wedge(dx2, dx1))
        self.assertEqual(DifferentialForm.monomial(2, dx=[1, 0]), -DifferentialForm.monomial(2, dx=[0, 1]))

    # ----------------------------------------------------------------------
    def test_odd_coordinate(self):
        y = DifferentialForm.coordinate(0, 1, 0)
        self.assertTrue(wedge(y, y).is_zero())
        # dy is even
        dy = d(y)
        self.assertFalse(wedge(dy, dy).is_zero())

    # ----------------------------------------------------------------------
    def test_exactness_witness(self):
        x = DifferentialForm.coordinate(2, 0, 0)
        y = DifferentialForm.coordinate(2, 0, 1)
        omega = d(wedge(wedge(x, x), y))
        eta = exactness_witness(omega)
        self.assertIsNotNone(eta)
        self.assertEqual(d(eta), omega)

        # x dx is closed but only 2 x dx is exact over the integers
        t = DifferentialForm.coordinate(1, 0, 0)
        self.assertIsNone(exactness_witness(wedge(t, d(t))))
        self.assertIsNotNone(exactness_witness(wedge(t, d(t)).scale(2)))

    # ----------------------------------------------------------------------
    def test_fedosov_product(self):
        x = DifferentialForm.coordinate(2, 0, 0)
        with self.assertRaises(NoHalf):
            fedosov_mul(x, x)
        x = x.change_ring(ZZ_HALF)
        y = DifferentialForm.coordinate(2, 0, 1, ZZ_HALF)
        self.assertEqual(
            fedosov_mul(x, y) - fedosov_mul(y, x), DifferentialForm.monomial(2, dx=[0, 1], ring=ZZ_HALF)
        )
        self.assertEqual(
            fedosov_mul(x, y), wedge(x, y) + wedge(d(x), d(y)).scale(Fraction(1, 2))
        )

    # ----------------------------------------------------------------------
    def test_super_fedosov_product(self):
        x = DifferentialForm.coordinate(1, 1, 0, ZZ_HALF)
        y = DifferentialForm.coordinate(1, 1, 1, ZZ_HALF)
        self.assertEqual(
            fedosov_mul(x, y) - fedosov_mul(y, x),
            DifferentialForm.monomial(1, 1, dx=[0], dy=[1], ring=ZZ_HALF),
        )
        self.assertEqual(
            fedosov_mul(y, y), DifferentialForm.monomial(1, 1, dy=[2], coeff=Fraction(-1, 2), ring=ZZ_HALF)
        )
        xy = fedosov_mul(x, y)
        for a, b, c in ((x, y, y), (y, x, y), (xy, y, x), (y, xy, xy)):
            self.assertEqual(fedosov_mul(fedosov_mul(a, b), c), fedosov_mul(a, fedosov_mul(b, c)))
        self.assertEqual(fedosov_word((0, 1, 1), 1, ZZ_HALF, k=1), fedosov_mul(xy, y))


########################################################################
class TestCohomology(unittest.TestCase):

    # ----------------------------------------------------------------------
    def test_one_coordinate(self):
        self.assertEqual(cohomology(1, 0, 1, (6,)), AbelianGroupInvariants.from_factors([6]))
        self.assertTrue(cohomology(1, 0, 0, (3,)).is_trivial)

    # ----------------------------------------------------------------------
    def test_closed_form(self):
        for n, m in ((2, (2, 2)), (2, (2, 3)), (3, (2, 2, 4)), (3, (1, 2, 3))):
            for r in range(n + 1):
                self.assertEqual(cohomology(n, 0, r, m), cohomology_closed_form(n, r, m), (n, r, m))
        self.assertEqual(cohomology_closed_form(3, 2, (2, 4, 6)), AbelianGroupInvariants.from_factors([2, 2]))
        with self.assertRaises(ValueError):
            cohomology_closed_form(2, 1, (0, 2))

    # ----------------------------------------------------------------------
    def test_split_on_last_coordinate(self):
        for m in ((2, 3), (2, 2), (3, 3)):
            for r in range(3):
                self.assertEqual(cohomology(2, 0, r, m), kunneth_prediction(2, r, m))

    # ----------------------------------------------------------------------
    def test_odd_coordinates_are_acyclic(self):
        for r in range(1, 4):
            self.assertTrue(cohomology(1, 1, r, (1, 2)).is_trivial)


########################################################################
class TestModThree(unittest.TestCase):

    # ----------------------------------------------------------------------
    def test_commutator_maps_to_dx_dy(self):
        sig = Signature(2)
        x, y = Element.generator(sig, 0), Element.generator(sig, 1)
        u = normal_form_mod_m3(commutator(x, y))
        self.assertEqual(varphi(u), DifferentialForm.monomial(2, dx=[0, 1]))
        self.assertEqual(normal_form_mod_m3(commutator(x, commutator(x, y))), 0)

    # ----------------------------------------------------------------------
    def test_lie_image_is_exact(self):
        engine = LcsEngine()
        for n, m in ((2, (1, 1)), (2, (2, 2)), (3, (1, 1, 1))):
            self.assertTrue(lie_image_equals_exact(n, m, engine))

    # ----------------------------------------------------------------------
    def test_bar_b1(self):
        engine = LcsEngine()
        self.assertEqual(bar_b1_via_forms(2, (2, 2)), engine.bar_b1_group(Signature(2), (2, 2)))
        self.assertEqual(bar_b1_via_forms(3, (2, 2, 2)).torsion, (2, 2))
        self.assertTrue(supercase_check(1, 1, (2, 2), engine))
        with self.assertRaises(ValueError):
            supercase_check(2, 0, (1, 1), engine)

    # ----------------------------------------------------------------------
    def test_varphi_is_bijective(self):
        engine = LcsEngine()
        for n, m in ((2, (2, 2)), (2, (3, 1)), (3, (1, 1, 1)), (3, (2, 1, 1))):
            self.assertTrue(varphi_is_bijective(n, m, engine), m)

    # ----------------------------------------------------------------------
    def test_varphi_leibniz(self):
        sig = Signature(2)
        a = Element(sig, {(1, 0): 1})
        self.assertTrue(varphi_leibniz(a, 1))
        self.assertEqual(
            varphi(normal_form_mod_m3(commutator(a, Element.generator(sig, 1)))),
            DifferentialForm.monomial(2, x=[0, 1], dx=[0, 1]),
        )
        rng = random.Random(5)
        for _ in range(20):
            sig = Signature(rng.choice((2, 3)))
            a = random_element(sig, rng, max_length=5, n_terms=3)
            self.assertTrue(varphi_leibniz(a, rng.randrange(sig.n_even)), a)

    # ----------------------------------------------------------------------
    def test_super_lie_image(self):
        engine = LcsEngine()
        for n, k, m in ((1, 1, (1, 1)), (1, 1, (1, 2)), (1, 1, (2, 2)), (0, 2, (2, 2))):
            self.assertTrue(super_lie_image_check(n, k, m, engine), (n, k, m))


if __name__ == '__main__':
    unittest.main()
