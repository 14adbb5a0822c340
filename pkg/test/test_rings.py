"""
=================
Test Scalar Rings
=================

Euclidean primitives of the coefficient rings and the descriptor parser.
"""

import math
import unittest
from fractions import Fraction

from lcs_torsion.rings import GF, QQ, ZZ, ZZ_HALF, int_xgcd, parse_ring


########################################################################
class TestRings(unittest.TestCase):

    # ----------------------------------------------------------------------
    def test_int_xgcd(self):
        for a, b in ((12, 18), (-4, 6), (7, 0), (0, -5), (35, 64)):
            g, s, t = int_xgcd(a, b)
            self.assertEqual(g, math.gcd(a, b))
            self.assertEqual(s * a + t * b, g)

    # ----------------------------------------------------------------------
    def test_parse_ring(self):
        self.assertIs(parse_ring("z"), ZZ)
        self.assertIs(parse_ring("Q"), QQ)
        self.assertIs(parse_ring("z[1/2]"), ZZ_HALF)
        self.assertIs(parse_ring("f7"), GF(7))
        self.assertEqual(parse_ring("gf3").descriptor, "f3")
        self.assertIs(parse_ring(ZZ), ZZ)

    # ----------------------------------------------------------------------
    def test_parse_ring_errors(self):
        with self.assertRaises(ValueError):
            parse_ring("f4")
        with self.assertRaises(ValueError):
            parse_ring("r")

    # ----------------------------------------------------------------------
    def test_integer_coercion(self):
        self.assertEqual(ZZ.coerce(Fraction(6, 3)), 2)
        with self.assertRaises(ValueError):
            ZZ.coerce(Fraction(1, 2))

    # ----------------------------------------------------------------------
    def test_prime_field(self):
        F5 = GF(5)
        self.assertEqual(F5.coerce(7), 2)
        self.assertEqual(F5.coerce(Fraction(1, 2)), 3)
        self.assertEqual(F5.quo(1, 2), 3)
        self.assertTrue(F5.has_half)
        self.assertFalse(GF(2).has_half)
        self.assertTrue(F5.is_field)

    # ----------------------------------------------------------------------
    def test_dyadic_ring(self):
        self.assertEqual(ZZ_HALF.coerce(Fraction(3, 8)), Fraction(3, 8))
        with self.assertRaises(ValueError):
            ZZ_HALF.coerce(Fraction(1, 3))
        self.assertEqual(ZZ_HALF.split(Fraction(12)), (3, 2))
        self.assertEqual(ZZ_HALF.split(Fraction(3, 4)), (3, -2))
        # 2 is a unit, 3 is not
        self.assertTrue(ZZ_HALF.divides(Fraction(2), Fraction(1)))
        self.assertFalse(ZZ_HALF.divides(Fraction(3), Fraction(1)))
        self.assertEqual(ZZ_HALF.unit_normal(Fraction(-6)), Fraction(-1, 2))

    # ----------------------------------------------------------------------
    def test_dyadic_xgcd(self):
        a, b = Fraction(6), Fraction(9, 2)
        g, s, t = ZZ_HALF.xgcd(a, b)
        self.assertEqual(g, 3)
        self.assertEqual(s * a + t * b, g)

    # ----------------------------------------------------------------------
    def test_equality_and_pickling_key(self):
        self.assertEqual(GF(3), parse_ring("f3"))
        self.assertNotEqual(GF(3), GF(5))
        self.assertEqual(hash(QQ), hash(parse_ring("q")))
        self.assertEqual(str(ZZ_HALF), "z2")


if __name__ == '__main__':
    unittest.main()
