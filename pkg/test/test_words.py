"""
==========
Test Words
==========

Cyclic words, necklace counts, the first cyclic homology and signed
shuffle counts.
"""

import random
import unittest

from lcs_torsion.algebra import Element, Signature
from lcs_torsion.errors import EvenIndexCount
from lcs_torsion.linalg import AbelianGroupInvariants
from lcs_torsion.words import (
    CyclicWord,
    ExteriorElement,
    hc1_bruteforce,
    hc1_invariants,
    least_rotation,
    mobius,
    necklaces,
    noncomm_partial,
    partial_of_power,
    primitive_root,
    rotation_sum,
    shuffle_count,
    super_b1_torsion,
    witt_count,
    y_product,
    y_product_closed_form,
)


########################################################################
class TestCyclicWords(unittest.TestCase):

    # ----------------------------------------------------------------------
    def test_least_rotation(self):
        rng = random.Random(5)
        for _ in range(50):
            word = tuple(rng.randrange(3) for _ in range(rng.randint(1, 9)))
            k = least_rotation(word)
            rotations = [word[j:] + word[:j] for j in range(len(word))]
            self.assertEqual(word[k:] + word[:k], min(rotations))

    # ----------------------------------------------------------------------
    def test_roots(self):
        self.assertEqual(primitive_root((0, 1, 0, 1)), ((0, 1), 2))
        self.assertEqual(primitive_root((0, 0, 1)), ((0, 0, 1), 1))
        c = CyclicWord.from_word((1, 0, 1, 0))
        self.assertEqual(c.word, (0, 1, 0, 1))
        self.assertFalse(c.is_non_power)
        self.assertEqual(c.multidegree(2), (2, 2))
        with self.assertRaises(ValueError):
            CyclicWord.from_word(())

    # ----------------------------------------------------------------------
    def test_mobius(self):
        self.assertEqual([mobius(n) for n in range(1, 11)], [1, -1, -1, 0, -1, 1, -1, 0, 0, 1])

    # ----------------------------------------------------------------------
    def test_witt_count_matches_enumeration(self):
        for m in ((2, 2), (3, 3), (4, 2), (2, 2, 2), (1, 2, 3)):
            sig = Signature(len(m))
            self.assertEqual(witt_count(sig, m), len(necklaces(m, non_power=True)), m)
        self.assertEqual(len(necklaces((2, 2))), 2)
        with self.assertRaises(ValueError):
            witt_count(Signature(2), (1,))


########################################################################
class TestCyclicHomology(unittest.TestCase):

    # ----------------------------------------------------------------------
    def test_invariants(self):
        sig = Signature(2)
        self.assertEqual(hc1_invariants(sig, (2, 2)), AbelianGroupInvariants.from_factors([2]))
        self.assertEqual(hc1_invariants(sig, (1, 2)), AbelianGroupInvariants())
        self.assertEqual(hc1_invariants(Signature(1), (4,)), AbelianGroupInvariants.from_factors([4]))

    # ----------------------------------------------------------------------
    def test_bruteforce_agrees(self):
        sig = Signature(2)
        for m in ((1, 1), (2, 1), (2, 2), (3, 1)):
            self.assertEqual(hc1_bruteforce(sig, m), hc1_invariants(sig, m), m)

    # ----------------------------------------------------------------------
    def test_super_b1_torsion(self):
        self.assertEqual(super_b1_torsion(Signature(0, 1), (2,)), AbelianGroupInvariants.from_factors([2]))
        self.assertTrue(super_b1_torsion(Signature(0, 1), (3,)).is_trivial)
        with self.assertRaises(ValueError):
            super_b1_torsion(Signature(2), (2, 2))


########################################################################
class TestShuffles(unittest.TestCase):

    # ----------------------------------------------------------------------
    def test_shuffle_count(self):
        self.assertEqual(shuffle_count((0, 2, 1), (0, 1, 2)), -1)
        self.assertEqual(shuffle_count((0, 1, 2), (0, 1, 2)), 1)
        self.assertEqual(shuffle_count((0, 0, 1), (1,)), 1)
        with self.assertRaises(EvenIndexCount):
            shuffle_count((0, 1), (0, 1))

    # ----------------------------------------------------------------------
    def test_rotation_invariance(self):
        word = (0, 1, 2, 1, 0, 2)
        expected = shuffle_count(word, (0, 1, 2))
        for k in range(len(word)):
            self.assertEqual(shuffle_count(word[k:] + word[:k], (0, 1, 2)), expected)

    # ----------------------------------------------------------------------
    def test_y_product(self):
        self.assertEqual(y_product((0,)), ExteriorElement({(): 1, (0,): 1}))
        for a, m in (((0, 1, 2), 2), ((0, 2, 1, 0), 3), ((1, 0), 1)):
            self.assertEqual(y_product(a, m), y_product_closed_form(a, m))
            self.assertEqual(y_product(a, m).coefficient((0, 1, 2)), shuffle_count(a * m, (0, 1, 2)))
        with self.assertRaises(ValueError):
            y_product_closed_form((0,), 0)


########################################################################
class TestCyclicDerivatives(unittest.TestCase):

    # ----------------------------------------------------------------------
    def test_partials(self):
        sig = Signature(2)
        self.assertEqual(noncomm_partial((0, 0), 0), Element(Signature(1), {(0,): 2}))
        self.assertEqual(noncomm_partial((0, 1, 0), 0, sig), Element(sig, {(1, 0): 1, (0, 1): 1}))
        self.assertEqual(partial_of_power((0, 1), 0, 2, sig), Element(sig, {(1, 0, 1): 1}))
        self.assertEqual(rotation_sum((0, 1)), Element(sig, {(0, 1): 1, (1, 0): 1}))


if __name__ == '__main__':
    unittest.main()
