"""
=========================
Test Exact Linear Algebra
=========================

Echelon forms, Hermite and Smith normal forms and lattice quotients over
the integers, the rationals, prime fields and ``Z[1/2]``.
"""

import io
import unittest

from lcs_torsion.errors import NotASublattice
from lcs_torsion.linalg import (
    AbelianGroupInvariants,
    EchelonForm,
    SpanMatrix,
    dump_matrix_market,
    hnf,
    integer_kernel,
    lattice_contains,
    lattice_equal,
    lattice_intersection,
    lattice_quotient,
    load_matrix_market,
    modular_rank_bound,
    rank_mod_p,
    rational_rank,
    saturate,
    snf,
)
from lcs_torsion.rings import GF, QQ, ZZ, ZZ_HALF


########################################################################
class TestAbelianGroupInvariants(unittest.TestCase):

    # ----------------------------------------------------------------------
    def test_from_factors(self):
        group = AbelianGroupInvariants.from_factors([2, 3, 2])
        self.assertEqual(group.torsion, (2, 6))
        self.assertEqual(group.order, 12)
        self.assertEqual(group.exponent, 6)
        self.assertEqual(group.display(), "(Z/2)^2 + Z/3")
        self.assertEqual(group.primary_counts(), {2: 2, 3: 1})

    # ----------------------------------------------------------------------
    def test_invalid_chain(self):
        with self.assertRaises(ValueError):
            AbelianGroupInvariants(0, (3, 2))
        with self.assertRaises(ValueError):
            AbelianGroupInvariants(-1)

    # ----------------------------------------------------------------------
    def test_operations(self):
        group = AbelianGroupInvariants.from_factors([2, 4, 3], free_rank=1)
        self.assertEqual(group.p_rank(2), 2)
        self.assertEqual(group.tensor_dim(2), 3)
        self.assertEqual(group.tensor_dim(5), 1)
        self.assertEqual(group.localize_away_from_two(), AbelianGroupInvariants.from_factors([3], 1))
        self.assertEqual(group.tensor_cyclic(2), AbelianGroupInvariants.from_factors([2, 2, 2]))
        self.assertFalse(group.is_elementary(2))
        self.assertEqual(str(AbelianGroupInvariants()), "0")

    # ----------------------------------------------------------------------
    def test_quotient_test(self):
        big = AbelianGroupInvariants.from_factors([4, 2])
        self.assertTrue(AbelianGroupInvariants.from_factors([2, 2]).torsion_is_quotient_of(big))
        self.assertFalse(AbelianGroupInvariants.from_factors([8]).torsion_is_quotient_of(big))
        self.assertFalse(AbelianGroupInvariants.from_factors([3]).torsion_is_quotient_of(big))

    # ----------------------------------------------------------------------
    def test_dict_form(self):
        group = AbelianGroupInvariants.from_primary({2: 5, 3: 2}, free_rank=2)
        self.assertEqual(group.display(), "Z^2 + (Z/2)^5 + (Z/3)^2")
        self.assertEqual(AbelianGroupInvariants.from_dict(group.to_dict()), group)


########################################################################
class TestEchelon(unittest.TestCase):

    # ----------------------------------------------------------------------
    def test_hnf(self):
        self.assertEqual(hnf(SpanMatrix.from_dense([[2, 4], [6, 8]])).to_dense(), [[2, 0], [0, 4]])

    # ----------------------------------------------------------------------
    def test_solve_and_kernel(self):
        rows = [{0: 2}, {1: 3}, {0: 2, 1: 3}, {0: 4, 1: 9}]
        form = EchelonForm(ZZ, 2, track=True)
        for row in rows:
            form.insert(row)
        self.assertEqual(form.rank, 2)
        self.assertEqual(len(form.kernel), 2)
        for relation in form.kernel:
            total = {0: 0, 1: 0}
            for g, c in relation.items():
                for col, v in rows[g].items():
                    total[col] += c * v
            self.assertEqual(total, {0: 0, 1: 0})

        target = {0: 6, 1: 3}
        combination = form.solve(target)
        total = {0: 0, 1: 0}
        for g, c in combination.items():
            for col, v in rows[g].items():
                total[col] += c * v
        self.assertEqual(total, target)

    # ----------------------------------------------------------------------
    def test_coordinates_outside_lattice(self):
        form = EchelonForm(ZZ, 2)
        form.insert({0: 2})
        self.assertFalse(form.contains({0: 1}))
        with self.assertRaises(NotASublattice):
            form.coordinates({1: 1})
        with self.assertRaises(ValueError):
            form.solve({0: 2})

    # ----------------------------------------------------------------------
    def test_ranks(self):
        M = SpanMatrix.from_dense([[2, 4], [1, 3]])
        self.assertEqual(rank_mod_p(M, 2), 1)
        self.assertEqual(rational_rank(M), 2)
        self.assertEqual(modular_rank_bound(M), 2)

    # ----------------------------------------------------------------------
    def test_integer_kernel(self):
        M = SpanMatrix.from_dense([[1, 2], [2, 4], [3, 6]])
        kernel = integer_kernel(M)
        self.assertEqual(kernel.n_rows, 2)
        self.assertEqual(kernel.n_cols, 3)
        for y in kernel.to_dense():
            self.assertEqual([sum(y[i] * M.to_dense()[i][j] for i in range(3)) for j in range(2)], [0, 0])

    # ----------------------------------------------------------------------
    def test_saturate(self):
        self.assertEqual(saturate(SpanMatrix.from_dense([[2, 4]])).to_dense(), [[1, 2]])

    # ----------------------------------------------------------------------
    def test_lattice_intersection(self):
        A = SpanMatrix.from_dense([[2, 0], [0, 1]])
        B = SpanMatrix.from_dense([[1, 1], [0, 3]])
        both = lattice_intersection(A, B)
        self.assertTrue(lattice_equal(both, SpanMatrix.from_dense([[2, 2], [0, 3]])))
        self.assertTrue(lattice_contains(A, both) and lattice_contains(B, both))
        line = SpanMatrix.from_dense([[0, 1]])
        self.assertTrue(lattice_equal(lattice_intersection(A, line), line))
        with self.assertRaises(ValueError):
            lattice_intersection(A, SpanMatrix.from_dense([[1, 0, 0]]))


########################################################################
class TestSmith(unittest.TestCase):

    # ----------------------------------------------------------------------
    def test_snf(self):
        M = SpanMatrix.from_dense([
            [12, 6, 4, 8],
            [3, 9, 6, 12],
            [2, 16, 14, 28],
            [20, 10, 10, 20],
        ])
        self.assertEqual(snf(M), (1, 10, 30))
        self.assertEqual(snf(SpanMatrix.from_dense([[6, 0], [0, 4]])), (2, 12))
        self.assertEqual(snf(SpanMatrix(3)), ())

    # ----------------------------------------------------------------------
    def test_lattice_quotient(self):
        ambient = SpanMatrix.from_dense([[1, 0], [0, 1]])
        sub = SpanMatrix.from_dense([[2, 0], [0, 3]])
        self.assertEqual(lattice_quotient(ambient, sub), AbelianGroupInvariants(0, (6,)))
        self.assertEqual(
            lattice_quotient(ambient, SpanMatrix.from_dense([[2, 0]])), AbelianGroupInvariants(1, (2,))
        )
        self.assertEqual(lattice_quotient(ambient, sub, QQ), AbelianGroupInvariants(0))
        self.assertEqual(lattice_quotient(ambient, sub, ZZ_HALF), AbelianGroupInvariants(0, (3,)))
        self.assertEqual(lattice_quotient(ambient, sub, GF(3)), AbelianGroupInvariants(1))

    # ----------------------------------------------------------------------
    def test_quotient_needs_sublattice(self):
        with self.assertRaises(NotASublattice):
            lattice_quotient(SpanMatrix.from_dense([[2, 0]]), SpanMatrix.from_dense([[1, 0]]))

    # ----------------------------------------------------------------------
    def test_containment(self):
        A = SpanMatrix.from_dense([[1, 1], [0, 2]])
        B = SpanMatrix.from_dense([[2, 0], [1, 3]])
        self.assertTrue(lattice_contains(A, B))
        self.assertTrue(lattice_equal(A, SpanMatrix.from_dense([[1, 1], [1, -1]])))
        self.assertFalse(lattice_contains(A, SpanMatrix.from_dense([[1, 0]])))


########################################################################
class TestMatrixMarket(unittest.TestCase):

    # ----------------------------------------------------------------------
    def test_dump_and_load(self):
        M = SpanMatrix.from_dense([[0, 3, 0], [-2, 0, 7]])
        stream = io.StringIO()
        dump_matrix_market(M, stream, comment="B_2 relations")
        stream.seek(0)
        self.assertEqual(load_matrix_market(stream), M)


if __name__ == '__main__':
    unittest.main()
