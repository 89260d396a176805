"""
Tests for Gabidulin contexts, codes, structural verifiers and automorphisms.
"""
import sys
import unittest
from pathlib import Path

import numpy as np

sys.path.append(str(Path(__file__).resolve().parents[1]))

from mrdkit.utils import gabidulin, matfq, rankcode
from mrdkit.utils.errors import BadEll, CharTwo, OddN, TooLarge
from mrdkit.utils.ffield import field_ctx_new

TRIALS_PER_TEST = 20

_CONTEXTS = {}


def gab_ctx(q, n):
    """Gabidulin contexts are cached per (q, n) across the suite"""
    if (q, n) not in _CONTEXTS:
        _CONTEXTS[(q, n)] = gabidulin.gab_ctx_new(field_ctx_new(q, 1, n))
    return _CONTEXTS[(q, n)]


class TestContext(unittest.TestCase):
    def test_ternary_plane_matrices(self):
        gctx = gab_ctx(3, 2)
        self.assertEqual([int(g) for g in gctx.basis], [4, 7])
        self.assertEqual([int(d) for d in gctx.dual], [7, 4])
        self.assertEqual(gctx.gram.tolist(), [[0, 1], [1, 0]])
        self.assertEqual(gctx.shift.tolist(), [[0, 1], [1, 0]])
        self.assertEqual(int(gctx.sigma), 4)
        self.assertEqual(gctx.singer.tolist(), [[1, 1], [2, 1]])
        self.assertEqual(int(gctx.singer_det), 2)
        self.assertEqual(gctx.skipped, ())

    def test_singer_fourth_power(self):
        gctx = gab_ctx(3, 2)
        self.assertEqual(gctx.singer_pow(4).tolist(), [[2, 0], [0, 2]])
        self.assertTrue(gabidulin.matrix_order_is(gctx.singer, 8))

    def test_epsilon_of_basis(self):
        gctx = gab_ctx(3, 2)
        self.assertTrue(np.array_equal(gabidulin.epsilon(gctx.basis, list(gctx.basis)), gctx.identity()))
        with self.assertRaises(ValueError):
            gabidulin.epsilon(gctx.basis, [gctx.basis[0]])

    def test_mult_matrix_of_one(self):
        gctx = gab_ctx(5, 3)
        self.assertTrue(np.array_equal(gctx.mult_matrix(gctx.ctx.one()), gctx.identity()))

    def test_skipped_for_odd_n(self):
        self.assertEqual(gab_ctx(3, 3).skipped, ("shift-det", "gram-det-nonsquare"))
        self.assertEqual(gab_ctx(2, 2).skipped, ("gram-det-nonsquare",))

    def test_describe(self):
        summary = gab_ctx(3, 2).describe()
        self.assertEqual(summary["gamma"], [[1], [1]])
        self.assertEqual(summary["sigma"], [[1], [1]])
        self.assertEqual(summary["S"], [[1, 1], [2, 1]])
        self.assertEqual(summary["skipped"], [])

    def test_scalar_order(self):
        GF7 = gab_ctx(7, 2).field
        self.assertTrue(gabidulin.scalar_order_is(GF7(3), 6))
        self.assertFalse(gabidulin.scalar_order_is(GF7(2), 6))
        self.assertFalse(gabidulin.scalar_order_is(GF7(0), 6))


class TestCodes(unittest.TestCase):
    def test_full_length_is_full_space(self):
        gctx = gab_ctx(3, 2)
        self.assertEqual(gabidulin.gab_code(gctx, 2), rankcode.full_space(gctx.ctx, 2, 2))

    def test_first_code_is_field_algebra(self):
        gctx = gab_ctx(5, 2)
        self.assertEqual(gabidulin.gab_code(gctx, 1), gctx.algebra)

    def test_bad_ell(self):
        gctx = gab_ctx(3, 2)
        for ell in (0, 3):
            with self.assertRaises(BadEll):
                gabidulin.gab_code(gctx, ell)
        with self.assertRaises(BadEll):
            gabidulin.aut_generators(gctx, 2)

    def test_mrd(self):
        gctx = gab_ctx(3, 3)
        for ell, distance in ((1, 3), (2, 2)):
            code = gabidulin.gab_code(gctx, ell)
            self.assertEqual(code.dim, 3 * ell)
            self.assertEqual(rankcode.min_distance(code), distance)
            self.assertTrue(rankcode.is_mrd(code))

    def test_nested(self):
        gctx = gab_ctx(2, 4)
        smaller = gabidulin.gab_code(gctx, 1)
        larger = gabidulin.gab_code(gctx, 3)
        for G in smaller.gens:
            self.assertIn(G, larger)


class TestStructure(unittest.TestCase):
    def test_basechange(self):
        gctx = gab_ctx(3, 2)
        for alpha in gctx.ctx.elements():
            self.assertTrue(gabidulin.verify_basechange(gctx, alpha))

    def test_basechange_random_elements(self):
        gctx = gab_ctx(3, 4)
        rng = np.random.default_rng(41)
        for value in rng.integers(0, gctx.ctx.qn, TRIALS_PER_TEST):
            self.assertTrue(gabidulin.verify_basechange(gctx, gctx.ctx.from_int(int(value))))

    def test_trace_and_frobenius(self):
        for q, n in ((3, 2), (2, 3), (5, 2), (3, 4)):
            gctx = gab_ctx(q, n)
            self.assertTrue(gabidulin.verify_trace_vanishing(gctx))
            self.assertTrue(gabidulin.verify_frobenius_conjugation(gctx))

    def test_sampled_powers(self):
        gctx = gab_ctx(3, 4)
        self.assertTrue(gabidulin.verify_trace_vanishing(gctx, cap=10))
        self.assertTrue(gabidulin.verify_gram_singer_symmetric(gctx, cap=10))

    def test_cyclic_decomposition(self):
        for q, n in ((3, 2), (2, 3), (3, 4)):
            self.assertTrue(gabidulin.verify_cyclic_decomposition(gab_ctx(q, n)))

    def test_normalizer(self):
        for q, n in ((3, 2), (5, 2), (2, 3)):
            self.assertTrue(gabidulin.verify_normalizer(gab_ctx(q, n)))

    def test_normalizer_cap(self):
        with self.assertRaises(TooLarge):
            gabidulin.verify_normalizer(gab_ctx(3, 4))

    def test_gram_singer_symmetric(self):
        for q, n in ((3, 2), (7, 2), (2, 3)):
            self.assertTrue(gabidulin.verify_gram_singer_symmetric(gab_ctx(q, n)))


class TestSymmetry(unittest.TestCase):
    def test_closed_form(self):
        gctx = gab_ctx(3, 2)
        self.assertTrue(gabidulin.expected_symmetric(gctx, 5, 0))
        self.assertTrue(gabidulin.expected_symmetric(gctx, 4, 1))
        self.assertFalse(gabidulin.expected_symmetric(gctx, 2, 1))
        self.assertFalse(gabidulin.expected_symmetric(gab_ctx(3, 3), 0, 1))

    def test_table(self):
        for q, n in ((3, 2), (3, 4), (7, 2)):
            self.assertTrue(gabidulin.verify_symmetry_table(gab_ctx(q, n)))

    def test_table_cap(self):
        with self.assertRaises(TooLarge):
            gabidulin.verify_symmetry_table(gab_ctx(3, 4), cap=100)


class TestDuality(unittest.TestCase):
    def test_dual_of_half(self):
        for q, n in ((3, 2), (3, 4), (7, 2), (3, 6)):
            self.assertTrue(gabidulin.verify_dual_of_half(gab_ctx(q, n)))

    def test_half_map_needs_even_n(self):
        with self.assertRaises(OddN):
            gabidulin.half_dual_map(gab_ctx(3, 3))

    def test_gram_det_square_class(self):
        self.assertFalse(gabidulin.gram_det_is_square(gab_ctx(3, 2)))
        self.assertTrue(gabidulin.gram_det_is_square(gab_ctx(3, 3)))
        with self.assertRaises(CharTwo):
            gabidulin.gram_det_is_square(gab_ctx(2, 2))


class TestAutomorphisms(unittest.TestCase):
    def test_generators_fix_code(self):
        for q, n, ell in ((3, 2, 1), (3, 3, 2), (2, 4, 3)):
            gens = gabidulin.aut_generators(gab_ctx(q, n), ell)
            self.assertEqual(len(gens), 4)
            self.assertEqual(gens[-1].kind, rankcode.IMPROPER)

    def test_improper_swap(self):
        for q, n, ell in ((3, 2, 1), (3, 4, 2), (3, 3, 2)):
            self.assertTrue(gabidulin.verify_improper_swap(gab_ctx(q, n), ell))

    def test_order_formula(self):
        self.assertEqual(gabidulin.aut_order(gab_ctx(3, 2), 1), 128)
        self.assertEqual(gabidulin.aut_order(gab_ctx(5, 2), 1), 576)
        self.assertEqual(gabidulin.aut_order(gab_ctx(3, 4), 2), 25600)

    def test_order_exhaustive(self):
        for q in (3, 5):
            gctx = gab_ctx(q, 2)
            code = gabidulin.gab_code(gctx, 1)
            found = rankcode.brute_equivalences(code, code)
            self.assertEqual(len(found), gabidulin.aut_order(gctx, 1))

    def test_generators_are_isometries(self):
        gctx = gab_ctx(7, 2)
        tau = gabidulin.improper_generator(gctx, 1)
        self.assertTrue(np.array_equal(tau.X @ gctx.gram, gctx.identity()))
        self.assertTrue(np.array_equal(matfq.det(tau.X) * matfq.det(tau.Y), matfq.det(gctx.shift_pow(0))))


if __name__ == "__main__":
    unittest.main()
