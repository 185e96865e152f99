import itertools

import numpy as np
import pytest
import sympy as sp

from salemlat import gallery
from salemlat.errors import NotUnimodular, UnknownName
from salemlat.gallery import (CAT_MAP, exterior_square, kummer_augment, torus_from_gl2,
                              two_torsion_permutation, wehler_basic_involutions,
                              wehler_involution_search)
from salemlat.lattice import BilinearLattice, signature
from salemlat.poly import IntPolynomial, is_separable

from conftest import obj, sympy_factors


def sympy_exterior_square(M):
    """Independent oracle: the 2x2 minors of M on index pairs."""
    M = sp.Matrix(M)
    pairs = list(itertools.combinations(range(M.rows), 2))
    return sp.Matrix(len(pairs), len(pairs),
                     lambda r, s: M.extract(list(pairs[r]), list(pairs[s])).det())


class TestExteriorSquare:
    def test_identity(self):
        assert (exterior_square(np.eye(4, dtype=int)) == np.eye(6, dtype=int)).all()

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_minors(self, seed):
        rng = np.random.default_rng(seed)
        M = rng.integers(-3, 4, size=(4, 4)).tolist()
        assert sp.Matrix(exterior_square(M).tolist()) == sympy_exterior_square(M)

    def test_functorial(self):
        A = obj([[1, 2, 0], [0, 1, 1], [1, 0, 1]])
        B = obj([[0, 1, 0], [1, 1, 0], [2, 0, 1]])
        assert (exterior_square(A @ B) == exterior_square(A) @ exterior_square(B)).all()


class TestTorus:
    def test_cat_map(self):
        s = torus_from_gl2(CAT_MAP)
        assert s.isometry.charpoly == IntPolynomial([-1, 1]) ** 4 * IntPolynomial([1, -7, 1])
        assert signature(s.lattice) == (3, 3, 0)

    def test_not_gl2(self):
        with pytest.raises(NotUnimodular):
            torus_from_gl2([[2, 0], [0, 1]])

    def test_gaussian_salem_is_quartic(self):
        s = gallery.builtin("torus-gaussian")
        f = sympy_factors(s.isometry.charpoly)
        assert f == {IntPolynomial([1, 1]): 2, IntPolynomial([1, -5, -8, -5, 1]): 1}


class TestKummer:
    def test_cycle_type_and_signature(self):
        s = gallery.builtin("kummer")
        assert s.expected["cycle_type"] == [1, 3, 3, 3, 3, 3]
        assert signature(s.lattice) == (3, 19, 0)

    def test_permutation_is_linear_mod_two(self):
        perm = two_torsion_permutation(CAT_MAP)
        assert perm[0] == 0 and sorted(perm) == list(range(16))
        for x, y in itertools.product(range(16), repeat=2):
            assert perm[x ^ y] == perm[x] ^ perm[y]

    def test_charpoly(self):
        s = kummer_augment(torus_from_gl2(CAT_MAP), CAT_MAP)
        assert sympy_factors(s.isometry.charpoly) == {
            IntPolynomial([-1, 1]): 10, IntPolynomial([1, 1, 1]): 5, IntPolynomial([1, -7, 1]): 1}


class TestWehler:
    def test_gram_is_published_matrix(self):
        # the displayed Picard lattice of a generic (2,2,2) hypersurface
        assert gallery.builtin("wehler-gram").gram.tolist() == [[0, 2, 2], [2, 0, 2], [2, 2, 0]]

    def test_involution_search(self):
        found = wehler_involution_search(2)
        assert len(found) == 18
        G = obj(gallery.WEHLER_GRAM)
        for M in found:
            assert (M @ M == np.eye(3, dtype=int)).all()
            assert (M.T @ G @ M == G).all()

    def test_basic_involutions(self):
        i1, i2, i3 = wehler_basic_involutions()
        assert i1[:, 0].tolist() == [-1, 2, 2]
        assert i2[:, 1].tolist() == [2, -1, 2]
        assert i3[:, 2].tolist() == [2, 2, -1]

    def test_triple_has_separable_cyclotomic_factor(self):
        s = gallery.builtin("wehler-triple").isometry
        assert s.charpoly == IntPolynomial([1, 1]) * IntPolynomial([1, -18, 1])
        assert is_separable(s.charpoly)

    def test_no_minus_two_classes(self):
        # every class has even square divisible by 4, so no (-2)-curves
        G = obj(gallery.WEHLER_GRAM)
        for v in itertools.product(range(-4, 5), repeat=3):
            assert obj(v) @ G @ obj(v) != -2


class TestWeyl13:
    def test_charpoly(self):
        s = gallery.builtin("weyl13").isometry
        assert sympy_factors(s.charpoly) == {
            IntPolynomial([-1, 1]): 10, IntPolynomial([1, 1]): 1, IntPolynomial([1, -29, 1]): 1}

    def test_first_row_matches_display(self):
        assert gallery.WEYL13[0] == [92, 8, 8, 8, 14, 14, 14, 25, 25, 25, 44, 44, 44]
        assert gallery.WEYL13[12][-1] == -6


def test_mcmullen_gram():
    L = gallery.builtin("mcmullen-sublattice")
    assert isinstance(L, BilinearLattice)
    assert L.gram.tolist() == [[-2, -1], [-1, -20]]


def test_names():
    assert len(gallery.names()) >= 5
    with pytest.raises(UnknownName):
        gallery.builtin("no-such-surface")


@pytest.mark.parametrize("name", gallery.system_names())
def test_every_system_is_an_isometry(name):
    s = gallery.builtin(name)
    M, G = s.matrix, s.lattice.gram
    assert (M.T @ G @ M == G).all()
