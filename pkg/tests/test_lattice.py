import itertools

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from salemlat import linalg
from salemlat.errors import (DimensionMismatch, NoSalemFactor, NotFormPreserving,
                             NotNegativeDefinite, NotUnimodular, UnexpectedFactor)
from salemlat.gallery import MCMULLEN_GRAM, WEHLER_GRAM
from salemlat.lattice import (BilinearLattice, Sublattice, apply_endo_poly,
                              distinguished_sublattice, enumerate_norm_vectors, inner,
                              orthogonal_complement, salem_factor, saturated_kernel, signature,
                              verify_isometry)
from salemlat.poly import IntPolynomial

from conftest import obj


def sympy_signature(G):
    ev = sp.Matrix(G).eigenvals()
    pos = sum(m for e, m in ev.items() if sp.re(sp.N(e, 50)) > 1e-30)
    neg = sum(m for e, m in ev.items() if sp.re(sp.N(e, 50)) < -1e-30)
    n = len(G)
    return pos, neg, n - pos - neg


def box_search(G, norm):
    """Exhaustive search; |x_i| <= sqrt(norm * (Q^-1)_ii) for Q = -G bounds every solution."""
    Q = -sp.Matrix(G)
    Qi = Q.inv()
    bounds = [int(sp.floor(sp.sqrt(-norm * Qi[i, i]))) + 1 for i in range(len(G))]
    G = obj(G)
    out = []
    for x in itertools.product(*[range(-b, b + 1) for b in bounds]):
        v = obj(x)
        if v @ G @ v == norm:
            out.append(tuple(x))
    return sorted(out)


class TestSignature:
    def test_examples(self):
        assert signature(BilinearLattice(WEHLER_GRAM)) == (1, 2, 0)
        assert signature(BilinearLattice(np.diag([1] + [-1] * 12))) == (1, 12, 0)
        assert signature(BilinearLattice([[0, 0], [0, 0]])) == (0, 0, 2)
        assert signature(BilinearLattice([[0, 1], [1, 0]])) == (1, 1, 0)

    @given(st.integers(1, 5).flatmap(lambda n: st.lists(
        st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)))
    @settings(max_examples=60, deadline=None)
    def test_vs_eigenvalues(self, rows):
        A = np.array(rows, dtype=object)
        G = (A + A.T).tolist()
        assert signature(BilinearLattice(G)) == sympy_signature(G)


class TestIsometry:
    def test_identity(self):
        L = BilinearLattice(WEHLER_GRAM)
        assert verify_isometry(np.eye(3, dtype=int), L).rank == 3

    def test_violation_reports_entry(self):
        L = BilinearLattice([[0, 1], [1, 0]])
        with pytest.raises(NotFormPreserving) as exc:
            verify_isometry([[1, 1], [0, 1]], L)
        assert exc.value.entry == (1, 1)
        assert "(1, 1)" in str(exc.value)

    def test_not_unimodular(self):
        # 2 * identity scales the zero form, so only det can catch it
        with pytest.raises(NotUnimodular):
            verify_isometry([[2, 0], [0, 2]], BilinearLattice([[0, 0], [0, 0]]))

    def test_shape(self):
        with pytest.raises(DimensionMismatch):
            verify_isometry([[1]], BilinearLattice(WEHLER_GRAM))

    def test_inner(self):
        L = BilinearLattice(WEHLER_GRAM)
        assert inner(L, [1, 0, 0], [0, 1, 0]) == 2
        with pytest.raises(DimensionMismatch):
            inner(L, [1, 0], [0, 1, 0])

    def test_power_and_inverse(self, systems):
        s = systems["weyl13"].isometry
        assert (s.power(3).matrix @ s.power(-3).matrix == np.eye(13, dtype=int)).all()
        assert (s.compose(s.inverse()).matrix == np.eye(13, dtype=int)).all()


def test_apply_endo_poly():
    M = obj([[0, -1], [1, 3]])
    assert not any(apply_endo_poly(IntPolynomial([1, -3, 1]), M).flat)
    assert apply_endo_poly(IntPolynomial([5]), M).tolist() == [[5, 0], [0, 5]]


class TestKernels:
    def test_saturated_kernel_examples(self):
        L = BilinearLattice(np.eye(3, dtype=int))
        assert saturated_kernel([[2, 4, 6]], L).rank == 2
        W = saturated_kernel([[1, 1, 0], [0, 1, 1]], L)
        assert W.basis.tolist() == [[1, -1, 1]]

    def test_contains(self):
        L = BilinearLattice(np.eye(3, dtype=int))
        W = Sublattice(L, [[1, 0, 0]])
        assert W.contains([5, 0, 0]) and not W.contains([0, 1, 0])

    def test_orthogonal_complement(self, systems):
        s = systems["torus"].isometry
        _, W = distinguished_sublattice(s)
        C = orthogonal_complement(W)
        assert C.rank == 4
        assert not any((W.basis @ s.lattice.gram @ C.basis.T).flat)


class TestDistinguished:
    @pytest.mark.parametrize("name, S", [
        ("torus", [1, -7, 1]),
        ("weyl13", [1, -29, 1]),
        ("wehler-triple", [1, -18, 1]),
        ("torus-gaussian", [1, -5, -8, -5, 1]),
    ])
    def test_salem_factor_and_rank(self, systems, name, S):
        s = systems[name].isometry
        poly, W = distinguished_sublattice(s)
        assert poly == IntPolynomial(S)
        assert W.rank == poly.degree
        assert not any((apply_endo_poly(poly, s) @ W.basis.T).flat)

    def test_no_salem(self):
        L = BilinearLattice([[1, 0], [0, -1]])
        with pytest.raises(NoSalemFactor):
            distinguished_sublattice(verify_isometry(np.eye(2, dtype=int), L))

    def test_unexpected_factor(self):
        with pytest.raises(UnexpectedFactor):
            salem_factor(IntPolynomial([-1, -1, 1]))


class TestEnumerate:
    def test_mcmullen(self):
        assert enumerate_norm_vectors(BilinearLattice(MCMULLEN_GRAM), -2) == [(-1, 0), (1, 0)]

    def test_a2(self):
        assert len(enumerate_norm_vectors(BilinearLattice([[-2, 1], [1, -2]]), -2)) == 6

    def test_trivial(self):
        assert len(enumerate_norm_vectors(BilinearLattice([[-1, 0], [0, -1]]), -1)) == 4
        assert enumerate_norm_vectors(BilinearLattice([[-2]]), -1) == []

    def test_errors(self):
        with pytest.raises(NotNegativeDefinite):
            enumerate_norm_vectors(BilinearLattice(WEHLER_GRAM), -2)
        with pytest.raises(ValueError):
            enumerate_norm_vectors(BilinearLattice([[-2]]), 0)

    @given(st.integers(2, 3).flatmap(lambda n: st.lists(
        st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=n, max_size=n)),
        st.integers(-8, -1))
    @settings(max_examples=40, deadline=None)
    def test_vs_box_search(self, rows, norm):
        A = sp.Matrix(rows)
        G = -(A.T * A + sp.eye(len(rows)))  # negative definite by construction
        G = [[int(x) for x in G.row(i)] for i in range(G.rows)]
        assert enumerate_norm_vectors(BilinearLattice(G), norm) == box_search(G, norm)
