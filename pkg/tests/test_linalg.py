import numpy as np
import sympy as sp
from sympy.matrices.normalforms import smith_normal_form
from hypothesis import given, settings, strategies as st

from salemlat import linalg

from conftest import obj


def matrices(n_min=1, n_max=5, lo=-6, hi=6):
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n),
                           min_size=n, max_size=n))


def rect(max_rows=4, max_cols=6):
    return st.tuples(st.integers(1, max_rows), st.integers(1, max_cols)).flatmap(
        lambda s: st.lists(st.lists(st.integers(-5, 5), min_size=s[1], max_size=s[1]),
                           min_size=s[0], max_size=s[0]))


@given(matrices())
@settings(max_examples=80, deadline=None)
def test_det_rank_charpoly_vs_sympy(rows):
    A = obj(rows)
    S = sp.Matrix(rows)
    assert linalg.det(A) == S.det()
    assert linalg.rank(A) == S.rank()
    expected = [int(c) for c in reversed(S.charpoly().all_coeffs())]
    assert list(linalg.charpoly_coeffs(A)) == expected


@given(matrices(n_max=4))
@settings(max_examples=50, deadline=None)
def test_rational_inverse(rows):
    S = sp.Matrix(rows)
    if S.det() == 0:
        return
    inv = linalg.rational_inverse(obj(rows))
    assert sp.Matrix(inv.tolist()) == S.inv()


@given(rect())
@settings(max_examples=80, deadline=None)
def test_kernel_is_saturated_basis(rows):
    A = obj(rows)
    n = A.shape[1]
    K = linalg.integer_kernel(A, n)
    nullity = n - sp.Matrix(rows).rank()
    assert K.shape == (nullity, n)
    if nullity:
        assert not any(x != 0 for x in (A @ K.T).flat)
        # saturated: the gcd of maximal minors is 1 (Smith form has only unit invariants)
        smith = smith_normal_form(sp.Matrix(K.tolist()), domain=sp.ZZ)
        assert all(abs(smith[i, i]) == 1 for i in range(nullity))


@given(rect())
@settings(max_examples=60, deadline=None)
def test_hnf_shape(rows):
    H = linalg.hnf(obj(rows))
    assert H.shape[0] == sp.Matrix(rows).rank()
    prev = -1
    for r in H:
        piv = next(j for j, x in enumerate(r) if x != 0)
        assert piv > prev and r[piv] > 0
        for above in H:
            if above is not r and next(j for j, x in enumerate(above) if x != 0) < piv:
                assert 0 <= above[piv] < r[piv]
        prev = piv
    # same row lattice: each input row is an integer combination of H
    if H.shape[0]:
        sol = sp.Matrix(H.tolist()).T.pinv() * sp.Matrix(rows).T
        assert all(x.is_integer for x in sol)


def test_saturate():
    B = obj([[2, 4, 6]])
    assert linalg.saturate(B, 3).tolist() == [[1, 2, 3]]


def test_mat_pow():
    M = obj([[1, 1], [1, 0]])
    assert linalg.mat_pow(M, 10).tolist() == [[89, 55], [55, 34]]
    assert linalg.mat_pow(M, 0).tolist() == [[1, 0], [0, 1]]


def test_clear_denominators():
    from fractions import Fraction
    assert linalg.clear_denominators([Fraction(1, 2), Fraction(-1, 3)]) == [3, -2]


def test_big_entries_stay_exact():
    M = obj([[10 ** 30, 1], [1, 0]])
    assert linalg.det(M) == -1
    inv = linalg.integer_inverse(M)
    assert (M @ inv == np.eye(2, dtype=int)).all()
