"""Entropy, the isotropic eigenvectors e+ / e-, and averaged iterations.

Iterates are always formed exactly in integers; the real scaling by powers of
the Salem root happens last, in mpmath at ``working_dps()`` digits.
"""

from dataclasses import dataclass, field
from math import comb
from typing import NamedTuple, Optional

import mpmath
import numpy as np

from . import linalg
from ._config import DEFAULT_TOL, working_dps
from .errors import (BadReference, DimensionMismatch, NoConvergence, NotDiagonalizable,
                     ZeroEntropy, ZeroLimit)
from .lattice import apply_endo_poly, distinguished_sublattice, salem_factor
from .poly import IntPolynomial, cyclotomic


class Entropy(NamedTuple):
    value: mpmath.mpf
    salem: Optional[IntPolynomial]
    salem_root: Optional[mpmath.mpf] = None


def entropy(sigma, tol=DEFAULT_TOL):
    """log of the Salem root of the characteristic polynomial, or 0."""
    _, cls = salem_factor(sigma.charpoly, tol)
    if cls is None:
        return Entropy(mpmath.mpf(0), None, None)
    with mpmath.workdps(working_dps()):
        return Entropy(mpmath.log(cls.salem_root), cls.remainder, cls.salem_root)


def salem_root(sigma, tol=DEFAULT_TOL):
    h = entropy(sigma, tol)
    if h.salem is None:
        raise ZeroEntropy("isometry has zero entropy")
    return h.salem_root


def _mp(v):
    return np.array([mpmath.mpf(int(x)) if not isinstance(x, mpmath.mpf) else x for x in v],
                    dtype=object)


def _norm(v):
    return mpmath.sqrt(mpmath.fsum(x * x for x in v))


def _dot(G, v, w):
    return v @ G @ w


def _vector(L, v):
    v = np.asarray(v, dtype=object)
    if v.shape != (L.rank,):
        raise DimensionMismatch(f"expected a vector of length {L.rank}")
    return v


@dataclass(frozen=True, eq=False)
class SpectralSplit:
    """Isotropic eigenvectors for lambda and 1/lambda, scaled so e+.e- = 1."""

    lam: mpmath.mpf
    e_plus: np.ndarray
    e_minus: np.ndarray
    normalization: mpmath.mpf
    residual_plus: mpmath.mpf
    residual_minus: mpmath.mpf
    reference: np.ndarray
    salem: IntPolynomial
    gram: np.ndarray = field(repr=False)

    def inner(self, v, w):
        return _dot(self.gram, v, w)

    def coefficients(self, u):
        """(a, b) with u = a e+ + b e- + (part orthogonal to both)."""
        return self.inner(u, self.e_minus), self.inner(u, self.e_plus)


def restriction(sigma, W):
    """Integer matrix R with M B^T = B^T R for the basis rows B of an invariant W."""
    B = W.basis
    BBt_inv = linalg.rational_inverse(B @ B.T)
    R = BBt_inv @ (B @ sigma.matrix @ B.T)
    R = np.vectorize(lambda x: int(x) if x.denominator == 1 else None, otypes=[object])(R)
    if any(x is None for x in R.flat) or not (sigma.matrix @ B.T == B.T @ R).all():
        raise ValueError("sublattice is not invariant")
    return R


def _eigvec(R, mu, dps, steps=4):
    n = R.shape[0]
    with mpmath.workdps(dps + 10):
        shift = mu * (1 + mpmath.mpf(10) ** (-(dps // 2)))
        A = mpmath.matrix([[mpmath.mpf(int(R[i, j])) - (shift if i == j else 0) for j in range(n)]
                           for i in range(n)])
        x = mpmath.matrix([1] * n)
        for _ in range(steps):
            x = mpmath.lu_solve(A, x)
            x = x / mpmath.norm(x)
        return [x[i] for i in range(n)]


def default_reference(sigma, W=None):
    """First basis vector with positive square, else a small positive class in W."""
    L = sigma.lattice
    for i in range(L.rank):
        if L.gram[i, i] > 0:
            h = linalg.zeros(L.rank)
            h[i] = 1
            return h
    if W is not None and W.rank:
        rows = list(W.basis)
        candidates = rows + [a + b for k, a in enumerate(rows) for b in rows[k + 1:]] \
            + [a - b for k, a in enumerate(rows) for b in rows[k + 1:]]
        for v in candidates:
            if L.norm(v) > 0:
                return np.array(v, dtype=object)
    raise BadReference("no class with positive self-intersection found; pass one explicitly")


def spectral_split(sigma, h=None, tol=DEFAULT_TOL):
    """e+ and e- inside ker S(M), by inverse iteration on the restricted matrix.

    Signs are fixed by e+.h > 0 and e-.h > 0, scale by e+.e- = 1.
    """
    L = sigma.lattice
    ent = entropy(sigma, tol)
    if ent.salem is None:
        raise ZeroEntropy("isometry has zero entropy")
    _, W = distinguished_sublattice(sigma, tol)
    h = default_reference(sigma, W) if h is None else _vector(L, h)
    if L.norm(h) <= 0:
        raise BadReference("reference class must have positive self-intersection")
    dps = working_dps()
    R = restriction(sigma, W)
    Bt = W.basis.T
    lam = ent.salem_root
    G = L.gram
    with mpmath.workdps(dps):
        ep = Bt @ np.array(_eigvec(R, lam, dps), dtype=object)
        em = Bt @ np.array(_eigvec(R, 1 / lam, dps), dtype=object)
        hp = _dot(G, ep, h)
        if hp == 0:
            raise BadReference("reference class is orthogonal to e+")
        if hp < 0:
            ep = -ep
        c = _dot(G, ep, em)
        if c == 0:
            raise BadReference("e+ and e- are orthogonal; form is degenerate on E")
        em = em / c
        if _dot(G, em, h) <= 0:
            raise BadReference("reference class does not select a common sheet for e+ and e-")
        # split the scale evenly so neither vector is tiny
        s = mpmath.sqrt(_norm(em) / _norm(ep))
        ep, em = ep * s, em / s
        res_p = _norm(sigma.matrix @ ep - lam * ep)
        res_m = _norm(sigma.matrix @ em - em / lam)
        norm = _dot(G, ep, em)
    return SpectralSplit(lam=lam, e_plus=ep, e_minus=em, normalization=norm,
                         residual_plus=res_p, residual_minus=res_m,
                         reference=linalg.frozen(h), salem=ent.salem, gram=G)


def power_iterate_class(sigma, v, k_max=200, tol=DEFAULT_TOL, full_output=False):
    """lambda^-k M^k v at the first k where successive iterates agree to tol.

    The limit is (v.e-) e+; a start with no e- component decays to zero and
    raises ZeroLimit.
    """
    v = _vector(sigma.lattice, v)
    lam = salem_root(sigma, tol)
    with mpmath.workdps(working_dps()):
        w = np.array(v, dtype=object)
        prev = _mp(w)
        scale0 = _norm(prev)
        if scale0 == 0:
            raise ZeroLimit("start vector is zero")
        for k in range(1, k_max + 1):
            w = sigma.matrix @ w
            cur = _mp(w) / lam ** k
            size = _norm(cur)
            if size <= tol * scale0:
                raise ZeroLimit(f"iterates decay to zero (|x_{k}| = {mpmath.nstr(size, 5)})")
            if _norm(cur - prev) <= tol * size:
                return (cur, k) if full_output else cur
            prev = cur
    raise NoConvergence(f"no convergence within {k_max} steps")


def averaged_class(sigma, v, k):
    """lambda^-k (M^k + M^-k) v, with the integer part computed exactly."""
    v = _vector(sigma.lattice, v)
    lam = salem_root(sigma)
    w = linalg.mat_pow(sigma.matrix, k) @ v + linalg.mat_pow(sigma.inverse_matrix, k) @ v
    with mpmath.workdps(working_dps()):
        return _mp(w) / lam ** k


def is_diagonalizable(sigma, tol=DEFAULT_TOL):
    """True iff the product of the distinct irreducible factors annihilates M."""
    factors, cls = salem_factor(sigma.charpoly, tol)
    radical = IntPolynomial([1])
    for n, _ in factors:
        radical = radical * cyclotomic(n)
    if cls is not None:
        radical = radical * cls.remainder
    return not any(x != 0 for x in apply_endo_poly(radical, sigma).flat)


@dataclass(frozen=True, eq=False)
class RecursionTrace:
    iterates: list
    converged: bool
    rate_estimate: mpmath.mpf
    limit: np.ndarray
    a: mpmath.mpf
    b: mpmath.mpf
    split: SpectralSplit = field(repr=False)

    @property
    def steps(self):
        return len(self.iterates) - 1

    def to_json(self, digits=12):
        s = lambda x: mpmath.nstr(x, digits)
        return {
            "iterates": self.steps,
            "converged": self.converged,
            "rate": s(self.rate_estimate),
            "limit": [s(x) for x in self.limit],
            "a": s(self.a),
            "b": s(self.b),
            "precision_digits": digits,
        }


def cantat_recursion(sigma, v0, max_iter=1000, tol=DEFAULT_TOL, h=None):
    """Iterate v_n = (M v_{n-1} + M^-1 v_{n-1}) / (lambda + 1/lambda).

    The E = span(e+, e-) part of v0 is fixed by the averaged map while every
    other eigencomponent shrinks by at least 2 / (lambda + 1/lambda) per step,
    so the limit is u = a e+ + b e- with a = v0.e-, b = v0.e+.
    """
    v0 = _vector(sigma.lattice, v0)
    split = spectral_split(sigma, h, tol)
    if not is_diagonalizable(sigma, tol):
        raise NotDiagonalizable("minimal polynomial is not squarefree")
    A = sigma.matrix + sigma.inverse_matrix
    with mpmath.workdps(working_dps()):
        c = split.lam + 1 / split.lam
        w = np.array(v0, dtype=object)
        iterates = [_mp(w)]
        diffs = []
        for n in range(1, max_iter + 1):
            w = A @ w
            cur = _mp(w) / c ** n
            diffs.append(_norm(cur - iterates[-1]))
            iterates.append(cur)
            if diffs[-1] <= tol * _norm(cur):
                break
        else:
            raise NoConvergence(f"recursion did not converge in {max_iter} steps")
        nonzero = [d for d in diffs if d > 0]
        if len(nonzero) >= 2:
            # even window: eigenvalue -1 components make consecutive ratios alternate
            m = len(nonzero) - 1
            if m > 1 and m % 2:
                m -= 1
            rate = (nonzero[-1] / nonzero[-1 - m]) ** (mpmath.mpf(1) / m)
        else:
            rate = mpmath.mpf(0)
        u = iterates[-1]
        a, b = split.coefficients(u)
    return RecursionTrace(iterates=iterates, converged=True, rate_estimate=rate,
                          limit=u, a=a, b=b, split=split)


def eigen_identity_residual(sigma, u, lam):
    """|M u + M^-1 u - (lambda + 1/lambda) u| / |u|."""
    with mpmath.workdps(working_dps()):
        r = sigma.matrix @ u + sigma.inverse_matrix @ u - (lam + 1 / lam) * u
        return _norm(r) / _norm(u)


def wedge_check(split, u, tol=DEFAULT_TOL):
    """Check u^2 = 2ab (e+.e-) where a = u.e-, b = u.e+ (e+ and e- are isotropic)."""
    with mpmath.workdps(working_dps()):
        a, b = split.coefficients(u)
        gap = abs(split.inner(u, u) - 2 * a * b * split.normalization)
    return a, b, bool(gap <= tol)


class BinomialCheck(NamedTuple):
    lhs: mpmath.mpf
    rhs: mpmath.mpf
    gap: mpmath.mpf
    exceeds_power_of_two: bool


def binomial_identity_check(lam, m):
    """sum_j C(m, j) lam^(m - 2j) against (lam + 1/lam)^m, and the bound > 2^m."""
    if m < 1:
        raise ValueError("m must be positive")
    lam = mpmath.mpf(lam)
    if lam <= 1:
        raise ValueError("lambda must exceed 1")
    # both sides are ~ (lam + 1/lam)^m; add that many digits so the gap is absolute
    extra = int(m * mpmath.log10(lam + 1 / lam)) + 1
    with mpmath.workdps(working_dps() + extra):
        lhs = mpmath.fsum(comb(m, j) * lam ** (m - 2 * j) for j in range(m + 1))
        rhs = (lam + 1 / lam) ** m
        return BinomialCheck(lhs, rhs, abs(lhs - rhs), bool(lhs > 2 ** m))


def periodic_orthogonality_test(c, W, salem=None):
    """True iff c pairs to zero with every basis vector of W.

    When ``salem`` is given, also asserts S(1) != 0: the coefficient sum that
    forces periodic classes to be orthogonal to distinguished ones.
    """
    c = _vector(W.ambient, c)
    if salem is not None and salem(1) == 0:
        raise ValueError("1 is a root of the Salem factor")
    return all(W.ambient.inner(c, w) == 0 for w in W.basis)


def positive_cone_test(L, v, h):
    """v^2 > 0 and v.h > 0 (the sheet of the cone containing h)."""
    h = _vector(L, h)
    v = _vector(L, v)
    if L.norm(h) <= 0:
        raise BadReference("reference class must have positive self-intersection")
    return bool(v @ L.gram @ v > 0 and v @ L.gram @ h > 0)
