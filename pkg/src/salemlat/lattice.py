"""Integer lattices with a symmetric bilinear form and their isometries."""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import linalg
from ._config import DEFAULT_TOL
from .errors import (DimensionMismatch, NoSalemFactor, NotFormPreserving,
                     NotNegativeDefinite, NotUnimodular, UnexpectedFactor)
from .poly import IntPolynomial, charpoly, classify_salem, strip_cyclotomic_factors

JSON_SAFE_INT = 2 ** 53


def _json_int(x):
    x = int(x)
    return x if abs(x) < JSON_SAFE_INT else str(x)


def matrix_to_json(M):
    return [[_json_int(x) for x in row] for row in M]


@dataclass(frozen=True, eq=False)
class BilinearLattice:
    """Z^n with the symmetric integer Gram matrix ``gram``."""

    gram: np.ndarray

    def __post_init__(self):
        G = linalg.int_matrix(self.gram)
        if G.shape[0] != G.shape[1] or G.shape[0] == 0:
            raise ValueError("Gram matrix must be square and non-empty")
        if not (G == G.T).all():
            raise ValueError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", G)

    @property
    def rank(self):
        return self.gram.shape[0]

    def _check(self, v):
        v = np.asarray(v, dtype=object)
        if v.shape != (self.rank,):
            raise DimensionMismatch(f"expected a vector of length {self.rank}, got shape {v.shape}")
        return v

    def inner(self, v, w):
        return self._check(v) @ self.gram @ self._check(w)

    def norm(self, v):
        """Self-intersection v.v."""
        return self.inner(v, v)

    def signature(self):
        return signature(self)

    def __eq__(self, other):
        return isinstance(other, BilinearLattice) and np.array_equal(self.gram, other.gram)

    def __hash__(self):
        return hash(tuple(map(tuple, self.gram)))

    def to_json(self):
        return {"rank": self.rank, "gram": matrix_to_json(self.gram)}


def inner(L, v, w):
    return L.inner(v, w)


def signature(L):
    """(positive, negative, zero) counts by congruence diagonalization over Q."""
    G = [[Fraction(x) for x in row] for row in L.gram]
    n = len(G)
    pos = neg = 0
    active = list(range(n))
    while active:
        i = next((k for k in active if G[k][k] != 0), None)
        if i is None:
            pair = next(((a, b) for a in active for b in active if a < b and G[a][b] != 0), None)
            if pair is None:
                break
            a, b = pair
            # e_a -> e_a + e_b gives diagonal 2 G[a][b] != 0 (all diagonals are zero here)
            for k in range(n):
                G[a][k] += G[b][k]
            for k in range(n):
                G[k][a] += G[k][b]
            i = a
        p = G[i][i]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(i)
        for r in active:
            f = G[r][i] / p
            if f:
                for c in range(n):
                    G[r][c] -= f * G[i][c]
        for r in active:
            G[i][r] = G[r][i] = Fraction(0)
    return pos, neg, n - pos - neg


@dataclass(frozen=True, eq=False)
class LatticeIsometry:
    """A form-preserving unimodular matrix acting on column vectors.

    Build instances with :func:`verify_isometry`; the constructor does not
    re-check the form.
    """

    matrix: np.ndarray
    lattice: BilinearLattice

    @property
    def rank(self):
        return self.lattice.rank

    @cached_property
    def inverse_matrix(self):
        return linalg.frozen(linalg.integer_inverse(self.matrix))

    @cached_property
    def charpoly(self):
        return charpoly(self.matrix)

    def inverse(self):
        return LatticeIsometry(self.inverse_matrix, self.lattice)

    def power(self, k):
        base = self.matrix if k >= 0 else self.inverse_matrix
        return LatticeIsometry(linalg.frozen(linalg.mat_pow(base, abs(k))), self.lattice)

    def apply(self, v):
        return self.matrix @ self.lattice._check(v)

    def compose(self, other):
        """self after other."""
        return LatticeIsometry(linalg.frozen(self.matrix @ other.matrix), self.lattice)

    def to_json(self):
        out = self.lattice.to_json()
        out["matrix"] = matrix_to_json(self.matrix)
        return out


def verify_isometry(M, L):
    """Validate M^T G M = G exactly and det M = +-1."""
    M = linalg.int_matrix(M)
    n = L.rank
    if M.shape != (n, n):
        raise DimensionMismatch(f"matrix shape {M.shape} does not match lattice rank {n}")
    P = M.T @ L.gram @ M
    for i in range(n):
        for j in range(n):
            if P[i, j] != L.gram[i, j]:
                raise NotFormPreserving(
                    f"M^T G M differs from G at entry ({i}, {j}): {P[i, j]} != {L.gram[i, j]}",
                    entry=(i, j), got=P[i, j], expected=L.gram[i, j])
    d = linalg.det(M)
    if d not in (1, -1):
        raise NotUnimodular(f"det M = {d}")
    return LatticeIsometry(M, L)


def apply_endo_poly(Q, sigma):
    """Q(M) = q_0 I + q_1 M + ... + q_n M^n by Horner's scheme."""
    M = sigma.matrix if isinstance(sigma, LatticeIsometry) else np.asarray(sigma, dtype=object)
    n = M.shape[0]
    acc = linalg.zeros((n, n))
    eye = linalg.identity(n)
    if not isinstance(Q, IntPolynomial):
        Q = IntPolynomial(Q)
    for c in reversed(Q.coeffs):
        acc = acc @ M + c * eye
    return acc


@dataclass(frozen=True, eq=False)
class Sublattice:
    """Saturated sublattice; ``basis`` rows are in Hermite normal form."""

    ambient: BilinearLattice
    basis: np.ndarray

    def __post_init__(self):
        B = np.asarray(self.basis, dtype=object)
        if B.size == 0:
            B = linalg.zeros((0, self.ambient.rank))
        B = linalg.frozen(B)
        object.__setattr__(self, "basis", B)

    @property
    def rank(self):
        return self.basis.shape[0]

    def gram(self):
        """Restriction of the ambient form to the basis."""
        return self.basis @ self.ambient.gram @ self.basis.T

    def contains(self, v):
        v = self.ambient._check(v)
        if self.rank == 0:
            return all(x == 0 for x in v)
        stacked = np.vstack([self.basis, v.reshape(1, -1)])
        return linalg.rank(stacked) == self.rank

    def __eq__(self, other):
        return (isinstance(other, Sublattice) and self.ambient == other.ambient
                and np.array_equal(self.basis, other.basis))

    def __hash__(self):
        return hash(tuple(map(tuple, self.basis)))

    def to_json(self):
        return {"rank": self.rank, "basis": matrix_to_json(self.basis)}


def saturated_kernel(A, L):
    """Sublattice {v in Z^n : A v = 0}; an integer kernel is always saturated."""
    A = np.asarray(A, dtype=object)
    if A.ndim != 2 or A.shape[1] != L.rank:
        raise DimensionMismatch(f"matrix must have {L.rank} columns")
    return Sublattice(L, linalg.integer_kernel(A, L.rank))


def salem_factor(p, tol=DEFAULT_TOL):
    """Split a characteristic polynomial into cyclotomic factors and a Salem factor.

    Returns ``(factors, classification)``; the classification is None when
    every factor is cyclotomic.
    """
    factors, rem = strip_cyclotomic_factors(p)
    if rem.degree == 0:
        return factors, None
    cls = classify_salem(rem, tol)
    if not cls.is_salem:
        raise UnexpectedFactor(
            f"characteristic polynomial {p} has non-cyclotomic, non-Salem part {rem}")
    return factors, cls


def distinguished_sublattice(sigma, tol=DEFAULT_TOL):
    """(S, ker S(M)) for the Salem factor S of the characteristic polynomial."""
    _, cls = salem_factor(sigma.charpoly, tol)
    if cls is None:
        raise NoSalemFactor("all factors of the characteristic polynomial are cyclotomic")
    S = cls.remainder
    return S, saturated_kernel(apply_endo_poly(S, sigma), sigma.lattice)


def orthogonal_complement(W):
    """Saturated {v : v.w = 0 for all w in W} under the ambient form."""
    L = W.ambient
    if W.rank == 0:
        return Sublattice(L, linalg.hnf(linalg.identity(L.rank)))
    return saturated_kernel(W.basis @ L.gram, L)


def _ldl(Q):
    """Q = L D L^T over Q for symmetric Q; returns (L, d) or None if a pivot is <= 0."""
    n = len(Q)
    A = [[Fraction(x) for x in row] for row in Q]
    Lm = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    d = [Fraction(0)] * n
    for j in range(n):
        d[j] = A[j][j] - sum(Lm[j][k] ** 2 * d[k] for k in range(j))
        if d[j] <= 0:
            return None
        for i in range(j + 1, n):
            Lm[i][j] = (A[i][j] - sum(Lm[i][k] * Lm[j][k] * d[k] for k in range(j))) / d[j]
    return Lm, d


def enumerate_norm_vectors(L, norm):
    """All v with v.v = norm on a negative definite lattice, sorted lexicographically.

    Fincke--Pohst style: with -G = L D L^T the norm splits as a sum of
    squares d_i (x_i + sum_{j>i} L_ji x_j)^2, and coordinates are fixed from
    the last one down, each inside the interval left by the remaining budget.
    """
    norm = int(norm)
    Q = [[-x for x in row] for row in L.gram]
    dec = _ldl(Q)
    if dec is None:
        raise NotNegativeDefinite("Gram matrix is not negative definite")
    if norm >= 0:
        raise ValueError("norm must be a negative integer")
    Lm, d = dec
    n = L.rank
    target = Fraction(-norm)
    found = []
    x = [0] * n

    def search(i, budget):
        if i < 0:
            if budget == 0:
                found.append(tuple(x))
            return
        center = -sum(Lm[j][i] * x[j] for j in range(i + 1, n))
        radius = math.sqrt(float(budget / d[i]))
        lo = math.floor(float(center) - radius) - 1
        hi = math.ceil(float(center) + radius) + 1
        for xi in range(lo, hi + 1):
            used = d[i] * (xi - center) ** 2
            if used <= budget:
                x[i] = xi
                search(i - 1, budget - used)
        x[i] = 0

    search(n - 1, target)
    return sorted(found)
