"""Orbit spans, primary decompositions and the separable / inseparable dichotomy."""

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import linalg
from ._config import DEFAULT_TOL
from .errors import CandidatesDegenerate, DimensionMismatch
from .lattice import apply_endo_poly, salem_factor
from .spectral import positive_cone_test
from .poly import IntPolynomial, charpoly, cyclotomic, is_separable, min_poly_of_power

T_MINUS_ONE = IntPolynomial([-1, 1])


def orbit_span_dimension(sigma, v):
    """dim over Q of span{v, Mv, M^2 v, ...}."""
    v = np.asarray(v, dtype=object)
    if v.shape != (sigma.rank,):
        raise DimensionMismatch(f"expected a vector of length {sigma.rank}")
    if not any(v):
        return 0
    krylov = [v]
    r = 1
    while r < sigma.rank:
        krylov.append(sigma.matrix @ krylov[-1])
        new = linalg.rank(np.array(krylov, dtype=object))
        if new == r:
            break
        r = new
    return r


@dataclass(frozen=True, eq=False)
class PrimaryComponent:
    factor: IntPolynomial
    multiplicity: int
    basis: np.ndarray
    # smallest j with ker Q(M)^j = ker Q(M)^m (the exponent in the minimal polynomial)
    min_exponent: int
    label: str

    @property
    def dimension(self):
        return self.basis.shape[0]


@dataclass(frozen=True, eq=False)
class InvariantDecomposition:
    components: list
    rank: int

    @property
    def dimensions(self):
        return [c.dimension for c in self.components]

    @property
    def cyclotomic_dimension(self):
        """Rank of the cyclotomic part; only an upper bound for what geometry could realize."""
        return sum(c.dimension for c in self.components if c.label != "Salem")

    def minimal_polynomial(self):
        out = IntPolynomial([1])
        for c in self.components:
            out = out * c.factor ** c.min_exponent
        return out

    def is_invariant(self, sigma):
        """Exact check that M maps each component into itself."""
        for c in self.components:
            image = (sigma.matrix @ c.basis.T).T
            if linalg.rank(np.vstack([c.basis, image])) != c.dimension:
                return False
        return True

    def to_json(self):
        def q(x):
            x = Fraction(x)
            return f"{x.numerator}/{x.denominator}"

        return {
            "rank": self.rank,
            "factors": [
                {"factor": c.factor.to_json(), "multiplicity": c.multiplicity,
                 "label": c.label, "basis": [[q(x) for x in row] for row in c.basis]}
                for c in self.components
            ],
        }


def _primary(sigma, Q, m):
    A = apply_endo_poly(Q, sigma)
    target = m * Q.degree
    power = linalg.identity(sigma.rank)
    j_min = None
    for j in range(1, m + 1):
        power = power @ A
        if j_min is None and sigma.rank - linalg.rank(power) == target:
            j_min = j
            break
    K = linalg.integer_kernel(power, sigma.rank)
    assert K.shape[0] == target
    return K, j_min


def invariant_decomposition(sigma, tol=DEFAULT_TOL):
    """Primary components ker Q_j(M)^m_j over the cyclotomic and Salem factors.

    For a factor with multiplicity one this is the invariant subspace whose
    characteristic polynomial is Q_j; repeated factors yield the whole
    primary component, never a single copy.
    """
    factors, cls = salem_factor(sigma.charpoly, tol)
    parts = [(cyclotomic(n), m, f"Phi_{n}") for n, m in factors]
    if cls is not None:
        parts.append((cls.remainder, 1, "Salem"))
    comps = []
    for Q, m, label in parts:
        K, j = _primary(sigma, Q, m)
        comps.append(PrimaryComponent(Q, m, linalg.frozen(K), j, label))
    return InvariantDecomposition(comps, sigma.rank)


def minimal_polynomial(sigma, tol=DEFAULT_TOL):
    return invariant_decomposition(sigma, tol).minimal_polynomial()


@dataclass(frozen=True)
class SpanCertificate:
    kind: str
    vector: Optional[tuple] = None
    witness: Optional[IntPolynomial] = None
    span_dimension: int = 0

    def to_json(self):
        if self.kind == "Spanning":
            return {"kind": "Spanning", "class": list(self.vector),
                    "span_dimension": self.span_dimension}
        return {"kind": "Impossible", "witness": self.witness.to_json(),
                "span_dimension": self.span_dimension}


def spanning_class_search(sigma, candidates=None, seed=0, max_tries=500, tol=DEFAULT_TOL,
                          cone_reference=None):
    """A class whose orbit spans, or a repeated factor proving none exists.

    The largest orbit span of any class is the degree of the minimal
    polynomial, so a spanning class exists iff minimal and characteristic
    polynomials coincide (always the case for a separable characteristic
    polynomial).

    With ``cone_reference`` set, only candidates in the positive cone it
    selects are used.
    """
    n = sigma.rank
    if candidates is None:
        candidates = linalg.identity(n)
    cand = np.array(candidates, dtype=object)
    if cand.ndim != 2 or cand.shape[1] != n:
        raise DimensionMismatch(f"candidates must be vectors of length {n}")
    if cone_reference is not None:
        keep = [row for row in cand if positive_cone_test(sigma.lattice, row, cone_reference)]
        cand = np.array(keep, dtype=object).reshape(len(keep), n)
    if len(cand) == 0 or linalg.rank(cand) < n:
        raise CandidatesDegenerate("candidates do not span the ambient space")
    dec = invariant_decomposition(sigma, tol)
    short = [c for c in dec.components if c.min_exponent < c.multiplicity]
    if short:
        return SpanCertificate("Impossible", witness=short[0].factor,
                               span_dimension=dec.minimal_polynomial().degree)
    rng = random.Random(seed)
    coeffs = [1] * len(cand)
    for _ in range(max_tries):
        v = sum(c * row for c, row in zip(coeffs, cand))
        if orbit_span_dimension(sigma, v) == n:
            return SpanCertificate("Spanning", vector=tuple(int(x) for x in v), span_dimension=n)
        coeffs = [rng.randint(1, n + 1) for _ in cand]
    raise RuntimeError("no spanning combination found; increase max_tries")


def iterate_inseparability(sigma, k_max, tol=DEFAULT_TOL):
    """Smallest k <= k_max with (t - 1)^2 dividing the non-Salem part of charpoly(M^k).

    Returns ``(k, t - 1)`` or None.
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    _, cls = salem_factor(sigma.charpoly, tol)
    square = T_MINUS_ONE * T_MINUS_ONE
    for k in range(1, k_max + 1):
        P = charpoly(linalg.mat_pow(sigma.matrix, k))
        if cls is not None:
            P = P // min_poly_of_power(cls.remainder, k, tol)
        if square.divides(P):
            return k, T_MINUS_ONE
    return None


def separability_dichotomy(sigma, tol=DEFAULT_TOL):
    """(separable, certificate) for the characteristic polynomial."""
    return is_separable(sigma.charpoly), spanning_class_search(sigma, tol=tol)
