"""Concrete lattice systems: torus and Kummer surfaces, Wehler K3 surfaces, a
rank-2 K3 sublattice and a 13x13 Weyl element of Z^{1,12}."""

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import linalg
from .errors import NotUnimodular, UnknownName
from .lattice import BilinearLattice, LatticeIsometry, verify_isometry


@dataclass(frozen=True, eq=False)
class GallerySystem:
    name: str
    lattice: BilinearLattice
    isometry: LatticeIsometry
    provenance: str = ""
    expected: dict = field(default_factory=dict)

    @property
    def matrix(self):
        return self.isometry.matrix

    def to_json(self):
        return self.isometry.to_json()


WEHLER_GRAM = [[0, 2, 2], [2, 0, 2], [2, 2, 0]]

MCMULLEN_GRAM = [[-2, -1], [-1, -20]]

WEYL13 = [
    [92, 8, 8, 8, 14, 14, 14, 25, 25, 25, 44, 44, 44],
    [-8, 0, -1, -1, -1, -1, -1, -2, -2, -2, -4, -4, -4],
    [-8, -1, 0, -1, -1, -1, -1, -2, -2, -2, -4, -4, -4],
    [-8, -1, -1, 0, -1, -1, -1, -2, -2, -2, -4, -4, -4],
    [-44, -4, -4, -4, -6, -7, -7, -12, -12, -12, -21, -21, -21],
    [-44, -4, -4, -4, -7, -6, -7, -12, -12, -12, -21, -21, -21],
    [-44, -4, -4, -4, -7, -7, -6, -12, -12, -12, -21, -21, -21],
    [-25, -2, -2, -2, -4, -4, -4, -6, -7, -7, -12, -12, -12],
    [-25, -2, -2, -2, -4, -4, -4, -7, -6, -7, -12, -12, -12],
    [-25, -2, -2, -2, -4, -4, -4, -7, -7, -6, -12, -12, -12],
    [-14, -1, -1, -1, -2, -2, -2, -4, -4, -4, -6, -7, -7],
    [-14, -1, -1, -1, -2, -2, -2, -4, -4, -4, -7, -6, -7],
    [-14, -1, -1, -1, -2, -2, -2, -4, -4, -4, -7, -7, -6],
]

CAT_MAP = [[2, 1], [1, 1]]
GAUSSIAN_MAP = [[2 + 1j, 1], [1, 0]]


def _pairs(n):
    return list(itertools.combinations(range(n), 2))


def exterior_square(M):
    """Matrix of the induced map on Lambda^2 in the basis e_i ^ e_j, i < j (lex)."""
    M = np.asarray(M, dtype=object)
    P = _pairs(M.shape[0])
    out = linalg.zeros((len(P), len(P)))
    for r, (i, j) in enumerate(P):
        for s, (k, l) in enumerate(P):
            out[r, s] = M[i, k] * M[j, l] - M[i, l] * M[j, k]
    return out


def _perm_sign(seq):
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def wedge_gram():
    """Cup product on Lambda^2 Z^4, oriented so (e1^e2).(e3^e4) = +1."""
    P = _pairs(4)
    G = linalg.zeros((6, 6))
    for r, a in enumerate(P):
        for s, b in enumerate(P):
            if len(set(a + b)) == 4:
                G[r, s] = _perm_sign(a + b)
    return G


def _h1_action(A):
    """A acting on the two factors of E x E, tensored with Z^2 = H^1(E)."""
    A = linalg.int_matrix(A)
    return np.kron(A, linalg.identity(2))


def torus_from_gl2(A, name="torus"):
    """The H^2 action on E x E induced by A in GL_2(Z), as a rank-6 system."""
    A = linalg.int_matrix(A)
    if A.shape != (2, 2) or linalg.det(A) not in (1, -1):
        raise NotUnimodular(f"{A.tolist()} is not in GL_2(Z)")
    M = exterior_square(_h1_action(A))
    L = BilinearLattice(wedge_gram())
    return GallerySystem(
        name=name, lattice=L, isometry=verify_isometry(M, L),
        provenance="abelian surface E x E, automorphism from GL_2(Z)",
        expected={"source": A.tolist()},
    )


def realify_gaussian(A):
    """2x2 matrix over Z[i] -> 4x4 integer matrix, a + bi -> [[a, -b], [b, a]]."""
    R = linalg.zeros((4, 4))
    for i in range(2):
        for j in range(2):
            z = complex(A[i][j])
            a, b = int(z.real), int(z.imag)
            R[2 * i:2 * i + 2, 2 * j:2 * j + 2] = np.array([[a, -b], [b, a]], dtype=object)
    return R


def torus_from_gaussian(A, name="torus-gaussian"):
    """E x E with E = C/Z[i]; A in GL_2(Z[i]) acts on H^1 by its realification."""
    R = realify_gaussian(A)
    if linalg.det(R) != 1:
        raise NotUnimodular("matrix is not invertible over Z[i]")
    L = BilinearLattice(wedge_gram())
    return GallerySystem(
        name=name, lattice=L, isometry=verify_isometry(exterior_square(R), L),
        provenance="abelian surface E x E with complex multiplication by i",
        expected={"source": [[str(complex(z)) for z in row] for row in A]},
    )


def permutation_matrix(perm):
    """Column x has its single 1 in row perm[x]."""
    n = len(perm)
    P = linalg.zeros((n, n))
    for x, y in enumerate(perm):
        P[y, x] = 1
    return P


def two_torsion_permutation(A):
    """Permutation of F_2^4 (the 2-torsion of E x E) induced by A (x) I_2 mod 2.

    Points are indexed by integers whose bit i is coordinate i.
    """
    B = np.vectorize(lambda x: int(x) % 2, otypes=[object])(_h1_action(A))
    perm = []
    for x in range(16):
        v = [(x >> i) & 1 for i in range(4)]
        w = [sum(int(B[r, c]) * v[c] for c in range(4)) % 2 for r in range(4)]
        perm.append(sum(bit << i for i, bit in enumerate(w)))
    return perm


def direct_sum(system, gram, matrix, name=None, provenance=""):
    """Orthogonal direct sum of a system with an extra (gram, matrix) block."""
    G1, M1 = system.lattice.gram, system.matrix
    G2, M2 = linalg.int_matrix(gram), linalg.int_matrix(matrix)
    n1, n2 = G1.shape[0], G2.shape[0]
    G = linalg.zeros((n1 + n2, n1 + n2))
    M = linalg.zeros((n1 + n2, n1 + n2))
    G[:n1, :n1], G[n1:, n1:] = G1, G2
    M[:n1, :n1], M[n1:, n1:] = M1, M2
    L = BilinearLattice(G)
    return GallerySystem(name=name or f"{system.name}+block", lattice=L,
                         isometry=verify_isometry(M, L), provenance=provenance)


def kummer_augment(base, A, name="kummer"):
    """Append sixteen (-2)-classes permuted like the 2-torsion points of the torus.

    This is the orthogonal direct sum H^2(torus) + <-2>^16, not the genuine
    Kummer lattice (which is an overlattice of it).
    """
    perm = two_torsion_permutation(A)
    out = direct_sum(base, -2 * linalg.identity(16), permutation_matrix(perm), name=name,
                     provenance="Kummer surface of " + base.name + " (orthogonal-sum model)")
    cycles = _cycle_type(perm)
    return GallerySystem(out.name, out.lattice, out.isometry, out.provenance,
                         expected={"cycle_type": cycles, "exceptional": list(range(6, 22))})


def _cycle_type(perm):
    seen, lengths = set(), []
    for start in range(len(perm)):
        if start in seen:
            continue
        n, x = 0, start
        while x not in seen:
            seen.add(x)
            x = perm[x]
            n += 1
        lengths.append(n)
    return sorted(lengths)


def wehler_involution_search(bound=2):
    """Non-trivial involutive isometries of the Wehler Gram with entries in [-bound, bound].

    The search is exhaustive over that box: column j of an isometry must have
    norm G_jj = 0 and pairings G_ij = 2 with the other columns, so only
    isotropic columns are combined. Output is sorted by row-major entries.
    """
    if bound < 1:
        raise ValueError("bound must be positive")
    G = np.array(WEHLER_GRAM, dtype=object)
    box = range(-bound, bound + 1)
    iso = [np.array(v, dtype=object) for v in itertools.product(box, repeat=3)
           if np.array(v, dtype=object) @ G @ np.array(v, dtype=object) == 0 and any(v)]
    eye = linalg.identity(3)
    found = []
    for c0, c1, c2 in itertools.product(iso, repeat=3):
        if c0 @ G @ c1 != 2 or c0 @ G @ c2 != 2 or c1 @ G @ c2 != 2:
            continue
        M = np.column_stack([c0, c1, c2]).astype(object)
        if (M @ M == eye).all() and not (M == eye).all() and not (M == -eye).all():
            found.append(M)
    found.sort(key=lambda m: tuple(int(x) for x in m.flatten()))
    return [linalg.frozen(m) for m in found]


def wehler_basic_involutions(bound=2):
    """The involutions fixing two of the three basis classes, ordered by the moved class."""
    out = {}
    for M in wehler_involution_search(bound):
        fixed = [j for j in range(3) if all(M[i, j] == (i == j) for i in range(3))]
        if len(fixed) == 2:
            moved = ({0, 1, 2} - set(fixed)).pop()
            out.setdefault(moved, M)
    return [out[k] for k in sorted(out)]


def _wehler_triple():
    L = BilinearLattice(WEHLER_GRAM)
    i1, i2, i3 = wehler_basic_involutions()
    M = i1 @ i2 @ i3
    return GallerySystem(
        name="wehler-triple", lattice=L, isometry=verify_isometry(M, L),
        provenance="Wehler (2,2,2) K3 surface, composition of the three covering involutions",
        expected={"salem_degree": 2},
    )


def _salem_quadratic():
    # companion of t^2 - 3t + 1; it preserves 2x^2 + 6xy + 2y^2
    L = BilinearLattice([[2, 3], [3, 2]])
    return GallerySystem(
        name="salem-quadratic", lattice=L, isometry=verify_isometry([[0, -1], [1, 3]], L),
        provenance="companion matrix of t^2 - 3t + 1 on its invariant binary form",
        expected={"salem_degree": 2, "distinguished_rank": 2},
    )


def _weyl13():
    L = BilinearLattice(np.diag([1] + [-1] * 12).astype(object))
    return GallerySystem(
        name="weyl13", lattice=L, isometry=verify_isometry(WEYL13, L),
        provenance="Weyl element of Z^{1,12}; blow-up of P^2 at twelve points",
        expected={"salem_degree": 2, "distinguished_rank": 2},
    )


def _torus():
    s = torus_from_gl2(CAT_MAP)
    s.expected.update({"salem_degree": 2, "distinguished_rank": 2})
    return s


def _kummer():
    return kummer_augment(_torus(), CAT_MAP)


_SYSTEMS = {
    "torus": _torus,
    "torus-gaussian": lambda: torus_from_gaussian(GAUSSIAN_MAP),
    "kummer": _kummer,
    "wehler-triple": _wehler_triple,
    "salem-quadratic": _salem_quadratic,
    "weyl13": _weyl13,
}

_LATTICES = {
    "wehler-gram": lambda: BilinearLattice(WEHLER_GRAM),
    "mcmullen-sublattice": lambda: BilinearLattice(MCMULLEN_GRAM),
}


def names():
    return sorted(_SYSTEMS) + sorted(_LATTICES)


def system_names():
    return sorted(_SYSTEMS)


@lru_cache(maxsize=None)
def builtin(name):
    """Return the named GallerySystem, or a BilinearLattice for Gram-only entries."""
    if name in _SYSTEMS:
        return _SYSTEMS[name]()
    if name in _LATTICES:
        return _LATTICES[name]()
    raise UnknownName(f"unknown gallery entry {name!r}; known: {', '.join(names())}")
