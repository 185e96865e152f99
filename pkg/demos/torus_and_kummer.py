"""Cat map on E x E, and the Kummer surface built from it.

H^2 of an abelian surface is Lambda^2 H^1, so a matrix A in GL_2(Z) acting
on both factors gives a 6x6 isometry of the wedge form. Its spectral radius
is rho(A)^2.
"""

import math

import mpmath
import numpy as np

from salemlat import gallery
from salemlat.gallery import kummer_augment, torus_from_gl2, two_torsion_permutation
from salemlat.lattice import distinguished_sublattice
from salemlat.orbit import iterate_inseparability, orbit_span_dimension
from salemlat.spectral import entropy, periodic_orthogonality_test

for A in ([[2, 1], [1, 1]], [[3, 2], [1, 1]], [[0, 1], [1, 5]]):
    s = torus_from_gl2(A)
    rho = max(abs(np.linalg.eigvals(np.array(A, dtype=float))))
    h = entropy(s.isometry)
    print(A, "charpoly", s.isometry.charpoly)
    print("    entropy", mpmath.nstr(h.value, 15), " 2 log rho", f"{2 * math.log(rho):.15f}")

torus = gallery.builtin("torus")
print("\ngeneric orbit spans on the torus:",
      sorted({orbit_span_dimension(torus.isometry, np.array(v, dtype=object))
              for v in ([1, 2, 3, 4, 5, 6], [1, 0, 0, 0, 0, 0], [0, 1, -1, 2, 0, 3])}))

# the sixteen 2-torsion points, permuted by A mod 2
perm = two_torsion_permutation([[2, 1], [1, 1]])
print("\n2-torsion permutation", perm)

kummer = kummer_augment(torus, [[2, 1], [1, 1]])
S, W = distinguished_sublattice(kummer.isometry)
print("Kummer Salem factor", S, "(same as the torus)")
ok = all(periodic_orthogonality_test([int(i == j) for j in range(22)], W, S)
         for i in kummer.expected["exceptional"])
print("exceptional classes orthogonal to W:", ok)
print("first iterate with (t - 1)^2 in the cyclotomic part:",
      iterate_inseparability(kummer.isometry, 6))
