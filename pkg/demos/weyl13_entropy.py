"""A Weyl element of Z^{1,12} and its quadratic Salem number.

The 13x13 matrix below comes from a blow-up of P^2 at twelve points.
We check that it preserves diag(1, -1, ..., -1), split its characteristic
polynomial, and look at the rank-2 block where the entropy lives.
"""

import mpmath

from salemlat import gallery
from salemlat.lattice import distinguished_sublattice, signature
from salemlat.orbit import invariant_decomposition, spanning_class_search
from salemlat.spectral import entropy, spectral_split

system = gallery.builtin("weyl13")
sigma = system.isometry

print("signature", signature(system.lattice))
print("charpoly ", sigma.charpoly)

h = entropy(sigma)
print("Salem factor", h.salem)
print("lambda      ", mpmath.nstr(h.salem_root, 20))
print("entropy     ", mpmath.nstr(h.value, 20))

# ker S(M): saturated, and exactly as big as deg S
S, W = distinguished_sublattice(sigma)
print("\ndistinguished sublattice, rank", W.rank)
for row in W.basis:
    print("  ", list(row))
print("Gram on W", W.gram().tolist())

split = spectral_split(sigma)
print("\ne+ =", [mpmath.nstr(x, 8) for x in split.e_plus])
print("e+.e- =", mpmath.nstr(split.normalization, 12))

dec = invariant_decomposition(sigma)
for c in dec.components:
    print(f"{c.label:6s} dim {c.dimension:2d}  exponent in minpoly {c.min_exponent}")

# (t - 1)^10 with a linear minimal exponent: no class has a spanning orbit
print(spanning_class_search(sigma))
