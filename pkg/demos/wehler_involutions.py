"""Involutions of the Wehler lattice and a hyperbolic composition.

A smooth (2,2,2) surface in P^1 x P^1 x P^1 has Picard lattice with Gram
[[0,2,2],[2,0,2],[2,2,0]]. Each projection to P^1 x P^1 is a double cover,
and swapping sheets is an involution of the lattice fixing two of the
three fibre classes.
"""

from salemlat import gallery
from salemlat.gallery import wehler_basic_involutions, wehler_involution_search
from salemlat.lattice import enumerate_norm_vectors, signature
from salemlat.orbit import spanning_class_search
from salemlat.poly import charpoly, is_separable
from salemlat.spectral import entropy

L = gallery.builtin("wehler-gram")
print("signature", signature(L))

found = wehler_involution_search(2)
print(len(found), "involutions with entries in [-2, 2]")

i1, i2, i3 = wehler_basic_involutions()
for name, M in (("i1", i1), ("i2", i2), ("i3", i3)):
    print(name, M.tolist())

# two involutions only give a parabolic element
print("i1 i2 charpoly", charpoly(i1 @ i2))

triple = gallery.builtin("wehler-triple").isometry
print("i1 i2 i3 charpoly", triple.charpoly, "separable:", is_separable(triple.charpoly))
print("entropy", entropy(triple).value)
print(spanning_class_search(triple))

# the McMullen rank-2 block is negative definite, and has (-2)-vectors
mc = gallery.builtin("mcmullen-sublattice")
print("\n(-2)-vectors in", mc.gram.tolist(), ":", enumerate_norm_vectors(mc, -2))
