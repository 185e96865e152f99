"""Averaging M and M^-1 from a positive class.

v_n = (M + M^-1) v_{n-1} / (lambda + 1/lambda) kills everything except the
isotropic pair e+, e-; the limit is a e+ + b e- with u.u = 2ab.
"""

import mpmath

from salemlat import gallery
from salemlat.spectral import cantat_recursion, eigen_identity_residual, wedge_check

for name, v0 in (("torus", [2, 1, 0, 0, 1, 1]),
                 ("weyl13", [3, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
                 ("wehler-triple", [1, 1, 1])):
    sigma = gallery.builtin(name).isometry
    tr = cantat_recursion(sigma, v0)
    lam = tr.split.lam
    print(f"{name}: {tr.steps} steps")
    print("   observed rate", mpmath.nstr(tr.rate_estimate, 8),
          " predicted", mpmath.nstr(2 / (lam + 1 / lam), 8))
    a, b, ok = wedge_check(tr.split, tr.limit, 1e-8)
    print("   a =", mpmath.nstr(a, 10), " b =", mpmath.nstr(b, 10), " u.u = 2ab:", ok)
    print("   |Mu + M^-1 u - (lambda + 1/lambda)u| / |u| =",
          mpmath.nstr(eigen_identity_residual(sigma, tr.limit, lam), 3))
