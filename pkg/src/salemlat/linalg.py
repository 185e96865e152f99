"""Exact integer / rational linear algebra on object-dtype numpy arrays.

Every matrix here holds Python ``int`` (or ``Fraction``) entries so that no
operation can overflow. Vectors are 1-d arrays, matrices 2-d; sublattice bases
are stored as rows.
"""

from fractions import Fraction
from math import gcd

import numpy as np


def int_matrix(rows, ncols=None):
    """Return a read-only object array of Python ints built from ``rows``."""
    arr = np.array([[int(x) for x in row] for row in rows], dtype=object)
    if arr.size == 0:
        arr = np.zeros((len(rows), ncols or 0), dtype=object)
    if arr.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    arr.flags.writeable = False
    return arr


def int_vector(values):
    arr = np.array([int(x) for x in values], dtype=object)
    arr.flags.writeable = False
    return arr


def identity(n):
    eye = zeros((n, n))
    for i in range(n):
        eye[i, i] = 1
    return eye


def zeros(shape):
    z = np.empty(shape, dtype=object)
    z.fill(0)
    return z


def frozen(arr):
    arr = np.array(arr, dtype=object)
    arr.flags.writeable = False
    return arr


def mat_pow(M, k):
    """Exact ``M**k`` for k >= 0 by repeated squaring."""
    result = identity(M.shape[0])
    base = np.array(M, dtype=object)
    while k:
        if k & 1:
            result = result @ base
        base = base @ base
        k >>= 1
    return result


def charpoly_coeffs(M):
    """Characteristic polynomial det(tI - M), lowest degree first.

    Faddeev--LeVerrier; the divisions by k are exact for integer matrices.
    """
    n = M.shape[0]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    A = np.array(M, dtype=object)
    Mk = A.copy()
    for k in range(1, n + 1):
        if k > 1:
            Mk = A @ Mk
        c = -sum(Mk[i, i] for i in range(n))
        if isinstance(c, Fraction):
            c = c / k
        else:
            assert c % k == 0
            c //= k
        coeffs[n - k] = c
        for i in range(n):
            Mk[i, i] += c
    return coeffs


def rank(A):
    """Rank over Q via fraction-free elimination."""
    rows = [[Fraction(x) for x in row] for row in np.asarray(A, dtype=object)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        for i in range(r + 1, len(rows)):
            f = rows[i][col]
            if f:
                rows[i] = [a - f / p * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def det(A):
    """Exact determinant (Bareiss)."""
    M = [list(row) for row in np.asarray(A, dtype=object)]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rational_inverse(A):
    """Gauss--Jordan inverse over Q; raises ZeroDivisionError if singular."""
    n = A.shape[0]
    aug = [[Fraction(x) for x in A[i]] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    inv = np.array([row[n:] for row in aug], dtype=object)
    return inv


def integer_inverse(A):
    inv = rational_inverse(A)
    out = zeros(inv.shape)
    for idx, x in np.ndenumerate(inv):
        if x.denominator != 1:
            raise ValueError("inverse is not integral")
        out[idx] = x.numerator
    return out


def _xgcd(a, b):
    """Return (g, x, y) with a*x + b*y = g >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _echelon(rows, ncols, track=None):
    """Unimodular row reduction to echelon form, in place.

    ``track`` (optional list of rows) receives the same row operations.
    Returns the list of pivot columns.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for col in range(ncols):
        if r == nrows:
            break
        for i in range(r + 1, nrows):
            if rows[i][col] == 0:
                continue
            a, b = rows[r][col], rows[i][col]
            g, x, y = _xgcd(a, b)
            ag, bg = a // g, b // g
            new_r = [x * p + y * q for p, q in zip(rows[r], rows[i])]
            new_i = [-bg * p + ag * q for p, q in zip(rows[r], rows[i])]
            rows[r], rows[i] = new_r, new_i
            if track is not None:
                tr = [x * p + y * q for p, q in zip(track[r], track[i])]
                ti = [-bg * p + ag * q for p, q in zip(track[r], track[i])]
                track[r], track[i] = tr, ti
        if rows[r][col] == 0:
            continue
        if rows[r][col] < 0:
            rows[r] = [-x for x in rows[r]]
            if track is not None:
                track[r] = [-x for x in track[r]]
        pivots.append(col)
        r += 1
    return pivots


def hnf(B):
    """Row Hermite normal form with positive pivots; zero rows dropped.

    Entries above each pivot are reduced into [0, pivot).
    """
    B = np.asarray(B, dtype=object)
    if B.size == 0:
        return zeros((0, B.shape[1] if B.ndim == 2 else 0))
    ncols = B.shape[1]
    rows = [[int(x) for x in row] for row in B]
    pivots = _echelon(rows, ncols)
    rows = rows[:len(pivots)]
    for k, col in enumerate(pivots):
        p = rows[k][col]
        for i in range(k):
            q = rows[i][col] // p
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[k])]
    if not rows:
        return zeros((0, ncols))
    return np.array(rows, dtype=object)


def integer_kernel(A, ncols=None):
    """Saturated Z-basis (HNF rows) of {v in Z^n : A v = 0}."""
    A = np.asarray(A, dtype=object)
    n = A.shape[1] if A.ndim == 2 and A.shape[1] else ncols
    if A.size == 0:
        return hnf(identity(n))
    # reduce A^T with an identity tracker: zero rows of the reduced A^T
    # correspond to tracker rows u with A u = 0
    rows = [[int(x) for x in A[:, j]] for j in range(n)]
    track = [[int(i == j) for j in range(n)] for i in range(n)]
    pivots = _echelon(rows, A.shape[0], track)
    kernel = track[len(pivots):]
    if not kernel:
        return zeros((0, n))
    return hnf(np.array(kernel, dtype=object))


def saturate(B, n):
    """Saturation in Z^n of the row span of ``B``."""
    B = np.asarray(B, dtype=object)
    if B.size == 0:
        return zeros((0, n))
    return integer_kernel(integer_kernel(B), n)


def clear_denominators(v):
    """Scale a rational vector to a primitive integer vector."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints
