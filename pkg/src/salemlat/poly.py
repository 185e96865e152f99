"""Exact integer polynomials and the Salem / cyclotomic classifier.

Polynomials are stored lowest degree first, so ``t^2 - 3t + 1`` is
``IntPolynomial([1, -3, 1])``. Real roots are counted with Sturm sequences over
exact rationals; the only floating point work is the final high-precision
polish of an already isolated Salem root.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional

import mpmath

from . import linalg
from ._config import DEFAULT_TOL, working_dps
from .errors import NotMonic, NotReciprocal, NotSalem, OddDegree, ZeroPolynomial

JSON_SAFE_INT = 2 ** 53


class IntPolynomial:
    """Immutable polynomial with arbitrary-precision integer coefficients.

    The zero polynomial has degree -1.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "_coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @classmethod
    def monomial(cls, degree, coeff=1):
        return cls([0] * degree + [coeff])

    @classmethod
    def constant(cls, c):
        return cls([c])

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def degree(self):
        return len(self._coeffs) - 1

    @property
    def leading(self):
        return self._coeffs[-1] if self._coeffs else 0

    def is_zero(self):
        return not self._coeffs

    def is_monic(self):
        return self.leading == 1

    def __len__(self):
        return len(self._coeffs)

    def __getitem__(self, i):
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return 0

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self._coeffs)})"

    def __str__(self):
        return self.format()

    def format(self, var="t"):
        if not self._coeffs:
            return "0"
        terms = []
        for i in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    @staticmethod
    def _coerce(other):
        if isinstance(other, IntPolynomial):
            return other
        if isinstance(other, int):
            return IntPolynomial([other])
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self), len(other))
        return IntPolynomial([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial([-c for c in self._coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self._coeffs):
            if a:
                for j, b in enumerate(other._coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = IntPolynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return IntPolynomial([i * c for i, c in enumerate(self._coeffs)][1:])

    def content(self):
        g = 0
        for c in self._coeffs:
            g = gcd(g, c)
        return g

    def primitive(self):
        """Primitive part with positive leading coefficient."""
        if self.is_zero():
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPolynomial([c // g for c in self._coeffs])

    def compose(self, inner):
        """Return ``self(inner(t))``."""
        acc = IntPolynomial()
        for c in reversed(self._coeffs):
            acc = acc * inner + c
        return acc

    def reciprocal(self):
        """``t^deg * p(1/t)``, i.e. the coefficient list reversed."""
        return IntPolynomial(reversed(self._coeffs))

    def divmod(self, divisor):
        """Division with remainder over Z; the divisor's leading coefficient
        must divide every intermediate leading term (always true if monic)."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self._coeffs)
        dd = divisor.degree
        lc = divisor.leading
        quot = [0] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            if c % lc:
                raise ValueError("inexact division over Z")
            q = c // lc
            quot[i - dd] = q
            for j, d in enumerate(divisor._coeffs):
                rem[i - dd + j] -= q * d
        return IntPolynomial(quot), IntPolynomial(rem)

    def __floordiv__(self, divisor):
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise ValueError(f"{divisor} does not divide {self}")
        return q

    def divides(self, other):
        """True iff self divides ``other`` in Z[t]."""
        try:
            _, r = other.divmod(self)
        except ValueError:
            return False
        return r.is_zero()

    def to_json(self):
        return [c if abs(c) < JSON_SAFE_INT else str(c) for c in self._coeffs]

    @classmethod
    def from_json(cls, data):
        return cls([int(c) for c in data])


def _as_poly(p):
    return p if isinstance(p, IntPolynomial) else IntPolynomial(p)


def pseudo_remainder(a, b):
    """prem(a, b) = lc(b)^(deg a - deg b + 1) * a mod b, computed in Z[t]."""
    if b.is_zero():
        raise ZeroDivisionError
    rem = list(a.coeffs)
    db, lc = b.degree, b.leading
    if len(rem) - 1 < db:
        return a
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        rem = [x * lc for x in rem]
        for j, d in enumerate(b.coeffs):
            rem[i - db + j] -= c * d
    return IntPolynomial(rem)


def poly_gcd(a, b):
    """Primitive gcd over Q (positive leading coefficient)."""
    a, b = _as_poly(a), _as_poly(b)
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = pseudo_remainder(a, b)
        a, b = b, (r.primitive() if not r.is_zero() else r)
    return a.primitive()


def squarefree_part(p):
    p = _as_poly(p)
    if p.degree <= 0:
        return p.primitive()
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        return p.primitive()
    return p.primitive() // g


def is_reciprocal(p):
    p = _as_poly(p)
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has no reciprocal test")
    return p.coeffs == tuple(reversed(p.coeffs))


def is_separable(p):
    """True iff p has no repeated complex root (gcd(p, p') constant)."""
    p = _as_poly(p)
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial")
    if p.degree <= 0:
        return True
    return poly_gcd(p, p.derivative()).degree == 0


def trace_polynomial(p):
    """T with p(t) = t^d T(t + 1/t) for monic reciprocal p of degree 2d.

    Uses t^k + t^-k = D_k(x) with D_0 = 2, D_1 = x, D_{k+1} = x D_k - D_{k-1}.
    """
    p = _as_poly(p)
    if not is_reciprocal(p):
        raise NotReciprocal(f"{p} is not reciprocal")
    if p.degree % 2:
        raise OddDegree(f"{p} has odd degree {p.degree}")
    d = p.degree // 2
    x = IntPolynomial([0, 1])
    dickson = [IntPolynomial([2]), x]
    for _ in range(2, d + 1):
        dickson.append(x * dickson[-1] - dickson[-2])
    T = IntPolynomial([p[d]])
    for k in range(1, d + 1):
        T = T + p[d + k] * dickson[k]
    return T


def from_trace_polynomial(T):
    """Inverse of :func:`trace_polynomial`: expand t^d T(t + 1/t)."""
    T = _as_poly(T)
    d = T.degree
    out = IntPolynomial()
    # (t^2 + 1)^k * t^(d-k) == t^d (t + 1/t)^k
    for k, c in enumerate(T.coeffs):
        out = out + c * IntPolynomial([1, 0, 1]) ** k * IntPolynomial.monomial(d - k)
    return out


def euler_phi(n):
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic(n):
    """Phi_n, by exact division of t^n - 1 by Phi_d for proper divisors d."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    p = IntPolynomial.monomial(n) - 1
    for d in range(1, n):
        if n % d == 0:
            p = p // cyclotomic(d)
    return p


def cyclotomic_candidates(degree):
    """All n with phi(n) <= degree; phi(n) >= sqrt(n/2) bounds n by 2 d^2 + 2."""
    bound = 2 * degree * degree + 2
    return [n for n in range(1, bound + 1) if euler_phi(n) <= degree]


def strip_cyclotomic_factors(p):
    """Divide out every cyclotomic factor of a monic p.

    Returns ``(factors, remainder)`` with ``factors`` a sorted list of
    ``(n, multiplicity)``.
    """
    p = _as_poly(p)
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial")
    if not p.is_monic():
        raise NotMonic(f"{p} is not monic")
    factors = []
    rem = p
    for n in cyclotomic_candidates(p.degree):
        phi = cyclotomic(n)
        if phi.degree > rem.degree:
            continue
        m = 0
        while rem.degree >= phi.degree:
            q, r = rem.divmod(phi)
            if not r.is_zero():
                break
            rem = q
            m += 1
        if m:
            factors.append((n, m))
    return factors, rem


# --- Sturm sequences -------------------------------------------------------

def sturm_sequence(p):
    """Sturm chain of a squarefree p kept in Z[t] (signed pseudo-remainders)."""
    p = _as_poly(p)
    seq = [p, p.derivative()]
    while seq[-1].degree > 0:
        a, b = seq[-2], seq[-1]
        r = pseudo_remainder(a, b)
        if r.is_zero():
            break
        delta = a.degree - b.degree + 1
        # prem = lc(b)^delta * rem; flip so we keep -rem up to a positive factor
        if b.leading < 0 and delta % 2:
            r = -r
        g = r.content()
        seq.append(IntPolynomial([-c // g for c in r.coeffs]))
    return seq


def _sign(x):
    return (x > 0) - (x < 0)


def _variations(signs):
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _signs_at(seq, x):
    if x is None:
        return [_sign(q.leading) for q in seq]
    if x == "-inf":
        return [_sign(q.leading) * (-1) ** q.degree for q in seq]
    return [_sign(q(x)) for q in seq]


def _endpoint(x, low):
    if x is None or x in (float("inf"), float("-inf")):
        return "-inf" if low else None
    return Fraction(x)


def count_real_roots(p, lo=None, hi=None):
    """Number of distinct real roots of p in (lo, hi]; None means infinite."""
    p = _as_poly(p)
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial")
    sq = squarefree_part(p)
    if sq.degree <= 0:
        return 0
    a, b = _endpoint(lo, True), _endpoint(hi, False)
    if a != "-inf" and b is not None and a >= b:
        raise ValueError("need lo < hi")
    seq = sturm_sequence(sq)
    return _variations(_signs_at(seq, a)) - _variations(_signs_at(seq, b))


@dataclass(frozen=True)
class RootIsolation:
    """Disjoint half-open intervals (lo, hi], each holding one real root."""

    intervals: list
    squarefree: bool


def root_bound(p):
    """Cauchy bound: every root has |z| < 1 + max |c_i / c_n|."""
    lc = abs(p.leading)
    return 1 + max((Fraction(abs(c), lc) for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_real_roots(p, lo=None, hi=None):
    p = _as_poly(p)
    sq = squarefree_part(p)
    B = root_bound(sq) if sq.degree > 0 else Fraction(1)
    lo = -B if lo is None else Fraction(lo)
    hi = B if hi is None else Fraction(hi)
    intervals = []
    if sq.degree > 0:
        seq = sturm_sequence(sq)

        def count(a, b):
            return _variations(_signs_at(seq, a)) - _variations(_signs_at(seq, b))

        stack = [(lo, hi, count(lo, hi))]
        while stack:
            a, b, n = stack.pop()
            if n == 0:
                continue
            if n == 1:
                intervals.append((a, b))
                continue
            m = (a + b) / 2
            stack.append((m, b, count(m, b)))
            stack.append((a, m, count(a, m)))
    intervals.sort()
    return RootIsolation(intervals=intervals, squarefree=sq.degree == p.degree)


def refine_root(p, lo, hi, width):
    """Shrink an isolating interval (lo, hi] of a squarefree p below ``width``."""
    seq = sturm_sequence(_as_poly(p))
    lo, hi = Fraction(lo), Fraction(hi)
    width = Fraction(width)
    while hi - lo > width:
        m = (lo + hi) / 2
        if _variations(_signs_at(seq, lo)) - _variations(_signs_at(seq, m)) == 1:
            hi = m
        else:
            lo = m
    return lo, hi


def _polish(p, lo, hi, dps):
    """High-precision root of p inside (lo, hi] via Newton, bisection fallback."""
    with mpmath.workdps(dps + 10):
        f = lambda x: p(x)
        df_poly = p.derivative()
        x = (mpmath.mpf(lo.numerator) / lo.denominator + mpmath.mpf(hi.numerator) / hi.denominator) / 2
        for _ in range(200):
            step = f(x) / df_poly(x)
            x -= step
            if abs(step) <= abs(x) * mpmath.mpf(10) ** (-(dps + 5)):
                break
        a = mpmath.mpf(lo.numerator) / lo.denominator
        b = mpmath.mpf(hi.numerator) / hi.denominator
        if not (a <= x <= b):
            fa = f(a)
            for _ in range(int(dps * 3.4) + 20):
                x = (a + b) / 2
                if _sign(f(x)) == _sign(fa) and f(x) != 0:
                    a, fa = x, f(x)
                else:
                    b = x
        return +x


# --- Salem classification --------------------------------------------------

SALEM = "Salem"
CYCLOTOMIC = "Cyclotomic"
CYCLOTOMIC_PRODUCT = "CyclotomicProduct"
OTHER = "Other"


@dataclass(frozen=True)
class SalemClassification:
    kind: str
    degree: int
    salem_root: Optional[mpmath.mpf] = None
    trace_poly: Optional[IntPolynomial] = None
    trace_interval: Optional[tuple] = None
    cyclotomic_factors: tuple = ()
    remainder: Optional[IntPolynomial] = None
    diagnostic: str = ""

    @property
    def is_salem(self):
        return self.kind == SALEM

    @property
    def cyclotomic_index(self):
        if self.kind == CYCLOTOMIC:
            return self.cyclotomic_factors[0][0]
        return None

    def to_json(self, digits=12):
        out = {"kind": self.kind, "degree": self.degree}
        if self.salem_root is not None:
            out["salem_root"] = mpmath.nstr(self.salem_root, digits)
        if self.trace_poly is not None:
            out["trace_poly"] = self.trace_poly.to_json()
        if self.trace_interval is not None:
            out["trace_interval"] = [str(x) for x in self.trace_interval]
        if self.cyclotomic_factors:
            out["cyclotomic_factors"] = [list(f) for f in self.cyclotomic_factors]
        if self.diagnostic:
            out["diagnostic"] = self.diagnostic
        return out


def classify_salem(p, tol=DEFAULT_TOL):
    """Classify a monic polynomial as Salem, Cyclotomic, CyclotomicProduct or Other.

    Salem means: reciprocal, free of cyclotomic factors, and the trace
    polynomial has one simple root in (2, inf) with its remaining roots real
    and inside (-2, 2). Irreducibility then follows from Kronecker's theorem:
    a proper factor would have all its roots on the unit circle.
    Degree-2 Salem polynomials are accepted.
    """
    p = _as_poly(p)
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial")
    if not p.is_monic():
        raise NotMonic(f"{p} is not monic")
    if p.degree < 1:
        raise ValueError("degree must be at least 1")
    factors, rem = strip_cyclotomic_factors(p)
    reciprocal = is_reciprocal(p)
    T = trace_polynomial(p) if reciprocal and p.degree % 2 == 0 else None
    base = dict(degree=p.degree, trace_poly=T, cyclotomic_factors=tuple(factors),
                remainder=rem)
    if rem.degree == 0:
        if len(factors) == 1 and factors[0][1] == 1:
            return SalemClassification(kind=CYCLOTOMIC, **base)
        return SalemClassification(kind=CYCLOTOMIC_PRODUCT, **base)
    if factors:
        return SalemClassification(kind=OTHER, diagnostic="has cyclotomic and non-cyclotomic factors", **base)
    if T is None:
        return SalemClassification(kind=OTHER, diagnostic="not reciprocal of even degree", **base)
    if T(2) == 0 or T(-2) == 0:
        return SalemClassification(kind=OTHER, diagnostic="trace polynomial has a root at +-2", **base)
    if not is_separable(T):
        return SalemClassification(kind=OTHER, diagnostic="repeated roots", **base)
    d = T.degree
    outside = count_real_roots(T, 2, None)
    inside = count_real_roots(T, -2, 2)
    below = count_real_roots(T, None, -2)
    if not (outside == 1 and inside == d - 1 and below == 0):
        return SalemClassification(kind=OTHER, diagnostic="root pattern is not Salem", **base)
    (lo, hi), = isolate_real_roots(T, 2, root_bound(T)).intervals
    lo, hi = refine_root(T, lo, hi, Fraction(tol))
    dps = working_dps()
    x = _polish(T, lo, hi, dps)
    with mpmath.workdps(dps):
        lam = (x + mpmath.sqrt(x * x - 4)) / 2
    return SalemClassification(kind=SALEM, salem_root=lam, trace_interval=(lo, hi), **base)


def companion_matrix(p):
    """Companion matrix of a monic p (ones on the subdiagonal)."""
    p = _as_poly(p)
    if not p.is_monic():
        raise NotMonic(f"{p} is not monic")
    n = p.degree
    C = linalg.zeros((n, n))
    for i in range(1, n):
        C[i, i - 1] = 1
    for i in range(n):
        C[i, n - 1] = -p[i]
    return C


def charpoly(M):
    return IntPolynomial(linalg.charpoly_coeffs(M))


def min_poly_of_power(S, k, tol=DEFAULT_TOL):
    """Monic polynomial whose roots are the k-th powers of the roots of S.

    Computed as det(xI - C^k) for the companion matrix C of S, which equals
    Res_t(S(t), x - t^k) up to sign.
    """
    S = _as_poly(S)
    if not classify_salem(S, tol).is_salem:
        raise NotSalem(f"{S} is not a Salem polynomial")
    if k < 1:
        raise ValueError("k must be positive")
    return charpoly(linalg.mat_pow(companion_matrix(S), k))
