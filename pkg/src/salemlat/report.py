"""The composite analysis of one isometry, in JSON and text form."""

from dataclasses import dataclass
from typing import Optional

import mpmath

from ._config import DEFAULT_TOL, working_dps
from .lattice import (BilinearLattice, Sublattice, distinguished_sublattice, salem_factor,
                      signature)
from .orbit import SpanCertificate, spanning_class_search
from .poly import IntPolynomial, SalemClassification, cyclotomic, is_separable
from .spectral import cantat_recursion, eigen_identity_residual, entropy

DIGITS = 12


def _real(x):
    return mpmath.nstr(x, DIGITS)


@dataclass(frozen=True, eq=False)
class AnalysisReport:
    isometry_ok: bool
    signature: tuple
    char_poly: IntPolynomial
    cyclotomic_factors: tuple
    salem_factor: Optional[SalemClassification]
    entropy: mpmath.mpf
    distinguished: Optional[Sublattice]
    separable: bool
    span_certificate: Optional[SpanCertificate]
    recursion: Optional[dict]
    tol: float

    @property
    def distinguished_has_positive_class(self):
        if self.distinguished is None:
            return False
        return signature(BilinearLattice(self.distinguished.gram()))[0] > 0

    def to_json(self):
        salem = self.salem_factor
        return {
            "isometry_ok": self.isometry_ok,
            "signature": list(self.signature),
            "char_poly": self.char_poly.to_json(),
            "cyclotomic_factors": [[n, m] for n, m in self.cyclotomic_factors],
            "salem_factor": None if salem is None else salem.to_json(DIGITS),
            "entropy": _real(self.entropy),
            "distinguished": None if self.distinguished is None else self.distinguished.to_json(),
            "separable": self.separable,
            "span_certificate": None if self.span_certificate is None
            else self.span_certificate.to_json(),
            "recursion": self.recursion,
            "tolerance": self.tol,
            "precision_digits": DIGITS,
        }

    def to_text(self):
        W = self.distinguished
        s = self.salem_factor
        deg = s.degree if s else 0
        lines = [f"# isometry: M^T G M = G verified; signature (p, q, z) = {self.signature}",
                 f"# characteristic polynomial: {self.char_poly}"]
        cyc = " * ".join(f"({cyclotomic(n)})" + (f"^{m}" if m > 1 else "")
                         for n, m in self.cyclotomic_factors)
        lines.append(f"#   cyclotomic part: {cyc or '1'}")
        lines.append(f"#   Salem factor: {s.remainder if s else 'none'}")
        lines.append("")
        lines.append("[1] distinguished class")
        lines.append(f"    ker S(M) contains a nonzero class: {'yes' if W else 'no'}")
        lines.append("[2] distinguished sublattice")
        if W:
            lines.append(f"    rank {W.rank} = deg S = {deg}: {'yes' if W.rank == deg else 'NO'}")
            for row in W.basis:
                lines.append("    " + " ".join(str(int(x)) for x in row))
        else:
            lines.append("    none")
        lines.append("[3] entropy")
        if s:
            lines.append(f"    lambda = {_real(s.salem_root)}, log(lambda) = {_real(self.entropy)}")
        else:
            lines.append("    0 (every factor is cyclotomic)")
        lines.append("[4] positive distinguished class")
        lines.append(f"    ker S(M) meets the positive cone: "
                     f"{'yes' if self.distinguished_has_positive_class else 'no'}")
        lines.append("")
        lines.append(f"orbit: characteristic polynomial separable: {'yes' if self.separable else 'no'}")
        c = self.span_certificate
        if c is not None and c.kind == "Spanning":
            lines.append(f"  spanning class {list(c.vector)} (orbit span {c.span_dimension})")
        elif c is not None:
            lines.append(f"  no spanning class: ({c.witness})^2 divides the characteristic "
                         f"polynomial and the largest orbit span is {c.span_dimension}")
        if self.recursion is not None:
            r = self.recursion
            lines.append("recursion:")
            lines.append(f"  steps {r['iterates']}, rate {r['rate']} (bound {r['rate_bound']})")
            lines.append(f"  a = {r['a']}, b = {r['b']}, eigen residual {r['eigen_residual']}, "
                         f"wedge gap {r['wedge_gap']}")
        lines.append(f"tolerance {self.tol:g}, reals to {DIGITS} significant digits")
        return "\n".join(lines) + "\n"


def analyze(sigma, tol=DEFAULT_TOL, start=None, max_iter=1000):
    """Run every check on an already verified isometry.

    Raises UnexpectedFactor, NotDiagonalizable or NoConvergence on failure.
    """
    factors, cls = salem_factor(sigma.charpoly, tol)
    ent = entropy(sigma, tol)
    W = distinguished_sublattice(sigma, tol)[1] if cls is not None else None
    cert = spanning_class_search(sigma, tol=tol)
    recursion = None
    if start is not None:
        trace = cantat_recursion(sigma, start, max_iter=max_iter, tol=tol)
        split = trace.split
        with mpmath.workdps(working_dps()):
            u = trace.limit
            resid = eigen_identity_residual(sigma, u, split.lam)
            gap = abs(split.inner(u, u) - 2 * trace.a * trace.b * split.normalization)
            bound = 2 / (split.lam + 1 / split.lam)
        recursion = trace.to_json(DIGITS)
        recursion.update({"rate_bound": _real(bound), "eigen_residual": _real(resid),
                          "wedge_gap": _real(gap), "start": [int(x) for x in start]})
    return AnalysisReport(
        isometry_ok=True,
        signature=signature(sigma.lattice),
        char_poly=sigma.charpoly,
        cyclotomic_factors=tuple(factors),
        salem_factor=cls,
        entropy=ent.value,
        distinguished=W,
        separable=is_separable(sigma.charpoly),
        span_certificate=cert,
        recursion=recursion,
        tol=tol,
    )
