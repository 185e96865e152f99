"""salemlat command line.

Exit codes: 0 ok, 1 invalid input, 2 property violation, 3 no convergence.
stdout carries only the result; diagnostics go to stderr.
"""

import argparse
import json
import os
import sys

import mpmath
import numpy as np

from . import gallery
from ._config import DEFAULT_TOL, working_dps
from .errors import (BadReference, CandidatesDegenerate, DimensionMismatch, NoConvergence,
                     NotDiagonalizable, NotFormPreserving, NotMonic, NotNegativeDefinite,
                     NotUnimodular, UnexpectedFactor, UnknownName, ZeroEntropy, ZeroPolynomial)
from .io import SystemFormatError, dumps, load_lattice, load_system, system_to_json
from .lattice import BilinearLattice, enumerate_norm_vectors
from .orbit import orbit_span_dimension, spanning_class_search
from .poly import IntPolynomial, classify_salem
from .report import DIGITS, analyze
from .spectral import cantat_recursion, eigen_identity_residual

EXIT_INPUT, EXIT_PROPERTY, EXIT_CONVERGENCE = 1, 2, 3

_INPUT_ERRORS = (SystemFormatError, DimensionMismatch, NotNegativeDefinite, NotMonic,
                 ZeroPolynomial, UnknownName, CandidatesDegenerate, BadReference,
                 FileNotFoundError, IsADirectoryError)
_PROPERTY_ERRORS = (NotFormPreserving, NotUnimodular, UnexpectedFactor, NotDiagonalizable,
                    ZeroEntropy)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def parse_int_list(text):
    """'1,-3,1' (commas and/or spaces; a Unicode minus is accepted) -> [1, -3, 1]."""
    cleaned = text.replace("−", "-").replace(",", " ").split()
    if not cleaned:
        raise ValueError("empty integer list")
    try:
        return [int(tok) for tok in cleaned]
    except ValueError:
        raise ValueError(f"cannot parse {text!r} as a list of integers") from None


def _vector_arg(text):
    try:
        return parse_int_list(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _lattice_source(source):
    """A Gram file path, or the name of a gallery entry."""
    if os.path.exists(source):
        return load_lattice(source)
    try:
        item = gallery.builtin(source)
    except UnknownName:
        raise FileNotFoundError(f"{source}: no such file or gallery entry") from None
    return item if isinstance(item, BilinearLattice) else item.lattice


def _system_source(source):
    if os.path.exists(source):
        return load_system(source)
    try:
        item = gallery.builtin(source)
    except UnknownName:
        raise FileNotFoundError(f"{source}: no such file or gallery entry") from None
    if isinstance(item, BilinearLattice):
        raise SystemFormatError(f"{source} is a lattice without an isometry")
    return item.isometry


def _emit(text):
    sys.stdout.write(text)


def cmd_analyze(args):
    sigma = _system_source(args.input)
    report = analyze(sigma, tol=args.tol, start=args.start, max_iter=args.max_iter)
    _emit(dumps(report.to_json()) if args.json else report.to_text())
    return 0


def cmd_poly_classify(args):
    try:
        coeffs = parse_int_list(args.coeffs)
    except ValueError as exc:
        raise SystemFormatError(str(exc)) from None
    p = IntPolynomial(coeffs)
    if p.degree < 1:
        raise SystemFormatError("need a polynomial of degree at least 1")
    cls = classify_salem(p, args.tol)
    if args.json:
        out = cls.to_json(DIGITS)
        out["polynomial"] = p.to_json()
        _emit(dumps(out))
        return 0
    lines = [f"polynomial: {p}", f"kind: {cls.kind}", f"degree: {cls.degree}"]
    if cls.cyclotomic_index is not None:
        lines.append(f"n: {cls.cyclotomic_index}")
    elif cls.cyclotomic_factors:
        lines.append("cyclotomic factors: "
                     + ", ".join(f"Phi_{n}^{m}" for n, m in cls.cyclotomic_factors))
    if cls.salem_root is not None:
        lines.append(f"lambda: {mpmath.nstr(cls.salem_root, DIGITS)}")
    if cls.trace_poly is not None:
        lines.append(f"trace polynomial: {cls.trace_poly.format('x')}")
    if cls.trace_interval is not None:
        lo, hi = cls.trace_interval
        lines.append(f"lambda + 1/lambda in [{lo}, {hi}]")
    if cls.diagnostic:
        lines.append(f"note: {cls.diagnostic}")
    _emit("\n".join(lines) + "\n")
    return 0


def cmd_enumerate(args):
    L = _lattice_source(args.gram)
    vectors = enumerate_norm_vectors(L, args.norm)
    if args.json:
        _emit(dumps({"norm": args.norm, "count": len(vectors),
                     "vectors": [list(v) for v in vectors]}))
    else:
        _emit("".join(" ".join(map(str, v)) + "\n" for v in vectors)
              + f"count: {len(vectors)}\n")
    return 0


def cmd_gallery(args):
    if args.action == "list":
        _emit("".join(n + "\n" for n in gallery.names()))
        return 0
    if not args.name:
        raise SystemFormatError("gallery show needs a name")
    item = gallery.builtin(args.name)
    text = dumps(system_to_json(item))
    if args.emit:
        with open(args.emit, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        _emit(text)
    return 0


def cmd_iterate(args):
    sigma = _system_source(args.input)
    trace = cantat_recursion(sigma, args.start, max_iter=args.max_iter, tol=args.tol)
    split = trace.split
    with mpmath.workdps(working_dps()):
        resid = eigen_identity_residual(sigma, trace.limit, split.lam)
        bound = 2 / (split.lam + 1 / split.lam)
    out = trace.to_json(DIGITS)
    out.update({"rate_bound": mpmath.nstr(bound, DIGITS),
                "eigen_residual": mpmath.nstr(resid, DIGITS), "tolerance": args.tol})
    if args.json:
        _emit(dumps(out))
    else:
        _emit(f"converged after {out['iterates']} steps\n"
              f"rate {out['rate']} (bound {out['rate_bound']})\n"
              f"a = {out['a']}\nb = {out['b']}\n"
              f"eigen residual {out['eigen_residual']}\n"
              "limit: " + " ".join(out["limit"]) + "\n")
    return 0


def cmd_orbit_span(args):
    sigma = _system_source(args.input)
    if args.vector is not None:
        d = orbit_span_dimension(sigma, np.array(args.vector, dtype=object))
        _emit(dumps({"class": args.vector, "span_dimension": d, "rank": sigma.rank})
              if args.json else f"{d}\n")
        return 0
    cert = spanning_class_search(sigma, tol=args.tol)
    if args.json:
        _emit(dumps(cert.to_json()))
    elif cert.kind == "Spanning":
        _emit(f"Spanning {' '.join(map(str, cert.vector))}\n")
    else:
        _emit(f"Impossible witness {cert.witness} (largest span {cert.span_dimension})\n")
    return 0


def build_parser():
    p = _Parser(prog="salemlat", description="Salem factors, distinguished sublattices and "
                "orbit spans of lattice isometries.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, json_default=False):
        sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--json", dest="json", action="store_true", default=json_default)
        g.add_argument("--text", dest="json", action="store_false")

    a = sub.add_parser("analyze", help="full report for a system file or gallery name")
    a.add_argument("input")
    a.add_argument("--start", type=_vector_arg, help="start class for the averaged recursion")
    a.add_argument("--max-iter", type=int, default=1000)
    common(a)
    a.set_defaults(func=cmd_analyze)

    poly = sub.add_parser("poly", help="polynomial tools")
    psub = poly.add_subparsers(dest="poly_command", required=True, parser_class=_Parser)
    c = psub.add_parser("classify", help="classify coefficients, lowest degree first")
    c.add_argument("coeffs")
    common(c)
    c.set_defaults(func=cmd_poly_classify)

    e = sub.add_parser("enumerate", help="vectors of a given norm in a negative definite lattice")
    e.add_argument("gram")
    e.add_argument("--norm", type=int, required=True)
    common(e)
    e.set_defaults(func=cmd_enumerate)

    g = sub.add_parser("gallery", help="built-in systems")
    g.add_argument("action", choices=["list", "show"])
    g.add_argument("name", nargs="?")
    g.add_argument("--emit", metavar="PATH")
    g.set_defaults(func=cmd_gallery)

    it = sub.add_parser("iterate", help="averaged recursion from a start class")
    it.add_argument("input")
    it.add_argument("--start", type=_vector_arg, required=True)
    it.add_argument("--max-iter", type=int, default=1000)
    common(it)
    it.set_defaults(func=cmd_iterate)

    o = sub.add_parser("orbit", help="orbit spans")
    osub = o.add_subparsers(dest="orbit_command", required=True, parser_class=_Parser)
    s = osub.add_parser("span", help="spanning class or impossibility witness")
    s.add_argument("input")
    s.add_argument("--class", dest="vector", type=_vector_arg)
    common(s)
    s.set_defaults(func=cmd_orbit_span)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"salemlat: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except _PROPERTY_ERRORS as exc:
        print(f"salemlat: property violation: {exc}", file=sys.stderr)
        return EXIT_PROPERTY
    except NoConvergence as exc:
        print(f"salemlat: no convergence: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"salemlat: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
