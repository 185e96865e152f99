import numpy as np
import pytest
import sympy as sp

from salemlat.poly import IntPolynomial

T = sp.Symbol("t")


def to_sympy(p):
    return sp.Poly(list(reversed(p.coeffs)), T)


def from_sympy(expr):
    return IntPolynomial([int(c) for c in reversed(sp.Poly(expr, T).all_coeffs())])


def sympy_factors(p):
    """{IntPolynomial: multiplicity} over Q for a monic p."""
    _, fl = sp.factor_list(to_sympy(p).as_expr(), T)
    return {from_sympy(f): m for f, m in fl}


def obj(rows):
    return np.array(rows, dtype=object)


@pytest.fixture(scope="session")
def systems():
    from salemlat import gallery
    return {n: gallery.builtin(n) for n in gallery.system_names()}


# one line per acceptance criterion, printed after the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
