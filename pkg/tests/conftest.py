"""Shared fixtures and independent oracles for the test suite."""

from fractions import Fraction

import pytest

from fibrant.poly import MultiPoly, exact_divide, extract_power


def fulton_multiplicity(f, g, x="x", y="y", depth=0):
    """Independent intersection-number oracle (recursive reduction).

    Uses only the axioms of the local intersection number: translation to
    the origin is the caller's job; degenerate (infinite) intersections
    return float('inf').
    """
    if depth > 1000:
        raise RuntimeError("oracle recursion blown")
    if f.is_zero() or g.is_zero():
        return float("inf")
    fv = f.evaluate({v: Fraction(0) for v in f.variables})
    gv = g.evaluate({v: Fraction(0) for v in g.variables})
    if fv != 0 or gv != 0:
        return 0
    fr = f.substitute({y: Fraction(0)})
    gr = g.substitute({y: Fraction(0)})
    if fr.is_zero() and gr.is_zero():
        return float("inf")
    if fr.is_zero() or (not gr.is_zero() and fr.degree_in(x) > gr.degree_in(x)):
        f, g, fr, gr = g, f, gr, fr
    if gr.is_zero():
        h = exact_divide(g, MultiPoly.variable(y))
        k, _ = extract_power(fr, MultiPoly.variable(x))
        return int(k) + fulton_multiplicity(f, h, x, y, depth + 1)
    r, s = fr.degree_in(x), gr.degree_in(x)
    if r > s:
        f, g, fr, gr, r, s = g, f, gr, fr, s, r
    lcf = fr.as_univariate(x)[-1].constant_value()
    lcg = gr.as_univariate(x)[-1].constant_value()
    gnew = g - (lcg / lcf) * MultiPoly.variable(x) ** (s - r) * f
    return fulton_multiplicity(f, gnew, x, y, depth + 1)


def sylvester_det_fractions(rows):
    """Determinant by plain fraction Gaussian elimination (oracle only)."""
    n = len(rows)
    m = [[Fraction(v) for v in row] for row in rows]
    det = Fraction(1)
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if m[i][k] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            det = -det
        det *= m[k][k]
        inv = 1 / m[k][k]
        for i in range(k + 1, n):
            factor = m[i][k] * inv
            if factor == 0:
                continue
            for j in range(k, n):
                m[i][j] -= factor * m[k][j]
    return det


@pytest.fixture(scope="session")
def lagrange_fibration():
    from fibrant.lagrange import build_global_sections

    return build_global_sections(1)


@pytest.fixture(scope="session")
def quintic_alpha1(lagrange_fibration):
    _, residual = lagrange_fibration.reduced_discriminant()
    return residual


# -- acceptance criterion bookkeeping ---------------------------------------

_CRITERIA = {}


@pytest.fixture
def criterion():
    def record(number, description, passed):
        _CRITERIA[number] = (description, bool(passed))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        description, passed = _CRITERIA[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"  criterion {number:>2}: {status}  {description}")
