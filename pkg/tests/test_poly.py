from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from fibrant.poly import (
    INFINITE_ORDER,
    MultiPoly,
    NotDivisibleError,
    equal_up_to_unit,
    exact_divide,
    extract_power,
    factor_integer,
    format_poly,
    gcd_multivariate,
    gcd_univariate,
    homogeneous_components,
    is_squarefree,
    parse,
    primitive_integer,
    rational_roots,
    resultant,
    squarefree_part,
)

x = MultiPoly.variable("x")
y = MultiPoly.variable("y")
s1 = MultiPoly.variable("s1")
s2 = MultiPoly.variable("s2")


class TestArithmetic:
    def test_cancellation(self):
        p = MultiPoly.variable("s1") ** 2 + 1
        assert p + (-1) == MultiPoly.variable("s1") ** 2

    def test_discriminant_shape(self):
        # a^3 - 27 b^2 with a = s1, b = s2
        assert s1**3 - 27 * s2**2 == parse("s1^3 - 27*s2^2")

    def test_binomial(self):
        assert (x + y) ** 2 == parse("x^2 + 2*x*y + y^2")

    def test_negative_power_rejected(self):
        with pytest.raises(ValueError):
            x ** (-1)

    def test_variable_merge_by_name(self):
        p = parse("x + 1") * parse("y + 1")
        assert p == parse("x*y + x + y + 1")

    def test_scalar_coercion(self):
        assert 2 * x - x == x
        assert F(1, 2) * (2 * x) == x


class TestDerivative:
    def test_g2_partial(self):
        g2 = parse("1 + (1/12)*a2^2 - (1/4)*a1")  # alpha = 1
        assert g2.derivative("a1") == MultiPoly.const(F(-1, 4))

    def test_constant(self):
        assert MultiPoly.const(7).derivative("x").is_zero()

    def test_power_rule(self):
        assert (s1**3 - 27 * s2**2).derivative("s2") == -54 * s2

    @given(st.integers(-4, 4), st.integers(0, 3), st.integers(0, 3))
    def test_partials_commute(self, c, i, j):
        p = c * x**i * y**j + x * y + 3
        assert p.derivative("x").derivative("y") == p.derivative("y").derivative("x")


class TestSubstitute:
    def test_monomial_map(self):
        t1 = MultiPoly.variable("t1")
        t2 = MultiPoly.variable("t2")
        result = (s1**3 - 27 * s2**2).substitute({"s1": t1, "s2": t1 * t2})
        # oracle: term-by-term substitution
        oracle = t1**3 - 27 * (t1 * t2) ** 2
        assert result == oracle == parse("t1^3 - 27*t1^2*t2^2")

    def test_identity(self):
        p = parse("x^2*y - 3*x + 2")
        assert p.substitute({"x": x, "y": y}) == p

    def test_dehomogenize_section(self):
        phi = parse("A0^2*(A0^2 + (1/12)*A2^2 - (alpha/4)*A0*A1)", {"alpha": F(1)})
        g2 = phi.substitute({"A0": F(1)})
        assert g2 == parse("1 + (1/12)*A2^2 - (1/4)*A1")


class TestExactDivide:
    def test_monomial_factor(self):
        t1, t2 = MultiPoly.variable("t1"), MultiPoly.variable("t2")
        p = t1**2 * (t1 - 27 * t2**2)
        assert exact_divide(p, t1**2) == t1 - 27 * t2**2

    def test_difference_of_squares(self):
        assert exact_divide(x**2 - y**2, x - y) == x + y

    def test_not_divisible(self):
        with pytest.raises(NotDivisibleError):
            exact_divide(x**2 + 1, x)


class TestExtractPower:
    def test_monomial_power(self):
        p = parse("s1^2*s2^6*(s1 - 27)")
        k, rest = extract_power(p, s2)
        assert k == 6 and rest == parse("s1^2*(s1 - 27)")

    def test_constant(self):
        k, rest = extract_power(MultiPoly.const(5), x)
        assert k == 0 and rest == MultiPoly.const(5)

    def test_zero_is_infinitely_divisible(self):
        k, rest = extract_power(MultiPoly.zero(), x)
        assert k == INFINITE_ORDER and rest.is_zero()

    def test_lagrange_discriminant_line_power(self, lagrange_fibration):
        delta = lagrange_fibration.discriminant()
        k, rest = extract_power(delta, MultiPoly.variable("A0"))
        assert k == 7
        assert rest.total_degree() == 5 and rest.is_homogeneous()


class TestResultant:
    def test_linear(self):
        a, b = MultiPoly.variable("a"), MultiPoly.variable("b")
        assert resultant(x - a, x - b, "x") == a - b

    def test_common_root(self):
        assert resultant(x**2, x, "x").is_zero()

    def test_quartic_discriminant_value(self):
        # contact quartic at alpha = 1 against its derivative
        f = parse("3*a2^4 - a2^3 + 72*a2^2 - 108*a2 + 459")
        r = resultant(f, f.derivative("a2"), "a2")
        assert abs(r.constant_value()) == 979113612375
        # the Sylvester convention here lands on the positive sign
        assert r.constant_value() == 979113612375

    def test_against_fraction_elimination_oracle(self):
        from conftest import sylvester_det_fractions

        f = parse("3*a2^4 - a2^3 + 72*a2^2 - 108*a2 + 459")
        fc = [c.constant_value() for c in f.as_univariate("a2")][::-1]
        dc = [c.constant_value() for c in f.derivative("a2").as_univariate("a2")][::-1]
        size = 7
        rows = []
        for i in range(3):
            rows.append([F(0)] * i + fc + [F(0)] * (size - 5 - i))
        for i in range(4):
            rows.append([F(0)] * i + dc + [F(0)] * (size - 4 - i))
        oracle = sylvester_det_fractions(rows)
        assert oracle == resultant(f, f.derivative("a2"), "a2").constant_value()

    def test_degenerate_rejected(self):
        with pytest.raises(ValueError):
            resultant(x, MultiPoly.const(3), "x")


class TestGcd:
    def test_basic(self):
        assert gcd_univariate(x**2 - 1, x - 1, "x") == x - 1

    def test_squarefree_vs_derivative(self):
        f = parse("x^3 + 2*x + 1")
        assert gcd_univariate(f, f.derivative("x"), "x") == MultiPoly.const(1)

    def test_content_slice(self):
        g = gcd_univariate(s1**3 - 27 * s2**2, -54 * s2, "s2")
        assert g.is_constant()

    def test_multivariate(self):
        assert gcd_multivariate(x**2 - y**2, (x + y) ** 2) == x + y

    @given(st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 3), st.integers(1, 3))
    @settings(max_examples=40, deadline=None)
    def test_resultant_vanishes_iff_common_factor(self, a, b, i, j):
        f = (x - a) ** i * (x - b)
        g = (x - a) ** j * (x + b + 1)
        r = resultant(f, g, "x")
        has_common = not gcd_univariate(f, g, "x").is_constant()
        assert r.is_zero() == has_common


class TestHomogeneousComponents:
    def test_node_recentering(self, quintic_alpha1):
        # degree-1 part vanishes at a double point of the residual curve
        affine = quintic_alpha1.substitute({"A0": F(1)})
        parts = homogeneous_components(affine, {"A1": F(1), "A2": F(9, 4)})
        assert parts[0].is_zero() and parts[1].is_zero()
        assert not parts[2].is_zero()

    def test_square_at_origin(self):
        parts = homogeneous_components(x**2)
        assert [format_poly(c) for c in parts] == ["0", "0", "x^2"]

    def test_shifted_square(self):
        parts = homogeneous_components((x - 1) ** 2, [F(1)])
        assert [format_poly(c) for c in parts] == ["0", "0", "x^2"]

    @given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-2, 2))
    @settings(max_examples=30, deadline=None)
    def test_components_sum_back(self, a, b, c):
        p = a * x**3 + b * x * y + c
        point = {"x": F(1), "y": F(-2)}
        parts = homogeneous_components(p, point)
        total = MultiPoly.zero()
        for part in parts:
            total = total + part
        assert total == p.shift(point)


class TestEvaluate:
    def test_g2_origin(self):
        g2 = parse("1 + (1/12)*a2^2 - (alpha/4)*a1", {"alpha": F(1)})
        assert g2.evaluate({"a1": F(0), "a2": F(0)}) == 1

    def test_g3_origin(self):
        g3 = parse(
            "(1/216)*a2^3 + (1/16)*a1^2 - (alpha/48)*a1*a2 - (1/6)*a2 + (alpha^2/16)",
            {"alpha": F(1)},
        )
        assert g3.evaluate({"a1": F(0), "a2": F(0)}) == F(1, 16)

    def test_exact_pair(self):
        g2 = parse("1 + (1/12)*a2^2 - (alpha/4)*a1", {"alpha": F(2)})
        g3 = parse(
            "(1/216)*a2^3 + (1/16)*a1^2 - (alpha/48)*a1*a2 - (1/6)*a2 + (alpha^2/16)",
            {"alpha": F(2)},
        )
        point = {"a1": F(1), "a2": F(2)}
        assert g2.evaluate(point) == F(5, 6)
        assert g3.evaluate(point) == F(-29, 432)

    def test_missing_variable(self):
        with pytest.raises(KeyError):
            (x + y).evaluate({"x": 1})

    def test_complex_mode(self):
        val = (x**2 + 1).evaluate({"x": 1j})
        assert abs(val) < 1e-15


class TestRoots:
    def test_simple(self):
        assert rational_roots(parse("x^3 - x")) == [(F(-1), 1), (F(0), 1), (F(1), 1)]

    def test_multiplicity_and_fractions(self):
        p = parse("4*x^2 - 1") * parse("x - 3") ** 2
        assert rational_roots(p) == [(F(-1, 2), 1), (F(1, 2), 1), (F(3), 2)]

    def test_no_rational_roots(self):
        assert rational_roots(parse("x^2 - 2")) == []

    def test_big_coefficients(self):
        p = parse("x - 979113612375") * parse("3*x + 2")
        roots = dict(rational_roots(p))
        assert roots[F(979113612375)] == 1 and roots[F(-2, 3)] == 1

    def test_factor_integer(self):
        assert factor_integer(979113612375) == {3: 13, 5: 3, 17: 3}

    def test_squarefree_tools(self):
        p = parse("(x - 1)^2*(x + 2)")
        assert not is_squarefree(p, "x")
        assert equal_up_to_unit(squarefree_part(p, "x"), parse("(x - 1)*(x + 2)"))


class TestTextFormat:
    def test_round_trip_exact(self):
        text = "(1/12)*A2^2 - (1/4)*A1 + 1"
        p = parse(text)
        assert format_poly(p) == text
        assert parse(format_poly(p)) == p

    def test_alpha_substitution(self):
        p = parse("1 + (1/12)*A2^2 - (1/4)*alpha*A1", {"alpha": F(3, 2)})
        assert p == parse("1 + (1/12)*A2^2 - (3/8)*A1")

    def test_zero(self):
        assert format_poly(MultiPoly.zero()) == "0"
        assert parse("0").is_zero()

    def test_primitive_integer_units(self):
        p = parse("(2/3)*x^2 - (4/3)")
        prim, unit = primitive_integer(p)
        assert prim == parse("x^2 - 2") and unit == F(2, 3)
        assert equal_up_to_unit(p, parse("3*x^2 - 6"))


# -- ring axioms (property-based) ------------------------------------------------

coeffs = st.integers(-5, 5).map(F)
exponents = st.tuples(st.integers(0, 3), st.integers(0, 3))


@st.composite
def polys(draw):
    n_terms = draw(st.integers(0, 4))
    terms = {}
    for _ in range(n_terms):
        exp = draw(exponents)
        terms[exp] = terms.get(exp, F(0)) + draw(coeffs)
    return MultiPoly(("x", "y"), terms)


@given(polys(), polys(), polys())
@settings(max_examples=60, deadline=None)
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r


@given(polys(), st.integers(0, 3), st.integers(1, 2))
@settings(max_examples=40, deadline=None)
def test_extract_power_reconstructs(p, extra, qdeg):
    q = (x + 1) ** qdeg if qdeg == 1 else x * y + 1
    value = p * q**extra
    if value.is_zero():
        return
    k, rest = extract_power(value, q)
    assert q**int(k) * rest == value
    # the cofactor really is not divisible again
    with pytest.raises(NotDivisibleError):
        exact_divide(rest, q)
