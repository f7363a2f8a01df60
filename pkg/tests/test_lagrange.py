import random
from fractions import Fraction as F

import pytest

from fibrant.lagrange import (
    GAMMA_VARS,
    MOMENTUM_VARS,
    SamplingError,
    TopParams,
    build_global_sections,
    casimirs,
    directional_derivative,
    euler_poisson_rhs,
    euler_poisson_rhs_poly,
    first_integrals,
    g2_g3,
    integral_residuals,
    lie_poisson_bracket,
    quotient_cubic_residual,
    sample_fiber_point,
    shifted_weierstrass_residual,
    tau_transform,
)
from fibrant.poly import MultiPoly, extract_power, parse


def random_phase_poly(rng, terms=4):
    names = GAMMA_VARS + MOMENTUM_VARS
    out = MultiPoly.zero()
    for _ in range(terms):
        powers = {rng.choice(names): rng.randint(0, 2) for _ in range(2)}
        out = out + MultiPoly.monomial(F(rng.randint(-3, 3)), powers)
    return out


class TestBracket:
    def test_casimirs_commute_with_integrals(self):
        params = TopParams(m=F(1, 2))
        c1, c2 = casimirs()
        for h in first_integrals(params):
            assert lie_poisson_bracket(c1, h).is_zero()
            assert lie_poisson_bracket(c2, h).is_zero()

    def test_casimirs_commute_with_random_polys(self):
        rng = random.Random(7)
        c1, c2 = casimirs()
        for _ in range(8):
            f = random_phase_poly(rng)
            assert lie_poisson_bracket(c1, f).is_zero()
            assert lie_poisson_bracket(c2, f).is_zero()

    def test_antisymmetry(self):
        rng = random.Random(11)
        for _ in range(6):
            f = random_phase_poly(rng)
            g = random_phase_poly(rng)
            assert lie_poisson_bracket(f, f).is_zero()
            assert (lie_poisson_bracket(f, g) + lie_poisson_bracket(g, f)).is_zero()

    def test_leibniz(self):
        rng = random.Random(13)
        for _ in range(4):
            f, g, h = (random_phase_poly(rng, terms=3) for _ in range(3))
            lhs = lie_poisson_bracket(f, g * h)
            rhs = lie_poisson_bracket(f, g) * h + g * lie_poisson_bracket(f, h)
            assert lhs == rhs

    @pytest.mark.parametrize("m", [F(0), F(1, 2), F(3)])
    def test_full_involution(self, m):
        integrals = first_integrals(TopParams(m=m))
        for i in range(4):
            for j in range(i + 1, 4):
                assert lie_poisson_bracket(integrals[i], integrals[j]).is_zero()


class TestFirstIntegrals:
    def test_h1(self):
        h1 = first_integrals(TopParams())[0]
        assert h1 == parse("G1^2 + G2^2 + G3^2")

    def test_h2_any_m(self):
        for m in (F(0), F(1, 2), F(5)):
            h2 = first_integrals(TopParams(m=m))[1]
            assert h2 == parse("G1*M1 + G2*M2 + G3*M3")

    def test_h4_at_m_zero(self):
        h4 = first_integrals(TopParams(m=F(0)))[3]
        assert h4 == MultiPoly.variable("M3")


class TestEulerPoisson:
    def test_upright_equilibrium(self):
        m = F(1, 2)
        point = ((0, 0, 1), (0, 0, 1))  # Gamma = e3, Omega = e3
        dgamma, dmom = euler_poisson_rhs(point, TopParams(m=m))
        assert all(abs(c) < 1e-15 for c in dgamma + dmom)

    def test_gravity_torque(self):
        point = ((1, 0, 0), (0, 0, 0))
        dgamma, dmom = euler_poisson_rhs(point, TopParams())
        assert dgamma == (0, 0, 0)
        assert dmom == (0, 1, 0)

    @pytest.mark.parametrize("m", [F(0), F(1, 2), F(3)])
    def test_symbolic_conservation(self, m):
        params = TopParams(m=m)
        for h in first_integrals(params):
            assert directional_derivative(h, params).is_zero()

    def test_finite_difference_oracle(self):
        params = TopParams(m=F(1, 2))
        h3 = first_integrals(params)[2]
        rng = random.Random(3)
        eps = 1e-4
        names = GAMMA_VARS + MOMENTUM_VARS
        for _ in range(20):
            point = {n: rng.uniform(-1, 1) for n in names}
            rhs = [p.evaluate(point) for p in euler_poisson_rhs_poly(params)]

            def along(t):
                shifted = {n: point[n] + t * v for n, v in zip(names, rhs)}
                return h3.evaluate(shifted)

            deriv = (along(-2 * eps) - 8 * along(-eps) + 8 * along(eps) - along(2 * eps)) / (
                12 * eps
            )
            assert abs(deriv) < 1e-10


class TestParameterMaps:
    def test_tau_trivial_m(self):
        assert tau_transform(1, 1, 0) == (F(2), F(2))

    def test_tau_zero(self):
        assert tau_transform(0, 0, F(7, 3)) == (F(0), F(0))

    def test_tau_generic(self):
        assert tau_transform(1, 2, F(1, 2)) == (F(6), F(5))

    def test_g2_g3_constant_terms(self):
        assert g2_g3(0, 0, 1) == (F(1), F(1, 16))

    def test_g2_g3_generic(self):
        assert g2_g3(1, 2, 2) == (F(5, 6), F(-29, 432))

    def test_sections_restrict_to_g2_g3(self):
        alpha = F(3, 2)
        fib = build_global_sections(alpha)
        a1v, a2v = F(2, 5), F(-7, 3)
        g2, g3 = g2_g3(a1v, a2v, alpha)
        point = {"A0": F(1), "A1": a1v, "A2": a2v}
        assert fib.a.evaluate(point) == g2
        assert fib.b.evaluate(point) == g3


class TestGlobalSections:
    def test_vertex_values(self):
        alpha = F(3)
        fib = build_global_sections(alpha)
        origin = {"A0": F(1), "A1": F(0), "A2": F(0)}
        assert fib.a.evaluate(origin) == 1
        assert fib.b.evaluate(origin) == alpha**2 / 16

    def test_line_divisibility(self):
        fib = build_global_sections(1)
        line = {"A0": F(0), "A1": F(3), "A2": F(-2)}
        assert fib.a.evaluate(line) == 0 and fib.b.evaluate(line) == 0
        k_a, a_tilde = extract_power(fib.a, MultiPoly.variable("A0"))
        k_b, _ = extract_power(fib.b, MultiPoly.variable("A0"))
        assert (k_a, k_b) == (2, 3)
        assert a_tilde == parse(
            "A0^2 + (1/12)*A2^2 - (alpha/4)*A0*A1", {"alpha": F(1)}
        )


class TestSampler:
    def test_residuals_over_seeds(self):
        h3, h4, a, m = F(3, 5), F(2, 7), F(1, 3), F(1, 2)
        for seed in range(100):
            point = sample_fiber_point(h3, h4, a, m, seed=seed)
            worst = max(abs(r) for r in integral_residuals(point, h3, h4, a, m))
            assert worst < 1e-10

    def test_h4_zero_pins_omega3(self):
        point = sample_fiber_point(F(1), 0, F(1, 3), F(1, 2), seed=5)
        assert point[1][2] == 0

    def test_deterministic(self):
        args = (F(3, 5), F(2, 7), F(1, 3), F(1, 2))
        assert sample_fiber_point(*args, seed=9) == sample_fiber_point(*args, seed=9)


class TestQuotientCubic:
    @pytest.mark.parametrize(
        "h3,h4,a",
        [
            (F(3, 5), F(2, 7), F(1, 3)),
            (F(-1, 2), F(1), F(2, 5)),
            (F(7, 4), F(-3, 8), F(-1, 6)),
        ],
    )
    def test_residuals(self, h3, h4, a):
        m = F(1, 2)
        for seed in range(100):
            point = sample_fiber_point(h3, h4, a, m, seed=seed)
            assert abs(quotient_cubic_residual(point, h3, h4, a, m)) < 1e-9
            assert abs(shifted_weierstrass_residual(point, h3, h4, a, m)) < 1e-9

    def test_upright_equilibrium_closed_form(self):
        # Gamma = e3, Omega = h4 e3 lies on the level set with
        # a = (1+m) h4 and h3 = (1+m) h4^2 / 2 - 1
        m, h4 = F(1, 2), F(2, 3)
        a = (1 + m) * h4
        h3 = (1 + m) * h4**2 / 2 - 1
        point = ((0, 0, 1), (0, 0, complex(F(2, 3))))
        assert max(abs(r) for r in integral_residuals(point, h3, h4, a, m)) < 1e-15
        assert abs(quotient_cubic_residual(point, h3, h4, a, m)) < 1e-12
