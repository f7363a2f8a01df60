"""Weierstrass fibrations over the projective plane and Kodaira fiber types.

A fibration is stored as its pair of defining sections: ``a`` of degree 4
and ``b`` of degree 6 in the homogeneous coordinates (A0, A1, A2), cutting
out Y^2 Z = 4 X^3 - a X Z^2 - b Z^3 in a projectivized rank-3 bundle.  The
bundle itself is never materialized: every total-space question is
answered through the section pair.

The classification of fibers over smooth points of the reduced
discriminant is Kodaira's table, keyed by the vanishing orders (L, K, N)
of (a, b, Delta) along a component.  Orders may be infinite (a section
identically zero along the component).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import monodromy
from .planecurve import (
    AffineChart,
    NonReducedCurveError,
    PROJECTIVE_VARS,
    rational_singular_points,
)
from .poly import (
    INFINITE_ORDER,
    MultiPoly,
    exact_divide,
    extract_power,
    gcd_multivariate,
)


class NotAnalyzableError(ValueError):
    """Input outside the scope the analysis certifies (with a diagnostic)."""


class GenericityError(NotAnalyzableError):
    """Parameter value on the excluded degeneracy locus."""


class NeedsNormalizationError(ValueError):
    """Order triple with L >= 4 and K >= 6: rescale fiber coordinates first."""


class NotInTableError(ValueError):
    """Order triple matching no row of Kodaira's table."""


# -- order triples -------------------------------------------------------------


@dataclass(frozen=True)
class OrderTriple:
    """Vanishing orders (L, K, N) of (a, b, a^3 - 27 b^2) along a divisor."""

    L: object
    K: object
    N: object

    def __post_init__(self):
        for v in (self.L, self.K, self.N):
            if not (v == INFINITE_ORDER or (isinstance(v, int) and v >= 0)):
                raise ValueError(f"bad order {v!r}")

    def as_tuple(self):
        return (self.L, self.K, self.N)

    def is_consistent(self) -> bool:
        """N >= min(3L, 2K), with equality whenever 3L != 2K."""
        three_l = self.L * 3 if self.L != INFINITE_ORDER else INFINITE_ORDER
        two_k = self.K * 2 if self.K != INFINITE_ORDER else INFINITE_ORDER
        low = min(three_l, two_k)
        if low == INFINITE_ORDER:
            return self.N == INFINITE_ORDER
        if three_l != two_k:
            return self.N == low
        return self.N >= low

    def to_json(self):
        return ["inf" if v == INFINITE_ORDER else v for v in self.as_tuple()]


def reduce_triple_mod(t: OrderTriple) -> OrderTriple:
    """Subtract (4, 6, 12) while L >= 4, K >= 6 and N >= 12."""
    L, K, N = t.as_tuple()
    while L >= 4 and K >= 6 and N >= 12:
        if L == INFINITE_ORDER and K == INFINITE_ORDER and N == INFINITE_ORDER:
            raise ValueError("discriminant vanishes identically along the divisor")
        L = L - 4 if L != INFINITE_ORDER else L
        K = K - 6 if K != INFINITE_ORDER else K
        N = N - 12 if N != INFINITE_ORDER else N
    return OrderTriple(L, K, N)


# -- dual graphs ----------------------------------------------------------------


@dataclass(frozen=True)
class DualGraph:
    """Multiplicity-labeled dual graph of a degenerate fiber."""

    kind: str                 # irreducible | cycle | chain | star_chain | tree
    nodes: tuple
    edges: tuple              # pairs of node indices; repeats allowed

    @staticmethod
    def irreducible() -> "DualGraph":
        return DualGraph("irreducible", (1,), ())

    @staticmethod
    def cycle(*mults) -> "DualGraph":
        n = len(mults)
        if n == 1:
            edges = ((0, 0),)
        elif n == 2:
            edges = ((0, 1), (0, 1))
        else:
            edges = tuple((i, (i + 1) % n) for i in range(n))
        return DualGraph("cycle", tuple(mults), edges)

    @staticmethod
    def chain(*mults) -> "DualGraph":
        edges = tuple((i, i + 1) for i in range(len(mults) - 1))
        return DualGraph("chain", tuple(mults), edges)

    @staticmethod
    def star_chain(spine, left_legs=(1, 1), right_legs=(1, 1)) -> "DualGraph":
        """A chain of components with extra leaf components at the two ends."""
        nodes = list(spine)
        edges = [(i, i + 1) for i in range(len(spine) - 1)]
        for m in left_legs:
            nodes.append(m)
            edges.append((len(nodes) - 1, 0))
        for m in right_legs:
            nodes.append(m)
            edges.append((len(nodes) - 1, len(spine) - 1))
        return DualGraph("star_chain", tuple(nodes), tuple(edges))

    @staticmethod
    def tree(nodes, edges) -> "DualGraph":
        return DualGraph("tree", tuple(nodes), tuple(edges))

    def component_count(self) -> int:
        return len(self.nodes)

    def multiplicities(self) -> tuple:
        return self.nodes

    def canonical(self):
        """Isomorphism-friendly invariant: multiplicities + edge label pairs."""
        mults = tuple(sorted(self.nodes))
        edge_labels = tuple(
            sorted(tuple(sorted((self.nodes[i], self.nodes[j]))) for i, j in self.edges)
        )
        return (mults, edge_labels)

    def to_json(self):
        return {
            "kind": self.kind,
            "multiplicities": list(self.nodes),
            "edges": [list(e) for e in self.edges],
        }


# -- Kodaira types ---------------------------------------------------------------


@dataclass(frozen=True)
class KodairaType:
    """A fiber type from Kodaira's classification, e.g. I3, I2*, IV*."""

    tag: str

    def __post_init__(self):
        self._data()  # validate

    def _data(self):
        tag = self.tag
        if tag in _FIXED_TYPES:
            return _FIXED_TYPES[tag]
        if tag.startswith("I") and tag.endswith("*") and tag[1:-1].isdigit():
            n = int(tag[1:-1])
            graph = DualGraph.star_chain((2,) * (n + 1))
            return {"graph": graph}
        if tag.startswith("I") and tag[1:].isdigit():
            n = int(tag[1:])
            if n == 0:
                return _FIXED_TYPES["I0"]
            graph = DualGraph.cycle(*([1] * n))
            return {"graph": graph}
        raise ValueError(f"unknown Kodaira tag {tag!r}")

    def dual_graph(self) -> DualGraph:
        return self._data()["graph"]

    def component_count(self) -> int:
        return self.dual_graph().component_count()

    def multiplicities(self) -> tuple:
        return self.dual_graph().multiplicities()

    def is_smooth(self) -> bool:
        return self.tag == "I0"

    def multiplicative_index(self):
        """n for I_n fibers, None otherwise."""
        if self.tag.startswith("I") and self.tag[1:].isdigit():
            return int(self.tag[1:])
        return None

    def star_index(self):
        """n for I_n* fibers, None otherwise."""
        if self.tag.startswith("I") and self.tag.endswith("*") and self.tag[1:-1].isdigit():
            return int(self.tag[1:-1])
        return None

    def to_json(self):
        return {
            "tag": self.tag,
            "components": self.component_count(),
            "multiplicities": list(self.multiplicities()),
            "dual_graph": self.dual_graph().to_json(),
        }


_E6 = DualGraph.tree(
    (3, 2, 1, 2, 1, 2, 1),
    ((0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)),
)
_E7 = DualGraph.tree(
    (1, 2, 3, 4, 3, 2, 1, 2),
    ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 7)),
)
_E8 = DualGraph.tree(
    (1, 2, 3, 4, 5, 6, 4, 2, 3),
    ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8)),
)

_FIXED_TYPES = {
    "I0": {"graph": DualGraph.irreducible()},
    "II": {"graph": DualGraph.irreducible()},
    "III": {"graph": DualGraph.chain(1, 1)},
    "IV": {"graph": DualGraph("tree", (1, 1, 1), ((0, 1), (1, 2), (0, 2)))},
    "IV*": {"graph": _E6},
    "III*": {"graph": _E7},
    "II*": {"graph": _E8},
}


def kodaira_classify(t: OrderTriple) -> KodairaType:
    """Classify an order triple by Kodaira's table.

    Triples with L >= 4 and K >= 6 are rejected with
    NeedsNormalizationError (rescale fiber coordinates first); triples
    matching no row raise NotInTableError.
    """
    L, K, N = t.as_tuple()
    if L >= 4 and K >= 6:
        raise NeedsNormalizationError(f"triple {t.as_tuple()} needs (4,6,12) reduction")
    if N == 0:
        return KodairaType("I0")
    if L == 0 and K == 0 and N >= 1:
        return KodairaType(f"I{N}")
    if L >= 1 and K == 1 and N == 2:
        return KodairaType("II")
    if L == 1 and K >= 2 and N == 3:
        return KodairaType("III")
    if L >= 2 and K == 2 and N == 4:
        return KodairaType("IV")
    if L >= 2 and K >= 3 and N == 6:
        return KodairaType("I0*")
    if L == 2 and K == 3 and N >= 7:
        return KodairaType(f"I{N - 6}*")
    if L >= 3 and K == 4 and N == 8:
        return KodairaType("IV*")
    if L == 3 and K >= 5 and N == 9:
        return KodairaType("III*")
    if L >= 4 and K == 5 and N == 10:
        return KodairaType("II*")
    raise NotInTableError(f"triple {t.as_tuple()} matches no Kodaira row")


def kodaira_monodromy(k: KodairaType) -> monodromy.SL2Z:
    """Conjugacy-class representative of the local monodromy."""
    tag = k.tag
    n = k.multiplicative_index()
    if n is not None:
        return monodromy.SL2Z(1, n, 0, 1)
    n = k.star_index()
    if n is not None:
        return monodromy.SL2Z(-1, -n, 0, -1)
    table = {
        "II": monodromy.SL2Z(1, 1, -1, 0),
        "III": monodromy.SL2Z(0, 1, -1, 0),
        "IV": monodromy.SL2Z(0, 1, -1, -1),
        "IV*": monodromy.SL2Z(-1, -1, 1, 0),
        "III*": monodromy.SL2Z(0, -1, 1, 0),
        "II*": monodromy.SL2Z(0, -1, 1, 1),
    }
    return table[tag]


# -- the fibration datatype -------------------------------------------------------


def check_genericity(alpha: Fraction):
    """Reject parameter values where the branch-point analysis degenerates.

    The four transverse contact points of the degree-4 and degree-6
    divisors collapse exactly on the vanishing locus of
    -3^10 a^4 (a^2+16)^3 (a+4)^3 (a-4)^3, i.e. at a in {0, 4, -4} over Q.
    """
    alpha = Fraction(alpha)
    if alpha in (0, 4, -4):
        raise GenericityError(
            f"alpha = {alpha} lies on the excluded locus a^4 (a+4)^3 (a-4)^3 = 0; "
            "the contact-point analysis degenerates there"
        )
    return alpha


@dataclass(frozen=True)
class TotalSpaceSingularity:
    fiber_point: tuple          # (X : Y : Z), rational entries
    base_point: tuple | None    # (A0 : A1 : A2) for isolated points
    base_curve: str | None = None   # equation text for non-isolated loci

    def kind(self) -> str:
        return "curve" if self.base_curve is not None else "isolated"

    def to_json(self):
        out = {
            "kind": self.kind(),
            "fiber_point": [str(c) for c in self.fiber_point],
        }
        if self.base_point is not None:
            out["base_point"] = [str(c) for c in self.base_point]
        if self.base_curve is not None:
            out["base_curve"] = self.base_curve
        return out


class WeierstrassFibration:
    """Sections (a, b) of degrees (4, 6) over the plane, with Delta not 0."""

    def __init__(self, a: MultiPoly, b: MultiPoly, alpha=None, m=None):
        if not a.is_zero() and (not a.is_homogeneous() or a.total_degree() != 4):
            raise ValueError("a must be homogeneous of degree 4 (or zero)")
        if not b.is_zero() and (not b.is_homogeneous() or b.total_degree() != 6):
            raise ValueError("b must be homogeneous of degree 6 (or zero)")
        bad = set(a.variables) | set(b.variables)
        if not bad <= set(PROJECTIVE_VARS):
            raise ValueError(f"sections must live in {PROJECTIVE_VARS}")
        delta = a**3 - 27 * b**2
        if delta.is_zero():
            raise ValueError("discriminant a^3 - 27 b^2 vanishes identically")
        self.a = a
        self.b = b
        self.alpha = None if alpha is None else Fraction(alpha)
        self.m = None if m is None else Fraction(m)
        self._delta = delta

    @staticmethod
    def from_strings(a_text: str, b_text: str, alpha=None, m=None) -> "WeierstrassFibration":
        from .poly import parse

        params = {}
        if alpha is not None:
            params["alpha"] = Fraction(alpha)
        if m is not None:
            params["m"] = Fraction(m)
        return WeierstrassFibration(parse(a_text, params), parse(b_text, params), alpha, m)

    def discriminant(self) -> MultiPoly:
        """a^3 - 27 b^2, homogeneous of degree 12."""
        return self._delta

    def j_invariant(self):
        """Functional invariant a^3 / Delta as unreduced and reduced pairs."""
        num = self.a**3
        den = self._delta
        g = _gcd_homogeneous(num, den)
        reduced = (exact_divide(num, g), exact_divide(den, g))
        return {"unreduced": (num, den), "reduced": reduced, "gcd": g}

    # -- total-space singularities (fiber equation Y^2 Z = 4X^3 - aXZ^2 - bZ^3) --

    def total_space_singularities(self) -> list:
        """Singular points of the total space, each with Y = 0 and Z != 0.

        Two sources: points with a = b = 0 where the degree-6 divisor is
        singular carry the singular point (0:0:1); singular points of the
        discriminant away from both section divisors carry (-3b : 0 : 2a).
        Non-isolated loci along shared components are reported as curve
        markers (detected along the coordinate lines).
        """
        results = []
        marker_lines = []
        # curve markers: coordinate lines contained in A along which B is singular
        for i, var in enumerate(PROJECTIVE_VARS):
            line = MultiPoly.variable(var)
            la, _ = extract_power(self.a, line)
            lb, _ = extract_power(self.b, line) if not self.b.is_zero() else (INFINITE_ORDER, None)
            if la >= 1 and lb >= 2:
                marker_lines.append(i)
                results.append(
                    TotalSpaceSingularity(
                        fiber_point=(Fraction(0), Fraction(0), Fraction(1)),
                        base_point=None,
                        base_curve=f"{var} = 0",
                    )
                )

        def on_marker(pt):
            return any(pt[i] == 0 for i in marker_lines)

        # isolated points with fiber point (-3b : 0 : 2a): Sing(D) away from A and B
        for pt in self._rational_discriminant_singularities():
            if on_marker(pt):
                continue
            aval = self.a.evaluate(dict(zip(PROJECTIVE_VARS, pt)))
            bval = self.b.evaluate(dict(zip(PROJECTIVE_VARS, pt)))
            if aval == 0 or bval == 0:
                continue
            results.append(
                TotalSpaceSingularity(
                    fiber_point=(Fraction(-3) * bval / (2 * aval), Fraction(0), Fraction(1)),
                    base_point=pt,
                )
            )
        # isolated points with fiber point (0:0:1): Sing(B) meeting A
        for pt in self._rational_b_singularities():
            if on_marker(pt):
                continue
            aval = self.a.evaluate(dict(zip(PROJECTIVE_VARS, pt)))
            if aval != 0:
                continue
            results.append(
                TotalSpaceSingularity(
                    fiber_point=(Fraction(0), Fraction(0), Fraction(1)),
                    base_point=pt,
                )
            )
        return results

    def reduced_discriminant(self):
        """(line factors with multiplicity, residual curve) of Delta."""
        residual = self._delta
        lines = []
        for var in PROJECTIVE_VARS:
            k, residual = extract_power(residual, MultiPoly.variable(var))
            if k:
                lines.append((var, int(k)))
        return lines, residual

    def _rational_discriminant_singularities(self):
        lines, residual = self.reduced_discriminant()
        reduced = radical(residual)
        for var, _ in lines:
            reduced = reduced * MultiPoly.variable(var)
        return _projective_rational_singular_points(reduced)

    def _rational_b_singularities(self):
        if self.b.is_zero():
            return []
        reduced = self.b
        for var in PROJECTIVE_VARS:
            k, rest = extract_power(reduced, MultiPoly.variable(var))
            if k >= 1:
                reduced = rest * MultiPoly.variable(var)
        try:
            return _projective_rational_singular_points(reduced)
        except NonReducedCurveError as exc:
            raise NotAnalyzableError(
                "the degree-6 section has a repeated non-linear factor; "
                f"its singular locus is not certified: {exc}"
            ) from exc


def _any_partial(p: MultiPoly) -> MultiPoly:
    for v in p.variables:
        d = p.derivative(v)
        if not d.is_zero():
            return d
    return MultiPoly.zero()


def radical(p: MultiPoly) -> MultiPoly:
    """Squarefree part of a polynomial: p / gcd(p, all partials)."""
    if p.is_zero() or p.is_constant():
        return p
    g = p
    for v in p.variables:
        g = gcd_multivariate(g, p.derivative(v))
        if g.is_constant():
            return p
    return exact_divide(p, g)


def _projective_rational_singular_points(curve: MultiPoly):
    """Rational singular points of a reduced plane projective curve."""
    seen = set()
    points = []
    for idx in range(3):
        chart = AffineChart.standard(idx)
        affine = chart.dehomogenize(curve)
        if affine.is_constant():
            continue
        locus = rational_singular_points(affine, chart)
        for rep in locus.points:
            proj = chart.to_projective(rep.point)
            key = _normalize_projective(proj)
            if key in seen:
                continue
            seen.add(key)
            points.append(key)
    return points


def _normalize_projective(pt):
    for c in pt:
        if c != 0:
            return tuple(Fraction(x) / Fraction(c) for x in pt)
    raise ValueError("projective point cannot be zero")


# -- orders along components and condition-(C) normalization ----------------------


def order_triple_along(a: MultiPoly, b: MultiPoly, component: MultiPoly) -> OrderTriple:
    """Vanishing orders of (a, b, a^3 - 27b^2) along an irreducible component."""
    la, _ = extract_power(a, component) if not a.is_zero() else (INFINITE_ORDER, None)
    lb, _ = extract_power(b, component) if not b.is_zero() else (INFINITE_ORDER, None)
    delta = a**3 - 27 * b**2
    ln, _ = extract_power(delta, component) if not delta.is_zero() else (INFINITE_ORDER, None)
    la = la if la == INFINITE_ORDER else int(la)
    lb = lb if lb == INFINITE_ORDER else int(lb)
    ln = ln if ln == INFINITE_ORDER else int(ln)
    return OrderTriple(la, lb, ln)


def normalize_condition_C(a: MultiPoly, b: MultiPoly, var: str):
    """Divide out u^(4t) from a and u^(6t) from b for the maximal t.

    Enforces the minimality condition along the coordinate u: afterwards
    no positive power u^4 divides a jointly with u^6 dividing b.  Returns
    (a', b', t).
    """
    u = MultiPoly.variable(var)
    ka, _ = extract_power(a, u) if not a.is_zero() else (INFINITE_ORDER, None)
    kb, _ = extract_power(b, u) if not b.is_zero() else (INFINITE_ORDER, None)
    if ka == INFINITE_ORDER and kb == INFINITE_ORDER:
        raise ValueError("both sections vanish identically")
    t_a = ka // 4 if ka != INFINITE_ORDER else INFINITE_ORDER
    t_b = kb // 6 if kb != INFINITE_ORDER else INFINITE_ORDER
    t = min(t_a, t_b)
    t = int(t)
    if t == 0:
        return a, b, 0
    a2 = a if a.is_zero() else exact_divide(a, u ** (4 * t))
    b2 = b if b.is_zero() else exact_divide(b, u ** (6 * t))
    return a2, b2, t


def _gcd_homogeneous(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """gcd of two homogeneous polynomials in the plane coordinates."""
    if p.is_zero():
        return q
    if q.is_zero():
        return p
    result = MultiPoly.const(1)
    for var in PROJECTIVE_VARS:
        v = MultiPoly.variable(var)
        kp, p = extract_power(p, v)
        kq, q = extract_power(q, v)
        k = min(kp, kq)
        if k:
            result = result * v ** int(k)
    chart = AffineChart(0, ("x1", "x2"))
    pa = chart.dehomogenize(p)
    qa = chart.dehomogenize(q)
    g = gcd_multivariate(pa, qa)
    if not g.is_constant():
        result = result * chart.homogenize(g, g.total_degree())
    return result
