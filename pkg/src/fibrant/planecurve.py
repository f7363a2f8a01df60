"""Singularity analysis of plane algebraic curves in affine charts.

Rational singular points are located by resultant elimination plus exact
rational-root extraction; non-rational singular points are never located
numerically, only certified through eliminant polynomials.  Double points
are classified (node / cusp / tacnode) by recentering and, where the
quadratic part degenerates, by blowing up and re-classifying the strict
transform.  Intersection multiplicities are computed as vanishing orders
of resultants after a shear making the projection generic, which keeps
every step exact over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .poly import (
    MultiPoly,
    exact_divide,
    extract_power,
    gcd_multivariate,
    gcd_univariate,
    homogeneous_components,
    format_poly,
    primitive_integer,
    rational_roots,
    resultant,
    squarefree_part,
)

PROJECTIVE_VARS = ("A0", "A1", "A2")


class NonReducedCurveError(ValueError):
    """The input has a repeated component; divide out multiple factors first."""


@dataclass(frozen=True)
class AffineChart:
    """One of the three standard affine charts of the projective plane."""

    index: int
    coords: tuple[str, str]

    def __post_init__(self):
        if self.index not in (0, 1, 2):
            raise ValueError("chart index must be 0, 1 or 2")

    @staticmethod
    def standard(index: int) -> "AffineChart":
        names = {0: ("a1", "a2"), 1: ("u", "v"), 2: ("u", "v")}
        return AffineChart(index, names[index])

    def dehomogenize(self, p: MultiPoly) -> MultiPoly:
        """Restrict a homogeneous polynomial in (A0,A1,A2) to this chart."""
        mapping = {}
        others = [v for v in PROJECTIVE_VARS if v != PROJECTIVE_VARS[self.index]]
        mapping[PROJECTIVE_VARS[self.index]] = MultiPoly.const(1)
        mapping[others[0]] = MultiPoly.variable(self.coords[0])
        mapping[others[1]] = MultiPoly.variable(self.coords[1])
        return p.substitute(mapping)

    def homogenize(self, f: MultiPoly, degree: int) -> MultiPoly:
        """Inverse of dehomogenize for polynomials of affine degree <= degree."""
        others = [v for v in PROJECTIVE_VARS if v != PROJECTIVE_VARS[self.index]]
        out = MultiPoly.zero()
        x, y = self.coords
        xi = MultiPoly.variable(others[0])
        yi = MultiPoly.variable(others[1])
        hi = MultiPoly.variable(PROJECTIVE_VARS[self.index])
        for exp, coeff in f.terms.items():
            powers = dict(zip(f.variables, exp))
            dx = powers.get(x, 0)
            dy = powers.get(y, 0)
            if dx + dy > degree:
                raise ValueError("affine degree exceeds homogenization degree")
            out = out + MultiPoly.const(coeff) * xi**dx * yi**dy * hi ** (degree - dx - dy)
        return out

    def to_projective(self, point) -> tuple:
        x, y = (Fraction(point[0]), Fraction(point[1]))
        coords = [None, None, None]
        coords[self.index] = Fraction(1)
        others = [i for i in range(3) if i != self.index]
        coords[others[0]] = x
        coords[others[1]] = y
        return tuple(coords)


@dataclass
class SingularPointReport:
    """Classification of one singular (or smooth) rational point."""

    point: tuple | None
    kind: str  # smooth | node | cusp | tacnode | multiplicity_ge_3 | unresolved
    multiplicity: int = 0
    detail: dict = field(default_factory=dict)


@dataclass
class SingularLocus:
    """Rational singular points plus eliminant data for the rest."""

    points: list
    eliminant: MultiPoly | None
    eliminant_squarefree: MultiPoly | None
    eliminant_variable: str | None
    notes: list = field(default_factory=list)

    def nonrational_count(self) -> int:
        """Number of distinct non-rational singular points certified."""
        if self.eliminant_squarefree is None:
            return 0
        return max(self.eliminant_squarefree.total_degree(), 0)


@dataclass
class SmoothnessCertificate:
    smooth: bool
    witness_point: tuple | None = None
    witness_eliminant: MultiPoly | None = None
    reason: str = ""


def _curve_vars(f: MultiPoly, chart: AffineChart | None):
    if chart is not None:
        return chart.coords
    if len(f.variables) == 2:
        return f.variables
    if len(f.variables) == 1:
        return (f.variables[0], "_aux")
    raise ValueError("expected a bivariate affine curve")


def _gcd_many(polys):
    acc = MultiPoly.zero()
    for p in polys:
        acc = gcd_multivariate(acc, p)
        if acc.is_constant() and not acc.is_zero():
            break
    return acc


def rational_singular_points(f: MultiPoly, chart: AffineChart) -> SingularLocus:
    """Solve f = f_x = f_y = 0 over the rationals on an affine chart.

    All rational solutions are returned as classified reports.  Solutions
    that are not rational are accounted for by the residual eliminant in
    the second chart coordinate (reported raw and as a squarefree part),
    never located numerically.
    """
    x, y = _curve_vars(f, chart)
    if f.is_zero():
        raise ValueError("zero polynomial is not a curve")
    fx = f.derivative(x)
    fy = f.derivative(y)
    common = _gcd_many([f, fx, fy])
    if not common.is_constant():
        raise NonReducedCurveError(
            "curve has a repeated component (gcd with gradient is "
            f"{format_poly(common)}); reduce the input first"
        )

    notes = []
    candidates = set()

    # Components that are lines of constant x or constant y show up as
    # contents; their crossings with the rest are singular points of f.
    content_x = _content_poly(f, x)   # polynomial in y only
    content_y = _content_poly(f, y)   # polynomial in x only
    core = f
    if not content_x.is_constant():
        core = exact_divide(core, content_x)
        notes.append("split off constant-x content " + format_poly(content_x))
    if not content_y.is_constant():
        core = exact_divide(core, content_y)
        notes.append("split off constant-y content " + format_poly(content_y))

    eliminant = None
    if core.degree_in(x) >= 1 and core.degree_in(y) >= 1:
        eliminant = _singular_eliminant(core, x, y)
    elif not core.is_constant():
        # core depends on a single variable; squarefree, so smooth lines
        eliminant = MultiPoly.const(1)

    line_roots_y = rational_roots(content_x) if not content_x.is_constant() else []
    line_roots_x = rational_roots(content_y) if not content_y.is_constant() else []

    # line-line crossings
    for rx, _ in line_roots_x:
        for ry, _ in line_roots_y:
            candidates.add((rx, ry))

    leftover = None
    if eliminant is not None and not eliminant.is_constant():
        leftover = eliminant
        for root, mult in rational_roots(eliminant):
            # locate rational x for this y by intersecting the specializations
            for pt in _points_over_root(core, fx, fy, x, y, root):
                candidates.add(pt)
            leftover = exact_divide(
                leftover, (MultiPoly.variable(y) - MultiPoly.const(root)) ** mult
            )
    if eliminant is not None and eliminant.is_zero():
        raise NonReducedCurveError("degenerate elimination; reduce the input first")

    # line-core crossings
    for ry, _ in line_roots_y:
        restricted = core.substitute({y: Fraction(ry)})
        if not restricted.is_constant():
            for rx, _ in rational_roots(restricted):
                candidates.add((rx, ry))
    for rx, _ in line_roots_x:
        restricted = core.substitute({x: Fraction(rx)})
        if not restricted.is_constant():
            for ry, _ in rational_roots(restricted):
                candidates.add((rx, ry))

    reports = []
    for pt in sorted(candidates):
        values = {x: pt[0], y: pt[1]}
        if f.evaluate(values) == 0 and fx.evaluate(values) == 0 and fy.evaluate(values) == 0:
            reports.append(classify_double_point(f, pt, vars=(x, y)))

    leftover_sf = None
    if leftover is not None and not leftover.is_constant():
        prim, _ = primitive_integer(leftover)
        leftover = prim
        leftover_sf, _ = primitive_integer(squarefree_part(leftover, y))
    elif leftover is not None:
        leftover = None

    return SingularLocus(
        points=reports,
        eliminant=leftover,
        eliminant_squarefree=leftover_sf,
        eliminant_variable=y,
        notes=notes,
    )


def _content_poly(f: MultiPoly, var: str) -> MultiPoly:
    from .poly import content_in

    return content_in(f, var)


def _singular_eliminant(core: MultiPoly, x: str, y: str) -> MultiPoly:
    """gcd of the x-resultants of (core, core_x) and (core, core_y)."""
    cx = core.derivative(x)
    cy = core.derivative(y)
    parts = []
    for other in (cx, cy):
        if other.is_zero():
            continue
        if other.degree_in(x) >= 1:
            parts.append(resultant(core, other, x))
        else:
            parts.append(other)  # already free of x
    elim = _gcd_many(parts)
    return elim


def _points_over_root(core, fx, fy, x, y, root):
    """Rational x-coordinates of singular points with the given y value."""
    restrictions = []
    for p in (core, fx, fy):
        s = p.substitute({y: Fraction(root)})
        if s.is_zero():
            continue
        restrictions.append(s)
    if not restrictions:
        return []
    g = _gcd_many(restrictions)
    if g.is_constant():
        return []
    if g.degree_in(x) < 1:
        return []
    return [(rx, root) for rx, _ in rational_roots(g)]


# -- double point classification ---------------------------------------------


def classify_double_point(f: MultiPoly, point, vars=None, max_depth: int = 3) -> SingularPointReport:
    """Classify a singular rational point of the curve f = 0.

    Nodes are recognized by a nondegenerate quadratic part.  A rank-one
    quadratic part triggers blow-ups of the germ (depth limit 3): a strict
    transform that is smooth over the center certifies a cusp, a nodal
    strict transform a tacnode.  Deeper singularities are reported as
    unresolved, and multiplicity >= 3 is labeled as such.
    """
    if vars is None:
        vars = _curve_vars(f, None)
    x, y = vars
    px, py = Fraction(point[0]), Fraction(point[1])
    germ = f.shift({x: px, y: py})
    comps = homogeneous_components(germ)
    if comps and not comps[0].is_zero():
        raise ValueError("point does not lie on the curve")
    mult = next((d for d, c in enumerate(comps) if not c.is_zero()), None)
    if mult is None:
        raise ValueError("curve vanishes identically")
    if mult == 1:
        raise ValueError("point is a smooth point, not singular")
    if mult >= 3:
        return SingularPointReport((px, py), "multiplicity_ge_3", mult)

    a_index = _a_index(germ, x, y, max_depth)
    if a_index == 1:
        return SingularPointReport((px, py), "node", 2, {"a_index": 1})
    if a_index == 2:
        return SingularPointReport((px, py), "cusp", 2, {"a_index": 2})
    if a_index == 3:
        return SingularPointReport((px, py), "tacnode", 2, {"a_index": 3})
    return SingularPointReport(
        (px, py), "unresolved", 2, {"depth": max_depth, "a_index": a_index}
    )


def _quadratic_data(quad: MultiPoly, x: str, y: str):
    a = b = c = Fraction(0)
    for exp, coeff in quad.terms.items():
        powers = dict(zip(quad.variables, exp))
        if powers.get(x, 0) == 2:
            a = coeff
        elif powers.get(y, 0) == 2:
            c = coeff
        else:
            b = coeff
    return a, b, c


def _a_index(germ: MultiPoly, x: str, y: str, max_depth: int):
    """A_k index of a multiplicity-2 germ at the origin, or None if deeper."""
    depth = 0
    current = germ
    while depth < max_depth:
        comps = homogeneous_components(current)
        quad = comps[2] if len(comps) > 2 else MultiPoly.zero()
        a, b, c = _quadratic_data(quad, x, y)
        if b * b - 4 * a * c != 0:
            return 2 * depth + 1  # nondegenerate: node here
        # rank-one quadratic part: single (rational) tangent direction
        if a != 0:
            # tangent x = -(b/2a) y: visible in the chart (x,y) = (u v, v)
            slope = -b / (2 * a)
            total = current.substitute(
                {x: MultiPoly.variable(x) * MultiPoly.variable(y), y: MultiPoly.variable(y)}
            )
            k, strict = extract_power(total, MultiPoly.variable(y))
            center = {x: slope, y: Fraction(0)}
        else:
            # quadratic part c*y^2: tangent y = 0, chart (x,y) = (u, u v)
            total = current.substitute(
                {x: MultiPoly.variable(x), y: MultiPoly.variable(x) * MultiPoly.variable(y)}
            )
            k, strict = extract_power(total, MultiPoly.variable(x))
            center = {x: Fraction(0), y: Fraction(0)}
        if k != 2:
            return None  # not a plain double-point transform
        strict = strict.shift(center)
        comps2 = homogeneous_components(strict)
        mult2 = next((d for d, cpt in enumerate(comps2) if not cpt.is_zero()), None)
        if mult2 is None:
            return None
        if mult2 <= 1:
            # strict transform smooth over (or missing) the center: chain ends
            return 2 * (depth + 1)
        if mult2 >= 3:
            return None
        depth += 1
        current = strict
    return None


# -- intersection multiplicity ------------------------------------------------


def intersection_multiplicity(f: MultiPoly, g: MultiPoly, point, vars=None) -> int:
    """Local intersection number of two curves at a rational point.

    Shears x -> x + lambda*y are tried for lambda = 0, 1, 2, ... until the
    projection is generic at the point (nonvanishing leading coefficients
    in y, and the shifted line meets the two curves only at the point of
    interest); the multiplicity is then the vanishing order of the
    y-resultant at the sheared x-coordinate.
    """
    if vars is None:
        allv = tuple(sorted(set(f.variables) | set(g.variables)))
        if len(allv) > 2:
            raise ValueError("expected curves in two variables")
        while len(allv) < 2:
            allv = allv + ("_aux%d" % len(allv),)
        vars = allv
    x, y = vars
    px, py = Fraction(point[0]), Fraction(point[1])
    values = {x: px, y: py}
    if f.evaluate({v: values.get(v, 0) for v in f.variables} | values) != 0:
        raise ValueError("point is not on the first curve")
    if g.evaluate({v: values.get(v, 0) for v in g.variables} | values) != 0:
        raise ValueError("point is not on the second curve")
    common = gcd_multivariate(f, g)
    if not common.is_constant():
        cval = common.evaluate({v: values[v] for v in common.variables})
        if cval == 0:
            raise ValueError("curves share a component through the point")
        else:
            f = exact_divide(f, common)
            g = exact_divide(g, common)

    xv = MultiPoly.variable(x)
    yv = MultiPoly.variable(y)
    lam = 0
    while True:
        F = f.substitute({x: xv + lam * yv})
        G = g.substitute({x: xv + lam * yv})
        qx = px - lam * py
        if _shear_is_generic(F, G, x, y, qx, py):
            res = resultant(F, G, y)
            k, _ = extract_power(res, xv - MultiPoly.const(qx))
            return int(k)
        lam += 1
        if lam > 64:
            raise RuntimeError("no generic shear found (unexpected)")


def _shear_is_generic(F, G, x, y, qx, qy) -> bool:
    if F.degree_in(y) < 1 or G.degree_in(y) < 1:
        return False
    for P in (F, G):
        lc = P.leading_coefficient_in(y)
        val = lc.evaluate({v: qx for v in lc.variables}) if not lc.is_constant() else lc.constant_value()
        if val == 0:
            return False
    # the line x = qx must meet the curves in no common point besides (qx, qy)
    Fline = F.substitute({x: qx})
    Gline = G.substitute({x: qx})
    h = gcd_univariate(Fline, Gline, y)
    k, rest = extract_power(h, yv_minus(y, qy)) if not h.is_constant() else (0, h)
    return h.is_constant() or (k >= 1 and rest.is_constant())


def yv_minus(y, c):
    return MultiPoly.variable(y) - MultiPoly.const(c)


# -- smoothness certificates ---------------------------------------------------


def smoothness_certificate(f: MultiPoly, chart: AffineChart) -> SmoothnessCertificate:
    """Prove f = f_x = f_y = 0 has no solution on the chart, or exhibit one.

    A nonvanishing constant partial derivative certifies smoothness
    immediately; otherwise the resultant eliminant of the singular system
    is computed, a nonzero constant eliminant being a proof of smoothness
    (the resultant lies in the elimination ideal of the system).
    """
    x, y = _curve_vars(f, chart)
    fx = f.derivative(x)
    fy = f.derivative(y)
    for d in (fx, fy):
        if d.is_constant() and not d.is_zero():
            return SmoothnessCertificate(True, reason="constant nonzero partial derivative")
    try:
        locus = rational_singular_points(f, chart)
    except NonReducedCurveError:
        raise
    if locus.points:
        return SmoothnessCertificate(
            False,
            witness_point=locus.points[0].point,
            reason="rational singular point",
        )
    if locus.eliminant_squarefree is not None and locus.eliminant_squarefree.total_degree() > 0:
        return SmoothnessCertificate(
            False,
            witness_eliminant=locus.eliminant_squarefree,
            reason="non-rational candidate singular locus (eliminant shown)",
        )
    return SmoothnessCertificate(True, reason="singular-system eliminant is a nonzero constant")
