"""Certified enclosures for convexity gaps of integrals and means.

Every operation here returns (or supports) a two-sided bound on a
named *gap*: the amount by which a convex function's integral mean,
endpoint average, chord value, or weighted analogue exceeds its
Jensen-side counterpart.  Bounds are closed-form in the curvature band
``m <= f'' <= M`` and, for weighted rules, in oracle values of the two
weight moments.  The oracle targets the bounds are meant to bracket
are provided alongside as ``target_*`` evaluators so callers (CLI,
falsification harness, tests) can verify containment independently.

Conventions used throughout, for an interval [a, b] of width ``w``:

* midpoint gap      mean(f) - f((a+b)/2)                in [m w²/24, M w²/24]
* trapezoid gap     (f(a)+f(b))/2 - mean(f)             in [m w²/12, M w²/12]
* chord gap         λf(a)+(1-λ)f(b) - f(λa+(1-λ)b)      in λ(1-λ) w²/2 · [m, M]
* symmetric pair    (f(x_λ)+f(x_λ'))/2 - f((a+b)/2)     in (1-2λ)² w²/8 · [m, M]
* weighted trapezoid  (f(a)+f(b))/2 ∫g - ∫fg            in ∫(t-a)(b-t)g/2 · [m, M]
* weighted midpoint   ∫fg - f((a+b)/2) ∫g               in ∫(2t-a-b)²g/8 · [m, M]

where mean(f) is the integral mean and x_λ, x_λ' are the reflected
pair λa+(1-λ)b and (1-λ)a+λb.
"""

from __future__ import annotations

from enum import Enum
from typing import Union

from .core import (
    AdmissibilityViolated,
    ConvexityViolated,
    CurvatureBounds,
    Enclosure,
    Interval,
    Lambda,
    MonotonicityViolated,
    NodeWeights,
    NonSmoothExpression,
    OracleInconclusive,
    ParameterOutOfRange,
    QuadResult,
    RangeViolated,
    Rule,
    SymmetryViolated,
    WeightSpec,
)
from .expr import FunctionSpec
from .quadrature import (
    _monotone_profile,
    classify_weight,
    integrate,
    moment_ab,
    moment_center,
)

__all__ = [
    "GapKind",
    "WeightLike",
    "hermite_hadamard",
    "fejer",
    "chord_gap_bounds",
    "symmetric_pair_gap_bounds",
    "hh_midpoint_gap_bounds",
    "hh_trapezoid_gap_bounds",
    "fejer_trapezoid_gap_bounds",
    "fejer_midpoint_gap_bounds",
    "complement_weight_chains",
    "bisection_bounds",
    "h1_functional",
    "h2_functional",
    "hh_gap_monotone",
    "refined_gap_chains",
    "vasic_lackovic",
    "target_integral_mean",
    "target_fejer",
    "target_gap",
    "target_bisection",
    "target_vasic_lackovic",
]

_CONVEXITY_SLACK = 1e-9
_CONVEXITY_POINTS = 101

WeightLike = Union[WeightSpec, FunctionSpec]


class GapKind(Enum):
    """Names the gap quantities the enclosures bracket."""

    CHORD = "chord"
    SYMMETRIC_PAIR = "symmetric-pair"
    MIDPOINT = "midpoint"
    TRAPEZOID = "trapezoid"
    WEIGHTED_TRAPEZOID = "weighted-trapezoid"
    WEIGHTED_MIDPOINT = "weighted-midpoint"


_GAP_RULE = {
    GapKind.CHORD: Rule.CHORD_GAP,
    GapKind.SYMMETRIC_PAIR: Rule.SYMMETRIC_PAIR_GAP,
    GapKind.MIDPOINT: Rule.MIDPOINT_GAP,
    GapKind.TRAPEZOID: Rule.TRAPEZOID_GAP,
    GapKind.WEIGHTED_TRAPEZOID: Rule.WEIGHTED_TRAPEZOID_GAP,
    GapKind.WEIGHTED_MIDPOINT: Rule.WEIGHTED_MIDPOINT_GAP,
}


# --------------------------------------------------------------------------
# Internal helpers
# --------------------------------------------------------------------------


def _enclosure(lower: float, upper: float, description: str, rule: Rule) -> Enclosure:
    """Build an enclosure, normalising sub-rounding inversions.

    The formulas guarantee lower <= upper mathematically; floating
    point may invert them by an ulp or so (e.g. equal bounds computed
    along two arithmetic paths).  Anything bigger than rounding noise
    is a genuine bug and raises.
    """
    if lower > upper:
        scale = max(1.0, abs(lower), abs(upper))
        if lower - upper > 1e-12 * scale:
            raise ParameterOutOfRange(
                f"enclosure inverted beyond rounding noise: ({lower}, {upper}) for {rule.value}"
            )
        lower, upper = upper, lower
    return Enclosure(lower, upper, description, rule)


def _require_convex(f: FunctionSpec, interval: Interval) -> None:
    """Sampled convexity guard: f'' >= -1e-9 at 101 uniform points."""
    if f.d2 is None:
        raise NonSmoothExpression(f"convexity check needs a second derivative for {f.text!r}")
    a, b = interval.a, interval.b
    if a == b:
        if f.second_derivative(a) < -_CONVEXITY_SLACK:
            raise ConvexityViolated(f"f'' < 0 at {a} for f = {f.text}")
        return
    step = (b - a) / (_CONVEXITY_POINTS - 1)
    for k in range(_CONVEXITY_POINTS):
        x = a + k * step
        v = f.second_derivative(x)
        if v < -_CONVEXITY_SLACK:
            raise ConvexityViolated(f"f'' = {v} at x = {x} for f = {f.text}")


def _as_weight(g: WeightLike, interval: Interval) -> WeightSpec:
    """Classify (or re-classify) a weight on the working interval."""
    if isinstance(g, WeightSpec):
        if abs(g.center - interval.midpoint) <= 1e-12 * max(1.0, abs(g.center)):
            return g
        g = g.function
    return classify_weight(g, interval)


def _require_symmetric(ws: WeightSpec) -> None:
    if not ws.symmetric:
        raise SymmetryViolated(
            f"weight {ws.function.text!r} is not symmetric about {ws.center}"
        )


def _oracle(result: QuadResult, what: str) -> float:
    if not result.converged:
        raise OracleInconclusive(f"oracle did not converge for {what}", result.value)
    return result.value


def _integral(f, interval: Interval, tol: float, what: str) -> float:
    return _oracle(integrate(f, interval, tol), what)


# --------------------------------------------------------------------------
# Unweighted and weighted sandwich enclosures
# --------------------------------------------------------------------------


def hermite_hadamard(f: FunctionSpec, interval: Interval, tol: float = 1e-10) -> Enclosure:
    """Enclosure (f(midpoint), (f(a)+f(b))/2) for the integral mean of
    a convex f.

    Raises:
        ConvexityViolated: if sampled f'' dips below -1e-9.
        InvalidInterval: implicitly for degenerate intervals (the
            integral mean needs a < b).
    """
    if interval.is_degenerate():
        raise ParameterOutOfRange("integral mean needs a non-degenerate interval")
    _require_convex(f, interval)
    lo = f(interval.midpoint)
    hi = 0.5 * (f(interval.a) + f(interval.b))
    return _enclosure(
        lo, hi, f"integral mean of {f.text} over [{interval.a}, {interval.b}]", Rule.HERMITE_HADAMARD
    )


def fejer(
    f: FunctionSpec, g: WeightLike, interval: Interval, tol: float = 1e-10
) -> Enclosure:
    """Weighted sandwich: f(mid) ∫g  <=  ∫fg  <=  (f(a)+f(b))/2 ∫g
    for convex f and a nonnegative weight symmetric about the midpoint.

    With g ≡ 1 this reduces to :func:`hermite_hadamard` scaled by the
    interval width (same arithmetic shape, oracle-exact ∫g).
    """
    if interval.is_degenerate():
        raise ParameterOutOfRange("weighted sandwich needs a non-degenerate interval")
    ws = _as_weight(g, interval)
    _require_symmetric(ws)
    _require_convex(f, interval)
    G = _integral(ws.function, interval, tol, "integral of the weight")
    G = max(G, 0.0)
    lo = f(interval.midpoint) * G
    hi = 0.5 * (f(interval.a) + f(interval.b)) * G
    return _enclosure(
        lo,
        hi,
        f"integral of {f.text} * {ws.function.text} over [{interval.a}, {interval.b}]",
        Rule.FEJER,
    )


# --------------------------------------------------------------------------
# Curvature-band gap enclosures (closed form)
# --------------------------------------------------------------------------


def chord_gap_bounds(c: CurvatureBounds, interval: Interval, lam: Lambda) -> Enclosure:
    """Enclosure for the chord gap λf(a) + (1-λ)f(b) - f(λa + (1-λ)b):
    both sides are λ(1-λ)(b-a)²/2 times the curvature bound."""
    s = lam.value * (1.0 - lam.value) * interval.width**2 / 2.0
    return _enclosure(
        c.m * s,
        c.M * s,
        f"chord gap at lambda={lam.value} on [{interval.a}, {interval.b}]",
        Rule.CHORD_GAP,
    )


def symmetric_pair_gap_bounds(
    c: CurvatureBounds, interval: Interval, lam: Lambda
) -> Enclosure:
    """Enclosure for the reflected-pair gap
    (f(λa+(1-λ)b) + f((1-λ)a+λb))/2 - f((a+b)/2), scale (1-2λ)²(b-a)²/8."""
    s = (1.0 - 2.0 * lam.value) ** 2 * interval.width**2 / 8.0
    return _enclosure(
        c.m * s,
        c.M * s,
        f"symmetric pair gap at lambda={lam.value} on [{interval.a}, {interval.b}]",
        Rule.SYMMETRIC_PAIR_GAP,
    )


def hh_midpoint_gap_bounds(c: CurvatureBounds, interval: Interval) -> Enclosure:
    """Enclosure [m w²/24, M w²/24] for mean(f) - f((a+b)/2)."""
    s = interval.width**2 / 24.0
    return _enclosure(
        c.m * s, c.M * s, f"midpoint gap on [{interval.a}, {interval.b}]", Rule.MIDPOINT_GAP
    )


def hh_trapezoid_gap_bounds(c: CurvatureBounds, interval: Interval) -> Enclosure:
    """Enclosure [m w²/12, M w²/12] for (f(a)+f(b))/2 - mean(f)."""
    s = interval.width**2 / 12.0
    return _enclosure(
        c.m * s, c.M * s, f"trapezoid gap on [{interval.a}, {interval.b}]", Rule.TRAPEZOID_GAP
    )


def fejer_trapezoid_gap_bounds(
    f: FunctionSpec,
    g: WeightLike,
    c: CurvatureBounds,
    interval: Interval,
    tol: float = 1e-10,
) -> Enclosure:
    """Enclosure (m/2, M/2) · ∫(t-a)(b-t)g  for the weighted trapezoid
    gap (f(a)+f(b))/2 ∫g - ∫fg.  The moment is an oracle value; it is
    clamped at zero (it is nonnegative for a nonnegative weight)."""
    ws = _as_weight(g, interval)
    _require_symmetric(ws)
    mab = max(_oracle(moment_ab(ws.function, interval, tol), "endpoint moment"), 0.0)
    return _enclosure(
        0.5 * c.m * mab,
        0.5 * c.M * mab,
        f"weighted trapezoid gap of {f.text} with weight {ws.function.text}",
        Rule.WEIGHTED_TRAPEZOID_GAP,
    )


def fejer_midpoint_gap_bounds(
    f: FunctionSpec,
    g: WeightLike,
    c: CurvatureBounds,
    interval: Interval,
    tol: float = 1e-10,
) -> Enclosure:
    """Enclosure (m/8, M/8) · ∫(2t-a-b)²g  for the weighted midpoint
    gap ∫fg - f((a+b)/2) ∫g."""
    ws = _as_weight(g, interval)
    _require_symmetric(ws)
    mc = max(_oracle(moment_center(ws.function, interval, tol), "central moment"), 0.0)
    return _enclosure(
        c.m * mc / 8.0,
        c.M * mc / 8.0,
        f"weighted midpoint gap of {f.text} with weight {ws.function.text}",
        Rule.WEIGHTED_MIDPOINT_GAP,
    )


# --------------------------------------------------------------------------
# Complement-weight precision chains
# --------------------------------------------------------------------------


def complement_weight_chains(
    f: FunctionSpec,
    g: WeightLike,
    c: CurvatureBounds,
    interval: Interval,
    tol: float = 1e-10,
) -> tuple[tuple[float, float, float], tuple[float, float, float]]:
    """Three-term precision chains obtained by applying the weighted
    gap bounds to the complement weight 1 - g (legal when g maps into
    [0, 1] and is symmetric).

    Writing w = b - a, T = trapezoid gap of f, G = ∫g, FG = ∫fg and
    P = ∫(t-a)(b-t)g, the two chains are::

        w·(T - m w²/12)  >=  (f(a)+f(b))/2·G - FG - (m/2)·P  >=  0
        w·(M w²/12 - T)  >=  (M/2)·P - (f(a)+f(b))/2·G + FG  >=  0

    Each is returned as (left, middle, 0.0); left and middle are built
    from oracle integrals, so orderings should be asserted with slack.
    Note the middle terms are the slack of the weighted gap bounds for
    g itself — with g ≡ 1 they *equal* the left terms.
    """
    ws = _as_weight(g, interval)
    _require_symmetric(ws)
    if not ws.range01:
        raise RangeViolated(
            f"complement chains need a weight in [0, 1]; {ws.function.text!r} is not"
        )
    a, b = interval.a, interval.b
    w = interval.width
    avg = 0.5 * (f(a) + f(b))
    F = _integral(f, interval, tol, "integral of f")
    G = _integral(ws.function, interval, tol, "integral of the weight")
    FG = _integral(lambda t: f(t) * ws.function(t), interval, tol, "integral of f*g")
    P = max(_oracle(moment_ab(ws.function, interval, tol), "endpoint moment"), 0.0)
    left1 = w * avg - F - c.m * w**3 / 12.0
    mid1 = avg * G - FG - 0.5 * c.m * P
    left2 = c.M * w**3 / 12.0 - w * avg + F
    mid2 = 0.5 * c.M * P - avg * G + FG
    return (left1, mid1, 0.0), (left2, mid2, 0.0)


# --------------------------------------------------------------------------
# Bisection refinement
# --------------------------------------------------------------------------


def bisection_bounds(
    f: FunctionSpec, c: CurvatureBounds, interval: Interval, tol: float = 1e-10
) -> tuple[Enclosure, Enclosure]:
    """Halved-interval refinements of the gap enclosures (weight ≡ 1).

    Applying the trapezoid-gap band on each half of [a, b] and summing
    gives, with w = b - a::

        m w²/48  <=  ((f(a)+f(b))/2 + f((a+b)/2))/2 - mean(f)  <=  M w²/48

    and the midpoint-gap band on each half gives::

        m w²/96  <=  mean(f) - (f((3a+b)/4) + f((a+3b)/4))/2  <=  M w²/96

    The second upper bound uses M: the per-half bands are (m, M)·w²/96
    after summation, and the band endpoints must use the matching
    curvature constant (a lower-curvature upper bound is already
    violated by f = exp on [0, 1]).
    """
    if interval.is_degenerate():
        raise ParameterOutOfRange("bisection bounds need a non-degenerate interval")
    w2 = interval.width**2
    e1 = _enclosure(
        c.m * w2 / 48.0,
        c.M * w2 / 48.0,
        f"trapezoid-vs-mean bisection gap on [{interval.a}, {interval.b}]",
        Rule.BISECTION_MEAN,
    )
    e2 = _enclosure(
        c.m * w2 / 96.0,
        c.M * w2 / 96.0,
        f"mean-vs-quarter-points bisection gap on [{interval.a}, {interval.b}]",
        Rule.BISECTION_QUARTER,
    )
    return e1, e2


# --------------------------------------------------------------------------
# Monotone endpoint functionals
# --------------------------------------------------------------------------


def _check_x(interval: Interval, x: float) -> None:
    if not (interval.a <= x <= interval.b):
        raise ParameterOutOfRange(
            f"x = {x} outside working interval [{interval.a}, {interval.b}]"
        )


def h1_functional(
    f: FunctionSpec, g: WeightLike, interval: Interval, x: float, tol: float = 1e-10
) -> float:
    """h1(x) = (f(a)+f(x))/2 · ∫ₐˣ g  -  ∫ₐˣ f g.

    For convex *nondecreasing* f and nonincreasing g this is
    nondecreasing in x with h1(a) = 0 (the slack of the weighted
    trapezoid bound, restricted to [a, x] and growing with x).
    Convexity alone is not enough: f(x) = -x with g(x) = 1 - x on
    [0, 1] gives h1(x) = -x³/12, strictly decreasing.  The value is
    computed for any convex f; the monotonicity guarantee is the
    caller's to invoke only on the valid domain.  Flat weights are
    accepted (weakly monotone).
    """
    _check_x(interval, x)
    ws = _as_weight(g, interval)
    rises, _ = _monotone_profile(ws.function, interval)
    if rises:
        raise MonotonicityViolated(
            f"h1 needs a nonincreasing weight; {ws.function.text!r} rises"
        )
    _require_convex(f, interval)
    if x == interval.a:
        return 0.0
    sub = Interval(interval.a, x)
    G = _integral(ws.function, sub, tol, "integral of the weight")
    FG = _integral(lambda t: f(t) * ws.function(t), sub, tol, "integral of f*g")
    return 0.5 * (f(interval.a) + f(x)) * G - FG


def h2_functional(
    f: FunctionSpec, g: WeightLike, interval: Interval, x: float, tol: float = 1e-10
) -> float:
    """h2(x) = ∫ₐˣ f g  -  f((a+x)/2) · ∫ₐˣ g.

    For convex *nondecreasing* f and nondecreasing g this is
    nondecreasing in x with h2(a) = 0 (the midpoint-side slack on
    [a, x]).  As with :func:`h1_functional`, convexity alone does not
    suffice (f(x) = -x with g(x) = x mirrors the counterexample), so
    the monotonicity guarantee applies only to nondecreasing f; the
    value itself is computed for any convex f.
    """
    _check_x(interval, x)
    ws = _as_weight(g, interval)
    _, falls = _monotone_profile(ws.function, interval)
    if falls:
        raise MonotonicityViolated(
            f"h2 needs a nondecreasing weight; {ws.function.text!r} falls"
        )
    _require_convex(f, interval)
    if x == interval.a:
        return 0.0
    sub = Interval(interval.a, x)
    G = _integral(ws.function, sub, tol, "integral of the weight")
    FG = _integral(lambda t: f(t) * ws.function(t), sub, tol, "integral of f*g")
    return FG - f(0.5 * (interval.a + x)) * G


# --------------------------------------------------------------------------
# Subinterval monotonicity and refined chains
# --------------------------------------------------------------------------


def _trap_gap(f: FunctionSpec, interval: Interval, tol: float) -> float:
    F = _integral(f, interval, tol, "integral of f")
    return 0.5 * (f(interval.a) + f(interval.b)) - F / interval.width


def _mid_gap(f: FunctionSpec, interval: Interval, tol: float) -> float:
    F = _integral(f, interval, tol, "integral of f")
    return F / interval.width - f(interval.midpoint)


def hh_gap_monotone(
    f: FunctionSpec, interval: Interval, x: float, tol: float = 1e-10
) -> tuple[tuple[float, float], tuple[float, float]]:
    """Subinterval monotonicity of the two gaps, as ordered pairs.

    Returns ((T_ab, ρ·T_ax), (M_ab, ρ·M_ax)) with ρ = (x-a)/(b-a),
    where T and M are the trapezoid and midpoint gaps on the full
    interval and on [a, x].  For convex f each pair satisfies
    first >= second >= 0.
    """
    _check_x(interval, x)
    if interval.is_degenerate():
        raise ParameterOutOfRange("gap monotonicity needs a non-degenerate interval")
    _require_convex(f, interval)
    rho = (x - interval.a) / interval.width
    if x == interval.a:
        sub_trap = sub_mid = 0.0
    else:
        sub = Interval(interval.a, x)
        sub_trap = rho * _trap_gap(f, sub, tol)
        sub_mid = rho * _mid_gap(f, sub, tol)
    return (
        (_trap_gap(f, interval, tol), sub_trap),
        (_mid_gap(f, interval, tol), sub_mid),
    )


def refined_gap_chains(
    f: FunctionSpec,
    c: CurvatureBounds,
    interval: Interval,
    x: float,
    tol: float = 1e-10,
) -> tuple[tuple[float, float], tuple[float, float]]:
    """Curvature-sharpened subinterval chains for the midpoint gap.

    With G_I the midpoint gap on I, w = b - a, w_x = x - a and
    ρ = w_x / w, returns::

        pair A: ( G_ab - m w²/24,        ρ · (G_ax - m w_x²/24) )
        pair B: ( M w²/8 - G_ab,         ρ · (M w_x²/8 - G_ax) )

    using the *global* curvature band on [a, b] in both components —
    the chains arise from applying subinterval monotonicity to the
    shifted convex functions f - m x²/2 and (for B, with the M w²/8
    padding) M x²/2 - f, so the constants stay those of the full
    interval.  For convex f: first >= second >= 0 in each pair.
    """
    _check_x(interval, x)
    if interval.is_degenerate():
        raise ParameterOutOfRange("refined chains need a non-degenerate interval")
    _require_convex(f, interval)
    w = interval.width
    wx = x - interval.a
    rho = wx / w
    g_ab = _mid_gap(f, interval, tol)
    if x == interval.a:
        second_a = second_b = 0.0
    else:
        g_ax = _mid_gap(f, Interval(interval.a, x), tol)
        second_a = rho * (g_ax - c.m * wx**2 / 24.0)
        second_b = rho * (c.M * wx**2 / 8.0 - g_ax)
    pair_a = (g_ab - c.m * w**2 / 24.0, second_a)
    pair_b = (c.M * w**2 / 8.0 - g_ab, second_b)
    return pair_a, pair_b


# --------------------------------------------------------------------------
# Weighted two-node sandwich (asymmetric barycentre)
# --------------------------------------------------------------------------


def vasic_lackovic(
    f: FunctionSpec,
    g: WeightLike,
    weights: NodeWeights,
    interval: Interval,
    y: float,
    tol: float = 1e-10,
) -> Enclosure:
    """Two-node sandwich around the barycentre A = (pa + qb)/(p + q)::

        f(A) ∫ g  <=  ∫ f g  <=  (p f(a) + q f(b))/(p + q) ∫ g

    with all integrals over the window [A - y, A + y], for convex f and
    a nonnegative g symmetric about A.  Admissibility — checked before
    anything is evaluated — requires y <= (b - a) · min(p, q)/(p + q),
    which is exactly the condition keeping the window inside [a, b].
    """
    p, q = weights.p, weights.q
    a, b = interval.a, interval.b
    if y <= 0.0:
        raise ParameterOutOfRange(f"window half-width must be > 0, got {y}")
    radius = (b - a) * min(p, q) / (p + q)
    if y > radius:
        raise AdmissibilityViolated(
            f"half-width {y} exceeds admissible radius {radius} for (p, q) = ({p}, {q})"
        )
    center = (p * a + q * b) / (p + q)
    window = Interval(center - y, center + y)
    _require_convex(f, interval)
    ws = _as_weight(g, window)
    _require_symmetric(ws)
    G = max(_integral(ws.function, window, tol, "integral of the weight"), 0.0)
    lo = f(center) * G
    hi = (p * f(a) + q * f(b)) / (p + q) * G
    return _enclosure(
        lo,
        hi,
        f"integral of {f.text} * {ws.function.text} over [{window.a}, {window.b}]",
        Rule.VASIC_LACKOVIC,
    )


# --------------------------------------------------------------------------
# Oracle targets
# --------------------------------------------------------------------------


def target_integral_mean(f, interval: Interval, tol: float = 1e-10) -> QuadResult:
    """Oracle for the integral mean of f (the Hermite–Hadamard target)."""
    r = integrate(f, interval, tol)
    return QuadResult(r.value / interval.width, r.error_estimate / interval.width, r.evaluations, r.converged)


def target_fejer(f, g: WeightLike, interval: Interval, tol: float = 1e-10) -> QuadResult:
    """Oracle for ∫ f g over the interval."""
    gfn = g.function if isinstance(g, WeightSpec) else g
    return integrate(lambda t: f(t) * gfn(t), interval, tol)


def target_gap(
    kind: GapKind,
    f,
    interval: Interval,
    lam: Lambda | None = None,
    g: WeightLike | None = None,
    tol: float = 1e-10,
) -> QuadResult:
    """Oracle value of the gap quantity named by ``kind``.

    Evaluation-only targets (chord, symmetric pair) come back with a
    zero error estimate; integral-backed targets carry the quadrature
    convergence flag.
    """
    a, b = interval.a, interval.b
    if kind is GapKind.CHORD:
        if lam is None:
            raise ParameterOutOfRange("chord gap needs lambda")
        lv = lam.value
        val = lv * f(a) + (1.0 - lv) * f(b) - f(lv * a + (1.0 - lv) * b)
        return QuadResult(val, 0.0, 3, True)
    if kind is GapKind.SYMMETRIC_PAIR:
        if lam is None:
            raise ParameterOutOfRange("symmetric pair gap needs lambda")
        lv = lam.value
        u = lv * a + (1.0 - lv) * b
        v = (1.0 - lv) * a + lv * b
        val = 0.5 * (f(u) + f(v)) - f(0.5 * (a + b))
        return QuadResult(val, 0.0, 3, True)
    if kind is GapKind.MIDPOINT:
        r = integrate(f, interval, tol)
        return QuadResult(r.value / interval.width - f(interval.midpoint), r.error_estimate, r.evaluations, r.converged)
    if kind is GapKind.TRAPEZOID:
        r = integrate(f, interval, tol)
        return QuadResult(0.5 * (f(a) + f(b)) - r.value / interval.width, r.error_estimate, r.evaluations, r.converged)
    if g is None:
        raise ParameterOutOfRange(f"{kind.value} gap needs a weight")
    gfn = g.function if isinstance(g, WeightSpec) else g
    rg = integrate(gfn, interval, tol)
    rfg = integrate(lambda t: f(t) * gfn(t), interval, tol)
    conv = rg.converged and rfg.converged
    err = rg.error_estimate + rfg.error_estimate
    evals = rg.evaluations + rfg.evaluations
    if kind is GapKind.WEIGHTED_TRAPEZOID:
        val = 0.5 * (f(a) + f(b)) * rg.value - rfg.value
    else:
        val = rfg.value - f(interval.midpoint) * rg.value
    return QuadResult(val, err, evals, conv)


def target_bisection(f, interval: Interval, tol: float = 1e-10) -> tuple[QuadResult, QuadResult]:
    """Oracle values of the two bisection gap targets."""
    a, b = interval.a, interval.b
    r = integrate(f, interval, tol)
    mean = r.value / interval.width
    t1 = 0.5 * (0.5 * (f(a) + f(b)) + f(interval.midpoint)) - mean
    t2 = mean - 0.5 * (f(0.25 * (3.0 * a + b)) + f(0.25 * (a + 3.0 * b)))
    return (
        QuadResult(t1, r.error_estimate, r.evaluations, r.converged),
        QuadResult(t2, r.error_estimate, r.evaluations, r.converged),
    )


def target_vasic_lackovic(
    f, g: WeightLike, weights: NodeWeights, interval: Interval, y: float, tol: float = 1e-10
) -> QuadResult:
    """Oracle for ∫ f g over the admissible window around the barycentre."""
    p, q = weights.p, weights.q
    center = (p * interval.a + q * interval.b) / (p + q)
    window = Interval(center - y, center + y)
    gfn = g.function if isinstance(g, WeightSpec) else g
    return integrate(lambda t: f(t) * gfn(t), window, tol)
