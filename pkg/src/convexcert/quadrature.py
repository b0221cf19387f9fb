"""Numerical oracle: adaptive Simpson quadrature and weight checks.

The integrator is the package's only source of "true" integral values.
It subdivides until the Richardson error estimate on each subinterval
is below the tolerance *pro-rated by subinterval width*, so the local
errors sum to at most the requested absolute tolerance for the whole
interval.  Hitting the depth cap never raises — it returns the best
estimate with ``converged=False`` and lets callers decide (the
falsification harness, for instance, records such checks as
inconclusive rather than failed).
"""

from __future__ import annotations

import math
from collections.abc import Callable

from .core import (
    Interval,
    Monotonicity,
    NegativeWeight,
    ParameterOutOfRange,
    QuadResult,
    WeightSpec,
)
from .expr import FunctionSpec

__all__ = [
    "integrate",
    "moment_ab",
    "moment_center",
    "check_symmetry",
    "check_monotone",
    "classify_weight",
    "MAX_DEPTH",
]

MAX_DEPTH = 50

# tolerance for "equal" consecutive samples in the monotonicity scan
_TIE_TOL = 1e-12

# slack for sampled nonnegativity of weights
_WEIGHT_SLACK = 1e-9


def integrate(
    f: Callable[[float], float],
    interval: Interval,
    tol: float = 1e-10,
    max_depth: int = MAX_DEPTH,
    min_depth: int = 3,
) -> QuadResult:
    """Integrate ``f`` over the interval with adaptive Simpson.

    Each subinterval is accepted once ``|S(left) + S(right) - S(whole)| / 15``
    drops below ``tol * (subwidth / width)``; the returned value uses the
    Richardson-extrapolated sum.  ``tol`` is absolute.  Acceptance is
    deferred until ``min_depth`` (default 3, i.e. at least 8 panels) so
    an accidental agreement of the first coarse rules cannot terminate
    the recursion before the integrand has been meaningfully sampled.

    Returns:
        QuadResult with the estimate, a summed error estimate, the
        number of function evaluations, and a convergence flag which is
        False iff some subinterval hit the depth cap.
    """
    if tol <= 0.0:
        raise ParameterOutOfRange(f"tolerance must be > 0, got {tol}")
    if not 0 <= min_depth <= max_depth:
        raise ParameterOutOfRange(
            f"need 0 <= min_depth <= max_depth, got {min_depth}, {max_depth}"
        )
    a, b = interval.a, interval.b
    if a == b:
        return QuadResult(0.0, 0.0, 0, True)

    evals = 0

    def call(x: float) -> float:
        nonlocal evals
        evals += 1
        return f(x)

    width = b - a
    converged = True
    total_err = 0.0

    def simpson(lo: float, flo: float, fmid: float, hi: float, fhi: float) -> float:
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)

    def recurse(
        lo: float,
        flo: float,
        mid: float,
        fmid: float,
        hi: float,
        fhi: float,
        whole: float,
        depth: int,
    ) -> float:
        nonlocal converged, total_err
        lm = 0.5 * (lo + mid)
        rm = 0.5 * (mid + hi)
        flm, frm = call(lm), call(rm)
        left = simpson(lo, flo, flm, mid, fmid)
        right = simpson(mid, fmid, frm, hi, fhi)
        err = (left + right - whole) / 15.0
        accepted = depth >= min_depth and abs(err) <= tol * (hi - lo) / width
        if accepted or depth >= max_depth:
            if not accepted:
                converged = False
            total_err += abs(err)
            return left + right + err
        return recurse(lo, flo, lm, flm, mid, fmid, left, depth + 1) + recurse(
            mid, fmid, rm, frm, hi, fhi, right, depth + 1
        )

    fa, fb = call(a), call(b)
    mid = 0.5 * (a + b)
    fmid = call(mid)
    whole = simpson(a, fa, fmid, b, fb)
    value = recurse(a, fa, mid, fmid, b, fb, whole, 0)
    return QuadResult(value, total_err, evals, converged)


def moment_ab(
    g: Callable[[float], float], interval: Interval, tol: float = 1e-10
) -> QuadResult:
    """Oracle value of the endpoint moment  ∫ (t - a)(b - t) g(t) dt.

    Nonnegative for any nonnegative weight (the integrand is a product
    of nonnegative factors on the interval).
    """
    a, b = interval.a, interval.b
    return integrate(lambda t: (t - a) * (b - t) * g(t), interval, tol)


def moment_center(
    g: Callable[[float], float], interval: Interval, tol: float = 1e-10
) -> QuadResult:
    """Oracle value of the central moment  ∫ (2t - a - b)² g(t) dt."""
    a, b = interval.a, interval.b
    return integrate(lambda t: (2.0 * t - a - b) ** 2 * g(t), interval, tol)


def _uniform(interval: Interval, points: int) -> list[float]:
    if points < 2:
        raise ParameterOutOfRange(f"points must be >= 2, got {points}")
    a, b = interval.a, interval.b
    step = (b - a) / (points - 1)
    return [a + k * step for k in range(points)]


def check_symmetry(
    g: Callable[[float], float],
    interval: Interval,
    points: int = 101,
    tol: float = 1e-9,
) -> bool:
    """Sampled check that g is symmetric about the interval midpoint:
    ``|g(x) - g(a + b - x)| <= tol * (1 + |g(x)|)`` at uniform samples."""
    a, b = interval.a, interval.b
    for x in _uniform(interval, points):
        gx = g(x)
        if abs(gx - g(a + b - x)) > tol * (1.0 + abs(gx)):
            return False
    return True


def _monotone_profile(
    g: Callable[[float], float], interval: Interval, points: int = 101
) -> tuple[bool, bool]:
    """Scan consecutive differences; returns (any rise, any fall)
    beyond the tie tolerance."""
    values = [g(x) for x in _uniform(interval, points)]
    rises = falls = False
    for prev, cur in zip(values, values[1:]):
        d = cur - prev
        if d > _TIE_TOL:
            rises = True
        elif d < -_TIE_TOL:
            falls = True
    return rises, falls


def check_monotone(
    g: Callable[[float], float], interval: Interval, points: int = 101
) -> Monotonicity:
    """Classify sampled monotonicity with a 1e-12 tie tolerance.

    A weight that is flat everywhere is weakly monotone in both
    directions; it classifies as DECREASING here, and the operations
    that require one direction accept flat weights either way.
    """
    rises, falls = _monotone_profile(g, interval, points)
    if rises and falls:
        return Monotonicity.NEITHER
    if rises:
        return Monotonicity.INCREASING
    return Monotonicity.DECREASING


def classify_weight(
    g: FunctionSpec, interval: Interval, points: int = 101
) -> WeightSpec:
    """Sample a weight and record its verified structural flags.

    Raises:
        NegativeWeight: if any sample is below ``-1e-9``.
    """
    values = [g(x) for x in _uniform(interval, points)]
    lo, hi = min(values), max(values)
    if lo < -_WEIGHT_SLACK:
        raise NegativeWeight(f"weight {g.text!r} reaches {lo} on the interval")
    return WeightSpec(
        function=g,
        center=interval.midpoint,
        symmetric=check_symmetry(g, interval, points),
        monotone=check_monotone(g, interval, points),
        range01=(hi <= 1.0 + _WEIGHT_SLACK),
    )
