"""Seeded falsification harness for the certified bounds.

Each trial draws one random convex instance (function, interval, exact
curvature band) plus random weights and parameters, runs every bounds
and means operation against the quadrature oracle, and records
containment/ordering violations.  Library bugs surface as failures;
oracle non-convergence is recorded as *inconclusive*, never as a
failure.  Everything is deterministic: per-trial sub-seeds derive from
the master seed by counter mixing, so the aggregate report (including
its JSON serialisation) is byte-identical across reruns.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field

from . import bounds as bd
from . import means as mn
from .core import (
    CertError,
    CurvatureBounds,
    Enclosure,
    Interval,
    Lambda,
    NodeWeights,
    OracleInconclusive,
    ParameterOutOfRange,
    Provenance,
    QuadResult,
    WeightSpec,
)
from .expr import Binary, Const, FunctionSpec, Node, Unary, Var, function_spec, evaluation_spec
from .quadrature import classify_weight

__all__ = [
    "ConvexInstance",
    "TrialReport",
    "FailureRecord",
    "random_convex_instance",
    "random_symmetric_weight",
    "random_monotone_weight",
    "slope_normalized",
    "falsify",
    "CHECKS_PER_TRIAL",
]

_MASK = (1 << 63) - 1


def _mix(seed: int, *branches: int) -> int:
    """Counter-based sub-seed derivation (LCG-style mixing)."""
    x = seed & _MASK
    for b in branches:
        x = (x * 6364136223846793005 + b * 1442695040888963407 + 1442695040888963407) & _MASK
    return x


# --------------------------------------------------------------------------
# Instance generation
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ConvexInstance:
    """One generated test case with an exact curvature certificate."""

    function: FunctionSpec
    interval: Interval
    curvature: CurvatureBounds
    recipe: str


_FAMILIES = ("quadratic", "exp", "log", "mixed")


def random_convex_instance(seed: int) -> ConvexInstance:
    """Draw a convex function from the closed-form basis

        f(x) = c1 x² + c2 exp(c3 x) - c4 log(x + s) + c5 x + c6

    with c1, c2, c4 >= 0, on an interval of width in [0.1, 5].  Every
    summand of f'' = 2c1 + c2 c3² e^(c3 x) + c4/(x+s)² is kept monotone
    in a common direction (mixed instances force c3 <= 0), so the exact
    band m, M comes from evaluating f'' at the two endpoints — no
    heuristic curvature anywhere in the harness.  |c3·x| is capped so
    integrands stay well-conditioned for the absolute-tolerance oracle.
    """
    rng = random.Random(seed)
    width = rng.uniform(0.1, 5.0)
    a = rng.uniform(-3.0, 3.0)
    b = a + width
    interval = Interval(a, b)
    family = _FAMILIES[rng.randrange(len(_FAMILIES))]

    c1 = rng.uniform(0.0, 3.0)
    c5 = rng.uniform(-2.0, 2.0)
    c6 = rng.uniform(-2.0, 2.0)
    c2 = c3 = c4 = 0.0
    s = 0.0
    if family in ("exp", "mixed"):
        c2 = rng.uniform(0.2, 3.0)
        c3_cap = min(2.0, 4.0 / max(abs(a), abs(b), 1.0))
        c3 = rng.uniform(-c3_cap, c3_cap)
        if family == "mixed":
            c3 = -abs(c3)  # keep f'' summands co-monotone
    if family in ("log", "mixed"):
        c4 = rng.uniform(0.2, 3.0)
        s = rng.uniform(0.5, 2.0) - a  # log argument in [margin, margin + width]

    terms: list[Node] = []
    if c1 > 0.0:
        terms.append(Binary("mul", Const(c1), Binary("pow", Var(), Const(2.0))))
    if c2 > 0.0:
        terms.append(Binary("mul", Const(c2), Unary("exp", Binary("mul", Const(c3), Var()))))
    if c4 > 0.0:
        log_term = Unary("log", Binary("add", Var(), Const(s)))
        terms.append(Unary("neg", Binary("mul", Const(c4), log_term)))
    terms.append(Binary("mul", Const(c5), Var()))
    terms.append(Const(c6))
    ast: Node = terms[0]
    for t in terms[1:]:
        ast = Binary("add", ast, t)
    f = function_spec(ast)

    d2a, d2b = f.second_derivative(a), f.second_derivative(b)
    curvature = CurvatureBounds(min(d2a, d2b), max(d2a, d2b), Provenance.EXACT)
    recipe = f"seed={seed} family={family} interval=[{a!r}, {b!r}] f={f.text}"
    return ConvexInstance(f, interval, curvature, recipe)


def _poly_node(coeffs: list[float], u: Node) -> Node:
    """Horner-form polynomial AST in the argument node ``u``."""
    node: Node = Const(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        node = Binary("add", Binary("mul", node, u), Const(c))
    return node


def random_symmetric_weight(seed: int, interval: Interval, range01: bool = True) -> WeightSpec:
    """Symmetrised positive cubic in the normalised coordinate.

    The base is p(τ) = q0 + q1 τ + q2 τ² + q3 τ³ with coefficients in
    [0, 1] (q0 >= 0.1), evaluated at τ = (x-a)/(b-a), so p > 0 on the
    interval and the |·| nonnegativity guard in the emitted expression
    never actually bites; the returned weight is the symmetrisation
    (p(τ) + p(1-τ)) / 2, kept smooth on purpose — an interior kink of
    |p| would make the quadrature oracle's thin-feature behaviour part
    of every trial, which this harness deliberately avoids.  With q
    nonnegative p is convex and nondecreasing on [0, 1], so the
    symmetrised sum peaks at the endpoints and the exact maximum
    p(0) + p(1) scales the weight into [0, 1] when requested.
    """
    rng = random.Random(seed)
    q = [rng.uniform(0.1, 1.0), rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)]
    a, b = interval.a, interval.b
    w = b - a
    tau = Binary("div", Binary("sub", Var(), Const(a)), Const(w))
    tau_mirror = Binary("div", Binary("sub", Const(b), Var()), Const(w))
    direct = Unary("abs", _poly_node(q, tau))
    mirrored = Unary("abs", _poly_node(q, tau_mirror))
    if range01:
        peak = 2.0 * q[0] + q[1] + q[2] + q[3]  # p(0) + p(1)
        scale = 1.0 / (peak * (1.0 + 1e-12))
    else:
        scale = 0.5
    ast = Binary("mul", Const(scale), Binary("add", direct, mirrored))
    return classify_weight(evaluation_spec(ast), interval)


def slope_normalized(f: FunctionSpec, interval: Interval) -> FunctionSpec:
    """Return f plus the smallest linear term making it nondecreasing.

    Adding ``max(0, -f'(a)) · x`` preserves convexity and leaves the
    second derivative (hence any exact curvature band) untouched.  The
    monotone-functional ordering — h1 with nonincreasing weights, h2
    with nondecreasing ones — is a theorem only for *nondecreasing*
    convex f: already f(x) = -x with weight 1 - x on [0, 1] gives
    h1(x) = -x³/12, strictly decreasing.  The harness therefore tests
    that ordering on the normalised instance, where it genuinely holds,
    instead of blaming the library for out-of-domain inputs.
    """
    slope_a = f.derivative(interval.a)
    if slope_a >= 0.0:
        return f
    shifted = Binary("add", f.ast, Binary("mul", Const(-slope_a), Var()))
    return function_spec(shifted)


def random_monotone_weight(seed: int, interval: Interval, decreasing: bool) -> WeightSpec:
    """A nonnegative quadratic-in-τ weight, τ being the normalised
    (and possibly reversed) coordinate, so it is monotone by
    construction."""
    rng = random.Random(seed)
    e0, e1, e2 = rng.uniform(0.1, 1.0), rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)
    a, b = interval.a, interval.b
    if decreasing:
        tau: Node = Binary("div", Binary("sub", Const(b), Var()), Const(b - a))
    else:
        tau = Binary("div", Binary("sub", Var(), Const(a)), Const(b - a))
    ast = Binary(
        "add",
        Binary("add", Const(e0), Binary("mul", Const(e1), tau)),
        Binary("mul", Const(e2), Binary("pow", tau, Const(2.0))),
    )
    return classify_weight(evaluation_spec(ast), interval)


# --------------------------------------------------------------------------
# Trial report
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FailureRecord:
    trial: int
    operation: str
    recipe: str
    details: str


@dataclass(frozen=True)
class TrialReport:
    seed: int
    trials: int
    passed: int
    failed: int
    inconclusive: int
    worst_violation: float
    failures: tuple[FailureRecord, ...]
    op_counts: dict[str, int] = field(default_factory=dict, compare=False)

    def to_json(self) -> str:
        payload = {
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "failed": self.failed,
            "inconclusive": self.inconclusive,
            "worst_violation": self.worst_violation,
            "failures": [
                {
                    "trial": f.trial,
                    "operation": f.operation,
                    "recipe": f.recipe,
                    "details": f.details,
                }
                for f in self.failures
            ],
        }
        return json.dumps(payload, indent=2)


# --------------------------------------------------------------------------
# The per-trial check battery
# --------------------------------------------------------------------------

_PASS, _FAIL, _INCONCLUSIVE = "pass", "fail", "inconclusive"

_LAMBDA_GRID = [k / 10.0 for k in range(11)]
_H_GRID_STEPS = 4

# 4 sandwich/gap checks + 22 lambda-grid checks + 2 weighted gaps
# + 2 complement chains + 2 bisection + 2 functionals + 2 monotone pairs
# + 2 refined chains + 1 two-node window + 6 means checks
CHECKS_PER_TRIAL = 45


def _containment(enc: Enclosure, value: float) -> float:
    return max(enc.lower - value, value - enc.upper)


def _chain_violation(values: list[float]) -> float:
    """Largest violation of values[0] >= values[1] >= ... >= last."""
    return max(nxt - prev for prev, nxt in zip(values, values[1:]))


def _once(fn):
    """Memoize a zero-argument callable (shared oracle work within a trial)."""
    box: list = []

    def call():
        if not box:
            box.append(fn())
        return box[0]

    return call


class _Battery:
    """Collects check outcomes for one falsification run."""

    def __init__(self, slack: float) -> None:
        self.slack = slack
        self.passed = 0
        self.failed = 0
        self.inconclusive = 0
        self.worst = -math.inf
        self.failures: list[FailureRecord] = []
        self.op_counts: dict[str, int] = {}
        self._trial = 0
        self._recipe = ""

    def start_trial(self, index: int, recipe: str) -> None:
        self._trial = index
        self._recipe = recipe

    def _record(self, operation: str, status: str, violation: float, details: str) -> None:
        self.op_counts[operation] = self.op_counts.get(operation, 0) + 1
        if status == _INCONCLUSIVE:
            self.inconclusive += 1
            return
        self.worst = max(self.worst, violation)
        if status == _PASS:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(
                FailureRecord(self._trial, operation, self._recipe, details)
            )

    def containment(self, operation: str, make_enclosure, make_target) -> None:
        """Check an enclosure against an oracle target with slack."""
        try:
            enc = make_enclosure()
            target = make_target()
        except OracleInconclusive:
            self._record(operation, _INCONCLUSIVE, 0.0, "")
            return
        except CertError as exc:
            self._record(operation, _FAIL, math.inf, f"unexpected error: {exc!r}")
            return
        if isinstance(target, QuadResult):
            if not target.converged:
                self._record(operation, _INCONCLUSIVE, 0.0, "")
                return
            value = target.value
        else:
            value = target
        violation = _containment(enc, value)
        status = _PASS if violation <= self.slack else _FAIL
        self._record(
            operation,
            status,
            violation,
            f"target {value!r} outside ({enc.lower!r}, {enc.upper!r})",
        )

    def ordering(self, operation: str, make_values) -> None:
        """Check a nonincreasing chain of oracle-built values."""
        try:
            values = make_values()
        except OracleInconclusive:
            self._record(operation, _INCONCLUSIVE, 0.0, "")
            return
        except CertError as exc:
            self._record(operation, _FAIL, math.inf, f"unexpected error: {exc!r}")
            return
        violation = _chain_violation(values)
        status = _PASS if violation <= self.slack else _FAIL
        self._record(operation, status, violation, f"chain not ordered: {values!r}")


def _run_trial(battery: _Battery, master_seed: int, index: int, check_tol: float) -> None:
    inst = random_convex_instance(_mix(master_seed, index, 0))
    battery.start_trial(index, inst.recipe)
    f, interval, c = inst.function, inst.interval, inst.curvature
    # The oracle adjudicates containment at slack 10·check_tol, so its
    # own integrals run two orders tighter: quadrature noise (e.g. near
    # the kinks of |cubic| weights) must never masquerade as violations.
    tol = 0.01 * check_tol
    g_sym = random_symmetric_weight(_mix(master_seed, index, 1), interval)
    g_dec = random_monotone_weight(_mix(master_seed, index, 2), interval, decreasing=True)
    g_inc = random_monotone_weight(_mix(master_seed, index, 3), interval, decreasing=False)
    rng = random.Random(_mix(master_seed, index, 4))

    battery.containment(
        "hermite_hadamard",
        lambda: bd.hermite_hadamard(f, interval, tol),
        lambda: bd.target_integral_mean(f, interval, tol),
    )
    battery.containment(
        "fejer",
        lambda: bd.fejer(f, g_sym, interval, tol),
        lambda: bd.target_fejer(f, g_sym, interval, tol),
    )
    battery.containment(
        "hh_midpoint_gap_bounds",
        lambda: bd.hh_midpoint_gap_bounds(c, interval),
        lambda: bd.target_gap(bd.GapKind.MIDPOINT, f, interval, tol=tol),
    )
    battery.containment(
        "hh_trapezoid_gap_bounds",
        lambda: bd.hh_trapezoid_gap_bounds(c, interval),
        lambda: bd.target_gap(bd.GapKind.TRAPEZOID, f, interval, tol=tol),
    )
    for lam_value in _LAMBDA_GRID:
        lam = Lambda(lam_value)
        battery.containment(
            "chord_gap_bounds",
            lambda lam=lam: bd.chord_gap_bounds(c, interval, lam),
            lambda lam=lam: bd.target_gap(bd.GapKind.CHORD, f, interval, lam=lam),
        )
    for lam_value in _LAMBDA_GRID:
        lam = Lambda(lam_value)
        battery.containment(
            "symmetric_pair_gap_bounds",
            lambda lam=lam: bd.symmetric_pair_gap_bounds(c, interval, lam),
            lambda lam=lam: bd.target_gap(bd.GapKind.SYMMETRIC_PAIR, f, interval, lam=lam),
        )
    battery.containment(
        "fejer_trapezoid_gap_bounds",
        lambda: bd.fejer_trapezoid_gap_bounds(f, g_sym, c, interval, tol),
        lambda: bd.target_gap(bd.GapKind.WEIGHTED_TRAPEZOID, f, interval, g=g_sym, tol=tol),
    )
    battery.containment(
        "fejer_midpoint_gap_bounds",
        lambda: bd.fejer_midpoint_gap_bounds(f, g_sym, c, interval, tol),
        lambda: bd.target_gap(bd.GapKind.WEIGHTED_MIDPOINT, f, interval, g=g_sym, tol=tol),
    )

    chains = _once(lambda: bd.complement_weight_chains(f, g_sym, c, interval, tol))
    battery.ordering("complement_weight_chains_lower", lambda: list(chains()[0]))
    battery.ordering("complement_weight_chains_upper", lambda: list(chains()[1]))

    bis_targets = _once(lambda: bd.target_bisection(f, interval, tol))
    battery.containment(
        "bisection_bounds_mean",
        lambda: bd.bisection_bounds(f, c, interval, tol)[0],
        lambda: bis_targets()[0],
    )
    battery.containment(
        "bisection_bounds_quarter",
        lambda: bd.bisection_bounds(f, c, interval, tol)[1],
        lambda: bis_targets()[1],
    )

    a, b = interval.a, interval.b
    # last point pinned to b: a + n*((b-a)/n) can overshoot b by one ulp
    x_grid = [a + k * (b - a) / _H_GRID_STEPS for k in range(1, _H_GRID_STEPS)] + [b]
    f_mono = slope_normalized(f, interval)
    battery.ordering(
        "h1_functional",
        lambda: list(
            reversed([0.0] + [bd.h1_functional(f_mono, g_dec, interval, x, tol) for x in x_grid])
        ),
    )
    battery.ordering(
        "h2_functional",
        lambda: list(
            reversed([0.0] + [bd.h2_functional(f_mono, g_inc, interval, x, tol) for x in x_grid])
        ),
    )

    x_mid = interval.midpoint
    monotone = _once(lambda: bd.hh_gap_monotone(f, interval, x_mid, tol))
    battery.ordering("hh_gap_monotone_trapezoid", lambda: [*monotone()[0], 0.0])
    battery.ordering("hh_gap_monotone_midpoint", lambda: [*monotone()[1], 0.0])
    refined = _once(lambda: bd.refined_gap_chains(f, c, interval, x_mid, tol))
    battery.ordering("refined_gap_chains_lower", lambda: [*refined()[0], 0.0])
    battery.ordering("refined_gap_chains_upper", lambda: [*refined()[1], 0.0])

    p, q = rng.uniform(0.5, 3.0), rng.uniform(0.5, 3.0)
    weights = NodeWeights(p, q)
    radius = (b - a) * min(p, q) / (p + q)
    y = radius * rng.uniform(0.1, 1.0)
    center = (p * a + q * b) / (p + q)
    window = Interval(center - y, center + y)
    g_win = random_symmetric_weight(_mix(master_seed, index, 5), window)
    battery.containment(
        "vasic_lackovic",
        lambda: bd.vasic_lackovic(f, g_win, weights, interval, y, tol),
        lambda: bd.target_vasic_lackovic(f, g_win, weights, interval, y, tol),
    )

    # means: random positive pair, log-uniform in [0.1, 10]
    ma = math.exp(rng.uniform(math.log(0.1), math.log(10.0)))
    mb = math.exp(rng.uniform(math.log(0.1), math.log(10.0)))
    lo, hi = min(ma, mb), max(ma, mb)
    battery.ordering(
        "mean_ordering",
        lambda: [
            mn.arithmetic_mean(lo, hi),
            mn.identric_mean(lo, hi),
            mn.logarithmic_mean(lo, hi),
            mn.geometric_mean(lo, hi),
            mn.harmonic_mean(lo, hi),
        ],
    )

    branch = rng.random()
    if branch < 0.4:
        p_al = rng.uniform(1.0, 4.0)
    elif branch < 0.7:
        p_al = rng.uniform(-3.0, -1.2)
    else:
        p_al = rng.uniform(-0.8, -0.05)
    x_in = rng.uniform(lo, hi)
    battery.ordering(
        "al_gap_check", lambda: [*mn.al_gap_check(p_al, lo, hi, x_in), 0.0]
    )
    battery.ordering(
        "harmonic_log_gap_check", lambda: [*mn.harmonic_log_gap_check(lo, hi, x_in), 0.0]
    )
    battery.ordering(
        "identric_ratio_check", lambda: [*mn.identric_ratio_check(lo, hi, x_in), 1.0]
    )
    lam_y = rng.random()
    battery.containment(
        "young_ratio_bounds",
        lambda: mn.young_ratio_bounds(ma, mb, lam_y),
        lambda: mn.young_ratio_target(ma, mb, lam_y),
    )
    battery.containment(
        "young_difference_bounds",
        lambda: mn.young_difference_bounds(ma, mb, lam_y),
        lambda: mn.young_difference_target(ma, mb, lam_y),
    )


def falsify(trials: int, seed: int, tol: float = 1e-10) -> TrialReport:
    """Run the randomized check battery for the given number of trials.

    Every check compares a certified bound (or ordering chain) against
    the quadrature oracle with slack ``10 * tol``.  Checks whose oracle
    fails to converge count as inconclusive.  The report is a pure
    function of (trials, seed, tol).
    """
    if trials < 1:
        raise ParameterOutOfRange(f"trials must be >= 1, got {trials}")
    if tol <= 0.0:
        raise ParameterOutOfRange(f"tolerance must be > 0, got {tol}")
    battery = _Battery(slack=10.0 * tol)
    for index in range(trials):
        _run_trial(battery, seed, index, tol)
    return TrialReport(
        seed=seed,
        trials=trials,
        passed=battery.passed,
        failed=battery.failed,
        inconclusive=battery.inconclusive,
        worst_violation=battery.worst,
        failures=tuple(battery.failures),
        op_counts=dict(sorted(battery.op_counts.items())),
    )
