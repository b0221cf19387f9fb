"""Command-line front end.

Subcommands::

    convexcert bounds --f "exp(x)" --a 0 --b 1 --rule midpoint-gap
    convexcert young  --a 1 --b 4 --lambda 0.5
    convexcert means  --a 1 --b 7 --p 2
    convexcert verify --trials 1000 --seed 42

Exit codes: 0 when every certificate contains its oracle value (and
every falsification trial passes), 1 on usage or input errors, 2 when
a violation is detected.  JSON output has a fixed key order, so reruns
with identical arguments are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import bounds as bd
from . import means as mn
from .core import (
    CertError,
    CurvatureBounds,
    Enclosure,
    Interval,
    Lambda,
    NodeWeights,
    ParameterOutOfRange,
    Provenance,
    QuadResult,
    Rule,
    enclosure_contains,
    make_interval,
)
from .expr import curvature_range, evaluation_spec, function_spec
from .verify import falsify

__all__ = ["Certificate", "main"]

_FMT = "{:.12g}"

_CURVATURE_RULES = frozenset(
    {
        Rule.CHORD_GAP,
        Rule.SYMMETRIC_PAIR_GAP,
        Rule.MIDPOINT_GAP,
        Rule.TRAPEZOID_GAP,
        Rule.WEIGHTED_TRAPEZOID_GAP,
        Rule.WEIGHTED_MIDPOINT_GAP,
        Rule.BISECTION_MEAN,
        Rule.BISECTION_QUARTER,
    }
)

_RULE_ALIASES = {"hh": Rule.HERMITE_HADAMARD}
_BOUNDS_RULES = {r.value: r for r in Rule if r not in (Rule.YOUNG_RATIO, Rule.YOUNG_DIFFERENCE)}


@dataclass(frozen=True)
class Certificate:
    """One checked claim: rule, inputs, enclosure and its oracle value."""

    rule: str
    interval: Interval
    inputs: dict[str, str]
    enclosure: Enclosure
    oracle_value: float
    oracle_converged: bool
    contained: bool
    curvature_provenance: str

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "interval": {"a": self.interval.a, "b": self.interval.b},
            "inputs": self.inputs,
            "enclosure": {"lower": self.enclosure.lower, "upper": self.enclosure.upper},
            "oracle_value": self.oracle_value,
            "oracle_converged": self.oracle_converged,
            "contained": self.contained,
            "curvature_provenance": self.curvature_provenance,
        }

    def human_line(self) -> str:
        lo = _FMT.format(self.enclosure.lower)
        hi = _FMT.format(self.enclosure.upper)
        val = _FMT.format(self.oracle_value)
        flag = "contained" if self.contained else "VIOLATION"
        conv = "" if self.oracle_converged else " (oracle unconverged)"
        return f"{self.rule}: enclosure=({lo}, {hi}) oracle={val}{conv} -> {flag}"


def _make_certificate(
    rule: Rule,
    interval: Interval,
    inputs: dict[str, str],
    enclosure: Enclosure,
    oracle: QuadResult | float,
    tol: float,
    provenance: str = "not-used",
) -> Certificate:
    if isinstance(oracle, QuadResult):
        value, converged = oracle.value, oracle.converged
    else:
        value, converged = oracle, True
    return Certificate(
        rule=rule.value,
        interval=interval,
        inputs=inputs,
        enclosure=enclosure,
        oracle_value=value,
        oracle_converged=converged,
        contained=enclosure_contains(enclosure, value, 10.0 * tol),
        curvature_provenance=provenance,
    )


def _emit_certificates(certs: list[Certificate], as_json: bool, notes: list[str]) -> int:
    if as_json:
        print(json.dumps([c.to_dict() for c in certs], indent=2))
    else:
        for note in notes:
            print(f"note: {note}")
        for cert in certs:
            print(cert.human_line())
    return 0 if all(c.contained for c in certs) else 2


# --------------------------------------------------------------------------
# bounds
# --------------------------------------------------------------------------


def _resolve_rules(name: str, have_weight: bool, have_window: bool) -> list[Rule]:
    if name != "all":
        rule = _RULE_ALIASES.get(name) or _BOUNDS_RULES.get(name)
        if rule is None:
            known = ", ".join(["hh", "all"] + sorted(_BOUNDS_RULES))
            raise ParameterOutOfRange(f"unknown rule {name!r}; known rules: {known}")
        if rule is Rule.VASIC_LACKOVIC and not have_window:
            raise ParameterOutOfRange("rule vasic-lackovic needs --p, --q and --y")
        return [rule]
    rules = [
        Rule.HERMITE_HADAMARD,
        Rule.MIDPOINT_GAP,
        Rule.TRAPEZOID_GAP,
        Rule.CHORD_GAP,
        Rule.SYMMETRIC_PAIR_GAP,
        Rule.BISECTION_MEAN,
        Rule.BISECTION_QUARTER,
    ]
    if have_weight:
        rules[1:1] = [Rule.FEJER, Rule.WEIGHTED_TRAPEZOID_GAP, Rule.WEIGHTED_MIDPOINT_GAP]
    if have_window:
        rules.append(Rule.VASIC_LACKOVIC)
    return rules


def cmd_bounds(args: argparse.Namespace) -> int:
    f = function_spec(args.f)
    interval, swapped = make_interval(args.a, args.b)
    notes: list[str] = []
    inputs: dict[str, str] = {"f": f.text, "a": repr(args.a), "b": repr(args.b)}
    if swapped:
        note = f"endpoints swapped; working on [{interval.a}, {interval.b}]"
        notes.append(note)
        inputs["note"] = note
    tol = args.tol
    inputs["tol"] = repr(tol)

    have_window = args.p is not None or args.q is not None or args.y is not None
    if have_window and (args.p is None or args.q is None or args.y is None):
        raise ParameterOutOfRange("--p, --q and --y must be given together")
    rules = _resolve_rules(args.rule, args.g is not None, have_window)

    weight = None
    if args.g is not None:
        weight = evaluation_spec(args.g)
        inputs["g"] = weight.text

    curvature: CurvatureBounds | None = None
    if (args.m is None) != (args.curvature_max is None):
        raise ParameterOutOfRange("--m and --M must be given together")
    if any(r in _CURVATURE_RULES for r in rules):
        if args.m is not None:
            curvature = CurvatureBounds(args.m, args.curvature_max, Provenance.USER_SUPPLIED)
        else:
            curvature = curvature_range(f, interval)
        inputs["m"] = repr(curvature.m)
        inputs["M"] = repr(curvature.M)
        if args.require_exact and curvature.provenance is Provenance.SAMPLED_HEURISTIC:
            raise ParameterOutOfRange(
                "curvature band is sampled-heuristic; supply --m/--M or drop --require-exact"
            )

    lam = Lambda(args.lam if args.lam is not None else 0.5)
    certs: list[Certificate] = []
    for rule in rules:
        rule_inputs = dict(inputs)
        prov = curvature.provenance.value if (curvature and rule in _CURVATURE_RULES) else "not-used"
        if rule is Rule.HERMITE_HADAMARD:
            enc = bd.hermite_hadamard(f, interval, tol)
            oracle: QuadResult | float = bd.target_integral_mean(f, interval, tol)
        elif rule is Rule.FEJER:
            g = weight if weight is not None else evaluation_spec("1")
            rule_inputs.setdefault("g", g.text)
            enc = bd.fejer(f, g, interval, tol)
            oracle = bd.target_fejer(f, g, interval, tol)
        elif rule is Rule.MIDPOINT_GAP:
            enc = bd.hh_midpoint_gap_bounds(curvature, interval)
            oracle = bd.target_gap(bd.GapKind.MIDPOINT, f, interval, tol=tol)
        elif rule is Rule.TRAPEZOID_GAP:
            enc = bd.hh_trapezoid_gap_bounds(curvature, interval)
            oracle = bd.target_gap(bd.GapKind.TRAPEZOID, f, interval, tol=tol)
        elif rule is Rule.CHORD_GAP:
            rule_inputs["lambda"] = repr(lam.value)
            enc = bd.chord_gap_bounds(curvature, interval, lam)
            oracle = bd.target_gap(bd.GapKind.CHORD, f, interval, lam=lam)
        elif rule is Rule.SYMMETRIC_PAIR_GAP:
            rule_inputs["lambda"] = repr(lam.value)
            enc = bd.symmetric_pair_gap_bounds(curvature, interval, lam)
            oracle = bd.target_gap(bd.GapKind.SYMMETRIC_PAIR, f, interval, lam=lam)
        elif rule is Rule.WEIGHTED_TRAPEZOID_GAP:
            g = weight if weight is not None else evaluation_spec("1")
            rule_inputs.setdefault("g", g.text)
            enc = bd.fejer_trapezoid_gap_bounds(f, g, curvature, interval, tol)
            oracle = bd.target_gap(bd.GapKind.WEIGHTED_TRAPEZOID, f, interval, g=g, tol=tol)
        elif rule is Rule.WEIGHTED_MIDPOINT_GAP:
            g = weight if weight is not None else evaluation_spec("1")
            rule_inputs.setdefault("g", g.text)
            enc = bd.fejer_midpoint_gap_bounds(f, g, curvature, interval, tol)
            oracle = bd.target_gap(bd.GapKind.WEIGHTED_MIDPOINT, f, interval, g=g, tol=tol)
        elif rule is Rule.BISECTION_MEAN:
            enc = bd.bisection_bounds(f, curvature, interval, tol)[0]
            oracle = bd.target_bisection(f, interval, tol)[0]
        elif rule is Rule.BISECTION_QUARTER:
            enc = bd.bisection_bounds(f, curvature, interval, tol)[1]
            oracle = bd.target_bisection(f, interval, tol)[1]
        else:  # Rule.VASIC_LACKOVIC
            weights = NodeWeights(args.p, args.q)
            g = weight if weight is not None else evaluation_spec("1")
            rule_inputs.setdefault("g", g.text)
            rule_inputs.update({"p": repr(args.p), "q": repr(args.q), "y": repr(args.y)})
            enc = bd.vasic_lackovic(f, g, weights, interval, args.y, tol)
            oracle = bd.target_vasic_lackovic(f, g, weights, interval, args.y, tol)
        certs.append(_make_certificate(rule, interval, rule_inputs, enc, oracle, tol, prov))
    return _emit_certificates(certs, args.json, notes)


# --------------------------------------------------------------------------
# young
# --------------------------------------------------------------------------


def cmd_young(args: argparse.Namespace) -> int:
    a, b, lam = args.a, args.b, args.lam
    lo, hi = min(a, b), max(a, b)
    interval = Interval(lo, hi)
    inputs = {"a": repr(a), "b": repr(b), "lambda": repr(lam)}
    certs: list[Certificate] = []
    if args.form in ("ratio", "both"):
        certs.append(
            _make_certificate(
                Rule.YOUNG_RATIO,
                interval,
                inputs,
                mn.young_ratio_bounds(a, b, lam),
                mn.young_ratio_target(a, b, lam),
                args.tol,
            )
        )
    if args.form in ("difference", "both"):
        certs.append(
            _make_certificate(
                Rule.YOUNG_DIFFERENCE,
                interval,
                inputs,
                mn.young_difference_bounds(a, b, lam),
                mn.young_difference_target(a, b, lam),
                args.tol,
            )
        )
    return _emit_certificates(certs, args.json, [])


# --------------------------------------------------------------------------
# means
# --------------------------------------------------------------------------


def cmd_means(args: argparse.Namespace) -> int:
    a, b = args.a, args.b
    rows: list[tuple[str, float]] = [
        ("arithmetic", mn.arithmetic_mean(a, b)),
        ("geometric", mn.geometric_mean(a, b)),
        ("harmonic", mn.harmonic_mean(a, b)),
        ("logarithmic", mn.logarithmic_mean(a, b)),
        ("identric", mn.identric_mean(a, b)),
    ]
    if args.p is not None:
        rows.append((f"power(p={_FMT.format(args.p)})", mn.power_mean(args.p, a, b)))
        rows.append(
            (f"integral-power(p={_FMT.format(args.p)})", mn.integral_power_mean(args.p, a, b))
        )
    ordering = [
        mn.harmonic_mean(a, b),
        mn.geometric_mean(a, b),
        mn.logarithmic_mean(a, b),
        mn.identric_mean(a, b),
        mn.arithmetic_mean(a, b),
    ]
    slack = 1e-12 * max(1.0, max(ordering))
    ordering_ok = all(u <= v + slack for u, v in zip(ordering, ordering[1:]))
    if args.json:
        payload = {
            "a": a,
            "b": b,
            "p": args.p,
            "means": {name: value for name, value in rows},
            "ordering_ok": ordering_ok,
        }
        print(json.dumps(payload, indent=2))
    else:
        width = max(len(name) for name, _ in rows)
        for name, value in rows:
            print(f"{name.ljust(width)}  {_FMT.format(value)}")
        print(f"ordering harmonic <= geometric <= logarithmic <= identric <= arithmetic: "
              f"{'ok' if ordering_ok else 'VIOLATED'}")
    return 0 if ordering_ok else 2


# --------------------------------------------------------------------------
# verify
# --------------------------------------------------------------------------


def cmd_verify(args: argparse.Namespace) -> int:
    report = falsify(args.trials, args.seed, args.tol)
    print(report.to_json())
    return 0 if report.failed == 0 else 2


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convexcert",
        description="Certified two-sided enclosures for convex-function integrals, "
        "convexity gaps, special means and Young-type bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bounds = sub.add_parser("bounds", help="enclosures for integral means and convexity gaps")
    p_bounds.add_argument("--f", required=True, help="convex function of x, e.g. 'exp(x)'")
    p_bounds.add_argument("--a", type=float, required=True, help="interval endpoint")
    p_bounds.add_argument("--b", type=float, required=True, help="interval endpoint")
    p_bounds.add_argument("--g", help="weight function of x (defaults to 1 where needed)")
    p_bounds.add_argument("--lambda", dest="lam", type=float,
                          help="chord / symmetric-pair parameter in [0, 1] (default 0.5)")
    p_bounds.add_argument("--m", type=float, help="lower bound for f'' (with --M)")
    p_bounds.add_argument("--M", dest="curvature_max", type=float,
                          help="upper bound for f'' (with --m)")
    p_bounds.add_argument("--p", type=float, help="left node weight (two-node window rule)")
    p_bounds.add_argument("--q", type=float, help="right node weight (two-node window rule)")
    p_bounds.add_argument("--y", type=float, help="window half-width (two-node window rule)")
    p_bounds.add_argument("--rule", default="all",
                          help="rule name or 'all' (default); 'hh' is the plain sandwich")
    p_bounds.add_argument("--tol", type=float, default=1e-10, help="oracle tolerance")
    p_bounds.add_argument("--json", action="store_true", help="emit JSON certificates")
    p_bounds.add_argument("--require-exact", action="store_true",
                          help="refuse sampled-heuristic curvature bands")
    p_bounds.set_defaults(func=cmd_bounds)

    p_young = sub.add_parser("young", help="two-sided bounds for weighted AM/GM comparisons")
    p_young.add_argument("--a", type=float, required=True)
    p_young.add_argument("--b", type=float, required=True)
    p_young.add_argument("--lambda", dest="lam", type=float, required=True)
    p_young.add_argument("--form", choices=("ratio", "difference", "both"), default="both")
    p_young.add_argument("--tol", type=float, default=1e-10)
    p_young.add_argument("--json", action="store_true")
    p_young.set_defaults(func=cmd_young)

    p_means = sub.add_parser("means", help="classical and parametric means of two numbers")
    p_means.add_argument("--a", type=float, required=True)
    p_means.add_argument("--b", type=float, required=True)
    p_means.add_argument("--p", type=float, help="parameter for the power-type means")
    p_means.add_argument("--json", action="store_true")
    p_means.set_defaults(func=cmd_means)

    p_verify = sub.add_parser("verify", help="randomized falsification run")
    p_verify.add_argument("--trials", type=int, required=True)
    p_verify.add_argument("--seed", type=int, required=True)
    p_verify.add_argument("--tol", type=float, default=1e-10)
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
