"""End-to-end tests for the command-line interface (in-process, plus
one subprocess smoke test of the module entry point)."""

import json
import math
import subprocess
import sys

import pytest

from convexcert.cli import main

E = math.e


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBounds:
    def test_plain_sandwich_json(self, capsys):
        code, out, err = run_cli(
            capsys, "bounds", "--f", "x^2", "--a", "0", "--b", "1", "--rule", "hh", "--json"
        )
        assert code == 0
        assert err == ""
        payload = json.loads(out)
        assert len(payload) == 1
        cert = payload[0]
        assert cert["rule"] == "hermite-hadamard"
        assert cert["interval"] == {"a": 0.0, "b": 1.0}
        assert cert["enclosure"]["lower"] == pytest.approx(0.25, abs=1e-15)
        assert cert["enclosure"]["upper"] == pytest.approx(0.5, abs=1e-15)
        assert cert["oracle_value"] == pytest.approx(1.0 / 3.0, abs=1e-12)
        assert cert["oracle_converged"] is True
        assert cert["contained"] is True
        assert cert["curvature_provenance"] == "not-used"

    def test_midpoint_gap_uses_exact_curvature(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "bounds", "--f", "exp(x)", "--a", "0", "--b", "1",
            "--rule", "midpoint-gap", "--json",
        )
        assert code == 0
        cert = json.loads(out)[0]
        assert cert["curvature_provenance"] == "exact"
        assert float(cert["inputs"]["m"]) == pytest.approx(1.0, rel=1e-14)
        assert float(cert["inputs"]["M"]) == pytest.approx(E, rel=1e-14)
        assert cert["enclosure"]["lower"] == pytest.approx(1.0 / 24.0, rel=1e-14)
        assert cert["contained"] is True

    def test_human_output_line_shape(self, capsys):
        code, out, _ = run_cli(
            capsys, "bounds", "--f", "exp(x)", "--a", "0", "--b", "1", "--rule", "hh"
        )
        assert code == 0
        assert out.startswith("hermite-hadamard: enclosure=(")
        assert "-> contained" in out

    def test_swapped_endpoints_note(self, capsys):
        code, out, _ = run_cli(
            capsys, "bounds", "--f", "x^2", "--a", "1", "--b", "0", "--rule", "hh"
        )
        assert code == 0
        assert out.splitlines()[0].startswith("note: endpoints swapped")

    def test_rule_all_without_weight(self, capsys):
        code, out, _ = run_cli(
            capsys, "bounds", "--f", "x^2", "--a", "0", "--b", "2", "--json"
        )
        assert code == 0
        rules = [c["rule"] for c in json.loads(out)]
        assert rules == [
            "hermite-hadamard",
            "midpoint-gap",
            "trapezoid-gap",
            "chord-gap",
            "symmetric-pair-gap",
            "bisection-mean",
            "bisection-quarter",
        ]

    def test_rule_all_with_weight_and_window(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "bounds", "--f", "exp(x)", "--a", "0", "--b", "1",
            "--g", "x*(1 - x)", "--p", "1", "--q", "1", "--y", "0.25", "--json",
        )
        assert code == 0
        payload = json.loads(out)
        rules = [c["rule"] for c in payload]
        assert rules == [
            "hermite-hadamard",
            "fejer",
            "weighted-trapezoid-gap",
            "weighted-midpoint-gap",
            "midpoint-gap",
            "trapezoid-gap",
            "chord-gap",
            "symmetric-pair-gap",
            "bisection-mean",
            "bisection-quarter",
            "vasic-lackovic",
        ]
        assert all(c["contained"] for c in payload)

    def test_explicit_lambda_recorded(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "bounds", "--f", "x^2", "--a", "0", "--b", "1",
            "--rule", "chord-gap", "--lambda", "0.25", "--json",
        )
        assert code == 0
        cert = json.loads(out)[0]
        assert cert["inputs"]["lambda"] == "0.25"
        # scale 0.25*0.75/2 = 3/32, curvature exactly 2
        assert cert["enclosure"]["lower"] == pytest.approx(3.0 / 16.0, rel=1e-14)

    def test_wrong_user_band_is_a_violation(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "bounds", "--f", "exp(x)", "--a", "0", "--b", "1",
            "--rule", "midpoint-gap", "--m", "0", "--M", "0.001",
        )
        assert code == 2
        assert "VIOLATION" in out

    def test_user_band_provenance(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "bounds", "--f", "exp(x)", "--a", "0", "--b", "1",
            "--rule", "midpoint-gap", "--m", "1", "--M", "2.7182818284590455", "--json",
        )
        assert code == 0
        assert json.loads(out)[0]["curvature_provenance"] == "user-supplied"

    def test_require_exact_refuses_heuristic_band(self, capsys):
        code, out, err = run_cli(
            capsys,
            "bounds", "--f", "exp(x) - log(x)", "--a", "1", "--b", "2",
            "--rule", "midpoint-gap", "--require-exact",
        )
        assert code == 1
        assert err.startswith("error:")
        assert "sampled-heuristic" in err

    def test_m_without_big_m_rejected(self, capsys):
        code, _, err = run_cli(
            capsys, "bounds", "--f", "x^2", "--a", "0", "--b", "1", "--m", "2"
        )
        assert code == 1
        assert "--m and --M" in err

    def test_unknown_rule_lists_known_ones(self, capsys):
        code, _, err = run_cli(
            capsys, "bounds", "--f", "x^2", "--a", "0", "--b", "1", "--rule", "nope"
        )
        assert code == 1
        assert "unknown rule" in err
        assert "hermite-hadamard" in err

    def test_window_rule_needs_all_three_flags(self, capsys):
        code, _, err = run_cli(
            capsys,
            "bounds", "--f", "x^2", "--a", "0", "--b", "1", "--rule", "vasic-lackovic",
        )
        assert code == 1
        assert "--p" in err

    def test_parse_error_exits_1(self, capsys):
        code, _, err = run_cli(capsys, "bounds", "--f", "x^", "--a", "0", "--b", "1")
        assert code == 1
        assert err.startswith("error:")

    def test_concave_function_exits_1(self, capsys):
        code, _, err = run_cli(
            capsys, "bounds", "--f", "0 - x^2", "--a", "0", "--b", "1", "--rule", "hh"
        )
        assert code == 1
        assert "error:" in err

    def test_json_is_deterministic(self, capsys):
        args = ("bounds", "--f", "exp(x)", "--a", "0", "--b", "1", "--json")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2


class TestYoung:
    def test_both_forms_golden(self, capsys):
        code, out, _ = run_cli(
            capsys, "young", "--a", "1", "--b", "4", "--lambda", "0.5", "--json"
        )
        assert code == 0
        ratio, diff = json.loads(out)
        assert ratio["rule"] == "young-ratio"
        assert ratio["enclosure"]["lower"] == pytest.approx(math.exp(9.0 / 128.0), rel=1e-14)
        assert ratio["enclosure"]["upper"] == pytest.approx(math.exp(1.125), rel=1e-14)
        assert ratio["oracle_value"] == pytest.approx(1.25, rel=1e-15)
        assert diff["rule"] == "young-difference"
        assert diff["oracle_value"] == pytest.approx(0.5, rel=1e-15)
        assert ratio["contained"] and diff["contained"]

    def test_single_form(self, capsys):
        code, out, _ = run_cli(
            capsys, "young", "--a", "1", "--b", "4", "--lambda", "0.5", "--form", "ratio"
        )
        assert code == 0
        lines = [l for l in out.splitlines() if l]
        assert len(lines) == 1
        assert lines[0].startswith("young-ratio:")

    def test_corner_lambda_collapses(self, capsys):
        code, out, _ = run_cli(
            capsys, "young", "--a", "2", "--b", "7", "--lambda", "0", "--json"
        )
        assert code == 0
        ratio, diff = json.loads(out)
        assert ratio["enclosure"] == {"lower": 1.0, "upper": 1.0}
        assert ratio["oracle_value"] == 1.0
        assert diff["enclosure"] == {"lower": 0.0, "upper": 0.0}

    def test_equal_operands(self, capsys):
        code, out, _ = run_cli(
            capsys, "young", "--a", "3", "--b", "3", "--lambda", "0.3", "--json"
        )
        assert code == 0
        assert all(c["contained"] for c in json.loads(out))

    def test_invalid_lambda_exits_1(self, capsys):
        code, _, err = run_cli(capsys, "young", "--a", "1", "--b", "4", "--lambda", "1.5")
        assert code == 1
        assert "error:" in err


class TestMeans:
    def test_table_with_power_means(self, capsys):
        code, out, _ = run_cli(capsys, "means", "--a", "1", "--b", "7", "--p", "2")
        assert code == 0
        assert "power(p=2)" in out
        assert " 5" in out  # quadratic power mean of (1, 7) is exactly 5
        assert out.rstrip().endswith("ok")

    def test_json_payload(self, capsys):
        code, out, _ = run_cli(capsys, "means", "--a", "1", "--b", "7", "--p", "2", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["ordering_ok"] is True
        assert payload["means"]["power(p=2)"] == pytest.approx(5.0, rel=1e-14)
        assert payload["means"]["arithmetic"] == 4.0
        assert set(payload) == {"a", "b", "p", "means", "ordering_ok"}

    def test_equal_operands(self, capsys):
        code, out, _ = run_cli(capsys, "means", "--a", "3", "--b", "3", "--json")
        assert code == 0
        payload = json.loads(out)
        assert all(v == pytest.approx(3.0, rel=1e-14) for v in payload["means"].values())

    def test_nonpositive_operand_exits_1(self, capsys):
        code, _, err = run_cli(capsys, "means", "--a", "0", "--b", "1")
        assert code == 1
        assert "error:" in err


class TestVerify:
    def test_small_run_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--trials", "2", "--seed", "7")
        assert code == 0
        payload = json.loads(out)
        assert payload["trials"] == 2
        assert payload["failed"] == 0
        assert payload["passed"] + payload["inconclusive"] == 90

    def test_zero_trials_exits_1(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--trials", "0", "--seed", "1")
        assert code == 1
        assert "trials must be >= 1" in err


def test_module_entry_point_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "convexcert.cli",
         "bounds", "--f", "x^2", "--a", "0", "--b", "1", "--rule", "hh", "--json"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)[0]["contained"] is True
