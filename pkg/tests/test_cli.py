"""End-to-end command-line behavior: formats, exit codes, determinism."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

import pytest

from cantorleb import from_text, make_context
from cantorleb.cli import CSV_COLUMNS, main

import oracles


def run_cli(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def rows_of(out: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(out)))


# ---------------------------------------------------------------------------
# lengths / nodes / lambda


def test_lengths_table(capsys):
    code, out, _ = run_cli(capsys, "lengths", "beta:1/3", "--s-max", "4")
    assert code == 0
    rows = rows_of(out)
    assert [r["s"] for r in rows] == ["0", "1", "2", "3", "4"]
    assert float(rows[3]["length"]) == pytest.approx(1 / 27)
    assert float(rows[2]["gap"]) == pytest.approx(1 / 27)  # h_2 = 1/9 - 2/27


def test_lengths_respects_digit_override(capsys, monkeypatch):
    monkeypatch.setenv("LC_DIGITS", "8")
    _, out, _ = run_cli(capsys, "lengths", "beta:1/3", "--s-max", "1")
    row = rows_of(out)[1]
    mantissa = row["length"].partition("e")[0].replace(".", "").rstrip("0")
    assert len(mantissa) <= 8


def test_nodes_emits_loadable_text(capsys, third):
    code, out, _ = run_cli(capsys, "nodes", "beta:1/3", "--kind", "endpoints", "--s", "2")
    assert code == 0
    ctx = make_context(third, 8, 8)
    z = from_text(out, ctx)
    assert z.n == 8
    assert z.provenance.tag() == "endpoints:2"


def test_lambda_evaluates_a_stored_array(capsys, tmp_path):
    _, out, _ = run_cli(capsys, "nodes", "beta:1/3", "--kind", "endpoints", "--s", "1")
    path = tmp_path / "nodes.txt"
    path.write_text(out)
    code, out2, _ = run_cli(capsys, "lambda", "beta:1/3", "--nodes-file", str(path), "--x", "1/9")
    assert code == 0
    lengths = oracles.beta_lengths(Fraction(1, 3), 2)
    want = oracles.lebesgue_function(oracles.endpoints(lengths, 1), Fraction(1, 9))
    assert want == Fraction(43, 27)
    assert float(out2.strip().splitlines()[-1]) == pytest.approx(float(want))


def test_lambda_rejects_descriptor_mismatch(capsys, tmp_path):
    _, out, _ = run_cli(capsys, "nodes", "beta:1/3", "--kind", "endpoints", "--s", "1")
    path = tmp_path / "nodes.txt"
    path.write_text(out)
    code, _, err = run_cli(capsys, "lambda", "beta:1/9", "--nodes-file", str(path), "--x", "0")
    assert code == 2
    assert "error" in err


# ---------------------------------------------------------------------------
# constant / sweep


def test_constant_emits_one_row(capsys):
    code, out, _ = run_cli(
        capsys, "constant", "beta:1/3", "--nodes", "endpoints:2", "--depth", "4"
    )
    assert code == 0
    rows = rows_of(out)
    assert len(rows) == 1
    assert list(rows[0]) == CSV_COLUMNS
    assert rows[0]["N"] == "8"
    assert float(rows[0]["lambda_max"]) == pytest.approx(3.368376868, rel=1e-8)
    assert rows[0]["stabilized"] == "true"


def _sweep_config(tmp_path, **overrides):
    doc = {
        "set": "beta:1/3",
        "nodes": {"kind": "endpoints", "s": 1},
        "sweep": {"s_min": 1, "s_max": 3},
        "search": {"depth": 4},
        "bound": "endpoint-witness",
        "output": {"format": "csv"},
    }
    doc.update(overrides)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(doc))
    return path


def test_sweep_runs_rows_in_order(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "sweep", str(_sweep_config(tmp_path)))
    assert code == 0
    rows = rows_of(out)
    assert [r["s"] for r in rows] == ["1", "2", "3"]
    assert [r["N"] for r in rows] == ["4", "8", "16"]
    # endpoint-witness bound applies from s >= 2 (witness depth s+1 >= 3)
    assert rows[1]["bound_name"] == "endpoint-witness"
    assert rows[1]["satisfied"] == "true"


def test_sweep_is_deterministic_modulo_elapsed(capsys, tmp_path):
    cfg = _sweep_config(tmp_path)
    _, first, _ = run_cli(capsys, "sweep", str(cfg))
    _, second, _ = run_cli(capsys, "sweep", str(cfg))

    def strip_elapsed(text):
        rows = rows_of(text)
        for r in rows:
            r.pop("elapsed_ms")
        return rows

    assert strip_elapsed(first) == strip_elapsed(second)


def test_sweep_json_round_trips(capsys, tmp_path):
    cfg = _sweep_config(tmp_path, output={"format": "json"})
    code, out, _ = run_cli(capsys, "sweep", str(cfg))
    assert code == 0
    doc = json.loads(out)
    assert doc["columns"] == CSV_COLUMNS
    assert len(doc["rows"]) == 3
    assert doc["rows"][0]["s"] == "1"


def test_sweep_writes_to_file(capsys, tmp_path):
    out_path = tmp_path / "rows.csv"
    cfg = _sweep_config(tmp_path, output={"format": "csv", "path": str(out_path)})
    code, _, _ = run_cli(capsys, "sweep", str(cfg))
    assert code == 0
    assert len(rows_of(out_path.read_text())) == 3


def test_sweep_rejects_bad_config(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"set": "beta:1/3", "nodes": {"kind": "mystery", "s": 2}}))
    code, _, err = run_cli(capsys, "sweep", str(path))
    assert code == 2 and "error" in err
    code, _, _ = run_cli(capsys, "sweep", str(tmp_path / "missing.json"))
    assert code == 2


# ---------------------------------------------------------------------------
# julia / bounds / verify


def test_julia_level_table(capsys):
    code, out, _ = run_cli(capsys, "julia", "geom:1/32:1/2", "--s-max", "3")
    assert code == 0
    rows = rows_of(out)
    assert [r["s"] for r in rows] == ["0", "1", "2", "3"]
    assert [r["intervals"] for r in rows] == ["1", "2", "4", "8"]
    assert float(rows[2]["r_s"]) == pytest.approx(2.0**-16)
    assert float(rows[2]["delta_s"]) == pytest.approx(2.0**-11)
    # lengths live strictly inside (delta_s, e * delta_s)
    assert 2.0**-11 < float(rows[2]["min_length"]) <= float(rows[2]["max_length"]) < 2.72 * 2.0**-11


def test_julia_verify_json(capsys):
    code, out, _ = run_cli(capsys, "julia", "geom:1/32:1/2", "--s-max", "4", "--verify")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True
    assert doc["s_max"] == 4
    assert all(c["passed"] for c in doc["checks"])


def test_julia_budget_failure_exits_three(capsys):
    code, _, err = run_cli(capsys, "julia", "table:1/32,1/64", "--s-max", "5")
    assert code == 3 and "error" in err


def test_bounds_json(capsys):
    code, out, _ = run_cli(
        capsys, "bounds", "endpoint-witness", "--set", "beta:1/3", "--s", "4"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["name"] == "endpoint-witness"
    assert doc["side"] == "lower-bound-for-lambda"
    want = Fraction(1, 81) * Fraction(80 * 27, 81 * 19) ** 8
    assert float(doc["value"]) == pytest.approx(float(want), rel=1e-9)


def test_bounds_inequality_exit_code(capsys):
    code, out, _ = run_cli(
        capsys, "bounds", "gap-sum", "--alpha", "2", "--ell1", "1/3", "--limit", "12"
    )
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_bounds_unknown_name(capsys):
    # argparse rejects out-of-choice names itself, also with status 2
    with pytest.raises(SystemExit) as exc:
        main(["bounds", "astral-bound", "--set", "beta:1/3", "--s", "4"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_bounds_missing_arguments(capsys):
    code, _, err = run_cli(capsys, "bounds", "endpoint-witness")
    assert code == 2 and "error" in err


def test_verify_suite_lines(capsys):
    code, out, _ = run_cli(capsys, "verify", "lemma-sum")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines and all(ln.startswith("PASS lemma-sum:") for ln in lines)


def test_verify_unknown_suite(capsys):
    code, _, _ = run_cli(capsys, "verify", "nonexistent-suite")
    assert code == 2


def test_malformed_set_kind(capsys):
    code, _, _ = run_cli(capsys, "lengths", "spiral:1/3", "--s-max", "3")
    assert code == 2
    code, _, _ = run_cli(capsys, "lengths", "alpha:2", "--s-max", "3")
    assert code == 2


def test_table_budget_exit(capsys):
    code, _, _ = run_cli(capsys, "lengths", "table:1,1/4,1/16", "--s-max", "5")
    assert code == 3
