"""End-to-end command line checks: exit codes, envelope shape, csv payloads,
and byte-level determinism across worker counts."""
from __future__ import annotations

import json

import pytest

from figprimes.cli import run
from figprimes.reporting import ENVELOPE_KEYS, Table, build_envelope, render_report

KEYS_NO_ERRATA = [k for k in ENVELOPE_KEYS if k != "errata"]


def run_cli(argv, tmp_path, name="out"):
    path = tmp_path / f"{name}"
    code = run(argv + ["--out", str(path)])
    return code, path


def run_json(argv, tmp_path, name="out.json"):
    code, path = run_cli(argv, tmp_path, name)
    return code, json.loads(path.read_text())


def run_csv(argv, tmp_path, name="out.csv"):
    code, path = run_cli(argv + ["--format", "csv"], tmp_path, name)
    return code, path.read_text().splitlines()


def normalized(path) -> str:
    env = json.loads(path.read_text())
    env["elapsed_ms"] = 0
    return json.dumps(env, indent=2)


class TestExitCodes:
    def test_clean_run_is_zero(self, tmp_path):
        code, env = run_json(["figurate", "--limit", "100", "--stats"], tmp_path)
        assert code == 0
        assert env["task"] == "figurate-stats"

    def test_counterexamples_flip_to_one(self, tmp_path):
        code, env = run_json(
            ["linear", "--a", "1", "--b", "2", "--domain", "primes",
             "--from", "2", "--to", "50"],
            tmp_path,
        )
        assert code == 1
        assert env["verified"] is False
        assert 20 in env["counterexamples"]

    def test_catalog_discrepancy_flips_to_one(self, tmp_path):
        code, env = run_json(["solve", "--i", "3", "--j", "2", "--k", "1"], tmp_path)
        assert code == 1
        assert env["verified"] is False
        assert env["errata"][0]["status"] == "DISCREPANCY"

    def test_catalog_match_is_zero(self, tmp_path):
        code, env = run_json(
            ["solve", "--i", "2", "--j", "1", "--k", "1", "--bound", "1000000"],
            tmp_path,
        )
        assert code == 0
        assert env["verified"] is True
        assert env["errata"][0]["status"] == "MATCH"

    def test_usage_problems_are_two(self, tmp_path):
        assert run(["twins"]) == 2                      # missing --limit
        assert run(["no-such-command"]) == 2
        assert run(["figurate"]) == 2                   # neither --limit nor --member
        assert run(["sum2", "--from", "2", "--to", "10", "--jobs", "0"]) == 2
        assert run(["figurate", "--member", "0"]) == 2

    def test_arithmetic_guard_is_three(self):
        code = run(
            ["curve", "samples", "--kind", "quartic", "--sign", "1", "--k", "1",
             "--xlo", "0", "--xhi", "65536"]
        )
        assert code == 3

    def test_help_exits_zero(self, capsys):
        assert run(["--help"]) == 0
        assert "figprimes" in capsys.readouterr().out


class TestEnvelope:
    def test_key_order_without_errata(self, tmp_path):
        _, path = run_cli(["twins", "--limit", "100"], tmp_path)
        env = json.loads(path.read_text())
        assert list(env) == KEYS_NO_ERRATA

    def test_key_order_with_errata(self, tmp_path):
        _, path = run_cli(["solve", "--i", "2", "--j", "3", "--k", "2"], tmp_path)
        env = json.loads(path.read_text())
        assert list(env) == list(ENVELOPE_KEYS)

    def test_catalog_free_instance_has_no_errata(self, tmp_path):
        code, env = run_json(["solve", "--i", "2", "--j", "2", "--k", "3"], tmp_path)
        assert code == 0
        assert env["verified"] is None
        assert "errata" not in env

    def test_params_never_leak_jobs(self, tmp_path):
        _, env = run_json(
            ["sum2", "--from", "2", "--to", "100", "--jobs", "4"], tmp_path
        )
        assert "jobs" not in env["params"]
        assert env["range"] == [2, 100]
        assert env["verified"] is True

    def test_verification_witnesses(self, tmp_path):
        _, env = run_json(["sum2", "--from", "2", "--to", "50"], tmp_path)
        first = env["witness_sample"][0]
        assert (first["n"], first["x"], first["y"]) == (2, 1, 1)
        assert first["x_cert"] == {"kind": "binomial", "p": 2, "a": 1, "i": 2}


class TestErrataCommand:
    def test_errata_reports_and_flags(self, tmp_path):
        code, env = run_json(["errata", "--bound", "100000"], tmp_path)
        assert code == 1
        assert env["verified"] is False
        assert env["counterexamples"] == [[3, 2, 1]]
        assert env["stats"] == {"instances": 11, "discrepancies": 1}
        statuses = {
            tuple(e["instance"]): e["status"]
            for e in env["errata"]
            if e.get("instance")
        }
        assert statuses[(3, 2, 1)] == "DISCREPANCY"
        assert sum(1 for s in statuses.values() if s == "MATCH") == 10
        kinds = [e["kind"] for e in env["errata"] if "kind" in e]
        assert kinds == ["curve-constant", "curve-map", "curve-variable"]


class TestCsvPayloads:
    def test_twins(self, tmp_path):
        code, lines = run_csv(["twins", "--limit", "10"], tmp_path)
        assert code == 0
        assert lines[0] == "f,g"
        assert {"2,4", "3,5", "5,7", "7,9"} <= set(lines[1:])

    def test_powerful_pairs(self, tmp_path):
        _, lines = run_csv(["powerful-pairs", "--limit", "10000"], tmp_path)
        assert lines[0] == "d,A,B"
        assert lines[1] == "1,9,8"
        assert lines[-1] == "1,9801,9800"

    def test_cubefull_diff_and_conj_headers(self, tmp_path):
        _, lines = run_csv(["cubefull-diff", "--d", "7", "--limit", "100"], tmp_path)
        assert lines[0] == "d,A,B"
        assert lines[1] == "7,8,1"
        _, lines = run_csv(["conj41", "--rmax", "3", "--limit", "100"], tmp_path)
        assert lines[0] == "d,A,B"
        assert lines[1:] == ["2,4,2", "4,8,4", "8,16,8"]
        _, lines = run_csv(["conj42", "--limit", "100000"], tmp_path)
        assert lines[0] == "d,A,B"
        assert lines[1] == "2,4,2"

    def test_curve_samples(self, tmp_path):
        _, lines = run_csv(
            ["curve", "samples", "--kind", "cubic", "--sign", "1", "--k", "1",
             "--xlo", "-24", "--xhi", "-22"],
            tmp_path,
        )
        assert lines == ["X,rhs,is_square,Y", "-24,1296,true,36",
                         "-23,2809,true,53", "-22,4184,false,"]

    def test_triangular(self, tmp_path):
        code, lines = run_csv(["triangular", "--limit", "10000"], tmp_path)
        assert code == 0
        assert lines[0] == "p,q"
        assert lines[1] == "2,2"
        assert lines[-1] == "6329,113"
        assert len(lines) == 11

    def test_pell_and_solve_headers(self, tmp_path):
        _, lines = run_csv(["pell", "--count", "3"], tmp_path)
        assert lines[0] == "u,v,A,B"
        assert lines[1] == "3,2,9,8"
        _, lines = run_csv(
            ["solve", "--i", "2", "--j", "1", "--k", "1", "--bound", "1000"],
            tmp_path,
        )
        assert lines[0] == "p,q,a,b,left,right"
        assert lines[1] == "3,2,1,1,3,2"

    def test_stats_key_value_table(self, tmp_path):
        _, lines = run_csv(["figurate", "--limit", "40", "--stats"], tmp_path)
        assert lines[0] == "key,value"
        assert "total,26" in lines
        assert "primes,12" in lines


class TestMemberQueries:
    def test_one_included_by_default(self, tmp_path):
        code, env = run_json(["figurate", "--member", "1"], tmp_path)
        assert code == 0
        assert env["stats"]["member"] is True
        assert env["witness_sample"] == [{"value": 1, "p": 2, "a": 1, "i": 2}]

    def test_one_excluded_on_request(self, tmp_path):
        _, env = run_json(["figurate", "--member", "1", "--exclude-one"], tmp_path)
        assert env["stats"]["member"] is False
        assert env["witness_sample"] == []

    def test_non_member(self, tmp_path):
        _, env = run_json(["figurate", "--member", "15"], tmp_path)
        assert env["stats"]["member"] is False

    def test_member_with_witness(self, tmp_path):
        _, env = run_json(["figurate", "--member", "17"], tmp_path)
        assert env["stats"]["member"] is True
        w = env["witness_sample"][0]
        assert (w["p"], w["a"], w["i"]) == (17, 1, 1)


class TestDumpAndStdout:
    def test_dump_writes_values(self, tmp_path):
        dump = tmp_path / "values.txt"
        code, env = run_json(
            ["figurate", "--limit", "40", "--dump", str(dump)], tmp_path
        )
        assert code == 0
        lines = dump.read_text().split()
        assert [int(v) for v in lines[:5]] == [1, 2, 3, 4, 5]
        assert len(lines) == env["stats"]["count"] == 26

    def test_stdout_fallback(self, capfdbinary):
        assert run(["twins", "--limit", "10", "--format", "csv"]) == 0
        out = capfdbinary.readouterr().out
        assert out.startswith(b"f,g\n")


class TestDeterminism:
    def test_jobs_change_elapsed_only(self, tmp_path):
        base = ["sum2", "--from", "2", "--to", "20000"]
        _, one = run_cli(base + ["--jobs", "1"], tmp_path, "one.json")
        _, four = run_cli(base + ["--jobs", "4"], tmp_path, "four.json")
        assert normalized(one) == normalized(four)

    def test_jobs_env_default(self, tmp_path, monkeypatch):
        base = ["prime-proper", "--from", "6", "--to", "5000"]
        monkeypatch.setenv("FIGPRIMES_JOBS", "4")
        _, enved = run_cli(base, tmp_path, "env.json")
        monkeypatch.delenv("FIGPRIMES_JOBS")
        _, flagged = run_cli(base + ["--jobs", "4"], tmp_path, "flag.json")
        assert normalized(enved) == normalized(flagged)

    def test_bad_jobs_env_falls_back(self, tmp_path, monkeypatch):
        monkeypatch.setenv("FIGPRIMES_JOBS", "zero")
        code, env = run_json(["sum2", "--from", "2", "--to", "100"], tmp_path)
        assert code == 0
        assert env["verified"] is True

    def test_repeat_runs_identical(self, tmp_path):
        args = ["conj42", "--limit", "50000"]
        _, a = run_cli(args, tmp_path, "a.json")
        _, b = run_cli(args, tmp_path, "b.json")
        assert normalized(a) == normalized(b)


class TestRenderers:
    def test_text_format(self, tmp_path):
        code, path = run_cli(
            ["goldbach", "--from", "4", "--to", "1000", "--format", "text"],
            tmp_path,
        )
        assert code == 0
        text = path.read_text()
        assert text.startswith("task: goldbach-even\n")
        assert "verified: True" in text
        assert text.rstrip().splitlines()[-1].startswith("elapsed_ms:")

    def test_csv_fallback_without_table(self):
        env = build_envelope("demo", {}, range_=(1, 9), stats={"n": 3})
        payload = render_report(env, "csv", None).decode()
        assert payload.splitlines()[0] == "key,value"
        assert "stats.n,3" in payload

    def test_unknown_format_rejected(self):
        env = build_envelope("demo", {})
        with pytest.raises(ValueError):
            render_report(env, "yaml", None)
