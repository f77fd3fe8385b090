import json
import subprocess
import sys

import pytest

from higgscalc.cli import main

BASE = [sys.executable, "-m", "higgscalc.cli"]


def run_inproc(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


class TestDecompose:
    def test_plethysm_example(self, capsys):
        code, out = run_inproc(["decompose", "S^2(Omega1) (x) Omega1", "--dim", "2"], capsys)
        assert code == 0
        assert "S^3(Omega1)" in out
        assert "Omega1 (x) L^3" in out

    def test_wedge_wedge(self, capsys):
        code, out = run_inproc(
            ["decompose", "Wedge^2(Wedge^2(Omega1))", "--dim", "3"], capsys
        )
        assert code == 0
        assert "Omega1 (x) L^4" in out

    def test_trivial_line(self, capsys):
        code, out = run_inproc(["decompose", "L^0", "--dim", "2"], capsys)
        assert code == 0
        assert out.startswith("O\n")
        assert "rank 1" in out

    def test_json_format(self, capsys):
        code, out = run_inproc(
            ["decompose", "End0(Omega1)", "--dim", "2", "--format", "json"], capsys
        )
        payload = json.loads(out)
        assert payload["labels"] == [
            {"lambda": [2, 0], "lTwist": -3, "multiplicity": 1, "rankPerSummand": 3}
        ]

    def test_unitary(self, capsys):
        code, out = run_inproc(["decompose", "U(3)", "--dim", "2"], capsys)
        assert code == 0
        assert "rank 3" in out

    def test_det_example(self, capsys):
        code, out = run_inproc(
            ["decompose", "det(Omega1)", "--dim", "3", "--format", "json"], capsys
        )
        assert json.loads(out)["labels"] == [
            {"lambda": [0, 0, 0], "lTwist": 4, "multiplicity": 1, "rankPerSummand": 1}
        ]


class TestReduce:
    def test_e1_text(self, capsys):
        code, out = run_inproc(
            ["reduce", "E1", "--dim", "2", "--axioms", "nefBig,kazdanSmall"], capsys
        )
        assert code == 0
        assert "degree 1: S^2(Omega1) (x) L^-1" in out
        assert "non-vanishing" in out

    def test_s2e2_display(self, capsys):
        code, out = run_inproc(["reduce", "S^2(E2)", "--dim", "2"], capsys)
        assert code == 0
        assert "degree 0: S^2(Omega1) (x) L^-4" in out
        assert "degree 2: L^5" in out

    def test_named_strand(self, capsys):
        code, out = run_inproc(
            [
                "reduce",
                "named:Cprime",
                "--dim",
                "3",
                "--axioms",
                "saper,nefBig,fullRange",
            ],
            capsys,
        )
        assert code == 0
        assert "Gamma(1,2)(Omega1) (x) L^-6" in out

    def test_latex_output(self, capsys):
        code, out = run_inproc(["reduce", "E2", "--dim", "2", "--format", "latex"], capsys)
        assert code == 0
        assert r"\Omega^{1}_{\overline{X}}(\log D)" in out


class TestExitCodes:
    def test_parse_error(self):
        proc = subprocess.run(
            BASE + ["decompose", "S^2(Omega1"], capture_output=True, text=True
        )
        assert proc.returncode == 2
        assert "offset" in proc.stderr

    def test_eval_error(self):
        proc = subprocess.run(
            BASE + ["decompose", "Gamma(1,2)(E1)", "--dim", "3"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 3

    def test_resource_limit(self):
        proc = subprocess.run(
            BASE + ["reduce", "S^6(Wedge^2(V))", "--dim", "3", "--limit", "100"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 4

    def test_verify_ok(self):
        proc = subprocess.run(BASE + ["verify"], capture_output=True, text=True)
        assert proc.returncode == 0
        assert "summary:" in proc.stdout


class TestVanishingReport:
    def test_text(self, capsys):
        code, out = run_inproc(
            ["vanishing-report", "--max-n", "4", "--max-m", "5", "--axioms", "fullRange"],
            capsys,
        )
        assert code == 0
        assert "n=3 m=3: derived via (a,b)=(1, 1)" in out
        assert "n=3 m=4: asserted" in out

    def test_json(self, capsys):
        code, out = run_inproc(
            ["vanishing-report", "--max-n", "3", "--max-m", "4", "--format", "json"],
            capsys,
        )
        payload = json.loads(out)
        assert payload["entries"][0] == {
            "n": 3,
            "m": 3,
            "status": "derived",
            "witness": [1, 1],
        }


class TestDeterminism:
    def test_json_byte_identical_across_runs_and_threads(self, tmp_path):
        outputs = []
        for threads in ("1", "4", "1"):
            path = tmp_path / f"out-{len(outputs)}.json"
            proc = subprocess.run(
                BASE
                + [
                    "reduce",
                    "S^2(E1)",
                    "--dim",
                    "3",
                    "--format",
                    "json",
                    "--threads",
                    threads,
                    "--axioms",
                    "nefBig,saperRegular",
                    "--out",
                    str(path),
                ],
                capture_output=True,
            )
            assert proc.returncode == 0
            outputs.append(path.read_bytes())
        assert outputs[0] == outputs[1] == outputs[2]
