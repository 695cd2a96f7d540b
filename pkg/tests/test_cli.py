from __future__ import annotations

import argparse
import json
import subprocess
import sys
from pathlib import Path

import pytest

import settings
from cli_common import add_common_arguments, build_config, run_command
from errors import InvariantViolation

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"


def run(script: str, *args: str) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, str(ROOT / script), *args],
        cwd=ROOT,
        capture_output=True,
        text=True,
        timeout=600,
    )


class TestDescribe:
    def test_pentagon(self):
        result = run("describe_complex.py", str(CORPUS / "pentagon.json"))
        assert result.returncode == 0
        assert "flag: yes, chordal: no, f=(5,5), h=(1,3,1)" in result.stdout
        assert "missing faces: {1,3} {1,4} {2,4} {2,5} {3,5}" in result.stdout
        assert result.stderr.startswith("OK:")

    def test_json_output_round_trips(self):
        result = run("describe_complex.py", str(CORPUS / "rp2_6.txt"), "--format", "json")
        payload = json.loads(result.stdout)
        assert payload["flag"] is False
        assert payload["complex"]["m"] == 6
        assert len(payload["complex"]["maximal_faces"]) == 10

    def test_parse_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"m": 3, "maximal_faces": [[1, 2]')
        result = run("describe_complex.py", str(bad))
        assert result.returncode == 2
        assert result.stderr.startswith("ERROR:")
        assert str(bad) in result.stderr

    def test_binary_file_is_a_parse_error(self, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_bytes(b"\xff\xfe m=3\n")
        result = run("describe_complex.py", str(bad))
        assert result.returncode == 2
        assert result.stderr.startswith("ERROR:")
        assert "UTF-8" in result.stderr


class TestBetti:
    def test_pentagon_with_koszul_check(self):
        result = run("compute_betti.py", str(CORPUS / "pentagon.json"), "--ring", "Q", "--verify-koszul")
        assert result.returncode == 0
        assert "b=(1,0,0,5,5,0,0,1)" in result.stdout
        assert "koszul: agree" in result.stdout

    def test_rp2_torsion(self):
        result = run("compute_betti.py", str(CORPUS / "rp2_6.txt"), "--ring", "Z")
        assert result.returncode == 0
        assert "H^9 = Z/2" in result.stdout
        assert "H^6 = Z^15" in result.stdout

    def test_size_bound(self):
        result = run("compute_betti.py", str(CORPUS / "pentagon.json"), "--max-m", "4")
        assert result.returncode == 3
        assert "ZK_MAX_M" in result.stderr

    def test_bad_ring_is_a_usage_error(self):
        result = run("compute_betti.py", str(CORPUS / "pentagon.json"), "--ring", "Fp:4")
        assert result.returncode == 2
        assert "Fp needs a prime" in result.stderr

    def test_workers_do_not_change_output(self):
        outputs = {
            run("compute_betti.py", str(CORPUS / "octahedron.json"), "--ring", "Z", "--format", "json", "--workers", w).stdout
            for w in ("1", "3")
        }
        assert len(outputs) == 1

    def test_cache_is_reused(self, tmp_path):
        args = [str(CORPUS / "points_4.txt"), "--format", "json", "--cache-dir", str(tmp_path)]
        first = run("compute_betti.py", *args)
        second = run("compute_betti.py", *args)
        assert first.stdout == second.stdout
        assert len(list(tmp_path.rglob("*.json"))) == 1


class TestClassify:
    def test_pentagon(self):
        result = run("classify_complex.py", str(CORPUS / "pentagon.json"))
        assert result.returncode == 0
        assert "Golod: no; minimally non-Golod: yes" in result.stdout
        assert "wedge: none (one-skeleton not chordal)" in result.stdout
        assert "connected sum: (S³×S⁴)^#5" in result.stdout

    def test_points(self):
        result = run("classify_complex.py", str(CORPUS / "points_3.txt"))
        assert "Golod: yes; minimally non-Golod: no" in result.stdout
        assert "wedge: S³×3, S⁴×2" in result.stdout
        assert "gluing order: {1} {2} {3}" in result.stdout

    def test_non_flag(self):
        result = run("classify_complex.py", str(CORPUS / "rp2_6.txt"))
        assert result.returncode == 0
        assert "Golod: yes (product criterion)" in result.stdout
        assert "wedge: not concluded (non-flag)" in result.stdout

    def test_needs_a_field(self):
        result = run("classify_complex.py", str(CORPUS / "pentagon.json"), "--ring", "Z")
        assert result.returncode == 2


class TestLoops:
    def test_pentagon(self):
        result = run("compute_loops.py", str(CORPUS / "pentagon.json"))
        assert result.returncode == 0
        assert "loop series: 1/(1-5t^2-5t^3+t^5)" in result.stdout
        assert "Golod identity over Q: fails (first residual at t^5)" in result.stdout
        assert "degree 3: " in result.stdout

    def test_path(self):
        result = run("compute_loops.py", str(CORPUS / "path_3.txt"), "--truncation", "4")
        assert "loop series: 1/(1-t^2)" in result.stdout
        assert "expansion to t^4: 1, 0, 1, 0, 1" in result.stdout
        assert "Golod identity over Q: holds" in result.stdout

    def test_non_flag_refused(self):
        result = run("compute_loops.py", str(CORPUS / "triangle_boundary.txt"))
        assert result.returncode == 4
        assert result.stderr.startswith("ERROR:")
        assert "{1,2,3}" in result.stderr

    @pytest.mark.parametrize("option, value", [("--truncation", "-1"), ("--workers", "0"), ("--max-m", "0")])
    def test_bad_numbers_are_usage_errors(self, option, value):
        result = run("compute_loops.py", str(CORPUS / "pentagon.json"), option, value)
        assert result.returncode == 2
        assert "Traceback" not in result.stderr
        assert option in result.stderr


class TestCensus:
    def test_flag_census(self):
        result = run("run_census.py", "--max-m", "4", "--flag-only")
        assert result.returncode == 0
        rows = [json.loads(line) for line in result.stdout.splitlines()]
        assert len(rows) == 1 + 2 + 8 + 64
        for row in rows:
            assert row["golod"]["chordal"] == all(row["golod"]["golod"].values())
        assert sum(row["minimally_non_golod"] for row in rows) == 3

    def test_all_complexes_small(self, tmp_path):
        out = tmp_path / "census.jsonl"
        result = run("run_census.py", "--max-m", "3", "--output", str(out))
        assert result.returncode == 0
        rows = [json.loads(line) for line in out.read_text().splitlines()]
        assert len(rows) == 1 + 2 + 9
        assert all("integral" in row for row in rows)
        assert "OK: census wrote 12 rows" in result.stderr

    @pytest.mark.parametrize("flag", [[], ["--flag-only"]])
    def test_bounds(self, flag):
        result = run("run_census.py", "--max-m", "12", *flag)
        assert result.returncode == 3


class TestRunCommand:
    def test_invariant_violation_is_reported(self, capsys):
        def broken():
            raise InvariantViolation("pentagon: sphere of dimension 9 exceeds m+1")

        with pytest.raises(SystemExit) as exit_info:
            run_command(broken)
        assert exit_info.value.code == 1
        assert capsys.readouterr().err.startswith("ERROR: invariant violated: pentagon")

    def test_max_m_option_leaves_settings_alone(self):
        parser = argparse.ArgumentParser()
        add_common_arguments(parser)
        before = settings.MAX_M
        config = build_config(parser.parse_args(["k.txt", "--max-m", "5"]), "betti")
        assert config.max_m == 5
        assert settings.MAX_M == before
