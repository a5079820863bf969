import json

import numpy as np
import pytest

from hopfix.cli import main
from hopfix.models import write_pattern_file
from hopfix import PatternSet


def read_lines(path):
    with open(path) as fh:
        return fh.read().splitlines()


class TestThresholds:
    def test_values_and_schema(self, tmp_path):
        out = tmp_path / "th.csv"
        assert main(["thresholds", "--n-list", "3,6,10", "--out", str(out)]) == 0
        lines = read_lines(out)
        assert lines[0].startswith("# schema=hopfix.thresholds.v1 manifest_sha256=")
        assert lines[1] == "n,m_n_1"
        vals = {int(r.split(",")[0]): float(r.split(",")[1]) for r in lines[2:]}
        assert vals[3] == pytest.approx(2.746, abs=1e-3)
        assert vals[6] == pytest.approx(3.836, abs=1e-3)
        assert (tmp_path / "th.csv.manifest.json").exists()


class TestSimplexCatalog:
    def test_counts(self, tmp_path):
        out = tmp_path / "cat.jsonl"
        assert main(["simplex-catalog", "--n", "4", "--beta", "5", "--out", str(out)]) == 0
        lines = [json.loads(l) for l in read_lines(out)]
        summary = lines[-1]
        assert summary["total"] == 15 and summary["stable"] == 4

    def test_middle_regime(self, tmp_path):
        out = tmp_path / "cat6.jsonl"
        assert main(["simplex-catalog", "--n", "6", "--beta", "4", "--out", str(out)]) == 0
        summary = json.loads(read_lines(out)[-1])
        assert summary["total"] == 13 and summary["stable"] == 7

    def test_bifurcation_beta_exits_2(self, tmp_path):
        rc = main(["simplex-catalog", "--n", "4", "--beta", "4",
                   "--out", str(tmp_path / "x.jsonl")])
        assert rc == 2


class TestFixpoints:
    def test_demo_summary(self, tmp_path):
        out = tmp_path / "fp.jsonl"
        assert main(["fixpoints", "--demo", "--beta", "15", "--out", str(out)]) == 0
        summary = json.loads(read_lines(out)[-1])
        assert summary["total"] == 9
        assert summary["by_classification"] == {"stable": 4, "unstable": 5}

    def test_identity_matches_catalog_count(self, tmp_path):
        out = tmp_path / "fpi.jsonl"
        assert main(["fixpoints", "--identity", "4", "--beta", "5", "--out", str(out)]) == 0
        summary = json.loads(read_lines(out)[-1])
        assert summary["total"] == 15

    def test_low_beta_single_stable(self, tmp_path):
        out = tmp_path / "fpl.jsonl"
        assert main(["fixpoints", "--demo", "--beta", "0.5", "--out", str(out)]) == 0
        summary = json.loads(read_lines(out)[-1])
        assert summary["total"] == 1
        assert summary["by_classification"] == {"stable": 1}

    def test_pattern_file_roundtrip(self, tmp_path, rng):
        g = rng.standard_normal((3, 5))
        w = PatternSet(g / np.linalg.norm(g, axis=0))
        pfile = tmp_path / "pats.txt"
        write_pattern_file(pfile, w)
        out = tmp_path / "fpf.jsonl"
        assert main(["fixpoints", "--patterns", str(pfile), "--beta", "3",
                     "--out", str(out)]) == 0

    def test_missing_source_exits_2(self, tmp_path):
        assert main(["fixpoints", "--beta", "2", "--out", str(tmp_path / "x")]) == 2


class TestDynamics:
    def test_demo_run(self, tmp_path):
        out = tmp_path / "dyn.jsonl"
        assert main([
            "dynamics", "--demo", "--beta", "15", "--points", "40",
            "--iters", "0,1,2,4,7", "--out", str(out), "--seed", "5",
        ]) == 0
        rows = [json.loads(l) for l in read_lines(out)[1:]]
        by_iter = {}
        for r in rows:
            by_iter.setdefault(r["iteration"], []).append(r)
        assert len(by_iter[0]) == 40 and len(by_iter["final"]) == 40
        # iteration-0 snapshot is the raw uniform sample
        rng = np.random.default_rng(5)
        X = rng.uniform(-1.0, 1.0, (40, 2))
        first = sorted(by_iter[0], key=lambda r: r["point_id"])
        np.testing.assert_allclose(
            np.array([[r["x"], r["y"]] for r in first]), X, atol=1e-15
        )
        # snapshots at iteration >= 1 lie in the hull (|x|+|y| <= 1)
        for it in (1, 2, 4, 7):
            pts = np.array([[r["x"], r["y"]] for r in by_iter[it]])
            assert np.max(np.abs(pts).sum(axis=1)) <= 1.0 + 1e-9
        # every basin is one of the stable records
        recs = [json.loads(l) for l in read_lines(str(out) + ".fixedpoints.jsonl")[1:]]
        assert all(r["classification"] == "stable" for r in recs)
        ids = {r["record_id"] for r in recs}
        assert {r["basin_record"] for r in by_iter["final"]} <= ids

    def test_requires_2d(self, tmp_path):
        pfile = tmp_path / "p3.txt"
        write_pattern_file(pfile, PatternSet(np.eye(3)))
        assert main(["dynamics", "--patterns", str(pfile), "--beta", "5",
                     "--out", str(tmp_path / "y")]) == 2


class TestDeterminism:
    def test_identical_manifest_identical_bytes(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["cips-table", "--n-list", "8", "--kappa-list", "2", "--face-sizes",
                "3", "--faces", "4", "--samples", "300", "--seed", "7"]
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_threads_do_not_change_bytes(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        base = ["cips-table", "--n-list", "8", "--kappa-list", "2", "--face-sizes",
                "3", "--faces", "4", "--samples", "300", "--seed", "7"]
        assert main(base + ["--out", str(a), "--threads", "1"]) == 0
        assert main(base + ["--out", str(b), "--threads", "4"]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_manifest_hash_embedded(self, tmp_path):
        out = tmp_path / "t.csv"
        main(["thresholds", "--n-list", "3", "--out", str(out)])
        manifest = json.loads((tmp_path / "t.csv.manifest.json").read_text())
        header = read_lines(out)[0]
        assert manifest["manifest_sha256"] in header
        assert manifest["subcommand"] == "thresholds"
        assert "wall_time_s" in manifest


class TestBetaSearchCli:
    def test_small_run_columns(self, tmp_path):
        out = tmp_path / "bs.csv"
        assert main([
            "beta-search", "--n", "8", "--kappa", "2", "--face-sizes", "2",
            "--faces", "2", "--samples", "400", "--beta-grid", "2:30:2",
            "--lambda-grid", "0.8,0.9", "--seed", "3", "--out", str(out),
        ]) == 0
        lines = read_lines(out)
        assert lines[1] == "face_id,k,beta_empirical,lambda_used,beta_lemma3"
        for row in lines[2:]:
            cells = row.split(",")
            if cells[2] != "none" and cells[4] != "none":
                assert float(cells[4]) >= float(cells[2])
