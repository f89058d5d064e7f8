import json
import math

import jsonschema
import numpy as np
import pytest
from scipy import stats

from graphdive.bench import (
    REPORT_JSON_SCHEMA,
    Scenario,
    ScenarioKind,
    TimingReport,
    generate_er,
    parse_csv,
    report,
    run_scenario,
)
from graphdive.cli import main as cli_main


class TestGenerateEr:
    def test_exact_edge_count_500_1500(self):
        g = generate_er(500, 1500, seed=1)
        assert g.node_count == 500
        assert g.edge_count == 1500

    def test_seed_determinism(self):
        a = generate_er(100, 300, seed=7)
        b = generate_er(100, 300, seed=7)
        assert [(e.source, e.target) for e in a.edges] == [
            (e.source, e.target) for e in b.edges
        ]

    def test_triangle_exhaustion(self):
        g = generate_er(3, 3, seed=0)
        pairs = {tuple(sorted((e.source, e.target))) for e in g.edges}
        assert pairs == {("n0", "n1"), ("n0", "n2"), ("n1", "n2")}

    def test_m_out_of_range(self):
        with pytest.raises(ValueError):
            generate_er(4, 7, seed=0)
        with pytest.raises(ValueError):
            generate_er(4, -1, seed=0)

    @pytest.mark.parametrize("seed", range(20))
    def test_no_self_loops_or_duplicates_and_mean_degree(self, seed):
        n, m = 120, 360
        g = generate_er(n, m, seed)
        seen = set()
        for e in g.edges:
            assert e.source != e.target
            key = tuple(sorted((e.source, e.target)))
            assert key not in seen
            seen.add(key)
        assert g.degrees.sum() == 2 * m
        assert g.degrees.mean() == pytest.approx(2 * m / n)

    def test_degree_distribution_hypergeometric(self):
        # pooled over 20 seeds; each node's degree counts how many of its
        # n-1 incident pairs were among the m sampled from C(n, 2)
        n, m = 120, 360
        degrees = np.concatenate([generate_er(n, m, s).degrees for s in range(20)])
        total_pairs = n * (n - 1) // 2
        kmax = degrees.max()
        support = np.arange(0, kmax + 1)
        pmf = stats.hypergeom(total_pairs, n - 1, m).pmf(support)
        observed = np.bincount(degrees, minlength=kmax + 1).astype(float)
        expected = pmf * len(degrees)
        # pool the tail so expected counts stay well above 5
        cut = int(np.argmax(np.cumsum(expected) > len(degrees) - 25.0))
        obs = np.append(observed[:cut], observed[cut:].sum())
        exp = np.append(expected[:cut], len(degrees) - expected[:cut].sum())
        chi2, p = stats.chisquare(obs, exp)
        assert p > 1e-3, f"chi2={chi2:.1f} p={p:.2e}"


class TestScenarios:
    def test_smoke_single_node(self):
        g = generate_er(1, 0, seed=0)
        t = run_scenario(g, Scenario(ScenarioKind.OVERVIEW_STATIC, frames=12, seed=0), warmup=2)
        assert len(t.samples_ms) == 12
        assert all(math.isfinite(s) and s >= 0.0 for s in t.samples_ms)

    def test_all_kinds_run(self):
        g = generate_er(40, 120, seed=3)
        for kind in ScenarioKind:
            t = run_scenario(g, Scenario(kind, frames=8, seed=3), warmup=2)
            assert len(t.samples_ms) == 8
            assert t.n == 40 and t.m == 120

    def test_invalid_frames(self):
        with pytest.raises(ValueError):
            Scenario(ScenarioKind.OVERVIEW_STATIC, frames=0)

    def test_detail_scenario_picks_every_frame(self):
        from graphdive.bench import _ScenarioRunner

        g = generate_er(30, 90, seed=1)
        runner = _ScenarioRunner(g, Scenario(ScenarioKind.DETAIL_NAVIGATION, 25, 1))
        for f in range(25):
            runner.step(f)
        assert runner.picks == 25


class TestReport:
    def make_timing(self):
        return TimingReport(scenario="overview", n=3, m=2, samples_ms=[1.0, 2.0, 3.0])

    def test_aggregates_exact(self):
        t = self.make_timing()
        assert t.mean_ms == pytest.approx(2.0)
        assert t.fps_equivalent == pytest.approx(500.0)
        assert t.p95_ms == pytest.approx(np.percentile([1.0, 2.0, 3.0], 95))

    def test_csv_round_trip(self):
        t = self.make_timing()
        text = report(t, "csv")
        back = parse_csv(text)
        assert back.samples_ms == t.samples_ms
        assert (back.scenario, back.n, back.m) == (t.scenario, t.n, t.m)

    def test_csv_shape(self):
        lines = report(self.make_timing(), "csv").strip().splitlines()
        assert lines[0] == "scenario,n,m,frame,ms"
        assert lines[1].startswith("overview,3,2,0,")
        assert sum(1 for l in lines if l.startswith("# aggregate,")) == 3

    def test_json_validates_against_schema(self):
        doc = json.loads(report(self.make_timing(), "json"))
        jsonschema.validate(doc, REPORT_JSON_SCHEMA)
        assert doc["aggregates"]["mean_ms"] == pytest.approx(2.0)

    def test_empty_report_rejected(self):
        with pytest.raises(ValueError):
            report(TimingReport("overview", 0, 0, []), "csv")

    def test_unknown_format_rejected(self):
        with pytest.raises(ValueError):
            report(self.make_timing(), "xml")


class TestCli:
    def test_bench_csv_stdout(self, capsys):
        assert cli_main([
            "bench", "--nodes", "20", "--edges", "40", "--frames", "5",
            "--scenario", "overview", "--seed", "3",
        ]) == 0
        out = capsys.readouterr().out
        assert out.startswith("scenario,n,m,frame,ms")
        assert parse_csv(out).n == 20

    def test_bench_degree_convention(self, tmp_path, capsys):
        out = tmp_path / "r.json"
        assert cli_main([
            "bench", "--nodes", "30", "--degree", "3", "--frames", "4",
            "--format", "json", "--out", str(out),
        ]) == 0
        doc = json.loads(out.read_text())
        jsonschema.validate(doc, REPORT_JSON_SCHEMA)
        assert doc["m"] == 90  # m = degree * nodes
        assert doc["frames"] == 4

    def test_bench_params_file(self, tmp_path, capsys):
        cfg = tmp_path / "params.json"
        cfg.write_text('{"theta": 0.5, "alpha_min": 0.1}')
        assert cli_main([
            "bench", "--nodes", "15", "--edges", "20", "--frames", "3",
            "--params", str(cfg),
        ]) == 0

    def test_bench_bad_params_key(self, tmp_path):
        cfg = tmp_path / "params.json"
        cfg.write_text('{"nope": 1}')
        with pytest.raises(SystemExit):
            cli_main([
                "bench", "--nodes", "15", "--edges", "20", "--frames", "3",
                "--params", str(cfg),
            ])

    def test_layout_subcommand(self, tmp_path, capsys):
        graph_file = tmp_path / "g.json"
        graph_file.write_text(json.dumps({
            "frame_count": 1,
            "nodes": [{"id": "a"}, {"id": "b"}],
            "links": [{"source": "a", "target": "b"}],
        }))
        out = tmp_path / "positions.json"
        assert cli_main(["layout", "--in", str(graph_file), "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert set(doc["positions"]) == {"a", "b"}
        assert len(doc["positions"]["a"]) == 3
        assert doc["ticks"] == 300

    def test_validate_ok(self, tmp_path, capsys):
        f = tmp_path / "g.json"
        f.write_text('{"frame_count":1,"nodes":[{"id":"a"}],"links":[]}')
        assert cli_main(["validate", "--in", str(f)]) == 0
        assert "OK: 1 nodes" in capsys.readouterr().out

    def test_validate_bad(self, tmp_path, capsys):
        f = tmp_path / "g.json"
        f.write_text('{"nodes":[{"id":"a"}],"links":[{"source":"a","target":"X"}]}')
        assert cli_main(["validate", "--in", str(f)]) == 1
        assert "INVALID" in capsys.readouterr().err
