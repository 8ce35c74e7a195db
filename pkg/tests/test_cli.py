"""Command-line interface: output formats, files, and exit codes."""

import csv

import pytest

from plantedlab import parse_edge_list
from plantedlab.cli import run_command
from plantedlab.risklab import CSV_HEADER


def run(capsys, *argv):
    code = run_command(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestStats:
    def test_family_line(self, capsys):
        code, out, _ = run(capsys, "stats", "--family", "clique:4")
        assert code == 0
        assert out == "|v|=4 |e|=6 d_max=3 mu=3/2 tau=3 aut=24\n"

    def test_graph_file(self, capsys, tmp_path):
        path = tmp_path / "g.txt"
        code, _, _ = run(capsys, "gen", "--family", "star:3", "--out", str(path))
        assert code == 0
        capsys.readouterr()
        code, out, _ = run(capsys, "stats", "--graph", str(path))
        assert code == 0
        assert out == "|v|=4 |e|=3 d_max=3 mu=3/4 tau=1 aut=6\n"

    def test_budget_exit_code(self, capsys):
        code, _, err = run(capsys, "stats", "--family", "clique:50")
        assert code == 3
        assert "budget" in err


class TestGen:
    def test_stdout_edge_list(self, capsys):
        code, out, _ = run(capsys, "gen", "--family", "star:3")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "# star:3"
        assert lines[1] == "n 4"
        assert lines[2:] == ["0 1", "0 2", "0 3"]

    def test_file_round_trip(self, capsys, tmp_path):
        path = tmp_path / "stars.txt"
        code, _, _ = run(
            capsys, "gen", "--family", "unbalanced_stars:4", "--out", str(path)
        )
        assert code == 0
        g = parse_edge_list(path.read_text())
        assert g.num_edges == 6  # four 1-leaf stars plus one 2-leaf star

    def test_bad_family_exit_code(self, capsys):
        code, _, err = run(capsys, "gen", "--family", "clique")
        assert code == 2
        assert "error:" in err


class TestSampleAndDetect:
    def test_round_trip_scan(self, capsys, tmp_path):
        obs_path = tmp_path / "obs.txt"
        code, _, _ = run(
            capsys, "sample", "--family", "clique:3", "--n", "8",
            "--p", "0.95", "--q", "0.1", "--seed", "42", "--out", str(obs_path),
        )
        assert code == 0
        header = obs_path.read_text().splitlines()[0]
        assert header == "# planted n=8 p=0.95 q=0.1 family=clique:3 seed=42"
        capsys.readouterr()
        code, out, _ = run(
            capsys, "detect", "--observation", str(obs_path),
            "--detector", "scan", "--family", "clique:3",
            "--p", "0.95", "--q", "0.1",
        )
        assert code == 0
        assert out == "decision=1 statistic=2 threshold=1.575\n"

    def test_null_sample_comment(self, capsys, tmp_path):
        obs_path = tmp_path / "null.txt"
        code, _, _ = run(
            capsys, "sample", "--family", "clique:3", "--n", "8",
            "--p", "0.95", "--q", "0.1", "--seed", "7",
            "--hypothesis", "null", "--out", str(obs_path),
        )
        assert code == 0
        assert obs_path.read_text().startswith("# null n=8 q=0.1 seed=7\n")

    def test_lrt_prints_exact_rational(self, capsys, tmp_path):
        obs_path = tmp_path / "obs.txt"
        run(capsys, "sample", "--family", "clique:3", "--n", "6",
            "--p", "0.9", "--q", "0.2", "--seed", "1", "--out", str(obs_path))
        capsys.readouterr()
        code, out, _ = run(
            capsys, "detect", "--observation", str(obs_path),
            "--detector", "lrt", "--family", "clique:3",
            "--p", "0.9", "--q", "0.2",
        )
        assert code == 0
        assert out.startswith("decision=")
        assert "threshold=1" in out
        statistic = out.split()[1].removeprefix("statistic=")
        assert "/" in statistic  # exact rational, not a float

    def test_lrt_budget_exit(self, capsys, tmp_path):
        obs_path = tmp_path / "obs.txt"
        run(capsys, "sample", "--family", "clique:3", "--n", "12",
            "--p", "0.9", "--q", "0.2", "--seed", "1", "--out", str(obs_path))
        capsys.readouterr()
        code, _, err = run(
            capsys, "detect", "--observation", str(obs_path),
            "--detector", "lrt", "--family", "clique:3",
            "--p", "0.9", "--q", "0.2",
        )
        assert code == 3
        assert "limited to n" in err

    def test_missing_observation_flag(self, capsys):
        code, _, _ = run(capsys, "detect", "--detector", "scan",
                         "--family", "clique:3", "--p", "0.9", "--q", "0.2")
        assert code == 2


class TestMomentAndLdp:
    def test_exact(self, capsys):
        code, out, _ = run(
            capsys, "moment", "--family", "clique:3", "--n", "6",
            "--lambda-sq", "1", "--method", "exact",
        )
        assert code == 0
        assert out == "value=9/5 float=1.8 method=exact_subgraph_sum\n"

    def test_pairs_agrees(self, capsys):
        code, out, _ = run(
            capsys, "moment", "--family", "clique:3", "--n", "6",
            "--lambda-sq", "1", "--method", "pairs",
        )
        assert code == 0
        assert out == "value=9/5 float=1.8 method=exact_intersection_mgf\n"

    def test_mc_reports_std_error(self, capsys):
        code, out, _ = run(
            capsys, "moment", "--family", "clique:3", "--n", "6",
            "--lambda-sq", "1", "--method", "mc",
            "--trials", "5000", "--seed", "3",
        )
        assert code == 0
        assert "method=monte_carlo" in out
        assert "std_error=" in out

    def test_fraction_lambda_sq(self, capsys):
        code, out, _ = run(
            capsys, "moment", "--family", "clique:2", "--n", "3",
            "--lambda-sq", "1/2", "--method", "exact",
        )
        assert code == 0
        assert out.startswith("value=7/6 ")

    def test_ldp_degree_zero(self, capsys):
        code, out, _ = run(
            capsys, "ldp", "--family", "clique:3", "--n", "6",
            "--lambda-sq", "1", "--degree", "0",
        )
        assert code == 0
        assert out.startswith("value=1 ")

    def test_ldp_degree_one(self, capsys):
        code, out, _ = run(
            capsys, "ldp", "--family", "clique:3", "--n", "6",
            "--lambda-sq", "1", "--degree", "1",
        )
        assert code == 0
        assert out == "value=8/5 float=1.6 method=exact_subgraph_sum\n"


class TestRiskAndSweep:
    def test_risk_line(self, capsys):
        code, out, _ = run(
            capsys, "risk", "--detector", "count", "--family", "clique:8",
            "--n", "12", "--p", "0.95", "--q", "0.1",
            "--trials", "20", "--seed", "5",
        )
        assert code == 0
        assert out.startswith("type1=0 type2=0 risk=0 ci=")
        assert "trials=20 seed=5" in out

    def test_risk_csv(self, capsys, tmp_path):
        path = tmp_path / "risk.csv"
        code, _, _ = run(
            capsys, "risk", "--detector", "count", "--family", "clique:8",
            "--n", "12", "--p", "0.95", "--q", "0.1",
            "--trials", "10", "--seed", "5", "--out", str(path),
        )
        assert code == 0
        rows = list(csv.reader(path.open()))
        assert rows[0] == list(CSV_HEADER)
        assert len(rows) == 2
        assert rows[1][0] == "count" and rows[1][1] == "clique:8"

    def test_sweep_csv(self, capsys, tmp_path):
        path = tmp_path / "sweep.csv"
        code, _, _ = run(
            capsys, "sweep", "--detector", "count",
            "--family", "clique:3,star:3", "--n", "10,14",
            "--p", "0.9", "--q", "0.2",
            "--trials", "5", "--seed", "1", "--out", str(path),
        )
        assert code == 0
        rows = list(csv.reader(path.open()))
        assert rows[0] == list(CSV_HEADER)
        assert len(rows) == 5
        assert [r[1] for r in rows[1:]] == [
            "clique:3", "clique:3", "star:3", "star:3"
        ]
        assert [r[6] for r in rows[1:]] == ["1", "2", "3", "4"]


class TestClassify:
    def test_sparse(self, capsys):
        code, out, _ = run(
            capsys, "classify", "--regime", "sparse", "--alpha", "1",
            "--epsilon", "2", "--delta", "1", "--zeta", "1",
        )
        assert code == 0
        assert out == "stat_lower=0.666667 stat_upper=0.75 comp_lower=0.75\n"

    def test_superdense(self, capsys):
        code, out, _ = run(
            capsys, "classify", "--regime", "superdense", "--alpha", "1"
        )
        assert code == 0
        assert out == "beta_threshold=0.75\n"

    def test_dense(self, capsys):
        code, out, _ = run(
            capsys, "classify", "--regime", "dense", "--family", "clique:12",
            "--n", "250", "--p", "0.9", "--q", "0.2",
        )
        assert code == 0
        assert out.startswith("verdict=easy boundary=scan margin=")

    def test_critical(self, capsys):
        code, out, _ = run(
            capsys, "classify", "--regime", "critical",
            "--family", "clique:12", "--n", "1000", "--alpha", "0.5",
        )
        assert code == 0
        assert out == "verdict=easy boundary=trivial-scan margin=1.75\n"

    def test_sparse_missing_exponents(self, capsys):
        code, _, err = run(capsys, "classify", "--regime", "sparse")
        assert code == 2
        assert "error:" in err

    def test_dense_missing_signal(self, capsys):
        code, _, err = run(
            capsys, "classify", "--regime", "dense",
            "--family", "clique:12", "--n", "250",
        )
        assert code == 2


class TestDecompose:
    def test_table(self, capsys):
        code, out, _ = run(
            capsys, "decompose", "--family", "unbalanced_stars:16",
            "--parts", "3",
        )
        assert code == 0
        assert out.splitlines() == [
            "part=1 edges=8 tau=1 d_max=8 tau_x_dmax=8",
            "part=2 edges=32 tau=16 d_max=2 tau_x_dmax=32",
            "part=3 edges=0",
            "bound=160",
        ]

    def test_part_files(self, capsys, tmp_path):
        root = tmp_path / "parts.txt"
        code, _, _ = run(
            capsys, "decompose", "--family", "unbalanced_stars:16",
            "--parts", "2", "--out", str(root),
        )
        assert code == 0
        part1 = parse_edge_list((tmp_path / "parts-1.txt").read_text())
        part2 = parse_edge_list((tmp_path / "parts-2.txt").read_text())
        assert part1.num_edges + part2.num_edges == 40
        assert not (set(part1.edges) & set(part2.edges))


class TestIntersections:
    def test_histogram(self, capsys):
        code, out, _ = run(
            capsys, "intersections", "--family", "clique:3", "--n", "6",
            "--trials", "1000", "--seed", "2",
        )
        assert code == 0
        lines = out.splitlines()
        parsed = []
        for line in lines:
            fields = dict(kv.split("=") for kv in line.split())
            parsed.append((int(fields["edges"]), int(fields["trials"]),
                           float(fields["freq"])))
        assert [e for e, _, _ in parsed] == sorted(e for e, _, _ in parsed)
        assert sum(t for _, t, _ in parsed) == 1000
        assert sum(f for _, _, f in parsed) == pytest.approx(1.0, abs=1e-9)


class TestExitCodes:
    def test_unknown_subcommand(self, capsys):
        assert run(capsys, "nope")[0] == 2

    def test_unknown_flag(self, capsys):
        assert run(capsys, "stats", "--bogus")[0] == 2

    def test_no_arguments(self, capsys):
        assert run(capsys)[0] == 2
