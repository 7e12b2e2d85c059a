import json

import pytest

from logcavity.cli import RunReport, _emit, main
from logcavity.zoo import k23_graph, ratio_two_witness_poset


@pytest.fixture
def k23_file(tmp_path):
    path = tmp_path / "k23.json"
    path.write_text(
        json.dumps({"type": "graphic", "graph": k23_graph().to_json()})
    )
    return str(path)


@pytest.fixture
def witness_file(tmp_path):
    path = tmp_path / "witness.json"
    path.write_text(json.dumps(ratio_two_witness_poset().to_json()))
    return str(path)


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


class TestSelftest:
    def test_exit_zero(self, capsys):
        code, report = run_json(capsys, ["selftest"])
        assert code == 0
        assert all(report["results"]["checks"].values())


class TestHodgeCommand:
    def test_k23_pairing(self, capsys, k23_file):
        code, report = run_json(
            capsys, ["hodge", "--matroid", k23_file, "--k", "2"]
        )
        assert code == 0
        assert report["results"]["mobius_pairing"] == {
            "flats": 15,
            "inertia": [6, 6, 3],
        }

    def test_point_flag(self, capsys, k23_file):
        code, report = run_json(
            capsys,
            ["hodge", "--matroid", k23_file, "--k", "1", "--point", "0,1,1,1,1,1"],
        )
        assert code == 0
        assert report["results"]["hrr"] is True  # edge 0 is not a bridge


class TestKahnSaksCommand:
    def test_witness(self, capsys, witness_file):
        code, report = run_json(capsys, ["kahnsaks", "--poset", witness_file])
        assert code == 0
        assert report["results"]["N"][:3] == [1, 2, 4]
        assert report["results"]["per_k"]["2"]["ratio"] == 2


class TestStanleyCommand:
    def test_report(self, capsys, k23_file):
        code, report = run_json(
            capsys, ["stanley", "--matroid", k23_file, "--R", "0,1,2"]
        )
        assert code == 0
        assert report["results"]["ultra_log_concave"] is True
        assert all(
            v == "0" for v in report["results"]["cross_check_deltas"].values()
        )


class TestErrors:
    def test_malformed_json(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{ not json")
        code = main(["matroid", "--matroid", str(bad)])
        assert code == 1
        assert "JSON" in capsys.readouterr().err

    def test_missing_file(self, capsys):
        assert main(["matroid", "--matroid", "/nonexistent.json"]) == 1

    def test_unknown_element_in_flag(self, capsys, k23_file):
        assert main(["stanley", "--matroid", k23_file, "--R", "99"]) == 1


class TestReportContract:
    def test_deterministic_output(self, capsys, k23_file):
        _, first = run_json(capsys, ["hodge", "--matroid", k23_file, "--k", "2"])
        _, second = run_json(capsys, ["hodge", "--matroid", k23_file, "--k", "2"])
        assert first == second

    def test_violation_exit_code(self, capsys):
        report = RunReport("demo", {}, {}, violations=["boom"])

        class Args:
            format = "json"
            out = None

        assert _emit(report, Args()) == 2
        payload = json.loads(capsys.readouterr().out)
        assert payload["violations"] == ["boom"]

    def test_out_file_and_csv(self, tmp_path, k23_file, capsys):
        out = tmp_path / "r.csv"
        code = main(
            [
                "matroid",
                "--matroid",
                k23_file,
                "--out",
                str(out),
                "--format",
                "csv",
            ]
        )
        assert code == 0
        text = out.read_text()
        assert text.startswith("key,value")

    def test_probe_findings(self, capsys, tmp_path):
        from logcavity.zoo import k4_graph

        path = tmp_path / "k4.json"
        path.write_text(
            json.dumps({"type": "graphic", "graph": k4_graph().to_json()})
        )
        code, report = run_json(
            capsys, ["probe", "--matroid", str(path), "--e", "0", "--jobs", "2"]
        )
        assert code == 0  # findings are not violations
        assert report["findings"]
        assert report["findings"][0]["kind"] == (
            "annihilator-containment-counterexample"
        )
