import json
from importlib import resources

import pytest

from burnside_kit.cli import main, parse_target
from burnside_kit.suite import SELECTIONS, SuiteError, run_suite

SAMPLES = resources.files("burnside_kit").joinpath("data/samples")


def sample(name):
    return str(SAMPLES.joinpath(name))


# --- run_suite ------------------------------------------------------------------


@pytest.mark.parametrize("selection", ["adjunctions", "duals"])
def test_report_schema(selection):
    rep = run_suite(selection)
    assert rep["schema"] == "report/v1" and rep["ok"]
    names = [c["name"] for c in rep["checks"]]
    assert names == sorted(names)
    assert rep["passed"] == len(names) and rep["failed"] == 0
    assert all({"name", "statement", "ok"} <= set(c) for c in rep["checks"])


def test_freeness_with_short_words():
    rep = run_suite("freeness", bound=2, length=2)
    assert rep["ok"] and rep["checks"]


def test_several_selections_at_once():
    rep = run_suite(["adjunctions", "duals"])
    assert set(rep["seconds"]) == {"adjunctions", "duals"}


@pytest.mark.parametrize("kwargs", [{"selection": "bogus"}, {"selection": "duals", "bound": 1},
                                    {"selection": "freeness", "length": 0}])
def test_suite_usage_errors(kwargs):
    with pytest.raises(SuiteError):
        run_suite(**kwargs)


def test_every_selection_is_listed():
    assert "pr22" in SELECTIONS and "thm310" in SELECTIONS


# --- targets --------------------------------------------------------------------


@pytest.mark.parametrize("target", ["spine:3", "horn:3,S=0+2", "left-horn:3", "marked-horn:2",
                                    "J:3", "pr11:i1", "pr11:2", "marbled-spine:2"])
def test_targets_build_verified_certificates(target):
    from burnside_kit.certificates import verify_certificate

    c, spec = parse_target(target)
    assert verify_certificate(c, spec).ok


# --- the command line ------------------------------------------------------------


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "adjunctions")
    assert code == 0 and "36 passed, 0 failed" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "duals", "--format", "json")
    assert code == 0 and json.loads(out)["schema"] == "report/v1"


@pytest.mark.parametrize("argv", [["verify", "bogus"], ["verify", "duals", "--bound", "1"],
                                  ["certify", "--target", "nonsense:3"], ["certify"],
                                  ["frobnicate"], ["twist", "--in", "/no/such/file.json"],
                                  ["check-fib", "--bound", "-1", "--category", "poset2.1"]])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2


@pytest.mark.parametrize("name,kind,expected", [
    ("poset2.1", "inner", 0), ("poset2.1", "left", 1), ("Z/2", "left", 0),
    ("Z/2", "trivial", 1), ("Iso", "trivial", 0),
])
def test_check_fib_verdicts(capsys, name, kind, expected):
    code, out, _ = run(capsys, "check-fib", "--category", name, "--kind", kind, "--bound", "3",
                       "--format", "json")
    assert code == expected
    assert json.loads(out)["checked"] > 0


@pytest.mark.parametrize("argv", [
    ["twist", "--in", sample("d1.sset.json"), "--bound", "2"],
    ["kan", "--in", sample("d1.sset.json"), "--side", "left"],
    ["kan", "--in", sample("d1.sset.json"), "--side", "right", "--bound", "2"],
    ["aeff", "--category", "poset2.1", "--bound", "2"],
    ["aeff", "--in", sample("p12.cat.json"), "--bound", "1", "--triple", "minimal"],
    ["dualize", "--diagram", "chain-top", "--bound", "2"],
    ["dualize", "--in", sample("chain-top.diagram.json"), "--variance", "co", "--bound", "2"],
    ["eff-fib", "--diagram", "const-a", "--bound", "2", "--check"],
    ["F", "--in", sample("d2.marked.json")],
    ["lift", "--problem", sample("inner-horn.lift.json")],
    ["check-fib", "--category", "poset3.2", "--bound", "3"],
    ["check-fib", "--category", "Z/2", "--map", "twisted", "--kind", "left", "--bound", "3"],
    ["certify", "--target", "pr11:i1"],
], ids=lambda a: " ".join(a[:2]))
def test_subcommands_succeed(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    assert out.strip()


def test_json_output_is_parseable(capsys):
    code, out, _ = run(capsys, "aeff", "--category", "poset2.1", "--bound", "1", "--format", "json")
    assert code == 0
    assert isinstance(json.loads(out), dict)


def test_certificate_file_round_trip(tmp_path, capsys):
    path = tmp_path / "cert.json"
    code, _, _ = run(capsys, "certify", "--target", "left-horn:3", "--out", str(path))
    assert code == 0 and json.loads(path.read_text())["schema"] == "cert/v1"
    code, out, _ = run(capsys, "certify", "--in", str(path))
    assert code == 0 and "verified" in out


def test_tampered_certificate_file_exits_1(tmp_path, capsys):
    path = tmp_path / "cert.json"
    run(capsys, "certify", "--target", "left-horn:3", "--out", str(path))
    data = json.loads(path.read_text())
    data["root"]["u"], data["root"]["vu"] = data["root"]["vu"], data["root"]["u"]
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "certify", "--in", str(path))
    assert code == 1 and "rejected" in out
