import json
import subprocess
import sys

import pytest

from fibra.cli import main, run
from fibra.io import load
from tests.cli_corpus import COMMANDS, FIXTURES


def report(doc, *argv):
    status, rep = run(load(FIXTURES / doc), list(argv))
    return status, rep["outcome"]


def test_classify_diagonal():
    assert report("fibered.json", "classify", "diag") == (0, {"type": "value", "value": "equivalence,ordering"})
    assert report("fibered.json", "classify", "le")[1]["value"] == "ordering"
    assert report("fibered.json", "classify", "parity")[1]["value"] == "equivalence"


def test_non_transitive_counterexample():
    status, out = report("fibered.json", "check", "step", "--property", "transitive")
    assert status == 0 and out["value"] is False
    assert out["counterexample"] == {"point": "m0", "elements": ["a", "b", "a"]}


def test_compose_single_pair_fixtures():
    status, out = report("fibered.json", "compose", "h", "f")
    assert status == 0
    assert out["value"]["base_pairs"] == [["m", "p"]]
    assert out["value"]["fibers"] == [[["m", "p"], [["a", "c"]]]]


def test_domain_errors_exit_two():
    status, out = report("fibered.json", "image", "singular", "S")
    assert status == 2 and out["error"] == "SingularFiber"
    status, out = report("fibered.json", "quotient", "E", "step")
    assert status == 2 and out["error"] == "NotAnEquivalence"


def test_image_of_uniform_subbundle():
    status, out = report("fibered.json", "image", "uniform", "S")
    assert status == 0
    assert out["value"]["fibers"] == {"n0": ["b0"], "n1": ["b0"]}


def test_continuity_report():
    _, out = report("topology.json", "continuity", "phi", "sierpinski", "discrete2", "--on", "lower")
    # the only open set around 0 is the whole space, whose image {a, b} misses the open set {a}
    assert out["value"] == {"set": ["0"], "continuous_on": False, "image_is_limit": False}
    _, out = report("topology.json", "continuity", "phi", "sierpinski", "discrete2", "--on", "upper")
    assert out["value"] == {"set": ["1"], "continuous_on": True, "image_is_limit": True}
    _, out = report("topology.json", "check", "hom", "--property", "homomorphism")
    assert out["value"] is True
    _, out = report("topology.json", "check", "nothom", "--property", "homomorphism")
    assert out["value"] is False


def test_orbits_and_tower():
    _, out = report("groups.json", "orbits", "fixed")
    assert out["value"]["degenerate"] == [["s", "o"]]
    assert out["value"]["free"] is False
    _, out = report("groups.json", "tower", "two")
    assert out["value"] == {"height": 2, "valid": True, "sizes": [3, 2]}


def test_usage_errors_exit_one(capsys):
    path = str(FIXTURES / "fibered.json")
    assert main([path, "classify", "nope"]) == 1
    assert main([path, "classify", "f"]) == 1
    assert main([path, "check", "diag", "--property", "free"]) == 1
    with pytest.raises(SystemExit) as exc:
        main([path, "bogus"])
    assert exc.value.code == 1
    assert main([str(FIXTURES / "missing.json"), "emit"]) == 1


def test_bad_document_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"reduced": {"r": {"source": "X", "target": "X", "fibers": {}}}}')
    assert main([str(bad), "emit"]) == 2
    out = json.loads(capsys.readouterr().out)
    assert out["outcome"]["error"] == "InvariantViolation"


def test_emit_reproduces_fixture(capsys):
    for doc in COMMANDS:
        path = FIXTURES / doc
        assert main([str(path), "emit"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["outcome"]["value"] == json.loads(path.read_text())


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fibra", str(FIXTURES / "fibered.json"), "classify", "diag"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["outcome"]["value"] == "equivalence,ordering"

