import json
import subprocess
import sys

import pytest

from goldman.cli import main


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bracket_power_example(capsys):
    code, out, _ = run(capsys, "bracket", "--x", "aB", "--y", "aB", "--m", "2")
    assert code == 0
    terms = {t["word"]: t["coeff"] for t in json.loads(out)["terms"]}
    assert terms == {"aaBaBB": "-2/1", "aaBBaB": "2/1"}


def test_bracket_generators_commute(capsys):
    code, out, _ = run(capsys, "bracket", "--x", "a", "--y", "b")
    assert code == 0 and json.loads(out)["terms"] == []


def test_parse_error(capsys):
    code, _, err = run(capsys, "bracket", "--x", "a!", "--y", "b")
    assert code == 2 and "unexpected character" in err


def test_separable(capsys):
    code, out, _ = run(capsys, "separable", "--x", "aB", "--y", "aab")
    v = json.loads(out)
    assert code == 0 and v["separable"] is False and v["intersection_count"] == 2
    code, out, _ = run(capsys, "separable", "--x", "aB", "--y", "ab")
    assert json.loads(out)["separable"] is True


def test_center(capsys):
    code, out, _ = run(capsys, "center", "--combo", "2*aaa, -1*ab")
    assert code == 0 and json.loads(out)["central_candidate"] is True


def test_zigzag_writes_svg(capsys, tmp_path):
    svg = tmp_path / "out.svg"
    code, out, _ = run(capsys, "zigzag", "--x", "aB", "--y", "aab", "--u", "0.4", "--svg", str(svg))
    assert code == 0
    v = json.loads(out)
    assert v["case"] == "VIII" and v["segment_crossing"] is True
    assert svg.read_text().startswith("<?xml")


def test_zigzag_disjoint_is_user_error(capsys):
    code, _, err = run(capsys, "zigzag", "--x", "aB", "--y", "ab", "--u", "0.4")
    assert code == 2 and "do not cross" in err


def test_zigzag_bad_u(capsys):
    code, _, err = run(capsys, "zigzag", "--x", "aB", "--y", "aab", "--u", "50")
    assert code == 2 and "--u" in err


def test_config_files(capsys, tmp_path):
    toml = tmp_path / "c.toml"
    toml.write_text('traces = [-3.0, -4.0, -5.0]\nradius = 10\nformat = "text"\n')
    code, out, _ = run(capsys, "separable", "--config", str(toml), "--x", "aB", "--y", "aab")
    assert code == 0 and "separable: False" in out
    js = tmp_path / "c.json"
    js.write_text('{"radius": 3}')
    code, _, err = run(capsys, "separable", "--config", str(js), "--x", "aB", "--y", "aab")
    assert code == 2 and "radius" in err
    code, _, err = run(capsys, "separable", "--config", str(tmp_path / "none.toml"), "--x", "a", "--y", "b")
    assert code == 2


def test_bad_traces_and_usage(capsys):
    code, _, err = run(capsys, "separable", "--traces", "-1", "-3", "-3", "--x", "aB", "--y", "aab")
    assert code == 2 and "below -2" in err
    code, _, _ = run(capsys, "bracket", "--x", "aB")
    assert code == 2
    code, _, _ = run(capsys, "bracket", "--x", "aB", "--y", "aab", "--tol", "0.1")
    assert code == 2


def test_output_deterministic(capsys):
    a = run(capsys, "bracket", "--x", "aaBB", "--y", "abAB")[1]
    b = run(capsys, "bracket", "--x", "aaBB", "--y", "abAB")[1]
    assert a == b


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "1")
    assert code == 0 and out.startswith("[PASS]  1 ")


def test_entry_point():
    r = subprocess.run([sys.executable, "-m", "goldman.cli", "bracket", "--x", "a", "--y", "b"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["terms"] == []
