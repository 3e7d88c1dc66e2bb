import io
import json
import os
import subprocess
import sys

import pytest

from flat_systoles.cli import BIG_DEGREE, main

from conftest import WORKED15, WITNESS30

DATA = os.path.join(os.path.dirname(__file__), os.pardir, "data")


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_systole_json_witness30():
    code, text = run("systole", os.path.join(DATA, "witness30.txt"))
    assert code == 0
    d = json.loads(text)
    assert d["sy_squared"] == 17 and d["sr"] == "17/30"
    assert d["definitive"] is True
    assert [1, 4] in d["minimal_directions"]


def test_systole_inline_and_text():
    code, text = run("systole", WORKED15, "--format", "text")
    assert code == 0 and "sr 4/15" in text and "systole 2 " in text


def test_output_is_byte_deterministic():
    a = run("systole", WITNESS30, "--emit-candidates")[1]
    b = run("systole", WITNESS30, "--emit-candidates")[1]
    assert a == b and "candidates" in json.loads(a)


def test_json_round_trip():
    _, text = run("systole", WORKED15)
    d = json.loads(text)
    _, again = run("systole", json.dumps(d["origami"]))
    assert json.loads(again) == d


def test_graph_formats():
    code, dot = run("graph", WORKED15, "--format", "dot")
    assert code == 0 and dot.startswith(("graph", "digraph"))
    _, js = run("graph", WORKED15, "--direction", "1,1")
    assert sorted(e["length"] for e in json.loads(js)["edges"]) == [
        "3*sqrt2", "3*sqrt2", "4*sqrt2", "5*sqrt2"
    ]
    _, full = run("graph", WORKED15, "--full")
    assert len(json.loads(full)["edges"]) == 16


def test_bounds_command():
    code, text = run("bounds", "--stratum", "1,1")
    d = json.loads(text)
    assert code == 0 and d["area_bound"] == "0.636619772368" and d["bg_bound"] == "0.288675134595"
    _, text = run("bounds", os.path.join(DATA, "l_origami.txt"))
    assert json.loads(text)["ok"] is True


def test_cover_command():
    code, text = run("cover", os.path.join(DATA, "l_origami.txt"), "--k", "2")
    d = json.loads(text)
    assert code == 0 and d["verification"]["ok"] and d["cut"]["placement"] == "core"


def test_enumerate_csv():
    code, text = run("enumerate", "--degree", "4..5")
    lines = text.strip().split("\n")
    assert code == 0 and len(lines) == 3
    assert lines[1].startswith("4,sqrt2,0.5,") and lines[2].startswith("5,sqrt2,0.4,")


@pytest.mark.parametrize(
    "argv",
    [
        ("systole", os.path.join(DATA, "torus.txt")),  # genus one
        ("systole", "sigma_a=(1,2) sigma_b=(3,4)"),  # disconnected
        ("systole", "nonsense"),
        ("bogus",),
        ("enumerate", "--degree", str(BIG_DEGREE + 1)),
        ("enumerate", "--degree", "4", "--threads", "0"),
        ("systole", WORKED15, "--l0", "0"),
        ("bounds",),
        ("graph", WORKED15, "--direction", "2,4"),  # not primitive
    ],
)
def test_input_errors_exit_1(argv, capsys):
    assert run(*argv)[0] == 1
    assert capsys.readouterr().err.startswith("error:")


def test_thread_count_from_environment(monkeypatch):
    from flat_systoles.cli import parse_config

    monkeypatch.setenv("FLAT_SYSTOLES_THREADS", "3")
    assert parse_config(["enumerate", "--degree", "4"]).threads == 3
    assert parse_config(["enumerate", "--degree", "4", "--threads", "1"]).threads == 1


def test_module_entry_point_and_stdin():
    with open(os.path.join(DATA, "worked15.txt"), encoding="utf-8") as fh:
        src = fh.read()
    p = subprocess.run(
        [sys.executable, "-m", "flat_systoles", "systole", "-", "--format", "text"],
        input=src, capture_output=True, text=True, check=False,
    )
    assert p.returncode == 0 and "sr 4/15" in p.stdout
