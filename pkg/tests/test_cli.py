from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from arrcover.arrangement import serialize
from arrcover.catalog import catalog_get
from arrcover.cli import UsageError, parse_field, parse_indices, run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv, "--json")
    return code, json.loads(text) if text else None


def test_parse_indices():
    assert parse_indices("1..3,7") == [1, 2, 3, 7]
    assert parse_indices("2-4") == [2, 3, 4]
    for bad in ["0", "a", "4..2"]:
        with pytest.raises(UsageError):
            parse_indices(bad)


def test_parse_field():
    assert str(parse_field("f2")) == "F2"
    assert str(parse_field("fp:7")) == "F7"
    assert str(parse_field("q")) == "Q"
    with pytest.raises(UsageError):
        parse_field("fp:9")


def test_betti_text():
    code, text = call("betti", "--catalog", "pencil:3")
    assert code == 0 and "betti (1, 3, 2)" in text


def test_report_envelope():
    code, rep = call_json("betti", "--catalog", "pencil:3")
    assert code == 0
    assert rep["schema"] == "arrcover/1" and rep["command"] == "betti"
    assert rep["result"]["betti"] == [1, 3, 2]
    assert rep["input"]["digest"].startswith("sha256:")
    assert rep["version"]


def test_aomoto_prop_4_2_numbers():
    code, rep = call_json("aomoto", "--catalog", "icosidodecahedral-decone-16", "--field", "f2", "--w-subset", "1..15")
    assert code == 0 and rep["result"]["cohomology"][1] == 1
    assert rep["result"]["dims"] == [1, 15, 60]


def test_aomoto_weights_over_q():
    w = ",".join(["1/2"] * 10 + ["-1/2"] * 5)
    code, rep = call_json("aomoto", "--catalog", "icosidodecahedral-decone-16", "--field", "q", "--weights", w)
    assert code == 0 and rep["result"]["cohomology"][1] == 0


def test_double_cover():
    code, rep = call_json("double-cover", "--catalog", "icosidodecahedral-decone-16", "--w-subset", "1..15")
    assert code == 0 and rep["result"]["mod2_betti_cover"][1] == 16


def test_certify_torsion():
    code, rep = call_json("certify-torsion", "--catalog", "icosidodecahedral")
    assert code == 0
    assert rep["result"]["verdict"] == "2-torsion certified"
    assert rep["result"]["evidence"] == "b̄₁(F) ≥ 16 > 15 = b₁(F)"
    assert rep["result"]["mod2_b1_lower_bound"] == 16 and rep["result"]["b1_milnor_fiber"] == 15


def test_certify_inconclusive_exit_code():
    code, rep = call_json("certify-torsion", "--catalog", "A3")
    assert code == 2 and rep["result"]["verdict"] == "inconclusive"
    assert "order_power_of_two" in rep["result"]["failed_conditions"]


def test_milnor_and_osdim_and_poset():
    code, rep = call_json("milnor", "--catalog", "pencil:4")
    assert code == 0 and rep["result"]["b1_milnor_fiber"] == 9
    code, rep = call_json("osdim", "--catalog", "braid:3", "--field", "fp:5")
    assert rep["result"]["dims"] == [1, 6, 11, 6] and rep["result"]["agree"]
    code, rep = call_json("poset", "--catalog", "boolean:2")
    assert [f["mobius"] for f in rep["result"]["flats"]] == [1, -1, -1, 1]


def test_file_input(tmp_path):
    path = tmp_path / "pencil.arr"
    path.write_text(serialize(catalog_get("pencil:4")))
    code, rep = call_json("info", "--file", str(path))
    assert code == 0 and rep["result"]["n"] == 4 and rep["result"]["central"]
    _, rep2 = call_json("info", "--catalog", "pencil:4")
    assert rep["input"]["digest"] == rep2["input"]["digest"]


def test_catalog_listing():
    code, rep = call_json("catalog")
    assert code == 0 and "icosidodecahedral" in rep["result"]["names"]
    code, rep = call_json("catalog", "--catalog", "icosidodecahedral")
    assert rep["result"]["golden"]["milnor_b1"] == {"value": 15, "provenance": "published"}


def test_determinism():
    a = call("certify-torsion", "--catalog", "icosidodecahedral", "--json")
    b = call("certify-torsion", "--catalog", "icosidodecahedral", "--json")
    assert a == b


@pytest.mark.parametrize(
    "argv",
    [
        ["betti", "--catalog", "nope"],
        ["betti"],
        ["aomoto", "--catalog", "pencil:3", "--weights", "1,2"],
        ["aomoto", "--catalog", "pencil:3", "--field", "z", "--w-subset", "1"],
        ["double-cover", "--catalog", "pencil:3", "--w-subset", "7"],
        ["double-cover", "--catalog", "pencil:3", "--weights", "0,0,0"],
        ["info", "--file", "/nonexistent/file.arr"],
    ],
)
def test_errors_exit_1_on_stderr(argv, capsys):
    out = io.StringIO()
    assert run(argv, out=out) == 1
    assert out.getvalue() == ""
    assert "error" in capsys.readouterr().err


def test_bad_file_reports_line(tmp_path, capsys):
    path = tmp_path / "bad.arr"
    path.write_text("field Q\ndim 2\nH a: 1 0 0\nH b: 1 0 0\n")
    assert run(["info", "--file", str(path)], out=io.StringIO()) == 1
    assert "line 4" in capsys.readouterr().err


def test_usage_error_exit_1(capsys):
    with pytest.raises(SystemExit) as info:
        run(["frobnicate"])
    assert info.value.code == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "arrcover", "betti", "--catalog", "pencil:3", "--json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stderr == ""
    assert json.loads(proc.stdout)["result"]["betti"] == [1, 3, 2]
