import csv
import io
import json
import subprocess
import sys

import pytest

from patterncount import formulas
from patterncount.classes import ClassId
from patterncount.cli import main, run


def invoke(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def as_json(capsys, *argv):
    code, out, err = invoke(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_count_example(capsys):
    rec = as_json(capsys, "count", "--n", "8", "--avoid", "123,132", "--pattern", "321", "--method", "formula")
    assert rec["result"] == "4801"
    assert rec["command"] == "count" and rec["canonical"] == {"class": "D1", "word": ""}
    assert rec["parameters"]["method"] == "formula"


def test_count_degenerate(capsys):
    assert as_json(capsys, "count", "--n", "5", "--avoid", "123,321", "--pattern", "213")["result"] == "0"


def test_gf_example(capsys):
    rec = as_json(capsys, "gf", "--name", "t1_321", "--terms", "8")
    assert rec["result"][-2:] == ["545", "1478"]
    assert len(rec["result"]) == 9


def test_gf_custom(capsys):
    rec = as_json(capsys, "gf", "--name", "custom", "--num", "0,1", "--den", "1,-1,-1", "--terms", "10")
    assert rec["result"] == ["0", "1", "1", "2", "3", "5", "8", "13", "21", "34", "55"]


@pytest.mark.parametrize("args", [
    ("gf", "--name", "custom", "--num", "1", "--den", "0,1", "--terms", "3"),
    ("gf", "--name", "custom", "--num", "1,x", "--den", "1", "--terms", "3"),
    ("gf", "--name", "custom", "--terms", "3"),
    ("count", "--n", "5", "--avoid", "123,1x2", "--pattern", "213"),
    ("count", "--n", "5", "--avoid", "123,132", "--pattern", "12"),
    ("count", "--n", "0", "--avoid", "123,132", "--pattern", "213"),
    ("count", "--n", "12", "--avoid", "123,132", "--pattern", "213", "--method", "oracle"),
    ("count", "--n", "6", "--avoid", "123,132", "--pattern", "213", "--method", "gf"),
    ("bijection", "--name", "psi1", "--input", "0110"),
    ("bijection", "--name", "phi5", "--input", "2,4"),
    ("bijection", "--name", "swap", "--input", "54321", "--occ", "1,2,3"),
    ("frobnicate",),
    (),
])
def test_usage_errors(capsys, args):
    code, out, err = invoke(capsys, *args)
    assert code == 2
    assert out == ""


def test_methods_give_identical_output(capsys):
    cases = [("123,132", "321"), ("123,132,213", "312"), ("132,321", "213"), ("132,312", "123")]
    for avoid, q in cases:
        results = set()
        base = as_json(capsys, "count", "--n", "8", "--avoid", avoid, "--pattern", q)
        for method in base["methods"]:
            results.add(as_json(capsys, "count", "--n", "8", "--avoid", avoid,
                                "--pattern", q, "--method", method)["result"])
        assert len(results) == 1


def test_count_echoes_symmetry_word(capsys):
    rec = as_json(capsys, "count", "--n", "6", "--avoid", "231,312,321", "--pattern", "123")
    assert rec["canonical"]["class"] == "T1" and rec["canonical"]["word"]
    assert rec["result"] == "180"


def test_enumerate(capsys):
    rec = as_json(capsys, "enumerate", "--n", "3", "--avoid", "123,132")
    assert sorted(rec["result"]) == ["213", "231", "312", "321"] and rec["count"] == "4"
    rec2 = as_json(capsys, "enumerate", "--n", "6", "--avoid", "123,132", "--method", "filter")
    rec3 = as_json(capsys, "enumerate", "--n", "6", "--avoid", "123,132")
    assert sorted(rec2["result"]) == sorted(rec3["result"])
    big = as_json(capsys, "enumerate", "--n", "10", "--avoid", "123,231,312")
    assert big["result"][0].count(" ") == 9


@pytest.mark.parametrize("argv,key,value", [
    (["--name", "phi1", "--input", "2+1+4+2"], "permutation", "897543612"),
    (["--name", "phi2", "--input", "3+3+1+2"], "permutation", "789456312"),
    (["--name", "phi4", "--input", "3+1+2+3"], "permutation", "654783921"),
    (["--name", "phi5", "--input", "4,6", "--n", "8"], "permutation", "34561278"),
    (["--name", "psi1", "--input", "01001010"], "permutation", "978645231"),
    (["--name", "phi1", "--input", "897543612", "--inverse"], "composition", "2+1+4+2"),
    (["--name", "psi1", "--input", "978645231", "--inverse"], "word", "01001010"),
    (["--name", "phi5", "--input", "34561278", "--inverse"], "k", "4"),
    (["--name", "rho", "--input", "213", "--occ", "1,2,3"], "permutation", "123"),
    (["--name", "varrho", "--input", "231", "--occ", "1,2,3"], "permutation", "123"),
    (["--name", "swap", "--input", "7543216", "--occ", "4,5,7",
      "--class", "T2", "--from", "213", "--to", "312"], "permutation", "7654213"),
])
def test_bijection(capsys, argv, key, value):
    rec = as_json(capsys, "bijection", *argv)
    assert rec["result"][key] == value


def test_bijection_dot(capsys):
    rec = as_json(capsys, "bijection", "--name", "rho", "--input", "2134", "--occ", "1,2,3", "--dot")
    assert rec["result"]["dot"].startswith("digraph")
    assert rec["result"]["occurrence"] == ["1", "2", "3"]


def test_verify_green(capsys):
    rec = as_json(capsys, "verify", "--max-n", "6")
    assert rec["result"]["status"] == "PASS" and rec["result"]["failures"] == []
    assert rec["result"]["cells"] == str(35 * 6 * 4)


def test_verify_csv_and_classes(capsys):
    code, out, _ = invoke(capsys, "verify", "--max-n", "5", "--classes", "D1,T3;231,312,321", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 3 * 6 * 3
    assert {r["class"] for r in rows} == {"D1", "T3", "T1"}
    assert all(r["status"] == "PASS" for r in rows)


def test_negative_control(capsys, monkeypatch):
    good = formulas.FORMULAS[(ClassId.D1, (3, 2, 1))]
    monkeypatch.setitem(formulas.FORMULAS, (ClassId.D1, (3, 2, 1)), lambda n: good(n) + (n == 6))
    code, out, err = invoke(capsys, "verify", "--max-n", "7", "--classes", "D1")
    assert code == 1
    rec = json.loads(out)
    assert rec["result"]["status"] == "FAIL"
    assert rec["result"]["failures"] == ["S_6(123,132) q=321"]
    assert "S_6(123,132) q=321" in err


def _leaves(obj):
    if isinstance(obj, dict):
        for v in obj.values():
            yield from _leaves(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _leaves(v)
    else:
        yield obj


@pytest.mark.parametrize("argv", [
    ("count", "--n", "9", "--avoid", "132,213", "--pattern", "321"),
    ("verify", "--max-n", "4", "--classes", "D5"),
    ("gf", "--name", "fib", "--terms", "5"),
    ("enumerate", "--n", "4", "--avoid", "123,132,213"),
])
def test_no_json_numbers_for_integers(capsys, argv):
    rec = as_json(capsys, *argv)
    assert not any(isinstance(v, int) and not isinstance(v, bool) for v in _leaves(rec))


def test_run_alias():
    assert run is main


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "patterncount", "count", "--n", "7", "--avoid", "123,132,231",
         "--pattern", "321"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"] == "175"
