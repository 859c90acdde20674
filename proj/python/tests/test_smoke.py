import os
import pathlib

import pytest

import writ

CORPUS = pathlib.Path(os.environ.get("WRIT_CORPUS_DIR", pathlib.Path(__file__).resolve().parents[2] / "corpus"))
REC3 = "rec[Nat] 0 (fn n:Nat => fn p:Nat => succ p) 3"


def test_eval_counts_steps():
    assert writ.eval(REC3) == {"value": "3", "steps": 10, "queries": []}


def test_eval_with_oracle_records_queries():
    r = writ.eval("(fn f:Nat->Nat => f (f 2)) alpha", oracle="identity")
    assert r["value"] == "2"
    assert r["queries"] == [2, 2]


def test_typecheck():
    assert writ.typecheck("fn x:Nat => x") == "Nat -> Nat"
    with pytest.raises(writ.WritTypeError):
        writ.typecheck("0 0")


def test_analyses():
    assert writ.exact_cost(REC3) == (10, "3")
    assert writ.bounded_cost("[1,2,3]") == (0, 3)
    assert writ.majorant("add 2 3") == "5"
    assert writ.modulus("fn f:Nat->Nat => f (f 2)") == {"phi": 3, "support": [2, 2], "value": 2}


def test_translate_type():
    ty, _ = writ.translate("fn x:Nat => x")
    assert ty == "gamma x (|Nat| -> gamma x |Nat|)"


def test_fuel():
    with pytest.raises(writ.FuelExhausted):
        writ.eval("rec[Nat] 0 (fn n:Nat => fn p:Nat => succ p) 100", fuel=10)


def test_corpus_passes():
    reports = writ.verify_corpus(str(CORPUS), trials=10)
    assert reports
    assert all(r["status"] == "pass" for r in reports), [r for r in reports if r["status"] != "pass"]


def test_cli_roundtrip():
    code, out, _ = writ.cli(["eval", str(CORPUS / "rec3.wt")])
    assert code == 0
    assert out == '{"value":"3","steps":10}\n'
