import os
import re

import pytest

import prodcheck

CORPUS = os.environ.get(
    "PRODCHECK_CORPUS_DIR",
    os.path.join(os.path.dirname(__file__), "..", "..", "corpus"),
)


def corpus(name):
    return prodcheck.load_program(os.path.join(CORPUS, name))


def test_parse_and_print():
    p = prodcheck.parse_program("nat(0).\nnat(s(X)) :- nat(X).")
    assert len(p) == 2
    assert p.label(1) == "nat:1"
    assert p.clause(1) == "nat(s(X)) :- nat(X)."


def test_parse_error():
    with pytest.raises(prodcheck.ParseError):
        prodcheck.parse_program("p(f(X) :- q.")
    with pytest.raises(ValueError):
        prodcheck.parse_program("p(a). p(a,b).")


def test_missing_file():
    with pytest.raises(OSError):
        prodcheck.load_program("/nonexistent/x.pl")


def test_from_is_live():
    r = prodcheck.check(corpus("p6.pl"))
    assert r["guarded"] and r["live"]
    assert r["exit_code"] == 0
    [inv] = r["invariants"]
    assert (inv["predicate"], inv["ordinal"], inv["position"]) == ("from", 0, [1])
    assert re.fullmatch(r"scons\(v\d+,v\d+\)", inv["term"])
    assert r["clauses"][0]["trees_explored"] == 3


def test_unguarded_witness():
    r = prodcheck.check(corpus("p7.pl"), parallel=False)
    assert not r["guarded"]
    assert r["witness"]["path"] == ["p:0", "q:0", "p:0"]
    assert r["report"].startswith("Program is not guarded.")


def test_finite_only():
    r = prodcheck.check(corpus("p8.pl"))
    assert r["guarded"] and not r["live"]
    assert r["exit_code"] == 1


def test_derive():
    d = prodcheck.derive(corpus("p6.pl"), "from(0,X)", steps=3)
    assert d["outcome"] == "step_limit"
    assert re.fullmatch(r"scons\(0,scons\(s\(0\),scons\(s\(s\(0\)\),v\d+\)\)\)", d["answer"]["X"])


def test_tree():
    t = prodcheck.tree(corpus("p2.pl"), "stream(scons(0,Y))")
    assert t["verdict"] == "guarded"
    assert t["open_leaves"] == ["stream(Y)"]
    assert t["dot"].startswith("digraph")
    assert prodcheck.tree(corpus("p3.pl"), "p(X)")["verdict"] == "unguarded"


def test_trs():
    out = prodcheck.trs(corpus("p2.pl"))
    assert "stream(scons(0,Y)) -> f0(stream(Y))." in out
    with pytest.raises(prodcheck.ExistentialVariableError, match="Y"):
        prodcheck.trs(corpus("p8.pl"))
