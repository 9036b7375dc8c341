import json
import os
import pathlib

import jsonschema
import pytest
from referencing import Registry, Resource

import loclang

ROOT = pathlib.Path(__file__).resolve().parents[2]
SCHEMAS = ROOT / "docs" / "schemas"
SENTENCES = pathlib.Path(os.environ.get("LOCLANG_SENTENCE_DIR", ROOT / "sentences"))


def schema(name):
    return json.loads((SCHEMAS / f"{name}.json").read_text())


def validator(name):
    resources = [(p.name, Resource.from_contents(json.loads(p.read_text()))) for p in SCHEMAS.glob("*.json")]
    return jsonschema.Draft202012Validator(schema(name), registry=Registry().with_resources(resources))


def test_examples_load():
    names = loclang.example_names()
    assert "sigma_word" in names
    sigma = loclang.example("sigma_word")
    assert sigma.alphabet == ["a", "b"]
    assert sigma.bound == 2
    assert sigma.validate() == []
    from_file = loclang.load_sentence(str(SENTENCES / "sigma_word.lfs"))
    assert from_file.text == sigma.text


def test_membership_and_schema():
    sigma = loclang.example("sigma_word")
    r = loclang.member(sigma, "ababba")
    assert r["status"] == "ACCEPTED"
    validator("membership_result").validate(r)
    validator("structure").validate(r["witness"])
    assert loclang.member(sigma, "abba")["status"] == "REJECTED"
    assert loclang.member(sigma, "ababbabbb", budget=2)["status"] == "BUDGET_EXHAUSTED"


def test_enumeration():
    e = loclang.enumerate(loclang.example("anbn"), 6)
    validator("enumeration").validate(e)
    assert e["words"] == ["λ", "ab", "aabb", "aaabbb"]
    assert e["complete"]


def test_constructions():
    u = loclang.union(loclang.example("anbn"), loclang.example("a_before_b"))
    assert loclang.enumerate(u, 2)["words"] == ["λ", "a", "b", "aa", "ab", "bb"]
    c = loclang.concat(loclang.example("single_a"), loclang.example("single_a"))
    assert loclang.enumerate(c, 3)["words"] == ["aa", "aab", "aba", "baa"]
    m = loclang.morphism(loclang.example("sigma_word"), "a -> c\nb -> c\n")
    assert loclang.enumerate(m, 3)["words"] == ["λ", "c", "ccc"]
    s = loclang.substitute(loclang.example("single_a"), "a -> b | aa\nb -> b\n", target=["a", "b"])
    assert s.bound == 3
    assert loclang.enumerate(s, 2)["words"] == ["b", "aa", "bb"]
    assert loclang.declared_bound_for("substitution", [1, 2, 3]) == 5


def test_audit_and_closure():
    reports = loclang.audit(loclang.example("sigma_word"), max_size=5)
    v = validator("audit_report")
    for r in reports:
        v.validate(r)
        assert r["verdict"] == "consistent"
    assert reports[0]["max_steps_observed"] <= 2
    w = loclang.member(loclang.example("sigma_word"), "ababbabbba")["witness"]
    t = loclang.closure(w, [7, 8, 9])
    assert t["steps"] <= 2
    assert t["result"] == [0, 1, 2, 7, 8, 9]


def test_word_tools():
    assert loclang.antidyck_member("y1y2Y1Y2")
    assert not loclang.antidyck_member("y1y2Y2Y1")
    assert loclang.fifo_member("y1Y1")
    assert loclang.sigma_prefix(10) == "ababbabbba"
    assert loclang.periodic_divergence("", "ab", 20) == 4


def test_errors():
    with pytest.raises(loclang.DslSyntaxError):
        loclang.parse_sentence("alphabet: a\nforall x . f(x\n")
    with pytest.raises(loclang.AlphabetMismatchError):
        loclang.member(loclang.example("sigma_word"), "abc")
    with pytest.raises(loclang.LoclangError):
        loclang.example("nope")
    assert issubclass(loclang.LoclangError, ValueError)
