import json

import pytest

import pysurreal as ps


def w():
    return ps.Surreal.omega()


def test_arithmetic_and_text():
    x = w() + ps.Surreal(1, 2)
    assert x.text() == "w + 1/2"
    assert (x * x).text() == "w^2 + w + 1/4"
    assert (x - x).is_zero()
    assert (ps.Surreal(1) / (ps.Surreal(1) + ps.Surreal.omega_pow(ps.Surreal(-1)))).text(ps.Budget(terms=3)) == (
        "1 - w^(-1) + w^(-2) + ...[truncated@3]"
    )


def test_compare():
    half = ps.Surreal.omega_pow(ps.Surreal(1, 2))
    assert half.compare(w() / ps.Surreal(2)) == "Less"
    assert w() == ps.Surreal.parse("ω")
    assert ps.Surreal(3) < w()


def test_exp_log_and_h():
    assert ps.exp(w()).text() == "w^(w)"
    assert ps.log(ps.log(w())).text() == "w^(w^(-2))"
    assert ps.h(ps.Surreal(0)).text() == "w^(-1)"
    assert ps.g(ps.Surreal.parse("w^(-2)/4")).text() == "-7/4"


def test_trig_and_floor():
    assert ps.sin(w()).is_zero()
    assert ps.cos(w()).text() == "1"
    assert ps.oz_floor(ps.Surreal.parse("w/2 + 1/2 + 1/w")).text() == "1/2*w"


def test_simplicity():
    assert ps.sign_expansion(ps.Surreal(5, 4)) == "+^2 -^2"
    assert ps.simplest_dyadic_between("1/3", "2/5") == "3/8"


def test_embeddings():
    path = json.loads(ps.delta_path(w(), [], 3))
    assert [s["y"] for s in path["steps"]] == ["w", "w^(w^(-1))", "w^(w^(-2))", "w^(w^(-3))"]
    assert path["terminated"] == "atomic_confirmed"
    y = ps.Surreal.parse("w^(w) + w + 5")
    assert ps.development(y, [w()]).text() == "w^(w)"
    report = json.loads(ps.check_t1([w(), ps.Surreal.parse("1/w"), ps.Surreal(3)]))
    assert report["all_pass"]


def test_json_schema_shape():
    j = json.loads(ps.Surreal.parse("exp(2)*w").json())
    assert j["truncated"] is False
    assert set(j["terms"][0]["coeff"]) == {"rreal", "interval"}


def test_session_and_errors():
    s = ps.Session()
    assert s.run("let x = w + 1") == ("ok", "x = w + 1")
    assert s.run("x*x") == ("ok", "w^2 + 2*w + 1")
    status, text = s.run("w^w")
    assert status == "error" and "column 3" in text
    with pytest.raises(ps.KernelError, match="NonPositive"):
        ps.log(ps.Surreal(-1))
