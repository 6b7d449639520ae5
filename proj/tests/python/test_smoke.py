import cmath
import math
from pathlib import Path

import pytest

ratlin = pytest.importorskip("ratlin")

DATA = Path(__file__).resolve().parents[2] / "data"

PENCIL = [["x+2", "-x+3", "1"], ["-x+2", "0", "0"]]
TARGET = [["(x-2)*(-x+3)/((x+2)*(x^2-1))", "(x-2)/((x+2)*x*(x-1))"]]


def test_version():
    assert ratlin.__version__ == "0.1.0"


def test_check_linearization_of_worked_example():
    rep = ratlin.check_linearization(PENCIL, 1, TARGET, excluded=["-1", "0", "1"])
    assert rep["is_linearization"]
    assert rep["witness"] == ""
    loci = {e["locus"] for e in rep["target_structure"]}
    assert "-2" in loci


def test_mutated_target_is_rejected():
    bad = [["(x-7)*" + TARGET[0][0], "(x-7)*" + TARGET[0][1]]]
    rep = ratlin.check_linearization(PENCIL, 1, bad, excluded=["-1", "0", "1"])
    assert not rep["is_linearization"]
    assert rep["witness"].startswith("7:")


def test_transfer_function_and_smith():
    g = ratlin.transfer_function([["x-3", "1"], ["1", "0"]], 1)
    assert g == [["(-1)/(x - 3)"]]
    assert ratlin.smith_invariant_factors([["x-1", "0"], ["0", "(x-1)*(x-2)"]]) == ["x - 1", "x^2 - 3*x + 2"]
    orders = ratlin.local_orders([["1/(x-1)", "0"], ["0", "x-1"]], "1")
    assert sorted(orders) == [-1, 1]
    pz = ratlin.pole_zero_structure([["1/(x-1)", "0"], ["0", "x-1"]])
    assert pz[0]["poles"] == [1] and pz[0]["zeros"] == [1]


def test_aaa_reproduces_exp():
    pts = [complex(math.cos(2 * math.pi * k / 60), math.sin(2 * math.pi * k / 60)) for k in range(60)]
    vals = ratlin.sample("exp", pts)
    r = ratlin.aaa(pts, vals, tol=1e-12, max_m=30)
    for x in (0.3 + 0.2j, -0.5j):
        assert abs(ratlin.barycentric_eval(r["z"], r["w"], r["g"], x) - cmath.exp(x)) < 1e-10
    ok, common = ratlin.irreducible(r["z"], r["w"], r["g"])
    assert ok and not common


def test_set_valued_aaa_shares_supports():
    pts = [complex(x / 20.0, 0) for x in range(-20, 21)]
    rs = ratlin.set_valued_aaa(pts, [ratlin.sample("exp", pts), ratlin.sample("sin", pts)])
    assert len(rs) == 2
    assert rs[0]["z"] == rs[1]["z"]


def test_eigenvalues():
    ev = ratlin.eigenvalues([[-1, 0], [0, -2]], [[1, 0], [0, 1]])
    assert sorted(e.real for e in ev) == pytest.approx([1.0, 2.0])
    ev = ratlin.eigenvalues([[0, 0], [0, 1]], [[1, 0], [0, 0]])
    assert None in ev


def test_run_pipeline_files():
    rep = ratlin.run(str(DATA / "worked_example.config.json"))
    assert rep["passed"]
    rep = ratlin.run(str(DATA / "toy_rep_trimmed.config.json"))
    assert rep["passed"]
    assert any(e["classification"] == "zero" for e in rep["eigenpairs"])


def test_errors_carry_codes():
    with pytest.raises(ratlin.RatlinError) as info:
        ratlin.run(str(DATA / "worked_example.config.json"), mode="dance")
    assert info.value.code == "ConfigError"
    with pytest.raises(ratlin.RatlinError) as info:
        ratlin.eigenvalues([[1, 2]], [[1, 2]])
    assert info.value.code in ("NonSquare", "DimensionMismatch")
