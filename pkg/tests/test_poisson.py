"""Bracket engine: entry brackets, chart brackets, Jacobi."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from bsatlas.atlas import ChartSpec, SpaceSpec, enumerate_charts, eval_coordinates, parametrize
from bsatlas.errors import NonPolynomialBracket
from bsatlas.groups import GroupElement, build_model
from bsatlas.poisson import (
    BracketTable,
    _require_polynomial,
    build_lambda,
    chart_bracket,
    entry_bracket,
    entry_var,
    generic_element,
    jacobi_check,
)
from bsatlas.rootdata import build_root_system
from bsatlas.symbolic import MultiPoly, RatFunc, VarName, var

_M = {}


def model(series, rank):
    if (series, rank) not in _M:
        _M[(series, rank)] = build_model(build_root_system(series, rank))
    return _M[(series, rank)]


def av(i, j):
    return RatFunc.from_poly(MultiPoly.variable(entry_var(i, j)))


def test_lambda_terms():
    assert [t[3] for t in build_lambda(model("A", 1)).terms] == [1]
    assert [t[3] for t in build_lambda(model("A", 2)).terms] == [1, 1, 1]
    coeffs = sorted(t[3] for t in build_lambda(model("C", 2)).terms)
    assert coeffs == [1, 1, 2, 2]


def test_entry_bracket_sl2():
    m = model("A", 1)
    lam = build_lambda(m)
    assert entry_bracket(m, av(1, 1), av(1, 2), lam) == av(1, 1) * av(1, 2)
    assert entry_bracket(m, av(1, 1), av(2, 2), lam) == 2 * av(1, 2) * av(2, 1)
    f = av(1, 1) * av(2, 2) + av(1, 2)
    assert entry_bracket(m, f, f, lam).is_zero()


def test_entry_bracket_antisymmetry_leibniz_random():
    m = model("A", 1)
    lam = build_lambda(m)
    rng = random.Random(7)
    vars_ = [av(i, j) for i in (1, 2) for j in (1, 2)]

    def rand_poly():
        out = RatFunc.constant(rng.randint(-3, 3))
        for v in vars_:
            if rng.random() < 0.6:
                out = out + rng.randint(-2, 2) * v * rng.choice(vars_)
        return out

    for _ in range(4):
        f, g, h = rand_poly(), rand_poly(), rand_poly()
        assert (entry_bracket(m, f, g, lam) + entry_bracket(m, g, f, lam)).is_zero()
        lhs = entry_bracket(m, f, g * h, lam)
        rhs = entry_bracket(m, f, g, lam) * h + g * entry_bracket(m, f, h, lam)
        assert (lhs - rhs).is_zero()


def test_det_is_casimir():
    m = model("A", 1)
    lam = build_lambda(m)
    det = av(1, 1) * av(2, 2) - av(1, 2) * av(2, 1)
    for f in (av(1, 1), av(2, 1), av(1, 2) * av(2, 2)):
        assert entry_bracket(m, det, f, lam).is_zero()


def test_chart_bracket_matches_entry_lift_sl2():
    """Dual route: lift coordinates to entry functions, bracket, substitute."""
    m = model("A", 1)
    lam = build_lambda(m)
    space = SpaceSpec(m, "Nv", m.rs.w0)
    for spec in enumerate_charts(space):
        chart = parametrize(spec)
        table = chart_bracket(chart, lam)
        lifted = eval_coordinates(chart, generic_element(m))
        binding = {
            entry_var(i + 1, j + 1): chart.param.entries[i][j]
            for i in range(2)
            for j in range(2)
        }
        for (i, j), got in table.entries.items():
            expect = entry_bracket(m, lifted[i - 1], lifted[j - 1], lam).substitute(binding)
            assert (got - expect).is_zero(), (spec.label(), i, j)


def test_chart_bracket_sl2_values():
    m = model("A", 1)
    space = SpaceSpec(m, "Nv", m.rs.w0)
    chart_e, chart_s = (parametrize(s) for s in enumerate_charts(space))
    z1, z2, z3 = (var("z", i) for i in (1, 2, 3))
    te = chart_bracket(chart_e)
    assert te.entries[(1, 2)] == -2 * z1 * z2
    assert te.entries[(1, 3)] == -z1 * z3
    assert te.entries[(2, 3)] == -z2 * z3
    ts = chart_bracket(chart_s)
    assert ts.entries[(1, 2)] == 2 * z1 * z2 - 2


def test_chart_bracket_representative_independence():
    m = model("A", 2)
    rs = m.rs
    space = SpaceSpec(m, "Bv", rs.identity)
    spec = enumerate_charts(space)[1]
    chart = parametrize(spec)
    table = chart_bracket(chart)
    q = (
        m.one_param(1, var("u", 1))
        * m.one_param(2, var("u", 2))
        * m.torus_element([var("u", 3), var("u", 4)])
    )
    moved = GroupElement(m, (chart.param * q).entries)
    shifted_chart = type(chart)(chart.spec, chart.dims, chart.zvars, moved, chart.coord_formulas)
    table2 = chart_bracket(shifted_chart)
    for key in table.entries:
        assert (table.entries[key] - table2.entries[key]).is_zero(), key


def test_laurent_block_nv():
    m = model("A", 1)
    space = SpaceSpec(m, "Nv", m.rs.w0)
    chart = parametrize(enumerate_charts(space)[0])
    table = chart_bracket(chart)
    assert table.laurent_vars == (3,)


def test_require_polynomial_guard():
    z1, z2 = var("z", 1), var("z", 2)
    with pytest.raises(NonPolynomialBracket):
        _require_polynomial(z1 / (z1 + z2), (), (1, 2))
    with pytest.raises(NonPolynomialBracket):
        _require_polynomial(z1 / z2, (), (1, 2))
    _require_polynomial(z1 / z2, (2,), (1, 2))


def test_jacobi_sl2_and_toy_failure():
    m = model("A", 1)
    space = SpaceSpec(m, "Nv", m.rs.w0)
    for spec in enumerate_charts(space):
        assert jacobi_check(chart_bracket(parametrize(spec)))["ok"]
    z1, z3 = var("z", 1), var("z", 3)
    bad = BracketTable(
        3,
        (),
        {
            (1, 2): z3,
            (1, 3): z1 * z3,
            (2, 3): RatFunc.zero(),
        },
    )
    rep = jacobi_check(bad)
    assert not rep["ok"]
    assert rep["failures"][0]["triple"] == (1, 2, 3)


def test_jacobi_sampled_mode():
    mc = model("C", 2)
    space = SpaceSpec(mc, "Nv", mc.rs.w0)
    chart = parametrize(ChartSpec(space, mc.rs.identity, ((1, 2, 1, 2), (), (2, 1, 2, 1))))
    rep = jacobi_check(chart_bracket(chart))
    assert rep["ok"] and rep["mode"] == "sampled"


def test_chart_bracket_parallel_map():
    from concurrent.futures import ThreadPoolExecutor

    m = model("A", 1)
    space = SpaceSpec(m, "Nv", m.rs.w0)
    chart = parametrize(enumerate_charts(space)[0])
    serial = chart_bracket(chart)
    with ThreadPoolExecutor(max_workers=4) as pool:
        parallel = chart_bracket(chart, map_fn=pool.map)
    for key in serial.entries:
        assert (serial.entries[key] - parallel.entries[key]).is_zero()
