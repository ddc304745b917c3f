"""Toric charts, exact sampling, positivity certification."""

import random
from fractions import Fraction

import pytest

from bsatlas.atlas import ChartSpec, SpaceSpec, enumerate_charts, eval_coordinates, parametrize
from bsatlas.errors import (
    HypothesisViolated,
    IncomparableCharts,
    LengthMismatch,
    NonPositiveInput,
)
from bsatlas.groups import build_model
from bsatlas.positivity import (
    ToricChartSpec,
    certify_chart_positivity,
    certify_minor_positivity,
    certify_toric_equivalence,
    extract_negative_chain,
    extract_positive_chain,
    toric_coordinates,
    toric_point,
    x_chain,
)
from bsatlas.rootdata import build_root_system

_M = {}


def model(series, rank):
    if (series, rank) not in _M:
        _M[(series, rank)] = build_model(build_root_system(series, rank))
    return _M[(series, rank)]


def test_x_chain():
    m = model("A", 1)
    c = Fraction(3, 2)
    g = x_chain(m, (1,), -1, [c])
    assert [[x.constant_value() for x in row] for row in g.entries] == [[1, 0], [c, 1]]
    assert x_chain(m, (), 1, []).satisfies_group_constraint()
    with pytest.raises(LengthMismatch):
        x_chain(m, (1,), -1, [c, c])


def test_x_chain_cell_membership():
    from bsatlas.leaves import t_leaf_classify

    m = model("A", 2)
    rs = m.rs
    g = x_chain(m, (1, 2, 1), -1, [Fraction(1)] * 3)
    sp = SpaceSpec(m, "Nv", rs.identity)
    lbl = t_leaf_classify(sp, g)
    assert lbl.w == rs.w0  # N^- cap B w0 B


def test_toric_point_g():
    m = model("A", 1)
    spec = ToricChartSpec(m, "G", ((1,), (1,)))
    p = toric_point(spec, [1, 1, 1])
    assert [[x.constant_value() for x in row] for row in p.entries] == [[1, 1], [1, 2]]
    with pytest.raises(NonPositiveInput):
        toric_point(spec, [1, 0, 1])
    with pytest.raises(LengthMismatch):
        toric_point(spec, [1, 1])


def test_toric_point_flag_targets():
    m = model("A", 2)
    rs = m.rs
    specb = ToricChartSpec(m, "GmodBv", (rs.w0.canonical, ()))
    p = toric_point(specb, [1, 2, 3])
    # v = e: the point is the negative chain itself
    q = x_chain(m, rs.w0.canonical, -1, [1, 2, 3])
    assert all(
        (a - b).is_zero() for r1, r2 in zip(p.entries, q.entries) for a, b in zip(r1, r2)
    )


def test_certify_chart_positivity_sl2():
    m = model("A", 1)
    space = SpaceSpec(m, "Nv", m.rs.w0)
    tspec = ToricChartSpec(m, "G", ((1,), (1,)))
    for spec in enumerate_charts(space):
        chart = parametrize(spec)
        rep = certify_chart_positivity(chart, tspec, 100, seed=0)
        assert rep["ok"], rep["violations"][:3]
        assert Fraction(rep["min_coordinate"]) > 0


def test_certify_determinism():
    m = model("A", 1)
    space = SpaceSpec(m, "Nv", m.rs.w0)
    chart = parametrize(enumerate_charts(space)[0])
    tspec = ToricChartSpec(m, "G", ((1,), (1,)))
    r1 = certify_chart_positivity(chart, tspec, 10, seed=42)
    r2 = certify_chart_positivity(chart, tspec, 10, seed=42)
    assert r1 == r2
    r3 = certify_chart_positivity(chart, tspec, 10, seed=43)
    assert r1 != r3


def test_boundary_probe_not_flagged():
    """A non-toric point with a vanishing coordinate is not a counterexample."""
    m = model("A", 1)
    rs = m.rs
    space = SpaceSpec(m, "Nv", rs.w0)
    chart_e, chart_s = (parametrize(s) for s in enumerate_charts(space))
    # z-chart point with z1 = z2 = 1, z3 = 1: first-chart coordinate xi2 vanishes
    from bsatlas.symbolic import VarName

    point = [
        [x.evaluate({VarName("z", i): Fraction(1) for i in (1, 2, 3)}) for x in row]
        for row in chart_s.param.entries
    ]
    coords = eval_coordinates(chart_e, point)
    assert coords[1] == 0
    # certification over toric samples stays clean
    tspec = ToricChartSpec(m, "G", ((1,), (1,)))
    assert certify_chart_positivity(chart_e, tspec, 50, seed=1)["ok"]


def test_flag_minor_positivity():
    m = model("A", 2)
    rs = m.rs
    space = SpaceSpec(m, "Nv", rs.w0)
    for w in rs.all_elements():
        rep = certify_minor_positivity(space, w, rs.identity, 1, 20, seed=0)
        assert rep["ok"]
    rep = certify_minor_positivity(space, rs.w0, rs.element_from_word((1, 2)), 2, 30, seed=0)
    assert rep["ok"]
    space_small = SpaceSpec(m, "Nv", rs.simple(1))
    with pytest.raises(HypothesisViolated):
        certify_minor_positivity(space_small, rs.w0, rs.element_from_word((2,)), 1, 5)


def test_chain_extraction_roundtrip():
    rng = random.Random(2)
    for series, rank, word in (("A", 2, (1, 2, 1)), ("C", 2, (1, 2, 1, 2))):
        m = model(series, rank)
        cs = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in word]
        g = x_chain(m, word, -1, cs)
        assert extract_negative_chain(m, g, word) == cs
        h = x_chain(m, word, +1, cs)
        assert extract_positive_chain(m, h, word) == cs


def test_toric_coordinates_inverts_chart():
    m = model("A", 2)
    rs = m.rs
    rng = random.Random(9)
    for spec in (
        ToricChartSpec(m, "G", ((1, 2, 1), (2, 1, 2))),
        ToricChartSpec(m, "GmodNv", ((1, 2, 1), (1, 2, 1))),
        ToricChartSpec(m, "GmodBv", ((2, 1, 2), ())),
    ):
        for _ in range(3):
            c = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(spec.n_params())]
            point = toric_point(spec, c)
            assert toric_coordinates(spec, point) == c


def test_toric_equivalence():
    m = model("A", 2)
    a = ToricChartSpec(m, "G", ((1, 2, 1), (2, 1, 2)))
    b = ToricChartSpec(m, "G", ((2, 1, 2), (1, 2, 1)))
    assert certify_toric_equivalence(a, b, 50, seed=0)["ok"]
    assert certify_toric_equivalence(a, a, 5, seed=0)["ok"]
    space = SpaceSpec(m, "Nv", m.rs.w0)
    chart = parametrize(enumerate_charts(space)[0])
    with pytest.raises(IncomparableCharts):
        certify_toric_equivalence(a, chart, 1)


def test_sp4_positivity_smoke():
    mc = model("C", 2)
    rs = mc.rs
    space = SpaceSpec(mc, "Nv", rs.w0)
    chart = parametrize(ChartSpec(space, rs.identity, ((1, 2, 1, 2), (), (2, 1, 2, 1))))
    tspec = ToricChartSpec(mc, "G", (rs.w0.canonical, rs.w0.canonical))
    rep = certify_chart_positivity(chart, tspec, 15, seed=0)
    assert rep["ok"], rep["violations"][:2]
