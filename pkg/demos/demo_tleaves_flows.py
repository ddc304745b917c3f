#!/usr/bin/env python3
"""Torus leaves of the standard Poisson structure and Hamiltonian flows.

Run:  python demos/demo_tleaves_flows.py
"""

import random
from fractions import Fraction

from bsatlas.atlas import SpaceSpec, enumerate_charts, parametrize
from bsatlas.cgl import flow_sample
from bsatlas.groups import build_model
from bsatlas.leaves import t_leaf_classify
from bsatlas.poisson import chart_bracket
from bsatlas.positivity import ToricChartSpec, toric_point
from bsatlas.rootdata import build_root_system
from bsatlas.symbolic import VarName

model = build_model(build_root_system("A", 2))
rs = model.rs
space = SpaceSpec(model, "Nv", rs.w0)

# Leaves of the group itself are the double Bruhat cells; a totally
# positive point sits in the open one.
tp = toric_point(ToricChartSpec(model, "G", (rs.w0.canonical, rs.w0.canonical)), [1] * 8)
lbl = t_leaf_classify(space, tp)
print("totally positive point:", lbl)

rng = random.Random(0)
print("\nrandom rational points and their leaf labels (w, y), always y <= w * v:")
for _ in range(6):
    g = model.identity()
    for _ in range(rng.randint(1, 5)):
        i = rng.randint(1, 2)
        g = g * model.one_param(i if rng.random() < 0.5 else -i, Fraction(rng.randint(-5, 5), rng.randint(1, 5)))
    lbl = t_leaf_classify(space, g)
    wn = ".".join(f"s{i}" for i in lbl.w.canonical) or "e"
    yn = ".".join(f"s{i}" for i in lbl.y.canonical) or "e"
    print(f"   w = {wn:10s} y = {yn}")

# Hamiltonian flow of a chart coordinate, integrated numerically: the
# trajectory stays finite (a sanity check, not a proof of completeness).
chart = parametrize(enumerate_charts(space)[3])
table = chart_bracket(chart)
start = {i: Fraction(i + 1, i + 3) for i in range(1, 9)}
out = flow_sample(table, 1, start, 10.0, rtol=1e-9)
print(f"\nflow of z1 over [0, 10]: finite={out['finite']}, "
      f"max |z| = {out['max_abs']:.4g}, steps = {out['n_steps']}")

# The leaf label is invariant along the flow (generic start).
rep_at = lambda pt: [
    [x.evaluate({VarName("z", i): pt[i] for i in pt}) for x in row]
    for row in chart.param.entries
]
lbl0 = t_leaf_classify(space, rep_at(start))
end = {i + 1: Fraction(v).limit_denominator(10**9) for i, v in enumerate(out["final"])}
lbl1 = t_leaf_classify(space, rep_at(end))
print("leaf label preserved along the flow:", lbl0 == lbl1)
