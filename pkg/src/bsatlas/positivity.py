"""Lusztig positive structures: toric charts, exact sampling, certification.

Toric points are products of one-parameter chains at strictly positive
rationals; every positivity verdict is an exact comparison of Fractions.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .atlas import Chart, eval_coordinates
from .errors import (
    HypothesisViolated,
    IncomparableCharts,
    LengthMismatch,
    NonPositiveInput,
    NotInChartDomain,
)
from .groups import GroupElement, MinorSpec
from .linalg import mat_mul


class ToricChartSpec:
    """A toric chart of the Lusztig positive structure.

    target 'G': words = (w0_word, w0_word'), parameters (c_1..c_{2 l0}, t_1..t_d);
    target 'GmodBv': words = (w0_word, v_word), parameters of length l0 + l(v);
    target 'GmodNv': same words, plus d torus parameters.
    """

    __slots__ = ("model", "target", "words", "omega_order")

    def __init__(self, model, target, words, omega_order=None):
        if target not in ("G", "GmodBv", "GmodNv"):
            raise ValueError("target must be 'G', 'GmodBv', or 'GmodNv'")
        rs = model.rs
        w1, w2 = (tuple(w) for w in words)
        rs.assert_reduced(w1)
        rs.assert_reduced(w2)
        if rs.element_from_word(w1) != rs.w0:
            raise ValueError("first word must be a reduced word of w0")
        if target == "G" and rs.element_from_word(w2) != rs.w0:
            raise ValueError("target G needs a second reduced word of w0")
        self.model = model
        self.target = target
        self.words = (w1, w2)
        d = rs.rank
        self.omega_order = tuple(omega_order) if omega_order else tuple(range(1, d + 1))

    def n_params(self):
        rs = self.model.rs
        l0 = rs.l0
        if self.target == "G":
            return 2 * l0 + rs.rank
        if self.target == "GmodBv":
            return l0 + len(self.words[1])
        return l0 + len(self.words[1]) + rs.rank

    def v_element(self):
        return self.model.rs.element_from_word(self.words[1])

    def __repr__(self):
        return f"ToricChartSpec({self.target}, {self.words})"


def x_chain(model, word, sign, c):
    """Ordered product of one-parameter factors x_{+-alpha_i}(c_i)."""
    if len(word) != len(c):
        raise LengthMismatch(f"{len(c)} parameters for a length-{len(word)} word")
    out = model.identity()
    s = 1 if sign in (1, "+", "+1") else -1
    for i, ci in zip(word, c):
        out = out * model.one_param(s * i, ci)
    return out


def toric_point(spec: ToricChartSpec, c) -> GroupElement:
    """The representative at a strictly positive exact parameter vector.

    The plus-chain of the flag targets runs through the REVERSED v-word (it
    is a chain for v^{-1}); the G target uses both w0-words in plain order.
    """
    model = spec.model
    rs = model.rs
    c = [Fraction(x) for x in c]
    if len(c) != spec.n_params():
        raise LengthMismatch(f"expected {spec.n_params()} parameters, got {len(c)}")
    if any(x <= 0 for x in c):
        raise NonPositiveInput("toric parameters must be strictly positive")
    l0 = rs.l0
    w1, w2 = spec.words
    neg = x_chain(model, w1, -1, c[:l0])
    if spec.target == "G":
        pos = x_chain(model, w2, +1, c[l0 : 2 * l0])
        t = model.torus_element([c[2 * l0 + spec.omega_order.index(i)] for i in range(1, rs.rank + 1)])
        return neg * pos * t
    lv = len(w2)
    pos = x_chain(model, tuple(reversed(w2)), +1, list(reversed(c[l0 : l0 + lv])))
    point = neg * pos
    if spec.target == "GmodNv":
        t = model.torus_element(
            [c[l0 + lv + spec.omega_order.index(i)] for i in range(1, rs.rank + 1)]
        )
        point = point * t
    return point


def _sample_positive(rng, n):
    return [Fraction(rng.randint(1, 1000), rng.randint(1, 1000)) for _ in range(n)]


def _as_fraction(x):
    if hasattr(x, "constant_value"):
        return x.constant_value()
    return Fraction(x)


def certify_chart_positivity(chart: Chart, spec: ToricChartSpec, n_samples, seed):
    """Exact positivity of every chart coordinate at toric-chart samples.

    Per sample: (i) the point lies in the chart's shifted big cell and in
    every other shifted big cell (all flag minors D_{w omega, omega} nonzero);
    (ii) every coordinate value is a strictly positive rational.
    """
    model = chart.spec.space.model
    rs = model.rs
    rng = random.Random(seed)
    all_w = rs.all_elements()
    violations = []
    min_seen = None
    per_sample = []
    for s in range(n_samples):
        c = _sample_positive(rng, spec.n_params())
        point = toric_point(spec, c)
        cell_ok = True
        for w in all_w:
            for alpha in range(1, rs.rank + 1):
                m = model.generalized_minor(point, MinorSpec(w, rs.identity, alpha))
                if _as_fraction(m) <= 0:
                    cell_ok = False
                    violations.append({"sample": s, "kind": "big_cell", "w": str(w), "alpha": alpha})
        try:
            coords = [_as_fraction(x) for x in eval_coordinates(chart, point)]
        except NotInChartDomain as e:
            violations.append({"sample": s, "kind": "chart_domain", "minor": e.minor_index})
            per_sample.append({"sample": s, "params": [str(x) for x in c], "coords": None})
            continue
        for idx, val in enumerate(coords, start=1):
            if val <= 0:
                violations.append({"sample": s, "kind": "nonpositive", "coordinate": idx, "value": str(val)})
            if min_seen is None or val < min_seen:
                min_seen = val
        per_sample.append(
            {"sample": s, "params": [str(x) for x in c], "coords": [str(v) for v in coords], "cell_ok": cell_ok}
        )
    return {
        "chart": chart.spec.label(),
        "n_samples": n_samples,
        "seed": seed,
        "ok": not violations,
        "min_coordinate": str(min_seen) if min_seen is not None else None,
        "violations": violations,
        "samples": per_sample,
    }


def certify_minor_positivity(space, w, v1, alpha, n_samples, seed=0):
    """Positivity of D_{w omega_alpha, v1 omega_alpha} on G/N(v) samples.

    Requires v1 weakly below v (the function is otherwise not right-N(v)
    invariant); raises HypothesisViolated when the precondition fails.
    """
    model = space.model
    rs = model.rs
    if not rs.weak_leq(v1, space.v):
        raise HypothesisViolated("v1 must precede v in the weak order")
    v_word = space.v.canonical
    spec = ToricChartSpec(model, "GmodNv", (rs.w0.canonical, v_word), space.omega_order)
    rng = random.Random(seed)
    ms = MinorSpec(w, v1, alpha)
    violations = []
    values = []
    for s in range(n_samples):
        c = _sample_positive(rng, spec.n_params())
        point = toric_point(spec, c)
        val = _as_fraction(model.generalized_minor(point, ms))
        values.append(str(val))
        if val <= 0:
            violations.append({"sample": s, "value": str(val)})
    return {"minor": ms.label(), "n_samples": n_samples, "ok": not violations, "violations": violations, "values": values}


def extract_negative_chain(model, m, word):
    """Exact chain parameters of m = x_{-a1}(c1) ... x_{-ak}(ck) (word reduced).

    Peels letters from the right: with w' the product of the first j letters,
    the flag minor D_{w' omega_a, omega_a} of m x_{-a}(-c) is affine in c and
    vanishes exactly at the true parameter.
    """
    rs = model.rs
    word = tuple(word)
    rs.assert_reduced(word)
    cur = m if isinstance(m, GroupElement) else GroupElement(model, m)
    out = [None] * len(word)
    for j in range(len(word), 0, -1):
        a = word[j - 1]
        wprime = rs.element_from_word(word[:j])
        ms = MinorSpec(wprime, rs.identity, a)
        f0 = _as_fraction(model.generalized_minor(cur, ms))
        peeled1 = cur * model.one_param(-a, Fraction(-1))
        f1 = _as_fraction(model.generalized_minor(peeled1, ms))
        slope = f1 - f0
        if slope == 0:
            raise ArithmeticError("degenerate peel: minor not affine in the parameter")
        cj = f0 / (f0 - f1)
        out[j - 1] = cj
        cur = cur * model.one_param(-a, -cj)
    _assert_identity(cur)
    return out


def extract_positive_chain(model, n, word):
    """Chain parameters of n = x_{a1}(c1) ... x_{ak}(ck) via transpose."""
    nt = (n if isinstance(n, GroupElement) else GroupElement(model, n)).transpose()
    return list(reversed(extract_negative_chain(model, nt, tuple(reversed(word)))))


def _assert_identity(g):
    for i, row in enumerate(g.entries):
        for j, x in enumerate(row):
            val = _as_fraction(x)
            if val != (1 if i == j else 0):
                raise ArithmeticError("chain extraction did not exhaust the unipotent factor")


def toric_coordinates(spec: ToricChartSpec, point) -> list:
    """Invert a toric chart at an exact point of its image.

    Supported: target 'G' for any pair of w0-words, and the flag targets for
    v = e or v = w0.  For intermediate v the plus-chain leaves the subgroup
    the coset projection retains, so no exact peel exists along the chain
    letters; those cases are refused rather than approximated.
    """
    model = spec.model
    rs = model.rs
    entries = point.entries if isinstance(point, GroupElement) else point
    lower, tdiag, upper = model.triangular_factor(entries, "LTU")
    c1 = extract_negative_chain(model, GroupElement(model, lower), spec.words[0])
    tvals_all = [_as_fraction(tdiag[i][i]) for i in range(model.dim)]

    def torus_values():
        out = []
        for i in spec.omega_order:
            p = Fraction(1)
            for q in model._perm[: model.minor_size(i)]:
                p *= tvals_all[q]
            out.append(p)
        return out

    tmat_conj = [
        [tvals_all[i] if i == j else Fraction(0) for j in range(model.dim)]
        for i in range(model.dim)
    ]
    if spec.target == "G":
        pos = mat_mul(mat_mul(tmat_conj, upper), _diag_inv(tvals_all))
        c2 = extract_positive_chain(model, GroupElement(model, pos), spec.words[1])
        return c1 + c2 + torus_values()
    v = spec.v_element()
    if not (v.is_identity() or v == rs.w0):
        raise HypothesisViolated(
            "toric-chart inversion on flag targets supports v = e or v = w0 only"
        )
    if v.is_identity():
        c2 = []
    else:
        tmat = [
            [tvals_all[i] if i == j else Fraction(0) for j in range(model.dim)]
            for i in range(model.dim)
        ]
        ntilde = mat_mul(mat_mul(tmat, upper), _diag_inv(tvals_all))
        rev = tuple(reversed(spec.words[1]))
        c2rev = extract_positive_chain(model, GroupElement(model, ntilde), rev)
        c2 = list(reversed(c2rev))
    if spec.target == "GmodBv":
        return c1 + c2
    return c1 + c2 + torus_values()


def _diag_inv(vals):
    n = len(vals)
    return [[1 / vals[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def certify_toric_equivalence(spec_a, spec_b, n_samples, seed=0):
    """Positive samples of chart A have positive chart-B coordinates.

    This is the checkable necessary condition of positive equivalence; a
    Bott-Samelson chart is not accepted here (different kind of chart).
    """
    if isinstance(spec_a, Chart) or isinstance(spec_b, Chart):
        raise IncomparableCharts(
            "Bott-Samelson charts are not toric charts of the positive structure; "
            "their coordinate changes need not be positive, so this comparison is refused"
        )
    if spec_a.target != spec_b.target or spec_a.model is not spec_b.model:
        raise ValueError("toric charts must share the same target space")
    if spec_a.target != "G" and spec_a.v_element() != spec_b.v_element():
        raise ValueError("flag-target charts must share v")
    identical = spec_a.words == spec_b.words and spec_a.omega_order == spec_b.omega_order
    rng = random.Random(seed)
    violations = []
    for s in range(n_samples):
        c = _sample_positive(rng, spec_a.n_params())
        if identical:
            cprime = c
        else:
            point = toric_point(spec_a, c)
            cprime = toric_coordinates(spec_b, point)
        for idx, val in enumerate(cprime, start=1):
            if val <= 0:
                violations.append({"sample": s, "coordinate": idx, "value": str(val)})
    return {"n_samples": n_samples, "ok": not violations, "violations": violations}
