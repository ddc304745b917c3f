"""The standard Poisson structure, symbolically.

The multiplicative Poisson bivector on G is the difference of the left and
right invariant extensions of the skew tensor with one term per positive
root, weighted by half the squared root length.  Brackets of functions of
matrix entries come from the four-term sum over those terms; brackets in a
chart come from pushing first-order perturbations of the parametrized point
through coordinate extraction with dual numbers.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .atlas import Chart, eval_coordinates
from .errors import NonPolynomialBracket, NormalizationMismatch
from .groups import GroupElement, GroupModel
from .linalg import mat_mul
from .symbolic import Dual, MultiPoly, RatFunc, VarName


class LambdaData:
    """Skew r-matrix part: one (root, e_-, e_+, coefficient) term per positive root."""

    __slots__ = ("model", "terms")

    def __init__(self, model, terms):
        self.model = model
        self.terms = terms


def build_lambda(model: GroupModel) -> LambdaData:
    """Validated skew tensor terms; coefficient <beta,beta>/2 per positive root."""
    rs = model.rs
    terms = []
    for beta in rs.positive_roots:
        e_plus, e_minus = model.pos_root_vectors[beta]
        coeff = rs.pairing(beta, beta) / 2
        tr = sum(mat_mul(e_plus, e_minus)[i][i] for i in range(model.dim)) * model._trace_scale
        if tr != Fraction(2) / rs.pairing(beta, beta):
            raise NormalizationMismatch(f"trace pairing fails for {beta}")
        terms.append((beta, e_minus, e_plus, coeff))
    return LambdaData(model, terms)


def entry_var(i, j):
    """Variable name of the (i, j) entry of a generic matrix (1-based)."""
    return VarName("a", 10 * i + j)


def generic_element(model: GroupModel) -> GroupElement:
    """Matrix of free entry variables (no group constraint imposed)."""
    n = model.dim
    return GroupElement(
        model,
        [
            [RatFunc.from_poly(MultiPoly.variable(entry_var(i + 1, j + 1))) for j in range(n)]
            for i in range(n)
        ],
    )


def _directional(model, f: RatFunc, direction_entries):
    """Derivative of f(entries) along the field whose value at g is ``direction``.

    ``direction_entries`` is an n x n matrix of polynomials in the entry
    variables (g X for the left field, X g for the right one).
    """
    n = model.dim
    out = RatFunc.zero()
    for i in range(n):
        for j in range(n):
            d = direction_entries[i][j]
            if _is_zero_entry(d):
                continue
            part = f.differentiate(entry_var(i + 1, j + 1))
            if part.is_zero():
                continue
            out = out + part * d
    return out


def _is_zero_entry(x):
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0


def entry_bracket(model: GroupModel, f1: RatFunc, f2: RatFunc, lam: LambdaData | None = None) -> RatFunc:
    """Poisson bracket {f1, f2} of two functions of the n^2 entry variables."""
    if lam is None:
        lam = build_lambda(model)
    g = generic_element(model).entries
    total = RatFunc.zero()
    for _, e_minus, e_plus, coeff in lam.terms:
        gl_minus = mat_mul(g, e_minus)
        gl_plus = mat_mul(g, e_plus)
        gr_minus = mat_mul(e_minus, g)
        gr_plus = mat_mul(e_plus, g)
        lterm = _directional(model, f1, gl_minus) * _directional(model, f2, gl_plus) - _directional(
            model, f1, gl_plus
        ) * _directional(model, f2, gl_minus)
        rterm = _directional(model, f1, gr_minus) * _directional(model, f2, gr_plus) - _directional(
            model, f1, gr_plus
        ) * _directional(model, f2, gr_minus)
        total = total + coeff * (lterm - rterm)
    return total


class BracketTable:
    """Pairwise brackets {z_i, z_j} (i < j) of chart coordinates."""

    __slots__ = ("n_vars", "laurent_vars", "entries", "chart")

    def __init__(self, n_vars, laurent_vars, entries, chart=None):
        self.n_vars = n_vars
        self.laurent_vars = tuple(laurent_vars)
        self.entries = entries
        self.chart = chart

    def get(self, i, j):
        """Signed lookup: {z_i, z_j} for any i, j (1-based)."""
        if i == j:
            return RatFunc.zero()
        if i < j:
            return self.entries[(i, j)]
        return -self.entries[(j, i)]

    def bracket_with(self, i, f: RatFunc):
        """{z_i, f} by the Leibniz rule."""
        out = RatFunc.zero()
        for m in range(1, self.n_vars + 1):
            part = f.differentiate(VarName("z", m))
            if part.is_zero():
                continue
            out = out + part * self.get(i, m)
        return out

    def pairs(self):
        return sorted(self.entries)


def chart_bracket(chart: Chart, lam: LambdaData | None = None, map_fn=map) -> BracketTable:
    """Bracket table of a chart, computed from the group-level bivector.

    Coordinates are lifted to right-Q-invariant functions of the matrix
    entries; the bracket on G is evaluated at the parametrized point by
    pushing each left/right root-vector perturbation through the chart's
    coordinate extraction with dual numbers.
    """
    model = chart.spec.space.model
    if lam is None:
        lam = build_lambda(model)
    rep = chart.param.entries
    n = chart.dims

    directions = []
    for _, e_minus, e_plus, coeff in lam.terms:
        directions.append(("L-", mat_mul(rep, e_minus)))
        directions.append(("L+", mat_mul(rep, e_plus)))
        directions.append(("R-", mat_mul(e_minus, rep)))
        directions.append(("R+", mat_mul(e_plus, rep)))

    def derive(direction):
        dual = [
            [Dual(rep[i][j], direction[i][j]) for j in range(model.dim)]
            for i in range(model.dim)
        ]
        coords = eval_coordinates(chart, GroupElement(model, dual))
        eps = []
        for idx, c in enumerate(coords):
            base = c.a - RatFunc.from_poly(MultiPoly.variable(chart.zvars[idx]))
            if not base.is_zero():
                raise AssertionError("chart round trip failed inside bracket engine")
            eps.append(c.b)
        return eps

    derivs = list(map_fn(derive, [d for _, d in directions]))
    per_term = []
    for t in range(len(lam.terms)):
        per_term.append(
            (
                lam.terms[t][3],
                derivs[4 * t + 0],
                derivs[4 * t + 1],
                derivs[4 * t + 2],
                derivs[4 * t + 3],
            )
        )

    laurent = chart.torus_block()
    pairs = list(combinations(range(1, n + 1), 2))

    def assemble(pair):
        i, j = pair
        tot = RatFunc.zero()
        for coeff, dlm, dlp, drm, drp in per_term:
            lterm = dlm[i - 1] * dlp[j - 1] - dlp[i - 1] * dlm[j - 1]
            rterm = drm[i - 1] * drp[j - 1] - drp[i - 1] * drm[j - 1]
            tot = tot + coeff * (lterm - rterm)
        _require_polynomial(tot, laurent, (i, j))
        return tot

    entries = dict(zip(pairs, map_fn(assemble, pairs)))
    return BracketTable(n, laurent, entries, chart=chart)


def _require_polynomial(f: RatFunc, laurent, where):
    """Entries must be polynomial, allowing the Laurent block in denominators."""
    if f.den.is_one():
        return
    if not f.den.is_monomial():
        raise NonPolynomialBracket(f"bracket {where} has non-monomial denominator {f.den.text()}")
    allowed = {VarName("z", m) for m in laurent}
    if not set(f.den.vars) <= allowed:
        raise NonPolynomialBracket(
            f"bracket {where} has denominator outside the torus block: {f.den.text()}"
        )


def jacobi_check(table: BracketTable, symbolic_limit=8, samples=8, seed=0):
    """Jacobi identity report: symbolic for small tables, sampled beyond."""
    n = table.n_vars
    failures = []
    if n <= symbolic_limit:
        for i, j, k in combinations(range(1, n + 1), 3):
            s = (
                table.bracket_with(i, table.get(j, k))
                + table.bracket_with(j, table.get(k, i))
                + table.bracket_with(k, table.get(i, j))
            )
            if not s.is_zero():
                failures.append({"triple": (i, j, k), "value": s.text()})
        mode = "symbolic"
    else:
        import random

        rng = random.Random(seed)
        pts = []
        for _ in range(samples):
            pts.append(
                {
                    VarName("z", m): Fraction(rng.randint(1, 50), rng.randint(1, 50))
                    for m in range(1, n + 1)
                }
            )
        for i, j, k in combinations(range(1, n + 1), 3):
            s = (
                table.bracket_with(i, table.get(j, k))
                + table.bracket_with(j, table.get(k, i))
                + table.bracket_with(k, table.get(i, j))
            )
            for pt in pts:
                if s.evaluate(pt) != 0:
                    failures.append({"triple": (i, j, k), "point": {str(v): str(x) for v, x in pt.items()}})
                    break
        mode = "sampled"
    return {"ok": not failures, "mode": mode, "failures": failures}
