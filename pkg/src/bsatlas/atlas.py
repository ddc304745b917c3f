"""Bott-Samelson atlases on G/B(v) and G/N(v).

A chart is indexed by w in W together with a triple of reduced words
r = (w0_word, w_word, v_word) for (w0 w^{-1}, w, v).  The chart covers the
shifted big cell w B^- B / Q; its parametrization composes one-parameter
chains with a symbolic Gauss factorization, and its coordinates are
generalized minors of the three factors of the normal form wbar * m * n * t.
"""

from __future__ import annotations

from .errors import NotInBigCell, NotInChartDomain
from .groups import GroupElement, GroupModel, MinorSpec
from .linalg import adjugate_inverse, mat_mul
from .symbolic import RatFunc, VarName

_CHART_CACHE = {}


class SpaceSpec:
    """A homogeneous space G/B(v) or G/N(v) with a fundamental-weight listing."""

    __slots__ = ("model", "qkind", "v", "omega_order")

    def __init__(self, model: GroupModel, qkind, v, omega_order=None):
        if qkind not in ("Bv", "Nv"):
            raise ValueError("qkind must be 'Bv' or 'Nv'")
        self.model = model
        self.qkind = qkind
        self.v = v
        d = model.rs.rank
        self.omega_order = tuple(omega_order) if omega_order else tuple(range(1, d + 1))
        if sorted(self.omega_order) != list(range(1, d + 1)):
            raise ValueError("omega_order must list every fundamental weight once")

    def dims(self):
        rs = self.model.rs
        l = rs.l0 + self.v.length()
        return l + (rs.rank if self.qkind == "Nv" else 0)

    def key(self):
        return (
            self.model.name,
            self.qkind,
            self.v.canonical,
            self.omega_order,
        )

    def same_space(self, other):
        return self.key() == other.key()

    def __repr__(self):
        vw = ".".join(f"s{i}" for i in self.v.canonical) or "e"
        return f"SpaceSpec({self.model.name}/{self.qkind}[{vw}])"


class ChartSpec:
    """Discrete chart data: w plus the triple of reduced words."""

    __slots__ = ("space", "w", "r")

    def __init__(self, space: SpaceSpec, w, r):
        rs = space.model.rs
        w0_word, w_word, v_word = (tuple(x) for x in r)
        u = rs.multiply(rs.w0, w.inverse())
        for word, el in ((w0_word, u), (w_word, w), (v_word, space.v)):
            got = rs.element_from_word(word)
            if got != el or len(word) != el.length():
                raise ValueError(f"word {word} is not a reduced word of {el!r}")
        if not rs.is_reduced(w0_word + w_word):
            raise ValueError("concatenated (w0_word, w_word) is not reduced for w0")
        self.space = space
        self.w = w
        self.r = (w0_word, w_word, v_word)

    def key(self):
        return (self.space.key(), self.w.canonical, self.r)

    def label(self):
        def fmt(word):
            return ".".join(f"s{i}" for i in word) or "-"

        return f"w={'.'.join('s%d' % i for i in self.w.canonical) or 'e'}; r=({fmt(self.r[0])} | {fmt(self.r[1])} | {fmt(self.r[2])})"

    def __repr__(self):
        return f"ChartSpec({self.label()})"


class Chart:
    """A chart with its symbolic parametrization and coordinate recipes."""

    __slots__ = ("spec", "dims", "zvars", "param", "coord_formulas", "_eval_cache")

    def __init__(self, spec, dims, zvars, param, coord_formulas):
        self.spec = spec
        self.dims = dims
        self.zvars = zvars
        self.param = param
        self.coord_formulas = coord_formulas
        self._eval_cache = {}

    def torus_block(self):
        """Indices (1-based) of the Laurent coordinates (Nv torus block)."""
        rs = self.spec.space.model.rs
        l = rs.l0 + self.spec.space.v.length()
        if self.spec.space.qkind == "Nv":
            return tuple(range(l + 1, l + rs.rank + 1))
        return ()

    def __repr__(self):
        return f"Chart({self.spec.label()})"


def zvar(j):
    return VarName("z", j)


def enumerate_charts(space: SpaceSpec):
    """All chart specs of the atlas, in deterministic order."""
    rs = space.model.rs
    v_words = _words_or_empty(rs, space.v)
    out = []
    for w in rs.all_elements():
        u = rs.multiply(rs.w0, w.inverse())
        for w0_word in _words_or_empty(rs, u):
            for w_word in _words_or_empty(rs, w):
                for v_word in v_words:
                    out.append(ChartSpec(space, w, (w0_word, w_word, v_word)))
    return out


def _words_or_empty(rs, el):
    """Reduced words with the empty slot convention: identity contributes ()."""
    if el.is_identity():
        return [()]
    return sorted(rs.reduced_words(el))


def coordinate_formulas(spec: ChartSpec):
    """Tagged minor recipes for every coordinate of the chart.

    Tags: 'm' applies to the N^- factor, 'wmw' to wbar m wbar^{-1}, 'n' to
    the N_v factor, 't' to the torus values (Nv only).
    """
    rs = spec.space.model.rs
    w0_word, w_word, v_word = spec.r
    k = len(w0_word)
    l0 = rs.l0
    out = []
    starred = tuple(rs.alpha_star(a) for a in w0_word)
    for j in range(1, k + 1):
        u = rs.element_from_word(starred[:j])
        v = rs.element_from_word(starred[: j - 1])
        out.append(("m", MinorSpec(u, v, starred[j - 1])))
    for j in range(k + 1, l0 + 1):
        word = w_word[: j - k]
        u = rs.element_from_word(word[:-1])
        v = rs.element_from_word(word)
        out.append(("wmw", MinorSpec(u, v, word[-1])))
    for j in range(l0 + 1, l0 + len(v_word) + 1):
        word = v_word[: j - l0]
        u = rs.element_from_word(word[:-1])
        v = rs.element_from_word(word)
        out.append(("n", MinorSpec(u, v, word[-1])))
    if spec.space.qkind == "Nv":
        for i in spec.space.omega_order:
            out.append(("t", i))
    return out


def parametrize(spec: ChartSpec) -> Chart:
    """Build the chart: symbolic coset representative plus coordinate recipes."""
    got = _CHART_CACHE.get(spec.key())
    if got is not None:
        return got
    model = spec.space.model
    rs = model.rs
    w0_word, w_word, v_word = spec.r
    k = len(w0_word)
    l0 = rs.l0
    l = l0 + len(v_word)
    dims = spec.space.dims()
    zvars = [zvar(j) for j in range(1, dims + 1)]
    zfuncs = [_rf_var(v) for v in zvars]
    g1 = model.g_word(w0_word, zfuncs[:k])
    g2 = model.g_word(w_word, zfuncs[k:l0])
    g3 = model.g_word(v_word, zfuncs[l0:l])
    w0bar_inv = model.wbar(rs.w0.canonical).inverse()
    x = g2 * w0bar_inv * g1
    lower, _, _ = model.triangular_factor(x.entries, "LTU")
    lower_inv = adjugate_inverse(lower)
    vbar_inv = model.wbar(v_word).inverse()
    rep = mat_mul(mat_mul(mat_mul(lower_inv, g2.entries), g3.entries), vbar_inv.entries)
    if spec.space.qkind == "Nv":
        values = [None] * rs.rank
        for pos, i in enumerate(spec.space.omega_order):
            values[i - 1] = zfuncs[l + pos]
        t = model.torus_element(values)
        rep = mat_mul(rep, t.entries)
    param = GroupElement(model, [[RatFunc.coerce(x) for x in row] for row in rep])
    chart = Chart(spec, dims, zvars, param, coordinate_formulas(spec))
    _CHART_CACHE[spec.key()] = chart
    return chart


def _rf_var(v):
    from .symbolic import MultiPoly

    return RatFunc.from_poly(MultiPoly.variable(v))


def eval_coordinates(chart: Chart, g):
    """Coordinates of a point (GroupElement or raw matrix) of the shifted big cell.

    Entries may be Fractions for numeric points, RatFuncs for symbolic ones,
    or Duals for first-order perturbations.  Raises NotInChartDomain with the
    index of the vanishing principal minor of wbar^{-1} g when the point is
    outside the cell.
    """
    spec = chart.spec
    model = spec.space.model
    rs = model.rs
    entries = g.entries if isinstance(g, GroupElement) else g
    wbar_inv = model.wbar(spec.w.canonical).inverse()
    h = mat_mul(wbar_inv.entries, entries)
    try:
        lower, tdiag, nfull = model.triangular_factor(h, "LTU")
    except NotInBigCell as e:
        raise NotInChartDomain(e.minor_index) from None
    v = spec.space.v
    if v.is_identity():
        p1 = None
    elif v == rs.w0:
        p1 = nfull
    else:
        n1, _ = model.split_unipotent_by_v(GroupElement(model, nfull), v)
        p1 = n1.entries
    n_el = None
    if p1 is not None:
        tvals = [tdiag[i][i] for i in range(model.dim)]
        n_el = [
            [p1[i][j] * (tvals[i] / tvals[j]) if i != j else p1[i][j] for j in range(model.dim)]
            for i in range(model.dim)
        ]
    wbar = model.wbar(spec.w.canonical)
    wmw = None
    out = []
    for tag, payload in chart.coord_formulas:
        if tag == "m":
            out.append(model.generalized_minor(lower, payload))
        elif tag == "wmw":
            if wmw is None:
                wmw = mat_mul(mat_mul(wbar.entries, lower), wbar_inv.entries)
            out.append(model.generalized_minor(wmw, payload))
        elif tag == "n":
            out.append(model.generalized_minor(n_el, payload))
        elif tag == "t":
            i = payload
            slots = model._perm[: model.minor_size(i)]
            prod = tdiag[slots[0]][slots[0]]
            for p in slots[1:]:
                prod = prod * tdiag[p][p]
            out.append(prod)
        else:
            raise AssertionError(f"unknown tag {tag}")
    return out


def change_of_coordinates(src: Chart, dst: Chart):
    """Coordinates of dst expressed in the variables of src (birational)."""
    if not src.spec.space.same_space(dst.spec.space):
        raise ValueError("charts live on different spaces")
    return eval_coordinates(dst, src.param)


def t_weights(chart: Chart):
    """T-weight of each coordinate under left translation."""
    spec = chart.spec
    rs = spec.space.model.rs
    w0_word, w_word, v_word = spec.r
    k = len(w0_word)
    word2 = w_word + v_word
    out = []
    for j in range(1, k + 1):
        letters = tuple(reversed(w0_word[j - 1 : k]))
        out.append(rs.act_word(letters, rs.simple_root(w0_word[j - 1])))
    for j in range(1, len(word2) + 1):
        prefix = word2[: j - 1]
        out.append(rs.act_word(prefix, rs.simple_root(word2[j - 1])))
    if spec.space.qkind == "Nv":
        for i in spec.space.omega_order:
            out.append(rs.act(spec.w, rs.fundamental_weight(i)))
    return out


def clear_chart_cache():
    _CHART_CACHE.clear()
