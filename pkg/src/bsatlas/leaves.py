"""Torus-leaf classification on G/B(v) and G/N(v).

A leaf is labelled by a pair (w, y): the point's Bruhat cell BwB and the
mixed cell B^- y B containing g vbar.  Admissibility y <= w * v (Bruhat
order against the Demazure product) is asserted on every classification.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import SingularInput
from .groups import GroupElement
from .linalg import det, exact_div, mat_mul


class TLeafLabel:
    """Pair (w, y) with y <= w * v."""

    __slots__ = ("w", "y")

    def __init__(self, w, y):
        self.w = w
        self.y = y

    def __eq__(self, other):
        return isinstance(other, TLeafLabel) and self.w == other.w and self.y == other.y

    def __repr__(self):
        return f"TLeafLabel(w={self.w!r}, y={self.y!r})"


def _to_fraction_matrix(g):
    entries = g.entries if isinstance(g, GroupElement) else g
    out = []
    for row in entries:
        new = []
        for x in row:
            if hasattr(x, "is_constant"):
                new.append(x.constant_value())
            else:
                new.append(Fraction(x))
        out.append(new)
    return out


def pivot_permutation_upper(mat):
    """Permutation sigma with mat in B sigma B (B upper): column -> pivot row.

    Left multiplication by B adds lower rows to upper ones, right
    multiplication adds earlier columns to later ones; the invariant pivot of
    each column is its bottom-most surviving nonzero row.
    """
    m = [list(row) for row in mat]
    n = len(m)
    sigma = [0] * (n + 1)
    for j in range(n):
        i = max(r for r in range(n) if m[r][j] != 0)
        sigma[j + 1] = i + 1
        piv = m[i][j]
        for r in range(i):
            if m[r][j] != 0:
                f = exact_div(m[r][j], piv)
                m[r] = [x - f * y for x, y in zip(m[r], m[i])]
        for c in range(j + 1, n):
            if m[i][c] != 0:
                f = exact_div(m[i][c], piv)
                for r in range(n):
                    m[r][c] = m[r][c] - f * m[r][j]
    return tuple(sigma[1:])


def pivot_permutation_mixed(mat):
    """Permutation sigma with mat in B^- sigma B: column -> top-most pivot row."""
    m = [list(row) for row in mat]
    n = len(m)
    sigma = [0] * (n + 1)
    for j in range(n):
        i = min(r for r in range(n) if m[r][j] != 0)
        sigma[j + 1] = i + 1
        piv = m[i][j]
        for r in range(i + 1, n):
            if m[r][j] != 0:
                f = exact_div(m[r][j], piv)
                m[r] = [x - f * y for x, y in zip(m[r], m[i])]
        for c in range(j + 1, n):
            if m[i][c] != 0:
                f = exact_div(m[i][c], piv)
                for r in range(n):
                    m[r][c] = m[r][c] - f * m[r][j]
    return tuple(sigma[1:])


def _element_from_pattern(model, sigma):
    """The Weyl element whose representative has internal pattern (sigma(j), j)."""
    rs = model.rs
    if rs.series == "A":
        word = []
        perm = list(sigma)
        while True:
            for p in range(len(perm) - 1):
                if perm[p] > perm[p + 1]:
                    perm[p], perm[p + 1] = perm[p + 1], perm[p]
                    word.append(p + 1)
                    break
            else:
                break
        el = rs.element_from_word(tuple(reversed(word)))
    else:
        el = None
        for cand in rs.all_elements():
            if _pattern_of(model, model.wbar_element(cand)) == tuple(sigma):
                el = cand
                break
        if el is None:
            raise AssertionError("pivot pattern is not a Weyl-group pattern for this model")
    if _pattern_of(model, model.wbar_element(el)) != tuple(sigma):
        raise AssertionError("pattern reconstruction mismatch")
    return el


def _pattern_of(model, g):
    entries = model.to_internal(g.entries)
    n = len(entries)
    out = []
    for j in range(n):
        rows = [i for i in range(n) if not _is_zero(entries[i][j])]
        if len(rows) != 1:
            raise AssertionError("representative is not monomial")
        out.append(rows[0] + 1)
    return tuple(out)


def _is_zero(x):
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0


def t_leaf_classify(space, g) -> TLeafLabel:
    """Leaf label of an exact-rational group element (or coset representative).

    Pivot patterns are read in the model's internal basis order, where the
    Borel pair is genuinely triangular (this matters for Sp(4)).
    """
    model = space.model
    mat = _to_fraction_matrix(g)
    if det(mat) == 0:
        raise SingularInput("group element is singular")
    rs = model.rs
    sigma_w = pivot_permutation_upper(model.to_internal(mat))
    w = _element_from_pattern(model, sigma_w)
    vbar = _to_fraction_matrix(model.wbar_element(space.v))
    gv = mat_mul(mat, vbar)
    sigma_y = pivot_permutation_mixed(model.to_internal(gv))
    y = _element_from_pattern(model, sigma_y)
    target = rs.star_product(w, space.v)
    if not rs.bruhat_leq(y, target):
        raise AssertionError(f"leaf label violates y <= w * v: {y!r} vs {target!r}")
    return TLeafLabel(w, y)
