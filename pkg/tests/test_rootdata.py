"""Root systems and Weyl combinatorics, checked against permutation oracles."""

import itertools
from fractions import Fraction

import pytest

from bsatlas.errors import UnsupportedSeries
from bsatlas.rootdata import build_root_system


def _perm_mul(p, q):
    return tuple(p[q[i] - 1] for i in range(len(q)))


def _sym_oracle_reduced_words(n, target):
    """All reduced words of a permutation in S_n by BFS over lengths."""
    simple = []
    for i in range(1, n):
        p = list(range(1, n + 1))
        p[i - 1], p[i] = p[i], p[i - 1]
        simple.append(tuple(p))
    ident = tuple(range(1, n + 1))
    level = {ident: [()]}
    seen = {ident: 0}
    depth = 0
    while target not in seen:
        depth += 1
        nxt = {}
        for p, words in level.items():
            for i, s in enumerate(simple, start=1):
                q = _perm_mul(p, s)
                if seen.get(q, depth) == depth:
                    seen[q] = depth
                    nxt.setdefault(q, [])
                    nxt[q].extend(w + (i,) for w in words)
        level = nxt
    return sorted(set(level[target]))


def _perm_of_word(n, word):
    p = tuple(range(1, n + 1))
    for i in word:
        s = list(range(1, n + 1))
        s[i - 1], s[i] = s[i], s[i - 1]
        p = _perm_mul(p, tuple(s))
    return p


def test_build_root_system_examples():
    rs = build_root_system("A", 2)
    assert rs.cartan == ((2, -1), (-1, 2))
    assert rs.l0 == 3
    assert build_root_system("A", 3).l0 == 6
    c2 = build_root_system("C", 2)
    assert c2.pairing(c2.simple_root(1), c2.simple_root(1)) == 2
    assert c2.pairing(c2.simple_root(2), c2.simple_root(2)) == 4
    assert c2.pairing(c2.simple_root(1), c2.simple_root(2)) == -2
    with pytest.raises(UnsupportedSeries):
        build_root_system("C", 3)
    with pytest.raises(UnsupportedSeries):
        build_root_system("B", 2)


def test_act():
    rs = build_root_system("A", 2)
    w1 = rs.fundamental_weight(1)
    assert rs.act_word((1,), w1) == w1 - rs.simple_root(1)
    assert rs.act_word((1, 2, 1), w1) == -rs.fundamental_weight(2)
    assert rs.act_word((), w1) == w1


def test_reduce():
    rs = build_root_system("A", 2)
    assert rs.reduce((1, 1)) == ((), 0)
    # brute force in the 6-element group: s1 s2 s1 s2 = s2 s1
    assert _perm_of_word(3, (1, 2, 1, 2)) == _perm_of_word(3, (2, 1))
    assert rs.reduce((1, 2, 1, 2)) == ((2, 1), 2)
    rs3 = build_root_system("A", 3)
    assert rs3.reduce((1, 2, 3)) == ((1, 2, 3), 3)


def test_enumerate_reduced_words():
    rs = build_root_system("A", 2)
    assert sorted(rs.reduced_words(rs.w0)) == [(1, 2, 1), (2, 1, 2)]
    rs3 = build_root_system("A", 3)
    words = sorted(rs3.reduced_words(rs3.w0))
    oracle = _sym_oracle_reduced_words(4, tuple(reversed(range(1, 5))))
    assert len(words) == 16 and words == oracle
    rs1 = build_root_system("A", 1)
    assert rs1.reduced_words(rs1.w0) == [(1,)]
    assert rs1.reduced_words(rs1.identity) == []


def test_longest_element():
    assert build_root_system("A", 1).w0.canonical == (1,)
    rs3 = build_root_system("A", 3)
    assert rs3.w0.length() == 6
    # w0 reverses (1,2,3,4)
    assert _perm_of_word(4, rs3.w0.canonical) == (4, 3, 2, 1)
    c2 = build_root_system("C", 2)
    # brute force over the order-8 group: max length is 4
    lengths = {w.length() for w in c2.all_elements()}
    assert max(lengths) == 4 and c2.w0.length() == 4
    assert c2.w0.canonical == (1, 2, 1, 2)


def test_orders():
    rs = build_root_system("A", 2)
    s1, s2 = rs.simple(1), rs.simple(2)
    s12 = rs.multiply(s1, s2)
    for w in rs.all_elements():
        assert rs.order_leq("bruhat", rs.identity, w)
        assert rs.order_leq("bruhat", w, w)
    assert rs.order_leq("weak", s1, s12)
    assert not rs.order_leq("weak", s2, s12)
    assert rs.order_leq("bruhat", s2, s12)


def test_star_product():
    rs = build_root_system("A", 2)
    s1 = rs.simple(1)
    for w in rs.all_elements():
        assert rs.star_product(w, rs.identity) == w
        assert rs.star_product(w, rs.w0) == rs.w0
    assert rs.star_product(s1, s1) == s1


def test_star_product_associative_exhaustive():
    for series, rank in (("A", 2), ("A", 3), ("C", 2)):
        rs = build_root_system(series, rank)
        els = rs.all_elements()
        for a, b, c in itertools.product(els, repeat=3):
            assert rs.star_product(rs.star_product(a, b), c) == rs.star_product(
                a, rs.star_product(b, c)
            )


def test_weight_calculus():
    rs = build_root_system("A", 2)
    assert rs.alpha_star(1) == 2 and rs.alpha_star(2) == 1
    a1 = rs.simple_root(1)
    assert rs.pairing(a1, a1) == 2
    assert rs.evaluate(a1, rs.sharp(a1)) == 2
    assert rs.evaluate(a1, rs.coweight_of_root(1)) == 2
    # sharp defining identity on all basis weights
    for i in range(1, 3):
        for j in range(1, 3):
            lam, mu = rs.fundamental_weight(i), rs.fundamental_weight(j)
            assert rs.evaluate(mu, rs.sharp(lam)) == rs.pairing(lam, mu)
    c2 = build_root_system("C", 2)
    assert c2.alpha_star(1) == 1 and c2.alpha_star(2) == 2


def test_reduced_word_consistency():
    for series, rank in (("A", 2), ("A", 3), ("C", 2)):
        rs = build_root_system(series, rank)
        for w in rs.all_elements():
            if w.is_identity():
                continue
            words = rs.reduced_words(w)
            assert len(set(words)) == len(words)
            for word in words:
                assert rs.element_from_word(word) == w
                assert len(word) == w.length()


def test_w0_involution_and_star_roots():
    for series, rank in (("A", 2), ("A", 3), ("C", 2)):
        rs = build_root_system(series, rank)
        for i in range(1, rank + 1):
            lam = rs.fundamental_weight(i)
            assert rs.act(rs.w0, rs.act(rs.w0, lam)) == lam
            assert rs.act(rs.w0, rs.simple_root(i)) == -rs.simple_root(rs.alpha_star(i))


def test_pairing_invariance_exhaustive():
    for series, rank in (("A", 2), ("A", 3), ("C", 2)):
        rs = build_root_system(series, rank)
        roots = [rs.simple_root(i) for i in range(1, rank + 1)]
        for w in rs.all_elements():
            for a in roots:
                for b in roots:
                    assert rs.pairing(rs.act(w, a), rs.act(w, b)) == rs.pairing(a, b)


def test_coweight_action_duality():
    rs = build_root_system("C", 2)
    h = rs.sharp(rs.fundamental_weight(1)) + rs.coweight_of_root(2) * Fraction(1, 3)
    for w in rs.all_elements():
        for i in range(1, 3):
            lam = rs.fundamental_weight(i)
            lhs = rs.evaluate(lam, rs.act_coweight(w, h))
            rhs = rs.evaluate(rs.act(w.inverse(), lam), h)
            assert lhs == rhs
