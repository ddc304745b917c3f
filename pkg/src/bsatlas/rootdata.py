"""Root systems of series A_n and C_2, weights, and Weyl-group combinatorics.

Conventions.  Weights live in the fundamental-weight basis, so the j-th
coefficient of a weight is its pairing with the j-th simple coroot.  The
Cartan matrix is stored with ``cartan[i][j] = alpha_j(alpha_i^vee)``, which
makes the simple roots its columns.  Coweights live in the basis dual to the
simple roots.  The invariant form is normalized so short roots have squared
length 2 (series A: all roots; series C_2: alpha_1).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NonReducedWord, UnsupportedSeries

_Q0 = Fraction(0)


class Weight:
    """Element of the weight lattice (rationalized), fundamental-weight basis."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    def __eq__(self, other):
        return isinstance(other, Weight) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        return Weight(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return Weight(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self):
        return Weight(-a for a in self.coeffs)

    def __mul__(self, c):
        return Weight(a * c for a in self.coeffs)

    __rmul__ = __mul__

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __repr__(self):
        return f"Weight({list(self.coeffs)})"


class Coweight:
    """Element of the rational Cartan subalgebra, fundamental-coweight basis."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    def __eq__(self, other):
        return isinstance(other, Coweight) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        return Coweight(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return Coweight(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self):
        return Coweight(-a for a in self.coeffs)

    def __mul__(self, c):
        return Coweight(a * c for a in self.coeffs)

    __rmul__ = __mul__

    def __repr__(self):
        return f"Coweight({list(self.coeffs)})"


class WeylElement:
    """Weyl group element: lexicographically least reduced word + lattice action."""

    __slots__ = ("rs", "canonical", "action", "_len")

    def __init__(self, rs, canonical, action):
        self.rs = rs
        self.canonical = canonical
        self.action = action
        self._len = len(canonical)

    def length(self):
        return self._len

    def is_identity(self):
        return self._len == 0

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.action == other.action and self.rs is other.rs

    def __hash__(self):
        return hash(self.action)

    def __mul__(self, other):
        return self.rs.multiply(self, other)

    def inverse(self):
        return self.rs.inverse(self)

    def __repr__(self):
        return f"W[{'.'.join('s%d' % i for i in self.canonical) or 'e'}]"


def _mat_mul_int(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _mat_inv_rational(m):
    """Inverse of a square rational matrix by Gauss-Jordan."""
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


class RootSystem:
    """Cartan data for series A (any rank >= 1) and C (rank 2)."""

    def __init__(self, series, rank):
        if series == "A" and rank >= 1:
            cartan = [[0] * rank for _ in range(rank)]
            for i in range(rank):
                cartan[i][i] = 2
                if i + 1 < rank:
                    cartan[i][i + 1] = -1
                    cartan[i + 1][i] = -1
            norms2 = [Fraction(2)] * rank
        elif series == "C" and rank == 2:
            # cartan[i][j] = alpha_j(alpha_i^vee); alpha_1 short, alpha_2 long
            cartan = [[2, -2], [-1, 2]]
            norms2 = [Fraction(2), Fraction(4)]
        else:
            raise UnsupportedSeries(f"series {series!r} rank {rank} not supported")
        self.series = series
        self.rank = rank
        self.cartan = tuple(tuple(row) for row in cartan)
        self._norms2 = tuple(norms2)
        self._cartan_inv = _mat_inv_rational(self.cartan)
        # form[i][j] = <alpha_i, alpha_j> = cartan[i][j] * norms2[i] / 2
        self.form = tuple(
            tuple(Fraction(self.cartan[i][j]) * self._norms2[i] / 2 for j in range(rank))
            for i in range(rank)
        )
        # Gram matrix of fundamental weights: G = D * M^{-1} with D = diag(norms2/2),
        # M the matrix whose columns are the simple roots.
        d = [n / 2 for n in self._norms2]
        self._gram_fw = tuple(
            tuple(d[i] * self._cartan_inv[i][j] for j in range(rank)) for i in range(rank)
        )
        self.simple_roots = tuple(
            Weight(self.cartan[i][j] for i in range(rank)) for j in range(rank)
        )
        self._refl = tuple(self._reflection_matrix(j) for j in range(rank))
        self._id_action = tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))
        self.identity = WeylElement(self, (), self._id_action)
        self._element_cache = {self._id_action: self.identity}
        self._rw_cache = {}
        self.positive_roots = self._positive_roots()
        self.l0 = len(self.positive_roots)
        w0 = self.longest_element()
        self.w0 = w0
        self.w0_word = w0.canonical
        self._star = tuple(self._compute_star(i) for i in range(1, rank + 1))

    # -- construction helpers ------------------------------------------------

    def _reflection_matrix(self, j):
        """Action of s_{j+1} on the weight lattice, fundamental-weight basis."""
        n = self.rank
        col = [self.cartan[i][j] for i in range(n)]
        return tuple(
            tuple(int(i == m) - (col[i] if m == j else 0) for m in range(n)) for i in range(n)
        )

    def _positive_roots(self):
        found = {}
        frontier = list(self.simple_roots)
        for r in frontier:
            found[r.coeffs] = r
        while frontier:
            new = []
            for r in frontier:
                for j in range(self.rank):
                    img = self.reflect(j + 1, r)
                    if img.coeffs not in found and self._is_positive_root_vec(img):
                        found[img.coeffs] = img
                        new.append(img)
            frontier = new
        roots = list(found.values())
        roots.sort(key=lambda r: (sum(self._root_coords(r)), self._root_coords(r)))
        return tuple(roots)

    def _root_coords(self, w):
        """Coefficients of a weight in the simple-root basis."""
        return tuple(
            sum(Fraction(self._cartan_inv[j][i]) * w.coeffs[i] for i in range(self.rank))
            for j in range(self.rank)
        )

    def _is_positive_root_vec(self, w):
        return all(c >= 0 for c in self._root_coords(w))

    # -- weight calculus -----------------------------------------------------

    def fundamental_weight(self, i):
        return Weight(int(j == i - 1) for j in range(self.rank))

    def simple_root(self, i):
        return self.simple_roots[i - 1]

    def pairing(self, lam, mu):
        """Invariant symmetric bilinear form on weights."""
        return sum(
            a * b * self._gram_fw[i][j]
            for i, a in enumerate(lam.coeffs)
            for j, b in enumerate(mu.coeffs)
            if a and b
        ) or _Q0

    def sharp(self, lam):
        """The coweight lam# with mu(lam#) = <lam, mu> for all weights mu."""
        return Coweight(lam.coeffs[i] * self._norms2[i] / 2 for i in range(self.rank))

    def evaluate(self, lam, h):
        """Pairing lam(h) of a weight with a coweight."""
        root_coords = self._root_coords(lam)
        return sum(c * x for c, x in zip(root_coords, h.coeffs)) or _Q0

    def coweight_of_root(self, i):
        """Simple coroot alpha_i^vee as a Coweight (alpha_i(.) = 2)."""
        sharp = self.sharp(self.simple_root(i))
        return sharp * Fraction(2, 1) * (1 / self._norms2[i - 1])

    def fundamental_coweight(self, i):
        """Dual basis to the simple roots: alpha_j(f_i) = delta_ij."""
        return Coweight(int(j == i - 1) for j in range(self.rank))

    def omega_dual(self, i):
        """Dual basis to the fundamental weights: omega_j(omega_i*) = delta_ij."""
        return Coweight(self.cartan[i - 1][j] for j in range(self.rank))

    def inv_gram_pairs(self):
        """The form tensor sum_q H_q (x) H_q as exact (Coweight, Coweight) pairs.

        Basis independent: in any basis u_a of the Cartan subalgebra it is
        sum_ab (Gram^-1)_ab u_a (x) u_b for Gram_ab = <u_a, u_b>.
        """
        n = self.rank
        f = [self.fundamental_coweight(i + 1) for i in range(n)]
        gram = [[self.pairing_coweights(f[a], f[b]) for b in range(n)] for a in range(n)]
        inv = _mat_inv_rational(gram)
        pairs = []
        for a in range(n):
            for b in range(n):
                if inv[a][b] != 0:
                    pairs.append((f[a] * inv[a][b], f[b]))
        return pairs

    def pairing_coweights(self, h1, h2):
        """Form on the Cartan subalgebra transported through sharp."""
        # f_a = (omega_a)# / (norms2[a]/2), so <f_a, f_b> = G_ab / (d_a d_b)
        n = self.rank
        d = [self._norms2[i] / 2 for i in range(n)]
        return sum(
            h1.coeffs[a] * h2.coeffs[b] * self._gram_fw[a][b] / (d[a] * d[b])
            for a in range(n)
            for b in range(n)
            if h1.coeffs[a] and h2.coeffs[b]
        ) or _Q0

    # -- Weyl action ---------------------------------------------------------

    def reflect(self, i, lam):
        """Simple reflection s_i on a weight: lam - lam(alpha_i^vee) alpha_i."""
        c = lam.coeffs[i - 1]
        if c == 0:
            return lam
        return Weight(
            lam.coeffs[j] - c * self.cartan[j][i - 1] for j in range(self.rank)
        )

    def reflect_coweight(self, i, h):
        """Simple reflection s_i on a coweight: h - alpha_i(h) alpha_i^vee."""
        c = self.evaluate(self.simple_root(i), h)
        if c == 0:
            return h
        return h - self.coweight_of_root(i) * c

    def act_word(self, word, lam):
        """Apply a word right-to-left: act((i,j), lam) = s_i(s_j(lam))."""
        for i in reversed(word):
            lam = self.reflect(i, lam)
        return lam

    def act_word_coweight(self, word, h):
        for i in reversed(word):
            h = self.reflect_coweight(i, h)
        return h

    def act(self, w, lam):
        """Apply a WeylElement through its action matrix."""
        m = w.action
        return Weight(
            sum(m[i][j] * lam.coeffs[j] for j in range(self.rank)) for i in range(self.rank)
        )

    def act_coweight(self, w, h):
        return self.act_word_coweight(w.canonical, h)

    # -- elements ------------------------------------------------------------

    def _element_from_action(self, action):
        got = self._element_cache.get(action)
        if got is not None:
            return got
        word = []
        m = action
        while m != self._id_action:
            i = self._first_left_descent(m)
            word.append(i)
            m = _mat_mul_int(self._refl[i - 1], m)
        el = WeylElement(self, tuple(word), action)
        self._element_cache[action] = el
        return el

    def _first_left_descent(self, action):
        """Smallest i with l(s_i w) < l(w), detected via w^{-1}(alpha_i) < 0.

        For the action matrix m of w, w^{-1}(alpha_i) < 0 iff w sends some
        negative root to alpha_i, iff alpha_i-row criterion: s_i w shorter.
        Uses: l(s_i w) < l(w) iff w^{-1}(alpha_i) is a negative root.
        """
        for i in range(1, self.rank + 1):
            img = self._act_matrix_inv_on_simple(action, i)
            if not self._is_positive_root_vec(img):
                return i
        raise AssertionError("identity reached without descent")

    def _act_matrix_inv_on_simple(self, action, i):
        """w^{-1}(alpha_i) given the action matrix of w (matrix is orthogonal-like).

        Computed by solving action * x = alpha_i over the rationals; the
        matrices are small so Gaussian elimination is fine, but we instead
        use the transpose trick: the inverse action is the action of w^{-1};
        we avoid it by checking sign of the solved vector.
        """
        n = self.rank
        a = [list(map(Fraction, row)) + [Fraction(self.simple_roots[i - 1].coeffs[r])] for r, row in enumerate(action)]
        for col in range(n):
            piv = next(r for r in range(col, n) if a[r][col] != 0)
            a[col], a[piv] = a[piv], a[col]
            pv = a[col][col]
            a[col] = [x / pv for x in a[col]]
            for r in range(n):
                if r != col and a[r][col] != 0:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return Weight(a[r][n] for r in range(n))

    def element_from_word(self, word):
        m = self._id_action
        for i in word:
            if not 1 <= i <= self.rank:
                raise ValueError(f"letter {i} out of range")
            m = _mat_mul_int(m, self._refl[i - 1])
        return self._element_from_action(m)

    def reduce(self, word):
        """Reduced word (canonical) and length of the element of ``word``."""
        el = self.element_from_word(word)
        return el.canonical, el.length()

    def is_reduced(self, word):
        return self.element_from_word(word).length() == len(word)

    def assert_reduced(self, word):
        if not self.is_reduced(word):
            raise NonReducedWord(f"word {word} is not reduced")

    def multiply(self, w1, w2):
        return self._element_from_action(_mat_mul_int(w1.action, w2.action))

    def inverse(self, w):
        m = w.action
        el = self.element_from_word(tuple(reversed(w.canonical)))
        return el

    def simple(self, i):
        return self.element_from_word((i,))

    # -- enumeration ----------------------------------------------------------

    def all_elements(self):
        """All Weyl group elements, sorted by (length, canonical word)."""
        seen = {self.identity.action: self.identity}
        frontier = [self.identity]
        while frontier:
            new = []
            for w in frontier:
                for i in range(1, self.rank + 1):
                    nxt = self.multiply(w, self.simple(i))
                    if nxt.action not in seen:
                        seen[nxt.action] = nxt
                        new.append(nxt)
            frontier = new
        return sorted(seen.values(), key=lambda w: (w.length(), w.canonical))

    def longest_element(self):
        w = self.identity
        while True:
            for i in range(1, self.rank + 1):
                nxt = self.multiply(w, self.simple(i))
                if nxt.length() > w.length():
                    w = nxt
                    break
            else:
                return w

    def reduced_words(self, w):
        """All reduced words of w; the empty collection for the identity."""
        if w.is_identity():
            return []
        return list(self._reduced_words_memo(w))

    def _reduced_words_memo(self, w):
        got = self._rw_cache.get(w.action)
        if got is not None:
            return got
        if w.is_identity():
            out = ((),)
        else:
            acc = []
            for i in range(1, self.rank + 1):
                sw = self.multiply(self.simple(i), w)
                if sw.length() < w.length():
                    for rest in self._reduced_words_memo(sw):
                        acc.append((i,) + rest)
            out = tuple(acc)
        self._rw_cache[w.action] = out
        return out

    # -- orders and the Demazure product --------------------------------------

    def bruhat_leq(self, y, w):
        """Bruhat order via the subword property on one reduced word of w."""
        if y.length() > w.length():
            return False
        reachable = {self.identity.action: self.identity}
        for i in w.canonical:
            si = self.simple(i)
            additions = {}
            for el in reachable.values():
                nxt = self.multiply(el, si)
                if nxt.length() > el.length() and nxt.action not in reachable:
                    additions[nxt.action] = nxt
            reachable.update(additions)
        return y.action in reachable

    def weak_leq(self, w1, w):
        """w1 precedes w in the weak order: w = w1 w2 with lengths adding."""
        w2 = self.multiply(w1.inverse(), w)
        return w1.length() + w2.length() == w.length()

    def order_leq(self, kind, y, w):
        if kind == "bruhat":
            return self.bruhat_leq(y, w)
        if kind == "weak":
            return self.weak_leq(y, w)
        raise ValueError(f"unknown order kind {kind!r}")

    def star_product(self, w, v):
        """Demazure (monoidal) product."""
        out = w
        for i in v.canonical:
            nxt = self.multiply(out, self.simple(i))
            if nxt.length() > out.length():
                out = nxt
        return out

    # -- starred letters -------------------------------------------------------

    def _compute_star(self, i):
        img = -self.act(self.w0, self.simple_root(i))
        for j in range(1, self.rank + 1):
            if img == self.simple_root(j):
                return j
        raise AssertionError("w0 does not permute the simple roots")

    def alpha_star(self, i):
        """The index i* with alpha_{i*} = -w0(alpha_i)."""
        return self._star[i - 1]


def build_root_system(series, rank):
    """Construct Cartan data for series 'A' (rank >= 1) or 'C' (rank 2)."""
    return RootSystem(series, rank)
