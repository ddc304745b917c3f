"""Exact sparse multivariate polynomials and rational functions.

Coefficients are ``fractions.Fraction`` throughout; no floating point enters
any symbolic path.  Monomials are ordered graded-lexicographically with
respect to the total order on variable names, which makes every normalized
value canonical: equal rational functions have identical representations and
identical text serializations.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from math import gcd as _int_gcd
from math import lcm as _int_lcm

from .errors import EvaluationPole, SubstitutionPole, ZeroDenominator

_ZERO = Fraction(0)
_ONE = Fraction(1)


@total_ordering
class VarName:
    """A variable, identified by a base symbol and a numeric index."""

    __slots__ = ("symbol", "index", "_key")

    def __init__(self, symbol, index=0):
        self.symbol = symbol
        self.index = index
        self._key = (symbol, index)

    def __eq__(self, other):
        return isinstance(other, VarName) and self._key == other._key

    def __lt__(self, other):
        return self._key < other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"VarName({self.symbol!r}, {self.index})"

    def __str__(self):
        return self.symbol if self.index == 0 else f"{self.symbol}{self.index}"

    @staticmethod
    def parse(text):
        m = re.fullmatch(r"([A-Za-z_]+)(\d*)", text)
        if m is None:
            raise ValueError(f"not a variable name: {text!r}")
        sym, idx = m.group(1), m.group(2)
        return VarName(sym, int(idx) if idx else 0)


def var(symbol, index=0):
    """Shorthand: the rational function equal to one variable."""
    return RatFunc.from_poly(MultiPoly.variable(VarName(symbol, index)))


def _merge_vars(v1, v2):
    """Merge two sorted variable tuples; return (merged, map1, map2)."""
    if v1 == v2:
        idx = list(range(len(v1)))
        return v1, idx, idx
    merged = sorted(set(v1) | set(v2))
    pos = {v: i for i, v in enumerate(merged)}
    return tuple(merged), [pos[v] for v in v1], [pos[v] for v in v2]


def _remap(terms, src_len, dst_len, idx):
    if src_len == dst_len and idx == list(range(src_len)):
        return dict(terms)
    out = {}
    for exp, c in terms.items():
        e = [0] * dst_len
        for p, v in enumerate(exp):
            if v:
                e[idx[p]] = v
        out[tuple(e)] = c
    return out


def _grlex_key(exp):
    return (sum(exp), exp)


class MultiPoly:
    """Sparse multivariate polynomial with Fraction coefficients.

    Normalized form: ``vars`` lists exactly the variables that occur with a
    nonzero exponent, sorted; ``terms`` maps exponent tuples (aligned with
    ``vars``) to nonzero coefficients.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms):
        self.vars = vars
        self.terms = terms

    # -- constructors ------------------------------------------------------

    @staticmethod
    def constant(c):
        c = Fraction(c)
        return MultiPoly((), {} if c == 0 else {(): c})

    @staticmethod
    def variable(v):
        return MultiPoly((v,), {(1,): _ONE})

    @staticmethod
    def _make(vars, terms):
        """Normalize a raw (vars, terms) pair: drop zeros and unused vars."""
        terms = {e: c for e, c in terms.items() if c != 0}
        if not terms:
            return MultiPoly((), {})
        used = [i for i in range(len(vars)) if any(e[i] for e in terms)]
        if len(used) == len(vars):
            return MultiPoly(vars, terms)
        new_vars = tuple(vars[i] for i in used)
        new_terms = {tuple(e[i] for i in used): c for e, c in terms.items()}
        return MultiPoly(new_vars, new_terms)

    # -- predicates --------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.vars

    def is_one(self):
        return self.terms == {(): _ONE}

    def constant_value(self):
        if self.vars:
            raise ValueError("not a constant polynomial")
        return self.terms.get((), _ZERO)

    def is_monomial(self):
        return len(self.terms) <= 1

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, v):
        if v not in self.vars:
            return 0
        i = self.vars.index(v)
        return max(e[i] for e in self.terms)

    # -- canonical order ---------------------------------------------------

    def leading(self):
        """(exponent, coeff) of the graded-lex leading term."""
        exp = max(self.terms, key=_grlex_key)
        return exp, self.terms[exp]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def key(self):
        return (self.vars, tuple(self.sorted_terms()))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash(self.key())

    # -- arithmetic --------------------------------------------------------

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        vars, i1, i2 = _merge_vars(self.vars, other.vars)
        t = _remap(self.terms, len(self.vars), len(vars), i1)
        for e, c in _remap(other.terms, len(other.vars), len(vars), i2).items():
            s = t.get(e, _ZERO) + c
            if s == 0:
                t.pop(e, None)
            else:
                t[e] = s
        return MultiPoly._make(vars, t)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return MultiPoly((), {})
            return MultiPoly(self.vars, {e: k * c for e, k in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if not self.terms or not other.terms:
            return MultiPoly((), {})
        if self.is_constant():
            return other * self.terms[()]
        if other.is_constant():
            return self * other.terms[()]
        vars, i1, i2 = _merge_vars(self.vars, other.vars)
        t1 = _remap(self.terms, len(self.vars), len(vars), i1)
        t2 = _remap(other.terms, len(other.vars), len(vars), i2)
        if len(t1) > len(t2):
            t1, t2 = t2, t1
        out = {}
        items2 = list(t2.items())
        for e1, c1 in t1.items():
            for e2, c2 in items2:
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, _ZERO) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiPoly._make(vars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- calculus and evaluation -------------------------------------------

    def derivative(self, v):
        if v not in self.vars:
            return MultiPoly((), {})
        i = self.vars.index(v)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MultiPoly._make(self.vars, out)

    def evaluate(self, point):
        """Exact value at a point mapping VarName -> Fraction."""
        vals = []
        for v in self.vars:
            if v not in point:
                raise KeyError(f"no value for variable {v}")
            vals.append(Fraction(point[v]))
        total = _ZERO
        for e, c in self.terms.items():
            term = c
            for b, k in zip(vals, e):
                if k:
                    term *= b**k
            total += term
        return total

    def substitute_ratfuncs(self, images):
        """Compose with RatFunc images (variables absent from ``images`` pass through)."""
        out = RatFunc.zero()
        imgs = [images.get(v, RatFunc.from_poly(MultiPoly.variable(v))) for v in self.vars]
        cache = [{} for _ in imgs]

        def power(i, k):
            got = cache[i].get(k)
            if got is None:
                got = imgs[i] ** k
                cache[i][k] = got
            return got

        for e, c in self.terms.items():
            term = RatFunc.constant(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    # -- integer content ----------------------------------------------------

    def z_content(self):
        """Positive rational c with self/c integer-primitive; 0 for the zero poly."""
        if not self.terms:
            return _ZERO
        num = 0
        den = 1
        for c in self.terms.values():
            num = _int_gcd(num, abs(c.numerator))
            den = _int_lcm(den, c.denominator)
        return Fraction(num, den)

    def leading_sign(self):
        if not self.terms:
            return 0
        _, c = self.leading()
        return 1 if c > 0 else -1

    # -- display -----------------------------------------------------------

    def text(self):
        """Canonical text: graded-lex descending, explicit signs."""
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for v, k in zip(self.vars, e):
                if k == 1:
                    factors.append(str(v))
                elif k:
                    factors.append(f"{v}^{k}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"MultiPoly({self.text()})"


# -- division and gcd -------------------------------------------------------


def _divides_mono(e1, e2):
    return all(a <= b for a, b in zip(e1, e2))


def try_divide(f, g):
    """Return f/g if g divides f exactly, else None."""
    if g.is_zero():
        return None
    if f.is_zero():
        return f
    if g.is_constant():
        return f * (1 / g.terms[()])
    vars, i1, i2 = _merge_vars(f.vars, g.vars)
    rem = _remap(f.terms, len(f.vars), len(vars), i1)
    gt = _remap(g.terms, len(g.vars), len(vars), i2)
    g_lead = max(gt, key=_grlex_key)
    g_lc = gt[g_lead]
    quo = {}
    while rem:
        e = max(rem, key=_grlex_key)
        if not _divides_mono(g_lead, e):
            return None
        q_exp = tuple(a - b for a, b in zip(e, g_lead))
        q_c = rem[e] / g_lc
        quo[q_exp] = q_c
        for ge, gc in gt.items():
            t = tuple(a + b for a, b in zip(q_exp, ge))
            s = rem.get(t, _ZERO) - q_c * gc
            if s == 0:
                rem.pop(t, None)
            else:
                rem[t] = s
    return MultiPoly._make(vars, quo)


def _mono_gcd(f):
    """Largest monomial dividing every term of f, as (vars, exp)."""
    it = iter(f.terms)
    e = list(next(it))
    for exp in it:
        for i, k in enumerate(exp):
            if k < e[i]:
                e[i] = k
        if not any(e):
            break
    return tuple(e)


def _strip_mono(f, e):
    if not any(e):
        return f
    return MultiPoly._make(f.vars, {tuple(a - b for a, b in zip(exp, e)): c for exp, c in f.terms.items()})


def _coeffs_in(f, v):
    """View f as a univariate polynomial in v: dict degree -> MultiPoly."""
    if v not in f.vars:
        return {0: f}
    i = f.vars.index(v)
    rest = f.vars[:i] + f.vars[i + 1 :]
    out = {}
    for e, c in f.terms.items():
        d = e[i]
        re = e[:i] + e[i + 1 :]
        out.setdefault(d, {})[re] = c
    return {d: MultiPoly._make(rest, t) for d, t in out.items()}


def _from_coeffs(coeffs, v):
    out = MultiPoly((), {})
    vp = MultiPoly.variable(v)
    for d, c in coeffs.items():
        out = out + c * vp**d
    return out


def _uni_prem(A, B, v):
    """Pseudo-remainder of A by B viewed in the main variable v."""
    a = _coeffs_in(A, v)
    b = _coeffs_in(B, v)
    da, db = max(a), max(b)
    lb = b[db]
    r = A
    while True:
        rc = _coeffs_in(r, v) if not r.is_zero() else {}
        dr = max(rc, default=-1)
        if dr < db:
            return r
        lead = rc[dr]
        vp = MultiPoly.variable(v) ** (dr - db)
        r = r * lb - lead * vp * B


def _poly_content_in(f, v):
    """Content of f w.r.t. main variable v (gcd of coefficients)."""
    coeffs = list(_coeffs_in(f, v).values())
    g = coeffs[0]
    for c in coeffs[1:]:
        g = poly_gcd(g, c)
        if g.is_constant():
            break
    return g


def _normalize_primitive(f):
    """Scale f to integer-primitive with positive graded-lex leading coefficient."""
    if f.is_zero():
        return f
    c = f.z_content()
    if f.leading_sign() < 0:
        c = -c
    return f * (1 / c)


def poly_gcd(f, g):
    """Gcd of two polynomials, integer-primitive with positive leading coefficient.

    Nonzero constants count as units: gcd(c, g) = 1.  Uses monomial-content
    stripping, trial division, then primitive subresultant PRS in the main
    variable with the smallest degree.
    """
    if f.is_zero():
        return _normalize_primitive(g)
    if g.is_zero():
        return _normalize_primitive(f)
    if f.is_constant() or g.is_constant():
        return MultiPoly.constant(1)
    ef, eg = _mono_gcd(f), _mono_gcd(g)
    f1 = _strip_mono(f, ef)
    g1 = _strip_mono(g, eg)
    common = {}
    for v, k in zip(f.vars, ef):
        if k:
            common[v] = k
    mono = {}
    for v, k in zip(g.vars, eg):
        if v in common:
            mono[v] = min(common[v], k)
    mono_poly = MultiPoly._make(tuple(sorted(mono)), {tuple(mono[v] for v in sorted(mono)): _ONE}) if mono else MultiPoly.constant(1)
    if f1.is_constant() or g1.is_constant():
        return _normalize_primitive(mono_poly)
    cand = _poly_gcd_stripped(f1, g1)
    return _normalize_primitive(mono_poly * cand)


def _poly_gcd_stripped(f, g):
    if f.vars == g.vars and f.terms == g.terms:
        return f
    q = try_divide(f, g)
    if q is not None:
        return g
    q = try_divide(g, f)
    if q is not None:
        return f
    shared = set(f.vars) & set(g.vars)
    if not shared:
        return MultiPoly.constant(1)
    v = min(shared, key=lambda u: (min(f.degree_in(u), g.degree_in(u)), u))
    cf = _poly_content_in(f, v)
    cg = _poly_content_in(g, v)
    ppf = try_divide(f, cf)
    ppg = try_divide(g, cg)
    c = poly_gcd(cf, cg)
    A, B = (ppf, ppg) if ppf.degree_in(v) >= ppg.degree_in(v) else (ppg, ppf)
    while True:
        if B.is_zero():
            h = A
            break
        if B.degree_in(v) == 0:
            h = MultiPoly.constant(1)
            break
        R = _uni_prem(A, B, v)
        if R.is_zero():
            h = B
            break
        # keep growth down: primitive part at each step (desk-scale inputs)
        R = try_divide(R, _poly_content_in(R, v))
        A, B = B, R
    if h.degree_in(v) == 0:
        return _normalize_primitive(c)
    h = try_divide(h, _poly_content_in(h, v))
    return _normalize_primitive(c * h)


# -- rational functions ------------------------------------------------------


class RatFunc:
    """Rational function in canonical form.

    Invariants: den != 0, gcd(num, den) = 1, den integer-primitive with
    positive graded-lex leading coefficient.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den, _canonical=False):
        if _canonical:
            self.num = num
            self.den = den
            return
        if den.is_zero():
            raise ZeroDenominator("denominator is identically zero")
        if num.is_zero():
            self.num = num
            self.den = MultiPoly.constant(1)
            return
        if not den.is_one():
            g = poly_gcd(num, den)
            if not g.is_one():
                num = try_divide(num, g)
                den = try_divide(den, g)
        c = den.z_content()
        if den.leading_sign() < 0:
            c = -c
        if c != 1:
            num = num * (1 / c)
            den = den * (1 / c)
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_poly(p):
        return RatFunc(p, MultiPoly.constant(1), _canonical=True)

    @staticmethod
    def constant(c):
        return RatFunc.from_poly(MultiPoly.constant(c))

    @staticmethod
    def zero():
        return _RF_ZERO

    @staticmethod
    def one():
        return _RF_ONE

    @staticmethod
    def coerce(x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, MultiPoly):
            return RatFunc.from_poly(x)
        if isinstance(x, (int, Fraction)):
            return RatFunc.constant(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_one()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_one()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.constant_value()

    def variables(self):
        return tuple(sorted(set(self.num.vars) | set(self.den.vars)))

    def key(self):
        return (self.num.key(), self.den.key())

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = RatFunc.coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(self.key())

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self):
        return RatFunc(-self.num, self.den, _canonical=True)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = RatFunc.coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RatFunc.from_poly(self.num + other.num)
        g0 = poly_gcd(self.den, other.den)
        if g0.is_one():
            num = self.num * other.den + other.num * self.den
            return RatFunc(num, self.den * other.den)
        b1 = try_divide(self.den, g0)
        d1 = try_divide(other.den, g0)
        t = self.num * d1 + other.num * b1
        g1 = poly_gcd(t, g0)
        if g1.is_one():
            return RatFunc(t, b1 * d1 * g0, _canonical=False)
        return RatFunc(try_divide(t, g1), b1 * d1 * try_divide(g0, g1))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = RatFunc.coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = RatFunc.coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return _RF_ZERO
        if self.den.is_one() and other.den.is_one():
            return RatFunc.from_poly(self.num * other.num)
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num if g1.is_one() else try_divide(self.num, g1)
        d2 = other.den if g1.is_one() else try_divide(other.den, g1)
        n2 = other.num if g2.is_one() else try_divide(other.num, g2)
        d1 = self.den if g2.is_one() else try_divide(self.den, g2)
        return RatFunc(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inv(self):
        if self.num.is_zero():
            raise ZeroDenominator("division by zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = RatFunc.coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inv()

    def __pow__(self, n):
        if n == 0:
            return _RF_ONE
        if n < 0:
            return self.inv() ** (-n)
        num = self.num**n
        den = self.den**n
        return RatFunc(num, den, _canonical=True)

    # -- calculus, substitution, evaluation ----------------------------------

    def differentiate(self, v):
        dn = self.num.derivative(v)
        dd = self.den.derivative(v)
        if dd.is_zero():
            return RatFunc(dn, self.den)
        return RatFunc(dn * self.den - self.num * dd, self.den * self.den)

    def substitute(self, bindings):
        """Compose: variables in ``bindings`` map to RatFuncs, others pass through."""
        bindings = {k: RatFunc.coerce(v) for k, v in bindings.items()}
        num = self.num.substitute_ratfuncs(bindings)
        den = self.den.substitute_ratfuncs(bindings)
        if den.is_zero():
            raise SubstitutionPole("substitution makes the denominator identically zero")
        return num / den

    def evaluate(self, point):
        d = self.den.evaluate(point)
        if d == 0:
            raise EvaluationPole("denominator vanishes at the evaluation point")
        return self.num.evaluate(point) / d

    def evaluate_float(self, point):
        """Float value; used only by the numeric flow sampler."""
        num = 0.0
        den = 0.0
        fpoint = {v: float(x) for v, x in point.items()}
        for poly, acc in ((self.num, "n"), (self.den, "d")):
            tot = 0.0
            vals = [fpoint[v] for v in poly.vars]
            for e, c in poly.terms.items():
                t = float(c)
                for b, k in zip(vals, e):
                    if k:
                        t *= b**k
                tot += t
            if acc == "n":
                num = tot
            else:
                den = tot
        return num / den

    # -- display -------------------------------------------------------------

    def text(self):
        if self.den.is_one():
            return self.num.text()
        n = self.num.text()
        if len(self.num.terms) > 1:
            n = f"({n})"
        d = self.den.text()
        if len(self.den.terms) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFunc({self.text()})"


_RF_ZERO = RatFunc.from_poly(MultiPoly.constant(0))
_RF_ONE = RatFunc.from_poly(MultiPoly.constant(1))


def normalize(f):
    """Re-run canonicalization (idempotent on well-formed values)."""
    return RatFunc(f.num, f.den)


class Dual:
    """Dual numbers a + b*eps with eps^2 = 0 over the rational-function field.

    Used to push first-order perturbations through chart evaluation; the
    base component must be invertible wherever a division happens.
    """

    __slots__ = ("a", "b")

    def __init__(self, a, b=None):
        self.a = RatFunc.coerce(a)
        self.b = RatFunc.coerce(b) if b is not None else RatFunc.zero()

    @staticmethod
    def coerce(x):
        if isinstance(x, Dual):
            return x
        return Dual(RatFunc.coerce(x))

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __add__(self, other):
        other = Dual.coerce(other)
        return Dual(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = Dual.coerce(other)
        return Dual(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return Dual.coerce(other) - self

    def __mul__(self, other):
        other = Dual.coerce(other)
        return Dual(self.a * other.a, self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Dual.coerce(other)
        if other.a.is_zero():
            raise ZeroDenominator("dual division by an infinitesimal")
        inv_a = other.a.inv()
        base = self.a * inv_a
        return Dual(base, (self.b - base * other.b) * inv_a)

    def __rtruediv__(self, other):
        return Dual.coerce(other) / self

    def __repr__(self):
        return f"Dual({self.a.text()}, {self.b.text()})"
