"""PBW normal forms in the two enveloping algebras studied here.

``ArrangementAlgebra``: U(S, Der A) for a central line arrangement with
defining polynomial Q = x F, F = prod_i (y + t_i x), generated by x, y, D, E
with D = F d/dy and E the Euler derivation.  Normal monomials are
``x^a y^b D^c E^m``, keyed ``(a, b, c, m)``.

``AhAlgebra``: A_h = k<x, y>/(yx - xy - h) with h in k[x]; normal monomials
``x^a y^b`` keyed ``(a, b)``.

Both algebras have the shape S[L] with L acting on S by a derivation, so a
product of normal monomials is normalized in closed form: an E-power is
shifted past a homogeneous factor (E^m s = s (E + |s|)^m) and a power of the
derivation generator is moved past a polynomial with the Leibniz rule
(D^c s = sum_k binom(c, k) D(s)^(k) D^(c-k)).
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping

from .poly import Polynomial, binomial_shift, format_terms


class AlgebraMismatch(ValueError):
    pass


class PbwElement:
    """Immutable element of a PBW algebra: ``{monomial key: Fraction}``."""

    __slots__ = ("algebra", "terms", "_hash")

    def __init__(self, algebra, terms: Mapping | None = None):
        self.algebra = algebra
        t = {}
        for k, v in (terms or {}).items():
            v = v if isinstance(v, Fraction) else Fraction(v)
            if v:
                t[k] = v
        self.terms = t
        self._hash = None

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return self.algebra.scalar(other)
        if isinstance(other, Polynomial):
            return self.algebra.from_polynomial(other)
        if not isinstance(other, PbwElement):
            raise TypeError(f"cannot combine PbwElement with {type(other).__name__}")
        if other.algebra != self.algebra:
            raise AlgebraMismatch("elements live in different algebras")
        return other

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            other = self._check(other)
        if not isinstance(other, PbwElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        other = self._check(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return PbwElement(self.algebra, t)

    __radd__ = __add__

    def __neg__(self):
        return PbwElement(self.algebra, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PbwElement(self.algebra, {k: v * other for k, v in self.terms.items()})
        return self.algebra.multiply(self, self._check(other))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return self._check(other) * self

    def __pow__(self, n):
        out = self.algebra.one()
        for _ in range(n):
            out = out * self
        return out

    def __repr__(self):
        return f"PbwElement({self})"

    def __str__(self):
        return self.algebra.format(self)


def multiply(u: PbwElement, v: PbwElement) -> PbwElement:
    return u * v


def commutator(u: PbwElement, v: PbwElement) -> PbwElement:
    return u * v - v * u


class PbwAlgebra:
    generators: tuple = ()
    nvars: int = 0

    def one(self):
        return PbwElement(self, {self.unit_key: 1})

    def zero(self):
        return PbwElement(self)

    def scalar(self, c):
        return PbwElement(self, {self.unit_key: c})

    def multiply(self, u: PbwElement, v: PbwElement) -> PbwElement:
        if u.algebra != self or v.algebra != self:
            raise AlgebraMismatch("elements live in different algebras")
        out: dict = {}
        for k1, c1 in u.terms.items():
            for k2, c2 in v.terms.items():
                c = c1 * c2
                for k, w in self._mono_mul(k1, k2):
                    out[k] = out.get(k, 0) + c * w
        return PbwElement(self, out)

    def normalize(self, word) -> PbwElement:
        """Normal form of a product of letters.

        Each letter is a generator name, a PbwElement, a Polynomial in the
        commutative variables, or a scalar.
        """
        out = self.one()
        for letter in word:
            out = out * self.coerce(letter)
        return out

    def coerce(self, obj) -> PbwElement:
        if isinstance(obj, PbwElement):
            if obj.algebra != self:
                raise AlgebraMismatch("element from another algebra")
            return obj
        if isinstance(obj, str):
            return self.gen(obj)
        if isinstance(obj, Polynomial):
            return self.from_polynomial(obj)
        return self.scalar(obj)

    def parse(self, text: str) -> PbwElement:
        return parse_element(self, text)

    def format(self, u: PbwElement) -> str:
        items = sorted(u.terms.items(), key=lambda kv: self.sort_key(kv[0]))
        return format_terms(items, self.mono_str)

    def mono_str(self, key) -> str:
        parts = []
        for name, e in zip(self.generators, key):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return " ".join(parts)

    def sort_key(self, key):
        return key

    def monomial(self, key, c=1) -> PbwElement:
        return PbwElement(self, {tuple(key): c})

    def gen(self, name: str) -> PbwElement:
        if name not in self.generators:
            raise KeyError(f"unknown generator {name!r}")
        key = [0] * len(self.generators)
        key[self.generators.index(name)] = 1
        return PbwElement(self, {tuple(key): 1})

    def from_polynomial(self, p: Polynomial) -> PbwElement:
        if p.nvars != self.nvars:
            raise ValueError("polynomial ring mismatch")
        pad = (0,) * (len(self.generators) - self.nvars)
        return PbwElement(self, {k + pad: v for k, v in p.terms.items()})

    def polynomial_part(self, u: PbwElement) -> Polynomial:
        """The element as a polynomial in S; raises if it involves other generators."""
        t = {}
        for k, v in u.terms.items():
            if any(k[self.nvars:]):
                raise ValueError(f"{u} is not in S")
            t[k[: self.nvars]] = v
        return Polynomial(self.nvars, t)


class ArrangementAlgebra(PbwAlgebra):
    """U(S, Der A) for the arrangement x * prod (y + t_i x) = 0.

    ``slopes`` lists t_1 = 0, t_2, ..., t_{l-1}, pairwise distinct.
    """

    generators = ("x", "y", "D", "E")
    nvars = 2
    unit_key = (0, 0, 0, 0)

    def __init__(self, slopes):
        slopes = tuple(Fraction(t) for t in slopes)
        if len(slopes) < 2:
            raise ValueError("need at least three lines (two slopes)")
        if slopes[0] != 0:
            raise ValueError("first slope must be 0 so that y divides F")
        if len(set(slopes)) != len(slopes):
            raise ValueError("slopes must be pairwise distinct")
        self.slopes = slopes
        self.lines = len(slopes) + 1
        self.d_deg = self.lines - 2
        F = Polynomial.constant(2)
        for t in slopes:
            F = F * Polynomial(2, {(0, 1): 1, (1, 0): t})
        self.F = F
        self.Q = Polynomial.variable(2, 0) * F
        self._dpow = lru_cache(maxsize=None)(self._dpow_uncached)
        self._mono_mul = lru_cache(maxsize=None)(self._mono_mul_uncached)

    @classmethod
    def three_lines(cls, t):
        return cls((0, t))

    def __eq__(self, other):
        return isinstance(other, ArrangementAlgebra) and self.slopes == other.slopes

    def __hash__(self):
        return hash(("arr", self.slopes))

    def __repr__(self):
        return f"ArrangementAlgebra(slopes={[str(t) for t in self.slopes]})"

    @property
    def ell(self):
        return self.lines

    def D_S(self, p: Polynomial) -> Polynomial:
        """Action of D = F d/dy on S."""
        return self.F * p.diff(1)

    def E_S(self, p: Polynomial) -> Polynomial:
        return Polynomial(2, {k: v * sum(k) for k, v in p.terms.items()})

    def derivation(self, name):
        return {"D": self.D_S, "E": self.E_S}[name]

    def saito_determinant(self) -> Polynomial:
        """det [[E(x), E(y)], [D(x), D(y)]] computed from the two derivations."""
        x = Polynomial.variable(2, 0)
        y = Polynomial.variable(2, 1)
        return self.E_S(x) * self.D_S(y) - self.E_S(y) * self.D_S(x)

    def saito_check(self) -> bool:
        det = self.saito_determinant()
        ratio = None
        for k, v in self.Q.terms.items():
            r = det.coefficient(k) / v
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False
        return bool(ratio) and det == self.Q * ratio

    def degree(self, key) -> int:
        a, b, c, _ = key
        return a + b + self.d_deg * c

    def sort_key(self, key):
        return (self.degree(key), key[3], key[2], -key[0], key)

    def _dpow_uncached(self, a, b, k) -> Polynomial:
        """D_S^k (x^a y^b)."""
        p = Polynomial.monomial((a, b))
        for _ in range(k):
            p = self.D_S(p)
        return p

    def _mono_mul_uncached(self, k1, k2):
        a1, b1, c1, m1 = k1
        a2, b2, c2, m2 = k2
        shift = binomial_shift(m1, a2 + b2 + self.d_deg * c2)
        out: dict = {}
        for k in range(c1 + 1):
            poly = self._dpow(a2, b2, k)
            if not poly:
                continue
            w = comb(c1, k)
            c = c1 - k + c2
            for (pa, pb), pv in poly.terms.items():
                for j, sj in enumerate(shift):
                    if not sj:
                        continue
                    key = (a1 + pa, b1 + pb, c, j + m2)
                    out[key] = out.get(key, 0) + w * pv * sj
        return tuple((k, v) for k, v in out.items() if v)

    def degree_components(self, u: PbwElement) -> dict:
        out: dict = {}
        for k, v in u.terms.items():
            out.setdefault(self.degree(k), {})[k] = v
        return {d: PbwElement(self, t) for d, t in out.items()}


class AhAlgebra(PbwAlgebra):
    """A_h = k<x, y>/(yx - xy - h), normal monomials x^a y^b."""

    generators = ("x", "y")
    nvars = 1
    unit_key = (0, 0)

    def __init__(self, h):
        if isinstance(h, str):
            h = parse_polynomial(h, 1)
        elif not isinstance(h, Polynomial):
            h = Polynomial.constant(1, h)
        if not h:
            raise ValueError("h must be nonzero")
        if h.nvars != 1:
            raise ValueError("h must be a polynomial in x")
        self.h = h
        self._ypow = lru_cache(maxsize=None)(self._ypow_uncached)
        self._mono_mul = lru_cache(maxsize=None)(self._mono_mul_uncached)

    def __eq__(self, other):
        return isinstance(other, AhAlgebra) and self.h == other.h

    def __hash__(self):
        return hash(("ah", frozenset(self.h.terms.items())))

    def __repr__(self):
        return f"AhAlgebra(h={self.h})"

    def y_S(self, p: Polynomial) -> Polynomial:
        """Action of y = h d/dx on S = k[x]."""
        return self.h * p.diff(0)

    def derivation(self, name):
        return {"y": self.y_S}[name]

    def _ypow_uncached(self, a, k) -> Polynomial:
        p = Polynomial.monomial((a,))
        for _ in range(k):
            p = self.y_S(p)
        return p

    def _mono_mul_uncached(self, k1, k2):
        a1, b1 = k1
        a2, b2 = k2
        out: dict = {}
        for k in range(b1 + 1):
            poly = self._ypow(a2, k)
            w = comb(b1, k)
            for (pa,), pv in poly.terms.items():
                key = (a1 + pa, b1 - k + b2)
                out[key] = out.get(key, 0) + w * pv
        return tuple((k, v) for k, v in out.items() if v)

    def sort_key(self, key):
        return (key[1], key[0])


def degree_components(u: PbwElement) -> dict:
    return u.algebra.degree_components(u)


def bimodule_eval(bt, u: PbwElement) -> PbwElement:
    """``sum w * left * u * right`` for a BiTensor ``sum w (left | right)``."""
    alg = u.algebra
    pad = (0,) * (len(alg.generators) - alg.nvars)
    out = alg.zero()
    for (l, r), w in bt.terms.items():
        out = out + alg.monomial(l + pad, w) * u * alg.monomial(r + pad)
    return out


def e_truncation_degree(u: PbwElement) -> int:
    if not isinstance(u.algebra, ArrangementAlgebra):
        return 0
    return max((k[3] for k in u.terms), default=0)


# Text round trip ---------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z])|(\^)|([-+*()]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        num, name, caret, op = m.groups()
        if num is not None:
            out.append(("num", Fraction(num)))
        elif name is not None:
            out.append(("gen", name))
        elif caret is not None:
            out.append(("op", "^"))
        else:
            out.append(("op", op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    """expr := ['+'|'-'] term (('+'|'-') term)*;  term := factor ('*'? factor)*;
    factor := (number | generator | '(' expr ')') ['^' integer]."""

    def __init__(self, tokens, atom, one, zero):
        self.toks = tokens
        self.i = 0
        self.atom = atom
        self.one = one
        self.zero = zero

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expr(self):
        total = self.zero
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        total = total + self.term() * sign
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                total = total + (t if val == "+" else t * -1)
            else:
                return total

    def term(self):
        out = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                out = out * self.factor()
            elif kind in ("num", "gen") or (kind == "op" and val == "("):
                out = out * self.factor()
            else:
                return out

    def factor(self):
        kind, val = self.take()
        if kind == "num":
            base = self.one * val
        elif kind == "gen":
            base = self.atom(val)
        elif kind == "op" and val == "(":
            base = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parenthesis")
        else:
            raise ValueError(f"unexpected token {val!r}")
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, n = self.take()
            if kind != "num" or n.denominator != 1:
                raise ValueError("exponent must be a nonnegative integer")
            base = base ** int(n)
        return base


def parse_element(algebra: PbwAlgebra, text: str) -> PbwElement:
    """Parse a generator expression and normalize it (arbitrary words allowed)."""
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty expression")
    p = _Parser(tokens, algebra.gen, algebra.one(), algebra.zero())
    out = p.expr()
    if p.i != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return out


def parse_polynomial(text: str, nvars: int) -> Polynomial:
    names = ("x", "y")[:nvars]

    def atom(name):
        if name not in names:
            raise ValueError(f"unknown variable {name!r}")
        return Polynomial.variable(nvars, names.index(name))

    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty expression")
    p = _Parser(tokens, atom, Polynomial.constant(nvars), Polynomial(nvars))
    out = p.expr()
    if p.i != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return out
