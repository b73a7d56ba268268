"""Commutative polynomials over Q and elements of S (x) S.

``Polynomial`` is keyed by exponent tuples; its length is the number of
variables (2 for k[x, y], 1 for k[x]).  ``BiTensor`` represents elements of
the enveloping algebra S^e = S (x) S as sums of monomial (x) monomial.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Mapping

VARS = {1: ("x",), 2: ("x", "y")}


def _clean(terms):
    return {k: Fraction(v) for k, v in terms.items() if v}


class Polynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        self.nvars = nvars
        self.terms = _clean(terms or {})
        for k in self.terms:
            if len(k) != nvars or min(k, default=0) < 0:
                raise ValueError(f"bad exponent {k} for {nvars} variables")

    @classmethod
    def constant(cls, nvars, c=1):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps, c=1):
        return cls(len(exps), {tuple(exps): c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return Polynomial.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return Polynomial(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.nvars, {k: v * other for k, v in self.terms.items()})
        other = self._coerce(other)
        t: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                t[k] = t.get(k, 0) + v1 * v2
        return Polynomial(self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Polynomial.constant(self.nvars)
        for _ in range(n):
            out = out * self
        return out

    def diff(self, i: int) -> "Polynomial":
        t = {}
        for k, v in self.terms.items():
            if k[i]:
                e = list(k)
                e[i] -= 1
                t[tuple(e)] = v * k[i]
        return Polynomial(self.nvars, t)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(k) for k in self.terms), default=-1)

    def homogeneous_components(self) -> dict:
        out: dict = {}
        for k, v in self.terms.items():
            out.setdefault(sum(k), {})[k] = v
        return {d: Polynomial(self.nvars, t) for d, t in out.items()}

    def is_homogeneous(self) -> bool:
        return len({sum(k) for k in self.terms}) <= 1

    def coefficient(self, exps) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        names = VARS.get(self.nvars, tuple(f"v{i}" for i in range(self.nvars)))
        return format_terms(
            sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0])),
            lambda k: _mono_str(names, k),
        )

    # univariate helpers (used by the A_h family)

    def lead(self):
        if self.nvars != 1:
            raise ValueError("univariate only")
        d = self.degree()
        return d, self.terms.get((d,), Fraction(0))

    def divmod(self, other: "Polynomial"):
        if self.nvars != 1 or other.nvars != 1:
            raise ValueError("univariate only")
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        dq, lc = other.lead()
        q: dict = {}
        r = Polynomial(1, self.terms)
        while r and r.degree() >= dq:
            dr, lr = r.lead()
            c = lr / lc
            q[(dr - dq,)] = c
            r = r - other * Polynomial(1, {(dr - dq,): c})
        return Polynomial(1, q), r

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def monic(self):
        if not self:
            return self
        return self * (1 / self.lead()[1])


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd in Q[x]; gcd(0, 0) = 0."""
    while b:
        a, b = b, a % b
    return a.monic()


def _mono_str(names, k):
    parts = []
    for n, e in zip(names, k):
        if e == 1:
            parts.append(n)
        elif e > 1:
            parts.append(f"{n}^{e}")
    return " ".join(parts)


def format_terms(items, mono_str) -> str:
    """Render ``[(key, coeff), ...]`` as ``c1 m1 + c2 m2 - ...``."""
    out = []
    for k, c in items:
        m = mono_str(k)
        if not m:
            body = str(abs(c))
        elif abs(c) == 1:
            body = m
        else:
            body = f"{abs(c)} {m}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out) if out else "0"


class BiTensor:
    """Element of S (x) S stored as ``{(left_exps, right_exps): coeff}``."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping | None = None):
        self.nvars = nvars
        self.terms = _clean(terms or {})

    @classmethod
    def pure(cls, left: Polynomial, right: Polynomial, weight=1):
        t: dict = {}
        for k1, v1 in left.terms.items():
            for k2, v2 in right.terms.items():
                t[(k1, k2)] = t.get((k1, k2), 0) + weight * v1 * v2
        return cls(left.nvars, t)

    @classmethod
    def one(cls, nvars):
        z = (0,) * nvars
        return cls(nvars, {(z, z): 1})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, BiTensor):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __add__(self, other):
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return BiTensor(self.nvars, t)

    def __neg__(self):
        return BiTensor(self.nvars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        # S^e is commutative: (a|b)(c|d) = ac|bd
        if isinstance(other, (int, Fraction)):
            return BiTensor(self.nvars, {k: v * other for k, v in self.terms.items()})
        t: dict = {}
        for (l1, r1), v1 in self.terms.items():
            for (l2, r2), v2 in other.terms.items():
                k = (tuple(a + b for a, b in zip(l1, l2)), tuple(a + b for a, b in zip(r1, r2)))
                t[k] = t.get(k, 0) + v1 * v2
        return BiTensor(self.nvars, t)

    __rmul__ = __mul__

    def apply_derivation(self, der) -> "BiTensor":
        """``der (x) 1 + 1 (x) der`` for a derivation ``der`` of S."""
        out = BiTensor(self.nvars)
        for (l, r), v in self.terms.items():
            lp, rp = Polynomial.monomial(l), Polynomial.monomial(r)
            out = out + BiTensor.pure(der(lp), rp, v) + BiTensor.pure(lp, der(rp), v)
        return out

    def multiplied(self) -> Polynomial:
        """The multiplication map S (x) S -> S."""
        t: dict = {}
        for (l, r), v in self.terms.items():
            k = tuple(a + b for a, b in zip(l, r))
            t[k] = t.get(k, 0) + v
        return Polynomial(self.nvars, t)

    def __repr__(self):
        names = VARS.get(self.nvars)
        parts = []
        for (l, r), v in sorted(self.terms.items()):
            parts.append(f"{v}*({_mono_str(names, l) or '1'}|{_mono_str(names, r) or '1'})")
        return "BiTensor(" + " + ".join(parts) + ")" if parts else "BiTensor(0)"


def difference_quotients(g: Polynomial):
    """``(dx, dy)`` with ``g|1 - 1|g = dx (x|1 - 1|x) + dy (y|1 - 1|y)`` in k[x,y]^e.

    For ``x^a y^b`` the y-quotient keeps ``x^a`` on the left and the
    x-quotient carries ``y^b`` on the right:
    dy = sum_{s+t=b-1} x^a y^s | y^t,  dx = sum_{s+t=a-1} x^s | x^t y^b.
    One-variable input returns ``(dx, None)``.
    """
    n = g.nvars
    dx: dict = {}
    dy: dict = {}
    for k, v in g.terms.items():
        a = k[0]
        rest = k[1:]
        for s in range(a):
            key = ((s,) + (0,) * (n - 1), (a - 1 - s,) + rest)
            dx[key] = dx.get(key, 0) + v
        if n == 2:
            b = k[1]
            for s in range(b):
                key = ((a, s), (0, b - 1 - s))
                dy[key] = dy.get(key, 0) + v
    return BiTensor(n, dx), (BiTensor(n, dy) if n == 2 else None)


def binomial_shift(m: int, g) -> list:
    """Coefficients of ``(E + g)^m`` as a list indexed by the power of E."""
    return [comb(m, j) * Fraction(g) ** (m - j) for j in range(m + 1)]
