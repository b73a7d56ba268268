"""Finite bases of internal-degree slabs of U-valued cochain spaces.

A q-cochain ``u (x) w`` has internal degree ``|u| - |w|``.  The degree-i slab
is infinite dimensional only through powers of E, so it is cut at E-degree
``e_bound``.  Every differential and sharp operator used here is E-degree
non-increasing, which makes each truncation a subcomplex.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable

from .pbw import ArrangementAlgebra, PbwElement

HAT = {"x": "x̂", "y": "ŷ", "D": "D̂", "E": "Ê"}

COMPLEXES = ("hochschild-koszul", "x-complex")


def label_str(label: tuple) -> str:
    return "∧".join(HAT[g] for g in label) if label else "1"


def labels_at(complex_id: str, q: int, nvars: int = 2) -> list:
    """Exterior labels of the complex in cochain position q."""
    if complex_id == "hochschild-koszul":
        names = ("x", "y")[:nvars]
    elif complex_id == "x-complex":
        names = ("x", "y", "D", "E")
    else:
        raise ValueError(f"unknown complex {complex_id!r}")
    return [tuple(c) for c in combinations(names, q)]


def label_degree(algebra, label: tuple) -> int:
    d_deg = getattr(algebra, "d_deg", 1)
    return sum({"x": 1, "y": 1, "D": d_deg, "E": 0}[g] for g in label)


@dataclass
class Cochain:
    """``sum_w components[w] (x) w`` for exterior labels w in one position."""

    algebra: object
    q: int
    components: dict = field(default_factory=dict)

    def __post_init__(self):
        self.components = {w: u for w, u in self.components.items() if u}

    def __getitem__(self, label):
        return self.components.get(label, self.algebra.zero())

    def __bool__(self):
        return bool(self.components)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.q == other.q and self.components == other.components

    def _combine(self, other, sign):
        if other.q != self.q:
            raise ValueError("cochains in different positions")
        comp = dict(self.components)
        for w, u in other.components.items():
            comp[w] = comp[w] + u * sign if w in comp else u * sign
        return Cochain(self.algebra, self.q, comp)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __mul__(self, c):
        return Cochain(self.algebra, self.q, {w: u * c for w, u in self.components.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def e_degree(self) -> int:
        if not isinstance(self.algebra, ArrangementAlgebra):
            return 0
        return max((k[3] for u in self.components.values() for k in u.terms), default=0)

    def __str__(self):
        if not self.components:
            return "0"
        parts = []
        for w in sorted(self.components):
            u = self.components[w]
            body = str(u)
            if w:
                body = f"({body})⊗{label_str(w)}"
            parts.append(body)
        return " + ".join(parts)

    __repr__ = __str__


@dataclass(frozen=True)
class SliceKey:
    complex_id: str
    q: int
    i: int
    e_bound: int
    slack: int = 0

    def __post_init__(self):
        if self.complex_id not in COMPLEXES:
            raise ValueError(f"unknown complex {self.complex_id!r}")
        if self.q < 0 or self.e_bound < 0 or self.slack < 0:
            raise ValueError("q, e_bound and slack must be nonnegative")


class OutsideSlab(ValueError):
    pass


@dataclass
class SliceBasis:
    key: SliceKey
    algebra: object
    monomials: list  # [(pbw key, label)]

    def __post_init__(self):
        self.index = {m: n for n, m in enumerate(self.monomials)}

    def __len__(self):
        return len(self.monomials)

    @property
    def dim(self):
        return len(self.monomials)

    def level(self, k: int) -> list:
        """Indices of basis monomials with E-exponent at most k."""
        return [n for n, (mono, _) in enumerate(self.monomials) if mono[3] <= k]

    def element(self, n: int) -> Cochain:
        mono, label = self.monomials[n]
        return Cochain(self.algebra, self.key.q, {label: self.algebra.monomial(mono)})

    def to_json(self):
        return {
            "key": self.key.__dict__,
            "dim": self.dim,
            "monomials": [
                f"{self.algebra.mono_str(m) or '1'} ⊗ {label_str(w)}" for m, w in self.monomials
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False, indent=1)


def _monomials_of_degree(algebra: ArrangementAlgebra, n: int, e_bound: int):
    d = algebra.d_deg
    out = []
    if n < 0:
        return out
    for c in range(n // d + 1):
        for a in range(n - d * c + 1):
            b = n - d * c - a
            for m in range(e_bound + 1):
                out.append((a, b, c, m))
    return out


def _order(mono, label_index):
    a, b, c, m = mono
    # E-heavy and D-heavy monomials first: boundaries then pivot on them and
    # cohomology representatives come out as short as possible.
    return (-m, -c, label_index, -b, a)


def basis(key: SliceKey, algebra: ArrangementAlgebra) -> SliceBasis:
    labels = labels_at(key.complex_id, key.q)
    mons = []
    for li, w in enumerate(labels):
        target = key.i + label_degree(algebra, w)
        for mono in _monomials_of_degree(algebra, target, key.e_bound):
            mons.append((_order(mono, li), (mono, w)))
    mons.sort()
    return SliceBasis(key, algebra, [m for _, m in mons])


def to_vector(c: Cochain, b: SliceBasis) -> dict:
    v = {}
    for w, u in c.components.items():
        for mono, coeff in u.terms.items():
            n = b.index.get((mono, w))
            if n is None:
                raise OutsideSlab(f"{b.algebra.mono_str(mono)} ⊗ {label_str(w)} not in slab {b.key}")
            v[n] = coeff
    return v


def from_vector(v: dict, b: SliceBasis) -> Cochain:
    comp: dict = {}
    for n, coeff in v.items():
        mono, w = b.monomials[n]
        comp.setdefault(w, {})[mono] = coeff
    return Cochain(b.algebra, b.key.q, {w: PbwElement(b.algebra, t) for w, t in comp.items()})


# Stabilization ------------------------------------------------------------


class NotStable(RuntimeError):
    def __init__(self, certificate):
        super().__init__(f"no stabilization up to N={certificate.trace[-1][0]}: {certificate.trace}")
        self.certificate = certificate


@dataclass
class StabilizationCertificate:
    trace: list = field(default_factory=list)  # [(N, sigma, dims)]
    verdict: str = "not-stable"
    window: int = 3

    def to_json(self):
        return {
            "verdict": self.verdict,
            "window": self.window,
            "trace": [{"N": n, "sigma": s, "dims": _jsonable(d)} for n, s, d in self.trace],
        }


def _jsonable(d):
    if isinstance(d, (tuple, list)):
        return [_jsonable(x) for x in d]
    if isinstance(d, Fraction):
        return str(d)
    return d


def stabilize(
    compute: Callable[[int, int], object],
    start: tuple = (6, 3),
    max_n: int | None = None,
    window: int = 3,
):
    """Evaluate ``compute(N, sigma)`` for N = N0, N0+1, ... until ``window``
    consecutive results agree.

    Returns ``(dims, certificate)`` where dims is the value at the first N of
    the agreeing run.  Raises NotStable past ``max_n`` (default N0 + 12).
    """
    n0, sigma = start
    if max_n is None:
        max_n = n0 + 12
    cert = StabilizationCertificate(window=window)
    for n in range(n0, max_n + 1):
        cert.trace.append((n, sigma, compute(n, sigma)))
        tail = [d for _, _, d in cert.trace[-window:]]
        if len(tail) == window and all(d == tail[0] for d in tail):
            cert.verdict = "stable"
            return tail[0], cert
    raise NotStable(cert)
