"""Exact arithmetic substrate.

Rationals are :class:`fractions.Fraction`.  On top of that this module
provides affine parameter expressions (:class:`LinExpr`), truncated
univariate series (:class:`SeriesPoly`), sparse weighted multivariate
polynomials over Q or F_p (:class:`Ring`, :class:`MultiPoly`), dense
univariate helpers over F_p, and rank computations over fraction fields.
"""
from __future__ import annotations

import hashlib
import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import NonIntegral, NotDivisible, WeightMismatch

Rational = Fraction

DEFAULT_PRIME = 10007


# ---------------------------------------------------------------------------
# affine expressions in the model parameter r
# ---------------------------------------------------------------------------

# shorthand used in the model tables
ALIASES = {
    "q": (1, -1), "s": (1, 1), "t": (1, 2), "u": (1, 3),
    "v": (2, 1), "y": (2, -2), "z": (2, -1), "m": (3, -2),
}

_TERM = re.compile(r"([+-]?)(\d*)([a-z]?)")


@dataclass(frozen=True, order=True)
class LinExpr:
    """``slope * r + offset`` with slope and offset in (1/2)Z, stored doubled."""

    slope2: int
    offset2: int

    @classmethod
    def of(cls, slope=0, offset=0) -> LinExpr:
        s2, o2 = Fraction(slope) * 2, Fraction(offset) * 2
        if s2.denominator != 1 or o2.denominator != 1:
            raise NonIntegral(f"coefficients must lie in (1/2)Z: {slope}, {offset}")
        return cls(int(s2), int(o2))

    @classmethod
    def const(cls, value) -> LinExpr:
        return cls.of(0, value)

    @classmethod
    def parse(cls, text: str | int | LinExpr) -> LinExpr:
        """Parse ``"2r-1"``, ``"z"``, ``"3"``, ``"-r+4"`` or a table alias."""
        if isinstance(text, LinExpr):
            return text
        if isinstance(text, int):
            return cls.const(text)
        src = text.replace(" ", "").replace("*", "")
        if not src:
            raise ValueError("empty expression")
        slope = offset = 0
        pos = 0
        while pos < len(src):
            m = _TERM.match(src, pos)
            if m is None or m.end() == pos:
                raise ValueError(f"cannot parse {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            digits, var = m.group(2), m.group(3)
            if not digits and not var:
                raise ValueError(f"cannot parse {text!r}")
            k = int(digits) if digits else 1
            if var == "r":
                slope += sign * k
            elif var in ALIASES:
                a, b = ALIASES[var]
                slope += sign * k * a
                offset += sign * k * b
            elif var:
                raise ValueError(f"unknown symbol {var!r} in {text!r}")
            else:
                offset += sign * k
            pos = m.end()
        return cls.of(slope, offset)

    @property
    def slope(self) -> Fraction:
        return Fraction(self.slope2, 2)

    @property
    def offset(self) -> Fraction:
        return Fraction(self.offset2, 2)

    def __call__(self, r: int) -> Fraction:
        return Fraction(self.slope2 * r + self.offset2, 2)

    def at(self, r: int) -> int:
        """Integer value at ``r``; raises :class:`NonIntegral` on a half-integer."""
        v = self.slope2 * r + self.offset2
        if v % 2:
            raise NonIntegral(f"{self} is not integral at r={r}")
        return v // 2

    def __add__(self, other) -> LinExpr:
        other = _as_linexpr(other)
        return LinExpr(self.slope2 + other.slope2, self.offset2 + other.offset2)

    __radd__ = __add__

    def __sub__(self, other) -> LinExpr:
        other = _as_linexpr(other)
        return LinExpr(self.slope2 - other.slope2, self.offset2 - other.offset2)

    def __rsub__(self, other) -> LinExpr:
        return _as_linexpr(other) - self

    def __neg__(self) -> LinExpr:
        return LinExpr(-self.slope2, -self.offset2)

    def __mul__(self, k) -> LinExpr:
        k = Fraction(k)
        return LinExpr.of(self.slope * k, self.offset * k)

    __rmul__ = __mul__

    def half(self) -> LinExpr:
        return self * Fraction(1, 2)

    def __str__(self) -> str:
        s, o = self.slope, self.offset
        if s == 0:
            return str(o)
        head = {1: "r", -1: "-r"}.get(s, f"{s}r")
        if o == 0:
            return head
        return f"{head}{'+' if o > 0 else '-'}{abs(o)}"

    def __repr__(self) -> str:
        return f"LinExpr({self})"


def _as_linexpr(x) -> LinExpr:
    if isinstance(x, LinExpr):
        return x
    return LinExpr.of(0, x)


# ---------------------------------------------------------------------------
# truncated univariate series
# ---------------------------------------------------------------------------

class SeriesPoly:
    """Univariate series in ``t`` with exact coefficients.

    ``bound`` is the number of stored coefficients (terms ``t^0 .. t^(bound-1)``
    are exact); ``bound=None`` marks an exact polynomial, which is kept with
    trailing zeros trimmed.
    """

    __slots__ = ("coeffs", "bound")

    def __init__(self, coeffs: Iterable = (), bound: int | None = None):
        cs = [c if isinstance(c, (int, Fraction)) else Fraction(c) for c in coeffs]
        cs = [int(c) if isinstance(c, Fraction) and c.denominator == 1 else c for c in cs]
        if bound is None:
            while cs and cs[-1] == 0:
                cs.pop()
        else:
            cs = (cs + [0] * bound)[:bound]
        self.coeffs = tuple(cs)
        self.bound = bound

    @classmethod
    def monomial(cls, k: int, c=1) -> SeriesPoly:
        return cls([0] * k + [c])

    @classmethod
    def from_terms(cls, terms: Mapping[int, object], bound: int | None = None) -> SeriesPoly:
        top = max(terms, default=-1) + 1
        cs = [0] * (top if bound is None else max(top, bound))
        for k, c in terms.items():
            if k < 0:
                raise ValueError("negative exponent")
            cs[k] += c
        return cls(cs, bound)

    @property
    def is_exact(self) -> bool:
        return self.bound is None

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int):
        if k < 0:
            return 0
        if self.bound is not None and k >= self.bound:
            raise IndexError(f"coefficient t^{k} lies beyond the truncation bound {self.bound}")
        return self.coeffs[k] if k < len(self.coeffs) else 0

    def truncate(self, bound: int) -> SeriesPoly:
        if self.bound is not None and bound > self.bound:
            raise ValueError("cannot extend a truncated series")
        return SeriesPoly(self.coeffs[:bound], bound)

    def _combine_bound(self, other: SeriesPoly) -> int | None:
        bs = [b for b in (self.bound, other.bound) if b is not None]
        return min(bs) if bs else None

    def __add__(self, other: SeriesPoly) -> SeriesPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        cs = [self._at(k) + other._at(k) for k in range(n)]
        return SeriesPoly(cs, self._combine_bound(other))

    def __sub__(self, other: SeriesPoly) -> SeriesPoly:
        return self + (-other)

    def __neg__(self) -> SeriesPoly:
        return SeriesPoly([-c for c in self.coeffs], self.bound)

    def __mul__(self, other) -> SeriesPoly:
        if isinstance(other, SeriesPoly):
            return series_mul(self, other, self._combine_bound(other))
        return SeriesPoly([c * other for c in self.coeffs], self.bound)

    __rmul__ = __mul__

    def _at(self, k: int):
        return self.coeffs[k] if k < len(self.coeffs) else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reciprocal_poly(self, s: int) -> SeriesPoly:
        """``t^s * p(1/t)`` for an exact polynomial of degree at most ``s``."""
        if not self.is_exact or self.degree > s:
            raise ValueError("reciprocal needs an exact polynomial of degree <= s")
        cs = [0] * (s + 1)
        for k, c in enumerate(self.coeffs):
            cs[s - k] = c
        return SeriesPoly(cs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SeriesPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return self.bound == other.bound and all(self._at(k) == other._at(k) for k in range(n))

    def __hash__(self):
        return hash((self.coeffs, self.bound))

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*t^{k}" for k, c in enumerate(self.coeffs) if c) or "0"
        tail = "" if self.bound is None else f" + O(t^{self.bound})"
        return f"SeriesPoly({body}{tail})"


def series_mul(a: SeriesPoly, b: SeriesPoly, bound: int | None) -> SeriesPoly:
    """Product of ``a`` and ``b`` truncated at ``bound`` (``None``: exact)."""
    for x in (a, b):
        if x.bound is not None and (bound is None or x.bound < bound):
            raise ValueError("inputs must be known up to the requested bound")
    na, nb = len(a.coeffs), len(b.coeffs)
    n = na + nb - 1 if bound is None else bound
    out = [0] * max(n, 0)
    for i, ca in enumerate(a.coeffs):
        if not ca or i >= n:
            continue
        for j in range(min(nb, n - i)):
            cb = b.coeffs[j]
            if cb:
                out[i + j] += ca * cb
    return SeriesPoly(out, bound)


def one_minus_t_pow(k: int) -> SeriesPoly:
    if k <= 0:
        raise ValueError("exponent must be positive")
    return SeriesPoly.from_terms({0: 1, k: -1})


def inverse_one_minus_t_pow(k: int, bound: int) -> SeriesPoly:
    """1/(1 - t^k) truncated at ``bound``."""
    return SeriesPoly([1 if j % k == 0 else 0 for j in range(bound)], bound)


def divide_by_one_minus_t(p: SeriesPoly, c: int) -> SeriesPoly:
    """Exact quotient ``q`` with ``p = (1 - t)^c q``; synthetic division."""
    if not p.is_exact:
        raise ValueError("divide_by_one_minus_t needs an exact polynomial")
    cs = list(p.coeffs)
    for stage in range(c):
        if sum(cs) != 0:
            raise NotDivisible(f"p(1) != 0 at division stage {stage + 1}")
        # q_k = sum_{j<=k} p_j
        q, acc = [], 0
        for x in cs[:-1]:
            acc += x
            q.append(acc)
        cs = q
    return SeriesPoly(cs)


def complete_homogeneous(d: int, exps: Sequence, r: int | None = None) -> SeriesPoly:
    """h_d(t^e1, ..., t^ek): sum of t^(sum a_i e_i) over monomials of degree d."""
    es = [e.at(r) if isinstance(e, LinExpr) else int(e) for e in exps]
    if any(e < 0 for e in es):
        raise ValueError("exponents must be nonnegative")
    return SeriesPoly.from_terms(_h_terms(d, tuple(es)))


@lru_cache(maxsize=None)
def _h_terms(d: int, es: tuple[int, ...]) -> dict[int, int]:
    terms: dict[int, int] = {}
    for combo in itertools.combinations_with_replacement(range(len(es)), d):
        k = sum(es[i] for i in combo)
        terms[k] = terms.get(k, 0) + 1
    return terms


# ---------------------------------------------------------------------------
# sparse weighted multivariate polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Ring:
    """Polynomial ring with named, weighted variables over Q (``p=None``) or F_p."""

    names: tuple[str, ...]
    weights: tuple[int, ...]
    p: int | None = DEFAULT_PRIME

    def __post_init__(self):
        if len(self.names) != len(self.weights):
            raise ValueError("names and weights differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no variable {name!r} in {self.names}") from None

    def weight(self, name: str) -> int:
        return self.weights[self.index(name)]

    def norm(self, c):
        if self.p is None:
            return c
        if isinstance(c, Fraction):
            return c.numerator * pow(c.denominator, -1, self.p) % self.p
        return c % self.p

    def var(self, name: str) -> MultiPoly:
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return MultiPoly(self, {tuple(e): 1})

    def const(self, c) -> MultiPoly:
        return MultiPoly(self, {(0,) * self.nvars: c})

    def zero(self) -> MultiPoly:
        return MultiPoly(self, {})

    def monomials(self, d: int, allowed: Iterable[int] | None = None) -> list[tuple[int, ...]]:
        """All exponent vectors of weighted degree ``d`` supported on ``allowed``."""
        idx = tuple(range(self.nvars)) if allowed is None else tuple(sorted(allowed))
        return [_expand(e, idx, self.nvars) for e in _monomials(d, tuple(self.weights[i] for i in idx))]

    def drop(self, name: str) -> Ring:
        i = self.index(name)
        return Ring(self.names[:i] + self.names[i + 1:], self.weights[:i] + self.weights[i + 1:], self.p)

    def with_prime(self, p: int | None) -> Ring:
        return Ring(self.names, self.weights, p)


def _expand(e: tuple[int, ...], idx: tuple[int, ...], n: int) -> tuple[int, ...]:
    out = [0] * n
    for i, k in zip(idx, e):
        out[i] = k
    return tuple(out)


@lru_cache(maxsize=4096)
def _monomials(d: int, ws: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    if d < 0:
        return ()
    if not ws:
        return ((),) if d == 0 else ()
    w, rest = ws[0], ws[1:]
    out = []
    for k in range(d // w + 1):
        for tail in _monomials(d - k * w, rest):
            out.append((k,) + tail)
    return tuple(out)


class MultiPoly:
    """Sparse polynomial: exponent tuple -> nonzero coefficient."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Mapping[tuple[int, ...], object]):
        self.ring = ring
        clean = {}
        for e, c in terms.items():
            c = ring.norm(c)
            if c:
                clean[e] = c
        self.terms = clean

    # -- construction helpers
    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> MultiPoly:
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        return self.ring.const(other)

    # -- arithmetic
    def __add__(self, other) -> MultiPoly:
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> MultiPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> MultiPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            return MultiPoly(self.ring, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        out = self.ring.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self.terms == other.terms
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def weighted_degrees(self) -> set[int]:
        w = self.ring.weights
        return {sum(a * b for a, b in zip(e, w)) for e in self.terms}

    def degree(self) -> int:
        """Weighted degree; ``-1`` for the zero polynomial."""
        ds = self.weighted_degrees()
        if not ds:
            return -1
        if len(ds) > 1:
            raise WeightMismatch(f"polynomial is not weighted homogeneous: degrees {sorted(ds)}")
        return ds.pop()

    def is_homogeneous(self) -> bool:
        return len(self.weighted_degrees()) <= 1

    def variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            used.update(self.ring.names[i] for i, k in enumerate(e) if k)
        return used

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    # -- transformations
    def diff(self, name: str) -> MultiPoly:
        i = self.ring.index(name)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                out[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return MultiPoly(self.ring, out)

    def restrict(self, support: Iterable[int]) -> MultiPoly:
        """Set every variable outside ``support`` (indices) to zero."""
        keep = set(support)
        outside = [i for i in range(self.ring.nvars) if i not in keep]
        return MultiPoly._raw(self.ring, {e: c for e, c in self.terms.items()
                                          if all(e[i] == 0 for i in outside)})

    def coefficient_in(self, name: str, k: int) -> MultiPoly:
        """Coefficient of ``name^k`` as a polynomial free of ``name``."""
        i = self.ring.index(name)
        return MultiPoly._raw(self.ring, {e[:i] + (0,) + e[i + 1:]: c
                                          for e, c in self.terms.items() if e[i] == k})

    def substitute(self, name: str, g: MultiPoly) -> MultiPoly:
        return poly_substitute(self, name, g)

    def evaluate(self, point: Sequence):
        """Value at ``point`` (reduced mod p over F_p)."""
        acc = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x ** k
                    if self.ring.p:
                        v %= self.ring.p
            acc += v
        return self.ring.norm(acc)

    def move_to(self, ring: Ring) -> MultiPoly:
        """Re-express in ``ring`` by variable name; variables absent from ``ring`` must not occur."""
        idx = []
        for n in self.ring.names:
            idx.append(ring.names.index(n) if n in ring.names else None)
        out = {}
        for e, c in self.terms.items():
            new = [0] * ring.nvars
            for i, k in enumerate(e):
                if k:
                    if idx[i] is None:
                        raise ValueError(f"variable {self.ring.names[i]} does not exist in target ring")
                    if ring.weights[idx[i]] != self.ring.weights[i]:
                        raise WeightMismatch(f"weight of {self.ring.names[i]} changes")
                    new[idx[i]] = k
            out[tuple(new)] = c
        return MultiPoly(ring, out)

    def lifted(self) -> dict[tuple[int, ...], int]:
        """Integer coefficients; over F_p the centred lift into (-p/2, p/2]."""
        p = self.ring.p
        if p is None:
            return {e: c for e, c in self.terms.items()}
        return {e: (c - p if c > p // 2 else c) for e, c in self.terms.items()}

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(self.ring.names, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)


def poly_substitute(f: MultiPoly, var: str, g: MultiPoly) -> MultiPoly:
    """Replace every occurrence of ``var`` in ``f`` by ``g``, expanded."""
    ring = f.ring
    i = ring.index(var)
    if f.is_homogeneous() and g and f.terms and any(e[i] for e in f.terms):
        if g.degree() != ring.weights[i]:
            raise WeightMismatch(f"deg g = {g.degree()} but weight({var}) = {ring.weights[i]}")
    powers = {0: ring.const(1)}
    out = ring.zero()
    by_power: dict[int, dict] = {}
    for e, c in f.terms.items():
        by_power.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
    for k in sorted(by_power):
        if k not in powers:
            powers[k] = g ** k
        out = out + MultiPoly(ring, by_power[k]) * powers[k]
    return out


def exact_divide(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Quotient ``f / g`` over a field, raising :class:`NotDivisible` on a remainder."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring = f.ring
    lead_g = max(g.terms)
    cg = g.terms[lead_g]
    inv = (pow(cg, -1, ring.p) if ring.p else Fraction(1) / cg)
    rem = dict(f.terms)
    quot: dict = {}
    while rem:
        lead = max(rem)
        if any(a < b for a, b in zip(lead, lead_g)):
            raise NotDivisible("nonzero remainder in multivariate division")
        e = tuple(a - b for a, b in zip(lead, lead_g))
        c = ring.norm(rem[lead] * inv)
        quot[e] = c
        for eg, c2 in g.terms.items():
            key = tuple(a + b for a, b in zip(e, eg))
            v = ring.norm(rem.get(key, 0) - c * c2)
            if v:
                rem[key] = v
            else:
                rem.pop(key, None)
    return MultiPoly(ring, quot)


def fraction_field_rank(m: Sequence[Sequence[MultiPoly]]) -> int:
    """Rank over the fraction field by fraction-free (Bareiss) elimination."""
    rows = [list(r) for r in m]
    if not rows or not rows[0]:
        return 0
    ring = next(x.ring for r in rows for x in r)
    nrows, ncols = len(rows), len(rows[0])
    rank = 0
    prev = ring.const(1)
    col = 0
    while rank < nrows and col < ncols:
        pivot = next((i for i in range(rank, nrows) if rows[i][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        piv = rows[rank][col]
        for i in range(rank + 1, nrows):
            for j in range(col + 1, ncols):
                rows[i][j] = exact_divide(piv * rows[i][j] - rows[i][col] * rows[rank][j], prev)
            rows[i][col] = ring.zero()
        prev = piv
        rank += 1
        col += 1
    return rank


def rank_mod_p(m: Sequence[Sequence[int]], p: int) -> int:
    """Rank of an integer matrix over F_p by Gaussian elimination."""
    rows = [[x % p for x in r] for r in m]
    if not rows:
        return 0
    rank = 0
    ncols = len(rows[0])
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# dense univariate polynomials over F_p (lists, lowest degree first)
# ---------------------------------------------------------------------------

def up_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def up_mod(a: Sequence[int], p: int) -> list[int]:
    return up_trim([x % p for x in a])


def up_sub(a, b, p):
    n = max(len(a), len(b))
    return up_trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def up_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return up_trim(out)


def up_divmod(a, b, p):
    a = up_mod(a, p)
    b = up_mod(b, p)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    a = list(a)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] * inv % p
        q[k] = c
        for j, y in enumerate(b):
            a[k + j] = (a[k + j] - c * y) % p
        up_trim(a)
    return up_trim(q), a


def up_monic(a, p):
    a = up_mod(a, p)
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def up_gcd(a, b, p):
    a, b = up_mod(a, p), up_mod(b, p)
    while b:
        a, b = b, up_divmod(a, b, p)[1]
    return up_monic(a, p)


def up_deriv(a, p):
    return up_trim([(i * a[i]) % p for i in range(1, len(a))])


def up_squarefree(a, p):
    """Product of the distinct irreducible factors of ``a`` (valid for deg < p)."""
    a = up_monic(a, p)
    if len(a) <= 1:
        return a
    if len(a) - 1 >= p:
        raise ValueError("degree too large for the derivative-based square-free part")
    g = up_gcd(a, up_deriv(a, p), p)
    return up_monic(up_divmod(a, g, p)[0], p)


def up_strip_t(a):
    """Remove the largest power of t dividing ``a``."""
    k = 0
    while k < len(a) and a[k] == 0:
        k += 1
    return list(a[k:])


# ---------------------------------------------------------------------------
# reproducible random coefficients
# ---------------------------------------------------------------------------

def coefficient_rng(seed: int, *labels) -> np.random.Generator:
    """Counter-based generator keyed by a 64-bit seed and a label path.

    Different labels give statistically independent streams, and the stream
    for a label does not depend on which other labels were drawn before.
    """
    digest = hashlib.sha256(repr((int(seed) & (2 ** 64 - 1),) + tuple(labels)).encode()).digest()
    key = int.from_bytes(digest[:16], "little")
    return np.random.Generator(np.random.Philox(key=key))


def random_form(ring: Ring, d: int, rng: np.random.Generator,
                exclude: Iterable[str] = (), p: int | None = None) -> MultiPoly:
    """Weighted form of degree ``d`` with every admissible monomial present.

    Coefficients are drawn uniformly from 1..p-1, so no monomial of the
    generic form is accidentally missing.
    """
    p = p or ring.p or DEFAULT_PRIME
    skip = {ring.index(n) for n in exclude}
    allowed = [i for i in range(ring.nvars) if i not in skip]
    monos = ring.monomials(d, allowed)
    coeffs = rng.integers(1, p, size=len(monos)) if monos else []
    return MultiPoly(ring, {e: int(c) for e, c in zip(monos, coeffs)})


def binomial(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def gcd_all(xs: Iterable[int]) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g
