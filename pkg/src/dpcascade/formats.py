"""Equation formats and their graded degree bookkeeping.

Four formats are supported: a hypersurface, a codimension-2 complete
intersection, the five maximal Pfaffians of a skew 5x5 matrix, and the nine
2x2 minors of a 3x3 matrix (P2 x P2 Segre format).  Every degree is a
:class:`LinExpr` in the model parameter ``r``; integer checks happen per ``r``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import EntryMismatch, IncompatibleMatrix, NonIntegral, NonIntegralDegree, NotPolynomial
from .exactmath import LinExpr, SeriesPoly, complete_homogeneous, one_minus_t_pow, series_mul

PAIRS5 = tuple(itertools.combinations(range(5), 2))


def _lin(x) -> LinExpr:
    return LinExpr.parse(x)


class FormatSpec:
    """Common interface of the four formats."""

    kind: str = ""
    codim: int = 0

    def equation_degrees(self, r: int) -> list[int]:
        raise NotImplementedError

    def socle(self, r: int) -> int:
        raise NotImplementedError

    def entry_degrees(self, r: int) -> dict:
        return {}


@dataclass(frozen=True)
class Hypersurface(FormatSpec):
    d: LinExpr
    kind = "hypersurface"
    codim = 1

    def __post_init__(self):
        object.__setattr__(self, "d", _lin(self.d))

    def equation_degrees(self, r):
        return [self.d.at(r)]

    def socle(self, r):
        return self.d.at(r)


@dataclass(frozen=True)
class CI(FormatSpec):
    d1: LinExpr
    d2: LinExpr
    kind = "ci"
    codim = 2

    def __post_init__(self):
        object.__setattr__(self, "d1", _lin(self.d1))
        object.__setattr__(self, "d2", _lin(self.d2))

    def equation_degrees(self, r):
        return [self.d1.at(r), self.d2.at(r)]

    def socle(self, r):
        return self.d1.at(r) + self.d2.at(r)


@dataclass(frozen=True)
class Pfaffian5(FormatSpec):
    """Skew 5x5 matrix; ``entries`` maps 0-based pairs (i<j) to entry degrees.

    ``zeros`` lists positions holding the zero polynomial in a special member.
    """

    entries: Mapping[tuple[int, int], LinExpr]
    zeros: frozenset = field(default=frozenset())
    kind = "pfaffian"
    codim = 3

    def __post_init__(self):
        ents = {}
        for (i, j), deg in dict(self.entries).items():
            i, j = min(i, j), max(i, j)
            ents[(i, j)] = _lin(deg)
        if set(ents) != set(PAIRS5):
            raise ValueError("a skew 5x5 degree matrix needs all ten upper entries")
        object.__setattr__(self, "entries", ents)
        object.__setattr__(self, "zeros", frozenset(tuple(sorted(z)) for z in self.zeros))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], zeros=()) -> Pfaffian5:
        """Build from the upper-triangular rows ``[[m12,m13,m14,m15],[m23,m24,m25],[m34,m35],[m45]]``."""
        ents = {}
        for i, row in enumerate(rows):
            for k, deg in enumerate(row):
                ents[(i, i + 1 + k)] = deg
        return cls(ents, frozenset(zeros))

    def data(self) -> PfaffianData:
        return pfaffian_data(self.entries)

    def equation_degrees(self, r):
        return [d.at(r) for d in self.data().degrees]

    def socle(self, r):
        return self.data().socle.at(r)

    def entry_degrees(self, r):
        return {pos: deg.at(r) for pos, deg in self.entries.items()}

    def rows(self) -> list[list[LinExpr]]:
        return [[self.entries[(i, j)] for j in range(i + 1, 5)] for i in range(4)]


@dataclass(frozen=True)
class P2xP2(FormatSpec):
    """3x3 matrix with entry degrees ``u[i] + v[j]``."""

    u: tuple[LinExpr, LinExpr, LinExpr]
    v: tuple[LinExpr, LinExpr, LinExpr]
    kind = "p2xp2"
    codim = 4

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(_lin(x) for x in self.u))
        object.__setattr__(self, "v", tuple(_lin(x) for x in self.v))

    def entry(self, i: int, j: int) -> LinExpr:
        return self.u[i] + self.v[j]

    def entry_degrees(self, r):
        return {(i, j): self.entry(i, j).at(r) for i in range(3) for j in range(3)}

    def equation_degrees(self, r):
        return [d.at(r) for d in minor_degrees(self.u, self.v)]

    def socle(self, r):
        return 2 * sum(x.at(r) for x in self.u + self.v)

    def transpose(self) -> P2xP2:
        return P2xP2(self.v, self.u)


@dataclass(frozen=True)
class PfaffianData:
    b: tuple[LinExpr, ...]
    degrees: tuple[LinExpr, ...]
    socle: LinExpr


@dataclass(frozen=True)
class HilbertData:
    numerator: SeriesPoly
    k: int
    codim: int
    socle: int


def pfaffian_data(entries: Mapping[tuple[int, int], LinExpr], r_values: Sequence[int] = ()) -> PfaffianData:
    """Half-weight vector, Pfaffian degrees and socle of a 5x5 entry-degree matrix.

    The entry degrees must split as ``m_ij = b_i + b_j``.  With ``r_values``
    the Pfaffian degrees are checked for integrality at each listed ``r``;
    otherwise they must be integral for every ``r``.
    """
    m = {}
    for (i, j), deg in dict(entries).items():
        m[(min(i, j), max(i, j))] = _lin(deg)

    def get(i, j):
        return m[(min(i, j), max(i, j))]

    for a, b, c, d in itertools.permutations(range(5), 4):
        if a < b and c < d and a < c and get(a, b) + get(c, d) != get(a, c) + get(b, d):
            raise IncompatibleMatrix(
                f"m{a+1}{b+1} + m{c+1}{d+1} != m{a+1}{c+1} + m{b+1}{d+1}")
    b = []
    for i in range(5):
        j, k = [x for x in range(5) if x != i][:2]
        b.append((get(i, j) + get(i, k) - get(j, k)).half())
    sigma = sum(b, LinExpr.const(0))
    degrees = tuple(sigma - bi for bi in b)
    socle = sigma * 2
    for (i, j), deg in m.items():
        if b[i] + b[j] != deg:
            raise IncompatibleMatrix(f"entry m{i+1}{j+1} does not split as b_i + b_j")
    checks = list(degrees) + [socle]
    if r_values:
        for r in r_values:
            for x in checks:
                try:
                    x.at(r)
                except NonIntegral:
                    raise NonIntegralDegree(f"{x} is not integral at r={r}") from None
    elif any(x.slope2 % 2 or x.offset2 % 2 for x in checks):
        raise NonIntegralDegree("Pfaffian degrees are not integral for every r")
    return PfaffianData(tuple(b), degrees, socle)


def minor_degrees(u: Sequence, v: Sequence) -> list[LinExpr]:
    """Degrees of the nine 2x2 minors, rows (i<j) major, columns (k<l) minor."""
    u = [_lin(x) for x in u]
    v = [_lin(x) for x in v]
    out = []
    for i, j in itertools.combinations(range(3), 2):
        for k, l in itertools.combinations(range(3), 2):
            out.append(u[i] + u[j] + v[k] + v[l])
    return out


def hilbert_numerator(fs: FormatSpec, r: int, weights: Sequence[int]) -> HilbertData:
    """Gorenstein Hilbert numerator N(t) and adjunction number k = sum(w) - socle."""
    if isinstance(fs, (Hypersurface, CI)):
        num = SeriesPoly([1])
        for d in fs.equation_degrees(r):
            num = num * one_minus_t_pow(d)
        s = fs.socle(r)
    elif isinstance(fs, Pfaffian5):
        ds = fs.equation_degrees(r)
        s = fs.socle(r)
        terms: dict[int, int] = {0: 1, s: -1}
        for d in ds:
            terms[d] = terms.get(d, 0) - 1
            terms[s - d] = terms.get(s - d, 0) + 1
        num = SeriesPoly.from_terms(terms)
    elif isinstance(fs, P2xP2):
        num, s = _segre_numerator(fs, r)
    else:
        raise TypeError(f"unknown format {fs!r}")
    return HilbertData(num, sum(weights) - s, fs.codim, s)


def _segre_counts(u: Sequence[int], v: Sequence[int], bound: int) -> list[int]:
    """Hilbert function of the weighted Segre ring k[x_i y_j], deg x_i y_j = u_i + v_j.

    Degree D counts pairs of exponent vectors (a, b) with |a| = |b| and
    a.u + b.v = D.  A table indexed by degree and the balance |a| - |b| is
    filled one variable at a time; x variables raise the balance, y lower it.
    """
    lo = min(v)
    if min(u) + lo < 1:
        raise NotPolynomial("entry degrees must be positive")
    # shift so that u >= 0 and v >= 1; entry degrees are unchanged
    shift = min(u)
    u = [a - shift for a in u]
    v = [b + shift for b in v]
    span = bound + 1
    off = span
    table = [[0] * (2 * span + 1) for _ in range(bound + 1)]
    table[0][off] = 1
    for w, step in [(x, 1) for x in u] + [(y, -1) for y in v]:
        for d in range(bound + 1):
            src = d - w
            if src < 0:
                continue
            row, prev = table[d], table[src]
            rng = range(0, 2 * span + 1) if step == 1 else range(2 * span, -1, -1)
            for k in rng:
                k2 = k - step
                if 0 <= k2 <= 2 * span and prev[k2]:
                    row[k] += prev[k2]
    return [table[d][off] for d in range(bound + 1)]


def _segre_numerator(fs: P2xP2, r: int) -> tuple[SeriesPoly, int]:
    u = [x.at(r) for x in fs.u]
    v = [x.at(r) for x in fs.v]
    ent = [a + b for a in u for b in v]
    if min(ent) < 1:
        raise NotPolynomial(f"entry degrees must be positive, got {ent}")
    s = fs.socle(r)
    bound = s + max(ent) + 2
    num = SeriesPoly(_segre_counts(u, v, bound), bound + 1)
    for e in ent:
        num = series_mul(num, one_minus_t_pow(e).truncate(bound + 1), bound + 1)
    tail = [c for c in num.coeffs[s + 1:]]
    if any(tail):
        raise NotPolynomial(f"Segre numerator does not terminate at degree {s}")
    return SeriesPoly(num.coeffs[: s + 1]), s


def format_entry_check(fs: FormatSpec, weights: Mapping[str, int], r: int,
                       placement: Mapping) -> bool:
    """Every placed variable has the weight of its entry; forms have nonnegative degree.

    ``placement`` maps an entry position to a variable name, to ``"0"`` for a
    zero entry, or to ``None``/a label for a generic form.
    """
    degs = fs.entry_degrees(r)
    for pos, what in placement.items():
        if pos not in degs:
            raise EntryMismatch(pos, "no such entry in the format")
        deg = degs[pos]
        if what in (None, "0") or (isinstance(what, str) and what not in weights):
            if deg < 0:
                raise EntryMismatch(pos, f"negative degree {deg}")
            continue
        if weights[what] != deg:
            raise EntryMismatch(pos, f"variable {what} has weight {weights[what]}, entry degree is {deg}")
    return True
