"""Explicit members: equations built from a format, a placement and seeded forms.

A *placement* is the displayed matrix of a model, one label per entry.  A
label is either an ambient variable name, ``"0"`` for a zero entry, or a
form label such as ``"F_{2r-1}"`` whose subscript is the degree.  Entries
holding a form label get a generic weighted form with every admissible
monomial present.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import EntryMismatch
from .exactmath import LinExpr, MultiPoly, Ring, coefficient_rng, random_form
from .formats import CI, P2xP2, PAIRS5, FormatSpec, Hypersurface, Pfaffian5

_FORM = re.compile(r"^[A-Z][A-Za-z]*_?\{?([^{}]*)\}?$")


def label_degree(label: str, weights: Mapping[str, int], r: int) -> int | None:
    """Degree of an entry label: a variable weight, a form subscript, or None for ``"0"``."""
    if label == "0":
        return None
    if label in weights:
        return weights[label]
    m = _FORM.match(label)
    if not m or not m.group(1):
        raise ValueError(f"cannot read a degree from entry label {label!r}")
    return LinExpr.parse(m.group(1)).at(r)


@dataclass
class ModelInstance:
    """A concrete member at fixed n: ring, format and explicit equations."""

    model_id: str
    n: int | None
    r: int | None
    ring: Ring
    fmt: FormatSpec
    equations: list[MultiPoly]
    matrix: dict | None = None
    seed: int = 0
    special: bool = False
    meta: dict = field(default_factory=dict)

    @property
    def weights(self) -> tuple[int, ...]:
        return self.ring.weights

    @property
    def names(self) -> tuple[str, ...]:
        return self.ring.names

    @property
    def codim(self) -> int:
        return self.fmt.codim

    def describe(self) -> str:
        amb = "P(" + ",".join(map(str, self.weights)) + ")"
        lines = [f"{self.model_id} n={self.n} r={self.r} in {amb} variables {','.join(self.names)}"]
        if self.matrix is not None:
            for pos in sorted(self.matrix):
                lines.append(f"  m{pos} = {self.matrix[pos]}")
        for i, f in enumerate(self.equations):
            lines.append(f"  f{i} (deg {f.degree()}) = {f}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# equations from matrices
# ---------------------------------------------------------------------------

def skew_get(m: Mapping, i: int, j: int) -> MultiPoly:
    if i < j:
        return m[(i, j)]
    return -m[(j, i)]


def pfaffian_of(m: Mapping, rows: Sequence[int]) -> MultiPoly:
    """Pfaffian of the 4x4 principal skew submatrix on ``rows``."""
    a, b, c, d = rows
    return (skew_get(m, a, b) * skew_get(m, c, d) - skew_get(m, a, c) * skew_get(m, b, d)
            + skew_get(m, a, d) * skew_get(m, b, c))


def pfaffians(m: Mapping) -> list[MultiPoly]:
    """The five maximal Pfaffians; entry k omits row and column k."""
    return [pfaffian_of(m, [x for x in range(5) if x != k]) for k in range(5)]


def minors2(a: Mapping) -> list[MultiPoly]:
    """The nine 2x2 minors, rows (i<j) major, columns (k<l) minor."""
    out = []
    for i, j in itertools.combinations(range(3), 2):
        for k, l in itertools.combinations(range(3), 2):
            out.append(a[(i, k)] * a[(j, l)] - a[(i, l)] * a[(j, k)])
    return out


def equations_from_matrix(fmt: FormatSpec, matrix: Mapping) -> list[MultiPoly]:
    if isinstance(fmt, Pfaffian5):
        return pfaffians(matrix)
    if isinstance(fmt, P2xP2):
        return minors2(matrix)
    raise TypeError("only matrix formats have matrices")


def matrix_positions(fmt: FormatSpec) -> list[tuple[int, int]]:
    if isinstance(fmt, Pfaffian5):
        return list(PAIRS5)
    if isinstance(fmt, P2xP2):
        return [(i, j) for i in range(3) for j in range(3)]
    return []


def placement_from_rows(fmt: FormatSpec, rows: Sequence[Sequence[str]]) -> dict:
    """Read a displayed matrix: upper rows for Pfaffians, full rows for P2xP2."""
    out = {}
    if isinstance(fmt, Pfaffian5):
        for i, row in enumerate(rows):
            for k, lab in enumerate(row):
                out[(i, i + 1 + k)] = lab
    else:
        for i, row in enumerate(rows):
            for j, lab in enumerate(row):
                out[(i, j)] = lab
    return out


def auto_placement(fmt: FormatSpec, ring: Ring, r: int) -> dict:
    """Place each variable in a distinct entry of its own degree, in reading order.

    For a generic member this is a coordinate change, so no generality is lost.
    """
    degs = fmt.entry_degrees(r)
    used = set()
    out = {}
    for name, w in zip(ring.names, ring.weights):
        for pos in matrix_positions(fmt):
            if pos not in used and degs[pos] == w:
                out[pos] = name
                used.add(pos)
                break
    for pos in matrix_positions(fmt):
        out.setdefault(pos, f"F_{{{degs[pos]}}}")
    return out


def check_placement(fmt: FormatSpec, ring: Ring, r: int, placement: Mapping) -> None:
    """Every label degree agrees with the format's entry degree."""
    degs = fmt.entry_degrees(r)
    weights = dict(zip(ring.names, ring.weights))
    for pos, lab in placement.items():
        if pos not in degs:
            raise EntryMismatch(pos, "no such entry in the format")
        d = label_degree(lab, weights, r)
        if d is None:
            continue
        if d != degs[pos]:
            raise EntryMismatch(pos, f"label {lab} has degree {d}, entry degree is {degs[pos]}")


def build_matrix(fmt: FormatSpec, ring: Ring, r: int, placement: Mapping, seed: int,
                 tag: str, exclude: Sequence[str] = (), generic: Sequence = ()) -> dict:
    """Entries per placement; form labels (and positions in ``generic``) get seeded forms.

    Forms avoid the variables in ``exclude``.  Zero labels stay zero unless the
    position is listed in ``generic``.
    """
    degs = fmt.entry_degrees(r)
    out = {}
    for pos in matrix_positions(fmt):
        lab = placement.get(pos, "F")
        if pos in generic or (lab not in ring.names and lab != "0"):
            rng = coefficient_rng(seed, tag, "entry", pos)
            out[pos] = random_form(ring, degs[pos], rng, exclude=exclude)
        elif lab == "0":
            out[pos] = ring.zero()
        else:
            out[pos] = ring.var(lab)
    return out


def generic_equations(fmt: FormatSpec, ring: Ring, r: int, seed: int, tag: str,
                      exclude: Sequence[str] = ()) -> list[MultiPoly]:
    """Generic hypersurface or CI equations of the format degrees."""
    out = []
    for i, d in enumerate(fmt.equation_degrees(r)):
        out.append(random_form(ring, d, coefficient_rng(seed, tag, "eq", i), exclude=exclude))
    return out


def linear_normal_equations(fmt: FormatSpec, ring: Ring, r: int, center: str, seed: int,
                            tag: str) -> list[MultiPoly]:
    """Equations ``center * L_i + H_i`` with L_i, H_i free of the center."""
    c = ring.var(center)
    w = ring.weight(center)
    out = []
    for i, d in enumerate(fmt.equation_degrees(r)):
        L = random_form(ring, d - w, coefficient_rng(seed, tag, "L", i), exclude=[center])
        H = random_form(ring, d, coefficient_rng(seed, tag, "H", i), exclude=[center])
        out.append(c * L + H)
    return out


def make_instance(model_id: str, n, r, ring: Ring, fmt: FormatSpec, seed: int,
                  placement: Mapping | None = None, center: str | None = None,
                  tag: str | None = None) -> ModelInstance:
    """Seeded member of a format.

    With ``center`` set, the member is in projection-normal form: the center
    occurs only as its own matrix entry (matrix formats) or linearly in every
    equation (hypersurface and CI formats).
    """
    tag = tag or f"{model_id}:{n}"
    if isinstance(fmt, (Pfaffian5, P2xP2)):
        if placement is None:
            placement = auto_placement(fmt, ring, r)
        check_placement(fmt, ring, r, placement)
        exclude = [center] if center else []
        m = build_matrix(fmt, ring, r, placement, seed, tag, exclude=exclude)
        eqs = equations_from_matrix(fmt, m)
        return ModelInstance(model_id, n, r, ring, fmt, eqs, m, seed, False,
                             {"placement": dict(placement), "center": center})
    if isinstance(fmt, (Hypersurface, CI)):
        if center:
            eqs = linear_normal_equations(fmt, ring, r, center, seed, tag)
        else:
            eqs = generic_equations(fmt, ring, r, seed, tag)
        return ModelInstance(model_id, n, r, ring, fmt, eqs, None, seed, False, {"center": center})
    raise TypeError(f"unknown format {fmt!r}")
