"""Model catalog: typed records for every family, JSON (de)serialization, instantiation.

Each :class:`ModelSpec` stores the declared data of one family exactly as
printed (ambient weights, equation format, range of the parameter, basket,
(-K)^2 as a rational function of r, h^0) together with a displayed entry
matrix when one is known.  Computed values are never stored here.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .errors import CatalogError, IncompatibleMatrix, NonIntegral, OutOfRange
from .exactmath import DEFAULT_PRIME, LinExpr, Ring
from .formats import CI, P2xP2, FormatSpec, Hypersurface, Pfaffian5, pfaffian_data
from .members import ModelInstance, label_degree, make_instance, placement_from_rows
from .wps import SingType, WeightedSpace, normalize_sing


# ---------------------------------------------------------------------------
# record types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParamLaw:
    """r = c*n + d for n >= n_min (and n <= n_max when set); c = 0 marks a fixed surface."""

    c: int
    d: int
    n_min: int
    n_max: int | None = None

    @property
    def fixed(self) -> bool:
        return self.c == 0

    def r(self, n: int | None) -> int:
        if self.fixed:
            return self.d
        if n is None or not self.contains(n):
            raise OutOfRange(f"n={n} is outside n >= {self.n_min}" +
                             (f", n <= {self.n_max}" if self.n_max is not None else ""))
        return self.c * n + self.d

    def contains(self, n: int | None) -> bool:
        if self.fixed:
            return n in (None, 0)
        return n is not None and n >= self.n_min and (self.n_max is None or n <= self.n_max)

    def n_of(self, r: int) -> int | None:
        """Inverse law; None when r is not of the form c*n + d in range."""
        if self.fixed:
            return 0 if r == self.d else None
        if (r - self.d) % self.c:
            return None
        n = (r - self.d) // self.c
        return n if self.contains(n) else None

    def ns(self, n_min: int | None = None, n_max: int = 8) -> list[int]:
        if self.fixed:
            return [0]
        lo = self.n_min if n_min is None else max(n_min, self.n_min)
        hi = n_max if self.n_max is None else min(n_max, self.n_max)
        return list(range(lo, hi + 1))

    def __str__(self) -> str:
        if self.fixed:
            return "fixed"
        lead = "n" if self.c == 1 else f"{self.c}n"
        tail = f"+{self.d}" if self.d > 0 else (str(self.d) if self.d else "")
        return f"r={lead}{tail}, n>={self.n_min}"


@dataclass(frozen=True)
class BasketEntry:
    count: int
    order: LinExpr
    a: LinExpr
    b: LinExpr

    def at(self, r: int) -> list[SingType]:
        s = normalize_sing(self.order.at(r), self.a.at(r), self.b.at(r))
        return [] if s is None else [s] * self.count


@dataclass(frozen=True)
class RationalFunction:
    """Quotient of integer polynomials in r, coefficients lowest degree first."""

    num: tuple[int, ...]
    den: tuple[int, ...]
    known_discrepant: bool = False

    def __call__(self, r: int) -> Fraction:
        top = sum(c * r ** i for i, c in enumerate(self.num))
        bot = sum(c * r ** i for i, c in enumerate(self.den))
        return Fraction(top, bot)

    def __str__(self) -> str:
        def poly(cs):
            parts = []
            for i, c in reversed(list(enumerate(cs))):
                if c:
                    mono = "" if i == 0 else ("r" if i == 1 else f"r^{i}")
                    coef = str(c) if (abs(c) != 1 or i == 0) else ("-" if c < 0 else "")
                    parts.append(f"{coef}{mono}")
            return "+".join(parts).replace("+-", "-") or "0"
        return f"({poly(self.num)})/({poly(self.den)})"


@dataclass(frozen=True)
class ModelSpec:
    id: str
    table: str
    names: tuple[str, ...]
    weights: tuple[LinExpr, ...]
    fmt: FormatSpec
    law: ParamLaw
    basket: tuple[BasketEntry, ...]
    degK2: RationalFunction
    h0: int
    placement: tuple[tuple[str, ...], ...] | None = None
    declared_w: dict | None = None
    group: str = "main"
    note: str = ""

    # -- evaluation at a parameter value
    def r(self, n: int | None) -> int:
        return self.law.r(n)

    def weights_at(self, r: int) -> tuple[int, ...]:
        return tuple(w.at(r) for w in self.weights)

    def ambient(self, n: int | None) -> WeightedSpace:
        return WeightedSpace(self.weights_at(self.r(n)), self.names)

    def ring(self, n: int | None, p: int | None = DEFAULT_PRIME) -> Ring:
        return Ring(self.names, self.weights_at(self.r(n)), p)

    def declared_basket(self, n: int | None) -> list[SingType]:
        r = self.r(n)
        return sorted(s for e in self.basket for s in e.at(r))

    def declared_degK2(self, n: int | None) -> Fraction:
        return self.degK2(self.r(n))

    def weight_map(self) -> dict[str, LinExpr]:
        return dict(zip(self.names, self.weights))

    def display_format(self) -> FormatSpec:
        """Format whose entry degrees follow the displayed matrix (or the table when none)."""
        if self.placement is None:
            return self.fmt
        wm = self.weight_map()
        degs = [[_label_linexpr(lab, wm) for lab in row] for row in self.placement]
        if isinstance(self.fmt, Pfaffian5):
            return Pfaffian5.from_rows(degs)
        if isinstance(self.fmt, P2xP2):
            u = tuple(degs[i][0] - degs[0][0] for i in range(3))
            v = tuple(degs[0])
            fs = P2xP2(u, v)
            for i in range(3):
                for j in range(3):
                    if fs.entry(i, j) != degs[i][j]:
                        raise IncompatibleMatrix(f"{self.id}: displayed matrix is not of the form u_i + v_j")
            return fs
        return self.fmt

    def display_placement(self) -> dict | None:
        """Entry labels keyed by position; an r-independent auto placement when none is displayed."""
        if self.placement is not None:
            return placement_from_rows(self.fmt, self.placement)
        fs = self.fmt
        if isinstance(fs, Pfaffian5):
            degs = dict(fs.entries)
        elif isinstance(fs, P2xP2):
            degs = {(i, j): fs.entry(i, j) for i in range(3) for j in range(3)}
        else:
            return None
        out = {}
        for name, w in zip(self.names, self.weights):
            for pos in sorted(degs):
                if pos not in out and degs[pos] == w:
                    out[pos] = name
                    break
        for pos in sorted(degs):
            out.setdefault(pos, f"F_{{{degs[pos]}}}")
        return out

    def instantiate(self, n: int | None, seed: int = 0, p: int = DEFAULT_PRIME,
                    center: str | None = None) -> ModelInstance:
        r = self.r(n)
        fmt = self.display_format()
        placement = self.display_placement()
        return make_instance(self.id, n, r, self.ring(n, p), fmt, seed, placement=placement,
                             center=center, tag=f"{self.id}:{n}")


def _label_linexpr(label: str, weights: dict[str, LinExpr]) -> LinExpr:
    if label in weights:
        return weights[label]
    from .members import _FORM
    m = _FORM.match(label)
    if not m or not m.group(1):
        raise CatalogError(f"entry label {label!r} carries no degree")
    return LinExpr.parse(m.group(1))


# ---------------------------------------------------------------------------
# built-in data
# ---------------------------------------------------------------------------

def _L(x) -> LinExpr:
    return LinExpr.parse(x)


def _b(count, order, a, b) -> BasketEntry:
    return BasketEntry(count, _L(order), _L(a), _L(b))


def _ws(*xs) -> tuple[LinExpr, ...]:
    return tuple(_L(x) for x in xs)


def _half(*pairs) -> list[LinExpr]:
    """Half-integral vector given as doubled (slope, offset) pairs."""
    return [LinExpr(s2, o2) for s2, o2 in pairs]


def _pf(*rows) -> Pfaffian5:
    return Pfaffian5.from_rows([[_L(x) for x in row] for row in rows])


def _builtin() -> list[ModelSpec]:
    Q11 = RationalFunction
    models = [
        ModelSpec("CI11", "1", ("a", "b", "c", "d", "e"), _ws(1, 1, "r", "r", "z"), CI("2r", "2r"),
                  ParamLaw(1, 1, 1), (_b(1, "z", 1, 1),), Q11((4,), (-1, 2)), 2),
        ModelSpec("CI12", "1", ("z0", "a", "b", "c", "d"), _ws(1, 2, "r", "r", "z"), CI("2r", "2r+1"),
                  ParamLaw(2, 1, 1), (_b(2, "r", 2, "q"), _b(1, "z", 1, 1)), Q11((1, 2), (0, -1, 2)), 1),
        ModelSpec("HS12", "1", ("a", "b", "c", "d"), _ws(2, "r", "r", "z"), Hypersurface("4r"),
                  ParamLaw(2, 1, 1), (_b(4, "r", 2, "q"), _b(1, "z", 1, 1)), Q11((2,), (0, -1, 2)), 0),
        ModelSpec("CI13", "1", ("a", "b", "c", "d", "e"), _ws(2, "r", "r", "z", "m"), CI("3r", "4r-2"),
                  ParamLaw(2, 1, 1), (_b(3, "r", 2, "q"), _b(1, "m", "r", "z")), Q11((3,), (0, -2, 3)), 0),
        ModelSpec("CI21", "1", ("a", "b", "c", "d", "e"), _ws(1, 2, 3, "r", "s"), CI("r+2", "r+3"),
                  ParamLaw(3, 0, 1),
                  (_b(1, 2, 1, 1), _b(1, 3, 1, 1), _b(1, "r", 1, 1), _b(1, "s", 3, "r")),
                  Q11((6, 5, 1), (0, 6, 6), known_discrepant=True), 2,
                  note="printed (-K)^2 is a quarter of the adjunction value"),
        ModelSpec("CI22", "1", ("a", "b", "c", "d", "e"), _ws(1, 2, 3, "r", "s"), CI("r+2", "r+3"),
                  ParamLaw(3, 1, 1), (_b(1, 2, 1, 1), _b(1, "r", 1, 1), _b(1, "s", 3, "r")),
                  Q11((6, 5, 1), (0, 6, 6), known_discrepant=True), 2,
                  note="printed (-K)^2 is a quarter of the adjunction value"),
        ModelSpec("PF11", "2", ("y0", "a", "b", "c", "d", "e"), _ws(1, 1, 1, "r", "r", "z"),
                  _pf([1, 1, "r", "r"], [1, "r", "r"], ["r", "r"], ["z"]),
                  ParamLaw(1, 1, 1), (_b(1, "z", 1, 1),), Q11((3, 2), (-1, 2)), 3,
                  placement=(("y0", "c", "a", "F_r"), ("H_r", "b", "d"), ("G_r", "e"), ("I_r",)),
                  declared_w={"b": _half((0, 1), (0, 1), (0, 1), (2, -1), (2, -1))}),
        ModelSpec("PF12", "2", ("y0", "z0", "a", "b", "c", "d"), _ws(1, 1, 2, "r", "r", "z"),
                  _pf([1, 1, "q", "r"], [2, "r", "s"], ["r", "s"], ["z"]),
                  ParamLaw(2, 1, 1), (_b(1, "r", 2, "q"), _b(1, "z", 1, 1)), Q11((1, 5, 2), (0, -2, 4)), 2,
                  placement=(("y0", "z0", "F_{r-1}", "F_r"), ("a", "b", "F_{r+1}"), ("c", "G_{r+1}"), ("d",)),
                  declared_w={"b": list(_ws(0, 1, 1, "q", "r"))}),
        ModelSpec("PF13", "2", ("y0", "a", "b", "c", "d", "e"), _ws(1, 2, "r", "r", "z", "m"),
                  _pf([1, 2, "r", "s"], ["r", "y", "z"], ["z", "2r"], ["m"]),
                  ParamLaw(2, 1, 1), (_b(1, "r", 2, "q"), _b(1, "m", "r", "z")), Q11((1, 3), (0, -2, 3)), 1,
                  placement=(("y0", "a", "b", "F_{r+1}"), ("c", "F_{2r-2}", "d"), ("F_{2r-1}", "F_{2r}"), ("e",)),
                  declared_w={"b": _half((-1, 3), (1, -1), (1, 1), (3, -3), (3, -1))}),
        ModelSpec("PF14", "2", ("a", "b", "c", "d", "e", "f"), _ws(2, "r", "r", "s", "t", "z"),
                  _pf([2, "r", "r", "s"], ["s", "s", "t"], ["z", "2r"], ["2r"]),
                  ParamLaw(2, 1, 1), (_b(1, "t", 2, "s"), _b(1, "z", 1, 1), _b(3, "r", 2, "q")),
                  Q11((3, 4), (0, -2, 3, 2)), 0,
                  declared_w={"b": _half((0, 1), (0, 3), (2, -1), (2, -1), (2, 1))}),
        ModelSpec("PF21", "2", ("y0", "a", "b", "c", "d", "e"), _ws(1, 1, 2, 3, "r", "s"),
                  _pf([1, 1, 2, "q"], [2, 3, "r"], [3, "r"], ["s"]),
                  ParamLaw(3, 0, 2), (_b(1, 3, 1, 1), _b(1, "r", 1, 1), _b(1, "s", 3, "r")),
                  Q11((12, 16, 8), (0, 3, 3)), 4,
                  placement=(("y0", "a", "b", "F_{r-1}"), ("F_2", "c", "d"), ("F_3", "F_r"), ("e",)),
                  declared_w={"b": list(_ws(0, 1, 1, 2, "q"))}),
        ModelSpec("PF22", "2", ("y0", "a", "b", "c", "d", "e"), _ws(1, 1, 2, 3, "r", "s"),
                  _pf([1, 1, 2, "q"], [2, 3, "r"], [3, "r"], ["s"]),
                  ParamLaw(3, 1, 2), (_b(1, "r", 1, 1), _b(1, "s", 3, "r")),
                  Q11((12, 16, 8), (0, 3, 3)), 4,
                  placement=(("y0", "a", "b", "F_{r-1}"), ("F_2", "c", "d"), ("F_3", "F_r"), ("e",)),
                  declared_w={"b": list(_ws(0, 1, 1, 2, "q"))}),
        ModelSpec("PF23", "2", ("y0", "a", "b", "c", "d", "e"), _ws(1, 3, "r", "s", "t", "u"),
                  _pf([1, 2, "r", "s"], [3, "s", "t"], ["t", "u"], ["v"]),
                  ParamLaw(3, 2, 2), (_b(1, 3, 1, 1), _b(1, "r", 1, 1), _b(1, "u", 3, "t")),
                  Q11((36, 8), (0, 9, 3)), 1,
                  declared_w={"b": list(_ws(0, 1, 2, "r", "s"))}),
        ModelSpec("P11", "3", ("x0", "y0", "a", "b", "c", "d", "e"), _ws(1, 1, 1, 1, "r", "r", "z"),
                  P2xP2(_ws(0, 0, "q"), _ws(1, 1, "r")),
                  ParamLaw(1, 1, 1), (_b(1, "z", 1, 1),), Q11((2, 4), (1, -2), known_discrepant=True), 4,
                  placement=(("x0", "y0", "c"), ("a", "b", "d"), ("F_r", "G_r", "e")),
                  declared_w={"u": list(_ws(0, 0, "q")), "v": list(_ws(1, 1, "r"))},
                  note="printed (-K)^2 has the opposite sign"),
        ModelSpec("P12", "3", ("x0", "a", "b", "c", "d", "e", "f"), _ws(1, 2, "r", "r", "s", "t", "z"),
                  P2xP2(_ws(0, "q", "r"), _ws(1, 2, "r")),
                  ParamLaw(2, 1, 1), (_b(1, "r", 2, "q"), _b(1, "t", 2, "s"), _b(1, "z", 1, 1)),
                  Q11((1, 7, 2), (0, -2, 3, 2)), 1,
                  placement=(("x0", "a", "b"), ("c", "d", "f"), ("F_{r+1}", "e", "F_{2r}")),
                  declared_w={"u": list(_ws(0, 1, "q")), "v": list(_ws(1, "r", "s"))}),
        ModelSpec("P13", "3", ("x0", "a", "b", "c", "d", "e", "f"), _ws(1, 2, 2, 3, "r", "r", "z"),
                  P2xP2(_ws(0, 1, "q"), _ws(1, 2, "r")),
                  ParamLaw(2, 1, 1), (_b(1, 3, 1, 1), _b(1, "z", 1, 1), _b(2, "r", 2, "q")),
                  Q11((3, 2), (0, -3, 6)), 1,
                  declared_w={"u": list(_ws(0, 1, "q")), "v": list(_ws(1, 2, "r"))}),
        # fixed surfaces of the k = 8, 7, 6 cascade
        ModelSpec("RS8", "RS", ("x", "y", "z", "t"), _ws(1, 2, 3, 5), Hypersurface(10),
                  ParamLaw(0, 0, 0, 0), (_b(1, 3, 1, 1),), Q11((1,), (3,)), 1, group="rs"),
        ModelSpec("RS7", "RS", ("x1", "x2", "y0", "y1", "z"), _ws(1, 1, 2, 2, 3), CI(4, 4),
                  ParamLaw(0, 0, 0, 0), (_b(1, 3, 1, 1),), Q11((4,), (3,)), 2, group="rs"),
        ModelSpec("RS6", "RS", ("x0", "x1", "x2", "y0", "y1", "z"), _ws(1, 1, 1, 2, 2, 3),
                  _pf([1, 1, 2, 2], [1, 2, 2], [2, 2], [3]),
                  ParamLaw(0, 0, 0, 0), (_b(1, 3, 1, 1),), Q11((7,), (3,)), 3,
                  placement=(("x0", "x1", "F_2", "G_2"), ("x2", "H_2", "I_2"), ("y0", "y1"), ("z",)),
                  group="rs"),
    ]
    return models


# ---------------------------------------------------------------------------
# JSON schema
# ---------------------------------------------------------------------------

def _lin_json(x: LinExpr) -> dict:
    return {"slope2": x.slope2, "offset2": x.offset2}


def _lin_load(obj, where: str) -> LinExpr:
    if not isinstance(obj, dict) or set(obj) != {"slope2", "offset2"}:
        raise CatalogError(f"{where}: expected {{'slope2', 'offset2'}}, got {obj!r}")
    if not all(isinstance(obj[k], int) for k in obj):
        raise CatalogError(f"{where}: slope2/offset2 must be integers")
    return LinExpr(obj["slope2"], obj["offset2"])


def _fmt_json(fs: FormatSpec) -> dict:
    if isinstance(fs, Hypersurface):
        return {"kind": "hypersurface", "degrees": [_lin_json(fs.d)]}
    if isinstance(fs, CI):
        return {"kind": "ci", "degrees": [_lin_json(fs.d1), _lin_json(fs.d2)]}
    if isinstance(fs, Pfaffian5):
        return {"kind": "pfaffian", "rows": [[_lin_json(x) for x in row] for row in fs.rows()],
                "zeros": sorted([list(z) for z in fs.zeros])}
    if isinstance(fs, P2xP2):
        return {"kind": "p2xp2", "u": [_lin_json(x) for x in fs.u], "v": [_lin_json(x) for x in fs.v]}
    raise TypeError(fs)


def _fmt_load(obj, where: str) -> FormatSpec:
    kind = obj.get("kind")
    try:
        if kind == "hypersurface":
            (d,) = obj["degrees"]
            return Hypersurface(_lin_load(d, where + ".degrees[0]"))
        if kind == "ci":
            d1, d2 = obj["degrees"]
            return CI(_lin_load(d1, where + ".degrees[0]"), _lin_load(d2, where + ".degrees[1]"))
        if kind == "pfaffian":
            rows = [[_lin_load(x, f"{where}.rows[{i}][{j}]") for j, x in enumerate(row)]
                    for i, row in enumerate(obj["rows"])]
            if [len(r) for r in rows] != [4, 3, 2, 1]:
                raise CatalogError(f"{where}.rows: expected upper rows of lengths 4,3,2,1")
            return Pfaffian5.from_rows(rows, [tuple(z) for z in obj.get("zeros", [])])
        if kind == "p2xp2":
            return P2xP2(tuple(_lin_load(x, f"{where}.u") for x in obj["u"]),
                         tuple(_lin_load(x, f"{where}.v") for x in obj["v"]))
    except (KeyError, ValueError, TypeError) as exc:
        if isinstance(exc, CatalogError):
            raise
        raise CatalogError(f"{where}: {exc}") from None
    raise CatalogError(f"{where}.kind: unknown format {kind!r}")


def model_to_json(m: ModelSpec) -> dict:
    out = {
        "id": m.id,
        "table": m.table,
        "group": m.group,
        "names": list(m.names),
        "weights": [_lin_json(w) for w in m.weights],
        "format": _fmt_json(m.fmt),
        "law": {"c": m.law.c, "d": m.law.d, "n_min": m.law.n_min, "n_max": m.law.n_max},
        "basket": [{"count": e.count, "order": _lin_json(e.order), "a": _lin_json(e.a), "b": _lin_json(e.b)}
                   for e in m.basket],
        "degK2": {"num": list(m.degK2.num), "den": list(m.degK2.den),
                  "known_discrepant": m.degK2.known_discrepant},
        "h0": m.h0,
        "placement": [list(r) for r in m.placement] if m.placement is not None else None,
        "declared_w": ({k: [_lin_json(x) for x in v] for k, v in m.declared_w.items()}
                       if m.declared_w is not None else None),
        "note": m.note,
    }
    return out


_REQUIRED = ("id", "names", "weights", "format", "law", "basket", "degK2", "h0")


def model_from_json(obj: dict, where: str = "model") -> ModelSpec:
    if not isinstance(obj, dict):
        raise CatalogError(f"{where}: expected an object")
    for key in _REQUIRED:
        if key not in obj:
            raise CatalogError(f"{where}: missing field {key!r}")
    where = f"{where}[{obj['id']}]"
    names = tuple(obj["names"])
    weights = tuple(_lin_load(w, f"{where}.weights[{i}]") for i, w in enumerate(obj["weights"]))
    if len(names) != len(weights):
        raise CatalogError(f"{where}: {len(names)} names but {len(weights)} weights")
    law_obj = obj["law"]
    try:
        law = ParamLaw(int(law_obj["c"]), int(law_obj["d"]), int(law_obj["n_min"]),
                       None if law_obj.get("n_max") is None else int(law_obj["n_max"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise CatalogError(f"{where}.law: {exc}") from None
    basket = []
    for i, e in enumerate(obj["basket"]):
        try:
            basket.append(BasketEntry(int(e["count"]), _lin_load(e["order"], f"{where}.basket[{i}].order"),
                                      _lin_load(e["a"], f"{where}.basket[{i}].a"),
                                      _lin_load(e["b"], f"{where}.basket[{i}].b")))
        except KeyError as exc:
            raise CatalogError(f"{where}.basket[{i}]: missing {exc}") from None
    dk = obj["degK2"]
    try:
        degK2 = RationalFunction(tuple(int(x) for x in dk["num"]), tuple(int(x) for x in dk["den"]),
                                 bool(dk.get("known_discrepant", False)))
    except (KeyError, TypeError, ValueError) as exc:
        raise CatalogError(f"{where}.degK2: {exc}") from None
    declared_w = obj.get("declared_w")
    if declared_w is not None:
        declared_w = {k: [_lin_load(x, f"{where}.declared_w.{k}") for x in v] for k, v in declared_w.items()}
    placement = obj.get("placement")
    m = ModelSpec(
        id=str(obj["id"]), table=str(obj.get("table", "")), names=names, weights=weights,
        fmt=_fmt_load(obj["format"], f"{where}.format"), law=law, basket=tuple(basket),
        degK2=degK2, h0=int(obj["h0"]),
        placement=tuple(tuple(r) for r in placement) if placement is not None else None,
        declared_w=declared_w, group=str(obj.get("group", "main")), note=str(obj.get("note", "")),
    )
    validate_model(m, where)
    return m


def validate_model(m: ModelSpec, where: str = "model", n_limit: int = 8) -> None:
    """Range checks at every n of the declared range up to ``n_limit``."""
    for n in m.law.ns(n_max=max(n_limit, m.law.n_min)):
        try:
            r = m.r(n)
            ws = m.weights_at(r)
            if any(w < 1 for w in ws):
                raise CatalogError(f"{where}: weight {min(ws)} < 1 at n={n} (r={r})")
            for e in m.basket:
                if e.order.at(r) < 2:
                    raise CatalogError(f"{where}: basket order < 2 at n={n}")
            k2 = m.degK2(r)
            if k2 <= 0 and not m.degK2.known_discrepant:
                raise CatalogError(f"{where}: declared (-K)^2 = {k2} is not positive at n={n}")
            degs = m.fmt.equation_degrees(r)
            if any(d < 1 for d in degs):
                raise CatalogError(f"{where}: nonpositive equation degree at n={n}")
        except NonIntegral as exc:
            raise CatalogError(f"{where}: {exc} at n={n}") from None
        except ZeroDivisionError:
            raise CatalogError(f"{where}: declared (-K)^2 has a pole at n={n}") from None
    if isinstance(m.fmt, Pfaffian5):
        try:
            pfaffian_data(m.fmt.entries)
        except (IncompatibleMatrix, ValueError) as exc:
            raise CatalogError(f"{where}.format: {exc}") from None


@dataclass
class Catalog:
    models: list[ModelSpec] = field(default_factory=list)

    def __post_init__(self):
        seen = set()
        for m in self.models:
            if m.id in seen:
                raise CatalogError(f"duplicate model id {m.id!r}")
            seen.add(m.id)

    def __iter__(self):
        return iter(self.models)

    def __len__(self):
        return len(self.models)

    def __getitem__(self, key: str) -> ModelSpec:
        for m in self.models:
            if m.id == key:
                return m
        raise KeyError(f"no model {key!r} in the catalog")

    def __contains__(self, key) -> bool:
        return any(m.id == key for m in self.models)

    def ids(self) -> list[str]:
        return [m.id for m in self.models]

    def select(self, ids: Iterable[str] | None = None, group: str | None = None) -> Catalog:
        ids = list(ids) if ids else None
        if ids:
            for i in ids:
                self[i]
        return Catalog([m for m in self.models if (ids is None or m.id in ids)
                        and (group is None or m.group == group)])

    def to_json(self) -> dict:
        return {"schema": "dpcascade-catalog/1", "models": [model_to_json(m) for m in self.models]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)


def builtin_catalog() -> Catalog:
    return Catalog(_builtin())


def load_catalog(path: str | Path | None = None) -> Catalog:
    """Built-in catalog, or a JSON document following the catalog schema."""
    if path is None:
        return builtin_catalog()
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CatalogError(f"cannot read {path}: {exc}") from None
    return loads_catalog(text, str(path))


def loads_catalog(text: str, source: str = "<string>") -> Catalog:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("models"), list):
        raise CatalogError(f"{source}: expected an object with a 'models' list")
    return Catalog([model_from_json(m, f"{source}: models[{i}]") for i, m in enumerate(doc["models"])])


def instantiate(model_id: str, n: int | None, seed: int = 0, p: int = DEFAULT_PRIME,
                catalog: Catalog | None = None) -> ModelInstance:
    cat = catalog or builtin_catalog()
    return cat[model_id].instantiate(n, seed, p)


def match_target(catalog: Catalog, kind: str, weights: Sequence[int], degrees: Sequence[int],
                 r: int) -> tuple[ModelSpec, int | None] | None:
    """Catalog entry of the same format, weight multiset and equation degrees at parameter r."""
    for m in catalog:
        if m.fmt.kind != kind:
            continue
        n = m.law.n_of(r)
        if n is None and not m.law.fixed:
            continue
        rr = m.r(n) if not m.law.fixed else m.law.d
        if m.law.fixed:
            n = None
        try:
            if sorted(m.weights_at(rr)) != sorted(weights):
                continue
            if sorted(m.fmt.equation_degrees(rr)) != sorted(degrees):
                continue
        except NonIntegral:
            continue
        return m, n
    return None
