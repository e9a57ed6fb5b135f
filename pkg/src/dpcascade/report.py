"""Verification reports, cascade reports and regenerated tables.

Every computed value is compared against the declared catalog value.  A
mismatch becomes a :class:`Discrepancy`; entries flagged known-discrepant are
whitelisted unless ``strict`` is set.  Reports render as text or as JSON with
a stable schema, always in canonical (id, n) order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .cascade import cascade_search, find_projection_centers
from .catalog import Catalog, ModelSpec, builtin_catalog
from .errors import CascadeError
from .exactmath import DEFAULT_PRIME, LinExpr
from .formats import P2xP2, Pfaffian5, hilbert_numerator
from .invariants import calibrate, invariant_report, rr_h0
from .quasismooth import basket_of, qs_member
from .wps import is_wellformed, wellformed_member

SCHEMA = "dpcascade-report/1"

EXPECTED_CHAINS = {
    "main": {("P11", "PF11", "CI11"), ("PF12", "CI12", "HS12"), ("PF13", "CI13"),
             ("PF21", "CI21"), ("PF22", "CI22"), ("P12", "PF14")},
    "rs": {("RS6", "RS7", "RS8")},
}


@dataclass(frozen=True)
class Discrepancy:
    model: str
    n: int | None
    field: str
    computed: str
    declared: str
    whitelisted: bool = False

    def to_json(self) -> dict:
        return {"model": self.model, "n": self.n, "field": self.field, "computed": self.computed,
                "declared": self.declared, "whitelisted": self.whitelisted}

    def __str__(self) -> str:
        tag = " [known]" if self.whitelisted else ""
        n = "" if self.n is None else f" n={self.n}"
        return f"{self.model}{n} {self.field}: computed {self.computed}, declared {self.declared}{tag}"


@dataclass
class Report:
    kind: str
    seed: int
    prime: int
    strict: bool
    records: list[dict] = field(default_factory=list)
    discrepancies: list[Discrepancy] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    cascade: dict | None = None
    tables: list[dict] | None = None

    @property
    def unexpected(self) -> list[Discrepancy]:
        return [d for d in self.discrepancies if self.strict or not d.whitelisted]

    @property
    def exit_code(self) -> int:
        return 1 if (self.unexpected or self.failures) else 0

    def to_json(self) -> dict:
        out = {"schema": SCHEMA, "kind": self.kind, "seed": self.seed, "prime": self.prime,
               "strict": self.strict, "records": self.records,
               "discrepancies": [d.to_json() for d in self.discrepancies],
               "failures": list(self.failures), "exit_code": self.exit_code}
        if self.cascade is not None:
            out["cascade"] = self.cascade
        if self.tables is not None:
            out["tables"] = self.tables
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)

    def render(self) -> str:
        lines = [f"# {self.kind} (seed {self.seed}, prime {self.prime}{', strict' if self.strict else ''})"]
        if self.kind == "verify":
            for rec in self.records:
                lines.append(_record_line(rec))
        if self.cascade is not None:
            lines.extend(_cascade_lines(self.cascade))
        if self.tables is not None:
            lines.extend(_table_lines(self.tables))
        if self.discrepancies:
            lines.append("discrepancies:")
            lines.extend(f"  [{i + 1}] {d}" for i, d in enumerate(self.discrepancies))
        if self.failures:
            lines.append("failures:")
            lines.extend(f"  {f}" for f in self.failures)
        lines.append(f"status: {'PASS' if self.exit_code == 0 else 'FAIL'}")
        return "\n".join(lines)


def _q(x) -> str:
    return str(Fraction(x))


def _bstr(basket) -> str:
    if basket is None:
        return "-"
    if not basket:
        return "smooth"
    out, prev, count = [], None, 0
    for s in list(basket) + [None]:
        if s == prev:
            count += 1
            continue
        if prev is not None:
            out.append(f"{count}x{prev}" if count > 1 else str(prev))
        prev, count = s, 1
    return ", ".join(out)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _sorted_lin(xs: Iterable[LinExpr]) -> list[tuple[int, int]]:
    return sorted((x.slope2, x.offset2) for x in xs)


def format_consistency(ms: ModelSpec) -> list[str]:
    """Displayed matrix and declared weight vector agree with the table format."""
    problems = []
    disp = ms.display_format()
    if isinstance(ms.fmt, Pfaffian5):
        tb = ms.fmt.data().b
        if _sorted_lin(disp.data().b) != _sorted_lin(tb):
            problems.append("displayed matrix weight vector is not a permutation of the table's")
        if ms.declared_w and "b" in ms.declared_w and _sorted_lin(ms.declared_w["b"]) != _sorted_lin(tb):
            problems.append("declared w is not a permutation of the table weight vector")
    elif isinstance(ms.fmt, P2xP2):
        table = [[ms.fmt.entry(i, j) for j in range(3)] for i in range(3)]
        shown = [[disp.entry(i, j) for j in range(3)] for i in range(3)]
        if shown != table:
            problems.append("displayed matrix degrees differ from the table matrix")
        if ms.declared_w:
            u, v = ms.declared_w["u"], ms.declared_w["v"]
            mat = [[u[i] + v[j] for j in range(3)] for i in range(3)]
            tr = [list(r) for r in zip(*mat)]
            if table not in (mat, tr):
                problems.append("declared w does not reproduce the table matrix, even transposed")
    return problems


def verify_model(ms: ModelSpec, n, seed: int = 0, prime: int = DEFAULT_PRIME,
                 heavy: bool = True, trials: int = 48) -> tuple[dict, list[Discrepancy], list[str]]:
    """One (model, n) cell: computed values, discrepancies and check failures."""
    calibrate()
    r = ms.r(n)
    ws = ms.weights_at(r)
    disc: list[Discrepancy] = []
    fails: list[str] = []
    tag = f"{ms.id}" + ("" if ms.law.fixed else f" n={n}")
    rec: dict = {"id": ms.id, "n": None if ms.law.fixed else n, "r": None if ms.law.fixed else r,
                 "ambient": "P(" + ",".join(map(str, ws)) + ")"}
    amb_ok = is_wellformed(ws)
    rec["wellformed_ambient"] = amb_ok
    if not amb_ok:
        fails.append(f"{tag}: ambient {rec['ambient']} is not well-formed")
    probs = format_consistency(ms)
    rec["format_ok"] = not probs
    fails.extend(f"{tag}: {p}" for p in probs)

    hd = hilbert_numerator(ms.display_format(), r, ws)
    declared_basket = ms.declared_basket(n)
    basket = None
    if heavy:
        inst = ms.instantiate(n, seed, prime)
        try:
            qs = qs_member(inst, trials=trials, seed=seed)
            rec["qs"] = qs.summary(inst.names)
            if not qs.passed:
                fails.append(f"{tag}: member is not quasismooth ({rec['qs']})")
            else:
                wf, bad = wellformed_member(inst, trials=trials, seed=seed)
                rec["wellformed_member"] = wf
                if not wf:
                    fails.append(f"{tag}: member meets {bad.label(inst.names)} in a curve")
                basket = basket_of(inst)
        except (CascadeError, NotImplementedError) as exc:
            rec["qs"] = f"error: {type(exc).__name__}: {exc}"
            fails.append(f"{tag}: {rec['qs']}")
    inv = invariant_report(hd, ws, basket if basket is not None else declared_basket)
    rec.update({"k": inv.k, "degK2": {"computed": _q(inv.degK2), "declared": _q(ms.declared_degK2(n))},
                "h0": {"computed": inv.h0, "declared": ms.h0},
                "basket": {"computed": None if basket is None else [str(s) for s in basket],
                           "declared": [str(s) for s in declared_basket]},
                "hilbert": inv.hilbert[: inv.k + 4]})
    if inv.degK2 != ms.declared_degK2(n):
        disc.append(Discrepancy(ms.id, rec["n"], "degK2", _q(inv.degK2), _q(ms.declared_degK2(n)),
                                ms.degK2.known_discrepant))
    if inv.h0 != ms.h0:
        disc.append(Discrepancy(ms.id, rec["n"], "h0", str(inv.h0), str(ms.h0)))
    if basket is not None and basket != declared_basket:
        disc.append(Discrepancy(ms.id, rec["n"], "basket", _bstr(basket), _bstr(declared_basket)))
    # Riemann-Roch with the computed (or, without extraction, declared) basket
    rr_basket = basket if basket is not None else declared_basket
    try:
        rr = rr_h0(inv.degK2, rr_basket)
    except CascadeError as exc:
        rr = None
        fails.append(f"{tag}: Riemann-Roch check: {exc}")
    rec["rr_h0"] = rr
    if rr is not None and rr != inv.h0:
        disc.append(Discrepancy(ms.id, rec["n"], "rr_h0", str(rr), str(inv.h0)))
    return rec, disc, fails


def run_verify(ids: Sequence[str] | None = None, n_min: int | None = None, n_max: int = 8,
               seed: int = 0, prime: int = DEFAULT_PRIME, strict: bool = False,
               catalog: Catalog | None = None, heavy_n_max: int = 3, trials: int = 48) -> Report:
    """Verify every (model, n) in range; baskets and quasismoothness for n <= ``heavy_n_max``."""
    cat = (catalog or builtin_catalog()).select(ids)
    rep = Report("verify", seed, prime, strict)
    for ms in cat:
        for n in ms.law.ns(n_min, n_max):
            rec, disc, fails = verify_model(ms, n, seed, prime, heavy=(ms.law.fixed or n <= heavy_n_max),
                                            trials=trials)
            rep.records.append(rec)
            rep.discrepancies.extend(disc)
            rep.failures.extend(fails)
    return rep


def _record_line(rec: dict) -> str:
    n = "" if rec["n"] is None else f" n={rec['n']} r={rec['r']}"
    dk, h0 = rec["degK2"], rec["h0"]
    mark = "" if dk["computed"] == dk["declared"] else f" (declared {dk['declared']})"
    hmark = "" if h0["computed"] == h0["declared"] else f" (declared {h0['declared']})"
    b = rec["basket"]["computed"]
    bs = ", ".join(b) if b is not None else "not extracted"
    qs = rec.get("qs", "not checked")
    return (f"{rec['id']}{n} {rec['ambient']} k={rec['k']} (-K)^2={dk['computed']}{mark} "
            f"h0={h0['computed']}{hmark} RR={rec['rr_h0']} basket=[{bs}] qs={qs}")


# ---------------------------------------------------------------------------
# cascade
# ---------------------------------------------------------------------------

def _verdict_json(v) -> dict:
    d = {k: (str(x) if isinstance(x, Fraction) else x) for k, x in v.detail.items()}
    return {"n": v.n, "r": v.r, "wellformed": v.wellformed, "quasismooth": v.quasismooth,
            "invariants": v.invariants, "special": v.special, "passed": v.passed,
            "target": v.target_id, "flagged": list(v.flagged), "detail": _jsonable(d)}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    return x


def run_cascade(n_max: int = 3, seed: int = 0, rs: bool = False, strict: bool = False,
                catalog: Catalog | None = None, trials: int = 48, prime: int = DEFAULT_PRIME) -> Report:
    """Cascade search over the main catalog (or the fixed surfaces with ``rs``)."""
    cat = catalog or builtin_catalog()
    group = "rs" if rs else "main"
    chains, edges = cascade_search(cat, n_max, seed, trials, strict, group=group)
    rep = Report("cascade", seed, prime, strict)
    found = {c.ids for c in chains}
    steps = []
    for mid in sorted(edges):
        for step, verdicts, ok in edges[mid]:
            steps.append({"source": step.source, "center": step.center, "step": step.describe(),
                          "target": step.target_id, "accepted": ok,
                          "verdicts": [_verdict_json(v) for v in verdicts]})
            for v in verdicts:
                for f in v.flagged:
                    rep.discrepancies.append(Discrepancy(whitelisted=True, **f))
    rep.discrepancies = sorted(set(rep.discrepancies), key=lambda d: (d.model, d.n or 0, d.field))
    sources = sorted({c.ids[0] for c in chains})
    no_chain = sorted(m.id for m in cat.select(group=group)
                      if m.id not in {i for c in found for i in c})
    expected = EXPECTED_CHAINS[group]
    rep.cascade = {
        "group": group, "n_max": n_max,
        "chains": [{"models": list(c.ids), "centers": [s.center for s in c.chain], "terminal": c.terminal}
                   for c in chains],
        "steps": steps,
        "sources": sources,
        "no_chain": no_chain,
        "matrix_models_with_chain": sorted(i for i in {x for c in found for x in c}
                                           if cat[i].fmt.kind in ("pfaffian", "p2xp2")),
    }
    for miss in sorted(expected - found):
        rep.failures.append("expected chain not found: " + " -> ".join(miss))
    for extra in sorted(found - expected):
        rep.failures.append("unexpected chain: " + " -> ".join(extra))
    return rep


def _cascade_lines(c: dict) -> list[str]:
    lines = [f"chains ({c['group']}, n <= {c['n_max']}):"]
    for ch in c["chains"]:
        lines.append(f"  {' -> '.join(ch['models'])}  via {', '.join(ch['centers'])}  [{ch['terminal']}]")
    lines.append("steps:")
    for s in c["steps"]:
        lines.append(f"  {'ACCEPT' if s['accepted'] else 'reject'} {s['step']}")
        if not s["accepted"]:
            for v in s["verdicts"]:
                if not v["passed"]:
                    why = [k for k in ("wellformed", "quasismooth", "invariants", "special") if not v[k]]
                    lines.append(f"      n={v['n']}: failed {', '.join(why)}; qs {v['detail'].get('qs')}")
    lines.append(f"models without a chain: {', '.join(c['no_chain']) or 'none'}")
    return lines


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

def emit_tables(ids: Sequence[str] | None = None, n_min: int | None = None, n_max: int = 3,
                seed: int = 0, prime: int = DEFAULT_PRIME, strict: bool = False,
                catalog: Catalog | None = None, trials: int = 48) -> Report:
    """Regenerate table rows with computed (-K)^2, h^0 and baskets; discrepancies become footnotes."""
    cat = (catalog or builtin_catalog()).select(ids or None)
    rep = Report("tables", seed, prime, strict)
    tables: dict[str, dict] = {}
    for ms in cat:
        t = tables.setdefault(ms.table, {"table": ms.table, "rows": []})
        for n in ms.law.ns(n_min, n_max):
            rec, disc, fails = verify_model(ms, n, seed, prime, heavy=True, trials=trials)
            r = ms.r(n)
            notes = []
            for d in disc:
                rep.discrepancies.append(d)
                notes.append(len(rep.discrepancies))
            rep.failures.extend(fails)
            t["rows"].append({"id": ms.id, "n": rec["n"], "r": rec["r"], "ambient": rec["ambient"],
                              "format": ms.fmt.kind, "degrees": ms.fmt.equation_degrees(r),
                              "degK2": rec["degK2"]["computed"], "h0": rec["h0"]["computed"],
                              "basket": rec["basket"]["computed"], "notes": notes})
    rep.tables = [tables[k] for k in sorted(tables)]
    return rep


def _table_lines(tables: list[dict]) -> list[str]:
    lines = []
    for t in tables:
        lines.append(f"Table {t['table']}")
        lines.append(f"  {'model':6} {'n':>2} {'r':>3}  {'ambient':24} {'degrees':14} {'(-K)^2':>10} {'h0':>3}  basket")
        for row in t["rows"]:
            n = "-" if row["n"] is None else str(row["n"])
            rr = "-" if row["r"] is None else str(row["r"])
            notes = "".join(f" [{k}]" for k in row["notes"])
            b = ", ".join(row["basket"]) if row["basket"] is not None else "-"
            degs = ",".join(map(str, row["degrees"]))
            lines.append(f"  {row['id']:6} {n:>2} {rr:>3}  {row['ambient']:24} {degs:14} "
                         f"{row['degK2']:>10} {row['h0']:>3}  {b}{notes}")
    return lines
