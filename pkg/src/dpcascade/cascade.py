"""Type-I projections between formats, explicit elimination and cascade search.

A type-I projection eliminates a weight-1 coordinate that occurs as a pure
matrix entry (Pfaffian or P2 x P2 formats) or linearly in every equation
(complete intersections).  The structural rules are

* P2 x P2 with the center at entry (0,0): a 5x5 Pfaffian with two zero
  entries, in Tom_1 format, containing the divisor cut out by the 2x2 block
  away from the center's row and column;
* Pfaffian with the center at entry (0,1): the complete intersection of the
  two Pfaffians avoiding the center, equal to a 2x3 matrix times the column
  of the three entries away from rows 0 and 1, which cut out the divisor;
* CI with equations ``c*L_i + H_i``: the hypersurface ``L_2*H_1 - L_1*H_2``
  containing V(L_1, L_2).

Other center positions are first moved to the normal position by permuting
rows and columns.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .catalog import Catalog, ModelSpec, match_target
from .errors import CascadeError, CenterNotLinear, ImplicitFunctionFails, NotApplicable
from .exactmath import LinExpr, MultiPoly, Ring, rank_mod_p
from .formats import CI, P2xP2, FormatSpec, Hypersurface, Pfaffian5, hilbert_numerator
from .invariants import calibrate, h0_minusK, invariant_report
from .members import ModelInstance, make_instance, pfaffian_of, skew_get
from .quasismooth import basket_of, qs_member
from .wps import WeightedSpace, is_wellformed, wellformed_member

NO_CENTER = "no-weight-1-variable"
NOT_QS = "genericization-not-quasismooth"
MATCHED_TERMINAL = "matched-terminal"


@dataclass
class ProjectionStep:
    source: str
    center: str
    center_pos: tuple | None
    target_fmt: FormatSpec
    target_names: tuple[str, ...]
    target_weights: tuple[LinExpr, ...]
    divisor: list[str]
    divisor_degrees: list[LinExpr]
    zeros: list[tuple[tuple[int, int], LinExpr]] = field(default_factory=list)
    tom: int | None = None
    group: str = "main"
    target_id: str | None = None

    def describe(self) -> str:
        d = ",".join(self.divisor)
        amb = ",".join(str(w) for w in self.target_weights)
        out = f"{self.source} --{self.center}--> {self.target_fmt.kind} in P({amb}), D = V({d})"
        if self.zeros:
            out += " zeros " + ", ".join(f"m{i+1}{j+1} (deg {deg})" for (i, j), deg in self.zeros)
        if self.tom is not None:
            out += f", Tom_{self.tom + 1}"
        if self.target_id:
            out += f" -> {self.target_id}"
        return out


@dataclass
class StepVerdict:
    n: int | None
    r: int
    wellformed: bool
    quasismooth: bool
    invariants: bool
    special: bool
    target_id: str | None = None
    detail: dict = field(default_factory=dict)
    flagged: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.wellformed and self.quasismooth and self.invariants and self.special


@dataclass
class CascadeReport:
    chain: list[ProjectionStep]
    verdicts: dict[int, list[StepVerdict]]
    terminal: str

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple([self.chain[0].source] + [s.target_id or "?" for s in self.chain])

    def describe(self) -> str:
        return " -> ".join(self.ids) + f" [{self.terminal}]"


# ---------------------------------------------------------------------------
# centers and format-level rules
# ---------------------------------------------------------------------------

def _center_positions(ms: ModelSpec, name: str) -> list[tuple[int, int]]:
    plc = ms.display_placement() or {}
    return sorted(pos for pos, lab in plc.items() if lab == name)


def find_projection_centers(ms: ModelSpec) -> list[str]:
    """Weight-1 variables usable as type-I centers."""
    ones = [nm for nm, w in zip(ms.names, ms.weights) if w == LinExpr.const(1)]
    if isinstance(ms.fmt, (Pfaffian5, P2xP2)):
        return [nm for nm in ones if len(_center_positions(ms, nm)) == 1]
    if isinstance(ms.fmt, CI):
        return ones
    return []


def _row_col_perm(i: int, n: int) -> list[int]:
    return [i] + [k for k in range(n) if k != i]


def _pf_perm(i: int, j: int) -> list[int]:
    return [i, j] + [k for k in range(5) if k not in (i, j)]


def _p2_recipe(A, zero):
    """Pfaffian entries from a 3x3 matrix with the center at (0,0); two entries are ``zero``."""
    return {
        (0, 1): A[0][1], (0, 2): A[0][2], (0, 3): A[1][0], (0, 4): A[2][0],
        (1, 3): A[1][1], (1, 4): A[2][1], (2, 3): A[1][2], (2, 4): A[2][2],
        (1, 2): zero[0], (3, 4): zero[1],
    }


P2_DIVISOR = ((1, 3), (1, 4), (2, 3), (2, 4))
P2_ZEROS = ((1, 2), (3, 4))
PF_DIVISOR = ((2, 3), (2, 4), (3, 4))


def tom_index(entries: dict, divisor: Sequence, zeros: Sequence = ()) -> int | None:
    """Index k with every entry off row/column k in the divisor ideal (by position)."""
    inside = set(divisor) | set(zeros)
    for k in range(5):
        if all(pos in inside for pos in entries if k not in pos):
            return k
    return None


def project_format(ms: ModelSpec, center: str) -> ProjectionStep:
    """Structural rule: target format, ambient and divisor data."""
    fs = ms.display_format()
    if isinstance(fs, Hypersurface):
        raise NotApplicable(f"{ms.id}: hypersurfaces have no type-I projection")
    if center not in ms.names:
        raise CenterNotLinear(f"{center} is not a variable of {ms.id}")
    i_c = ms.names.index(center)
    if ms.weights[i_c] != LinExpr.const(1):
        raise CenterNotLinear(f"{center} has weight {ms.weights[i_c]}, not 1")
    names = ms.names[:i_c] + ms.names[i_c + 1:]
    weights = ms.weights[:i_c] + ms.weights[i_c + 1:]
    plc = ms.display_placement() or {}
    if isinstance(fs, (Pfaffian5, P2xP2)):
        pos = _center_positions(ms, center)
        if len(pos) != 1:
            raise CenterNotLinear(f"{center} is not a pure matrix entry of {ms.id}")
        pos = pos[0]
    if isinstance(fs, P2xP2):
        rp, cp = _row_col_perm(pos[0], 3), _row_col_perm(pos[1], 3)
        u = [fs.u[k] for k in rp]
        v = [fs.v[k] for k in cp]
        A = [[u[a] + v[b] for b in range(3)] for a in range(3)]
        z12 = u[0] + v[1] + v[2] - v[0]
        z34 = u[1] + u[2] + v[0] - u[0]
        ents = _p2_recipe(A, (z12, z34))
        labels = _p2_recipe([[plc.get((rp[a], cp[b]), "?") for b in range(3)] for a in range(3)], ("0", "0"))
        target = Pfaffian5(ents, frozenset(P2_ZEROS))
        div = [labels[p] for p in P2_DIVISOR]
        divdeg = [ents[p] for p in P2_DIVISOR]
        zeros = [(p, ents[p]) for p in P2_ZEROS]
        return ProjectionStep(ms.id, center, pos, target, names, weights, div, divdeg, zeros,
                              tom_index(ents, P2_DIVISOR, P2_ZEROS), ms.group)
    if isinstance(fs, Pfaffian5):
        perm = _pf_perm(*pos)
        data = fs.data()
        d = [data.degrees[k] for k in perm]
        target = CI(d[0], d[1])

        def lab(a, b):
            a, b = perm[a], perm[b]
            return plc.get((min(a, b), max(a, b)), "?")

        div = [lab(*p) for p in PF_DIVISOR]
        divdeg = [fs.entries[tuple(sorted((perm[a], perm[b])))] for a, b in PF_DIVISOR]
        return ProjectionStep(ms.id, center, pos, target, names, weights, div, divdeg, [], None, ms.group)
    if isinstance(fs, CI):
        d1, d2 = fs.d1, fs.d2
        one = LinExpr.const(1)
        target = Hypersurface(d1 + d2 - one)
        return ProjectionStep(ms.id, center, None, target, names, weights,
                              [f"L1_{{{d1 - one}}}", f"L2_{{{d2 - one}}}"], [d1 - one, d2 - one],
                              [], None, ms.group)
    raise NotApplicable(f"unknown format of {ms.id}")


# ---------------------------------------------------------------------------
# explicit elimination
# ---------------------------------------------------------------------------

@dataclass
class Certificate:
    """eq = sum(cofactors[k] * generators[k]); checked by exact expansion."""

    cofactors: list[MultiPoly]

    def holds(self, eq: MultiPoly, generators: Sequence[MultiPoly]) -> bool:
        acc = eq.ring.zero()
        for c, g in zip(self.cofactors, generators):
            acc = acc + c * g
        return acc == eq


def _pfaffian_certificate(m: dict, rows: Sequence[int], gens: Sequence[tuple[int, int]],
                          zeros: Sequence = ()) -> Certificate | None:
    """Cofactors expressing a 4x4 Pfaffian through the entries at the ``gens`` positions."""
    a, b, c, d = rows
    terms = [((a, b), (c, d), 1), ((a, c), (b, d), -1), ((a, d), (b, c), 1)]
    ring = next(iter(m.values())).ring
    cof = [ring.zero() for _ in gens]
    keyed = {tuple(p): k for k, p in enumerate(gens)}
    for p, q, sign in terms:
        if tuple(sorted(p)) in zeros or tuple(sorted(q)) in zeros:
            continue
        if tuple(sorted(q)) not in keyed:
            p, q = q, p
        if tuple(sorted(q)) not in keyed:
            return None
        orient = 1 if q[0] < q[1] else -1
        k = keyed[tuple(sorted(q))]
        cof[k] = cof[k] + skew_get(m, *p) * (sign * orient)
    return Certificate(cof)


def _jacobian_at_center(inst: ModelInstance, center: str) -> int:
    """Rank mod p of the Jacobian at the coordinate point of ``center``."""
    ring = inst.ring
    p = ring.p or 10007
    pt = [0] * ring.nvars
    pt[ring.index(center)] = 1
    rows = [[int(f.diff(nm).evaluate(pt)) % p for nm in ring.names] for f in inst.equations]
    return rank_mod_p(rows, p)


def _target_ring(inst: ModelInstance, center: str) -> Ring:
    return inst.ring.drop(center)


def project_equations(inst: ModelInstance, center: str, step: ProjectionStep | None = None) -> ModelInstance:
    """Eliminate ``center`` from a member in projection-normal form.

    Returns the special member of the target format.  Its ``meta`` carries the
    divisor generators and the containment certificates, each checked by
    exact expansion.
    """
    ring = inst.ring
    if center not in ring.names:
        raise CenterNotLinear(f"{center} is not a variable")
    if ring.weight(center) != 1:
        raise CenterNotLinear(f"{center} has weight {ring.weight(center)}")
    tring = _target_ring(inst, center)
    c = ring.var(center)
    fmt = inst.fmt
    if isinstance(fmt, Hypersurface):
        raise NotApplicable("hypersurfaces have no type-I projection")

    if isinstance(fmt, (Pfaffian5, P2xP2)):
        m = inst.matrix
        pos = [p for p, e in m.items() if center in e.variables()]
        if len(pos) != 1 or len(m[pos[0]]) != 1 or m[pos[0]].degree_in(center) != 1 \
                or len(m[pos[0]].variables()) != 1:
            raise CenterNotLinear(f"{center} is not a pure matrix entry")
        pos = pos[0]
    if _jacobian_at_center(inst, center) == 0:
        raise ImplicitFunctionFails(f"no equation has a unit coefficient at the point p_{center}")

    if isinstance(fmt, P2xP2):
        rp, cp = _row_col_perm(pos[0], 3), _row_col_perm(pos[1], 3)
        A = [[m[(rp[a], cp[b])] for b in range(3)] for a in range(3)]
        N = _p2_recipe(A, (ring.zero(), ring.zero()))
        N = {p: e.move_to(tring) for p, e in N.items()}
        gens_pos = list(P2_DIVISOR)
        eqs, certs = [], []
        for k in range(5):
            rows = [x for x in range(5) if x != k]
            eqs.append(pfaffian_of(N, rows))
            certs.append(_pfaffian_certificate(N, rows, gens_pos, P2_ZEROS))
        gens = [N[p] for p in gens_pos]
        u = [fmt.u[k] for k in rp]
        v = [fmt.v[k] for k in cp]
        Ad = [[u[a] + v[b] for b in range(3)] for a in range(3)]
        tfmt = Pfaffian5(_p2_recipe(Ad, (u[0] + v[1] + v[2] - v[0], u[1] + u[2] + v[0] - u[0])),
                         frozenset(P2_ZEROS))
        tom = _tom_of_matrix(N, gens)
        matrix = N
    elif isinstance(fmt, Pfaffian5):
        perm = _pf_perm(*pos)
        M = {(a, b): skew_get(m, perm[a], perm[b]).move_to(tring) if (a, b) != (0, 1) else None
             for a in range(5) for b in range(a + 1, 5)}
        M[(0, 1)] = tring.zero()
        gens_pos = list(PF_DIVISOR)
        eqs, certs = [], []
        for k in (0, 1):
            rows = [x for x in range(5) if x != k]
            eqs.append(pfaffian_of(M, rows))
            certs.append(_pfaffian_certificate(M, rows, gens_pos))
        gens = [M[p] for p in gens_pos]
        degs = [d for d in fmt.data().degrees]
        tfmt = CI(degs[perm[0]], degs[perm[1]])
        tom = None
        matrix = None
        inst_meta = {"display": [[M[(0, 2)], -M[(0, 3)], M[(0, 4)]], [M[(1, 2)], -M[(1, 3)], M[(1, 4)]]],
                     "column": [M[(3, 4)], M[(2, 4)], M[(2, 3)]]}
    elif isinstance(fmt, CI):
        L, H = [], []
        for f in inst.equations:
            if f.degree_in(center) > 1:
                raise CenterNotLinear(f"{center} occurs to power {f.degree_in(center)}")
            L.append(f.coefficient_in(center, 1).move_to(tring))
            H.append(f.coefficient_in(center, 0).move_to(tring))
        if any(l.is_zero() for l in L):
            raise ImplicitFunctionFails(f"{center} does not occur in every equation")
        eq = L[1] * H[0] - L[0] * H[1]
        eqs = [eq]
        gens = L
        certs = [Certificate([-H[1], H[0]])]
        tfmt = Hypersurface(fmt.d1 + fmt.d2 - LinExpr.const(1))
        tom = None
        matrix = None
    else:
        raise NotApplicable(f"unknown format {fmt!r}")

    ok = all(cert is not None and cert.holds(e, gens) for e, cert in zip(eqs, certs))
    meta = {"center": center, "divisor": gens, "certificates": certs, "contains_divisor": ok,
            "tom": tom, "source": inst.model_id}
    if isinstance(fmt, Pfaffian5):
        meta.update(inst_meta)
    out = ModelInstance(f"{inst.model_id}/{center}", inst.n, inst.r, tring, tfmt, eqs, matrix,
                        inst.seed, True, meta)
    if step is not None:
        want = step.target_fmt.equation_degrees(inst.r)
        got = [e.degree() for e in eqs if not e.is_zero()]
        if sorted(want) != sorted(got):
            raise CascadeError(f"projected degrees {got} differ from the format rule {want}")
    return out


def _tom_of_matrix(N: dict, gens: Sequence[MultiPoly]) -> int | None:
    for k in range(5):
        if all(e.is_zero() or any(e == g for g in gens) for p, e in N.items() if k not in p):
            return k
    return None


def deform_generic(step: ProjectionStep | ModelInstance, n: int | None = None, r: int | None = None,
                   seed: int = 0, p: int | None = None) -> ModelInstance:
    """Member of the target format with fresh generic coefficients (zero entries become forms)."""
    if isinstance(step, ModelInstance):
        fmt = step.fmt
        ring = step.ring
        n, r, label = step.n, step.r, step.model_id
    else:
        fmt = step.target_fmt
        label = f"{step.source}/{step.center}"
        ws = tuple(w.at(r) for w in step.target_weights)
        ring = Ring(step.target_names, ws, p or 10007)
    if isinstance(fmt, Pfaffian5) and fmt.zeros:
        fmt = Pfaffian5(fmt.entries)
    return make_instance(label + ":generic", n, r, ring, fmt, seed, tag=f"{label}:{n}:generic")


# ---------------------------------------------------------------------------
# verification and search
# ---------------------------------------------------------------------------

_QS_CACHE: dict = {}


def _generic_checks(step: ProjectionStep, n, r, seed, trials) -> tuple[bool, bool, object, object]:
    ws = tuple(w.at(r) for w in step.target_weights)
    key = (step.target_fmt.kind, tuple(sorted(step.target_fmt.equation_degrees(r))),
           tuple(sorted(ws)), seed, trials)
    if key in _QS_CACHE:
        return _QS_CACHE[key]
    gen = deform_generic(step, n, r, seed)
    rep = qs_member(gen, trials=trials, seed=seed)
    wf, bad = (wellformed_member(gen, trials=trials, seed=seed) if rep.passed else (True, None))
    basket = None
    if rep.passed and wf:
        try:
            basket = basket_of(gen)
        except CascadeError as exc:
            basket = exc
    out = (rep, wf, bad, basket)
    _QS_CACHE[key] = out
    return out


def monomials_through_center(weights: Sequence[int], k: int) -> int:
    """Degree-k monomials divisible by a weight-1 variable: monomials of degree k-1."""
    ring = Ring(tuple(f"x{i}" for i in range(len(weights))), tuple(weights), None)
    return len(ring.monomials(k - 1)) if k >= 1 else 0


def verify_step(step: ProjectionStep, n: int | None, seed: int = 0, catalog: Catalog | None = None,
                source: ModelSpec | None = None, trials: int = 48, strict: bool = False) -> StepVerdict:
    """Four verdicts at parameter n: ambient, genericized member, invariants, special member."""
    calibrate()
    r = source.r(n) if source is not None else n
    ws = tuple(w.at(r) for w in step.target_weights)
    detail: dict = {}
    flagged: list[dict] = []
    # (1) ambient
    wf_amb = is_wellformed(ws)
    detail["ambient"] = "P(" + ",".join(map(str, ws)) + ")"
    # (2) genericized member
    rep, wf_mem, bad, basket = _generic_checks(step, n, r, seed, trials)
    detail["qs"] = rep.summary(step.target_names)
    if not wf_mem:
        detail["wellformed_member"] = f"meets {bad.label(step.target_names)} in a curve"
    qs_ok = rep.passed and wf_mem
    # target invariants
    hd = hilbert_numerator(step.target_fmt, r, ws)
    inv = invariant_report(hd, ws, basket if isinstance(basket, list) else [])
    detail.update({"k": inv.k, "degK2": inv.degK2, "h0": inv.h0,
                   "basket": [str(s) for s in basket] if isinstance(basket, list) else None})
    # (3) catalog match
    inv_ok = False
    target_id = None
    if catalog is not None:
        pool = catalog.select(group=step.group)
        hit = match_target(pool, step.target_fmt.kind, ws, step.target_fmt.equation_degrees(r), r)
        if hit is not None:
            tm, tn = hit
            target_id = tm.id
            inv_ok = True
            if inv.h0 != tm.h0:
                inv_ok = False
                detail["h0_mismatch"] = (inv.h0, tm.h0)
            dk = tm.declared_degK2(tn)
            if inv.degK2 != dk:
                if tm.degK2.known_discrepant and not strict:
                    flagged.append({"model": tm.id, "n": tn, "field": "degK2",
                                    "computed": str(inv.degK2), "declared": str(dk)})
                else:
                    inv_ok = False
                    detail["degK2_mismatch"] = (str(inv.degK2), str(dk))
            if isinstance(basket, list) and basket != tm.declared_basket(tn):
                inv_ok = False
                detail["basket_mismatch"] = ([str(s) for s in basket], [str(s) for s in tm.declared_basket(tn)])
            elif not isinstance(basket, list):
                inv_ok = False
        else:
            detail["match"] = "no catalog entry with this ambient and format"
    # (4) special member
    special_ok = False
    if source is not None:
        try:
            src = source.instantiate(n, seed, center=step.center)
            sp = project_equations(src, step.center, step)
            src_h0 = h0_minusK(hilbert_numerator(source.display_format(), r, source.weights_at(r)),
                               source.weights_at(r))
            drop = src_h0 - inv.h0
            expect = monomials_through_center(source.weights_at(r), inv.k)
            detail.update({"contains_divisor": sp.meta["contains_divisor"], "h0_drop": drop,
                           "h0_drop_expected": expect, "center_rank": _jacobian_at_center(src, step.center)})
            special_ok = sp.meta["contains_divisor"] and drop == expect
        except CascadeError as exc:
            detail["special_error"] = f"{type(exc).__name__}: {exc}"
    return StepVerdict(n, r, wf_amb, qs_ok, inv_ok, special_ok, target_id, detail, flagged)


def _edges(catalog: Catalog, n_max: int, seed: int, trials: int, strict: bool):
    """Accepted and rejected steps of every model, with per-n verdicts."""
    out = {}
    for ms in catalog:
        rows = []
        for center in find_projection_centers(ms):
            step = project_format(ms, center)
            verdicts = [verify_step(step, n, seed, catalog, ms, trials, strict)
                        for n in ms.law.ns(n_max=n_max)]
            ids = {v.target_id for v in verdicts}
            step.target_id = ids.pop() if len(ids) == 1 else None
            ok = bool(verdicts) and all(v.passed for v in verdicts) and step.target_id is not None
            rows.append((step, verdicts, ok))
        out[ms.id] = rows
    return out


def cascade_search(catalog: Catalog, n_max: int = 3, seed: int = 0, trials: int = 48,
                   strict: bool = False, group: str | None = "main") -> tuple[list[CascadeReport], dict]:
    """Maximal chains of accepted steps, deduplicated by model-id sequence.

    Returns the chains and the full step table (accepted and rejected).
    """
    cat = catalog.select(group=group) if group else catalog
    edges = _edges(cat, n_max, seed, trials, strict)
    accepted = {mid: [(s, v) for s, v, ok in rows if ok] for mid, rows in edges.items()}
    has_incoming = {s.target_id for rows in accepted.values() for s, _ in rows}

    def terminal(mid):
        rows = edges.get(mid, [])
        if not rows:
            return NO_CENTER
        if any(not all(v.quasismooth for v in vs) for _, vs, ok in rows if not ok):
            return NOT_QS
        return MATCHED_TERMINAL

    chains: dict[tuple, CascadeReport] = {}

    def walk(mid, path, verdicts, seen):
        nxt = [(s, v) for s, v in accepted.get(mid, []) if s.target_id not in seen]
        if not nxt:
            if path:
                rep = CascadeReport(list(path), dict(verdicts), terminal(mid))
                chains.setdefault(rep.ids, rep)
            return
        for s, v in nxt:
            verdicts[len(path)] = v
            walk(s.target_id, path + [s], verdicts, seen | {s.target_id})

    for ms in sorted(cat, key=lambda m: m.id):
        if ms.id in has_incoming:
            continue
        walk(ms.id, [], {}, {ms.id})
    reports = sorted(chains.values(), key=lambda c: c.ids)
    return reports, edges


def clear_cache():
    _QS_CACHE.clear()
