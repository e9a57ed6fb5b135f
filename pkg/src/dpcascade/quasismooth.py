"""Quasismoothness: a combinatorial criterion for hypersurfaces and a stratum-wise
Jacobian analysis for explicit members of any format.

For a member X = V(f_1..f_m) of codimension c, the affine cone is smooth away
from the origin iff the Jacobian has rank c at every point of the cone.  The
cone is cut into coordinate tori T_I = {x_i != 0 iff i in I}:

* |I| = 1 and |I| = 2 are solved exactly over F_p.  On a two-coordinate
  stratum the restricted equations become binary forms; their gcd, factored
  over F_p, lists the points, and each irreducible factor is checked in the
  residue field F_p[t]/(h).
* Larger strata are empty when a restricted equation is a nonzero monomial.
  Otherwise points are sampled numerically and the Jacobian rank is measured
  with an SVD; such strata carry the tag ``"sampled"``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor_sqf

from .errors import ContainsStratum, LinearCone, NotIsolated, RankDeficientEverywhere, ResidualSingularity
from .exactmath import (coefficient_rng, fraction_field_rank, gcd_all, rank_mod_p, up_divmod, up_gcd,
                        up_monic, up_mul, up_squarefree, up_strip_t, up_sub, up_trim)
from .wps import SingType, Stratum, WeightedSpace, normalize_sing

EXACT = "exact-point"
COMBINATORIAL = "combinatorial"
GENERIC_RANK = "generic-rank"
SAMPLED = "sampled"


@dataclass
class StratumCheck:
    stratum: Stratum
    method: str
    ok: bool
    points: int | None = None
    detail: str = ""


@dataclass
class QSReport:
    verdict: str  # "pass" | "fail" | "pass-with-sampling-caveat"
    failing: Stratum | None = None
    checks: list[StratumCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict != "fail"

    @property
    def sampled(self) -> list[Stratum]:
        return [c.stratum for c in self.checks if c.method == SAMPLED]

    def summary(self, names: Sequence[str] | None = None) -> str:
        if self.failing is None:
            return self.verdict
        lab = self.failing.label(names) if names else str(self.failing.support)
        return f"{self.verdict} at {lab}"


def _stratum(weights, support) -> Stratum:
    g = gcd_all(weights[i] for i in support)
    trans = tuple((i, weights[i] % g) for i in range(len(weights)) if i not in support)
    return Stratum(tuple(support), g, trans)


def _aggregate(checks: list[StratumCheck]) -> QSReport:
    for c in checks:
        if not c.ok:
            return QSReport("fail", c.stratum, checks)
    if any(c.method == SAMPLED and c.points for c in checks):
        return QSReport("pass-with-sampling-caveat", None, checks)
    return QSReport("pass", None, checks)


# ---------------------------------------------------------------------------
# combinatorial criterion for hypersurfaces
# ---------------------------------------------------------------------------

def _has_monomial(d: int, ws: Sequence[int]) -> bool:
    if d == 0:
        return True
    if not ws:
        return False
    w, rest = ws[0], ws[1:]
    return any(_has_monomial(d - k * w, rest) for k in range(d // w + 1))


def qs_hypersurface_general(ws: WeightedSpace | Sequence[int], d: int) -> QSReport:
    """Quasismoothness of a general degree-d hypersurface, decided by monomials.

    For every nonempty I either a monomial of degree d lives on x_I, or there
    are |I| monomials x_I^M * x_e with pairwise distinct e outside I.
    """
    weights = ws.weights if isinstance(ws, WeightedSpace) else tuple(ws)
    if d in weights:
        raise LinearCone(f"degree {d} equals a weight; the hypersurface is a linear cone")
    n = len(weights)
    checks = []
    for k in range(1, n + 1):
        for sub in itertools.combinations(range(n), k):
            sw = [weights[i] for i in sub]
            ok = _has_monomial(d, sw)
            if not ok:
                outside = [e for e in range(n) if e not in sub and d - weights[e] >= 0
                           and _has_monomial(d - weights[e], sw)]
                ok = len(outside) >= len(sub)
            checks.append(StratumCheck(_stratum(weights, sub), COMBINATORIAL, ok))
    return _aggregate(checks)


# ---------------------------------------------------------------------------
# arithmetic in F_p[t]/(h)
# ---------------------------------------------------------------------------

def _up_inv_mod(a, h, p):
    """Inverse of ``a`` modulo the irreducible ``h`` by the extended Euclid algorithm."""
    r0, r1 = list(h), up_divmod(a, h, p)[1]
    s0, s1 = [], [1]
    while r1:
        q, rem = up_divmod(r0, r1, p)
        r0, r1 = r1, rem
        s0, s1 = s1, up_sub(s0, up_mul(q, s1, p), p)
    if len(r0) != 1:
        raise ZeroDivisionError("not invertible modulo h")
    inv = pow(r0[0], -1, p)
    return up_trim([c * inv % p for c in s0])


def _rank_ext(mat, h, p) -> int:
    """Rank of a matrix of F_p[t] polynomials over the field F_p[t]/(h)."""
    if len(h) == 2:  # degree one: evaluate at the root
        root = (-h[0]) * pow(h[1], -1, p) % p
        vals = [[_eval_up(x, root, p) for x in row] for row in mat]
        return rank_mod_p(vals, p) if vals else 0
    rows = [[up_divmod(x, h, p)[1] for x in row] for row in mat]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = _up_inv_mod(rows[rank][col], h, p)
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                f = up_divmod(up_mul(rows[i][col], inv, p), h, p)[1]
                rows[i] = [up_divmod(up_sub(a, up_mul(f, b, p), p), h, p)[1]
                           for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _eval_up(a, x, p) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def _factor(a, p) -> list[list[int]]:
    """Monic irreducible factors of a square-free F_p polynomial (low degree first)."""
    a = up_monic(a, p)
    if len(a) <= 1:
        return []
    if len(a) == 2:
        return [a]
    _, facs = gf_factor_sqf([int(c) for c in reversed(a)], p, ZZ)
    return [[int(c) % p for c in reversed(f)] for f in facs]


# ---------------------------------------------------------------------------
# exact analysis on strata with at most two coordinates
# ---------------------------------------------------------------------------

@dataclass
class _LineData:
    restricted: list[list[int]]        # g_l(t)
    jac: list[list[list[int]]]         # J[l][k](t)


def _line_data(inst, i: int, j: int) -> _LineData:
    """Restriction to x_j = 1, x_i = t, other coordinates zero; with the Jacobian."""
    p = inst.ring.p
    nv = inst.ring.nvars
    g_all, j_all = [], []
    for f in inst.equations:
        g: dict[int, int] = {}
        jac: list[dict[int, int]] = [dict() for _ in range(nv)]
        for e, c in f.terms.items():
            others = [v for v in range(nv) if e[v] and v not in (i, j)]
            ti = e[i]
            if not others:
                g[ti] = (g.get(ti, 0) + c) % p
                if ti:
                    jac[i][ti - 1] = (jac[i].get(ti - 1, 0) + c * ti) % p
                if e[j]:
                    jac[j][ti] = (jac[j].get(ti, 0) + c * e[j]) % p
            elif len(others) == 1 and e[others[0]] == 1:
                k = others[0]
                jac[k][ti] = (jac[k].get(ti, 0) + c) % p
        g_all.append(_dense(g))
        j_all.append([_dense(x) for x in jac])
    return _LineData(g_all, j_all)


def _dense(d: dict[int, int]) -> list[int]:
    if not d:
        return []
    out = [0] * (max(d) + 1)
    for k, v in d.items():
        out[k] = v
    return up_trim(out)


def _point_data(inst, i: int):
    """Restriction to the coordinate point p_i and the Jacobian there (values in F_p)."""
    p = inst.ring.p
    nv = inst.ring.nvars
    vals, jac = [], []
    for f in inst.equations:
        v = 0
        row = [0] * nv
        for e, c in f.terms.items():
            others = [x for x in range(nv) if e[x] and x != i]
            if not others:
                v = (v + c) % p
            elif len(others) == 1 and e[others[0]] == 1:
                row[others[0]] = (row[others[0]] + c) % p
        vals.append(v)
        jac.append(row)
    return vals, jac


@dataclass
class PointFamily:
    """Geometric points of X on one stratum sharing a transverse type."""

    stratum: Stratum
    count: int
    rank: int
    sing: SingType | None
    kernel_chars: tuple[int, ...] = ()


def _block_type(weights, degrees, rho, rank_of_block) -> tuple[SingType | None, tuple[int, ...]]:
    chars = []
    for chi in range(rho):
        cols = [k for k, w in enumerate(weights) if w % rho == chi]
        rows = [l for l, d in enumerate(degrees) if d % rho == chi]
        rk = rank_of_block(rows, cols) if rows and cols else 0
        chars += [chi] * (len(cols) - rk)
    if rho == 1:
        return None, tuple(chars)
    if 0 not in chars:
        raise NotIsolated("no orbit direction in the tangent cone")
    chars.remove(0)
    if len(chars) != 2:
        return None, tuple(chars)
    a, b = chars
    if a % rho == 0 or b % rho == 0:
        raise NotIsolated(f"stabilizer fixes a tangent direction at a 1/{rho} point")
    return normalize_sing(rho, a, b), tuple(chars)


def stratum_points(inst, support: Sequence[int], types: bool = True) -> tuple[bool, list[PointFamily]]:
    """Exact point analysis on a stratum with one or two coordinates.

    Returns ``(contained, families)`` where ``contained`` says X contains the
    whole stratum (only possible for lines).  Each family records how many
    geometric points have a given Jacobian rank and transverse type.
    """
    ring = inst.ring
    p = ring.p
    weights = ring.weights
    degrees = [f.degree() for f in inst.equations]
    c = inst.codim
    st = _stratum(weights, support)
    rho = st.order

    if len(support) == 1:
        (i,) = support
        vals, jac = _point_data(inst, i)
        if any(vals):
            return False, []
        rk = rank_mod_p(jac, p)
        sing = None
        chars: tuple[int, ...] = ()
        if types and rk == c:
            sing, chars = _block_type(weights, degrees, rho,
                                      lambda rows, cols: rank_mod_p([[jac[l][k] for k in cols] for l in rows], p))
        return False, [PointFamily(st, 1, rk, sing, chars)]

    i, j = support
    data = _line_data(inst, i, j)
    b = weights[j] // gcd(weights[i], weights[j])
    nonzero = [up_strip_t(g) for g in data.restricted if g]
    contained = not nonzero
    if contained:
        poly = _bad_locus_on_line(data.jac, c, p)
        if poly is None:  # rank deficient along the whole line
            return True, [PointFamily(st, -1, -1, None)]
        facs = _factor(poly, p) if len(poly) > 1 else []
        fams = []
        for h in facs:
            rk = _rank_ext(data.jac, h, p)
            if rk < c:
                fams.append(PointFamily(st, max((len(h) - 1) // b, 1), rk, None))
        return True, fams
    G = nonzero[0]
    for g in nonzero[1:]:
        G = up_gcd(G, g, p)
    G = up_squarefree(up_strip_t(up_monic(G, p)), p)
    if len(G) <= 1:
        return False, []
    groups: dict = {}
    for h in _factor(G, p):
        rk = _rank_ext(data.jac, h, p)
        sing, chars = None, ()
        if types and rk == c:
            sing, chars = _block_type(
                weights, degrees, rho,
                lambda rows, cols: _rank_ext([[data.jac[l][k] for k in cols] for l in rows], h, p))
        key = (rk, sing, chars)
        groups[key] = groups.get(key, 0) + len(h) - 1
    fams = []
    for (rk, sing, chars), deg in sorted(groups.items(), key=lambda kv: repr(kv[0])):
        fams.append(PointFamily(st, deg // b, rk, sing, chars))
    return False, fams


def _bad_locus_on_line(jac, c, p, attempts: int = 6):
    """Polynomial whose nonzero roots contain every point of rank < c on the line.

    Returns ``None`` when the rank is below c identically.  The gcd of a few
    nonvanishing c x c minors is taken; the caller checks each factor exactly.
    """
    nrows, ncols = len(jac), len(jac[0])
    rng = np.random.default_rng(12345)
    H = None
    for _ in range(attempts):
        t0 = int(rng.integers(1, p))
        vals = [[_eval_up(x, t0, p) for x in row] for row in jac]
        rows, cols = _pivots(vals, p, rng)
        if len(rows) < c:
            if H is None:
                return None
            continue
        minor = _det_up([[jac[r][k] for k in cols[:c]] for r in rows[:c]], p)
        minor = up_strip_t(minor)
        H = minor if H is None else up_gcd(H, minor, p)
        if len(H) <= 1:
            return [1]
    return up_squarefree(up_monic(H, p), p) if H else [1]


def _pivots(vals, p, rng):
    """Row and column indices of a maximal nonsingular submatrix, in random order."""
    nrows, ncols = len(vals), len(vals[0])
    order_r = list(rng.permutation(nrows))
    order_c = list(rng.permutation(ncols))
    m = [[vals[r][k] % p for k in order_c] for r in order_r]
    rows_used, cols_used = [], []
    work = [row[:] for row in m]
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if work[i][col]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        order_r[rank], order_r[piv] = order_r[piv], order_r[rank]
        inv = pow(work[rank][col], -1, p)
        for i in range(rank + 1, nrows):
            if work[i][col]:
                f = work[i][col] * inv % p
                work[i] = [(a - f * b) % p for a, b in zip(work[i], work[rank])]
        rows_used.append(order_r[rank])
        cols_used.append(order_c[col])
        rank += 1
    return rows_used, cols_used


def _det_up(m, p):
    n = len(m)
    if n == 1:
        return m[0][0]
    out: list[int] = []
    for k in range(n):
        if not m[0][k]:
            continue
        sub = [row[:k] + row[k + 1:] for row in m[1:]]
        term = up_mul(m[0][k], _det_up(sub, p), p)
        out = up_sub(out, term, p) if k % 2 else up_sub(out, up_sub([], term, p), p)
    return out


# ---------------------------------------------------------------------------
# numeric sampling on larger strata
# ---------------------------------------------------------------------------

class _NumSystem:
    """Equations and Jacobian entries restricted to a torus, evaluated together.

    All distinct monomials are evaluated once per batch; every polynomial is
    a row of a coefficient matrix over those monomials.
    """

    def __init__(self, inst, support: Sequence[int]):
        nv = inst.ring.nvars
        sup = set(support)
        self.support = list(support)
        self.neq = len(inst.equations)
        self.nv = nv
        polys = []  # eqs first, then jac[l][k] in row-major order
        jpolys = []
        for f in inst.equations:
            lifted = f.lifted()
            polys.append({e: c for e, c in lifted.items() if all(e[v] == 0 or v in sup for v in range(nv))})
            for k in range(nv):
                d: dict = {}
                for e, c in lifted.items():
                    if e[k] == 0 or (k not in sup and e[k] != 1):
                        continue
                    if all(e[v] == 0 or v in sup or v == k for v in range(nv)):
                        key = e[:k] + (e[k] - 1,) + e[k + 1:]
                        d[key] = d.get(key, 0) + c * e[k]
                jpolys.append(d)
        monos = {}
        for poly in polys + jpolys:
            for e in poly:
                monos.setdefault(e, len(monos))
        self.live = [l for l, q in enumerate(polys) if q]
        self.exps = np.array([[e[i] for i in support] for e in monos], float).reshape(len(monos), len(support))
        coef = np.zeros((len(polys) + len(jpolys), len(monos)))
        for row, poly in enumerate(polys + jpolys):
            for e, c in poly.items():
                coef[row, monos[e]] = c
        self.coef = coef
        self.abscoef = np.abs(coef)

    def evaluate(self, z):
        """Values and absolute term sums of every polynomial at the batch ``z``."""
        if not len(self.exps):
            zeros = np.zeros((z.shape[0], self.coef.shape[0]))
            return zeros.astype(complex), zeros
        mono = np.exp(np.log(z) @ self.exps.T)
        return mono @ self.coef.T, np.abs(mono) @ self.abscoef.T

    def split(self, vals):
        eq = vals[:, : self.neq]
        jac = vals[:, self.neq:].reshape(vals.shape[0], self.neq, self.nv)
        return eq, jac


def _sample_points(inst, support, trials: int, seed: int, iters: int = 40):
    """Approximate points of X in the torus T_I, found by Gauss-Newton from random starts."""
    weights = np.array([inst.ring.weights[i] for i in support], float)
    system = _NumSystem(inst, support)
    live = system.live
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(trials, len(support))) + 1j * rng.normal(size=(trials, len(support)))
    if not live:
        return _normalize(z, weights), system
    for _ in range(iters):
        z = _normalize(z, weights)
        vals, scale = system.evaluate(z)
        F, J = system.split(vals)
        S, _ = system.split(scale)
        s = S[:, live] + 1e-300
        F = F[:, live] / s
        J = J[:, live][:, :, support] / s[:, :, None]
        step = _least_squares_step(J, F)
        z = z - step
        z[np.abs(z) < 1e-12] = 1e-12
        if np.quantile(np.max(np.abs(step), axis=1), 0.9) < 1e-12:
            break
    z = _normalize(z, weights)
    vals, scale = system.evaluate(z)
    F, _ = system.split(vals)
    S, _ = system.split(scale)
    resid = np.max(np.abs(F[:, live]) / (S[:, live] + 1e-300), axis=1)
    small = np.min(np.abs(z) ** (1.0 / weights), axis=1)
    good = (resid < 1e-9) & (small > 1e-3)
    return z[good], system


def _least_squares_step(J, F):
    """Batched damped Gauss-Newton step: minimum-norm or least-squares as the shape requires."""
    Jh = np.conj(np.swapaxes(J, 1, 2))
    m, n = J.shape[1], J.shape[2]
    if m <= n:
        A = J @ Jh
        A += (1e-14 * np.trace(A, axis1=1, axis2=2).real[:, None, None] + 1e-300) * np.eye(m)
        return np.einsum("bij,bj->bi", Jh, np.linalg.solve(A, F[:, :, None])[:, :, 0])
    A = Jh @ J
    A += (1e-14 * np.trace(A, axis1=1, axis2=2).real[:, None, None] + 1e-300) * np.eye(n)
    return np.linalg.solve(A, np.einsum("bij,bj->bi", Jh, F)[:, :, None])[:, :, 0]


def _normalize(z, weights):
    lam = np.max(np.abs(z) ** (1.0 / weights), axis=1, keepdims=True)
    return z / lam ** weights


def _numeric_ranks(z, system, cols=None) -> list[int]:
    if not len(z):
        return []
    vals, scale = system.evaluate(z)
    _, J = system.split(vals)
    _, S = system.split(scale)
    cols = list(range(system.nv)) if cols is None else list(cols)
    J = J[:, :, cols]
    rowscale = S[:, :, cols].sum(axis=2) + 1e-300
    J = J / rowscale[:, :, None]
    s = np.linalg.svd(J, compute_uv=False)
    return [int(np.sum(row > 1e-7 * max(row[0], 1e-300))) for row in s]


def _sampled_check(inst, support, trials, seed) -> StratumCheck:
    st = _stratum(inst.ring.weights, support)
    z, system = _sample_points(inst, support, trials, seed)
    ranks = _numeric_ranks(z, system)
    bad = sum(1 for r in ranks if r < inst.codim)
    ok = bad == 0
    detail = f"{len(ranks)} sampled points, {bad} rank-deficient"
    return StratumCheck(st, SAMPLED, ok, len(ranks), detail)


# ---------------------------------------------------------------------------
# member-level driver
# ---------------------------------------------------------------------------

def _restricted_is_monomial(inst, support) -> bool:
    sup = set(support)
    nv = inst.ring.nvars
    for f in inst.equations:
        terms = [e for e in f.terms if all(e[v] == 0 or v in sup for v in range(nv))]
        if len(terms) == 1:
            return True
    return False


def generic_rank_check(inst) -> int:
    """Jacobian rank at a random ambient point, confirmed exactly when it looks deficient."""
    ring = inst.ring
    p = ring.p
    rng = coefficient_rng(inst.seed, "generic-rank", inst.model_id)
    pt = [int(x) for x in rng.integers(1, p, size=ring.nvars)]
    jac = [[f.diff(nm).evaluate(pt) for nm in ring.names] for f in inst.equations]
    rk = rank_mod_p(jac, p)
    if rk >= inst.codim:
        return rk
    return fraction_field_rank([[f.diff(nm) for nm in ring.names] for f in inst.equations])


def qs_member(inst, trials: int = 200, seed: int = 0, exact_only: bool = False) -> QSReport:
    """Stratum-by-stratum quasismoothness of an explicit member.

    ``trials`` is the number of numeric starting points per sampled stratum.
    With ``exact_only`` the sampled strata are skipped (reported with no points).
    """
    if generic_rank_check(inst) < inst.codim:
        raise RankDeficientEverywhere(f"{inst.model_id}: Jacobian has generic rank < {inst.codim}")
    weights = inst.ring.weights
    nv = len(weights)
    c = inst.codim
    checks: list[StratumCheck] = []
    for k in range(1, nv + 1):
        for sub in itertools.combinations(range(nv), k):
            st = _stratum(weights, sub)
            if k <= 2:
                contained, fams = stratum_points(inst, sub, types=False)
                bad = [f for f in fams if f.rank < c]
                npts = None if contained else sum(f.count for f in fams)
                detail = "stratum contained in X" if contained else ""
                checks.append(StratumCheck(st, EXACT, not bad, npts, detail))
            elif _restricted_is_monomial(inst, sub):
                checks.append(StratumCheck(st, EXACT, True, 0, "a restricted equation is a monomial"))
            elif exact_only:
                checks.append(StratumCheck(st, SAMPLED, True, 0, "skipped"))
            else:
                checks.append(_sampled_check(inst, sub, trials, seed + 7919 * len(checks)))
            if not checks[-1].ok:
                return _aggregate(checks)
    return _aggregate(checks)


def basket_of(inst) -> list[SingType]:
    """Singularities of X at stabilized points, from exact analysis of strata with |I| <= 2."""
    weights = inst.ring.weights
    nv = len(weights)
    out: list[SingType] = []
    for k in (1, 2):
        for sub in itertools.combinations(range(nv), k):
            rho = gcd_all(weights[i] for i in sub)
            if rho == 1 and k == 2:
                contained, fams = stratum_points(inst, sub, types=False)
            else:
                contained, fams = stratum_points(inst, sub, types=True)
            st = _stratum(weights, sub)
            if contained and rho > 1:
                raise ContainsStratum(st.label(inst.ring.names))
            for fam in fams:
                if fam.rank < inst.codim:
                    raise ResidualSingularity(st.label(inst.ring.names))
                if fam.sing is not None:
                    out.extend([fam.sing] * fam.count)
    for k in range(3, nv + 1):
        for sub in itertools.combinations(range(nv), k):
            if gcd_all(weights[i] for i in sub) > 1 and not _restricted_is_monomial(inst, sub):
                raise NotImplementedError("basket points on a stratum with three or more coordinates")
    return sorted(out)


def stratum_intersection_dims(inst, trials: int = 32, seed: int = 0):
    """Projective dimension of X meeting each positive-dimensional singular stratum (-1 if empty)."""
    weights = inst.ring.weights
    nv = len(weights)
    out = []
    for k in range(2, nv + 1):
        for sub in itertools.combinations(range(nv), k):
            st = _stratum(weights, sub)
            if st.order == 1:
                continue
            if k == 2:
                contained, fams = stratum_points(inst, sub, types=False)
                out.append((st, 1 if contained else (0 if fams else -1)))
                continue
            if _restricted_is_monomial(inst, sub):
                out.append((st, -1))
                continue
            z, system = _sample_points(inst, sub, trials, seed)
            if not len(z):
                out.append((st, -1))
                continue
            ranks = _numeric_ranks(z, system, cols=sub)
            out.append((st, max(len(sub) - r for r in ranks) - 1))
    return out


def qs_general_vs_member_crosscheck(ws: WeightedSpace | Sequence[int], degrees: Sequence[int],
                                    trials: int = 5, seed: int = 0, samples: int = 64) -> dict:
    """Run the combinatorial criterion (hypersurfaces) and member checks on random members.

    For complete intersections the members are compared among themselves.
    """
    from .exactmath import Ring
    from .formats import CI, Hypersurface
    from .members import make_instance

    weights = ws.weights if isinstance(ws, WeightedSpace) else tuple(ws)
    names = tuple(f"x{i}" for i in range(len(weights)))
    ring = Ring(names, weights)
    fmt = Hypersurface(degrees[0]) if len(degrees) == 1 else CI(*degrees)
    general = qs_hypersurface_general(weights, degrees[0]) if len(degrees) == 1 else None
    members = []
    for t in range(trials):
        inst = make_instance("crosscheck", None, 0, ring, fmt, seed + t)
        members.append(qs_member(inst, trials=samples, seed=seed + t))
    verdicts = {m.passed for m in members}
    if general is not None:
        verdicts.add(general.passed)
    fail_strata = {m.failing.support for m in members if m.failing is not None}
    return {"general": general, "members": members, "agree": len(verdicts) == 1,
            "failing_strata": sorted(fail_strata)}
