"""Type-I projections: format rules, explicit elimination and the chain search."""
from __future__ import annotations

import pytest

from dpcascade.cascade import (MATCHED_TERMINAL, NO_CENTER, NOT_QS, cascade_search, deform_generic,
                               find_projection_centers, monomials_through_center, project_equations,
                               project_format)
from dpcascade.catalog import Catalog
from dpcascade.errors import CenterNotLinear, ImplicitFunctionFails, NotApplicable
from dpcascade.exactmath import Ring
from dpcascade.formats import Hypersurface, Pfaffian5
from dpcascade.members import ModelInstance, make_instance
from dpcascade.quasismooth import stratum_points

SIX_CHAINS = {("P11", "PF11", "CI11"), ("PF12", "CI12", "HS12"), ("PF13", "CI13"),
              ("PF21", "CI21"), ("PF22", "CI22"), ("P12", "PF14")}


@pytest.mark.parametrize("mid,centers", [
    ("PF14", []), ("HS12", []), ("CI13", []), ("RS8", []), ("CI12", ["z0"]), ("P12", ["x0"]),
    ("PF12", ["y0", "z0"]), ("RS7", ["x1", "x2"]),
])
def test_projection_centers(catalog, mid, centers):
    assert find_projection_centers(catalog[mid]) == centers


def test_p2xp2_rule(catalog):
    step = project_format(catalog["P11"], "x0")
    assert step.target_fmt.kind == "pfaffian"
    assert sorted(step.divisor) == sorted(["b", "G_r", "d", "e"])
    assert [(pos, str(d)) for pos, d in step.zeros] == [((1, 2), "r"), ((3, 4), "r")]
    assert step.tom == 0
    assert sorted(str(w) for w in step.target_weights) == ["1", "1", "1", "2r-1", "r", "r"]


def test_pfaffian_rule(catalog):
    step = project_format(catalog["PF12"], "y0")
    assert step.target_fmt.kind == "ci"
    for r in (3, 5, 7):
        assert sorted(step.target_fmt.equation_degrees(r)) == [2 * r, 2 * r + 1]
    assert sorted(step.divisor) == sorted(["c", "G_{r+1}", "d"])


def test_complete_intersection_rule(catalog):
    step = project_format(catalog["CI12"], "z0")
    assert step.target_fmt.kind == "hypersurface"
    assert all(step.target_fmt.equation_degrees(r) == [4 * r] for r in (3, 5, 7))
    assert [str(d) for d in step.divisor_degrees] == ["2r-1", "2r"]


def test_hypersurfaces_do_not_project(catalog):
    inst = catalog["RS8"].instantiate(None)
    with pytest.raises(NotApplicable):
        project_equations(inst, "x")


def test_center_must_be_a_pure_entry(catalog):
    inst = catalog["PF12"].instantiate(1)  # generic member: y0 also occurs inside forms
    with pytest.raises(CenterNotLinear):
        project_equations(inst, "y0")


def test_implicit_function_failure_is_detected(catalog):
    # drop every term through the center: the Jacobian vanishes at p_z0
    inst = catalog["CI12"].instantiate(1, center="z0")
    eqs = [f.coefficient_in("z0", 0) for f in inst.equations]
    bad = ModelInstance("noz", inst.n, inst.r, inst.ring, inst.fmt, eqs, None, 0, False, {})
    with pytest.raises(ImplicitFunctionFails):
        project_equations(bad, "z0")


def _accepted(edges):
    for mid, rows in sorted(edges.items()):
        for step, _, ok in rows:
            if ok:
                yield mid, step


def test_special_members_have_the_rule_degrees(catalog, main_cascade):
    # project_equations raises if the eliminated degrees differ from the format rule
    _, edges = main_cascade
    for mid, step in _accepted(edges):
        ms = catalog[mid]
        for n in ms.law.ns(n_max=4):
            for seed in (0, 1, 2):
                sp = project_equations(ms.instantiate(n, seed, center=step.center), step.center, step)
                assert sp.meta["contains_divisor"], (mid, step.center, n, seed)
                assert sp.special and step.center not in sp.names


def test_pfaffian_projection_gives_tom(catalog):
    ms = catalog["P11"]
    step = project_format(ms, "x0")
    sp = project_equations(ms.instantiate(2, 0, center="x0"), "x0", step)
    assert sp.meta["tom"] == 0
    assert sp.matrix[(1, 2)].is_zero() and sp.matrix[(3, 4)].is_zero()


def test_generic_deformation_fills_zero_entries(catalog):
    step = project_format(catalog["P11"], "x0")
    gen = deform_generic(step, 2, catalog["P11"].r(2), seed=0)
    assert isinstance(gen.fmt, Pfaffian5) and not gen.fmt.zeros
    assert not gen.matrix[(1, 2)].is_zero()


def test_monomials_through_center():
    assert monomials_through_center((1, 1, 2), 1) == 1
    assert monomials_through_center((1, 1, 2), 2) == 2
    assert monomials_through_center((1, 1, 2), 3) == 4


def test_six_chains_and_terminals(main_cascade):
    chains, edges = main_cascade
    assert {c.ids for c in chains} == SIX_CHAINS
    term = {c.ids: c.terminal for c in chains}
    assert term[("P12", "PF14")] == NO_CENTER
    assert term[("PF12", "CI12", "HS12")] == NO_CENTER
    assert term[("P11", "PF11", "CI11")] == NOT_QS
    assert set(term.values()) <= {NO_CENTER, NOT_QS, MATCHED_TERMINAL}


@pytest.mark.parametrize("mid,center", [("PF23", "y0"), ("P13", "x0"), ("CI21", "a"), ("CI11", "a")])
def test_rejected_steps(main_cascade, mid, center):
    _, edges = main_cascade
    rows = [(s, vs, ok) for s, vs, ok in edges[mid] if s.center == center]
    assert rows and not rows[0][2]


def test_search_ignores_catalog_order_and_seed(catalog):
    shuffled = Catalog(list(reversed(list(catalog))))
    chains, _ = cascade_search(shuffled, n_max=2, seed=1)
    assert {c.ids for c in chains} == SIX_CHAINS


def test_p12_projection_and_its_divisor(catalog):
    step = project_format(catalog["P12"], "x0")
    assert [(pos, str(d)) for pos, d in step.zeros] == [((1, 2), "r+1"), ((3, 4), "2r")]
    assert sorted(step.divisor) == sorted(["d", "e", "f", "F_{2r}"])
    # D = V(F_{2r}) in P(2,r,r) meets the line of 1/r points in two points
    for r in (3, 5):
        ring = Ring(("a", "b", "c"), (2, r, r), 10007)
        curve = make_instance("D", None, r, ring, Hypersurface(2 * r), 0)
        _, fams = stratum_points(curve, (1, 2), types=False)
        assert sum(f.count for f in fams) == 2
