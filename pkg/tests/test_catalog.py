"""Catalog contents, JSON round trip and input validation."""
from __future__ import annotations

import copy
import json
from collections import Counter
from fractions import Fraction

import pytest

from dpcascade.catalog import (Catalog, builtin_catalog, instantiate, load_catalog, loads_catalog,
                               match_target, model_from_json)
from dpcascade.errors import CatalogError, OutOfRange


def _doc():
    return json.loads(builtin_catalog().dumps())


def test_builtin_catalog_shape(catalog):
    assert len(catalog) == 19
    assert Counter(m.table for m in catalog) == {"1": 6, "2": 7, "3": 3, "RS": 3}
    assert {m.id for m in catalog.select(group="rs")} == {"RS6", "RS7", "RS8"}


def test_json_round_trip(catalog):
    text = catalog.dumps()
    again = loads_catalog(text)
    assert again.dumps() == text
    assert [m.id for m in again] == catalog.ids()
    for a, b in zip(catalog, again):
        assert a == b


def test_load_from_file(tmp_path, catalog):
    path = tmp_path / "cat.json"
    path.write_text(catalog.dumps())
    assert load_catalog(path).ids() == catalog.ids()
    with pytest.raises(CatalogError):
        load_catalog(tmp_path / "missing.json")


def test_malformed_json_reports_a_position():
    with pytest.raises(CatalogError, match=r"<string>:1:"):
        loads_catalog("{not json")
    with pytest.raises(CatalogError, match="models"):
        loads_catalog("[]")


def test_weight_below_one_is_rejected():
    doc = _doc()
    m = next(x for x in doc["models"] if x["id"] == "CI11")
    m["weights"][2] = {"slope2": 2, "offset2": -6}  # r - 3 is negative at n = 1
    with pytest.raises(CatalogError, match="weight"):
        loads_catalog(json.dumps(doc))


def test_missing_field_and_bad_expression():
    doc = _doc()
    m = copy.deepcopy(doc["models"][0])
    del m["h0"]
    with pytest.raises(CatalogError, match="h0"):
        model_from_json(m)
    m = copy.deepcopy(doc["models"][0])
    m["weights"][0] = "r+1"
    with pytest.raises(CatalogError, match="slope2"):
        model_from_json(m)


def test_duplicate_ids_are_rejected(catalog):
    with pytest.raises(CatalogError, match="duplicate"):
        Catalog([catalog["CI11"], catalog["CI11"]])
    doc = _doc()
    doc["models"].append(doc["models"][0])
    with pytest.raises(CatalogError, match="duplicate"):
        loads_catalog(json.dumps(doc))


def test_parameter_law(catalog):
    ms = catalog["CI12"]
    assert [ms.r(n) for n in (1, 2, 3)] == [3, 5, 7]
    assert ms.law.n_of(7) == 3 and ms.law.n_of(4) is None
    with pytest.raises(OutOfRange):
        ms.r(0)
    with pytest.raises(OutOfRange):
        catalog["PF21"].r(1)


def test_declared_values(catalog):
    ci11 = catalog["CI11"]
    # (-K)^2 = 4/(2r-1) and one 1/(2r-1) point
    assert ci11.declared_degK2(1) == Fraction(4, 3)
    assert [str(s) for s in ci11.declared_basket(2)] == ["1/5(1,1)"]


def test_fixed_surface_instantiates(catalog):
    inst = instantiate("RS8", None, catalog=catalog)
    assert inst.weights == (1, 2, 3, 5)
    assert [f.degree() for f in inst.equations] == [10]


def test_match_target(catalog):
    hit = match_target(catalog, "ci", (1, 1, 3, 3, 5), (6, 6), 3)
    assert hit is not None and hit[0].id == "CI11" and hit[1] == 2
    assert match_target(catalog, "ci", (1, 1, 3, 3, 5), (6, 7), 3) is None
    assert match_target(catalog, "hypersurface", (1, 2, 3, 5), (10,), 0)[0].id == "RS8"


def test_unknown_id(catalog):
    with pytest.raises(KeyError):
        catalog["nope"]
    with pytest.raises(KeyError):
        catalog.select(["nope"])
