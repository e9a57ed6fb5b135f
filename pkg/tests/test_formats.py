"""Format degrees and Gorenstein Hilbert numerators."""
from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dpcascade.errors import IncompatibleMatrix, NonIntegralDegree
from dpcascade.exactmath import LinExpr, SeriesPoly, divide_by_one_minus_t
from dpcascade.formats import (CI, Hypersurface, P2xP2, Pfaffian5, _segre_counts,
                               hilbert_numerator, minor_degrees, pfaffian_data)


def _brute_segre(u, v, bound):
    out = [0] * (bound + 1)
    top = bound  # each factor has degree >= 1 when u_i + v_j >= 1
    for m in range(top + 1):
        for a in itertools.product(range(m + 1), repeat=3):
            if sum(a) != m:
                continue
            for b in itertools.product(range(m + 1), repeat=3):
                if sum(b) != m:
                    continue
                d = sum(x * y for x, y in zip(a, u)) + sum(x * y for x, y in zip(b, v))
                if d <= bound:
                    out[d] += 1
    return out


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=3, max_size=3),
       st.lists(st.integers(1, 3), min_size=3, max_size=3))
def test_segre_counts_match_enumeration(u, v):
    assert _segre_counts(u, v, 7) == _brute_segre(u, v, 7)


def test_segre_cone_numerator():
    # P2 x P2 in P8: (1 + 4t + t^2)(1 - t)^4
    hd = hilbert_numerator(P2xP2((0, 0, 0), (1, 1, 1)), 0, [1] * 9)
    assert hd.numerator == SeriesPoly([1, 0, -9, 16, -9, 0, 1])
    assert hd.k == 3


def test_grassmannian_numerator():
    fs = Pfaffian5({pos: 1 for pos in itertools.combinations(range(5), 2)})
    hd = hilbert_numerator(fs, 0, [1] * 10)
    assert hd.numerator == SeriesPoly([1, 0, -5, 5, 0, -1])
    assert hd.k == 5


def test_complete_intersection_numerator():
    hd = hilbert_numerator(CI(2, 3), 0, [1, 1, 1, 1, 1])
    assert hd.numerator == SeriesPoly([1, 0, -1, -1, 0, 1])
    assert hd.k == 0
    assert hilbert_numerator(Hypersurface(6), 0, [1, 1, 2, 3]).k == 1


def _random_pfaffian(b):
    return Pfaffian5({(i, j): b[i] + b[j] for i, j in itertools.combinations(range(5), 2)})


@given(st.lists(st.integers(1, 6), min_size=5, max_size=5))
def test_pfaffian_degrees_from_half_weights(b2):
    # even sums keep every entry and Pfaffian degree integral
    b = [2 * x for x in b2]
    data = pfaffian_data({(i, j): b[i] + b[j] for i, j in itertools.combinations(range(5), 2)})
    assert [x.at(0) for x in data.b] == b
    assert [x.at(0) for x in data.degrees] == [sum(b) - x for x in b]


@settings(max_examples=40, deadline=None)
@given(st.one_of(
    st.lists(st.integers(1, 6), min_size=5, max_size=5).map(
        lambda b: ("pf", [2 * x for x in b])),
    st.tuples(st.lists(st.integers(0, 3), min_size=3, max_size=3),
              st.lists(st.integers(1, 3), min_size=3, max_size=3)).map(lambda uv: ("pp", uv)),
    st.lists(st.integers(1, 9), min_size=1, max_size=2).map(lambda d: ("ci", d)),
))
def test_gorenstein_symmetry(case):
    kind, data = case
    if kind == "pf":
        fs = _random_pfaffian(data)
    elif kind == "pp":
        fs = P2xP2(*data)
    else:
        fs = Hypersurface(data[0]) if len(data) == 1 else CI(*data)
    hd = hilbert_numerator(fs, 0, [1])
    n, c = hd.numerator, hd.codim
    assert n.reciprocal_poly(hd.socle) == n * ((-1) ** c)
    assert divide_by_one_minus_t(n, c)(1) != 0


def test_incompatible_matrix():
    ents = {pos: 2 for pos in itertools.combinations(range(5), 2)}
    ents[(0, 1)] = 3
    with pytest.raises(IncompatibleMatrix):
        pfaffian_data(ents)


def test_nonintegral_pfaffian_degree():
    # half-weights (r/2, r/2, r/2, 1/2, 1/2): entries and degrees are integral only for odd r
    half_r, half = LinExpr.of("1/2", 0), LinExpr.of(0, "1/2")
    b = [half_r, half_r, half_r, half, half]
    ents = {(i, j): b[i] + b[j] for i, j in itertools.combinations(range(5), 2)}
    with pytest.raises(NonIntegralDegree):
        pfaffian_data(ents)
    with pytest.raises(NonIntegralDegree):
        pfaffian_data(ents, r_values=[2])
    assert [d.at(3) for d in pfaffian_data(ents, r_values=[3]).degrees] == [4, 4, 4, 5, 5]


def test_minor_degrees():
    assert [d.at(0) for d in minor_degrees((0, 1, 2), (1, 1, 1))] == [3, 3, 3, 4, 4, 4, 5, 5, 5]


def test_parametrized_degrees_evaluate():
    fs = CI("2r", "2r+1")
    assert fs.equation_degrees(3) == [6, 7]
    assert fs.socle(5) == 21
