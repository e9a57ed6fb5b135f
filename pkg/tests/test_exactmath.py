"""Exact arithmetic checked against sympy and brute force."""
from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from dpcascade.errors import NonIntegral, NotDivisible, WeightMismatch
from dpcascade.exactmath import (LinExpr, MultiPoly, Ring, SeriesPoly, coefficient_rng,
                                 complete_homogeneous, divide_by_one_minus_t, exact_divide,
                                 fraction_field_rank, inverse_one_minus_t_pow, one_minus_t_pow,
                                 poly_substitute, random_form, rank_mod_p, up_gcd, up_mul,
                                 up_squarefree)

P = 101
small = st.integers(-6, 6)
coeffs = st.lists(small, min_size=1, max_size=8)
fp_polys = st.lists(st.integers(0, P - 1), min_size=1, max_size=7)


# -- LinExpr

@pytest.mark.parametrize("text,slope,offset", [
    ("2r-1", 2, -1), ("r", 1, 0), ("3", 0, 3), ("-r+4", -1, 4), ("2*r", 2, 0),
])
def test_linexpr_parse(text, slope, offset):
    e = LinExpr.parse(text)
    assert (e.slope, e.offset) == (slope, offset)


def test_linexpr_half_integral_value_raises():
    e = LinExpr.of(Fraction(1, 2), 0)
    assert e.at(4) == 2
    with pytest.raises(NonIntegral):
        e.at(3)


def test_linexpr_rejects_garbage():
    for bad in ("", "2x", "r+", "r/2"):
        with pytest.raises(ValueError):
            LinExpr.parse(bad)


@given(small, small, small, small, st.integers(1, 20))
def test_linexpr_arithmetic_is_pointwise(a, b, c, d, r):
    x, y = LinExpr.of(a, b), LinExpr.of(c, d)
    assert (x + y).at(r) == x.at(r) + y.at(r)
    assert (x - y).at(r) == x.at(r) - y.at(r)
    assert (x * 3).at(r) == 3 * x.at(r)


# -- series

@given(coeffs, coeffs)
def test_series_product_matches_sympy(a, b):
    t = sympy.Symbol("t")
    pa = sum(c * t ** k for k, c in enumerate(a))
    pb = sum(c * t ** k for k, c in enumerate(b))
    want = sympy.Poly(sympy.expand(pa * pb), t).all_coeffs()[::-1] if sympy.expand(pa * pb) != 0 else []
    got = SeriesPoly(a) * SeriesPoly(b)
    assert [got[k] for k in range(len(want))] == [int(x) for x in want]


@given(coeffs, st.integers(0, 3))
def test_divide_by_one_minus_t_roundtrip(a, c):
    p = SeriesPoly(a)
    for _ in range(c):
        p = p * one_minus_t_pow(1)
    q = divide_by_one_minus_t(p, c)
    assert q == SeriesPoly(a)


def test_divide_by_one_minus_t_detects_nonvanishing():
    with pytest.raises(NotDivisible):
        divide_by_one_minus_t(SeriesPoly([1, 1]), 1)


def test_inverse_series():
    prod = one_minus_t_pow(3).truncate(20) * inverse_one_minus_t_pow(3, 20)
    assert prod == SeriesPoly([1], 20)


def test_truncated_coefficient_access_is_guarded():
    s = SeriesPoly([1, 2, 3], 3)
    with pytest.raises(IndexError):
        s[3]


@settings(max_examples=30)
@given(st.integers(0, 4), st.lists(st.integers(1, 4), min_size=1, max_size=4))
def test_complete_homogeneous_counts_monomials(d, exps):
    ring = Ring(tuple(f"x{i}" for i in range(len(exps))), tuple([1] * len(exps)), None)
    h = complete_homogeneous(d, exps)
    assert h(1) == len(ring.monomials(d))
    for k in range(h.degree + 1):
        count = sum(1 for e in ring.monomials(d) if sum(a * w for a, w in zip(e, exps)) == k)
        assert h[k] == count


# -- multivariate polynomials

def _ring(p=None):
    return Ring(("x", "y", "z"), (1, 2, 3), p)


def test_monomials_have_the_right_degree():
    ring = _ring()
    monos = ring.monomials(6)
    assert len(monos) == 7
    assert all(a + 2 * b + 3 * c == 6 for a, b, c in monos)


def test_exact_divide_and_remainder():
    R = _ring()
    x, y, z = R.var("x"), R.var("y"), R.var("z")
    f = (x * y + z) * (x ** 3 - z)
    assert exact_divide(f, x * y + z) == x ** 3 - z
    with pytest.raises(NotDivisible):
        exact_divide(f + x, x * y + z)


def test_substitution_checks_weights():
    R = _ring()
    x, y, z = R.var("x"), R.var("y"), R.var("z")
    f = z * y + x ** 5
    assert poly_substitute(f, "z", x * y) == x * y * y + x ** 5
    with pytest.raises(WeightMismatch):
        poly_substitute(f, "z", y)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=2, max_size=3),
       st.integers(0, 2))
def test_fraction_field_rank_matches_sympy(rows, scale):
    # entries a*x + b*y built from integer pairs; rank is compared with sympy
    R = Ring(("x", "y"), (1, 1), None)
    x, y = R.var("x"), R.var("y")
    m = [[x * a + y * (b + scale) for a, b in zip(row, row[1:] + row[:1])] for row in rows]
    X, Y = sympy.symbols("x y")
    sm = sympy.Matrix([[a * X + (b + scale) * Y for a, b in zip(row, row[1:] + row[:1])] for row in rows])
    assert fraction_field_rank(m) == sm.rank(simplify=True)


@given(st.lists(st.lists(st.integers(0, P - 1), min_size=3, max_size=3), min_size=1, max_size=4))
def test_rank_mod_p_matches_sympy(rows):
    from sympy.polys.matrices import DomainMatrix
    from sympy import GF
    dm = DomainMatrix([[GF(P)(x) for x in r] for r in rows], (len(rows), 3), GF(P))
    assert rank_mod_p(rows, P) == dm.rank()


# -- univariate over F_p

_T = sympy.Symbol("t")


def _sym(a):
    return sympy.Poly(list(reversed(a)), _T, modulus=P)


@given(fp_polys.filter(any), fp_polys)
def test_up_gcd_matches_sympy(a, b):
    want = sympy.gcd(_sym(a), _sym(b)).monic()
    got = up_gcd(a, b, P)
    # sympy prints symmetric residues; compare modulo P
    assert [int(x) % P for x in want.all_coeffs()] == list(reversed(got))


@given(fp_polys.filter(lambda a: any(a)))
def test_squarefree_part_of_a_square(a):
    sq = up_mul(a, a, P)
    assert up_squarefree(sq, P) == up_squarefree(a, P)


# -- coefficients

def test_coefficient_streams_are_label_keyed():
    a = coefficient_rng(7, "m", 1).integers(0, 10 ** 9, 4).tolist()
    coefficient_rng(7, "other").integers(0, 10, 100)
    b = coefficient_rng(7, "m", 1).integers(0, 10 ** 9, 4).tolist()
    c = coefficient_rng(8, "m", 1).integers(0, 10 ** 9, 4).tolist()
    assert a == b and a != c


def test_random_form_has_every_monomial():
    R = _ring(10007)
    f = random_form(R, 6, coefficient_rng(0, "f"))
    assert set(f.terms) == set(R.monomials(6))
    assert f.is_homogeneous() and f.degree() == 6
