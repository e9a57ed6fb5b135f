"""Hilbert coefficients, degrees and orbifold Riemann-Roch."""
from __future__ import annotations

import cmath
from math import gcd
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dpcascade import invariants
from dpcascade.errors import ConventionUncalibrated, NonIntegerRR
from dpcascade.exactmath import Ring
from dpcascade.formats import CI, Hypersurface, hilbert_numerator
from dpcascade.invariants import (anticanonical_square, calibrate, degree, h0_minusK,
                                  hilbert_coeffs, local_type_of_minusK, rr_contribution, rr_h0)
from dpcascade.wps import SingType


def _numeric_contribution(rho, a, i):
    def sigma(k):
        total = 0
        for j in range(1, rho):
            z = cmath.exp(2j * cmath.pi * j / rho)
            total += z ** k / ((1 - z) * (1 - z ** a))
        return total / rho
    return sigma(i) - sigma(0)


@settings(max_examples=60)
@given(st.integers(2, 17), st.integers(1, 16), st.integers(0, 16))
def test_contribution_matches_roots_of_unity(rho, a, i):
    a %= rho
    if gcd(a, rho) != 1:
        return
    calibrate()
    s = SingType(rho, a)
    exact = rr_contribution(s, i)
    approx = _numeric_contribution(rho, a, i)
    assert abs(complex(exact) - approx) < 1e-9


def test_calibration_fixes_the_minus_sign():
    invariants._reset_calibration()
    with pytest.raises(ConventionUncalibrated):
        rr_h0(Fraction(25, 3), [SingType(3, 1)])
    assert calibrate() == -1
    assert calibrate() == -1


def test_cone_over_rational_normal_curve():
    calibrate()
    s = SingType(3, 1)
    assert local_type_of_minusK(s) == 1
    assert rr_contribution(s, 1) == Fraction(-1, 3)
    assert rr_h0(Fraction(25, 3), [s]) == 9


def test_trivial_local_type_when_order_divides_k():
    calibrate()
    assert local_type_of_minusK(SingType(3, 1), k=3) == 0
    assert local_type_of_minusK(None) == 0


def test_wrong_basket_gives_nonintegral_rr():
    calibrate()
    with pytest.raises(NonIntegerRR):
        rr_h0(Fraction(25, 3), [])


def _hypersurface_counts(ws, d, top):
    ring = Ring(tuple(f"x{i}" for i in range(len(ws))), tuple(ws), None)
    return [len(ring.monomials(k)) - (len(ring.monomials(k - d)) if k >= d else 0)
            for k in range(top + 1)]


@pytest.mark.parametrize("ws,d", [((1, 1, 2, 3), 6), ((1, 2, 3, 5), 10), ((1, 1, 1, 1), 3),
                                  ((1, 1, 3, 5), 9)])
def test_hilbert_coefficients_count_monomials(ws, d):
    hd = hilbert_numerator(Hypersurface(d), 0, ws)
    assert hilbert_coeffs(hd, ws, 12) == _hypersurface_counts(ws, d, 12)


@pytest.mark.parametrize("ws,d,k,k2", [
    ((1, 1, 2, 3), 6, 1, Fraction(1)),
    ((1, 2, 3, 5), 10, 1, Fraction(1, 3)),
    ((1, 1, 1, 1), 3, 1, Fraction(3)),
])
def test_degree_by_adjunction(ws, d, k, k2):
    hd = hilbert_numerator(Hypersurface(d), 0, ws)
    assert hd.k == k
    assert degree(hd, ws) == Fraction(d, ws[0] * ws[1] * ws[2] * ws[3])
    assert anticanonical_square(hd, ws) == k2


def test_ci_h0_and_rr():
    # X_{4,4} in P(1,1,2,2,3) misses the line of 1/2 points and has one 1/3(1,1) point
    calibrate()
    ws = (1, 1, 2, 2, 3)
    hd = hilbert_numerator(CI(4, 4), 0, ws)
    assert hd.k == 1
    assert h0_minusK(hd, ws) == 2
    assert anticanonical_square(hd, ws) == Fraction(4, 3)
    assert rr_h0(Fraction(4, 3), [SingType(3, 1)]) == 2
