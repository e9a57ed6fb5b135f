"""Numerical invariants: Hilbert series, (-K)^2, orbifold Riemann-Roch and baskets.

The Riemann-Roch correction at a 1/rho(1,a) point uses a root-of-unity
character sum, evaluated exactly as a rational Dedekind-type sum.  Two
conventions for the local type of -K are in circulation; the right one is
picked by :func:`calibrate` against surfaces whose h^0(-K) is a plain
monomial count.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Sequence

from .errors import ConventionUncalibrated, NegativeCoefficient, NonIntegerRR
from .exactmath import SeriesPoly, divide_by_one_minus_t, inverse_one_minus_t_pow, series_mul
from .formats import CI, HilbertData, hilbert_numerator
from .wps import SingType, WeightedSpace, normalize_sing


@dataclass
class InvariantReport:
    k: int
    degK2: Fraction
    h0: int
    hilbert: list[int]
    basket: list[SingType] = field(default_factory=list)
    rr_h0: int | None = None


def _weights(ambient) -> tuple[int, ...]:
    return ambient.weights if isinstance(ambient, WeightedSpace) else tuple(ambient)


def hilbert_coeffs(hd: HilbertData, ambient, bound: int) -> list[int]:
    """Coefficients of t^0..t^bound in N(t) / prod(1 - t^w)."""
    b = bound + 1
    series = hd.numerator.truncate(b)
    for w in _weights(ambient):
        series = series_mul(series, inverse_one_minus_t_pow(w, b), b)
    out = [int(series[i]) for i in range(b)]
    neg = [i for i, c in enumerate(out) if c < 0]
    if neg:
        raise NegativeCoefficient(f"negative Hilbert coefficient at degree {neg[0]}")
    return out


def h0_minusK(hd: HilbertData, ambient) -> int:
    if hd.k < 0:
        return 0
    return hilbert_coeffs(hd, ambient, hd.k)[hd.k]


def degree(hd: HilbertData, ambient) -> Fraction:
    """Degree of O(1): the reduced numerator at t = 1 over the weight product."""
    reduced = divide_by_one_minus_t(hd.numerator, hd.codim)
    return Fraction(reduced(1)) / prod(_weights(ambient))


def anticanonical_square(hd: HilbertData, ambient) -> Fraction:
    return hd.k ** 2 * degree(hd, ambient)


# ---------------------------------------------------------------------------
# orbifold Riemann-Roch
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _sigma(rho: int, a: int, i: int) -> Fraction:
    """(1/rho) sum_j zeta^{ji} / ((1 - zeta^j)(1 - zeta^{ja})), as an exact rational.

    Uses 1/(1 - zeta^j) = -(1/rho) sum_m m zeta^{jm} and orthogonality of
    characters, which turns the cyclotomic sum into a finite count.
    """
    total = 0
    for m in range(1, rho):
        for n in range(1, rho):
            hit = rho if (i + m + a * n) % rho == 0 else 0
            total += m * n * (hit - 1)
    return Fraction(total, rho ** 3)


_state = {"sign": None}
_lock = threading.Lock()


def is_calibrated() -> bool:
    return _state["sign"] is not None


def _local_type(sing: SingType, sign: int) -> int:
    return (sign * (1 + sing.a)) % sing.order


def _contribution(sing: SingType, i: int) -> Fraction:
    i %= sing.order
    if sing.order == 1 or i == 0:
        return Fraction(0)
    return _sigma(sing.order, sing.a, i) - _sigma(sing.order, sing.a, 0)


def rr_contribution(sing: SingType, i: int) -> Fraction:
    """Riemann-Roch correction for a divisor of local type ``i`` at ``sing``."""
    if not is_calibrated():
        raise ConventionUncalibrated("call invariants.calibrate() first")
    return _contribution(sing, i)


def local_type_of_minusK(sing: SingType | None, k: int = 1, local_weight: int = 1) -> int:
    """Character of -K at a 1/rho(1,a) point.

    -K is locally generated by the dual of dx ^ dy, of character -(1 + a).
    When rho divides ``k`` the sheaf O(k) is trivialized by a power of the
    nonvanishing coordinate (of weight ``local_weight``), so the type is 0.
    """
    if sing is None or sing.order == 1 or k % sing.order == 0:
        return 0
    if not is_calibrated():
        raise ConventionUncalibrated("call invariants.calibrate() first")
    return _local_type(sing, _state["sign"])


def _rr(degK2, basket, types) -> Fraction:
    return 1 + Fraction(degK2) + sum((_contribution(s, i) for s, i in zip(basket, types)), Fraction(0))


def rr_h0(degK2, basket: Sequence[SingType], localtypes: Sequence[int] | None = None) -> int:
    """chi(-K) = 1 + K^2 + sum of corrections, identified with h^0(-K) by del Pezzo vanishing."""
    if not is_calibrated():
        raise ConventionUncalibrated("call invariants.calibrate() first")
    basket = list(basket)
    if localtypes is None:
        localtypes = [local_type_of_minusK(s) for s in basket]
    val = _rr(degK2, basket, localtypes)
    if val.denominator != 1:
        raise NonIntegerRR(f"Riemann-Roch gives {val}; basket or local types are wrong")
    return int(val)


def _calibration_set():
    """Surfaces with h^0(-K) known by monomial counting: (ambient, format, basket)."""
    def cone(w):
        ws = WeightedSpace((1, 1, w))
        hd = HilbertData(SeriesPoly([1]), sum(ws.weights), 0, 0)
        return ws, hd, [normalize_sing(w, 1, 1)]

    def ci11(r):
        ws = WeightedSpace((1, 1, r, r, 2 * r - 1))
        return ws, hilbert_numerator(CI(2 * r, 2 * r), r, ws.weights), [normalize_sing(2 * r - 1, 1, 1)]

    return [cone(3), cone(2), ci11(2), ci11(3)]


def calibrate() -> int:
    """Fix the sign convention for the local type of -K; returns the chosen sign.

    Each candidate sign is tried on the calibration set; exactly one must
    reproduce every monomial count.
    """
    with _lock:
        if _state["sign"] is not None:
            return _state["sign"]
        cases = []
        for ws, hd, basket in _calibration_set():
            basket = [s for s in basket if s is not None]
            h0 = hilbert_coeffs(hd, ws, hd.k)[hd.k]
            cases.append((anticanonical_square(hd, ws), basket, h0))
        good = []
        for sign in (1, -1):
            if all(_rr(k2, b, [_local_type(s, sign) for s in b]) == h0 for k2, b, h0 in cases):
                good.append(sign)
        if len(good) != 1:
            raise ConventionUncalibrated(f"calibration is ambiguous or inconsistent: {good}")
        _state["sign"] = good[0]
        return good[0]


def _reset_calibration():
    """Testing hook: forget the calibrated convention."""
    with _lock:
        _state["sign"] = None


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def expand_basket(entries) -> list[SingType]:
    """Flatten ``[(count, SingType), ...]`` into a sorted multiset."""
    out = []
    for count, s in entries:
        out.extend([s] * count)
    return sorted(out)


def invariant_report(hd: HilbertData, ambient, basket: Sequence[SingType] = (),
                     extra: int = 4) -> InvariantReport:
    k2 = anticanonical_square(hd, ambient)
    coeffs = hilbert_coeffs(hd, ambient, max(hd.k, 0) + extra)
    h0 = coeffs[hd.k] if hd.k >= 0 else 0
    rr = None
    if basket is not None:
        calibrate()
        try:
            rr = rr_h0(k2, basket)
        except NonIntegerRR:
            rr = None
    return InvariantReport(hd.k, k2, h0, coeffs, sorted(basket), rr)
