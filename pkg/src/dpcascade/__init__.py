"""Exact graded-ring calculator and verifier for log del Pezzo models.

Modules: ``exactmath`` (rationals, series, polynomials over F_p), ``wps``
(weighted projective spaces), ``formats`` (equation formats and Hilbert
numerators), ``invariants`` (degree, h^0, Riemann-Roch), ``quasismooth``
(stratum checks and baskets), ``cascade`` (type-I projections) and
``catalog``/``report``/``cli`` (model data and the command-line driver).
"""
__version__ = "0.1.0"
