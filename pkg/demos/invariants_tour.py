"""Invariants of a few catalog models, computed from scratch.

For each model and small n: ambient, Hilbert numerator, (-K)^2, h0(-K),
the basket read off a seeded member, and Riemann-Roch with that basket.

    python3 demos/invariants_tour.py
"""
from dpcascade.catalog import builtin_catalog
from dpcascade.formats import hilbert_numerator
from dpcascade.invariants import anticanonical_square, calibrate, h0_minusK, rr_h0
from dpcascade.quasismooth import basket_of

MODELS = ("CI11", "CI12", "PF12", "P11", "RS8")


def main():
    cat = builtin_catalog()
    print(f"local-type sign after calibration: {calibrate()}")
    for mid in MODELS:
        ms = cat[mid]
        for n in ([None] if ms.law.fixed else ms.law.ns(n_max=2)):
            r = ms.r(n)
            ws = ms.weights_at(r)
            hd = hilbert_numerator(ms.display_format(), r, ws)
            k2 = anticanonical_square(hd, ws)
            basket = basket_of(ms.instantiate(n, seed=0))
            print(f"{mid:5} n={n} r={r} P{ws} k={hd.k}")
            print(f"      N(t) = {hd.numerator}")
            print(f"      (-K)^2 = {k2} (declared {ms.declared_degK2(n)})  h0 = {h0_minusK(hd, ws)}"
                  f"  RR = {rr_h0(k2, basket)}")
            print(f"      basket: {', '.join(map(str, basket)) or 'smooth'}")


if __name__ == "__main__":
    main()
