"""One cascade step by hand: PF12 -> CI12 -> HS12 at n = 1.

Each step puts the source in projection-normal form, eliminates the
center and checks that the divisor generators cut out the image.

    python3 demos/projection_walkthrough.py
"""
from dpcascade.cascade import project_equations, project_format, verify_step
from dpcascade.catalog import builtin_catalog

STEPS = (("PF12", "y0"), ("CI12", "z0"))


def main(n=1, seed=0):
    cat = builtin_catalog()
    for mid, center in STEPS:
        ms = cat[mid]
        step = project_format(ms, center)
        print(step.describe())
        src = ms.instantiate(n, seed, center=center)
        special = project_equations(src, center, step)
        print(special.describe())
        print("  divisor:", ", ".join(str(g) for g in special.meta["divisor"]))
        print("  certificates hold:", special.meta["contains_divisor"])
        v = verify_step(step, n, seed, cat, ms)
        print(f"  target {v.target_id}: wellformed={v.wellformed} quasismooth={v.quasismooth}"
              f" invariants={v.invariants} h0 drop={v.detail['h0_drop']}")
        print()


if __name__ == "__main__":
    main()
