"""Command-line driver: verify, project, cascade, tables, instantiate.

Exit codes: 0 success, 1 unexpected discrepancy or failed check, 2 invalid
input or catalog.  Reports go to standard output, diagnostics to standard
error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .catalog import Catalog, load_catalog
from .errors import CascadeError, CatalogError, OutOfRange
from .exactmath import DEFAULT_PRIME

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dpcascade", description=__doc__.splitlines()[0])
    p.add_argument("--catalog", metavar="PATH", help="catalog JSON file (default: built-in catalog)")
    sub = p.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="check computed invariants against the catalog")
    v.add_argument("--model", action="append", metavar="ID", help="model id (repeatable; default all)")
    v.add_argument("--n-min", type=int)
    v.add_argument("--n-max", type=int, default=8)
    v.add_argument("--heavy-n-max", type=int, default=3,
                   help="largest n with basket extraction and quasismoothness (default 3)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    v.add_argument("--strict", action="store_true", help="treat known discrepancies as failures")
    v.add_argument("--json", action="store_true")

    pr = sub.add_parser("project", help="one type-I projection with explicit elimination")
    pr.add_argument("--model", required=True, metavar="ID")
    pr.add_argument("--center", required=True, metavar="VAR")
    pr.add_argument("--n", type=int)
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--strict", action="store_true")
    pr.add_argument("--json", action="store_true")

    c = sub.add_parser("cascade", help="search for projection cascades")
    c.add_argument("--n-max", type=int, default=3)
    c.add_argument("--rs", action="store_true", help="use the fixed surfaces instead of the series")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--strict", action="store_true")
    c.add_argument("--json", action="store_true")

    t = sub.add_parser("tables", help="regenerate the model tables with computed columns")
    t.add_argument("--model", action="append", metavar="ID")
    t.add_argument("--n-min", type=int)
    t.add_argument("--n-max", type=int, default=3)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    t.add_argument("--strict", action="store_true")
    t.add_argument("--json", action="store_true")

    i = sub.add_parser("instantiate", help="print explicit equations of a member")
    i.add_argument("--model", required=True, metavar="ID")
    i.add_argument("--n", type=int)
    i.add_argument("--seed", type=int, default=0)
    i.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    i.add_argument("--center", metavar="VAR", help="projection-normal form for this center")
    i.add_argument("--json", action="store_true")
    return p


def _emit(rep, as_json: bool) -> int:
    print(rep.dumps() if as_json else rep.render())
    return rep.exit_code


def _cmd_verify(cat: Catalog, a) -> int:
    from .report import run_verify
    return _emit(run_verify(a.model, a.n_min, a.n_max, a.seed, a.prime, a.strict, cat, a.heavy_n_max), a.json)


def _cmd_cascade(cat: Catalog, a) -> int:
    from .report import run_cascade
    return _emit(run_cascade(a.n_max, a.seed, a.rs, a.strict, cat), a.json)


def _cmd_tables(cat: Catalog, a) -> int:
    from .report import emit_tables
    return _emit(emit_tables(a.model, a.n_min, a.n_max, a.seed, a.prime, a.strict, cat), a.json)


def _cmd_instantiate(cat: Catalog, a) -> int:
    inst = cat[a.model].instantiate(a.n, a.seed, a.prime, center=a.center)
    if a.json:
        print(json.dumps({"model": inst.model_id, "n": inst.n, "r": inst.r, "names": list(inst.names),
                          "weights": list(inst.weights), "format": inst.fmt.kind,
                          "equations": [str(f) for f in inst.equations], "seed": a.seed,
                          "prime": a.prime}, indent=1, sort_keys=True))
    else:
        print(inst.describe())
    return EXIT_OK


def _cmd_project(cat: Catalog, a) -> int:
    from .cascade import project_equations, project_format, verify_step
    from .report import _verdict_json
    ms = cat[a.model]
    step = project_format(ms, a.center)
    src = ms.instantiate(a.n, a.seed, center=a.center)
    special = project_equations(src, a.center, step)
    verdict = verify_step(step, a.n, a.seed, cat, ms, strict=a.strict)
    if a.json:
        print(json.dumps({"step": step.describe(), "target": verdict.target_id,
                          "special": [str(f) for f in special.equations],
                          "divisor": [str(g) for g in special.meta["divisor"]],
                          "contains_divisor": special.meta["contains_divisor"],
                          "verdict": _verdict_json(verdict)}, indent=1, sort_keys=True))
    else:
        print(step.describe())
        print(special.describe())
        print("divisor generators:")
        for g in special.meta["divisor"]:
            print(f"  {g}")
        print(f"divisor contained: {special.meta['contains_divisor']}")
        for key in ("wellformed", "quasismooth", "invariants", "special"):
            print(f"{key}: {'pass' if getattr(verdict, key) else 'FAIL'}")
        for f in verdict.flagged:
            print(f"known discrepancy: {f['model']} n={f['n']} (-K)^2 computed {f['computed']}, "
                  f"declared {f['declared']}")
        print(f"target: {verdict.target_id or 'none'}")
    return EXIT_OK if verdict.passed else EXIT_FAIL


COMMANDS = {"verify": _cmd_verify, "project": _cmd_project, "cascade": _cmd_cascade,
            "tables": _cmd_tables, "instantiate": _cmd_instantiate}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        cat = load_catalog(args.catalog)
        if getattr(args, "model", None):
            models = args.model if isinstance(args.model, list) else [args.model]
            for m in models:
                if m not in cat:
                    raise CatalogError(f"unknown model id {m!r}; known: {', '.join(cat.ids())}")
        return COMMANDS[args.cmd](cat, args)
    except (CatalogError, OutOfRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CascadeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
