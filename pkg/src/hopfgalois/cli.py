"""Command line entry point.

Exit codes: 0 when every check passes, 1 for bad input, 2 when a
theorem-level check fails.  Errors are written to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import CorrespondenceError, HopfGaloisError, InputError, PreconditionError

EXIT_OK, EXIT_INPUT, EXIT_ASSERTION = 0, 1, 2


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=False))


def _load(source: str, kind: str | None = None):
    from .fixtures import load_fixture

    fx = load_fixture(source)
    if kind is not None and fx.kind != kind:
        raise InputError(f"fixture holds a {fx.kind}, this command needs a {kind}")
    return fx


def _pick_structure(datum, key: str, jobs: int = 1):
    """``key`` is an index into the enumeration, ``classical`` or ``lambda``."""
    from .greither_pareigis import classical_structure, descend_hopf_and_action, enumerate_structures

    if key == "classical":
        return classical_structure(datum), "classical"
    if key == "lambda":
        if datum.g_prime.order != 1:
            raise PreconditionError("the translation structure needs G' = 1")
        return descend_hopf_and_action(datum, datum.cosets.lambda_img), "lambda"
    try:
        i = int(key)
    except ValueError as exc:
        raise InputError(f"--structure must be an index, 'classical' or 'lambda', got {key!r}") from exc
    structures = enumerate_structures(datum, jobs=jobs)
    if not 0 <= i < len(structures):
        raise InputError(f"structure index {i} out of range 0..{len(structures) - 1}")
    return structures[i], str(i)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    from .greither_pareigis import enumerate_structures, validate_splitting
    from .perm import hg_candidates

    fx = _load(args.fixture, "splitting_datum")
    d = fx.payload
    validate_splitting(d)
    if args.group_side_only:
        cands = hg_candidates(d.group, d.g_prime)
        rows = [{"index": i, "N": n.to_json(), "abelian": n.is_abelian()} for i, n in enumerate(cands)]
    else:
        structures = enumerate_structures(d, jobs=args.jobs)
        rows = [{"index": i, **s.summary()} for i, s in enumerate(structures)]
    n = len(rows)
    if args.format == "json":
        _print_json({"fixture": fx.metadata.get("name", args.fixture), "count": n, "structures": rows})
    else:
        print(f"{n} structure{'s' if n != 1 else ''}")
        for r in rows:
            extra = f"  dim H = {r['dim_H']}  can rank = {r['can_rank']}" if "dim_H" in r else ""
            print(f"[{r['index']}] N = <{', '.join(str(g) for g in r['N']['generators'])}>  abelian = {r['abelian']}{extra}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .action import canonical_map, verify_module_algebra
    from .greither_pareigis import classical_matches_group_algebra, validate_splitting, verify_structure
    from .hopf import verify_axioms

    fx = _load(args.fixture)
    out: dict = {"fixture": fx.metadata.get("name", args.fixture), "kind": fx.kind}
    if fx.kind == "splitting_datum":
        d = fx.payload
        out["splitting"] = validate_splitting(d).as_dict()
        s, label = _pick_structure(d, args.structure, args.jobs)
        out["structure"] = label
        out["summary"] = s.summary()
        out["structure_checks"] = verify_structure(d, s)
        module = s.module
        if label == "classical":
            out["matches_group_algebra"] = classical_matches_group_algebra(d, s)
    elif fx.kind == "module_algebra":
        module = fx.payload
        out["module_algebra"] = verify_module_algebra(module).as_dict()
    else:
        raise InputError("verify needs a splitting_datum or module_algebra fixture")
    axioms = verify_axioms(module.hopf)
    can = canonical_map(module)
    out["axioms"] = axioms.as_dict()
    out["canonical_map"] = can.as_dict()
    failed = not axioms.hopf or out.get("structure_checks") is False or out.get("matches_group_algebra") is False
    if args.format == "json":
        _print_json(out)
    else:
        print(f"axioms: {'pass' if axioms.hopf else 'FAIL'}")
        print(f"canonical map: rank {can.rank} of {can.dim_target}, {'bijective' if can.bijective else 'not bijective'}")
        for k in ("structure_checks", "matches_group_algebra"):
            if k in out:
                print(f"{k}: {out[k]}")
    return EXIT_ASSERTION if failed else EXIT_OK


def cmd_lattice(args) -> int:
    from .report import emit_report, lattice_report

    fx = _load(args.fixture, "splitting_datum")
    d = fx.payload
    s, label = _pick_structure(d, args.structure, args.jobs)
    rep = lattice_report(d, s, f"{fx.metadata.get('name', 'fixture')}#{label}")
    sys.stdout.write(emit_report(rep, args.format))
    return EXIT_OK


def cmd_tower(args) -> int:
    from .towers import (
        DEFAULT_DEPTH,
        classical_n_tower,
        restricted_dual_check,
        tower_correspondence,
        tower_from_datum,
        tower_hg_check,
        validate_hopf_tower,
    )

    fx = _load(args.fixture, "tower")
    td = fx.payload
    depth = args.depth if args.depth is not None else min(DEFAULT_DEPTH, td.depth)
    td = td.truncate(depth)
    gt, ht, mt = tower_from_datum(td)
    reports = [validate_hopf_tower(ht), tower_hg_check(ht, mt)]
    if reports[-1].ok:
        reports.append(tower_correspondence(td, ht, mt, classical_n_tower(td)))
    reports.append(restricted_dual_check(ht, mt))
    ok = all(r.ok for r in reports)
    if args.format == "json":
        _print_json({"depth": depth, "ok": ok, "reports": [r.as_dict() for r in reports]})
    else:
        for r in reports:
            print(f"{r.kind}: {'pass' if r.ok else 'FAIL'} (depth {r.depth})")
            for lv in r.levels:
                print("  " + ", ".join(f"{k}={v}" for k, v in lv.items()))
            for f in r.failures:
                print(f"  failure at level {f['level']}: {f['check']}: {f['message']}")
            for row in r.extra.get("towers", []):
                print(f"  tower V orders {row['V_orders']} -> field dims {row['field_dims']} ({row['model']} model)")
    return EXIT_OK if ok else EXIT_ASSERTION


def cmd_oracle(args) -> int:
    if args.oracle == "regular-subgroups":
        from .perm import regular_subgroups, regular_subgroups_oracle

        brute = regular_subgroups_oracle(args.n)
        fast = regular_subgroups(args.n)
        agree = [g.canonical_gens for g in brute] == [g.canonical_gens for g in fast]
        out = {"n": args.n, "oracle": len(brute), "search": len(fast), "agree": agree}
    else:
        from .greither_pareigis import left_ideal_coideal_oracle
        from .linalg import GF, all_subspaces

        out = {"dim": args.dim, "subspaces": sum(1 for _ in all_subspaces(GF(2), args.dim))}
        agree = True
        if args.fixture:
            from .greither_pareigis import group_side_correspondence

            fx = _load(args.fixture, "splitting_datum")
            s, _ = _pick_structure(fx.payload, args.structure)
            if s.hopf.dim != args.dim:
                raise InputError(f"structure has dim H = {s.hopf.dim}, not {args.dim}")
            brute = set(left_ideal_coideal_oracle(s.hopf))
            group = {r.ideal for r in group_side_correspondence(s, fx.payload)}
            agree = brute == group
            out.update({"left_ideal_coideals": len(brute), "group_side": len(group), "agree": agree})
    if args.format == "json":
        _print_json(out)
    else:
        print(", ".join(f"{k}={v}" for k, v in out.items()))
    return EXIT_OK if agree else EXIT_ASSERTION


def cmd_gen(args) -> int:
    from .fixtures import dump_fixture, gen_gf_splitting_datum, gen_gf_tower

    if args.what == "gf":
        raw = gen_gf_splitting_datum(args.p, args.n)
    else:
        raw = gen_gf_tower(args.p, [int(x) for x in args.degrees.split(",")])
    text = dump_fixture(raw)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors (exit 1); exit 2 is reserved for failed checks."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(json.dumps({"error": "UsageError", "message": message}), file=sys.stderr)
        sys.exit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hopfgalois", description="Exact Hopf-Galois structure computations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, structure: bool = False):
        sp.add_argument("--fixture", required=True, help="fixture path or builtin:NAME")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--jobs", type=_positive, default=1, help="worker processes for candidate descent")
        if structure:
            sp.add_argument("--structure", default="0", help="index, 'classical' or 'lambda'")

    sp = sub.add_parser("enumerate", help="Hopf-Galois structure census")
    common(sp)
    sp.add_argument("--group-side-only", action="store_true", help="count regular subgroups without descent")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("verify", help="canonical map and axiom report")
    common(sp, structure=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("lattice", help="correspondence lattice report")
    common(sp, structure=True)
    sp.set_defaults(func=cmd_lattice)

    sp = sub.add_parser("tower", help="tower reports")
    common(sp)
    sp.add_argument("--depth", type=_positive, default=None)
    sp.set_defaults(func=cmd_tower)

    sp = sub.add_parser("oracle", help="brute-force baselines")
    osub = sp.add_subparsers(dest="oracle", required=True, parser_class=_Parser)
    o1 = osub.add_parser("regular-subgroups")
    o1.add_argument("--n", type=_positive, required=True)
    o2 = osub.add_parser("subspaces-gf2")
    o2.add_argument("--dim", type=_positive, required=True)
    o2.add_argument("--fixture", default=None, help="compare against this structure's group side")
    o2.add_argument("--structure", default="0")
    for o in (o1, o2):
        o.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("gen", help="fixture generators")
    gsub = sp.add_subparsers(dest="what", required=True, parser_class=_Parser)
    g1 = gsub.add_parser("gf", help="GF(p^n)/GF(p) splitting datum")
    g1.add_argument("--p", type=int, required=True)
    g1.add_argument("--n", type=_positive, required=True)
    g2 = gsub.add_parser("tower", help="tower of finite fields")
    g2.add_argument("--p", type=int, required=True)
    g2.add_argument("--degrees", required=True, help="comma separated, each dividing the next")
    for g in (g1, g2):
        g.add_argument("-o", "--output", default=None)
    sp.set_defaults(func=cmd_gen)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CorrespondenceError as exc:
        print(json.dumps(exc.as_dict(), default=str), file=sys.stderr)
        return EXIT_ASSERTION
    except HopfGaloisError as exc:
        print(json.dumps(exc.as_dict(), default=str), file=sys.stderr)
        return exc.exit_code
    except (ValueError, OSError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
