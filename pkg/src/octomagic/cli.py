"""Command line interface: ``octomagic <subcommand> ...``.

Exit codes: 0 success, 1 verification or proof failure, 2 usage error,
3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import algebra, euler, magic, render, search
from .algebra import CONVENTIONS, DEFAULT_CONVENTION, Hyper, cd_basis_table
from .dyadic import HalfRational

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _hyper_arg(text: str) -> Hyper:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"not a JSON array: {text!r}") from exc
    if not isinstance(data, list):
        raise UsageError(f"expected a JSON array, got {text!r}")
    try:
        return Hyper.from_json([str(v) for v in data])
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not JSON: {exc}") from exc


def _print_classification(c: magic.Classification) -> None:
    print(f"classification: {c.kind.value}")
    print(f"constant: {c.constant}")
    for name, value in c.flags().items():
        print(f"{name}: {str(value).lower()}")


# -- subcommands ------------------------------------------------------------

def cmd_build(args) -> int:
    A, P = _hyper_arg(args.A), _hyper_arg(args.P)
    if A.dim != P.dim:
        raise UsageError(f"A has {A.dim} coordinates, P has {P.dim}")
    M = magic.build_matrix(A, P, cd_basis_table(A.dim, args.convention))
    print(M.grid())
    _print_classification(magic.classify(M))
    if args.out:
        Path(args.out).write_text(json.dumps(M.to_json(), indent=1) + "\n", encoding="utf-8")
        print(f"wrote {args.out}")
    return EXIT_OK


def _verify_matrix(data: dict) -> bool:
    M = magic.SquareMatrix.from_json(data)
    report = magic.gram_report(M)
    ok = True
    if "constant" in data and HalfRational.coerce(data["constant"]) != report.constant:
        print(f"stored constant {data['constant']} != computed {report.constant}")
        ok = False
    if M.provenance is not None:
        prov = M.provenance
        rebuilt = magic.build_matrix(prov.A, prov.P, cd_basis_table(prov.A.dim, prov.convention))
        if rebuilt != M:
            conv, hits = magic.closest_convention(M)
            print(f"entries differ from A(e_i P) under {prov.convention!r}; "
                  f"closest convention {conv!r} matches {hits}/{M.dim ** 2} entries")
            ok = False
        if M.dim <= 8 and report.constant != algebra.norm(prov.A) * algebra.norm(prov.P):
            print("constant is not N(A) N(P)")
            ok = False
    _print_classification(magic.classify(M))
    return ok


def cmd_verify(args) -> int:
    text = Path(args.path).read_text(encoding="utf-8") if Path(args.path).exists() else None
    if text is None:
        raise UsageError(f"no such file: {args.path}")
    stripped = text.strip()
    try:
        docs = [json.loads(stripped)]
    except json.JSONDecodeError:
        try:
            docs = [json.loads(line) for line in stripped.splitlines() if line.strip()]
        except json.JSONDecodeError as exc:
            raise UsageError(f"{args.path} is neither JSON nor JSONL: {exc}") from exc
    ok = True
    for n, doc in enumerate(docs):
        if "kind" in doc and "entries" not in doc:
            cand = search.Candidate.from_json(doc)
            good = cand.verify()
            print(f"candidate {n}: constant {cand.constant} {'verified' if good else 'MISMATCH'}")
            ok &= good
        else:
            ok &= _verify_matrix(doc)
    print("verified" if ok else "verification FAILED")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_prove(args) -> int:
    report = magic.prove_theorem(args.dim, cd_basis_table(args.dim, args.convention))
    print(report.format())
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_euler4(args) -> int:
    if args.solve:
        p, q, r, s, b, d = args.solve
        try:
            sol = euler.euler4_solve(p, q, r, s, b, d)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if sol is None:
            print("degenerate: pq+rs = ps+qr = 0, any a, c satisfy the ratio condition")
        else:
            print(json.dumps({"a": sol[0], "c": sol[1]}))
        return EXIT_OK
    if args.match:
        m = euler.euler4_match_quaternion(cd_basis_table(4, args.convention))
        print(json.dumps({"row_perm": m.row_perm, "row_signs": m.row_signs,
                          "col_perm": m.col_perm, "col_signs": m.col_signs,
                          "var_signs": m.var_signs}))
        return EXIT_OK
    if not args.params:
        raise UsageError("euler4 needs --params, --solve or --match")
    try:
        params = euler.EulerParams.from_json(json.loads(args.params))
    except (json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"bad --params: {exc}") from exc
    M = euler.euler4_build(params)
    print(M.grid())
    cond = euler.euler4_conditions(params)
    print(f"pr+qs=0: {str(cond.products_vanish).lower()}")
    print(f"ratio condition: {str(cond.ratio_holds).lower()}"
          + (" (degenerate)" if cond.degenerate else ""))
    _print_classification(magic.classify(M))
    return EXIT_OK


def _box(text):
    if text is None:
        return None
    try:
        return tuple(tuple(pair) for pair in json.loads(text))
    except (json.JSONDecodeError, TypeError) as exc:
        raise UsageError(f"box must be a JSON list of [lo, hi] pairs: {exc}") from exc


def cmd_search(args) -> int:
    try:
        cfg = search.SearchConfig(
            dim=args.dim, lo=args.lo, hi=args.hi, half_integer_mode=args.half,
            predicates=frozenset(args.predicate or ["entries_distinct"]),
            iterations=args.iterations, time_limit=args.time_limit, seed=args.seed,
            workers=args.workers, convention=args.convention,
            a_box=_box(args.a_box), p_box=_box(args.p_box),
            quotient=not args.no_quotient, record_time=args.timestamps, layout=args.layout,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.exhaustive and search.lattice_size(cfg) > cfg.max_lattice:
        raise UsageError(f"{search.lattice_size(cfg)} lattice points exceed the cap "
                         f"of {cfg.max_lattice}")
    print(f"seed: {cfg.seed}")
    stats = search.SearchStats()
    cands = (search.exhaustive_search if args.exhaustive else search.random_search)(cfg, stats)

    def progress(cand):
        print(f"found constant {cand.constant} (best {stats.best_constant}, "
              f"visited {stats.visited})", file=sys.stderr)

    if args.out:
        count = search.write_log(args.out, cands, progress)
    else:
        count = 0
        for cand in cands:
            print(cand.dumps())
            progress(cand)
            count += 1
    print(f"iterations {stats.visited}, candidates {count}, best constant {stats.best_constant}",
          file=sys.stderr)
    return EXIT_OK


def cmd_diagonalize(args) -> int:
    M = magic.SquareMatrix.from_json(_load_json(args.path))
    try:
        perm = search.diagonalize_rows(M)
    except ValueError as exc:
        print(str(exc))
        return EXIT_FAILED
    if perm is None:
        print(f"no row permutation of the {M.dim}x{M.dim} matrix makes both diagonals match")
        return EXIT_OK
    print(json.dumps({"row_perm": list(perm)}))
    print(M.permute_rows(perm).grid())
    return EXIT_OK


def cmd_render(args) -> int:
    patterns = magic.build_symbolic(args.dim, cd_basis_table(args.dim, args.convention))
    svg = render.render_pattern(patterns, render.default_spec(args.dim), args.convention)
    render.write_svg(args.out, svg)
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_sedenion_check(args) -> int:
    table = cd_basis_table(16, args.convention)
    print(f"seed: {args.seed}")
    found = algebra.find_norm_multiplicativity_counterexample(16, table, args.seed, args.budget)
    if found is None:
        print(f"no counterexample within {args.budget} trials")
        return EXIT_FAILED
    x, y = found
    xy = algebra.multiply(x, y, table)
    print(f"x = {json.dumps(x.to_json())}")
    print(f"y = {json.dumps(y.to_json())}")
    print(f"N(x) N(y) = {algebra.norm(x) * algebra.norm(y)}, N(xy) = {algebra.norm(xy)}")
    report = magic.gram_report(magic.build_matrix(x, y, table))
    print(f"16x16 matrix rows orthogonal: {str(report.is_orthogonal).lower()} "
          f"(max |off-diagonal Gram| = {report.off_diagonal_max_abs})")
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="octomagic",
        description="Magic squares of squares from quaternion and octonion products A(e_i P). "
                    "Coordinates are JSON arrays of numbers or strings like \"5/2\", "
                    "index 0 being the real unit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def conv(p):
        p.add_argument("--convention", choices=CONVENTIONS, default=DEFAULT_CONVENTION,
                       help="Cayley-Dickson doubling rule (default: %(default)s)")

    p = sub.add_parser("build", help="build the matrix A(e_i P) and classify it")
    p.add_argument("--A", required=True, help='JSON array, e.g. "[8,-2,-4,8,-4,-1,-5,-4]"')
    p.add_argument("--P", required=True, help='JSON array, e.g. \'["5/2","7/2",...]\'')
    p.add_argument("--out", help="write matrix JSON here")
    conv(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="recheck a matrix JSON file or a candidate JSONL log")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("prove", help="symbolic proof of row orthogonality and distinctness")
    p.add_argument("--dim", type=int, choices=(4, 8, 16), required=True)
    conv(p)
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("euler4", help="Euler's 4x4 parametrisation")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--params", help='JSON {"abcd": [...], "pqrs": [...]}')
    g.add_argument("--solve", nargs=6, type=int, metavar=("P", "Q", "R", "S", "B", "D"),
                   help="solve the ratio condition for (a, c)")
    g.add_argument("--match", action="store_true",
                   help="find the transformation from A(e_i P) to Euler's table")
    conv(p)
    p.set_defaults(func=cmd_euler4)

    p = sub.add_parser("search", help="search (A, P) for squares with given properties")
    p.add_argument("--dim", type=int, choices=search.SEARCH_DIMS, default=8)
    p.add_argument("--lo", type=int, default=-32, help="lowest coordinate, in sampler units")
    p.add_argument("--hi", type=int, default=32, help="highest coordinate, in sampler units")
    p.add_argument("--half", action="store_true", help="sampler units are 1/2")
    p.add_argument("--predicate", action="append", choices=search.PREDICATES,
                   help="repeatable; default entries_distinct")
    p.add_argument("--iterations", type=int, default=10_000)
    p.add_argument("--time-limit", type=float, help="seconds (breaks determinism)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--a-box", help="JSON list of per-coordinate [lo, hi] for A")
    p.add_argument("--p-box", help="JSON list of per-coordinate [lo, hi] for P")
    p.add_argument("--exhaustive", action="store_true", help="visit every lattice point")
    p.add_argument("--no-quotient", action="store_true",
                   help="exhaustive: keep sign/scale duplicates")
    p.add_argument("--timestamps", action="store_true", help="record wall-clock time")
    p.add_argument("--layout", choices=search.LAYOUTS, default="natural",
                   help="natural: rows of A(e_i P); euler: Euler's 4x4 table (dim 4)")
    p.add_argument("--out", help="append candidates to this JSONL file (default stdout)")
    conv(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("diagonalize", help="find a row order making both diagonals magic")
    p.add_argument("path")
    p.set_defaults(func=cmd_diagonalize)

    p = sub.add_parser("render", help="write the SVG pattern figure")
    p.add_argument("--dim", type=int, choices=(4, 8), required=True)
    p.add_argument("--out", required=True)
    conv(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("sedenion-check", help="exhibit failure of norm multiplicativity at dim 16")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=10**6)
    conv(p)
    p.set_defaults(func=cmd_sedenion_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
