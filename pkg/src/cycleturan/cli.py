"""Command-line front end.

Exit codes: 0 on success, 2 on invalid input, 3 when a budget ran out and
partial results were written.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .containers import VARIANTS, ContainerFamily, iterate_containers
from .cycles import BERGE, BERGE_UPTO, LINEAR, CycleFamily, enumerate_cycles
from .errors import BudgetExceeded, CycleTuranError, TooLarge, ValidationError
from .hypergraph import complete_hypergraph, format_hg, gen_gnrp, gen_with_edge_count, read_hg
from .plotting import emit_plot
from .supersat import SupersatConfig, balanced_supersat, verify_balance
from .sweep import CURVE_SVG, SweepConfig, read_records, sweep
from .turan import exact_random_turan, greedy_turan_lower

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_PARTIAL = 3

log = logging.getLogger("cycleturan")


def _dump(obj, path: str | None) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text, encoding="utf-8")


def _family(args, r: int) -> CycleFamily:
    return CycleFamily(args.family, r, args.length)


def cmd_gen(args) -> int:
    if args.complete:
        H = complete_hypergraph(args.n, args.r)
    elif args.m is not None:
        H = gen_with_edge_count(args.n, args.r, args.m, args.seed)
    elif args.p is not None:
        H = gen_gnrp(args.n, args.r, args.p, args.seed)
    else:
        raise ValidationError("give one of --p, --m or --complete")
    text = format_hg(H)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_enum(args) -> int:
    H = read_hg(args.host)
    fam = _family(args, H.r)
    res = enumerate_cycles(H, fam, cap=args.cap, identity=args.identity)
    summary = {"family": fam.to_json(), "count": len(res), "truncated": res.truncated}
    if args.list:
        out = open(args.out, "w", encoding="utf-8", newline="\n") if args.out else sys.stdout
        try:
            for c in res:
                out.write(json.dumps(c.to_json(), sort_keys=True) + "\n")
            out.write(json.dumps({"summary": summary}, sort_keys=True) + "\n")
        finally:
            if args.out:
                out.close()
    else:
        _dump(summary, args.out)
    return EXIT_PARTIAL if res.truncated else EXIT_OK


def cmd_supersat(args) -> int:
    H = read_hg(args.host)
    cfg = SupersatConfig(K=args.K, sample_count=args.samples, cap=args.cap)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    code = EXIT_OK
    try:
        S, bound, trace = balanced_supersat(H, args.ell, args.variant, cfg, seed=args.seed)
    except BudgetExceeded as exc:
        if exc.partial is None:
            raise
        S, code = exc.partial, EXIT_PARTIAL
        trace, bound = [{"truncated": str(exc)}], None
    with open(out / "collection.jsonl", "w", encoding="utf-8", newline="\n") as fh:
        S.write_jsonl(fh)
    report = verify_balance(S, bound).to_json() if bound is not None else None
    _dump({"bound": bound.to_json() if bound else None, "balance": report, "trace": trace},
          str(out / "trace.json"))
    return code


def cmd_containers(args) -> int:
    code = EXIT_OK
    try:
        fam = iterate_containers(args.n, args.r, args.ell, args.t_target, args.variant,
                                 eps=args.eps, seed=args.seed, max_containers=args.max_containers)
    except BudgetExceeded as exc:
        if not isinstance(exc.partial, ContainerFamily):
            raise
        fam, code = exc.partial, EXIT_PARTIAL
    _dump(fam.to_json(), args.out)
    return code


def cmd_ex(args) -> int:
    H = read_hg(args.host)
    fam = _family(args, H.r)
    if args.greedy_only:
        _dump({"lower": greedy_turan_lower(H, fam, args.seed), "upper": len(H), "exact": False}, args.out)
        return EXIT_OK
    b = exact_random_turan(H, fam, budget=args.budget, seed=args.seed)
    _dump(b.to_json(), args.out)
    return EXIT_OK if b.exact else EXIT_PARTIAL


def cmd_sweep(args) -> int:
    cfg = SweepConfig.load(args.config)
    if args.out_dir:
        cfg.output_dir = args.out_dir
    if not cfg.output_dir:
        raise ValidationError("the sweep needs an output_dir (config key or --out-dir)")
    records = sweep(cfg, resume=not args.fresh)
    usable = [rec for rec in records if rec.estimator != "failed"]
    if usable:
        emit_plot(usable, Path(cfg.output_dir) / CURVE_SVG, prediction=cfg.family == "linear")
    failed = len(records) - len(usable)
    log.info("%d records, %d failed", len(records), failed)
    return EXIT_OK


def cmd_plot(args) -> int:
    records = read_records(args.records)
    emit_plot(records, args.out, prediction=not args.no_prediction)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cycleturan", description=__doc__.splitlines()[0])
    ap.add_argument("--log-level", default="WARNING")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a random or complete host in .hg format")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--m", type=int)
    p.add_argument("--complete", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    def add_family(q):
        q.add_argument("--family", choices=[LINEAR, BERGE, BERGE_UPTO], default=LINEAR)
        q.add_argument("--length", type=int, default=4)

    p = sub.add_parser("enum", help="count or list cycle copies in a host")
    p.add_argument("host")
    add_family(p)
    p.add_argument("--identity", choices=["witness", "edges"], default="witness")
    p.add_argument("--cap", type=int, default=10**7)
    p.add_argument("--list", action="store_true", help="emit copies as JSON lines")
    p.add_argument("--out")
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("supersat", help="build a balanced collection of copies")
    p.add_argument("host")
    p.add_argument("--ell", type=int, default=2)
    p.add_argument("--variant", choices=["linear", "berge"], default="linear")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--K", type=float, default=0.1)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--cap", type=int, default=10**7)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_supersat)

    p = sub.add_parser("containers", help="iterate container steps from the complete host")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--ell", type=int, default=2)
    p.add_argument("--t-target", type=float, required=True)
    p.add_argument("--variant", choices=VARIANTS, required=True)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-containers", type=int, default=200_000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_containers)

    p = sub.add_parser("ex", help="exact or greedy Turan number of a host")
    p.add_argument("host")
    add_family(p)
    p.add_argument("--budget", type=int, default=2_000_000, help="branch-and-bound node budget")
    p.add_argument("--greedy-only", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_ex)

    p = sub.add_parser("sweep", help="run a grid from a YAML or JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--out-dir")
    p.add_argument("--fresh", action="store_true", help="ignore records already on disk")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("plot", help="render records as SVG")
    p.add_argument("records")
    p.add_argument("--out", required=True)
    p.add_argument("--no-prediction", action="store_true")
    p.set_defaults(func=cmd_plot)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ValidationError, TooLarge, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_PARTIAL
    except CycleTuranError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
