"""Command-line surface.

Exit codes: 0 success (witness found / verified / table emitted);
1 proven nonexistence (exists) or verification failure (verify);
2 invalid input; 3 budget exhausted before the answer was certain.
Diagnostics go to stderr, machine output (JSON/CSV) to stdout or --out.
"""

from __future__ import annotations

import argparse
import io
import os
import sys
import time
from dataclasses import replace

from . import __version__, files, reference
from .bounds import analytic_upper, bounds_table, decomposition_upper, BOUND_VARIANTS
from .errors import BudgetExhaustedError, InvalidInputError
from .isomorphism import canonical_masks
from .nicg import is_nicg_removal
from .search import (
    SearchConfig,
    SearchOutcome,
    exists_nicg,
    randomized_search,
    resume_solve,
    solve_dfs,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_BAD_INPUT = 2
EXIT_BUDGET = 3


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("NICG_LAB_THREADS", "1")))
    except ValueError:
        return 1


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run_meta(args, elapsed_ms: int | None = None) -> dict:
    meta = {
        "tool_version": __version__,
        "seed": getattr(args, "seed", None),
        "prng_name": "mt19937" if getattr(args, "seed", None) is not None else None,
    }
    if elapsed_ms is not None:
        meta["elapsed_ms"] = elapsed_ms
    return meta


def _witness_meta(args) -> dict:
    return {
        "tool_version": __version__,
        "seed": getattr(args, "seed", None),
        "prng_name": "mt19937" if getattr(args, "seed", None) is not None else None,
    }


def _stats_payload(outcome: SearchOutcome) -> dict:
    stats = outcome.stats.as_dict()
    stats.pop("elapsed", None)  # timing lives in meta only
    return stats


def _outcome_payload(args, d: int, outcome: SearchOutcome, elapsed_ms: int) -> dict:
    # independent re-check before anything reaches the output
    for w in outcome.witnesses:
        if len(w) and not is_nicg_removal(w):
            raise InvalidInputError(
                "internal error: a witness failed the removal re-check"
            )
    wmeta = _witness_meta(args)
    return {
        "dim": d,
        "n": outcome.best_cardinality,
        "exact": outcome.exact,
        "witnesses": [files.witness_payload(w, wmeta) for w in outcome.witnesses],
        "stats": _stats_payload(outcome),
        "meta": _run_meta(args, elapsed_ms),
    }


def _parse_restriction(text: str | None):
    if text is None:
        return None
    try:
        fields = dict(part.split("=", 1) for part in text.split(","))
        return (int(fields["comp"]), int(fields["bit"]))
    except (ValueError, KeyError) as exc:
        raise InvalidInputError(
            f"restriction must look like comp=J,bit=B, got {text!r}"
        ) from exc


def _config_from_args(args, mode: str) -> SearchConfig:
    return SearchConfig(
        dim=args.dim,
        mode=mode,
        prune={"buckets": "buckets"}.get(args.prune, args.prune),
        nicg_test=args.nicg,
        target_size=getattr(args, "size", None),
        restriction=_parse_restriction(getattr(args, "restrict", None)),
        seed=getattr(args, "seed", None),
        node_budget=getattr(args, "node_budget", None),
        time_budget_secs=getattr(args, "budget_secs", None),
        restart_nodes=getattr(args, "restart_nodes", None) or 50_000,
        checkpoint_path=getattr(args, "checkpoint", None),
        checkpoint_every=getattr(args, "every", None) or 1_000_000,
        threads=getattr(args, "threads", None) or 1,
    ).validate()


# -- subcommands -------------------------------------------------------------


def _cmd_exact(args) -> int:
    t0 = time.monotonic()
    mode = "incremental-exact" if args.strategy == "incremental" else "binary-search"
    cfg = _config_from_args(args, mode)
    if cfg.checkpoint_path and os.path.exists(cfg.checkpoint_path):
        outcome = _exact_with_resume(cfg)
    else:
        outcome = solve_dfs(cfg)
    if cfg.checkpoint_path and os.path.exists(cfg.checkpoint_path):
        os.remove(cfg.checkpoint_path)  # run completed; the state is stale
    elapsed_ms = int((time.monotonic() - t0) * 1000)
    payload = _outcome_payload(args, args.dim, outcome, elapsed_ms)
    _emit(files.dump_json(payload), args.out)
    return EXIT_OK


def _exact_with_resume(cfg: SearchConfig) -> SearchOutcome:
    """Incremental driver that picks up an interrupted target run.

    Targets below the interrupted one were already passed and are re-run
    fresh (cheap greedy successes) without touching the checkpoint file.
    """
    ckpt = files.load_checkpoint(cfg.checkpoint_path)
    resume_target = ckpt["config"].get("target_size")
    from .search import _accumulate, SearchStats

    agg = SearchStats()
    best_witness = None
    n = 1
    limit = (1 << cfg.dim) - 1
    result = 0
    while n <= limit:
        sub = replace(cfg, mode="exists-at-size", target_size=n).validate()
        if n == resume_target:
            outcome = resume_solve(sub, cfg.checkpoint_path)
        else:
            if resume_target is not None and n < resume_target:
                sub = replace(sub, checkpoint_path=None)
            outcome = solve_dfs(sub)
        _accumulate(agg, outcome.stats)
        if outcome.best_cardinality >= n:
            best_witness = outcome.witnesses[0]
            n += 1
            continue
        if not outcome.exact:
            raise BudgetExhaustedError(f"budget exhausted while testing cardinality {n}")
        break
    result = n - 1
    witnesses = [best_witness] if best_witness is not None else []
    return SearchOutcome(result, witnesses, True, agg)


def _cmd_exists(args) -> int:
    t0 = time.monotonic()
    cfg = _config_from_args(args, "exists-at-size")
    witness = exists_nicg(args.dim, args.size, cfg)
    elapsed_ms = int((time.monotonic() - t0) * 1000)
    if witness is None:
        payload = {
            "dim": args.dim,
            "size": args.size,
            "exists": False,
            "exact": True,
            "meta": _run_meta(args, elapsed_ms),
        }
        _emit(files.dump_json(payload), args.out)
        return EXIT_NEGATIVE
    if not is_nicg_removal(witness):
        raise InvalidInputError("internal error: witness failed the removal re-check")
    payload = {
        "dim": args.dim,
        "size": args.size,
        "exists": True,
        "exact": True,
        "witnesses": [files.witness_payload(witness, _witness_meta(args))],
        "meta": _run_meta(args, elapsed_ms),
    }
    _emit(files.dump_json(payload), args.out)
    return EXIT_OK


def _cmd_lower(args) -> int:
    t0 = time.monotonic()
    cfg = _config_from_args(args, "randomized")
    outcome = randomized_search(args.dim, args.seed, args.budget_secs, cfg)
    # never trust the search path: re-check everything we are about to report
    verified = [w for w in outcome.witnesses if is_nicg_removal(w)]
    if len(verified) != len(outcome.witnesses):
        print("error: a reported witness failed the removal re-check", file=sys.stderr)
        return EXIT_BAD_INPUT
    elapsed_ms = int((time.monotonic() - t0) * 1000)
    payload = _outcome_payload(args, args.dim, outcome, elapsed_ms)
    payload["lower_bound"] = outcome.best_cardinality
    _emit(files.dump_json(payload), args.out)
    return EXIT_OK


def _cmd_upper(args) -> int:
    t0 = time.monotonic()
    if args.method == "inequality":
        if args.variant is None:
            raise InvalidInputError("--method inequality needs --variant")
        value = analytic_upper(args.dim, args.variant)
        payload = {
            "dim": args.dim,
            "method": "inequality",
            "variant": args.variant,
            "upper": value,
            "meta": _run_meta(args, int((time.monotonic() - t0) * 1000)),
        }
        _emit(files.dump_json(payload), args.out)
        return EXIT_OK
    if args.prev is None:
        raise InvalidInputError("--method decomposition needs --prev")
    cfg = _config_from_args(args, "enumerate-all-max")
    bound, restricted_max = decomposition_upper(args.dim, args.prev, cfg)
    payload = {
        "dim": args.dim,
        "method": "decomposition",
        "prev": args.prev,
        "restricted_max": restricted_max,
        "upper": bound,
        "exact": True,
        "meta": _run_meta(args, int((time.monotonic() - t0) * 1000)),
    }
    _emit(files.dump_json(payload), args.out)
    return EXIT_OK


def _collect_table_inputs(paths, with_known):
    exact_values: dict[int, int] = {}
    witness_sizes: dict[int, int] = {}
    extra_uppers: dict[int, tuple[int, str]] = {}
    if with_known:
        for d in sorted(reference.KNOWN_EXACT):
            witness = reference.known_witness(d)
            if not is_nicg_removal(witness):
                raise InvalidInputError(f"bundled witness for d={d} failed verification")
            exact_values[d] = reference.KNOWN_EXACT[d]
    for path in paths:
        doc = files.load_run_container(path)
        if doc.get("method") == "decomposition":
            d = doc["dim"]
            cur = extra_uppers.get(d)
            if cur is None or doc["upper"] < cur[0]:
                extra_uppers[d] = (doc["upper"], "decomposition")
            continue
        witnesses = [files.parse_witness_record(r) for r in doc.get("witnesses", [])]
        for w in witnesses:
            if not is_nicg_removal(w):
                raise InvalidInputError(f"{path}: witness failed the removal re-check")
            witness_sizes[w.dim] = max(witness_sizes.get(w.dim, 0), len(w))
        if doc.get("exact") and "n" in doc and witnesses:
            d = witnesses[0].dim
            exact_values[d] = max(exact_values.get(d, 0), doc["n"])
    return exact_values, witness_sizes, extra_uppers


def _cmd_table(args) -> int:
    exact_values, witness_sizes, extra_uppers = _collect_table_inputs(
        args.inputs or [], args.with_known
    )
    rows = bounds_table(args.max_dim, exact_values, witness_sizes, extra_uppers)
    if args.format == "json":
        payload = {
            "max_dim": args.max_dim,
            "rows": [r.as_dict() for r in rows],
            "meta": _run_meta(args),
        }
        _emit(files.dump_json(payload), args.out)
    else:
        buf = io.StringIO()
        buf.write("d,lower,upper,lower_source,upper_source,exact\n")
        for r in rows:
            buf.write(
                f"{r.d},{r.lower},{r.upper},{r.lower_source},{r.upper_source},"
                f"{'true' if r.exact else 'false'}\n"
            )
        _emit(buf.getvalue(), args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        witnesses = files.load_solution_file(args.input)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    results = []
    ok = True
    for i, w in enumerate(witnesses):
        good = is_nicg_removal(w)
        ok = ok and good
        results.append(
            {
                "index": i,
                "dim": w.dim,
                "cardinality": len(w),
                "nicg": good,
            }
        )
        if not good:
            print(f"witness {i}: NOT a non-redundant generator set", file=sys.stderr)
    payload = {
        "input": args.input,
        "count": len(witnesses),
        "all_verified": ok,
        "witnesses": results,
        "meta": _run_meta(args),
    }
    _emit(files.dump_json(payload), args.out)
    return EXIT_OK if ok else EXIT_NEGATIVE


def _cmd_canon(args) -> int:
    witnesses = files.load_solution_file(args.input)
    if not witnesses:
        raise InvalidInputError("no witnesses in input")
    dims = {w.dim for w in witnesses}
    if len(dims) != 1:
        raise InvalidInputError(f"mixed dimensions in input: {sorted(dims)}")
    d = dims.pop()
    keys = sorted({canonical_masks(w.masks, d) for w in witnesses})
    payload = {
        "dim": d,
        "count": len(witnesses),
        "classes": len(keys),
        "keys": [[files.mask_to_string(m, d) for m in key] for key in keys],
        "meta": _run_meta(args),
    }
    _emit(files.dump_json(payload), args.out)
    return EXIT_OK


# -- parser -----------------------------------------------------------------


def _add_search_flags(p, prune_default="weak"):
    p.add_argument("--prune", choices=["none", "weak", "canonical", "buckets"],
                   default=prune_default)
    p.add_argument("--nicg", choices=["gauss", "removal"], default="gauss")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.add_argument("--node-budget", type=int, default=None)
    p.add_argument("--budget-secs", type=float, default=None)
    p.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nicg-lab",
        description="exact values, bounds and witnesses for maximum "
        "non-redundant integer cone generator sets over {0,1}^d",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="exact maximum cardinality for one dimension")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--strategy", choices=["incremental", "binary"],
                   default="incremental")
    p.add_argument("--checkpoint", default=None)
    p.add_argument("--every", type=int, default=1_000_000,
                   help="checkpoint cadence in visited nodes")
    _add_search_flags(p)
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("exists", help="find or refute a generator set of a given size")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--restrict", default=None, metavar="comp=J,bit=B")
    _add_search_flags(p)
    p.set_defaults(func=_cmd_exists)

    p = sub.add_parser("lower", help="randomized restarts for lower-bound witnesses")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--budget-secs", type=float, required=True)
    p.add_argument("--restart-nodes", type=int, default=50_000)
    p.add_argument("--prune", choices=["none", "weak"], default="weak")
    p.add_argument("--nicg", choices=["gauss", "removal"], default="gauss")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_lower, threads=1)

    p = sub.add_parser("upper", help="analytic or decomposition upper bounds")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--method", choices=["inequality", "decomposition"],
                   required=True)
    p.add_argument("--variant", choices=list(BOUND_VARIANTS), default=None)
    p.add_argument("--prev", type=int, default=None,
                   help="upper bound for dimension d-1 (decomposition)")
    _add_search_flags(p)
    p.set_defaults(func=_cmd_upper)

    p = sub.add_parser("table", help="assemble the per-dimension bounds table")
    p.add_argument("--max-dim", type=int, required=True)
    p.add_argument("--inputs", nargs="*", default=[])
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--with-known", action="store_true",
                   help="include the bundled exact values for d <= 6")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("verify", help="re-check every witness in a file")
    p.add_argument("--input", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("canon", help="canonical keys and class count of witnesses")
    p.add_argument("--input", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_canon)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExhaustedError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
