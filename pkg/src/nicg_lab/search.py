"""Depth-first search for maximum non-redundant generator sets.

The engine walks the classic include/exclude subset tree in ascending mask
order: every node is an NICG set, extended only by candidates larger than
its maximum element.  Three facts carry the performance:

* downward monotonicity - any subset of an NICG set is NICG - so a
  candidate that fails next to X can be dropped from the entire subtree
  below X (nodes filter their candidate list once, children inherit it);
* a candidate column that is rationally independent of X's columns cannot
  create a new coefficient relation, so the extended set inherits NICG
  without running the decider (an incremental integer echelon of the
  column space detects independence in O(d * rank));
* two candidates with equal popcount that agree on every position already
  pinned by X extend it to permutation-isomorphic states, so only the
  first of each class is branched (weak pruning; the lexicographically
  first member of every isomorphism class provably survives the skips,
  which keeps maxima and the canonical census exact).

Canonical pruning replaces the weak skip with a visited store of full
canonical keys (optionally bucketed by signature); on store overflow the
engine silently degrades to weak pruning.

The traversal keeps an explicit frame stack, which is what makes
checkpoint/resume exact: a frontier of (prefix, next-position) pairs plus
counters reconstructs the run, replaying the cheap filter phases without
recounting them.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, replace
from math import gcd
from typing import Optional

from . import files
from .core import VecSet, check_dim, nonzero_masks
from .errors import BudgetExhaustedError, InvalidInputError
from .isomorphism import VisitedStore, canonical_masks
from .nicg import is_nicg_removal_masks
from ._fastpath import GaussTester

MODES = (
    "incremental-exact",
    "binary-search",
    "exists-at-size",
    "randomized",
    "enumerate-all-max",
)
PRUNES = ("none", "weak", "canonical", "buckets")
NICG_TESTS = ("gauss", "removal")

PRNG_NAME = "mt19937"  # random.Random; reproducible per (generator, seed)

#: wall-clock budget is polled once per this many branch attempts
_TIME_POLL = 512


@dataclass
class SearchConfig:
    dim: int
    mode: str = "enumerate-all-max"
    prune: str = "weak"
    nicg_test: str = "gauss"
    target_size: Optional[int] = None
    restriction: Optional[tuple[int, int]] = None  # (component 1-based, bit)
    seed: Optional[int] = None
    node_budget: Optional[int] = None
    time_budget_secs: Optional[float] = None
    restart_nodes: int = 50_000
    checkpoint_path: Optional[str] = None
    checkpoint_every: int = 1_000_000
    threads: int = 1
    visited_capacity: int = 1 << 24
    force_pure_gauss: bool = False

    def validate(self) -> "SearchConfig":
        check_dim(self.dim)
        if self.mode not in MODES:
            raise InvalidInputError(f"unknown mode {self.mode!r}")
        if self.prune not in PRUNES:
            raise InvalidInputError(f"unknown prune setting {self.prune!r}")
        if self.nicg_test not in NICG_TESTS:
            raise InvalidInputError(f"unknown nicg test {self.nicg_test!r}")
        if self.mode == "exists-at-size":
            if self.target_size is None or not (
                1 <= self.target_size <= (1 << self.dim) - 1
            ):
                raise InvalidInputError(
                    "exists-at-size needs target_size in [1, 2^d - 1]"
                )
        if self.mode == "randomized":
            if self.seed is None:
                raise InvalidInputError("randomized mode needs a seed")
            if self.checkpoint_path:
                raise InvalidInputError(
                    "randomized restarts cannot be checkpointed"
                )
        if self.restriction is not None:
            comp, bit = self.restriction
            if not (1 <= comp <= self.dim) or bit not in (0, 1):
                raise InvalidInputError(f"bad restriction {self.restriction!r}")
        if self.threads < 1:
            raise InvalidInputError("threads must be >= 1")
        if self.threads > 1 and self.mode == "randomized":
            raise InvalidInputError("randomized mode is single-threaded")
        if self.threads > 1 and self.checkpoint_path:
            raise InvalidInputError("checkpointing requires a single thread")
        return self

    def snapshot(self) -> dict:
        """The part of the config a checkpoint must match to be resumable."""
        return {
            "dim": self.dim,
            "mode": self.mode,
            "prune": self.prune,
            "nicg_test": self.nicg_test,
            "target_size": self.target_size,
            "restriction": list(self.restriction) if self.restriction else None,
        }


@dataclass
class SearchStats:
    nodes_visited: int = 0
    nicg_tests: int = 0
    pruned_weak: int = 0
    pruned_canonical: int = 0
    solutions_found: int = 0
    elapsed: float = 0.0
    prng_name: Optional[str] = None
    seed: Optional[int] = None
    nicg_backend: str = ""

    def as_dict(self) -> dict:
        return {
            "nodes_visited": self.nodes_visited,
            "nicg_tests": self.nicg_tests,
            "pruned_weak": self.pruned_weak,
            "pruned_canonical": self.pruned_canonical,
            "solutions_found": self.solutions_found,
            "elapsed": self.elapsed,
            "prng_name": self.prng_name,
            "seed": self.seed,
            "nicg_backend": self.nicg_backend,
        }


@dataclass
class SearchOutcome:
    best_cardinality: int
    witnesses: list[VecSet]
    exact: bool
    stats: SearchStats


def candidate_universe(cfg: SearchConfig) -> list[int]:
    masks = nonzero_masks(cfg.dim)
    if cfg.restriction is not None:
        comp, bit = cfg.restriction
        masks = [m for m in masks if (m >> (comp - 1)) & 1 == bit]
    return masks


class _Frame:
    __slots__ = ("x", "fp", "survivors", "pos", "branched_sigs")

    def __init__(self, x, fp, survivors, pos=0, branched_sigs=None):
        self.x = x
        self.fp = fp
        self.survivors = survivors
        self.pos = pos
        self.branched_sigs = branched_sigs if branched_sigs is not None else set()


class _Engine:
    """One single-threaded traversal under a fixed configuration."""

    def __init__(self, cfg: SearchConfig):
        self.cfg = cfg
        self.d = cfg.dim
        self.universe = candidate_universe(cfg)
        self.stats = SearchStats(
            prng_name=PRNG_NAME if cfg.seed is not None else None, seed=cfg.seed
        )
        if cfg.nicg_test == "gauss":
            self._gauss = GaussTester(self.d, force_pure=cfg.force_pure_gauss)
            self.stats.nicg_backend = self._gauss.backend
        else:
            self._gauss = None
            self.stats.nicg_backend = "removal"
        self.prune = cfg.prune
        self.store = (
            VisitedStore(cfg.visited_capacity, bucketed=(cfg.prune == "buckets"))
            if cfg.prune in ("canonical", "buckets")
            else None
        )
        self.rng = random.Random(cfg.seed) if cfg.mode == "randomized" else None
        self.best = 0
        self.witnesses: list[tuple[int, ...]] = [()]
        self.exact = True
        self.found_target: Optional[tuple[int, ...]] = None
        self._replaying = False
        self._deadline: Optional[float] = None
        self._nodes_cap: Optional[int] = None
        self._poll = 0
        self._t0 = time.monotonic()

    # -- echelon bookkeeping (gauss mode): column-space reduction ----------

    def _qreduce(self, qrows, mask):
        d = self.d
        v = [(mask >> i) & 1 for i in range(d)]
        for piv, row in qrows:
            if v[piv]:
                p = row[piv]
                f = v[piv]
                for j in range(d):
                    v[j] = p * v[j] - f * row[j]
        if any(v):
            g = 0
            for entry in v:
                g = gcd(g, entry)
            if g > 1:
                v = [entry // g for entry in v]
            return tuple(v)
        return None

    def _extend_qrows(self, qrows, mask):
        res = self._qreduce(qrows, mask)
        if res is None:
            return qrows
        piv = max(j for j in range(self.d) if res[j])
        return tuple(sorted(qrows + ((piv, res),), reverse=True))

    # -- NICG verdicts ------------------------------------------------------

    def _test(self, masks) -> bool:
        if not self._replaying:
            self.stats.nicg_tests += 1
        if self._gauss is not None:
            return self._gauss(masks)
        return is_nicg_removal_masks(masks, self.d)

    def _filter(self, x, fp, qrows, cands) -> list[int]:
        """One NICG verdict per candidate (shared inside weak classes);
        failures are excluded from the whole subtree below x."""
        if self._gauss is not None and cands:
            flags = self._gauss.filter_batch(x, qrows, cands)
            if flags is not None:
                if not self._replaying:
                    nc = len(cands)
                    independent = 0
                    for t in range(nc):
                        if flags[t] == 2:
                            independent += 1
                    self.stats.nicg_tests += nc - independent
                return [c for c, f in zip(cands, flags) if f]
        share = self.prune == "weak"
        d = self.d
        out = []
        verdicts: dict[int, bool] = {}
        for c in cands:
            if share:
                sig = (c.bit_count() << d) | (c & fp)
                ok = verdicts.get(sig)
                if ok is None:
                    if self._gauss is not None and self._qreduce(qrows, c) is not None:
                        ok = True  # independent column: NICG inherited
                    else:
                        ok = self._test(x + (c,))
                    verdicts[sig] = ok
            else:
                if self._gauss is not None and self._qreduce(qrows, c) is not None:
                    ok = True
                else:
                    ok = self._test(x + (c,))
            if ok:
                out.append(c)
        return out

    # -- bookkeeping ----------------------------------------------------------

    def _record(self, x) -> None:
        k = len(x)
        if k < self.best:
            return
        ordered = tuple(sorted(x))  # randomized order builds unsorted paths
        if k > self.best:
            self.best = k
            self.witnesses = [ordered]
        else:
            self.witnesses.append(ordered)
        self.stats.solutions_found += 1

    def _over_budget(self) -> bool:
        if self._nodes_cap is not None and self.stats.nodes_visited >= self._nodes_cap:
            return True
        if self._deadline is not None:
            self._poll += 1
            if self._poll >= _TIME_POLL:
                self._poll = 0
                if time.monotonic() >= self._deadline:
                    return True
        return False

    # -- checkpointing --------------------------------------------------------

    def _checkpoint_payload(self, stack) -> dict:
        frontier = []
        for f in stack:
            nxt = (
                files.mask_to_string(f.survivors[f.pos], self.d)
                if f.pos < len(f.survivors)
                else None
            )
            frontier.append(
                {
                    "prefix": [files.mask_to_string(m, self.d) for m in f.x],
                    "next_index": f.pos,
                    "next_vector": nxt,
                }
            )
        best_payload = {
            "dim": self.d,
            "n": self.best,
            "exact": False,
            "witnesses": [
                files.witness_payload(VecSet(self.d, w)) for w in self.witnesses
            ],
        }
        return {
            "config": self.cfg.snapshot(),
            "seed": self.cfg.seed,
            "best_so_far": best_payload,
            "frontier": frontier,
            "nodes_visited": self.stats.nodes_visited,
            "stats": {
                "nicg_tests": self.stats.nicg_tests,
                "pruned_weak": self.stats.pruned_weak,
                "pruned_canonical": self.stats.pruned_canonical,
                "solutions_found": self.stats.solutions_found,
            },
        }

    def _restore(self, checkpoint: dict):
        """Rebuild the frame stack by replaying the filter phases."""
        snap = checkpoint["config"]
        mine = self.cfg.snapshot()
        if snap != mine:
            raise InvalidInputError(
                f"checkpoint was written for config {snap}, current is {mine}"
            )
        self._replaying = True
        stack: list[_Frame] = []
        qrows_stack: list[tuple] = []
        x: tuple[int, ...] = ()
        fp = 0
        qrows: tuple = ()
        cands = list(self.universe)
        for level, rec in enumerate(checkpoint["frontier"]):
            prefix = tuple(files.mask_from_string(s) for s in rec["prefix"])
            if len(prefix) != level or prefix[: len(x)] != x:
                raise InvalidInputError("checkpoint frontier is not a prefix chain")
            if level > 0:
                parent = stack[-1]
                c = prefix[-1]
                if parent.survivors[parent.pos - 1] != c:
                    raise InvalidInputError("checkpoint frontier/candidate mismatch")
                cands = parent.survivors[parent.pos :]
                x = prefix
                fp |= c
                if self._gauss is not None:
                    qrows = self._extend_qrows(qrows, c)
            survivors = self._filter(x, fp, qrows, cands)
            pos = rec["next_index"]
            if not 0 <= pos <= len(survivors):
                raise InvalidInputError("checkpoint position out of range")
            if rec.get("next_vector") is not None and pos < len(survivors):
                if files.mask_from_string(rec["next_vector"]) != survivors[pos]:
                    raise InvalidInputError("checkpoint next_vector mismatch")
            sigs = set()
            if self.prune == "weak":
                for q in range(pos):
                    c2 = survivors[q]
                    sigs.add((c2.bit_count() << self.d) | (c2 & fp))
            stack.append(_Frame(x, fp, survivors, pos, sigs))
            qrows_stack.append(qrows)
        self.stats.nodes_visited = checkpoint["nodes_visited"]
        counters = checkpoint.get("stats", {})
        self.stats.nicg_tests = counters.get("nicg_tests", 0)
        self.stats.pruned_weak = counters.get("pruned_weak", 0)
        self.stats.pruned_canonical = counters.get("pruned_canonical", 0)
        self.stats.solutions_found = counters.get("solutions_found", 0)
        best = checkpoint.get("best_so_far") or {}
        self.best = best.get("n", 0)
        self.witnesses = [
            tuple(files.mask_from_string(s) for s in rec["vectors"])
            for rec in best.get("witnesses", [])
        ] or [()]
        self._replaying = False
        return stack, qrows_stack

    # -- main traversal ---------------------------------------------------------

    def run(self, resume_from: Optional[dict] = None) -> SearchOutcome:
        cfg = self.cfg
        if cfg.time_budget_secs is not None:
            self._deadline = self._t0 + cfg.time_budget_secs
        if cfg.node_budget is not None:
            self._nodes_cap = cfg.node_budget

        if cfg.mode == "randomized":
            self._run_randomized()
        elif resume_from is not None:
            stack, qrows_stack = self._restore(resume_from)
            self._dfs(stack, qrows_stack)
        else:
            root = _Frame((), 0, self._filter((), 0, (), self.universe))
            self.stats.nodes_visited += 1
            self._record(())
            stack, qrows_stack = [root], [()]
            self._maybe_checkpoint(stack)
            self._dfs(stack, qrows_stack)

        self.stats.elapsed = time.monotonic() - self._t0
        if cfg.mode == "randomized":
            self.exact = False
        witnesses = sorted(set(self.witnesses))
        return SearchOutcome(
            best_cardinality=self.best,
            witnesses=[VecSet(self.d, w) for w in witnesses],
            exact=self.exact,
            stats=self.stats,
        )

    def _maybe_checkpoint(self, stack, force=False) -> None:
        cfg = self.cfg
        if not cfg.checkpoint_path:
            return
        if force or (
            cfg.checkpoint_every > 0
            and self.stats.nodes_visited % cfg.checkpoint_every == 0
        ):
            files.save_atomic(self._checkpoint_payload(stack), cfg.checkpoint_path)

    def _dfs(self, stack, qrows_stack) -> None:
        cfg = self.cfg
        target = cfg.target_size if cfg.mode == "exists-at-size" else None
        d = self.d
        while stack:
            if self._over_budget():
                self.exact = False
                self._maybe_checkpoint(stack, force=True)
                return
            frame = stack[-1]
            remaining = len(frame.survivors) - frame.pos
            if remaining <= 0 or (
                target is not None and len(frame.x) + remaining < target
            ):
                stack.pop()
                qrows_stack.pop()
                continue
            c = frame.survivors[frame.pos]
            frame.pos += 1
            if self.prune == "weak":
                sig = (c.bit_count() << d) | (c & frame.fp)
                if sig in frame.branched_sigs:
                    self.stats.pruned_weak += 1
                    continue
                frame.branched_sigs.add(sig)
            child_x = frame.x + (c,)
            if self.store is not None:
                if self.store.seen_or_add(canonical_masks(child_x, d)):
                    self.stats.pruned_canonical += 1
                    continue
                if self.store.degraded:
                    # out of room: weak pruning only from here on
                    self.prune = "weak"
                    self.store = None
            self.stats.nodes_visited += 1
            self._record(child_x)
            if target is not None and len(child_x) == target:
                self.found_target = child_x
                self.witnesses = [tuple(sorted(child_x))]
                self.best = target
                return
            if (
                cfg.mode == "randomized"
                and cfg.target_size is not None
                and self.best >= cfg.target_size
            ):
                return
            qrows = qrows_stack[-1]
            child_qrows = (
                self._extend_qrows(qrows, c) if self._gauss is not None else ()
            )
            child_survivors = self._filter(
                child_x, frame.fp | c, child_qrows, frame.survivors[frame.pos :]
            )
            if self.rng is not None:
                self.rng.shuffle(child_survivors)
            stack.append(_Frame(child_x, frame.fp | c, child_survivors))
            qrows_stack.append(child_qrows)
            self._maybe_checkpoint(stack)

    def _run_randomized(self) -> None:
        cfg = self.cfg
        total_cap = self._nodes_cap
        while True:
            if self._deadline is not None and time.monotonic() >= self._deadline:
                break
            if total_cap is not None and self.stats.nodes_visited >= total_cap:
                break
            restart_cap = self.stats.nodes_visited + cfg.restart_nodes
            self._nodes_cap = (
                min(total_cap, restart_cap) if total_cap is not None else restart_cap
            )
            root = _Frame((), 0, self._filter((), 0, (), self.universe))
            self.rng.shuffle(root.survivors)
            self.stats.nodes_visited += 1
            self._record(())
            stack, qrows_stack = [root], [()]
            self._dfs(stack, qrows_stack)
            if cfg.target_size is not None and self.best >= cfg.target_size:
                break
            if not stack:
                break  # space exhausted: restarts cannot add anything
        self.exact = False


# -- parallel fan-out -----------------------------------------------------------


def _branch_positions(cfg: SearchConfig, root_survivors: list[int]) -> list[int]:
    """Root positions a serial run would branch (dedup weak classes)."""
    positions = []
    seen = set()
    for i, c in enumerate(root_survivors):
        if cfg.prune == "weak":
            sig = (c.bit_count() << cfg.dim) | 0  # fp = 0 at the root
            if sig in seen:
                continue
            seen.add(sig)
        positions.append(i)
    return positions


def _run_root_slice(
    cfg: SearchConfig, root_survivors: list[int], positions: list[int]
) -> SearchOutcome:
    """Explore only the subtrees rooted at the given root branch positions."""
    engine = _Engine(cfg)
    if cfg.time_budget_secs is not None:
        engine._deadline = engine._t0 + cfg.time_budget_secs
    if cfg.node_budget is not None:
        engine._nodes_cap = cfg.node_budget
    d = engine.d
    target = cfg.target_size if cfg.mode == "exists-at-size" else None
    for pos in positions:
        if engine.found_target is not None or not engine.exact:
            break
        c = root_survivors[pos]
        child_x = (c,)
        if engine.store is not None and engine.store.seen_or_add(
            canonical_masks(child_x, d)
        ):
            engine.stats.pruned_canonical += 1
            continue
        engine.stats.nodes_visited += 1
        engine._record(child_x)
        if target is not None and 1 == target:
            engine.found_target = child_x
            engine.witnesses = [tuple(sorted(child_x))]
            engine.best = target
            break
        qrows = engine._extend_qrows((), c) if engine._gauss is not None else ()
        survivors = engine._filter(child_x, c, qrows, root_survivors[pos + 1 :])
        engine._dfs([_Frame(child_x, c, survivors)], [qrows])
    engine.stats.elapsed = time.monotonic() - engine._t0
    witnesses = sorted(set(engine.witnesses))
    return SearchOutcome(
        best_cardinality=engine.best,
        witnesses=[VecSet(d, w) for w in witnesses],
        exact=engine.exact,
        stats=engine.stats,
    )


def _parallel_worker(args) -> SearchOutcome:
    cfg, root_survivors, positions = args
    return _run_root_slice(cfg, root_survivors, positions)


def _merge_outcomes(parts: list[SearchOutcome], cfg: SearchConfig) -> SearchOutcome:
    best = max(p.best_cardinality for p in parts)
    witnesses = sorted(
        {w.masks for p in parts if p.best_cardinality == best for w in p.witnesses}
    )
    stats = SearchStats(prng_name=None, seed=cfg.seed)
    for p in parts:
        stats.nodes_visited += p.stats.nodes_visited
        stats.nicg_tests += p.stats.nicg_tests
        stats.pruned_weak += p.stats.pruned_weak
        stats.pruned_canonical += p.stats.pruned_canonical
        stats.solutions_found += p.stats.solutions_found
        stats.elapsed = max(stats.elapsed, p.stats.elapsed)
        stats.nicg_backend = p.stats.nicg_backend
    return SearchOutcome(
        best_cardinality=best,
        witnesses=[VecSet(cfg.dim, w) for w in witnesses],
        exact=all(p.exact for p in parts),
        stats=stats,
    )


def _solve_parallel(cfg: SearchConfig) -> SearchOutcome:
    import multiprocessing as mp

    coordinator = _Engine(cfg)
    root_survivors = coordinator._filter((), 0, (), coordinator.universe)
    coordinator.stats.nodes_visited += 1
    coordinator._record(())
    positions = _branch_positions(cfg, root_survivors)

    buckets: list[list[int]] = [[] for _ in range(cfg.threads)]
    for j, pos in enumerate(positions):
        buckets[j % cfg.threads].append(pos)
    worker_cfg = replace(cfg, threads=1, checkpoint_path=None)
    jobs = [(worker_cfg, root_survivors, b) for b in buckets if b]
    parts = [
        SearchOutcome(
            best_cardinality=coordinator.best,
            witnesses=[
                VecSet(cfg.dim, w) for w in sorted(set(coordinator.witnesses))
            ],
            exact=True,
            stats=coordinator.stats,
        )
    ]
    if jobs:
        with mp.get_context("spawn").Pool(len(jobs)) as pool:
            parts.extend(pool.map(_parallel_worker, jobs))
    merged = _merge_outcomes(parts, cfg)
    if cfg.mode == "exists-at-size":
        found = [
            p for p in parts if p.best_cardinality >= (cfg.target_size or 0)
        ]
        if found:
            all_w = sorted({w.masks for p in found for w in p.witnesses})
            merged.best_cardinality = cfg.target_size or 0
            merged.witnesses = [VecSet(cfg.dim, all_w[0])]
            merged.exact = True
    return merged


# -- public entry points ----------------------------------------------------------


def solve_dfs(cfg: SearchConfig, resume_from: Optional[dict] = None) -> SearchOutcome:
    """Run one search under the given configuration.

    ``incremental-exact`` and ``binary-search`` delegate to their drivers;
    the other modes run the DFS engine directly.
    """
    cfg.validate()
    if cfg.mode == "incremental-exact":
        return _exact_incremental(cfg)[2]
    if cfg.mode == "binary-search":
        return _exact_binary(cfg)[2]
    if cfg.threads > 1:
        return _solve_parallel(cfg)
    return _Engine(cfg).run(resume_from=resume_from)


def resume_solve(cfg: SearchConfig, checkpoint_path: str) -> SearchOutcome:
    """Continue an interrupted run from its checkpoint file."""
    cfg.validate()
    if cfg.threads > 1:
        raise InvalidInputError("resume requires a single thread")
    checkpoint = files.load_checkpoint(checkpoint_path)
    return _Engine(cfg).run(resume_from=checkpoint)


def _exists_once(cfg: SearchConfig, k: int) -> SearchOutcome:
    sub = replace(cfg, mode="exists-at-size", target_size=k).validate()
    if sub.threads > 1:
        return _solve_parallel(sub)
    return _Engine(sub).run()


def exists_nicg(
    d: int, k: int, cfg: Optional[SearchConfig] = None
) -> Optional[VecSet]:
    """A size-k NICG witness under the configuration, or None (proven absent).

    Raises BudgetExhaustedError when a budget truncated the search before
    either answer was certain.
    """
    base = cfg if cfg is not None else SearchConfig(dim=d)
    if base.dim != d:
        raise InvalidInputError("config dimension disagrees with d")
    if not 1 <= k <= (1 << d) - 1:
        raise InvalidInputError(f"target size {k} outside [1, 2^{d} - 1]")
    outcome = _exists_once(base, k)
    if outcome.best_cardinality >= k:
        return outcome.witnesses[0]
    if not outcome.exact:
        raise BudgetExhaustedError(
            f"budget exhausted before existence of size {k} was settled"
        )
    return None


def _accumulate(agg: SearchStats, part: SearchStats) -> None:
    agg.nodes_visited += part.nodes_visited
    agg.nicg_tests += part.nicg_tests
    agg.pruned_weak += part.pruned_weak
    agg.pruned_canonical += part.pruned_canonical
    agg.solutions_found += part.solutions_found
    agg.elapsed += part.elapsed
    agg.nicg_backend = part.nicg_backend


def _exact_incremental(cfg: SearchConfig):
    """Grow the target until some cardinality has no NICG set."""
    limit = len(candidate_universe(cfg))
    best_witness: Optional[VecSet] = None
    agg = SearchStats(prng_name=None, seed=cfg.seed)
    n = 1
    while n <= limit:
        outcome = _exists_once(cfg, n)
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
    return result, witnesses, SearchOutcome(result, witnesses, True, agg)


def _paper_interval_upper(d: int) -> int:
    """floor(d * log2 d), the heuristic interval top seeding the bisection."""
    if d < 2:
        return 1
    return (d**d).bit_length() - 1


def _exact_binary(
    cfg: SearchConfig,
    known_lower: Optional[int] = None,
    trace: Optional[list] = None,
):
    """Bisect [lo, hi] with lo = max(d, supplied lower) and hi = the tightest
    of the closed-form bounds and floor(d*log2 d).

    Guesses use the floor midpoint, bumped by one when it lands on the
    already-proven lo (the only informative guess in a two-point interval).
    lo itself is only searched when the bisection never produced a witness,
    and the heuristic interval top is verified upward if converged onto,
    so the result is exact even if the seeded interval was wrong.
    """
    from .bounds import analytic_upper  # deferred: bounds pulls in search

    d = cfg.dim
    limit = len(candidate_universe(cfg))
    if cfg.restriction is None:
        lo = min(max(d, known_lower or 0), limit)
    else:
        lo = min(known_lower or 0, limit)
    hi = max(min(_paper_interval_upper(d), analytic_upper(d, "venn-count"), limit), lo)
    hi_initial = hi
    agg = SearchStats(prng_name=None, seed=cfg.seed)
    best_witness: Optional[VecSet] = None

    def attempt(k: int) -> bool:
        nonlocal best_witness
        if k < 1:
            return True  # the empty set always exists
        if k > limit:
            return False
        if trace is not None:
            trace.append(k)
        outcome = _exists_once(cfg, k)
        _accumulate(agg, outcome.stats)
        if outcome.best_cardinality >= k:
            best_witness = outcome.witnesses[0]
            return True
        if not outcome.exact:
            raise BudgetExhaustedError(f"budget exhausted while testing cardinality {k}")
        return False

    while lo < hi:
        mid = max((lo + hi) // 2, lo + 1)
        if attempt(mid):
            lo = mid
        else:
            hi = mid - 1
    if lo > 0 and (best_witness is None or len(best_witness) < lo):
        if not attempt(lo):
            # the supplied floor was wrong; bisect the rest from scratch
            hi = lo - 1
            lo = 0
            while lo < hi:
                mid = max((lo + hi) // 2, lo + 1)
                if attempt(mid):
                    lo = mid
                else:
                    hi = mid - 1
    while lo == hi_initial and attempt(lo + 1):
        lo += 1
        hi_initial = lo
    witnesses = [best_witness] if best_witness is not None else []
    return lo, witnesses, SearchOutcome(lo, witnesses, True, agg)


def exact_n(d: int, cfg: Optional[SearchConfig] = None) -> tuple[int, list[VecSet]]:
    """Exact maximum NICG cardinality by growing the target until it fails."""
    base = cfg if cfg is not None else SearchConfig(dim=d, mode="incremental-exact")
    if base.dim != d:
        raise InvalidInputError("config dimension disagrees with d")
    if base.mode != "incremental-exact":
        raise InvalidInputError("exact_n requires mode == 'incremental-exact'")
    n, witnesses, _ = _exact_incremental(base)
    return n, witnesses


def binary_search_n(
    d: int,
    cfg: Optional[SearchConfig] = None,
    known_lower: Optional[int] = None,
    trace: Optional[list] = None,
) -> tuple[int, list[VecSet]]:
    """Exact maximum NICG cardinality by bisecting the feasibility interval."""
    base = cfg if cfg is not None else SearchConfig(dim=d, mode="binary-search")
    if base.dim != d:
        raise InvalidInputError("config dimension disagrees with d")
    if base.mode != "binary-search":
        raise InvalidInputError("binary_search_n requires mode == 'binary-search'")
    n, witnesses, _ = _exact_binary(base, known_lower=known_lower, trace=trace)
    return n, witnesses


def randomized_search(
    d: int,
    seed: int,
    budget_secs: Optional[float] = None,
    cfg: Optional[SearchConfig] = None,
) -> SearchOutcome:
    """Shuffled-order restarts; reports the best witness found, never exact."""
    base = cfg if cfg is not None else SearchConfig(dim=d)
    if base.dim != d:
        raise InvalidInputError("config dimension disagrees with d")
    base = replace(
        base,
        mode="randomized",
        seed=seed,
        time_budget_secs=(
            budget_secs if budget_secs is not None else base.time_budget_secs
        ),
    ).validate()
    return _Engine(base).run()


#: default cost guard for the full max-solution census
CENSUS_DIM_MAX = 6


def enumerate_all_max_solutions(
    d: int, cfg: Optional[SearchConfig] = None, guard_dim: int = CENSUS_DIM_MAX
) -> list[tuple[int, ...]]:
    """Canonical keys of every maximum-cardinality NICG set, deduplicated."""
    if d > guard_dim:
        raise InvalidInputError(
            f"census guarded to d <= {guard_dim}; raise guard_dim explicitly to override"
        )
    base = cfg if cfg is not None else SearchConfig(dim=d, mode="enumerate-all-max")
    if base.dim != d:
        raise InvalidInputError("config dimension disagrees with d")
    outcome = solve_dfs(replace(base, mode="enumerate-all-max"))
    if not outcome.exact:
        raise BudgetExhaustedError("census requires an exhaustive run")
    return sorted({canonical_masks(w.masks, d) for w in outcome.witnesses})


def verify_outcome(outcome: SearchOutcome) -> bool:
    """Independent re-check of every witness with the removal oracle."""
    return all(is_nicg_removal_masks(w.masks, w.dim) for w in outcome.witnesses)
