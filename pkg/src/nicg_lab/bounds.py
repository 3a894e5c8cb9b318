"""Analytic and search-assisted bounds on the maximum NICG cardinality.

All inequality variants are evaluated with exact integers: a scan starts at
N = d (smaller N never binds, since N(d) >= d) and returns the last N
satisfying the defining inequality.  The logarithmic closed forms are
computed as bit lengths of exact powers, never through floats.

Variants
--------
``eisenbrand``   floor(2d * log2(4d)); the general sparse-cone bound with
                 unit entries.
``two-d-log``    floor(2d * log2 d), d >= 2; the nonnegativity refinement.
``venn-count``   largest N with 2^N <= (N+1)^d.  Each of the 2^N subset sums
                 an N-set can generate is a d-vector with entries in
                 0..N, and distinct subsets of a non-redundant set generate
                 distinct sums.
``zero-row``     largest N with 2^N <= N^d: after normalization every row
                 has a zero, so entries are capped at N-1 (0..N-1 values).
``two-zeros``    largest N with 2^N <= N^(d-1) * (N-1), d >= 5: some row
                 must carry two zeros once N(d) > d + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .core import check_dim
from .errors import InvalidInputError, UnsupportedDimensionError

BOUND_VARIANTS = ("eisenbrand", "two-d-log", "venn-count", "zero-row", "two-zeros")


def _floor_log2_power(base: int, exponent: int) -> int:
    """floor(exponent * log2 base) via the bit length of base**exponent."""
    return (base**exponent).bit_length() - 1


def _scan(d: int, holds) -> int:
    n = d
    while holds(n + 1):
        n += 1
    # rewind if even the start fails (never happens for the shipped variants)
    while n > 0 and not holds(n):
        n -= 1
    return n


def analytic_upper(d: int, variant: str) -> int:
    """Closed-form upper bound for the maximum NICG cardinality."""
    check_dim(d)
    if variant == "eisenbrand":
        return _floor_log2_power(4 * d, 2 * d)
    if variant == "two-d-log":
        if d < 2:
            raise UnsupportedDimensionError("two-d-log needs d >= 2")
        return _floor_log2_power(d, 2 * d)
    if variant == "venn-count":
        return _scan(d, lambda n: 2**n <= (n + 1) ** d)
    if variant == "zero-row":
        if d < 2:
            raise UnsupportedDimensionError(
                "zero-row needs d >= 2 (single-row matrices cannot be normalized)"
            )
        return _scan(d, lambda n: 2**n <= n**d)
    if variant == "two-zeros":
        if d < 5:
            raise UnsupportedDimensionError("two-zeros needs d >= 5 (uses N(d) > d+1)")
        return _scan(d, lambda n: 2**n <= n ** (d - 1) * (n - 1))
    raise InvalidInputError(f"unknown bound variant {variant!r}")


def best_analytic_upper(d: int) -> tuple[int, str]:
    """Tightest closed-form bound available at this dimension."""
    best = None
    src = ""
    for variant in ("venn-count", "zero-row", "two-zeros"):
        if variant == "zero-row" and d < 2:
            continue
        if variant == "two-zeros" and d < 5:
            continue
        value = analytic_upper(d, variant)
        if best is None or value < best:
            best, src = value, variant
    return best, src


def chain_lower(known: Mapping[int, int], dmax: int) -> dict[int, int]:
    """Propagate lower bounds upward: lower(d+1) >= lower(d) + 1, floor d."""
    out: dict[int, int] = {}
    prev = 0
    for d in range(1, dmax + 1):
        value = max(d, prev + 1, known.get(d, 0))
        out[d] = value
        prev = value
    return out


def decomposition_upper(d: int, n_prev: int, cfg=None) -> tuple[int, int]:
    """Upper bound N(d) <= n_prev + m by splitting on the first component.

    Any solution splits into the vectors with first component 0 (an NICG
    set living in dimension d-1, so at most n_prev of them) and those with
    first component 1 (an NICG set by subset monotonicity, bounded by the
    restricted maximum m found here).  Returns (bound, restricted_max).

    The restricted search must exhaust its space; a budget interruption
    raises instead of returning an unsound bound.
    """
    check_dim(d)
    if d < 2:
        raise InvalidInputError("decomposition needs d >= 2")
    if n_prev < d - 1:
        raise InvalidInputError(f"n_prev={n_prev} below the trivial floor {d - 1}")
    from .search import SearchConfig, solve_dfs  # deferred to avoid cycle
    from dataclasses import replace
    from .errors import BudgetExhaustedError

    base = cfg if cfg is not None else SearchConfig(dim=d)
    run_cfg = replace(
        base, dim=d, mode="enumerate-all-max", restriction=(1, 1), target_size=None
    )
    outcome = solve_dfs(run_cfg)
    if not outcome.exact:
        raise BudgetExhaustedError("restricted search truncated; bound would be unsound")
    m = outcome.best_cardinality
    return n_prev + m, m


@dataclass(frozen=True)
class BoundsRow:
    d: int
    lower: int
    upper: int
    lower_source: str
    upper_source: str
    exact: bool

    def as_dict(self) -> dict:
        return {
            "d": self.d,
            "lower": self.lower,
            "upper": self.upper,
            "lower_source": self.lower_source,
            "upper_source": self.upper_source,
            "exact": self.exact,
        }


def bounds_table(
    dmax: int,
    exact_values: Optional[Mapping[int, int]] = None,
    witness_sizes: Optional[Mapping[int, int]] = None,
    extra_uppers: Optional[Mapping[int, tuple[int, str]]] = None,
) -> list[BoundsRow]:
    """Assemble per-dimension lower/upper bounds from all available evidence.

    exact_values: dimensions settled by exhaustive search.
    witness_sizes: best verified witness cardinality per dimension.
    extra_uppers: e.g. decomposition results, as d -> (bound, source label).
    """
    check_dim(dmax)
    exact_values = dict(exact_values or {})
    witness_sizes = dict(witness_sizes or {})
    extra_uppers = dict(extra_uppers or {})

    chain_inputs: dict[int, int] = {}
    for d, v in exact_values.items():
        chain_inputs[d] = max(chain_inputs.get(d, 0), v)
    for d, v in witness_sizes.items():
        chain_inputs[d] = max(chain_inputs.get(d, 0), v)
    lowers = chain_lower(chain_inputs, dmax)

    rows = []
    for d in range(1, dmax + 1):
        if d in exact_values:
            value = exact_values[d]
            rows.append(BoundsRow(d, value, value, "exact-search", "exact-search", True))
            continue
        lower = lowers[d]
        if witness_sizes.get(d, 0) >= lower:
            lower_source = "witness"
        elif lower > d:
            lower_source = "chain"
        else:
            lower_source = "dimension-floor"
        upper, upper_source = best_analytic_upper(d)
        if d in extra_uppers and extra_uppers[d][0] < upper:
            upper, upper_source = extra_uppers[d]
        if lower > upper:
            raise InvalidInputError(
                f"inconsistent evidence at d={d}: lower {lower} > upper {upper}"
            )
        rows.append(BoundsRow(d, lower, upper, lower_source, upper_source, False))
    return rows
