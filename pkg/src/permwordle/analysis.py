"""Strategy performance measures: generating functions, averages, first-hit
classes, and exhaustive scans over strategy families.

Two independent routes produce a strategy's generating function:

* direct playback of all n! secrets (``gf_playback``), and
* the subgame decomposition (``decomposition_stats``): a secret with k
  incorrect positions contributes through its relative derangement d, so
  the count of secrets solved in 1 + t guesses is
  sum over k of C(n, k) * #{d in D_k : T(d) = t}.

The two must agree everywhere; tests enforce it.  Scans use the
decomposition with a memo shared across strategies that agree on component
prefixes, which is what makes family-wide sweeps cheap.

Averages are exact rationals; a strategy that loops on any secret gets an
infinite average and sorts after every terminating strategy.
"""

from __future__ import annotations

import itertools
import multiprocessing
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, inf

from . import closedform, perms, strategies
from .engine import LOOPED, SubgameMemo, _chase, play, solve_rounds
from .perms import Perm
from .strategies import Strategy

DEFAULT_MAX_COST = 10_000_000_000


@dataclass(frozen=True)
class GFCoefficients:
    """Counts of secrets solved in exactly r guesses, plus the loop count.

    Invariants checked at construction: the counts and loops add up to n!,
    and exactly one secret (the identity) is solved in one guess.
    """

    n: int
    coeffs: dict[int, int]
    loop_count: int = 0

    def __post_init__(self) -> None:
        total = sum(self.coeffs.values()) + self.loop_count
        if total != factorial(self.n):
            raise ValueError(
                f"coefficients sum to {total}, expected {self.n}! = {factorial(self.n)}"
            )
        if self.coeffs.get(1) != 1:
            raise ValueError("exactly one secret is solvable in one guess")

    def coefficient(self, r: int) -> int:
        return self.coeffs.get(r, 0)

    @property
    def max_guesses(self) -> int:
        return max(self.coeffs)

    def as_tuple(self) -> tuple[int, ...]:
        """Coefficients (a_1, ..., a_max) with gaps filled by zeros."""
        return tuple(self.coefficient(r) for r in range(1, self.max_guesses + 1))


@lru_cache(maxsize=None)
def _derangements(k: int) -> tuple[Perm, ...]:
    return tuple(perms.enumerate_perms(k, "derangements"))


def _prefix_hist(
    strategy: Strategy,
    k: int,
    memo: SubgameMemo,
    tables: dict[int, dict[Perm, int | float]],
) -> dict[int | float, int]:
    """Histogram of T over D_k, cached on the component prefix s_1..s_k.

    Computing it also fills the size-k table completely, which the
    top-level pass relies on for direct lookups.
    """
    prefix = strategy.components[:k]
    hist = memo.hist_cache.get(prefix)
    if hist is None:
        hist = {}
        invs, comps = strategy.inverses, strategy.components
        for d in _derangements(k):
            t = _chase(d, invs, comps, tables)
            hist[t] = hist.get(t, 0) + 1
        memo.hist_cache[prefix] = hist
    return hist


def _top_stats(
    strategy: Strategy, tables: dict[int, dict[Perm, int | float]]
) -> tuple[dict[int | float, int], int, int]:
    """T histogram over D_n for the top component, plus the split of T = 2
    derangements by whether the first application locked anything (a hit on
    guess two versus a hit only on the final guess three)."""
    n = strategy.n
    invs, comps = strategy.inverses, strategy.components
    g = invs[n - 1]
    positions = range(n)
    hist: dict[int | float, int] = {}
    hit_on_two = miss_till_three = 0
    for d in _derangements(n):
        wrong = [q for q in positions if g[q] != d[q]]
        m = len(wrong)
        if m == 0:
            t = 1
        elif m == n:
            t = _chase(d, invs, comps, tables)
            if t == 2:
                miss_till_three += 1
        else:
            slot: dict[int, int] = {}
            j = 1
            for q in wrong:
                slot[g[q]] = j
                j += 1
            t = tables[m][tuple(slot[d[q]] for q in wrong)] + 1
            if t == 2:
                hit_on_two += 1
        hist[t] = hist.get(t, 0) + 1
    return hist, hit_on_two, miss_till_three


def decomposition_stats(
    strategy: Strategy, memo: SubgameMemo | None = None
) -> tuple[GFCoefficients, dict[int, int]]:
    """Generating function and first-hit-class counts via the memoized
    subgame decomposition.

    The returned dict maps the first-hit round i in {1, 2, 3} to the number
    of secrets solved in exactly three guesses whose first correct position
    appeared on guess i.
    """
    n = strategy.n
    if n == 1:
        return GFCoefficients(1, {1: 1}, 0), {1: 0, 2: 0, 3: 0}
    if memo is None:
        memo = SubgameMemo()
    tables = memo.tables_up_to(strategy, n - 1)
    tables[n] = {}  # the top-size table stays local to this strategy
    hists: dict[int, dict[int | float, int]] = {}
    for k in range(2, n):
        hists[k] = _prefix_hist(strategy, k, memo, tables)
    top_hist, rho2, rho3 = _top_stats(strategy, tables)
    hists[n] = top_hist
    coeffs = {1: 1}
    loops = 0
    for k in range(2, n + 1):
        ways = comb(n, k)
        for t, cnt in hists[k].items():
            if t == LOOPED:
                loops += ways * cnt
            else:
                coeffs[t + 1] = coeffs.get(t + 1, 0) + ways * cnt
    rho1 = sum(comb(n, k) * hists[k].get(2, 0) for k in range(2, n))
    gf = GFCoefficients(n, coeffs, loops)
    return gf, {1: rho1, 2: rho2, 3: rho3}


def gf_playback(strategy: Strategy) -> GFCoefficients:
    """Generating function by playing out every one of the n! secrets."""
    n = strategy.n
    coeffs: dict[int, int] = {}
    loops = 0
    for secret in perms.enumerate_perms(n):
        r = solve_rounds(secret, strategy)
        if r == LOOPED:
            loops += 1
        else:
            coeffs[r] = coeffs.get(r, 0) + 1
    return GFCoefficients(n, coeffs, loops)


def generating_function(
    strategy: Strategy,
    method: str = "decomposition",
    memo: SubgameMemo | None = None,
) -> GFCoefficients:
    """Generating function by either route; the routes must agree."""
    if method == "decomposition":
        return decomposition_stats(strategy, memo)[0]
    if method == "playback":
        return gf_playback(strategy)
    raise ValueError(f"unknown method {method!r}")


def average_guesses(gf: GFCoefficients) -> Fraction | float:
    """Mean guesses over all n! secrets, or infinity if any secret loops."""
    if gf.loop_count:
        return inf
    weighted = sum(r * a for r, a in gf.coeffs.items())
    return Fraction(weighted, factorial(gf.n))


def rho_class_counts(strategy: Strategy) -> dict[int, int]:
    """Secrets solved in exactly three guesses, split by the round of the
    first non-empty correct set.  Computed by direct playback of all n!
    secrets; scans compute the same split through the decomposition."""
    if strategy.n < 3:
        raise ValueError("first-hit classes need strategies of length >= 3")
    counts = {1: 0, 2: 0, 3: 0}
    for secret in perms.enumerate_perms(strategy.n):
        trace = play(secret, strategy)
        if trace.solved and trace.rounds == 3:
            counts[trace.first_hit] += 1
    return counts


def average_j2_over_derangements(component: Perm) -> Fraction:
    """Average number of second-guess hits when the secret ranges over all
    derangements and the first application of ``component`` forms guess two.

    Equal to n/(n-1) for every deranged component, which is what makes the
    top component choice invisible to this measure.
    """
    comp = perms.validate(component)
    if not perms.is_derangement(comp):
        raise ValueError("component must be a derangement")
    guess = perms.invert(comp)
    total = 0
    count = 0
    for d in perms.enumerate_perms(len(comp), "derangements"):
        total += sum(1 for a, b in zip(guess, d) if a == b)
        count += 1
    return Fraction(total, count)


class ScanCostError(RuntimeError):
    """A scan was refused because its estimated work exceeds the limit."""

    def __init__(self, n: int, kind: str, estimate: int, limit: int) -> None:
        super().__init__(
            f"scan(n={n}, kind={kind!r}) is estimated at {estimate:,} subgame "
            f"evaluations, above the limit of {limit:,}; pass a larger "
            f"max_cost to run it anyway"
        )
        self.estimate = estimate
        self.limit = limit


def estimate_scan_cost(n: int, kind: str) -> int:
    """Cost model: strategies in the family times derangements up to size n."""
    per_strategy = sum(closedform.derangement_count(k) for k in range(2, n + 1))
    return strategies.count_strategies(n, kind) * max(per_strategy, 1)


@dataclass(frozen=True)
class ScanRow:
    index: int
    strategy_id: str
    n: int
    gf: GFCoefficients
    average: Fraction | float
    rho: dict[int, int]

    @property
    def a3(self) -> int:
        return self.gf.coefficient(3)


@dataclass(frozen=True)
class ExtremeSet:
    """An extreme value and every strategy attaining it, in scan order."""

    value: object
    strategy_ids: tuple[str, ...]


@dataclass(frozen=True)
class ScanSummary:
    min_average: ExtremeSet
    max_a3: ExtremeSet
    min_a3: ExtremeSet


@dataclass(frozen=True)
class ScanResult:
    n: int
    kind: str
    rows: tuple[ScanRow, ...]
    summary: ScanSummary


def _summarize(rows: tuple[ScanRow, ...]) -> ScanSummary:
    def extreme(key, pick) -> ExtremeSet:
        best = pick(key(row) for row in rows)
        ids = tuple(row.strategy_id for row in rows if key(row) == best)
        return ExtremeSet(best, ids)

    return ScanSummary(
        min_average=extreme(lambda r: r.average, min),
        max_a3=extreme(lambda r: r.a3, max),
        min_a3=extreme(lambda r: r.a3, min),
    )


def _scan_range(n: int, kind: str, start: int, stop: int) -> list[ScanRow]:
    memo = SubgameMemo()
    stream = itertools.islice(strategies.enumerate_strategies(n, kind), start, stop)
    rows = []
    for index, strategy in enumerate(stream, start):
        gf, rho = decomposition_stats(strategy, memo)
        rows.append(
            ScanRow(index, strategy.text, n, gf, average_guesses(gf), rho)
        )
    return rows


def _scan_worker(args: tuple[int, str, int, int]) -> list[ScanRow]:
    return _scan_range(*args)


def scan(
    n: int,
    kind: str,
    *,
    jobs: int = 1,
    max_cost: int = DEFAULT_MAX_COST,
) -> ScanResult:
    """One row per strategy in the family, in enumeration order, plus the
    extrema summary.  Oversized scans are refused up front with the work
    estimate.  Workers own private memos and process contiguous index
    ranges, so results are identical for any parallelism degree."""
    estimate = estimate_scan_cost(n, kind)
    if estimate > max_cost:
        raise ScanCostError(n, kind, estimate, max_cost)
    total = strategies.count_strategies(n, kind)
    if jobs > 1 and total >= 4 * jobs:
        bounds = []
        step, extra = divmod(total, jobs)
        lo = 0
        for i in range(jobs):
            hi = lo + step + (1 if i < extra else 0)
            bounds.append((n, kind, lo, hi))
            lo = hi
        with multiprocessing.Pool(jobs) as pool:
            chunks = pool.map(_scan_worker, bounds)
        rows = tuple(itertools.chain.from_iterable(chunks))
    else:
        rows = tuple(_scan_range(n, kind, 0, total))
    return ScanResult(n, kind, rows, _summarize(rows))
