"""Deterministic game playback and memoized derangement-subgame evaluation.

The feedback loop: the first guess is always the identity; each round the
set of positions agreeing with the secret is revealed, those positions are
locked for good, and the strategy component matching the number of
incorrect positions permutes the incorrect entries to form the next guess.

Guess-update convention: with the incorrect positions p_1 < ... < p_k and
sigma the length-k component, the value at p_j moves to p_sigma(j).  From a
fully-incorrect identity guess this makes the next guess the inverse of the
component, which is what anchors all the counting below.

Because locked positions never move again, the future of a game depends
only on the relative derangement formed by the incorrect entries.  T(d),
the number of guesses needed to finish from the all-wrong state with
relative secret d, is what ``subgame_guesses`` computes and memoizes; a
full game on secret pi takes 1 + T(relative_derangement(pi)) guesses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from . import perms
from .perms import Perm
from .strategies import Strategy

# Marker for games/subgames that never terminate.  Using infinity keeps the
# chain arithmetic uniform (LOOPED + 1 == LOOPED) and sorts after all
# finite guess counts.
LOOPED = math.inf


def feedback(guess: Perm, secret: Perm) -> frozenset[int]:
    """Positions at which the guess agrees with the secret (1-based)."""
    if len(guess) != len(secret):
        raise ValueError(
            f"guess length {len(guess)} differs from secret length {len(secret)}"
        )
    hits = frozenset(
        i for i, (g, s) in enumerate(zip(guess, secret), 1) if g == s
    )
    # A lone disagreement is impossible between permutations of the same set.
    assert len(hits) != len(guess) - 1 or len(guess) == 1
    return hits


def next_guess(current: Perm, correct: Iterable[int], strategy: Strategy) -> Perm:
    """Lock the correct positions and permute the rest by the k-component."""
    n = len(current)
    locked = set(correct)
    wrong = [i for i in range(1, n + 1) if i not in locked]
    k = len(wrong)
    if k == 0:
        raise ValueError("game already solved; no next guess exists")
    if k == 1:
        raise ValueError("exactly one incorrect position is impossible")
    sigma = strategy.component(k)
    out = list(current)
    for j, pos in enumerate(wrong):
        out[wrong[sigma[j] - 1] - 1] = current[pos - 1]
    return tuple(out)


@dataclass(frozen=True)
class GameTrace:
    """Full record of one game: guesses, per-round correct sets, outcome.

    ``status`` is "solved" or "looped".  A looped trace ends with the first
    repeated (guess, correct-set) state, so the repetition is visible.
    """

    secret: Perm
    guesses: tuple[Perm, ...]
    correct_sets: tuple[frozenset[int], ...]
    status: str

    @property
    def solved(self) -> bool:
        return self.status == "solved"

    @property
    def rounds(self) -> int | None:
        """Number of guesses used, or None for a looped game."""
        return len(self.guesses) if self.solved else None

    @property
    def first_hit(self) -> int | None:
        """1-based index of the first non-empty correct set, if any."""
        for r, hits in enumerate(self.correct_sets, 1):
            if hits:
                return r
        return None


def play(secret: Perm, strategy: Strategy) -> GameTrace:
    """Play a full game from the identity guess until solved or looping.

    A repeat of the (guess, correct-set) state proves the deterministic
    process can never solve; the repeated guess is kept in the trace.
    """
    secret = tuple(secret)
    n = len(secret)
    if n != strategy.n:
        raise ValueError(
            f"secret length {n} differs from strategy length {strategy.n}"
        )
    guesses: list[Perm] = []
    sets: list[frozenset[int]] = []
    seen: set[tuple[Perm, frozenset[int]]] = set()
    current = perms.identity(n)
    while True:
        hits = feedback(current, secret)
        guesses.append(current)
        sets.append(hits)
        if len(hits) == n:
            status = "solved"
            break
        state = (current, hits)
        if state in seen:
            status = "looped"
            break
        seen.add(state)
        current = next_guess(current, hits, strategy)
    return GameTrace(secret, tuple(guesses), tuple(sets), status)


def solve_rounds(secret: Perm, strategy: Strategy) -> int | float:
    """Guess count for a full game, or LOOPED; no trace is materialized."""
    n = len(secret)
    rounds = 0
    seen: set[tuple[Perm, frozenset[int]]] = set()
    current = perms.identity(n)
    while True:
        hits = feedback(current, secret)
        rounds += 1
        if len(hits) == n:
            return rounds
        state = (current, hits)
        if state in seen:
            return LOOPED
        seen.add(state)
        current = next_guess(current, hits, strategy)


def rho(secret: Perm, strategy: Strategy) -> int | None:
    """Index of the first guess with a non-empty correct set.

    Returns None ("no rho") for a looped game whose recorded correct sets
    are all empty.
    """
    return play(secret, strategy).first_hit


def relative_derangement(p: Perm) -> Perm:
    """The non-fixed part of p as a derangement on {1..k}.

    Incorrect positions and their values are ranked by increasing
    position/value; the two rankings use the same index set because the
    non-fixed values of a permutation are exactly its non-fixed positions.
    Returns () for the identity.
    """
    wrong = [q for q, v in enumerate(p) if v != q + 1]
    rank = {q: j for j, q in enumerate(wrong, 1)}
    return tuple(rank[p[q] - 1] for q in wrong)


class SubgameMemo:
    """Shared memo of subgame values T(d), keyed by the component prefix.

    Two strategies that agree on components s_1..s_k share all entries of
    size <= k, so one memo serves a whole inductive scan.  Not safe for
    concurrent mutation; use one memo per worker, or populate it fully and
    then share it read-only.
    """

    def __init__(self) -> None:
        self._tables: dict[tuple[Perm, ...], dict[Perm, int | float]] = {}
        # T-value histograms over whole derangement classes, also keyed by
        # component prefix; maintained by the analysis layer.
        self.hist_cache: dict[tuple[Perm, ...], dict[int | float, int]] = {}

    def table(self, strategy: Strategy, k: int) -> dict[Perm, int | float]:
        """The value table for subgames of size k under this strategy."""
        return self._tables.setdefault(strategy.components[:k], {})

    def tables_up_to(
        self, strategy: Strategy, k: int
    ) -> dict[int, dict[Perm, int | float]]:
        return {size: self.table(strategy, size) for size in range(2, k + 1)}


def _chase(
    d: Perm,
    invs: tuple[Perm, ...],
    comps: tuple[Perm, ...],
    tables: dict[int, dict[Perm, int | float]],
) -> int | float:
    """T(d) by following the deterministic successor chain, memoizing as it
    unwinds.  Each state has exactly one successor, so evaluation walks
    until it hits a cached value, a finishing guess, or a repeated state
    (which proves every state on the chain loops forever)."""
    chain: list[Perm] = []
    on_chain: set[Perm] = set()
    k = len(d)
    while True:
        t = tables[k].get(d)
        if t is not None:
            break
        if d in on_chain:
            for dd in chain:
                tables[len(dd)][dd] = LOOPED
            return LOOPED
        on_chain.add(d)
        chain.append(d)
        g = invs[k - 1]
        wrong = [q for q in range(k) if g[q] != d[q]]
        m = len(wrong)
        if m == 0:
            t = 0  # the guess just produced is the secret
            break
        if m == k:
            # Nothing locked: relabel so the new guess becomes the identity.
            comp = comps[k - 1]
            d = tuple(comp[v - 1] for v in d)
        else:
            # Lock the matches; rank the leftover positions and re-express
            # the leftover secret values in the new guess's ordering.
            slot: dict[int, int] = {}
            j = 1
            for q in wrong:
                slot[g[q]] = j
                j += 1
            d = tuple(slot[d[q]] for q in wrong)
            k = m
    for dd in reversed(chain):
        t += 1
        tables[len(dd)][dd] = t
    return t


def subgame_guesses(
    d: Perm, strategy: Strategy, memo: SubgameMemo | None = None
) -> int | float:
    """Guesses needed to finish from the all-wrong state with relative
    secret d, or LOOPED.  d must be a derangement of length >= 2 and the
    strategy must have components for every size up to len(d)."""
    d = perms.validate(d)
    k = len(d)
    if k < 2 or not perms.is_derangement(d):
        raise ValueError("subgames are defined for derangements of length >= 2")
    if strategy.n < k:
        raise ValueError(
            f"strategy of length {strategy.n} has no component of size {k}"
        )
    if memo is None:
        memo = SubgameMemo()
    tables = memo.tables_up_to(strategy, k)
    return _chase(d, strategy.inverses, strategy.components, tables)
