"""Strategy construction and enumeration.

A strategy is a list of components ``s_1 .. s_n`` where ``s_k`` is a
length-k permutation.  During play, ``s_k`` is applied to the k incorrect
positions of the current guess.  ``s_1`` is fixed at (1,) (it can never be
used: a single incorrect position is impossible) and ``s_2`` is forced to
(2, 1), the only derangement of length 2; every component of length >= 2
must be a derangement or a guess would repeat a known-wrong entry in place.

Three families are enumerated:

* ``cyclic``    - every component is a single cycle,
* ``deranged``  - every component is a derangement,
* ``inductive`` - right-shift components below an arbitrary cyclic top.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import factorial, prod
from typing import Iterable, Iterator

from . import closedform, perms
from .perms import Perm

STRATEGY_KINDS = ("cyclic", "deranged", "inductive")


class NotCyclicError(ValueError):
    """Raised when a top component required to be a single cycle is not."""


@dataclass(frozen=True)
class Strategy:
    """An immutable component list; equality and identity ignore the kind tag."""

    components: tuple[Perm, ...]
    kind: str = field(default="deranged", compare=False)

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def top(self) -> Perm:
        return self.components[-1]

    def component(self, k: int) -> Perm:
        """The component applied when exactly k positions are incorrect."""
        return self.components[k - 1]

    @cached_property
    def inverses(self) -> tuple[Perm, ...]:
        """Inverses of all components; inverses[k-1] is the guess produced
        when s_k acts on a fully-incorrect identity sub-guess."""
        return tuple(perms.invert(c) for c in self.components)

    @cached_property
    def text(self) -> str:
        return format_strategy(self)

    def __str__(self) -> str:
        return self.text


def _shift_right(k: int) -> Perm:
    return tuple(range(2, k + 1)) + (1,)


def _shift_left(k: int) -> Perm:
    return (k,) + tuple(range(1, k))


def cyclic_shift(n: int) -> Strategy:
    """The right-shift strategy: every component is [2, 3, ..., k, 1]."""
    if n < 1:
        raise ValueError("a strategy must have length at least 1")
    return Strategy(tuple(_shift_right(k) for k in range(1, n + 1)), "cyclic")


def cyclic_shift_left_top(n: int) -> Strategy:
    """Right-shift components below a left-shift top [n, 1, 2, ..., n-1]."""
    if n < 3:
        raise ValueError(
            "left and right shift coincide below length 3; need n >= 3"
        )
    comps = tuple(_shift_right(k) for k in range(1, n)) + (_shift_left(n),)
    return Strategy(comps, "inductive")


def inductive(top: Iterable[int]) -> Strategy:
    """Right-shift components below the given cyclic top component."""
    top_p = perms.validate(top)
    n = len(top_p)
    if n < 3:
        raise ValueError("an inductive strategy needs length at least 3")
    if not perms.is_cyclic(top_p):
        raise NotCyclicError(
            f"top component {perms.format_perm(top_p)} is not a single {n}-cycle"
        )
    comps = tuple(_shift_right(k) for k in range(1, n)) + (top_p,)
    return Strategy(comps, "inductive")


def from_components(components: Iterable[Iterable[int]]) -> Strategy:
    """Build and validate a strategy from raw component sequences.

    The i-th component must be a permutation of length i, and every
    component of length >= 2 must be a derangement.  The kind tag is
    inferred: "cyclic" when every component is a single cycle, otherwise
    "deranged".
    """
    comps: list[Perm] = []
    for i, raw in enumerate(components, 1):
        p = perms.validate(raw)
        if len(p) != i:
            raise ValueError(
                f"component {i} has length {len(p)}, expected {i}"
            )
        if i >= 2 and not perms.is_derangement(p):
            raise ValueError(
                f"component {i} ({perms.format_perm(p)}) is not a derangement"
            )
        comps.append(p)
    if not comps:
        raise ValueError("a strategy needs at least one component")
    kind = "cyclic" if all(perms.is_cyclic(c) for c in comps) else "deranged"
    return Strategy(tuple(comps), kind)


def mirror(strategy: Strategy) -> Strategy:
    """The reflection conjugate: relabel positions and values i -> k+1-i in
    every component.  Mirroring maps right shifts to left shifts and
    preserves the full play-out of every game, so a strategy and its mirror
    always share a generating function."""
    comps = tuple(
        tuple(len(c) + 1 - c[len(c) - x] for x in range(1, len(c) + 1))
        for c in strategy.components
    )
    kind = "cyclic" if all(perms.is_cyclic(c) for c in comps) else "deranged"
    return Strategy(comps, kind)


def enumerate_strategies(n: int, kind: str) -> Iterator[Strategy]:
    """Yield every strategy of the family exactly once, deterministically.

    Components of each size run in lexicographic order with later (larger)
    components varying fastest.  Counts: inductive (n-1)!, cyclic
    prod (i-1)! for i = 3..n, deranged prod D_i for i = 3..n.
    """
    if kind == "inductive":
        if n < 3:
            raise ValueError("inductive strategies need length at least 3")
        lower = tuple(_shift_right(k) for k in range(1, n))
        for top in perms.enumerate_perms(n, "cyclic"):
            yield Strategy(lower + (top,), "inductive")
        return
    if kind not in ("cyclic", "deranged"):
        raise ValueError(f"unknown strategy class {kind!r}")
    if n < 1:
        raise ValueError("a strategy must have length at least 1")
    if n == 1:
        yield Strategy(((1,),), kind)
        return
    base = ((1,), (2, 1))
    perm_kind = "cyclic" if kind == "cyclic" else "derangements"
    pools = [list(perms.enumerate_perms(i, perm_kind)) for i in range(3, n + 1)]
    for tail in itertools.product(*pools):
        yield Strategy(base + tail, kind)


def count_strategies(n: int, kind: str) -> int:
    """Size of the family enumerate_strategies(n, kind) yields."""
    if kind == "inductive":
        if n < 3:
            raise ValueError("inductive strategies need length at least 3")
        return factorial(n - 1)
    if kind == "cyclic":
        return prod(factorial(i - 1) for i in range(3, n + 1))
    if kind == "deranged":
        return prod(closedform.derangement_count(i) for i in range(3, n + 1))
    raise ValueError(f"unknown strategy class {kind!r}")


def format_strategy(strategy: Strategy) -> str:
    """Textual form: components as comma-separated entries joined by ';'."""
    return ";".join(perms.format_perm(c) for c in strategy.components)


def parse_strategy(text: str, n: int | None = None) -> Strategy:
    """Parse the textual strategy format.

    Accepts the full component list ("1;2,1;2,3,1;2,3,4,1"), the inductive
    shorthand ("inductive:2,4,1,3"), or the named strategies "cs" and "csl"
    (which need an explicit length n).
    """
    t = text.strip()
    low = t.lower()
    if low == "cs":
        if n is None:
            raise ValueError("strategy 'cs' needs an explicit length n")
        strategy = cyclic_shift(n)
    elif low == "csl":
        if n is None:
            raise ValueError("strategy 'csl' needs an explicit length n")
        strategy = cyclic_shift_left_top(n)
    elif low.startswith("inductive:"):
        strategy = inductive(perms.parse_perm(t.split(":", 1)[1]))
    else:
        parts = t.split(";")
        comps = []
        for i, part in enumerate(parts, 1):
            try:
                comps.append(perms.parse_perm(part))
            except ValueError as exc:
                raise ValueError(f"component {i}: {exc}") from None
        strategy = from_components(comps)
    if n is not None and strategy.n != n:
        raise ValueError(
            f"strategy has length {strategy.n} but n={n} was requested"
        )
    return strategy
