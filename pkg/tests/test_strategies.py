import itertools
from math import factorial

import pytest

from permwordle import perms, strategies
from permwordle.strategies import NotCyclicError, Strategy


def test_cyclic_shift_components():
    cs = strategies.cyclic_shift(4)
    assert cs.components == ((1,), (2, 1), (2, 3, 1), (2, 3, 4, 1))
    assert strategies.cyclic_shift(1).components == ((1,),)
    assert strategies.cyclic_shift(5).top == (2, 3, 4, 5, 1)
    assert cs.component(3) == (2, 3, 1)


def test_cyclic_shift_left_top():
    assert strategies.cyclic_shift_left_top(4).top == (4, 1, 2, 3)
    assert strategies.cyclic_shift_left_top(5).top == (5, 1, 2, 3, 4)
    assert strategies.cyclic_shift_left_top(3).top == (3, 1, 2)
    csl = strategies.cyclic_shift_left_top(5)
    assert csl.components[:4] == strategies.cyclic_shift(4).components
    with pytest.raises(ValueError):
        strategies.cyclic_shift_left_top(2)


def test_inductive():
    assert strategies.inductive((2, 3, 4, 1)) == strategies.cyclic_shift(4)
    s = strategies.inductive((4, 3, 1, 5, 2))
    assert s.top == (4, 3, 1, 5, 2)
    assert s.components[:4] == strategies.cyclic_shift(4).components
    assert s.kind == "inductive"
    with pytest.raises(NotCyclicError):
        strategies.inductive((2, 1, 4, 3))
    with pytest.raises(ValueError):
        strategies.inductive((2, 1))


def test_from_components():
    s = strategies.from_components([[1], [2, 1], [2, 3, 1], [2, 1, 4, 3]])
    assert s.kind == "deranged"
    s2 = strategies.from_components([[1], [2, 1], [3, 1, 2], [2, 3, 4, 1]])
    assert s2.kind == "cyclic"
    with pytest.raises(ValueError, match="derangement"):
        strategies.from_components([[1], [2, 1], [1, 2, 3]])
    with pytest.raises(ValueError, match="length"):
        strategies.from_components([[1], [2, 3, 1]])
    with pytest.raises(ValueError):
        strategies.from_components([])


def test_inverses_cached_property():
    cs = strategies.cyclic_shift(4)
    assert cs.inverses[3] == (4, 1, 2, 3)
    assert cs.inverses is cs.inverses


@pytest.mark.parametrize(
    "n,kind,expected",
    [
        (4, "inductive", 6),
        (5, "inductive", 24),
        (4, "cyclic", 12),
        (5, "deranged", 2 * 9 * 44),
        (6, "cyclic", 2 * 6 * 24 * 120),
        (1, "cyclic", 1),
        (2, "deranged", 1),
    ],
)
def test_enumeration_counts(n, kind, expected):
    assert strategies.count_strategies(n, kind) == expected
    seen = 0
    for s in strategies.enumerate_strategies(n, kind):
        seen += 1
    assert seen == expected


def test_deranged_count_matches_brute_product():
    brute = 1
    for i in range(3, 6):
        brute *= sum(
            1
            for p in itertools.permutations(range(1, i + 1))
            if all(v != j for j, v in enumerate(p, 1))
        )
    assert strategies.count_strategies(5, "deranged") == brute


@pytest.mark.parametrize("kind", ["cyclic", "deranged", "inductive"])
def test_enumerated_strategies_validate_and_include_cs_once(kind):
    n = 4
    cs = strategies.cyclic_shift(n)
    hits = 0
    seen = set()
    for s in strategies.enumerate_strategies(n, kind):
        assert strategies.from_components(s.components) == s
        assert s not in seen
        seen.add(s)
        if s == cs:
            hits += 1
    assert hits == 1


def test_inductive_strategies_share_lower_components():
    cs5 = strategies.cyclic_shift(5)
    for s in strategies.enumerate_strategies(5, "inductive"):
        assert s.components[:4] == cs5.components[:4]
        assert perms.is_cyclic(s.top)


def test_enumerate_rejects_bad_args():
    with pytest.raises(ValueError):
        list(strategies.enumerate_strategies(2, "inductive"))
    with pytest.raises(ValueError):
        list(strategies.enumerate_strategies(4, "random"))
    with pytest.raises(ValueError):
        strategies.count_strategies(4, "random")


def test_mirror():
    cs = strategies.cyclic_shift(4)
    m = strategies.mirror(cs)
    assert m.components == ((1,), (2, 1), (3, 1, 2), (4, 1, 2, 3))
    assert strategies.mirror(m) == cs
    csl = strategies.cyclic_shift_left_top(4)
    assert strategies.mirror(csl).top == (2, 3, 4, 1)
    # mirroring preserves validity
    for s in strategies.enumerate_strategies(4, "deranged"):
        strategies.from_components(strategies.mirror(s).components)


def test_text_roundtrip():
    cs = strategies.cyclic_shift(4)
    assert cs.text == "1;2,1;2,3,1;2,3,4,1"
    assert strategies.parse_strategy(cs.text) == cs
    assert strategies.parse_strategy("inductive:2,4,1,3") == strategies.inductive(
        (2, 4, 1, 3)
    )
    assert strategies.parse_strategy("cs", 4) == cs
    assert strategies.parse_strategy("CSL", 4) == strategies.cyclic_shift_left_top(4)
    for s in strategies.enumerate_strategies(4, "deranged"):
        assert strategies.parse_strategy(strategies.format_strategy(s)) == s


def test_parse_strategy_errors():
    with pytest.raises(ValueError, match="needs an explicit length"):
        strategies.parse_strategy("cs")
    with pytest.raises(ValueError, match="component 3"):
        strategies.parse_strategy("1;2,1;2,x,1")
    with pytest.raises(ValueError, match="length 4"):
        strategies.parse_strategy("1;2,1;2,3,1;2,3,4,1", 5)
    with pytest.raises(NotCyclicError):
        strategies.parse_strategy("inductive:2,1,4,3")


def test_equality_ignores_kind_tag():
    a = Strategy(((1,), (2, 1), (2, 3, 1)), "cyclic")
    b = Strategy(((1,), (2, 1), (2, 3, 1)), "inductive")
    assert a == b
    assert hash(a) == hash(b)


def test_strategy_counts_per_family_formulas():
    assert strategies.count_strategies(8, "inductive") == factorial(7)
    assert strategies.count_strategies(7, "cyclic") == 2 * 6 * 24 * 120 * 720
