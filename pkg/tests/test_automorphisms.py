import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reflmon import quiver as qv
from reflmon.automorphisms import (
    apply_inner,
    check_center_fixes_eps,
    conjugated_set,
    double_mutation_sequence,
    generator_set_ok,
    is_central,
    is_involution,
    longest_element,
    reflection_via_mutation,
)
from reflmon.monoid import PartialSignedPerm, compose, evaluate_word, partial_identity, realize_generators
from reflmon.quiver import EPS


def test_double_sequence():
    assert double_mutation_sequence(("1", "2")) == ("1", "1", "2", "2")
    with pytest.raises(qv.QuiverError):
        double_mutation_sequence(("1", EPS))


def test_inner_a3_by_s2():
    q0 = qv.standard_quiver("A", 3)
    tq, gs = apply_inner(q0, ("2",))
    assert tq.quiver == q0
    assert gs.words == {"1": ("2", "1", "2"), "2": ("2",), EPS: ("2", EPS, "2")}
    assert gs.values[EPS] == partial_identity({1, 3}, 3)
    assert gs.value_set() == conjugated_set(q0, ("2",))
    assert generator_set_ok(q0, gs)
    assert reflection_via_mutation(q0, ("2",), "1") == evaluate_word(("2", "1", "2"), realize_generators("A", 3))


def test_longest_element_words():
    assert longest_element("A", 4) == ("1", "2", "1", "3", "2", "1")
    assert longest_element("B", 2) == ("1", "0", "1", "0")
    assert len(longest_element("B", 3)) == 9
    assert len(longest_element("D", 4)) == 12
    assert len(longest_element("D", 5)) == 20


@pytest.mark.parametrize("fam,n", [("B", 2), ("B", 3), ("B", 4), ("D", 4), ("D", 6)])
def test_longest_is_minus_identity(fam, n):
    w0 = evaluate_word(longest_element(fam, n), realize_generators(fam, n))
    assert w0 == PartialSignedPerm(tuple(-i for i in range(1, n + 1)))
    assert is_central(fam, n) and is_involution(fam, n)
    assert check_center_fixes_eps(fam, n)


def test_longest_in_odd_d_is_not_central():
    w0 = evaluate_word(longest_element("D", 5), realize_generators("D", 5))
    assert w0.image == (1, -2, -3, -4, -5)
    assert is_involution("D", 5) and not is_central("D", 5)


@pytest.mark.parametrize("fam,n", [("A", 3), ("A", 4), ("B", 2), ("B", 3), ("D", 4)])
def test_random_words(fam, n):
    rng = random.Random(f"{fam}{n}")
    q0 = qv.standard_quiver(fam, n)
    for _ in range(50):
        g = tuple(rng.choice(q0.mutable) for _ in range(rng.randint(0, 8)))
        tq, gs = apply_inner(q0, g)
        assert qv.diagram(tq.quiver) == qv.diagram(q0)
        assert gs.value_set() == conjugated_set(q0, g)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([("A", 4), ("B", 3), ("D", 4)]), st.lists(st.integers(0, 9), max_size=8))
def test_inner_conjugates_each_generator(fk, steps):
    fam, n = fk
    q0 = qv.standard_quiver(fam, n)
    g = tuple(q0.mutable[s % len(q0.mutable)] for s in steps)
    _, gs = apply_inner(q0, g)
    gens = realize_generators(fam, n)
    x = evaluate_word(g, gens)
    xi = evaluate_word(tuple(reversed(g)), gens)
    assert sorted(map(str, gs.values.values())) == sorted(str(compose(compose(x, gens[v]), xi)) for v in gens)
    assert generator_set_ok(q0, gs)
