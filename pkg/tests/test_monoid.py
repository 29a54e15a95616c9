import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reflmon import monoid as mon
from reflmon.monoid import PartialSignedPerm as P
from reflmon.quiver import EPS


def test_compose_order_and_examples():
    g = mon.realize_generators("A", 3)
    assert mon.compose(g["2"], mon.compose(g[EPS], g["2"])) == mon.partial_identity({1, 3}, 3)
    assert mon.evaluate_word(("2", EPS, "2"), g) == mon.partial_identity({1, 3}, 3)
    assert mon.evaluate_word((EPS, EPS), g) == g[EPS]
    assert mon.evaluate_word((), g) == mon.identity(3)
    # y acts first: (1 2) after (2 3) sends 1 -> 2, 2 -> 3, 3 -> 1
    assert mon.compose(g["1"], g["2"]).image == (2, 3, 1)


def test_generators_a3():
    g = mon.realize_generators("A", 3)
    assert g["1"].image == (2, 1, 3) and g["2"].image == (1, 3, 2)
    assert g[EPS] == mon.partial_identity({1, 2}, 3)
    assert mon.format_element(g[EPS]) == "1 2 3 / 1 2 -"


def test_generators_b_and_d():
    b = mon.realize_generators("B", 2)
    assert b["0"].image == (-1, 2)
    d = mon.realize_generators("D", 4)
    assert d["0"].image == (-2, -1, 3, 4) and d["1"].image == (2, 1, 3, 4) and d["2"].image == (1, 3, 2, 4)
    with pytest.raises(Exception):
        mon.realize_generators("D", 3)


def test_unknown_letter():
    with pytest.raises(mon.MonoidError):
        mon.evaluate_word(("9",), mon.realize_generators("A", 3))


def test_not_injective():
    with pytest.raises(mon.MonoidError):
        P((1, 1, 0))


def test_parse_format_round_trip():
    x = P((-2, 0, 1))
    assert mon.format_element(x) == "1 2 3 / -2 - 1"
    assert mon.parse_element(mon.format_element(x)) == x


def test_partial_identities():
    assert mon.partial_identity(set(), 3).rank == 0
    assert mon.partial_identity({1, 2, 3}, 3) == mon.identity(3)


@pytest.mark.parametrize("n,expected", [(1, 2), (2, 7), (3, 34), (4, 209), (5, 1546)])
def test_a_counts(n, expected):
    assert mon.count_partial_injections(n) == expected == len(mon.all_partial_injections(n))


@pytest.mark.parametrize("n,expected", [(2, 17), (3, 139), (4, 1473)])
def test_b_counts(n, expected):
    assert mon.count_partial_injections(n, True) == expected == len(mon.all_partial_injections(n, True))


@pytest.mark.parametrize("fam,n", [("A", 2), ("A", 3), ("A", 4), ("A", 5), ("B", 2), ("B", 3), ("B", 4)])
def test_closure_matches_brute_force(fam, n):
    gens = mon.realize_generators(fam, n)
    m = mon.generator_closure(list(gens.values()))
    brute = set(mon.all_partial_injections(n, signed=fam == "B"))
    assert set(m.elements) == brute
    assert len(m) == mon.expected_cardinality(fam, n)


@pytest.mark.parametrize("n", [4, 5])
def test_d_closure(n):
    m = mon.generator_closure(list(mon.realize_generators("D", n).values()))
    assert len(m) == mon.count_even_signed(n)
    again = mon.generator_closure(list(mon.realize_generators("D", n).values()))
    assert again.elements == m.elements
    # units are exactly the even signed permutations
    units = [x for x in m.elements if x.rank == n]
    assert len(units) == 2 ** (n - 1) * math.factorial(n)
    assert all(sum(v < 0 for v in x.image) % 2 == 0 for x in units)


def test_d4_count_frozen():
    assert mon.count_even_signed(4) == 1281


def test_closure_trivial_and_cap():
    assert len(mon.generator_closure([mon.identity(3)])) == 1
    with pytest.raises(mon.SizeCapExceeded):
        mon.generator_closure(list(mon.realize_generators("A", 4).values()), cap=50)


@pytest.mark.parametrize("fam,n", [("A", 3), ("B", 2), ("D", 4)])
def test_inverse_monoid_laws(fam, n):
    m = mon.generator_closure(list(mon.realize_generators(fam, n).values()))
    assert mon.check_inverse_monoid(m) == []


@pytest.mark.parametrize("fam,n,orders", [
    ("A", 3, [1, 1, 2, 6]), ("A", 4, [1, 1, 2, 6, 24]),
    ("B", 2, [1, 2, 8]), ("B", 3, [1, 2, 8, 48]), ("D", 4, [1, 2, 8, 48, 192]),
])
def test_green_structure(fam, n, orders):
    m = mon.generator_closure(list(mon.realize_generators(fam, n).values()))
    gd = mon.green_decomposition(m)
    assert gd.d_equals_j and gd.is_chain
    by_rank = sorted(gd.d_classes, key=lambda c: c.rank)
    assert [c.rank for c in by_rank] == list(range(n + 1))
    assert [c.group_order for c in by_rank] == orders
    signed = fam != "A"
    for c in by_rank:
        k = c.rank
        if fam != "D" or k < n:
            assert len(c.elements) == math.comb(n, k) ** 2 * math.factorial(k) * (2 ** k if signed else 1)
        assert len(c.idempotents) == math.comb(n, k)
        assert len(c.elements) == len(c.l_classes) * len(c.r_classes) * c.group_order


def test_green_i3_sizes():
    m = mon.generator_closure(list(mon.realize_generators("A", 3).values()))
    assert sorted(mon.green_decomposition(m).sizes()) == [1, 6, 9, 18]


@pytest.mark.parametrize("fam,n", [("A", 3), ("B", 2)])
def test_triples_and_anti_involution(fam, n):
    m = mon.generator_closure(list(mon.realize_generators(fam, n).values()))
    assert mon.check_triple_roundtrip(m)
    assert mon.check_anti_involution(m)
    for i in m.idempotents:
        e = m.elements[i]
        assert mon.triple_coordinates(m, e) == (e, e, mon.partial_identity(range(1, e.rank + 1), n))


def test_units_restrict_to_inversion():
    m = mon.generator_closure(list(mon.realize_generators("B", 2).values()))
    for x in m.elements:
        if x.rank == 2:
            assert mon.compose(x, mon.inverse(x)) == mon.identity(2)


# ---------------------------------------------------------------- properties

def same_n(k):
    return st.integers(1, 4).flatmap(lambda n: st.tuples(*[
        st.permutations(range(1, n + 1)).flatmap(
            lambda img: st.tuples(*[st.sampled_from([0, v, -v]) for v in img]).map(P))
        for _ in range(k)]))


@settings(max_examples=200)
@given(same_n(3))
def test_associative(t):
    x, y, z = t
    assert mon.compose(x, mon.compose(y, z)) == mon.compose(mon.compose(x, y), z)


@settings(max_examples=200)
@given(same_n(2))
def test_inverse_laws(t):
    x, y = t
    xi = mon.inverse(x)
    assert mon.compose(mon.compose(x, xi), x) == x
    assert mon.compose(mon.compose(xi, x), xi) == xi
    assert mon.inverse(xi) == x
    assert mon.inverse(mon.compose(x, y)) == mon.compose(mon.inverse(y), xi)


@settings(max_examples=100)
@given(same_n(2))
def test_idempotents_commute(t):
    e = mon.compose(t[0], mon.inverse(t[0]))
    f = mon.compose(t[1], mon.inverse(t[1]))
    assert mon.compose(e, f) == mon.compose(f, e)
