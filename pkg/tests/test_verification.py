import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reflmon import quiver as qv
from reflmon.monoid import evaluate_word, realize_generators
from reflmon.presentation import Presentation, Relation, reference_presentation, present
from reflmon.quiver import EPS
from reflmon.verification import (
    TrackedQuiver,
    bounded_word_congruence,
    check_lemma_cycle_equivalences,
    check_opposite_invariance,
    check_relations,
    free_reduce,
    mutate_tracked,
    presentation_certificate,
    replay,
    verify_mutation_invariance,
)

KEYSTONE = [("A", 2), ("A", 3), ("A", 4), ("A", 5), ("B", 2), ("B", 3), ("B", 4), ("D", 4), ("D", 5)]


@pytest.mark.parametrize("fam,n", KEYSTONE)
def test_standard_presentation_holds(fam, n):
    rep = check_relations(present(qv.standard_quiver(fam, n)), realize_generators(fam, n))
    assert rep.passed, [f.to_dict() for f in rep.failures]


def test_corrupted_relation_is_caught():
    gens = realize_generators("A", 3)
    bad = Presentation(["1", "2", EPS], [Relation(("1", EPS), (EPS,), "R2")])
    rep = check_relations(bad, gens)
    assert not rep.passed and len(rep.failures) == 1


def test_tracked_words():
    tq = TrackedQuiver.initial(qv.standard_quiver("A", 3))
    tq = mutate_tracked(tq, "2")
    assert tq.words == {"1": ("2", "1", "2"), "2": ("2",), EPS: (EPS,)}
    tq = mutate_tracked(tq, "2")
    assert tq.words[EPS] == ("2", EPS, "2")
    assert tq.check()
    with pytest.raises(qv.QuiverError):
        mutate_tracked(tq, EPS)


@pytest.mark.parametrize("fam,n", [("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("D", 4)])
def test_invariance_over_class(get_catalog, fam, n):
    reports = verify_mutation_invariance(fam, n, get_catalog(fam, n))
    assert len(reports) == len(get_catalog(fam, n))
    assert all(r.passed and r.closure_ok for r in reports), [r.to_dict() for r in reports if not r.passed]


@pytest.mark.slow
def test_invariance_d5(get_catalog):
    assert all(r.passed for r in verify_mutation_invariance("D", 5, get_catalog("D", 5)))


def test_congruence_a2_a3():
    for n, size in [(2, 7), (3, 34)]:
        res = bounded_word_congruence(present(qv.standard_quiver("A", n)), realize_generators("A", n))
        assert res.sound and res.bijective and res.class_count == size
        assert all(lv.sound for lv in res.levels)
        assert res.levels[-1].L <= 14


def test_congruence_b2():
    res = bounded_word_congruence(present(qv.standard_quiver("B", 2)), realize_generators("B", 2))
    assert res.bijective and res.class_count == 17


def test_congruence_detects_missing_relation():
    p = present(qv.standard_quiver("A", 3))
    weaker = Presentation(p.generators, [r for r in p.relations if r.tag != "R2" or EPS not in r.letters()])
    res = bounded_word_congruence(weaker, realize_generators("A", 3), max_len=8)
    assert res.sound and not res.bijective


@pytest.mark.parametrize("fam,n,size", [("A", 3, 34), ("A", 4, 209), ("B", 2, 17), ("B", 3, 139)])
def test_certificate(fam, n, size):
    cert = presentation_certificate(present(qv.standard_quiver(fam, n)), realize_generators(fam, n))
    assert cert.complete and cert.class_count == size and not cert.unproved


def test_certificate_d4():
    cert = presentation_certificate(present(qv.standard_quiver("D", 4)), realize_generators("D", 4))
    assert cert.complete and cert.class_count == 1281


def test_certificate_fails_for_incomplete_presentation():
    p = present(qv.standard_quiver("A", 3))
    weaker = Presentation(p.generators, [r for r in p.relations if r.key() != frozenset({("1", EPS), (EPS, "1")})])
    assert len(weaker.relations) == len(p.relations) - 1
    cert = presentation_certificate(weaker, realize_generators("A", 3), slack=4, budget=2000)
    assert not cert.complete


@pytest.mark.parametrize("fam,n", [("A", 3), ("A", 4), ("B", 2), ("B", 3), ("D", 4)])
def test_opposite_invariance(get_catalog, fam, n):
    q0 = qv.standard_quiver(fam, n)
    for m in get_catalog(fam, n).members:
        tq = replay(q0, m.witness)
        assert check_opposite_invariance(tq.quiver, tq.values)


@pytest.mark.parametrize("fam,n", [("A", 3), ("A", 4), ("B", 3), ("D", 4)])
def test_cycle_lemma(get_catalog, fam, n):
    rep = check_lemma_cycle_equivalences(get_catalog(fam, n), samples=150)
    assert rep.passed, rep.failures[:5]
    assert rep.checked > 0 and rep.samples_a_false > 0


def test_reference_after_pivots_d4():
    tq = replay(qv.standard_quiver("D", 4), ["3", "2", "0"])
    assert check_relations(present(tq.quiver), tq.values).passed
    assert check_relations(reference_presentation("D", 4), tq.values).passed


# ---------------------------------------------------------------- properties

words = st.lists(st.sampled_from(["1", "2", "3", EPS]), max_size=14)


@given(words)
def test_free_reduce_idempotent_and_value_preserving(w):
    g = realize_generators("A", 4)
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert evaluate_word(r, g) == evaluate_word(w, g)
    assert all(a != b for a, b in zip(r, r[1:]))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([("A", 4), ("B", 3), ("D", 4)]), st.lists(st.integers(0, 9), max_size=10))
def test_tracked_values_match_words(fk, steps):
    fam, n = fk
    q = qv.standard_quiver(fam, n)
    pivots = [q.mutable[s % len(q.mutable)] for s in steps]
    tq = replay(q, pivots)
    assert tq.check()
    assert tq.quiver == qv.mutate_sequence(q, pivots)
    assert check_relations(present(tq.quiver), tq.values).passed


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([("A", 2), ("A", 3), ("B", 2)]), st.integers(3, 8))
def test_congruence_sound_at_any_length(fk, L):
    fam, n = fk
    res = bounded_word_congruence(present(qv.standard_quiver(fam, n)), realize_generators(fam, n),
                                  max_len=L, start=L)
    (lv,) = res.levels
    assert lv.sound and lv.classes >= lv.values
