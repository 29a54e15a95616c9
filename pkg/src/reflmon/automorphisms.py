"""Inner automorphisms through doubled mutation sequences, and the longest element."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .monoid import PartialSignedPerm, compose, evaluate_word, format_element, inverse, realize_generators
from .presentation import Word, present
from .quiver import EPS, Quiver, QuiverError, check_rank, diagram, standard_quiver
from .verification import TrackedQuiver, check_relations, replay


class DiagramNotPreserved(AssertionError):
    pass


@dataclass(frozen=True)
class GeneratorSet:
    words: dict[str, Word]
    values: dict[str, PartialSignedPerm]

    @classmethod
    def of(cls, tq: TrackedQuiver) -> "GeneratorSet":
        return cls(dict(tq.words), dict(tq.values))

    def value_set(self) -> frozenset[PartialSignedPerm]:
        return frozenset(self.values.values())

    def to_dict(self) -> dict:
        return {
            v: {"word": list(self.words[v]), "value": format_element(self.values[v])}
            for v in sorted(self.words, key=lambda s: (s == EPS, s))
        }


def double_mutation_sequence(g: Sequence[str]) -> tuple[str, ...]:
    """Each letter of g twice, order kept."""
    if EPS in g:
        raise QuiverError("the frozen letter cannot drive a mutation")
    return tuple(k for k in g for _ in range(2))


def apply_inner(q0: Quiver, g: Sequence[str], gens: Mapping[str, PartialSignedPerm] | None = None):
    """Replay the doubled sequence with tracking; the diagram must come back unchanged."""
    tq = replay(q0, double_mutation_sequence(g), gens)
    if diagram(tq.quiver) != diagram(q0):
        raise DiagramNotPreserved(f"word {list(g)} changed the diagram")
    return tq, GeneratorSet.of(tq)


def conjugated_set(q0: Quiver, g: Sequence[str], gens: Mapping[str, PartialSignedPerm] | None = None) -> frozenset:
    """{x s x^-1 : s in S} for x the value of g."""
    if gens is None:
        gens = realize_generators(q0.family, _rank(q0))
    x = evaluate_word(g, gens)
    xi = inverse(x)
    return frozenset(compose(compose(x, gens[v]), xi) for v in q0.labels)


def reflection_via_mutation(q0: Quiver, g: Sequence[str], i: str,
                            gens: Mapping[str, PartialSignedPerm] | None = None) -> PartialSignedPerm:
    _, gs = apply_inner(q0, g, gens)
    return gs.values[i]


def _rank(q: Quiver) -> int:
    return q.rank_mutable + 1 if q.family == "A" else q.rank_mutable


def longest_element(family: str, n: int) -> Word:
    """A word for the longest element of the Weyl group on the mutable generators."""
    check_rank(family, n)
    s = str
    if family == "A":
        word: list[str] = []
        for i in range(1, n):
            word += [s(j) for j in range(i, 0, -1)]
        return tuple(word)
    blocks = []
    if family == "B":
        for i in range(1, n + 1):
            up = [s(j) for j in range(i - 1, 0, -1)]
            blocks.append(tuple(up + ["0"] + up[::-1]))
    else:
        blocks = [("0",), ("1",)]
        for i in range(3, n + 1):
            up = [s(j) for j in range(i - 1, 1, -1)]
            blocks.append(tuple(up + ["1", "0"] + up[::-1]))
    return tuple(a for blk in reversed(blocks) for a in blk)


def check_center_fixes_eps(family: str, n: int) -> bool:
    gens = realize_generators(family, n)
    w = evaluate_word(longest_element(family, n), gens)
    return compose(compose(w, gens[EPS]), inverse(w)) == gens[EPS]


def is_central(family: str, n: int) -> bool:
    gens = realize_generators(family, n)
    w = evaluate_word(longest_element(family, n), gens)
    return all(compose(w, x) == compose(x, w) for x in gens.values())


def is_involution(family: str, n: int) -> bool:
    gens = realize_generators(family, n)
    w = evaluate_word(longest_element(family, n), gens)
    return compose(w, w) == evaluate_word((), gens)


def generator_set_ok(q: Quiver, gs: GeneratorSet) -> bool:
    return check_relations(present(q), gs.values).passed
