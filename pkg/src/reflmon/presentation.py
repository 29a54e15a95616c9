"""Monoid presentations read off a quiver, plus the reference presentations they should match."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .quiver import (
    EPS,
    Quiver,
    QuiverError,
    check_rank,
    chordless_cycles,
    shortest_path_to_frozen,
    sort_labels,
    weight,
)

Word = tuple[str, ...]
TAGS = ("R1", "R2", "R3i", "R3ii", "R3iii", "R4i", "R4ii", "GroupCycle", "Coxeter", "Ref")


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word
    tag: str

    def __post_init__(self):
        if self.tag not in TAGS:
            raise PresentationError(f"unknown tag {self.tag}")
        if not self.lhs:
            raise PresentationError("relation left side must be nonempty")

    def key(self) -> frozenset:
        return frozenset((self.lhs, self.rhs))

    def letters(self) -> set[str]:
        return set(self.lhs) | set(self.rhs)

    def __str__(self) -> str:
        fmt = lambda w: " ".join(w) if w else "e"
        return f"{fmt(self.lhs)} = {fmt(self.rhs)}  [{self.tag}]"


@dataclass
class Presentation:
    generators: list[str]
    relations: list[Relation] = field(default_factory=list)
    kind: str = "monoid"

    def __post_init__(self):
        gens = set(self.generators)
        for r in self.relations:
            if not r.letters() <= gens:
                raise PresentationError(f"relation {r} uses letters outside {self.generators}")
        seen, uniq = set(), []
        for r in self.relations:
            if r.key() not in seen:
                seen.add(r.key())
                uniq.append(r)
        self.relations = uniq

    def relation_keys(self) -> set[frozenset]:
        return {r.key() for r in self.relations}

    def equated_classes(self) -> frozenset[frozenset[Word]]:
        """Words grouped by the chains of equalities the relations spell out."""
        parent: dict[Word, Word] = {}

        def find(w: Word) -> Word:
            parent.setdefault(w, w)
            while parent[w] != w:
                w = parent[w]
            return w

        for r in self.relations:
            a, b = find(r.lhs), find(r.rhs)
            if a != b:
                parent[a] = b
        groups: dict[Word, set[Word]] = {}
        for w in list(parent):
            groups.setdefault(find(w), set()).add(w)
        return frozenset(frozenset(g) for g in groups.values())

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "generators": list(self.generators),
            "relations": [{"lhs": list(r.lhs), "rhs": list(r.rhs), "tag": r.tag} for r in self.relations],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Presentation":
        rels = [Relation(tuple(r["lhs"]), tuple(r["rhs"]), r["tag"]) for r in data["relations"]]
        return cls(list(data["generators"]), rels, data.get("kind", "monoid"))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def alternating(a: str, b: str, m: int) -> Word:
    """(a b a ...) with m letters."""
    return tuple(a if i % 2 == 0 else b for i in range(m))


def power(word: Sequence[str], k: int) -> Word:
    return tuple(word) * k


def palindrome(vs: Sequence[str]) -> Word:
    """v1 v2 ... vk ... v2 v1."""
    vs = tuple(vs)
    return vs + tuple(reversed(vs[:-1]))


# ---------------------------------------------------------------- m-table

_M_MUT = {0: 2, 1: 3, 2: 4, 3: 6}
_M_EPS = {0: (2, 2), 1: (3, 4), 2: (1, 2)}


def m_table(q: Quiver) -> dict[tuple[str, str], object]:
    """m_ij for mutable pairs (symmetric), (m_eps_j, m_j_eps) for pairs with eps, 1 on the diagonal."""
    out: dict[tuple[str, str], object] = {}
    for i in q.labels:
        out[(i, i)] = 1
    mut = q.mutable
    for i in mut:
        for j in mut:
            if i != j:
                w = weight(q, i, j)
                if w not in _M_MUT:
                    raise PresentationError(f"unsupported weight {w}")
                out[(i, j)] = _M_MUT[w]
    for j in mut:
        w = weight(q, EPS, j)
        if w not in _M_EPS:
            raise PresentationError(f"unsupported weight {w} between eps and {j}")
        out[(EPS, j)] = _M_EPS[w]
        out[(j, EPS)] = _M_EPS[w]
    return out


# ---------------------------------------------------------------- relation families

def coxeter_relations(q: Quiver) -> list[Relation]:
    mt = m_table(q)
    mut = sort_labels(q.mutable)
    rels = [Relation((i, i), (), "R1") for i in mut]
    for a, i in enumerate(mut):
        for j in mut[a + 1:]:
            rels.append(Relation(power((i, j), mt[(i, j)]), (), "R2"))
    return rels


def eps_relations(q: Quiver) -> list[Relation]:
    mt = m_table(q)
    rels = []
    for j in sort_labels(q.mutable):
        me, mj = mt[(EPS, j)]
        if (me, mj) == (2, 2):
            rels.append(Relation((EPS, j), (j, EPS), "R2"))
            continue
        left = alternating(EPS, j, me)
        mid = alternating(j, EPS, mj)
        right = alternating(EPS, j, me + 1)
        rels.append(Relation(left, mid, "R2"))
        rels.append(Relation(mid, right, "R2"))
    return rels


def relations_R1_R2(q: Quiver) -> list[Relation]:
    cox = coxeter_relations(q)
    r1 = [r for r in cox if r.tag == "R1"] + [Relation((EPS, EPS), (EPS,), "R1")]
    r2 = [r for r in cox if r.tag == "R2"] + eps_relations(q)
    return r1 + r2


def _mutable_cycle_relation(vertices: Sequence[str], weights: Sequence[int]) -> Relation | None:
    """(s_i0 s_i1 ... s_i(d-1) ... s_i1)^2 = e for the rotation whose closing arc has weight 2."""
    d = len(vertices)
    if all(w == 1 for w in weights):
        start = 0
    else:
        # weights[r-1] is the arc entering vertices[r]
        cands = [r for r in range(d) if weights[r - 1] == 2]
        if not cands:
            raise PresentationError(f"unsupported cycle weights {weights}")
        start = min(cands, key=lambda r: sort_labels(vertices).index(vertices[r]))
    rot = tuple(vertices[start:]) + tuple(vertices[:start])
    word = (rot[0],) + palindrome(rot[1:])
    return Relation(power(word, 2), (), "R3i")


def relations_R3(q: Quiver) -> list[Relation]:
    rels = []
    for cyc in chordless_cycles(q):
        vs, ws = cyc.vertices, cyc.weights
        if not cyc.contains_frozen:
            rels.append(_mutable_cycle_relation(vs, ws))
            continue
        # vs starts at eps: eps -> i1 -> ... -> i_{d-1} -> eps
        inner = vs[1:]
        if all(w == 1 for w in ws):
            w = palindrome(inner)
            rels.append(Relation((EPS,) + w, w + (EPS,), "R3ii"))
        elif len(vs) == 3 and ws[1] == 2:
            i1, i2 = inner
            if (ws[0], ws[2]) == (1, 2):
                rels.append(Relation((EPS, i1, i2, i1), (i1, i2, i1, EPS), "R3iii"))
            elif (ws[0], ws[2]) == (2, 1):
                rels.append(Relation((i1, i2, EPS, i2), (i2, EPS, i2, i1), "R3iii"))
            else:
                raise PresentationError(f"unsupported weights {ws} on cycle {vs}")
        else:
            raise PresentationError(f"unsupported weights {ws} on cycle {vs}")
    return rels


def _path_word(q: Quiver, c: str) -> Word:
    return tuple(shortest_path_to_frozen(q, c))


def _there_and_back(q: Quiver, c: str) -> Word:
    # P(s_c, s_eps) P(s_eps, s_c) with the doubled eps merged
    p = _path_word(q, c)
    return p + tuple(reversed(p[:-1]))


def r4_b_relations(q: Quiver) -> list[Relation]:
    special = [v for v, dv in zip(q.labels, q.d) if dv != max(q.d)]
    if len(special) != 1:
        raise PresentationError("B-type quiver needs exactly one short-root vertex")
    path = _path_word(q, special[0])
    rest = path[1:]
    return [
        Relation(path, rest, "R4i"),
        Relation(tuple(reversed(path)), tuple(reversed(rest)), "R4i"),
    ]


def r4_d_relations(q: Quiver, reversed_cycle: bool = False) -> list[Relation]:
    from .mutation_class import classify_D_eps

    rep = classify_D_eps(q)
    if rep.shape in ("TypeI", "TypeII", "TypeIII"):
        a, b = rep.roles["a"], rep.roles["b"]
        return [Relation(_there_and_back(q, a), _there_and_back(q, b), "R4ii")]
    cyc = list(rep.central_cycle)
    if reversed_cycle:
        cyc = [cyc[0]] + list(reversed(cyc[1:]))
    x = _there_and_back(q, rep.roles["c'"])
    tail = tuple(cyc[1:])
    lhs = (cyc[0],) + x + (cyc[0],)
    rhs = tail + x + tuple(reversed(tail))
    return [Relation(lhs, rhs, "R4ii")]


def relations_R4(q: Quiver) -> list[Relation]:
    if q.family == "A":
        return []
    if q.family == "B":
        return r4_b_relations(q)
    if q.family == "D":
        return r4_d_relations(q)
    raise PresentationError(f"unknown family {q.family!r}")


def present(q: Quiver) -> Presentation:
    gens = sort_labels(q.labels)
    rels = relations_R1_R2(q) + relations_R3(q) + relations_R4(q)
    return Presentation(gens, rels, "monoid")


def group_presentation(q: Quiver) -> Presentation:
    """Coxeter relations and mutable-cycle relations; eps is dropped."""
    rels = coxeter_relations(q)
    for cyc in chordless_cycles(q):
        if not cyc.contains_frozen:
            r = _mutable_cycle_relation(cyc.vertices, cyc.weights)
            rels.append(Relation(r.lhs, r.rhs, "GroupCycle"))
    return Presentation(sort_labels(q.mutable), rels, "group")


# ---------------------------------------------------------------- reference presentations

def _coxeter_from_edges(gens: Sequence[str], edges: dict[frozenset, int]) -> list[Relation]:
    rels = [Relation((g, g), (), "Coxeter") for g in gens]
    for a, i in enumerate(gens):
        for j in gens[a + 1:]:
            m = edges.get(frozenset((i, j)), 2)
            rels.append(Relation(power((i, j), m), (), "Coxeter"))
    return rels


def reference_presentation(family: str, n: int) -> Presentation:
    """Reference presentations of the Boolean reflection monoids of types A_{n-1}, B_n, D_n."""
    check_rank(family, n)
    E = EPS
    if family == "A":
        gens = [str(i) for i in range(1, n)]
        edges = {frozenset((str(i), str(i + 1))): 3 for i in range(1, n - 1)}
        rels = _coxeter_from_edges(gens, edges)
        rels.append(Relation((E, E), (E,), "Ref"))
        rels += [Relation((g, E), (E, g), "Ref") for g in gens if g != "1"]
        rels += [Relation((E, "1", E, "1"), ("1", E, "1", E), "Ref"),
                 Relation(("1", E, "1", E), (E, "1", E), "Ref")]
    elif family == "B":
        gens = [str(i) for i in range(n)]
        edges = {frozenset(("0", "1")): 4}
        edges.update({frozenset((str(i), str(i + 1))): 3 for i in range(1, n - 1)})
        rels = _coxeter_from_edges(gens, edges)
        rels.append(Relation((E, E), (E,), "Ref"))
        rels.append(Relation(("0", "1", E, "1"), ("1", E, "1", "0"), "Ref"))
        rels.append(Relation(("0", E), (E,), "Ref"))
        rels += [Relation((g, E), (E, g), "Ref") for g in gens if g != "1"]
        rels += [Relation(("1", E, "1", E), (E, "1", E, "1"), "Ref"),
                 Relation((E, "1", E, "1"), (E, "1", E), "Ref")]
    else:
        gens = [str(i) for i in range(n)]
        edges = {frozenset(("0", "2")): 3, frozenset(("1", "2")): 3}
        edges.update({frozenset((str(i), str(i + 1))): 3 for i in range(2, n - 1)})
        rels = _coxeter_from_edges(gens, edges)
        rels.append(Relation((E, E), (E,), "Ref"))
        rels += [Relation((g, E), (E, g), "Ref") for g in gens if int(g) > 1]
        rels += [Relation((E, "1", E, "1"), ("1", E, "1", E), "Ref"),
                 Relation(("1", E, "1", E), (E, "1", E), "Ref")]
        rels.append(Relation(("0", E, "0"), ("1", E, "1"), "Ref"))
        rels.append(Relation(("0", "2", "1", E, "1", "2"), ("2", "1", E, "1", "2", "0"), "Ref"))
    return Presentation(gens + [E], rels, "monoid")


def relation_sets_equal(p1: Presentation, p2: Presentation, realization, **kwargs) -> bool:
    """Both presentations hold in the realization and both pin down the same finite monoid.

    Completeness is judged with the rewriting certificate from the verification module.
    """
    from .verification import check_relations, presentation_certificate

    if set(p1.generators) != set(p2.generators):
        return False
    missing = set(p1.generators) - set(realization)
    if missing:
        raise PresentationError(f"realization lacks generators {sorted(missing)}")
    if not (check_relations(p1, realization).passed and check_relations(p2, realization).passed):
        return False
    c1 = presentation_certificate(p1, realization, **kwargs)
    c2 = presentation_certificate(p2, realization, **kwargs)
    return c1.complete and c2.complete and c1.class_count == c2.class_count
