"""Mutation classes of quivers with a frozen vertex and their structural descriptions."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .quiver import (
    EPS,
    InvariantViolation,
    Quiver,
    canonical_form,
    chordless_cycles,
    components,
    is_connected,
    mutate,
    sort_labels,
    standard_quiver,
    weight,
)


class NoMatch(ValueError):
    pass


class Ambiguous(RuntimeError):
    pass


# ---------------------------------------------------------------- catalog

@dataclass
class ClassMember:
    key: bytes
    quiver: Quiver
    witness: tuple[str, ...]  # pivots from the seed quiver


@dataclass
class ClassCatalog:
    family: str
    rank: int
    members: list[ClassMember]
    adjacency: dict[tuple[int, str], int]

    def __len__(self) -> int:
        return len(self.members)

    def index_of(self, q: Quiver) -> int | None:
        key = canonical_form(q)
        for i, m in enumerate(self.members):
            if m.key == key:
                return i
        return None

    def to_dict(self) -> dict:
        from .quiver import to_dict

        return {
            "family": self.family,
            "rank": self.rank,
            "size": len(self.members),
            "members": [
                {"key": m.key.hex(), "witness": list(m.witness), "quiver": to_dict(m.quiver)}
                for m in self.members
            ],
            "adjacency": [
                {"from": i, "pivot": k, "to": j} for (i, k), j in sorted(self.adjacency.items())
            ],
        }


def enumerate_class(q0: Quiver, rank: int | None = None) -> ClassCatalog:
    """Breadth-first closure under mutation at every mutable vertex, deduplicated by canonical key."""
    start = ClassMember(canonical_form(q0), q0, ())
    members = [start]
    seen = {start.key: 0}
    adjacency: dict[tuple[int, str], int] = {}
    dq = deque([0])
    pivots = sort_labels(q0.mutable)
    while dq:
        i = dq.popleft()
        cur = members[i]
        for k in pivots:
            nq = mutate(cur.quiver, k)
            key = canonical_form(nq)
            j = seen.get(key)
            if j is None:
                j = len(members)
                seen[key] = j
                members.append(ClassMember(key, nq, cur.witness + (k,)))
                dq.append(j)
            adjacency[(i, k)] = j
    if rank is None:
        rank = q0.rank_mutable + (1 if q0.family == "A" else 0)
    return ClassCatalog(q0.family, rank, members, adjacency)


def standard_class(family: str, n: int) -> ClassCatalog:
    return enumerate_class(standard_quiver(family, n), n)


# ---------------------------------------------------------------- type A conditions

def _adj(q: Quiver, vs: set[str]) -> dict[str, set[str]]:
    return {v: {w for w in q.neighbours(v) if w in vs} for v in vs}


def _triangles_at(adj: dict[str, set[str]], v: str) -> list[frozenset]:
    nb = sorted(adj[v])
    return [frozenset((a, b)) for a, b in itertools.combinations(nb, 2) if b in adj[a]]


def a_conditions(q: Quiver, vs: Iterable[str]) -> bool:
    """Type-A mutation-class conditions on the full subquiver spanned by ``vs``.

    Connected, weight 1, every chordless cycle an oriented triangle, at most four
    arrows per vertex, four arrows split over two triangles, three arrows made of
    one triangle plus an arrow in no triangle. When eps is among ``vs`` it has at
    most two arrows, and two only inside an oriented triangle.
    """
    vs = set(vs)
    if not vs or not is_connected(q, vs):
        return False
    for a, b in itertools.combinations(vs, 2):
        if weight(q, a, b) not in (0, 1):
            return False
    try:
        cycles = chordless_cycles(q, vs)
    except InvariantViolation:
        return False
    if any(len(c) != 3 for c in cycles):
        return False
    adj = _adj(q, vs)
    for v in vs:
        deg = len(adj[v])
        tris = _triangles_at(adj, v)
        if deg > 4:
            return False
        if deg == 4:
            if len(tris) != 2 or tris[0] & tris[1]:
                return False
        elif deg == 3:
            if len(tris) != 1:
                return False
    if EPS in vs:
        deg = len(adj[EPS])
        if deg > 2:
            return False
        if deg == 2 and len(_triangles_at(adj, EPS)) != 1:
            return False
    return True


def check_A_eps(q: Quiver) -> bool:
    return a_conditions(q, q.labels)


def _a_piece(q: Quiver, vs: set[str]) -> bool:
    # eps-containing pieces must satisfy the frozen-vertex condition, others the plain ones
    return a_conditions(q, vs)


def connecting_vertices(q: Quiver, vs: Iterable[str] | None = None) -> set[str]:
    """Vertices with at most two neighbours, lying on a triangle when they have two."""
    vs = set(q.labels if vs is None else vs)
    adj = _adj(q, vs)
    out = set()
    for v in vs:
        if len(adj[v]) <= 1:
            out.add(v)
        elif len(adj[v]) == 2:
            a, b = adj[v]
            if b in adj[a]:
                out.add(v)
    return out


# ---------------------------------------------------------------- type B

@dataclass
class BShapeReport:
    shape: str  # "pendant" or "triangle"
    roles: dict[str, str]
    one_side_single: bool = True  # False when both pieces left by the triangle have several vertices


def _piece_through(q: Quiver, vs: set[str], start: str, cut: tuple[str, str]) -> set[str]:
    adj = _adj(q, vs)
    x, y = cut
    adj[x].discard(y)
    adj[y].discard(x)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def b_shapes(q: Quiver) -> list[BShapeReport]:
    """Ways to read q as a type-A quiver with a weight-2 vertex glued on.

    pendant: vertex 0 hangs by a weight-2 edge off a connecting vertex a.
    triangle: 0 closes an oriented triangle over an edge a - b; deleting 0 and
    that edge leaves one type-A piece through a and one through b, with a and b
    connecting vertices of their pieces.
    """
    allv = set(q.labels)
    out = []
    for z in q.mutable:
        nb = q.neighbours(z)
        heavy = [v for v in nb if weight(q, z, v) == 2]
        if len(heavy) != len(nb) or not heavy:
            continue
        rest = allv - {z}
        if any(weight(q, u, v) > 1 for u, v in itertools.combinations(rest, 2)):
            continue
        if len(heavy) == 1:
            a = heavy[0]
            if a != EPS and a_conditions(q, rest) and a in connecting_vertices(q, rest):
                out.append(BShapeReport("pendant", {"0": z, "a": a}))
        elif len(heavy) == 2:
            a, b = sort_labels(heavy)
            if weight(q, a, b) != 1 or len(chordless_cycles(q, {z, a, b})) != 1:
                continue
            pa = _piece_through(q, rest, a, (a, b))
            if b in pa:
                continue
            pb = rest - pa
            if not (a_conditions(q, pa) and a_conditions(q, pb)):
                continue
            if a in connecting_vertices(q, pa) and b in connecting_vertices(q, pb):
                if EPS in pb:
                    a, b, pa, pb = b, a, pb, pa
                out.append(BShapeReport("triangle", {"0": z, "a": a, "b": b}, one_side_single=min(len(pa), len(pb)) == 1))
    return out


def eps_condition(q: Quiver) -> bool:
    """At most two arrows at eps, and two only when eps sits on an oriented triangle."""
    allv = set(q.labels)
    adj = _adj(q, allv)
    deg = len(adj[EPS])
    return deg <= 1 or (deg == 2 and len(_triangles_at(adj, EPS)) == 1)


def check_B_eps(q: Quiver) -> bool:
    try:
        return eps_condition(q) and bool(b_shapes(q))
    except InvariantViolation:
        return False


# ---------------------------------------------------------------- type D

@dataclass
class DShapeReport:
    shape: str  # TypeI .. TypeIV
    roles: dict[str, str]
    central_cycle: tuple[str, ...] = ()
    spikes: list[tuple[tuple[str, str], str]] = field(default_factory=list)
    eps_component: frozenset = frozenset()

    def signature(self) -> tuple:
        return (self.shape, tuple(sorted(self.roles.items())), self.central_cycle)


def _split_ok(q: Quiver, removed: set[str], attach: dict[str, str]) -> tuple[bool, frozenset]:
    """Remaining vertices split into one component per attachment vertex, each of type A."""
    rest = set(q.labels) - removed
    comps = components(q, rest)
    if len(comps) != len(attach):
        return False, frozenset()
    eps_comp = frozenset()
    for comp in comps:
        inside = [v for v in attach if v in comp]
        if len(inside) != 1:
            return False, frozenset()
        if not _a_piece(q, comp) or inside[0] not in connecting_vertices(q, comp):
            return False, frozenset()
        if EPS in comp:
            eps_comp = frozenset(comp)
    return True, eps_comp


def _type_one(q: Quiver) -> list[DShapeReport]:
    out = []
    pend = [v for v in q.mutable if len(q.neighbours(v)) == 1]
    for a, b in itertools.combinations(sort_labels(pend), 2):
        (ca,), (cb,) = q.neighbours(a), q.neighbours(b)
        if ca != cb:
            continue
        rest = set(q.labels) - {a, b}
        if ca != EPS and a_conditions(q, rest) and ca in connecting_vertices(q, rest):
            out.append(DShapeReport("TypeI", {"a": a, "b": b, "c": ca}, eps_component=frozenset(rest)))
    return out


def _type_two_three(q: Quiver) -> list[DShapeReport]:
    out = []
    mut = q.mutable
    # type II: a, b each adjacent exactly to c and d, with c -> a -> d, c -> b -> d, d -> c
    for a, b in itertools.combinations(sort_labels(mut), 2):
        na, nb = set(q.neighbours(a)), set(q.neighbours(b))
        if na != nb or len(na) != 2:
            continue
        x, y = sort_labels(na)
        for c, d in ((x, y), (y, x)):
            arrows = [(c, a), (a, d), (c, b), (b, d), (d, c)]
            if not all(q.has_arrow(s, t) for s, t in arrows):
                continue
            for c2, d2 in ((c, d), (d, c)):
                ok, ec = _split_ok_cut(q, {a, b}, c2, d2)
                if ok and not (c2 == EPS and len(ec) > 1):
                    out.append(DShapeReport("TypeII", {"a": a, "b": b, "c": c2, "d": d2}, eps_component=ec))
    # type III: full oriented 4-cycle a -> d -> b -> c -> a with a, b of degree two
    for cyc in chordless_cycles(q):
        if len(cyc) != 4:
            continue
        vs = cyc.vertices
        for r in range(2):
            a, b = vs[r], vs[r + 2]
            if a == EPS or b == EPS:
                continue
            if len(q.neighbours(a)) != 2 or len(q.neighbours(b)) != 2:
                continue
            others = [vs[r + 1], vs[(r + 3) % 4]]
            for c, d in (others, others[::-1]):
                ok, ec = _split_ok(q, {a, b}, {c: "c", d: "d"})
                if ok and EPS in ec and c in ec and not (c == EPS and len(ec) > 1):
                    aa, bb = (a, b) if q.has_arrow(c, a) else (b, a)
                    out.append(DShapeReport("TypeIII", {"a": aa, "b": bb, "c": c, "d": d}, eps_component=ec))
    return out


def _split_ok_cut(q: Quiver, removed: set[str], c: str, d: str) -> tuple[bool, frozenset]:
    # remove a, b and the arrow between c and d; c's piece holds eps
    rest = set(q.labels) - removed
    adj = _adj(q, rest)
    adj[c].discard(d)
    adj[d].discard(c)
    seen = {c}
    stack = [c]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if d in seen or EPS not in seen:
        return False, frozenset()
    other = rest - seen
    if not a_conditions(q, seen) or c not in connecting_vertices(q, seen):
        return False, frozenset()
    if not a_conditions(q, other) or d not in connecting_vertices(q, other):
        return False, frozenset()
    return True, frozenset(seen)


def _type_four(q: Quiver) -> list[DShapeReport]:
    out = []
    for cyc in chordless_cycles(q):
        vs = cyc.vertices
        if EPS in vs or any(w != 1 for w in cyc.weights):
            continue
        d = len(vs)
        on = set(vs)
        spikes = []
        ok = True
        for i in range(d):
            x, y = vs[i], vs[(i + 1) % d]
            cand = [c for c in set(q.neighbours(x)) & set(q.neighbours(y)) if c not in on]
            if len(cand) > 1:
                ok = False
                break
            if cand:
                c = cand[0]
                if not (q.has_arrow(y, c) and q.has_arrow(c, x)):
                    ok = False
                    break
                if set(q.neighbours(c)) & on != {x, y}:
                    ok = False
                    break
                spikes.append(((x, y), c))
        if not ok:
            continue
        spike_vs = {c for _, c in spikes}
        if any(set(q.neighbours(v)) - on - spike_vs for v in vs):
            continue
        good, ec = _split_ok(q, on, {c: "spike" for c in spike_vs})
        if not good or EPS not in ec:
            continue
        (arc, cp), = [(arc, c) for arc, c in spikes if c in ec]
        if cp == EPS and len(ec) > 1:
            continue
        head = arc[1]
        r = vs.index(head)
        central = tuple(vs[r:]) + tuple(vs[:r])
        out.append(DShapeReport("TypeIV", {"c'": cp}, central, spikes, ec))
    return out


def d_shape_matches(q: Quiver) -> list[DShapeReport]:
    if any(w != 1 for _, _, w in q.arrows()):
        return []
    try:
        return _type_one(q) + _type_two_three(q) + _type_four(q)
    except InvariantViolation:
        return []


def classify_D_eps(q: Quiver) -> DShapeReport:
    """Match q against the four D shapes; one report, chosen deterministically."""
    found = d_shape_matches(q)
    if not found:
        raise NoMatch("quiver matches none of the D shapes")
    shapes = {r.shape for r in found}
    if len(shapes) > 1:
        raise Ambiguous(f"quiver matches several D shapes: {sorted(shapes)}")
    return min(found, key=lambda r: [tuple(sorted(r.roles.items())), r.central_cycle])


def check_D_eps(q: Quiver) -> bool:
    return bool(d_shape_matches(q))


# ---------------------------------------------------------------- both directions of the characterization

PREDICATES = {"A": check_A_eps, "B": check_B_eps, "D": check_D_eps}


@dataclass
class CharacterizationReport:
    family: str
    rank: int
    class_size: int
    members_failing_predicate: list[int]
    predicate_quivers: int
    predicate_quivers_missing: int

    @property
    def sound(self) -> bool:
        return not self.members_failing_predicate

    @property
    def complete(self) -> bool:
        return self.predicate_quivers_missing == 0

    @property
    def passed(self) -> bool:
        return self.sound and self.complete


def all_quivers_on(template: Quiver) -> Iterable[Quiver]:
    """Every valid exchange matrix on the template's vertices and symmetrizer with weights <= 2."""
    n = template.size
    d = template.d
    pairs = list(itertools.combinations(range(n), 2))
    options = []
    for i, j in pairs:
        opts = [(0, 0)]
        for bij in (1, 2):
            for bji in (1, 2):
                if d[i] * bij == d[j] * bji and bij * bji <= 2:
                    opts += [(bij, -bji), (-bij, bji)]
        options.append(opts)
    for choice in itertools.product(*options):
        b = [[0] * n for _ in range(n)]
        for (i, j), (x, y) in zip(pairs, choice):
            b[i][j], b[j][i] = x, y
        yield Quiver(template.labels, tuple(map(tuple, b)), d, template.family)


def verify_class_characterization(family: str, n: int, exhaustive: bool = True) -> CharacterizationReport:
    """Class members satisfy the predicate, and every predicate quiver on the same vertices is a member."""
    cat = standard_class(family, n)
    pred = PREDICATES[family]
    failing = [i for i, m in enumerate(cat.members) if not pred(m.quiver)]
    keys = {m.key for m in cat.members}
    total = missing = 0
    if exhaustive:
        for q in all_quivers_on(cat.members[0].quiver):
            if pred(q):
                total += 1
                if canonical_form(q) not in keys:
                    missing += 1
    return CharacterizationReport(family, n, len(cat), failing, total, missing)
