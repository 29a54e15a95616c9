"""Machine checks: generator tracking under mutation, relation satisfaction, completeness evidence."""
from __future__ import annotations

import itertools
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .monoid import (
    EnumeratedMonoid,
    PartialSignedPerm,
    compose,
    evaluate_word,
    format_element,
    generator_closure,
    realize_generators,
)
from .mutation_class import ClassCatalog, standard_class
from .presentation import Presentation, Relation, Word, present
from .quiver import EPS, Quiver, QuiverError, mutate, opposite, sort_labels, standard_quiver, weight


class CongruenceCapExceeded(RuntimeError):
    pass


def free_reduce(word: Sequence[str]) -> Word:
    """Cancel adjacent equal letters: s s -> e for mutable s, eps eps -> eps."""
    out: list[str] = []
    for a in word:
        if out and out[-1] == a:
            if a != EPS:
                out.pop()
        else:
            out.append(a)
    return tuple(out)


# ---------------------------------------------------------------- tracking

@dataclass(frozen=True)
class TrackedQuiver:
    quiver: Quiver
    words: dict[str, Word]
    values: dict[str, PartialSignedPerm]
    base: dict[str, PartialSignedPerm]  # initial generators the words are written in

    @classmethod
    def initial(cls, q: Quiver, gens: Mapping[str, PartialSignedPerm] | None = None) -> "TrackedQuiver":
        if gens is None:
            gens = realize_generators(q.family, _rank_of(q))
        gens = dict(gens)
        words = {v: (v,) for v in q.labels}
        return cls(q, words, {v: gens[v] for v in q.labels}, gens)

    def check(self) -> bool:
        return all(evaluate_word(self.words[v], self.base) == self.values[v] for v in self.quiver.labels)


def _rank_of(q: Quiver) -> int:
    return q.rank_mutable + 1 if q.family == "A" else q.rank_mutable


def mutate_tracked(tq: TrackedQuiver, k: str) -> TrackedQuiver:
    """Mutate at k; every vertex with an arrow into k gets conjugated by the current word at k."""
    if k == EPS:
        raise QuiverError("the frozen vertex cannot be a mutation pivot")
    q = tq.quiver
    wk = tq.words[k]
    words = dict(tq.words)
    for i in q.labels:
        if i != k and q.has_arrow(i, k):
            words[i] = free_reduce(wk + tq.words[i] + wk)
    values = {v: evaluate_word(w, tq.base) for v, w in words.items()}
    return TrackedQuiver(mutate(q, k), words, values, tq.base)


def replay(q0: Quiver, pivots: Iterable[str], gens: Mapping[str, PartialSignedPerm] | None = None) -> TrackedQuiver:
    tq = TrackedQuiver.initial(q0, gens)
    for k in pivots:
        tq = mutate_tracked(tq, k)
    return tq


# ---------------------------------------------------------------- relation checks

@dataclass
class Failure:
    relation: Relation
    lhs_value: PartialSignedPerm
    rhs_value: PartialSignedPerm

    def to_dict(self) -> dict:
        return {
            "relation": str(self.relation),
            "lhs": format_element(self.lhs_value),
            "rhs": format_element(self.rhs_value),
        }


@dataclass
class VerificationReport:
    quiver_id: str
    relations_checked: int
    failures: list[Failure] = field(default_factory=list)
    closure_ok: bool | None = None

    @property
    def passed(self) -> bool:
        return not self.failures and self.closure_ok is not False

    def to_dict(self) -> dict:
        return {
            "quiver": self.quiver_id,
            "relations_checked": self.relations_checked,
            "failures": [f.to_dict() for f in self.failures],
            "closure_ok": self.closure_ok,
            "passed": self.passed,
        }


def check_relations(p: Presentation, realization: Mapping[str, PartialSignedPerm], quiver_id: str = "") -> VerificationReport:
    n = next(iter(realization.values())).n
    rep = VerificationReport(quiver_id, len(p.relations))
    for r in p.relations:
        a = evaluate_word(r.lhs, realization, n)
        b = evaluate_word(r.rhs, realization, n)
        if a != b:
            rep.failures.append(Failure(r, a, b))
    return rep


def _verify_member(args) -> VerificationReport:
    family, n, idx, witness, member_q, full = args
    base = realize_generators(family, n)
    tq = replay(standard_quiver(family, n), witness, base)
    qid = f"{family}{n}#{idx}:" + ",".join(witness)
    if tq.quiver != member_q:
        return VerificationReport(qid, 0, closure_ok=False)
    rep = check_relations(present(tq.quiver), tq.values, qid)
    rep.closure_ok = len(generator_closure(list(tq.values.values()))) == full
    return rep


def verify_mutation_invariance(family: str, n: int, catalog: ClassCatalog | None = None,
                               workers: int = 1) -> list[VerificationReport]:
    """Replay every class member's witness with tracking and check its presentation concretely.

    Each report also records whether the tracked values generate the whole monoid.
    """
    full = len(generator_closure(list(realize_generators(family, n).values())))
    if catalog is None:
        catalog = standard_class(family, n)
    jobs = [(family, n, i, m.witness, m.quiver, full) for i, m in enumerate(catalog.members)]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as ex:
            return list(ex.map(_verify_member, jobs))
    return [_verify_member(j) for j in jobs]


def check_opposite_invariance(q: Quiver, realization: Mapping[str, PartialSignedPerm]) -> bool:
    return check_relations(present(opposite(q)), realization).passed


# ---------------------------------------------------------------- bounded congruence

def _reduced_words(alphabet: Sequence[str], L: int) -> list[Word]:
    out: list[Word] = [()]
    layer: list[Word] = [()]
    for _ in range(L):
        nxt = [w + (a,) for w in layer for a in alphabet if not w or w[-1] != a]
        out.extend(nxt)
        layer = nxt
    return out


def _rules(p: Presentation) -> list[tuple[Word, Word]]:
    rules = []
    for r in p.relations:
        lhs, rhs = free_reduce(r.lhs), free_reduce(r.rhs)
        if lhs != rhs:
            rules.append((lhs, rhs))
            rules.append((rhs, lhs))
    return rules


def _split_rules(p: Presentation, depth: int = 1) -> list[tuple[Word, Word]]:
    """From u = e over involutions, every rotation x y of u gives x = reverse(y)."""
    out = set()
    for r in p.relations:
        if r.rhs or EPS in r.lhs:
            continue
        u = free_reduce(r.lhs)
        for k in range(len(u)):
            rot = u[k:] + u[:k]
            for i in range(1, len(rot)):
                x, y = rot[:i], tuple(reversed(rot[i:]))
                if len(x) <= len(y) + 1 and len(y) <= len(x) + 1:
                    out.add((x, y))
    # move outer involutions across: a x = y gives x = a y, and likewise on the right
    frontier = {(free_reduce(a), free_reduce(b)) for r in p.relations for a, b in ((r.lhs, r.rhs), (r.rhs, r.lhs))}
    for _ in range(depth):
        nxt = set()
        for l, rr in frontier:
            if l and l[0] != EPS:
                nxt.add((l[1:], free_reduce((l[0],) + rr)))
            if l and l[-1] != EPS:
                nxt.add((l[:-1], free_reduce(rr + (l[-1],))))
        nxt |= {(b, a) for a, b in nxt}
        out |= nxt
        frontier = nxt
    return sorted((x, y) for x, y in out if x and x != y)


def _splice(a: Word, mid: Word, b: Word) -> Word:
    # pieces are reduced already, so cancellation can only start at a junction
    if (a and mid and a[-1] == mid[0]) or (mid and b and mid[-1] == b[0]) or (not mid and a and b and a[-1] == b[0]):
        return free_reduce(a + mid + b)
    return a + mid + b


def _index(rules: Sequence[tuple[Word, Word]]) -> dict[str, list[tuple[Word, Word]]]:
    out: dict[str, list[tuple[Word, Word]]] = {}
    for lhs, rhs in rules:
        if lhs:
            out.setdefault(lhs[0], []).append((lhs, rhs))
    return out


def _neighbours(w: Word, rules, inserts: Sequence[Word], L: int) -> Iterable[Word]:
    """Words one rewrite away from w, no longer than L. ``rules`` may be pre-indexed by first letter."""
    if not isinstance(rules, dict):
        rules = _index(rules)
    n = len(w)
    for i, c in enumerate(w):
        for lhs, rhs in rules.get(c, ()):
            k = len(lhs)
            if i + k <= n and w[i:i + k] == lhs:
                v = _splice(w[:i], rhs, w[i + k:])
                if len(v) <= L:
                    yield v
    for ins in inserts:
        for i in range(n + 1):
            v = _splice(w[:i], ins, w[i:])
            if len(v) <= L and v != w:
                yield v


@dataclass
class CongruenceLevel:
    L: int
    words: int
    classes: int
    values: int
    sound: bool
    bijective: bool


@dataclass
class CongruenceResult:
    levels: list[CongruenceLevel]
    monoid_size: int
    classes: dict[Word, PartialSignedPerm]  # class representative (shortlex least) -> value

    @property
    def sound(self) -> bool:
        return all(lv.sound for lv in self.levels)

    @property
    def bijective(self) -> bool:
        return bool(self.levels) and self.levels[-1].bijective

    @property
    def class_count(self) -> int:
        return self.levels[-1].classes if self.levels else 0

    def to_dict(self) -> dict:
        return {
            "monoid_size": self.monoid_size,
            "class_count": self.class_count,
            "sound": self.sound,
            "bijective": self.bijective,
            "levels": [lv.__dict__ for lv in self.levels],
        }


def _congruence_at(p: Presentation, realization, L: int, arena_cap: int) -> tuple[CongruenceLevel, dict]:
    alphabet = list(p.generators)
    words = _reduced_words(alphabet, L)
    if len(words) > arena_cap:
        raise CongruenceCapExceeded(f"{len(words)} words at L={L}")
    index = {w: i for i, w in enumerate(words)}
    parent = list(range(len(words)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    rules = _rules(p)
    inserts = [free_reduce(r.lhs) for r in p.relations if not r.rhs] + \
              [free_reduce(r.rhs) for r in p.relations if not r.lhs]
    inserts = [w for w in inserts if w]
    rules = _index(rules)
    for i, w in enumerate(words):
        for v in _neighbours(w, rules, inserts, L):
            j = index[v]
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    n = next(iter(realization.values())).n
    cls_value: dict[int, PartialSignedPerm] = {}
    sound = True
    for i, w in enumerate(words):
        val = evaluate_word(w, realization, n)
        r = find(i)
        old = cls_value.setdefault(r, val)
        if old != val:
            sound = False
    values = set(cls_value.values())
    reps = {words[r]: v for r, v in cls_value.items()}
    level = CongruenceLevel(L, len(words), len(cls_value), len(values), sound, False)
    return level, reps


def bounded_word_congruence(p: Presentation, realization: Mapping[str, PartialSignedPerm], max_len: int = 14,
                            start: int | None = None, arena_cap: int = 2_000_000) -> CongruenceResult:
    """Union-find congruence over freely reduced words of bounded length, growing the bound.

    Stops at the first bound where the classes match the concrete monoid one to one.
    """
    size = len(generator_closure([realization[g] for g in p.generators]))
    if start is None:
        start = max(max(len(r.lhs), len(r.rhs)) for r in p.relations) + 2
    levels: list[CongruenceLevel] = []
    reps: dict = {}
    for L in range(min(start, max_len), max_len + 1):
        level, reps = _congruence_at(p, realization, L, arena_cap)
        level.bijective = level.sound and level.classes == level.values == size
        levels.append(level)
        if level.bijective:
            break
    return CongruenceResult(levels, size, reps)


# ---------------------------------------------------------------- rewriting certificate

@dataclass
class Certificate:
    complete: bool
    class_count: int
    pairs: int
    proved: int
    unproved: list[tuple[Word, str]] = field(default_factory=list)
    stages: list[tuple] = field(default_factory=list)
    lemmas: list[tuple[Word, Word]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "complete": self.complete,
            "class_count": self.class_count,
            "pairs": self.pairs,
            "proved": self.proved,
            "unproved": [[list(w), g] for w, g in self.unproved[:20]],
            "lemmas": [[list(u), list(v)] for u, v in self.lemmas],
        }


def _bidirectional(a: Word, b: Word, rules, inserts, L: int, cap: int) -> bool:
    """Meet-in-the-middle search for a rewrite chain a ~ b through words of length <= L."""
    if a == b:
        return True
    side = [{a}, {b}]
    front = [[a], [b]]
    while front[0] and front[1] and len(side[0]) + len(side[1]) < cap:
        k = 0 if len(front[0]) <= len(front[1]) else 1
        nxt = []
        for u in front[k]:
            for v in _neighbours(u, rules, inserts, L):
                if v in side[1 - k]:
                    return True
                if v not in side[k]:
                    side[k].add(v)
                    nxt.append(v)
        front[k] = nxt
    return False


def presentation_certificate(p: Presentation, realization: Mapping[str, PartialSignedPerm], slack: int = 8,
                             budget: int = 50_000, lemma_slack: int = 10, lemma_cap: int = 4_000_000,
                             depth: int = 1) -> Certificate:
    """Prove that every word equals a fixed representative of its concrete value.

    Representatives are the shortlex-least words found by the concrete closure. For
    each representative t and generator g the word t g is rewritten, using only the
    relations, until it reaches the representative of t g. By induction on length
    every word is then equivalent to a representative, so the presented monoid has
    at most as many elements as the concrete one; relations holding concretely gives
    the reverse bound.

    Rewrites use the relations both ways, insertion of relators, and rules derived
    from them with s s = e. When a product resists the cheap searches, the part where
    it differs from its target is proved on its own by a wider search and kept as a
    lemma for the remaining products.
    """
    gens = list(p.generators)
    n = realization[gens[0]].n
    m = generator_closure([realization[g] for g in gens])
    reps: list[Word] = [tuple(gens[i] for i in w) for w in m.words]
    rep_of = {w: i for i, w in enumerate(reps)}
    rules = _rules(p)
    balanced = rules + [r for r in _split_rules(p, depth) if r not in set(rules)]
    inserts = [free_reduce(r.lhs) for r in p.relations if not r.rhs]
    inserts = [w for w in inserts if w]
    gpos = {g: i for i, g in enumerate(gens)}
    certified: dict[tuple[int, int], int] = {}
    lemmas: list[tuple[Word, Word]] = []

    def collapse(w: Word) -> int | None:
        cur = 0
        for a in w:
            cur = certified.get((cur, gpos[a]))
            if cur is None:
                return None
        return cur

    idx = {"plain": _index(rules), "balanced": _index(balanced)}

    def prove(x: int, g: int, slack: int, budget: int, insert: bool) -> bool:
        target = m.right[x][g]
        w = reps[x] + (gens[g],)
        if rep_of.get(free_reduce(w)) == target:
            return True
        bound = max(len(w), len(reps[target])) + slack
        seen = {w}
        dq = deque([w])
        while dq and len(seen) < budget:
            u = dq.popleft()
            nbrs = _neighbours(u, idx["plain"], inserts, bound) if insert else _neighbours(u, idx["balanced"], (), bound)
            for v in nbrs:
                if collapse(v) == target:
                    return True
                if v not in seen:
                    seen.add(v)
                    dq.append(v)
        return False

    def sweep(pending, slack, budget, insert, repeat=True):
        while pending:
            left = []
            for x, g in pending:
                if prove(x, g, slack, budget, insert):
                    certified[(x, g)] = m.right[x][g]
                else:
                    left.append((x, g))
            if len(left) == len(pending) or not repeat:
                return left
            pending = left
        return pending

    def core(x: int, g: int) -> tuple[Word, Word] | None:
        # strip the shared ends of t g and its target, keeping the concrete values equal
        w, r = reps[x] + (gens[g],), reps[m.right[x][g]]
        i = 0
        while i < min(len(w), len(r)) and w[i] == r[i]:
            i += 1
        j = 0
        while j < min(len(w), len(r)) - i and w[-1 - j] == r[-1 - j]:
            j += 1
        for a in range(i, -1, -1):
            for b in range(j, -1, -1):
                u, v = w[a:len(w) - b], r[a:len(r) - b]
                if evaluate_word(u, realization, n) == evaluate_word(v, realization, n):
                    return u, v
        return None

    quick = [(2, 500, False), (4, 2_000, False)]
    timings = []
    pending = sorted(((x, g) for x in range(len(m)) for g in range(len(gens))),
                     key=lambda t: (len(reps[t[0]]) + 1, reps[t[0]] + (gens[t[1]],)))

    def run_stage(label, pending, sl, bud, ins, repeat=True):
        t0 = time.perf_counter()
        left = sweep(pending, sl, bud, ins, repeat)
        timings.append((label, sl, bud, ins, len(pending) - len(left), round(time.perf_counter() - t0, 2)))
        return left

    tried: set = set()

    def mine(x: int, g: int) -> bool:
        c = core(x, g)
        if c is None or c in tried:
            return False
        tried.add(c)
        u, v = c
        t0 = time.perf_counter()
        top = max(len(u), len(v))
        found = False
        for L in range(top + 1, top + lemma_slack + 1):
            if _bidirectional(u, v, _index(balanced + lemmas), inserts, L, lemma_cap):
                lemmas.extend([(u, v), (v, u)])
                idx["plain"] = _index(rules + lemmas)
                idx["balanced"] = _index(balanced + lemmas)
                found = True
                break
        timings.append(("lemma", " ".join(u) + " = " + " ".join(v), found, round(time.perf_counter() - t0, 2)))
        return found

    # one ordered pass, proving a lemma as soon as a product resists the cheap search
    t0 = time.perf_counter()
    left = []
    for x, g in pending:
        if prove(x, g, 2, 500, False) or (mine(x, g) and prove(x, g, 2, 500, False)):
            certified[(x, g)] = m.right[x][g]
        else:
            left.append((x, g))
    timings.append(("first", 2, 500, False, len(pending) - len(left), round(time.perf_counter() - t0, 2)))
    pending = left
    for sl, bud, ins in quick:
        pending = run_stage("quick", pending, sl, bud, ins)
    while pending and any(mine(x, g) for x, g in pending):
        for sl, bud, ins in quick:
            pending = run_stage("quick", pending, sl, bud, ins)
    pending = run_stage("wide", pending, slack, budget, True)
    unproved = [(reps[x], gens[g]) for x, g in pending]
    total = len(m) * len(gens)
    return Certificate(not unproved, len(m), total, total - len(unproved), unproved, timings,
                       [(u, v) for u, v in lemmas[::2]])


# ---------------------------------------------------------------- cycle lemma

def _commute(x: PartialSignedPerm, y: PartialSignedPerm) -> bool:
    return compose(x, y) == compose(y, x)


@dataclass
class CycleLemmaReport:
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    by_shape: dict[str, int] = field(default_factory=dict)
    samples: int = 0
    samples_a_false: int = 0  # assignments where statement (a) fails, so the pattern is not vacuous

    @property
    def passed(self) -> bool:
        return not self.failures


def _cycle_shapes(q: Quiver):
    """Oriented chordless cycles through eps, reported as (shape, ordered vertices after eps)."""
    from .quiver import chordless_cycles

    for cyc in chordless_cycles(q):
        if not cyc.contains_frozen:
            continue
        vs, ws = cyc.vertices, cyc.weights
        rest = vs[1:]
        if len(vs) == 3 and all(w == 1 for w in ws):
            yield "C3'", rest, ws
        elif len(vs) == 3 and tuple(ws) == (2, 2, 1):
            # the heavy vertex is entered from eps and feeds the light one
            yield "C3''", rest, ws
        elif len(vs) == 4 and all(w == 1 for w in ws):
            yield "C4'", rest, ws


def lemma_statements(shape: str, rest: Sequence[str], s: Mapping[str, PartialSignedPerm]) -> dict[str, bool]:
    """Evaluate the lettered statements for a cycle eps -> v1 -> ... -> vk -> eps."""
    n = s[EPS].n
    ev = lambda w: evaluate_word(w, s, n)
    E = EPS

    def r2(i):
        return ev((E, i, E)) == ev((E, i, E, i)) == ev((i, E, i, E))

    if shape == "C3''":
        i, j = rest
        return {"a": ev((i, j, E, j)) == ev((j, E, j, i))}
    if shape == "C3'":
        i, j = rest
        return {
            "a": ev((E, i, j, i)) == ev((i, j, i, E)),
            "b": ev((i, j, E, j)) == ev((j, E, j, i)),
            "c": r2(i),
            "d": r2(j),
        }
    i, j, k = rest
    return {
        "a": ev((E, i, j, k, j, i)) == ev((i, j, k, j, i, E)),
        "b": ev((i, j, k, E, k, j)) == ev((j, k, E, k, j, i)),
        "c": r2(i),
        "d": r2(k),
    }


def type_four_statements(q: Quiver, s: Mapping[str, PartialSignedPerm]) -> dict[str, bool] | None:
    """Statement (a) and the conjugated forms (b_a), a = 3..d, for a Type IV member."""
    from .mutation_class import Ambiguous, NoMatch, classify_D_eps
    from .presentation import _there_and_back

    try:
        rep = classify_D_eps(q)
    except (NoMatch, Ambiguous):
        return None
    if rep.shape != "TypeIV":
        return None
    cyc = list(rep.central_cycle)
    x = _there_and_back(q, rep.roles["c'"])
    n = s[EPS].n
    ev = lambda w: evaluate_word(w, s, n)
    d = len(cyc)
    out = {}
    for a in range(1, d):
        head = tuple(reversed(cyc[:a]))
        tail = tuple(cyc[a:])
        out["a" if a == 1 else f"b{a + 1}"] = ev(head + x + head[::-1]) == ev(tail + x + tail[::-1])
    return out


def _pools(family: str, n: int):
    gens = realize_generators(family, n)
    m = generator_closure(list(gens.values()))
    units = [x for x in m.elements if x.rank == n]
    from .monoid import inverse

    refl = sorted({compose(compose(u, gens[v]), inverse(u)) for u in units for v in gens if v != EPS}, key=str)
    idem = sorted({compose(compose(u, gens[EPS]), inverse(u)) for u in units}, key=str)
    return refl, idem


def _local_r1_r2(q: Quiver, verts: Sequence[str]) -> Presentation:
    from .presentation import relations_R1_R2

    rels = [r for r in relations_R1_R2(q) if r.letters() <= set(verts)]
    return Presentation(sort_labels(verts), rels)


def check_lemma_cycle_equivalences(catalog: ClassCatalog, samples: int = 300, seed: int = 0) -> CycleLemmaReport:
    """Check the cycle statements on every member, then their logical pattern on sampled assignments.

    On the tracked realization of each member every statement must hold. Separately,
    assignments of reflections and conjugated eps values satisfying only the local
    R1/R2 relations are drawn, and for each such assignment: (a) iff (b), and when
    (a) holds, (c) iff (d). For Type IV members (a) iff every conjugated form.
    """
    import random

    rng = random.Random(seed)
    fam, n = catalog.family, catalog.rank
    q0 = standard_quiver(fam, n)
    refl, idem = _pools(fam, n)
    report = CycleLemmaReport()
    done_shapes: set = set()
    for idx, m in enumerate(catalog.members):
        tq = replay(q0, m.witness)
        q = tq.quiver
        shapes = list(_cycle_shapes(q))
        four = type_four_statements(q, tq.values)
        if four is not None:
            shapes.append(("IV", None, None))
        for shape, rest, ws in shapes:
            report.by_shape[shape] = report.by_shape.get(shape, 0) + 1
            report.checked += 1
            st = four if shape == "IV" else lemma_statements(shape, rest, tq.values)
            if not all(st.values()):
                report.failures.append(f"member {idx} {shape} {rest}: {st}")
            sig = (shape, tuple(ws) if ws else idx)
            if sig in done_shapes:
                continue
            done_shapes.add(sig)
            verts = list(q.labels) if shape == "IV" else [EPS, *rest]
            local = _local_r1_r2(q, verts)
            hits = 0
            for _ in range(samples * 20):
                if hits >= samples:
                    break
                s = {v: (rng.choice(idem) if v == EPS else rng.choice(refl)) for v in verts}
                if not check_relations(local, s).passed:
                    continue
                hits += 1
                report.samples += 1
                st = type_four_statements(q, s) if shape == "IV" else lemma_statements(shape, rest, s)
                report.samples_a_false += not st["a"]
                if shape == "IV":
                    if len(set(st.values())) > 1:
                        report.failures.append(f"member {idx} IV sample: {st}")
                elif shape != "C3''":
                    if st["a"] != st["b"] or (st["a"] and st["c"] != st["d"]):
                        report.failures.append(f"member {idx} {shape} sample: {st}")
    return report
