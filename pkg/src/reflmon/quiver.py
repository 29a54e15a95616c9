"""Exchange matrices with one frozen vertex: mutation, canonical keys, cycles, paths."""
from __future__ import annotations

import itertools
import json
import struct
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

EPS = "eps"
FAMILIES = ("A", "B", "D")
MIN_RANK = {"A": 2, "B": 2, "D": 4}


class QuiverError(ValueError):
    """Invalid quiver data or a disallowed operation (e.g. mutating at eps)."""


class InvariantViolation(RuntimeError):
    """A structural property expected of supported quivers does not hold."""


class AmbiguousPath(QuiverError):
    pass


def label_key(v: str) -> tuple[int, int]:
    # numeric labels first, eps last
    return (1, 0) if v == EPS else (0, int(v))


def sort_labels(vs: Iterable[str]) -> list[str]:
    return sorted(vs, key=label_key)


@dataclass(frozen=True)
class Quiver:
    """Skew-symmetrizable exchange matrix over mutable vertices plus ``eps``.

    ``b[i][j] > 0`` encodes an arrow i -> j, and the diagram weight of the
    pair is ``|b[i][j] * b[j][i]|``. ``d`` is the skew-symmetrizer, so that
    ``d[i] * b[i][j] == -d[j] * b[j][i]``.
    """

    labels: tuple[str, ...]
    b: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]
    family: str = ""
    _index: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.labels)})
        self.check()

    # basic accessors
    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def rank_mutable(self) -> int:
        return len(self.labels) - 1

    @property
    def mutable(self) -> list[str]:
        return [v for v in self.labels if v != EPS]

    def idx(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise QuiverError(f"unknown vertex {v!r}") from None

    def entry(self, i: str, j: str) -> int:
        return self.b[self.idx(i)][self.idx(j)]

    def has_arrow(self, i: str, j: str) -> bool:
        return self.entry(i, j) > 0

    def neighbours(self, v: str) -> list[str]:
        i = self.idx(v)
        return [self.labels[j] for j in range(self.size) if self.b[i][j] != 0]

    def arrows(self) -> list[tuple[str, str, int]]:
        out = []
        for i, j in itertools.permutations(range(self.size), 2):
            if self.b[i][j] > 0:
                out.append((self.labels[i], self.labels[j], abs(self.b[i][j] * self.b[j][i])))
        out.sort(key=lambda a: (label_key(a[0]), label_key(a[1])))
        return out

    def check(self) -> None:
        n = self.size
        if sum(1 for v in self.labels if v == EPS) != 1:
            raise QuiverError("exactly one frozen vertex 'eps' is required")
        if len(set(self.labels)) != n:
            raise QuiverError("duplicate vertex labels")
        if len(self.b) != n or any(len(r) != n for r in self.b) or len(self.d) != n:
            raise QuiverError("matrix / symmetrizer shape mismatch")
        if any(x <= 0 for x in self.d):
            raise QuiverError("symmetrizer entries must be positive")
        for i in range(n):
            if self.b[i][i] != 0:
                raise QuiverError("loop at vertex " + self.labels[i])
            for j in range(i + 1, n):
                bij, bji = self.b[i][j], self.b[j][i]
                if self.d[i] * bij != -self.d[j] * bji:
                    raise QuiverError(f"not skew-symmetrizable at ({self.labels[i]},{self.labels[j]})")


def weight(q: Quiver, i: str, j: str) -> int:
    if i == j:
        raise QuiverError("weight is defined for distinct vertices")
    return abs(q.entry(i, j) * q.entry(j, i))


def _family_symmetrizer(family: str, labels: Sequence[str]) -> tuple[int, ...]:
    if family == "B":
        return tuple(1 if v == "0" else 2 for v in labels)
    return tuple(1 for _ in labels)


def _matrix_from_edges(labels, d, edges) -> list[list[int]]:
    """Integer exchange matrix realising the weighted arrows under symmetrizer d."""
    pos = {v: i for i, v in enumerate(labels)}
    n = len(labels)
    b = [[0] * n for _ in range(n)]
    for src, dst, w in edges:
        i, j = pos[src], pos[dst]
        # b_ij = d_j * x, b_ji = -d_i * x with d_i d_j x^2 = w
        found = None
        for bij in range(1, w + 1):
            if w % bij == 0:
                bji = w // bij
                if d[i] * bij == d[j] * bji:
                    found = (bij, bji)
                    break
        if found is None:
            raise QuiverError(f"weight {w} on {src}->{dst} incompatible with symmetrizer")
        if b[i][j] or b[j][i]:
            raise QuiverError(f"duplicate edge between {src} and {dst}")
        b[i][j], b[j][i] = found[0], -found[1]
    return b


def from_edges(family: str, mutable: Sequence[str], edges: Iterable[tuple[str, str, int]]) -> Quiver:
    labels = tuple(sort_labels(str(v) for v in mutable)) + (EPS,)
    d = _family_symmetrizer(family, labels)
    b = _matrix_from_edges(labels, d, [(str(s), str(t), int(w)) for s, t, w in edges])
    return Quiver(labels, tuple(map(tuple, b)), d, family)


def check_rank(family: str, n: int) -> None:
    if family not in FAMILIES:
        raise QuiverError(f"unknown family {family!r}")
    if n < MIN_RANK[family]:
        raise QuiverError(f"rank {n} out of bounds for family {family} (min {MIN_RANK[family]})")


def standard_quiver(family: str, n: int) -> Quiver:
    """Linearly oriented Dynkin quiver with arrows running toward eps."""
    check_rank(family, n)
    if family == "A":
        chain = [str(i) for i in range(1, n)] + [EPS]
        edges = [(chain[i], chain[i + 1], 1) for i in range(len(chain) - 1)]
        return from_edges("A", chain[:-1], edges)
    if family == "B":
        chain = [str(i) for i in range(n)] + [EPS]
        edges = [("0", "1", 2)] + [(chain[i], chain[i + 1], 1) for i in range(1, len(chain) - 1)]
        return from_edges("B", chain[:-1], edges)
    chain = [str(i) for i in range(2, n)] + [EPS]
    edges = [("0", "2", 1), ("1", "2", 1)] + [(chain[i], chain[i + 1], 1) for i in range(len(chain) - 1)]
    return from_edges("D", [str(i) for i in range(n)], edges)


def _sgn(x: int) -> int:
    return (x > 0) - (x < 0)


def mutate(q: Quiver, k: str) -> Quiver:
    if k == EPS:
        raise QuiverError("the frozen vertex cannot be a mutation pivot")
    kk = q.idx(k)
    n = q.size
    b = q.b
    new = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == kk or j == kk:
                row.append(-b[i][j])
            else:
                row.append(b[i][j] + _sgn(b[i][kk]) * max(0, b[i][kk] * b[kk][j]))
        new.append(tuple(row))
    return Quiver(q.labels, tuple(new), q.d, q.family)


def mutate_sequence(q: Quiver, pivots: Iterable[str]) -> Quiver:
    for k in pivots:
        q = mutate(q, k)
    return q


def opposite(q: Quiver) -> Quiver:
    return Quiver(q.labels, tuple(tuple(-x for x in r) for r in q.b), q.d, q.family)


def diagram(q: Quiver) -> frozenset:
    """Unoriented weighted diagram: {({u, v}, weight)}."""
    return frozenset((frozenset((u, v)), w) for u, v, w in q.arrows())


# ---------------------------------------------------------------- canonical form

def _vertex_signature(q: Quiver, i: int) -> tuple:
    eps = q.idx(EPS)
    row = sorted((q.b[i][j], q.b[j][i]) for j in range(q.size) if j != i and j != eps)
    return (q.d[i], q.b[i][eps], q.b[eps][i], tuple(row))


def canonical_form(q: Quiver) -> bytes:
    """Key equal for two quivers iff a relabelling of mutable vertices maps one to the other.

    Brute force over permutations inside blocks of vertices with equal local
    signature; adequate for the small finite-type classes handled here.
    """
    eps = q.idx(EPS)
    mut = [i for i in range(q.size) if i != eps]
    sigs = {i: _vertex_signature(q, i) for i in mut}
    blocks: dict[tuple, list[int]] = {}
    for i in mut:
        blocks.setdefault(sigs[i], []).append(i)
    block_keys = sorted(blocks)
    best = None
    for combo in itertools.product(*(itertools.permutations(blocks[k]) for k in block_keys)):
        order = [v for part in combo for v in part] + [eps]
        flat = tuple(q.b[i][j] for i in order for j in order)
        if best is None or flat < best:
            best = flat
    head = tuple(sigs[i] for k in block_keys for i in blocks[k])
    header = repr((q.size, tuple(q.d[i] for k in block_keys for i in blocks[k]) + (q.d[eps],), head))
    return header.encode() + b"|" + struct.pack(f"{len(best)}b", *best)


# ---------------------------------------------------------------- cycles and paths

@dataclass(frozen=True)
class ChordlessCycle:
    vertices: tuple[str, ...]
    weights: tuple[int, ...]  # weights[i] is the weight of vertices[i] -> vertices[i+1]

    @property
    def contains_frozen(self) -> bool:
        return EPS in self.vertices

    def __len__(self) -> int:
        return len(self.vertices)


def _adjacency(q: Quiver) -> dict[str, set[str]]:
    return {v: set(q.neighbours(v)) for v in q.labels}


def _undirected_chordless(q: Quiver, within: Iterable[str] | None = None) -> list[tuple[str, ...]]:
    # a vertex set spans a chordless cycle iff its induced graph is connected and 2-regular
    adj = _adjacency(q)
    out = []
    labels = sort_labels(q.labels if within is None else within)
    for r in range(3, len(labels) + 1):
        for sub in itertools.combinations(labels, r):
            s = set(sub)
            if any(len(adj[v] & s) != 2 for v in sub):
                continue
            walk = [sub[0], min(adj[sub[0]] & s, key=label_key)]
            while len(walk) < r:
                step = (adj[walk[-1]] & s) - {walk[-2]}
                nxt = step.pop()
                if nxt == walk[0]:
                    break
                walk.append(nxt)
            if len(walk) == r:
                out.append(tuple(walk))
    return out


def chordless_cycles(q: Quiver, within: Iterable[str] | None = None) -> list[ChordlessCycle]:
    """All chordless cycles, each oriented, starting at eps if present, else at the minimum label.

    ``within`` restricts the search to the full subquiver on those vertices.
    """
    out = []
    for cyc in _undirected_chordless(q, within):
        n = len(cyc)
        fwd = all(q.has_arrow(cyc[i], cyc[(i + 1) % n]) for i in range(n))
        bwd = all(q.has_arrow(cyc[(i + 1) % n], cyc[i]) for i in range(n))
        if not (fwd or bwd):
            raise InvariantViolation(f"non-oriented chordless cycle {cyc}")
        seq = list(cyc) if fwd else [cyc[0]] + list(reversed(cyc[1:]))
        start = EPS if EPS in seq else min(seq, key=label_key)
        r = seq.index(start)
        seq = seq[r:] + seq[:r]
        ws = tuple(weight(q, seq[i], seq[(i + 1) % n]) for i in range(n))
        out.append(ChordlessCycle(tuple(seq), ws))
    out.sort(key=lambda c: (len(c), [label_key(v) for v in c.vertices]))
    return out


def shortest_path(q: Quiver, src: str, dst: str, allowed: set[str] | None = None) -> tuple[str, ...]:
    """Unique shortest path in the underlying graph; AmbiguousPath on ties."""
    adj = _adjacency(q)
    if allowed is not None:
        adj = {v: {w for w in ws if w in allowed} for v, ws in adj.items() if v in allowed}
    dist = {src: 0}
    count = {src: 1}
    parent: dict[str, str] = {}
    dq = deque([src])
    while dq:
        v = dq.popleft()
        for w in sorted(adj[v], key=label_key):
            if w not in dist:
                dist[w] = dist[v] + 1
                count[w] = count[v]
                parent[w] = v
                dq.append(w)
            elif dist[w] == dist[v] + 1:
                count[w] += count[v]
    if dst not in dist:
        raise QuiverError(f"no path from {src} to {dst}")
    if count[dst] > 1:
        raise AmbiguousPath(f"{count[dst]} shortest paths from {src} to {dst}")
    path = [dst]
    while path[-1] != src:
        path.append(parent[path[-1]])
    return tuple(reversed(path))


def shortest_path_to_frozen(q: Quiver, c: str) -> tuple[str, ...]:
    return shortest_path(q, c, EPS)


def is_connected(q: Quiver, vertices: Iterable[str] | None = None) -> bool:
    vs = set(q.labels if vertices is None else vertices)
    if not vs:
        return True
    adj = _adjacency(q)
    start = next(iter(vs))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w in vs and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == vs


def components(q: Quiver, vertices: Iterable[str]) -> list[set[str]]:
    vs = set(vertices)
    adj = _adjacency(q)
    out = []
    while vs:
        start = min(vs, key=label_key)
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w in vs and w not in comp:
                    comp.add(w)
                    stack.append(w)
        vs -= comp
        out.append(comp)
    return out


# ---------------------------------------------------------------- serialization

def to_dict(q: Quiver) -> dict:
    return {
        "family": q.family,
        "mutable": q.mutable,
        "frozen": EPS,
        "edges": [{"src": s, "dst": t, "weight": w} for s, t, w in q.arrows()],
    }


def from_dict(data: dict) -> Quiver:
    try:
        family = data["family"]
        if data.get("frozen", EPS) != EPS:
            raise QuiverError("frozen vertex must be named 'eps'")
        edges = [(e["src"], e["dst"], e.get("weight", 1)) for e in data["edges"]]
        return from_edges(family, [str(v) for v in data["mutable"]], edges)
    except (KeyError, TypeError) as exc:
        raise QuiverError(f"malformed quiver JSON: {exc}") from exc


def to_json(q: Quiver) -> str:
    return json.dumps(to_dict(q), indent=2)


def from_json(text: str) -> Quiver:
    return from_dict(json.loads(text))


def to_dot(q: Quiver, name: str = "Q") -> str:
    lines = [f"digraph {name} {{"]
    for v in sorted(q.labels, key=label_key):
        if v == EPS:
            lines.append(f'  "{v}" [style=filled, fillcolor=black, fontcolor=white];')
        else:
            lines.append(f'  "{v}";')
    for s, t, w in q.arrows():
        attr = f' [label="{w}"]' if w >= 2 else ""
        lines.append(f'  "{s}" -> "{t}"{attr};')
    lines.append("}")
    return "\n".join(lines) + "\n"
