"""Partial signed permutations, generator closure, Green's relations, triple coordinates."""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .quiver import EPS, check_rank


class MonoidError(ValueError):
    pass


class SizeCapExceeded(MonoidError):
    pass


@dataclass(frozen=True)
class PartialSignedPerm:
    """Partial injection on {1..n} with signs.

    ``image[i-1]`` is 0 when i is outside the domain, otherwise ``+j`` or ``-j``.
    """

    image: tuple[int, ...]

    def __post_init__(self):
        vals = [abs(v) for v in self.image if v]
        n = len(self.image)
        if len(set(vals)) != len(vals) or any(v > n for v in vals):
            raise MonoidError(f"not a partial injection: {self.image}")

    @property
    def n(self) -> int:
        return len(self.image)

    @property
    def rank(self) -> int:
        return sum(1 for v in self.image if v)

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(i + 1 for i, v in enumerate(self.image) if v)

    @property
    def codomain(self) -> frozenset[int]:
        return frozenset(abs(v) for v in self.image if v)

    def is_unsigned(self) -> bool:
        return all(v >= 0 for v in self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def __mul__(self, other: "PartialSignedPerm") -> "PartialSignedPerm":
        return compose(self, other)

    def __str__(self) -> str:
        return format_element(self)


def compose(x: PartialSignedPerm, y: PartialSignedPerm) -> PartialSignedPerm:
    """x after y: apply y first, then x; signs multiply."""
    if x.n != y.n:
        raise MonoidError("mismatched ground sets")
    xi = x.image
    out = []
    for v in y.image:
        if v == 0:
            out.append(0)
        elif v > 0:
            out.append(xi[v - 1])
        else:
            out.append(-xi[-v - 1])
    return PartialSignedPerm(tuple(out))


def inverse(x: PartialSignedPerm) -> PartialSignedPerm:
    out = [0] * x.n
    for i, v in enumerate(x.image, start=1):
        if v:
            out[abs(v) - 1] = i if v > 0 else -i
    return PartialSignedPerm(tuple(out))


def identity(n: int) -> PartialSignedPerm:
    return PartialSignedPerm(tuple(range(1, n + 1)))


def partial_identity(subset: Iterable[int], n: int) -> PartialSignedPerm:
    s = set(subset)
    if any(i < 1 or i > n for i in s):
        raise MonoidError("subset outside ground set")
    return PartialSignedPerm(tuple(i if i in s else 0 for i in range(1, n + 1)))


def transposition(i: int, j: int, n: int) -> PartialSignedPerm:
    img = list(range(1, n + 1))
    img[i - 1], img[j - 1] = j, i
    return PartialSignedPerm(tuple(img))


def sign_change(i: int, n: int) -> PartialSignedPerm:
    img = list(range(1, n + 1))
    img[i - 1] = -i
    return PartialSignedPerm(tuple(img))


def format_element(x: PartialSignedPerm, empty: str = "-") -> str:
    top = " ".join(str(i) for i in range(1, x.n + 1))
    bot = " ".join(str(v) if v else empty for v in x.image)
    return f"{top} / {bot}"


def parse_element(text: str) -> PartialSignedPerm:
    top, _, bot = text.partition("/")
    pts = [int(t) for t in top.split()]
    vals = [0 if t in ("-", "∅") else int(t) for t in bot.split()]
    if pts != list(range(1, len(pts) + 1)) or len(vals) != len(pts):
        raise MonoidError(f"bad element text {text!r}")
    return PartialSignedPerm(tuple(vals))


def ground_size(family: str, n: int) -> int:
    return n


def realize_generators(family: str, n: int) -> dict[str, PartialSignedPerm]:
    """Concrete generators for the standard quiver of the family.

    A: s_i = (i, i+1); B adds s_0 = sign change at 1; D uses
    s_0 = (1 -> -2, 2 -> -1), s_1 = (1 2), s_i = (i, i+1) for i >= 2.
    In every family s_eps is the partial identity dropping the point n.
    """
    check_rank(family, n)
    gens: dict[str, PartialSignedPerm] = {}
    if family == "A":
        for i in range(1, n):
            gens[str(i)] = transposition(i, i + 1, n)
    elif family == "B":
        gens["0"] = sign_change(1, n)
        for i in range(1, n):
            gens[str(i)] = transposition(i, i + 1, n)
    else:
        img = list(range(1, n + 1))
        img[0], img[1] = -2, -1
        gens["0"] = PartialSignedPerm(tuple(img))
        gens["1"] = transposition(1, 2, n)
        for i in range(2, n):
            gens[str(i)] = transposition(i, i + 1, n)
    gens[EPS] = partial_identity(range(1, n), n)
    return gens


def evaluate_word(word: Sequence[str], gens: Mapping[str, PartialSignedPerm], n: int | None = None) -> PartialSignedPerm:
    """Product of the letters, read as a composition (rightmost letter acts first)."""
    if n is None:
        n = next(iter(gens.values())).n
    acc = identity(n)
    for letter in word:
        try:
            g = gens[letter]
        except KeyError:
            raise MonoidError(f"unknown letter {letter!r}") from None
        acc = compose(acc, g)
    return acc


# ---------------------------------------------------------------- brute-force oracles

def count_partial_injections(n: int, signed: bool = False) -> int:
    return sum(math.comb(n, k) ** 2 * math.factorial(k) * (2 ** k if signed else 1) for k in range(n + 1))


def count_even_signed(n: int) -> int:
    # restrictions of even signed permutations: any sign pattern below full rank
    return count_partial_injections(n, signed=True) - 2 ** n * math.factorial(n) + 2 ** (n - 1) * math.factorial(n)


def all_partial_injections(n: int, signed: bool = False) -> list[PartialSignedPerm]:
    """Every (signed) partial injection on n points, by direct enumeration."""
    out = []
    pts = range(1, n + 1)
    for k in range(n + 1):
        for dom in itertools.combinations(pts, k):
            for img in itertools.permutations(pts, k):
                for signs in itertools.product((1, -1) if signed else (1,), repeat=k):
                    image = [0] * n
                    for i, j, s in zip(dom, img, signs):
                        image[i - 1] = s * j
                    out.append(PartialSignedPerm(tuple(image)))
    return out


def expected_cardinality(family: str, n: int) -> int:
    if family == "A":
        return count_partial_injections(n)
    if family == "B":
        return count_partial_injections(n, signed=True)
    if family == "D":
        return len(generator_closure(list(realize_generators("D", n).values())))
    raise MonoidError(f"unknown family {family!r}")


# ---------------------------------------------------------------- closure

@dataclass
class EnumeratedMonoid:
    elements: list[PartialSignedPerm]
    index: dict[PartialSignedPerm, int]
    generators: list[int]
    words: list[tuple[int, ...]]  # shortlex-least generator-index word per element
    right: list[list[int]]  # right[x][g] = index of x * gen_g
    _left: list[list[int]] | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def n(self) -> int:
        return self.elements[0].n

    def product(self, i: int, j: int) -> int:
        return self.index[compose(self.elements[i], self.elements[j])]

    def inverse_index(self, i: int) -> int:
        return self.index[inverse(self.elements[i])]

    @property
    def left(self) -> list[list[int]]:
        if self._left is None:
            gens = [self.elements[g] for g in self.generators]
            self._left = [[self.index[compose(g, x)] for g in gens] for x in self.elements]
        return self._left

    @property
    def idempotents(self) -> list[int]:
        return [i for i, x in enumerate(self.elements) if compose(x, x) == x]

    def __contains__(self, x: PartialSignedPerm) -> bool:
        return x in self.index


def generator_closure(gens: Sequence[PartialSignedPerm], cap: int = 200_000) -> EnumeratedMonoid:
    """Froidure-Pin style breadth-first closure under right multiplication by generators."""
    gens = list(gens)
    if not gens:
        raise MonoidError("need at least one generator")
    n = gens[0].n
    if any(g.n != n for g in gens):
        raise MonoidError("generators act on different ground sets")
    one = identity(n)
    elements = [one]
    index = {one: 0}
    words: list[tuple[int, ...]] = [()]
    right: list[list[int]] = []
    gen_idx = []
    for gi, g in enumerate(gens):
        if g not in index:
            index[g] = len(elements)
            elements.append(g)
            words.append((gi,))
        gen_idx.append(index[g])
    pos = 0
    while pos < len(elements):
        x = elements[pos]
        row = []
        for gi, g in enumerate(gens):
            y = compose(x, g)
            j = index.get(y)
            if j is None:
                j = len(elements)
                if j >= cap:
                    raise SizeCapExceeded(f"closure exceeded {cap} elements")
                index[y] = j
                elements.append(y)
                words.append(words[pos] + (gi,))
            row.append(j)
        right.append(row)
        pos += 1
    return EnumeratedMonoid(elements, index, gen_idx, words, right)


def check_inverse_monoid(m: EnumeratedMonoid) -> list[str]:
    """Exhaustive inverse-monoid law check; returns a list of problems (empty when fine)."""
    problems = []
    for x in m.elements:
        xi = inverse(x)
        if xi not in m.index:
            problems.append(f"inverse of {x} missing")
            continue
        if compose(compose(x, xi), x) != x or compose(compose(xi, x), xi) != xi:
            problems.append(f"x x^-1 x != x for {x}")
    idem = [m.elements[i] for i in m.idempotents]
    for e, f in itertools.combinations(idem, 2):
        if compose(e, f) != compose(f, e):
            problems.append(f"idempotents {e} and {f} do not commute")
    return problems


# ---------------------------------------------------------------- Green's relations

@dataclass
class DClass:
    elements: list[int]
    rank: int
    l_classes: list[list[int]]
    r_classes: list[list[int]]
    h_classes: list[list[int]]
    idempotents: list[int]
    group_order: int


@dataclass
class GreenDecomposition:
    d_classes: list[DClass]
    below: dict[int, set[int]]  # below[i] = D-classes j with D_j <= D_i
    d_equals_j: bool

    @property
    def is_chain(self) -> bool:
        k = len(self.d_classes)
        return all(j in self.below[i] or i in self.below[j] for i in range(k) for j in range(k))

    def sizes(self) -> list[int]:
        return [len(c.elements) for c in self.d_classes]


def _scc_partition(num: int, edges: Iterable[tuple[int, int]]) -> dict[int, int]:
    g = nx.DiGraph()
    g.add_nodes_from(range(num))
    g.add_edges_from(edges)
    label = {}
    for ci, comp in enumerate(nx.strongly_connected_components(g)):
        for v in comp:
            label[v] = ci
    return label


def _canon(label: Mapping[int, int]) -> frozenset:
    groups: dict[int, list[int]] = {}
    for v, c in label.items():
        groups.setdefault(c, []).append(v)
    return frozenset(frozenset(g) for g in groups.values())


def green_decomposition(m: EnumeratedMonoid) -> GreenDecomposition:
    """Green's classes from Cayley-graph strong components.

    L-classes are strong components of the left Cayley graph, R-classes of the
    right one, J-classes of their union. D is the join of L and R.
    """
    size = len(m)
    right_edges = [(x, y) for x in range(size) for y in m.right[x]]
    left_edges = [(x, y) for x in range(size) for y in m.left[x]]
    L = _scc_partition(size, left_edges)
    R = _scc_partition(size, right_edges)
    J = _scc_partition(size, left_edges + right_edges)

    # D = L v R via union-find
    parent = list(range(size))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for part in (L, R):
        first: dict[int, int] = {}
        for v, c in part.items():
            if c in first:
                ra, rb = find(v), find(first[c])
                if ra != rb:
                    parent[ra] = rb
            else:
                first[c] = v
    D = {v: find(v) for v in range(size)}
    d_equals_j = _canon(D) == _canon(J)

    # order of J-classes from reachability in the condensed two-sided graph
    g = nx.DiGraph()
    g.add_nodes_from(set(J.values()))
    g.add_edges_from((J[a], J[b]) for a, b in left_edges + right_edges if J[a] != J[b])
    groups: dict[int, list[int]] = {}
    for v in range(size):
        groups.setdefault(J[v], []).append(v)
    jkeys = sorted(groups, key=lambda c: (m.elements[groups[c][0]].rank, min(groups[c])))
    pos = {c: i for i, c in enumerate(jkeys)}
    idem = set(m.idempotents)
    classes = []
    for c in jkeys:
        els = sorted(groups[c])
        ranks = {m.elements[x].rank for x in els}
        if len(ranks) != 1:
            raise MonoidError("rank not constant on a D-class")
        lsub: dict[int, list[int]] = {}
        rsub: dict[int, list[int]] = {}
        hsub: dict[tuple, list[int]] = {}
        for x in els:
            lsub.setdefault(L[x], []).append(x)
            rsub.setdefault(R[x], []).append(x)
            hsub.setdefault((L[x], R[x]), []).append(x)
        es = [x for x in els if x in idem]
        group_order = len(hsub[(L[es[0]], R[es[0]])]) if es else 0
        classes.append(DClass(els, ranks.pop(), list(lsub.values()), list(rsub.values()),
                              list(hsub.values()), es, group_order))
    below = {pos[c]: {pos[d] for d in nx.descendants(g, c)} | {pos[c]} for c in jkeys}
    return GreenDecomposition(classes, below, d_equals_j)


# ---------------------------------------------------------------- triple coordinates

def transversal(target: frozenset[int], n: int) -> PartialSignedPerm:
    """Order-preserving positive bijection from {1..k} onto target."""
    img = [0] * n
    for i, j in enumerate(sorted(target), start=1):
        img[i - 1] = j
    return PartialSignedPerm(tuple(img))


def triple_coordinates(m: EnumeratedMonoid, x: PartialSignedPerm):
    """Return (e, f, g) with x = a_e g a_f^-1, e = x x^-1, f = x^-1 x."""
    if x not in m.index:
        raise MonoidError("element not in monoid")
    n = x.n
    e = compose(x, inverse(x))
    f = compose(inverse(x), x)
    a_e = transversal(x.codomain, n)
    a_f = transversal(x.domain, n)
    g = compose(compose(inverse(a_e), x), a_f)
    for y in (a_e, a_f, g):
        if y not in m.index:
            raise MonoidError(f"transversal element {y} outside the monoid")
    return e, f, g


def from_triple(e: PartialSignedPerm, f: PartialSignedPerm, g: PartialSignedPerm) -> PartialSignedPerm:
    n = e.n
    a_e = transversal(e.domain, n)
    a_f = transversal(f.domain, n)
    return compose(compose(a_e, g), inverse(a_f))


def check_triple_roundtrip(m: EnumeratedMonoid) -> bool:
    seen = set()
    for x in m.elements:
        t = triple_coordinates(m, x)
        if from_triple(*t) != x:
            return False
        seen.add(t)
    return len(seen) == len(m)


def check_anti_involution(m: EnumeratedMonoid) -> bool:
    """x -> x^-1 reverses products and swaps triple coordinates as (f, e, g^-1)."""
    els = m.elements
    inv = [inverse(x) for x in els]
    if any(v not in m.index for v in inv):
        return False
    for i, x in enumerate(els):
        for j, y in enumerate(els):
            if inverse(compose(x, y)) != compose(inv[j], inv[i]):
                return False
    for x, xi in zip(els, inv):
        e, f, g = triple_coordinates(m, x)
        if triple_coordinates(m, xi) != (f, e, inverse(g)):
            return False
    return True
