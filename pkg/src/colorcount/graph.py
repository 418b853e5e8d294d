"""Simple graphs on vertices 0..n-1, family generators and graph6 I/O.

Vertex labeling of the generators (kept stable so witnesses reproduce):

* ``path(n)``: edges i(i+1).
* ``cycle(n)``: the path plus 0(n-1).
* ``complete_multipartite(sizes)``: parts are contiguous blocks in the
  given order, so ``complete_bipartite(2, 3)`` has parts {0,1} and {2,3,4}.
* ``join(g, h)``: g keeps its labels, h is shifted by g.n.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations, permutations, product
from typing import NamedTuple

from .errors import Graph6Error, GraphSpecError

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge] = frozenset()
    # (family, params) when built by a generator; ignored by equality.
    family: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {self.n}")
        normalized = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if u > v:
                u, v = v, u
            if u < 0 or v >= self.n:
                raise ValueError(f"edge {e} out of range for n={self.n}")
            normalized.add((u, v))
        object.__setattr__(self, "edges", frozenset(normalized))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def without_edge(self, u: int, v: int) -> Graph:
        e = (min(u, v), max(u, v))
        if e not in self.edges:
            raise ValueError(f"{e} is not an edge")
        return Graph(self.n, self.edges - {e})

    def is_subgraph_of(self, other: Graph) -> bool:
        return self.n <= other.n and self.edges <= other.edges

    def relabel(self, perm) -> Graph:
        """Graph with vertex v renamed perm[v]."""
        return Graph(self.n, frozenset((perm[u], perm[v]) for u, v in self.edges))

    def __str__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


class EdgePartition(NamedTuple):
    forest_edges: tuple[Edge, ...]
    cotree_edges: tuple[Edge, ...]


class Component(NamedTuple):
    graph: Graph
    vertices: tuple[int, ...]  # vertices[i] is the original index of local vertex i


# ---------------------------------------------------------------------------
# graph6 (short form only, n <= 62)

def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6Error("empty graph6 string", 0)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ord(ch)} outside 63..126", i)
    n = ord(s[0]) - 63
    if n == 63:
        raise Graph6Error("long-form graph6 (n > 62) is not supported", 0)
    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    if len(s) - 1 < nbytes:
        raise Graph6Error(f"expected {nbytes} data bytes for n={n}, got {len(s) - 1}", len(s))
    if len(s) - 1 > nbytes:
        raise Graph6Error("trailing garbage", 1 + nbytes)
    bits = []
    for ch in s[1:]:
        val = ord(ch) - 63
        bits.extend((val >> (5 - b)) & 1 for b in range(6))
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits", len(s) - 1)
    edges = set()
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                edges.add((i, j))
            pos += 1
    return Graph(n, frozenset(edges))


def encode_graph6(g: Graph) -> str:
    if g.n > 62:
        raise ValueError("short graph6 form only supports n <= 62")
    bits = [1 if (i, j) in g.edges else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(g.n + 63)]
    for s in range(0, len(bits), 6):
        val = 0
        for b in bits[s:s + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def read_graph6_file(path) -> list[Graph]:
    graphs = []
    with open(path, encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                graphs.append(parse_graph6(line))
    return graphs


# ---------------------------------------------------------------------------
# Families

def empty(n: int) -> Graph:
    _check_size(n)
    return Graph(n, frozenset(), family=("empty", (n,)))


def path(n: int) -> Graph:
    _check_size(n)
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)), family=("tree", (n,)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    edges = {(i, i + 1) for i in range(n - 1)} | {(0, n - 1)}
    return Graph(n, frozenset(edges), family=("cycle", (n,)))


def complete(n: int) -> Graph:
    _check_size(n)
    return Graph(n, frozenset(combinations(range(n), 2)), family=("complete", (n,)))


def complete_multipartite(sizes) -> Graph:
    sizes = tuple(sizes)
    if not sizes:
        raise ValueError("need at least one part")
    for s in sizes:
        _check_size(s)
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    edges = set()
    for a, b in combinations(range(len(sizes)), 2):
        for u in range(offsets[a], offsets[a + 1]):
            for v in range(offsets[b], offsets[b + 1]):
                edges.add((u, v))
    return Graph(offsets[-1], frozenset(edges), family=("complete_multipartite", sizes))


def complete_bipartite(m: int, n: int) -> Graph:
    return complete_multipartite((m, n))


def disjoint_union(*graphs: Graph) -> Graph:
    edges = set()
    offset = 0
    for g in graphs:
        edges |= {(u + offset, v + offset) for u, v in g.edges}
        offset += g.n
    return Graph(offset, frozenset(edges))


def join(*graphs: Graph) -> Graph:
    if len(graphs) < 2:
        raise ValueError("join needs at least two operands")
    union = disjoint_union(*graphs)
    edges = set(union.edges)
    offset = 0
    blocks = []
    for g in graphs:
        blocks.append(range(offset, offset + g.n))
        offset += g.n
    for a, b in combinations(blocks, 2):
        edges |= {(u, v) for u in a for v in b}
    return Graph(offset, frozenset(edges))


_GENERATORS = {
    "empty": empty,
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "complete_multipartite": complete_multipartite,
    "join": join,
}


def generate(family: str, *params) -> Graph:
    """``generate("cycle", 4)``, ``generate("complete_multipartite", [2, 2, 2])``, ..."""
    try:
        fn = _GENERATORS[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}") from None
    return fn(*params)


def _check_size(n):
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"size must be a positive integer, got {n!r}")


# ---------------------------------------------------------------------------
# CLI mini-language: "cycle:5", "kbip:2,3", "kpartite:100,100", "join:k1,cycle:4"

_ALIASES = {
    "empty": "empty", "o": "empty",
    "path": "path", "p": "path",
    "cycle": "cycle", "c": "cycle",
    "complete": "complete", "k": "complete",
    "kbip": "complete_bipartite", "complete_bipartite": "complete_bipartite",
    "kpartite": "complete_multipartite", "complete_multipartite": "complete_multipartite",
}
_SHORT = re.compile(r"([kcpo])(\d+)$")


def parse_graph_spec(text: str) -> Graph:
    text = text.strip()
    name, sep, rest = text.partition(":")
    name = name.lower()
    if not sep:
        m = _SHORT.match(name)
        if m:
            return _build(_ALIASES[m.group(1)], [int(m.group(2))], text)
        raise GraphSpecError(f"bad graph spec {text!r}")
    if name == "join":
        operands = _split_join_operands(rest)
        if len(operands) < 2:
            raise GraphSpecError(f"join needs two operands in {text!r}")
        return join(*(parse_graph_spec(op) for op in operands))
    if name not in _ALIASES:
        raise GraphSpecError(f"unknown family {name!r} in {text!r}")
    try:
        nums = [int(x) for x in rest.split(",")]
    except ValueError:
        raise GraphSpecError(f"bad size list in {text!r}") from None
    return _build(_ALIASES[name], nums, text)


def _build(family, nums, text):
    try:
        if family == "complete_multipartite":
            return complete_multipartite(nums)
        if family == "complete_bipartite":
            if len(nums) != 2:
                raise GraphSpecError(f"kbip takes two sizes in {text!r}")
            return complete_bipartite(*nums)
        if len(nums) != 1:
            raise GraphSpecError(f"{family} takes one size in {text!r}")
        return _GENERATORS[family](nums[0])
    except GraphSpecError:
        raise
    except ValueError as exc:
        raise GraphSpecError(f"{exc} in {text!r}") from None


def _split_join_operands(rest):
    # numeric tokens continue the previous operand's size list ("kbip:2,3")
    out: list[str] = []
    for tok in rest.split(","):
        tok = tok.strip()
        if tok.isdigit() and out:
            out[-1] += "," + tok
        else:
            out.append(tok)
    return out


def parse_graph_input(text: str, fmt: str = "auto") -> Graph:
    if fmt == "family" or (fmt == "auto" and ":" in text):
        return parse_graph_spec(text)
    if fmt in ("graph6", "auto"):
        return parse_graph6(text)
    raise GraphSpecError(f"unknown graph format {fmt!r}")


# ---------------------------------------------------------------------------
# Structure

def spanning_forest(g: Graph) -> EdgePartition:
    """DFS forest: roots in increasing order, neighbors visited in increasing order."""
    seen = [False] * g.n
    forest: list[Edge] = []
    nbrs = [sorted(a) for a in g.adjacency]
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        stack = [(root, iter(nbrs[root]))]
        while stack:
            v, it = stack[-1]
            for w in it:
                if not seen[w]:
                    seen[w] = True
                    forest.append((min(v, w), max(v, w)))
                    stack.append((w, iter(nbrs[w])))
                    break
            else:
                stack.pop()
    in_forest = set(forest)
    cotree = tuple(e for e in g.sorted_edges() if e not in in_forest)
    return EdgePartition(tuple(forest), cotree)


def components(g: Graph) -> list[Component]:
    comp = [-1] * g.n
    groups: list[list[int]] = []
    for root in range(g.n):
        if comp[root] >= 0:
            continue
        comp[root] = len(groups)
        members = [root]
        stack = [root]
        while stack:
            v = stack.pop()
            for w in g.adjacency[v]:
                if comp[w] < 0:
                    comp[w] = comp[root]
                    members.append(w)
                    stack.append(w)
        groups.append(sorted(members))
    out = []
    for members in groups:
        local = {v: i for i, v in enumerate(members)}
        edges = frozenset(
            (local[u], local[v]) for u, v in g.edges if u in local
        )
        out.append(Component(Graph(len(members), edges), tuple(members)))
    return out


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(components(g)) == 1


def canonical_form(g: Graph) -> tuple[Edge, ...]:
    """Lexicographically least sorted edge list over degree-ordered relabelings.

    Only relabelings that list vertices by decreasing degree are tried;
    that set is itself isomorphism-invariant, so the minimum is a complete
    invariant.
    """
    by_degree: dict[int, list[int]] = {}
    for v in range(g.n):
        by_degree.setdefault(g.degree(v), []).append(v)
    classes = [by_degree[d] for d in sorted(by_degree, reverse=True)]
    edges = list(g.edges)
    best = None
    for blocks in product(*(permutations(c) for c in classes)):
        perm = [0] * g.n
        pos = 0
        for block in blocks:
            for v in block:
                perm[v] = pos
                pos += 1
        key = tuple(sorted(
            (perm[u], perm[v]) if perm[u] < perm[v] else (perm[v], perm[u]) for u, v in edges
        ))
        if best is None or key < best:
            best = key
    return best if best is not None else ()


def contract_edge(g: Graph, u: int, v: int) -> Graph:
    """G/uv as a simple graph: v merges into u, parallel edges collapse, labels above v shift down."""
    if not g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge")
    rename = {x: (u if x == v else x) for x in range(g.n)}
    rename = {x: (y - 1 if y > v else y) for x, y in rename.items()}
    edges = {(rename[a], rename[b]) for a, b in g.edges if {a, b} != {u, v}}
    return Graph(g.n - 1, frozenset(e for e in edges if e[0] != e[1]))


@lru_cache(maxsize=None)
def _graph_classes(n: int) -> tuple[tuple[Edge, ...], ...]:
    # every n-vertex graph is some (n-1)-vertex class plus one more vertex
    if n == 0:
        return ((),)
    found = set()
    for base in _graph_classes(n - 1):
        for mask in range(1 << (n - 1)):
            extra = [(i, n - 1) for i in range(n - 1) if mask >> i & 1]
            found.add(canonical_form(Graph(n, frozenset(base) | frozenset(extra))))
    return tuple(sorted(found, key=lambda c: (len(c), c)))


def all_graphs(n: int, connected: bool = False) -> list[Graph]:
    """One representative per isomorphism class, found by exhaustive search."""
    reps = [Graph(n, frozenset(c)) for c in _graph_classes(n)]
    if connected:
        reps = [g for g in reps if is_connected(g)]
    return reps


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, frozenset(e for e in combinations(range(n), 2) if rng.random() < p))
