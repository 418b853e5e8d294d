"""DP-covers, transversal counting, and the DP / dual DP color functions.

Labels at a vertex are 0..k-1. A correspondence on edge (u, v), u < v, is a
tuple ``m`` of length k where ``m[i]`` is the label of v matched to label i
of u, or None when (u, i) has no cross-edge. Reading the edge as (v, u)
uses the inverse.

Full covers are enumerated in gauge-fixed form: identity on the DFS
spanning forest, a free permutation on every co-tree edge. Every full cover
can be relabeled into that form (the forest part of any full cover has a
canonical labeling), so min and max over the gauge-fixed family equal min
and max over all full covers.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations, product
from math import factorial
from typing import Iterator, Sequence

from ._parallel import ordered_map
from .errors import BudgetExceeded
from .graph import Edge, Graph, spanning_forest

DEFAULT_BUDGET = 10 ** 8

Correspondence = tuple  # tuple[int | None, ...]


@dataclass(frozen=True, eq=False)
class Cover:
    base: Graph
    fold: int
    correspondences: tuple[tuple[Edge, Correspondence], ...]

    def __post_init__(self):
        k = self.fold
        if k < 1:
            raise ValueError("fold must be at least 1")
        seen = {}
        for (u, v), m in self.correspondences:
            if u > v:
                u, v = v, u
                m = _invert(m, k)
            if not self.base.has_edge(u, v):
                raise ValueError(f"({u}, {v}) is not an edge of the base graph")
            m = tuple(m)
            if len(m) != k:
                raise ValueError(f"correspondence on {(u, v)} has length {len(m)}, fold is {k}")
            images = [t for t in m if t is not None]
            if len(set(images)) != len(images) or any(not 0 <= t < k for t in images):
                raise ValueError(f"correspondence on {(u, v)} is not an injection into [0, {k})")
            seen[(u, v)] = m
        for e in self.base.edges:
            seen.setdefault(e, (None,) * k)
        object.__setattr__(self, "correspondences", tuple(sorted(seen.items())))

    def __eq__(self, other):
        return (isinstance(other, Cover) and self.base == other.base
                and self.fold == other.fold and self.correspondences == other.correspondences)

    def __hash__(self):
        return hash((self.base, self.fold, self.correspondences))

    @cached_property
    def maps(self) -> dict[Edge, Correspondence]:
        return dict(self.correspondences)

    def mapping(self, u: int, v: int) -> Correspondence:
        if u < v:
            return self.maps[(u, v)]
        return _invert(self.maps[(v, u)], self.fold)

    @property
    def is_full(self) -> bool:
        return all(None not in m for m in self.maps.values())

    @property
    def gauge_fixed(self) -> bool:
        ident = tuple(range(self.fold))
        forest = spanning_forest(self.base).forest_edges
        return self.is_full and all(self.maps[e] == ident for e in forest)

    def cotree_tuple(self) -> tuple[Correspondence, ...]:
        return tuple(self.maps[e] for e in spanning_forest(self.base).cotree_edges)

    def relabel_labels(self, pis: Sequence[Sequence[int]]) -> Cover:
        """Rename label i at vertex v to pis[v][i]; the cover graph is unchanged up to isomorphism."""
        k = self.fold
        out = []
        for (u, v), m in self.correspondences:
            new = [None] * k
            for i, t in enumerate(m):
                new[pis[u][i]] = None if t is None else pis[v][t]
            out.append(((u, v), tuple(new)))
        return Cover(self.base, k, tuple(out))

    def with_pair(self, u: int, v: int, i: int, j: int) -> Cover:
        """Add the cross-edge (u, i)(v, j); both endpoints must be unmatched on that edge."""
        if u > v:
            u, v, i, j = v, u, j, i
        m = list(self.maps[(u, v)])
        if m[i] is not None or j in m:
            raise ValueError("pair conflicts with the existing matching")
        m[i] = j
        new = dict(self.maps)
        new[(u, v)] = tuple(m)
        return Cover(self.base, self.fold, tuple(new.items()))

    def to_json(self) -> dict:
        ident = tuple(range(self.fold))
        forest_edges = spanning_forest(self.base).forest_edges
        forest = [list(e) for e in forest_edges if self.maps[e] == ident]
        in_forest = {tuple(e) for e in forest}
        cotree = [
            {"edge": list(e), "perm": list(m)}
            for e, m in self.correspondences if e not in in_forest
        ]
        return {"n": self.base.n, "fold": self.fold, "forest": forest, "cotree": cotree}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data) -> Cover:
        if isinstance(data, str):
            data = json.loads(data)
        k = int(data["fold"])
        ident = tuple(range(k))
        maps = [((int(u), int(v)), ident) for u, v in data["forest"]]
        maps += [((int(c["edge"][0]), int(c["edge"][1])), tuple(c["perm"])) for c in data["cotree"]]
        endpoints = [x for e, _ in maps for x in e]
        n = int(data.get("n", max(endpoints, default=-1) + 1))
        base = Graph(n, frozenset(e for e, _ in maps))
        return cls(base, k, tuple(maps))

    def to_dot(self) -> str:
        lines = ["graph H {", "  node [shape=circle];"]
        for v in range(self.base.n):
            lines.append(f"  subgraph cluster_{v} {{")
            lines.append(f'    label="L({v})";')
            for i in range(self.fold):
                lines.append(f'    "{v},{i}";')
            for i, j in combinations(range(self.fold), 2):
                lines.append(f'    "{v},{i}" -- "{v},{j}" [style=dashed];')
            lines.append("  }")
        for (u, v), m in self.correspondences:
            for i, t in enumerate(m):
                if t is not None:
                    lines.append(f'  "{u},{i}" -- "{v},{t}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _invert(m, k) -> Correspondence:
    inv = [None] * k
    for i, t in enumerate(m):
        if t is not None:
            inv[t] = i
    return tuple(inv)


def canonical_cover(g: Graph, k: int) -> Cover:
    ident = tuple(range(k))
    return Cover(g, k, tuple((e, ident) for e in g.sorted_edges()))


def doubled_cover(g: Graph) -> Cover:
    return Cover(g, 2, tuple((e, (1, 0)) for e in g.sorted_edges()))


def restrict_cover(c: Cover, h: Graph) -> Cover:
    """Subcover on the subgraph h (vertices 0..h.n-1 of the base)."""
    if not h.is_subgraph_of(c.base):
        raise ValueError("h is not a subgraph of the cover's base graph")
    sub = Graph(h.n, h.edges)
    return Cover(sub, c.fold, tuple((e, c.maps[e]) for e in h.sorted_edges()))


def is_transversal(c: Cover, labels: Sequence[int]) -> bool:
    return all(
        m[labels[u]] is None or m[labels[u]] != labels[v]
        for (u, v), m in c.correspondences
    )


def count_cover_colorings(g: Graph, c: Cover) -> int:
    """Number of transversals (H-colorings), by backtracking.

    Assigning a label forbids its matched labels at later neighbors; a
    vertex with every label forbidden cuts the branch.
    """
    if c.base != g:
        raise ValueError("cover is not over this graph")
    k = c.fold
    n = g.n
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    pos = {v: i for i, v in enumerate(order)}
    later = []
    for i, v in enumerate(order):
        later.append([(pos[w], c.mapping(v, w)) for w in sorted(g.adjacency[v]) if pos[w] > i])
    forbidden = [[0] * k for _ in range(n)]
    free = [k] * n

    def rec(i):
        if i == n:
            return 1
        total = 0
        row = forbidden[i]
        for lab in range(k):
            if row[lab]:
                continue
            touched = []
            dead = False
            for j, m in later[i]:
                t = m[lab]
                if t is not None:
                    if forbidden[j][t] == 0:
                        free[j] -= 1
                        if free[j] == 0:
                            dead = True
                    forbidden[j][t] += 1
                    touched.append((j, t))
            if not dead:
                total += rec(i + 1)
            for j, t in touched:
                forbidden[j][t] -= 1
                if forbidden[j][t] == 0:
                    free[j] += 1
        return total

    return rec(0)


def cover_space_size(g: Graph, k: int) -> int:
    """(k!)^|cotree|, the number of gauge-fixed full covers."""
    return factorial(k) ** len(spanning_forest(g).cotree_edges)


def enumerate_full_covers(g: Graph, k: int, budget: int = DEFAULT_BUDGET,
                          gauge_fixed: bool = True) -> Iterator[Cover]:
    """Full k-fold covers in lexicographic permutation-tuple order.

    With gauge_fixed (the default) only co-tree edges vary; otherwise every
    edge carries a free permutation, giving all (k!)^|E| labeled full covers.
    """
    forest, cotree = spanning_forest(g)
    free_edges = cotree if gauge_fixed else tuple(g.sorted_edges())
    fixed = forest if gauge_fixed else ()
    size = factorial(k) ** len(free_edges)
    if size > budget:
        raise BudgetExceeded(f"full {k}-fold covers (k!)^{len(free_edges)}", size, budget)
    ident = tuple(range(k))
    perms = list(permutations(range(k)))
    head = tuple((e, ident) for e in fixed)
    for choice in product(perms, repeat=len(free_edges)):
        yield Cover(g, k, head + tuple(zip(free_edges, choice)))


def enumerate_all_covers(g: Graph, k: int, budget: int = DEFAULT_BUDGET) -> Iterator[Cover]:
    """Every k-fold cover: an arbitrary partial matching on each edge."""
    maps = []
    for size in range(k + 1):
        for dom in combinations(range(k), size):
            for img in permutations(range(k), size):
                m = [None] * k
                for a, b in zip(dom, img):
                    m[a] = b
                maps.append(tuple(m))
    edges = g.sorted_edges()
    total = len(maps) ** len(edges)
    if total > budget:
        raise BudgetExceeded(f"all {k}-fold covers", total, budget)
    for choice in product(maps, repeat=len(edges)):
        yield Cover(g, k, tuple(zip(edges, choice)))


# ---------------------------------------------------------------------------
# Extremal search over gauge-fixed full covers

class _SweepTables:
    """Label vectors proper on the forest, and per (co-tree edge, permutation) bitmasks of survivors."""

    def __init__(self, g: Graph, k: int):
        forest, cotree = spanning_forest(g)
        self.cotree = cotree
        self.perms = list(permutations(range(k)))
        parents: dict[int, list[int]] = {v: [] for v in range(g.n)}
        for u, v in forest:
            parents[max(u, v)].append(min(u, v))
        vectors = []
        lab = [0] * g.n

        def build(v):
            if v == g.n:
                vectors.append(tuple(lab))
                return
            for x in range(k):
                if all(lab[p] != x for p in parents[v]):
                    lab[v] = x
                    build(v + 1)

        build(0)
        self.vectors = vectors
        self.full = (1 << len(vectors)) - 1
        self.masks = []
        for u, v in cotree:
            row = []
            for p in self.perms:
                bits = 0
                for idx, vec in enumerate(vectors):
                    if p[vec[u]] != vec[v]:
                        bits |= 1 << idx
                row.append(bits)
            self.masks.append(row)


def _sweep(args):
    g, k, maximize, prefix = args
    tables = _SweepTables(g, k)
    masks = tables.masks
    depth = len(masks)
    nperm = len(tables.perms)
    best_val = None
    best_idx = None
    choice = list(prefix) + [0] * (depth - len(prefix))

    start = tables.full
    for e, pi in enumerate(prefix):
        start &= masks[e][pi]

    def rec(e, mask):
        nonlocal best_val, best_idx
        if maximize and best_val is not None and mask.bit_count() <= best_val:
            return False
        if e == depth:
            val = mask.bit_count()
            if best_val is None or (val > best_val if maximize else val < best_val):
                best_val = val
                best_idx = tuple(choice)
            return not maximize and val == 0
        row = masks[e]
        for pi in range(nperm):
            choice[e] = pi
            if rec(e + 1, mask & row[pi]):
                return True
        return False

    rec(len(prefix), start)
    return best_val, best_idx


def _extremal(g: Graph, k: int, maximize: bool, budget: int, workers: int) -> tuple[int, Cover]:
    size = cover_space_size(g, k)
    if size > budget:
        raise BudgetExceeded(f"full {k}-fold covers (k!)^|cotree|", size, budget)
    forest, cotree = spanning_forest(g)
    nperm = factorial(k)
    if workers > 1 and cotree and size >= 20000:
        # partition on the first one or two co-tree permutations
        split = 2 if len(cotree) > 1 and nperm < 4 * workers else 1
        prefixes = list(product(range(nperm), repeat=split))
        parts = ordered_map(_sweep, [(g, k, maximize, p) for p in prefixes], workers)
    else:
        parts = [_sweep((g, k, maximize, ()))]
    best = None
    for val, idx in parts:
        if val is None:
            continue
        if best is None or (val > best[0] if maximize else val < best[0]) or (val == best[0] and idx < best[1]):
            best = (val, idx)
    val, idx = best
    perms = list(permutations(range(k)))
    ident = tuple(range(k))
    maps = tuple((e, ident) for e in forest) + tuple((e, perms[i]) for e, i in zip(cotree, idx))
    return val, Cover(g, k, maps)


def dp_color_function(g: Graph, k: int, budget: int = DEFAULT_BUDGET, workers: int = 1) -> tuple[int, Cover]:
    """P_DP(g, k): fewest transversals over full k-fold covers, with the lexicographically first minimizer.

    Adding a cross-edge never creates transversals, so the minimum over all
    covers is attained on a full one.
    """
    return _extremal(g, k, False, budget, workers)


def dual_dp_color_function(g: Graph, k: int, budget: int = DEFAULT_BUDGET, workers: int = 1) -> tuple[int, Cover]:
    """P*_DP(g, k): most transversals over full k-fold covers."""
    return _extremal(g, k, True, budget, workers)


def dp_color_function_all_covers(g: Graph, k: int, budget: int = DEFAULT_BUDGET) -> int:
    """Minimum over every cover, partial matchings included. Tiny graphs only."""
    return min(count_cover_colorings(g, c) for c in enumerate_all_covers(g, k, budget))
