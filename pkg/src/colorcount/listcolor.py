"""List colorings: P(G, L) for a fixed assignment and the list color function.

Colors are positive integers. Two k-assignments that differ by a
permutation of colors have the same count, and an assignment is determined
up to such a permutation by the multiset of color "membership masks" (the
set of vertices whose list contains the color). That multiset is the exact
class key used for deduplication below.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import partial
from itertools import combinations, product
from math import comb
from typing import Iterator

from ._parallel import ordered_map
from .errors import BudgetExceeded
from .graph import Graph

DEFAULT_BUDGET = 10 ** 8


@dataclass(frozen=True)
class ListAssignment:
    fold: int
    lists: tuple[frozenset[int], ...]

    def __post_init__(self):
        lists = tuple(frozenset(l) for l in self.lists)
        for v, l in enumerate(lists):
            if len(l) != self.fold:
                raise ValueError(f"vertex {v} has {len(l)} colors, expected {self.fold}")
            if any(not isinstance(c, int) or c < 1 for c in l):
                raise ValueError(f"vertex {v}: colors must be positive integers")
        object.__setattr__(self, "lists", lists)

    @classmethod
    def uniform(cls, n: int, colors) -> ListAssignment:
        colors = frozenset(colors)
        return cls(len(colors), (colors,) * n)

    @property
    def n(self) -> int:
        return len(self.lists)

    def sort_key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(l)) for l in self.lists)

    def relabel(self, mapping) -> ListAssignment:
        return ListAssignment(self.fold, tuple(frozenset(mapping[c] for c in l) for l in self.lists))

    def canonical(self) -> ListAssignment:
        """Lexicographically least relabeling under color permutations.

        Colors are numbered 1, 2, ... in decreasing order of their membership
        vector read from vertex 0 onward.
        """
        colors = sorted(set().union(*self.lists)) if self.lists else []
        vec = {c: tuple(c in l for l in self.lists) for c in colors}
        order = sorted(colors, key=lambda c: vec[c], reverse=True)
        return self.relabel({c: i + 1 for i, c in enumerate(order)})

    def class_key(self) -> tuple[int, ...]:
        return _class_key(self.lists)

    def to_json(self) -> dict:
        return {"fold": self.fold, "lists": {str(v): sorted(l) for v, l in enumerate(self.lists)}}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)

    @classmethod
    def from_json(cls, data) -> ListAssignment:
        if isinstance(data, str):
            data = json.loads(data)
        lists = data["lists"]
        n = len(lists)
        return cls(int(data["fold"]), tuple(frozenset(lists[str(v)]) for v in range(n)))


def _class_key(lists) -> tuple[int, ...]:
    masks: dict[int, int] = {}
    for v, l in enumerate(lists):
        for c in l:
            masks[c] = masks.get(c, 0) | (1 << v)
    return tuple(sorted(masks.values()))


def _vertex_order(g: Graph) -> list[int]:
    return sorted(range(g.n), key=lambda v: (-g.degree(v), v))


def count_L_colorings(g: Graph, a: ListAssignment) -> int:
    """Number of proper colorings f with f(v) in a.lists[v]."""
    if a.n != g.n:
        raise ValueError(f"assignment covers {a.n} vertices, graph has {g.n}")
    order = _vertex_order(g)
    pos = {v: i for i, v in enumerate(order)}
    earlier = [[pos[w] for w in g.adjacency[v] if pos[w] < i] for i, v in enumerate(order)]
    lists = [sorted(a.lists[v]) for v in order]
    chosen = [0] * g.n
    n = g.n

    def rec(i):
        if i == n:
            return 1
        total = 0
        back = earlier[i]
        for c in lists[i]:
            for j in back:
                if chosen[j] == c:
                    break
            else:
                chosen[i] = c
                total += rec(i + 1)
        return total

    return rec(0)


def enumerate_k_assignments(g: Graph, k: int, budget: int = DEFAULT_BUDGET) -> Iterator[ListAssignment]:
    """One canonical representative per color-permutation class, in sorted order.

    Vertex v either reuses a subset of the colors already placed on
    0..v-1 or takes fresh ones; fresh colors are always the next unused
    integers, which keeps every assignment drawn from [n*k]. Prefixes that
    are equivalent under a color permutation have equivalent extensions, so
    each level is deduplicated by class key before growing further.
    """
    n = g.n
    if n == 0:
        yield ListAssignment(k, ())
        return
    level = {(): ()}  # class key -> representative prefix (tuple of frozensets)
    spent = 0
    for v in range(n):
        predicted = 0
        for prefix in level.values():
            used = max((max(l) for l in prefix if l), default=0)
            predicted += sum(comb(used, j) for j in range(k + 1))
        spent += predicted
        if spent > budget:
            raise BudgetExceeded(
                f"k-assignment enumeration (naive space C(nk,k)^n = {comb(n * k, k) ** n})",
                spent, budget)
        nxt = {}
        for prefix in level.values():
            used = max((max(l) for l in prefix if l), default=0)
            for j in range(min(k, used) + 1):
                fresh = frozenset(range(used + 1, used + 1 + k - j))
                for old in combinations(range(1, used + 1), j):
                    cand = prefix + (frozenset(old) | fresh,)
                    key = _class_key(cand)
                    if key not in nxt:
                        nxt[key] = cand
        level = nxt
    reps = sorted((ListAssignment(k, p).canonical() for p in level.values()), key=ListAssignment.sort_key)
    yield from reps


def _count_pair(g, a):
    return count_L_colorings(g, a)


def list_color_function(g: Graph, k: int, budget: int = DEFAULT_BUDGET,
                        workers: int = 1) -> tuple[int, ListAssignment]:
    """P_l(g, k) with the lexicographically least canonical minimizer."""
    reps = list(enumerate_k_assignments(g, k, budget))
    best = None
    if workers > 1:
        counts = ordered_map(partial(_count_pair, g), reps, workers)
    else:
        counts = (count_L_colorings(g, a) for a in reps)
    for a, c in zip(reps, counts):
        if best is None or c < best[0]:
            best = (c, a)
            if c == 0:
                break
    return best


def list_color_function_exhaustive(g: Graph, k: int, universe: int,
                                   budget: int = DEFAULT_BUDGET) -> int:
    """Minimum of P(g, L) over every k-assignment with colors in [universe]; no symmetry reduction."""
    subsets = [frozenset(s) for s in combinations(range(1, universe + 1), k)]
    size = len(subsets) ** g.n
    if size > budget:
        raise BudgetExceeded("exhaustive k-assignments C(universe,k)^n", size, budget)
    return min(count_L_colorings(g, ListAssignment(k, lists)) for lists in product(subsets, repeat=g.n))
