"""Exact chromatic polynomial values and the combinatorial primitives behind them."""
from __future__ import annotations

from functools import lru_cache
from itertools import product

from .errors import BudgetExceeded, UnsupportedFamily
from .graph import Graph

# k**n limit of the brute-force counter: n <= 8 at k <= 4
BRUTE_FORCE_BUDGET = 4 ** 8


@lru_cache(maxsize=None)
def stirling2(m: int, i: int) -> int:
    """Stirling number of the second kind S(m, i); 0 when i > m."""
    if i < 0 or m < 0 or i > m:
        return 0
    if m == i:
        return 1
    if i == 0:
        return 0
    return i * stirling2(m - 1, i) + stirling2(m - 1, i - 1)


def falling_factorial(k: int, j: int) -> int:
    if j < 0:
        raise ValueError("j must be nonnegative")
    out = 1
    for t in range(j):
        out *= k - t
        if out == 0:
            return 0
    return out


def brute_force_proper_colorings(g: Graph, k: int, budget: int | None = None) -> int:
    """Counts all maps V -> [k] directly. Independent check for chromatic_eval."""
    limit = BRUTE_FORCE_BUDGET if budget is None else budget
    if k ** g.n > limit:
        raise BudgetExceeded("brute-force colorings k^n", k ** g.n, limit)
    edges = g.sorted_edges()
    return sum(
        all(f[u] != f[v] for u, v in edges)
        for f in product(range(k), repeat=g.n)
    )


def chromatic_eval(g: Graph, k: int) -> int:
    """P(g, k) by deletion-contraction.

    Shortcuts, all exact: components multiply, an isolated vertex gives a
    factor k, a degree-1 vertex a factor k-1, complete graphs are falling
    factorials. Subresults are memoized on the relabeled edge set, which is
    an exact key (isomorphic graphs may miss the cache, never collide).
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    adj = {v: set(g.adjacency[v]) for v in range(g.n)}
    return _dc(adj, k, {})


def _dc(adj: dict[int, set[int]], k: int, memo: dict) -> int:
    factor = 1
    adj = {v: set(nb) for v, nb in adj.items()}
    # strip isolated and pendant vertices
    changed = True
    while changed and adj:
        changed = False
        for v in list(adj):
            d = len(adj[v])
            if d <= 1:
                factor *= k if d == 0 else k - 1
                for w in adj.pop(v):
                    adj[w].discard(v)
                changed = True
        if factor == 0:
            return 0
    if not adj:
        return factor
    n = len(adj)
    m = sum(len(nb) for nb in adj.values()) // 2
    if m == n * (n - 1) // 2:
        return factor * falling_factorial(k, n)

    comps = _split(adj)
    if len(comps) > 1:
        for comp in comps:
            factor *= _dc(comp, k, memo)
            if factor == 0:
                return 0
        return factor

    key = _memo_key(adj)
    hit = memo.get(key)
    if hit is not None:
        return factor * hit

    # contract along a minimum-degree vertex to keep the minors small
    u = min(adj, key=lambda v: (len(adj[v]), v))
    v = min(adj[u], key=lambda w: (len(adj[w]), w))
    deleted = {x: set(nb) for x, nb in adj.items()}
    deleted[u].discard(v)
    deleted[v].discard(u)
    contracted = {x: set(nb) for x, nb in adj.items() if x != v}
    for w in adj[v]:
        contracted[w].discard(v)
        if w != u:
            contracted[w].add(u)
            contracted[u].add(w)
    contracted[u].discard(u)
    value = _dc(deleted, k, memo) - _dc(contracted, k, memo)
    memo[key] = value
    return factor * value


def _split(adj):
    seen = set()
    comps = []
    for root in adj:
        if root in seen:
            continue
        seen.add(root)
        stack = [root]
        members = []
        while stack:
            x = stack.pop()
            members.append(x)
            for w in adj[x]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append({x: adj[x] for x in members})
    return comps


def _memo_key(adj):
    # Degree-sorted relabeling; the key is the full edge set under it, so it
    # identifies the graph exactly.
    order = sorted(adj, key=lambda v: (len(adj[v]), sorted(len(adj[w]) for w in adj[v]), v))
    pos = {v: i for i, v in enumerate(order)}
    return frozenset(
        (min(pos[a], pos[b]), max(pos[a], pos[b])) for a in adj for b in adj[a] if a < b
    )


def complete_multipartite_eval(sizes, k: int) -> int:
    """Sum over per-part block counts j_i of prod S(n_i, j_i) * (k)_{sum j_i}.

    Each part is independent, so its colors form a set partition into j_i
    blocks; distinct parts never share a color.
    """
    # coeff[t] = sum of prod S(n_i, j_i) over choices with sum j_i = t
    coeff = {0: 1}
    for s in sizes:
        nxt: dict[int, int] = {}
        for t, c in coeff.items():
            for j in range(1, min(s, k) + 1):
                if t + j > k:
                    break
                nxt[t + j] = nxt.get(t + j, 0) + c * stirling2(s, j)
        coeff = nxt
        if not coeff:
            return 0
    return sum(c * falling_factorial(k, t) for t, c in coeff.items())


def closed_form_eval(family: str, params, k: int) -> int:
    """Closed-form P for the families that have one.

    ``params`` is the size, or the list of part sizes for
    ``complete_multipartite``; ``complete_bipartite`` takes ``(m, n)``.
    """
    if isinstance(params, int):
        params = (params,)
    params = tuple(params)
    if family == "empty":
        return k ** params[0]
    if family == "complete":
        return falling_factorial(k, params[0])
    if family in ("tree", "path"):
        n = params[0]
        return k * (k - 1) ** (n - 1)
    if family == "cycle":
        n = params[0]
        if n < 3:
            raise ValueError("cycle needs n >= 3")
        return (k - 1) ** n + (-1) ** n * (k - 1)
    if family in ("complete_multipartite", "complete_bipartite"):
        return complete_multipartite_eval(params, k)
    raise UnsupportedFamily(f"no closed form for family {family!r}")


def chromatic_value(g: Graph, k: int) -> int:
    """P(g, k), taking the closed form when g came from a generator that has one."""
    if g.family is not None:
        family, params = g.family
        try:
            return closed_form_eval(family, params, k)
        except UnsupportedFamily:
            pass
    return chromatic_eval(g, k)
