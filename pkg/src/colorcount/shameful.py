"""Shameful-inequality verdicts, scans, and the machinery around them.

A step k -> k+1 of a color function F on an n-vertex graph is compared as
F(k)/k^n against F(k+1)/(k+1)^n by integer cross-multiplication. The step
violates the inequality when the old ratio is strictly greater.
"""
from __future__ import annotations

import csv
import enum
import io
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import sqrt
from typing import Sequence

import numpy as np

from ._parallel import ordered_map
from .dpcover import (DEFAULT_BUDGET, Cover, count_cover_colorings,
                      dp_color_function, dual_dp_color_function)
from .errors import BudgetExceeded, UndefinedStatistic
from .graph import Graph, complete_multipartite
from .listcolor import ListAssignment, count_L_colorings, list_color_function
from .polynomial import chromatic_value, closed_form_eval

FUNCTIONS = ("P", "Pl", "Pdp", "Pdual")


class Verdict(enum.Enum):
    LESS = "<"
    EQUAL = "="
    GREATER = ">"


@dataclass(frozen=True)
class RatioOrder:
    verdict: Verdict
    left_product: int   # a * k_b^n
    right_product: int  # b * k_a^n


def ratio_compare(a: int, k_a: int, b: int, k_b: int, n: int) -> RatioOrder:
    """Order of a/k_a^n against b/k_b^n."""
    if k_a < 1 or k_b < 1:
        raise ValueError("fold counts must be positive")
    left = a * k_b ** n
    right = b * k_a ** n
    if left < right:
        verdict = Verdict.LESS
    elif left > right:
        verdict = Verdict.GREATER
    else:
        verdict = Verdict.EQUAL
    return RatioOrder(verdict, left, right)


# ---------------------------------------------------------------------------
# Scans

def evaluate(g: Graph, fn: str, k: int, budget: int = DEFAULT_BUDGET, workers: int = 1):
    """(value, witness) of one color function; witness is None for P."""
    if fn == "P":
        return chromatic_value(g, k), None
    if k == 0:
        return (1 if g.n == 0 else 0), None
    if fn == "Pl":
        return list_color_function(g, k, budget, workers)
    if fn == "Pdp":
        return dp_color_function(g, k, budget, workers)
    if fn == "Pdual":
        return dual_dp_color_function(g, k, budget, workers)
    raise ValueError(f"unknown color function {fn!r}; expected one of {FUNCTIONS}")


@dataclass
class ScanReport:
    graph: str
    function: str
    n: int
    ks: list[int]
    values: dict[int, int | None]
    steps: dict[int, RatioOrder | None]  # keyed by the step's lower k
    witnesses: dict[int, object] = field(default_factory=dict)
    refusals: dict[int, str] = field(default_factory=dict)

    @property
    def monotone(self) -> bool:
        return all(s is None or s.verdict is not Verdict.GREATER for s in self.steps.values())

    @property
    def first_violation(self) -> int | None:
        for k in self.ks:
            s = self.steps.get(k)
            if s is not None and s.verdict is Verdict.GREATER:
                return k
        return None

    @property
    def complete(self) -> bool:
        return all(self.values[k] is not None for k in self.ks)

    def rows(self, witness_files: dict[int, str] | None = None):
        witness_files = witness_files or {}
        for k in self.ks:
            prev = self.steps.get(k - 1)
            yield {
                "graph": self.graph,
                "function": self.function,
                "k": k,
                "value": "" if self.values[k] is None else str(self.values[k]),
                "cmp_prev": "" if prev is None else prev.verdict.value,
                "witness_file": witness_files.get(k, ""),
            }

    def to_csv(self, witness_files=None) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, ["graph", "function", "k", "value", "cmp_prev", "witness_file"],
                           lineterminator="\n")
        w.writeheader()
        for row in self.rows(witness_files):
            w.writerow(row)
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "graph": self.graph,
            "function": self.function,
            "n": self.n,
            "values": {str(k): (None if v is None else str(v)) for k, v in self.values.items()},
            "steps": {
                f"{k}->{k + 1}": None if s is None else {
                    "cmp": s.verdict.value, "left": str(s.left_product), "right": str(s.right_product)}
                for k, s in self.steps.items()
            },
            "monotone": self.monotone,
            "first_violation": self.first_violation,
            "refusals": {str(k): r for k, r in self.refusals.items()},
        }


def shameful_scan(g: Graph, fn: str, k_range: Sequence[int], budget: int = DEFAULT_BUDGET,
                  graph_id: str = "", workers: int = 1) -> ScanReport:
    ks = sorted(k_range)
    if any(k < 1 for k in ks):
        raise ValueError("scan values of k must be positive")
    values: dict[int, int | None] = {}
    witnesses = {}
    refusals = {}
    for k in ks:
        try:
            val, wit = evaluate(g, fn, k, budget, workers)
        except BudgetExceeded as exc:
            values[k] = None
            refusals[k] = str(exc)
            continue
        values[k] = val
        if wit is not None:
            witnesses[k] = wit
    steps = {}
    for k in ks[:-1]:
        if k + 1 not in values:
            continue
        a, b = values[k], values[k + 1]
        steps[k] = None if a is None or b is None else ratio_compare(a, k, b, k + 1, g.n)
    return ScanReport(graph_id or str(g), fn, g.n, ks, values, steps, witnesses, refusals)


def mu_expected_colors(g: Graph) -> Fraction:
    """Expected number of colors used by a uniform random proper n-coloring."""
    n = g.n
    if n == 0:
        raise UndefinedStatistic("mu is undefined on the graph with no vertices")
    top = chromatic_value(g, n)
    if top == 0:
        raise UndefinedStatistic("P(G, n) = 0")
    return n * (1 - Fraction(chromatic_value(g, n - 1), top))


# ---------------------------------------------------------------------------
# Random restriction: delete one label per vertex of a (k+1)-fold source

def restrict_source(source, deletions: Sequence[int]):
    """Drop position deletions[v] at every vertex.

    For a list assignment the position indexes the sorted list; for a cover
    it is the label itself. Cover labels are renumbered 0..k-1 in order and
    cross-edges at deleted labels disappear.
    """
    if isinstance(source, ListAssignment):
        lists = []
        for l, d in zip(source.lists, deletions):
            s = sorted(l)
            lists.append(frozenset(s[:d] + s[d + 1:]))
        return ListAssignment(source.fold - 1, tuple(lists))
    k = source.fold - 1
    renum = [{old: new for new, old in enumerate(x for x in range(k + 1) if x != d)} for d in deletions]
    maps = []
    for (u, v), m in source.correspondences:
        new = [None] * k
        for old, new_u in renum[u].items():
            t = m[old]
            if t is not None and t != deletions[v]:
                new[new_u] = renum[v][t]
        maps.append(((u, v), tuple(new)))
    return Cover(source.base, k, tuple(maps))


def _count_source(g, source) -> int:
    if isinstance(source, ListAssignment):
        return count_L_colorings(g, source)
    return count_cover_colorings(g, source)


def random_restriction_trial(g: Graph, source, rng: np.random.Generator | random.Random,
                             deletions: Sequence[int] | None = None) -> int:
    fold = source.fold
    if fold < 2:
        raise ValueError("source fold must be at least 2")
    if deletions is None:
        if isinstance(rng, random.Random):
            deletions = [rng.randrange(fold) for _ in range(g.n)]
        else:
            deletions = [int(x) for x in rng.integers(0, fold, size=g.n)]
    return _count_source(g, restrict_source(source, deletions))


def restriction_target(a: int, k: int, n: int) -> Fraction:
    """a * k^n / (k+1)^n: each of the a colorings survives with probability (k/(k+1))^n."""
    return Fraction(a * k ** n, (k + 1) ** n)


def exact_restriction_mean(g: Graph, source) -> Fraction:
    """Average restricted count over all (k+1)^n deletion patterns."""
    fold = source.fold
    total = sum(_count_source(g, restrict_source(source, d)) for d in product(range(fold), repeat=g.n))
    return Fraction(total, fold ** g.n)


def trial_rng(seed: int, index: int) -> np.random.Generator:
    """Independent stream for trial ``index``: SeedSequence(seed, spawn_key=(index,))."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))


@dataclass(frozen=True)
class TrialStats:
    """Counts are integers, so the running sums are exact and merge in any order."""

    trials: int
    total: int
    total_sq: int
    seed: int

    @property
    def mean(self) -> float:
        return float(Fraction(self.total, self.trials))

    @property
    def variance(self) -> float:
        if self.trials < 2:
            return 0.0
        num = self.trials * self.total_sq - self.total ** 2
        return float(Fraction(num, self.trials * (self.trials - 1)))

    @property
    def stderr(self) -> float:
        return sqrt(self.variance / self.trials)

    def merge(self, other: TrialStats) -> TrialStats:
        return TrialStats(self.trials + other.trials, self.total + other.total,
                          self.total_sq + other.total_sq, self.seed)

    def within(self, target, z: float = 3.0) -> bool:
        return abs(self.mean - float(target)) < z * self.stderr if self.stderr > 0 else self.mean == float(target)

    def to_json(self) -> dict:
        return {"trials": self.trials, "mean": self.mean, "variance": self.variance,
                "stderr": self.stderr, "seed": self.seed}


def _trial_chunk(args):
    g, source, seed, start, stop = args
    total = total_sq = 0
    for i in range(start, stop):
        x = random_restriction_trial(g, source, trial_rng(seed, i))
        total += x
        total_sq += x * x
    return total, total_sq


def monte_carlo_expectation(g: Graph, source, trials: int, seed: int = 0, workers: int = 1) -> TrialStats:
    if trials < 100:
        raise ValueError("at least 100 trials are required")
    nchunks = max(1, workers)
    bounds = [trials * i // nchunks for i in range(nchunks + 1)]
    chunks = [(g, source, seed, bounds[i], bounds[i + 1]) for i in range(nchunks)]
    stats = TrialStats(0, 0, 0, seed)
    for total, total_sq in ordered_map(_trial_chunk, chunks, workers):
        stats = stats.merge(TrialStats(0, total, total_sq, seed))
    return TrialStats(trials, stats.total, stats.total_sq, seed)


# ---------------------------------------------------------------------------
# Rearrangement inequality and the complete bipartite extension matrix

def rearrangement_check(rows: Sequence[Sequence[int]], perms: Sequence[Sequence[int]]):
    """(sum_j prod_i rows[i][perms[i][j]], sum_j prod_i rows[i][j], lhs <= rhs)."""
    if not rows:
        raise ValueError("empty matrix")
    t = len(rows[0])
    if any(len(r) != t for r in rows):
        raise ValueError("matrix is not rectangular")
    if len(perms) != len(rows):
        raise ValueError("need one permutation per row")
    for i, r in enumerate(rows):
        if any(x < 0 for x in r):
            raise ValueError(f"row {i} has a negative entry")
        if any(r[j] > r[j + 1] for j in range(t - 1)):
            raise ValueError(f"row {i} is not sorted ascending")
    for i, p in enumerate(perms):
        if sorted(p) != list(range(t)):
            raise ValueError(f"perms[{i}] is not a permutation of 0..{t - 1}")
    lhs = rhs = 0
    for j in range(t):
        a = b = 1
        for i, r in enumerate(rows):
            a *= r[perms[i][j]]
            b *= r[j]
        lhs += a
        rhs += b
    holds = lhs <= rhs
    assert holds, "rearrangement inequality failed"
    return lhs, rhs, holds


@dataclass(frozen=True)
class ExtensionMatrix:
    """rows[i][j]: labels at X-vertex i compatible with the j-th Y-side label tuple."""

    m: int
    n: int
    fold: int
    columns: tuple[tuple[int, ...], ...]
    rows: tuple[tuple[int, ...], ...]

    @property
    def total(self) -> int:
        out = 0
        for j in range(len(self.columns)):
            p = 1
            for r in self.rows:
                p *= r[j]
            out += p
        return out

    def sorted_rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(r)) for r in self.rows)

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "fold": self.fold,
                "columns": [list(c) for c in self.columns],
                "rows": [list(r) for r in self.rows], "total": str(self.total)}


def bipartite_extension_matrix(m: int, n: int, k: int, c: Cover,
                               budget: int = DEFAULT_BUDGET) -> ExtensionMatrix:
    """X = vertices 0..m-1, Y = m..m+n-1 (the complete_bipartite labeling)."""
    if c.base.n != m + n or c.fold != k or not c.is_full:
        raise ValueError("expected a full k-fold cover of K_{m,n}")
    for x in range(m):
        for y in range(m, m + n):
            if not c.base.has_edge(x, y):
                raise ValueError(f"base graph lacks edge {(x, y)}")
    if k ** n > budget:
        raise BudgetExceeded("Y-side label tuples k^n", k ** n, budget)
    columns = tuple(product(range(k), repeat=n))
    rows = []
    for x in range(m):
        maps = [c.mapping(x, m + q) for q in range(n)]
        row = []
        for a in columns:
            row.append(sum(all(maps[q][z] != a[q] for q in range(n)) for z in range(k)))
        rows.append(tuple(row))
    return ExtensionMatrix(m, n, k, columns, tuple(rows))


# ---------------------------------------------------------------------------
# Known counterexample families

def seymour_sizes(q: int) -> tuple[int, ...]:
    """Part sizes of the complete 2^q-partite graph with parts of size 100q."""
    if q < 1:
        raise ValueError("q must be positive")
    return (100 * q,) * (2 ** q)


def seymour_graph(q: int) -> Graph:
    return complete_multipartite(seymour_sizes(q))


def seymour_step(q: int) -> RatioOrder:
    """Closed-form comparison of P/k^n at k = 2^q against k = 2^q + 1."""
    sizes = seymour_sizes(q)
    n = sum(sizes)
    k = 2 ** q
    a = closed_form_eval("complete_multipartite", sizes, k)
    b = closed_form_eval("complete_multipartite", sizes, k + 1)
    return ratio_compare(a, k, b, k + 1, n)


def mcdiarmid_assignment(n: int) -> ListAssignment:
    """A 2-assignment of K_{n,n} (n >= 4) with no proper coloring.

    x0 gets {1,2}, x1 gets {3,4}, y0..y3 get {1,3},{1,4},{2,3},{2,4}; other
    X-vertices reuse {1,2} and other Y-vertices {3,4}. Whatever x0 and x1
    pick, one of y0..y3 sees both of its colors taken.
    """
    if n < 4:
        raise ValueError("need n >= 4")
    ys = [{1, 3}, {1, 4}, {2, 3}, {2, 4}]
    lists = [{1, 2}, {3, 4}] + [{1, 2}] * (n - 2) + ys + [{3, 4}] * (n - 4)
    return ListAssignment(2, tuple(frozenset(l) for l in lists))
