"""Regression suite of exact desk-scale instances; run by ``colorcount verify``."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from .dpcover import (canonical_cover, count_cover_colorings,
                      dp_color_function, dual_dp_color_function, enumerate_full_covers)
from .graph import all_graphs, complete, complete_bipartite, cycle, is_connected, random_graph
from .listcolor import ListAssignment, count_L_colorings, list_color_function
from .polynomial import brute_force_proper_colorings, chromatic_eval, closed_form_eval
from .shameful import (Verdict, bipartite_extension_matrix, mcdiarmid_assignment,
                       monte_carlo_expectation, ratio_compare, rearrangement_check,
                       restriction_target, shameful_scan)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    limit: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] criterion {self.number}: {self.title} "
                f"({self.seconds:.2f}s, limit {self.limit:g}s) {self.detail}")


def _cycle_formulas():
    bad = []
    for n in (3, 4, 5, 6):
        for k in (2, 3):
            g = cycle(n)
            dp = dp_color_function(g, k)[0]
            dual = dual_dp_color_function(g, k)[0]
            if n % 2:
                want_dp, want_dual = (k - 1) ** n - (k - 1), (k - 1) ** n + 1
            else:
                want_dp, want_dual = (k - 1) ** n - 1, (k - 1) ** n + (k - 1)
            if (dp, dual) != (want_dp, want_dual):
                bad.append(f"C{n},k={k}: got {(dp, dual)} want {(want_dp, want_dual)}")
    return not bad, "; ".join(bad) or "8 cycles x 2 functions exact"


def _k4_dual():
    a = dual_dp_color_function(complete(4), 2)[0]
    b = dual_dp_color_function(complete(4), 3)[0]
    return (a, b) == (2, 12), f"P*_DP(K4,2)={a}, P*_DP(K4,3)={b}"


def _k5_dual():
    g = complete(5)
    two = dual_dp_color_function(g, 2)[0]
    three = dual_dp_color_function(g, 3)[0]
    order = ratio_compare(three, 3, two, 2, 5)
    ok = two >= 2 and three <= 15 and order.verdict is Verdict.LESS
    return ok, (f"P*_DP(K5,2)={two}, P*_DP(K5,3)={three}; "
                f"{three}*2^5={order.left_product} vs {two}*3^5={order.right_product}")


def _bipartite_dual():
    bad = []
    for m, n, k in [(1, 2, 2), (2, 2, 2), (2, 2, 3), (2, 3, 2), (3, 3, 2)]:
        g = complete_bipartite(m, n)
        dual = dual_dp_color_function(g, k)[0]
        p = chromatic_eval(g, k)
        if dual != p:
            bad.append(f"K{m},{n} k={k}: {dual} != {p}")
    return not bad, "; ".join(bad) or "5 instances equal"


def _mcdiarmid():
    p3 = closed_form_eval("complete_bipartite", (10, 10), 3)
    p2 = closed_form_eval("complete_bipartite", (10, 10), 2)
    order = ratio_compare(p3, 3, p2, 2, 20)
    cert = order.left_product == 6138 * 2 ** 20 and order.right_product == 2 * 3 ** 20
    zero = count_L_colorings(complete_bipartite(10, 10), mcdiarmid_assignment(10))
    ok = p3 == 6138 and p2 == 2 and cert and order.verdict is Verdict.LESS and zero == 0
    return ok, (f"{p3}*2^20={order.left_product} < 2*3^20={order.right_product}; "
                f"witness 2-assignment has {zero} colorings, P(K10,10,2)={p2}")


def _corpus():
    """Every graph with n <= 4 up to isomorphism, found by exhaustive search."""
    return [g for n in range(1, 5) for g in all_graphs(n)]


def _corpus_label(graphs):
    connected = sum(is_connected(g) for g in graphs)
    return f"{len(graphs)} graphs with n<=4 ({connected} connected)"


def _list_dp_shameful():
    graphs = _corpus()
    bad = []
    for g in graphs:
        n = g.n
        pl = {k: list_color_function(g, k)[0] for k in (1, 2, 3)}
        pdp = {k: dp_color_function(g, k)[0] for k in (1, 2, 3)}
        for k in (1, 2):
            if pl[k + 1] * k ** n < pl[k] * (k + 1) ** n:
                bad.append(f"P_l on {sorted(g.edges)} at k={k}")
            if pdp[k + 1] * k ** n < pdp[k] * (k + 1) ** n:
                bad.append(f"P_DP on {sorted(g.edges)} at k={k}")
    return not bad, "; ".join(bad) or f"{_corpus_label(graphs)}, k in {{1,2}}"


def _sandwich():
    graphs = _corpus()
    bad = []
    for g in graphs:
        chain = (dp_color_function(g, 2)[0], list_color_function(g, 2)[0],
                 chromatic_eval(g, 2), dual_dp_color_function(g, 2)[0])
        if not chain[0] <= chain[1] <= chain[2] <= chain[3]:
            bad.append(f"{sorted(g.edges)}: {chain}")
    return not bad, "; ".join(bad) or f"{_corpus_label(graphs)} at k=2"


def _dong():
    bad = []
    count = 0
    for n in range(1, 5):
        for g in all_graphs(n):
            count += 1
            rep = shameful_scan(g, "P", range(max(1, n - 1), n + 3))
            if not rep.monotone:
                bad.append(str(sorted(g.edges)))
    return not bad, "; ".join(bad) or f"{count} graphs (n<=4) monotone for k>=n-1"


def _oracles():
    rng = random.Random(20240901)
    bad = 0
    for _ in range(200):
        n = rng.randint(1, 6)
        g = random_graph(n, rng.random(), rng)
        k = rng.randint(0, 4)
        p = chromatic_eval(g, k)
        if p != brute_force_proper_colorings(g, k):
            bad += 1
        if k >= 1 and p != count_cover_colorings(g, canonical_cover(g, k)):
            bad += 1
    return bad == 0, f"{bad} mismatches over 200 random graphs"


def _monte_carlo():
    g = cycle(4)
    src = ListAssignment.uniform(4, {1, 2, 3})
    target = restriction_target(count_L_colorings(g, src), 2, 4)
    first = monte_carlo_expectation(g, src, 10 ** 4, seed=0)
    again = monte_carlo_expectation(g, src, 10 ** 4, seed=0)
    ok = target == restriction_target(18, 2, 4) and first.within(target, 3.0) and first.mean == again.mean
    return ok, (f"mean {first.mean:.4f} vs target {target} ({float(target):.4f}), "
                f"stderr {first.stderr:.4f}, rerun mean {again.mean:.4f}")


def _rearrangement():
    rng = random.Random(7)
    for _ in range(10 ** 4):
        rows = [sorted(rng.randint(0, 6) for _ in range(rng.randint(1, 6)))]
        t = len(rows[0])
        rows += [sorted(rng.randint(0, 6) for _ in range(t)) for _ in range(rng.randint(0, 3))]
        perms = [rng.sample(range(t), t) for _ in rows]
        lhs, rhs, holds = rearrangement_check(rows, perms)
        if not holds:
            return False, f"failed on {rows} {perms}"
    g = complete_bipartite(2, 2)
    covers = list(enumerate_full_covers(g, 2, gauge_fixed=False))
    mism = sum(bipartite_extension_matrix(2, 2, 2, c).total != count_cover_colorings(g, c) for c in covers)
    return mism == 0 and len(covers) == 16, f"10^4 instances hold; {len(covers)} covers, {mism} mismatches"


CRITERIA: list[tuple[int, str, float, Callable]] = [
    (1, "cycle DP and dual DP closed forms", 10, _cycle_formulas),
    (2, "K4 dual DP values", 5, _k4_dual),
    (3, "K5 dual DP shameful violation", 60, _k5_dual),
    (4, "dual DP equals P on complete bipartite graphs", 30, _bipartite_dual),
    (5, "K10,10 counterexample and list witness", 1, _mcdiarmid),
    (6, "list and DP shameful inequalities on small graphs", 600, _list_dp_shameful),
    (7, "sandwich chain at k=2", 600, _sandwich),
    (8, "P monotone for k >= n-1", 10, _dong),
    (9, "deletion-contraction vs brute force vs canonical cover", 60, _oracles),
    (10, "Monte Carlo restriction mean", 10, _monte_carlo),
    (11, "rearrangement and extension matrix", 10, _rearrangement),
]


def run_criterion(number: int) -> CriterionResult:
    for num, title, limit, fn in CRITERIA:
        if num == number:
            start = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as exc:  # a crash is a failed criterion, reported as such
                ok, detail = False, f"raised {type(exc).__name__}: {exc}"
            elapsed = time.perf_counter() - start
            if elapsed > limit:
                ok = False
                detail += "; exceeded time limit"
            return CriterionResult(num, title, ok, detail, elapsed, limit)
    raise KeyError(number)


def run_all(echo=print) -> list[CriterionResult]:
    results = []
    for num, *_ in CRITERIA:
        res = run_criterion(num)
        if echo:
            echo(res.line())
        results.append(res)
    return results
