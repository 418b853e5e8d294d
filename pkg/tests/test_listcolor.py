import random
from itertools import permutations

import pytest

from colorcount.errors import BudgetExceeded
from colorcount.graph import Graph, all_graphs, complete, complete_bipartite, cycle, disjoint_union, empty, path
from colorcount.listcolor import (ListAssignment, count_L_colorings, enumerate_k_assignments,
                                  list_color_function, list_color_function_exhaustive)
from colorcount.polynomial import chromatic_eval

from oracles import list_color_min, list_colorings

K24_BAD = ListAssignment(2, tuple(map(frozenset, [{1, 2}, {3, 4}, {1, 3}, {1, 4}, {2, 3}, {2, 4}])))


def _assign(lists):
    return ListAssignment(len(lists[0]), tuple(frozenset(l) for l in lists))


def test_count_examples():
    assert count_L_colorings(complete(3), ListAssignment.uniform(3, {1, 2, 3})) == 6
    assert count_L_colorings(complete_bipartite(2, 4), K24_BAD) == 0
    assert count_L_colorings(complete(1), _assign([{7}])) == 1


def test_k24_bad_assignment_brute_force():
    g = complete_bipartite(2, 4)
    assert list_colorings(g.n, g.sorted_edges(), K24_BAD.lists) == 0


def test_assignment_validation():
    with pytest.raises(ValueError):
        ListAssignment(2, (frozenset({1}),))
    with pytest.raises(ValueError):
        ListAssignment(1, (frozenset({0}),))
    with pytest.raises(ValueError):
        count_L_colorings(complete(3), ListAssignment.uniform(2, {1}))


@pytest.mark.parametrize("g,k,classes", [(complete(1), 2, 1), (complete(2), 1, 2), (complete(2), 2, 3)])
def test_class_counts(g, k, classes):
    assert len(list(enumerate_k_assignments(g, k))) == classes


def test_enumeration_sorted_and_canonical():
    reps = list(enumerate_k_assignments(path(3), 2))
    keys = [a.sort_key() for a in reps]
    assert keys == sorted(keys)
    assert len({a.class_key() for a in reps}) == len(reps)
    for a in reps:
        assert a.canonical() == a


def _brute_canonical(a):
    colors = sorted(set().union(*a.lists))
    best = None
    for perm in permutations(range(1, len(colors) + 1)):
        b = a.relabel(dict(zip(colors, perm)))
        if best is None or b.sort_key() < best.sort_key():
            best = b
    return best


def test_canonical_is_lex_min():
    rng = random.Random(3)
    for _ in range(200):
        n, k = rng.randint(1, 3), rng.randint(1, 2)
        pool = rng.sample(range(1, 30), min(n * k, 6))
        a = ListAssignment(k, tuple(frozenset(rng.sample(pool, k)) for _ in range(n)))
        assert a.canonical() == _brute_canonical(a)
        assert a.canonical().class_key() == a.class_key()


def test_color_permutation_invariance():
    rng = random.Random(11)
    for g in all_graphs(4):
        lists = [frozenset(rng.sample(range(1, 7), 2)) for _ in range(4)]
        a = ListAssignment(2, tuple(lists))
        for _ in range(5):
            perm = list(range(1, 7))
            rng.shuffle(perm)
            b = a.relabel({c: perm[c - 1] for c in range(1, 7)})
            assert count_L_colorings(g, a) == count_L_colorings(g, b)


def test_enumeration_covers_every_class():
    # every assignment from [nk] must be equivalent to some enumerated representative
    from itertools import combinations, product
    g = path(3)
    k = 2
    reps = {a.class_key() for a in enumerate_k_assignments(g, k)}
    subsets = [frozenset(s) for s in combinations(range(1, 7), k)]
    seen = set()
    for lists in product(subsets, repeat=3):
        key = ListAssignment(k, lists).class_key()
        assert key in reps
        seen.add(key)
    assert seen == reps


def test_counts_match_oracle():
    rng = random.Random(5)
    for g in all_graphs(4):
        for _ in range(5):
            lists = [frozenset(rng.sample(range(1, 6), 2)) for _ in range(4)]
            assert count_L_colorings(g, ListAssignment(2, tuple(lists))) == \
                list_colorings(4, g.sorted_edges(), lists)


@pytest.mark.parametrize("g,k,want", [(cycle(4), 2, 2), (complete_bipartite(2, 4), 2, 0), (complete(3), 2, 0)])
def test_list_color_function_examples(g, k, want):
    value, witness = list_color_function(g, k)
    assert value == want
    assert count_L_colorings(g, witness) == value


def test_k24_witness_is_canonical_minimizer():
    value, witness = list_color_function(complete_bipartite(2, 4), 2)
    assert value == 0
    assert witness.sort_key() == ((1, 2), (3, 4), (1, 3), (1, 4), (2, 3), (2, 4))


def test_universe_nk_matches_oracle_and_larger_universe():
    for n in (1, 2, 3):
        for g in all_graphs(n):
            for k in (1, 2):
                value = list_color_function(g, k)[0]
                assert value == list_color_min(g.n, g.sorted_edges(), k, n * k)
                assert value == list_color_function_exhaustive(g, k, n * k + 2)


def test_universe_nk_plus_two_on_four_vertices():
    for g in all_graphs(4, connected=True):
        assert list_color_function(g, 1)[0] == list_color_function_exhaustive(g, 1, 6)


def test_list_le_chromatic(small_graphs):
    for g in small_graphs:
        for k in (1, 2, 3):
            assert list_color_function(g, k)[0] <= chromatic_eval(g, k)


def test_shameful_list_inequality(small_graphs):
    for g in small_graphs:
        pl = [list_color_function(g, k)[0] for k in (1, 2, 3)]
        for k in (1, 2):
            assert pl[k] * k ** g.n >= pl[k - 1] * (k + 1) ** g.n


@pytest.mark.parametrize("k", [2, 3])
def test_chordal_and_cycles_equal_chromatic(chordal_and_cycles, k):
    for name, g in chordal_and_cycles.items():
        assert list_color_function(g, k)[0] == chromatic_eval(g, k), name


def test_dong_zhang_few_edges():
    # P_l = P once k >= t - 1 for graphs with t edges; checked for t <= 4 at the threshold
    for n in range(1, 5):
        for g in all_graphs(n):
            t = g.m
            if t > 4:
                continue
            for k in (max(1, t - 1),):
                assert list_color_function(g, k)[0] == chromatic_eval(g, k), (g, k)


def test_component_multiplicativity():
    a, b = cycle(3), path(2)
    g = disjoint_union(a, b)
    for k in (1, 2):
        assert list_color_function(g, k)[0] == list_color_function(a, k)[0] * list_color_function(b, k)[0]


def test_json_round_trip():
    text = K24_BAD.dumps()
    assert '"lists": {"0": [1, 2]' in text
    assert ListAssignment.from_json(text) == K24_BAD
    assert ListAssignment.from_json(K24_BAD.to_json()) == K24_BAD


def test_budget_refusal_names_bound():
    with pytest.raises(BudgetExceeded) as exc:
        list(enumerate_k_assignments(cycle(5), 3, budget=1000))
    assert str(15 ** 0 * __import__("math").comb(15, 3) ** 5) in str(exc.value)


def test_workers_schedule_independent():
    g = cycle(4)
    assert list_color_function(g, 2, workers=2) == list_color_function(g, 2)


def test_empty_graph_lists():
    assert list_color_function(empty(2), 2)[0] == 4
    assert list_color_function(Graph(0, frozenset()), 2)[0] == 1
