import random

import pytest
from hypothesis import given, settings, strategies as st

from colorcount.errors import Graph6Error, GraphSpecError
from colorcount.graph import (Graph, all_graphs, complete, complete_bipartite, components,
                              contract_edge, cycle, disjoint_union, empty, encode_graph6, generate,
                              parse_graph6, parse_graph_input, parse_graph_spec, read_graph6_file,
                              spanning_forest)

from oracles import graph6_bits


def test_graph_normalizes_and_validates():
    g = Graph(3, frozenset({(1, 0), (2, 1)}))
    assert g.edges == {(0, 1), (1, 2)}
    with pytest.raises(ValueError):
        Graph(2, frozenset({(1, 1)}))
    with pytest.raises(ValueError):
        Graph(2, frozenset({(0, 2)}))


@pytest.mark.parametrize("text,n,m", [("@", 1, 0), ("C~", 4, 6), ("D~{", 5, 10)])
def test_parse_graph6_examples(text, n, m):
    g = parse_graph6(text)
    assert (g.n, g.m) == (n, m)
    assert text == graph6_bits(g.n, g.edges)  # independent hand encoder
    if m:
        assert g == complete(n)


@pytest.mark.parametrize("text,offset", [
    ("", 0),
    ("C", 1),            # missing data byte
    ("C~~", 2),          # trailing garbage
    ("C!", 1),           # byte below 63
    ("C\x7f", 1),        # byte above 126
    ("A`", 1),           # padding bit set
    ("~??", 0),          # long form
])
def test_parse_graph6_errors_name_offset(text, offset):
    with pytest.raises(Graph6Error) as exc:
        parse_graph6(text)
    assert exc.value.offset == offset
    assert f"offset {offset}" in str(exc.value)


@st.composite
def graphs(draw, max_n=62):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    chosen = draw(st.sets(st.sampled_from(pairs), max_size=40)) if pairs else set()
    return Graph(n, frozenset(chosen))


@given(graphs())
def test_graph6_round_trip(g):
    text = encode_graph6(g)
    assert text == graph6_bits(g.n, g.edges)
    back = parse_graph6(text)
    assert back == g
    assert encode_graph6(back) == text


def test_read_graph6_file_skips_comments(tmp_path):
    p = tmp_path / "g.g6"
    p.write_text("# comment\nC~\n\n@\n")
    assert read_graph6_file(p) == [complete(4), empty(1)]


def test_generate_examples():
    c4 = generate("cycle", 4)
    assert c4.edges == {(0, 1), (1, 2), (2, 3), (0, 3)}
    kb = generate("complete_bipartite", 2, 3)
    assert kb.m == 6 and not kb.has_edge(0, 1) and not kb.has_edge(2, 3) and kb.has_edge(1, 4)
    k222 = generate("complete_multipartite", [2, 2, 2])
    assert (k222.n, k222.m) == (6, 12)
    assert generate("join", complete(1), cycle(4)).edges == {
        (0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (1, 4)}


def test_generate_errors():
    with pytest.raises(ValueError):
        generate("cycle", 2)
    with pytest.raises(ValueError):
        generate("complete_multipartite", [2, 0])
    with pytest.raises(ValueError):
        generate("petersen", 10)


@pytest.mark.parametrize("text,n,m", [
    ("cycle:5", 5, 5), ("kbip:2,3", 5, 6), ("kpartite:100,100", 200, 10000),
    ("join:k1,cycle:4", 5, 8), ("complete:5", 5, 10), ("path:4", 4, 3), ("empty:3", 3, 0),
    ("join:kbip:1,2,k1", 4, 5),
])
def test_parse_graph_spec(text, n, m):
    g = parse_graph_spec(text)
    assert (g.n, g.m) == (n, m)


@pytest.mark.parametrize("bad", ["cycle:2", "cycle:x", "blob:3", "join:cycle:4", "kbip:1,2,3"])
def test_parse_graph_spec_errors(bad):
    with pytest.raises(GraphSpecError):
        parse_graph_spec(bad)


def test_parse_graph_input_dispatch():
    assert parse_graph_input("cycle:4") == cycle(4)
    assert parse_graph_input("C~") == complete(4)
    assert parse_graph_input("C~", "graph6") == complete(4)


@pytest.mark.parametrize("g,nf,nc", [(complete(5), 4, 6), (cycle(4), 3, 1), (empty(3), 0, 0)])
def test_spanning_forest_examples(g, nf, nc):
    part = spanning_forest(g)
    assert (len(part.forest_edges), len(part.cotree_edges)) == (nf, nc)


def test_spanning_forest_is_dfs():
    part = spanning_forest(cycle(4))
    assert part.forest_edges == ((0, 1), (1, 2), (2, 3))
    assert part.cotree_edges == ((0, 3),)
    assert spanning_forest(complete(4)).forest_edges == ((0, 1), (1, 2), (2, 3))


def _acyclic(edges, n):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


@given(graphs(max_n=12))
def test_spanning_forest_properties(g):
    part = spanning_forest(g)
    assert set(part.forest_edges) | set(part.cotree_edges) == g.edges
    assert not set(part.forest_edges) & set(part.cotree_edges)
    assert _acyclic(part.forest_edges, g.n)
    c = len(components(g))
    assert len(part.forest_edges) == g.n - c
    assert len(part.cotree_edges) == g.m - g.n + c
    assert spanning_forest(g) == part


def test_components_examples():
    parts = components(disjoint_union(complete(3), complete(2)))
    assert [p.graph for p in parts] == [complete(3), complete(2)]
    assert parts[1].vertices == (3, 4)
    assert [p.graph for p in components(complete(4))] == [complete(4)]
    assert [p.graph for p in components(empty(2))] == [complete(1), complete(1)]


@given(graphs(max_n=12))
def test_components_partition(g):
    parts = components(g)
    assert sum(p.graph.n for p in parts) == g.n
    assert sum(p.graph.m for p in parts) == g.m
    assert sorted(v for p in parts for v in p.vertices) == list(range(g.n))


def test_contract_edge_merges_parallel_edges():
    # contracting a triangle edge leaves a single edge
    assert contract_edge(complete(3), 0, 1) == complete(2)
    assert contract_edge(cycle(4), 0, 1) == complete(3)


def test_all_graphs_counts():
    assert [len(all_graphs(n)) for n in range(1, 6)] == [1, 2, 4, 11, 34]
    assert [len(all_graphs(n, connected=True)) for n in range(1, 6)] == [1, 1, 2, 6, 21]


def test_all_graphs_pairwise_non_isomorphic():
    from itertools import permutations
    reps = all_graphs(4)
    seen = set()
    for g in reps:
        forms = {tuple(sorted(g.relabel(p).edges)) for p in permutations(range(4))}
        assert not forms & seen
        seen |= forms
    assert len(seen) == 2 ** 6  # every labeled graph on 4 vertices is covered
