from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_maximal_cliques, brute_maximal_independent
from whiskerres.constructions import (
    cameron_walker_cm,
    check_condition_star,
    clique_whisker,
    cm_chordal_decompose,
    corona_clique,
    is_chordal,
    label_equal,
    multi_clique_whisker,
    paired_whisker_graph,
    vwc_expand,
    whisker,
)
from whiskerres.corpus import generate_corpus, random_clique_partition, random_graph
from whiskerres.errors import (
    IsolatedVertex,
    NonPositiveMultiplicity,
    NotAClique,
    NotBipartite,
    NotChordal,
    NotCohenMacaulayChordal,
    NotConnected,
    NotVeryWellCoveredCM,
)
from whiskerres.graph import validate_graph, validate_partition
from whiskerres.simplicial import hochster_betti, independence_complex


def edge_set(pairs):
    return {frozenset(p) for p in pairs}


def test_whisker_k1(k1):
    wg = whisker(k1)
    assert wg.graph.n == 2 and wg.graph.edges == edge_set([("x", "w:1,1")])


def test_whisker_example(g_ex):
    W = whisker(g_ex).graph
    assert (W.n, len(W.edges)) == (8, 9)


def test_clique_whisker_example(g_ex, pi_ex):
    wg = clique_whisker(g_ex, pi_ex)
    new = wg.graph.edges - g_ex.edges
    assert new == edge_set([("x11", "w:1,1"), ("x12", "w:1,1"), ("x13", "w:1,1"), ("x21", "w:2,1")])
    assert wg.graph.n == 6


def test_clique_whisker_rejects_bad_partition(g_ex):
    with pytest.raises(NotAClique):
        clique_whisker(g_ex, [["x12", "x21"], ["x11"], ["x13"]])


def test_multi_star(k1):
    wg = multi_clique_whisker(k1, [["x"]], [2])
    assert wg.graph.edges == edge_set([("x", "w:1,1"), ("x", "w:1,2")])


def test_multi_example(g_ex, pi_ex):
    wg = multi_clique_whisker(g_ex, pi_ex, [2, 1])
    assert wg.graph.n == 7
    assert wg.whisker_map == (("w:1,1", "w:1,2"), ("w:2,1",))
    # every whisker sees exactly its block
    for block, ws in zip(pi_ex, wg.whisker_map):
        for w in ws:
            assert set(wg.graph.neighbors(w)) == set(block)
    assert wg.graph.remove(wg.whisker_vertices) == g_ex


def test_multi_rejects_nonpositive(k1):
    with pytest.raises(NonPositiveMultiplicity):
        multi_clique_whisker(k1, [["x"]], [0])


def test_whisker_graph_pendants_avoid_existing_labels():
    G = validate_graph(["y:1,1", "v"], [("y:1,1", "v")])
    W, pendant = paired_whisker_graph(G, validate_partition(G, [["y:1,1"], ["v"]]))
    assert W.n == 4 and len(set(pendant.values()) & set(G.vertices)) == 0


@pytest.mark.parametrize("n", range(1, 7))
def test_whisker_equals_singleton_clique_whisker(n):
    rng = random.Random(n)
    G = random_graph(rng, n)
    assert whisker(G).graph == clique_whisker(G, [[v] for v in G.vertices]).graph


@pytest.mark.parametrize("seed", range(20))
def test_all_ones_multi_is_clique_whisker(seed):
    rng = random.Random(seed)
    G = random_graph(rng, rng.randint(1, 6))
    blocks = random_clique_partition(rng, G)
    a = multi_clique_whisker(G, blocks, [1] * len(blocks))
    b = clique_whisker(G, blocks)
    assert a == b
    assert len(b.graph.edges) == len(G.edges) + G.n


# --- decomposed families ----------------------------------------------------


def test_corona_k1_1():
    wg = corona_clique(validate_graph(["x:1"], []), [1])
    assert wg.graph.edges == edge_set([("x:1", "y:1,1")])
    assert wg.base.vertices == ("x:1",) and wg.partition.blocks == (("x:1",),)


def test_corona_k2_is_p4():
    wg = corona_clique(validate_graph(["a", "b"], [("a", "b")]), [1, 1])
    assert wg.graph.edges == edge_set([("a", "b"), ("a", "y:1,1"), ("b", "y:2,1")])
    assert wg.partition.blocks == (("a",), ("b",))


def test_corona_k1_2_is_triangle():
    wg = corona_clique(validate_graph(["x:1"], []), [2])
    assert wg.graph.edges == edge_set([("x:1", "y:1,1"), ("x:1", "y:1,2"), ("y:1,1", "y:1,2")])
    assert wg.base.edges == edge_set([("x:1", "y:1,1")])
    assert wg.partition.blocks == (("x:1", "y:1,1"),)
    assert wg.whisker_vertices == ("y:1,2",)


def test_cameron_walker_single_edge():
    wg = cameron_walker_cm(validate_graph(["x:1", "y:1"], [("x:1", "y:1")]), ["x:1"])
    assert wg.graph.n == 5
    assert wg.graph.edges == edge_set([("x:1", "y:1"), ("x:1", "w:1"), ("y:1", "z:1"), ("y:1", "w:2"),
                                       ("z:1", "w:2")])
    assert wg.partition.blocks == (("x:1",), ("y:1", "z:1"))


def test_cameron_walker_path():
    B = validate_graph(["x:1", "y:1", "y:2"], [("x:1", "y:1"), ("x:1", "y:2")])
    wg = cameron_walker_cm(B, ["x:1"])
    assert wg.graph.n == 8
    sizes = sorted(len(b) for b in wg.partition.blocks)
    assert sizes == [1, 2, 2]


@pytest.mark.parametrize(
    "B, exc",
    [
        (validate_graph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")]), NotBipartite),
        (validate_graph(["a", "b", "c", "d"], [("a", "b"), ("c", "d")]), NotConnected),
    ],
)
def test_cameron_walker_rejects(B, exc):
    with pytest.raises(exc):
        cameron_walker_cm(B)


def test_chordal_k2():
    wg = cm_chordal_decompose(validate_graph(["a", "b"], [("a", "b")]))
    # a is the least free vertex of the only clique, so it becomes the whisker
    assert wg.whisker_vertices == ("a",)
    assert wg.base.vertices == ("b",) and wg.partition.blocks == (("b",),)


def test_chordal_c4_rejected(c4):
    with pytest.raises(NotChordal):
        cm_chordal_decompose(c4)


def test_chordal_isolated_vertex_rejected():
    with pytest.raises(IsolatedVertex):
        cm_chordal_decompose(validate_graph(["a", "b", "c"], [("a", "b")]))


def _free_cliques_partition(G) -> bool:
    cliques = brute_maximal_cliques(G)
    free = [c for c in cliques if any(sum(v in d for d in cliques) == 1 for v in c)]
    covered = [v for c in free for v in c]
    return len(covered) == len(set(covered)) == G.n


def test_triangle_with_two_pendants():
    G = validate_graph(["a", "b", "c", "p", "q"],
                       [("a", "b"), ("a", "c"), ("b", "c"), ("a", "p"), ("b", "q")])
    assert not _free_cliques_partition(G)
    with pytest.raises(NotCohenMacaulayChordal):
        cm_chordal_decompose(G)


def _is_cohen_macaulay(G) -> bool:
    delta = independence_complex(G)
    return hochster_betti(delta).pd == G.n - (delta.dim + 1)


@st.composite
def chordal_graphs(draw):
    # each new vertex attaches to a clique of the current graph, which keeps it chordal
    n = draw(st.integers(2, 7))
    labels = [f"v{i}" for i in range(n)]
    edges = []
    for k in range(1, n):
        prev = labels[:k]
        cliques = [c for c in brute_maximal_cliques(validate_graph(prev, edges))]
        target = sorted(draw(st.sampled_from(sorted(cliques, key=sorted))))
        keep = draw(st.lists(st.booleans(), min_size=len(target), max_size=len(target)))
        edges += [(labels[k], u) for u, kp in zip(target, keep) if kp]
    return validate_graph(labels, edges)


@settings(max_examples=60, deadline=None)
@given(chordal_graphs())
def test_chordal_decomposition_iff_cohen_macaulay(G):
    assert is_chordal(G)
    if any(not G.neighbors(v) for v in G.vertices):
        return
    cm = _is_cohen_macaulay(G)
    assert cm == _free_cliques_partition(G)
    if cm:
        wg = cm_chordal_decompose(G)
        assert label_equal(clique_whisker(wg.base, wg.partition, [[w] for w in wg.whisker_vertices]).graph, G)
    else:
        with pytest.raises(NotCohenMacaulayChordal):
            cm_chordal_decompose(G)


# --- very well-covered ------------------------------------------------------

H_K2 = validate_graph(["x:1", "y:1"], [("x:1", "y:1")])
H_P4 = validate_graph(["x:1", "x:2", "y:1", "y:2"], [("x:1", "y:1"), ("x:2", "y:2"), ("x:1", "y:2")])


def test_vwc_k2_2_is_k22():
    vs = vwc_expand(H_K2, [2])
    assert vs.expanded.edges == edge_set([(f"x:1,{a}", f"y:1,{b}") for a in (1, 2) for b in (1, 2)])
    assert vs.offsets == (0,) and vs.d == 2


def test_vwc_identity_expansion():
    vs = vwc_expand(H_P4, [1, 1])
    relabel = {v: v + ",1" for v in H_P4.vertices}
    assert vs.expanded.edges == {frozenset(relabel[u] for u in e) for e in H_P4.edges}


def test_vwc_p4_1_2():
    vs = vwc_expand(H_P4, [1, 2])
    G = vs.expanded
    assert G.n == 6
    expected = {("x:1,1", "y:1,1")}
    expected |= {(f"x:2,{a}", f"y:2,{b}") for a in (1, 2) for b in (1, 2)}
    expected |= {("x:1,1", f"y:2,{b}") for b in (1, 2)}
    assert G.edges == edge_set(expected)
    assert vs.offsets == (0, 1)


@pytest.mark.parametrize(
    "H",
    [
        # y_1 adjacent to x_2 breaks i <= j
        validate_graph(["x:1", "x:2", "y:1", "y:2"], [("x:1", "y:1"), ("x:2", "y:2"), ("x:2", "y:1")]),
        # missing matching edge
        validate_graph(["x:1", "x:2", "y:1", "y:2"], [("x:1", "y:1"), ("x:1", "y:2")]),
        # x_1 y_2, x_2 y_3 without x_1 y_3
        validate_graph(["x:1", "x:2", "x:3", "y:1", "y:2", "y:3"],
                       [("x:1", "y:1"), ("x:2", "y:2"), ("x:3", "y:3"), ("x:1", "y:2"), ("x:2", "y:3")]),
        # wrong labels
        validate_graph(["a", "b"], [("a", "b")]),
    ],
)
def test_condition_star_rejects(H):
    with pytest.raises(NotVeryWellCoveredCM):
        vwc_expand(H, [1] * (H.n // 2))


def test_condition_star_returns_d0():
    assert check_condition_star(H_P4) == 2


# --- corpus-wide invariants --------------------------------------------------


@pytest.fixture(scope="module")
def corpus():
    return generate_corpus()


def test_every_decomposition_validates(corpus):
    for inst in corpus:
        if inst.family == "vwc":
            continue
        wg = inst.build()
        validate_partition(wg.base, wg.partition.blocks)
        assert wg.graph.remove(wg.whisker_vertices) == wg.base
        for block, ws in zip(wg.partition.blocks, wg.whisker_map):
            for w in ws:
                assert set(wg.graph.neighbors(w)) == set(block)


def test_independent_sets_dominate(corpus):
    # F together with its neighbourhood is everything, for each maximal independent F
    for inst in corpus:
        if inst.family == "vwc":
            continue
        G = inst.build().graph
        for F in brute_maximal_independent(G):
            nbrs = {u for v in F for u in G.neighbors(v)}
            assert F | nbrs == set(G.vertices)


def test_vwc_corpus_bases_are_cohen_macaulay(corpus):
    for inst in corpus:
        if inst.family == "vwc":
            assert _is_cohen_macaulay(inst.base)
