from __future__ import annotations

from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from oracles import (
    brute_betti_quotient,
    brute_local_cohomology,
    brute_matching_numbers,
    brute_minimal_covers,
    independent_sets,
)
from whiskerres.constructions import clique_whisker, multi_clique_whisker, vwc_expand, whisker
from whiskerres.corpus import mandatory_members
from whiskerres.errors import FormulaMismatch
from whiskerres.graph import validate_graph
from whiskerres.invariants import (
    betti_formula,
    betti_transfer,
    characteristic_independence,
    cover_bijection,
    family_of,
    instance_graph,
    local_cohomology_checks,
    local_cohomology_formula,
    local_cohomology_from_betti,
    pd_formula,
    pd_reg_type,
    vwc_convention_report,
    whisker_f_vector_identity,
)
from whiskerres.simplicial import BettiTable, PoleSeries, independence_complex


@st.composite
def graphs(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    labels = [f"v{i}" for i in range(n)]
    pairs = list(combinations(labels, 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return validate_graph(labels, [p for p, c in zip(pairs, chosen) if c])


def fs(*xs):
    return frozenset(xs)


K2_VWC = validate_graph(["x:1", "y:1"], [("x:1", "y:1")])


# --- cover bijection --------------------------------------------------------


def test_cover_bijection_k1(k1):
    bij = cover_bijection(clique_whisker(k1, [["x"]]))
    assert bij.phi == {fs("x"): fs("x"), fs("w:1,1"): fs("y:1,1")}
    assert bij.psi == {fs("x"): fs("x"), fs("y:1,1"): fs("w:1,1")}


def test_cover_bijection_example(g_ex, pi_ex):
    bij = cover_bijection(clique_whisker(g_ex, pi_ex))
    assert len(bij.phi) == len(bij.psi) == 6
    assert all(bij.psi[d] == c for c, d in bij.phi.items())


def test_cover_bijection_needs_multiplicity_one(k1):
    with pytest.raises(ValueError):
        cover_bijection(multi_clique_whisker(k1, [["x"]], [2]))


def test_betti_transfer_example(g_ex, pi_ex):
    assert betti_transfer(clique_whisker(g_ex, pi_ex)).passed


# --- closed forms on worked examples ----------------------------------------


def test_betti_formula_example(g_ex, pi_ex):
    wg = clique_whisker(g_ex, pi_ex)
    assert betti_formula("cw", wg).entries == {(0, 4): 6, (1, 5): 6, (2, 6): 1}
    assert pd_formula("cw", wg) == 2


def test_betti_formula_multi_k1():
    wg = multi_clique_whisker(validate_graph(["x"], []), [["x"]], [2])
    assert betti_formula("multi", wg).entries == {(0, 1): 1, (0, 2): 1, (1, 3): 1}
    assert pd_formula("multi", wg) == 1


def test_example_invariants(g_ex, pi_ex):
    rep = pd_reg_type("cw", clique_whisker(g_ex, pi_ex))
    assert rep.passed, rep.table()
    assert (rep.pd, rep.reg, rep.im, rep.cm_type, rep.bight, rep.dim) == (2, 2, 2, 3, 4, 2)
    assert rep.pure
    assert rep.to_json()["passed"]
    assert "cm_type=|Min(G)|" in rep.table()


def test_failure_is_reported():
    rep = pd_reg_type("cw", clique_whisker(validate_graph(["x"], []), [["x"]]))
    rep.check("forced", 1, 2)
    assert not rep.passed
    with pytest.raises(FormulaMismatch):
        rep.raise_on_failure()


def test_family_mismatch_rejected(g_ex, pi_ex):
    with pytest.raises(TypeError):
        pd_reg_type("vwc", clique_whisker(g_ex, pi_ex))
    with pytest.raises(ValueError):
        pd_reg_type("other", clique_whisker(g_ex, pi_ex))


def test_family_of(g_ex, pi_ex):
    assert family_of(clique_whisker(g_ex, pi_ex)) == "cw"
    assert family_of(multi_clique_whisker(g_ex, pi_ex, [2, 1])) == "multi"
    assert family_of(vwc_expand(K2_VWC, [2])) == "vwc"


def test_k1_top_local_cohomology(k1):
    wg = clique_whisker(k1, [["x"]])
    assert local_cohomology_formula("cw", wg, 1) == PoleSeries({0: 1, 1: 2})
    assert local_cohomology_formula("cw", wg, 0) == PoleSeries()


def test_local_cohomology_example(g_ex, pi_ex):
    wg = clique_whisker(g_ex, pi_ex)
    assert local_cohomology_formula("cw", wg, 2) == PoleSeries({0: 1, 1: 6, 2: 6})
    assert all(c.passed for c in local_cohomology_checks("cw", wg))


def test_local_cohomology_from_betti_matches_formula(g_ex, pi_ex):
    wg = clique_whisker(g_ex, pi_ex)
    J = betti_formula("cw", wg)
    for j in range(4):
        assert local_cohomology_from_betti(J, 6, j) == local_cohomology_formula("cw", wg, j)


def test_negative_cohomological_degree(k1):
    with pytest.raises(ValueError):
        local_cohomology_formula("cw", clique_whisker(k1, [["x"]]), -1)


# --- vwc indexing -----------------------------------------------------------


def test_vwc_k2_two_conventions():
    vs = vwc_expand(K2_VWC, [2])
    assert betti_formula("vwc", vs, "degree").entries == {(0, 2): 2, (1, 4): 1}
    assert betti_formula("vwc", vs, "literal").entries == {(0, 2): 2, (1, 5): 1}
    rep = vwc_convention_report(vs)
    assert rep["matches"] == {"degree": True, "literal": False}
    assert rep["supported"] == "degree"


def test_vwc_local_cohomology_conventions():
    vs = vwc_expand(K2_VWC, [2])
    delta = independence_complex(vs.expanded)
    for j in range(4):
        oracle = PoleSeries(brute_local_cohomology(delta.facets, j))
        assert local_cohomology_formula("vwc", vs, j, "degree") == oracle
    # the literal reading puts the top class in the wrong cohomological degree
    assert any(local_cohomology_formula("vwc", vs, j, "literal")
               != PoleSeries(brute_local_cohomology(delta.facets, j)) for j in range(4))


def test_unknown_convention():
    with pytest.raises(ValueError):
        betti_formula("vwc", vwc_expand(K2_VWC, [1]), "other")


# --- oracles from first principles ------------------------------------------


@pytest.mark.parametrize("inst", [i for i in mandatory_members() if i.total_vertices <= 9], ids=lambda i: i.name)
def test_against_brute_force_betti(inst):
    built = inst.build()
    G = instance_graph(built)
    rep = pd_reg_type(inst.family, built)
    assert rep.passed, rep.table()
    brute = BettiTable(brute_betti_quotient(G), "S/I")
    assert rep.reg == brute.reg
    assert rep.im == brute_matching_numbers(G)[1] or inst.family == "vwc"
    assert rep.bight == max(len(c) for c in brute_minimal_covers(G))
    if inst.family == "cw":
        assert rep.cm_type == len(brute_minimal_covers(inst.base))
        assert rep.cm_type == brute.total(brute.pd)
    facets = [f for f in independent_sets(G) if not any(f < g for g in independent_sets(G))]
    for j in range(G.n + 1):
        assert local_cohomology_formula(inst.family, built, j) == PoleSeries(brute_local_cohomology(facets, j))


def test_characteristic_independence_example(g_ex):
    assert characteristic_independence(g_ex).passed


@pytest.mark.parametrize("n", [1, 2, 3])
def test_f_vector_of_whiskered_complete_graph(n):
    # every face of Delta(W(K_n)) picks at most one base vertex
    G = validate_graph([f"v{i}" for i in range(n)], list(combinations([f"v{i}" for i in range(n)], 2)))
    fc = whisker_f_vector_identity(G)
    assert fc.passed
    assert fc.oracle[1] == 2 * n


@settings(max_examples=40, deadline=None)
@given(graphs())
def test_whisker_f_vector_identity(G):
    fc = whisker_f_vector_identity(G)
    assert fc.passed
    ind = independent_sets(whisker(G).graph)
    assert fc.oracle == tuple(sum(1 for f in ind if len(f) == k) for k in range(len(fc.oracle)))


@settings(max_examples=25, deadline=None)
@given(graphs(max_n=4), st.randoms(use_true_random=False))
def test_random_clique_whiskered_formulas(G, rnd):
    from whiskerres.corpus import random_clique_partition

    blocks = random_clique_partition(rnd, G)
    wg = clique_whisker(G, blocks)
    rep = pd_reg_type("cw", wg)
    assert rep.passed, rep.table()
    assert betti_transfer(wg).passed
    assert cover_bijection(wg).phi
    # reg of the quotient by brute force equals pd of the cover ideal's closed form
    assert BettiTable(brute_betti_quotient(wg.graph), "S/I").reg == betti_formula("cw", wg).pd
