"""Minimal free resolutions of cover ideals of whiskered graphs, with exact oracles."""
from __future__ import annotations

from .constructions import (
    VwcStructure,
    WhiskeredGraph,
    cameron_walker_cm,
    check_condition_star,
    clique_whisker,
    cm_chordal_decompose,
    corona_clique,
    multi_clique_whisker,
    vwc_expand,
    whisker,
)
from .graph import (
    CliquePartition,
    Graph,
    induced_matching_number,
    matching_number,
    maximal_cliques,
    maximal_independent_sets,
    minimal_vertex_covers,
    validate_graph,
    validate_partition,
)
from .invariants import (
    betti_formula,
    cover_bijection,
    local_cohomology_formula,
    pd_reg_type,
)
from .resolution import (
    MonomialIdeal,
    MultigradedFreeComplex,
    betti_from_complex,
    build_const1,
    build_const2,
    build_const3,
    cover_ideal,
    verify_complex,
)
from .simplicial import (
    BettiTable,
    PoleSeries,
    SimplicialComplex,
    alexander_dual,
    hochster_betti,
    hochster_local_cohomology,
    independence_complex,
    reduced_homology_dims,
    vertex_decomposable,
)

__version__ = "0.1.0"
