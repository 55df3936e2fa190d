"""Graph families built from a base graph and a clique partition.

Label conventions: the k-th whisker of block i is ``w:i,k``; corona cliques
use ``y:i,j``; Cameron-Walker pendants use ``w:i`` (leaf on x_i), ``z:j`` and
``w:n+j``; very well-covered bases are labelled ``x:i`` / ``y:i`` and expand to
``x:i,k`` / ``y:i,k``.  All indices are 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    IsolatedVertex,
    NonPositiveMultiplicity,
    NotBipartite,
    NotChordal,
    NotCohenMacaulayChordal,
    NotConnected,
    NotVeryWellCoveredCM,
)
from .graph import (
    CliquePartition,
    Graph,
    maximal_clique_masks,
    minimal_cover_masks,
    popcount,
    validate_graph,
    validate_partition,
)


def whisker_label(i: int, k: int = 1) -> str:
    return f"w:{i},{k}"


@dataclass(frozen=True)
class WhiskeredGraph:
    """A graph of the form G^pi[n_1..n_r] together with its decomposition."""

    graph: Graph
    base: Graph
    partition: CliquePartition
    whisker_map: tuple[tuple[str, ...], ...]

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(len(ws) for ws in self.whisker_map)

    @property
    def whisker_vertices(self) -> tuple[str, ...]:
        return tuple(w for ws in self.whisker_map for w in ws)

    def block_of_whisker(self, w: str) -> int:
        for i, ws in enumerate(self.whisker_map):
            if w in ws:
                return i
        raise KeyError(w)


def label_equal(a: Graph, b: Graph) -> bool:
    """Same vertex labels and same edges, ignoring vertex order."""
    return set(a.vertices) == set(b.vertices) and a.edges == b.edges


def multi_clique_whisker(
    G: Graph,
    partition: CliquePartition | Sequence[Sequence[str]],
    mult: Sequence[int],
    whisker_labels: Sequence[Sequence[str]] | None = None,
) -> WhiskeredGraph:
    if not isinstance(partition, CliquePartition):
        partition = validate_partition(G, partition)
    else:
        partition = validate_partition(G, partition.blocks)
    mult = tuple(int(m) for m in mult)
    if len(mult) != partition.r:
        raise ValueError(f"expected {partition.r} multiplicities, got {len(mult)}")
    for m in mult:
        if m < 1:
            raise NonPositiveMultiplicity(f"multiplicity {m} is not positive")
    if whisker_labels is None:
        whisker_labels = [[whisker_label(i + 1, k + 1) for k in range(m)] for i, m in enumerate(mult)]
    whisker_map = tuple(tuple(ws) for ws in whisker_labels)
    if tuple(len(ws) for ws in whisker_map) != mult:
        raise ValueError("whisker labels do not match the multiplicities")
    vertices = list(G.vertices)
    edges = [tuple(e) for e in G.edge_list]
    for block, ws in zip(partition.blocks, whisker_map):
        for w in ws:
            vertices.append(w)
            edges.extend((x, w) for x in block)
    graph = validate_graph(vertices, edges)
    return WhiskeredGraph(graph, G, partition, whisker_map)


def clique_whisker(G, partition, whisker_labels=None) -> WhiskeredGraph:
    """G^pi: one new vertex per block, joined to every vertex of the block."""
    if not isinstance(partition, CliquePartition):
        partition = validate_partition(G, partition)
    if whisker_labels is not None:
        whisker_labels = [[w] if isinstance(w, str) else list(w) for w in whisker_labels]
    return multi_clique_whisker(G, partition, [1] * partition.r, whisker_labels)


def whisker(G: Graph) -> WhiskeredGraph:
    """The whisker graph W(G): a pendant vertex on every vertex."""
    return clique_whisker(G, [[v] for v in G.vertices])


def paired_whisker_graph(G: Graph, partition: CliquePartition) -> tuple[Graph, dict[str, str]]:
    """W(G) with the pendant of x_{i,j} (j-th vertex of block i) labelled ``y:i,j``.

    Returns the graph and the map x_{i,j} -> y_{i,j}.  If G already uses
    ``y:`` labels (clique coronas do) the prefix gains primes until it is free.
    """
    prefix = "y"
    while any(v.startswith(prefix + ":") for v in G.vertices):
        prefix += "'"
    pendant = {}
    for i, block in enumerate(partition.blocks, start=1):
        for j, x in enumerate(block, start=1):
            pendant[x] = f"{prefix}:{i},{j}"
    vertices = list(G.vertices) + [pendant[x] for x in partition.ordered_vertices]
    edges = [tuple(e) for e in G.edge_list] + [(x, pendant[x]) for x in partition.ordered_vertices]
    return validate_graph(vertices, edges), pendant


def _check_decomposition(wg: WhiskeredGraph, built: Graph) -> WhiskeredGraph:
    if not label_equal(wg.graph, built):
        raise AssertionError("decomposition does not reproduce the constructed graph")
    return WhiskeredGraph(built, wg.base, wg.partition, wg.whisker_map)


def corona_clique(G: Graph, sizes: Sequence[int]) -> WhiskeredGraph:
    """Clique corona G o H with H_i = K_{m_i}, returned with its clique-whisker decomposition."""
    sizes = tuple(int(m) for m in sizes)
    if len(sizes) != G.n:
        raise ValueError(f"expected {G.n} clique sizes, got {len(sizes)}")
    for m in sizes:
        if m < 1:
            raise NonPositiveMultiplicity(f"clique size {m} is not positive")
    vertices = list(G.vertices)
    edges = [tuple(e) for e in G.edge_list]
    cliques = []
    for i, (x, m) in enumerate(zip(G.vertices, sizes), start=1):
        ys = [f"y:{i},{j}" for j in range(1, m + 1)]
        cliques.append(ys)
        vertices.extend(ys)
        edges.extend(combinations(ys, 2))
        edges.extend((x, y) for y in ys)
    built = validate_graph(vertices, edges)

    last = [ys[-1] for ys in cliques]
    base = built.remove(last)
    blocks = [[x] + ys[:-1] for x, ys in zip(G.vertices, cliques)]
    wg = clique_whisker(base, blocks, whisker_labels=last)
    return _check_decomposition(wg, built)


def _two_colouring(B: Graph) -> dict[str, int]:
    colour: dict[str, int] = {}
    for start in B.vertices:
        if start in colour:
            continue
        if colour:
            raise NotConnected("bipartite part must be connected")
        colour[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for u in B.neighbors(v):
                if u not in colour:
                    colour[u] = 1 - colour[v]
                    stack.append(u)
                elif colour[u] == colour[v]:
                    raise NotBipartite(f"odd cycle through {u!r} and {v!r}")
    return colour


def cameron_walker_cm(B: Graph, left: Iterable[str] | None = None) -> WhiskeredGraph:
    """Cohen-Macaulay Cameron-Walker graph over the connected bipartite graph ``B``.

    ``left`` names the part {x_1..x_n} that receives leaves; by default the
    colour class of the first vertex.  Each y_j receives a pendant triangle.
    """
    if B.n < 2:
        raise NotBipartite("bipartite part needs both parts non-empty")
    colour = _two_colouring(B)
    if left is None:
        xs = [v for v in B.vertices if colour[v] == colour[B.vertices[0]]]
    else:
        xs = [v for v in B.vertices if v in set(left)]
        if any(colour[v] != colour[xs[0]] for v in xs) or len(xs) != sum(
            1 for v in B.vertices if colour[v] == colour[xs[0]]
        ):
            raise NotBipartite("given part is not a colour class of B")
    ys = [v for v in B.vertices if v not in set(xs)]
    if not xs or not ys:
        raise NotBipartite("bipartite part needs both parts non-empty")
    n = len(xs)
    leaves = [f"w:{i}" for i in range(1, n + 1)]
    zs = [f"z:{j}" for j in range(1, len(ys) + 1)]
    tips = [f"w:{n + j}" for j in range(1, len(ys) + 1)]

    vertices = list(B.vertices) + leaves + zs + tips
    edges = [tuple(e) for e in B.edge_list]
    edges += list(zip(xs, leaves))
    for y, z, t in zip(ys, zs, tips):
        edges += [(y, z), (y, t), (z, t)]
    built = validate_graph(vertices, edges)

    base = built.induced(list(B.vertices) + zs)
    blocks = [[x] for x in xs] + [[y, z] for y, z in zip(ys, zs)]
    wg = clique_whisker(base, blocks, whisker_labels=leaves + tips)
    return _check_decomposition(wg, built)


def perfect_elimination_order(G: Graph) -> list[str] | None:
    """A perfect elimination ordering via maximum cardinality search, or None."""
    adj = G.adjacency
    numbered = 0
    visit = []
    weight = [0] * G.n
    for _ in range(G.n):
        v = max((i for i in range(G.n) if not numbered >> i & 1), key=lambda i: (weight[i], -i))
        visit.append(v)
        numbered |= 1 << v
        for u in range(G.n):
            if adj[v] >> u & 1:
                weight[u] += 1
    order = visit[::-1]
    position = {v: k for k, v in enumerate(order)}
    for v in order:
        later = [u for u in range(G.n) if adj[v] >> u & 1 and position[u] > position[v]]
        for a, b in combinations(later, 2):
            if not adj[a] >> b & 1:
                return None
    return [G.vertices[v] for v in order]


def is_chordal(G: Graph) -> bool:
    return perfect_elimination_order(G) is not None


def cm_chordal_decompose(G: Graph) -> WhiskeredGraph:
    """Write a Cohen-Macaulay chordal graph as (G - {w_1..w_m})^pi.

    The maximal cliques admitting a free vertex must partition V(G); in each
    such clique the free vertex earliest in the vertex order is the whisker.
    """
    if perfect_elimination_order(G) is None:
        raise NotChordal("graph has a chordless cycle")
    for v in G.vertices:
        if not G.neighbors(v):
            raise IsolatedVertex(f"isolated vertex {v!r} leaves an empty block")
    cliques = maximal_clique_masks(G)
    membership = [sum(1 for c in cliques if c >> v & 1) for v in range(G.n)]
    with_free = []
    for c in cliques:
        free = [v for v in range(G.n) if c >> v & 1 and membership[v] == 1]
        if free:
            # lexicographically least label among the free vertices
            with_free.append((c, min(free, key=G.vertices.__getitem__)))
    union = 0
    for c, _ in with_free:
        if union & c:
            raise NotCohenMacaulayChordal("cliques with a free vertex overlap")
        union |= c
    if union != G.full_mask:
        raise NotCohenMacaulayChordal("cliques with a free vertex do not cover every vertex")
    with_free.sort(key=lambda cw: min(v for v in range(G.n) if cw[0] >> v & 1 and v != cw[1]))
    free_labels = [G.vertices[w] for _, w in with_free]
    blocks = [[G.vertices[v] for v in range(G.n) if c >> v & 1 and v != w] for c, w in with_free]
    base = G.remove(free_labels)
    wg = clique_whisker(base, blocks, whisker_labels=free_labels)
    return _check_decomposition(wg, G)


@dataclass(frozen=True)
class VwcStructure:
    base: Graph
    multiplicities: tuple[int, ...]
    expanded: Graph

    @property
    def d0(self) -> int:
        return len(self.multiplicities)

    @property
    def d(self) -> int:
        return sum(self.multiplicities)

    @property
    def offsets(self) -> tuple[int, ...]:
        """I_i = n_1 + ... + n_{i-1}."""
        out, acc = [], 0
        for m in self.multiplicities:
            out.append(acc)
            acc += m
        return tuple(out)

    def block(self, label: str) -> tuple[str, ...]:
        """Expanded vertices replacing the base vertex ``x:i`` or ``y:i``."""
        side, i = label.split(":")
        return tuple(f"{side}:{i},{k}" for k in range(1, self.multiplicities[int(i) - 1] + 1))


def vwc_labels(d0: int) -> tuple[list[str], list[str]]:
    return [f"x:{i}" for i in range(1, d0 + 1)], [f"y:{i}" for i in range(1, d0 + 1)]


def check_condition_star(H: Graph) -> int:
    """Validate that ``H`` is a Cohen-Macaulay very well-covered graph labelled x:i, y:i.

    Returns d0.  Checked: the matching x_i y_i, edges x_i y_j only for i <= j,
    Y independent, transitivity of the x-y edges (the Cohen-Macaulay part) and
    all minimal covers of size d0.
    """
    if H.n == 0 or H.n % 2:
        raise NotVeryWellCoveredCM("needs an even, positive number of vertices")
    d0 = H.n // 2
    xs, ys = vwc_labels(d0)
    if set(H.vertices) != set(xs) | set(ys):
        raise NotVeryWellCoveredCM(f"vertices must be labelled x:1..x:{d0}, y:1..y:{d0}")
    for i in range(d0):
        if not H.has_edge(xs[i], ys[i]):
            raise NotVeryWellCoveredCM(f"missing matching edge {xs[i]}-{ys[i]}")
    for i in range(d0):
        for j in range(d0):
            if H.has_edge(xs[i], ys[j]) and i > j:
                raise NotVeryWellCoveredCM(f"edge {xs[i]}-{ys[j]} violates i <= j")
    if not H.is_independent(ys):
        raise NotVeryWellCoveredCM("Y is not independent")
    # x_i y_j and x_j y_k force x_i y_k; without it H is not Cohen-Macaulay
    for i in range(d0):
        for j in range(d0):
            if i == j or not H.has_edge(xs[i], ys[j]):
                continue
            for k in range(d0):
                if H.has_edge(xs[j], ys[k]) and not H.has_edge(xs[i], ys[k]):
                    raise NotVeryWellCoveredCM(
                        f"edges {xs[i]}-{ys[j]} and {xs[j]}-{ys[k]} without {xs[i]}-{ys[k]}"
                    )
    xmask = H.mask(xs)
    covers = minimal_cover_masks(H)
    if xmask not in covers:
        raise NotVeryWellCoveredCM("X is not a minimal vertex cover")
    if any(popcount(c) != d0 for c in covers):
        raise NotVeryWellCoveredCM("not very well-covered: minimal covers of different sizes")
    if not _cover_ideal_linear(H):
        raise NotVeryWellCoveredCM("S/I(H) is not Cohen-Macaulay: J(H) has a nonlinear syzygy")
    return d0


@lru_cache(maxsize=512)
def _cover_ideal_linear(H: Graph) -> bool:
    # Eagon-Reiner: S/I(H) is Cohen-Macaulay iff J(H) has a linear resolution
    from .simplicial import cover_ideal_betti

    table = cover_ideal_betti(H)
    return len({j - i for i, j in table.entries}) <= 1


def vwc_expand(H: Graph, mult: Sequence[int]) -> VwcStructure:
    """H(n_1..n_d0): replace each matching edge x_i y_i by K_{n_i,n_i}."""
    d0 = check_condition_star(H)
    mult = tuple(int(m) for m in mult)
    if len(mult) != d0:
        raise ValueError(f"expected {d0} multiplicities, got {len(mult)}")
    for m in mult:
        if m < 1:
            raise NonPositiveMultiplicity(f"multiplicity {m} is not positive")

    def copies(label):
        side, i = label.split(":")
        return [f"{side}:{i},{k}" for k in range(1, mult[int(i) - 1] + 1)]

    xs, ys = vwc_labels(d0)
    vertices = [v for lab in xs + ys for v in copies(lab)]
    edges = []
    for a, b in H.edge_list:
        edges.extend((u, v) for u in copies(a) for v in copies(b))
    return VwcStructure(H, mult, validate_graph(vertices, edges))
