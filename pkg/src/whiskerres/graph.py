"""Finite simple graphs and their exhaustive combinatorics.

Vertex subsets are handled internally as integer bitmasks over the vertex
order; the public functions return ``frozenset`` families sorted
lexicographically by that order.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    DuplicateEdge,
    DuplicateVertex,
    EnumerationCapExceeded,
    LoopEdge,
    NotAClique,
    NotAPartition,
    UnknownEndpoint,
)

DEFAULT_VERTEX_CAP = 16


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        adj = [0] * len(self.vertices)
        for e in self.edges:
            a, b = (self.index[v] for v in e)
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return tuple(adj)

    @cached_property
    def edge_masks(self) -> tuple[int, ...]:
        return tuple(self.mask(e) for e in self.edge_list)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.vertices)) - 1

    @cached_property
    def edge_list(self) -> tuple[tuple[str, str], ...]:
        """Edges as pairs ordered by the vertex order, sorted."""
        pairs = []
        for e in self.edges:
            a, b = sorted(e, key=self.index.__getitem__)
            pairs.append((a, b))
        pairs.sort(key=lambda p: (self.index[p[0]], self.index[p[1]]))
        return tuple(pairs)

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for v in labels:
            m |= 1 << self.index[v]
        return m

    def labels(self, mask: int) -> frozenset[str]:
        return frozenset(self.vertices[i] for i in iter_bits(mask))

    def ordered(self, labels: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(labels, key=self.index.__getitem__))

    def set_key(self, labels: Iterable[str]) -> tuple[int, ...]:
        return tuple(sorted(self.index[v] for v in labels))

    def sort_family(self, family: Iterable[Iterable[str]]) -> list[frozenset[str]]:
        return sorted((frozenset(s) for s in family), key=self.set_key)

    def has_edge(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.edges

    def neighbors(self, v: str) -> tuple[str, ...]:
        return tuple(self.vertices[i] for i in iter_bits(self.adjacency[self.index[v]]))

    def is_clique(self, labels: Iterable[str]) -> bool:
        m = self.mask(labels)
        return all(m & ~self.adjacency[i] & ~(1 << i) == 0 for i in iter_bits(m))

    def is_independent(self, labels: Iterable[str]) -> bool:
        m = self.mask(labels)
        return all(m & self.adjacency[i] == 0 for i in iter_bits(m))

    def induced(self, keep: Iterable[str]) -> Graph:
        keep = set(keep)
        verts = tuple(v for v in self.vertices if v in keep)
        edges = frozenset(e for e in self.edges if e <= keep)
        return Graph(verts, edges)

    def remove(self, drop: Iterable[str]) -> Graph:
        drop = set(drop)
        return self.induced(v for v in self.vertices if v not in drop)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(p) for p in self.edge_list]}


def validate_graph(vertices: Sequence[str], edges: Iterable[Sequence[str]]) -> Graph:
    """Build a canonical :class:`Graph`, rejecting loops, duplicates and unknown endpoints."""
    vertices = tuple(str(v) for v in vertices)
    seen = set()
    for v in vertices:
        if v in seen:
            raise DuplicateVertex(f"vertex {v!r} listed twice")
        seen.add(v)
    edge_set = set()
    for e in edges:
        e = tuple(e)
        if len(e) != 2:
            raise ValueError(f"edge {e!r} must have exactly two endpoints")
        u, v = (str(x) for x in e)
        if u == v:
            raise LoopEdge(f"loop at {u!r}")
        for x in (u, v):
            if x not in seen:
                raise UnknownEndpoint(f"edge endpoint {x!r} is not a vertex")
        key = frozenset((u, v))
        if key in edge_set:
            raise DuplicateEdge(f"edge {u!r}-{v!r} listed twice")
        edge_set.add(key)
    return Graph(vertices, frozenset(edge_set))


def graph_from_json(data: dict) -> Graph:
    return validate_graph(data["vertices"], data["edges"])


def complete_graph(labels: Sequence[str]) -> Graph:
    return validate_graph(labels, combinations(labels, 2))


def _check_cap(G: Graph, cap: int | None):
    cap = DEFAULT_VERTEX_CAP if cap is None else cap
    if G.n > cap:
        raise EnumerationCapExceeded(f"{G.n} vertices exceeds the enumeration cap {cap}")


def _bron_kerbosch(adj: Sequence[int], candidates: int) -> list[int]:
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(r)
            return
        px = p | x
        pivot = max(iter_bits(px), key=lambda u: popcount(p & adj[u]))
        for v in list(iter_bits(p & ~adj[pivot])):
            bit = 1 << v
            expand(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    expand(0, candidates, 0)
    return out


def maximal_clique_masks(G: Graph) -> list[int]:
    if G.n == 0:
        return [0]
    return _bron_kerbosch(G.adjacency, G.full_mask)


def maximal_independent_masks(G: Graph) -> list[int]:
    full = G.full_mask
    if G.n == 0:
        return [0]
    co_adj = [full & ~a & ~(1 << i) for i, a in enumerate(G.adjacency)]
    return _bron_kerbosch(co_adj, full)


def is_vertex_cover_mask(G: Graph, mask: int) -> bool:
    return all(e & mask for e in G.edge_masks)


def minimal_cover_masks(G: Graph, cap: int | None = None) -> list[int]:
    """Minimal vertex covers as bitmasks, each re-checked for minimality."""
    _check_cap(G, cap)
    full = G.full_mask
    covers = []
    for ind in maximal_independent_masks(G):
        c = full & ~ind
        if not is_vertex_cover_mask(G, c):
            raise AssertionError("complement of a maximal independent set is not a cover")
        for v in iter_bits(c):
            if is_vertex_cover_mask(G, c & ~(1 << v)):
                raise AssertionError("complement of a maximal independent set is not minimal")
        covers.append(c)
    covers.sort(key=lambda m: tuple(iter_bits(m)))
    return covers


@dataclass(frozen=True)
class CoverFamily:
    graph: Graph
    covers: tuple[frozenset[str], ...]

    def __len__(self):
        return len(self.covers)

    def __iter__(self):
        return iter(self.covers)

    def __contains__(self, item):
        return frozenset(item) in set(self.covers)


def minimal_vertex_covers(G: Graph, cap: int | None = None) -> CoverFamily:
    masks = minimal_cover_masks(G, cap)
    return CoverFamily(G, tuple(G.labels(m) for m in masks))


def maximal_independent_sets(G: Graph, cap: int | None = None) -> list[frozenset[str]]:
    _check_cap(G, cap)
    return G.sort_family(G.labels(m) for m in maximal_independent_masks(G))


def maximal_cliques(G: Graph, cap: int | None = None) -> list[frozenset[str]]:
    _check_cap(G, cap)
    return G.sort_family(G.labels(m) for m in maximal_clique_masks(G))


def matching_number(G: Graph) -> int:
    adj = G.adjacency

    def best(alive: int) -> int:
        # lowest vertex that still has a live neighbour
        for v in iter_bits(alive):
            if adj[v] & alive:
                break
        else:
            return 0
        rest = alive & ~(1 << v)
        result = best(rest)
        for u in iter_bits(adj[v] & rest):
            result = max(result, 1 + best(rest & ~(1 << u)))
        return result

    return best(G.full_mask)


def _induced_matching_conflicts(G: Graph) -> list[int]:
    edges = G.edge_masks
    conflicts = []
    for a, ea in enumerate(edges):
        closed = ea
        for v in iter_bits(ea):
            closed |= G.adjacency[v]
        m = 0
        for b, eb in enumerate(edges):
            if a != b and eb & closed:
                m |= 1 << b
        conflicts.append(m)
    return conflicts


def _max_independent_size(adj: Sequence[int], alive: int, memo: dict) -> int:
    if alive == 0:
        return 0
    if alive in memo:
        return memo[alive]
    v = max(iter_bits(alive), key=lambda u: popcount(adj[u] & alive))
    if adj[v] & alive == 0:
        # every remaining vertex is isolated
        result = popcount(alive)
    else:
        result = max(
            1 + _max_independent_size(adj, alive & ~adj[v] & ~(1 << v), memo),
            _max_independent_size(adj, alive & ~(1 << v), memo),
        )
    memo[alive] = result
    return result


def induced_matching_number(G: Graph) -> int:
    """Largest set of edges no two of which share a vertex or are joined by an edge."""
    if not G.edges:
        return 0
    conflicts = _induced_matching_conflicts(G)
    return _max_independent_size(conflicts, (1 << len(conflicts)) - 1, {})


@dataclass(frozen=True)
class CliquePartition:
    blocks: tuple[tuple[str, ...], ...]

    @property
    def r(self) -> int:
        return len(self.blocks)

    def block_of(self, v: str) -> int:
        for i, b in enumerate(self.blocks):
            if v in b:
                return i
        raise KeyError(v)

    @property
    def ordered_vertices(self) -> tuple[str, ...]:
        """x_{1,1} < x_{1,2} < ... < x_{r,|W_r|}: block order, then position in block."""
        return tuple(v for b in self.blocks for v in b)

    def to_json(self) -> dict:
        return {"blocks": [list(b) for b in self.blocks]}


def validate_partition(G: Graph, blocks: Iterable[Iterable[str]]) -> CliquePartition:
    blocks = tuple(tuple(str(v) for v in b) for b in blocks)
    seen: set[str] = set()
    for b in blocks:
        if not b:
            raise NotAPartition("empty block")
        for v in b:
            if v not in G.index:
                raise NotAPartition(f"{v!r} is not a vertex of the graph")
            if v in seen:
                raise NotAPartition(f"{v!r} occurs in two blocks")
            seen.add(v)
    missing = [v for v in G.vertices if v not in seen]
    if missing:
        raise NotAPartition(f"vertices {missing} are not covered by the blocks")
    for b in blocks:
        for u, v in combinations(b, 2):
            if not G.has_edge(u, v):
                raise NotAClique(f"block {list(b)} is not a clique: {u!r} and {v!r} are not adjacent")
    return CliquePartition(blocks)


def partition_from_json(G: Graph, data: dict) -> CliquePartition:
    return validate_partition(G, data["blocks"])
