"""Seeded test corpus of clique-whiskered, multi-clique-whiskered and vwc instances."""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Sequence

from .constructions import (
    VwcStructure,
    WhiskeredGraph,
    cameron_walker_cm,
    check_condition_star,
    cm_chordal_decompose,
    corona_clique,
    multi_clique_whisker,
    vwc_expand,
    vwc_labels,
)
from .errors import CapExceeded, NotVeryWellCoveredCM
from .graph import DEFAULT_VERTEX_CAP, Graph, complete_graph, graph_from_json, validate_graph

MAX_EXTRA_WHISKERS = 6


@dataclass(frozen=True)
class CorpusSpec:
    seed: int = 1
    max_base: int = 6
    max_total: int = 12
    mult_cap: int = 3
    max_whiskers: int = 6
    n_cw: int = 100
    n_multi: int = 100
    n_vwc: int = 50

    def __post_init__(self):
        if self.max_total > DEFAULT_VERTEX_CAP:
            raise CapExceeded(f"max_total {self.max_total} exceeds the enumeration cap {DEFAULT_VERTEX_CAP}")
        if self.max_base < 1 or self.mult_cap < 1 or self.max_whiskers < 1:
            raise CapExceeded("caps must be positive")
        if 2 * self.max_base > self.max_total:
            raise CapExceeded("max_total must allow one whisker per base vertex")

    def to_json(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class Instance:
    """One corpus member.  For vwc, ``base`` is H and ``blocks`` is empty."""

    family: str
    name: str
    base: Graph
    blocks: tuple[tuple[str, ...], ...] = ()
    mult: tuple[int, ...] = ()
    whisker_labels: tuple[tuple[str, ...], ...] | None = None

    def build(self) -> WhiskeredGraph | VwcStructure:
        if self.family == "vwc":
            return vwc_expand(self.base, self.mult)
        mult = self.mult or (1,) * len(self.blocks)
        return multi_clique_whisker(self.base, self.blocks, mult, self.whisker_labels)

    @property
    def total_vertices(self) -> int:
        if self.family == "vwc":
            return 2 * sum(self.mult)
        return self.base.n + sum(self.mult or (1,) * len(self.blocks))

    def to_json(self) -> dict:
        out = {"family": self.family, "name": self.name, "graph": self.base.to_json(), "mult": list(self.mult)}
        if self.family != "vwc":
            out["partition"] = {"blocks": [list(b) for b in self.blocks]}
        if self.whisker_labels is not None:
            out["whisker_labels"] = [list(w) for w in self.whisker_labels]
        return out

    @classmethod
    def from_json(cls, data: dict) -> Instance:
        base = graph_from_json(data["graph"])
        blocks = tuple(tuple(b) for b in data.get("partition", {}).get("blocks", []))
        wl = data.get("whisker_labels")
        return cls(
            data["family"],
            data.get("name", ""),
            base,
            blocks,
            tuple(data.get("mult", [])),
            tuple(tuple(w) for w in wl) if wl is not None else None,
        )


def from_whiskered(family: str, name: str, wg: WhiskeredGraph) -> Instance:
    return Instance(family, name, wg.base, wg.partition.blocks, wg.multiplicities, wg.whisker_map)


# --- fixed members ----------------------------------------------------------


def example_graph() -> tuple[Graph, list[list[str]]]:
    """The running example: a triangle x11 x12 x13 with x21 joined to x11 and x13."""
    G = validate_graph(
        ["x11", "x12", "x13", "x21"],
        [("x11", "x12"), ("x11", "x13"), ("x11", "x21"), ("x12", "x13"), ("x13", "x21")],
    )
    return G, [["x11", "x12", "x13"], ["x21"]]


def _k(n: int, prefix: str = "v") -> Graph:
    return complete_graph([f"{prefix}{i}" for i in range(1, n + 1)])


def mandatory_members() -> list[Instance]:
    G, pi = example_graph()
    K1 = validate_graph(["x"], [])
    K2 = _k(2)
    out = [
        Instance("cw", "example", G, tuple(map(tuple, pi)), (1, 1)),
        Instance("cw", "K1", K1, (("x",),), (1,)),
        Instance("cw", "K2-singletons", K2, (("v1",), ("v2",)), (1, 1)),
        Instance("cw", "K2-one-block", K2, (("v1", "v2"),), (1,)),
        Instance("multi", "K1-2", K1, (("x",),), (2,)),
        Instance("multi", "example-2-1", G, tuple(map(tuple, pi)), (2, 1)),
    ]
    # decomposed families
    out.append(from_whiskered("cw", "corona-K1-1", corona_clique(validate_graph(["x:1"], []), [1])))
    out.append(from_whiskered("cw", "corona-K1-2", corona_clique(validate_graph(["x:1"], []), [2])))
    out.append(from_whiskered("cw", "corona-K2-1-1", corona_clique(_k(2, "x:"), [1, 1])))
    out.append(from_whiskered("cw", "corona-P3-2-1-2",
                              corona_clique(validate_graph(["x:1", "x:2", "x:3"], [("x:1", "x:2"), ("x:2", "x:3")]),
                                            [2, 1, 2])))
    edge = validate_graph(["x:1", "y:1"], [("x:1", "y:1")])
    out.append(from_whiskered("cw", "cameron-walker-edge", cameron_walker_cm(edge, ["x:1"])))
    star = validate_graph(["x:1", "y:1", "y:2"], [("x:1", "y:1"), ("x:1", "y:2")])
    out.append(from_whiskered("cw", "cameron-walker-star", cameron_walker_cm(star, ["x:1"])))
    out.append(from_whiskered("cw", "chordal-K2", cm_chordal_decompose(_k(2))))
    p4 = validate_graph(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")])
    out.append(from_whiskered("cw", "chordal-P4", cm_chordal_decompose(p4)))
    two_triangles = validate_graph(
        ["a", "b", "c", "d", "e", "f"],
        [("a", "b"), ("a", "c"), ("b", "c"), ("d", "e"), ("d", "f"), ("e", "f"), ("c", "d")],
    )
    out.append(from_whiskered("cw", "chordal-two-triangles", cm_chordal_decompose(two_triangles)))
    H = validate_graph(["x:1", "y:1"], [("x:1", "y:1")])
    out.append(Instance("vwc", "K2-1", H, (), (1,)))
    out.append(Instance("vwc", "K2-2", H, (), (2,)))
    H2 = validate_graph(["x:1", "x:2", "y:1", "y:2"], [("x:1", "y:1"), ("x:2", "y:2"), ("x:1", "y:2")])
    out.append(Instance("vwc", "P4-1-2", H2, (), (1, 2)))
    return out


# --- random members ---------------------------------------------------------


def random_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    labels = [f"v{i}" for i in range(1, n + 1)]
    p = rng.uniform(0.2, 0.8) if p is None else p
    return validate_graph(labels, [e for e in combinations(labels, 2) if rng.random() < p])


def random_clique_partition(rng: random.Random, G: Graph) -> tuple[tuple[str, ...], ...]:
    order = list(G.vertices)
    rng.shuffle(order)
    blocks: list[list[str]] = []
    for v in order:
        options = [b for b in blocks if all(G.has_edge(u, v) for u in b)]
        if options and rng.random() < 0.7:
            rng.choice(options).append(v)
        else:
            blocks.append([v])
    # blocks listed in vertex order so the sign order is reproducible
    for b in blocks:
        b.sort(key=G.index.__getitem__)
    blocks.sort(key=lambda b: G.index[b[0]])
    return tuple(tuple(b) for b in blocks)


def random_multiplicities(rng: random.Random, r: int, room: int, cap: int) -> tuple[int, ...]:
    mult = [1] * r
    extra = rng.randint(1, max(1, min(MAX_EXTRA_WHISKERS, room)))
    for _ in range(extra):
        slots = [i for i in range(r) if mult[i] < cap]
        if not slots or sum(mult) - r >= min(MAX_EXTRA_WHISKERS, room):
            break
        mult[rng.choice(slots)] += 1
    return tuple(mult)


def random_vwc_base(rng: random.Random, d0: int) -> Graph | None:
    """Random labelled H satisfying the vwc labelling and Cohen-Macaulay checks, or None."""
    xs, ys = vwc_labels(d0)
    edges = {(xs[i], ys[i]) for i in range(d0)}
    p = rng.uniform(0.2, 0.7)
    for i, j in combinations(range(d0), 2):
        if rng.random() < p:
            edges.add((xs[i], ys[j]))
    # close x_i y_j, x_j y_k -> x_i y_k
    changed = True
    while changed:
        changed = False
        for i, j, k in [(i, j, k) for i in range(d0) for j in range(d0) for k in range(d0)]:
            if (xs[i], ys[j]) in edges and (xs[j], ys[k]) in edges and (xs[i], ys[k]) not in edges:
                edges.add((xs[i], ys[k]))
                changed = True
    for i, j in combinations(range(d0), 2):
        if (xs[i], ys[j]) in edges and rng.random() < 0.3:
            edges.add((xs[i], xs[j]))
    H = validate_graph(xs + ys, sorted(edges))
    try:
        check_condition_star(H)
    except NotVeryWellCoveredCM:
        return None
    return H


def generate_corpus(spec: CorpusSpec | None = None) -> list[Instance]:
    """Deterministic under ``spec.seed``.

    Mandatory members come first; ``n_cw``, ``n_multi`` and ``n_vwc`` count the
    random members added after them.
    """
    spec = spec or CorpusSpec()
    rng = random.Random(spec.seed)
    out = mandatory_members()
    seen = {(i.family, i.base, i.blocks, i.mult) for i in out}

    def take(inst: Instance) -> bool:
        key = (inst.family, inst.base, inst.blocks, inst.mult)
        if key in seen or inst.total_vertices > spec.max_total:
            return False
        seen.add(key)
        out.append(inst)
        return True

    k = 0
    while k < spec.n_cw:
        n = rng.randint(1, spec.max_base)
        G = random_graph(rng, n)
        blocks = random_clique_partition(rng, G)
        if take(Instance("cw", f"cw-{k}", G, blocks, (1,) * len(blocks))):
            k += 1
    k = 0
    while k < spec.n_multi:
        n = rng.randint(1, spec.max_base)
        G = random_graph(rng, n)
        blocks = random_clique_partition(rng, G)
        # extra whiskers beyond one per block, within both vertex and whisker budgets
        room = min(spec.max_total - n, spec.max_whiskers) - len(blocks)
        if room < 1:
            continue
        mult = random_multiplicities(rng, len(blocks), room, spec.mult_cap)
        if take(Instance("multi", f"multi-{k}", G, blocks, mult)):
            k += 1
    k = 0
    attempts = 0
    while k < spec.n_vwc:
        attempts += 1
        if attempts > 100000:
            raise CapExceeded("could not generate enough vwc instances")
        d0 = rng.randint(1, min(4, spec.max_total // 2))
        H = random_vwc_base(rng, d0)
        if H is None:
            continue
        room = spec.max_total // 2 - d0
        mult = [1] * d0
        for _ in range(rng.randint(0, room)):
            slots = [i for i in range(d0) if mult[i] < spec.mult_cap]
            if slots:
                mult[rng.choice(slots)] += 1
        if take(Instance("vwc", f"vwc-{k}", H, (), tuple(mult))):
            k += 1
    return out


def corpus_to_json(instances: Sequence[Instance], spec: CorpusSpec | None = None) -> dict:
    out = {"instances": [i.to_json() for i in instances]}
    if spec is not None:
        out["spec"] = spec.to_json()
    return out


def corpus_from_json(data: dict) -> list[Instance]:
    return [Instance.from_json(d) for d in data["instances"]]
