"""Simplicial complexes stored by facets, with exact homology over Q, GF(2), GF(3).

This module supplies every brute-force oracle used to check the explicit
resolutions: Stanley-Reisner Betti tables (both Hochster forms), local
cohomology Hilbert series, f/h-vectors and vertex decomposability.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Iterable, Sequence

from .errors import NotAFace, OracleMismatch
from .graph import Graph, iter_bits, maximal_independent_masks, popcount
from .linalg import characteristic, parse_field, rank


def maximal_masks(masks: Iterable[int]) -> tuple[int, ...]:
    """Inclusion-maximal members of ``masks``, sorted, duplicates removed."""
    uniq = sorted(set(masks), key=lambda m: (-popcount(m), m))
    kept: list[int] = []
    for m in uniq:
        if not any(m & ~k == 0 for k in kept):
            kept.append(m)
    return tuple(sorted(kept))


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class SimplicialComplex:
    """Complex on the ordered ground set ``vertices``; facets are bitmasks over it.

    No facets is the void complex; the single facet ``0`` is the complex {∅}.
    """

    vertices: tuple[str, ...]
    facet_masks: tuple[int, ...]

    @classmethod
    def from_masks(cls, vertices: Sequence[str], masks: Iterable[int]) -> SimplicialComplex:
        return cls(tuple(vertices), maximal_masks(masks))

    @classmethod
    def from_facets(cls, vertices: Sequence[str], facets: Iterable[Iterable[str]]) -> SimplicialComplex:
        index = {v: i for i, v in enumerate(vertices)}
        masks = []
        for f in facets:
            m = 0
            for v in f:
                m |= 1 << index[v]
            masks.append(m)
        return cls.from_masks(vertices, masks)

    @classmethod
    def from_minimal_nonfaces(cls, vertices: Sequence[str], nonfaces: Iterable[Iterable[str]]) -> SimplicialComplex:
        """The Stanley-Reisner complex of the squarefree ideal generated by ``nonfaces``."""
        index = {v: i for i, v in enumerate(vertices)}
        bad = [sum(1 << index[v] for v in nf) for nf in nonfaces]
        n = len(vertices)
        faces = [m for m in range(1 << n) if not any(b & ~m == 0 for b in bad)]
        return cls.from_masks(vertices, faces)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for v in labels:
            m |= 1 << self.index[v]
        return m

    def labels(self, mask: int) -> frozenset[str]:
        return frozenset(self.vertices[i] for i in iter_bits(mask))

    @property
    def facets(self) -> list[frozenset[str]]:
        return [self.labels(m) for m in self.facet_masks]

    @property
    def is_void(self) -> bool:
        return not self.facet_masks

    @property
    def dim(self) -> int:
        """Dimension; -1 for {∅} and for the void complex."""
        if not self.facet_masks:
            return -1
        return max(popcount(m) for m in self.facet_masks) - 1

    @cached_property
    def face_masks(self) -> frozenset[int]:
        faces: set[int] = set()
        for f in self.facet_masks:
            if f in faces:
                continue
            faces.update(_submasks(f))
        return frozenset(faces)

    def is_face(self, labels: Iterable[str]) -> bool:
        return self.mask(labels) in self.face_masks

    @cached_property
    def minimal_nonface_masks(self) -> tuple[int, ...]:
        faces = self.face_masks
        out = []
        for m in range(1 << self.n):
            if m in faces:
                continue
            if all(m & ~(1 << v) in faces for v in iter_bits(m)):
                out.append(m)
        return tuple(sorted(out, key=lambda m: tuple(iter_bits(m))))

    def minimal_nonfaces(self) -> list[frozenset[str]]:
        return [self.labels(m) for m in self.minimal_nonface_masks]

    def faces_of_size(self, k: int) -> list[int]:
        return sorted(m for m in self.face_masks if popcount(m) == k)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertices == other.vertices and self.facet_masks == other.facet_masks

    def __hash__(self):
        return hash((self.vertices, self.facet_masks))


def independence_complex(G: Graph) -> SimplicialComplex:
    """Faces are the independent sets of ``G``; its Stanley-Reisner ideal is I(G)."""
    return SimplicialComplex.from_masks(G.vertices, maximal_independent_masks(G))


def alexander_dual(delta: SimplicialComplex) -> SimplicialComplex:
    """Faces F with complement not a face; facets are complements of minimal nonfaces."""
    full = (1 << delta.n) - 1
    return SimplicialComplex.from_masks(delta.vertices, [full & ~m for m in delta.minimal_nonface_masks])


def link(delta: SimplicialComplex, face: Iterable[str]) -> SimplicialComplex:
    f = delta.mask(face)
    if f not in delta.face_masks:
        raise NotAFace(f"{sorted(face)} is not a face")
    keep = [v for i, v in enumerate(delta.vertices) if not f >> i & 1]
    return _relabelled(delta, keep, [m & ~f for m in delta.facet_masks if m & f == f])


def deletion(delta: SimplicialComplex, vertex: str) -> SimplicialComplex:
    v = delta.index[vertex]
    keep = [u for u in delta.vertices if u != vertex]
    return _relabelled(delta, keep, [m & ~(1 << v) for m in delta.facet_masks])


def restriction(delta: SimplicialComplex, subset: Iterable[str]) -> SimplicialComplex:
    w = delta.mask(subset)
    keep = [v for i, v in enumerate(delta.vertices) if w >> i & 1]
    return _relabelled(delta, keep, [m & w for m in delta.facet_masks])


def join(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    if set(a.vertices) & set(b.vertices):
        raise ValueError("join needs disjoint ground sets")
    shift = a.n
    return SimplicialComplex.from_masks(
        a.vertices + b.vertices, [fa | (fb << shift) for fa in a.facet_masks for fb in b.facet_masks]
    )


def _relabelled(delta: SimplicialComplex, keep: Sequence[str], masks: Iterable[int]) -> SimplicialComplex:
    """Re-express masks over ``delta``'s ground set on the smaller ground set ``keep``."""
    positions = [delta.index[v] for v in keep]
    out = []
    for m in masks:
        nm = 0
        for new, old in enumerate(positions):
            if m >> old & 1:
                nm |= 1 << new
        out.append(nm)
    return SimplicialComplex.from_masks(keep, out)


# --- enumerative invariants -------------------------------------------------


def f_vector(delta: SimplicialComplex) -> tuple[int, ...]:
    """(f_{-1}, f_0, ..., f_{d-1}) with f_{-1} = 1."""
    d = delta.dim + 1
    counts = [0] * (d + 1)
    for m in delta.face_masks:
        counts[popcount(m)] += 1
    return tuple(counts)


def h_vector(delta: SimplicialComplex) -> tuple[int, ...]:
    f = f_vector(delta)
    d = len(f) - 1
    return tuple(
        sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1)) for k in range(d + 1)
    )


def f_h_vectors(delta: SimplicialComplex) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return f_vector(delta), h_vector(delta)


@dataclass(frozen=True)
class HilbertSeries:
    """h(t) / (1 - t)^d with ``numerator`` the h-polynomial coefficients."""

    numerator: tuple[int, ...]
    dim: int

    def coefficient(self, k: int) -> int:
        if self.dim == 0:
            return self.numerator[k] if k < len(self.numerator) else 0
        return sum(h * comb(k - i + self.dim - 1, self.dim - 1) for i, h in enumerate(self.numerator) if i <= k)


def hilbert_series_sr(delta: SimplicialComplex) -> HilbertSeries:
    h = h_vector(delta)
    return HilbertSeries(h, len(h) - 1)


def monomial_count(delta: SimplicialComplex, k: int) -> int:
    """Number of degree-k monomials of k[Delta], counted face by face."""
    if k == 0:
        return 1
    return sum(comb(k - 1, popcount(m) - 1) for m in delta.face_masks if m)


# --- homology ---------------------------------------------------------------

_HOMOLOGY_CACHE: dict[tuple, dict[int, int]] = {}


def _compress(facets: Sequence[int]) -> tuple[int, ...]:
    support = 0
    for f in facets:
        support |= f
    bits = list(iter_bits(support))
    out = []
    for f in facets:
        nm = 0
        for new, old in enumerate(bits):
            if f >> old & 1:
                nm |= 1 << new
        out.append(nm)
    return tuple(sorted(out))


def _strong_core(facets: tuple[int, ...]) -> tuple[int, ...]:
    """Delete dominated vertices (link is a cone) until none remain; homotopy type is kept."""
    changed = True
    while changed and len(facets) > 1:
        changed = False
        support = 0
        for f in facets:
            support |= f
        for v in iter_bits(support):
            bit = 1 << v
            common = -1
            for f in facets:
                if f & bit:
                    common &= f
            if common & ~bit:
                facets = maximal_masks(f & ~bit for f in facets)
                changed = True
                break
    return facets


def homology_from_masks(facets: Sequence[int], field="q", reduce: bool = True) -> dict[int, int]:
    """Nonzero reduced Betti numbers {i: dim H~_i} of the complex generated by ``facets``."""
    facets = maximal_masks(facets)
    if not facets:
        return {}
    if facets == (0,):
        return {-1: 1}
    p = characteristic(field)
    key = (_compress(facets), p, reduce)
    hit = _HOMOLOGY_CACHE.get(key)
    if hit is not None:
        return dict(hit)
    result = _homology(key[0], field, reduce)
    if len(_HOMOLOGY_CACHE) > 200_000:
        _HOMOLOGY_CACHE.clear()
    _HOMOLOGY_CACHE[key] = result
    return dict(result)


def _homology(facets: tuple[int, ...], field, reduce: bool) -> dict[int, int]:
    common = -1
    for f in facets:
        common &= f
    if common:
        return {}
    if reduce:
        facets = _strong_core(facets)
        if len(facets) == 1:
            return {}
    faces: set[int] = set()
    for f in facets:
        faces.update(_submasks(f))
    top = max(popcount(f) for f in facets)
    by_size: list[list[int]] = [[] for _ in range(top + 1)]
    for m in faces:
        by_size[popcount(m)].append(m)
    for lst in by_size:
        lst.sort()
    where = [{m: i for i, m in enumerate(lst)} for lst in by_size]
    # ranks[k] = rank of the boundary from faces of size k to faces of size k-1
    ranks = [0] * (top + 2)
    for k in range(1, top + 1):
        cols = []
        lower = where[k - 1]
        for m in by_size[k]:
            col = {}
            for pos, v in enumerate(iter_bits(m)):
                col[lower[m & ~(1 << v)]] = -1 if pos % 2 else 1
            cols.append(col)
        ranks[k] = rank(cols, field)
    out = {}
    for k in range(top + 1):
        h = len(by_size[k]) - ranks[k] - ranks[k + 1]
        if h:
            out[k - 1] = h
    return out


def reduced_homology_dims(delta: SimplicialComplex, field="q") -> dict[int, int]:
    """{i: dim H~_i(delta; field)} for the nonzero groups; the void complex has none."""
    return homology_from_masks(delta.facet_masks, parse_field(field))


# --- Betti tables -----------------------------------------------------------


class BettiTable:
    """Graded Betti numbers of a module; ``convention`` is "quotient" (S/I) or "ideal" (I).

    beta_{i,j}(I) = beta_{i+1,j}(S/I).
    """

    def __init__(self, entries=None, module: str = "", convention: str = "quotient"):
        if convention not in ("quotient", "ideal"):
            raise ValueError(f"unknown convention {convention!r}")
        self.entries: dict[tuple[int, int], int] = {k: v for k, v in (entries or {}).items() if v}
        self.module = module
        self.convention = convention

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries.get(ij, 0)

    def add(self, i: int, j: int, value: int = 1):
        if value:
            self.entries[(i, j)] = self.entries.get((i, j), 0) + value
            if not self.entries[(i, j)]:
                del self.entries[(i, j)]

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.convention == other.convention and self.entries == other.entries

    def __repr__(self):
        cells = ", ".join(f"({i},{j}):{b}" for (i, j), b in sorted(self.entries.items()))
        return f"BettiTable({self.module!r}, {self.convention}, {{{cells}}})"

    def to_ideal(self) -> BettiTable:
        if self.convention == "ideal":
            return self
        return BettiTable({(i - 1, j): b for (i, j), b in self.entries.items() if i > 0}, self.module, "ideal")

    def to_quotient(self) -> BettiTable:
        if self.convention == "quotient":
            return self
        entries = {(i + 1, j): b for (i, j), b in self.entries.items()}
        entries[(0, 0)] = 1
        return BettiTable(entries, self.module, "quotient")

    @property
    def pd(self) -> int:
        return max((i for i, _ in self.entries), default=-1)

    @property
    def reg(self) -> int:
        return max((j - i for i, j in self.entries), default=0)

    def total(self, i: int) -> int:
        return sum(b for (k, _), b in self.entries.items() if k == i)

    def totals(self) -> list[int]:
        return [self.total(i) for i in range(self.pd + 1)]

    def diff(self, other: BettiTable) -> list[tuple[int, int, int, int]]:
        """Cells (i, j, mine, theirs) where the two tables disagree."""
        keys = sorted(set(self.entries) | set(other.entries))
        return [(i, j, self[i, j], other[i, j]) for i, j in keys if self[i, j] != other[i, j]]

    def to_json(self) -> dict:
        return {
            "module": self.module,
            "convention": self.convention,
            "entries": [{"i": i, "j": j, "beta": b} for (i, j), b in sorted(self.entries.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> BettiTable:
        return cls({(e["i"], e["j"]): int(e["beta"]) for e in data["entries"]}, data.get("module", ""),
                   data.get("convention", "quotient"))


def betti_by_restriction(delta: SimplicialComplex, field="q") -> BettiTable:
    """beta_{i,j}(k[Delta]) = sum over |W| = j of dim H~_{j-i-1}(Delta_W)."""
    field = parse_field(field)
    table = BettiTable()
    nonfaces = delta.minimal_nonface_masks
    for w in range(1 << delta.n):
        if w:
            # a vertex of W in no minimal nonface inside W is a cone point of Delta_W
            used = 0
            for nf in nonfaces:
                if nf & ~w == 0:
                    used |= nf
            if w & ~used:
                continue
        size = popcount(w)
        for k, dim in homology_from_masks([f & w for f in delta.facet_masks], field).items():
            table.add(size - k - 1, size, dim)
    return table


def betti_by_dual_links(delta: SimplicialComplex, field="q") -> BettiTable:
    """beta_{i,j}(k[Delta]) = sum over F in the dual with |F| = n-j of dim H~_{i-2}(link F).

    The formula covers i >= 1; beta_{0,0} = 1 is added for the cyclic module.
    """
    field = parse_field(field)
    dual = alexander_dual(delta)
    table = BettiTable({(0, 0): 1})
    n = delta.n
    for f in dual.face_masks:
        lk = [g & ~f for g in dual.facet_masks if g & f == f]
        for k, dim in homology_from_masks(lk, field).items():
            table.add(k + 2, n - popcount(f), dim)
    return table


def hochster_betti(delta: SimplicialComplex, field="q", method: str = "both", module: str = "") -> BettiTable:
    """Betti table of k[Delta] (quotient convention) via Hochster's formula.

    ``method="both"`` computes the restriction form and the dual-link form and
    raises :class:`OracleMismatch` if they differ.
    """
    if delta.is_void:
        raise ValueError("the void complex has no Stanley-Reisner ring")
    if method == "restriction":
        table = betti_by_restriction(delta, field)
    elif method == "dual":
        table = betti_by_dual_links(delta, field)
    elif method == "both":
        table = betti_by_restriction(delta, field)
        other = betti_by_dual_links(delta, field)
        if table != other:
            raise OracleMismatch(f"restriction vs dual-link forms differ at {table.diff(other)}")
    else:
        raise ValueError(f"unknown method {method!r}")
    table.module = module
    return table


def edge_ideal_betti(G: Graph, field="q", method: str = "both") -> BettiTable:
    """Betti table of S/I(G) (quotient convention)."""
    return hochster_betti(independence_complex(G), field, method, module="S/I(G)")


def cover_ideal_betti(G: Graph, field="q", method: str = "both") -> BettiTable:
    """Betti table of J(G) (ideal convention), using k[Delta(G)^dual] = S/J(G)."""
    dual = alexander_dual(independence_complex(G))
    return hochster_betti(dual, field, method, module="J(G)").to_ideal()


# --- local cohomology -------------------------------------------------------


class PoleSeries:
    """Finite sum of c_k (t-1)^{-k}; note t^{-1}/(1-t^{-1}) = (t-1)^{-1}."""

    def __init__(self, coeffs=None):
        self.coeffs: dict[int, int] = {int(k): int(c) for k, c in (coeffs or {}).items() if c}
        if any(k < 0 for k in self.coeffs):
            raise ValueError("pole orders must be nonnegative")

    def add_term(self, k: int, c: int):
        if c:
            self.coeffs[k] = self.coeffs.get(k, 0) + c
            if not self.coeffs[k]:
                del self.coeffs[k]

    def __add__(self, other: PoleSeries) -> PoleSeries:
        out = PoleSeries(self.coeffs)
        for k, c in other.coeffs.items():
            out.add_term(k, c)
        return out

    def __eq__(self, other):
        if not isinstance(other, PoleSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "PoleSeries(0)"
        terms = " + ".join(f"{c}*(t-1)^-{k}" if k else str(c) for k, c in sorted(self.coeffs.items()))
        return f"PoleSeries({terms})"

    def evaluate(self, t) -> Fraction:
        t = Fraction(t)
        return sum((Fraction(c) / (t - 1) ** k for k, c in self.coeffs.items()), Fraction(0))

    def to_json(self) -> dict:
        return {"basis": "(t-1)^-k", "coeffs": {str(k): c for k, c in sorted(self.coeffs.items())}}

    @classmethod
    def from_json(cls, data: dict) -> PoleSeries:
        return cls({int(k): int(c) for k, c in data["coeffs"].items()})


def hochster_local_cohomology_all(delta: SimplicialComplex, field="q") -> dict[int, PoleSeries]:
    """{j: Hilbert series of H^j_m(k[Delta])} for every j with a nonzero series."""
    field = parse_field(field)
    out: dict[int, PoleSeries] = {}
    for f in delta.face_masks:
        k = popcount(f)
        lk = [g & ~f for g in delta.facet_masks if g & f == f]
        for i, dim in homology_from_masks(lk, field).items():
            j = i + k + 1
            out.setdefault(j, PoleSeries()).add_term(k, dim)
    return {j: s for j, s in out.items() if s}


def hochster_local_cohomology(delta: SimplicialComplex, j: int, field="q") -> PoleSeries:
    """c_k = sum over faces F with |F| = k of dim H~_{j-k-1}(link F)."""
    if j < 0:
        raise ValueError("cohomological degree must be nonnegative")
    return hochster_local_cohomology_all(delta, field).get(j, PoleSeries())


# --- vertex decomposability -------------------------------------------------


@dataclass
class VertexDecomposition:
    """Outcome of the shedding search.

    ``certificate`` is a nested tuple ``(vertex, link_cert, deletion_cert)``
    down to the leaves ``"simplex"``/``"void"``; ``shedding`` lists the
    vertices shed along the deletion chain.  On failure ``witness`` holds the
    facets of a subcomplex with no valid shedding vertex.
    """

    decomposable: bool
    certificate: object = None
    shedding: tuple[str, ...] = ()
    witness: list[frozenset[str]] = dc_field(default_factory=list)

    def __bool__(self):
        return self.decomposable


def _shed(facets: tuple[int, ...], v: int):
    bit = 1 << v
    deletion_ = maximal_masks(f & ~bit for f in facets)
    link_ = maximal_masks(f & ~bit for f in facets if f & bit)
    return link_, deletion_


def vertex_decomposable(delta: SimplicialComplex) -> VertexDecomposition:
    memo: dict[tuple[int, ...], object] = {}
    failures: list[tuple[int, ...]] = []

    def search(facets: tuple[int, ...]):
        if len(facets) <= 1:
            return "simplex" if facets else "void"
        if facets in memo:
            return memo[facets]
        memo[facets] = None
        facet_set = set(facets)
        support = 0
        for f in facets:
            support |= f
        result = None
        for v in sorted(iter_bits(support), reverse=True):
            link_, deletion_ = _shed(facets, v)
            if not all(g in facet_set for g in deletion_):
                continue
            lc = search(link_)
            if lc is None:
                continue
            dc = search(deletion_)
            if dc is None:
                continue
            result = (v, lc, dc)
            break
        if result is None:
            failures.append(facets)
        memo[facets] = result
        return result

    cert = search(delta.facet_masks)
    if cert is None:
        smallest = min(failures, key=lambda fs: (sum(popcount(f) for f in fs), fs))
        return VertexDecomposition(False, witness=[delta.labels(f) for f in smallest])

    def relabel(c):
        if isinstance(c, str):
            return c
        v, lc, dc = c
        return (delta.vertices[v], relabel(lc), relabel(dc))

    shedding = []
    c = cert
    while not isinstance(c, str):
        shedding.append(delta.vertices[c[0]])
        c = c[2]
    return VertexDecomposition(True, relabel(cert), tuple(shedding))


def check_vd_certificate(delta: SimplicialComplex, certificate) -> bool:
    """Independently replay a shedding certificate against the definition."""

    def replay(facets: tuple[int, ...], c) -> bool:
        if isinstance(c, str):
            return len(facets) <= 1
        label, lc, dc = c
        v = delta.index[label]
        if not any(f >> v & 1 for f in facets):
            return False
        link_, deletion_ = _shed(facets, v)
        if not set(deletion_) <= set(facets):
            return False
        return replay(link_, lc) and replay(deletion_, dc)

    return replay(delta.facet_masks, certificate)
