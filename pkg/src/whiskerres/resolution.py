"""Explicit multigraded free resolutions of cover ideals and their verification.

Three constructions are materialized as :class:`MultigradedFreeComplex`:
clique-whiskered graphs (``cw``), multi-clique-whiskered graphs (``multi``)
and very well-covered graphs H(n_1..n_d0) (``vwc``).  :func:`verify_complex`
checks any such complex against a squarefree monomial ideal without using
the construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace
from itertools import combinations
from typing import Iterable, Sequence

from .constructions import (
    WhiskeredGraph,
    check_condition_star,
    clique_whisker,
    multi_clique_whisker,
    vwc_expand,
    VwcStructure,
)
from .errors import BlockViolation, DanglingSymbol, NotMinimal
from .graph import Graph, CliquePartition, iter_bits, minimal_vertex_covers, minimal_cover_masks, popcount
from .linalg import parse_field, rank
from .simplicial import BettiTable, SimplicialComplex, hochster_betti


@dataclass(frozen=True)
class BasisSymbol:
    """f(C; sigma) with its 0/1 multidegree over the ambient variables."""

    cover: tuple[str, ...]
    sigma: tuple[str, ...]
    multidegree: tuple[int, ...]

    @property
    def level(self) -> int:
        return len(self.sigma)

    @property
    def degree(self) -> int:
        return sum(self.multidegree)


@dataclass(frozen=True)
class Entry:
    """Coefficient ``sign * x^monomial`` of basis element ``row`` in d(basis element ``col``)."""

    row: int
    col: int
    sign: int
    monomial: tuple[int, ...]


@dataclass
class MultigradedFreeComplex:
    variables: tuple[str, ...]
    levels: list[list[BasisSymbol]]
    differentials: dict[int, list[Entry]]
    augmentation: list[tuple[int, ...]]
    construction: str = ""

    @property
    def length(self) -> int:
        return max((i for i, lvl in enumerate(self.levels) if lvl), default=-1)

    def ranks(self) -> list[int]:
        return [len(lvl) for lvl in self.levels]

    def entries(self, level: int) -> list[Entry]:
        return self.differentials.get(level, [])


@dataclass(frozen=True)
class MonomialIdeal:
    """Squarefree monomial ideal given by its minimal generators as 0/1 exponent vectors."""

    variables: tuple[str, ...]
    generators: tuple[tuple[int, ...], ...]

    @classmethod
    def from_supports(cls, variables: Sequence[str], supports: Iterable[Iterable[str]]) -> MonomialIdeal:
        variables = tuple(variables)
        index = {v: i for i, v in enumerate(variables)}
        gens = []
        for s in supports:
            vec = [0] * len(variables)
            for v in s:
                vec[index[v]] = 1
            gens.append(tuple(vec))
        masks = [_mask(g) for g in gens]
        for a, b in combinations(range(len(masks)), 2):
            if masks[a] & ~masks[b] == 0 or masks[b] & ~masks[a] == 0:
                raise ValueError("generators are not minimal (one divides another)")
        return cls(variables, tuple(sorted(gens, key=lambda g: tuple(-x for x in g))))

    def supports(self) -> list[list[str]]:
        return [[v for v, e in zip(self.variables, g) if e] for g in self.generators]

    def contains(self, exponent_mask: int) -> bool:
        return any(_mask(g) & ~exponent_mask == 0 for g in self.generators)

    def stanley_reisner_complex(self) -> SimplicialComplex:
        return SimplicialComplex.from_minimal_nonfaces(self.variables, self.supports())

    def to_json(self) -> dict:
        return {"variables": list(self.variables), "generators": self.supports()}

    @classmethod
    def from_json(cls, data: dict) -> MonomialIdeal:
        return cls.from_supports(data["variables"], data["generators"])


def cover_ideal(G: Graph, variables: Sequence[str] | None = None) -> MonomialIdeal:
    """J(G), generated by the minimal vertex covers."""
    return MonomialIdeal.from_supports(variables or G.vertices, minimal_vertex_covers(G).covers)


def _mask(vec: Sequence[int]) -> int:
    m = 0
    for i, e in enumerate(vec):
        if e:
            m |= 1 << i
    return m


def _vec(mask: int, n: int) -> tuple[int, ...]:
    return tuple(mask >> i & 1 for i in range(n))


# --- constructions ----------------------------------------------------------


def resolve_whiskered(wg: WhiskeredGraph, construction: str = "cw") -> MultigradedFreeComplex:
    """Resolution of J(G^pi[n_1..n_r]) for an already decomposed graph.

    Basis f(C; sigma): C a minimal cover, sigma a subset of V(G) \\ C.  The
    differential sends f(C; sigma) to
    sum over x in sigma of (-1)^alpha [w_b f((C - W_b) + x; sigma - x) - x f(C; sigma - x)]
    where b is the block of x, W_b its whisker block, w_b the product of
    that block and alpha counts elements of sigma after x.
    """
    order = wg.partition.ordered_vertices
    whiskers = wg.whisker_vertices
    variables = tuple(order) + whiskers
    pos = {v: i for i, v in enumerate(variables)}
    n = len(variables)
    block_of = {x: b for b, blk in enumerate(wg.partition.blocks) for x in blk}
    block_mask = [sum(1 << pos[w] for w in ws) for ws in wg.whisker_map]

    covers = []
    for c in minimal_vertex_covers(wg.graph).covers:
        cmask = sum(1 << pos[v] for v in c)
        for bm in block_mask:
            if cmask & bm not in (0, bm):
                raise BlockViolation(f"minimal cover {sorted(c)} meets a whisker block properly")
        covers.append(cmask)
    covers.sort(key=lambda m: tuple(iter_bits(m)))
    cover_set = set(covers)
    x_mask = sum(1 << pos[x] for x in order)

    levels: list[list[BasisSymbol]] = []
    keys: list[dict[tuple[int, int], int]] = []
    level = 0
    while True:
        syms, idx = [], {}
        for c in covers:
            free = [i for i in iter_bits(x_mask & ~c)]
            for sigma in combinations(free, level):
                smask = sum(1 << i for i in sigma)
                idx[(c, smask)] = len(syms)
                syms.append(BasisSymbol(
                    tuple(variables[i] for i in iter_bits(c)),
                    tuple(variables[i] for i in sigma),
                    _vec(c | smask, n),
                ))
        if not syms:
            break
        levels.append(syms)
        keys.append(idx)
        level += 1

    differentials: dict[int, list[Entry]] = {}
    for i in range(1, len(levels)):
        entries = []
        lower = keys[i - 1]
        for (c, smask), col in keys[i].items():
            sigma = list(iter_bits(smask))
            for k, xi in enumerate(sigma):
                sign = -1 if (len(sigma) - k - 1) % 2 else 1
                xbit = 1 << xi
                wb = block_mask[block_of[variables[xi]]]
                target = (c & ~wb) | xbit
                rest = smask & ~xbit
                if target not in cover_set or (target, rest) not in lower:
                    raise DanglingSymbol(
                        f"f({sorted(variables[t] for t in iter_bits(target))}; ...) is not a basis symbol"
                    )
                entries.append(Entry(lower[(target, rest)], col, sign, _vec(wb, n)))
                entries.append(Entry(lower[(c, rest)], col, -sign, _vec(xbit, n)))
        entries.sort(key=lambda e: (e.col, e.row))
        differentials[i] = entries
    augmentation = [s.multidegree for s in levels[0]] if levels else []
    return MultigradedFreeComplex(variables, levels, differentials, augmentation, construction)


def build_const1(G: Graph, partition: CliquePartition | Sequence[Sequence[str]]) -> MultigradedFreeComplex:
    """Minimal free resolution of J(G^pi)."""
    return resolve_whiskered(clique_whisker(G, partition), "cw")


def build_const2(G: Graph, partition, mult: Sequence[int]) -> MultigradedFreeComplex:
    """Minimal free resolution of J(G^pi[n_1..n_r]); whisker w_i becomes w_{i,1}...w_{i,n_i}."""
    return resolve_whiskered(multi_clique_whisker(G, partition, mult), "multi")


def build_const3(H: Graph, mult: Sequence[int]) -> MultigradedFreeComplex:
    """Minimal free resolution of J(H(n_1..n_d0)) for a Cohen-Macaulay very well-covered H.

    x'_i and y'_i are the block monomials x_{i,1}...x_{i,n_i} and y_{i,1}...y_{i,n_i};
    multidegrees are 0/1 vectors over the expanded variables.
    """
    vs = vwc_expand(H, mult)
    return resolve_vwc(vs)


def shedding_positions(H: Graph, cover: int, d0: int) -> list[int]:
    """Indices s with y_s in the cover and (C - y_s) + x_s still a vertex cover of H.

    For a whisker graph the second condition is automatic, since y_s is a leaf.
    """
    out = []
    for s in range(1, d0 + 1):
        y, x = H.index[f"y:{s}"], H.index[f"x:{s}"]
        if cover >> y & 1 and H.adjacency[y] & ~cover & ~(1 << x) == 0:
            out.append(s)
    return out


def resolve_vwc(vs: VwcStructure) -> MultigradedFreeComplex:
    H = vs.base
    d0 = check_condition_star(H)
    variables = vs.expanded.vertices
    pos = {v: i for i, v in enumerate(variables)}
    n = len(variables)
    block = {}
    for s in range(1, d0 + 1):
        for side in "xy":
            block[f"{side}:{s}"] = sum(1 << pos[v] for v in vs.block(f"{side}:{s}"))
    hx = [H.index[f"x:{s}"] for s in range(1, d0 + 1)]
    hy = [H.index[f"y:{s}"] for s in range(1, d0 + 1)]

    covers = sorted(minimal_cover_masks(H), key=lambda m: tuple(iter_bits(m)))
    cover_set = set(covers)

    def z(cmask):
        m = 0
        for lab in H.labels(cmask):
            m |= block[lab]
        return m

    def sigma_mask(sig):
        m = 0
        for s in sig:
            m |= block[f"x:{s}"]
        return m

    levels, keys = [], []
    level = 0
    while True:
        syms, idx = [], {}
        for c in covers:
            shedable = shedding_positions(H, c, d0)
            for sig in combinations(shedable, level):
                idx[(c, sig)] = len(syms)
                syms.append(BasisSymbol(
                    H.ordered(H.labels(c)),
                    tuple(f"x:{s}" for s in sig),
                    _vec(z(c) | sigma_mask(sig), n),
                ))
        if not syms:
            break
        levels.append(syms)
        keys.append(idx)
        level += 1

    differentials = {}
    for i in range(1, len(levels)):
        entries = []
        lower = keys[i - 1]
        for (c, sig), col in keys[i].items():
            for k, s in enumerate(sig):
                sign = -1 if (len(sig) - k - 1) % 2 else 1
                target = (c & ~(1 << hy[s - 1])) | (1 << hx[s - 1])
                rest = sig[:k] + sig[k + 1:]
                if target not in cover_set or (target, rest) not in lower:
                    raise DanglingSymbol(f"f({sorted(H.labels(target))}; {rest}) is not a basis symbol")
                entries.append(Entry(lower[(target, rest)], col, sign, _vec(block[f"y:{s}"], n)))
                entries.append(Entry(lower[(c, rest)], col, -sign, _vec(block[f"x:{s}"], n)))
        entries.sort(key=lambda e: (e.col, e.row))
        differentials[i] = entries
    augmentation = [s.multidegree for s in levels[0]]
    return MultigradedFreeComplex(variables, levels, differentials, augmentation, "vwc")


# --- Betti numbers and verification ----------------------------------------


def betti_from_complex(F: MultigradedFreeComplex, module: str = "J") -> BettiTable:
    """beta_{i,j}(J) = number of level-i basis symbols of total degree j."""
    for level, entries in F.differentials.items():
        for e in entries:
            if not any(e.monomial):
                raise NotMinimal(f"constant entry at level {level}, row {e.row}, col {e.col}")
    table = BettiTable(module=module, convention="ideal")
    for i, syms in enumerate(F.levels):
        for s in syms:
            table.add(i, s.degree)
    return table


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: dict | None = None

    def to_json(self) -> dict:
        return {"check": self.name, "passed": self.passed, "witness": self.witness}


@dataclass
class VerificationReport:
    checks: list[CheckResult] = dc_field(default_factory=list)
    betti: BettiTable | None = None
    oracle: BettiTable | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        out = {"passed": self.passed, "checks": [c.to_json() for c in self.checks]}
        if self.betti is not None:
            out["betti"] = self.betti.to_json()
        if self.oracle is not None:
            out["oracle"] = self.oracle.to_json()
        return out


def _check_multihomogeneous(F) -> CheckResult:
    for level, entries in sorted(F.differentials.items()):
        for e in entries:
            row = F.levels[level - 1][e.row].multidegree
            col = F.levels[level][e.col].multidegree
            if tuple(a + b for a, b in zip(row, e.monomial)) != col:
                return CheckResult("multihomogeneous", False,
                                   {"level": level, "row": e.row, "col": e.col, "monomial": list(e.monomial)})
    return CheckResult("multihomogeneous", True)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _check_d_squared(F) -> CheckResult:
    # d_0 o d_1 through the augmentation
    by_col: dict[int, list[Entry]] = {}
    for e in F.entries(1):
        by_col.setdefault(e.col, []).append(e)
    for col, entries in by_col.items():
        acc: dict[tuple, int] = {}
        for e in entries:
            key = _add(e.monomial, F.augmentation[e.row])
            acc[key] = acc.get(key, 0) + e.sign
        for key, v in acc.items():
            if v:
                return CheckResult("d_squared_zero", False, {"level": 1, "col": col, "monomial": list(key), "coeff": v})
    for i in range(2, len(F.levels)):
        lower: dict[int, list[Entry]] = {}
        for e in F.entries(i - 1):
            lower.setdefault(e.col, []).append(e)
        by_col = {}
        for e in F.entries(i):
            by_col.setdefault(e.col, []).append(e)
        for col, entries in by_col.items():
            acc = {}
            for e in entries:
                for f in lower.get(e.row, []):
                    key = (f.row, _add(e.monomial, f.monomial))
                    acc[key] = acc.get(key, 0) + e.sign * f.sign
            for (row, mono), v in acc.items():
                if v:
                    return CheckResult("d_squared_zero", False,
                                       {"level": i, "col": col, "row": row, "monomial": list(mono), "coeff": v})
    return CheckResult("d_squared_zero", True)


def _check_minimal(F) -> CheckResult:
    for level, entries in sorted(F.differentials.items()):
        for e in entries:
            if not any(e.monomial):
                return CheckResult("minimal", False, {"level": level, "row": e.row, "col": e.col})
    return CheckResult("minimal", True)


def _check_augmentation(F, J: MonomialIdeal) -> CheckResult:
    if tuple(F.variables) != tuple(J.variables):
        return CheckResult("augmentation", False, {"reason": "variable lists differ"})
    if not F.levels:
        return CheckResult("augmentation", not J.generators, {"reason": "empty complex"} if J.generators else None)
    for k, (sym, gen) in enumerate(zip(F.levels[0], F.augmentation)):
        if tuple(sym.multidegree) != tuple(gen):
            return CheckResult("augmentation", False, {"symbol": k, "reason": "multidegree differs from image"})
    images = sorted(tuple(g) for g in F.augmentation)
    gens = sorted(tuple(g) for g in J.generators)
    if images != gens:
        missing = [g for g in gens if g not in images]
        extra = [g for g in images if g not in gens]
        return CheckResult("augmentation", False,
                           {"missing": [list(g) for g in missing], "extra": [list(g) for g in extra]})
    return CheckResult("augmentation", True)


def _check_strands(F, J: MonomialIdeal, field: str, lcm_reduce: bool) -> CheckResult:
    masks = [[_mask(s.multidegree) for s in lvl] for lvl in F.levels]
    cols: list[dict[int, list[tuple[int, int]]]] = [{}]
    for i in range(1, len(F.levels)):
        c: dict[int, list[tuple[int, int]]] = {}
        for e in F.entries(i):
            c.setdefault(e.col, []).append((e.row, e.sign))
        cols.append(c)
    join = 0
    for lvl in masks:
        for m in lvl:
            join |= m
    done: set[int] = set()
    b = join
    while True:
        key = b
        if lcm_reduce:
            key = 0
            for lvl in masks:
                for m in lvl:
                    if m & ~b == 0:
                        key |= m
        if key not in done:
            done.add(key)
            failure = _strand_homology(masks, cols, key, J, field)
            if failure is not None:
                failure["b"] = list(_vec(key, len(F.variables)))
                return CheckResult("strand_exact", False, failure)
        if b == 0:
            break
        b = (b - 1) & join
    return CheckResult("strand_exact", True, {"strands_checked": len(done)})


def _strand_homology(masks, cols, b, J, field):
    inside = [[k for k, m in enumerate(lvl) if m & ~b == 0] for lvl in masks]
    ranks = [0] * (len(masks) + 1)
    for i in range(1, len(masks)):
        if not inside[i]:
            continue
        rows = {k: r for r, k in enumerate(inside[i - 1])}
        matrix = []
        for k in inside[i]:
            matrix.append({rows[row]: sign for row, sign in cols[i].get(k, [])})
        ranks[i] = rank(matrix, field)
    for i in range(len(masks)):
        h = len(inside[i]) - ranks[i] - ranks[i + 1]
        expected = (1 if J.contains(b) else 0) if i == 0 else 0
        if h != expected:
            return {"level": i, "homology": h, "expected": expected}
    return None


def verify_complex(
    F: MultigradedFreeComplex,
    J: MonomialIdeal,
    field="q",
    lcm_reduce: bool = False,
    oracle: bool = True,
    oracle_method: str = "both",
) -> VerificationReport:
    """Run the six checks; later checks still run when an earlier one fails."""
    field = parse_field(field)
    report = VerificationReport()
    report.checks.append(_check_multihomogeneous(F))
    report.checks.append(_check_d_squared(F))
    minimal = _check_minimal(F)
    report.checks.append(minimal)
    report.checks.append(_check_augmentation(F, J))
    report.checks.append(_check_strands(F, J, field, lcm_reduce))
    if oracle:
        expected = hochster_betti(J.stanley_reisner_complex(), field, oracle_method, module="J").to_ideal()
        report.oracle = expected
        if minimal.passed:
            table = betti_from_complex(F)
            report.betti = table
            diff = table.diff(expected)
            report.checks.append(CheckResult(
                "betti_matches_oracle", not diff,
                {"cells": [list(d) for d in diff]} if diff else None,
            ))
        else:
            report.checks.append(CheckResult("betti_matches_oracle", False, {"reason": "complex not minimal"}))
    return report


def flip_sign(F: MultigradedFreeComplex, level: int, index: int = 0) -> MultigradedFreeComplex:
    """Copy of ``F`` with one differential entry negated; a negative control."""
    entries = list(F.entries(level))
    entries[index] = replace(entries[index], sign=-entries[index].sign)
    diffs = dict(F.differentials)
    diffs[level] = entries
    return MultigradedFreeComplex(F.variables, F.levels, diffs, F.augmentation, F.construction)


# --- JSON -------------------------------------------------------------------


def complex_to_json(F: MultigradedFreeComplex) -> dict:
    return {
        "construction": F.construction,
        "variables": list(F.variables),
        "levels": [
            [{"cover": list(s.cover), "sigma": list(s.sigma), "multidegree": list(s.multidegree)} for s in lvl]
            for lvl in F.levels
        ],
        "differentials": [
            {"level": i, "entries": [
                {"row": e.row, "col": e.col, "sign": e.sign, "monomial": list(e.monomial)} for e in entries
            ]}
            for i, entries in sorted(F.differentials.items())
        ],
        "augmentation": [list(g) for g in F.augmentation],
    }


def complex_from_json(data: dict) -> MultigradedFreeComplex:
    levels = [
        [BasisSymbol(tuple(s["cover"]), tuple(s["sigma"]), tuple(s["multidegree"])) for s in lvl]
        for lvl in data["levels"]
    ]
    diffs = {
        d["level"]: [Entry(e["row"], e["col"], e["sign"], tuple(e["monomial"])) for e in d["entries"]]
        for d in data["differentials"]
    }
    aug = [tuple(g) for g in data.get("augmentation", [s.multidegree for s in levels[0]] if levels else [])]
    return MultigradedFreeComplex(tuple(data["variables"]), levels, diffs, aug, data.get("construction", ""))
