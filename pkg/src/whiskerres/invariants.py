"""Closed-form Betti numbers, pd, reg, Cohen-Macaulay type and local cohomology.

Each formula is evaluated from the combinatorics of minimal vertex covers and
compared with the resolution and with the Hochster oracles of
:mod:`whiskerres.simplicial`.  Mismatches are collected, never raised, unless
the caller asks for strict behaviour.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb
from typing import Union

from .constructions import VwcStructure, WhiskeredGraph, check_condition_star, paired_whisker_graph, whisker
from .errors import BijectionFailure, FormulaMismatch
from .graph import (
    Graph,
    induced_matching_number,
    iter_bits,
    minimal_cover_masks,
    minimal_vertex_covers,
    popcount,
)
from .resolution import (
    betti_from_complex,
    resolve_vwc,
    resolve_whiskered,
    shedding_positions,
)
from .simplicial import (
    BettiTable,
    PoleSeries,
    alexander_dual,
    f_vector,
    hochster_betti,
    hochster_local_cohomology_all,
    independence_complex,
)

Instance = Union[WhiskeredGraph, VwcStructure]
FAMILIES = ("cw", "multi", "vwc")
CONVENTIONS = ("degree", "literal")


def _check_family(family: str, instance: Instance):
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if family == "vwc":
        if not isinstance(instance, VwcStructure):
            raise TypeError("family vwc needs a VwcStructure")
    else:
        if not isinstance(instance, WhiskeredGraph):
            raise TypeError(f"family {family} needs a WhiskeredGraph")
        if family == "cw" and any(m != 1 for m in instance.multiplicities):
            raise ValueError("family cw needs one whisker per block; use family multi")


def family_of(instance: Instance) -> str:
    if isinstance(instance, VwcStructure):
        return "vwc"
    return "cw" if all(m == 1 for m in instance.multiplicities) else "multi"


def instance_graph(instance: Instance) -> Graph:
    return instance.expanded if isinstance(instance, VwcStructure) else instance.graph


def resolve(instance: Instance):
    if isinstance(instance, VwcStructure):
        return resolve_vwc(instance)
    return resolve_whiskered(instance, family_of(instance))


# --- cover bijection --------------------------------------------------------


@dataclass
class CoverBijection:
    """phi: Min(G^pi) -> Min(W(G)) and its inverse psi, both as label-set dicts."""

    phi: dict[frozenset[str], frozenset[str]]
    psi: dict[frozenset[str], frozenset[str]]
    pendant: dict[str, str]

    def shedding_set(self, cover: frozenset[str], base: Graph) -> frozenset[str]:
        """V(G) minus C."""
        return frozenset(v for v in base.vertices if v not in cover)

    def pendant_set(self, image: frozenset[str]) -> frozenset[str]:
        """{x : pendant of x lies in C'}."""
        return frozenset(x for x, y in self.pendant.items() if y in image)


def cover_bijection(wg: WhiskeredGraph) -> CoverBijection:
    """Build and fully check the cover correspondence between G^pi and W(G)."""
    if any(m != 1 for m in wg.multiplicities):
        raise ValueError("the cover bijection is defined for clique-whiskered graphs")
    W, pendant = paired_whisker_graph(wg.base, wg.partition)
    ws = set(wg.whisker_vertices)
    ys = set(pendant.values())
    block_whisker = {pendant[x]: wg.whisker_map[i][0] for i, blk in enumerate(wg.partition.blocks) for x in blk}
    base_vertices = set(wg.base.vertices)

    def phi(c: frozenset[str]) -> frozenset[str]:
        return frozenset((c - ws) | {pendant[x] for x in base_vertices if x not in c})

    def psi(d: frozenset[str]) -> frozenset[str]:
        return frozenset((d - ys) | {block_whisker[y] for y in d & ys})

    source = set(minimal_vertex_covers(wg.graph).covers)
    target = set(minimal_vertex_covers(W).covers)
    fwd = {c: phi(c) for c in source}
    back = {d: psi(d) for d in target}
    for c, d in fwd.items():
        if d not in target:
            raise BijectionFailure(f"phi({sorted(c)}) = {sorted(d)} is not a minimal cover of W(G)")
        if back[d] != c:
            raise BijectionFailure(f"psi(phi({sorted(c)})) = {sorted(back[d])}")
    for d, c in back.items():
        if c not in source or fwd[c] != d:
            raise BijectionFailure(f"phi(psi({sorted(d)})) differs from {sorted(d)}")
    out = CoverBijection(fwd, back, pendant)
    for c, d in fwd.items():
        if out.shedding_set(c, wg.base) != out.pendant_set(d):
            raise BijectionFailure(f"shedding sets differ for {sorted(c)}")
    return out


# --- closed forms ----------------------------------------------------------


def _vwc_strata(vs: VwcStructure):
    """Yield (i, d + N_D) for every cover C of H and every D in the shedding set."""
    H = vs.base
    d0 = check_condition_star(H)
    for c in minimal_cover_masks(H):
        shed = shedding_positions(H, c, d0)
        for i in range(len(shed) + 1):
            for D in combinations(shed, i):
                yield i, vs.d + sum(vs.multiplicities[s - 1] for s in D)


def betti_formula(family: str, instance: Instance, convention: str = "degree") -> BettiTable:
    """Betti numbers of the cover ideal from the cover combinatorics alone.

    cw:    beta_{i, i+|V(G)|} = sum over C of binom(|V(G) - C|, i)
    multi: beta_{i, i+|C|} gains binom(|V(G) - C|, i) for each C
    vwc:   each cover C of H and D in its shedding set contributes to
           beta_{i, d+N_D} ("degree") or beta_{i, i+d+N_D} ("literal"), i = |D|
    """
    _check_family(family, instance)
    table = BettiTable(module="J", convention="ideal")
    if family == "vwc":
        if convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {convention!r}")
        for i, deg in _vwc_strata(instance):
            table.add(i, deg if convention == "degree" else i + deg)
        return table
    base = instance.base
    nbase = base.n
    base_names = set(base.vertices)
    for c in minimal_vertex_covers(instance.graph).covers:
        free = len(base_names - c)
        shift = nbase if family == "cw" else len(c)
        for i in range(free + 1):
            table.add(i, i + shift, comb(free, i))
    return table


def pd_formula(family: str, instance: Instance) -> int:
    _check_family(family, instance)
    if family == "vwc":
        H = instance.base
        d0 = check_condition_star(H)
        return max(len(shedding_positions(H, c, d0)) for c in minimal_cover_masks(H))
    base = set(instance.base.vertices)
    return max(len(base - c) for c in minimal_vertex_covers(instance.graph).covers)


def local_cohomology_formula(family: str, instance: Instance, j: int, convention: str = "degree") -> PoleSeries:
    """Hilbert series of H^j_m(S/I) as a combination of (t-1)^{-k}.

    cw:    sum_i sum_C binom(|V(G) - C|, i) (t-1)^{-(r-i)}, only for j = r
    multi: the same restricted to |C| = |V| - j, with exponent j - i
    vwc:   D counted when d+N_D = |V| - j + i ("degree") or = |V| - j ("literal")
    """
    _check_family(family, instance)
    if j < 0:
        raise ValueError("cohomological degree must be nonnegative")
    series = PoleSeries()
    n = instance_graph(instance).n
    if family == "vwc":
        if convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {convention!r}")
        for i, deg in _vwc_strata(instance):
            target = n - j + i if convention == "degree" else n - j
            if deg == target and j - i >= 0:
                series.add_term(j - i, 1)
        return series
    base = set(instance.base.vertices)
    r = instance.partition.r
    for c in minimal_vertex_covers(instance.graph).covers:
        if family == "cw" and j != r:
            continue
        if family == "multi" and len(c) != n - j:
            continue
        free = len(base - c)
        for i in range(free + 1):
            if j - i >= 0:
                series.add_term(j - i, comb(free, i))
    return series


def local_cohomology_from_betti(J: BettiTable, n: int, j: int) -> PoleSeries:
    """F(H^j_m(S/I)) = sum_i beta_{i, n-j+i}(J) (t-1)^{-(j-i)} where J is the cover ideal."""
    series = PoleSeries()
    for (i, deg), b in J.to_ideal().entries.items():
        if deg == n - j + i and j - i >= 0:
            series.add_term(j - i, b)
    return series


# --- reports ----------------------------------------------------------------


@dataclass
class FormulaCheck:
    name: str
    formula: object
    oracle: object
    passed: bool

    def to_json(self) -> dict:
        return {"check": self.name, "formula": _jsonable(self.formula), "oracle": _jsonable(self.oracle),
                "passed": self.passed}


def _jsonable(value):
    if isinstance(value, (BettiTable, PoleSeries)):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


@dataclass
class InvariantReport:
    family: str
    pd: int | None = None
    reg: int | None = None
    im: int | None = None
    cm_type: int | None = None
    bight: int | None = None
    dim: int | None = None
    pure: bool | None = None
    convention: str | None = None
    checks: list[FormulaCheck] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str, formula, oracle) -> FormulaCheck:
        fc = FormulaCheck(name, formula, oracle, formula == oracle)
        self.checks.append(fc)
        return fc

    def failures(self) -> list[FormulaCheck]:
        return [c for c in self.checks if not c.passed]

    def raise_on_failure(self):
        bad = self.failures()
        if bad:
            raise FormulaMismatch("; ".join(f"{c.name}: formula {c.formula!r} vs oracle {c.oracle!r}" for c in bad))

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "pd": self.pd,
            "reg": self.reg,
            "im": self.im,
            "cm_type": self.cm_type,
            "bight": self.bight,
            "dim": self.dim,
            "pure": self.pure,
            "convention": self.convention,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }

    def table(self) -> str:
        lines = [f"family {self.family}: pd(J)={self.pd} reg(S/I)={self.reg} im={self.im} "
                 f"cm_type={self.cm_type} bight={self.bight} dim={self.dim}"]
        width = max((len(c.name) for c in self.checks), default=0)
        for c in self.checks:
            lines.append(f"  {c.name.ljust(width)}  {'ok' if c.passed else 'FAIL'}  "
                         f"formula={_short(c.formula)} oracle={_short(c.oracle)}")
        return "\n".join(lines)


def _short(value) -> str:
    if isinstance(value, BettiTable):
        return "{" + ", ".join(f"({i},{j}):{b}" for (i, j), b in sorted(value.entries.items())) + "}"
    return repr(value)


def vwc_convention_report(vs: VwcStructure, field="q", resolution_table: BettiTable | None = None) -> dict:
    """Which Betti indexing of the vwc closed form agrees with the verified tables."""
    if resolution_table is None:
        resolution_table = betti_from_complex(resolve_vwc(vs))
    oracle = hochster_betti(alexander_dual(independence_complex(vs.expanded)), field, module="J").to_ideal()
    matches = {}
    for conv in CONVENTIONS:
        table = betti_formula("vwc", vs, conv)
        matches[conv] = table == resolution_table and table == oracle
    supported = [c for c in CONVENTIONS if matches[c]]
    return {
        "multiplicities": list(vs.multiplicities),
        "matches": matches,
        "supported": supported[0] if len(supported) == 1 else ("both" if supported else "none"),
    }


def pd_reg_type(family: str, instance: Instance, field="q") -> InvariantReport:
    """Evaluate every closed-form invariant of the family against its oracle."""
    _check_family(family, instance)
    G = instance_graph(instance)
    n = G.n
    delta = independence_complex(G)
    quotient = hochster_betti(delta, field, module="S/I")
    J = hochster_betti(alexander_dual(delta), field, module="J").to_ideal()
    res = betti_from_complex(resolve(instance))
    covers = minimal_cover_masks(G)

    rep = InvariantReport(family)
    rep.pd = res.pd
    rep.reg = quotient.reg
    rep.im = induced_matching_number(G)
    rep.bight = max(popcount(c) for c in covers)
    rep.dim = delta.dim + 1
    rep.check("resolution_betti=hochster", res, J)
    rep.check("pd(J)_formula=resolution", pd_formula(family, instance), res.pd)
    rep.check("reg(S/I)=pd(J)", quotient.reg, J.pd)

    if family == "vwc":
        conv = vwc_convention_report(instance, field, res)
        rep.convention = conv["supported"]
        rep.check("betti_formula(degree)=resolution", betti_formula(family, instance, "degree"), res)
        rep.check("vwc_convention_consistent", conv["supported"], "degree")
        return rep

    rep.check("betti_formula=resolution", betti_formula(family, instance), res)
    rep.check("reg(S/I)=im", quotient.reg, rep.im)
    rep.check("pd(S/I)=bight", quotient.pd, rep.bight)
    if family == "cw":
        nb = instance.base.n
        rep.pure = all(deg == i + nb for (i, deg) in res.entries)
        rep.check("pure_in_degree_i+|V(G)|", rep.pure, True)
        top = quotient.total(quotient.pd)
        rep.cm_type = len(minimal_cover_masks(instance.base))
        rep.check("cm_type=|Min(G)|", rep.cm_type, top)
        rep.check("cohen_macaulay(pd=codim)", quotient.pd, n - rep.dim)
    return rep


def local_cohomology_checks(family: str, instance: Instance, field="q", convention: str = "degree") -> list[FormulaCheck]:
    """Closed form vs Hochster local cohomology for every j from 0 to dim."""
    _check_family(family, instance)
    G = instance_graph(instance)
    delta = independence_complex(G)
    oracle = hochster_local_cohomology_all(delta, field)
    checks = []
    for j in range(delta.dim + 2):
        formula = local_cohomology_formula(family, instance, j, convention)
        expected = oracle.get(j, PoleSeries())
        checks.append(FormulaCheck(f"H^{j}", formula, expected, formula == expected))
    return checks


def betti_transfer(wg: WhiskeredGraph, field="q") -> FormulaCheck:
    """beta(S/I(G^pi)) = beta(S'/I(W(G))), both by Hochster."""
    W, _ = paired_whisker_graph(wg.base, wg.partition)
    left = hochster_betti(independence_complex(wg.graph), field)
    right = hochster_betti(independence_complex(W), field)
    return FormulaCheck("betti_transfer", left, right, left == right)


def whisker_f_vector_identity(G: Graph) -> FormulaCheck:
    """f_{k-1}(Delta(W(G))) = sum_l f_{l-1}(Delta(G)) binom(|V(G)| - l, k - l)."""
    fw = f_vector(independence_complex(whisker(G).graph))
    fg = f_vector(independence_complex(G))
    n = G.n
    predicted = []
    for k in range(len(fw)):
        predicted.append(sum(fg[l] * comb(n - l, k - l) for l in range(min(k, len(fg) - 1) + 1)))
    while predicted and predicted[-1] == 0:
        predicted.pop()
    return FormulaCheck("whisker_f_vector", tuple(predicted), tuple(fw), tuple(predicted) == tuple(fw))


def characteristic_independence(G: Graph, fields=("q", "f2", "f3")) -> FormulaCheck:
    """Betti tables of S/I(G) and J(G) over each field coincide."""
    delta = independence_complex(G)
    dual = alexander_dual(delta)
    tables = {f: (hochster_betti(delta, f), hochster_betti(dual, f)) for f in fields}
    first = tables[fields[0]]
    same = all(t == first for t in tables.values())
    return FormulaCheck("characteristic_independence", {f: t[1].to_ideal() for f, t in tables.items()},
                        first[1].to_ideal(), same)
