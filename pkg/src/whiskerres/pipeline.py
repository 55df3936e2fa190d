"""Run every check on corpus instances; shared by the CLI and the acceptance suite."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from .corpus import Instance
from .errors import WhiskerResError
from .invariants import (
    betti_transfer,
    characteristic_independence,
    cover_bijection,
    instance_graph,
    local_cohomology_checks,
    pd_reg_type,
    resolve,
    vwc_convention_report,
    whisker_f_vector_identity,
)
from .resolution import cover_ideal, verify_complex
from .simplicial import (
    alexander_dual,
    betti_by_dual_links,
    betti_by_restriction,
    check_vd_certificate,
    independence_complex,
    vertex_decomposable,
)


@dataclass
class InstanceResult:
    name: str
    family: str
    checks: dict[str, bool] = dc_field(default_factory=dict)
    witnesses: dict[str, object] = dc_field(default_factory=dict)
    convention: dict | None = None

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def record(self, name: str, ok: bool, witness=None):
        self.checks[name] = bool(ok)
        if not ok and witness is not None:
            self.witnesses[name] = witness

    def group(self, prefix: str) -> bool:
        """All checks whose name starts with ``prefix``; True when there are none."""
        return all(v for k, v in self.checks.items() if k.startswith(prefix))

    def to_json(self) -> dict:
        out = {"name": self.name, "family": self.family, "passed": self.passed, "checks": self.checks}
        if self.witnesses:
            out["witnesses"] = {k: _plain(v) for k, v in self.witnesses.items()}
        if self.convention is not None:
            out["vwc_convention"] = self.convention
        return out


def _plain(v):
    if hasattr(v, "to_json"):
        return v.to_json()
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (int, str, bool, float)) or v is None:
        return v
    return repr(v)


def check_instance(inst: Instance, field="q", fields=("q", "f2", "f3"), lcm_reduce: bool = False) -> InstanceResult:
    res = InstanceResult(inst.name, inst.family)
    try:
        _run_checks(inst, res, field, fields, lcm_reduce)
    except WhiskerResError as exc:
        res.record("error", False, f"{type(exc).__name__}: {exc}")
    return res


def _run_checks(inst: Instance, res: InstanceResult, field, fields, lcm_reduce):
    built = inst.build()
    G = instance_graph(built)

    F = resolve(built)
    report = verify_complex(F, cover_ideal(G, F.variables), field, lcm_reduce=lcm_reduce)
    for c in report.checks:
        res.record(f"resolution:{c.name}", c.passed, c.witness)

    inv = pd_reg_type(inst.family, built, field)
    for c in inv.checks:
        res.record(f"formula:{c.name}", c.passed, c.to_json())
    if inst.family == "cw":
        res.record("formula:betti_transfer", *_check(betti_transfer(built, field)))
        cover_bijection(built)  # raises BijectionFailure on any defect
        res.record("formula:cover_bijection", True)

    for c in local_cohomology_checks(inst.family, built, field):
        res.record(f"local_cohomology:{c.name}", c.passed, c.to_json())

    ci = characteristic_independence(G, fields)
    res.record("characteristic:betti", ci.passed, ci.to_json())

    delta = independence_complex(G)
    if inst.family != "vwc":
        vd = vertex_decomposable(delta)
        res.record("vertex_decomposable", vd.decomposable and check_vd_certificate(delta, vd.certificate),
                   [sorted(f) for f in vd.witness])

    dual = alexander_dual(delta)
    for name, cx in (("independence", delta), ("cover", dual)):
        a, b = betti_by_restriction(cx, field), betti_by_dual_links(cx, field)
        res.record(f"oracle:hochster_forms:{name}", a == b, [list(d) for d in a.diff(b)])
    res.record("oracle:dual_involution", alexander_dual(dual) == delta)
    base = inst.base
    res.record("oracle:whisker_f_vector", *_check(whisker_f_vector_identity(base)))

    if inst.family == "vwc":
        res.convention = vwc_convention_report(built, field)


def _check(fc):
    return fc.passed, fc.to_json()


def check_corpus(instances, field="q", jobs: int = 1, lcm_reduce: bool = False) -> list[InstanceResult]:
    """Instances are independent, so ``jobs > 1`` fans them out over processes."""
    if jobs <= 1:
        return [check_instance(i, field, lcm_reduce=lcm_reduce) for i in instances]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(check_instance, instances, [field] * len(instances),
                             [("q", "f2", "f3")] * len(instances), [lcm_reduce] * len(instances)))


def convention_summary(results: list[InstanceResult]) -> dict:
    """The single indexing convention supported across all vwc instances, if any."""
    seen = {r.convention["supported"] for r in results if r.convention is not None}
    return {
        "instances": sum(1 for r in results if r.convention is not None),
        "conventions_seen": sorted(seen),
        "consistent": len(seen) == 1 and seen <= {"degree", "literal"},
        "convention": seen.pop() if len(seen) == 1 else None,
    }
