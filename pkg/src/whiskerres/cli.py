"""Command-line interface: ``whiskerres <subcommand> ...``.

Exit status is 0 when every requested check passes, 1 when a check fails and
2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import sys

from . import io
from .constructions import (
    cameron_walker_cm,
    clique_whisker,
    cm_chordal_decompose,
    corona_clique,
    multi_clique_whisker,
    vwc_expand,
)
from .corpus import CorpusSpec, Instance, corpus_from_json, corpus_to_json, generate_corpus
from .errors import WhiskerResError
from .graph import minimal_vertex_covers, partition_from_json
from .invariants import (
    instance_graph,
    local_cohomology_formula,
    pd_reg_type,
    resolve,
)
from .linalg import parse_field
from .pipeline import check_corpus, convention_summary
from .resolution import MonomialIdeal, complex_from_json, complex_to_json, cover_ideal, verify_complex
from .simplicial import (
    alexander_dual,
    hochster_betti,
    hochster_local_cohomology,
    independence_complex,
    vertex_decomposable,
)


def _mult(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad multiplicity list {text!r}; expected e.g. 2,1,3")


def _load_instance(args, family: str | None = None) -> Instance:
    """An instance from ``--in`` (corpus instance JSON) or from graph + partition + mult."""
    if getattr(args, "instance", None):
        data = io.untag(io.read_json(args.instance))
        if "family" not in data:
            mult = data.get("mult") or []
            data["family"] = family or ("vwc" if "partition" not in data else
                                        "cw" if all(m == 1 for m in mult) else "multi")
        inst = Instance.from_json(data)
        if family and family != inst.family:
            inst = Instance(family, inst.name, inst.base, inst.blocks, inst.mult, inst.whisker_labels)
        return inst
    if not getattr(args, "graph", None):
        raise SystemExit("error: give an instance file or --graph")
    G = io.read_graph(args.graph)
    mult = tuple(args.mult or ())
    if family == "vwc":
        return Instance("vwc", "", G, (), mult)
    if not args.partition:
        raise SystemExit("error: --partition is required for whiskered families")
    blocks = partition_from_json(G, io.untag(io.read_json(args.partition))).blocks
    mult = mult or (1,) * len(blocks)
    fam = family or ("cw" if all(m == 1 for m in mult) else "multi")
    return Instance(fam, "", G, blocks, mult)


# --- subcommands ------------------------------------------------------------


def cmd_construct(args) -> int:
    G = io.read_graph(args.graph)
    kind = args.kind
    if kind == "vwc-expand":
        vs = vwc_expand(G, args.mult or [1] * (G.n // 2))
        io.write_json(io.vwc_to_json(vs), args.out)
        return 0
    if kind in ("clique-whisker", "multi"):
        if not args.partition:
            raise SystemExit("error: --partition is required")
        part = partition_from_json(G, io.untag(io.read_json(args.partition)))
        if kind == "clique-whisker":
            wg = clique_whisker(G, part)
        else:
            wg = multi_clique_whisker(G, part, args.mult or [1] * part.r)
    elif kind == "corona":
        wg = corona_clique(G, args.mult or [1] * G.n)
    elif kind == "cameron-walker":
        wg = cameron_walker_cm(G, args.left.split(",") if args.left else None)
    else:
        wg = cm_chordal_decompose(G)
    io.write_json(io.whiskered_to_json(wg), args.out)
    return 0


def cmd_covers(args) -> int:
    G = io.read_graph(args.graph)
    covers = [list(G.ordered(c)) for c in minimal_vertex_covers(G).covers]
    io.write_json(io.tag("covers", {"count": len(covers), "covers": covers}), args.out)
    return 0


def cmd_resolution(args) -> int:
    inst = _load_instance(args, args.construction)
    built = inst.build()
    F = resolve(built)
    io.write_json(io.tag("resolution", complex_to_json(F)), args.out)
    if args.ideal_out:
        J = cover_ideal(instance_graph(built), F.variables)
        io.write_json(io.tag("ideal", J.to_json()), args.ideal_out)
    return 0


def cmd_verify(args) -> int:
    F = complex_from_json(io.untag(io.read_json(args.resolution), "resolution"))
    J = MonomialIdeal.from_json(io.untag(io.read_json(args.ideal), "ideal"))
    report = verify_complex(F, J, args.field, lcm_reduce=args.lcm_reduce)
    io.write_json(io.tag("verification", report.to_json()), args.out)
    for c in report.checks:
        print(f"{'PASS' if c.passed else 'FAIL'} {c.name}", file=sys.stderr)
    return 0 if report.passed else 1


def cmd_betti(args) -> int:
    G = io.read_graph(args.graph)
    delta = independence_complex(G)
    if args.module == "cover":
        table = hochster_betti(alexander_dual(delta), args.field, module="J(G)").to_ideal()
    else:
        table = hochster_betti(delta, args.field, module="S/I(G)")
    io.write_json(io.tag("betti", table.to_json()), args.out)
    return 0


def cmd_invariants(args) -> int:
    inst = _load_instance(args, args.family)
    rep = pd_reg_type(inst.family, inst.build(), args.field)
    io.write_json(io.tag("invariants", rep.to_json()), args.out)
    print(rep.table(), file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return 0 if rep.passed else 1


def cmd_hilbert(args) -> int:
    inst = _load_instance(args, args.family)
    built = inst.build()
    formula = local_cohomology_formula(inst.family, built, args.j, args.convention)
    oracle = hochster_local_cohomology(independence_complex(instance_graph(built)), args.j, args.field)
    doc = io.tag("local-cohomology", {
        "j": args.j,
        "family": inst.family,
        "convention": args.convention,
        "formula": formula.to_json(),
        "oracle": oracle.to_json(),
        "equal": formula == oracle,
    })
    io.write_json(doc, args.out)
    return 0 if formula == oracle else 1


def cmd_vd(args) -> int:
    G = io.read_graph(args.graph)
    vd = vertex_decomposable(independence_complex(G))
    doc = io.tag("vertex-decomposition", {
        "decomposable": vd.decomposable,
        "shedding": list(vd.shedding),
        "certificate": vd.certificate,
        "witness": [sorted(f) for f in vd.witness],
    })
    io.write_json(doc, args.out)
    return 0 if vd.decomposable else 1


def cmd_corpus(args) -> int:
    spec = CorpusSpec(seed=args.seed, max_base=args.max_base, max_total=args.max_total, mult_cap=args.mult_cap,
                      max_whiskers=args.max_whiskers)
    io.write_json(io.tag("corpus", corpus_to_json(generate_corpus(spec), spec)), args.out)
    return 0


def cmd_check_all(args) -> int:
    if args.corpus:
        instances = corpus_from_json(io.untag(io.read_json(args.corpus), "corpus"))
    else:
        instances = generate_corpus(CorpusSpec(seed=args.seed))
    results = check_corpus(instances, args.field, jobs=args.jobs, lcm_reduce=args.lcm_reduce)
    summary = convention_summary(results)
    failed = [r for r in results if not r.passed]
    doc = io.tag("check-all", {
        "instances": len(results),
        "failed": len(failed),
        "vwc_convention": summary,
        "results": [r.to_json() for r in results],
    })
    io.write_json(doc, args.out)
    for r in failed:
        bad = [k for k, v in r.checks.items() if not v]
        print(f"FAIL {r.name} ({r.family}): {', '.join(bad)}", file=sys.stderr)
    print(f"{len(results) - len(failed)}/{len(results)} instances passed; "
          f"vwc convention: {summary['convention']}", file=sys.stderr)
    return 0 if not failed and (summary["instances"] == 0 or summary["consistent"]) else 1


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="whiskerres", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, field=True):
        sp.add_argument("--out", default=None, help="output path (default: stdout)")
        if field:
            sp.add_argument("--field", type=parse_field, default="q", help="q, f2 or f3")
        return sp

    def instance_args(sp):
        sp.add_argument("instance", nargs="?", help="instance JSON (as written by `corpus`)")
        sp.add_argument("--in", dest="instance_flag", help="instance JSON (alternative to the positional)")
        sp.add_argument("--graph", help="base graph JSON")
        sp.add_argument("--partition", help="partition JSON")
        sp.add_argument("--mult", type=_mult, help="multiplicities, e.g. 2,1,3")

    sp = common(sub.add_parser("construct", help="build a graph family"), field=False)
    sp.add_argument("kind", choices=["clique-whisker", "multi", "corona", "cameron-walker", "vwc-expand",
                                     "chordal-decompose"])
    sp.add_argument("graph")
    sp.add_argument("--partition")
    sp.add_argument("--mult", type=_mult)
    sp.add_argument("--left", help="comma-separated left part of a bipartite graph (cameron-walker)")
    sp.set_defaults(func=cmd_construct)

    sp = common(sub.add_parser("covers", help="minimal vertex covers"), field=False)
    sp.add_argument("graph")
    sp.set_defaults(func=cmd_covers)

    sp = common(sub.add_parser("resolution", help="materialize a resolution of the cover ideal"), field=False)
    sp.add_argument("--construction", choices=["cw", "multi", "vwc"], required=True)
    instance_args(sp)
    sp.add_argument("--ideal-out", help="also write the cover ideal generators here")
    sp.set_defaults(func=cmd_resolution)

    sp = common(sub.add_parser("verify", help="verify a complex resolves an ideal"))
    sp.add_argument("resolution")
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--lcm-reduce", action="store_true", help="only test strands at lcm-lattice degrees")
    sp.set_defaults(func=cmd_verify)

    sp = common(sub.add_parser("betti", help="Hochster Betti table of S/I(G) or J(G)"))
    sp.add_argument("graph")
    sp.add_argument("--module", choices=["quotient", "cover"], default="quotient")
    sp.set_defaults(func=cmd_betti)

    sp = common(sub.add_parser("invariants", help="closed-form invariants against oracles"))
    sp.add_argument("--family", choices=["cw", "multi", "vwc"])
    instance_args(sp)
    sp.set_defaults(func=cmd_invariants)

    sp = common(sub.add_parser("hilbert", help="local cohomology Hilbert series, formula vs oracle"))
    sp.add_argument("--family", choices=["cw", "multi", "vwc"])
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--convention", choices=["degree", "literal"], default="degree")
    instance_args(sp)
    sp.set_defaults(func=cmd_hilbert)

    sp = common(sub.add_parser("vertex-decomposable", help="shedding certificate for the independence complex"),
                field=False)
    sp.add_argument("graph")
    sp.set_defaults(func=cmd_vd)

    sp = common(sub.add_parser("corpus", help="write the seeded corpus"), field=False)
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--max-base", type=int, default=6)
    sp.add_argument("--max-total", type=int, default=12)
    sp.add_argument("--mult-cap", type=int, default=3)
    sp.add_argument("--max-whiskers", type=int, default=6, help="cap on the total whisker count of multi instances")
    sp.set_defaults(func=cmd_corpus)

    sp = common(sub.add_parser("check-all", help="every cross-check on a corpus"))
    sp.add_argument("--corpus", help="corpus JSON (default: generate with --seed)")
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--lcm-reduce", action="store_true")
    sp.set_defaults(func=cmd_check_all)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "instance_flag", None):
        args.instance = args.instance_flag
    try:
        return args.func(args)
    except (WhiskerResError, ValueError, KeyError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
