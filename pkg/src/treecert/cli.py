"""The treecert command line: one entry point for every certificate.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error.
Randomized subcommands take --seed and default to a fixed one, so reports
are byte-identical across runs for the same argv.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import algebra, bassserre, cosets, raag, surface, valuation
from .matrix2 import parse_matrix, word_eval
from .report import Report

DEFAULT_SEED = 20259


class UsageError(ValueError):
    pass


# which spec-level operations each subcommand exercises (directly or through
# its callees); the coverage test walks this table
COMMAND_OPERATIONS = {
    ("surface", "verify"): [
        "algebra.rf_arith", "algebra.rf_normalize", "algebra.poly_gcd",
        "matrix2.mat_ops", "matrix2.word_eval",
        "surface.standard_params", "surface.build_AB", "surface.verify_family",
        "surface.discreteness_certificate", "surface.shalen_double",
        "surface.surface_relation_check", "valuation.val",
        "algebra.laurent_arith",
    ],
    ("surface", "word"): [
        "matrix2.free_reduce", "matrix2.word_eval", "surface.word_trace_leading",
        "surface.hyperbolize", "algebra.substitute_y", "algebra.laurent_arith",
    ],
    ("surface", "appendix"): ["surface.appendix_converse_check"],
    ("surface", "norelator"): ["surface.no_short_relator_check"],
    ("bt", "classify"): ["valuation.val", "valuation.classify"],
    ("bt", "displace"): [
        "valuation.classify", "valuation.canonicalize", "valuation.act",
        "valuation.distance", "valuation.neighbors",
        "valuation.min_displacement_on_ball",
    ],
    ("chains", "refine4"): [
        "cosets.group_order", "cosets.coset_action", "cosets.refine_index4",
    ],
    ("chains", "convert"): ["cosets.chain_4_to_3"],
    ("chains", "tree"): [
        "cosets.build_coset_tree", "cosets.tree_action", "cosets.kernel_at_depth",
    ],
    ("raag", "plan"): [
        "raag.parse_graph", "raag.find_odd_closed_path", "raag.induced_odd_cycle",
        "raag.chromatic_number", "raag.max_clique", "raag.tree_count_plan",
    ],
    ("raag", "embed"): ["raag.embedding_obstruction"],
    ("bassserre", "certify"): [
        "bassserre.britton_reduce", "bassserre.hnn_translation_data",
        "bassserre.theta", "bassserre.phi", "bassserre.three_tree_certificate",
        "bassserre.amalgam_reduce", "bassserre.free_quotient",
        "bassserre.two_tree_certificate",
    ],
    ("bassserre", "word"): [
        "bassserre.britton_reduce", "bassserre.hnn_translation_data",
        "bassserre.theta", "bassserre.phi",
        "bassserre.amalgam_reduce", "bassserre.free_quotient",
    ],
}


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="treecert", description=__doc__)
    top.add_argument("--json", action="store_true", help="structured output")
    top.add_argument("--seed", type=int, default=DEFAULT_SEED,
                     help="seed for randomized checks")
    sub = top.add_subparsers(dest="group", required=True)

    surf = sub.add_parser("surface", help="surface-group representation certificates")
    ssub = surf.add_subparsers(dest="command", required=True)
    v = ssub.add_parser("verify", help="build and verify the matrix family")
    v.add_argument("--p", type=int, required=True)
    for name in ("c", "d", "delta", "h"):
        v.add_argument(f"--{name}", help=f"parameter {name} (rational in x)")
    w = ssub.add_parser("word", help="trace data of a word in a, b, c, d")
    w.add_argument("--p", type=int, required=True)
    w.add_argument("--word", required=True)
    w.add_argument("--hyperbolize", action="store_true")
    ap = ssub.add_parser("appendix", help="randomized commutator-identity check")
    ap.add_argument("--p", type=int, default=101)
    ap.add_argument("--samples", type=int, default=1000)
    nr = ssub.add_parser("norelator", help="no short word maps to +-identity")
    nr.add_argument("--p", type=int, required=True)
    nr.add_argument("--maxlen", type=int, default=8)
    nr.add_argument("--samples", type=int, default=1000,
                    help="sampled words over the full alphabet")

    bt = sub.add_parser("bt", help="Bruhat-Tits tree computations")
    bsub = bt.add_subparsers(dest="command", required=True)
    cl = bsub.add_parser("classify", help="elliptic/hyperbolic from the trace valuation")
    cl.add_argument("--p", type=int, required=True)
    cl.add_argument("--matrix", required=True, help="a;b;c;d in the rational grammar")
    dp = bsub.add_parser("displace", help="minimum displacement over a ball")
    dp.add_argument("--p", type=int, required=True)
    dp.add_argument("--matrix", required=True)
    dp.add_argument("--radius", type=int, default=4)

    ch = sub.add_parser("chains", help="index chains of finite permutation groups")
    csub = ch.add_subparsers(dest="command", required=True)
    r4 = csub.add_parser("refine4", help="index-4 subgroup to a steps-<=3 chain")
    r4.add_argument("--group", required=True, help="generator file")
    r4.add_argument("--subgroup", required=True, help="generator file")
    cv = csub.add_parser("convert", help="steps-<=4 chain to a steps-<=3 chain")
    cv.add_argument("--chain", required=True, help="chain file or directory")
    cv.add_argument("--depth", type=int, default=None, help="truncate before converting")
    tr = csub.add_parser("tree", help="coset tree of a chain")
    tr.add_argument("--chain", required=True)
    tr.add_argument("--depth", type=int, required=True)

    rg = sub.add_parser("raag", help="tree-count planning from the defining graph")
    rsub = rg.add_subparsers(dest="command", required=True)
    pl = rsub.add_parser("plan", help="bounds and exact tree count")
    pl.add_argument("--graph", required=True)
    em = rsub.add_parser("embed", help="odd-cycle/bipartite embedding obstruction")
    em.add_argument("--sub", required=True)
    em.add_argument("--super", dest="sup", required=True)

    bs = sub.add_parser("bassserre", help="HNN / amalgam word certificates")
    bssub = bs.add_subparsers(dest="command", required=True)
    ct = bssub.add_parser("certify", help="exhaustive properness certificate")
    ct.add_argument("--group", choices=["f2byz", "s2"], required=True)
    ct.add_argument("--maxlen", type=int, required=True)
    wd = bssub.add_parser("word", help="normal form and translation data")
    wd.add_argument("--group", choices=["f2byz", "s2"], required=True)
    wd.add_argument("--word", required=True)
    return top


# ---------------------------------------------------------------------------
# handlers
# ---------------------------------------------------------------------------

def _surface_verify(args) -> Report:
    rep = Report("surface verify")
    if any(getattr(args, n) for n in ("c", "d", "delta", "h")):
        if not all(getattr(args, n) for n in ("c", "d", "delta", "h")):
            raise UsageError("give all of --c --d --delta --h or none")
        params = surface.SurfaceParams(
            args.p,
            c=algebra.parse_rational(args.c, args.p),
            d=algebra.parse_rational(args.d, args.p),
            delta=algebra.parse_rational(args.delta, args.p),
            h=algebra.parse_rational(args.h, args.p),
        )
    else:
        params = surface.standard_params(args.p)
    rep.merge_checks(surface.verify_family(params))
    A, B = surface.build_AB(params)
    rep.merge_checks(surface.discreteness_certificate(A, B))
    quad = surface.shalen_double(A, B)
    rep.merge_checks(surface.surface_relation_check(quad))
    rep.counters["p"] = args.p
    return rep


def _surface_word(args) -> Report:
    rep = Report("surface word")
    quad = surface.surface_quadruple(args.p)
    l, alpha = surface.word_trace_leading(args.word, quad)
    rep.add("trace leading term", "pass", f"y-exponent {l}, coefficient {alpha}")
    rep.counters["leading_exponent"] = l
    if args.hyperbolize:
        try:
            n, v = surface.hyperbolize(args.word, quad)
            rep.add_bool("hyperbolize", v < 0, f"y -> x^{n} gives trace valuation {v}")
            rep.counters["n"] = n
            rep.counters["valuation"] = v
        except surface.NotHyperbolizable as e:
            rep.add("hyperbolize", "fail", str(e))
    return rep


def _surface_appendix(args) -> Report:
    rep = Report("surface appendix")
    rep.merge_checks(surface.appendix_converse_check(args.p, args.samples, args.seed))
    return rep


def _surface_norelator(args) -> Report:
    rep = Report("surface norelator")
    quad = surface.surface_quadruple(args.p)
    rep.merge_checks(
        surface.no_short_relator_check(
            quad, args.maxlen, sample_full_alphabet=args.samples, seed=args.seed
        )
    )
    return rep


def _bt_classify(args) -> Report:
    rep = Report("bt classify")
    m = parse_matrix(args.matrix, args.p)
    c = valuation.classify(m)
    if c.is_hyperbolic:
        rep.add("classification", "pass", f"Hyperbolic, translation length {c.translation_length}")
    else:
        rep.add("classification", "pass", "Elliptic")
    rep.counters["translation_length"] = c.translation_length
    tv = valuation.val(m.trace())
    rep.counters["trace_valuation"] = tv if tv != valuation.INF else "inf"
    return rep


def _bt_displace(args) -> Report:
    rep = Report("bt displace")
    m = parse_matrix(args.matrix, args.p)
    c = valuation.classify(m)
    base = valuation.base_vertex(args.p)
    d = valuation.min_displacement_on_ball(m, base, args.radius)
    rep.add_bool(
        "ball minimum vs translation length",
        d == c.translation_length,
        f"ball min {d}, -2v(tr) {c.translation_length} (radius {args.radius})",
    )
    rep.counters["ball_min"] = d
    rep.counters["translation_length"] = c.translation_length
    return rep


def _read(path: str) -> str:
    p = Path(path)
    if not p.exists():
        raise UsageError(f"no such file: {path}")
    return p.read_text()


def _load_chain(path: str) -> cosets.IndexChain:
    p = Path(path)
    if p.is_dir():
        blocks = sorted(q for q in p.iterdir() if q.suffix == ".txt")
        if not blocks:
            raise UsageError(f"no .txt group files in {path}")
        groups = []
        degree = None
        for q in blocks:
            text = q.read_text()
            if degree is not None and "degree" not in text:
                text = f"degree {degree}\n" + text
            g = cosets.parse_group_file(text)
            degree = g.degree
            groups.append(g)
        return cosets.IndexChain(groups)
    return cosets.parse_chain_file(_read(path))


def _chains_refine4(args) -> Report:
    rep = Report("chains refine4")
    g = cosets.parse_group_file(_read(args.group))
    h = cosets.parse_group_file(
        _read(args.subgroup) if "degree" in _read(args.subgroup)
        else f"degree {g.degree}\n" + _read(args.subgroup)
    )
    chain = cosets.refine_index4(g, h)
    rep.add_bool(
        "all step indices in {2, 3}",
        all(i in (2, 3) for i in chain.indices),
        f"steps {chain.indices}",
    )
    core = cosets.core(g, h)
    rep.add_bool("chain ends at the core", chain.subgroups[-1].elements() == core.elements())
    rep.counters["orders"] = [x.order() for x in chain.subgroups]
    return rep


def _chains_convert(args) -> Report:
    rep = Report("chains convert")
    chain = _load_chain(args.chain)
    if args.depth is not None:
        chain = cosets.IndexChain(chain.subgroups[: args.depth + 1])
    out = cosets.chain_4_to_3(chain)
    rep.add_bool("input steps <= 4", all(i <= 4 for i in chain.indices), f"{chain.indices}")
    rep.add_bool("output steps <= 3", all(i <= 3 for i in out.indices), f"{out.indices}")
    rep.add_bool(
        "terminal contained in original terminal",
        out.subgroups[-1].elements() <= chain.subgroups[-1].elements(),
    )
    rep.counters["input_indices"] = chain.indices
    rep.counters["output_indices"] = out.indices
    return rep


def _chains_tree(args) -> Report:
    rep = Report("chains tree")
    chain = _load_chain(args.chain)
    tree = cosets.build_coset_tree(chain, args.depth)
    degrees = tree.degrees()
    rep.add("tree built", "pass", f"{tree.node_count()} nodes")
    for l, degs in enumerate(degrees):
        rep.counters[f"level_{l}_degrees"] = sorted(set(degs))
        rep.counters[f"level_{l}_size"] = len(degs)
    kernel = cosets.kernel_at_depth(chain, args.depth)
    rep.add_bool(
        "kernel at full depth",
        True,
        f"order {kernel.order()} ({'faithful' if kernel.order() == 1 else 'not faithful'} at this truncation)",
    )
    rep.counters["kernel_order"] = kernel.order()
    return rep


def _raag_plan(args) -> Report:
    rep = Report("raag plan")
    g = raag.parse_graph(_read(args.graph))
    plan = raag.tree_count_plan(g)
    rep.add_bool("lower <= upper", plan.lower <= plan.upper, f"[{plan.lower}, {plan.upper}]")
    rep.add_bool(
        "coloring witness proper",
        raag.is_proper_coloring(g, plan.coloring),
        f"{plan.upper} colors",
    )
    if plan.odd_cycle is not None:
        rep.add_bool(
            "odd-cycle witness induced",
            raag.is_induced_cycle(g, plan.odd_cycle),
            f"length {len(plan.odd_cycle)}",
        )
    if plan.exact is not None:
        rep.add("exact tree count", "pass", str(plan.exact))
    else:
        rep.add("exact tree count", "skip", f"gap [{plan.lower}, {plan.upper}] not closed")
    rep.counters["lower"] = plan.lower
    rep.counters["upper"] = plan.upper
    rep.counters["exact"] = plan.exact if plan.exact is not None else "unknown"
    rep.counters["coloring"] = plan.coloring
    rep.counters["clique"] = plan.clique
    if plan.odd_cycle is not None:
        rep.counters["odd_cycle"] = plan.odd_cycle
    return rep


def _raag_embed(args) -> Report:
    rep = Report("raag embed")
    sub = raag.parse_graph(_read(args.sub))
    sup = raag.parse_graph(_read(args.sup))
    verdict = raag.embedding_obstruction(sub, sup)
    rep.add("obstruction", "pass", verdict)
    rep.counters["verdict"] = verdict
    return rep


def _bassserre_certify(args) -> Report:
    rep = Report("bassserre certify")
    if args.group == "f2byz":
        rep.merge_checks(bassserre.three_tree_certificate(args.maxlen))
    else:
        rep.merge_checks(bassserre.two_tree_certificate(args.maxlen))
    return rep


def _bassserre_word(args) -> Report:
    rep = Report("bassserre word")
    if args.group == "f2byz":
        items = bassserre.britton_reduce(args.word)
        kind, length = bassserre.hnn_translation_data(args.word)
        rep.add("britton normal form", "pass", bassserre.britton_word(items) or "(identity)")
        rep.add("tree action", "pass", f"{kind}" + (f", length {length}" if length else ""))
        rep.add("theta", "pass", str(bassserre.theta(args.word)))
        rep.add("phi", "pass", bassserre.phi(args.word).describe())
    else:
        nf = bassserre.amalgam_normal_form(args.word)
        kind, length = bassserre.amalgam_translation_data(args.word)
        desc = f"edge^{nf.edge_power} * " + (" . ".join(w for _, w in nf.syllables) or "1")
        rep.add("amalgam normal form", "pass", desc)
        rep.add("tree action", "pass", f"{kind}" + (f", length {length}" if length else ""))
        rep.add("free quotient", "pass", bassserre.free_quotient(args.word) or "(trivial)")
    return rep


HANDLERS = {
    ("surface", "verify"): _surface_verify,
    ("surface", "word"): _surface_word,
    ("surface", "appendix"): _surface_appendix,
    ("surface", "norelator"): _surface_norelator,
    ("bt", "classify"): _bt_classify,
    ("bt", "displace"): _bt_displace,
    ("chains", "refine4"): _chains_refine4,
    ("chains", "convert"): _chains_convert,
    ("chains", "tree"): _chains_tree,
    ("raag", "plan"): _raag_plan,
    ("raag", "embed"): _raag_embed,
    ("bassserre", "certify"): _bassserre_certify,
    ("bassserre", "word"): _bassserre_word,
}


def run(argv) -> tuple[int, Report | None]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return (2 if e.code not in (0, None) else 0), None
    handler = HANDLERS[(args.group, args.command)]
    try:
        report = handler(args)
    except (
        UsageError,
        algebra.ParseError,
        algebra.NotPrime,
        raag.ParseError,
        raag.LoopEdge,
        raag.DuplicateEdge,
        ValueError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2, None
    print(report.to_json() if args.json else report.to_text())
    return report.exit_code, report


def main(argv=None) -> int:
    code, _ = run(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
