"""Command-line surface.

Every command reads a concept class from a positional path ('-' or omitted
means stdin) except `gen`, which writes one.  Every output begins with a
`# seed=<seed>` header line; all emitted formats treat '#' as a comment, so
outputs round-trip through their parsers.  Exit codes: 0 all checks passed,
1 a verification check failed, 2 usage or input error, 3 a resource cap was
hit (the message names the limiting dimension).
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from .boosting import (
    boost_config,
    draw_patterns,
    format_boost_report,
    numeric_lemma_checks,
    run_expert_game,
    small_pop_err_check,
    smallest_separating_m0,
    verify_sspfcd_bound,
)
from .cliques import find_balanced_point, max_clique, tree_from_clique, clique_from_tree
from .concepts import (
    FAMILIES,
    format_class_text,
    generate,
    parse_class_text,
)
from .dimensions import (
    EXACT,
    check_inequalities,
    clique_dimension,
    dimension_report,
    fractional_clique_dimension,
    littlestone_dimension,
    littlestone_witness,
    vc_dimension,
    _graph,
    _omega_star_cert,
)
from .errors import CliquedimError, NoSeparationError, ResourceLimitError
from .fractional import (
    format_certificate,
    frac_str,
    validate_cover,
    validate_packing,
)
from .graph import Caps, export_edge_list, independent_sets, wl_fingerprint
from .trees import max_depth, parse_tree, serialize_tree


def corpus(seed: int = 0) -> list:
    """The default verification corpus: named deterministic classes spanning
    the full-power, separated, and degenerate regimes."""
    out = [
        ("singleton", generate("singleton", universe=2)),
        ("full-1", generate("full", universe=1)),
        ("full-2", generate("full", universe=2)),
        ("full-3", generate("full", universe=3)),
        ("thresholds-3", generate("thresholds", universe=3)),
        ("thresholds-4", generate("thresholds", universe=4)),
        ("thresholds-5", generate("thresholds", universe=5)),
        ("parities-3", generate("parities", universe=3)),
        ("disjoint_pairs", generate("disjoint_pairs", universe=2)),
        ("paper_example_sec6", generate("paper_example_sec6")),
    ]
    for i in range(10):
        universe = 3 if i % 2 == 0 else 4
        count = 2 + (i % 5)
        out.append(
            (f"random-{i}", generate("random", universe=universe, count=count, seed=seed + i))
        )
    return out


def _caps(args) -> Caps:
    return Caps(
        max_vertices=args.vertex_cap,
        max_pattern_universe=args.pattern_cap,
        node_budget=args.node_budget,
    )


def _load_class(path: str):
    if path in ("-", None):
        return parse_class_text(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as fh:
        return parse_class_text(fh.read())


def _header(args) -> str:
    return f"# seed={args.seed}"


# ─── command handlers: each returns (exit_code, output_text) ─────────────


def _cmd_gen(args):
    cls = generate(args.family, universe=args.universe, count=args.count, seed=args.seed)
    return 0, _header(args) + "\n" + format_class_text(cls)


def _cmd_graph(args):
    cls = _load_class(args.cls)
    caps = _caps(args)
    g = _graph(cls, args.m, caps)
    lines = [_header(args), export_edge_list(g, verbose=args.verbose).rstrip("\n")]
    if args.sets:
        fam = independent_sets(g, maximal_only=args.prune_nonmaximal, caps=caps)
        for pattern, mask in zip(fam.patterns, fam.masks):
            bits = "".join(str(b) for b in pattern)
            lines.append(f"s {bits} {mask.bit_count()}")
    if args.fingerprint:
        lines.append(f"fingerprint {wl_fingerprint(g)}")
    return 0, "\n".join(lines) + "\n"


def _cmd_omega(args):
    cls = _load_class(args.cls)
    caps = _caps(args)
    g = _graph(cls, args.m, caps)
    c = max_clique(g, caps)
    lines = [_header(args), f"omega={c.size}"]
    if args.verbose:
        lines.append("members=" + ",".join(str(i) for i in c.members))
        for i in c.members:
            lines.append(f"v {i} {g.vertices[i].render()}")
    return 0, "\n".join(lines) + "\n"


def _cmd_omega_star(args):
    cls = _load_class(args.cls)
    caps = _caps(args)
    cert = _omega_star_cert(cls, args.m, caps)
    if args.verbose:
        return 0, _header(args) + "\n" + format_certificate(cert)
    return 0, _header(args) + "\n" + frac_str(cert.value) + "\n"


def _cmd_vc(args):
    cls = _load_class(args.cls)
    return 0, _header(args) + f"\nvc={vc_dimension(cls)}\n"


def _cmd_ld(args):
    cls = _load_class(args.cls)
    d = littlestone_dimension(cls)
    if args.verbose and d > 0:
        # verbose output stays parseable as a mistake tree, value commented
        return 0, _header(args) + f"\n# ld={d}\n" + serialize_tree(littlestone_witness(cls))
    return 0, _header(args) + f"\nld={d}\n"


def _cmd_cd(args):
    cls = _load_class(args.cls)
    dv = clique_dimension(cls, args.m_max, _caps(args))
    return 0, _header(args) + f"\ncd{dv}\n"


def _cmd_cd_star(args):
    cls = _load_class(args.cls)
    dv = fractional_clique_dimension(cls, args.m_max, _caps(args))
    return 0, _header(args) + f"\ncd_star{dv}\n"


def _cmd_balanced(args):
    cls = _load_class(args.cls)
    caps = _caps(args)
    g = _graph(cls, args.m, caps)
    rep = find_balanced_point(g, max_clique(g, caps))
    lines = [
        _header(args),
        f"point={rep.point}",
        f"count_zero={rep.count_zero}",
        f"count_one={rep.count_one}",
        f"threshold={frac_str(rep.threshold)}",
        f"clique_size={rep.clique_size}",
        f"iterations={rep.iterations}",
        f"deletions={rep.deletions}",
        f"edges_dropped={rep.edges_dropped}",
        f"surviving_edges={rep.surviving_edges}",
    ]
    return 0, "\n".join(lines) + "\n"


def _cmd_tree_from_clique(args):
    cls = _load_class(args.cls)
    caps = _caps(args)
    g = _graph(cls, args.m, caps)
    tree = tree_from_clique(g, max_clique(g, caps))
    return 0, _header(args) + "\n" + serialize_tree(tree)


def _cmd_clique_from_tree(args):
    cls = _load_class(args.cls)
    caps = _caps(args)
    with open(args.tree, "r", encoding="utf-8") as fh:
        tree = parse_tree(fh.read())
    g = _graph(cls, max_depth(tree), caps)
    c = clique_from_tree(g, tree)
    lines = [
        _header(args),
        f"size={c.size}",
        "members=" + ",".join(str(i) for i in c.members),
    ]
    return 0, "\n".join(lines) + "\n"


def _cmd_boost(args):
    cls = _load_class(args.cls)
    caps = _caps(args)
    m0 = args.m0 if args.m0 is not None else smallest_separating_m0(cls, caps)
    gamma = Fraction(args.gamma) if args.gamma else None
    try:
        config = boost_config(cls, m0, args.m, gamma, caps)
    except NoSeparationError:
        text = _header(args) + f"\nSKIP no separation at m0={m0}\n"
        return 0, text
    report = verify_sspfcd_bound(
        cls, config, trials=args.trials, master_seed=args.seed, caps=caps
    )
    text = _header(args) + "\n" + format_boost_report(report)
    if args.shadow:
        g = _graph(cls, config.m, caps)
        rng = random.Random(args.seed)
        tr = run_expert_game(
            g.vertices[0],
            draw_patterns(config.mu, config.T, rng),
            eta=config.eta,
            shadow=True,
        )
        text += (
            f"shadow S={g.vertices[0].render()} regret={float(tr.shadow_regret):.6f} "
            f"bound={tr.regret_bound:.6f} certified={tr.shadow_certified}\n"
        )
    return (0 if report.all_pass else 1), text


def _check_lines(checks: list) -> tuple:
    lines = []
    failures = 0
    for name, passed, detail in checks:
        status = "PASS" if passed else "FAIL"
        failures += 0 if passed else 1
        lines.append(f"{status} {name} {detail}".rstrip())
    return lines, failures


def _cmd_verify_lemmas(args):
    caps = _caps(args)
    checks = []
    for name, cls in corpus(args.seed):
        report = dimension_report(cls, m_max_clique=4, m_max_lp=3, caps=caps)
        for cname, passed, detail in check_inequalities(report):
            checks.append((f"{name}:{cname}", passed, detail))
        for m in range(1, 4):
            cert = _omega_star_cert(cls, m, caps)
            validate_packing(_graph(cls, m, caps), cert.clique, caps)
            validate_cover(_graph(cls, m, caps), cert.coloring)
            checks.append(
                (
                    f"{name}:duality@m={m}",
                    cert.clique.size == cert.coloring.colors == cert.value,
                    f"value={frac_str(cert.value)}",
                )
            )
        for m in range(1, 3):
            g = _graph(cls, m, caps)
            cert = _omega_star_cert(cls, m, caps)
            for v in g.vertices:
                dist = {}
                for ex in v:
                    key = (ex.point, ex.label)
                    dist[key] = dist.get(key, Fraction(0)) + Fraction(1, m)
                rows = small_pop_err_check(cls, m, dist, caps=caps, cert=cert)
                bad = [r for r in rows if not r[3]]
                checks.append(
                    (
                        f"{name}:small_pop_err@m={m}:{v.render()}",
                        not bad,
                        f"{len(rows)} thetas",
                    )
                )
    checks.extend(numeric_lemma_checks())
    lines, failures = _check_lines(checks)
    lines.insert(0, _header(args))
    lines.append(f"summary: {len(checks)} checks, {failures} failures")
    return (1 if failures else 0), "\n".join(lines) + "\n"


def _cmd_verify_dichotomy(args):
    caps = _caps(args)
    checks = []
    for name, cls in corpus(args.seed):
        report = dimension_report(cls, m_max_clique=4, m_max_lp=3, caps=caps)
        ld = report.ld
        for row in report.rows:
            if row.omega is not None and row.omega_exact and ld < row.m:
                bound = (2 * row.m + 1) ** ld
                checks.append(
                    (
                        f"{name}:poly-cap@m={row.m}",
                        row.omega <= bound,
                        f"omega={row.omega} (2m+1)^ld={bound}",
                    )
                )
        first_sep = None
        for row in report.rows:
            if row.omega_star is None:
                continue
            if first_sep is None and row.omega_star < row.two_pow_m:
                first_sep = row.m
            elif first_sep is not None:
                checks.append(
                    (
                        f"{name}:star-separated@m={row.m}",
                        row.omega_star < row.two_pow_m,
                        f"omega*={frac_str(row.omega_star)} 2^m={row.two_pow_m} "
                        f"first separation at m={first_sep}",
                    )
                )
    lines, failures = _check_lines(checks)
    lines.insert(0, _header(args))
    lines.append(f"summary: {len(checks)} checks, {failures} failures")
    return (1 if failures else 0), "\n".join(lines) + "\n"


def _cmd_curves(args):
    cls = _load_class(args.cls)
    caps = _caps(args)
    if args.m_max is not None:
        mc, ml = args.m_max, args.m_max
    else:
        mc, ml = 4, 3
    report = dimension_report(cls, m_max_clique=mc, m_max_lp=ml, caps=caps)
    lines = [
        _header(args),
        "m,num_vertices,omega,omega_exact,omega_star_num,omega_star_den,two_pow_m",
    ]
    for row in report.rows:
        omega = "" if row.omega is None else str(row.omega)
        exact = "" if row.omega_exact is None else ("true" if row.omega_exact else "false")
        num = "" if row.omega_star is None else str(row.omega_star.numerator)
        den = "" if row.omega_star is None else str(row.omega_star.denominator)
        lines.append(
            f"{row.m},{row.num_vertices},{omega},{exact},{num},{den},{row.two_pow_m}"
        )
    lines.append(f"# vc={report.vc}")
    lines.append(f"# ld={report.ld}")
    lines.append(f"# cd{report.cd}")
    lines.append(f"# cd_star{report.cd_star}")
    return 0, "\n".join(lines) + "\n"


HANDLERS = {
    "gen": _cmd_gen,
    "graph": _cmd_graph,
    "omega": _cmd_omega,
    "omega-star": _cmd_omega_star,
    "vc": _cmd_vc,
    "ld": _cmd_ld,
    "cd": _cmd_cd,
    "cd-star": _cmd_cd_star,
    "balanced": _cmd_balanced,
    "tree-from-clique": _cmd_tree_from_clique,
    "clique-from-tree": _cmd_clique_from_tree,
    "boost": _cmd_boost,
    "verify-lemmas": _cmd_verify_lemmas,
    "verify-dichotomy": _cmd_verify_dichotomy,
    "curves": _cmd_curves,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master seed, echoed in output")
    common.add_argument("--out", default=None, help="write output to this path instead of stdout")
    common.add_argument("--verbose", action="store_true")
    common.add_argument("--vertex-cap", type=int, default=10**6)
    common.add_argument("--pattern-cap", type=int, default=20)
    common.add_argument("--node-budget", type=int, default=10**8)
    common.add_argument(
        "--single-worker",
        action="store_true",
        help="pin single-threaded execution (the default engine already is; "
        "the flag additionally guarantees byte-stable clique membership)",
    )

    cls_arg = argparse.ArgumentParser(add_help=False)
    cls_arg.add_argument(
        "cls", nargs="?", default="-", metavar="CLASS",
        help="class text file ('-' or omitted: stdin)",
    )

    p = argparse.ArgumentParser(prog="cliquedim", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("gen", parents=[common], help="emit a generated concept class")
    sp.add_argument("family", choices=FAMILIES)
    sp.add_argument("--universe", type=int, default=2)
    sp.add_argument("--count", type=int, default=4, help="rows for the random family")

    sp = sub.add_parser("graph", parents=[common, cls_arg], help="emit the contradiction graph edge list")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--sets", action="store_true", help="also list consistency-set sizes")
    sp.add_argument(
        "--prune-nonmaximal", action="store_true",
        help="restrict --sets to inclusion-maximal consistency sets",
    )
    sp.add_argument("--fingerprint", action="store_true", help="append an isomorphism fingerprint")

    sp = sub.add_parser("omega", parents=[common, cls_arg], help="exact clique number of G_m")
    sp.add_argument("--m", type=int, required=True)

    sp = sub.add_parser("omega-star", parents=[common, cls_arg], help="exact fractional clique number of G_m")
    sp.add_argument("--m", type=int, required=True)

    sub.add_parser("vc", parents=[common, cls_arg], help="VC dimension")
    sub.add_parser("ld", parents=[common, cls_arg], help="mistake-bound (Littlestone) dimension")

    sp = sub.add_parser("cd", parents=[common, cls_arg], help="clique dimension with exactness flag")
    sp.add_argument("--m-max", type=int, default=4)

    sp = sub.add_parser("cd-star", parents=[common, cls_arg], help="fractional clique dimension with exactness flag")
    sp.add_argument("--m-max", type=int, default=3)

    sp = sub.add_parser("balanced", parents=[common, cls_arg], help="balanced point of the maximum clique of G_m")
    sp.add_argument("--m", type=int, required=True)

    sp = sub.add_parser("tree-from-clique", parents=[common, cls_arg], help="mistake tree extracted from the maximum clique of G_m")
    sp.add_argument("--m", type=int, required=True)

    sp = sub.add_parser("clique-from-tree", parents=[common, cls_arg], help="clique of G_depth from a complete shattered tree")
    sp.add_argument("--tree", required=True, help="mistake-tree text file")

    sp = sub.add_parser("boost", parents=[common, cls_arg], help="boosting pipeline consistency verification")
    sp.add_argument("--m0", type=int, default=None, help="anchor length (default: smallest separating)")
    sp.add_argument("--m", type=int, default=3, help="target dataset length")
    sp.add_argument("--gamma", default=None, help="margin as num/den (default epsilon/4)")
    sp.add_argument("--trials", type=int, default=10**5)
    sp.add_argument("--shadow", action="store_true", help="append one rational-shadow transcript check")

    sub.add_parser("verify-lemmas", parents=[common], help="inequality/duality/quantile/numeric checks over the corpus")
    sub.add_parser("verify-dichotomy", parents=[common], help="desk-scale dichotomy scans over the corpus")

    sp = sub.add_parser("curves", parents=[common, cls_arg], help="per-m omega/omega*/2^m table as CSV")
    sp.add_argument("--m-max", type=int, default=None, help="horizon for both engines (default 4 clique / 3 LP)")

    return p


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        code, text = HANDLERS[args.command](args)
    except ResourceLimitError as exc:
        print(str(exc), file=sys.stderr)
        return 3
    except (CliquedimError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
