"""Command-line entry point.

Subcommands: ``stats``, ``baseline``, ``richclub``, ``communities``,
``hemicycle``, and ``report`` (the full pipeline).  Every numeric value in
any emitted file comes from exactly one library call; the CLI only parses
arguments, orchestrates, and serializes.

Exit codes: 0 success, 1 analysis error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import community, ensemble, hemicycle, metrics, report, richclub
from ._version import __version__
from .errors import GraphAnalysisError
from .graph import Graph, load_graph

ALGORITHM_NAMES = {"fg": "fast-greedy", "fast-greedy": "fast-greedy", "spectral": "spectral", "walktrap": "walktrap"}


def _add_input_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("edgelist", help="edge-list file (label<sep>label per line; '#' comments)")
    parser.add_argument("--registry", help="vertex registry file (declares isolated vertices)")


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", metavar="PATH", help="write the result document as JSON")
    parser.add_argument("--quiet", action="store_true", help="suppress the stdout summary")
    parser.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    parser.add_argument("--threads", type=int, default=1, help="worker threads where supported")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="densegraph", description=__doc__)
    parser.add_argument("--version", action="version", version=f"densegraph {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_stats = sub.add_parser("stats", help="structural indices of a graph")
    _add_input_arguments(p_stats)
    _add_common_arguments(p_stats)
    p_stats.add_argument("--table", action="store_true", help="print an aligned index table")

    p_base = sub.add_parser("baseline", help="random-graph ensemble baseline")
    _add_common_arguments(p_base)
    p_base.add_argument("--n", type=int, help="vertex count")
    p_base.add_argument("--p", type=float, help="edge probability")
    p_base.add_argument("--match", metavar="EDGELIST", help="take n and p from this graph")
    p_base.add_argument("--registry", help="registry for --match")
    p_base.add_argument("--samples", type=int, default=10000, help="ensemble size (default 10000)")
    p_base.add_argument(
        "--connected-only",
        action="store_true",
        help="drop disconnected samples from the statistics",
    )

    p_rich = sub.add_parser("richclub", help="degree-ordered density profile and club detection")
    _add_input_arguments(p_rich)
    _add_common_arguments(p_rich)
    p_rich.add_argument("--tau", type=float, default=0.95, help="density threshold (default 0.95)")
    p_rich.add_argument("--rmin", type=int, default=3, help="minimum club size (default 3)")
    p_rich.add_argument("--profile-csv", metavar="PATH", help="write the profile as CSV")
    p_rich.add_argument(
        "--centrality-csv", metavar="PATH", help="write the centrality-by-degree table as CSV"
    )

    p_comm = sub.add_parser("communities", help="three-way partition and stable communities")
    _add_input_arguments(p_comm)
    _add_common_arguments(p_comm)
    p_comm.add_argument(
        "--exclude-richclub",
        action="store_true",
        help="detect the rich club first and partition the remainder",
    )
    p_comm.add_argument("--tau", type=float, default=0.95, help="club threshold for --exclude-richclub")
    p_comm.add_argument("--rmin", type=int, default=3, help="club minimum size for --exclude-richclub")
    p_comm.add_argument(
        "--algorithms",
        default="fg,spectral,walktrap",
        help="comma list from fg,spectral,walktrap (default all)",
    )
    p_comm.add_argument("--t", type=int, default=4, help="walk length (default 4)")
    p_comm.add_argument("--kmax", type=int, help="max clusters per component for spectral")
    p_comm.add_argument("--restarts", type=int, default=16, help="k-means restarts (default 16)")
    p_comm.add_argument("--smin", type=int, default=3, help="minimum stable-community size (default 3)")
    p_comm.add_argument("--dot", metavar="PATH", help="write the modular summary graph as DOT")

    p_hemi = sub.add_parser("hemicycle", help="polar layout around a central club")
    _add_input_arguments(p_hemi)
    _add_common_arguments(p_hemi)
    p_hemi.add_argument(
        "--club",
        default="auto",
        help="comma-separated club labels, or 'auto' to detect (default auto)",
    )
    p_hemi.add_argument("--tau", type=float, default=0.95, help="club threshold for auto detection")
    p_hemi.add_argument("--rmin", type=int, default=3, help="club minimum size for auto detection")
    p_hemi.add_argument(
        "--closed-neighborhoods",
        action="store_true",
        help="count each vertex inside its own neighborhood",
    )
    p_hemi.add_argument("--svg", metavar="PATH", help="write the layout as SVG")

    p_rep = sub.add_parser("report", help="full pipeline: stats, baseline, richclub, communities, hemicycle")
    _add_input_arguments(p_rep)
    _add_common_arguments(p_rep)
    p_rep.add_argument("--outdir", default="densegraph-report", help="output directory")
    p_rep.add_argument("--samples", type=int, default=10000, help="baseline ensemble size")
    p_rep.add_argument("--tau", type=float, default=0.95)
    p_rep.add_argument("--rmin", type=int, default=3)
    p_rep.add_argument("--t", type=int, default=4)
    p_rep.add_argument("--kmax", type=int)
    p_rep.add_argument("--restarts", type=int, default=16)
    p_rep.add_argument("--smin", type=int, default=3)
    p_rep.add_argument("--closed-neighborhoods", action="store_true")
    return parser


def _load(args) -> tuple[Graph, dict]:
    graph = load_graph(args.edgelist, args.registry)
    info = {"path": args.edgelist, "sha256": report.file_digest(args.edgelist)}
    return graph, info


def _write(path: str, text: str) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(text, encoding="utf-8")


def _emit(args, doc: dict, summary_lines: list[str]) -> None:
    if args.json:
        _write(args.json, report.dump_json(doc))
    if not args.quiet:
        for line in summary_lines:
            print(line)


def _detect_club(graph: Graph, tau: float, rmin: int) -> richclub.RichClubResult:
    profile = richclub.rich_club_profile(graph)
    result = richclub.detect_rich_club(profile, threshold=tau, min_size=rmin)
    if result is None:
        raise GraphAnalysisError(f"no rich club at threshold {tau} (min size {rmin})")
    return result


def _cmd_stats(args) -> int:
    graph, info = _load(args)
    indices = metrics.structural_summary(graph)
    doc = report.document(
        "stats", {"seed": args.seed, "threads": args.threads}, report.indices_payload(indices), info
    )
    lines = [f"{graph!r}: density {indices.density:.4f}, mean degree {indices.mean_degree:.2f}"]
    if args.table:
        lines.append(report.indices_table(indices).rstrip("\n"))
    _emit(args, doc, lines)
    return 0


def _cmd_baseline(args) -> int:
    real_payload = None
    info = None
    if args.match:
        graph = load_graph(args.match, args.registry)
        info = {"path": args.match, "sha256": report.file_digest(args.match)}
        n = graph.vertex_count
        p = metrics.density(graph)
        real_payload = report.indices_payload(metrics.structural_summary(graph))
    elif args.n is not None and args.p is not None:
        n, p = args.n, args.p
    else:
        raise GraphAnalysisError("baseline needs either --match or both --n and --p")
    params = ensemble.ErParams(vertex_count=n, edge_probability=p, samples=args.samples, seed=args.seed)
    summary = ensemble.ensemble_summary(params, threads=args.threads, connected_only=args.connected_only)
    result = {"ensemble": report.ensemble_payload(summary), "real": real_payload}
    doc = report.document(
        "baseline",
        {
            "n": n,
            "p": p,
            "samples": args.samples,
            "seed": args.seed,
            "threads": args.threads,
            "connected_only": args.connected_only,
        },
        result,
        info,
    )
    lines = [
        f"ensemble G({n}, {p:.4f}) x {args.samples}: "
        f"mean distance {summary.mean('mean_distance'):.4f}, "
        f"diameter {summary.mean('diameter'):.3f}, "
        f"disconnected {summary.disconnected_count}"
    ]
    _emit(args, doc, lines)
    return 0


def _cmd_richclub(args) -> int:
    graph, info = _load(args)
    profile = richclub.rich_club_profile(graph)
    result = richclub.detect_rich_club(profile, threshold=args.tau, min_size=args.rmin)
    doc = report.document(
        "richclub",
        {"tau": args.tau, "rmin": args.rmin, "seed": args.seed},
        report.richclub_payload(profile, result),
        info,
    )
    if args.profile_csv:
        _write(args.profile_csv, report.profile_csv(profile))
    if args.centrality_csv:
        _write(args.centrality_csv, report.centrality_csv(richclub.centrality_by_degree_report(graph)))
    if result is None:
        lines = [f"no rich club at threshold {args.tau}"]
    else:
        lines = [
            f"rich club of {result.size}: {' '.join(result.members)} "
            f"(density {result.internal_density:.4f}, {result.missing_edges} missing edges)"
        ]
    _emit(args, doc, lines)
    return 0


def _parse_algorithms(spec: str) -> list[str]:
    names = []
    for token in spec.split(","):
        token = token.strip()
        if not token:
            continue
        if token not in ALGORITHM_NAMES:
            raise GraphAnalysisError(f"unknown algorithm {token!r} (choose from fg, spectral, walktrap)")
        name = ALGORITHM_NAMES[token]
        if name not in names:
            names.append(name)
    if not names:
        raise GraphAnalysisError("no algorithms selected")
    return names


def _cmd_communities(args) -> int:
    graph, info = _load(args)
    algorithms = _parse_algorithms(args.algorithms)
    excluded: tuple[str, ...] = ()
    if args.exclude_richclub:
        excluded = _detect_club(graph, args.tau, args.rmin).members
    analysis = community.remove_and_partition(
        graph,
        excluded,
        algorithms=algorithms,
        steps=args.t,
        kmax=args.kmax,
        restarts=args.restarts,
        seed=args.seed,
        min_size=args.smin,
    )
    doc = report.document(
        "communities",
        {
            "exclude_richclub": args.exclude_richclub,
            "tau": args.tau,
            "rmin": args.rmin,
            "algorithms": algorithms,
            "t": args.t,
            "kmax": args.kmax,
            "restarts": args.restarts,
            "smin": args.smin,
            "seed": args.seed,
        },
        report.communities_payload(analysis),
        info,
    )
    if args.dot:
        dot_source = analysis.summaries[algorithms[0]]
        _write(args.dot, report.export_dot(dot_source))
    lines = []
    for name in algorithms:
        partition = analysis.partitions[name]
        lines.append(f"{name}: {len(partition)} classes, modularity {partition.modularity:.4f}")
    if analysis.stable is not None:
        sizes = [len(group) for group in analysis.stable]
        lines.append(f"stable communities (size >= {args.smin}): {sizes}")
    _emit(args, doc, lines)
    return 0


def _cmd_hemicycle(args) -> int:
    graph, info = _load(args)
    if args.club == "auto":
        club = _detect_club(graph, args.tau, args.rmin).members
    else:
        club = tuple(label.strip() for label in args.club.split(",") if label.strip())
    layout = hemicycle.hemicycle_layout(graph, club, closed_neighborhoods=args.closed_neighborhoods)
    doc = report.document(
        "hemicycle",
        {
            "club": list(club),
            "auto_club": args.club == "auto",
            "tau": args.tau,
            "rmin": args.rmin,
            "closed_neighborhoods": args.closed_neighborhoods,
            "seed": args.seed,
        },
        report.layout_payload(layout),
        info,
    )
    if args.svg:
        _write(args.svg, report.export_svg(layout))
    lines = [
        f"placed {len(layout.placements)} vertices around a club of {len(layout.club)}; "
        f"first-component/club-distance correlation {layout.diagnostic_correlation:.3f}"
    ]
    _emit(args, doc, lines)
    return 0


def _cmd_report(args) -> int:
    graph, info = _load(args)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    indices = metrics.structural_summary(graph)
    params = ensemble.ErParams(
        vertex_count=graph.vertex_count,
        edge_probability=indices.density,
        samples=args.samples,
        seed=args.seed,
    )
    baseline = ensemble.ensemble_summary(params, threads=args.threads)
    profile = richclub.rich_club_profile(graph)
    club = richclub.detect_rich_club(profile, threshold=args.tau, min_size=args.rmin)
    analysis = community.remove_and_partition(
        graph,
        club.members if club else (),
        steps=args.t,
        kmax=args.kmax,
        restarts=args.restarts,
        seed=args.seed,
        min_size=args.smin,
    )
    club_members = club.members if club else tuple()
    layout = None
    if club_members:
        layout = hemicycle.hemicycle_layout(
            graph, club_members, closed_neighborhoods=args.closed_neighborhoods
        )

    parameters = {
        "samples": args.samples,
        "tau": args.tau,
        "rmin": args.rmin,
        "t": args.t,
        "kmax": args.kmax,
        "restarts": args.restarts,
        "smin": args.smin,
        "closed_neighborhoods": args.closed_neighborhoods,
        "seed": args.seed,
        "threads": args.threads,
    }
    result = {
        "stats": report.indices_payload(indices),
        "baseline": {"ensemble": report.ensemble_payload(baseline), "real": None},
        "richclub": report.richclub_payload(profile, club),
        "communities": report.communities_payload(analysis),
        "hemicycle": report.layout_payload(layout) if layout else None,
    }
    doc = report.document("report", parameters, result, info)
    _write(str(outdir / "report.json"), report.dump_json(doc))
    _write(str(outdir / "richclub_profile.csv"), report.profile_csv(profile))
    _write(
        str(outdir / "centrality_by_degree.csv"),
        report.centrality_csv(richclub.centrality_by_degree_report(graph)),
    )
    first_method = next(iter(analysis.summaries))
    _write(str(outdir / "communities.dot"), report.export_dot(analysis.summaries[first_method]))
    if layout:
        _write(str(outdir / "hemicycle.svg"), report.export_svg(layout))
    if not args.quiet:
        print(f"report written to {outdir}/")
    return 0


_HANDLERS = {
    "stats": _cmd_stats,
    "baseline": _cmd_baseline,
    "richclub": _cmd_richclub,
    "communities": _cmd_communities,
    "hemicycle": _cmd_hemicycle,
    "report": _cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except GraphAnalysisError as exc:
        print(f"densegraph {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
