"""Command-line interface.

Subcommands cover graph inspection and generation, spectra, the
eigenvalue and eigengap bounds, the bound-comparison table, region
classification, spectral clustering, crossover detection, the
polynomial spectrum map, the Weyl interval check, figure-ready plot
data, and the degree-extreme sweep over the C(k) family.

Exit status: 0 on success, 2 on usage errors, 1 on domain errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from decimal import ROUND_HALF_UP, Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import Optional

import numpy as np

from .bounds import (
    DEFAULT_CROSSOVER_TOL,
    DEFAULT_MERGE_TOL,
    MatrixPair,
    classify_region,
    detect_maximal_crossover,
    eigenvalue_bound_set,
    gap_bound_set,
    gap_differences,
    pair_differences,
    polynomial_spectrum_map,
    weyl_check,
)
from .clustering import DEFAULT_RESTARTS, DEFAULT_SEED, cluster, compare_clusterings
from .data import load_truth_labels
from .graphs import (
    DegreeSummary,
    Graph,
    class_tag,
    connected_components,
    degree_summary,
    gen_bipartite_b,
    gen_complete,
    gen_graph_c,
    gen_star,
    load_edge_list,
    load_pajek,
)
from .spectra import (
    EigensolverError,
    RepresentationKind,
    normalized_eigengaps,
    spectrum,
)

_KINDS = {"A": RepresentationKind.ADJACENCY,
          "L": RepresentationKind.LAPLACIAN,
          "Lrw": RepresentationKind.NORMALIZED_LAPLACIAN}


def _load_graph(path: str, input_format: str) -> Graph:
    text = Path(path).read_text()
    if input_format == "pajek" or (input_format == "auto" and path.endswith(".net")):
        return load_pajek(text)
    return load_edge_list(text)


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _jsonable(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serialisable: {type(obj)!r}")


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2, default=_jsonable))


def _round2(fr: Fraction) -> str:
    """Two-decimal half-up rendering with trailing zeros stripped, as printed."""
    with localcontext() as ctx:
        ctx.prec = 50
        dec = Decimal(fr.numerator) / Decimal(fr.denominator)
    return format(dec.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP).normalize(), "f")


def bound_table_cell(j: int, k: int) -> str:
    """Rendered bound triple (e(A,L), e(L,Lrw), e(A,Lrw)) for the class (j, k)."""
    if j > k:
        return "*"
    e_al = Fraction(k - j, 2)
    if j == 0:
        return f"({_round2(e_al)}, ·, ·)"
    e_llrw = Fraction(2 * (k - j), k + j)
    e_alrw = Fraction(3 * (k - j), k + j)
    return f"({_round2(e_al)}, {_round2(e_llrw)}, {_round2(e_alrw)})"


def _fmt_e(value: Optional[float]) -> str:
    return "·" if value is None else f"{value:.2f}"


def _csv_float(x: float) -> str:
    return f"{x:.17g}"


# ---------------------------------------------------------------- handlers


def _cmd_info(args) -> int:
    g = _load_graph(args.file, args.input_format)
    ds = degree_summary(g)
    out = {
        "n": g.n,
        "d_min": float(ds.d_min),
        "d_max": float(ds.d_max),
        "component_count": connected_components(g).component_count,
        "rescaled": g.rescaled,
    }
    try:
        tag = class_tag(ds)
        info = classify_region(ds)
        out["class"] = {"j": tag.j, "k": tag.k}
        out["region"] = info.region.value
        out["ordering"] = info.ordering
    except ValueError:
        out["class"] = out["region"] = out["ordering"] = None
    _print_json(out)
    return 0


def _write_edge_list(g: Graph) -> str:
    base = g.index_base
    lines = [f"nodes {g.n} base {base}"]
    for u in range(g.n):
        for v in range(u + 1, g.n):
            w = g.weights[u, v]
            if w:
                suffix = "" if w == 1.0 else f" {_csv_float(w)}"
                lines.append(f"{u + base} {v + base}{suffix}")
    return "\n".join(lines) + "\n"


def _cmd_gen(args) -> int:
    if args.kind == "bipartiteb":
        if args.size is not None:
            raise ValueError("bipartiteb does not take a size")
        g = gen_bipartite_b()
    else:
        if args.size is None:
            raise ValueError(f"gen {args.kind} needs a size argument")
        g = {"star": gen_star, "complete": gen_complete, "graphc": gen_graph_c}[args.kind](args.size)
    _emit(_write_edge_list(g), args.output)
    return 0


def _cmd_spectra(args) -> int:
    g = _load_graph(args.file, args.input_format)
    spec = spectrum(g, _KINDS[args.kind])
    if args.format == "json":
        payload = {
            "kind": spec.kind.value,
            "values": [float(v) for v in spec.values],
            "support": [spec.support[0], spec.support[1]],
            "support_length": spec.support_length,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
    else:
        rows = ["index,value"]
        rows += [f"{i},{_csv_float(v)}" for i, v in enumerate(spec.values, start=1)]
        _emit("\n".join(rows) + "\n", args.output)
    return 0


def _pair_summary(pair: MatrixPair, g: Graph) -> dict:
    diffs = pair_differences(pair, g)
    return {
        "bound": diffs.bound,
        "max_abs_delta": float(np.abs(diffs.deltas).max(initial=0.0)),
        "within_bound": diffs.within_bound,
    }


def _cmd_bounds(args) -> int:
    g = _load_graph(args.file, args.input_format)
    ds = degree_summary(g)
    bounds = eigenvalue_bound_set(ds)
    lrw_defined = bounds.e_llrw is not None
    pairs = {"A_L": _pair_summary(MatrixPair.A_L, g)}
    pairs["L_Lrw"] = _pair_summary(MatrixPair.L_LRW, g) if lrw_defined else None
    pairs["A_Lrw"] = _pair_summary(MatrixPair.A_LRW, g) if lrw_defined else None
    _print_json({
        "d_min": float(ds.d_min),
        "d_max": float(ds.d_max),
        "bounds": {
            "e_AL": bounds.e_al,
            "e_LLrw": bounds.e_llrw,
            "e_ALrw": bounds.e_alrw,
            "e_prime_ALrw": bounds.e_prime_alrw,
        },
        "rendered": f"({_fmt_e(bounds.e_al)}, {_fmt_e(bounds.e_llrw)}, {_fmt_e(bounds.e_alrw)})",
        "pairs": pairs,
    })
    return 0


def _gap_summary(pair: MatrixPair, g: Graph) -> dict:
    gd = gap_differences(pair, g)
    out = {
        "bound": gd.bound,
        "max_gap_difference": float(gd.diffs.max(initial=0.0)),
        "within_bound": gd.within_bound,
    }
    if gd.primed_diffs is not None:
        out["primed_bound"] = gd.primed_bound
        out["max_primed_difference"] = float(gd.primed_diffs.max(initial=0.0))
        out["primed_within_bound"] = gd.primed_within
    return out


def _cmd_gaps(args) -> int:
    g = _load_graph(args.file, args.input_format)
    ds = degree_summary(g)
    gaps = gap_bound_set(ds)
    lrw_defined = gaps.g_llrw is not None
    pairs = {"A_L": _gap_summary(MatrixPair.A_L, g)}
    pairs["L_Lrw"] = _gap_summary(MatrixPair.L_LRW, g) if lrw_defined else None
    pairs["A_Lrw"] = _gap_summary(MatrixPair.A_LRW, g) if lrw_defined else None
    _print_json({
        "d_min": float(ds.d_min),
        "d_max": float(ds.d_max),
        "gap_bounds": {
            "g_AL": gaps.g_al,
            "g_LLrw": gaps.g_llrw,
            "g_prime_LLrw": gaps.g_prime_llrw,
            "g_ALrw": gaps.g_alrw,
            "g_prime_ALrw": gaps.g_prime_alrw,
        },
        "pairs": pairs,
    })
    return 0


def _cmd_table(args) -> int:
    if args.dmin_max < 0 or args.dmax_max < 1:
        raise ValueError("table needs --dmin-max >= 0 and --dmax-max >= 1")
    dmins = range(0, args.dmin_max + 1)
    dmaxs = range(1, args.dmax_max + 1)
    if args.json:
        cells = []
        for k in dmaxs:
            for j in dmins:
                if j > k:
                    continue
                ds = DegreeSummary(degrees=np.array([float(j), float(k)]),
                                   d_min=float(j), d_max=float(k))
                bounds = eigenvalue_bound_set(ds)
                cells.append({
                    "d_min": j,
                    "d_max": k,
                    "e_AL": bounds.e_al,
                    "e_LLrw": bounds.e_llrw,
                    "e_ALrw": bounds.e_alrw,
                    "rendered": bound_table_cell(j, k),
                })
        _print_json({"cells": cells})
        return 0
    grid = [[bound_table_cell(j, k) for j in dmins] for k in dmaxs]
    widths = [max(len(grid[r][c]) for r in range(len(grid))) for c in range(len(dmins))]
    widths = [max(w, len(str(j))) for w, j in zip(widths, dmins)]
    head = "d_max \\ d_min  " + "  ".join(str(j).ljust(w) for j, w in zip(dmins, widths))
    print(head)
    for k, row in zip(dmaxs, grid):
        print(f"{k:>13}  " + "  ".join(cell.ljust(w) for cell, w in zip(row, widths)))
    return 0


def _cmd_region(args) -> int:
    if args.file is not None:
        ds = degree_summary(_load_graph(args.file, args.input_format))
    elif args.dmin is not None and args.dmax is not None:
        ds = DegreeSummary(degrees=np.array([float(args.dmin), float(args.dmax)]),
                           d_min=float(args.dmin), d_max=float(args.dmax))
    else:
        print("error: region needs a FILE or both --dmin and --dmax", file=sys.stderr)
        return 2
    info = classify_region(ds)
    _print_json({
        "d_min": float(ds.d_min),
        "d_max": float(ds.d_max),
        "region": info.region.value,
        "ordering": info.ordering,
    })
    return 0


def _cmd_cluster(args) -> int:
    g = _load_graph(args.file, args.input_format)
    result = cluster(g, _KINDS[args.kind], args.k, restarts=args.restarts, seed=args.seed)
    out = {
        "n": g.n,
        "kind": args.kind,
        "k": args.k,
        "seed": args.seed,
        "restarts": args.restarts,
        "vertex_ids": [v + g.index_base for v in range(g.n)],
        "labels": result.labels.tolist(),
        "inertia": result.inertia,
        "empty_clusters": list(result.empty_clusters),
    }
    if args.truth:
        truth = load_truth_labels(Path(args.truth).read_text(), g.n, index_base=g.index_base)
        comparison = compare_clusterings(result, truth)
        out["comparison"] = {
            "misplaced": comparison.misplaced,
            "misplaced_ids": list(comparison.misplaced_ids),
        }
    _print_json(out)
    return 0


def _cmd_crossover(args) -> int:
    g = _load_graph(args.file, args.input_format)
    diffs = pair_differences(MatrixPair(args.pair), g)
    report = detect_maximal_crossover(diffs.deltas, diffs.bound, tol=args.tol)
    _print_json({
        "pair": args.pair,
        "bound": report.bound,
        "tolerance": report.tolerance,
        "indices": list(report.indices),
    })
    return 0


def _cmd_polymap(args) -> int:
    g = _load_graph(args.file, args.input_format)
    pair = MatrixPair(args.pair)
    src_kind = RepresentationKind.LAPLACIAN if pair is MatrixPair.L_LRW else RepresentationKind.ADJACENCY
    dst_kind = (RepresentationKind.LAPLACIAN if pair is MatrixPair.A_L
                else RepresentationKind.NORMALIZED_LAPLACIAN)
    report = polynomial_spectrum_map(spectrum(g, src_kind), spectrum(g, dst_kind),
                                     merge_tol=args.merge_tol)
    _print_json({
        "pair": args.pair,
        "merge_tol": args.merge_tol,
        "unstable": report.unstable,
        "min_input_gap": report.min_input_gap,
        "output_span_over_degenerate_inputs": report.output_span_over_degenerate_inputs,
        "nodes": None if report.nodes is None else report.nodes.tolist(),
        "coefficients": None if report.coefficients is None else report.coefficients.tolist(),
        "max_residual": report.max_residual,
    })
    return 0


def _cmd_weyl(args) -> int:
    g = _load_graph(args.file, args.input_format)
    report = weyl_check(g)
    _print_json({
        "ok": report.ok,
        "lower": report.lower,
        "upper": report.upper,
        "differences": report.differences.tolist(),
    })
    return 0


def _plotdata_eigs(g: Graph, pair: MatrixPair, name: str) -> str:
    diffs = pair_differences(pair, g)
    centers = (diffs.transformed + diffs.target) / 2.0
    lines = [f"# graph={name}", f"# pair={pair.value}", "# figure=eigs",
             f"# bound={_csv_float(diffs.bound)}"]
    inner = None
    if pair is MatrixPair.A_LRW:
        inner = eigenvalue_bound_set(degree_summary(g)).e_prime_alrw
        lines.append(f"# inner_bound={_csv_float(inner)}")
    header = "index,raw,transformed,center,interval_low,interval_high"
    if inner is not None:
        header += ",inner_low,inner_high"
    lines.append(header)
    for i in range(len(centers)):
        row = [str(i + 1), _csv_float(diffs.target[i]), _csv_float(diffs.transformed[i]),
               _csv_float(centers[i]), _csv_float(centers[i] - diffs.bound),
               _csv_float(centers[i] + diffs.bound)]
        if inner is not None:
            row += [_csv_float(centers[i] - inner), _csv_float(centers[i] + inner)]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def _plotdata_gaps(g: Graph, pair: MatrixPair, name: str) -> str:
    gd = gap_differences(pair, g)
    centers = (gd.source_gaps + gd.target_gaps) / 2.0
    lines = [f"# graph={name}", f"# pair={pair.value}", "# figure=gaps",
             f"# bound={_csv_float(gd.bound)}"]
    if gd.primed_bound is not None:
        lines.append(f"# inner_bound={_csv_float(gd.primed_bound)}")
    header = "index,raw,transformed,center,interval_low,interval_high"
    if gd.primed_bound is not None:
        header += ",inner_low,inner_high"
    lines.append(header)
    for i in range(len(centers)):
        row = [str(i + 1), _csv_float(gd.target_gaps[i]), _csv_float(gd.source_gaps[i]),
               _csv_float(centers[i]), _csv_float(centers[i] - gd.bound),
               _csv_float(centers[i] + gd.bound)]
        if gd.primed_bound is not None:
            row += [_csv_float(centers[i] - gd.primed_bound),
                    _csv_float(centers[i] + gd.primed_bound)]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def _cmd_plotdata(args) -> int:
    g = _load_graph(args.file, args.input_format)
    pair = MatrixPair(args.pair)
    name = Path(args.file).stem
    if args.figure == "eigs":
        _emit(_plotdata_eigs(g, pair, name), args.output)
    else:
        _emit(_plotdata_gaps(g, pair, name), args.output)
    return 0


def _parse_range(spec: str) -> range:
    match = re.fullmatch(r"(\d+)\.\.(\d+)", spec)
    if not match:
        raise ValueError(f"range must look like 3..18, got {spec!r}")
    lo, hi = int(match.group(1)), int(match.group(2))
    if lo > hi:
        raise ValueError(f"empty range {spec!r}")
    return range(lo, hi + 1)


def _cmd_sweep(args) -> int:
    ks = _parse_range(args.graphc)
    lines = ["k,kind,gap_index,value,note"]
    for k in ks:
        g = gen_graph_c(k)
        for kind_name, kind in _KINDS.items():
            gaps = normalized_eigengaps(spectrum(g, kind))
            largest = int(np.argmax(gaps)) + 1
            for i, value in enumerate(gaps, start=1):
                notes = []
                if i == largest:
                    notes.append("largest")
                if kind is RepresentationKind.NORMALIZED_LAPLACIAN and i == k + 9:
                    notes.append("k+9")
                lines.append(f"{k},{kind_name},{i},{_csv_float(value)},{';'.join(notes)}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


# ---------------------------------------------------------------- parser


def _add_graph_arg(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("file", help="graph file (edge list, or Pajek for .net)")
    sub.add_argument("--input-format", choices=("auto", "pajek", "edgelist"), default="auto")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphspectra",
                                     description="Compare graph spectra across representation matrices.")
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("info", help="degree extremes, components, class and region")
    _add_graph_arg(sub)
    sub.set_defaults(func=_cmd_info)

    sub = commands.add_parser("gen", help="write a generated graph as an edge list")
    sub.add_argument("kind", choices=("star", "complete", "graphc", "bipartiteb"))
    sub.add_argument("size", type=int, nargs="?", default=None)
    sub.add_argument("-o", "--output", default=None)
    sub.set_defaults(func=_cmd_gen)

    sub = commands.add_parser("spectra", help="ordered eigenvalues of one representation matrix")
    _add_graph_arg(sub)
    sub.add_argument("--kind", choices=tuple(_KINDS), required=True)
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("-o", "--output", default=None)
    sub.set_defaults(func=_cmd_spectra)

    sub = commands.add_parser("bounds", help="eigenvalue-difference bounds and verification")
    _add_graph_arg(sub)
    sub.set_defaults(func=_cmd_bounds)

    sub = commands.add_parser("gaps", help="normalised-eigengap bounds and verification")
    _add_graph_arg(sub)
    sub.set_defaults(func=_cmd_gaps)

    sub = commands.add_parser("table", help="bound-comparison table over degree extremes")
    sub.add_argument("--dmin-max", type=int, default=5)
    sub.add_argument("--dmax-max", type=int, default=7)
    sub.add_argument("--json", action="store_true")
    sub.set_defaults(func=_cmd_table)

    sub = commands.add_parser("region", help="bound-ordering region of the degree extremes")
    sub.add_argument("file", nargs="?", default=None)
    sub.add_argument("--input-format", choices=("auto", "pajek", "edgelist"), default="auto")
    sub.add_argument("--dmin", type=int, default=None)
    sub.add_argument("--dmax", type=int, default=None)
    sub.set_defaults(func=_cmd_region)

    sub = commands.add_parser("cluster", help="spectral clustering of one representation matrix")
    _add_graph_arg(sub)
    sub.add_argument("--kind", choices=tuple(_KINDS), required=True)
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sub.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    sub.add_argument("--truth", default=None, help="ground-truth labels (vertex_id label per line)")
    sub.set_defaults(func=_cmd_cluster)

    sub = commands.add_parser("crossover", help="detect maximal crossovers of a pair's differences")
    _add_graph_arg(sub)
    sub.add_argument("--pair", choices=tuple(p.value for p in MatrixPair), required=True)
    sub.add_argument("--tol", type=float, default=DEFAULT_CROSSOVER_TOL)
    sub.set_defaults(func=_cmd_crossover)

    sub = commands.add_parser("polymap", help="polynomial interpolation between two spectra")
    _add_graph_arg(sub)
    sub.add_argument("--pair", choices=tuple(p.value for p in MatrixPair), required=True)
    sub.add_argument("--merge-tol", type=float, default=DEFAULT_MERGE_TOL)
    sub.set_defaults(func=_cmd_polymap)

    sub = commands.add_parser("weyl", help="Weyl interval check on the A/L relation")
    _add_graph_arg(sub)
    sub.set_defaults(func=_cmd_weyl)

    sub = commands.add_parser("plotdata", help="figure-ready CSV of spectra or gaps with bound intervals")
    _add_graph_arg(sub)
    sub.add_argument("--figure", choices=("eigs", "gaps"), required=True)
    sub.add_argument("--pair", choices=tuple(p.value for p in MatrixPair), required=True)
    sub.add_argument("-o", "--output", default=None)
    sub.set_defaults(func=_cmd_plotdata)

    sub = commands.add_parser("sweep", help="normalised eigengaps of C(k) over a range of k")
    sub.add_argument("--graphc", required=True, metavar="LO..HI")
    sub.add_argument("-o", "--output", default=None)
    sub.set_defaults(func=_cmd_sweep)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except (ValueError, OSError, EigensolverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
