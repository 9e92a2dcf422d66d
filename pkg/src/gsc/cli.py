"""Command-line front end: ``gsc cluster``, ``gsc toy-demo`` and ``gsc build-graph``."""
from __future__ import annotations

import argparse
import csv
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np
import scipy.sparse.csgraph as csgraph

from . import __version__
from .cluster import METHODS, Selection, grid_search
from .data import PointCloud, default_k, knn_digraph, load_csv, standardize, toy_unbalanced, write_csv
from .errors import GSCError
from .experiments import toy_experiment
from .graph import write_edgelist


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def parse_grid(text: str, *, integer: bool = False) -> list:
    """``a:b:step`` (inclusive of ``b``) or a comma-separated list."""
    try:
        if ":" in text:
            parts = [float(x) for x in text.split(":")]
            if len(parts) != 3 or parts[2] <= 0 or parts[1] < parts[0]:
                raise ValueError
            a, b, step = parts
            count = int(np.floor((b - a) / step + 1e-9)) + 1
            values = [round(a + i * step, 10) for i in range(count)]
        else:
            values = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid grid {text!r}; use a:b:step or a comma list") from None
    if not values:
        raise argparse.ArgumentTypeError("grid is empty")
    return [int(v) for v in values] if integer else values


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gsc", description="Generalized spectral clustering of point clouds and graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("cluster", help="grid-searched clustering of a CSV dataset or the toy set")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--data", type=Path, help="CSV file of features")
    src.add_argument("--toy", metavar="N1,N2", help="unbalanced Gaussian toy set with these cluster sizes")
    c.add_argument("--label-column", type=int, default=None, help="column holding ground-truth labels")
    c.add_argument("--k", type=int, required=True, help="number of clusters")
    c.add_argument("--method", choices=METHODS, default="gsc1")
    c.add_argument("--alpha-grid", type=parse_grid, default=None, help="default 0:1:0.1")
    c.add_argument("--t-max", type=int, default=None, help="default 100")
    c.add_argument("--gamma-grid", type=parse_grid, default=None, help="default 0:0.95:0.05")
    c.add_argument("--tau-grid", type=parse_grid, default=None, help="default 1:20:1")
    c.add_argument("--select", choices=("nmi", "ari", "ch"), default="nmi")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--restarts", type=int, default=10, help="k-means restarts per embedding")
    c.add_argument("--knn-k", type=int, default=None, help="neighbourhood size, default ceil(ln N)")
    c.add_argument("--knn-count-self", action="store_true",
                   help="rank the query point as its own first neighbour")
    c.add_argument("--no-standardize", action="store_true", help="build the graph on raw features")
    c.add_argument("--out", type=Path, required=True, help="output directory")

    t = sub.add_parser("toy-demo", help="k-means, vanilla and generalized spectral clustering on the toy set")
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--n1", type=int, default=30)
    t.add_argument("--n2", type=int, default=300)
    t.add_argument("--alpha-grid", type=parse_grid, default=None, help="GSC grid, default 0:8:0.5")
    t.add_argument("--sweep-grid", type=parse_grid, default=None, help="crossover grid, default 0:8:0.1")
    t.add_argument("--model", type=parse_grid, default=[0.08, 0.29, 0.75], metavar="B,C,RHO",
                   help="toy-model constants for the theoretical exponent")
    t.add_argument("--out", type=Path, required=True)

    b = sub.add_parser("build-graph", help="directed K-NN graph of a CSV point cloud")
    b.add_argument("input", type=Path)
    b.add_argument("--k-neighbors", type=int, default=None)
    b.add_argument("--label-column", type=int, default=None)
    b.add_argument("--count-self", action="store_true")
    b.add_argument("--standardize", action="store_true")
    b.add_argument("--out", type=Path, required=True, help="edge-list file")
    return parser


def _load(args) -> PointCloud:
    if args.data is not None:
        return load_csv(args.data, args.label_column)
    try:
        n1, n2 = (int(x) for x in args.toy.split(","))
    except ValueError:
        raise GSCError(f"--toy expects N1,N2, got {args.toy!r}") from None
    return toy_unbalanced(n1, n2, args.seed)


def _config(args) -> dict:
    out = {}
    for key, value in sorted(vars(args).items()):
        if key in ("out", "workers"):
            continue
        out[key] = str(value) if isinstance(value, Path) else value
    return out


def cmd_cluster(args) -> int:
    pc = _load(args)
    points = pc.points
    if not args.no_standardize:
        points, _ = standardize(points)
    g = knn_digraph(points, args.knn_k, count_self=args.knn_count_self)
    selection = Selection(args.select, labels=pc.labels, features=pc.points)
    best, grid = grid_search(
        g, args.k, args.method, selection,
        alphas=args.alpha_grid, t_max=args.t_max, gammas=args.gamma_grid, taus=args.tau_grid,
        seed=args.seed, restarts=args.restarts, workers=args.workers,
    )
    best_entry = next(e for e in grid if e.partition is best)
    result = {
        "config": _config(args),
        "best": best_entry.to_dict(),
        "grid": grid.to_json(labels=False),
        "provenance": {
            "seed": args.seed,
            "version": __version__,
            "standardized": not args.no_standardize,
            "k_neighbors": args.knn_k or default_k(pc.n),
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        },
    }
    args.out.mkdir(parents=True, exist_ok=True)
    with open(args.out / "result.json", "w") as fh:
        json.dump(result, fh, indent=1)
        fh.write("\n")
    metrics = sorted({m for e in grid for m in e.scores})
    params = sorted({p for e in grid for p in e.params if p != "method"})
    with open(args.out / "scores.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(params + metrics)
        for e in grid:
            w.writerow([_cell(e.params.get(p)) for p in params] + [_cell(e.scores.get(m)) for m in metrics])
    with open(args.out / "labels.csv", "w", newline="") as fh:
        fh.write("label\n" + "".join(f"{v}\n" for v in best.labels))
    line = ", ".join(f"{m}={best_entry.scores[m]:.4f}" for m in metrics if best_entry.scores.get(m) is not None)
    print(f"best {best_entry.params}: {line}")
    return 0


def _cell(v):
    if v is None:
        return ""
    return repr(v) if isinstance(v, float) else v


def cmd_toy_demo(args) -> int:
    report = toy_experiment(args.seed, args.n1, args.n2, alphas=args.alpha_grid,
                            sweep_alphas=args.sweep_grid, model=tuple(args.model))
    args.out.mkdir(parents=True, exist_ok=True)
    write_csv(report.cloud, args.out / "points.csv")
    names = ["truth", "kmeans", "vsc", "gsc"]
    with open(args.out / "partitions.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "y"] + names)
        for i, (x, y) in enumerate(report.cloud.points):
            w.writerow([repr(float(x)), repr(float(y))] + [int(report.partitions[n].labels[i]) for n in names])
    report.sweep.to_csv(args.out / "crossover.csv")
    with open(args.out / "summary.json", "w") as fh:
        json.dump(report.summary(), fh, indent=1)
        fh.write("\n")
    for name in names[1:]:
        print(f"NMI {name:7s} {report.scores[name]:.4f}")
    xp = "none" if report.sweep.alpha_xp is None else f"{report.sweep.alpha_xp:g}"
    print(f"alpha_xp {xp}")
    print(f"alpha_th {report.alpha_th:.4f}")
    return 0


def cmd_build_graph(args) -> int:
    pc = load_csv(args.input, args.label_column)
    points = standardize(pc.points)[0] if args.standardize else pc.points
    k = default_k(pc.n) if args.k_neighbors is None else args.k_neighbors
    g = knn_digraph(points, k, count_self=args.count_self)
    write_edgelist(g, args.out)
    ncomp = csgraph.connected_components(g.weights, directed=True, connection="strong")[0]
    print(f"N {g.n}")
    print(f"K {k}")
    print(f"edges {g.nnz}")
    print(f"strongly_connected {ncomp == 1}")
    return 0


COMMANDS = {"cluster": cmd_cluster, "toy-demo": cmd_toy_demo, "build-graph": cmd_build_graph}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (GSCError, OSError) as exc:
        print(f"gsc {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
