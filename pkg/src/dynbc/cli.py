"""Command-line entry point: ``dynbc {init,update,bench,exact,vd,gen}``."""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import os
import random
import sys
from pathlib import Path

from . import persist
from .bcsampler import BCParams, init_bc, scores
from .bench import PROTOCOLS, bench
from .dynamics import gen_random_dynamics, gen_real_dynamics, gen_weight_dynamics, geometric_graph
from .errors import ConsistencyError, DomainError, ParseError
from .graph import (DELETE, INSERT, LOAD_MODES, EdgeEvent, apply_batch, graph_from_records, normalize_batch,
                    read_edge_records)
from .oracle import brandes
from .vdtracker import VDTracker

EXIT_OK, EXIT_CONFIG, EXIT_CONSISTENCY = 0, 2, 3

log = logging.getLogger("dynbc")


def read_batch_file(stream, graph) -> list[EdgeEvent]:
    """Parse ``I u v w`` / ``D u v`` / ``W u v w`` lines (external ids)."""
    events = []
    for lineno, line in enumerate(stream, 1):
        line = line.strip()
        if not line or line[0] in "%#":
            continue
        parts = line.split()
        op = parts[0].upper()
        want = {"I": (3, 4), "D": (3, 3), "W": (4, 4)}.get(op)
        if want is None or not want[0] <= len(parts) <= want[1]:
            raise ParseError(f"expected 'I u v w', 'D u v' or 'W u v w', got {line!r}", lineno)
        try:
            u, v = graph.index[int(parts[1])], graph.index[int(parts[2])]
            w = float(parts[3]) if len(parts) > 3 else 1.0
        except (KeyError, ValueError):
            raise ParseError(f"unknown node or malformed number in {line!r}", lineno) from None
        try:
            if op == "I":
                events.append(EdgeEvent.insert(u, v, w))
            elif op == "D":
                events.append(EdgeEvent.delete(u, v))
            else:
                events.append(EdgeEvent.set_weight(u, v, w))
        except DomainError as exc:
            raise ParseError(str(exc), lineno) from None
    return events


def write_batch_file(stream, graph, events):
    lab = graph.labels
    for ev in events:
        if ev.kind == INSERT:
            stream.write(f"I {lab[ev.u]} {lab[ev.v]} {ev.weight!r}\n")
        elif ev.kind == DELETE:
            stream.write(f"D {lab[ev.u]} {lab[ev.v]}\n")
        else:
            stream.write(f"W {lab[ev.u]} {lab[ev.v]} {ev.weight!r}\n")


NODES_HEADER = "% nodes:"


def write_edge_list(stream, graph):
    # the header keeps nodes that currently have no edges
    lab = graph.labels
    stream.write(f"{NODES_HEADER} {' '.join(map(str, lab))}\n")
    for u, v, w in graph.edges():
        stream.write(f"{lab[u]} {lab[v]} {w!r}\n" if graph.weighted else f"{lab[u]} {lab[v]}\n")


def emit_scores(pairs, fmt, out):
    if fmt == "json":
        json.dump([{"node": v, "score": s} for v, s in pairs], out)
        out.write("\n")
    else:
        for v, s in pairs:
            out.write(f"{v}\t{s:.17g}\n")


def _open_out(args):
    return open(args.output, "w") if args.output else contextlib.nullcontext(sys.stdout)


def _read_records(path):
    with open(path) as fh:
        return read_edge_records(fh)


def _declared_nodes(path):
    with open(path) as fh:
        first = fh.readline()
    if not first.startswith(NODES_HEADER):
        return set()
    try:
        return {int(x) for x in first[len(NODES_HEADER):].split()}
    except ValueError:
        raise ParseError("malformed node header", 1) from None


def _load_graph(args):
    if args.input is None:
        raise DomainError("--input is required")
    records = _read_records(args.input)
    labels = sorted(_declared_nodes(args.input) | {r.u for r in records} | {r.v for r in records})
    return graph_from_records(records, args.graph_mode, labels=labels)


def _params(args):
    return BCParams(args.epsilon, args.delta, args.c, args.seed)


def cmd_init(args):
    graph = _load_graph(args)
    state = init_bc(graph, _params(args))
    if args.state:
        persist.save(args.state, state, graph)
    log.info("initialised: n=%d m=%d r=%d r'=%d vd=%.6g", graph.n, graph.m, state.r, state.r_aux, state.vd)
    with _open_out(args) as out:
        emit_scores(scores(state, graph), args.format, out)


def cmd_update(args):
    if not args.state or not args.batch:
        raise DomainError("update needs --state and --batch")
    state, graph = persist.load(args.state)
    for path in args.batch:
        with open(path) as fh:
            batch = normalize_batch(read_batch_file(fh, graph), graph)
        apply_batch(graph, batch)
        state.update(graph, batch)
    persist.save(args.state, state, graph)
    with _open_out(args) as out:
        emit_scores(scores(state, graph), args.format, out)


def cmd_exact(args):
    graph = _load_graph(args)
    with _open_out(args) as out:
        emit_scores(sorted(zip(graph.labels, brandes(graph))), args.format, out)


def cmd_vd(args):
    graph = _load_graph(args)
    tracker = VDTracker(graph)
    for path in args.batch or ():
        with open(path) as fh:
            batch = normalize_batch(read_batch_file(fh, graph), graph)
        apply_batch(graph, batch)
        tracker.update(graph, batch)
    rows = sorted((graph.labels[s], est) for s, est in tracker.estimates())
    with _open_out(args) as out:
        if args.format == "json":
            json.dump([{"component": s, "vd": est} for s, est in rows], out)
            out.write("\n")
        else:
            for s, est in rows:
                out.write(f"{s}\t{est:.17g}\n")


def cmd_gen(args):
    if not args.output:
        raise DomainError("gen needs --output DIR")
    rng = random.Random(args.seed)
    x = args.x or 0
    size = int(args.batch_size.split(",")[0])
    if args.mode == "real":
        base, batches = gen_real_dynamics(_read_records(args.input), x, size, args.graph_mode)
    else:
        graph = _load_graph(args)
        if args.mode == "random":
            base, batches = gen_random_dynamics(graph, x, size, rng)
        else:
            base, batches = gen_weight_dynamics(graph, x, size, rng)
    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)
    with open(outdir / "base.txt", "w") as fh:
        write_edge_list(fh, base)
    width = max(4, len(str(len(batches))))
    for i, b in enumerate(batches, 1):
        with open(outdir / f"batch_{i:0{width}d}.txt", "w") as fh:
            write_batch_file(fh, base, b.events)
    print(f"wrote base graph and {len(batches)} batches to {outdir}")


def cmd_bench(args):
    if args.input:
        graph = _load_graph(args)
    else:
        graph = geometric_graph(args.synthetic_n, args.synthetic_degree, seed=args.seed,
                                weighted=args.graph_mode != "unweighted")
    sizes = [int(s) for s in args.batch_size.split(",")]
    mode = "random" if args.mode == "real" else args.mode
    report = bench(graph, _params(args), sizes, runs=args.runs, mode=mode, x=args.x, protocol=args.protocol)
    with _open_out(args) as out:
        if args.format == "json":
            json.dump(report.to_dict(), out, indent=2)
            out.write("\n")
        else:
            out.write("batch_size\truns\tt_dynamic_mean\tt_static_mean\tspeedup\tr\n")
            for row in report.rows:
                out.write(f"{row.batch_size}\t{row.runs}\t{row.t_dynamic_mean:.6g}\t"
                          f"{row.t_static_mean:.6g}\t{row.speedup:.6g}\t{row.r}\n")


COMMANDS = {
    "init": cmd_init,
    "update": cmd_update,
    "bench": cmd_bench,
    "exact": cmd_exact,
    "vd": cmd_vd,
    "gen": cmd_gen,
}


def _batch_size(text):
    for part in text.split(","):
        if not 1 <= int(part) <= 1024:
            raise argparse.ArgumentTypeError("batch size must be in 1..1024")
    return text


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="edge list: 'u v [weight] [timestamp]' per line")
    common.add_argument("--graph-mode", choices=LOAD_MODES, default="unweighted")
    common.add_argument("--epsilon", type=float, default=0.05)
    common.add_argument("--delta", type=float, default=0.1)
    common.add_argument("--c", type=float, default=0.5)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--state", help="state snapshot file")
    common.add_argument("--batch", action="append", help="batch file (repeatable)")
    common.add_argument("--batch-size", type=_batch_size, default="1")
    common.add_argument("--mode", choices=("real", "random", "weight-change"), default="random")
    common.add_argument("--x", type=int, help="number of edges held back / changed")
    common.add_argument("--output", help="output file (directory for gen)")
    common.add_argument("--format", choices=("tsv", "json"), default="tsv")
    common.add_argument("--runs", type=int, default=10)
    common.add_argument("--protocol", choices=PROTOCOLS, default="fixed-batch")
    common.add_argument("--synthetic-n", type=int, default=10000)
    common.add_argument("--synthetic-degree", type=float, default=20.0)

    parser = argparse.ArgumentParser(prog="dynbc", description="Fully-dynamic approximate betweenness.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None) -> int:
    level = os.environ.get("DYNBC_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except ConsistencyError as exc:
        print(f"dynbc: consistency error: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (ParseError, DomainError) as exc:
        print(f"dynbc: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"dynbc: {exc.filename or ''}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
