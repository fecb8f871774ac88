"""Command-line front end.

Subcommands: check, solve, count, verify, encode, decode, nibble,
typicality, lattice.  Every run is reproducible from its echoed config;
randomized subcommands require an explicit seed.  Exit codes: 0 found/true,
1 proven-none/false, 2 timeout, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import divisibility as dv
from . import encodings as enc
from . import nibble as nb
from . import solver as sv
from .complexes import (
    is_typical_blowup,
    is_typical_coloured,
    is_typical_hp,
    is_typical_plain,
)
from .core import (
    ColouredMultidigraph,
    ColouredMultigraph,
    Digraph,
    Hypergraph,
    Partition,
    blowup,
    dumps_canonical,
)
from .intlattice import (
    hermite_normal_form,
    matrix_from_json,
    matrix_to_json,
    span_membership,
)

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_TIMEOUT = 2
EXIT_INPUT = 3


class InputError(Exception):
    pass


def _budget_default() -> int:
    raw = os.environ.get("DECOMP_LAB_BUDGET")
    return int(raw) if raw else 10_000_000


# ---------------------------------------------------------------------------
# compact host/pattern specs


def parse_structure(spec: str):
    """Builtin structures addressable without fixture files.

    k_n:7 or k_n:9:3      complete (hyper)graph, optional uniformity
    k3n:4                 triangle blowup host with its partitions
    k4n:4                 4-clique blowup host (orthogonal squares)
    kdn:2:5               complete r-digraph, r then n
    sudoku:2              sudoku blowup host with partitions
    cycle:3:2             tight cycle pattern, q then r
    rainbow:4             rainbow triangle family
    triangle              complete graph on three vertices
    k_q:4 / k3_q:4        clique pattern (graph / 3-graph)
    resolvable:9          resolvable triple system host instance
    largeset:9            large-set host instance
    @file.json            any JSON structure document
    """
    if spec.startswith("@"):
        with open(spec[1:], encoding="utf-8") as fh:
            return load_structure(json.load(fh))
    parts = spec.split(":")
    name, args = parts[0], [int(x) for x in parts[1:]]
    if name == "triangle":
        return enc.triangle_pattern()[0]
    if name == "k_n":
        n = args[0]
        r = args[1] if len(args) > 1 else 2
        return Hypergraph.complete(n, r)
    if name in ("k_q", "k2_q"):
        return Hypergraph.complete(args[0], 2)
    if name == "k3_q":
        return Hypergraph.complete(args[0], 3)
    if name == "k3n":
        host, part = enc.triangle_host(args[0])
        return {"host": host, "host_partition": part,
                "pattern": enc.triangle_pattern()[0],
                "pattern_partition": enc.triangle_pattern()[1]}
    if name == "k4n":
        host, part = enc.mols_host(args[0])
        return {"host": host, "host_partition": part,
                "pattern": enc.mols_pattern()[0],
                "pattern_partition": enc.mols_pattern()[1]}
    if name == "kdn":
        r, n = args
        return Digraph.complete(n, r)
    if name == "sudoku":
        host, part = enc.sudoku_host(args[0])
        sp, spart = enc.sudoku_pattern()
        return {"host": host, "host_partition": part,
                "pattern": sp, "pattern_partition": spart}
    if name == "cycle":
        q, r = args
        return enc.tight_cycle(q, r)
    if name == "rainbow":
        return enc.rainbow_family(args[0])
    if name == "resolvable":
        inst = enc.resolvable_sts_instance(args[0])
        return {"host": inst.host, "host_partition": inst.host_partition,
                "pattern": inst.pattern, "pattern_partition": inst.pattern_partition,
                "kind": inst.kind, "n": args[0]}
    if name == "largeset":
        inst = enc.large_set_instance(args[0])
        return {"host": inst.host, "host_partition": inst.host_partition,
                "pattern": inst.pattern, "pattern_partition": inst.pattern_partition,
                "kind": inst.kind, "n": args[0]}
    raise InputError(f"unknown structure spec {spec!r}")


def load_structure(doc: dict):
    kinds = {
        "hypergraph": Hypergraph,
        "coloured-multigraph": ColouredMultigraph,
        "digraph": Digraph,
        "coloured-multidigraph": ColouredMultidigraph,
    }
    t = doc.get("type")
    if t in kinds:
        return kinds[t].from_json_dict(doc)
    if t is None and "parts" in doc:
        return Partition.from_json_dict(doc)
    raise InputError(f"unrecognized structure document type {t!r}")


def _as_instance(obj):
    """Normalize a parsed spec into (host, patterns, partition-or-None)."""
    if isinstance(obj, dict):
        partition = None
        if obj.get("pattern_partition") is not None:
            partition = (obj["pattern_partition"], obj["host_partition"])
        return obj["host"], obj["pattern"], partition
    return obj, None, None


def _emit(doc: dict, fmt: str, out=None) -> None:
    out = out if out is not None else sys.stdout
    if fmt == "json":
        out.write(dumps_canonical(doc) + "\n")
    else:
        for key, value in doc.items():
            out.write(f"{key}: {value}\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args) -> int:
    kind = args.kind
    doc = {"command": "check", "kind": kind, "args": args.values}
    if kind == "steiner":
        n, q, r, lam = (int(x) for x in args.values)
        rep = dv.steiner_divisible(n, q, r, lam)
        doc["check"] = "block-size divisibility for (n, q, r, lambda) designs"
    elif kind == "h":
        host = parse_structure(args.host)
        pattern = parse_structure(args.pattern)
        rep = dv.h_divisible(host, pattern)
        doc["check"] = "per-level degree gcd divisibility"
    elif kind == "hp":
        spec = parse_structure(args.host)
        host, pattern, partition = _as_instance(spec)
        if args.pattern:
            pattern = parse_structure(args.pattern)
        if args.host_partition or args.pattern_partition:
            partition = (
                parse_structure(args.pattern_partition),
                parse_structure(args.host_partition),
            )
        rep = dv.hp_divisible(host, partition[1], pattern, partition[0])
        doc["check"] = "partite index-vector lattice divisibility"
    elif kind == "coloured":
        host = parse_structure(args.host)
        family = parse_structure(args.pattern)
        rep = dv.coloured_divisible(host, family)
        doc["check"] = "colour degree-vector lattice divisibility"
    elif kind == "digraph":
        host = parse_structure(args.host)
        pattern = parse_structure(args.pattern)
        rep = dv.digraph_divisible(host, pattern)
        doc["check"] = "positional degree-vector lattice divisibility"
    elif kind == "master":
        host = parse_structure(args.host)
        pattern = parse_structure(args.pattern)
        patterns = pattern if isinstance(pattern, list) else [pattern]
        host_partition = parse_structure(args.host_partition)
        pattern_partition = parse_structure(args.pattern_partition)
        rep = dv.master_divisible(host, host_partition, patterns, pattern_partition)
        doc["check"] = "coloured directed partite degree-vector lattice divisibility"
    else:
        raise InputError(f"unknown check kind {kind!r}")
    doc["verdict"] = rep.verdict
    doc["failures"] = [
        {"level": f.level, "witness": list(f.witness), "vector": list(f.vector)}
        for f in rep.failures
    ]
    _emit(doc, args.format)
    return EXIT_TRUE if rep.verdict else EXIT_FALSE


def cmd_solve(args) -> int:
    spec = parse_structure(args.host)
    host, pattern, partition = _as_instance(spec)
    if args.pattern:
        pattern = parse_structure(args.pattern)
    if not args.partite:
        partition = None
    table = sv.enumerate_copies(host, pattern, partition, budget=_budget_default())
    result = sv.find_decomposition(
        host, pattern, partition, timeout=args.timeout, table=table
    )
    doc = {
        "command": "solve",
        "host": args.host,
        "pattern": args.pattern,
        "status": result.status,
        "nodes": result.nodes,
    }
    if result.found:
        doc["certificate"] = result.certificate.to_json_dict()
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(dumps_canonical(result.certificate.to_json_dict()))
    _emit(doc, args.format)
    return {"found": EXIT_TRUE, "none": EXIT_FALSE, "timeout": EXIT_TIMEOUT}[result.status]


def cmd_count(args) -> int:
    spec = parse_structure(args.host)
    host, pattern, partition = _as_instance(spec)
    if args.pattern:
        pattern = parse_structure(args.pattern)
    if not args.partite:
        partition = None
    table = sv.enumerate_copies(host, pattern, partition, budget=_budget_default())
    value = sv.count_decompositions(
        host, pattern, partition, timeout=args.timeout, table=table
    )
    doc = {"command": "count", "host": args.host, "pattern": args.pattern, "count": value}
    _emit(doc, args.format)
    return EXIT_TRUE


def cmd_verify(args) -> int:
    spec = parse_structure(args.host)
    host, pattern, partition = _as_instance(spec)
    if args.pattern:
        pattern = parse_structure(args.pattern)
    with open(args.certificate, encoding="utf-8") as fh:
        cert = sv.Certificate.from_json_dict(json.load(fh))
    rep = sv.verify_certificate(host, pattern, cert, partition if args.partite else None)
    doc = {
        "command": "verify",
        "host": args.host,
        "valid": rep.valid,
        "deficit": [list(map(repr, d)) for d in rep.deficit],
        "surplus": [list(map(repr, s)) for s in rep.surplus],
    }
    _emit(doc, args.format)
    return EXIT_TRUE if rep.valid else EXIT_FALSE


def cmd_encode(args) -> int:
    kind = args.kind
    text = sys.stdin.read() if args.infile == "-" else open(args.infile).read()
    if kind == "latin":
        square = enc.LatinSquare.from_text(text)
        cert = enc.latin_encode(square)
    elif kind == "sudoku":
        grid = enc.SudokuGrid.from_text(args.box_order, text)
        cert = enc.sudoku_encode(grid)
    elif kind == "mols":
        first_text, second_text = text.split("\n\n", 1)
        cert = enc.mols_encode(
            enc.LatinSquare.from_text(first_text),
            enc.LatinSquare.from_text(second_text),
        )
    else:
        raise InputError(f"unknown encode kind {kind!r}")
    _emit(cert.to_json_dict(), args.format)
    return EXIT_TRUE


def cmd_decode(args) -> int:
    kind = args.kind
    with open(args.infile, encoding="utf-8") as fh:
        cert = enc.DesignCertificate.from_json_dict(json.load(fh))
    if kind == "latin":
        square = enc.latin_decode(cert, args.order)
        sys.stdout.write(square.to_text() + "\n")
    elif kind == "sudoku":
        grid = enc.sudoku_decode(cert, args.box_order)
        sys.stdout.write(grid.to_text() + "\n")
    elif kind == "mols":
        first, second = enc.mols_decode(cert, args.order)
        sys.stdout.write(first.to_text() + "\n\n" + second.to_text() + "\n")
    else:
        raise InputError(f"unknown decode kind {kind!r}")
    return EXIT_TRUE


def cmd_nibble(args) -> int:
    pattern = parse_structure(args.pattern)
    if isinstance(pattern, dict):
        raise InputError("nibble takes a plain pattern spec")
    bounds = nb.counting_bounds(
        pattern,
        args.blowup,
        seed=args.seed,
        stop_density=Fraction(args.stop_density) if args.stop_density else None,
    )
    doc = {
        "command": "nibble",
        "pattern": args.pattern,
        "blowup": args.blowup,
        "seed": args.seed,
        "log_upper": bounds.log_upper,
        "log_lower_estimate": bounds.log_lower_estimate,
        "per_cell_upper": bounds.per_cell_upper,
        "per_cell_lower": bounds.per_cell_lower,
        "steps": bounds.steps_run,
        "o_terms_dropped": bounds.o_terms_dropped,
        "notes": bounds.notes,
    }
    if args.trajectory_out:
        host, host_partition = blowup(pattern, [args.blowup] * pattern.n)
        aux = nb.build_auxiliary(
            host, pattern, (Partition.singletons(pattern.n), host_partition)
        )
        run = nb.random_greedy(
            aux,
            seed=args.seed,
            stop_density=Fraction(args.stop_density) if args.stop_density else None,
        )
        with open(args.trajectory_out, "w", encoding="utf-8") as fh:
            fh.write(run.dump_jsonl() + "\n")
        doc["trajectory"] = args.trajectory_out
    _emit(doc, args.format)
    return EXIT_TRUE


def cmd_typicality(args) -> int:
    spec = parse_structure(args.host)
    host, pattern, partition = _as_instance(spec)
    c = Fraction(args.c)
    if args.mode == "plain":
        rep = is_typical_plain(host, c, args.s, seed=args.seed)
    elif args.mode == "blowup":
        rep = is_typical_blowup(host, partition[1], pattern, c, args.s)
    elif args.mode == "coloured":
        rep = is_typical_coloured(host, c, args.s, seed=args.seed)
    elif args.mode == "hp":
        rep = is_typical_hp(host, partition[1], pattern, partition[0], c, args.s)
    else:
        raise InputError(f"unknown typicality mode {args.mode!r}")
    doc = {
        "command": "typicality",
        "mode": rep.mode,
        "typical": rep.typical,
        "c": str(rep.c),
        "s": rep.s,
        "checked": rep.checked,
        "worst_deviation": str(rep.worst_deviation),
        "exact": rep.exact,
    }
    _emit(doc, args.format)
    return EXIT_TRUE if rep.typical else EXIT_FALSE


def cmd_lattice(args) -> int:
    with open(args.matrix, encoding="utf-8") as fh:
        matrix = matrix_from_json(json.load(fh))
    if args.vector:
        vector = [int(x) for x in args.vector.split(",")]
        coeffs = span_membership(vector, matrix)
        doc = {
            "command": "lattice",
            "operation": "membership",
            "member": coeffs is not None,
            "coefficients": coeffs,
        }
        _emit(doc, args.format)
        return EXIT_TRUE if coeffs is not None else EXIT_FALSE
    H, U = hermite_normal_form(matrix)
    doc = {
        "command": "lattice",
        "operation": "hnf",
        "hnf": matrix_to_json(H),
        "transform": matrix_to_json(U),
    }
    _emit(doc, args.format)
    return EXIT_TRUE


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="decomp-lab",
        description="divisibility checks, exact decomposition search and "
        "design encodings at desk scale",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    c = add("check", help="run a divisibility checker")
    c.add_argument("--kind", required=True,
                   choices=("steiner", "h", "hp", "coloured", "digraph", "master"))
    c.add_argument("--host", help="host structure spec")
    c.add_argument("--pattern", help="pattern structure spec")
    c.add_argument("--host-partition", help="host partition spec (hp/master)")
    c.add_argument("--pattern-partition", help="pattern partition spec (hp/master)")
    c.add_argument("values", nargs="*", help="numeric arguments (steiner)")
    c.set_defaults(func=cmd_check)

    s = add("solve", help="find a decomposition")
    s.add_argument("--host", required=True)
    s.add_argument("--pattern")
    s.add_argument("--partite", action="store_true")
    s.add_argument("--timeout", type=float, default=60.0)
    s.add_argument("--out", help="write the certificate JSON here")
    s.set_defaults(func=cmd_solve)

    ct = add("count", help="count decompositions exactly")
    ct.add_argument("--host", required=True)
    ct.add_argument("--pattern")
    ct.add_argument("--partite", action="store_true")
    ct.add_argument("--timeout", type=float)
    ct.set_defaults(func=cmd_count)

    v = add("verify", help="verify a certificate independently")
    v.add_argument("--host", required=True)
    v.add_argument("--pattern")
    v.add_argument("--partite", action="store_true")
    v.add_argument("--certificate", required=True)
    v.set_defaults(func=cmd_verify)

    e = add("encode", help="designs to decomposition certificates")
    e.add_argument("--kind", required=True, choices=("latin", "sudoku", "mols"))
    e.add_argument("--infile", default="-")
    e.add_argument("--box-order", type=int, default=3)
    e.set_defaults(func=cmd_encode)

    d = add("decode", help="decomposition certificates to designs")
    d.add_argument("--kind", required=True, choices=("latin", "sudoku", "mols"))
    d.add_argument("--infile", required=True)
    d.add_argument("--order", type=int, default=0)
    d.add_argument("--box-order", type=int, default=3)
    d.set_defaults(func=cmd_decode)

    nbp = add("nibble", help="random greedy matching bounds")
    nbp.add_argument("--pattern", required=True)
    nbp.add_argument("--blowup", type=int, required=True)
    nbp.add_argument("--seed", type=int, required=True)
    nbp.add_argument("--stop-density")
    nbp.add_argument("--trajectory-out")
    nbp.set_defaults(func=cmd_nibble)

    t = add("typicality", help="near-random neighbourhood checks")
    t.add_argument("--host", required=True)
    t.add_argument("--mode", default="plain",
                   choices=("plain", "blowup", "coloured", "hp"))
    t.add_argument("--c", required=True)
    t.add_argument("--s", type=int, default=1)
    t.add_argument("--seed", type=int)
    t.set_defaults(func=cmd_typicality)

    lt = add("lattice", help="Hermite form / span membership")
    lt.add_argument("--matrix", required=True, help="int-matrix JSON file")
    lt.add_argument("--vector", help="comma-separated target vector")
    lt.set_defaults(func=cmd_lattice)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        InputError,
        ValueError,
        OSError,
        json.JSONDecodeError,
        sv.BudgetExceeded,
    ) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
