"""Command-line interface.

Subcommands mirror the library surface: exact distances between saved
tuples, sparse embeddings, the distortion experiment, the non-doubling
witness, barcode matrices, the verification battery, and a raw cube export.

Exit codes: 0 on success, 1 when a verification-style check fails (a verify
suite, or an asserted bound in the distortion experiment), 2 on invalid
input (unreadable files, malformed rows, mismatched domains, bad flags).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import verify as verify_module
from .barcodes import BARCODE_DOMAIN, BarcodeDiagram, barcode_distance
from .domains import DomainError, domain_from_json
from .embedding import DirectionFamily, EmbeddingConstants, embed_tuple
from .sampling import sample_tuple
from .transport import UnorderedTuple, partial_wasserstein
from .whitney import WhitneyDecomposition
from .witness import nondoubling_witness

__all__ = ["main", "build_parser"]


def _emit(out: str | None, text: str) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _vector(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError as exc:
        raise DomainError(f"expected comma-separated floats, got {text!r}") from exc


def cmd_distance(args) -> int:
    a = UnorderedTuple.load(args.first)
    b = UnorderedTuple.load(args.second)
    if a.domain != b.domain:
        print(
            f"error: tuples live on different domains: "
            f"{a.domain.to_json()} vs {b.domain.to_json()}",
            file=sys.stderr,
        )
        return 2
    print("%.12g" % partial_wasserstein(a, b, args.p))
    return 0


def cmd_embed(args) -> int:
    t = UnorderedTuple.load(args.tuple)
    m = args.m if args.m is not None else max(1, t.size)
    family = DirectionFamily.build(t.domain.dimension + 1, args.directions)
    W = WhitneyDecomposition(t.domain)
    emb = embed_tuple(W, family, t, m)
    _emit(args.out, json.dumps(emb.to_json(), indent=2) + "\n")
    return 0


def cmd_distortion(args) -> int:
    domain = domain_from_json(args.domain)
    n = domain.dimension
    rng = np.random.default_rng(args.seed)
    W = WhitneyDecomposition(domain)
    family = DirectionFamily.build(n + 1, args.directions)
    constants = EmbeddingConstants.for_dimension(n)
    cap = math.sqrt(constants.upper)

    rows = []
    ratios = []
    violations = []
    for idx in range(args.samples):
        p = sample_tuple(domain, rng, args.m)
        q = sample_tuple(domain, rng, args.m)
        true = partial_wasserstein(p, q, args.p)
        embedded = embed_tuple(W, family, p, args.m).distance(
            embed_tuple(W, family, q, args.m)
        )
        ratio = embedded / true if true > 1e-12 else float("nan")
        rows.append((idx, p.size, q.size, true, embedded, ratio))
        if not math.isnan(ratio):
            ratios.append(ratio)
        # the upper bound is asserted only for the exponent it is proved for
        if args.p == 2.0 and embedded > cap * true:
            violations.append(idx)

    domain_text = json.dumps(domain.to_json(), separators=(",", ":"))
    lines = [
        "# distortion experiment",
        f"# domain={domain_text}",
        f"# m={args.m} p={args.p:g} samples={args.samples} seed={args.seed} "
        f"directions={args.directions}",
        "index,size_a,size_b,true_distance,embedded_distance,ratio",
    ]
    for idx, sa, sb, true, embedded, ratio in rows:
        lines.append(
            "%d,%d,%d,%.17g,%.17g,%.17g" % (idx, sa, sb, true, embedded, ratio)
        )
    _emit(args.out, "\n".join(lines) + "\n")

    if ratios:
        lo, hi = min(ratios), max(ratios)
        distortion = hi / lo if lo > 0.0 else float("inf")
        print(
            f"{len(rows)} pairs; embedded/true ratio in [{lo:.6g}, {hi:.6g}], "
            f"distortion {distortion:.6g}, Lipschitz cap sqrt(c0)={cap:.6g}",
            file=sys.stderr,
        )
    if violations:
        shown = ", ".join(str(v) for v in violations[:10])
        print(
            f"error: embedded distance exceeded sqrt(c0) * true distance on "
            f"{len(violations)} pairs (indices {shown})",
            file=sys.stderr,
        )
        return 1
    return 0


def cmd_witness(args) -> int:
    domain = domain_from_json(args.domain)
    witness = nondoubling_witness(domain, args.count, args.epsilon)
    lines = [f"# {witness.summary()}"]
    for row in witness.points:
        lines.append(",".join("%.17g" % v for v in row))
    _emit(args.out, "\n".join(lines) + "\n")
    if args.out:
        print(witness.summary())
    return 0


def cmd_barcode(args) -> int:
    diagrams = [BarcodeDiagram.load(path) for path in args.files]
    k = len(diagrams)
    true = [[0.0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            d = barcode_distance(diagrams[i], diagrams[j], args.p)
            true[i][j] = true[j][i] = d

    lines = [
        "# pairwise barcode distances (p=%g)" % args.p,
        "# files: " + " ".join(str(f) for f in args.files),
    ]
    for row in true:
        lines.append(",".join("%.17g" % v for v in row))

    if args.embed:
        m = args.m if args.m is not None else max(
            1, max(d.size for d in diagrams)
        )
        family = DirectionFamily.build(BARCODE_DOMAIN.dimension + 1,
                                       args.directions)
        W = WhitneyDecomposition(BARCODE_DOMAIN)
        embeddings = [embed_tuple(W, family, d.to_tuple(), m) for d in diagrams]
        lines.append("# embedded distances (m=%d)" % m)
        ratios = []
        for i in range(k):
            row = []
            for j in range(k):
                if i == j:
                    row.append(0.0)
                    continue
                d = embeddings[i].distance(embeddings[j])
                row.append(d)
                if j > i and true[i][j] > 1e-12:
                    ratios.append(d / true[i][j])
            lines.append(",".join("%.17g" % v for v in row))
        if ratios:
            lines.append(
                "# embedded/true ratio range [%.6g, %.6g]"
                % (min(ratios), max(ratios))
            )
    _emit(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_verify(args) -> int:
    if args.suite:
        results = [verify_module.run_suite(name, args.seed) for name in args.suite]
    else:
        results = verify_module.run_all(args.seed)
    for result in results:
        print(result.line())
        for note in result.notes:
            print(f"    note: {note}")
        for extra in result.failures[1:]:
            print(f"    also: {extra}")
    return 0 if all(r.passed for r in results) else 1


def cmd_whitney_export(args) -> int:
    domain = domain_from_json(args.domain)
    low = _vector(args.low)
    high = _vector(args.high)
    if len(low) != domain.dimension or len(high) != domain.dimension:
        raise DomainError(
            f"window corners must have dimension {domain.dimension}"
        )
    W = WhitneyDecomposition(domain)
    lines = []
    for cube in W.iter_selected_in_box(low, high, args.min_generation):
        record = {
            "generation": cube.generation,
            "corner": list(cube.corner),
            "side": cube.side,
            "low": cube.low.tolist(),
            "high": cube.high.tolist(),
        }
        if args.neighbors:
            record["neighbors"] = [
                [r.generation, *r.corner] for r in W.neighbors(cube)
            ]
        lines.append(json.dumps(record, separators=(",", ":")))
    _emit(args.out, "\n".join(lines) + ("\n" if lines else ""))
    print(f"{len(lines)} cubes", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padot",
        description="Partial transport distances on open domains: exact "
                    "solves, sparse embeddings, and verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("distance", help="distance between two saved tuples")
    p.add_argument("first", help="tuple JSON file")
    p.add_argument("second", help="tuple JSON file")
    p.add_argument("--p", type=float, default=2.0, help="cost exponent")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("embed", help="sparse embedding of a saved tuple")
    p.add_argument("tuple", help="tuple JSON file")
    p.add_argument("--m", type=int, default=None,
                   help="size cap; the tuple is padded to 2m (default: size)")
    p.add_argument("--directions", type=int, default=2,
                   help="direction family density")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser(
        "distortion-experiment",
        help="sample tuple pairs, compare true and embedded distances",
    )
    p.add_argument("--domain", required=True,
                   help="domain JSON (inline or a file path)")
    p.add_argument("--m", type=int, default=3, help="size cap per tuple")
    p.add_argument("--p", type=float, default=2.0, help="cost exponent")
    p.add_argument("--samples", type=int, default=100, help="number of pairs")
    p.add_argument("--seed", type=int, default=0, help="sampling seed")
    p.add_argument("--directions", type=int, default=2,
                   help="direction family density")
    p.add_argument("--out", default=None, help="CSV output file")
    p.set_defaults(func=cmd_distortion)

    p = sub.add_parser(
        "nondoubling-witness",
        help="equidistant point family near the boundary",
    )
    p.add_argument("--domain", required=True,
                   help="domain JSON (inline or a file path)")
    p.add_argument("--count", type=int, default=20, help="number of points")
    p.add_argument("--epsilon", type=float, default=0.01,
                   help="common pairwise distance")
    p.add_argument("--out", default=None, help="CSV output file")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("barcode", help="pairwise distances between barcode files")
    p.add_argument("files", nargs="+", help="CSV files with birth,death rows")
    p.add_argument("--p", type=float, default=2.0, help="cost exponent")
    p.add_argument("--embed", action="store_true",
                   help="also compare against embedded distances")
    p.add_argument("--m", type=int, default=None,
                   help="size cap for --embed (default: largest diagram)")
    p.add_argument("--directions", type=int, default=2,
                   help="direction family density for --embed")
    p.add_argument("--out", default=None, help="CSV output file")
    p.set_defaults(func=cmd_barcode)

    p = sub.add_parser("verify", help="run the verification battery")
    p.add_argument("--seed", type=int, default=verify_module.DEFAULT_SEED,
                   help="base seed for every suite")
    p.add_argument("--suite", action="append", default=None,
                   choices=[name for name, _, _ in verify_module.SUITES],
                   help="run only this suite (repeatable)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("whitney-export",
                       help="dump selected cubes meeting a window as JSONL")
    p.add_argument("--domain", required=True,
                   help="domain JSON (inline or a file path)")
    p.add_argument("--low", required=True, help="window low corner, comma-separated")
    p.add_argument("--high", required=True, help="window high corner, comma-separated")
    p.add_argument("--min-generation", type=int, default=-30,
                   help="skip cubes smaller than 2^k for this k")
    p.add_argument("--neighbors", action="store_true",
                   help="include neighbor keys per cube")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(func=cmd_whitney_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
