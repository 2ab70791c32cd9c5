"""Command-line front end.

Exit codes: 0 success, 1 negative or inconclusive result, 2 input error,
3 resource exhausted.  ``--json`` switches stdout to a stable
machine-readable document.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import fixtures as fixtures_mod
from . import realize as realize_mod
from .errors import (
    DomainError,
    FixtureCorrupt,
    Overdetermined,
    PatternFormatError,
    PrecisionExhausted,
    ResourceExhausted,
    SignRankError,
)
from .geometry import (
    dualize,
    encode_configuration,
    load_configuration,
    save_configuration,
    stack,
)
from .pattern import (
    MrBoundsOptions,
    condense,
    is_equivalent,
    is_mr2,
    load_pattern,
    mr_bounds,
    save_pattern,
)
from .svg import render_svg

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_RESOURCES = 3


def _default_threads() -> int:
    env = os.environ.get("SIGNRANK_THREADS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _emit(args, document: dict, text: str) -> None:
    if args.json:
        json.dump(document, sys.stdout, indent=1, default=str)
        sys.stdout.write("\n")
    else:
        print(text)


def _witness_doc(w) -> dict:
    return {
        "row_perm": list(w.row_perm),
        "col_perm": list(w.col_perm),
        "row_signs": list(w.row_signs),
        "col_signs": list(w.col_signs),
    }


def _cmd_condense(args) -> int:
    A = load_pattern(args.pattern)
    report = condense(A)
    if args.output:
        save_pattern(report.condensed, args.output)
    doc = {
        "condensed": report.condensed.to_text().splitlines(),
        "kept_rows": list(report.kept_rows),
        "kept_cols": list(report.kept_cols),
        "log": [
            {"axis": e.axis, "kind": e.kind, "index": e.index, "survivor": e.survivor}
            for e in report.log
        ],
    }
    shape = f"{report.condensed.m}x{report.condensed.n}"
    text = f"condensed to {shape}:\n{report.condensed.to_text()}" if report.condensed.m else "condensed to the empty pattern"
    _emit(args, doc, text)
    return EXIT_OK


def _cmd_mr(args) -> int:
    A = load_pattern(args.pattern)
    opts = MrBoundsOptions(
        sns_cap=args.sns_cap,
        try_rank=args.try_rank,
        seed=args.seed,
        restarts=args.restarts,
        threads=args.threads,
    )
    bounds = mr_bounds(A, opts)
    # the most specific evidence for each bound is recorded last
    lower_ev = next(
        (e for e in reversed(bounds.evidence) if e[0] in ("lower", "exact") and e[1] == bounds.lower),
        None,
    )
    upper_ev = next(
        (e for e in reversed(bounds.evidence) if e[0] in ("upper", "exact") and e[1] == bounds.upper),
        None,
    )
    lo_text = lower_ev[2] if lower_ev else "none"
    up_text = upper_ev[2] if upper_ev else "none"
    if bounds.lower == bounds.upper:
        text = f"mr = {bounds.lower} (lower: {lo_text}; upper: {up_text})"
    else:
        text = f"mr in [{bounds.lower}, {bounds.upper}] (lower: {lo_text}; upper: {up_text})"
    doc = {
        "lower": bounds.lower,
        "upper": bounds.upper,
        "evidence": [list(e) for e in bounds.evidence],
    }
    _emit(args, doc, text)
    return EXIT_OK if bounds.lower == bounds.upper else EXIT_NEGATIVE


def _cmd_mr2(args) -> int:
    A = load_pattern(args.pattern)
    result = is_mr2(A)
    doc = {"mr2": result.value}
    if result.witness is not None:
        doc["witness"] = _witness_doc(result.witness)
        arranged = result.witness.apply(result.condensation.condensed)
        text = "minimum rank 2: yes\nnondecreasing arrangement:\n" + arranged.to_text()
    else:
        text = "minimum rank 2: no"
    _emit(args, doc, text)
    return EXIT_OK if result.value else EXIT_NEGATIVE


def _cmd_encode(args) -> int:
    C = load_configuration(args.config)
    P = encode_configuration(C)
    if args.output:
        save_pattern(P, args.output)
    _emit(args, {"pattern": P.to_text().splitlines()}, P.to_text())
    return EXIT_OK


def _cmd_realize(args) -> int:
    A = load_pattern(args.pattern)
    params = realize_mod.SearchParams(
        restarts=args.restarts,
        iters=args.iters,
        seed=args.seed,
        threads=args.threads,
        direct=args.direct,
    )
    real = realize_mod.search_realization(A, args.rank, params)
    if real is None:
        _emit(
            args,
            {"found": False},
            f"no rank-{args.rank} realization found within "
            f"{args.restarts} restarts (inconclusive)",
        )
        return EXIT_NEGATIVE
    if args.output:
        realize_mod.save_realization(real, args.output)
    doc = {"found": True, "r": real.r, "margin": real.margin(), "output": args.output}
    _emit(args, doc, f"rank-{real.r} realization found (margin {real.margin():.3g})")
    return EXIT_OK


def _cmd_rationalize(args) -> int:
    A = load_pattern(args.pattern)
    real = realize_mod.load_realization(getattr(args, "from"))
    if args.by_rows:
        cert_t = realize_mod.rationalize(
            A.transpose(), realize_mod.transpose_realization(real)
        )
        matrix = tuple(zip(*cert_t.matrix))
        cert = realize_mod.RationalCertificate(matrix, cert_t.rank, A)
    else:
        cert = realize_mod.rationalize(A, real)
    if not cert.verify():
        raise SignRankError("internal error: certificate failed re-verification")
    if args.output:
        realize_mod.save_certificate(cert, args.output)
    doc = {"rank": cert.rank, "verified": True, "output": args.output}
    _emit(
        args,
        doc,
        f"exact rational certificate written: rank {cert.rank}, signs verified",
    )
    return EXIT_OK


def _cmd_compose(args) -> int:
    C1 = load_configuration(args.config1)
    C2 = load_configuration(args.config2)
    C = stack(C1, C2)
    save_configuration(C, args.output)
    doc = {
        "points": C.num_points,
        "hyperplanes": C.num_hyperplanes,
        "dim": C.dim,
        "output": args.output,
    }
    _emit(
        args,
        doc,
        f"stacked configuration: {C.num_points} points, "
        f"{C.num_hyperplanes} hyperplanes in dimension {C.dim}",
    )
    return EXIT_OK


def _cmd_dual(args) -> int:
    C = load_configuration(args.config)
    result = dualize(C)
    save_configuration(result.configuration, args.output)
    doc = {
        "flipped_hyperplanes": [j + 1 for j in result.hyperplane_flips],
        "output": args.output,
    }
    flips = ", ".join(str(j + 1) for j in result.hyperplane_flips) or "none"
    _emit(args, doc, f"dual configuration written (re-oriented hyperplanes: {flips})")
    return EXIT_OK


def _cmd_equiv(args) -> int:
    A = load_pattern(args.pattern_a)
    B = load_pattern(args.pattern_b)
    witness = is_equivalent(A, B)
    if witness is None:
        _emit(args, {"equivalent": False}, "not equivalent")
        return EXIT_NEGATIVE
    _emit(
        args,
        {"equivalent": True, "witness": _witness_doc(witness)},
        "equivalent\nrow perm: "
        + " ".join(str(i + 1) for i in witness.row_perm)
        + "\ncol perm: "
        + " ".join(str(j + 1) for j in witness.col_perm)
        + "\nrow signs: "
        + " ".join("+" if s > 0 else "-" for s in witness.row_signs)
        + "\ncol signs: "
        + " ".join("+" if s > 0 else "-" for s in witness.col_signs),
    )
    return EXIT_OK


def _cmd_render(args) -> int:
    C = load_configuration(args.config)
    bbox = None
    if args.bbox:
        try:
            bbox = tuple(float(v) for v in args.bbox.split(","))
        except ValueError:
            raise DomainError(f"malformed bbox {args.bbox!r}; expected x0,y0,x1,y1")
        if len(bbox) != 4:
            raise DomainError(f"bbox needs 4 numbers, got {len(bbox)}")
    doc_text = render_svg(C, bbox)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(doc_text + "\n")
    _emit(args, {"output": args.output}, f"wrote {args.output}")
    return EXIT_OK


def _cmd_fixtures(args) -> int:
    written = fixtures_mod.export_fixtures(args.export)
    _emit(
        args,
        {"written": [str(p) for p in written]},
        "\n".join(f"wrote {p}" for p in written),
    )
    return EXIT_OK


def _cmd_selfcheck(args) -> int:
    report = fixtures_mod.derive_perles_check()
    A0 = fixtures_mod.fixture("A0").payload
    from .pattern import is_sns

    checks = list(report.checks)
    sub = A0.submatrix((3, 4, 5), (6, 7, 8))
    if not is_sns(sub):
        raise FixtureCorrupt("A0 rows {4,5,6} x cols {7,8,9} is not sign-nonsingular")
    checks.append(("sns", "A0 rows 4,5,6 / cols 7,8,9 is sign-nonsingular"))
    fig_pattern = fixtures_mod.fixture("fig21_pattern").payload
    fig_config = fixtures_mod.fixture("fig21_config").payload
    if encode_configuration(fig_config) != fig_pattern:
        raise FixtureCorrupt("fig21_config does not encode to fig21_pattern")
    checks.append(("fig21", "stored 3x3 configuration encodes to its pattern"))
    doc = {"ok": True, "checks": [list(c) for c in checks]}
    _emit(args, doc, "\n".join(f"ok  {name}: {detail}" for name, detail in checks))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="signrank",
        description="Minimum-rank bounds, exact certificates, and "
        "point-hyperplane encodings for sign patterns.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument(
        "--threads",
        type=int,
        default=_default_threads(),
        help="worker threads for randomized searches (default: all cores, "
        "or SIGNRANK_THREADS); results do not depend on this",
    )

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("condense", parents=[common], help="condense a pattern")
    p.add_argument("pattern")
    p.add_argument("-o", "--output", help="write the condensed pattern here")
    p.set_defaults(func=_cmd_condense)

    p = sub.add_parser("mr", parents=[common], help="minimum-rank bounds with evidence")
    p.add_argument("pattern")
    p.add_argument("--sns-cap", type=int, default=4, help="largest SNS submatrix size tried")
    p.add_argument("--try-rank", type=int, default=None, help="also search a realization at this rank")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=64)
    p.set_defaults(func=_cmd_mr)

    p = sub.add_parser("mr2", parents=[common], help="exact minimum-rank-2 decision")
    p.add_argument("pattern")
    p.set_defaults(func=_cmd_mr2)

    p = sub.add_parser("encode", parents=[common], help="encode a configuration into a pattern")
    p.add_argument("config")
    p.add_argument("-o", "--output", help="write the pattern here")
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("realize", parents=[common], help="search a rank-r sign realization")
    p.add_argument("pattern")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--iters", type=int, default=5000)
    p.add_argument("--direct", action="store_true", help="pin identity signatures")
    p.add_argument("-o", "--output", help="write the realization here")
    p.set_defaults(func=_cmd_realize)

    p = sub.add_parser("rationalize", parents=[common], help="exact rational certificate from a realization")
    p.add_argument("pattern")
    p.add_argument("--from", required=True, help="realization file")
    p.add_argument("--by-rows", action="store_true", help="apply the row-wise variant (transpose route)")
    p.add_argument("-o", "--output", help="write the certificate here")
    p.set_defaults(func=_cmd_rationalize)

    p = sub.add_parser("compose", parents=[common], help="stack two configurations")
    p.add_argument("config1")
    p.add_argument("config2")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("dual", parents=[common], help="orientation-preserving dual transform")
    p.add_argument("config")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_dual)

    p = sub.add_parser("equiv", parents=[common], help="permutation/signature equivalence")
    p.add_argument("pattern_a")
    p.add_argument("pattern_b")
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("render", parents=[common], help="render a planar configuration to SVG")
    p.add_argument("config")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--bbox", help="x0,y0,x1,y1")
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("fixtures", parents=[common], help="export the built-in fixtures")
    p.add_argument("--export", required=True, metavar="DIR")
    p.set_defaults(func=_cmd_fixtures)

    p = sub.add_parser("selfcheck", parents=[common], help="run the exact fixture verifications")
    p.set_defaults(func=_cmd_selfcheck)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (Overdetermined, PrecisionExhausted) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except ResourceExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCES
    except (PatternFormatError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FixtureCorrupt as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except SignRankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
