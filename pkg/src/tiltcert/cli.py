"""Command-line frontend: catalog and slope tables, the verification suite
with JSON reports, degree-3 margin scans, and SVG figures.

Exit codes: 0 success (and aggregate certified for `verify`), 1 verification
failure or inconclusive, 2 usage or input errors.
"""

import argparse
import re
import sys
from fractions import Fraction

from .certify import Region, default_region
from .chern import catalog_lookup, load_chern
from .heart import reduce_candidates, skyscraper_candidates
from .kernel import RationalInterval, format_rational, parse_rational
from .suite import verify_all
from .svg import emit_wall_svg, emit_zvectors_svg
from .tilt import (
    TiltParams,
    bg_margin_from_squared,
    central_charge,
    lambda_slope,
    mu,
    nu,
    nu_zero_alpha_squared,
    twist,
)
from .chern import quadric_catalog


class _Parser(argparse.ArgumentParser):
    """Parser that accepts negative rationals like -1/4 as flag values."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(
            r"^-\d+(/\d+)?(?:[:,]-?\d+(/\d+)?)*$"
        )


def _rational_arg(text):
    try:
        return parse_rational(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err))


def _region_arg(text):
    try:
        beta_part, alpha_part = text.split(",")
        blo, bhi = (parse_rational(x) for x in beta_part.split(":"))
        alo, ahi = (parse_rational(x) for x in alpha_part.split(":"))
        return RationalInterval(blo, bhi), RationalInterval(alo, ahi)
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"expected blo:bhi,alo:ahi ({err})")


def _positive_alpha(args):
    if args.alpha <= 0:
        print("--alpha: must be positive", file=sys.stderr)
        return False
    return True


def _load_character(path, flag):
    try:
        ch, _ = load_chern(path)
        return ch
    except (OSError, ValueError, KeyError) as err:
        print(f"{flag}: cannot load character from {path!r} ({err})", file=sys.stderr)
        return None


def _resolve_character(text, flag):
    """Catalog label or a JSON file path."""
    obj = catalog_lookup(text)
    if obj is not None:
        return obj.ch
    return _load_character(text, flag)


def _cmd_catalog(args):
    for obj in quadric_catalog():
        shift = "-" if obj.heart_shift is None else f"[{obj.heart_shift}]"
        stable = "yes" if obj.mu_stable else "no"
        print(f"{obj.label:6}  ch = {obj.ch}  heart shift {shift:>3}  mu-stable {stable}")
    return 0


def _cmd_slopes(args):
    obj = catalog_lookup(args.object)
    if obj is None:
        print(f"--object: unknown label {args.object!r}", file=sys.stderr)
        return 2
    if not _positive_alpha(args):
        return 2
    p = TiltParams(args.alpha, args.beta, args.s)
    twisted = twist(obj.ch, p.beta)
    z = central_charge(obj.ch, p)
    print(f"object {obj.label}: ch = {obj.ch}")
    print(f"twisted ch at beta = {format_rational(p.beta)}: {twisted}")
    print(f"mu = {mu(obj.ch, p)}")
    print(f"nu = {nu(obj.ch, p)}")
    print(f"lambda = {lambda_slope(obj.ch, p)}")
    print(f"Z = {z}")
    return 0


def _region_from_args(args):
    if args.region is None:
        return default_region()
    beta_iv, alpha_iv = args.region
    return Region(
        beta=beta_iv,
        alpha=alpha_iv,
        beta_open=(False, False),
        alpha_open=(True, True),
        side=None,
    )


def _cmd_verify(args):
    region = _region_from_args(args)
    report = verify_all(max_depth=args.max_depth, region=region)
    for item in report.items:
        line = f"[{item.status}] {item.name}"
        if item.witness is not None:
            line += (
                f"  witness alpha = {format_rational(item.witness[0])},"
                f" beta = {format_rational(item.witness[1])}"
            )
        print(line)
        if item.status != "certified":
            for note in item.notes:
                print(f"    note: {note}")
    print(f"aggregate: {report.status}")
    if args.json is not None:
        with open(args.json, "w", encoding="utf-8") as handle:
            handle.write(report.to_json())
            handle.write("\n")
    return 0 if report.status == "certified" else 1


def _cmd_subobjects(args):
    candidates = skyscraper_candidates()
    reduced = reduce_candidates(candidates)
    print(f"{len(candidates.vectors)} candidate subobject dimension vectors:")
    for vec in candidates.vectors:
        how = reduced.derivation[vec]
        text = "base" if how == "base" else "; ".join(edge.describe() for edge in how)
        print(f"  {vec}: {text}")
    return 0


def _cmd_bg(args):
    ch = _load_character(args.chern, "--chern")
    if ch is None:
        return 2
    if args.region is not None:
        beta_iv, _ = args.region
    else:
        beta_iv = RationalInterval(Fraction(-1, 2), Fraction(0))
    margins = []
    for i in range(args.grid + 1):
        beta = beta_iv.lo + Fraction(i, args.grid) * beta_iv.width
        squared = nu_zero_alpha_squared(ch, beta)
        if squared is None or squared <= 0:
            print(f"beta = {format_rational(beta)}: no nu = 0 locus")
            continue
        margin = bg_margin_from_squared(ch, squared, beta, args.s)
        margins.append(margin)
        print(
            f"beta = {format_rational(beta)}: alpha^2 = {format_rational(squared)},"
            f" margin = {format_rational(margin)}"
        )
    if margins:
        print(f"minimum margin = {format_rational(min(margins))}")
    else:
        print("no admissible points in the scan")
    return 0


def _cmd_plot_zvectors(args):
    if not _positive_alpha(args):
        return 2
    p = TiltParams(args.alpha, args.beta, args.s)
    emit_zvectors_svg(p, args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_plot_wall(args):
    v = _resolve_character(args.chern1, "--chern1")
    if v is None:
        return 2
    w = _resolve_character(args.chern2, "--chern2")
    if w is None:
        return 2
    if args.region is not None:
        beta_iv, alpha_iv = args.region
    else:
        beta_iv = RationalInterval(Fraction(-1, 2), Fraction(0))
        alpha_iv = RationalInterval(Fraction(0), Fraction(1, 3))
    emit_wall_svg(v, w, args.grid, args.out, beta_iv, alpha_iv)
    print(f"wrote {args.out}")
    return 0


def _build_parser():
    parser = _Parser(
        prog="tiltcert",
        description="Exact certificates for tilt-stability computations on the quadric threefold.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list the built-in objects")
    p.set_defaults(handler=_cmd_catalog)

    p = sub.add_parser("slopes", help="slopes and central charge at a point")
    p.add_argument("--alpha", type=_rational_arg, required=True)
    p.add_argument("--beta", type=_rational_arg, required=True)
    p.add_argument("--s", type=_rational_arg, default=Fraction(1, 6))
    p.add_argument("--object", required=True, help="catalog label, e.g. S-1 or O(1)")
    p.set_defaults(handler=_cmd_slopes)

    p = sub.add_parser("verify", help="run the full verification suite")
    p.add_argument("--max-depth", type=int, default=16)
    p.add_argument("--region", type=_region_arg, default=None, metavar="blo:bhi,alo:ahi")
    p.add_argument("--json", default=None, metavar="PATH", help="write the JSON report here")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("subobjects", help="skyscraper subobject candidates and dominance")
    p.set_defaults(handler=_cmd_subobjects)

    p = sub.add_parser("bg", help="degree-3 margin scan along the nu = 0 locus")
    p.add_argument("--chern", required=True, metavar="PATH", help="character JSON file")
    p.add_argument("--s", type=_rational_arg, default=Fraction(1, 6))
    p.add_argument("--grid", type=int, default=16)
    p.add_argument("--region", type=_region_arg, default=None, metavar="blo:bhi,alo:ahi")
    p.set_defaults(handler=_cmd_bg)

    p = sub.add_parser("plot", help="emit SVG figures")
    plot_sub = p.add_subparsers(dest="figure", required=True)

    pz = plot_sub.add_parser("zvectors", help="central-charge arrows at a point")
    pz.add_argument("--alpha", type=_rational_arg, required=True)
    pz.add_argument("--beta", type=_rational_arg, required=True)
    pz.add_argument("--s", type=_rational_arg, default=Fraction(1, 6))
    pz.add_argument("-o", "--out", default="zvectors.svg")
    pz.set_defaults(handler=_cmd_plot_zvectors)

    pw = plot_sub.add_parser("wall", help="numerical wall contour between two characters")
    pw.add_argument("--chern1", required=True, help="catalog label or JSON path")
    pw.add_argument("--chern2", required=True, help="catalog label or JSON path")
    pw.add_argument("--grid", type=int, default=64)
    pw.add_argument("--region", type=_region_arg, default=None, metavar="blo:bhi,alo:ahi")
    pw.add_argument("-o", "--out", default="wall.svg")
    pw.set_defaults(handler=_cmd_plot_wall)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def run(argv):
    """Programmatic entry point; returns the exit code."""
    try:
        return main(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
