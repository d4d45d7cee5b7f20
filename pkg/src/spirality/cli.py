"""Command-line front end: manifest ingestion, dispatch, exact reporting.

Commands: validate, aspiral, rw, fdtc, gen, crosscheck. Output is
deterministic for identical inputs and flags (no timestamps unless
--timestamps), all numbers are exact rationals rendered as "p/q", and the
exit code contract is stable: 0 success, 1 domain error or failed check,
2 parse/IO error. Styling is plain ANSI on verdict words only, active on a
terminal and disabled by the SPIRALITY_NO_COLOR environment variable.
"""

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .errors import SpiralityError, ParseError, error as diag_error
from .rational import format_rational
from . import graph as jsj
from . import flow
from . import generators
from . import manifest as mf
from .lattice import fdtc as fdtc_value

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_PARSE = 2

_COLORS = {"green": "32", "red": "31", "yellow": "33"}


def _style(text, color, enabled):
    if not enabled:
        return text
    return "\x1b[%sm%s\x1b[0m" % (_COLORS[color], text)


@dataclass
class Report:
    command: str
    digest: str
    results: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def add(self, label, value, color=None):
        self.results.append((label, value, color))

    def warn(self, message):
        self.warnings.append(message)


def _render(report, args):
    if args.timestamps:
        report.add("timestamp", datetime.now(timezone.utc).isoformat())
    if args.format == "structured":
        doc = {
            "command": report.command,
            "digest": report.digest,
            "results": [{"label": label, "value": value}
                        for label, value, _ in report.results],
            "warnings": list(report.warnings),
        }
        print(json.dumps(doc, indent=2))
        return
    color_on = (sys.stdout.isatty()
                and not os.environ.get("SPIRALITY_NO_COLOR"))
    print("command: %s" % report.command)
    print("digest: %s" % report.digest)
    for label, value, color in report.results:
        shown = _style(value, color, color_on) if color else value
        print("%s: %s" % (label, shown))
    for message in report.warnings:
        print("warning: %s" % _style(message, "yellow", color_on))


def _digest(data):
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _read_file(path):
    try:
        with open(path, "rb") as handle:
            return handle.read()
    except OSError as err:
        raise ParseError("cannot read %s: %s" % (path, err.strerror))


def _load(path, args):
    raw = _read_file(path)
    parsed = mf.parse_manifest(raw.decode("utf-8"), strict=not args.lenient,
                               allow_rational_h=args.allow_rational_h)
    return parsed, _digest(raw)


def _convention(args):
    return flow.SideConvention(args.side_convention)


def _yesno(flag):
    return ("yes", "green") if flag else ("no", "red")


def cmd_validate(args):
    parsed, digest = _load(args.path, args)
    report = Report("validate", digest)
    for w in parsed.warnings:
        report.warn(w)
    diagnostics = []
    if parsed.graph is not None:
        diagnostics += jsj.validate(parsed.graph)
    if parsed.flow is not None:
        diagnostics += flow.validate_manifest(parsed.flow)
    if parsed.loop is not None:
        if parsed.flow is None:
            diagnostics.append(diag_error(
                "DanglingReference", "loop given without pieces/tori sections"))
        elif not any(d.is_error for d in diagnostics):
            loop = flow.normalize_itinerary(parsed.loop, _convention(args))
            diagnostics += flow.validate_itinerary(loop, parsed.flow)
    if parsed.fdtc is not None and parsed.fdtc.e.multiplicity != 1:
        diagnostics.append(diag_error(
            "BadReductionCurve", "fdtc reduction curve must have multiplicity 1"))
    errors = [d for d in diagnostics if d.is_error]
    for d in diagnostics:
        report.add(d.severity, "%s: %s" % (d.code, d.message),
                   "red" if d.is_error else "yellow")
    status, color = ("ok", "green") if not errors else ("invalid", "red")
    report.add("status", status, color)
    _render(report, args)
    return EXIT_OK if not errors else EXIT_DOMAIN


def _graph_for_aspiral(parsed, args, report):
    if parsed.graph is not None:
        _fail_on_errors(jsj.validate(parsed.graph), report, args)
        return parsed.graph, None
    if parsed.flow is not None and parsed.loop is not None:
        loop = flow.normalize_itinerary(parsed.loop, _convention(args))
        _fail_on_errors(flow.validate_manifest(parsed.flow), report, args)
        _fail_on_errors(flow.validate_itinerary(loop, parsed.flow), report, args)
        report.add("note", "graph decorated from the flow manifest along the loop")
        g, cycle = flow.decorate_from_flow(loop, parsed.flow)
        return g, cycle
    raise SpiralityError("manifest carries neither a graph nor a flow+loop pair")


class _Invalid(Exception):
    pass


def _fail_on_errors(diagnostics, report, args):
    errors = [d for d in diagnostics if d.is_error]
    for d in diagnostics:
        if d.is_error:
            report.add("error", "%s: %s" % (d.code, d.message), "red")
        else:
            report.warn(str(d))
    if errors:
        raise _Invalid()


def cmd_aspiral(args):
    parsed, digest = _load(args.path, args)
    report = Report("aspiral", digest)
    for w in parsed.warnings:
        report.warn(w)
    try:
        g, _ = _graph_for_aspiral(parsed, args, report)
    except _Invalid:
        _render(report, args)
        return EXIT_DOMAIN
    char = jsj.character(g)
    for cycle, value in zip(char.basis, char.values):
        report.add("s(%s)" % cycle, format_rational(value))
    for vertex_id, sign in char.internal_signs:
        report.add("s(internal loops at %s)" % vertex_id, format_rational(sign))
    v = jsj.verdict(g)
    answer = "yes (vacuous)" if v.aspiral and v.vacuous else _yesno(v.aspiral)[0]
    report.add("aspiral", answer, "green" if v.aspiral else "red")
    if not v.aspiral:
        report.add("witness cycle", str(v.witness))
        report.add("witness value", format_rational(v.witness_value))
    report.add("virtually embedded", *_yesno(v.virtually_embedded))
    report.add("virtually a taut-foliation leaf", *_yesno(v.virtually_taut_leaf))
    _render(report, args)
    return EXIT_OK


def _require_flow_loop(parsed):
    if parsed.flow is None or parsed.loop is None:
        raise SpiralityError("this command needs a flow manifest with a loop "
                             "(\"pieces\", \"tori\" and \"loop\" sections)")


def cmd_rw(args):
    parsed, digest = _load(args.path, args)
    report = Report("rw", digest)
    for w in parsed.warnings:
        report.warn(w)
    _require_flow_loop(parsed)
    loop = flow.normalize_itinerary(parsed.loop, _convention(args))
    try:
        _fail_on_errors(flow.validate_manifest(parsed.flow), report, args)
        _fail_on_errors(flow.validate_itinerary(loop, parsed.flow), report, args)
    except _Invalid:
        _render(report, args)
        return EXIT_DOMAIN
    total = flow.flow_spirality(loop, parsed.flow)
    for i, crossing in enumerate(loop.crossings):
        report.add("sigma[%d] (torus %s)" % (i, crossing.torus),
                   format_rational(flow.sigma(crossing, parsed.flow)))
    for i, segment in enumerate(flow.segments_of(loop, parsed.flow)):
        report.add("rho[%d] (piece %s)" % (i, segment.piece),
                   format_rational(flow.rho(segment, parsed.flow)))
    if flow.equiperiodic_rho_is_one(parsed.flow):
        report.add("note", "leaf lengths are constant per piece; "
                           "the rho factors are all 1")
    report.add("spirality", format_rational(total))
    if parsed.expected is not None:
        matches = total == parsed.expected
        report.add("expected", format_rational(parsed.expected))
        report.add("matches expected", *_yesno(matches))
        _render(report, args)
        return EXIT_OK if matches else EXIT_DOMAIN
    _render(report, args)
    return EXIT_OK


def cmd_fdtc(args):
    parsed, digest = _load(args.path, args)
    report = Report("fdtc", digest)
    for w in parsed.warnings:
        report.warn(w)
    if parsed.fdtc is None:
        raise SpiralityError("this command needs an \"fdtc\" section")
    data = parsed.fdtc
    value = fdtc_value(data.l_plus, data.l_minus, data.e, data.m)
    report.add("fdtc", format_rational(value))
    if value == 0:
        report.add("note", "degeneracy slopes match; the coefficient vanishes")
    _render(report, args)
    return EXIT_OK


def cmd_gen(args):
    if args.kind == "twist-family":
        params = _twist_family_params(args)
        instance = generators.gen_twist_family(params)
        text = mf.dumps_manifest(flow_manifest=instance.manifest,
                                 loop=instance.loop,
                                 fdtc=mf.FdtcInput(instance.l_plus, instance.l_minus,
                                                   instance.reduction_curve, 1),
                                 expected=instance.expected)
    else:
        m, loop = generators.gen_matched_slopes(args.n_pieces, args.seed)
        text = mf.dumps_manifest(flow_manifest=m, loop=loop, expected=1)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
        report = Report("gen", _digest(text.encode("utf-8")))
        report.add("kind", args.kind)
        report.add("wrote", args.out)
        if args.kind == "twist-family":
            report.add("expected", format_rational(instance.expected))
        _render(report, args)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _twist_family_params(args):
    k = args.k
    r_minus, r_plus = args.r_minus, args.r_plus
    # derive missing twist exponents from k, keeping both positive
    if r_minus is None and r_plus is None:
        r_minus = 1 + max(0, k)
        r_plus = r_minus - k
    elif r_minus is None:
        r_minus = r_plus + k
    elif r_plus is None:
        r_plus = r_minus - k
    return generators.TwistFamilyParams(k=k, p=args.p, q=args.q,
                                     r_minus=r_minus, r_plus=r_plus, d=args.d)


def cmd_crosscheck(args):
    report = Report("crosscheck", "")
    cases = []
    if args.random:
        report.digest = _digest(("random:%d:%d" % (args.random, args.seed))
                                .encode("utf-8"))
        for i in range(args.random):
            m, loop = generators.gen_random_flow(args.seed + i)
            cases.append(("seed %d" % (args.seed + i), m, loop))
    else:
        if not args.paths:
            raise SpiralityError("crosscheck needs manifest paths or --random N")
        blob = hashlib.sha256()
        loaded = []
        for path in args.paths:
            raw = _read_file(path)
            blob.update(raw)
            parsed = mf.parse_manifest(raw.decode("utf-8"),
                                       strict=not args.lenient,
                                       allow_rational_h=args.allow_rational_h)
            for w in parsed.warnings:
                report.warn(w)
            _require_flow_loop(parsed)
            loop = flow.normalize_itinerary(parsed.loop, _convention(args))
            loaded.append((path, parsed.flow, loop))
        report.digest = "sha256:" + blob.hexdigest()
        cases = loaded

    mismatches = 0
    for label, m, loop in cases:
        direct = flow.flow_spirality(loop, m)
        g, cycle = flow.decorate_from_flow(loop, m)
        via_graph = jsj.cycle_spirality(g, cycle)
        if direct == via_graph:
            report.add(label, "%s == %s MATCH" % (format_rational(direct),
                                                  format_rational(via_graph)),
                       "green")
        else:
            mismatches += 1
            report.add(label, "%s != %s MISMATCH" % (format_rational(direct),
                                                     format_rational(via_graph)),
                       "red")
    report.add("checked", str(len(cases)))
    report.add("mismatches", str(mismatches), "red" if mismatches else "green")
    _render(report, args)
    return EXIT_OK if mismatches == 0 else EXIT_DOMAIN


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text",
                        help="report format (structured is JSON)")
    common.add_argument("--lenient", action="store_true",
                        help="warn on unknown manifest fields instead of rejecting")
    common.add_argument("--allow-rational-h", action="store_true",
                        help="accept non-integral h values given as \"p/q\" strings")
    common.add_argument("--side-convention",
                        choices=tuple(c.value for c in flow.SideConvention),
                        default=flow.SideConvention.FROM_LEAVES.value,
                        help="whether a crossing's from_side names the side the "
                             "loop leaves (default) or enters")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for the random generators")
    common.add_argument("--timestamps", action="store_true",
                        help="include a timestamp in reports (off by default for "
                             "reproducible output)")

    parser = argparse.ArgumentParser(
        prog="spirality",
        description="Exact spirality computations on combinatorial JSJ data.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common],
                       help="check a manifest file; exit 1 on errors")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("aspiral", parents=[common],
                       help="character basis values, aspirality and the "
                            "embedding verdict")
    p.add_argument("path")
    p.set_defaults(func=cmd_aspiral)

    p = sub.add_parser("rw", parents=[common],
                       help="flow-transverse spirality with per-crossing sigma "
                            "and per-segment rho factors")
    p.add_argument("path")
    p.set_defaults(func=cmd_rw)

    p = sub.add_parser("fdtc", parents=[common],
                       help="fractional Dehn twist coefficient from slope data")
    p.add_argument("path")
    p.set_defaults(func=cmd_fdtc)

    p = sub.add_parser("gen", parents=[common],
                       help="generate an example manifest")
    p.add_argument("kind", choices=("twist-family", "matched-slopes"))
    p.add_argument("--k", type=int, default=1, help="twist coefficient (twist-family)")
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--r-minus", type=int, default=None)
    p.add_argument("--r-plus", type=int, default=None)
    p.add_argument("--d", type=int, default=1, help="elevation degree (twist-family)")
    p.add_argument("--n-pieces", type=int, default=3,
                   help="number of pieces (matched-slopes)")
    p.add_argument("--out", help="write the manifest here instead of stdout")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("crosscheck", parents=[common],
                       help="assert the direct formula and the decorated-graph "
                            "route agree; exit 1 on any mismatch")
    p.add_argument("paths", nargs="*")
    p.add_argument("--random", type=int, default=0, metavar="N",
                   help="check N seeded random manifests instead of files")
    p.set_defaults(func=cmd_crosscheck)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as err:
        print("parse error: %s" % err, file=sys.stderr)
        return EXIT_PARSE
    except SpiralityError as err:
        print("error: %s" % err, file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
