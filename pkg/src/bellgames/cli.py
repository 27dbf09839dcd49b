"""Command-line front end.

Wherever a file is expected, ``preset:NAME`` or ``preset:vb_game:c=V`` may be
given instead.  Priors also accept ``uniform`` and ``unit``.

Exit codes: 0 success or passed check, 1 failed check (not an equilibrium,
signaling behavior, infeasible synthesis), 2 usage or parse error,
3 internal limit such as the vertex-enumeration ceiling.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import documents as docs
from .analysis import classify_behavior, expected_payoff, gap_report, local_bound, ns_bound
from .equilibrium import check_ex_ante, check_ex_post
from .model import Behavior, Game, ModelError, Prior, Scenario, validate_behavior
from .numeric import ScalarParseError, QuadExt, parse_scalar, render
from .polytope import DEFAULT_VERTEX_CEILING, ScenarioTooLarge, enumerate_ns_vertices, is_local
from .presets import PresetError, canonical_prior, declared_tolerance, preset
from .synthesis import SynthesisError, SynthesisOptions, synthesize_game

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3
DECIMAL_DEFAULT_TOLERANCE = QuadExt(Fraction(2, 10000))


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- loading ----------------------------------------------------------------


def _parse_preset_ref(ref):
    parts = ref.split(":")[1:]
    if not parts or not parts[0]:
        raise UsageError(f"malformed preset reference {ref!r}")
    name, c = parts[0], None
    for extra in parts[1:]:
        key, _, value = extra.partition("=")
        if key != "c" or not value:
            raise UsageError(f"unknown preset option {extra!r}")
        c = parse_scalar(value)
    return name, c


def _load(ref):
    """Return ``(object_or_dict, preset_name_or_None, raw_dict_or_None)``."""
    if ref.startswith("preset:"):
        name, c = _parse_preset_ref(ref)
        return preset(name, c), name, None
    raw = docs.load_json(ref)
    return raw, None, raw


def _has_decimal(t):
    if isinstance(t, list):
        return any(_has_decimal(v) for v in t)
    return isinstance(t, str) and "." in t


def load_game(ref):
    obj, name, raw = _load(ref)
    if raw is not None:
        obj = docs.game_from_dict(raw)
    if not isinstance(obj, Game):
        raise UsageError(f"{ref} is not a Bayesian game")
    return obj, name


def load_behavior(ref):
    """Behavior plus its default tolerance (nonzero for decimal-derived tables)."""
    obj, name, raw = _load(ref)
    if raw is not None:
        obj = docs.behavior_from_dict(raw)
        tol = DECIMAL_DEFAULT_TOLERANCE if _has_decimal(raw.get("p")) else QuadExt(0)
    else:
        tol = declared_tolerance(name)
    if not isinstance(obj, Behavior):
        raise UsageError(f"{ref} is not a behavior")
    return obj, tol


def load_prior(ref, scenario, game_preset=None):
    if ref is None:
        if game_preset is not None:
            try:
                return canonical_prior(game_preset)
            except PresetError:
                pass
        return Prior.uniform(scenario)
    if ref == "uniform":
        return Prior.uniform(scenario)
    if ref == "unit":
        return Prior.unit(scenario)
    obj, _, raw = _load(ref)
    if raw is not None:
        obj = docs.prior_from_dict(raw)
    if not isinstance(obj, Prior):
        raise UsageError(f"{ref} is not a prior")
    return obj


def load_scenario(ref):
    obj, _, raw = _load(ref)
    if raw is not None:
        if "alice_actions" in raw:
            return docs.scenario_from_dict(raw)
        return docs.scenario_from_dict(docs.require_field(raw, "scenario", "document"))
    if isinstance(obj, Scenario):
        return obj
    if isinstance(obj, (Game, Behavior)):
        return obj.scenario
    raise UsageError(f"{ref} does not define a scenario")


# -- output -----------------------------------------------------------------


class _Out:
    def __init__(self, args, stream):
        self.json = args.json
        self.approx = args.approx
        self.stream = stream

    def num(self, v):
        s = render(v)
        if self.approx is not None and not (v.is_rational and v.rat.denominator == 1):
            s += f" (~{v.approx(self.approx)})"
        return s

    def line(self, text=""):
        print(text, file=self.stream)

    def dump(self, doc):
        print(json.dumps(doc, indent=2), file=self.stream)


def _tolerance(args, default):
    return default if args.tolerance is None else args.tolerance


# -- commands ---------------------------------------------------------------


def cmd_validate(args, out):
    behavior, default_tol = load_behavior(args.behavior)
    if args.scenario is not None and load_scenario(args.scenario) != behavior.scenario:
        raise ModelError("behavior does not match the given scenario")
    tol = _tolerance(args, default_tol)
    report = validate_behavior(behavior, tol)
    if out.json:
        out.dump({"tolerance": render(tol), "ok": report.ok, **docs.validation_to_dict(report)})
    else:
        out.line(f"tolerance: {out.num(tol)}")
        out.line(f"nonnegative and normalized: {'pass' if report.normalized else 'fail'}")
        out.line(f"no-signaling (Alice marginals): {'pass' if report.alice_no_signaling else 'fail'}")
        out.line(f"no-signaling (Bob marginals): {'pass' if report.bob_no_signaling else 'fail'}")
        for f in report.failures:
            out.line(f"  {f.kind} at {f.where}: residual {out.num(f.residual)}")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_payoff(args, out):
    game, gname = load_game(args.game)
    behavior, _ = load_behavior(args.behavior)
    prior = load_prior(args.prior, game.scenario, gname)
    ua, ub = expected_payoff(game, behavior, prior)
    if out.json:
        out.dump({"payoff_a": render(ua), "payoff_b": render(ub)})
    else:
        out.line(f"payoff A: {out.num(ua)}")
        out.line(f"payoff B: {out.num(ub)}")
    return EXIT_OK


def cmd_bounds(args, out):
    game, gname = load_game(args.game)
    prior = load_prior(args.prior, game.scenario, gname)
    scale = QuadExt(4 if args.rescale4 else 1)
    loc = local_bound(game, prior, args.player)
    ns = ns_bound(game, prior, args.player)
    if out.json:
        out.dump(
            {
                "player": args.player,
                "scale": render(scale),
                "local": {
                    "value": render(loc.value * scale),
                    "witness": {"alice": list(loc.witness[0]), "bob": list(loc.witness[1])},
                },
                "no_signaling": {
                    "value": render(ns.value * scale),
                    "attained_at_vertex": ns.attained_at_vertex,
                    "witness": docs.behavior_to_dict(ns.behavior),
                },
            }
        )
    else:
        out.line(f"local: {out.num(loc.value * scale)}  (alice {list(loc.witness[0])}, bob {list(loc.witness[1])})")
        out.line(f"no-signaling: {out.num(ns.value * scale)}")
    return EXIT_OK


def cmd_check(args, out):
    game, gname = load_game(args.game)
    behavior, default_tol = load_behavior(args.behavior)
    tol = _tolerance(args, default_tol)
    doc, passed = {"tolerance": render(tol)}, True
    lines = [f"tolerance: {out.num(tol)}"]
    if args.mode in ("expost", "both"):
        post = check_ex_post(game, behavior, tol)
        passed &= post.passed
        doc["ex_post"] = docs.ex_post_to_dict(post)
        lines.append(f"ex post: {post.verdict}")
        for (x, y), r in sorted(post.blocks.items()):
            if not r.passed:
                lines.append(f"  block ({x},{y}) fails")
                lines.extend(f"    {d.player}: advised {d.advised} -> {d.deviation}, margin {out.num(d.margin)}" for d in r.violations)
    if args.mode in ("exante", "both"):
        prior = load_prior(args.prior, game.scenario, gname)
        ante = check_ex_ante(game, behavior, prior, tol)
        passed &= ante.passed
        doc["ex_ante"] = docs.equilibrium_to_dict(ante)
        lines.append(f"ex ante: {ante.verdict}")
        lines.extend(
            f"  {d.player} type {d.type}: advised {d.advised} -> {d.deviation}, margin {out.num(d.margin)}"
            for d in ante.violations
        )
    doc["verdict"] = "pass" if passed else "fail"
    if out.json:
        out.dump(doc)
    else:
        for ln in lines:
            out.line(ln)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_vertices(args, out):
    sc = load_scenario(args.scenario)
    if sc.size > 24:
        print(f"note: enumerating {sc.size}-coordinate scenario, this may be slow", file=sys.stderr)
    vl = enumerate_ns_vertices(sc, args.ceiling)
    if out.json:
        out.dump(docs.vertex_list_to_list(vl))
    else:
        out.line(f"vertices: {len(vl)} ({len(vl.local())} local, {len(vl.nonlocal_())} nonlocal)")
        for i, (v, c) in enumerate(zip(vl.vertices, vl.classification)):
            out.line(f"[{i}] {c}: " + " ".join(render(p) for p in v.vector()))
    return EXIT_OK


def cmd_classify(args, out):
    behavior, default_tol = load_behavior(args.behavior)
    tol = _tolerance(args, default_tol)
    label = classify_behavior(behavior, tol)
    doc = {"classification": label}
    if label == "local":
        cert = is_local(behavior, tol)
        doc["certificate"] = [
            {"alice": list(am), "bob": list(bm), "weight": render(w)} for (am, bm), w in cert.weights.items()
        ]
    if out.json:
        out.dump(doc)
    else:
        out.line(label)
        for item in doc.get("certificate", []):
            out.line(f"  {item['weight']} x alice {item['alice']} bob {item['bob']}")
    return EXIT_FAIL if label == "signaling" else EXIT_OK


def cmd_synthesize(args, out):
    vertex, _ = load_behavior(args.behavior)
    prior = load_prior(args.prior, vertex.scenario)
    options = SynthesisOptions(payoff_box=args.box, prior=prior, require_ns_optimum=args.require_ns_opt)
    result = synthesize_game(vertex, options)
    doc = docs.game_to_dict(result.game)
    doc["gap"] = render(result.gap)
    if out.json:
        out.dump(doc)
    else:
        out.line(f"gap: {out.num(result.gap)}")
        for x, y in result.game.scenario.type_pairs():
            rows = " | ".join("  ".join(render(v) for v in r) for r in result.game.payoff_a[x][y])
            out.line(f"block ({x},{y}): {rows}")
    return EXIT_OK


def cmd_preset(args, out):
    obj = preset(args.name, args.c)
    # presets are documents, so the output is JSON either way
    out.dump(docs.to_dict(obj))
    return EXIT_OK


def cmd_report(args, out):
    game, gname = load_game(args.game)
    prior = load_prior(args.prior, game.scenario, gname)
    named, tol = [], QuadExt(0)
    for ref in args.behavior or []:
        b, t = load_behavior(ref)
        tol = max(tol, t)
        named.append((ref.split(":")[1] if ref.startswith("preset:") else ref, b))
    tol = _tolerance(args, tol)
    report = gap_report(game, prior, named, tol, 4 if args.rescale4 else 1, args.player)
    if out.json:
        out.dump(report.to_dict())
    else:
        out.line(report.to_text(out.approx))
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def _scalar_arg(text):
    try:
        return parse_scalar(text)
    except ScalarParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--tolerance", type=_scalar_arg, default=None, help="scalar literal, default depends on input")
    common.add_argument("--approx", type=int, default=None, metavar="D", help="also print decimals to D digits")

    parser = _Parser(prog="bellgames", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", parents=[common], help="normalization and no-signaling checks")
    p.add_argument("--behavior", required=True)
    p.add_argument("--scenario")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("payoff", parents=[common], help="prior-weighted expected payoff")
    p.add_argument("--game", required=True)
    p.add_argument("--behavior", required=True)
    p.add_argument("--prior")
    p.set_defaults(func=cmd_payoff)

    p = sub.add_parser("bounds", parents=[common], help="local and no-signaling bounds")
    p.add_argument("--game", required=True)
    p.add_argument("--prior")
    p.add_argument("--rescale4", action="store_true")
    p.add_argument("--player", choices=["A", "B"], default="A")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("check", parents=[common], help="ex post / ex ante equilibrium checks")
    p.add_argument("--game", required=True)
    p.add_argument("--behavior", required=True)
    p.add_argument("--mode", choices=["expost", "exante", "both"], default="both")
    p.add_argument("--prior")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("vertices", parents=[common], help="no-signaling vertex enumeration")
    p.add_argument("--scenario", required=True)
    p.add_argument("--ceiling", type=int, default=DEFAULT_VERTEX_CEILING)
    p.set_defaults(func=cmd_vertices)

    p = sub.add_parser("classify", parents=[common], help="signaling / local / nonlocal")
    p.add_argument("--behavior", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("synthesize", parents=[common], help="game from a nonlocal vertex")
    p.add_argument("--behavior", required=True)
    p.add_argument("--box", type=_scalar_arg, default=QuadExt(1))
    p.add_argument("--prior")
    p.add_argument("--require-ns-opt", action="store_true")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("preset", parents=[common], help="emit a preset as JSON")
    p.add_argument("--name", required=True)
    p.add_argument("--c", type=_scalar_arg, default=None)
    p.set_defaults(func=cmd_preset)

    p = sub.add_parser("report", parents=[common], help="bounds and behaviors side by side")
    p.add_argument("--game", required=True)
    p.add_argument("--prior")
    p.add_argument("--behavior", nargs="*")
    p.add_argument("--rescale4", action="store_true")
    p.add_argument("--player", choices=["A", "B"], default="A")
    p.set_defaults(func=cmd_report)
    return parser


def run(argv=None, stdout=None, stderr=None):
    """Run one command; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, _Out(args, stdout))
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except SynthesisError as exc:
        print(f"synthesis failed: {exc}", file=stderr)
        return EXIT_FAIL
    except ScenarioTooLarge as exc:
        print(f"limit: {exc}", file=stderr)
        return EXIT_LIMIT
    except (docs.DocumentError, ModelError, ScalarParseError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
