"""Command line interface.

Subcommands:
  validate      parse a scenario file and print a structural summary
  tau           translation number of a word's lift, or of an inline map
  chi           Euler cocycle values chi and chi_Z for a pair of words
  crossed-hom   the integer table k(s(q))(x_i)
  verify        full check suite; prints a JSON report
  lift-compare  coboundary comparison of two lift offset assignments

Exit codes: 0 success / all checks pass, 1 verification failure,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .pipeline import (
    ActionContext,
    compare_lift_offsets,
    kernel_generator_names,
    verify_scenario,
)
from .plmaps import InvalidPLMap, lift_from_breakpoints
from .rotation import IndeterminateTau, TauEnclosure, tau
from .scenario import ParseError, ValidationError, load_scenario, validate_scenario
from .words import UnknownGenerator, parse_word


def _offsets_arg(text: str) -> list[int]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"offsets must be a JSON array of integers: {exc}") from None
    if not isinstance(data, list) or not all(isinstance(v, int) for v in data):
        raise ValueError("offsets must be a JSON array of integers")
    return data


def _map_from_json(text: str):
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("map JSON must be an array of [x, y] pairs")
    return lift_from_breakpoints([(str(x), str(y)) for x, y in data])


def _cmd_validate(args) -> int:
    scenario = load_scenario(args.scenario)
    info = validate_scenario(scenario)
    print(f"generators: {', '.join(info['generators'])}")
    print(f"quotient order: {info['quotientOrder']}")
    print(f"kernel rank: {info['kernelRank']}")
    print("ok")
    return 0


def _print_tau(result) -> None:
    if isinstance(result, TauEnclosure):
        print(f"enclosure [{result.lo}, {result.hi}]")
    else:
        print(f"exact {result.value}")
        print(f"witness x = {result.witness}")


def _cmd_tau(args) -> int:
    if args.map is not None or args.map_file is not None:
        if args.scenario is not None or args.word is not None:
            raise ValueError("give either a scenario and word or an inline map, not both")
        text = args.map if args.map is not None else open(args.map_file).read()
        f = _map_from_json(text)
    else:
        if args.scenario is None or args.word is None:
            raise ValueError("need a scenario file and a word, or --map/--map-file")
        scenario = load_scenario(args.scenario)
        ctx = ActionContext(scenario)
        w = parse_word(args.word, scenario.generators)
        f = ctx.evaluate(w).lift
    _print_tau(tau(f, args.budget))
    return 0


def _cmd_chi(args) -> int:
    scenario = load_scenario(args.scenario)
    ctx = ActionContext(scenario)
    w1 = parse_word(args.word1, scenario.generators)
    w2 = parse_word(args.word2, scenario.generators)
    print(f"chi_Z {ctx.chi_int_words(w1, w2)}")
    from .rotation import IndeterminateTau, euler_chi

    try:
        print(f"chi {euler_chi(ctx.evaluate(w1), ctx.evaluate(w2), ctx.budget)}")
    except IndeterminateTau as exc:
        enc = exc.enclosure
        print(f"chi indeterminate at this budget, tau enclosed in [{enc.lo}, {enc.hi}]")
    return 0


def _cmd_crossed_hom(args) -> int:
    scenario = load_scenario(args.scenario)
    ctx = ActionContext(scenario)
    khom = ctx.crossed_hom()
    from .words import format_word

    knames = kernel_generator_names(ctx.schreier.rank)
    if args.json:
        payload = {
            "kGenerators": [
                format_word(w, scenario.generators) for w in ctx.schreier.k_generators
            ],
            "transversal": [
                format_word(w, scenario.generators) for w in ctx.schreier.transversal
            ],
            "rows": [list(khom.at(q)) for q in range(ctx.quotient.order)],
        }
        print(json.dumps(payload, indent=2))
        return 0
    print("kernel generators: " + ", ".join(
        f"{n} = {format_word(w, scenario.generators)}"
        for n, w in zip(knames, ctx.schreier.k_generators)
    ))
    for q in range(ctx.quotient.order):
        rep = format_word(ctx.schreier.transversal[q], scenario.generators)
        print(f"k({rep}) = {list(khom.at(q))}")
    return 0


def _cmd_verify(args) -> int:
    scenario = load_scenario(args.scenario)
    report = verify_scenario(scenario, workers=args.workers)
    print(report.to_json())
    return report.exit_code(strict=args.strict)


def _cmd_lift_compare(args) -> int:
    scenario = load_scenario(args.scenario)
    result = compare_lift_offsets(
        scenario, _offsets_arg(args.offsets_a), _offsets_arg(args.offsets_b)
    )
    print(json.dumps(result, indent=2))
    return 0 if result["verdict"] == "PASS" else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="eulerhom",
        description="Exact crossed-homomorphism verification for PL circle actions.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="check a scenario file")
    sp.add_argument("scenario")
    sp.set_defaults(fn=_cmd_validate)

    sp = sub.add_parser("tau", help="translation number of a lift")
    sp.add_argument("scenario", nargs="?")
    sp.add_argument("word", nargs="?")
    sp.add_argument("--map", help="inline JSON breakpoint list [[x, y], ...]")
    sp.add_argument("--map-file", help="file containing JSON breakpoints")
    sp.add_argument("--budget", type=int, default=4096)
    sp.set_defaults(fn=_cmd_tau)

    sp = sub.add_parser("chi", help="Euler cocycle of two words")
    sp.add_argument("scenario")
    sp.add_argument("word1")
    sp.add_argument("word2")
    sp.set_defaults(fn=_cmd_chi)

    sp = sub.add_parser("crossed-hom", help="print the k table")
    sp.add_argument("scenario")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=_cmd_crossed_hom)

    sp = sub.add_parser("verify", help="run the full check suite")
    sp.add_argument("scenario")
    sp.add_argument("--strict", action="store_true", help="fail on any skipped sample")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(fn=_cmd_verify)

    sp = sub.add_parser("lift-compare", help="compare two lift offset assignments")
    sp.add_argument("scenario")
    sp.add_argument("offsets_a", help="JSON array, e.g. [0, 1, 0]")
    sp.add_argument("offsets_b", help="JSON array")
    sp.set_defaults(fn=_cmd_lift_compare)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (
        ParseError,
        ValidationError,
        InvalidPLMap,
        IndeterminateTau,
        UnknownGenerator,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
