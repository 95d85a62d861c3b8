"""Command-line interface.

Exit codes: 0 = HOLDS / success, 1 = FAILS, 2 = UNKNOWN, 3 = input error.
`check all` exits with the worst status among the four properties.
Observation strings use accumulated weights: "(rho,1);(rho,3)" and, for
vector weights, "(a,1 0 0 0);(b,1 -1 0 0)".
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import corpus, io, oracle
from .model import ValidationError, normalize, scale_to_integers, structure_report
from .verdict import FAILS, HOLDS, UNKNOWN
from .verify import check_all

EXIT = {HOLDS: 0, FAILS: 1, UNKNOWN: 2}
INPUT_ERROR = 3


def _read_automaton(path: str):
    text = sys.stdin.read() if path == "-" else open(path).read()
    return io.loads(text)


def _emit(document: dict) -> None:
    sys.stdout.write(io.dumps(document))


def _parse_obs(text: str, k: int):
    if not text.strip():
        return []
    out = []
    for i, chunk in enumerate(text.split(";")):
        chunk = chunk.strip()
        m = re.fullmatch(r"\((.+?),([^,()]+)\)", chunk)
        if not m:
            raise io.ParseError(f"bad observation {chunk!r}", f"obs[{i}]")
        symbol = m.group(1).strip()
        entries = m.group(2).split()
        weight = tuple(io.str_to_rational(x, f"obs[{i}].weight") for x in entries)
        if len(weight) != k:
            raise io.ParseError(f"weight dimension {len(weight)}, expected {k}", f"obs[{i}]")
        out.append((symbol, weight))
    return out


def _write_dot(path: str | None, text: str) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_validate(args) -> int:
    a = _read_automaton(args.file)
    rep = structure_report(a)
    _emit({
        "valid": True,
        "k": a.k,
        "states": len(a.states),
        "transitions": len(a.transitions),
        "structure": {
            "deadlock_free": rep.deadlock_free,
            "divergence_free": rep.divergence_free,
            "deterministic": rep.deterministic,
            "unambiguous": rep.unambiguous_checked_to_bound,
            "all_observable": rep.all_observable,
            "reachable_states": sorted(rep.reachable_states),
        },
    })
    return 0


def cmd_normalize(args) -> int:
    document = io.serialize(normalize(_read_automaton(args.file)))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(io.dumps(document))
    else:
        _emit(document)
    return 0


def _prepared(args):
    a = _read_automaton(args.file)
    prepared, m = scale_to_integers(normalize(a))
    return prepared, m


def cmd_selfcomp(args) -> int:
    from .selfcomp import build_self_composition

    prepared, m = _prepared(args)
    cc = build_self_composition(prepared)
    _emit(io.selfcomp_to_json(cc, m))
    _write_dot(args.dot, io.selfcomp_to_dot(cc))
    return 0


def cmd_observer(args) -> int:
    from .estimator import build_observer

    prepared, m = _prepared(args)
    est = build_observer(prepared)
    _emit(io.estimator_to_json(est, m))
    _write_dot(args.dot, io.estimator_to_dot(est))
    return 0


def cmd_detector(args) -> int:
    from .estimator import build_detector

    prepared, m = _prepared(args)
    est = build_detector(prepared)
    _emit(io.estimator_to_json(est, m))
    _write_dot(args.dot, io.estimator_to_dot(est))
    return 0


def cmd_check(args) -> int:
    a = _read_automaton(args.file)
    result = check_all(a)
    if args.property == "all":
        _emit({
            "scale": result.scale,
            "verdicts": {p: v.to_json() for p, v in result.verdicts.items()},
        })
        statuses = [v.status for v in result.verdicts.values()]
        if FAILS in statuses:
            return EXIT[FAILS]
        if UNKNOWN in statuses:
            return EXIT[UNKNOWN]
        return EXIT[HOLDS]
    verdict = result.verdicts[args.property.upper()]
    _emit({"scale": result.scale, "verdict": verdict.to_json()})
    return EXIT[verdict.status]


def cmd_estimate(args) -> int:
    a = _read_automaton(args.file)
    gamma = _parse_obs(args.obs, a.k)
    estimate = oracle.oracle_estimate(a, gamma)
    _emit({"observation": args.obs, "estimate": sorted(estimate)})
    return 0


def cmd_gen(args) -> int:
    if args.generator == "subset-sum":
        weights = [int(x) for x in args.weights.split(",") if x.strip()]
        a = corpus.subset_sum_automaton(weights, args.target)
    elif args.generator == "random":
        a = corpus.random_automaton(args.seed, k=args.k)
    else:
        a = corpus.load_fixture(args.name).automaton
    document = io.serialize(a)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(io.dumps(document))
    else:
        _emit(document)
    return 0


def cmd_oracle(args) -> int:
    a = _read_automaton(args.file)
    if args.oracle_command == "estimate":
        gamma = _parse_obs(args.obs, a.k)
        estimate = oracle.oracle_estimate_enum(a, gamma, horizon=args.horizon)
        _emit({"observation": args.obs, "estimate": sorted(estimate),
               "horizon": args.horizon})
        return 0
    ce = oracle.oracle_falsify(a, args.property, horizon=args.horizon)
    if ce is None:
        _emit({"property": args.property.upper(), "counterexample": None})
        return 0
    _emit({
        "property": args.property.upper(),
        "counterexample": {
            "kind": ce.kind,
            "stem": [list(t[:3]) for t in ce.stem],
            "cycle": [list(t[:3]) for t in ce.cycle],
            "details": {k: v if not isinstance(v, (set, frozenset)) else sorted(v)
                        for k, v in ce.details.items()},
        },
    })
    return 1


def cmd_export(args) -> int:
    from .estimator import build_detector, build_observer
    from .selfcomp import build_self_composition

    if args.what == "automaton":
        a = _read_automaton(args.file)
        text = io.automaton_to_dot(a)
    else:
        prepared, _ = _prepared(args)
        if args.what == "selfcomp":
            text = io.selfcomp_to_dot(build_self_composition(prepared))
        elif args.what == "observer":
            text = io.estimator_to_dot(build_observer(prepared))
        else:
            text = io.estimator_to_dot(build_detector(prepared))
    if args.dot:
        _write_dot(args.dot, text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wadet",
        description="Detectability analysis for labeled weighted automata over (Q^k, +).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_file(p):
        p.add_argument("file", help="automaton JSON file, or - for stdin")

    p = sub.add_parser("validate", help="validate a document and report structure")
    add_file(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("normalize", help="rewrite initial weights into silent arcs")
    add_file(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_normalize)

    for name, func in (("selfcomp", cmd_selfcomp), ("observer", cmd_observer),
                       ("detector", cmd_detector)):
        p = sub.add_parser(name, help=f"build the {name} and print it as JSON")
        add_file(p)
        p.add_argument("--dot", help="also write DOT to this path")
        p.set_defaults(func=func)

    p = sub.add_parser("check", help="decide detectability properties")
    p.add_argument("property", choices=["sd", "spd", "wd", "wpd", "all"])
    add_file(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("estimate", help="current-state estimate for an observation")
    add_file(p)
    p.add_argument("--obs", required=True,
                   help='accumulated observation, e.g. "(rho,1);(rho,3)"')
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("gen", help="generate corpus/backing instances")
    gsub = p.add_subparsers(dest="generator", required=True)
    g = gsub.add_parser("subset-sum")
    g.add_argument("--weights", required=True, help="comma-separated positive integers")
    g.add_argument("--target", type=int, required=True)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)
    g = gsub.add_parser("random")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--k", type=int, default=1)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)
    g = gsub.add_parser("fixture")
    g.add_argument("name", choices=corpus.fixture_names())
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="brute-force estimates and falsification")
    osub = p.add_subparsers(dest="oracle_command", required=True)
    o = osub.add_parser("estimate")
    add_file(o)
    o.add_argument("--obs", required=True)
    o.add_argument("--horizon", type=int, default=8)
    o.set_defaults(func=cmd_oracle)
    o = osub.add_parser("falsify")
    add_file(o)
    o.add_argument("--property", required=True, choices=["sd", "spd", "wd", "wpd"])
    o.add_argument("--horizon", type=int, default=8)
    o.set_defaults(func=cmd_oracle)

    p = sub.add_parser("export", help="DOT export of the automaton or a structure")
    add_file(p)
    p.add_argument("--what", choices=["automaton", "selfcomp", "observer", "detector"],
                   default="automaton")
    p.add_argument("--dot", help="output path; stdout when omitted")
    p.set_defaults(func=cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (io.ParseError, ValidationError, ValueError, KeyError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return INPUT_ERROR
    except OSError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
