"""Command-line interface.

Subcommands: emit, prove, verify-hom, normal-form, quotient {eval,check,enum},
order, center, suite.  Exit codes: 0 pass, 1 failure (disproof or mismatch),
2 unknown-only failures, 3 resource overflow, 4 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .center import minimal_power, theta, theta_power_membership
from .coset_enum import enumerate_cosets
from .homomorphisms import (
    Assignment,
    make_assignment,
    semidirect_normal_form,
    u_exponent,
    von_dyck_obligations,
)
from .presentations import (
    build_cor35_presentation,
    build_orbifold_braid,
    build_prop32_presentation,
    build_prop36_presentation,
    build_pure_orbifold,
    build_remark34_presentation,
    presentation_to_text,
    read_presentation,
)
from .prover import ProverBudget, prove_equal, verify_obligations
from .quotients import CONVENTION, evaluate_word, order_G, check_relations_in_quotient, standard_wreath_assignment
from .suites import SUITE_NAMES, run_suite
from .words import format_word, parse_word

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_UNKNOWN = 2
EXIT_OVERFLOW = 3
EXIT_USAGE = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 4, not argparse's default 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _budget(args) -> ProverBudget:
    return ProverBudget(max_nodes=args.max_nodes, slack=args.slack)


def _add_budget_args(sub) -> None:
    sub.add_argument("--max-nodes", type=int, default=0, help="search node budget (default from env or 10^6)")
    sub.add_argument("--slack", type=int, default=-1, help="word length slack over the operands (default 8)")


def _write_json(args, payload: dict) -> None:
    if getattr(args, "json", None):
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")


def _cmd_emit(args) -> int:
    kind = args.kind
    if kind == "orbifold":
        p = build_orbifold_braid(args.n, args.L, args.cone_orders)
    elif kind == "pure":
        p = build_pure_orbifold(args.n, args.L, args.cone_orders)
    elif kind == "two-cone-split":
        p = build_prop32_presentation(args.n, args.cone_orders[0], args.cone_orders[1])
    elif kind == "two-cone-split-n3":
        p = build_remark34_presentation(args.cone_orders[0], args.cone_orders[1])
    elif kind == "one-cone-split":
        p = build_cor35_presentation(args.n, args.cone_orders[0])
    else:  # one-cone-puncture-split
        p = build_prop36_presentation(args.n, args.cone_orders[0])
    text = presentation_to_text(p)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    _write_json(args, {"name": p.name, "generators": len(p.generators), "relations": len(p.relations)})
    return EXIT_PASS


def _cmd_prove(args) -> int:
    p = read_presentation(args.pres)
    lhs = parse_word(args.lhs, p.alphabet)
    rhs = parse_word(args.rhs, p.alphabet)
    result = prove_equal(p, lhs, rhs, _budget(args))
    print(f"{result.status} (nodes={result.nodes_expanded}, chain={len(result.chain or ())})")
    if args.emit_chain and result.proved:
        with open(args.emit_chain, "w", encoding="utf-8") as fh:
            for i, step in enumerate(result.chain):
                fh.write(json.dumps({
                    "step": i,
                    "pos": step.pos,
                    "tag": step.tag,
                    "direction": step.direction,
                    "reversed": step.reversed,
                    "word": format_word(step.word),
                }) + "\n")
    _write_json(args, {
        "status": result.status,
        "nodes": result.nodes_expanded,
        "chain_len": len(result.chain or ()),
    })
    return EXIT_PASS if result.proved else EXIT_UNKNOWN


def _read_map_file(path, source, target) -> Assignment:
    images = {}
    alphabet = source.alphabet
    target_alphabet = target.alphabet
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            lhs, _, rhs = line.partition("->")
            gen_label = lhs.strip()
            if gen_label not in alphabet:
                raise ValueError(f"map file names unknown generator {gen_label!r}")
            images[alphabet[gen_label]] = parse_word(rhs.strip(), target_alphabet)
    return make_assignment(source, target, images)


def _cmd_verify_hom(args) -> int:
    source = read_presentation(args.source)
    target = read_presentation(args.target)
    assignment = _read_map_file(args.map, source, target)
    report = verify_obligations(target, von_dyck_obligations(assignment), _budget(args))
    entries = []
    for entry in report.entries:
        r = entry.result
        print(f"[{r.status:>7}] {entry.tag} (nodes={r.nodes_expanded})")
        entries.append({
            "tag": entry.tag,
            "status": r.status,
            "nodes": r.nodes_expanded,
            "chain_len": len(r.chain or ()),
        })
    print("PASS" if report.passed else "FAIL")
    _write_json(args, {"entries": entries, "pass": report.passed})
    return EXIT_PASS if report.passed else EXIT_UNKNOWN


def _cmd_normal_form(args) -> int:
    p = read_presentation(args.pres)
    w = parse_word(args.word, p.alphabet)
    nf = semidirect_normal_form(p, w)
    exps = " ".join(f"{g.label}^{e}" for g, e in zip(nf.quotient_gens, nf.exponents))
    print(f"{format_word(nf.normal_part)} | {exps}")
    _write_json(args, {
        "normal_part": format_word(nf.normal_part),
        "exponents": {g.label: e for g, e in zip(nf.quotient_gens, nf.exponents)},
    })
    return EXIT_PASS


def _cmd_quotient(args) -> int:
    if args.quotient_cmd == "enum":
        order = order_G(args.m, args.p, args.n)
        print(order)
        _write_json(args, {"order": order})
        return EXIT_PASS
    p = read_presentation(args.pres)
    asgn = standard_wreath_assignment(p, track_punctures=getattr(args, "track_punctures", True))
    if args.quotient_cmd == "eval":
        w = parse_word(args.word, p.alphabet)
        el = evaluate_word(asgn, w)
        print(f"{el.perm_cycles()} {list(map(list, el.exps))}")
        _write_json(args, {"perm": el.perm_cycles(), "exps": [list(e) for e in el.exps]})
        return EXIT_PASS
    report = check_relations_in_quotient(p, asgn)
    for entry in report.entries:
        print(f"[{'ok' if entry.holds else 'FAIL':>4}] {entry.tag}")
    print("PASS" if report.passed else "FAIL")
    _write_json(args, {
        "entries": [{"tag": e.tag, "holds": e.holds} for e in report.entries],
        "pass": report.passed,
        "convention": CONVENTION,
    })
    return EXIT_PASS if report.passed else EXIT_FAIL


def _cmd_order(args) -> int:
    p = read_presentation(args.pres)
    table = enumerate_cosets(p, args.max_cosets)
    if not table.complete:
        print("overflow")
        _write_json(args, {"status": "Overflow", "cosets_defined": table.cosets_defined})
        return EXIT_OVERFLOW
    print(table.order)
    _write_json(args, {"status": "Complete", "order": table.order, "cosets_defined": table.cosets_defined})
    return EXIT_PASS


def _cmd_center(args) -> int:
    k = args.power if args.power is not None else 1
    th = theta(args.n, args.m)
    member, l = theta_power_membership(args.n, args.m, k)
    exponent = u_exponent(th ** k, args.m)
    print(f"theta_{args.n} = {format_word(th)}")
    print(f"u-exponent(theta^{k}) = {exponent} (mod {args.m})")
    print(f"l = {l}; theta^{k} in the rewritten normal subgroup: {member}")
    payload = {
        "theta": format_word(th),
        "k": k,
        "u_exponent": exponent,
        "l": l,
        "member": member,
    }
    if args.verify:
        report = run_suite("center", n=args.n, m=args.m, power=args.power, budget=_budget(args))
        print(report.summary())
        payload["report"] = report.to_dict()
        _write_json(args, payload)
        return report.exit_code()
    _write_json(args, payload)
    return EXIT_PASS


def _cmd_suite(args) -> int:
    report = run_suite(
        args.name,
        n=args.n,
        m=args.m,
        mprime=args.mprime,
        power=args.power,
        budget=_budget(args),
        max_cosets=args.max_cosets,
    )
    print(report.summary())
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(report.to_json() + "\n")
    return report.exit_code()


def build_parser() -> _Parser:
    parser = _Parser(prog="orbibraid", description=__doc__)
    parser.add_argument("--version", action="version", version=f"orbibraid {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("emit", help="write a built-in presentation to a file")
    sub.add_argument("--kind", required=True, choices=[
        "orbifold", "pure", "two-cone-split", "two-cone-split-n3",
        "one-cone-split", "one-cone-puncture-split",
    ])
    sub.add_argument("--n", type=int, default=3)
    sub.add_argument("--L", type=int, default=0)
    sub.add_argument("--cone-orders", type=lambda s: [int(x) for x in s.split(",") if x], default=[2])
    sub.add_argument("--out", default=None)
    sub.add_argument("--json", default=None)
    sub.set_defaults(func=_cmd_emit)

    sub = subs.add_parser("prove", help="prove two words equal modulo a presentation")
    sub.add_argument("--pres", required=True)
    sub.add_argument("--lhs", required=True)
    sub.add_argument("--rhs", required=True)
    _add_budget_args(sub)
    sub.add_argument("--emit-chain", default=None, help="write the replayable chain as JSON lines")
    sub.add_argument("--json", default=None)
    sub.set_defaults(func=_cmd_prove)

    sub = subs.add_parser("verify-hom", help="check a generator assignment via its obligations")
    sub.add_argument("--source", required=True)
    sub.add_argument("--target", required=True)
    sub.add_argument("--map", required=True, help="file of `gen -> word` lines")
    _add_budget_args(sub)
    sub.add_argument("--json", default=None)
    sub.set_defaults(func=_cmd_verify_hom)

    sub = subs.add_parser("normal-form", help="semidirect normal form of a word")
    sub.add_argument("--pres", required=True)
    sub.add_argument("--word", required=True)
    sub.add_argument("--json", default=None)
    sub.set_defaults(func=_cmd_normal_form)

    sub = subs.add_parser("quotient", help="wreath/monomial quotient operations")
    qsubs = sub.add_subparsers(dest="quotient_cmd", required=True)
    q = qsubs.add_parser("eval", help="evaluate a word in the wreath quotient")
    q.add_argument("--pres", required=True)
    q.add_argument("--word", required=True)
    q.add_argument("--track-punctures", action="store_true", default=False)
    q.add_argument("--json", default=None)
    q.set_defaults(func=_cmd_quotient)
    q = qsubs.add_parser("check", help="check every relation in the wreath quotient")
    q.add_argument("--pres", required=True)
    q.add_argument("--json", default=None)
    q.set_defaults(func=_cmd_quotient)
    q = qsubs.add_parser("enum", help="order of the monomial group G(m,p,n)")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--json", default=None)
    q.set_defaults(func=_cmd_quotient)

    sub = subs.add_parser("order", help="group order by coset enumeration")
    sub.add_argument("--pres", required=True)
    sub.add_argument("--max-cosets", type=int, default=10**6)
    sub.add_argument("--json", default=None)
    sub.set_defaults(func=_cmd_order)

    sub = subs.add_parser("center", help="central element data and checks")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--power", type=int, default=None)
    sub.add_argument("--verify", action="store_true")
    _add_budget_args(sub)
    sub.add_argument("--json", default=None)
    sub.set_defaults(func=_cmd_center)

    sub = subs.add_parser("suite", help="run a named verification suite")
    sub.add_argument("--name", required=True, choices=list(SUITE_NAMES))
    sub.add_argument("--n", type=int, default=3)
    sub.add_argument("--m", type=int, default=2)
    sub.add_argument("--mprime", type=int, default=2)
    sub.add_argument("--power", type=int, default=None)
    sub.add_argument("--max-cosets", type=int, default=10**6)
    _add_budget_args(sub)
    sub.add_argument("--json", default=None)
    sub.set_defaults(func=_cmd_suite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
