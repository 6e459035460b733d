"""Command-line interface.

Exit status: 0 on success, 1 for a well-formed negative answer (not
necessary, no explanation), 2 for usage or data errors. Alternatives are
given by name or inline as comma-separated values in criterion order; put
``--`` before inline values that start with a minus sign.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .covector import argument_partition, dump_covector
from .explain import (
    BudgetExceeded,
    delta2_graph,
    find_explanation,
    necessary_graph_dot,
    render_sequence,
    shortest_explanation_search,
    worst_case_instance,
)
from .model import Instance, InstanceError, dump_instance, instance_to_dict, load_instance
from .necessity import Reasoner, ilp_oracle, sampling_falsifier
from .rounding import Query, ScaleError

TRIALS_ENV = "PREFSWAPS_FALSIFY_TRIALS"

OK, NEGATIVE, ERROR = 0, 1, 2


@dataclass
class CommandResult:
    status: int
    report: str
    payload: dict = field(default_factory=dict)


def _rat(v):
    if v is None:
        return "*"
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _names(instance, crits):
    return sorted(instance.criteria[i].name for i in crits)


def _scales_payload(instance: Instance) -> dict:
    return {
        c.name: [c.decode(v) for v in levels]
        for c, levels in zip(instance.criteria, instance.scales.levels)
    }


def _scales_report(instance: Instance) -> str:
    lines = []
    for name, vals in _scales_payload(instance).items():
        lines.append(f"V[{name}] = {{{', '.join(str(v) for v in vals)}}}")
    return "\n".join(lines)


def _query(instance, args) -> Query:
    return Query(instance.resolve(args.x), instance.resolve(args.y))


def cmd_validate(args) -> CommandResult:
    instance = load_instance(args.file)
    head = f"{instance.n} criteria, {len(instance.alternatives)} alternatives, {len(instance.statements)} statements"
    return CommandResult(OK, head + "\n" + _scales_report(instance), {
        "criteria": instance.n,
        "statements": len(instance.statements),
        "scales": _scales_payload(instance),
    })


def cmd_scales(args) -> CommandResult:
    instance = load_instance(args.file)
    return CommandResult(OK, _scales_report(instance), {"scales": _scales_payload(instance)})


def cmd_check(args) -> CommandResult:
    instance = load_instance(args.file)
    q = _query(instance, args)
    reasoner = Reasoner(instance)
    result = reasoner.check(q.x, q.y)
    lines = [f"query: {instance.format(q.x)} >=? {instance.format(q.y)}"]
    payload = {"x": instance.raw(q.x), "y": instance.raw(q.y), "bounded": result.bounded}
    if not result.bounded:
        where = ", ".join(f"{instance.criteria[i].name} ({why.value})" for i, why in result.unbounded)
        lines.append(f"unbounded by P on {where}")
        lines.append("verdict: not necessary (unbounded by P)")
        payload["necessary"] = False
        payload["unbounded"] = [instance.criteria[i].name for i, _ in result.unbounded]
        return CommandResult(NEGATIVE, "\n".join(lines), payload)
    lines.append("bounded by P")
    lines.append(f"rounded: {instance.format(result.rounded.x_low)} >=? {instance.format(result.rounded.y_high)}")
    lines.append("covector: " + " ".join(f"{c:+d}" if c else "0" for c in result.covector))
    payload["rounded"] = {"x": instance.raw(result.rounded.x_low), "y": instance.raw(result.rounded.y_high)}
    payload["covector"] = list(result.covector.coeffs)
    payload["necessary"] = result.necessary
    lines.append("verdict: " + ("necessary" if result.necessary else "not necessary"))
    if result.necessary and args.certificate:
        lines.append("certificate:")
        lines.append(result.certificate.to_text(result.system, instance))
        integer = result.certificate.integer_form()
        lines.append(f"integer form: r={integer.r} ell={list(integer.ell)} m={list(integer.m)}")
        payload["certificate"] = result.certificate.to_dict(result.system, instance)
    if args.oracle:
        found = ilp_oracle(result.covector, result.system, args.oracle)
        lines.append(_oracle_line(found, args.oracle))
        payload["ilp_oracle"] = _oracle_payload(found)
    if args.falsify is not None:
        w = sampling_falsifier(q, instance, args.falsify, args.seed)
        lines.append(_falsifier_line(w))
        payload["counterexample"] = None if w is None else [_rat(v) for v in w]
    return CommandResult(OK if result.necessary else NEGATIVE, "\n".join(lines), payload)


def _oracle_line(found, bound):
    if found is None:
        return f"ilp oracle: not found within bound {bound}"
    return f"ilp oracle: found r={found.r} ell={list(found.ell)} m={list(found.m)}"


def _oracle_payload(found):
    if found is None:
        return None
    return {"r": found.r, "ell": list(found.ell), "m": list(found.m)}


def _falsifier_line(w):
    if w is None:
        return "falsifier: no counterexample found"
    return "falsifier: counterexample w = (" + ", ".join(_rat(v) for v in w) + ")"


def cmd_covector(args) -> CommandResult:
    instance = load_instance(args.file)
    q = _query(instance, args)
    result = Reasoner(instance).check(q.x, q.y)
    if not result.bounded:
        return CommandResult(NEGATIVE, "unbounded by P: no covector", {"bounded": False})
    text = dump_covector(result.covector, instance)
    return CommandResult(OK, text, {"covector": list(result.covector.coeffs)})


def cmd_explain(args) -> CommandResult:
    instance = load_instance(args.file)
    q = _query(instance, args)
    if not instance.scales.is_binary():
        raise ScaleError("explain needs binary reference scales; use the 'shortest' subcommand")
    reasoner = Reasoner(instance)
    result = reasoner.check(q.x, q.y)
    if not result.necessary:
        why = "unbounded by P" if not result.bounded else "not necessary"
        return CommandResult(NEGATIVE, f"{why}: nothing to explain", {"necessary": False})
    phi = find_explanation(q, instance, reasoner)
    if phi is None:
        pos, neg, _ = argument_partition(result.covector)
        text = (
            "necessary but no order-2 explanation\n"
            f"positive arguments: {', '.join(_names(instance, pos)) or '-'}\n"
            f"negative arguments: {', '.join(_names(instance, neg)) or '-'}"
        )
        return CommandResult(NEGATIVE, text, {"necessary": True, "explanation": None})
    if args.order == "as-given":
        if not args.sequence:
            raise ValueError("--order as-given needs --sequence")
        order = [instance.criterion_index(s.strip()) for s in args.sequence.split(",")]
    else:
        order = args.order
    expl = render_sequence(q, instance, phi, args.policy, order)
    crit = instance.criteria
    match_text = ", ".join(f"{crit[i].name} -> {crit[j].name}" for j, i in sorted(phi.items()))
    text = f"matching: {match_text or '(empty)'}\n" + expl.render(instance)
    payload = {
        "necessary": True,
        "matching": {crit[j].name: crit[i].name for j, i in phi.items()},
        "sequence": [instance.raw(a) for a in expl.alternatives],
        "kinds": [s.kind for s in expl.steps],
    }
    return CommandResult(OK, text, payload)


def cmd_delta2(args) -> CommandResult:
    instance = load_instance(args.file)
    reasoner = Reasoner(instance)
    rel = delta2_graph(instance, reasoner)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(rel.to_dot() + "\n")
    if args.graph_dot:
        with open(args.graph_dot, "w", encoding="utf-8") as fh:
            fh.write(necessary_graph_dot(instance, reasoner) + "\n")
    edges = rel.named_edges()
    text = f"{len(edges)} edges\n" + "\n".join(f"{a} -> {b}" for a, b in edges)
    return CommandResult(OK, text, {"edges": [list(e) for e in edges]})


def cmd_shortest(args) -> CommandResult:
    instance = load_instance(args.file)
    q = _query(instance, args)
    expl = shortest_explanation_search(q, instance, args.max_order, args.budget)
    if expl is None:
        return CommandResult(NEGATIVE, "no explanation", {"explanation": None})
    text = f"{expl.length} steps ({expl.swap_count} swaps)\n" + expl.render(instance)
    return CommandResult(OK, text, {
        "steps": expl.length,
        "swaps": expl.swap_count,
        "sequence": [instance.raw(a) for a in expl.alternatives],
        "kinds": [s.kind for s in expl.steps],
    })


def cmd_gen_worstcase(args) -> CommandResult:
    instance, _, _ = worst_case_instance(args.p)
    doc = dump_instance(instance)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(doc + "\n")
        return CommandResult(OK, f"wrote {args.out}", instance_to_dict(instance))
    return CommandResult(OK, doc, instance_to_dict(instance))


def cmd_oracle(args) -> CommandResult:
    instance = load_instance(args.file)
    q = _query(instance, args)
    result = Reasoner(instance).check(q.x, q.y)
    if not result.bounded:
        return CommandResult(NEGATIVE, "unbounded by P", {"bounded": False})
    found = ilp_oracle(result.covector, result.system, args.bound)
    w = sampling_falsifier(q, instance, args.trials, args.seed)
    lines = [
        "lp: " + ("necessary" if result.necessary else "not necessary"),
        _oracle_line(found, args.bound),
        _falsifier_line(w),
    ]
    contradiction = (found is not None and not result.necessary) or (w is not None and result.necessary)
    if contradiction:
        lines.append("CONTRADICTION between solvers")
    payload = {
        "necessary": result.necessary,
        "ilp_oracle": _oracle_payload(found),
        "counterexample": None if w is None else [_rat(v) for v in w],
        "contradiction": contradiction,
    }
    return CommandResult(ERROR if contradiction else OK, "\n".join(lines), payload)


def _default_trials() -> int:
    return int(os.environ.get(TRIALS_ENV, "10000"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prefswaps", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="print the machine-readable payload")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_query(p):
        p.add_argument("file")
        p.add_argument("x", help="candidate: alternative name or comma-separated values")
        p.add_argument("y", help="challenger: alternative name or comma-separated values")
        return p

    p = sub.add_parser("validate", help="parse an instance and print its reference scales")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("scales", help="print the reference scales")
    p.add_argument("file")
    p.set_defaults(func=cmd_scales)

    p = with_query(sub.add_parser("check", help="decide necessary preference"))
    p.add_argument("--certificate", action="store_true")
    p.add_argument("--oracle", type=int, metavar="B", default=0, help="also run the bounded integer search")
    p.add_argument("--falsify", type=int, nargs="?", const=-1, default=None, metavar="TRIALS")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check)

    p = with_query(sub.add_parser("covector", help="dump the rounded covector"))
    p.set_defaults(func=cmd_covector)

    p = with_query(sub.add_parser("explain", help="explanation by order-2 swaps (binary scales)"))
    p.add_argument("--policy", choices=["shortest", "reference"], default="shortest")
    p.add_argument("--order", choices=["index", "strongest-first", "as-given"], default="index")
    p.add_argument("--sequence", help="negative arguments in swap order, for --order as-given")
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("delta2", help="necessary order-2 swaps between criteria")
    p.add_argument("file")
    p.add_argument("--dot", metavar="OUT")
    p.add_argument("--graph-dot", metavar="OUT", help="DOT of the necessary relation over the grid")
    p.set_defaults(func=cmd_delta2)

    p = with_query(sub.add_parser("shortest", help="breadth-first shortest explanation"))
    p.add_argument("--max-order", type=int, default=2)
    p.add_argument("--budget", type=int, default=200_000)
    p.set_defaults(func=cmd_shortest)

    p = sub.add_parser("gen-worstcase", help="instance needing 2p swaps")
    p.add_argument("p", type=int)
    p.add_argument("out", nargs="?")
    p.set_defaults(func=cmd_gen_worstcase)

    p = with_query(sub.add_parser("oracle", help="cross-check the LP with both oracles"))
    p.add_argument("--bound", type=int, default=6)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)
    return parser


def run(argv=None) -> tuple:
    """Parse and execute; returns ``(CommandResult, as_json)``."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "falsify", None) == -1:
        args.falsify = _default_trials()
    if getattr(args, "trials", 0) is None:
        args.trials = _default_trials()
    try:
        result = args.func(args)
    except (InstanceError, ScaleError, OSError, ValueError, BudgetExceeded) as exc:
        result = CommandResult(ERROR, f"error: {exc}", {"error": str(exc)})
    return result, args.json


def main(argv=None) -> int:
    try:
        result, as_json = run(argv)
    except SystemExit as exc:  # argparse usage errors
        return ERROR if exc.code else OK
    out = sys.stderr if result.status == ERROR else sys.stdout
    if as_json:
        print(json.dumps({"status": result.status, **result.payload}, ensure_ascii=False, indent=2))
    else:
        print(result.report, file=out)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
