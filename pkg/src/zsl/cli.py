"""Command-line front end.

Exit codes: 0 success (``check``: product-one free), 1 falsification
(``check``: not product-one free), 2 usage or parse error, 3 budget
exhausted before the run could finish.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import dataclass
from typing import Optional

from . import classifier, cyclic_lemma, davenport, factorization
from .group import Group, Tag, validate_params
from .products import DEFAULT_STATE_BUDGET, StateBudgetExceeded, compute_products
from .sequence import SequenceParseError, format_element, format_sequence, parse_sequence

EXIT_OK, EXIT_FALSIFIED, EXIT_ERROR, EXIT_BUDGET = 0, 1, 2, 3

_GROUP_SPEC = re.compile(r"^\s*(?:metacyclic:n=(?P<n>\d+),s=(?P<s>-?\d+)|cyclic:m=(?P<m>\d+))\s*$")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    group: Optional[str] = None
    state_budget: int = DEFAULT_STATE_BUDGET
    workers: int = 1
    time_budget_ms: Optional[int] = None
    format: str = "json"
    seed: int = 0
    stats: bool = True

    def __post_init__(self):
        env = os.environ.get("ZSL_STATE_BUDGET")
        if env:
            self.state_budget = int(env)
        if self.state_budget < 10**4:
            raise UsageError(f"state budget must be >= 10^4, got {self.state_budget}")
        if self.workers < 1:
            raise UsageError(f"workers must be >= 1, got {self.workers}")
        if self.format not in ("json", "csv", "table"):
            raise UsageError(f"unknown format {self.format!r}")


def parse_group(spec: str) -> Group:
    m = _GROUP_SPEC.match(spec)
    if m is None:
        raise UsageError(f"bad group spec {spec!r}; expected metacyclic:n=<N>,s=<S> or cyclic:m=<M>")
    if m.group("m") is not None:
        order = int(m.group("m"))
        if not 1 <= order <= Group.MAX_ORDER:
            raise UsageError(f"cyclic order must be in [1, {Group.MAX_ORDER}], got {order}")
        return Group.cyclic(order)
    n, s = int(m.group("n")), int(m.group("s"))
    if n < 2 or 2 * n > Group.MAX_ORDER:
        raise UsageError(f"n must be in [2, {Group.MAX_ORDER // 2}], got {n}")
    if validate_params(n, s).tag is Tag.INVALID:
        raise UsageError(f"s^2 != 1 mod n for {spec!r}")
    return Group.metacyclic(n, s)


def _require_nonabelian_nondihedral(group: Group) -> None:
    if group.kind != "metacyclic" or not group.params.is_nonabelian_nondihedral:
        cls = validate_params(group.n, group.s) if group.kind == "metacyclic" else "cyclic"
        raise UsageError(f"{group.spec} is {cls}; this command needs a non-abelian, non-dihedral pair")


# output

def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}.")
    elif isinstance(obj, list) and obj and all(isinstance(v, (dict, list)) for v in obj):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        yield prefix.rstrip("."), obj if not isinstance(obj, list) else json.dumps(obj)


def render(report: dict, fmt: str, rows: Optional[list[dict]] = None) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        else:
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(["key", "value"])
            writer.writerows(_flatten(report))
        return buf.getvalue()
    pairs = list(_flatten(report))
    width = max((len(k) for k, _ in pairs), default=0)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in pairs)


def _emit(args, config: RunConfig, report: dict, rows=None) -> None:
    text = render(report, config.format, rows)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# subcommands

def cmd_check(args, config):
    group = parse_group(args.group)
    S = parse_sequence(group, args.sequence)
    rep = compute_products(S, config.state_budget)
    report = {
        "group": group.spec,
        "sequence": format_sequence(S),
        "length": S.length,
        "product_one_free": rep.product_one_free,
        "subproducts_size": len(rep.subproducts),
        "pi": sorted(format_element(g) for g in rep.pi),
        "witness": ",".join(format_element(g) for g in rep.witness) if rep.witness else None,
    }
    _emit(args, config, report)
    return EXIT_OK if rep.product_one_free else EXIT_FALSIFIED


def cmd_classify(args, config):
    group = parse_group(args.group)
    _require_nonabelian_nondihedral(group)
    S = parse_sequence(group, args.sequence)
    if S.length != group.n:
        raise UsageError(f"classify needs a sequence of length n = {group.n}, got {S.length}")
    pattern = classifier.match_pattern(S, group)
    rep = compute_products(S, config.state_budget)
    report = {
        "group": group.spec,
        "sequence": format_sequence(S),
        "pattern": pattern.to_json() if pattern else None,
        "product_one_free": rep.product_one_free,
    }
    # a matched pattern must be product-one free and vice versa
    consistent = (pattern is not None) == rep.product_one_free
    report["consistent"] = consistent
    _emit(args, config, report)
    return EXIT_OK if consistent else EXIT_FALSIFIED


def _expected_d(group: Group) -> Optional[int]:
    if group.kind == "cyclic":
        return group.n - 1
    if group.params.is_nonabelian_nondihedral:
        return group.n
    return None


def cmd_davenport(args, config):
    group = parse_group(args.group)
    max_len = args.max_len if args.max_len is not None else group.order
    res = davenport.small_davenport(
        group, max_len, state_budget=config.state_budget,
        time_budget_ms=config.time_budget_ms, workers=config.workers,
    )
    report = res.to_json(stats=config.stats)
    expected = _expected_d(group)
    report["expected"] = expected
    report["complete"] = res.exhaustive or res.max_len_reached
    falsified = res.exhaustive and expected is not None and res.d != expected
    if falsified:
        report["falsifications"] = [{"expected": expected, "found": res.d}]
    if args.figure:
        from .plotting import plot_length_profile

        plot_length_profile(res.by_length, args.figure, title=f"{group.spec}: d = {res.d}", highlight=res.d)
    rows = [{"length": k, "count": c} for k, c in enumerate(res.by_length)]
    _emit(args, config, report, rows)
    if falsified:
        return EXIT_FALSIFIED
    if not report["complete"]:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_verify_theorem(args, config):
    group = parse_group(args.group)
    _require_nonabelian_nondihedral(group)
    report = classifier.verify_theorem(
        group.params, state_budget=config.state_budget, time_budget_ms=config.time_budget_ms,
        workers=config.workers, stats=config.stats, include_sequences=config.format == "csv",
    )
    rows = report.pop("sequences", None)
    if args.figure:
        from .plotting import plot_length_profile

        plot_length_profile(report["pof_count_by_length"], args.figure, title=group.spec, highlight=group.n)
    _emit(args, config, report, rows)
    if report["missing"] or report["extra"] or (report["complete"] and not report["ok"]):
        return EXIT_FALSIFIED
    if not report["complete"]:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_families(args, config):
    group = parse_group(args.group)
    _require_nonabelian_nondihedral(group)
    report = classifier.verify_families_pof(group.params, config.state_budget)
    report["generator_change"] = [
        classifier.generator_change_note(group.params, v) for v in range(1, group.n, 2)
    ] if group.params.is_modular else []
    _emit(args, config, report)
    return EXIT_FALSIFIED if report["failures"] else EXIT_OK


def cmd_factor(args, config):
    try:
        f = factorization.factor(args.n, args.s)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = f.to_json()
    problems = f.check()
    if not factorization.sign_flip_holds(f):
        problems.append("sign flip")
    psi = factorization.build_projection(f)
    report["projection_bijective"] = psi.is_bijective()
    report["problems"] = problems
    _emit(args, config, report)
    return EXIT_FALSIFIED if problems else EXIT_OK


def cmd_lemma1_audit(args, config):
    if args.m_min > args.m_max:
        raise UsageError("--m-min must not exceed --m-max")
    try:
        audit = cyclic_lemma.audit_lemma1(
            range(args.m_min, args.m_max + 1), mode=args.mode, samples=args.samples, seed=config.seed,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = audit.to_json(stats=config.stats)
    report["seed"] = config.seed
    if args.figure:
        from .plotting import plot_audit

        plot_audit(audit.per_m, args.figure, title=f"lemma audit ({args.mode})")
    rows = [{"m": m, **v} for m, v in sorted(audit.per_m.items())]
    _emit(args, config, report, rows)
    return EXIT_FALSIFIED if report["falsifications"] else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default="json")
    common.add_argument("--state-budget", type=int, default=DEFAULT_STATE_BUDGET)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--time-budget-ms", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--no-stats", action="store_true", help="omit the stats block (timings, counters)")
    common.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="zsl", description="Zero-sum search over C_n x|_s C_2.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="product-one freeness of a sequence")
    p.add_argument("group")
    p.add_argument("sequence")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", parents=[common], help="match a length-n sequence against the extremal families")
    p.add_argument("group")
    p.add_argument("sequence")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("davenport", parents=[common], help="small Davenport constant by exhaustive search")
    p.add_argument("group")
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--figure", default=None, help="write a length-profile figure to this path")
    p.set_defaults(func=cmd_davenport)

    p = sub.add_parser("verify-theorem", parents=[common], help="enumerate length-n product-one free sequences")
    p.add_argument("group")
    p.add_argument("--figure", default=None)
    p.set_defaults(func=cmd_verify_theorem)

    p = sub.add_parser("families", parents=[common], help="check every extremal family instance")
    p.add_argument("group")
    p.set_defaults(func=cmd_families)

    p = sub.add_parser("factor", parents=[common], help="factor (n, s) and build the projection")
    p.add_argument("n", type=int)
    p.add_argument("s", type=int)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("lemma1-audit", parents=[common], help="certify long zero-sum free sequences over C_m")
    p.add_argument("--m-min", type=int, required=True)
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--mode", choices=("exhaustive", "sample"), default="exhaustive")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--figure", default=None)
    p.set_defaults(func=cmd_lemma1_audit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        config = RunConfig(
            group=getattr(args, "group", None),
            state_budget=args.state_budget,
            workers=args.workers,
            time_budget_ms=args.time_budget_ms,
            format=args.format,
            seed=args.seed,
            stats=not args.no_stats,
        )
        return args.func(args, config)
    except (UsageError, SequenceParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except StateBudgetExceeded as exc:
        report = {"error": str(exc), "complete": False, "needed_states": exc.needed, "state_budget": exc.budget}
        sys.stdout.write(render(report, "json"))
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
