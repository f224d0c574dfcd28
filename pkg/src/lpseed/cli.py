"""Command-line interface.

Exit codes: 0 every check passed, 1 a check failed, 2 usage or parse error,
3 resource budget exceeded.
"""
from __future__ import annotations

import argparse
import sys
import time

from .evolve import (
    BudgetExceeded,
    InexactDivision,
    LaurentFailure,
    get_equation,
    get_recurrence,
    initial_slab,
    lattice_numeric_evolve,
    numeric_evolve,
    symbolic_evolve,
)
from .expr import ParseError, format_var, format_var_pretty, parse_var, pretty_expr, print_expr
from .lattice import (
    Window,
    get_template,
    instantiate,
    interior_vars,
    schedule_mu_tilde,
    sweep,
    verify_order_independence,
    verify_shift_covariance,
)
from .reduction import get_reduction, verify_reduction
from .report import Report
from .seed import (
    MutationError,
    check_involution,
    detect_period1,
    mutate,
    validate_seed,
)
from .seedfile import SeedFileError, dump_seed, load_seed

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _parse_relabel(text: str, at: tuple) -> tuple:
    text = text.strip()
    if text.startswith("x"):
        return parse_var(text)
    try:
        shift = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"--relabel wants x[..] or a comma-separated shift, got {text!r}") from None
    if len(shift) != len(at):
        raise UsageError(f"--relabel shift has {len(shift)} components, variable has {len(at)}")
    return tuple(a + b for a, b in zip(at, shift))


def _entry_rows(s, pretty: bool) -> list[str]:
    if not pretty:
        return dump_seed(s).splitlines()
    rows = []
    for e in s:
        flag = " (frozen)" if e.frozen else ""
        rows.append(f"{format_var_pretty(e.var)}{flag}: {pretty_expr(e.exch)}")
    return rows


# -- commands ------------------------------------------------------------------

def cmd_mutate(args, rep: Report, out: list[str]):
    s = load_seed(args.seed, args.radius)
    at = parse_var(args.at)
    if at not in s:
        raise UsageError(f"{format_var(at)} is not a variable of the seed")
    new = _parse_relabel(args.relabel, at) if args.relabel else None
    try:
        t, trace = mutate(s, at, new)
    except MutationError as exc:
        rep.verdict("mutation", False, str(exc))
        return
    rep.verdict("mutation", True)
    report = validate_seed(t)
    rep.verdict("valid", report.ok, [f"{format_var(v.var)}: {v.check}: {v.detail}" for v in report.violations])
    rep.data["new_var"] = trace.new_var
    rep.data["new_var_value"] = trace.new_var_value
    rep.data["fhat_exponents"] = {format_var(k): a for k, a in sorted(trace.fhat.exponents.items())}
    rep.data["updated"] = [format_var(u.var) for u in trace.updates]
    rep.data["seed"] = {format_var(e.var): print_expr(e.exch) for e in t}
    show = pretty_expr if args.pretty else print_expr
    name = format_var_pretty if args.pretty else format_var
    out.append(f"{name(trace.new_var)} = ({show(trace.fhat.fhat)}) / {name(at)}")
    out.extend(_entry_rows(t, args.pretty))


def cmd_verify_involution(args, rep: Report, out: list[str]):
    s = load_seed(args.seed, args.radius)
    failures = []
    checked = 0
    for e in s:
        if e.frozen:
            continue
        checked += 1
        try:
            res = check_involution(s, e.var)
        except MutationError as exc:
            failures.append({"at": e.var, "error": str(exc)})
            continue
        if not res.ok:
            failures.append(res.witness)
    rep.data["checked"] = checked
    rep.verdict("involution", not failures and checked > 0, failures)
    out.append(f"involution: {checked - len(failures)}/{checked} variables restored")


def cmd_verify_period(args, rep: Report, out: list[str]):
    s = load_seed(args.seed, args.radius)
    res = detect_period1(s)
    rep.verdict("period1", res.ok, res.witness)
    out.append(f"period-1: {'yes' if res.ok else 'no'}")
    if not res.ok:
        out.append(f"  first mismatch: {res.witness}")


def cmd_lattice_sweep(args, rep: Report, out: list[str]):
    t = get_template(args.template)
    if t.arity == 1:
        w = None
        s = instantiate(t)
    else:
        w = Window(args.radius, args.margin)
        s = instantiate(t, w)
    covs = []
    for k in range(args.layers):
        res = sweep(t, w, s, k)
        line = f"sweep {k}: {res.mutations} mutations"
        if args.check_covariance:
            cov = verify_shift_covariance(s, res.seed, t, w, interior=res.interior)
            covs.append(cov.ok)
            rep.verdict(f"covariance[{k}]", cov.ok, [d.__dict__ for d in cov.diffs[:5]])
            line += f", covariance {'ok' if cov.ok else 'FAILED'} on {cov.checked} entries"
        if args.check_order:
            sched = schedule_mu_tilde(t, w, k, seed=s, sweep=k)
            region = interior_vars(res.seed, t, res.interior)
            ok, fails = verify_order_independence(
                s, sched, t.relabel, trials=args.check_order, rng_seed=args.rng_seed, region=region
            )
            rep.verdict(f"order[{k}]", ok, fails)
            line += f", order independence {'ok' if ok else 'FAILED'} over {args.check_order} orders"
        out.append(line)
        s = res.seed
    rep.data["entries"] = len(s)
    if not rep.verdicts:
        rep.verdict("sweeps", True)


def _read_initial(path: str) -> list:
    with open(path, encoding="utf-8") as fh:
        text = "\n".join(line.split("#", 1)[0] for line in fh)
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise UsageError(f"{path}: initial values must be integers ({exc})") from None


def cmd_evolve(args, rep: Report, out: list[str]):
    name = args.equation
    try:
        r = get_recurrence(name)
    except KeyError:
        r = None
    if r is not None:
        initial = [1] * r.order if args.initial == "ones" else _read_initial(args.initial)
        if len(initial) != r.order:
            raise UsageError(f"{name} needs {r.order} initial values, got {len(initial)}")
        try:
            seq = numeric_evolve(r, initial, args.terms)
        except (InexactDivision, ZeroDivisionError) as exc:
            rep.verdict("integral", False, str(exc))
            return
        rep.verdict("integral", True)
        rep.data["sequence"] = seq
        out.append(" ".join(str(v) for v in seq))
        return
    e = get_equation(name)
    if args.initial != "ones":
        raise UsageError("lattice equations start from the all-ones slab")
    slab = initial_slab(e, args.radius)
    try:
        vals = lattice_numeric_evolve(e, slab, args.terms)
    except (InexactDivision, ZeroDivisionError) as exc:
        rep.verdict("integral", False, str(exc))
        return
    rep.verdict("integral", True)
    new = {k: v for k, v in sorted(vals.items()) if k not in slab}
    rep.data["values"] = new
    for k, v in new.items():
        out.append(f"{format_var(k)} = {v}")


def cmd_laurent_check(args, rep: Report, out: list[str]):
    r = get_recurrence(args.equation)
    seq = symbolic_evolve(r, args.depth, budget=args.budget)
    rep.verdict("laurent", True)
    ones = {(i,): 1 for i in range(r.order)}
    special = [p.evaluate(ones) for p in seq]
    numeric = numeric_evolve(r, [1] * r.order, args.depth)
    rep.verdict("specialization", special == numeric, {"symbolic": special, "numeric": numeric})
    rep.data["terms"] = [len(p) for p in seq[r.order:]]
    rep.data["values"] = seq[r.order:]
    for i, p in enumerate(seq[r.order:], start=r.order):
        out.append(f"x[{i}]: {len(p)} terms, Laurent")


def cmd_verify_reduction(args, rep: Report, out: list[str]):
    src, dst = get_template(args.from_), get_template(args.to)
    r = get_reduction(args.map)
    res = verify_reduction(src, r, dst)
    rep.verdict("reduction", res.ok, {
        "layers": [d.__dict__ for d in res.diffs],
        "problems": res.problems,
    })
    rep.data["matrix"] = [list(row) for row in r.matrix]
    out.append(f"{src.name} --{r.name}--> {dst.name}: {'ok' if res.ok else 'FAILED'}")
    for d in res.diffs:
        out.append(f"  F_{d.layer}: expected {print_expr(d.expected)}, got {print_expr(d.got)}")
    for p in res.problems:
        out.append(f"  {p}")


COMMANDS = {
    "mutate": cmd_mutate,
    "verify-involution": cmd_verify_involution,
    "verify-period": cmd_verify_period,
    "lattice-sweep": cmd_lattice_sweep,
    "evolve": cmd_evolve,
    "laurent-check": cmd_laurent_check,
    "verify-reduction": cmd_verify_reduction,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print a JSON report")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="term budget for symbolic work")

    p = argparse.ArgumentParser(prog="lpseed", description="Laurent phenomenon seed mutation and checks.")
    p.add_argument("--json", action="store_true", help="print a JSON report")
    p.add_argument("--budget", type=int, default=200_000, help="term budget for symbolic work (default 200000)")
    sub = p.add_subparsers(dest="command", required=True)

    def seed_args(sp):
        sp.add_argument("--seed", required=True, help="seed file or built-in template name")
        sp.add_argument("--radius", type=int, default=2, help="window radius for lattice templates")

    sp = sub.add_parser("mutate", parents=[common], help="mutate a seed at one variable")
    seed_args(sp)
    sp.add_argument("--at", required=True, help="variable, e.g. x[0]")
    sp.add_argument("--relabel", help="new variable x[..] or index shift like 1,1,1")
    sp.add_argument("--pretty", action="store_true", help="sub/superscript layout")

    sp = sub.add_parser("verify-involution", parents=[common], help="double mutation restores the seed")
    seed_args(sp)

    sp = sub.add_parser("verify-period", parents=[common], help="check the period-1 property")
    seed_args(sp)

    sp = sub.add_parser("lattice-sweep", parents=[common], help="run layer sweeps on a window")
    sp.add_argument("--template", required=True)
    sp.add_argument("--radius", type=int, default=3)
    sp.add_argument("--margin", type=int, default=2)
    sp.add_argument("--layers", type=int, default=1)
    sp.add_argument("--check-covariance", action="store_true")
    sp.add_argument("--check-order", type=int, default=0, metavar="N", help="random orders to compare")
    sp.add_argument("--rng-seed", type=int, default=0)

    sp = sub.add_parser("evolve", parents=[common], help="exact numeric evolution")
    sp.add_argument("--equation", required=True)
    sp.add_argument("--terms", type=int, required=True, help="new terms (recurrences) or sweeps (lattices)")
    sp.add_argument("--initial", default="ones", help="'ones' or a file of integers")
    sp.add_argument("--radius", type=int, default=3, help="slab radius for lattice equations")

    sp = sub.add_parser("laurent-check", parents=[common], help="symbolic Laurentness certificate")
    sp.add_argument("--equation", required=True)
    sp.add_argument("--depth", type=int, required=True)

    sp = sub.add_parser("verify-reduction", parents=[common], help="reduced template equals target")
    sp.add_argument("--from", dest="from_", required=True)
    sp.add_argument("--map", required=True)
    sp.add_argument("--to", required=True)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    rep = Report(args.command, {k: v for k, v in sorted(vars(args).items()) if k not in ("json", "command")})
    out: list[str] = []
    start = time.perf_counter()
    code = EXIT_OK
    try:
        COMMANDS[args.command](args, rep, out)
        code = EXIT_OK if rep.ok else EXIT_FAIL
    except BudgetExceeded as exc:
        rep.verdict("budget", False, str(exc))
        code = EXIT_BUDGET
    except LaurentFailure as exc:
        rep.verdict("laurent", False, {"step": exc.step, "error": str(exc)})
        code = EXIT_FAIL
    except (UsageError, SeedFileError, ParseError, KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        print(f"lpseed: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    rep.timing["seconds"] = round(time.perf_counter() - start, 6)
    if args.json:
        print(rep.to_json())
    else:
        for line in out:
            print(line)
        for name, ok in rep.verdicts.items():
            if not ok:
                print(f"FAILED {name}: {rep.witnesses.get(name, '')}")
    return code


if __name__ == "__main__":
    sys.exit(main())
