"""Command line interface: ``lfpsat solve|check|oracle <file>`` and ``lfpsat demos <dir>``.

Exit codes: 0 success, 1 disagreement or failed check, 2 parse error,
3 unbounded generator, 4 size guard exceeded, 5 contract violation
(non-monotone map, non-dense family, inexact presentation or bound).
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path
from typing import Sequence, TextIO

from .closure import UNBOUNDED_MESSAGE
from .errors import ContractError, GuardError, ParseError, UnboundedGeneratorError
from .fixpoint import deflationary_points, least_fixed_point
from .generator import (
    check_bound,
    check_dense,
    check_local,
    check_monotone,
    gamma_map,
)
from .lattice import ExplicitLattice, check_presentation, validate_basis
from .problem import Instance, load

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_UNBOUNDED, EXIT_GUARD, EXIT_CONTRACT = range(6)


def _load(args: argparse.Namespace) -> Instance:
    return load(args.file, basis_kind=args.basis, seed=args.seed, max_universe=args.max_universe)


def cmd_solve(args: argparse.Namespace, out: TextIO) -> int:
    inst = _load(args)
    problem = inst.closure_problem()
    report = least_fixed_point(problem)
    lines = report.lines(inst.lattice, inst.basis)
    if inst.random_map:
        lines.append(f"seed = {inst.seed or 0}")
    out.write("\n".join(lines) + "\n")
    if args.trace:
        trace = report.closure.trace_lines(inst.basis)
        Path(args.trace).write_text("".join(line + "\n" for line in trace))
    return EXIT_OK if report.agree in (True, None) else EXIT_FAIL


def _describe(inst: Instance, name: str, witness: tuple) -> str:
    lat, basis = inst.lattice, inst.basis
    if name == "basis":
        kind = witness[0]
        if kind == "join":
            return f"x = {lat.format(witness[1])} rebuilt as {lat.format(witness[2])}"
        return f"leq_b disagrees with the order at b = {basis.labels[witness[1]]}, x = {lat.format(witness[2])}"
    if name == "presentation":
        b, x, direction = witness
        return f"b = {basis.labels[b]}, X = {basis.format(x)}, direction {direction}"
    if name == "monotone":
        x, y = witness
        f = inst.f
        return f"{lat.format(x)} <= {lat.format(y)} but f gives {lat.format(f(x))} and {lat.format(f(y))}"
    if name in ("dense", "bound"):
        b, a = witness
        return f"b = {basis.labels[b]}, a = {lat.format(a)}"
    if name == "local":
        a, direct, mediated = witness
        return f"a = {lat.format(a)}: direct {basis.format(direct)} vs bounded {basis.format(mediated)}"
    return repr(witness)


def cmd_check(args: argparse.Namespace, out: TextIO) -> int:
    inst = _load(args)
    reports = []
    skipped: list[tuple[str, str]] = []
    if isinstance(inst.lattice, ExplicitLattice):
        reports.append(inst.lattice.poset.check_laws())
    reports.append(validate_basis(inst.basis, inst.lattice, seed=inst.seed or 0))
    reports.append(check_presentation(inst.presentation, inst.basis, inst.lattice, seed=inst.seed or 0))
    map_ok = True
    if inst.f is not None:
        mono = check_monotone(inst.f, inst.lattice, seed=inst.seed or 0)
        reports.append(mono)
        map_ok = mono.ok
    if not map_ok:
        for name in ("dense", "bound", "local"):
            skipped.append((name, "map is not monotone"))
    else:
        if inst.family is not None:
            dense = check_dense(inst.validated_map(), inst.family, inst.basis, inst.lattice)
            reports.append(dense)
            if not dense:
                skipped += [("bound", "map is not dense"), ("local", "map is not dense")]
        if not skipped:
            gen, bound = inst.generator()
            if bound is None:
                skipped += [("bound", "canonical generator carries no bound"), ("local", "no bound")]
            else:
                reports.append(check_bound(gen, bound, inst.basis, inst.lattice))
                if inst.lattice.is_enumerable():
                    reports.append(check_local(gen, inst.basis, inst.lattice, bound=bound))
                else:
                    skipped.append(("local", "carrier too large to enumerate"))
    failed = False
    for rep in reports:
        mode = "exhaustive" if rep.exhaustive else "sampled"
        if rep.ok:
            out.write(f"{rep.name}: ok ({rep.checked} checked, {mode})\n")
        else:
            failed = True
            out.write(f"{rep.name}: FAIL {_describe(inst, rep.name, rep.violations[0])}\n")
    for name, why in skipped:
        out.write(f"{name}: skipped ({why})\n")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_oracle(args: argparse.Namespace, out: TextIO) -> int:
    inst = _load(args)
    problem = inst.closure_problem()
    report = least_fixed_point(problem)
    lat = inst.lattice
    gamma = gamma_map(problem.generator, problem.basis, lat)
    if report.oracle_meet is None:
        meet_value, meet_steps = "skipped", f"carrier has {lat.size} elements"
    else:
        meet_value, meet_steps = lat.format(report.oracle_meet), str(len(deflationary_points(gamma, lat)))
    rows = [
        ("engine", "value", "steps"),
        ("saturation", lat.format(report.lfp), str(report.closure.passes)),
        ("kleene", lat.format(report.oracle_kleene), str(report.kleene_steps)),
        ("meet", meet_value, meet_steps),
    ]
    w0 = max(len(r[0]) for r in rows)
    w1 = max(len(r[1]) for r in rows)
    for a, b, c in rows:
        out.write(f"{a:<{w0}}  {b:<{w1}}  {c}\n".rstrip() + "\n")
    if inst.random_map:
        out.write(f"seed = {inst.seed or 0}\n")
    if report.oracle_meet is None:
        out.write("all equal: skipped (meet oracle exceeded the enumeration guard)\n")
        return EXIT_GUARD
    out.write(f"all equal: {str(bool(report.agree)).lower()}\n")
    return EXIT_OK if report.agree else EXIT_FAIL


def cmd_demos(args: argparse.Namespace, out: TextIO) -> int:
    target = Path(args.directory)
    target.mkdir(parents=True, exist_ok=True)
    for name, text in demo_corpus().items():
        (target / name).write_text(text)
        out.write(f"wrote {target / name}\n")
    return EXIT_OK


def demo_corpus() -> dict[str, str]:
    root = resources.files("lfpsat") / "demos"
    return {p.name: p.read_text() for p in sorted(root.iterdir(), key=lambda p: p.name) if p.name.endswith(".lfp")}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="problem file")
    common.add_argument("--seed", type=int, default=None, help="seed for random maps and sampled checks")
    common.add_argument("--basis", choices=("singleton", "list"), default=None, help="basis of a powerset carrier")
    common.add_argument("--max-universe", type=int, default=None, help="largest powerset universe accepted")
    parser = argparse.ArgumentParser(prog="lfpsat", description="Least fixed points by saturation of inductive generators.")
    sub = parser.add_subparsers(dest="command", required=True)
    solve = sub.add_parser("solve", parents=[common], help="compute the least fixed point")
    solve.add_argument("--trace", default=None, help="write the closure firing trace to this path")
    solve.set_defaults(run=cmd_solve)
    sub.add_parser("check", parents=[common], help="run every applicable law checker").set_defaults(run=cmd_check)
    sub.add_parser("oracle", parents=[common], help="compare saturation with both oracles").set_defaults(run=cmd_oracle)
    demos = sub.add_parser("demos", help="write the shipped demo corpus to a directory")
    demos.add_argument("directory")
    demos.set_defaults(run=cmd_demos)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.run(args, out)
    except ParseError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    except UnboundedGeneratorError:
        err.write(f"error: {UNBOUNDED_MESSAGE}\n")
        return EXIT_UNBOUNDED
    except GuardError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_GUARD
    except ContractError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CONTRACT
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
