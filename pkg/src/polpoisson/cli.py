"""Command line front end.

    polpoisson validate FILE
    polpoisson bracket FILE H K [--json]
    polpoisson lbracket FILE H K [--json]
    polpoisson field FILE H [--json]
    polpoisson flow FILE H --x0 V[,V..] --y0 V[,V..] --t T --dt DT [--out PATH]
    polpoisson verify FILE [--samples N] [--seed S]
    polpoisson examples [--json]

Problem files are JSON: {"manifold": {"k": .., "n": ..},
"lie_algebra": <name | bracket object | maurer-cartan object>  (optional),
"hamiltonians": {"name": {"a": [..], "b": [..]}, ..}}.

Exit codes: 0 success, 1 input error, 2 verification failure.  Identical
inputs, flags, and seed produce byte-identical output; POLPOISSON_COLOR=0
disables ANSI color (color is only used on a terminal).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import dynamics, geometry, lie_algebra, poisson, sampling
from .geometry import ModelManifold, hamiltonian_from_json, hamiltonian_to_json


class ProblemFile:
    __slots__ = ("manifold", "algebra", "hamiltonians")

    def __init__(self, manifold, algebra, hamiltonians):
        self.manifold = manifold
        self.algebra = algebra
        self.hamiltonians = hamiltonians


def load_problem(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a JSON object at top level")
    man_data = data.get("manifold")
    if not isinstance(man_data, dict) or not isinstance(man_data.get("k"), int) \
            or not isinstance(man_data.get("n"), int):
        raise ValueError("manifold: expected {\"k\": int, \"n\": int}")
    try:
        manifold = ModelManifold(man_data["k"], man_data["n"])
    except ValueError as exc:
        raise ValueError(f"manifold: {exc}") from None

    algebra = None
    if "lie_algebra" in data:
        try:
            algebra = lie_algebra.load(data["lie_algebra"])
        except ValueError as exc:
            raise ValueError(f"lie_algebra: {exc}") from None
        if algebra.dim != manifold.n:
            raise ValueError(
                f"lie_algebra: dimension {algebra.dim} does not match n={manifold.n}")

    hams = {}
    ham_data = data.get("hamiltonians", {})
    if not isinstance(ham_data, dict):
        raise ValueError("hamiltonians: expected an object of named Hamiltonians")
    for name, entry in ham_data.items():
        hams[name] = hamiltonian_from_json(entry, manifold,
                                           where=f"hamiltonians.{name}")
    return ProblemFile(manifold, algebra, hams)


def _lookup(problem, name):
    try:
        return problem.hamiltonians[name]
    except KeyError:
        known = ", ".join(sorted(problem.hamiltonians)) or "none"
        raise ValueError(f"unknown hamiltonian {name!r} (file defines: {known})") from None


def _color_enabled():
    return sys.stdout.isatty() and os.environ.get("POLPOISSON_COLOR") != "0"


def _status(passed):
    word = "pass" if passed else "FAIL"
    if _color_enabled():
        code = "32" if passed else "31"
        return f"\x1b[{code}m{word}\x1b[0m"
    return word


def _print_hamiltonian(h):
    for i, f in enumerate(h.slopes, start=1):
        print(f"a[{i}] = {f}")
    for p, f in enumerate(h.offsets, start=1):
        print(f"b[{p}] = {f}")


# -- subcommands ---------------------------------------------------------------

def cmd_validate(args):
    problem = load_problem(args.file)
    if problem.algebra is not None:
        violations = problem.algebra.validate()
        if violations:
            for v in violations:
                print(str(v))
            print(f"invalid: lie_algebra fails {len(violations)} check(s)")
            return 1
    kinds = []
    if problem.algebra is not None:
        kinds.append(f"algebra dim {problem.algebra.dim}")
    kinds.append(f"{len(problem.hamiltonians)} hamiltonian(s)")
    print(f"ok: k={problem.manifold.k} n={problem.manifold.n}, " + ", ".join(kinds))
    return 0


def _cmd_bracket(args, linear):
    problem = load_problem(args.file)
    h = _lookup(problem, args.h)
    k = _lookup(problem, args.k)
    if linear:
        if problem.algebra is None:
            raise ValueError("the linear bracket needs a \"lie_algebra\" entry")
        result = poisson.linear_bracket(problem.algebra, h, k)
    else:
        result = poisson.subordinate_bracket(h, k)
    if args.json:
        print(json.dumps(hamiltonian_to_json(result), indent=2))
    else:
        _print_hamiltonian(result)
    return 0


def cmd_bracket(args):
    return _cmd_bracket(args, linear=args.linear)


def cmd_lbracket(args):
    return _cmd_bracket(args, linear=True)


def cmd_field(args):
    problem = load_problem(args.file)
    h = _lookup(problem, args.h)
    field = geometry.hamiltonian_field(h)
    if args.json:
        man = problem.manifold
        print(json.dumps({
            "xi": [[str(field.x_comp[p][i]) for i in range(man.n)]
                   for p in range(man.k)],
            "eta": [str(f) for f in field.y_comp],
        }, indent=2))
    else:
        print(str(field))
    return 0


def _parse_floats(text, count, what):
    parts = [p.strip() for p in text.split(",")]
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise ValueError(f"{what}: expected comma-separated numbers, got {text!r}") from None
    if len(values) != count:
        raise ValueError(f"{what}: expected {count} value(s), got {len(values)}")
    return values


def cmd_flow(args):
    problem = load_problem(args.file)
    h = _lookup(problem, args.h)
    man = problem.manifold
    xvals = _parse_floats(args.x0, man.k * man.n, "--x0")
    yvals = _parse_floats(args.y0, man.n, "--y0")
    x = [xvals[p * man.n:(p + 1) * man.n] for p in range(man.k)]
    state = dynamics.State(x, yvals)
    traj = dynamics.rk4_flow(h, state, args.t, args.dt)
    report = dynamics.conservation_report(traj)
    if args.out:
        dynamics.write_csv(traj, args.out)
        report_to = sys.stdout
    else:
        dynamics.write_csv(traj, sys.stdout)
        report_to = sys.stderr
    for p, drift in enumerate(report, start=1):
        print(f"drift H_{p} = {drift!r}", file=report_to)
    if traj.overflow:
        print(f"warning: flow truncated at t = {traj.times[-1]!r} (non-finite state)",
              file=report_to)
    return 0


def cmd_verify(args):
    problem = load_problem(args.file)
    man = problem.manifold
    rng = random.Random(args.seed)
    samples = [sampling.random_hamiltonian(rng, man) for _ in range(args.samples)]
    pairs = list(zip(samples, samples[1:] + samples[:1]))

    failures = []

    def report_line(label, passed, witness=None):
        note = f" ({witness})" if witness and not passed else ""
        print(f"{_status(passed)} {label}{note}")
        if not passed:
            failures.append((label, witness))

    def first_failure(checks):
        for witness, ok in checks:
            if not ok:
                return witness
        return None

    kinds = [poisson.BracketKind.subordinate()]
    if problem.algebra is not None:
        kinds.append(poisson.BracketKind.linear(problem.algebra))

    for kind in kinds:
        for check in poisson.verify_axioms(kind, samples):
            report_line(f"{kind.name}.{check.name}", check.passed, check.witness)
        # the field map reverses the bracket order: [X_H, X_K] = X_{{K,H}}
        witness = first_failure(
            (f"samples {i},{i + 1}",
             geometry.lie_bracket_fields(kind.field(f), kind.field(g))
             == kind.field(kind.bracket(g, f)))
            for i, (f, g) in enumerate(pairs))
        report_line(f"{kind.name}.field_lie_bracket", witness is None, witness)

    witness = first_failure(
        (f"sample {i}",
         geometry.contract_theta(geometry.hamiltonian_field(h))
         == -geometry.differential(h))
        for i, h in enumerate(samples))
    report_line("subordinate.contraction", witness is None, witness)

    if failures:
        label, witness = failures[0]
        print(f"verification failed: {label}" + (f" ({witness})" if witness else ""))
        return 2
    print(f"all checks passed ({args.samples} samples, seed {args.seed})")
    return 0


_CATALOG_FOR_EXAMPLES = ("abelian(2)", "heisenberg3", "h3_plus_a", "n4")


def cmd_examples(args):
    if args.json:
        out = {name: lie_algebra.to_json(lie_algebra.builtin(name))
               for name in _CATALOG_FOR_EXAMPLES}
        print(json.dumps(out, indent=2))
        return 0
    for name in _CATALOG_FOR_EXAMPLES:
        algebra = lie_algebra.builtin(name)
        print(f"{name} (dim {algebra.dim})")
        entries = sorted((i, j, l, v) for (i, j, l), v in algebra.structure.items()
                         if i < j)
        if not entries:
            print("  all brackets zero")
        for i, j, l, v in entries:
            coeff = "" if v == 1 else ("-" if v == -1 else f"{v}*")
            print(f"  [e{i},e{j}] = {coeff}e{l}")
    return 0


# -- entry point ----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser():
    parser = _Parser(prog="polpoisson", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a problem file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_validate)

    for name, fn, blurb in (("bracket", cmd_bracket, "subordinate bracket of two named Hamiltonians"),
                            ("lbracket", cmd_lbracket, "linear bracket of two named Hamiltonians")):
        p = sub.add_parser(name, help=blurb)
        p.add_argument("file")
        p.add_argument("h", metavar="H")
        p.add_argument("k", metavar="K")
        p.add_argument("--json", action="store_true", help="emit JSON")
        if name == "bracket":
            p.add_argument("--linear", action="store_true",
                           help="use the linear bracket (same as lbracket)")
        p.set_defaults(fn=fn)

    p = sub.add_parser("field", help="Hamiltonian field of a named Hamiltonian")
    p.add_argument("file")
    p.add_argument("h", metavar="H")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.set_defaults(fn=cmd_field)

    p = sub.add_parser("flow", help="integrate Hamilton's equations (RK4)")
    p.add_argument("file")
    p.add_argument("h", metavar="H")
    p.add_argument("--x0", required=True, help="initial x, comma-separated row-major (k*n values)")
    p.add_argument("--y0", required=True, help="initial y, comma-separated (n values)")
    p.add_argument("--t", type=float, required=True, help="end time")
    p.add_argument("--dt", type=float, required=True, help="step size")
    p.add_argument("--out", help="write the CSV here instead of stdout")
    p.set_defaults(fn=cmd_flow)

    p = sub.add_parser("verify", help="bracket axioms and field identities on random samples")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("examples", help="print the built-in algebra catalog")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.set_defaults(fn=cmd_examples)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 1


if __name__ == "__main__":
    sys.exit(main())
