"""Compare the pure-Python and compiled polynomial kernels.

Two views:

* kernel microbenchmarks, timing the shared term-dict operations against
  both backend modules loaded side by side in this process;
* an end-to-end pass (axiom verification plus an RK4 flow), run in a child
  process per backend so the import-time selection is what gets exercised.

Usage: python3 benchmarks/bench_backends.py [--repeat N] [--skip-e2e]
"""

import argparse
import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction

from polpoisson._kernel import pure

try:
    from polpoisson._kernel import _speedups
except ImportError:
    _speedups = None


def random_terms(rng, nvars, degree, count):
    terms = {}
    while len(terms) < count:
        exp = [0] * nvars
        for _ in range(degree):
            exp[rng.randrange(nvars)] += rng.randrange(2)
        terms[tuple(exp)] = Fraction(rng.randint(-9, 9), rng.randint(1, 7))
    return terms


def time_op(fn, repeat, number):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def micro(repeat):
    rng = random.Random(20)
    a = random_terms(rng, 3, 4, 12)
    b = random_terms(rng, 3, 4, 12)
    frac_point = (Fraction(1, 2), Fraction(-2, 3), Fraction(3))
    float_point = (0.5, -0.625, 3.0)
    cases = [
        ("add_terms", lambda k: lambda: k.add_terms(a, b), 2000),
        ("mul_terms", lambda k: lambda: k.mul_terms(a, b), 300),
        ("partial_terms", lambda k: lambda: k.partial_terms(a, 1), 3000),
        ("eval_terms", lambda k: lambda: k.eval_terms(a, frac_point), 1000),
        ("FloatPoly call", lambda k: (lambda p: lambda: p(float_point))(
            k.FloatPoly(a, 3)), 5000),
    ]
    print(f"{'operation':<16}{'pure':>12}{'compiled':>12}{'speedup':>10}")
    for name, make, number in cases:
        t_pure = time_op(make(pure), repeat, number)
        if _speedups is None:
            print(f"{name:<16}{t_pure * 1e6:>10.2f}us{'n/a':>12}{'n/a':>10}")
            continue
        t_fast = time_op(make(_speedups), repeat, number)
        print(f"{name:<16}{t_pure * 1e6:>10.2f}us{t_fast * 1e6:>10.2f}us"
              f"{t_pure / t_fast:>9.1f}x")


E2E_SNIPPET = """
import random, time
from polpoisson import sampling
from polpoisson._kernel import BACKEND
from polpoisson.dynamics import State, rk4_flow
from polpoisson.geometry import ModelManifold, PolarizedHamiltonian
from polpoisson.poisson import BracketKind, verify_axioms

man = ModelManifold(2, 3)
rng = random.Random(7)
samples = [sampling.random_hamiltonian(rng, man) for _ in range(6)]
flow_h = PolarizedHamiltonian(
    man, [man.y(1), man.y(2) * man.y(3), man.y(1) * man.y(1)],
    [man.y(2), man.zero()])
start = State([[1.0, 0.5, -0.25], [0.0, 1.0, 2.0]], [1.0, 0.5, 0.25])

t0 = time.perf_counter()
report = verify_axioms(BracketKind.subordinate(), samples)
assert report.ok
rk4_flow(flow_h, start, t_end=1.0, dt=1e-3)
print(BACKEND, time.perf_counter() - t0)
"""


def end_to_end():
    results = {}
    for backend in ("pure", "compiled"):
        if backend == "compiled" and _speedups is None:
            print("compiled backend not built; skipping its end-to-end run")
            continue
        env = dict(os.environ, POLPOISSON_BACKEND=backend)
        out = subprocess.run([sys.executable, "-c", E2E_SNIPPET],
                             env=env, capture_output=True, text=True, check=True)
        name, seconds = out.stdout.split()
        assert name == backend, f"child selected {name}, wanted {backend}"
        results[backend] = float(seconds)
        print(f"end-to-end ({backend}): {results[backend]:.3f}s")
    if len(results) == 2:
        print(f"end-to-end speedup: {results['pure'] / results['compiled']:.1f}x")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5,
                        help="timeit repeats per microbenchmark (default 5)")
    parser.add_argument("--skip-e2e", action="store_true",
                        help="only run the in-process microbenchmarks")
    args = parser.parse_args(argv)
    if _speedups is None:
        print("note: compiled kernel not built; showing pure timings only")
    micro(args.repeat)
    if not args.skip_e2e:
        end_to_end()


if __name__ == "__main__":
    main()
