"""Acceptance suite: one criterion per test, one pass/fail line per criterion.

Each test reports its verdict through the ``check`` fixture, which prints
outside pytest's capture so a full run always shows the per-criterion status
lines, then asserts.  Every check is seeded and exact unless a tolerance is
part of the criterion itself.
"""

import math
import random

import pytest

from polpoisson import sampling
from polpoisson.dynamics import State, conservation_report, rk4_flow
from polpoisson.geometry import (
    ModelManifold, PolarizedHamiltonian, apply_transition, contract_theta,
    differential, hamiltonian_field, hom_model, lie_bracket_fields, pair)
from polpoisson.lie_algebra import (
    LieAlgebra, abelian, h3_plus_a, heisenberg3, n4)
from polpoisson.poisson import (
    BracketKind, jacobiator, linear_bracket, subordinate_bracket)

M11 = ModelManifold(1, 1)


@pytest.fixture
def check(capsys):
    def report(tag, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        note = f" ({detail})" if detail else ""
        line = f"{tag}: {status}{note}"
        with capsys.disabled():
            print(line, flush=True)
        assert ok, line
    return report


def random_pair(rng, man):
    return (sampling.random_hamiltonian(rng, man),
            sampling.random_hamiltonian(rng, man))


def test_criterion_01_abelian_linear_bracket_vanishes(check):
    alg = abelian(3)
    man = hom_model(alg, 2)
    rng = random.Random(101)
    zero = man.zero()
    ok = True
    for _ in range(50):
        h, g = random_pair(rng, man)
        out = linear_bracket(alg, h, g)
        ok = ok and all(s == zero for s in out.slopes) \
            and all(b == zero for b in out.offsets)
    check("criterion 01 (abelian linear bracket is zero)", ok)


def test_criterion_02_heisenberg_linear_bracket(check):
    alg = heisenberg3()
    man = hom_model(alg, 2)
    rng = random.Random(102)
    ok = True
    for _ in range(50):
        h, g = random_pair(rng, man)
        out = linear_bracket(alg, h, g)
        expected = h.slopes[0] * g.slopes[1] - h.slopes[1] * g.slopes[0]
        ok = ok and out.slopes[0].is_zero() and out.slopes[1].is_zero() \
            and out.slopes[2] == expected \
            and all(b.is_zero() for b in out.offsets)
    check("criterion 02 (heisenberg3: a''3 = a1 a'2 - a2 a'1)", ok)


def test_criterion_03_h3_plus_a_linear_bracket(check):
    alg = h3_plus_a()
    man = hom_model(alg, 2)
    rng = random.Random(103)
    ok = True
    for _ in range(50):
        h, g = random_pair(rng, man)
        out = linear_bracket(alg, h, g)
        expected = h.slopes[2] * g.slopes[1] - h.slopes[1] * g.slopes[2]
        ok = ok and out.slopes[0] == expected \
            and all(out.slopes[i].is_zero() for i in (1, 2, 3)) \
            and all(b.is_zero() for b in out.offsets)
    check("criterion 03 (h3_plus_a: a''1 = a3 a'2 - a2 a'3)", ok)


def test_criterion_04_n4_linear_bracket(check):
    alg = n4()
    man = hom_model(alg, 2)
    rng = random.Random(104)
    ok = True
    for _ in range(50):
        h, g = random_pair(rng, man)
        out = linear_bracket(alg, h, g)
        ok = ok and out.slopes[0].is_zero() and out.slopes[1].is_zero() \
            and out.slopes[2] == h.slopes[1] * g.slopes[0] - h.slopes[0] * g.slopes[1] \
            and out.slopes[3] == h.slopes[2] * g.slopes[0] - h.slopes[0] * g.slopes[2] \
            and all(b.is_zero() for b in out.offsets)
    check("criterion 04 (n4: a''3 and a''4 as displayed)", ok)


def test_criterion_05_contraction_identity(check):
    rng = random.Random(105)
    combos = [(k, n) for n in (1, 2, 3) for k in (1, 2)]
    ok = True
    for i in range(100):
        k, n = combos[i % len(combos)]
        man = ModelManifold(k, n)
        h = sampling.random_hamiltonian(rng, man)
        ok = ok and contract_theta(hamiltonian_field(h)) == -differential(h)
    check("criterion 05 (i(X_H)theta = -dH on 100 samples)", ok)


def test_criterion_06_homomorphism_as_stated(check):
    # stated orientation [X_H, X_K] = X_{{H,K}}; the display-pinned bracket
    # makes the field map an anti-homomorphism, so this direction fails
    rng = random.Random(106)
    man = ModelManifold(2, 2)
    ok = True
    witness = ""
    for i in range(100):
        h, g = random_pair(rng, man)
        lhs = lie_bracket_fields(hamiltonian_field(h), hamiltonian_field(g))
        if lhs != hamiltonian_field(subordinate_bracket(h, g)):
            ok = False
            witness = f"first failure at pair {i}; [X_H,X_K] = X_{{K,H}} holds instead"
            break
    check("criterion 06 (field map [X_H,X_K] = X_{H,K} as stated)", ok, witness)


def test_criterion_07_jacobi_identity(check):
    rng = random.Random(107)
    ok = True
    kind = BracketKind.subordinate()
    man = ModelManifold(2, 2)
    for _ in range(50):
        f = sampling.random_hamiltonian(rng, man)
        g = sampling.random_hamiltonian(rng, man)
        h = sampling.random_hamiltonian(rng, man)
        ok = ok and jacobiator(kind, f, g, h).is_zero()
    for alg in (abelian(3), heisenberg3(), h3_plus_a(), n4()):
        kind = BracketKind.linear(alg)
        lman = hom_model(alg, 2)
        for _ in range(50):
            f = sampling.random_hamiltonian(rng, lman)
            g = sampling.random_hamiltonian(rng, lman)
            h = sampling.random_hamiltonian(rng, lman)
            ok = ok and jacobiator(kind, f, g, h).is_zero()
    check("criterion 07 (jacobiator vanishes, subordinate + catalog)", ok)


def test_criterion_08_negative_control_as_stated(check):
    # inject C[1][3][2] = 1 (antisymmetrized) into heisenberg3; the criterion
    # expects a Jacobi violation and a nonzero jacobiator witness
    bad = LieAlgebra(3, {(1, 2, 3): 1, (2, 1, 3): -1,
                         (1, 3, 2): 1, (3, 1, 2): -1})
    violations = [v for v in bad.validate() if v.kind == "jacobi"]

    man = hom_model(bad, 1)
    kind = BracketKind.linear(bad)
    rng = random.Random(108)
    witness_found = False
    for _ in range(50):
        f = sampling.random_hamiltonian(rng, man)
        g = sampling.random_hamiltonian(rng, man)
        h = sampling.random_hamiltonian(rng, man)
        if not jacobiator(kind, f, g, h).is_zero():
            witness_found = True
            break
    detail = "" if violations or witness_found else \
        "injected tensor closes into a Lie algebra; no violation exists"
    check("criterion 08 (C[1][3][2]=1 injection flagged as invalid)",
          bool(violations) and witness_found, detail)


def test_criterion_09_basic_hamiltonians_annihilate(check):
    rng = random.Random(109)
    alg = heisenberg3()
    man = hom_model(alg, 2)
    ok = True
    for _ in range(50):
        f = sampling.random_basic_hamiltonian(rng, man)
        g = sampling.random_basic_hamiltonian(rng, man)
        ok = ok and subordinate_bracket(f, g).is_zero() \
            and linear_bracket(alg, f, g).is_zero()
    check("criterion 09 (basic pairs bracket to zero, both brackets)", ok)


def test_criterion_10_constants_in_the_kernel(check):
    rng = random.Random(110)
    man = ModelManifold(2, 2)
    ok = True
    for _ in range(50):
        h, g = random_pair(rng, man)
        shifted = h.add_constants(sampling.random_constants(rng, man.k))
        ok = ok and subordinate_bracket(shifted, g) == subordinate_bracket(h, g)
    check("criterion 10 (constant shifts do not move the bracket)", ok)


def test_criterion_11_duality(check):
    rng = random.Random(111)
    man = ModelManifold(2, 2)
    ok = True
    for _ in range(50):
        h, g = random_pair(rng, man)
        hg = subordinate_bracket(h, g).components()
        minus_hg = (-subordinate_bracket(h, g)).components()
        ok = ok and pair(differential(h), hamiltonian_field(g)) == hg \
            and pair(differential(g), hamiltonian_field(h)) == minus_hg
    check("criterion 11 (pair(dH, X_K) = {H,K}, pair(dK, X_H) = -{H,K})", ok)


def _flow_metrics(dt):
    man = M11
    hxy = PolarizedHamiltonian(man, [man.y(1)], [man.zero()])
    traj = rk4_flow(hxy, State([[1.0]], [1.0]), t_end=1.0, dt=dt)
    sol_err = 0.0
    for t, s in traj:
        sol_err = max(sol_err,
                      abs(s.x[0][0] - math.exp(-t)),
                      abs(s.y[0] - math.exp(t)))
    return sol_err, conservation_report(traj)[0]


def test_criterion_12a_dynamics_tolerances(check):
    sol_err, drift = _flow_metrics(1e-3)
    check("criterion 12a (RK4 dt=1e-3: solution within 1e-8, drift <= 1e-9)",
          sol_err <= 1e-8 and drift <= 1e-9,
          f"solution error {sol_err:.2e}, drift {drift:.2e}")


def test_criterion_12b_dynamics_halving(check):
    # at dt=1e-3 both errors sit at round-off, so the fourth-order halving
    # factor is not observable there
    sol1, drift1 = _flow_metrics(1e-3)
    sol2, drift2 = _flow_metrics(5e-4)
    sol_ratio = sol1 / sol2
    drift_ratio = drift1 / drift2
    ok = 8 <= sol_ratio <= 32 and 8 <= drift_ratio <= 32
    check("criterion 12b (halving dt=1e-3 reduces both errors by 8..32)",
          ok, f"ratios: solution {sol_ratio:.2f}, drift {drift_ratio:.2f}")


def test_criterion_13_transition_naturality(check):
    rng = random.Random(113)
    man = ModelManifold(2, 2)
    ok = True
    for _ in range(20):
        matrix, offset, phi = sampling.random_transition(rng, man)
        h, g = random_pair(rng, man)
        transformed_then_bracket = subordinate_bracket(
            apply_transition(h, matrix, offset, phi),
            apply_transition(g, matrix, offset, phi))
        bracket_then_transformed = apply_transition(
            subordinate_bracket(h, g), matrix, offset, phi)
        ok = ok and transformed_then_bracket == bracket_then_transformed
    check("criterion 13 (bracket commutes with 20 adapted transitions)", ok)
