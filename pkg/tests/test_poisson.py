"""The bracket subordinate to the polarization, the linear bracket attached
to a Lie algebra, and the axiom verification suite."""

import random
from fractions import Fraction

import pytest

from polpoisson import sampling
from polpoisson.geometry import (
    ModelManifold, PolarizedHamiltonian, hamiltonian_field, hom_model,
    lie_bracket_fields)
from polpoisson.lie_algebra import LieAlgebra, abelian, h3_plus_a, heisenberg3, n4
from polpoisson.poisson import (
    BracketKind, jacobiator, linear_bracket, linear_hamiltonian_field,
    subordinate_bracket, verify_axioms)

M11 = ModelManifold(1, 1)
M22 = ModelManifold(2, 2)


def ham(man, a_texts, b_texts):
    return PolarizedHamiltonian(man,
                                [man.parse(t) for t in a_texts],
                                [man.parse(t) for t in b_texts])


# -- subordinate bracket ------------------------------------------------------

def test_bracket_of_x_and_y():
    h = ham(M11, ["1"], ["0"])    # H = x
    g = ham(M11, ["0"], ["y1"])   # K = y
    out = subordinate_bracket(h, g)
    assert out.slopes == (M11.zero(),)
    assert out.offsets == (M11.const(-1),)


def test_bracket_of_xy_and_x():
    h = ham(M11, ["y1"], ["0"])   # H = x.y
    g = ham(M11, ["1"], ["0"])    # K = x
    out = subordinate_bracket(h, g)
    assert out.slopes == (M11.const(1),)   # {x.y, x} = x
    assert out.offsets == (M11.zero(),)


def test_bracket_antisymmetry_and_bilinearity():
    rng = random.Random(30)
    c = Fraction(3, 2)
    for _ in range(15):
        f = sampling.random_hamiltonian(rng, M22)
        g = sampling.random_hamiltonian(rng, M22)
        h = sampling.random_hamiltonian(rng, M22)
        fg = subordinate_bracket(f, g)
        assert subordinate_bracket(g, f) == -fg
        assert subordinate_bracket(f * c + h, g) \
            == fg * c + subordinate_bracket(h, g)


def test_bracket_jacobi_identity():
    rng = random.Random(31)
    for _ in range(10):
        f = sampling.random_hamiltonian(rng, M22)
        g = sampling.random_hamiltonian(rng, M22)
        h = sampling.random_hamiltonian(rng, M22)
        assert jacobiator(BracketKind.subordinate(), f, g, h).is_zero()


def test_basic_hamiltonians_are_central_annihilators():
    rng = random.Random(32)
    for _ in range(15):
        f = sampling.random_basic_hamiltonian(rng, M22)
        g = sampling.random_basic_hamiltonian(rng, M22)
        assert subordinate_bracket(f, g).is_zero()


def test_constants_lie_in_the_kernel():
    rng = random.Random(33)
    for _ in range(15):
        f = sampling.random_hamiltonian(rng, M22)
        g = sampling.random_hamiltonian(rng, M22)
        shifted = f.add_constants(sampling.random_constants(rng, 2))
        assert subordinate_bracket(shifted, g) == subordinate_bracket(f, g)


def test_duality_field_against_bracket():
    # X_K(H) = {H, K}, both sides independent
    rng = random.Random(34)
    for _ in range(15):
        h = sampling.random_hamiltonian(rng, M22)
        k = sampling.random_hamiltonian(rng, M22)
        assert hamiltonian_field(k).apply_hamiltonian(h) \
            == subordinate_bracket(h, k).components()


def test_field_map_reverses_bracket_order():
    # [X_H, X_K] = X_{{K,H}}: the field map is an anti-homomorphism
    rng = random.Random(35)
    for _ in range(15):
        h = sampling.random_hamiltonian(rng, M22)
        k = sampling.random_hamiltonian(rng, M22)
        lhs = lie_bracket_fields(hamiltonian_field(h), hamiltonian_field(k))
        assert lhs == hamiltonian_field(subordinate_bracket(k, h))
        if not subordinate_bracket(h, k).is_basic():
            assert lhs != hamiltonian_field(subordinate_bracket(h, k))


def test_bracket_requires_same_manifold():
    with pytest.raises(ValueError):
        subordinate_bracket(ham(M11, ["1"], ["0"]),
                            ham(M22, ["1", "0"], ["0", "0"]))


# -- linear bracket -----------------------------------------------------------

def test_linear_bracket_abelian_vanishes():
    alg = abelian(3)
    man = hom_model(alg, 2)
    rng = random.Random(36)
    for _ in range(15):
        h = sampling.random_hamiltonian(rng, man)
        g = sampling.random_hamiltonian(rng, man)
        assert linear_bracket(alg, h, g).is_zero()


def test_linear_bracket_heisenberg_constants():
    alg = heisenberg3()
    man = hom_model(alg, 2)
    e1 = ham(man, ["1", "0", "0"], ["0", "0"])
    e2 = ham(man, ["0", "1", "0"], ["0", "0"])
    out = linear_bracket(alg, e1, e2)
    assert out.slopes == (man.zero(), man.zero(), man.const(1))
    assert out.offsets == (man.zero(), man.zero())


def test_linear_bracket_heisenberg_symbolic():
    # a'' = (0, 0, a1 a'2 - a2 a'1) for arbitrary polynomial slopes
    alg = heisenberg3()
    man = hom_model(alg, 1)
    rng = random.Random(37)
    for _ in range(10):
        h = sampling.random_hamiltonian(rng, man)
        g = sampling.random_hamiltonian(rng, man)
        out = linear_bracket(alg, h, g)
        assert out.slopes[0].is_zero() and out.slopes[1].is_zero()
        assert out.slopes[2] == h.slopes[0] * g.slopes[1] - h.slopes[1] * g.slopes[0]
        assert all(b.is_zero() for b in out.offsets)


def test_linear_bracket_h3_plus_a_symbolic():
    # a''_1 = a3 a'2 - a2 a'3, other components zero
    alg = h3_plus_a()
    man = hom_model(alg, 1)
    rng = random.Random(38)
    for _ in range(10):
        h = sampling.random_hamiltonian(rng, man)
        g = sampling.random_hamiltonian(rng, man)
        out = linear_bracket(alg, h, g)
        assert out.slopes[0] == h.slopes[2] * g.slopes[1] - h.slopes[1] * g.slopes[2]
        assert all(out.slopes[i].is_zero() for i in (1, 2, 3))


def test_linear_bracket_n4_symbolic():
    # a''_3 = a2 a'1 - a1 a'2, a''_4 = a3 a'1 - a1 a'3
    alg = n4()
    man = hom_model(alg, 1)
    rng = random.Random(39)
    for _ in range(10):
        h = sampling.random_hamiltonian(rng, man)
        g = sampling.random_hamiltonian(rng, man)
        out = linear_bracket(alg, h, g)
        assert out.slopes[0].is_zero() and out.slopes[1].is_zero()
        assert out.slopes[2] == h.slopes[1] * g.slopes[0] - h.slopes[0] * g.slopes[1]
        assert out.slopes[3] == h.slopes[2] * g.slopes[0] - h.slopes[0] * g.slopes[2]


def test_linear_bracket_jacobi_on_catalog():
    rng = random.Random(40)
    for alg in (abelian(3), heisenberg3(), h3_plus_a(), n4()):
        kind = BracketKind.linear(alg)
        man = hom_model(alg, 2)
        for _ in range(5):
            f = sampling.random_hamiltonian(rng, man)
            g = sampling.random_hamiltonian(rng, man)
            h = sampling.random_hamiltonian(rng, man)
            assert jacobiator(kind, f, g, h).is_zero()


def test_linear_bracket_offsets_always_zero():
    alg = n4()
    man = hom_model(alg, 2)
    rng = random.Random(41)
    for _ in range(10):
        h = sampling.random_hamiltonian(rng, man)
        g = sampling.random_hamiltonian(rng, man)
        assert all(b.is_zero() for b in linear_bracket(alg, h, g).offsets)


def test_jacobiator_witnesses_a_bad_tensor():
    # heisenberg3 with an extra antisymmetrized C[1][3][1] = 1 is not a Lie
    # algebra, and the jacobiator detects it on constant slopes
    bad = LieAlgebra(3, {(1, 2, 3): 1, (2, 1, 3): -1, (1, 3, 1): 1, (3, 1, 1): -1})
    man = hom_model(bad, 1)
    kind = BracketKind.linear(bad)
    e1 = ham(man, ["1", "0", "0"], ["0"])
    e2 = ham(man, ["0", "1", "0"], ["0"])
    e3 = ham(man, ["0", "0", "1"], ["0"])
    assert not jacobiator(kind, e1, e2, e3).is_zero()


def test_linear_bracket_dimension_check():
    with pytest.raises(ValueError, match="dimension"):
        linear_bracket(heisenberg3(), ham(M22, ["0", "0"], ["0", "0"]),
                       ham(M22, ["0", "0"], ["0", "0"]))


# -- linear Hamiltonian field -------------------------------------------------

def test_linear_field_heisenberg_example():
    # a = (0, 1, 0) on heisenberg3: xi^{p1} = x_{p3}, all else zero
    alg = heisenberg3()
    man = hom_model(alg, 2)
    h = ham(man, ["0", "1", "0"], ["0", "0"])
    field = linear_hamiltonian_field(alg, h)
    for p in (1, 2):
        assert str(field.xi(p, 1)) == f"x_{p}_3"
        assert field.xi(p, 2).is_zero()
        assert field.xi(p, 3).is_zero()
    assert all(field.eta(i).is_zero() for i in (1, 2, 3))


def test_linear_field_duality():
    # X_H(K) = {K, H}^L for the linear structures
    rng = random.Random(42)
    for alg in (heisenberg3(), n4()):
        man = hom_model(alg, 2)
        for _ in range(8):
            h = sampling.random_hamiltonian(rng, man)
            k = sampling.random_hamiltonian(rng, man)
            field = linear_hamiltonian_field(alg, h)
            assert field.apply_hamiltonian(k) \
                == linear_bracket(alg, k, h).components()


def test_linear_field_lie_bracket_correspondence():
    rng = random.Random(43)
    alg = heisenberg3()
    man = hom_model(alg, 2)
    kind = BracketKind.linear(alg)
    for _ in range(8):
        h = sampling.random_hamiltonian(rng, man)
        k = sampling.random_hamiltonian(rng, man)
        lhs = lie_bracket_fields(kind.field(h), kind.field(k))
        assert lhs == kind.field(kind.bracket(k, h))


# -- verification suite -------------------------------------------------------

def test_verify_axioms_subordinate_passes():
    rng = random.Random(44)
    samples = [sampling.random_hamiltonian(rng, M22) for _ in range(12)]
    report = verify_axioms(BracketKind.subordinate(), samples)
    assert report.ok
    assert {c.name for c in report} == {
        "bilinearity", "antisymmetry", "jacobi", "basic_pairs_vanish",
        "field_bracket_correspondence"}


def test_verify_axioms_linear_passes():
    rng = random.Random(45)
    alg = n4()
    man = hom_model(alg, 2)
    samples = [sampling.random_hamiltonian(rng, man) for _ in range(12)]
    assert verify_axioms(BracketKind.linear(alg), samples).ok


def test_verify_axioms_catches_a_bad_tensor():
    bad = LieAlgebra(3, {(1, 2, 3): 1, (2, 1, 3): -1, (1, 3, 1): 1, (3, 1, 1): -1})
    man = hom_model(bad, 1)
    rng = random.Random(46)
    samples = [sampling.random_hamiltonian(rng, man) for _ in range(12)]
    report = verify_axioms(BracketKind.linear(bad), samples)
    assert not report.ok
    failed = [c for c in report if not c.passed]
    assert any(c.name == "jacobi" for c in failed)
    assert all(c.witness for c in failed)


def test_bracket_kind_accessors():
    kind = BracketKind.subordinate()
    assert not kind.is_linear and kind.name == "subordinate"
    lin = BracketKind.linear(heisenberg3())
    assert lin.is_linear and lin.name == "linear"
    with pytest.raises(ValueError):
        BracketKind.linear(None)
