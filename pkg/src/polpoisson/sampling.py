"""Seeded random generators for Hamiltonians, fields, and transitions.

Everything draws from a caller-supplied random.Random so that a fixed seed
reproduces the exact same objects; the CLI verify command and the test suite
both rely on that.
"""

from __future__ import annotations

from fractions import Fraction

from .geometry import AffineExpr, FoliateField, PolarizedHamiltonian, invert_matrix
from .symbolic import BasicFn


def random_fraction(rng, max_num=4, max_den=3, allow_zero=True):
    num = rng.randint(-max_num, max_num)
    if not allow_zero and num == 0:
        num = rng.choice((-1, 1)) * rng.randint(1, max_num)
    return Fraction(num, rng.randint(1, max_den))


def random_basicfn(rng, variables, max_degree=2, max_terms=3):
    variables = tuple(variables)
    n = len(variables)
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        degree = rng.randint(0, max_degree)
        exp = [0] * n
        for _ in range(degree):
            exp[rng.randrange(n)] += 1
        coeff = random_fraction(rng, allow_zero=False)
        key = tuple(exp)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return BasicFn(variables, terms)


def random_hamiltonian(rng, manifold, max_degree=2, max_terms=3):
    slopes = tuple(random_basicfn(rng, manifold.yvars, max_degree, max_terms)
                   for _ in range(manifold.n))
    offsets = tuple(random_basicfn(rng, manifold.yvars, max_degree, max_terms)
                    for _ in range(manifold.k))
    return PolarizedHamiltonian(manifold, slopes, offsets)


def random_basic_hamiltonian(rng, manifold, max_degree=2, max_terms=3):
    offsets = tuple(random_basicfn(rng, manifold.yvars, max_degree, max_terms)
                    for _ in range(manifold.k))
    return PolarizedHamiltonian.basic(manifold, offsets)


def random_affine(rng, manifold, max_degree=2, max_terms=2):
    grid = tuple(tuple(random_basicfn(rng, manifold.yvars, max_degree, max_terms)
                       for _ in range(manifold.n))
                 for _ in range(manifold.k))
    return AffineExpr(manifold,
                      random_basicfn(rng, manifold.yvars, max_degree, max_terms),
                      grid)


def random_foliate_field(rng, manifold, max_degree=2, max_terms=2):
    x_comp = tuple(tuple(random_affine(rng, manifold, max_degree, max_terms)
                         for _ in range(manifold.n))
                   for _ in range(manifold.k))
    y_comp = tuple(random_basicfn(rng, manifold.yvars, max_degree, max_terms)
                   for _ in range(manifold.n))
    return FoliateField(manifold, x_comp, y_comp)


def random_constants(rng, count, allow_zero=True):
    return tuple(random_fraction(rng, allow_zero=allow_zero) for _ in range(count))


def random_point(rng, count, max_num=3, max_den=2):
    return tuple(random_fraction(rng, max_num, max_den) for _ in range(count))


def random_transition(rng, manifold, max_degree=3):
    """An exact adapted-chart transition: invertible leaf map (A, c) plus a
    fiber shift phi that keeps the canonical pairing form.

    A shift preserves the form exactly when (d phi^p) A is a symmetric matrix
    for every p, which forces phi^{pi} = sum_l (d psi^p/dy^l) (A^-1)_{li} up
    to constants; we draw a random potential psi^p per sheet and differentiate.
    """
    n = manifold.n
    while True:
        matrix = tuple(tuple(random_fraction(rng, 2, 2) for _ in range(n))
                       for _ in range(n))
        try:
            inverse = invert_matrix(matrix)
        except ValueError:
            continue
        break
    offset = random_constants(rng, n)
    phi = []
    for _ in range(manifold.k):
        psi = random_basicfn(rng, manifold.yvars, max_degree, 3)
        grads = [psi.partial(l + 1) for l in range(n)]
        phi.append(tuple(
            sum((grads[l] * inverse[l][i] for l in range(n)),
                BasicFn.const(manifold.yvars, random_fraction(rng)))
            for i in range(n)))
    return matrix, offset, tuple(phi)
