"""Vectorial Poisson brackets on polarized Hamiltonians.

Two brackets are provided, both closed on the PolarizedHamiltonian class:

* the subordinate bracket of the canonical structure,
      {H,K}^p = sum_i (dH^p/dy^i dK^p/dx^{pi} - dH^p/dx^{pi} dK^p/dy^i),
  whose slope/offset form is
      slopes''_j = sum_i (slopesK_i d slopesH_j/dy^i - slopesH_i d slopesK_j/dy^i),
      offsets''_p = sum_i (slopesK_i d offsetsH_p/dy^i - slopesH_i d offsetsK_p/dy^i);

* the linear bracket over a structure-constant tensor C,
      slopes''_l = sum_{i,j} C[i][j][l] slopesH_i slopesK_j,  offsets'' = 0.

Sign conventions, fixed once here and tested exactly:
{H,K} = -theta(X_H, X_K) = X_K(H) = <dH, X_K> = -X_H(K), and consequently the
field map reverses order: [X_H, X_K] = X_{{K,H}}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import (AffineExpr, FoliateField, PolarizedHamiltonian,
                       hamiltonian_field)
from .lie_algebra import LieAlgebra


def _check_pair(h, k):
    if h.manifold != k.manifold:
        raise ValueError("manifold mismatch")
    return h.manifold


def subordinate_bracket(h, k):
    """{H,K} for the canonical polarized structure; again polarized."""
    man = _check_pair(h, k)
    n = man.n
    slopes = []
    for j in range(n):
        total = man.zero()
        for i in range(n):
            total = total + k.slopes[i] * h.slopes[j].partial(i + 1) \
                - h.slopes[i] * k.slopes[j].partial(i + 1)
        slopes.append(total)
    offsets = []
    for p in range(man.k):
        total = man.zero()
        for i in range(n):
            total = total + k.slopes[i] * h.offsets[p].partial(i + 1) \
                - h.slopes[i] * k.offsets[p].partial(i + 1)
        offsets.append(total)
    return PolarizedHamiltonian(man, tuple(slopes), tuple(offsets))


def _check_algebra(algebra, man):
    if not isinstance(algebra, LieAlgebra):
        raise ValueError("a LieAlgebra is required for the linear bracket")
    if algebra.dim != man.n:
        raise ValueError(
            f"algebra dimension {algebra.dim} does not match n={man.n}")


def linear_bracket(algebra, h, k):
    """{H,K} of the linear structure carried by hom(g, R^(k+1))."""
    man = _check_pair(h, k)
    _check_algebra(algebra, man)
    slopes = [man.zero() for _ in range(man.n)]
    for (i, j, l), c in algebra.structure.items():
        product = h.slopes[i - 1] * k.slopes[j - 1]
        if product.is_zero():
            continue
        slopes[l - 1] = slopes[l - 1] + product * c
    zero = man.zero()
    return PolarizedHamiltonian(man, tuple(slopes), (zero,) * man.k)


def linear_hamiltonian_field(algebra, h):
    """A foliate field X with X(K) = {K,H} for the linear bracket:
    xi^{pi} = sum_{j,l} C[i][j][l] slopes_j(y) x^{pl}, eta = 0."""
    man = h.manifold
    _check_algebra(algebra, man)
    grids = [[[man.zero() for _ in range(man.n)] for _ in range(man.n)]
             for _ in range(man.k)]
    # grids[p][i][l] accumulates the coefficient of x^{pl} inside xi^{pi}
    for (i, j, l), c in algebra.structure.items():
        for p in range(man.k):
            grids[p][i - 1][l - 1] = grids[p][i - 1][l - 1] + h.slopes[j - 1] * c
    x_comp = []
    for p in range(man.k):
        row = []
        for i in range(man.n):
            grid = [[man.zero()] * man.n for _ in range(man.k)]
            grid[p] = grids[p][i]
            row.append(AffineExpr(man, man.zero(), grid))
        x_comp.append(tuple(row))
    return FoliateField(man, tuple(x_comp), (man.zero(),) * man.n)


@dataclass(frozen=True)
class BracketKind:
    """Which bracket to run: subordinate (algebra None) or linear."""

    algebra: LieAlgebra | None = None

    @classmethod
    def subordinate(cls):
        return cls(None)

    @classmethod
    def linear(cls, algebra):
        if not isinstance(algebra, LieAlgebra):
            raise ValueError("a LieAlgebra is required for the linear kind")
        return cls(algebra)

    @property
    def is_linear(self):
        return self.algebra is not None

    @property
    def name(self):
        return "linear" if self.is_linear else "subordinate"

    def bracket(self, h, k):
        if self.is_linear:
            return linear_bracket(self.algebra, h, k)
        return subordinate_bracket(h, k)

    def field(self, h):
        if self.is_linear:
            return linear_hamiltonian_field(self.algebra, h)
        return hamiltonian_field(h)


def jacobiator(kind, f, g, h):
    """{{F,G},H} + {{G,H},F} + {{H,F},G}; identically zero for a bracket
    satisfying the Jacobi identity."""
    return kind.bracket(kind.bracket(f, g), h) \
        + kind.bracket(kind.bracket(g, h), f) \
        + kind.bracket(kind.bracket(h, f), g)


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    passed: bool
    witness: str | None = None

    def __str__(self):
        status = "pass" if self.passed else "FAIL"
        extra = f" ({self.witness})" if self.witness else ""
        return f"{status} {self.name}{extra}"


class AxiomReport:
    def __init__(self, checks):
        self.checks = tuple(checks)

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def __iter__(self):
        return iter(self.checks)

    def __str__(self):
        return "\n".join(str(c) for c in self.checks)


def _first_failure(pairs):
    """pairs: iterable of (label, bool); returns the first failing label."""
    for label, good in pairs:
        if not good:
            return label
    return None


def verify_axioms(kind, samples, scalars=(Fraction(2), Fraction(-3, 2))):
    """Check the bracket axioms over a list of sample Hamiltonians.

    Runs bilinearity, antisymmetry, the Jacobi identity, vanishing on basic
    pairs, and consistency of the associated foliate fields (X_H(K) = {K,H}).
    Returns an AxiomReport; failures carry a witness description instead of
    raising.
    """
    samples = list(samples)
    if len(samples) < 3:
        raise ValueError("need at least three sample Hamiltonians")
    man = samples[0].manifold
    zero = PolarizedHamiltonian.zero(man)
    checks = []

    triples = [(samples[i], samples[(i + 1) % len(samples)],
                samples[(i + 2) % len(samples)])
               for i in range(len(samples))]

    def check(name, pairs):
        witness = _first_failure(pairs)
        checks.append(AxiomCheck(name, witness is None, witness))

    check("bilinearity", (
        (f"samples {i},{i + 1},{i + 2}, scalar {s}",
         kind.bracket(f * s + g, h) == kind.bracket(f, h) * s + kind.bracket(g, h)
         and kind.bracket(h, f * s + g) == kind.bracket(h, f) * s + kind.bracket(h, g))
        for i, (f, g, h) in enumerate(triples) for s in scalars))

    check("antisymmetry", (
        (f"samples {i},{i + 1}",
         kind.bracket(f, g) == -kind.bracket(g, f))
        for i, (f, g, _) in enumerate(triples)))

    check("jacobi", (
        (f"samples {i},{i + 1},{i + 2}",
         jacobiator(kind, f, g, h).is_zero())
        for i, (f, g, h) in enumerate(triples)))

    check("basic_pairs_vanish", (
        (f"samples {i},{i + 1}",
         kind.bracket(PolarizedHamiltonian.basic(man, f.offsets),
                      PolarizedHamiltonian.basic(man, g.offsets)).is_zero())
        for i, (f, g, _) in enumerate(triples)))

    check("field_bracket_correspondence", (
        (f"samples {i},{i + 1}",
         kind.field(g).apply_hamiltonian(f) == kind.bracket(f, g).components())
        for i, (f, g, _) in enumerate(triples)))

    return AxiomReport(checks)
