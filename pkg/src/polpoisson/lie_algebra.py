"""Finite-dimensional Lie algebras presented by structure constants.

A LieAlgebra stores the sparse tensor C[i][j][l] (all indices 1-based):
the coefficient of e_l in [e_i, e_j].  Construction does not reject invalid
tensors; validate() reports every violated antisymmetry or Jacobi component,
which is what the negative-control checks rely on.

Algebras can also be entered through Maurer-Cartan data: coefficients of
dw^l = sum_{i<j} d^l_ij w^i ^ w^j on the dual basis.  The bracket recovered
from dw^l(e_i, e_j) = -w^l([e_i, e_j]) is C[i][j][l] = -d^l_ij.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Violation:
    kind: str       # "antisymmetry" (indices i, j, l) or "jacobi" (indices i, j, k, l)
    indices: tuple
    value: Fraction

    def __str__(self):
        where = ",".join(str(i) for i in self.indices)
        return f"{self.kind} violation at ({where}): {self.value}"


class LieAlgebra:
    __slots__ = ("dim", "structure")

    def __init__(self, dim, structure=None):
        if dim < 1:
            raise ValueError(f"dimension must be positive, got {dim}")
        clean = {}
        for (i, j, l), value in (structure or {}).items():
            for idx in (i, j, l):
                if not 1 <= idx <= dim:
                    raise ValueError(f"index {idx} out of range 1..{dim}")
            value = Fraction(value)
            if value:
                clean[(i, j, l)] = value
        self.dim = dim
        self.structure = clean

    def constant(self, i, j, l):
        return self.structure.get((i, j, l), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.structure == other.structure

    def __repr__(self):
        entries = ", ".join(f"C[{i}][{j}][{l}]={v}"
                            for (i, j, l), v in sorted(self.structure.items()))
        return f"LieAlgebra(dim={self.dim}, {entries or 'abelian'})"

    def bracket_vectors(self, u, v):
        """Bracket of two coordinate vectors, returned as a Fraction tuple."""
        u = tuple(Fraction(x) for x in u)
        v = tuple(Fraction(x) for x in v)
        if len(u) != self.dim or len(v) != self.dim:
            raise ValueError(
                f"vectors must have {self.dim} components, got {len(u)} and {len(v)}")
        out = [Fraction(0)] * self.dim
        for (i, j, l), c in self.structure.items():
            out[l - 1] += c * u[i - 1] * v[j - 1]
        return tuple(out)

    def validate(self):
        """Every violated antisymmetry or Jacobi component, with index tuples."""
        violations = []
        rng = range(1, self.dim + 1)
        for i in rng:
            for j in rng:
                if j < i:
                    continue
                for l in rng:
                    s = self.constant(i, j, l) + self.constant(j, i, l)
                    if s:
                        violations.append(Violation("antisymmetry", (i, j, l), s))
        for i in rng:
            for j in rng:
                for k in rng:
                    for l in rng:
                        s = sum(self.constant(i, j, m) * self.constant(m, k, l)
                                + self.constant(j, k, m) * self.constant(m, i, l)
                                + self.constant(k, i, m) * self.constant(m, j, l)
                                for m in rng)
                        if s:
                            violations.append(Violation("jacobi", (i, j, k, l), s))
        return violations

    def is_valid(self):
        return not self.validate()


@dataclass(frozen=True)
class MaurerCartan:
    """Coefficients d^l_ij (i < j) of the dual-basis differentials."""

    dim: int
    terms: tuple   # ((l, i, j, Fraction), ...) sorted, i < j, nonzero

    @classmethod
    def build(cls, dim, entries):
        clean = {}
        for (l, i, j), value in entries.items():
            for idx in (l, i, j):
                if not 1 <= idx <= dim:
                    raise ValueError(f"index {idx} out of range 1..{dim}")
            if not i < j:
                raise ValueError(f"wedge indices must satisfy i < j, got ({i},{j})")
            value = Fraction(value)
            if value:
                if (l, i, j) in clean:
                    raise ValueError(f"duplicate entry for (l,i,j)=({l},{i},{j})")
                clean[(l, i, j)] = value
        return cls(dim, tuple(sorted((l, i, j, v) for (l, i, j), v in clean.items())))


def from_maurer_cartan(mc):
    """Algebra whose dual differentials are the given data.

    Raises ValueError when the data does not square to zero, i.e. the induced
    bracket fails the Jacobi identity.
    """
    structure = {}
    for l, i, j, value in mc.terms:
        structure[(i, j, l)] = structure.get((i, j, l), Fraction(0)) - value
        structure[(j, i, l)] = structure.get((j, i, l), Fraction(0)) + value
    algebra = LieAlgebra(mc.dim, structure)
    violations = [v for v in algebra.validate() if v.kind == "jacobi"]
    if violations:
        raise ValueError(
            f"differential does not square to zero: {violations[0]}")
    return algebra


def to_maurer_cartan(algebra):
    entries = {}
    for (i, j, l), value in algebra.structure.items():
        if i < j:
            entries[(l, i, j)] = -value
    return MaurerCartan.build(algebra.dim, entries)


# -- catalog ------------------------------------------------------------------

def abelian(n):
    return LieAlgebra(n, {})


def heisenberg3():
    """[e1,e2] = e3, e3 central."""
    return LieAlgebra(3, {(1, 2, 3): 1, (2, 1, 3): -1})


def h3_plus_a():
    """Heisenberg plus a line, entered through dw1 = w2 ^ w3."""
    return from_maurer_cartan(MaurerCartan.build(4, {(1, 2, 3): 1}))


def n4():
    """Filiform dimension 4: dw3 = w1 ^ w2, dw4 = w1 ^ w3."""
    return from_maurer_cartan(MaurerCartan.build(4, {(3, 1, 2): 1, (4, 1, 3): 1}))


_ABELIAN = re.compile(r"abelian\((\d+)\)\Z")

_CATALOG = {
    "heisenberg3": heisenberg3,
    "h3_plus_a": h3_plus_a,
    "n4": n4,
}


def builtin(name):
    m = _ABELIAN.match(name.strip())
    if m:
        return abelian(int(m.group(1)))
    try:
        return _CATALOG[name.strip()]()
    except KeyError:
        known = ", ".join(["abelian(n)"] + sorted(_CATALOG))
        raise ValueError(f"unknown algebra {name!r} (known: {known})") from None


def catalog_names():
    return ("abelian(n)", "heisenberg3", "h3_plus_a", "n4")


# -- JSON ---------------------------------------------------------------------

def _fraction_from_json(value, where):
    try:
        if isinstance(value, (str, int)):
            return Fraction(value)
    except (ValueError, ZeroDivisionError):
        pass
    raise ValueError(f"{where}: expected a rational like \"3/2\", got {value!r}")


def _index_from_json(data, key, where):
    value = data.get(key)
    if not isinstance(value, int):
        raise ValueError(f"{where}: missing or non-integer index {key!r}")
    return value


def to_json(algebra):
    """{"dim": n, "brackets": [{"i": .., "j": .., "coeffs": {"l": "p/q"}}]}"""
    pairs = {}
    for (i, j, l), value in sorted(algebra.structure.items()):
        if i < j:
            pairs.setdefault((i, j), {})[str(l)] = str(value)
    return {
        "dim": algebra.dim,
        "brackets": [{"i": i, "j": j, "coeffs": coeffs}
                     for (i, j), coeffs in sorted(pairs.items())],
    }


def from_json(data):
    if not isinstance(data, dict) or not isinstance(data.get("dim"), int):
        raise ValueError("algebra: expected an object with an integer \"dim\"")
    dim = data["dim"]
    entries = data.get("brackets", [])
    if not isinstance(entries, list):
        raise ValueError("algebra.brackets: expected a list")
    structure = {}
    seen = set()
    for pos, entry in enumerate(entries):
        where = f"algebra.brackets[{pos}]"
        if not isinstance(entry, dict):
            raise ValueError(f"{where}: expected an object")
        i = _index_from_json(entry, "i", where)
        j = _index_from_json(entry, "j", where)
        if i == j:
            raise ValueError(f"{where}: bracket indices must differ")
        if frozenset((i, j)) in seen:
            raise ValueError(f"{where}: duplicate bracket for ({i},{j})")
        seen.add(frozenset((i, j)))
        coeffs = entry.get("coeffs")
        if not isinstance(coeffs, dict):
            raise ValueError(f"{where}: missing \"coeffs\" object")
        for lkey, raw in coeffs.items():
            try:
                l = int(lkey)
            except (TypeError, ValueError):
                raise ValueError(f"{where}.coeffs: bad index {lkey!r}") from None
            value = _fraction_from_json(raw, f"{where}.coeffs[{lkey!r}]")
            structure[(i, j, l)] = value
            structure[(j, i, l)] = -value
    try:
        return LieAlgebra(dim, structure)
    except ValueError as exc:
        raise ValueError(f"algebra: {exc}") from None


def mc_to_json(mc):
    """{"dim": n, "d": [{"l": .., "i": .., "j": .., "coeff": "p/q"}]}"""
    return {
        "dim": mc.dim,
        "d": [{"l": l, "i": i, "j": j, "coeff": str(v)} for l, i, j, v in mc.terms],
    }


def mc_from_json(data):
    if not isinstance(data, dict) or not isinstance(data.get("dim"), int):
        raise ValueError("maurer-cartan: expected an object with an integer \"dim\"")
    entries = data.get("d", [])
    if not isinstance(entries, list):
        raise ValueError("maurer-cartan.d: expected a list")
    terms = {}
    for pos, entry in enumerate(entries):
        where = f"maurer-cartan.d[{pos}]"
        if not isinstance(entry, dict):
            raise ValueError(f"{where}: expected an object")
        l = _index_from_json(entry, "l", where)
        i = _index_from_json(entry, "i", where)
        j = _index_from_json(entry, "j", where)
        value = _fraction_from_json(entry.get("coeff"), f"{where}.coeff")
        if (l, i, j) in terms:
            raise ValueError(f"{where}: duplicate entry for (l,i,j)=({l},{i},{j})")
        terms[(l, i, j)] = value
    try:
        return MaurerCartan.build(data["dim"], terms)
    except ValueError as exc:
        raise ValueError(f"maurer-cartan: {exc}") from None


def load(source):
    """Accept a catalog name, bracket JSON, or Maurer-Cartan JSON."""
    if isinstance(source, str):
        return builtin(source)
    if isinstance(source, dict):
        if "d" in source:
            return from_maurer_cartan(mc_from_json(source))
        return from_json(source)
    raise ValueError(f"cannot load an algebra from {type(source).__name__}")
