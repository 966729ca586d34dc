"""Pure-Python kernel for sparse exact polynomial arithmetic.

A polynomial is a dict mapping exponent tuples (one entry per variable, all
tuples the same length) to nonzero Fraction coefficients.  Every function
returns a new dict in that normal form; inputs are never mutated.
"""

from __future__ import annotations

from fractions import Fraction

BACKEND_NAME = "pure"


def add_terms(a, b):
    out = dict(a)
    for exp, c in b.items():
        acc = out.get(exp)
        if acc is None:
            out[exp] = c
        else:
            acc = acc + c
            if acc:
                out[exp] = acc
            else:
                del out[exp]
    return out


def sub_terms(a, b):
    out = dict(a)
    for exp, c in b.items():
        acc = out.get(exp)
        if acc is None:
            out[exp] = -c
        else:
            acc = acc - c
            if acc:
                out[exp] = acc
            else:
                del out[exp]
    return out


def neg_terms(a):
    return {exp: -c for exp, c in a.items()}


def scale_terms(a, c):
    if not c:
        return {}
    return {exp: coef * c for exp, coef in a.items()}


def mul_terms(a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            exp = tuple(x + y for x, y in zip(ea, eb))
            c = ca * cb
            acc = out.get(exp)
            if acc is None:
                out[exp] = c
            else:
                acc = acc + c
                if acc:
                    out[exp] = acc
                else:
                    del out[exp]
    return out


def partial_terms(a, idx):
    """Partial derivative with respect to the variable at position idx (0-based)."""
    out = {}
    for exp, c in a.items():
        e = exp[idx]
        if e:
            out[exp[:idx] + (e - 1,) + exp[idx + 1:]] = c * e
    return out


def eval_terms(a, point):
    """Evaluate at a point.  Exact for Fraction/int coordinates; works for any
    coordinate type supporting * and ** (floats, polynomials, ...)."""
    total = Fraction(0)
    for exp, c in a.items():
        term = c
        for v, e in zip(point, exp):
            if e:
                term = term * v ** e
        total = total + term
    return total


def ordered_terms(a):
    """Term items in graded-lex order, highest first.

    This order is part of the kernel contract: FloatPoly accumulates along
    it, so both backends must sort identically to produce identical floats.
    """
    return sorted(a.items(), key=lambda item: (sum(item[0]), item[0]), reverse=True)


class FloatPoly:
    """Polynomial compiled for repeated float evaluation.

    Terms are frozen in graded-lex order so both kernels accumulate in the
    same sequence and produce bit-identical floats.
    """

    __slots__ = ("coeffs", "exps", "nvars")

    def __init__(self, terms, nvars):
        items = ordered_terms(terms)
        self.coeffs = [float(c) for _, c in items]
        self.exps = [exp for exp, _ in items]
        self.nvars = nvars

    def __call__(self, point):
        total = 0.0
        for c, exp in zip(self.coeffs, self.exps):
            term = c
            for i in range(self.nvars):
                e = exp[i]
                v = point[i]
                while e > 0:
                    term *= v
                    e -= 1
            total += term
        return total
