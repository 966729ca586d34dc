# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernel.  Same function surface and same results as pure.py;
coefficients stay exact Fractions, the speed comes from typed loops and a
flat-array float evaluator."""

from fractions import Fraction

from cpython cimport array
import array

BACKEND_NAME = "compiled"

_ZERO = Fraction(0)


cdef inline tuple _add_exp(tuple ea, tuple eb):
    cdef Py_ssize_t i, n = len(ea)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = ea[i] + eb[i]
    return tuple(out)


def add_terms(dict a, dict b):
    cdef dict out = dict(a)
    cdef tuple exp
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


def sub_terms(dict a, dict b):
    cdef dict out = dict(a)
    cdef tuple exp
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


def neg_terms(dict a):
    cdef dict out = {}
    cdef tuple exp
    for exp, c in a.items():
        out[exp] = -c
    return out


def scale_terms(dict a, c):
    cdef dict out = {}
    cdef tuple exp
    if not c:
        return out
    for exp, coef in a.items():
        out[exp] = coef * c
    return out


def mul_terms(dict a, dict b):
    cdef dict out = {}
    cdef tuple ea, eb, exp
    if len(a) > len(b):
        a, b = b, a
    for ea, ca in a.items():
        for eb, cb in b.items():
            exp = _add_exp(ea, eb)
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


def partial_terms(dict a, Py_ssize_t idx):
    """Partial derivative with respect to the variable at position idx (0-based)."""
    cdef dict out = {}
    cdef tuple exp
    cdef long e
    for exp, c in a.items():
        e = exp[idx]
        if e:
            out[exp[:idx] + (e - 1,) + exp[idx + 1:]] = c * e
    return out


def eval_terms(dict a, point):
    """Evaluate at a point.  Exact for Fraction/int coordinates; works for any
    coordinate type supporting * and ** (floats, polynomials, ...)."""
    cdef tuple exp
    cdef Py_ssize_t i, n
    cdef long e
    total = _ZERO
    for exp, c in a.items():
        term = c
        n = len(exp)
        for i in range(n):
            e = exp[i]
            if e:
                term = term * point[i] ** e
        total = total + term
    return total


def ordered_terms(dict a):
    """Term items in graded-lex order, highest first.

    This order is part of the kernel contract: FloatPoly accumulates along
    it, so both backends must sort identically to produce identical floats.
    """
    return sorted(a.items(), key=lambda item: (sum(item[0]), item[0]), reverse=True)


cdef class FloatPoly:
    """Polynomial compiled for repeated float evaluation.

    Terms are frozen in graded-lex order so both kernels accumulate in the
    same sequence and produce bit-identical floats.
    """

    cdef array.array _coeffs
    cdef array.array _exps
    cdef array.array _point
    cdef Py_ssize_t nterms
    cdef readonly Py_ssize_t nvars

    def __init__(self, dict terms, Py_ssize_t nvars):
        items = ordered_terms(terms)
        cdef list flat = []
        for exp, _ in items:
            flat.extend(exp)
        self._coeffs = array.array("d", [float(c) for _, c in items])
        self._exps = array.array("l", flat)
        self._point = array.array("d", [0.0] * nvars)
        self.nterms = len(items)
        self.nvars = nvars

    def __call__(self, point):
        cdef Py_ssize_t i, j
        cdef double total = 0.0
        cdef double term, v
        cdef long e
        cdef double* cs = self._coeffs.data.as_doubles
        cdef long* es = self._exps.data.as_longs
        cdef double* pt = self._point.data.as_doubles
        for i in range(self.nvars):
            pt[i] = point[i]
        for j in range(self.nterms):
            term = cs[j]
            for i in range(self.nvars):
                e = es[j * self.nvars + i]
                v = pt[i]
                while e > 0:
                    term *= v
                    e -= 1
            total += term
        return total
