"""Exact polynomial functions of the leaf variables.

Every coefficient that appears in a polarized Hamiltonian, field, or bracket
is a BasicFn: a polynomial in the declared y-variables over Fraction
coefficients.  Arithmetic is exact; floats enter only when a caller evaluates
at a float point.

Canonical form: a sparse dict of exponent tuples with nonzero reduced
coefficients.  Two BasicFn are equal iff their variable tuples and canonical
forms are equal.  Printing lists terms in graded-lex order (total degree
first, then lexicographic on the exponent tuple), highest first, with
explicit ``*`` and ``^``, so parse(str(f)) == f.
"""

from __future__ import annotations

from fractions import Fraction

from . import _kernel


class ParseError(ValueError):
    """Syntax or name error in polynomial text; .position is the 0-based offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an int or Fraction coefficient, got {type(value).__name__}")


class BasicFn:
    """Polynomial in the leaf variables with exact rational coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms=None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        clean = {}
        nvars = len(variables)
        for exp, coef in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != nvars:
                raise ValueError(
                    f"exponent tuple {exp} does not match {nvars} variables")
            if any(e < 0 or not isinstance(e, int) for e in exp):
                raise ValueError(f"exponents must be nonnegative integers: {exp}")
            coef = _as_fraction(coef)
            if coef:
                clean[exp] = coef
        self.vars = variables
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables):
        return cls(variables, {})

    @classmethod
    def const(cls, variables, value):
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): _as_fraction(value)})

    @classmethod
    def variable(cls, variables, i):
        """The i-th variable as a polynomial, i counted from 1."""
        variables = tuple(variables)
        n = len(variables)
        if not 1 <= i <= n:
            raise ValueError(f"variable index {i} out of range 1..{n}")
        exp = tuple(1 if j == i - 1 else 0 for j in range(n))
        return cls(variables, {exp: Fraction(1)})

    # -- helpers -----------------------------------------------------------

    def _check_same_vars(self, other):
        if self.vars != other.vars:
            raise ValueError(
                f"variable mismatch: {self.vars} vs {other.vars}")

    def _wrap(self, terms):
        f = object.__new__(BasicFn)
        f.vars = self.vars
        f.terms = terms
        return f

    def _coerce(self, other):
        if isinstance(other, BasicFn):
            self._check_same_vars(other)
            return other
        if isinstance(other, (int, Fraction)):
            return BasicFn.const(self.vars, other)
        return None

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._wrap(_kernel.add_terms(self.terms, other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._wrap(_kernel.sub_terms(self.terms, other.terms))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._wrap(_kernel.sub_terms(other.terms, self.terms))

    def __neg__(self):
        return self._wrap(_kernel.neg_terms(self.terms))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._wrap(_kernel.scale_terms(self.terms, _as_fraction(other)))
        if isinstance(other, BasicFn):
            self._check_same_vars(other)
            return self._wrap(_kernel.mul_terms(self.terms, other.terms))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {exponent!r}")
        result = BasicFn.const(self.vars, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def partial(self, i):
        """Partial derivative with respect to the i-th variable, i from 1."""
        n = len(self.vars)
        if not 1 <= i <= n:
            raise ValueError(f"variable index {i} out of range 1..{n}")
        return self._wrap(_kernel.partial_terms(self.terms, i - 1))

    def evaluate(self, point):
        """Evaluate at a point (one coordinate per variable).  Exact on
        Fraction/int coordinates, float on float coordinates."""
        point = tuple(point)
        if len(point) != len(self.vars):
            raise ValueError(
                f"point has {len(point)} coordinates, expected {len(self.vars)}")
        return _kernel.eval_terms(self.terms, point)

    __call__ = evaluate

    def substitute(self, replacements):
        """Substitute a BasicFn for each variable (used by leaf transitions)."""
        replacements = tuple(replacements)
        if len(replacements) != len(self.vars):
            raise ValueError(
                f"{len(replacements)} replacements for {len(self.vars)} variables")
        if not replacements:
            return self
        target = replacements[0].vars
        for r in replacements:
            if r.vars != target:
                raise ValueError("replacement polynomials use mixed variable sets")
        total = BasicFn.zero(target)
        for exp, coef in self.terms.items():
            term = BasicFn.const(target, coef)
            for r, e in zip(replacements, exp):
                if e:
                    term = term * r ** e
            total = total + term
        return total

    # -- queries -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(exp) for exp in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(exp) for exp in self.terms)

    def float_evaluator(self):
        """Compile for repeated float evaluation (the flow integrator path)."""
        return _kernel.FloatPoly(self.terms, len(self.vars))

    # -- equality / printing ------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, BasicFn):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def sorted_terms(self):
        """Terms in the canonical print order (graded-lex, highest first)."""
        return _kernel.ordered_terms(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, coef in self.sorted_terms():
            factors = []
            for name, e in zip(self.vars, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(coef)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(body if coef > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coef > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"BasicFn({str(self)!r})"


# -- parsing ----------------------------------------------------------------

# Grammar (explicit operators only):
#   expr   := term (('+'|'-') term)*
#   term   := factor ('*' factor)*
#   factor := ('+'|'-')* atom ('^' INT)?
#   atom   := RATIONAL | NAME | '(' expr ')'
# RATIONAL is digits or digits/digits; NAME must be a declared variable.

_MINUS = {"-", "−"}


def _tokenize(text):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i < n and text[i] == "/":
                j = i + 1
                if j < n and text[j].isdigit():
                    i = j
                    while i < n and text[i].isdigit():
                        i += 1
                else:
                    raise ParseError("expected digits after '/'", i + 1)
            tokens.append(("num", text[start:i], start))
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(("name", text[start:i], start))
            continue
        if ch in _MINUS:
            tokens.append(("-", "-", i))
            i += 1
            continue
        if ch in "+*^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens, variables):
        self.tokens = tokens
        self.pos = 0
        self.vars = tuple(variables)

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expr(self):
        value = self.term()
        while True:
            kind, _, _ = self.peek()
            if kind == "+":
                self.take()
                value = value + self.term()
            elif kind == "-":
                self.take()
                value = value - self.term()
            else:
                return value

    def term(self):
        value = self.factor()
        while self.peek()[0] == "*":
            self.take()
            value = value * self.factor()
        return value

    def factor(self):
        sign = 1
        while self.peek()[0] in ("+", "-"):
            kind, _, _ = self.take()
            if kind == "-":
                sign = -sign
        value = self.atom()
        if self.peek()[0] == "^":
            self.take()
            kind, text, pos = self.take()
            if kind == "-":
                raise ParseError("negative exponent", pos)
            if kind != "num" or "/" in text:
                raise ParseError("expected a nonnegative integer exponent", pos)
            value = value ** int(text)
        return value if sign > 0 else -value

    def atom(self):
        kind, text, pos = self.take()
        if kind == "num":
            if "/" in text:
                num, den = text.split("/")
                if int(den) == 0:
                    raise ParseError("zero denominator", pos)
                return BasicFn.const(self.vars, Fraction(int(num), int(den)))
            return BasicFn.const(self.vars, int(text))
        if kind == "name":
            if text not in self.vars:
                raise ParseError(f"unknown variable {text!r}", pos)
            return BasicFn.variable(self.vars, self.vars.index(text) + 1)
        if kind == "(":
            value = self.expr()
            kind, _, pos = self.take()
            if kind != ")":
                raise ParseError("expected ')'", pos)
            return value
        raise ParseError(f"unexpected {text!r}" if text else "unexpected end of input", pos)


def parse_basic(text, variables):
    """Parse polynomial text over the declared variables into a BasicFn."""
    parser = _Parser(_tokenize(text), variables)
    value = parser.expr()
    kind, text_, pos = parser.peek()
    if kind != "end":
        raise ParseError(f"unexpected {text_!r}", pos)
    return value
