"""Adapted-coordinate model of a polarized k-symplectic manifold.

The model carries coordinates x^{pi} (p = 1..k, i = 1..n) and leaf variables
y^i, the canonical form theta = sum_p sum_i dx^{pi} ^ dy^i (x) v_p, and the
vertical foliation dy = 0.  Everything here is exact:

* AffineExpr: c0(y) + sum_{q,j} c_{qj}(y) x^{qj} with BasicFn coefficients,
  the class of functions closed under all operations we need.
* PolarizedHamiltonian: components H^p = sum_j slopes_j(y) x^{pj} + offsets_p(y)
  with one shared slope vector across components.
* FoliateField: xi^{pi} d/dx^{pi} + eta^i d/dy^i with affine xi and basic eta,
  i.e. projectable to the leaf space.
* VectorValued1Form: k components, each with affine dx- and dy-coefficients.

Public indices (p, q, i, j) are counted from 1 to match the coordinate
labels; storage is 0-based tuples.
"""

from __future__ import annotations

from fractions import Fraction

from .symbolic import BasicFn, parse_basic


class ModelManifold:
    """Dimensions of the model: k components, n leaf variables y1..yn."""

    __slots__ = ("k", "n", "yvars")

    def __init__(self, k, n):
        if k < 1 or n < 1:
            raise ValueError(f"k and n must be positive, got k={k}, n={n}")
        self.k = k
        self.n = n
        self.yvars = tuple(f"y{i}" for i in range(1, n + 1))

    def __eq__(self, other):
        if not isinstance(other, ModelManifold):
            return NotImplemented
        return self.k == other.k and self.n == other.n

    def __hash__(self):
        return hash((self.k, self.n))

    def __repr__(self):
        return f"ModelManifold(k={self.k}, n={self.n})"

    def x_label(self, p, i):
        return f"x_{p}_{i}"

    def zero(self):
        return BasicFn.zero(self.yvars)

    def const(self, value):
        return BasicFn.const(self.yvars, value)

    def y(self, i):
        return BasicFn.variable(self.yvars, i)

    def parse(self, text):
        return parse_basic(text, self.yvars)

    def _check_basic(self, f, what):
        if not isinstance(f, BasicFn) or f.vars != self.yvars:
            raise ValueError(f"{what} must be a BasicFn in {self.yvars}")
        return f


def hom_model(algebra, k):
    """The model carried by hom(g, R^(k+1)) for a dim-n algebra: matrix
    coordinates x^{pi} plus the leaf variables, i.e. ModelManifold(k, dim)."""
    return ModelManifold(k, algebra.dim)


def _zero_grid(man):
    zero = man.zero()
    return tuple(tuple(zero for _ in range(man.n)) for _ in range(man.k))


class AffineExpr:
    """Function affine in the x-coordinates with BasicFn coefficients."""

    __slots__ = ("manifold", "const", "xcoeffs")

    def __init__(self, manifold, const, xcoeffs=None):
        self.manifold = manifold
        self.const = manifold._check_basic(const, "constant part")
        if xcoeffs is None:
            self.xcoeffs = _zero_grid(manifold)
        else:
            xcoeffs = tuple(tuple(row) for row in xcoeffs)
            if len(xcoeffs) != manifold.k or any(len(row) != manifold.n for row in xcoeffs):
                raise ValueError(
                    f"x-coefficients must form a {manifold.k}x{manifold.n} grid")
            for row in xcoeffs:
                for f in row:
                    manifold._check_basic(f, "x-coefficient")
            self.xcoeffs = xcoeffs

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, manifold):
        return cls(manifold, manifold.zero())

    @classmethod
    def basic(cls, manifold, f):
        return cls(manifold, f)

    @classmethod
    def coordinate(cls, manifold, p, i):
        """The coordinate function x^{pi}."""
        _check_index(p, manifold.k, "p")
        _check_index(i, manifold.n, "i")
        grid = [[manifold.zero()] * manifold.n for _ in range(manifold.k)]
        grid[p - 1][i - 1] = manifold.const(1)
        return cls(manifold, manifold.zero(), grid)

    # -- helpers -----------------------------------------------------------

    def _check_same(self, other):
        if self.manifold != other.manifold:
            raise ValueError("manifold mismatch")

    def xcoeff(self, p, i):
        _check_index(p, self.manifold.k, "p")
        _check_index(i, self.manifold.n, "i")
        return self.xcoeffs[p - 1][i - 1]

    def is_basic(self):
        return all(f.is_zero() for row in self.xcoeffs for f in row)

    def is_zero(self):
        return self.const.is_zero() and self.is_basic()

    # -- arithmetic --------------------------------------------------------

    def _map2(self, other, op):
        grid = tuple(tuple(op(a, b) for a, b in zip(ra, rb))
                     for ra, rb in zip(self.xcoeffs, other.xcoeffs))
        return AffineExpr(self.manifold, op(self.const, other.const), grid)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._map2(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._map2(other, lambda a, b: a - b)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other._map2(self, lambda a, b: a - b)

    def __neg__(self):
        grid = tuple(tuple(-f for f in row) for row in self.xcoeffs)
        return AffineExpr(self.manifold, -self.const, grid)

    def _coerce(self, other):
        if isinstance(other, AffineExpr):
            self._check_same(other)
            return other
        if isinstance(other, BasicFn):
            return AffineExpr.basic(self.manifold, other)
        if isinstance(other, (int, Fraction)):
            return AffineExpr.basic(self.manifold, self.manifold.const(other))
        return None

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.manifold.const(other)
        if isinstance(other, BasicFn):
            grid = tuple(tuple(f * other for f in row) for row in self.xcoeffs)
            return AffineExpr(self.manifold, self.const * other, grid)
        if isinstance(other, AffineExpr):
            self._check_same(other)
            if other.is_basic():
                return self * other.const
            if self.is_basic():
                return other * self.const
            raise ValueError(
                "product of two x-dependent expressions leaves the affine class")
        return NotImplemented

    __rmul__ = __mul__

    # -- calculus ----------------------------------------------------------

    def partial_y(self, i):
        """d/dy^i, i counted from 1."""
        _check_index(i, self.manifold.n, "i")
        grid = tuple(tuple(f.partial(i) for f in row) for row in self.xcoeffs)
        return AffineExpr(self.manifold, self.const.partial(i), grid)

    def partial_x(self, p, i):
        """d/dx^{pi}; the result is the basic coefficient c_{pi}."""
        return self.xcoeff(p, i)

    def evaluate(self, x, y):
        y = tuple(y)
        total = self.const.evaluate(y)
        for row, xrow in zip(self.xcoeffs, x):
            for f, xval in zip(row, xrow):
                if f.terms:
                    total = total + f.evaluate(y) * xval
        return total

    # -- equality / printing -------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, AffineExpr):
            return NotImplemented
        return (self.manifold == other.manifold
                and self.const == other.const
                and self.xcoeffs == other.xcoeffs)

    def __hash__(self):
        return hash((self.manifold, self.const, self.xcoeffs))

    def __str__(self):
        parts = []
        for p in range(self.manifold.k):
            for i in range(self.manifold.n):
                f = self.xcoeffs[p][i]
                if f.is_zero():
                    continue
                label = self.manifold.x_label(p + 1, i + 1)
                if f == 1:
                    parts.append(label)
                elif f == -1:
                    parts.append(f"-{label}")
                elif len(f.terms) == 1:
                    parts.append(f"{f}*{label}")
                else:
                    parts.append(f"({f})*{label}")
        if not self.const.is_zero():
            parts.append(str(self.const))
        if not parts:
            return "0"
        out = parts[0]
        for part in parts[1:]:
            if part.startswith("-"):
                out += f" - {part[1:]}"
            else:
                out += f" + {part}"
        return out

    def __repr__(self):
        return f"AffineExpr({str(self)!r})"


def _check_index(value, bound, name):
    if not 1 <= value <= bound:
        raise ValueError(f"index {name}={value} out of range 1..{bound}")


class PolarizedHamiltonian:
    """R^k-valued function H^p = sum_j slopes_j(y) x^{pj} + offsets_p(y).

    The slope vector is shared by every component; that is exactly the class
    of functions whose differential pairs with foliate fields inside the
    affine calculus.
    """

    __slots__ = ("manifold", "slopes", "offsets")

    def __init__(self, manifold, slopes, offsets):
        slopes = tuple(slopes)
        offsets = tuple(offsets)
        if len(slopes) != manifold.n:
            raise ValueError(f"expected {manifold.n} slope functions, got {len(slopes)}")
        if len(offsets) != manifold.k:
            raise ValueError(f"expected {manifold.k} offset functions, got {len(offsets)}")
        for f in slopes:
            manifold._check_basic(f, "slope")
        for f in offsets:
            manifold._check_basic(f, "offset")
        self.manifold = manifold
        self.slopes = slopes
        self.offsets = offsets

    @classmethod
    def zero(cls, manifold):
        zero = manifold.zero()
        return cls(manifold, (zero,) * manifold.n, (zero,) * manifold.k)

    @classmethod
    def basic(cls, manifold, offsets):
        zero = manifold.zero()
        return cls(manifold, (zero,) * manifold.n, offsets)

    def is_basic(self):
        return all(f.is_zero() for f in self.slopes)

    def component(self, p):
        """H^p as an AffineExpr, p counted from 1."""
        _check_index(p, self.manifold.k, "p")
        grid = [[self.manifold.zero()] * self.manifold.n for _ in range(self.manifold.k)]
        grid[p - 1] = list(self.slopes)
        return AffineExpr(self.manifold, self.offsets[p - 1], grid)

    def components(self):
        return tuple(self.component(p) for p in range(1, self.manifold.k + 1))

    def _check_same(self, other):
        if self.manifold != other.manifold:
            raise ValueError("manifold mismatch")

    def __add__(self, other):
        if not isinstance(other, PolarizedHamiltonian):
            return NotImplemented
        self._check_same(other)
        return PolarizedHamiltonian(
            self.manifold,
            tuple(a + b for a, b in zip(self.slopes, other.slopes)),
            tuple(a + b for a, b in zip(self.offsets, other.offsets)))

    def __sub__(self, other):
        if not isinstance(other, PolarizedHamiltonian):
            return NotImplemented
        self._check_same(other)
        return PolarizedHamiltonian(
            self.manifold,
            tuple(a - b for a, b in zip(self.slopes, other.slopes)),
            tuple(a - b for a, b in zip(self.offsets, other.offsets)))

    def __neg__(self):
        return PolarizedHamiltonian(self.manifold,
                                    tuple(-f for f in self.slopes),
                                    tuple(-f for f in self.offsets))

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return PolarizedHamiltonian(self.manifold,
                                    tuple(f * scalar for f in self.slopes),
                                    tuple(f * scalar for f in self.offsets))

    __rmul__ = __mul__

    def add_constants(self, constants):
        """H + c for a constant vector c in R^k."""
        constants = tuple(constants)
        if len(constants) != self.manifold.k:
            raise ValueError(f"expected {self.manifold.k} constants")
        return PolarizedHamiltonian(
            self.manifold, self.slopes,
            tuple(b + self.manifold.const(c) for b, c in zip(self.offsets, constants)))

    def is_zero(self):
        return all(f.is_zero() for f in self.slopes) and \
            all(f.is_zero() for f in self.offsets)

    def evaluate(self, x, y):
        """Component values at a point; x is a k-row by n-column grid."""
        y = tuple(y)
        ay = [f.evaluate(y) for f in self.slopes]
        out = []
        for p in range(self.manifold.k):
            total = self.offsets[p].evaluate(y)
            for j in range(self.manifold.n):
                total = total + ay[j] * x[p][j]
            out.append(total)
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, PolarizedHamiltonian):
            return NotImplemented
        return (self.manifold == other.manifold
                and self.slopes == other.slopes
                and self.offsets == other.offsets)

    def __hash__(self):
        return hash((self.manifold, self.slopes, self.offsets))

    def __str__(self):
        a = ", ".join(str(f) for f in self.slopes)
        b = ", ".join(str(f) for f in self.offsets)
        return f"a = [{a}]; b = [{b}]"

    def __repr__(self):
        return f"PolarizedHamiltonian({str(self)!r})"


def hamiltonian_to_json(h):
    return {
        "k": h.manifold.k,
        "n": h.manifold.n,
        "a": [str(f) for f in h.slopes],
        "b": [str(f) for f in h.offsets],
    }


def hamiltonian_from_json(data, manifold=None, where="hamiltonian"):
    if not isinstance(data, dict):
        raise ValueError(f"{where}: expected an object")
    if manifold is None:
        k, n = data.get("k"), data.get("n")
        if not isinstance(k, int) or not isinstance(n, int):
            raise ValueError(f"{where}: integer \"k\" and \"n\" are required")
        manifold = ModelManifold(k, n)
    else:
        for key, expect in (("k", manifold.k), ("n", manifold.n)):
            if key in data and data[key] != expect:
                raise ValueError(
                    f"{where}.{key}: {data[key]} does not match the manifold ({expect})")
    texts_a = data.get("a")
    texts_b = data.get("b")
    if not isinstance(texts_a, list) or len(texts_a) != manifold.n:
        raise ValueError(f"{where}.a: expected a list of {manifold.n} polynomials")
    if not isinstance(texts_b, list) or len(texts_b) != manifold.k:
        raise ValueError(f"{where}.b: expected a list of {manifold.k} polynomials")

    def parse(text, label):
        if not isinstance(text, str):
            raise ValueError(f"{where}.{label}: expected a string")
        try:
            return manifold.parse(text)
        except ValueError as exc:
            raise ValueError(f"{where}.{label}: {exc}") from None

    slopes = tuple(parse(t, f"a[{i}]") for i, t in enumerate(texts_a))
    offsets = tuple(parse(t, f"b[{p}]") for p, t in enumerate(texts_b))
    return PolarizedHamiltonian(manifold, slopes, offsets)


class FoliateField:
    """Vector field xi^{pi} d/dx^{pi} + eta^i d/dy^i with affine xi and basic
    eta, i.e. one that projects to the leaf space."""

    __slots__ = ("manifold", "x_comp", "y_comp")

    def __init__(self, manifold, x_comp, y_comp):
        x_comp = tuple(tuple(row) for row in x_comp)
        y_comp = tuple(y_comp)
        if len(x_comp) != manifold.k or any(len(row) != manifold.n for row in x_comp):
            raise ValueError(f"x-components must form a {manifold.k}x{manifold.n} grid")
        if len(y_comp) != manifold.n:
            raise ValueError(f"expected {manifold.n} y-components")
        for row in x_comp:
            for f in row:
                if not isinstance(f, AffineExpr) or f.manifold != manifold:
                    raise ValueError("x-components must be AffineExpr on the same manifold")
        for f in y_comp:
            manifold._check_basic(f, "y-component")
        self.manifold = manifold
        self.x_comp = x_comp
        self.y_comp = y_comp

    @classmethod
    def zero(cls, manifold):
        zero = AffineExpr.zero(manifold)
        return cls(manifold,
                   tuple((zero,) * manifold.n for _ in range(manifold.k)),
                   (manifold.zero(),) * manifold.n)

    def xi(self, p, i):
        _check_index(p, self.manifold.k, "p")
        _check_index(i, self.manifold.n, "i")
        return self.x_comp[p - 1][i - 1]

    def eta(self, i):
        _check_index(i, self.manifold.n, "i")
        return self.y_comp[i - 1]

    def apply(self, f):
        """Directional derivative of an AffineExpr (or BasicFn)."""
        man = self.manifold
        if isinstance(f, BasicFn):
            f = AffineExpr.basic(man, f)
        if not isinstance(f, AffineExpr) or f.manifold != man:
            raise ValueError("expected an expression on the same manifold")
        total = AffineExpr.zero(man)
        for p in range(man.k):
            for i in range(man.n):
                coeff = f.xcoeffs[p][i]
                if not coeff.is_zero():
                    total = total + self.x_comp[p][i] * coeff
        for s in range(man.n):
            eta = self.y_comp[s]
            if not eta.is_zero():
                total = total + f.partial_y(s + 1) * eta
        return total

    def apply_hamiltonian(self, h):
        """Componentwise derivative of a PolarizedHamiltonian: k AffineExpr."""
        if h.manifold != self.manifold:
            raise ValueError("manifold mismatch")
        return tuple(self.apply(expr) for expr in h.components())

    def _check_same(self, other):
        if self.manifold != other.manifold:
            raise ValueError("manifold mismatch")

    def __add__(self, other):
        if not isinstance(other, FoliateField):
            return NotImplemented
        self._check_same(other)
        return FoliateField(
            self.manifold,
            tuple(tuple(a + b for a, b in zip(ra, rb))
                  for ra, rb in zip(self.x_comp, other.x_comp)),
            tuple(a + b for a, b in zip(self.y_comp, other.y_comp)))

    def __sub__(self, other):
        if not isinstance(other, FoliateField):
            return NotImplemented
        self._check_same(other)
        return FoliateField(
            self.manifold,
            tuple(tuple(a - b for a, b in zip(ra, rb))
                  for ra, rb in zip(self.x_comp, other.x_comp)),
            tuple(a - b for a, b in zip(self.y_comp, other.y_comp)))

    def __neg__(self):
        return FoliateField(self.manifold,
                            tuple(tuple(-f for f in row) for row in self.x_comp),
                            tuple(-f for f in self.y_comp))

    def is_zero(self):
        return all(f.is_zero() for row in self.x_comp for f in row) and \
            all(f.is_zero() for f in self.y_comp)

    def __eq__(self, other):
        if not isinstance(other, FoliateField):
            return NotImplemented
        return (self.manifold == other.manifold
                and self.x_comp == other.x_comp
                and self.y_comp == other.y_comp)

    def __str__(self):
        lines = []
        for p in range(self.manifold.k):
            for i in range(self.manifold.n):
                lines.append(f"xi[{p + 1}][{i + 1}] = {self.x_comp[p][i]}")
        for i in range(self.manifold.n):
            lines.append(f"eta[{i + 1}] = {self.y_comp[i]}")
        return "\n".join(lines)

    def __repr__(self):
        return f"FoliateField({self.manifold!r})"


class VectorValued1Form:
    """R^k-valued 1-form: component p has affine dx^{qi}- and dy^i-coefficients."""

    __slots__ = ("manifold", "dx", "dy")

    def __init__(self, manifold, dx, dy):
        dx = tuple(tuple(tuple(row) for row in comp) for comp in dx)
        dy = tuple(tuple(comp) for comp in dy)
        if len(dx) != manifold.k or len(dy) != manifold.k:
            raise ValueError(f"expected {manifold.k} components")
        for comp in dx:
            if len(comp) != manifold.k or any(len(row) != manifold.n for row in comp):
                raise ValueError(
                    f"dx-coefficients of each component must form a {manifold.k}x{manifold.n} grid")
            for row in comp:
                for f in row:
                    if not isinstance(f, AffineExpr) or f.manifold != manifold:
                        raise ValueError("dx-coefficients must be AffineExpr on the same manifold")
        for comp in dy:
            if len(comp) != manifold.n:
                raise ValueError(f"expected {manifold.n} dy-coefficients per component")
            for f in comp:
                if not isinstance(f, AffineExpr) or f.manifold != manifold:
                    raise ValueError("dy-coefficients must be AffineExpr on the same manifold")
        self.manifold = manifold
        self.dx = dx
        self.dy = dy

    def dx_coeff(self, p, q, i):
        _check_index(p, self.manifold.k, "p")
        _check_index(q, self.manifold.k, "q")
        _check_index(i, self.manifold.n, "i")
        return self.dx[p - 1][q - 1][i - 1]

    def dy_coeff(self, p, i):
        _check_index(p, self.manifold.k, "p")
        _check_index(i, self.manifold.n, "i")
        return self.dy[p - 1][i - 1]

    def __neg__(self):
        return VectorValued1Form(
            self.manifold,
            tuple(tuple(tuple(-f for f in row) for row in comp) for comp in self.dx),
            tuple(tuple(-f for f in comp) for comp in self.dy))

    def __eq__(self, other):
        if not isinstance(other, VectorValued1Form):
            return NotImplemented
        return (self.manifold == other.manifold
                and self.dx == other.dx and self.dy == other.dy)

    def __str__(self):
        lines = []
        for p in range(self.manifold.k):
            parts = []
            for q in range(self.manifold.k):
                for i in range(self.manifold.n):
                    f = self.dx[p][q][i]
                    if not f.is_zero():
                        parts.append(f"({f})*dx_{q + 1}_{i + 1}")
            for i in range(self.manifold.n):
                f = self.dy[p][i]
                if not f.is_zero():
                    parts.append(f"({f})*dy{i + 1}")
            lines.append(f"[{p + 1}] " + (" + ".join(parts) if parts else "0"))
        return "\n".join(lines)

    def __repr__(self):
        return f"VectorValued1Form({self.manifold!r})"


# -- core operations ----------------------------------------------------------

def differential(h):
    """dH as a VectorValued1Form.

    Component p: sum_i slopes_i dx^{pi}
               + sum_i (sum_j x^{pj} d slopes_j/dy^i + d offsets_p/dy^i) dy^i.
    """
    man = h.manifold
    zero = AffineExpr.zero(man)
    dx = []
    dy = []
    for p in range(man.k):
        comp = [[zero] * man.n for _ in range(man.k)]
        comp[p] = [AffineExpr.basic(man, f) for f in h.slopes]
        dx.append(tuple(tuple(row) for row in comp))
        dy.append(tuple(h.component(p + 1).partial_y(i + 1) for i in range(man.n)))
    return VectorValued1Form(man, dx, dy)


def gradient_restriction(h, p, q):
    """The x-gradient of H^p along the q-th block: delta_pq times the slopes."""
    _check_index(p, h.manifold.k, "p")
    _check_index(q, h.manifold.k, "q")
    if p == q:
        return h.slopes
    zero = h.manifold.zero()
    return (zero,) * h.manifold.n


def hamiltonian_field(h):
    """The unique foliate field X with i(X)theta = -dH:

    xi^{ps} = -(sum_j x^{pj} d slopes_j/dy^s + d offsets_p/dy^s), eta^j = slopes_j.
    """
    man = h.manifold
    x_comp = tuple(
        tuple(-h.component(p).partial_y(s) for s in range(1, man.n + 1))
        for p in range(1, man.k + 1))
    return FoliateField(man, x_comp, h.slopes)


def contract_theta(field):
    """i(X)theta; component p is sum_i (xi^{pi} dy^i - eta^i dx^{pi})."""
    man = field.manifold
    zero = AffineExpr.zero(man)
    dx = []
    dy = []
    for p in range(man.k):
        comp = [[zero] * man.n for _ in range(man.k)]
        comp[p] = [-AffineExpr.basic(man, field.y_comp[i]) for i in range(man.n)]
        dx.append(tuple(tuple(row) for row in comp))
        dy.append(tuple(field.x_comp[p]))
    return VectorValued1Form(man, dx, dy)


def pair(form, field):
    """<form, field>: k AffineExpr components."""
    man = form.manifold
    if field.manifold != man:
        raise ValueError("manifold mismatch")
    out = []
    for p in range(man.k):
        total = AffineExpr.zero(man)
        for q in range(man.k):
            for i in range(man.n):
                coeff = form.dx[p][q][i]
                if not coeff.is_zero():
                    total = total + coeff * field.x_comp[q][i]
        for i in range(man.n):
            coeff = form.dy[p][i]
            if not coeff.is_zero():
                eta = field.y_comp[i]
                if not eta.is_zero():
                    total = total + coeff * eta
        out.append(total)
    return tuple(out)


def lie_bracket_fields(xfield, yfield):
    """Coordinate Lie bracket of two foliate fields (again foliate)."""
    man = xfield.manifold
    if yfield.manifold != man:
        raise ValueError("manifold mismatch")
    x_comp = tuple(
        tuple(xfield.apply(yfield.x_comp[p][i]) - yfield.apply(xfield.x_comp[p][i])
              for i in range(man.n))
        for p in range(man.k))
    y_comp = []
    for j in range(man.n):
        total = man.zero()
        for s in range(man.n):
            total = total + xfield.y_comp[s] * yfield.y_comp[j].partial(s + 1) \
                - yfield.y_comp[s] * xfield.y_comp[j].partial(s + 1)
        y_comp.append(total)
    return FoliateField(man, x_comp, tuple(y_comp))


class PolarizationCheck:
    """Result of is_polarized_hamiltonian: ok + decomposition or a reason."""

    __slots__ = ("ok", "hamiltonian", "reason")

    def __init__(self, ok, hamiltonian=None, reason=None):
        self.ok = ok
        self.hamiltonian = hamiltonian
        self.reason = reason

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return f"PolarizationCheck(ok=True, {self.hamiltonian!r})"
        return f"PolarizationCheck(ok=False, {self.reason!r})"


def is_polarized_hamiltonian(components):
    """Decide whether k affine components form a polarized Hamiltonian,
    i.e. component p uses only the x^{p*} block and all blocks share one
    slope vector.  Returns the decomposition when they do."""
    components = tuple(components)
    if not components:
        return PolarizationCheck(False, reason="no components")
    man = components[0].manifold
    if len(components) != man.k:
        return PolarizationCheck(
            False, reason=f"expected {man.k} components, got {len(components)}")
    for p, expr in enumerate(components, start=1):
        if expr.manifold != man:
            return PolarizationCheck(False, reason="manifold mismatch")
        for q in range(1, man.k + 1):
            if q == p:
                continue
            for i in range(1, man.n + 1):
                if not expr.xcoeff(q, i).is_zero():
                    return PolarizationCheck(
                        False,
                        reason=f"component {p} depends on x_{q}_{i}")
    slopes = tuple(components[0].xcoeff(1, i) for i in range(1, man.n + 1))
    for p in range(2, man.k + 1):
        for i in range(1, man.n + 1):
            if components[p - 1].xcoeff(p, i) != slopes[i - 1]:
                return PolarizationCheck(
                    False,
                    reason=f"x-coefficient {i} of component {p} differs from component 1")
    offsets = tuple(expr.const for expr in components)
    return PolarizationCheck(True, PolarizedHamiltonian(man, slopes, offsets))


# -- leaf-preserving transitions ------------------------------------------------

def _as_matrix(rows, n, what):
    rows = tuple(tuple(Fraction(v) for v in row) for row in rows)
    if len(rows) != n or any(len(row) != n for row in rows):
        raise ValueError(f"{what} must be a {n}x{n} rational matrix")
    return rows


def invert_matrix(rows):
    """Exact inverse by Gauss-Jordan elimination; ValueError when singular."""
    n = len(rows)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise ValueError("singular transition matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [v - factor * w for v, w in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


class _Transition:
    """Precomputed data for one leaf-preserving coordinate change.

    The new leaf variables are ybar = A y + c and the new x-block is
    xbar^{pi} = sum_j x^{pj} (A^-1)_{ji} + phi^{pi}(y).
    """

    def __init__(self, manifold, matrix, offset, phi):
        n, k = manifold.n, manifold.k
        self.manifold = manifold
        self.matrix = _as_matrix(matrix, n, "transition matrix")
        offset = tuple(Fraction(v) for v in offset)
        if len(offset) != n:
            raise ValueError(f"transition offset must have {n} entries")
        self.offset = offset
        self.inverse = invert_matrix(self.matrix)
        if phi is None:
            zero = manifold.zero()
            phi = tuple((zero,) * n for _ in range(k))
        else:
            phi = tuple(tuple(row) for row in phi)
            if len(phi) != k or any(len(row) != n for row in phi):
                raise ValueError(f"phi must be a {k}x{n} grid of BasicFn")
            for row in phi:
                for f in row:
                    manifold._check_basic(f, "phi entry")
        self.phi = phi
        # the old leaf variables written in the new chart: y = A^-1 (ybar - c)
        shift = [sum((self.inverse[j][m] * offset[m] for m in range(n)), Fraction(0))
                 for j in range(n)]
        self.old_y = tuple(
            sum((self.inverse[j][m] * manifold.y(m + 1) for m in range(n)),
                manifold.const(-shift[j]))
            for j in range(n))

    def compose(self, f):
        """A basic function of the old leaf variables, in the new chart."""
        return f.substitute(self.old_y)

    def push_affine(self, expr):
        """An affine expression in old coordinates, rewritten in the new chart
        via x^{qj} = sum_m (xbar^{qm} - phi^{qm}) A_{mj}."""
        man = self.manifold
        n, k = man.n, man.k
        const = self.compose(expr.const)
        grid = [[man.zero() for _ in range(n)] for _ in range(k)]
        for q in range(k):
            for j in range(n):
                coeff = expr.xcoeffs[q][j]
                if coeff.is_zero():
                    continue
                coeff = self.compose(coeff)
                for m in range(n):
                    amj = self.matrix[m][j]
                    if amj:
                        grid[q][m] = grid[q][m] + coeff * amj
                        const = const - coeff * amj * self.compose(self.phi[q][m])
        return AffineExpr(man, const, grid)

    def push_hamiltonian(self, h):
        man = self.manifold
        n, k = man.n, man.k
        old_slopes = [self.compose(f) for f in h.slopes]
        slopes = tuple(
            sum((self.matrix[i][j] * old_slopes[j] for j in range(n)), man.zero())
            for i in range(n))
        offsets = []
        for p in range(k):
            total = self.compose(h.offsets[p])
            for i in range(n):
                for j in range(n):
                    aij = self.matrix[i][j]
                    if aij:
                        total = total - aij * old_slopes[j] * self.compose(self.phi[p][i])
            offsets.append(total)
        return PolarizedHamiltonian(man, slopes, tuple(offsets))

    def push_field(self, field):
        man = self.manifold
        n, k = man.n, man.k
        y_comp = tuple(
            sum((self.matrix[i][j] * self.compose(field.y_comp[j]) for j in range(n)),
                man.zero())
            for i in range(n))
        x_comp = []
        for p in range(k):
            row = []
            for i in range(n):
                # X(xbar^{pi}) = sum_j xi^{pj} (A^-1)_{ji} + sum_s eta^s dphi^{pi}/dy^s
                total = AffineExpr.zero(man)
                for j in range(n):
                    bji = self.inverse[j][i]
                    if bji:
                        total = total + field.x_comp[p][j] * bji
                for s in range(n):
                    eta = field.y_comp[s]
                    dphi = self.phi[p][i].partial(s + 1)
                    if not eta.is_zero() and not dphi.is_zero():
                        total = total + AffineExpr.basic(man, eta * dphi)
                row.append(self.push_affine(total))
            x_comp.append(tuple(row))
        return FoliateField(man, tuple(x_comp), y_comp)


def apply_transition(obj, matrix, offset, phi=None):
    """Rewrite a PolarizedHamiltonian or FoliateField in the chart obtained
    from the leaf map ybar = A y + c with x-fiber shift phi (k x n BasicFn).

    The rewrite is a formal coordinate change and accepts any phi, but the
    new chart carries the canonical pairing form only when (d phi^p) A is
    symmetric for every p (gradient-form shifts, the class produced by
    sampling.random_transition).  Outside that class the Hamiltonian field
    and brackets are not preserved."""
    transition = _Transition(obj.manifold, matrix, offset, phi)
    if isinstance(obj, PolarizedHamiltonian):
        return transition.push_hamiltonian(obj)
    if isinstance(obj, FoliateField):
        return transition.push_field(obj)
    raise ValueError(f"cannot transition a {type(obj).__name__}")


def inverse_transition(manifold, matrix, offset, phi=None):
    """The (A', c', phi') whose application undoes (A, c, phi)."""
    t = _Transition(manifold, matrix, offset, phi)
    n, k = manifold.n, manifold.k
    new_matrix = t.inverse
    new_offset = tuple(
        -sum((t.inverse[i][m] * t.offset[m] for m in range(n)), Fraction(0))
        for i in range(n))
    new_phi = tuple(
        tuple(
            -sum((t.matrix[i][j] * t.compose(t.phi[p][i]) for i in range(n)),
                 manifold.zero())
            for j in range(n))
        for p in range(k))
    return new_matrix, new_offset, new_phi
