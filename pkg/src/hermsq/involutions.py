"""Matrix algebras over Q(X,Y) and over quaternion algebras, with involutions.

Supported involutions: transpose, adjoint of a diagonal quadratic form
(sigma(x) = D x^t D^-1), quaternion conjugation, Int(u) composed with
conjugation, adjoint of a diagonal hermitian form over a quaternion algebra,
the standard symplectic involution, and Int(S) composed with transpose for a
nonsingular skew-symmetric S.
"""

from dataclasses import dataclass

from .errors import DivisionByZeroError, ShapeError
from .scalars import MonomialOrdering, ORDERINGS, RationalFunction, as_scalar
from .qforms import DiagonalForm, GramForm, diagonalize


class QuaternionAlgebra:
    """(a, b)_F with basis 1, i, j, k; i^2 = a, j^2 = b, ij = k = -ji."""

    def __init__(self, a, b):
        self.a = as_scalar(a)
        self.b = as_scalar(b)
        if self.a.is_zero() or self.b.is_zero():
            raise ShapeError("quaternion structure constants must be nonzero")

    def __eq__(self, other):
        return (isinstance(other, QuaternionAlgebra)
                and self.a == other.a and self.b == other.b)

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"QuaternionAlgebra({self.a}, {self.b})"

    def elem(self, x0, x1=0, x2=0, x3=0):
        return QuatElem(self, (as_scalar(x0), as_scalar(x1),
                               as_scalar(x2), as_scalar(x3)))

    def zero(self):
        return self.elem(0)

    def one(self):
        return self.elem(1)

    def i(self):
        return self.elem(0, 1)

    def j(self):
        return self.elem(0, 0, 1)

    def k(self):
        return self.elem(0, 0, 0, 1)

    def basis(self):
        return [self.one(), self.i(), self.j(), self.k()]


class QuatElem:
    """Element x0 + x1 i + x2 j + x3 k of a quaternion algebra."""

    def __init__(self, algebra, coords):
        self.algebra = algebra
        self.coords = tuple(coords)

    def _coerce(self, other):
        if isinstance(other, QuatElem):
            if other.algebra != self.algebra:
                raise ShapeError("mixing elements of different quaternion algebras")
            return other
        return self.algebra.elem(as_scalar(other))

    def __add__(self, other):
        other = self._coerce(other)
        return QuatElem(self.algebra,
                        tuple(p + q for p, q in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return QuatElem(self.algebra, tuple(-p for p in self.coords))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        a, b = self.algebra.a, self.algebra.b
        x0, x1, x2, x3 = self.coords
        y0, y1, y2, y3 = other.coords
        return QuatElem(self.algebra, (
            x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
            x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
            x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        ))

    def __rmul__(self, other):
        return self._coerce(other) * self

    def __eq__(self, other):
        if not isinstance(other, QuatElem):
            other = self._coerce(other)
        return self.algebra == other.algebra and self.coords == other.coords

    def __hash__(self):
        return hash((self.algebra, self.coords))

    def __repr__(self):
        names = ("", "i", "j", "k")
        parts = [f"({c}){n}" if n else f"({c})"
                 for c, n in zip(self.coords, names) if not c.is_zero()]
        return " + ".join(parts) if parts else "0"

    def is_zero(self):
        return all(c.is_zero() for c in self.coords)

    def is_scalar(self):
        return all(c.is_zero() for c in self.coords[1:])

    def is_pure(self):
        return self.coords[0].is_zero()

    def conj(self):
        x0, x1, x2, x3 = self.coords
        return QuatElem(self.algebra, (x0, -x1, -x2, -x3))

    def trd(self):
        return as_scalar(2) * self.coords[0]

    def nrd(self):
        a, b = self.algebra.a, self.algebra.b
        x0, x1, x2, x3 = self.coords
        return x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3

    def inverse(self):
        n = self.nrd()
        if n.is_zero():
            raise DivisionByZeroError("quaternion with zero reduced norm")
        ninv = n.inverse()
        return QuatElem(self.algebra, tuple(c * ninv for c in self.conj().coords))


def reduced_norm_quat(x, algebra=None):
    """Nrd(x) = x * conj(x) as a scalar."""
    if algebra is not None and x.algebra != algebra:
        raise ShapeError("element does not belong to the given algebra")
    return x.nrd()


class InvolutionSpec:
    """Description of an involution; build via the classmethod constructors."""

    def __init__(self, kind, q=None, u=None, skew=None):
        self.kind = kind
        self.q = q
        self.u = u
        self.skew = skew

    @classmethod
    def transpose(cls):
        return cls("transpose")

    @classmethod
    def adjoint_diag(cls, q):
        for c in q.entries:
            if c.is_zero():
                raise ShapeError("adjoint form must be nonsingular")
        return cls("adjoint_diag", q=q)

    @classmethod
    def quat_conjugation(cls):
        return cls("quat_conjugation")

    @classmethod
    def int_u_conj(cls, u):
        if not u.is_pure() or u.is_zero():
            raise ShapeError("Int(u) twist requires a nonzero pure quaternion")
        return cls("int_u_conj", u=u)

    @classmethod
    def adjoint_hermitian(cls, h):
        for c in h.entries:
            if c.is_zero():
                raise ShapeError("hermitian form must be nonsingular")
        return cls("adjoint_hermitian", q=h)

    @classmethod
    def symplectic_standard(cls):
        return cls("symplectic_standard")

    @classmethod
    def int_skew(cls, s):
        return cls("int_skew", skew=s)

    def __repr__(self):
        return f"InvolutionSpec({self.kind!r})"


def _mat_mul(x, y, zero):
    rows, inner, cols = len(x), len(y), len(y[0])
    out = [[zero for _ in range(cols)] for _ in range(rows)]
    for i in range(rows):
        for t in range(inner):
            a = x[i][t]
            if a.is_zero():
                continue
            for j in range(cols):
                b = y[t][j]
                if not b.is_zero():
                    out[i][j] = out[i][j] + a * b
    return out


def _mat_add(x, y):
    return [[p + q for p, q in zip(rx, ry)] for rx, ry in zip(x, y)]


def _mat_neg(x):
    return [[-p for p in row] for row in x]


def _mat_transpose(x):
    return [list(row) for row in zip(*x)]


def _mat_eq(x, y):
    return all(p == q for rx, ry in zip(x, y) for p, q in zip(rx, ry))


class AlgebraWithInvolution:
    """(A, sigma): M_n over F = Q(X,Y) or over a quaternion algebra.

    Elements are plain n x n lists of lists with RationalFunction entries
    (base "F") or QuatElem entries (quaternion base).
    """

    def __init__(self, base, n, sigma):
        self.base = base
        self.n = n
        self.sigma = sigma
        quat = isinstance(base, QuaternionAlgebra)
        kind = sigma.kind
        if kind in ("quat_conjugation", "int_u_conj"):
            if not quat or n != 1:
                raise ShapeError(f"{kind} requires a 1x1 quaternion algebra")
            if kind == "int_u_conj" and sigma.u.algebra != base:
                raise ShapeError("twisting element lies in a different algebra")
        elif kind == "adjoint_hermitian":
            if not quat:
                raise ShapeError("adjoint_hermitian requires a quaternion base")
            if len(sigma.q.entries) != n:
                raise ShapeError("hermitian form dimension must match n")
        elif kind == "adjoint_diag":
            if quat:
                raise ShapeError("use adjoint_hermitian over a quaternion base")
            if len(sigma.q.entries) != n:
                raise ShapeError("adjoint form dimension must match n")
        elif kind in ("transpose", "symplectic_standard", "int_skew"):
            if quat:
                raise ShapeError(f"{kind} is only supported over base F")
            if kind == "symplectic_standard" and n % 2 != 0:
                raise ShapeError("symplectic involution needs even n")
            if kind == "int_skew":
                s = sigma.skew
                if len(s) != n or any(len(r) != n for r in s):
                    raise ShapeError("skew matrix size must match n")
                if not _mat_eq(_mat_transpose(s), _mat_neg(s)):
                    raise ShapeError("Int(S) twist requires S skew-symmetric")
                self._skew_inv = _invert_matrix(s)
        else:
            raise ShapeError(f"unknown involution kind {kind!r}")

    # -- element plumbing ------------------------------------------------

    def _is_quat(self):
        return isinstance(self.base, QuaternionAlgebra)

    def zero_entry(self):
        return self.base.zero() if self._is_quat() else as_scalar(0)

    def coerce_entry(self, v):
        if self._is_quat():
            return v if isinstance(v, QuatElem) else self.base.elem(as_scalar(v))
        return as_scalar(v)

    def elem(self, rows):
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise ShapeError(f"expected a {self.n}x{self.n} matrix")
        return [[self.coerce_entry(v) for v in row] for row in rows]

    def zero(self):
        return [[self.zero_entry() for _ in range(self.n)] for _ in range(self.n)]

    def scalar(self, c):
        out = self.zero()
        for i in range(self.n):
            out[i][i] = self.coerce_entry(c)
        return out

    def identity(self):
        return self.scalar(1)

    def unit(self, i, j, value=1):
        out = self.zero()
        out[i][j] = self.coerce_entry(value)
        return out

    def mul(self, x, y):
        return _mat_mul(x, y, self.zero_entry())

    def add(self, x, y):
        return _mat_add(x, y)

    def neg(self, x):
        return _mat_neg(x)

    def sub(self, x, y):
        return _mat_add(x, _mat_neg(y))

    def equal(self, x, y):
        return _mat_eq(x, y)

    # -- the involution --------------------------------------------------

    def involution(self, x):
        if len(x) != self.n or any(len(r) != self.n for r in x):
            raise ShapeError("element size does not match the algebra")
        kind = self.sigma.kind
        if kind == "transpose":
            return _mat_transpose(x)
        if kind == "quat_conjugation":
            return [[x[0][0].conj()]]
        if kind == "int_u_conj":
            u = self.sigma.u
            return [[u * x[0][0].conj() * u.inverse()]]
        if kind in ("adjoint_diag", "adjoint_hermitian"):
            d = self.sigma.q.entries
            if kind == "adjoint_hermitian":
                xt = _mat_transpose([[v.conj() for v in row] for row in x])
            else:
                xt = _mat_transpose(x)
            return [[self.coerce_entry(d[i] * d[j].inverse()) * xt[i][j]
                     for j in range(self.n)] for i in range(self.n)]
        if kind == "symplectic_standard":
            m = self.n // 2
            tl = [[x[m + j][m + i] for j in range(m)] for i in range(m)]
            tr = [[-x[j][m + i] for j in range(m)] for i in range(m)]
            bl = [[-x[m + j][i] for j in range(m)] for i in range(m)]
            br = [[x[j][i] for j in range(m)] for i in range(m)]
            return ([tl[i] + tr[i] for i in range(m)]
                    + [bl[i] + br[i] for i in range(m)])
        # int_skew: S x^t S^-1
        return self.mul(self.mul(self.sigma.skew, _mat_transpose(x)),
                        self._skew_inv)

    def trd(self, x):
        total = as_scalar(0)
        for i in range(self.n):
            v = x[i][i]
            total = total + (v.trd() if self._is_quat() else v)
        return total

    def hermitian_square(self, x):
        return self.mul(self.involution(x), x)

    def is_symmetric(self, x):
        return self.equal(self.involution(x), x)

    def basis(self):
        """Standard F-basis: matrix units, times 1,i,j,k for quaternion base."""
        out = []
        units = self.base.basis() if self._is_quat() else [as_scalar(1)]
        for i in range(self.n):
            for j in range(self.n):
                for w in units:
                    out.append(self.unit(i, j, w))
        return out

    def trace_form(self):
        """Gram matrix of (x, y) -> (Trd(sigma(x)y) + Trd(sigma(y)x)) / 2."""
        basis = self.basis()
        sigmas = [self.involution(e) for e in basis]
        dim = len(basis)
        half = as_scalar(1) / as_scalar(2)
        gram = [[None] * dim for _ in range(dim)]
        for r in range(dim):
            for s in range(r + 1):
                v = half * (self.trd(self.mul(sigmas[r], basis[s]))
                            + self.trd(self.mul(sigmas[s], basis[r])))
                gram[r][s] = v
                gram[s][r] = v
        return GramForm(gram)


def _invert_matrix(m):
    """Exact inverse over the field of RationalFunction entries."""
    from .errors import SingularMatrixError
    n = len(m)
    a = [[as_scalar(v) for v in row] for row in m]
    inv = [[as_scalar(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        pinv = a[col][col].inverse()
        a[col] = [v * pinv for v in a[col]]
        inv[col] = [v * pinv for v in inv[col]]
        for r in range(n):
            if r != col and not a[r][col].is_zero():
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
                inv[r] = [v - f * w for v, w in zip(inv[r], inv[col])]
    return inv


def apply_involution(algebra, x):
    return algebra.involution(x)


def reduced_trace(algebra, x):
    return algebra.trd(x)


def hermitian_square(algebra, x):
    return algebra.hermitian_square(x)


def is_symmetric(algebra, x):
    return algebra.is_symmetric(x)


def trace_form(algebra):
    return algebra.trace_form()


def symbolic_elements(algebra, count):
    """Matrices of fresh commuting indeterminates, one list per element.

    Scalar base: entry (i,j) of element t is z<i>_<j>_<t>.  Quaternion base:
    the four coordinates of entry (i,j) of element t are z<i>_<j>_<4t+c>.
    Indices i, j, t start at 1.
    """
    out = []
    for t in range(1, count + 1):
        rows = []
        for i in range(1, algebra.n + 1):
            row = []
            for j in range(1, algebra.n + 1):
                if isinstance(algebra.base, QuaternionAlgebra):
                    coords = [RationalFunction.variable(f"z{i}_{j}_{4 * t + c}")
                              for c in range(4)]
                    row.append(QuatElem(algebra.base, coords))
                else:
                    row.append(RationalFunction.variable(f"z{i}_{j}_{t}"))
            rows.append(row)
        out.append(rows)
    return out


def entry_33_constraint(algebra, elements):
    """The (3,3) entry of sum sigma(a_i) a_i, as a scalar in F.

    Only defined for 3x3 algebras with a diagonal adjoint involution, where
    that entry is automatically central.
    """
    if algebra.n != 3 or algebra.sigma.kind not in ("adjoint_diag",
                                                    "adjoint_hermitian"):
        raise ShapeError("expected a 3x3 algebra with a diagonal adjoint involution")
    total = algebra.zero()
    for a in elements:
        total = algebra.add(total, algebra.hermitian_square(a))
    v = total[2][2]
    if isinstance(v, QuatElem):
        if not v.is_scalar():
            raise ShapeError("(3,3) entry is not central")
        return v.coords[0]
    return v


def sigma_orderings(algebra):
    """Monomial orderings at which the involution trace form is definite."""
    diag = diagonalize(algebra.trace_form()).form
    dim = len(diag.entries)
    return [p for p in ORDERINGS if diag.signature(p) == dim]
