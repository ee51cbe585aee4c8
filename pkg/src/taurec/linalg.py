"""Exact dense linear algebra over the rationals or a prime field.

This is the numeric substrate for the whole package: matrices are dense,
dimensions are desk-scale (tens, not thousands), and every operation is
exact — there are no tolerances anywhere downstream.

Row reduction and matrix products run through an arithmetic kernel with two
interchangeable implementations: a compiled extension (``taurec._kernels``,
built from Cython) and a pure-Python twin.  Whichever is importable wins;
``KERNEL_BACKEND`` records the choice.
"""

from __future__ import annotations

from fractions import Fraction

from taurec.errors import DimensionMismatchError, FieldMismatchError

try:  # pragma: no cover - which branch runs depends on the build
    from taurec import _kernels as _impl
except ImportError:  # pragma: no cover
    from taurec import _kernels_py as _impl

KERNEL_BACKEND: str = _impl.BACKEND


class Scalar:
    """An exact field element: a rational, or an element of F_p.

    Rationals are kept in lowest terms with a positive denominator;
    prime-field elements are reduced representatives in ``[0, p)`` with
    denominator 1.  ``p == 0`` tags the rational field.
    """

    __slots__ = ("num", "den", "p")

    def __init__(self, value=0, p: int = 0):
        if isinstance(value, Scalar):
            if value.p != p:
                raise FieldMismatchError(f"cannot retag scalar from p={value.p} to p={p}")
            num, den = value.num, value.den
        else:
            frac = Fraction(value)
            num, den = frac.numerator, frac.denominator
        if p:
            if den % p == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            num = (num * pow(den, -1, p)) % p
            den = 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def is_zero(self) -> bool:
        return self.num == 0

    def _check(self, other: "Scalar"):
        if self.p != other.p:
            raise FieldMismatchError(f"mixed field tags p={self.p} and p={other.p}")

    def __add__(self, other):
        other = other if isinstance(other, Scalar) else Scalar(other, self.p)
        self._check(other)
        if self.p:
            return Scalar((self.num + other.num) % self.p, self.p)
        return Scalar(self.as_fraction() + other.as_fraction())

    def __sub__(self, other):
        other = other if isinstance(other, Scalar) else Scalar(other, self.p)
        self._check(other)
        if self.p:
            return Scalar((self.num - other.num) % self.p, self.p)
        return Scalar(self.as_fraction() - other.as_fraction())

    def __mul__(self, other):
        other = other if isinstance(other, Scalar) else Scalar(other, self.p)
        self._check(other)
        if self.p:
            return Scalar((self.num * other.num) % self.p, self.p)
        return Scalar(self.as_fraction() * other.as_fraction())

    def __truediv__(self, other):
        other = other if isinstance(other, Scalar) else Scalar(other, self.p)
        self._check(other)
        if other.num == 0:
            raise ZeroDivisionError("division by zero scalar")
        if self.p:
            return Scalar((self.num * pow(other.num, -1, self.p)) % self.p, self.p)
        return Scalar(self.as_fraction() / other.as_fraction())

    def __neg__(self):
        if self.p:
            return Scalar((-self.num) % self.p, self.p)
        return Scalar(Fraction(-self.num, self.den))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return (self.num, self.den, self.p) == (other.num, other.den, other.p)
        if self.p == 0 and isinstance(other, (int, Fraction)):
            return self.as_fraction() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den, self.p))

    def __repr__(self):
        if self.p:
            return f"Scalar({self.num} mod {self.p})"
        if self.den == 1:
            return f"Scalar({self.num})"
        return f"Scalar({self.num}/{self.den})"


def _coerce_entry(value, p: int):
    """Normalize an entry to a (num, den) pair for field tag p."""
    if isinstance(value, Scalar):
        if value.p != p:
            raise FieldMismatchError(f"entry has field tag p={value.p}, matrix has p={p}")
        return value.num, value.den
    if isinstance(value, int):
        return (value % p, 1) if p else (value, 1)
    frac = Fraction(value)
    if p:
        if frac.denominator % p == 0:
            raise ZeroDivisionError(f"denominator divisible by {p}")
        return (frac.numerator * pow(frac.denominator, -1, p)) % p, 1
    return frac.numerator, frac.denominator


class Matrix:
    """A dense exact matrix; immutable after construction.

    Entries are pair-encoded internally (see the kernel modules); the public
    accessors hand out :class:`fractions.Fraction` values (rational field) or
    reduced ints (prime field).
    """

    __slots__ = ("rows", "cols", "p", "_num", "_den", "_rref")

    def __init__(self, rows: int, cols: int, num, den, p: int = 0, _copy: bool = True):
        if rows < 0 or cols < 0 or len(num) != rows * cols or len(den) != rows * cols:
            raise DimensionMismatchError(
                f"entry count {len(num)} does not match shape {rows}x{cols}"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "_num", list(num) if _copy else num)
        object.__setattr__(self, "_den", list(den) if _copy else den)
        object.__setattr__(self, "_rref", None)

    def __setattr__(self, name, value):
        if name == "_rref" and getattr(self, name, None) is None:
            object.__setattr__(self, name, value)
            return
        raise AttributeError("Matrix is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rows(cls, data, p: int = 0) -> "Matrix":
        data = [list(row) for row in data]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        num, den = [], []
        for row in data:
            if len(row) != cols:
                raise DimensionMismatchError("ragged rows")
            for value in row:
                n, d = _coerce_entry(value, p)
                num.append(n)
                den.append(d)
        return cls(rows, cols, num, den, p, _copy=False)

    @classmethod
    def from_cols(cls, columns, p: int = 0) -> "Matrix":
        columns = [list(col) for col in columns]
        if not columns:
            return cls(0, 0, [], [], p)
        return cls.from_rows(list(zip(*columns)), p)

    @classmethod
    def zero(cls, rows: int, cols: int, p: int = 0) -> "Matrix":
        return cls(rows, cols, [0] * (rows * cols), [1] * (rows * cols), p, _copy=False)

    @classmethod
    def identity(cls, n: int, p: int = 0) -> "Matrix":
        num = [0] * (n * n)
        for i in range(n):
            num[i * n + i] = 1
        return cls(n, n, num, [1] * (n * n), p, _copy=False)

    @classmethod
    def column(cls, entries, p: int = 0) -> "Matrix":
        return cls.from_rows([[e] for e in entries], p)

    @classmethod
    def block(cls, grid, p: int = 0) -> "Matrix":
        """Assemble from a 2-D grid of matrices with matching block shapes."""
        parts = [hstack(*row) for row in grid]
        return vstack(*parts) if parts else cls.zero(0, 0, p)

    # -- accessors ----------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, key):
        i, j = key
        idx = i * self.cols + j
        if self.p:
            return self._num[idx]
        return Fraction(self._num[idx], self._den[idx])

    def scalar_at(self, i: int, j: int) -> Scalar:
        idx = i * self.cols + j
        if self.p:
            return Scalar(self._num[idx], self.p)
        return Scalar(Fraction(self._num[idx], self._den[idx]))

    def row_list(self, i: int):
        return [self[i, j] for j in range(self.cols)]

    def col_list(self, j: int):
        return [self[i, j] for i in range(self.rows)]

    def to_rows(self):
        return [self.row_list(i) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return all(n == 0 for n in self._num)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols, self.p) != (other.rows, other.cols, other.p):
            return False
        if self.p:
            return self._num == other._num
        return self._num == other._num and self._den == other._den

    __hash__ = None

    def __repr__(self):
        tag = f", p={self.p}" if self.p else ""
        body = "; ".join(
            " ".join(str(self[i, j]) for j in range(self.cols)) for i in range(self.rows)
        )
        return f"Matrix({self.rows}x{self.cols}{tag}: [{body}])"

    # -- arithmetic ---------------------------------------------------

    def _check_field(self, other: "Matrix"):
        if self.p != other.p:
            raise FieldMismatchError(f"mixed field tags p={self.p} and p={other.p}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"add {self.shape} vs {other.shape}")
        if self.p:
            num = [(a + b) % self.p for a, b in zip(self._num, other._num)]
            return Matrix(self.rows, self.cols, num, [1] * len(num), self.p, _copy=False)
        num, den = [], []
        for an, ad, bn, bd in zip(self._num, self._den, other._num, other._den):
            f = Fraction(an, ad) + Fraction(bn, bd)
            num.append(f.numerator)
            den.append(f.denominator)
        return Matrix(self.rows, self.cols, num, den, 0, _copy=False)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        if self.p:
            num = [(-a) % self.p for a in self._num]
            return Matrix(self.rows, self.cols, num, [1] * len(num), self.p, _copy=False)
        return Matrix(self.rows, self.cols, [-a for a in self._num], list(self._den), 0, _copy=False)

    def scale(self, c) -> "Matrix":
        cn, cd = _coerce_entry(c, self.p)
        if self.p:
            num = [(a * cn) % self.p for a in self._num]
            return Matrix(self.rows, self.cols, num, [1] * len(num), self.p, _copy=False)
        num, den = [], []
        for an, ad in zip(self._num, self._den):
            f = Fraction(an * cn, ad * cd)
            num.append(f.numerator)
            den.append(f.denominator)
        return Matrix(self.rows, self.cols, num, den, 0, _copy=False)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            self._check_field(other)
            if self.cols != other.rows:
                raise DimensionMismatchError(f"matmul {self.shape} by {other.shape}")
            num, den = _impl.matmul(
                self.rows, self.cols, other.cols,
                self._num, self._den, other._num, other._den, self.p,
            )
            return Matrix(self.rows, other.cols, num, den, self.p, _copy=False)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def transpose(self) -> "Matrix":
        num = [0] * (self.rows * self.cols)
        den = [1] * (self.rows * self.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                num[j * self.rows + i] = self._num[i * self.cols + j]
                den[j * self.rows + i] = self._den[i * self.cols + j]
        return Matrix(self.cols, self.rows, num, den, self.p, _copy=False)

    def submatrix(self, row_idx, col_idx) -> "Matrix":
        row_idx = list(row_idx)
        col_idx = list(col_idx)
        num, den = [], []
        for i in row_idx:
            for j in col_idx:
                num.append(self._num[i * self.cols + j])
                den.append(self._den[i * self.cols + j])
        return Matrix(len(row_idx), len(col_idx), num, den, self.p, _copy=False)

    def col(self, j: int) -> "Matrix":
        return self.submatrix(range(self.rows), [j])

    # -- reduction-based operations -----------------------------------

    def rref_with_pivots(self):
        """Reduced row echelon form and pivot columns (cached)."""
        if self._rref is None:
            num, den, piv = _impl.rref(self.rows, self.cols, self._num, self._den, self.p)
            mat = Matrix(self.rows, self.cols, num, den, self.p, _copy=False)
            object.__setattr__(self, "_rref", (mat, tuple(piv)))
        return self._rref

    def rank(self) -> int:
        return len(self.rref_with_pivots()[1])


# ---------------------------------------------------------------------
# Free functions
# ---------------------------------------------------------------------


def rref(m: Matrix):
    """Reduced row echelon form: ``(matrix, pivot column list)``."""
    mat, piv = m.rref_with_pivots()
    return mat, list(piv)


def hstack(*mats: Matrix) -> Matrix:
    mats = [m for m in mats]
    if not mats:
        return Matrix.zero(0, 0)
    rows = mats[0].rows
    p = mats[0].p
    for m in mats:
        if m.rows != rows:
            raise DimensionMismatchError("hstack: row counts differ")
        if m.p != p:
            raise FieldMismatchError("hstack: mixed field tags")
    total = sum(m.cols for m in mats)
    num = [0] * (rows * total)
    den = [1] * (rows * total)
    off = 0
    for m in mats:
        for i in range(rows):
            for j in range(m.cols):
                num[i * total + off + j] = m._num[i * m.cols + j]
                den[i * total + off + j] = m._den[i * m.cols + j]
        off += m.cols
    return Matrix(rows, total, num, den, p, _copy=False)


def vstack(*mats: Matrix) -> Matrix:
    mats = [m for m in mats]
    if not mats:
        return Matrix.zero(0, 0)
    cols = mats[0].cols
    p = mats[0].p
    num, den = [], []
    for m in mats:
        if m.cols != cols:
            raise DimensionMismatchError("vstack: column counts differ")
        if m.p != p:
            raise FieldMismatchError("vstack: mixed field tags")
        num.extend(m._num)
        den.extend(m._den)
    return Matrix(sum(m.rows for m in mats), cols, num, den, p, _copy=False)


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of the null space of ``m``."""
    red, pivots = m.rref_with_pivots()
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    cols = []
    for f in free:
        vec = [Fraction(0)] * m.cols if m.p == 0 else [0] * m.cols
        vec[f] = Fraction(1) if m.p == 0 else 1
        for i, pc in enumerate(pivots):
            entry = red[i, f]
            if m.p:
                vec[pc] = (-entry) % m.p
            else:
                vec[pc] = -entry
        cols.append(vec)
    return Matrix.from_cols(cols, m.p) if cols else Matrix.zero(m.cols, 0, m.p)


def solve(a: Matrix, b: Matrix):
    """Exact solution ``x`` of ``a @ x = b`` (any one), or None if insoluble.

    ``b`` may have several columns; a solution must exist for all of them.
    """
    if a.rows != b.rows:
        raise DimensionMismatchError(f"solve: {a.shape} vs {b.shape}")
    if a.p != b.p:
        raise FieldMismatchError("solve: mixed field tags")
    aug = hstack(a, b)
    red, pivots = aug.rref_with_pivots()
    if any(pc >= a.cols for pc in pivots):
        return None
    sol = Matrix.zero(a.cols, b.cols, a.p).to_rows()
    for i, pc in enumerate(pivots):
        for j in range(b.cols):
            sol[pc][j] = red[i, a.cols + j]
    return Matrix.from_rows(sol, a.p) if a.cols else Matrix.zero(0, b.cols, a.p)


def column_space_basis(m: Matrix) -> Matrix:
    """The pivot columns of ``m`` (a basis of its column space)."""
    _, pivots = m.rref_with_pivots()
    return m.submatrix(range(m.rows), pivots)


def subspace_sum(u: Matrix, v: Matrix) -> Matrix:
    """Basis of span(u) + span(v); columns are generators."""
    _check_ambient(u, v)
    return column_space_basis(hstack(u, v))


def subspace_intersection(u: Matrix, v: Matrix) -> Matrix:
    """Basis of span(u) ∩ span(v)."""
    _check_ambient(u, v)
    if u.cols == 0 or v.cols == 0:
        return Matrix.zero(u.rows, 0, u.p)
    ker = kernel_basis(hstack(u, -v))
    if ker.cols == 0:
        return Matrix.zero(u.rows, 0, u.p)
    u_part = ker.submatrix(range(u.cols), range(ker.cols))
    return column_space_basis(u * u_part)


def in_subspace(vec: Matrix, u: Matrix) -> bool:
    """Is the column vector ``vec`` in the column span of ``u``?"""
    return solve(u, vec) is not None


def subspace_contains(u: Matrix, v: Matrix) -> bool:
    """Is span(v) ⊆ span(u)?"""
    if v.cols == 0:
        return True
    return solve(u, v) is not None


def same_subspace(u: Matrix, v: Matrix) -> bool:
    return subspace_contains(u, v) and subspace_contains(v, u)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product: (a ⊗ b)(x ⊗ y) = a·x ⊗ b·y on stacked coordinates.

    Row index (i, j) of the result is i * b.rows + j, and likewise for
    columns, matching the usual vec-of-tensor layout.
    """
    if a.p != b.p:
        raise FieldMismatchError("kron: mixed field tags")
    rows = []
    for i in range(a.rows):
        for j in range(b.rows):
            row = []
            for k in range(a.cols):
                aik = a[i, k]
                for l in range(b.cols):
                    v = aik * b[j, l]
                    row.append(v if a.p == 0 else v % a.p)
            rows.append(row)
    if not rows:
        return Matrix.zero(a.rows * b.rows, a.cols * b.cols, a.p)
    return Matrix.from_rows(rows, a.p)


def preimage(f: Matrix, u: Matrix) -> Matrix:
    """Basis of ``{x : f @ x ∈ span(u)}``."""
    if f.rows != u.rows:
        raise DimensionMismatchError("preimage: ambient dimensions differ")
    if u.cols == 0:
        return kernel_basis(f)
    ker = kernel_basis(hstack(f, -u))
    if ker.cols == 0:
        return Matrix.zero(f.cols, 0, f.p)
    x_part = ker.submatrix(range(f.cols), range(ker.cols))
    return column_space_basis(x_part)


def _check_ambient(u: Matrix, v: Matrix):
    if u.rows != v.rows:
        raise DimensionMismatchError("ambient dimensions differ")
    if u.p != v.p:
        raise FieldMismatchError("mixed field tags")
