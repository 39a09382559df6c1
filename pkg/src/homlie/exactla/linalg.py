"""Dense matrices and subspaces over the rationals.

Everything here is exact (``fractions.Fraction``) and immutable.  A linear map
``V -> W`` is stored as a ``dim W x dim V`` matrix whose columns are the images
of the basis vectors of ``V``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence

from . import _backend

Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not allowed; use Fraction or int")
    return Fraction(x)


def vec(values: Iterable) -> Vector:
    return tuple(to_fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(k, u: Vector) -> Vector:
    return tuple(k * a for a in u)


def is_zero_vector(u: Vector) -> bool:
    return not any(u)


def lin_comb(coeffs: Sequence, vectors: Sequence[Vector], n: int) -> Vector:
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    return tuple(out)


# --------------------------------------------------------------------------
# row reduction


def _integer_rows(rows):
    out = []
    for r in rows:
        den = 1
        for a in r:
            if a.denominator != 1:
                den = lcm(den, a.denominator)
        out.append([int(a * den) for a in r])
    return out


def rref(rows: Sequence[Sequence[Fraction]], ncols: int):
    """Canonical reduced row echelon form.

    Returns ``(rows, pivots)`` with zero rows dropped, each pivot equal to 1.
    """
    int_rows = _integer_rows(rows)
    reduced, pivots = _backend.rref_int(int_rows, ncols)
    out = []
    for r, p in zip(reduced, pivots):
        piv = r[p]
        out.append(tuple(Fraction(a, piv) for a in r))
    return out, list(pivots)


# --------------------------------------------------------------------------


class Matrix:
    """Immutable dense rational matrix."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data, cols: Optional[int] = None):
        data = tuple(vec(r) for r in data)
        if cols is None:
            if not data:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(data[0])
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged matrix data")
        self.rows = len(data)
        self.cols = cols
        self._data = data

    # construction ---------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[ZERO] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([unit_vector(n, i) for i in range(n)], n)

    @classmethod
    def scalar(cls, n: int, k) -> "Matrix":
        k = to_fraction(k)
        return cls([vscale(k, unit_vector(n, i)) for i in range(n)], n)

    @classmethod
    def diag(cls, values) -> "Matrix":
        values = vec(values)
        n = len(values)
        return cls([vscale(values[i], unit_vector(n, i)) for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        columns = [vec(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise ValueError("column length mismatch")
        data = [[c[i] for c in columns] for i in range(rows)]
        return cls(data, len(columns))

    @classmethod
    def block_diag(cls, *blocks: "Matrix") -> "Matrix":
        nr = sum(b.rows for b in blocks)
        nc = sum(b.cols for b in blocks)
        data = [[ZERO] * nc for _ in range(nr)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    data[r0 + i][c0 + j] = b._data[i][j]
            r0 += b.rows
            c0 += b.cols
        return cls(data, nc)

    @classmethod
    def hstack(cls, *blocks: "Matrix") -> "Matrix":
        if not blocks:
            raise ValueError("nothing to stack")
        nr = blocks[0].rows
        if any(b.rows != nr for b in blocks):
            raise ValueError("row count mismatch in hstack")
        data = [sum((b._data[i] for b in blocks), ()) for i in range(nr)]
        return cls(data, sum(b.cols for b in blocks))

    @classmethod
    def vstack(cls, *blocks: "Matrix") -> "Matrix":
        if not blocks:
            raise ValueError("nothing to stack")
        nc = blocks[0].cols
        if any(b.cols != nc for b in blocks):
            raise ValueError("column count mismatch in vstack")
        return cls([r for b in blocks for r in b._data], nc)

    # access ---------------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def row_list(self):
        return list(self._data)

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __repr__(self):
        body = "; ".join(" ".join(str(a) for a in r) for r in self._data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    # arithmetic -----------------------------------------------------------

    @property
    def T(self) -> "Matrix":
        return Matrix([self.col(j) for j in range(self.cols)], self.rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([vadd(a, b) for a, b in zip(self._data, other._data)], self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([vsub(a, b) for a, b in zip(self._data, other._data)], self.cols)

    def __neg__(self) -> "Matrix":
        return Matrix([vscale(-1, a) for a in self._data], self.cols)

    def scale(self, k) -> "Matrix":
        k = to_fraction(k)
        return Matrix([vscale(k, a) for a in self._data], self.cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.columns()
        data = []
        for r in self._data:
            data.append([sum((a * b for a, b in zip(r, c) if a and b), ZERO) for c in ocols])
        return Matrix(data, other.cols)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for matrix with {self.cols} columns")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), ZERO) for r in self._data)

    def power(self, k: int) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        out = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Matrix.identity(self.rows)

    def rank(self) -> int:
        return len(rref(self._data, self.cols)[1])

    def inverse(self) -> Optional["Matrix"]:
        """Inverse of a square matrix, or ``None`` when singular."""
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        if n == 0:
            return self
        aug = [r + unit_vector(n, i) for i, r in enumerate(self._data)]
        red, piv = rref(aug, 2 * n)
        if len(piv) < n or piv[n - 1] >= n:
            return None
        return Matrix([r[n:] for r in red[:n]], n)

    def restrict_columns(self, idx: Sequence[int]) -> "Matrix":
        return Matrix([[r[j] for j in idx] for r in self._data], len(idx))


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^n held by its reduced-echelon basis.

    Two subspaces are equal iff their bases are equal entry for entry.
    """

    ambient_dim: int
    basis: tuple
    pivots: tuple

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vectors = [vec(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        if not vectors:
            return cls(ambient_dim, (), ())
        rows, piv = rref(vectors, ambient_dim)
        return cls(ambient_dim, tuple(rows), tuple(piv))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, (), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.span([unit_vector(ambient_dim, i) for i in range(ambient_dim)], ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def reduce(self, v: Sequence) -> Vector:
        """Remainder of ``v`` after clearing the pivot coordinates."""
        v = list(vec(v))
        for b, p in zip(self.basis, self.pivots):
            c = v[p]
            if c:
                for k, a in enumerate(b):
                    if a:
                        v[k] -= c * a
        return tuple(v)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return is_zero_vector(self.reduce(v))

    __contains__ = contains

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` in the canonical basis; ``v`` must lie in the span."""
        if not self.contains(v):
            raise ValueError("vector does not lie in the subspace")
        v = vec(v)
        return tuple(v[p] for p in self.pivots)

    def from_coordinates(self, coords: Sequence) -> Vector:
        return lin_comb(vec(coords), self.basis, self.ambient_dim)

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def basis_matrix(self) -> Matrix:
        """Matrix whose columns are the basis vectors (ambient x dim)."""
        return Matrix.from_columns(self.basis, self.ambient_dim)

    def __add__(self, other: "Subspace") -> "Subspace":
        _check_ambient(self, other)
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def intersection(self, other: "Subspace") -> "Subspace":
        _check_ambient(self, other)
        ann = annihilator(self).basis + annihilator(other).basis
        if not ann:
            return Subspace.full(self.ambient_dim)
        return kernel_basis(Matrix(ann, self.ambient_dim))

    def complement_in(self, bigger: "Subspace") -> list:
        """Vectors of ``bigger``'s canonical basis completing ``self`` to ``bigger``."""
        _check_ambient(self, bigger)
        if not bigger.contains_space(self):
            raise ValueError("subspace is not contained in the larger one")
        mine = set(self.pivots)
        return [b for b, p in zip(bigger.basis, bigger.pivots) if p not in mine]

    def image(self, A: Matrix) -> "Subspace":
        if A.cols != self.ambient_dim:
            raise ValueError("map does not act on this ambient space")
        return Subspace.span([A.apply(b) for b in self.basis], A.rows)


def _check_ambient(U: Subspace, V: Subspace):
    if U.ambient_dim != V.ambient_dim:
        raise ValueError(f"ambient dimension mismatch: {U.ambient_dim} vs {V.ambient_dim}")


def annihilator(U: Subspace) -> Subspace:
    """{c : c . u = 0 for all u in U}."""
    if U.is_zero():
        return Subspace.full(U.ambient_dim)
    return kernel_basis(Matrix(U.basis, U.ambient_dim))


def kernel_basis(A: Matrix) -> Subspace:
    """Canonical basis of {v : A v = 0}."""
    n = A.cols
    if A.rows == 0:
        return Subspace.full(n)
    red, piv = rref(A.row_list(), n)
    pivset = set(piv)
    vectors = []
    for j in range(n):
        if j in pivset:
            continue
        v = [ZERO] * n
        v[j] = ONE
        for r, p in zip(red, piv):
            if r[j]:
                v[p] = -r[j]
        vectors.append(v)
    return Subspace.span(vectors, n)


def image(A: Matrix) -> Subspace:
    """Column space of ``A``."""
    return Subspace.span(A.columns(), A.rows)


def preimage(A: Matrix, V: Subspace) -> Subspace:
    """{x : A x in V}."""
    if A.rows != V.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    ann = annihilator(V)
    if ann.is_zero():
        return Subspace.full(A.cols)
    C = Matrix(ann.basis, A.rows)
    return kernel_basis(C @ A)


def solve_affine(A: Matrix, b: Sequence) -> Optional[Vector]:
    """One solution of ``A x = b`` or ``None``.

    Free variables are set to zero; the pivot rule is fixed, so the answer is
    deterministic.
    """
    b = vec(b)
    if len(b) != A.rows:
        raise ValueError("right-hand side length does not match the matrix")
    n = A.cols
    aug = [r + (bi,) for r, bi in zip(A.row_list(), b)]
    if not aug:
        return zero_vector(n)
    red, piv = rref(aug, n + 1)
    if piv and piv[-1] == n:
        return None
    x = [ZERO] * n
    for r, p in zip(red, piv):
        x[p] = r[n]
    return tuple(x)


@dataclass(frozen=True)
class SubspaceOps:
    sum: Subspace
    intersection: Subspace
    contains: bool
    quotient_basis: list


def subspace_ops(U: Subspace, V: Subspace) -> SubspaceOps:
    """Sum, intersection, ``U`` contains ``V``, and representatives of (U+V)/U."""
    _check_ambient(U, V)
    total = U + V
    return SubspaceOps(
        sum=total,
        intersection=U.intersection(V),
        contains=U.contains_space(V),
        quotient_basis=U.complement_in(total),
    )


def det(A: Matrix) -> Fraction:
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    n = A.rows
    m = [list(r) for r in A.row_list()]
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        pv = m[c][c]
        d *= pv
        for i in range(c + 1, n):
            f = m[i][c]
            if f:
                f = f / pv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


def left_inverse(A: Matrix) -> Matrix:
    """``B`` with ``B @ A == I`` for an injective ``A``."""
    if A.cols == 0:
        return Matrix.zeros(0, A.rows)
    gram = A.T @ A
    inv = gram.inverse()
    if inv is None:
        raise ValueError("matrix is not injective")
    return inv @ A.T


def right_inverse(A: Matrix) -> Matrix:
    """``B`` with ``A @ B == I`` for a surjective ``A``."""
    return left_inverse(A.T).T


class MatrixSpace:
    """A subspace of ``rows x cols`` matrices, stored flattened row-major."""

    __slots__ = ("rows", "cols", "space")

    def __init__(self, rows: int, cols: int, space: Subspace):
        if space.ambient_dim != rows * cols:
            raise ValueError("flattened ambient dimension does not match the shape")
        self.rows = rows
        self.cols = cols
        self.space = space

    @staticmethod
    def flatten(M: Matrix) -> Vector:
        return tuple(a for r in M.row_list() for a in r)

    def unflatten(self, v: Sequence) -> Matrix:
        c = self.cols
        return Matrix([v[i * c:(i + 1) * c] for i in range(self.rows)], c)

    @property
    def dim(self) -> int:
        return self.space.dim

    def matrices(self) -> list:
        return [self.unflatten(b) for b in self.space.basis]

    def contains(self, M: Matrix) -> bool:
        return M.shape == (self.rows, self.cols) and self.space.contains(self.flatten(M))

    __contains__ = contains

    def coordinates(self, M: Matrix) -> Vector:
        return self.space.coordinates(self.flatten(M))

    def from_coordinates(self, coords) -> Matrix:
        return self.unflatten(self.space.from_coordinates(coords))

    def __eq__(self, other):
        if not isinstance(other, MatrixSpace):
            return NotImplemented
        return (self.rows, self.cols, self.space) == (other.rows, other.cols, other.space)

    def __add__(self, other: "MatrixSpace") -> "MatrixSpace":
        return MatrixSpace(self.rows, self.cols, self.space + other.space)

    def contains_space(self, other: "MatrixSpace") -> bool:
        return self.space.contains_space(other.space)

    @classmethod
    def spanned_by(cls, mats: Sequence[Matrix], rows: int, cols: int) -> "MatrixSpace":
        return cls(rows, cols, Subspace.span([cls.flatten(M) for M in mats], rows * cols))

    @classmethod
    def all(cls, rows: int, cols: int) -> "MatrixSpace":
        return cls(rows, cols, Subspace.full(rows * cols))

    def __repr__(self):
        return f"MatrixSpace({self.rows}x{self.cols}, dim={self.dim})"


def elementary_matrices(rows: int, cols: int):
    for k in range(rows):
        for j in range(cols):
            data = [[ZERO] * cols for _ in range(rows)]
            data[k][j] = ONE
            yield Matrix(data, cols)


def linear_map_matrix(F, rows: int, cols: int) -> Matrix:
    """Matrix of a linear function ``F`` from ``rows x cols`` matrices to vectors."""
    columns = [vec(F(E)) for E in elementary_matrices(rows, cols)]
    if not columns:
        return Matrix.zeros(0, 0)
    return Matrix.from_columns(columns, len(columns[0]))


def solve_linear_conditions(F, rows: int, cols: int) -> MatrixSpace:
    """All matrices ``X`` with ``F(X) = 0`` for a linear ``F``."""
    if rows * cols == 0:
        return MatrixSpace(rows, cols, Subspace.zero(0))
    A = linear_map_matrix(F, rows, cols)
    if A.rows == 0:
        return MatrixSpace.all(rows, cols)
    return MatrixSpace(rows, cols, kernel_basis(A))


def solve_affine_conditions(F, target: Sequence, rows: int, cols: int) -> Optional[Matrix]:
    """One matrix ``X`` with ``F(X) = target`` for a linear ``F``, or ``None``."""
    target = vec(target)
    if rows * cols == 0:
        return Matrix.zeros(rows, cols) if not any(target) else None
    A = linear_map_matrix(F, rows, cols)
    if A.rows == 0:
        return Matrix.zeros(rows, cols)
    x = solve_affine(A, target)
    if x is None:
        return None
    return Matrix([x[i * cols:(i + 1) * cols] for i in range(rows)], cols)
