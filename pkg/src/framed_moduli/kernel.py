"""Exact scalars and dense matrices over the rationals or a prime field.

Rationals are :class:`fractions.Fraction`; residues modulo ``p`` are plain
``int`` in ``[0, p)``.  The field is carried by the matrix, never by the
scalar, so every binary operation checks that both operands agree.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import FieldMismatchError, ShapeMismatch, SingularMatrixError, SubsetSizeMismatch


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    """Ground field descriptor: ``Field()`` is Q, ``Field(p)`` is GF(p)."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(int(p)):
            raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "p", None if p is None else int(p))

    def __setattr__(self, name, value):
        raise AttributeError("Field is immutable")

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def coerce(self, x):
        """Bring an int, Fraction or scalar string into canonical form."""
        if isinstance(x, str):
            return self.parse(x)
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError(f"cannot coerce {x!r} into {self!r}")
        return x % self.p

    def parse(self, text: str):
        text = text.strip()
        try:
            value = Fraction(text)
        except ValueError:
            raise ValueError(f"malformed scalar {text!r}") from None
        if "." in text or "e" in text.lower():
            raise ValueError(f"malformed scalar {text!r}: use p/q")
        return self.coerce(value)

    def format(self, x) -> str:
        if self.p is None:
            return str(x)
        return str(int(x))

    def norm(self, x):
        return x if self.p is None else x % self.p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / x
        return pow(x, -1, self.p)

    def descriptor(self) -> dict:
        if self.p is None:
            return {"type": "rational"}
        return {"type": "prime", "p": self.p}

    @classmethod
    def from_descriptor(cls, d: dict) -> "Field":
        kind = d.get("type")
        if kind == "rational":
            return cls()
        if kind == "prime":
            return cls(int(d["p"]))
        raise ValueError(f"unknown field descriptor {d!r}")

    @classmethod
    def from_spec(cls, spec: str) -> "Field":
        """Parse ``rational`` or ``prime:p``."""
        if spec == "rational":
            return cls()
        if spec.startswith("prime:"):
            return cls(int(spec.split(":", 1)[1]))
        raise ValueError(f"unknown field spec {spec!r}")


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


def _check_same_field(a: Field, b: Field):
    if a != b:
        raise FieldMismatchError(f"cannot combine {a!r} with {b!r}")


class Matrix:
    """Immutable dense matrix; ``rows`` is a tuple of row tuples."""

    __slots__ = ("field", "nrows", "ncols", "rows", "_hash")

    def __init__(self, field: Field, rows: Iterable[Sequence], ncols: int | None = None, *, coerce: bool = True):
        if coerce:
            data = tuple(tuple(field.coerce(x) for x in row) for row in rows)
        else:
            data = tuple(tuple(row) for row in rows)
        if ncols is None:
            if not data:
                raise ShapeMismatch("column count required for a matrix without rows")
            ncols = len(data[0])
        for row in data:
            if len(row) != ncols:
                raise ShapeMismatch(f"ragged matrix: expected {ncols} columns, got {len(row)}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # construction helpers

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        one, zero = field.one, field.zero
        return cls(field, [[one if i == j else zero for j in range(n)] for i in range(n)], n, coerce=False)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: Field = QQ) -> "Matrix":
        return cls(field, [[field.zero] * ncols for _ in range(nrows)], ncols, coerce=False)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Sequence, field: Field = QQ) -> "Matrix":
        if len(entries) != nrows * ncols:
            raise ShapeMismatch("entry count does not match shape")
        return cls(field, [entries[i * ncols:(i + 1) * ncols] for i in range(nrows)], ncols)

    # basic protocol

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def entries(self) -> tuple:
        return tuple(x for row in self.rows for x in row)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.ncols == other.ncols
                and self.rows == other.rows)

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.field, self.ncols, self.rows)))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in row) for row in self.rows)
        return f"Matrix[{self.field!r}]({self.nrows}x{self.ncols}: {body})"

    def tolist(self, as_str: bool = False) -> list[list]:
        if as_str:
            return [[self.field.format(x) for x in row] for row in self.rows]
        return [list(row) for row in self.rows]

    # arithmetic

    def __matmul__(self, other: "Matrix") -> "Matrix":
        _check_same_field(self.field, other.field)
        if self.ncols != other.nrows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        norm = self.field.norm
        zero = self.field.zero
        out = [[norm(sum((a * b for a, b in zip(row, col)), zero)) for col in cols] for row in self.rows]
        return Matrix(self.field, out, other.ncols, coerce=False)

    def __add__(self, other: "Matrix") -> "Matrix":
        _check_same_field(self.field, other.field)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        norm = self.field.norm
        return Matrix(self.field, [[norm(a + b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                      self.ncols, coerce=False)

    def __neg__(self) -> "Matrix":
        norm = self.field.norm
        return Matrix(self.field, [[norm(-a) for a in r] for r in self.rows], self.ncols, coerce=False)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.field.coerce(c)
        norm = self.field.norm
        return Matrix(self.field, [[norm(c * a) for a in r] for r in self.rows], self.ncols, coerce=False)

    def transpose(self) -> "Matrix":
        cols = [self.column(j) for j in range(self.ncols)]
        return Matrix(self.field, cols, self.nrows, coerce=False)

    def select_rows(self, indices: Sequence[int]) -> "Matrix":
        return Matrix(self.field, [self.rows[i] for i in indices], self.ncols, coerce=False)

    def vstack(self, *others: "Matrix") -> "Matrix":
        rows = list(self.rows)
        for o in others:
            _check_same_field(self.field, o.field)
            if o.ncols != self.ncols:
                raise ShapeMismatch("vstack of matrices with different widths")
            rows.extend(o.rows)
        return Matrix(self.field, rows, self.ncols, coerce=False)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    # elimination-based routines

    def rref(self) -> tuple["Matrix", int, tuple[int, ...]]:
        rows, pivots = _rref([list(r) for r in self.rows], self.ncols, self.field)
        return Matrix(self.field, rows, self.ncols, coerce=False), len(pivots), tuple(pivots)

    @property
    def rank(self) -> int:
        return self.rref()[1]

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise ShapeMismatch(f"cannot invert a {self.shape} matrix")
        one, zero = self.field.one, self.field.zero
        aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(self.rows)]
        rows, pivots = _rref(aug, 2 * n, self.field, stop_col=n)
        if len(pivots) < n:
            raise SingularMatrixError("matrix is singular")
        return Matrix(self.field, [r[n:] for r in rows], n, coerce=False)

    def det(self) -> object:
        """Determinant by Bareiss fraction-free elimination."""
        if self.nrows != self.ncols:
            raise ShapeMismatch("determinant of a non-square matrix")
        return _bareiss_det([list(r) for r in self.rows], self.field)

    def det_by_rref(self) -> object:
        """Determinant as the signed product of pivots met during elimination."""
        if self.nrows != self.ncols:
            raise ShapeMismatch("determinant of a non-square matrix")
        field = self.field
        n = self.nrows
        a = [list(r) for r in self.rows]
        norm = field.norm
        result = field.one
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c] != 0), None)
            if piv is None:
                return field.zero
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                result = norm(-result)
            p = a[c][c]
            result = norm(result * p)
            inv = field.inv(p)
            for r in range(c + 1, n):
                if a[r][c] != 0:
                    factor = norm(a[r][c] * inv)
                    a[r] = [norm(x - factor * y) for x, y in zip(a[r], a[c])]
        return result

    def kernel_basis(self) -> list["Matrix"]:
        red, _, pivots = self.rref()
        free = [j for j in range(self.ncols) if j not in pivots]
        field = self.field
        basis = []
        for fj in free:
            vec = [field.zero] * self.ncols
            vec[fj] = field.one
            for r, pj in enumerate(pivots):
                vec[pj] = field.norm(-red.rows[r][fj])
            basis.append(Matrix(field, [[x] for x in vec], 1, coerce=False))
        return basis


def _rref(a: list[list], ncols: int, field: Field, stop_col: int | None = None):
    """Reduced row echelon form in place; returns (rows, pivot columns)."""
    norm = field.norm
    inv = field.inv
    nrows = len(a)
    pivots: list[int] = []
    r = 0
    last = ncols if stop_col is None else stop_col
    for c in range(last):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pinv = inv(a[r][c])
        if a[r][c] != 1:
            a[r] = [norm(x * pinv) for x in a[r]]
        pr = a[r]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [norm(x - f * y) for x, y in zip(a[i], pr)]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in a], pivots


def _bareiss_det(a: list[list], field: Field):
    n = len(a)
    if n == 0:
        return field.one
    norm = field.norm
    sign = 1
    prev = field.one
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return field.zero
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pinv = field.inv(prev)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = norm((a[i][j] * a[k][k] - a[i][k] * a[k][j]) * pinv)
        prev = a[k][k]
    return norm(sign * a[n - 1][n - 1])


# operation-level entry points

def rref_rank(m: Matrix) -> tuple[Matrix, int, tuple[int, ...]]:
    return m.rref()


def invert(m: Matrix) -> Matrix:
    return m.inverse()


def minor_det(m: Matrix, row_subset: Sequence[int]):
    """Determinant of the square submatrix on ``row_subset`` (all columns)."""
    if len(row_subset) != m.ncols:
        raise SubsetSizeMismatch(f"need {m.ncols} rows, got {len(row_subset)}")
    return m.select_rows(row_subset).det()


def kernel_basis(m: Matrix) -> list[Matrix]:
    return m.kernel_basis()


def vecmat(v: Sequence, m: Matrix) -> tuple:
    """Row vector times matrix; ``v`` must already live in ``m.field``."""
    if len(v) != m.nrows:
        raise ShapeMismatch(f"vector of length {len(v)} against {m.shape} matrix")
    norm = m.field.norm
    zero = m.field.zero
    return tuple(norm(sum((a * b for a, b in zip(v, col)), zero)) for col in zip(*m.rows)) \
        if m.nrows else tuple(zero for _ in range(m.ncols))


class RowSpace:
    """Incrementally grown row space kept in reduced echelon form."""

    def __init__(self, field: Field, width: int):
        self.field = field
        self.width = width
        self._basis: list[tuple[int, list]] = []

    @property
    def rank(self) -> int:
        return len(self._basis)

    def reduce(self, vec: Sequence) -> list:
        norm = self.field.norm
        v = list(vec)
        for piv, row in self._basis:
            c = v[piv]
            if c != 0:
                v = [norm(x - c * y) for x, y in zip(v, row)]
        return v

    def __contains__(self, vec) -> bool:
        return not any(self.reduce(vec))

    def add(self, vec: Sequence) -> bool:
        """Add ``vec`` if independent; return whether the rank grew."""
        if len(vec) != self.width:
            raise ShapeMismatch("row of wrong width")
        v = self.reduce(vec)
        piv = next((j for j, x in enumerate(v) if x != 0), None)
        if piv is None:
            return False
        norm = self.field.norm
        inv = self.field.inv(v[piv])
        v = [norm(x * inv) for x in v]
        for k, (p, row) in enumerate(self._basis):
            c = row[piv]
            if c != 0:
                self._basis[k] = (p, [norm(x - c * y) for x, y in zip(row, v)])
        self._basis.append((piv, v))
        return True

    def matrix(self) -> Matrix:
        return Matrix(self.field, [row for _, row in self._basis], self.width, coerce=False)
