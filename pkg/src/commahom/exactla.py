"""Exact dense linear algebra over prime fields GF(p) and the rationals.

This is the substrate for every Hom/Ext computation in the package, so
correctness beats speed: plain Gauss-Jordan elimination with exact
arithmetic (machine ints mod p, fractions.Fraction over Q), no floating
point anywhere.  All values are immutable and freely shareable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """A prime field GF(p), or the rationals when ``p`` is None."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"characteristic must be prime, got {self.p}")

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def order(self) -> int:
        if self.p is None:
            raise ValueError("the rationals are infinite")
        return self.p

    def coerce(self, x) -> object:
        if self.p is None:
            return Fraction(x)
        return int(x) % self.p

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def add(self, a, b):
        return (a + b) % self.p if self.p is not None else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p is not None else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p is not None else a * b

    def neg(self, a):
        return (-a) % self.p if self.p is not None else -a

    def inv(self, a):
        if self.p is not None:
            if a % self.p == 0:
                raise ZeroDivisionError("inverse of zero")
            return pow(a, self.p - 2, self.p)
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1, 1) / a

    def elements(self) -> Iterator[object]:
        """All field elements, zero first.  Finite fields only."""
        if self.p is None:
            raise ValueError("cannot enumerate the rationals")
        return iter(range(self.p))

    def __str__(self) -> str:
        return "Q" if self.p is None else f"GF({self.p})"


GF2 = Field.prime(2)
QQ = Field.rationals()


@dataclass(frozen=True)
class ExactMatrix:
    """Immutable dense matrix, row-major, entries in canonical form."""

    field: Field
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence]) -> "ExactMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        return cls(field, r, c, tuple(field.coerce(x) for row in rows for x in row))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "ExactMatrix":
        z = field.zero()
        return cls(field, rows, cols, (z,) * (rows * cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> "ExactMatrix":
        z, o = field.zero(), field.one()
        return cls(field, n, n, tuple(o if i == j else z for i in range(n) for j in range(n)))

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], rows: int) -> "ExactMatrix":
        """Assemble a matrix from column vectors (each of length ``rows``)."""
        cols = len(columns)
        z = field.zero()
        data = [z] * (rows * cols)
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError("column length mismatch")
            for i, x in enumerate(col):
                data[i * cols + j] = field.coerce(x)
        return cls(field, rows, cols, tuple(data))

    def entry(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def is_zero(self) -> bool:
        z = self.field.zero()
        return all(x == z for x in self.entries)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.field,
            self.cols,
            self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def add(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_shape(other, same=True)
        f = self.field
        return ExactMatrix(
            f, self.rows, self.cols, tuple(f.add(a, b) for a, b in zip(self.entries, other.entries))
        )

    def sub(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_shape(other, same=True)
        f = self.field
        return ExactMatrix(
            f, self.rows, self.cols, tuple(f.sub(a, b) for a, b in zip(self.entries, other.entries))
        )

    def neg(self) -> "ExactMatrix":
        f = self.field
        return ExactMatrix(f, self.rows, self.cols, tuple(f.neg(a) for a in self.entries))

    def scale(self, c) -> "ExactMatrix":
        f = self.field
        c = f.coerce(c)
        return ExactMatrix(f, self.rows, self.cols, tuple(f.mul(c, a) for a in self.entries))

    def mul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        f = self.field
        z = f.zero()
        n, k, m = self.rows, self.cols, other.cols
        data = [z] * (n * m)
        for i in range(n):
            base = i * k
            for t in range(k):
                a = self.entries[base + t]
                if a == z:
                    continue
                obase = t * m
                rbase = i * m
                for j in range(m):
                    b = other.entries[obase + j]
                    if b != z:
                        data[rbase + j] = f.add(data[rbase + j], f.mul(a, b))
        return ExactMatrix(f, n, m, tuple(data))

    def matvec(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        f = self.field
        z = f.zero()
        out = []
        for i in range(self.rows):
            acc = z
            base = i * self.cols
            for j, x in enumerate(v):
                if x != z:
                    acc = f.add(acc, f.mul(self.entries[base + j], x))
            out.append(acc)
        return tuple(out)

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        data = []
        for i in range(self.rows):
            data.extend(self.row(i))
            data.extend(other.row(i))
        return ExactMatrix(self.field, self.rows, self.cols + other.cols, tuple(data))

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return ExactMatrix(
            self.field, self.rows + other.rows, self.cols, self.entries + other.entries
        )

    def _check_shape(self, other: "ExactMatrix", same: bool = False):
        if same and (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        if self.field != other.field:
            raise ValueError("field mismatch")

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows)) + "]"


@dataclass(frozen=True)
class RrefResult:
    reduced: ExactMatrix
    rank: int
    pivot_cols: tuple


def rref(m: ExactMatrix) -> RrefResult:
    """Reduced row echelon form, rank and pivot columns."""
    f = m.field
    z = f.zero()
    rows = [list(m.row(i)) for i in range(m.rows)]
    pivots = []
    r = 0
    for c in range(m.cols):
        pivot_row = None
        for i in range(r, m.rows):
            if rows[i][c] != z:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = f.inv(rows[r][c])
        if inv != f.one():
            rows[r] = [f.mul(inv, x) for x in rows[r]]
        for i in range(m.rows):
            if i != r and rows[i][c] != z:
                factor = rows[i][c]
                rows[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    reduced = ExactMatrix(f, m.rows, m.cols, tuple(x for row in rows for x in row))
    return RrefResult(reduced, len(pivots), tuple(pivots))


def rank(m: ExactMatrix) -> int:
    return rref(m).rank


def kernel_basis(m: ExactMatrix) -> list[tuple]:
    """Basis of the right null space, one vector per free column."""
    f = m.field
    res = rref(m)
    pivot_set = set(res.pivot_cols)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    z, o = f.zero(), f.one()
    for fc in free_cols:
        v = [z] * m.cols
        v[fc] = o
        for r, pc in enumerate(res.pivot_cols):
            v[pc] = f.neg(res.reduced.entry(r, fc))
        basis.append(tuple(v))
    return basis


def solve(m: ExactMatrix, b: Sequence) -> tuple | None:
    """One solution of m x = b, or None when b is outside the column space."""
    if len(b) != m.rows:
        raise ValueError("right-hand side length mismatch")
    f = m.field
    bcol = ExactMatrix.from_columns(f, [list(b)], m.rows)
    res = rref(m.hstack(bcol))
    z = f.zero()
    if m.cols in res.pivot_cols:
        return None
    x = [z] * m.cols
    for r, pc in enumerate(res.pivot_cols):
        x[pc] = res.reduced.entry(r, m.cols)
    return tuple(x)


def solve_matrix(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix | None:
    """One solution X of A X = B, or None when some column is inconsistent."""
    if a.rows != b.rows:
        raise ValueError("row count mismatch")
    f = a.field
    res = rref(a.hstack(b))
    z = f.zero()
    data = [[z] * b.cols for _ in range(a.cols)]
    for r, pc in enumerate(res.pivot_cols):
        if pc >= a.cols:
            return None
        for j in range(b.cols):
            data[pc][j] = res.reduced.entry(r, a.cols + j)
    # rows of the rref beyond the pivots must not constrain B
    for r in range(res.rank, a.rows):
        for j in range(b.cols):
            if res.reduced.entry(r, a.cols + j) != z:
                return None
    return ExactMatrix(f, a.cols, b.cols, tuple(x for row in data for x in row))


def column_space_basis(m: ExactMatrix) -> list[tuple]:
    """Pivot columns of m, as vectors: a basis of the column space."""
    res = rref(m)
    return [m.column(c) for c in res.pivot_cols]


def extend_to_basis(field: Field, vectors: list[tuple], dim: int) -> list[int]:
    """Indices of standard basis vectors completing ``vectors`` to a basis of k^dim."""
    chosen: list[int] = []
    current = list(vectors)
    base_rank = rank(ExactMatrix.from_columns(field, current, dim)) if current else 0
    for k in range(dim):
        if base_rank + len(chosen) == dim:
            break
        e = [field.zero()] * dim
        e[k] = field.one()
        trial = current + [tuple(e)]
        if rank(ExactMatrix.from_columns(field, trial, dim)) > base_rank + len(chosen):
            chosen.append(k)
            current = trial
    if base_rank + len(chosen) != dim:
        raise ValueError("could not extend to a basis")
    return chosen


def invert(m: ExactMatrix) -> ExactMatrix | None:
    """Inverse of a square matrix, or None if singular."""
    if m.rows != m.cols:
        return None
    res = rref(m.hstack(ExactMatrix.identity(m.field, m.rows)))
    if res.rank < m.rows or any(pc >= m.rows for pc in res.pivot_cols):
        return None
    data = [res.reduced.row(i)[m.rows :] for i in range(m.rows)]
    return ExactMatrix.from_rows(m.field, data)


def all_vectors(field: Field, length: int) -> Iterator[tuple]:
    """All vectors of k^length over a finite field, lexicographic."""
    if not field.is_finite:
        raise ValueError("cannot enumerate over the rationals")
    for combo in itertools.product(range(field.order), repeat=length):
        yield tuple(field.coerce(x) for x in combo)
