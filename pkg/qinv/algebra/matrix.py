"""
Dense matrices over cyclotomic fields.

Business rules:
- Entries are Scalars; all elimination is exact.
- Row reduction picks pivots column by column, left to right, and within a
  column the smallest row index with a nonzero entry. Nullspace and
  column-space bases come out in pivot order, so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from qinv.algebra.scalar import Number, Scalar
from qinv.exceptions import AlgebraError, NotIdempotentError, SingularMatrixError


class Mat:
    """Immutable rows x cols matrix of Scalars."""

    __slots__ = ("rows", "cols", "entries", "conductor")

    def __init__(self, entries: Sequence[Sequence[Number]], cols: Optional[int] = None, conductor: int = 1):
        self.entries = tuple(tuple(Scalar.coerce(x, conductor) for x in row) for row in entries)
        self.rows = len(self.entries)
        if cols is None:
            cols = len(self.entries[0]) if self.entries else 0
        self.cols = cols
        if any(len(r) != cols for r in self.entries):
            raise AlgebraError("Lignes de longueurs différentes.")
        self.conductor = conductor
        for row in self.entries:
            for x in row:
                if x.conductor > self.conductor:
                    self.conductor = x.conductor

    # ---------- constructors ----------

    @classmethod
    def zeros(cls, rows: int, cols: int, conductor: int = 1) -> "Mat":
        z = Scalar.zero(conductor)
        return cls([[z] * cols for _ in range(rows)], cols, conductor)

    @classmethod
    def identity(cls, n: int, conductor: int = 1) -> "Mat":
        z, o = Scalar.zero(conductor), Scalar.one(conductor)
        return cls([[o if i == j else z for j in range(n)] for i in range(n)], n, conductor)

    @classmethod
    def column(cls, values: Sequence[Number], conductor: int = 1) -> "Mat":
        return cls([[v] for v in values], 1, conductor)

    @classmethod
    def row(cls, values: Sequence[Number], conductor: int = 1) -> "Mat":
        return cls([list(values)], len(values), conductor)

    @classmethod
    def unit_column(cls, n: int, i: int, conductor: int = 1) -> "Mat":
        z, o = Scalar.zero(conductor), Scalar.one(conductor)
        return cls([[o if k == i else z] for k in range(n)], 1, conductor)

    @classmethod
    def unit_row(cls, n: int, i: int, conductor: int = 1) -> "Mat":
        z, o = Scalar.zero(conductor), Scalar.one(conductor)
        return cls([[o if k == i else z for k in range(n)]], n, conductor)

    @classmethod
    def from_sparse(cls, rows: int, cols: int, values: dict[tuple[int, int], Scalar], conductor: int = 1) -> "Mat":
        z = Scalar.zero(conductor)
        data = [[z] * cols for _ in range(rows)]
        for (i, j), v in values.items():
            data[i][j] = v
        return cls(data, cols, conductor)

    @classmethod
    def block_diag(cls, blocks: Sequence["Mat"], conductor: int = 1) -> "Mat":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        z = Scalar.zero(conductor)
        data = [[z] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b.entries):
                data[r0 + i][c0:c0 + b.cols] = row
            r0 += b.rows
            c0 += b.cols
        return cls(data, cols, conductor)

    @classmethod
    def hstack(cls, mats: Sequence["Mat"], rows: int, conductor: int = 1) -> "Mat":
        data = [[] for _ in range(rows)]
        for m in mats:
            for i in range(rows):
                data[i].extend(m.entries[i])
        return cls(data, sum(m.cols for m in mats), conductor)

    @classmethod
    def vstack(cls, mats: Sequence["Mat"], cols: int, conductor: int = 1) -> "Mat":
        data = []
        for m in mats:
            data.extend(m.entries)
        return cls(data, cols, conductor)

    # ---------- access ----------

    def __getitem__(self, index: tuple[int, int]) -> Scalar:
        i, j = index
        return self.entries[i][j]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def column_at(self, j: int) -> "Mat":
        return Mat([[row[j]] for row in self.entries], 1, self.conductor)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Mat":
        return Mat([[self.entries[i][j] for j in col_idx] for i in row_idx], len(col_idx), self.conductor)

    def flatten(self) -> list[Scalar]:
        return [x for row in self.entries for x in row]

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.entries for x in row)

    def scalar_value(self) -> Scalar:
        if self.shape != (1, 1):
            raise AlgebraError(f"Matrice {self.shape} n'est pas un scalaire.")
        return self.entries[0][0]

    # ---------- arithmetic ----------

    def _check_same_shape(self, other: "Mat") -> None:
        if self.shape != other.shape:
            raise AlgebraError(f"Formes incompatibles : {self.shape} et {other.shape}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        return Mat(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            self.cols,
            max(self.conductor, other.conductor),
        )

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        return Mat(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            self.cols,
            max(self.conductor, other.conductor),
        )

    def __neg__(self) -> "Mat":
        return Mat([[-a for a in r] for r in self.entries], self.cols, self.conductor)

    def scale(self, k: Number) -> "Mat":
        k = Scalar.coerce(k, self.conductor)
        if k.is_one():
            return self
        return Mat([[a * k for a in r] for r in self.entries], self.cols, self.conductor)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise AlgebraError(f"Produit impossible : {self.shape} @ {other.shape}")
        conductor = max(self.conductor, other.conductor)
        zero = Scalar.zero(conductor)
        out = []
        other_rows = other.entries
        for row in self.entries:
            acc = [zero] * other.cols
            for k, a in enumerate(row):
                if a.is_zero():
                    continue
                for j, b in enumerate(other_rows[k]):
                    if not b.is_zero():
                        acc[j] = acc[j] + a * b
            out.append(acc)
        return Mat(out, other.cols, conductor)

    def transpose(self) -> "Mat":
        return Mat(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.rows,
            self.conductor,
        )

    def kron(self, other: "Mat") -> "Mat":
        conductor = max(self.conductor, other.conductor)
        data = []
        for a_row in self.entries:
            for b_row in other.entries:
                data.append([a * b for a in a_row for b in b_row])
        return Mat(data, self.cols * other.cols, conductor)

    def trace(self) -> Scalar:
        if self.rows != self.cols:
            raise AlgebraError("Trace d'une matrice non carrée.")
        total = Scalar.zero(self.conductor)
        for i in range(self.rows):
            total = total + self.entries[i][i]
        return total

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.shape, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in row) for row in self.entries)
        return f"Mat[{self.rows}x{self.cols}]({body})"

    # ---------- elimination ----------

    def rref(self) -> tuple["Mat", list[int]]:
        """Reduced row echelon form and the pivot columns."""
        data = [list(r) for r in self.entries]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            if r >= self.rows:
                break
            pivot_row = next((i for i in range(r, self.rows) if not data[i][c].is_zero()), None)
            if pivot_row is None:
                continue
            data[r], data[pivot_row] = data[pivot_row], data[r]
            inv = data[r][c].inverse()
            data[r] = [x * inv for x in data[r]]
            for i in range(self.rows):
                if i != r and not data[i][c].is_zero():
                    f = data[i][c]
                    data[i] = [x - f * y for x, y in zip(data[i], data[r])]
            pivots.append(c)
            r += 1
        return Mat(data, self.cols, self.conductor), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list["Mat"]:
        """Basis column vectors of {x : self @ x = 0}, one per free column."""
        reduced, pivots = self.rref()
        zero, one = Scalar.zero(self.conductor), Scalar.one(self.conductor)
        basis = []
        for free in range(self.cols):
            if free in pivots:
                continue
            vec = [zero] * self.cols
            vec[free] = one
            for i, p in enumerate(pivots):
                vec[p] = -reduced.entries[i][free]
            basis.append(Mat.column(vec, self.conductor))
        return basis

    def inverse(self) -> "Mat":
        if self.rows != self.cols:
            raise SingularMatrixError("Inversion d'une matrice non carrée.")
        n = self.rows
        if n == 0:
            return self
        aug = Mat.hstack([self, Mat.identity(n, self.conductor)], n, self.conductor)
        reduced, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise SingularMatrixError()
        return reduced.submatrix(range(n), range(n, 2 * n))

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows


@dataclass(frozen=True)
class LinearSolution:
    """Solutions of A x = b: particular + span(nullspace), or inconsistent."""

    consistent: bool
    particular: Optional[Mat]
    nullspace: list[Mat]


def solve_linear(a: Mat, b: Mat) -> LinearSolution:
    if a.rows != b.rows:
        raise AlgebraError(f"Système mal formé : {a.shape} et {b.shape}")
    conductor = max(a.conductor, b.conductor)
    aug = Mat.hstack([a, b], a.rows, conductor)
    reduced, pivots = aug.rref()
    if any(p >= a.cols for p in pivots):
        return LinearSolution(False, None, [])
    zero = Scalar.zero(conductor)
    sol = [[zero] * b.cols for _ in range(a.cols)]
    for i, p in enumerate(pivots):
        sol[p] = list(reduced.entries[i][a.cols:])
    return LinearSolution(True, Mat(sol, b.cols, conductor), a.nullspace())


@dataclass(frozen=True)
class SplittingTriple:
    """e = q @ p and p @ q = identity of size rank."""

    rank: int
    p: Mat
    q: Mat


def split_idempotent(e: Mat) -> SplittingTriple:
    if e.rows != e.cols:
        raise NotIdempotentError("Idempotent non carré.")
    if e @ e != e:
        raise NotIdempotentError()
    reduced, pivots = e.rref()
    r = len(pivots)
    q = e.submatrix(range(e.rows), pivots)
    p = reduced.submatrix(range(r), range(e.cols))
    return SplittingTriple(r, p, q)


def independent_subset(vectors: Iterable[Mat]) -> list[int]:
    """Indices of a maximal linearly independent prefix-greedy subset of columns."""
    vectors = list(vectors)
    if not vectors:
        return []
    stacked = Mat.hstack(vectors, vectors[0].rows, max(v.conductor for v in vectors))
    return stacked.rref()[1]
