"""Dense exact linear algebra over cyclotomic fields.

Everything is deterministic: pivots are the first nonzero entry in column
order (arithmetic is exact, no magnitude heuristics), elimination is
fraction-free with pivot normalization at the end, and subspaces are kept
in reduced row-echelon form so equal subspaces have equal bases.
"""

from __future__ import annotations

import math

from .exactnum import CycNum, as_cyc


class Matrix:
    """Row-major dense matrix with all entries at one shared conductor."""

    __slots__ = ("rows", "cols", "n", "entries")

    def __init__(self, rows: int, cols: int, entries):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix shape")
        cells = [as_cyc(x) for x in entries]
        if len(cells) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for {rows}x{cols}, got {len(cells)}"
            )
        n = 1
        for x in cells:
            n = n * x.n // math.gcd(n, x.n)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", tuple(x.lift(n) for x in cells))

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @staticmethod
    def from_rows(rows) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return Matrix(len(rows), ncols, [x for r in rows for x in r])

    @staticmethod
    def identity(k: int) -> "Matrix":
        return Matrix(k, k, [1 if i == j else 0 for i in range(k) for j in range(k)])

    @staticmethod
    def zeros(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, [0] * (rows * cols))

    def __getitem__(self, ij) -> CycNum:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and all(x == y for x, y in zip(self.entries, other.entries))
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __add__(self, other):
        self._shape_check(other)
        return Matrix(self.rows, self.cols, [x + y for x, y in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._shape_check(other)
        return Matrix(self.rows, self.cols, [x - y for x, y in zip(self.entries, other.entries)])

    def __neg__(self):
        return Matrix(self.rows, self.cols, [-x for x in self.entries])

    def _shape_check(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    @property
    def shape(self):
        return (self.rows, self.cols)

    def scaled(self, s) -> "Matrix":
        s = as_cyc(s)
        return Matrix(self.rows, self.cols, [s * x for x in self.entries])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            out = []
            ocols = other.cols
            for i in range(self.rows):
                rowi = self.row(i)
                for j in range(ocols):
                    acc = None
                    for k, a in enumerate(rowi):
                        if a.is_zero():
                            continue
                        term = a * other.entries[k * ocols + j]
                        acc = term if acc is None else acc + term
                    out.append(acc if acc is not None else CycNum.zero())
            return Matrix(self.rows, ocols, out)
        return self.scaled(other)

    def __rmul__(self, other):
        return self.scaled(other)

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)]
        )

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; block (i, j) is self[i, j] * other."""
        out = []
        for i in range(self.rows):
            for p in range(other.rows):
                for j in range(self.cols):
                    sij = self[i, j]
                    for q in range(other.cols):
                        out.append(sij * other[p, q])
        return Matrix(self.rows * other.rows, self.cols * other.cols, out)

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            self[i, j] == (1 if i == j else 0) for i in range(self.rows) for j in range(self.cols)
        )

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.entries)

    def rref(self):
        """(reduced row-echelon form, pivot column list)."""
        work = self.to_rows()
        pivots = _rref_inplace(work, self.cols)
        return Matrix.from_rows(work) if work else Matrix.zeros(0, self.cols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> "Subspace":
        """Right kernel {v : self * v = 0} as an echelonized subspace."""
        work = self.to_rows()
        pivots = _rref_inplace(work, self.cols)
        pivot_set = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            v = [CycNum.zero()] * self.cols
            v[free] = CycNum.one()
            for r, pc in enumerate(pivots):
                v[pc] = -work[r][free]
            basis.append(v)
        return Subspace.from_rows(self.cols, basis)

    def solve_right(self, b: "Matrix") -> "Matrix":
        """x with self * x = b; free variables set to zero.

        Raises ValueError when some column of b is outside the column span.
        """
        if b.rows != self.rows:
            raise ValueError(f"rhs has {b.rows} rows, expected {self.rows}")
        aug = [list(self.row(i)) + list(b.row(i)) for i in range(self.rows)]
        pivots = _rref_inplace(aug, self.cols + b.cols, stop_col=self.cols)
        for r in range(len(pivots), len(aug)):
            if any(not x.is_zero() for x in aug[r][self.cols :]):
                raise ValueError("inconsistent linear system")
        out = [[CycNum.zero()] * b.cols for _ in range(self.cols)]
        for r, pc in enumerate(pivots):
            for j in range(b.cols):
                out[pc][j] = aug[r][self.cols + j]
        return Matrix.from_rows(out) if out else Matrix.zeros(self.cols, b.cols)

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        x = self.solve_right(Matrix.identity(self.rows))
        if not (self * x).is_identity():
            raise ValueError("matrix is singular")
        return x

    def __repr__(self):
        body = "; ".join(
            ", ".join(str(self[i, j]) for j in range(self.cols)) for i in range(self.rows)
        )
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def to_json(self):
        return [[self[i, j].to_json() for j in range(self.cols)] for i in range(self.rows)]

    @staticmethod
    def from_json(obj) -> "Matrix":
        rows = [[CycNum.from_json(x) for x in r] for r in obj]
        return Matrix.from_rows(rows)


def _rref_inplace(rows: list, ncols: int, stop_col: int | None = None) -> list:
    """Reduce rows in place to RREF; returns pivot columns.

    Fraction-free forward elimination (cross-multiplication, no division),
    pivots normalized afterwards so the result is canonical.
    """
    if stop_col is None:
        stop_col = ncols
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(stop_col):
        pr = next((i for i in range(r, nrows) if not rows[i][c].is_zero()), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            f = rows[i][c]
            if not f.is_zero():
                rows[i] = [piv * x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for ri in range(len(pivots) - 1, -1, -1):
        c = pivots[ri]
        piv = rows[ri][c]
        rows[ri] = [x / piv for x in rows[ri]]
        for i in range(ri):
            f = rows[i][c]
            if not f.is_zero():
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[ri])]
    return pivots


class Subspace:
    """Subspace of a coordinate space, basis held in canonical RREF."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis):
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", tuple(tuple(r) for r in basis))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @staticmethod
    def from_rows(ambient_dim: int, rows) -> "Subspace":
        work = [[as_cyc(x) for x in r] for r in rows]
        for r in work:
            if len(r) != ambient_dim:
                raise ValueError("row length does not match ambient dimension")
        _rref_inplace(work, ambient_dim)
        work = [r for r in work if any(not x.is_zero() for x in r)]
        return Subspace(ambient_dim, work)

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, [])

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace.from_rows(
            ambient_dim, Matrix.identity(ambient_dim).to_rows()
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    def member(self, v) -> bool:
        """True iff v reduces to zero against the echelon basis."""
        v = [as_cyc(x) for x in v]
        if len(v) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        v = list(v)
        for row in self.basis:
            pc = next(i for i, x in enumerate(row) if not x.is_zero())
            f = v[pc]
            if not f.is_zero():
                v = [x - f * y for x, y in zip(v, row)]
        return all(x.is_zero() for x in v)

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(
                f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}"
            )
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        # kernel of [U^T | -V^T]: solutions x, y with U^T x = V^T y
        r, s = self.dim, other.dim
        block = []
        for i in range(self.ambient_dim):
            row = [self.basis[j][i] for j in range(r)]
            row += [-other.basis[j][i] for j in range(s)]
            block.append(row)
        ker = Matrix.from_rows(block).kernel()
        vecs = []
        for kv in ker.basis:
            vec = [CycNum.zero()] * self.ambient_dim
            for j in range(r):
                if not kv[j].is_zero():
                    vec = [a + kv[j] * b for a, b in zip(vec, self.basis[j])]
            vecs.append(vec)
        return Subspace.from_rows(self.ambient_dim, vecs)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.ambient_dim != other.ambient_dim or self.dim != other.dim:
            return False
        return all(
            all(x == y for x, y in zip(r1, r2)) for r1, r2 in zip(self.basis, other.basis)
        )

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"
