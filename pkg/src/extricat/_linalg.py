"""Exact linear algebra over the rationals.

Every dimension, rank, and solvability claim in this package reduces to the
routines here.  Matrices are small (tens of rows), so the implementation
favours exactness and determinism over speed: entries are
:class:`fractions.Fraction`, elimination always picks the first nonzero pivot
in row order, and no floating point appears anywhere.

Zero-sized matrices (0×n, n×0) are first-class citizens; they show up
constantly as maps to and from the zero object.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Q = Fraction
_ZERO = Q(0)
_ONE = Q(1)


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Mat:
    """Immutable rational matrix; ``data`` is a row-major tuple of tuples."""

    rows: int
    cols: int
    data: tuple[tuple[Fraction, ...], ...]

    # --- constructors -------------------------------------------------

    @staticmethod
    def from_rows(rows: Sequence[Sequence], cols: int | None = None) -> "Mat":
        data = tuple(tuple(_q(x) for x in r) for r in rows)
        n = len(data)
        if n:
            m = len(data[0])
            if any(len(r) != m for r in data):
                raise ValueError("ragged rows")
        else:
            m = 0 if cols is None else cols
        if cols is not None and n and m != cols:
            raise ValueError(f"expected {cols} cols, got {m}")
        return Mat(n, m, data)

    @staticmethod
    def zeros(rows: int, cols: int) -> "Mat":
        row = (_ZERO,) * cols
        return Mat(rows, cols, tuple(row for _ in range(rows)))

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat(n, n, tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n)))

    @staticmethod
    def column(entries: Sequence) -> "Mat":
        return Mat.from_rows([[x] for x in entries], cols=1)

    # --- basic structure ----------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self.data[ij[0]][ij[1]]

    def row_tuple(self, i: int) -> tuple[Fraction, ...]:
        return self.data[i]

    def col_tuple(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.data)

    def transpose(self) -> "Mat":
        return Mat(self.cols, self.rows, tuple(tuple(self.data[i][j] for i in range(self.rows)) for j in range(self.cols)))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    # --- arithmetic ---------------------------------------------------

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        return Mat(self.rows, self.cols, tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.data, other.data)))

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        return Mat(self.rows, self.cols, tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.data, other.data)))

    def __neg__(self) -> "Mat":
        return self.scale(Q(-1))

    def scale(self, c) -> "Mat":
        c = _q(c)
        return Mat(self.rows, self.cols, tuple(tuple(c * x for x in r) for r in self.data))

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ot = other.transpose()
        return Mat(
            self.rows,
            other.cols,
            tuple(tuple(sum((a * b for a, b in zip(r, c)), _ZERO) for c in ot.data) for r in self.data),
        )

    def _check_same_shape(self, other: "Mat") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    # --- stacking -----------------------------------------------------

    @staticmethod
    def hstack(mats: Sequence["Mat"]) -> "Mat":
        mats = [m for m in mats]
        if not mats:
            return Mat.zeros(0, 0)
        rows = mats[0].rows
        if any(m.rows != rows for m in mats):
            raise ValueError("hstack: row mismatch")
        return Mat(rows, sum(m.cols for m in mats), tuple(tuple(x for m in mats for x in m.data[i]) for i in range(rows)))

    @staticmethod
    def vstack(mats: Sequence["Mat"]) -> "Mat":
        mats = [m for m in mats]
        if not mats:
            return Mat.zeros(0, 0)
        cols = mats[0].cols
        if any(m.cols != cols for m in mats):
            raise ValueError("vstack: col mismatch")
        return Mat(sum(m.rows for m in mats), cols, tuple(r for m in mats for r in m.data))

    @staticmethod
    def block_diag(mats: Sequence["Mat"]) -> "Mat":
        mats = [m for m in mats]
        rows = sum(m.rows for m in mats)
        cols = sum(m.cols for m in mats)
        out = [[_ZERO] * cols for _ in range(rows)]
        r0 = c0 = 0
        for m in mats:
            for i in range(m.rows):
                out[r0 + i][c0 : c0 + m.cols] = list(m.data[i])
            r0 += m.rows
            c0 += m.cols
        return Mat(rows, cols, tuple(tuple(r) for r in out))

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Mat":
        return Mat(len(row_idx), len(col_idx), tuple(tuple(self.data[i][j] for j in col_idx) for i in row_idx))

    # --- elimination --------------------------------------------------

    def rref(self) -> tuple["Mat", tuple[int, ...]]:
        """Reduced row echelon form with deterministic first-nonzero pivoting.

        Returns the RREF matrix and the tuple of pivot column indices.
        """
        work = [list(r) for r in self.data]
        pivots: list[int] = []
        pr = 0
        for pc in range(self.cols):
            if pr >= self.rows:
                break
            sel = None
            for i in range(pr, self.rows):
                if work[i][pc] != 0:
                    sel = i
                    break
            if sel is None:
                continue
            work[pr], work[sel] = work[sel], work[pr]
            inv = _ONE / work[pr][pc]
            work[pr] = [x * inv for x in work[pr]]
            for i in range(self.rows):
                if i != pr and work[i][pc] != 0:
                    c = work[i][pc]
                    work[i] = [a - c * b for a, b in zip(work[i], work[pr])]
            pivots.append(pc)
            pr += 1
        return Mat(self.rows, self.cols, tuple(tuple(r) for r in work)), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> "Mat":
        """Basis of the right kernel, returned as columns of a matrix.

        Deterministic: one basis vector per free column, in increasing free
        column order, with 1 at the free position.
        """
        R, pivots = self.rref()
        pivset = set(pivots)
        free = [j for j in range(self.cols) if j not in pivset]
        basis_cols = []
        for f in free:
            v = [_ZERO] * self.cols
            v[f] = _ONE
            for pi, pc in enumerate(pivots):
                v[pc] = -R.data[pi][f]
            basis_cols.append(v)
        if not basis_cols:
            return Mat.zeros(self.cols, 0)
        return Mat(self.cols, len(basis_cols), tuple(tuple(col[i] for col in basis_cols) for i in range(self.cols)))

    def solve(self, b: "Mat") -> "Mat | None":
        """One solution ``x`` of ``self @ x = b``, or ``None`` if inconsistent.

        Deterministic: free variables are set to zero.  ``b`` may have several
        columns; solutions are found columnwise against a single elimination.
        """
        if b.rows != self.rows:
            raise ValueError("solve: rhs row mismatch")
        aug = Mat.hstack([self, b])
        R, pivots = aug.rref()
        n = self.cols
        # any pivot in the rhs block certifies inconsistency of that column
        for pc in pivots:
            if pc >= n:
                return None
        xs = []
        for k in range(b.cols):
            x = [_ZERO] * n
            for pi, pc in enumerate(pivots):
                x[pc] = R.data[pi][n + k]
            xs.append(x)
        return Mat(n, b.cols, tuple(tuple(col[i] for col in xs) for i in range(n)))

    def inverse(self) -> "Mat | None":
        if self.rows != self.cols:
            return None
        sol = self.solve(Mat.identity(self.rows))
        if sol is None:
            return None
        if (self @ sol) != Mat.identity(self.rows):
            return None
        return sol

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    # --- misc ---------------------------------------------------------

    def flatten(self) -> tuple[Fraction, ...]:
        return tuple(x for r in self.data for x in r)

    @staticmethod
    def unflatten(rows: int, cols: int, flat: Sequence) -> "Mat":
        if len(flat) != rows * cols:
            raise ValueError("unflatten: length mismatch")
        it = iter(flat)
        return Mat(rows, cols, tuple(tuple(_q(next(it)) for _ in range(cols)) for _ in range(rows)))


class SubspaceReducer:
    """Row-reduced model of a subspace of Q^n.

    Supports membership tests and *canonical* reduction of vectors modulo the
    subspace: the reduced vector has zeros at all pivot positions, so equal
    cosets reduce to equal vectors.  Quotient coordinates are the entries at
    non-pivot positions.
    """

    def __init__(self, ambient_dim: int, spanning_rows: Iterable[Sequence]):
        rows = [tuple(_q(x) for x in r) for r in spanning_rows]
        for r in rows:
            if len(r) != ambient_dim:
                raise ValueError("spanning vector of wrong length")
        self.ambient_dim = ambient_dim
        if rows:
            R, pivots = Mat.from_rows(rows).rref()
            self._rows = R.data[: len(pivots)]
            self.pivots = pivots
        else:
            self._rows = ()
            self.pivots = ()
        pivset = set(self.pivots)
        self.free_positions = tuple(j for j in range(ambient_dim) if j not in pivset)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def quotient_dim(self) -> int:
        return self.ambient_dim - self.dim

    def reduce(self, vec: Sequence) -> tuple[Fraction, ...]:
        v = [_q(x) for x in vec]
        if len(v) != self.ambient_dim:
            raise ValueError("vector of wrong length")
        for row, pc in zip(self._rows, self.pivots):
            c = v[pc]
            if c != 0:
                for j in range(self.ambient_dim):
                    v[j] -= c * row[j]
        return tuple(v)

    def contains(self, vec: Sequence) -> bool:
        return all(x == 0 for x in self.reduce(vec))

    def quotient_coords(self, vec: Sequence) -> tuple[Fraction, ...]:
        r = self.reduce(vec)
        return tuple(r[j] for j in self.free_positions)


def minimal_polynomial(m: Mat) -> tuple[Fraction, ...]:
    """Monic minimal polynomial of a square matrix, coefficients low→high.

    Found by iterating powers of ``m`` until the first linear dependence, so
    the result is the honest minimal (not characteristic) polynomial.
    """
    if m.rows != m.cols:
        raise ValueError("minimal_polynomial: square matrix required")
    n = m.rows
    if n == 0:
        return (_ONE,)  # unit polynomial for the empty matrix
    powers = [Mat.identity(n)]
    while True:
        k = len(powers)
        # try to write m^k as a combination of lower powers
        A = Mat.hstack([Mat.column(p.flatten()) for p in powers])
        target = powers[-1] @ m
        sol = A.solve(Mat.column(target.flatten()))
        if sol is not None:
            coeffs = [-sol.data[i][0] for i in range(k)] + [_ONE]
            return tuple(coeffs)
        powers.append(target)
        if k > n:  # cannot happen (degree ≤ n); guard against bugs
            raise RuntimeError("minimal polynomial search failed to terminate")
