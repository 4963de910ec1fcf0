# integer_matrix.py

import logging
from dataclasses import dataclass
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

import config

logger = logging.getLogger(__name__)


class SparseIntMatrix:
    """
    Exact integer matrix stored column-wise ({col: {row: value}}), zero entries
    never stored. Python ints throughout, so entries never overflow.
    """
    __slots__ = ("nrows", "ncols", "_columns")

    def __init__(self, nrows: int, ncols: int, columns: Optional[Dict[int, Dict[int, int]]] = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.nrows = nrows
        self.ncols = ncols
        self._columns: Dict[int, Dict[int, int]] = {}
        for c, col in (columns or {}).items():
            for r, v in col.items():
                self[r, c] = v

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "SparseIntMatrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if nrows else 0
        matrix = cls(nrows, ncols)
        for r, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows in dense matrix")
            for c, v in enumerate(row):
                if v:
                    matrix._columns.setdefault(c, {})[r] = int(v)
        return matrix

    @classmethod
    def from_triplets(cls, nrows: int, ncols: int, triplets: Iterable[Tuple[int, int, int]]) -> "SparseIntMatrix":
        matrix = cls(nrows, ncols)
        for r, c, v in triplets:
            matrix[r, c] = matrix[r, c] + v
        return matrix

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def nnz(self) -> int:
        return sum(len(col) for col in self._columns.values())

    def __getitem__(self, key: Tuple[int, int]) -> int:
        r, c = key
        return self._columns.get(c, {}).get(r, 0)

    def __setitem__(self, key: Tuple[int, int], value: int) -> None:
        r, c = key
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise IndexError(f"entry ({r}, {c}) outside a {self.nrows}x{self.ncols} matrix")
        value = int(value)
        if value:
            self._columns.setdefault(c, {})[r] = value
        else:
            col = self._columns.get(c)
            if col is not None:
                col.pop(r, None)
                if not col:
                    del self._columns[c]

    def column(self, c: int) -> Dict[int, int]:
        return dict(self._columns.get(c, {}))

    def triplets(self) -> List[Tuple[int, int, int]]:
        """Nonzero entries sorted by (row, col)."""
        return sorted((r, c, v) for c, col in self._columns.items() for r, v in col.items())

    def is_zero(self) -> bool:
        return not self._columns

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((self.nrows, self.ncols), dtype=object)
        for c, col in self._columns.items():
            for r, v in col.items():
                dense[r, c] = v
        return dense

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix.from_triplets(self.ncols, self.nrows, ((c, r, v) for r, c, v in self.triplets()))

    def permuted(self, row_order: Sequence[int], col_order: Sequence[int]) -> "SparseIntMatrix":
        """Row i of the result is row row_order[i] of self (same for columns)."""
        row_pos = {old: new for new, old in enumerate(row_order)}
        col_pos = {old: new for new, old in enumerate(col_order)}
        return SparseIntMatrix.from_triplets(
            self.nrows, self.ncols, ((row_pos[r], col_pos[c], v) for r, c, v in self.triplets()))

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        result: Dict[int, Dict[int, int]] = {}
        for c, col in other._columns.items():
            acc: Dict[int, int] = {}
            for k, w in col.items():
                for r, v in self._columns.get(k, {}).items():
                    acc[r] = acc.get(r, 0) + v * w
            acc = {r: v for r, v in acc.items() if v}
            if acc:
                result[c] = acc
        return SparseIntMatrix(self.nrows, other.ncols, result)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._columns == other._columns

    def __repr__(self) -> str:
        return f"SparseIntMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"

    # --- Triplet text format ---

    def to_triplet_text(self) -> str:
        """
        Header line `<nrows> <ncols> <nnz>`, then one `<row> <col> <value>` line per
        nonzero entry (0-based, sorted by row then column). Lines starting with '#'
        are comments.
        """
        lines = [f"{self.nrows} {self.ncols} {self.nnz}"]
        lines += [f"{r} {c} {v}" for r, c, v in self.triplets()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_triplet_text(cls, text: str) -> "SparseIntMatrix":
        rows = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
        if not rows or len(rows[0]) != 3:
            raise ValueError("triplet text needs a '<nrows> <ncols> <nnz>' header")
        nrows, ncols, nnz = (int(x) for x in rows[0])
        body = rows[1:]
        if len(body) != nnz:
            raise ValueError(f"header announces {nnz} entries, found {len(body)}")
        return cls.from_triplets(nrows, ncols, ((int(r), int(c), int(v)) for r, c, v in body))


# --- Smith normal form (dense, with transforms) ---

@dataclass
class SmithForm:
    """U @ A @ V == D with U, V unimodular and D diagonal with d_1 | d_2 | ..."""
    D: np.ndarray
    U: np.ndarray
    V: np.ndarray

    def diagonal(self) -> List[int]:
        n = min(self.D.shape)
        return [int(self.D[i, i]) for i in range(n)]

    def invariant_factors(self) -> List[int]:
        return [d for d in self.diagonal() if d != 0]


def _min_abs_entry(D: np.ndarray, t: int) -> Optional[Tuple[int, int]]:
    best = None
    best_abs = 0
    m, n = D.shape
    for i in range(t, m):
        for j in range(t, n):
            v = D[i, j]
            if v != 0 and (best is None or abs(v) < best_abs):
                best, best_abs = (i, j), abs(v)
                if best_abs == 1:
                    return best
    return best


def smith_normal_form(A) -> SmithForm:
    """
    Smith normal form by repeated minimal-pivot elimination. When a pivot leaves
    a remainder, the smallest remainder becomes the new pivot; once row and
    column are clear, an entry not divisible by the pivot is folded into the
    pivot row so the divisibility chain holds.
    """
    D = np.array(A, dtype=object)
    if D.ndim != 2:
        D = D.reshape((0, 0)) if D.size == 0 else D.reshape((1, -1))
    m, n = D.shape
    U = np.eye(m, dtype=object) if m else np.zeros((0, 0), dtype=object)
    V = np.eye(n, dtype=object) if n else np.zeros((0, 0), dtype=object)
    # np.eye(dtype=object) holds Python ints 0/1, so arithmetic stays exact
    for t in range(min(m, n)):
        pivot = _min_abs_entry(D, t)
        if pivot is None:
            break
        _move_pivot(D, U, V, t, pivot)
        while True:
            p = D[t, t]
            for i in range(t + 1, m):
                if D[i, t] != 0:
                    q = D[i, t] // p
                    D[i, :] -= q * D[t, :]
                    U[i, :] -= q * U[t, :]
            for j in range(t + 1, n):
                if D[t, j] != 0:
                    q = D[t, j] // p
                    D[:, j] -= q * D[:, t]
                    V[:, j] -= q * V[:, t]
            leftover = _min_in_cross(D, t)
            if leftover is not None:
                _move_pivot(D, U, V, t, leftover)
                continue
            offender = _first_non_multiple(D, t)
            if offender is None:
                break
            # Row t picks up an entry not divisible by the pivot
            D[t, :] += D[offender, :]
            U[t, :] += U[offender, :]
        if D[t, t] < 0:
            D[t, :] *= -1
            U[t, :] *= -1
    return SmithForm(D, U, V)


def _move_pivot(D, U, V, t: int, position: Tuple[int, int]) -> None:
    i, j = position
    if i != t:
        D[[t, i], :] = D[[i, t], :]
        U[[t, i], :] = U[[i, t], :]
    if j != t:
        D[:, [t, j]] = D[:, [j, t]]
        V[:, [t, j]] = V[:, [j, t]]


def _min_in_cross(D, t: int) -> Optional[Tuple[int, int]]:
    m, n = D.shape
    candidates = [(i, t) for i in range(t + 1, m) if D[i, t] != 0]
    candidates += [(t, j) for j in range(t + 1, n) if D[t, j] != 0]
    if not candidates:
        return None
    return min(candidates, key=lambda pos: abs(D[pos]))


def _first_non_multiple(D, t: int) -> Optional[int]:
    m, n = D.shape
    p = D[t, t]
    for i in range(t + 1, m):
        for j in range(t + 1, n):
            if D[i, j] % p != 0:
                return i
    return None


def is_smith_normal_form(D) -> bool:
    D = np.asarray(D, dtype=object)
    m, n = D.shape
    for i in range(m):
        for j in range(n):
            if i != j and D[i, j] != 0:
                return False
    diag = [D[i, i] for i in range(min(m, n))]
    if any(d < 0 for d in diag):
        return False
    seen_zero = False
    for a, b in zip(diag, diag[1:]):
        if a == 0:
            seen_zero = True
        if seen_zero and b != 0:
            return False
        if a != 0 and b % a != 0:
            return False
    return True


def exact_determinant(M) -> int:
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    A = [[int(x) for x in row] for row in np.asarray(M, dtype=object)]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


# --- Invariant factors (sparse elimination, no transforms) ---

def _normalize_diagonal(values: List[int]) -> List[int]:
    """Turns a diagonal presentation into a divisibility chain (gcd/lcm swaps)."""
    d = sorted(abs(v) for v in values if v)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] * d[j] // g
    return d


class _SparseEliminator:
    """Row/column elimination over dict-of-rows storage with column indices."""

    def __init__(self, matrix: SparseIntMatrix):
        self.rows: Dict[int, Dict[int, int]] = {}
        self.cols: Dict[int, set] = {}
        for r, c, v in matrix.triplets():
            self.rows.setdefault(r, {})[c] = v
            self.cols.setdefault(c, set()).add(r)

    def _set(self, r: int, c: int, value: int) -> None:
        if value:
            self.rows.setdefault(r, {})[c] = value
            self.cols.setdefault(c, set()).add(r)
        else:
            row = self.rows.get(r)
            if row is not None and c in row:
                del row[c]
                if not row:
                    del self.rows[r]
            col = self.cols.get(c)
            if col is not None:
                col.discard(r)
                if not col:
                    del self.cols[c]

    def row_axpy(self, target: int, coef: int, source: int) -> None:
        for c, v in list(self.rows.get(source, {}).items()):
            self._set(target, c, self.rows.get(target, {}).get(c, 0) + coef * v)

    def col_axpy(self, target: int, coef: int, source: int) -> None:
        for r in list(self.cols.get(source, ())):
            v = self.rows[r][source]
            self._set(r, target, self.rows.get(r, {}).get(target, 0) + coef * v)

    def choose_pivot(self) -> Tuple[int, int]:
        best = None
        best_key = None
        for r, row in self.rows.items():
            for c, v in row.items():
                key = (abs(v), len(row) * len(self.cols[c]))
                if best_key is None or key < best_key:
                    best, best_key = (r, c), key
        return best

    def drop(self, r: int, c: int) -> None:
        for cc in list(self.rows.get(r, {})):
            self._set(r, cc, 0)
        for rr in list(self.cols.get(c, ())):
            self._set(rr, c, 0)

    def run(self) -> List[int]:
        pivots: List[int] = []
        while self.rows:
            r, c = self.choose_pivot()
            while True:
                p = self.rows[r][c]
                for r2 in [x for x in self.cols.get(c, ()) if x != r]:
                    self.row_axpy(r2, -(self.rows[r2][c] // p), r)
                for c2 in [x for x in self.rows.get(r, {}) if x != c]:
                    self.col_axpy(c2, -(self.rows[r][c2] // p), c)
                cross = [(x, c) for x in self.cols.get(c, ()) if x != r]
                cross += [(r, x) for x in self.rows.get(r, {}) if x != c]
                if not cross:
                    break
                r, c = min(cross, key=lambda pos: abs(self.rows[pos[0]][pos[1]]))
            pivots.append(abs(self.rows[r][c]))
            self.drop(r, c)
        return pivots


def invariant_factors(matrix: SparseIntMatrix, dense_threshold: Optional[int] = None) -> List[int]:
    """
    Nonzero invariant factors (divisibility chain, units included); their count
    is the rank. Small matrices take the dense Smith path, larger ones the
    sparse elimination path.
    """
    threshold = config.DENSE_THRESHOLD if dense_threshold is None else dense_threshold
    if matrix.is_zero():
        return []
    if matrix.nrows <= threshold and matrix.ncols <= threshold:
        return smith_normal_form(matrix.to_dense()).invariant_factors()
    logger.debug(f"Sparse elimination on {matrix!r}")
    return _normalize_diagonal(_SparseEliminator(matrix).run())
