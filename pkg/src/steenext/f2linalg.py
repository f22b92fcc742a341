"""Dense linear algebra over F2 on bit-packed numpy arrays.

Rows are packed 64 entries per uint64 word (little-endian within a word),
so row operations are word-wide XORs.  Everything here is deterministic:
kernel bases come out in reduced echelon form with pivot columns ascending,
and solve() returns the pivot-minimal solution.
"""

from __future__ import annotations

import numpy as np

__all__ = ["F2Vector", "F2Matrix", "rank", "kernel_basis", "solve"]


def _nwords(ncols: int) -> int:
    return max(1, (ncols + 63) >> 6)


class F2Vector:
    """A fixed-length vector over F2, bit-packed into uint64 words."""

    __slots__ = ("n", "w")

    def __init__(self, n: int, words: np.ndarray | None = None):
        self.n = n
        if words is None:
            self.w = np.zeros(_nwords(n), dtype=np.uint64)
        else:
            self.w = words

    @classmethod
    def from_support(cls, n: int, bits) -> "F2Vector":
        v = cls(n)
        for b in bits:
            v.set(b)
        return v

    @classmethod
    def from_list(cls, entries) -> "F2Vector":
        v = cls(len(entries))
        for i, e in enumerate(entries):
            if e & 1:
                v.set(i)
        return v

    def get(self, i: int) -> int:
        return int((self.w[i >> 6] >> np.uint64(i & 63)) & np.uint64(1))

    def set(self, i: int, val: int = 1) -> None:
        if val & 1:
            self.w[i >> 6] |= np.uint64(1) << np.uint64(i & 63)
        else:
            self.w[i >> 6] &= ~(np.uint64(1) << np.uint64(i & 63))

    def __add__(self, other: "F2Vector") -> "F2Vector":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return F2Vector(self.n, self.w ^ other.w)

    def __eq__(self, other) -> bool:
        return isinstance(other, F2Vector) and self.n == other.n and bool(
            np.array_equal(self.w, other.w)
        )

    def __hash__(self):
        return hash((self.n, self.w.tobytes()))

    def is_zero(self) -> bool:
        return not self.w.any()

    def support(self):
        return [i for i in range(self.n) if self.get(i)]

    def to_list(self):
        return [self.get(i) for i in range(self.n)]

    def copy(self) -> "F2Vector":
        return F2Vector(self.n, self.w.copy())

    def __repr__(self):
        return f"F2Vector({self.to_list()})"


class F2Matrix:
    """Row-major bit-packed matrix over F2.

    data has shape (rows, nwords); bit j of row i lives at
    data[i, j >> 6] bit (j & 63).
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: np.ndarray | None = None):
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = np.zeros((rows, _nwords(cols)), dtype=np.uint64)
        else:
            self.data = data

    # -- constructors ----------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "F2Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        m = cls(n, n)
        for i in range(n):
            m.set(i, i)
        return m

    @classmethod
    def from_dense(cls, arr) -> "F2Matrix":
        a = np.asarray(arr, dtype=np.uint8) & 1
        if a.ndim != 2:
            raise ValueError("need a 2-d array")
        rows, cols = a.shape
        m = cls(rows, cols)
        if cols:
            padded = np.zeros((rows, _nwords(cols) * 64), dtype=np.uint8)
            padded[:, :cols] = a
            m.data = np.packbits(padded, axis=1, bitorder="little").view(np.uint64).reshape(rows, -1).copy()
        return m

    @classmethod
    def from_rows(cls, rows: list[F2Vector], cols: int | None = None) -> "F2Matrix":
        if cols is None:
            cols = rows[0].n if rows else 0
        m = cls(len(rows), cols)
        for i, r in enumerate(rows):
            m.data[i, : len(r.w)] = r.w
        return m

    # -- element access ---------------------------------------------------

    def get(self, i: int, j: int) -> int:
        return int((self.data[i, j >> 6] >> np.uint64(j & 63)) & np.uint64(1))

    def set(self, i: int, j: int, val: int = 1) -> None:
        if val & 1:
            self.data[i, j >> 6] |= np.uint64(1) << np.uint64(j & 63)
        else:
            self.data[i, j >> 6] &= ~(np.uint64(1) << np.uint64(j & 63))

    def row(self, i: int) -> F2Vector:
        return F2Vector(self.cols, self.data[i].copy())

    def to_dense(self) -> np.ndarray:
        if self.cols == 0:
            return np.zeros((self.rows, 0), dtype=np.uint8)
        bits = np.unpackbits(self.data.view(np.uint8), axis=1, bitorder="little")
        return bits[:, : self.cols]

    def copy(self) -> "F2Matrix":
        return F2Matrix(self.rows, self.cols, self.data.copy())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, F2Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.data.tobytes()))

    def __repr__(self):
        return f"F2Matrix({self.rows}x{self.cols})"

    def is_zero(self) -> bool:
        return not self.data.any()

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "F2Matrix") -> "F2Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return F2Matrix(self.rows, self.cols, self.data ^ other.data)

    def mul_vec(self, v: F2Vector) -> F2Vector:
        """Matrix-vector product m @ v (v indexed by columns)."""
        if v.n != self.cols:
            raise ValueError(f"dimension mismatch: {self.cols} cols vs vector of length {v.n}")
        out = F2Vector(self.rows)
        if self.rows == 0 or self.cols == 0:
            return out
        parity = np.bitwise_count(self.data & v.w[None, :]).sum(axis=1) & 1
        for i in np.nonzero(parity)[0]:
            out.set(int(i))
        return out

    def matmul(self, other: "F2Matrix") -> "F2Matrix":
        """Matrix product self @ other over F2."""
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = F2Matrix(self.rows, other.cols)
        for k in range(self.cols):
            w, b = k >> 6, np.uint64(1) << np.uint64(k & 63)
            mask = (self.data[:, w] & b).astype(bool)
            if mask.any():
                out.data[mask] ^= other.data[k]
        return out

    def transpose(self) -> "F2Matrix":
        return F2Matrix.from_dense(self.to_dense().T)

    def stack(self, other: "F2Matrix") -> "F2Matrix":
        """Vertical stack (same column count)."""
        if self.cols != other.cols:
            raise ValueError("column mismatch")
        out = F2Matrix(self.rows + other.rows, self.cols)
        out.data[: self.rows, : self.data.shape[1]] = self.data
        out.data[self.rows :, : other.data.shape[1]] = other.data
        return out

    # -- reduction ----------------------------------------------------------

    def rref(self) -> tuple["F2Matrix", list[int]]:
        """Reduced row echelon form; returns (R, pivot column list)."""
        R = self.copy()
        pivots: list[int] = []
        r = 0
        data = R.data
        for col in range(R.cols):
            if r >= R.rows:
                break
            w, bbit = col >> 6, np.uint64(1) << np.uint64(col & 63)
            colbits = (data[r:, w] & bbit).astype(bool)
            nz = np.nonzero(colbits)[0]
            if nz.size == 0:
                continue
            p = r + int(nz[0])
            if p != r:
                data[[r, p]] = data[[p, r]]
            mask = (data[:, w] & bbit).astype(bool)
            mask[r] = False
            if mask.any():
                data[mask] ^= data[r]
            pivots.append(col)
            r += 1
        return R, pivots


def rank(m: F2Matrix) -> int:
    """F2 rank of a matrix."""
    _, pivots = m.rref()
    return len(pivots)


def kernel_basis(m: F2Matrix) -> list[F2Vector]:
    """Canonical basis of ker(m): reduced echelon, pivot columns ascending."""
    R, pivots = m.rref()
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    vecs = []
    for f in free:
        v = F2Vector(m.cols)
        v.set(f)
        for i, p in enumerate(pivots):
            if R.get(i, f):
                v.set(p)
        vecs.append(v)
    if not vecs:
        return []
    # normalize to the unique RREF basis of the kernel subspace
    K = F2Matrix.from_rows(vecs, m.cols)
    KR, kpiv = K.rref()
    return [KR.row(i) for i in range(len(kpiv))]


def solve(m: F2Matrix, b: F2Vector) -> F2Vector | None:
    """Solve m @ x = b; returns the pivot-minimal solution or None.

    The canonical solution is supported on pivot columns only (free
    variables zero), so identical systems give identical answers.
    """
    if b.n != m.rows:
        raise ValueError(f"dimension mismatch: {m.rows} rows vs rhs of length {b.n}")
    aug = F2Matrix(m.rows, m.cols + 1)
    aug.data[:, : m.data.shape[1]] = m.data
    for i in range(m.rows):
        if b.get(i):
            aug.set(i, m.cols)
    R, pivots = aug.rref()
    if pivots and pivots[-1] == m.cols:
        return None
    x = F2Vector(m.cols)
    for i, p in enumerate(pivots):
        if R.get(i, m.cols):
            x.set(p)
    return x


def solve_matrix(m: F2Matrix, rhs: F2Matrix) -> F2Matrix | None:
    """Solve m @ X = rhs columnwise; None if any column is unsolvable."""
    if rhs.rows != m.rows:
        raise ValueError("dimension mismatch")
    k = rhs.cols
    aug = F2Matrix(m.rows, m.cols + k)
    aug.data[:, : m.data.shape[1]] = m.data
    dense_rhs = rhs.to_dense()
    for i in range(m.rows):
        for j in range(k):
            if dense_rhs[i, j]:
                aug.set(i, m.cols + j)
    R, pivots = aug.rref()
    if pivots and pivots[-1] >= m.cols:
        return None
    out = F2Matrix(m.cols, k)
    for i, p in enumerate(pivots):
        for j in range(k):
            if R.get(i, m.cols + j):
                out.set(p, j)
    return out


class RowSpan:
    """Incrementally maintained echelon row span (for image/span tracking)."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def _leading(self, w: np.ndarray) -> int:
        nz = np.nonzero(w)[0]
        if nz.size == 0:
            return -1
        word = int(nz[0])
        bit = int(w[word])
        return (word << 6) + ((bit & -bit).bit_length() - 1)

    def reduce(self, vec: np.ndarray) -> np.ndarray:
        """Reduce a packed row against the span (returns the residue)."""
        w = vec.copy()
        for p, r in zip(self.pivots, self.rows):
            if (w[p >> 6] >> np.uint64(p & 63)) & np.uint64(1):
                w ^= r
        return w

    def add(self, vec: np.ndarray) -> bool:
        """Insert a packed row; returns True if it enlarged the span."""
        w = self.reduce(vec)
        lead = self._leading(w)
        if lead < 0:
            return False
        for i, (p, r) in enumerate(zip(self.pivots, self.rows)):
            if (r[lead >> 6] >> np.uint64(lead & 63)) & np.uint64(1):
                self.rows[i] = r ^ w
        self.rows.append(w)
        self.pivots.append(lead)
        return True

    def contains(self, vec: np.ndarray) -> bool:
        return self._leading(self.reduce(vec)) < 0

    @property
    def dim(self) -> int:
        return len(self.rows)
