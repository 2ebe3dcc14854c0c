"""
Dense exact linear algebra over Q(zeta_L).

Matrices are immutable and stored row-major as tuples of CycNum. All
elimination skips zero entries, which keeps the (mostly monomial) matrices of
canonical representations cheap to work with.

Rank and span computations reduce rows without dividing whenever the pivot
is not cheaply invertible (a * row - b * pivot_row instead of
row - (b / a) * pivot_row); this leaves ranks unchanged and avoids extended
Euclid in large cyclotomic fields. Kernels use full Gauss-Jordan with exact
field inversion. Pivots are always the first nonzero entry in column order.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .cyclotomic import CycNum, change_order, rational
from .errors import DimensionMismatch, OrderMismatch, Singular
from .numtheory import euler_phi

# Above this field degree a pivot without a cheap unit form is not inverted.
_INVERT_PHI_LIMIT = 48


def _entry(x, order: int) -> CycNum:
    if isinstance(x, CycNum):
        if x.order != order:
            raise OrderMismatch(f"entry of order {x.order} in a matrix of order {order}")
        return x
    return rational(x, order)


class CycVector:
    __slots__ = ("order", "entries")

    def __init__(self, order: int, entries: Iterable):
        self.order = order
        self.entries = tuple(_entry(x, order) for x in entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> CycNum:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycVector):
            return NotImplemented
        return self.order == other.order and self.entries == other.entries

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __repr__(self) -> str:
        return f"CycVector({self.order}, [{', '.join(map(str, self.entries))}])"


class CycMatrix:
    """Immutable rows x cols matrix with entries in Q(zeta_order)."""

    __slots__ = ("rows", "cols", "order", "entries")

    def __init__(self, rows: int, cols: int, order: int, entries: Iterable):
        entries = tuple(_entry(x, order) for x in entries)
        if rows < 1 or cols < 1 or len(entries) != rows * cols:
            raise DimensionMismatch(
                f"{len(entries)} entries cannot fill a {rows}x{cols} matrix"
            )
        self.rows = rows
        self.cols = cols
        self.order = order
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], order: int | None = None) -> CycMatrix:
        if order is None:
            orders = {x.order for row in rows for x in row if isinstance(x, CycNum)}
            if len(orders) > 1:
                raise OrderMismatch(f"mixed entry orders {sorted(orders)}")
            order = orders.pop() if orders else 1
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), widths.pop(), order, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int, order: int = 1) -> CycMatrix:
        one, zero = rational(1, order), rational(0, order)
        return cls(n, n, order, [one if i == j else zero for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int, order: int = 1) -> CycMatrix:
        zero = rational(0, order)
        return cls(rows, cols, order, [zero] * (rows * cols))

    @classmethod
    def diagonal_matrix(cls, diag: Sequence[CycNum], order: int) -> CycMatrix:
        n = len(diag)
        zero = rational(0, order)
        ents = [zero] * (n * n)
        for i, d in enumerate(diag):
            ents[i * n + i] = d
        return cls(n, n, order, ents)

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> CycNum:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[CycNum, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[CycNum]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def flatten(self) -> CycVector:
        return CycVector(self.order, self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_diagonal(self) -> bool:
        return all(
            not x for k, x in enumerate(self.entries) if k // self.cols != k % self.cols
        )

    def diagonal(self) -> list[CycNum]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    def is_identity(self) -> bool:
        return self.is_square() and self.is_diagonal() and all(d == 1 for d in self.diagonal())

    def scalar_value(self) -> CycNum | None:
        """The scalar s when self == s * identity, else None."""
        if not (self.is_square() and self.is_diagonal()):
            return None
        d = self.diagonal()
        return d[0] if all(x == d[0] for x in d[1:]) else None

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.order == other.order
            and self.entries == other.entries
        )

    __hash__ = None

    # arithmetic

    def _check_same(self, other: CycMatrix):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")
        if self.order != other.order:
            raise OrderMismatch(f"orders {self.order} and {other.order} differ")

    def __add__(self, other: CycMatrix) -> CycMatrix:
        self._check_same(other)
        return CycMatrix(self.rows, self.cols, self.order,
                         [x + y for x, y in zip(self.entries, other.entries)])

    def __sub__(self, other: CycMatrix) -> CycMatrix:
        self._check_same(other)
        return CycMatrix(self.rows, self.cols, self.order,
                         [x - y for x, y in zip(self.entries, other.entries)])

    def __neg__(self) -> CycMatrix:
        return CycMatrix(self.rows, self.cols, self.order, [-x for x in self.entries])

    def scale(self, c) -> CycMatrix:
        c = _entry(c, self.order)
        return CycMatrix(self.rows, self.cols, self.order, [c * x for x in self.entries])

    def __matmul__(self, other: CycMatrix) -> CycMatrix:
        return mat_mul(self, other)

    def apply(self, v: CycVector) -> CycVector:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.cols} columns")
        if v.order != self.order:
            raise OrderMismatch(f"orders {self.order} and {v.order} differ")
        out = []
        for i in range(self.rows):
            acc = rational(0, self.order)
            for x, y in zip(self.row(i), v.entries):
                if x and y:
                    acc = acc + x * y
            out.append(acc)
        return CycVector(self.order, out)

    def transpose(self) -> CycMatrix:
        return CycMatrix(self.cols, self.rows, self.order,
                         [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def change_order(self, M: int) -> CycMatrix:
        return CycMatrix(self.rows, self.cols, M, [change_order(x, M) for x in self.entries])

    def to_complex(self) -> list[list[complex]]:
        return [[x.to_complex() for x in self.row(i)] for i in range(self.rows)]

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"CycMatrix({self.rows}x{self.cols}, L={self.order}, [{body}])"


def mat_mul(X: CycMatrix, Y: CycMatrix) -> CycMatrix:
    if X.cols != Y.rows:
        raise DimensionMismatch(f"cannot multiply {X.shape} by {Y.shape}")
    if X.order != Y.order:
        raise OrderMismatch(f"orders {X.order} and {Y.order} differ")
    n, m, L = X.rows, Y.cols, X.order
    y_rows = [[(j, y) for j, y in enumerate(Y.row(k)) if y] for k in range(Y.rows)]
    zero = rational(0, L)
    out = [zero] * (n * m)
    for i in range(n):
        acc: dict[int, CycNum] = {}
        for k, x in enumerate(X.row(i)):
            if not x:
                continue
            for j, y in y_rows[k]:
                prod = x * y
                acc[j] = acc[j] + prod if j in acc else prod
        for j, v in acc.items():
            out[i * m + j] = v
    return CycMatrix(n, m, L, out)


def mat_inverse(X: CycMatrix) -> CycMatrix:
    """Gauss-Jordan inverse; raises Singular."""
    if not X.is_square():
        raise DimensionMismatch(f"cannot invert a {X.rows}x{X.cols} matrix")
    n, L = X.rows, X.order
    one = rational(1, L)
    rows = []
    for i in range(n):
        r = {j: x for j, x in enumerate(X.row(i)) if x}
        r[n + i] = one
        rows.append(r)
    for col in range(n):
        piv = next((r for r in range(col, n) if col in rows[r]), None)
        if piv is None:
            raise Singular("matrix is singular")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = rows[col][col].inverse()
        prow = {j: v * inv for j, v in rows[col].items()}
        rows[col] = prow
        for r in range(n):
            if r != col and col in rows[r]:
                rows[r] = _axpy(rows[r], rows[r][col], prow)
    zero = rational(0, L)
    return CycMatrix(n, n, L, [rows[i].get(n + j, zero) for i in range(n) for j in range(n)])


def mat_pow(X: CycMatrix, k: int) -> CycMatrix:
    """X**k by square-and-multiply; negative k inverts first."""
    if not X.is_square():
        raise DimensionMismatch(f"cannot take powers of a {X.rows}x{X.cols} matrix")
    base = X
    if k < 0:
        base, k = mat_inverse(X), -k
    out = CycMatrix.identity(X.rows, X.order)
    while k:
        if k & 1:
            out = mat_mul(out, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return out


# -- elimination --------------------------------------------------------------


def _axpy(row: dict, b: CycNum, pivot_row: dict) -> dict:
    """row - b * pivot_row, dropping zeros."""
    out = dict(row)
    for j, v in pivot_row.items():
        t = b * v
        if j in out:
            s = out[j] - t
            if s:
                out[j] = s
            else:
                del out[j]
        else:
            out[j] = -t
    return out


def _cheap_inverse(x: CycNum) -> CycNum | None:
    if x.unit_form() is not None or euler_phi(x.order) <= _INVERT_PHI_LIMIT:
        return x.inverse()
    return None


class EchelonBasis:
    """Incrementally maintained row-echelon basis of a subspace of Q(zeta_L)^n.

    Rows are sparse dicts keyed by column; each row's pivot is its smallest
    column and no two rows share a pivot.
    """

    def __init__(self, length: int, order: int):
        self.length = length
        self.order = order
        self._rows: dict[int, dict[int, CycNum]] = {}

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def full(self) -> bool:
        return len(self._rows) == self.length

    def _reduce(self, vec: dict[int, CycNum]) -> dict[int, CycNum]:
        while vec:
            c = min(vec)
            row = self._rows.get(c)
            if row is None:
                return vec
            b, a = vec[c], row[c]
            if a == 1:
                vec = _axpy(vec, b, row)
            else:
                vec = _axpy({j: a * v for j, v in vec.items()}, b, row)
        return vec

    def add(self, vector: Iterable[CycNum]) -> bool:
        """Insert a vector; True when it enlarged the span."""
        vec = self._sparse(vector)
        vec = self._reduce(vec)
        if not vec:
            return False
        c = min(vec)
        inv = _cheap_inverse(vec[c])
        if inv is not None:
            vec = {j: v * inv for j, v in vec.items()}
        self._rows[c] = vec
        return True

    def contains(self, vector: Iterable[CycNum]) -> bool:
        return not self._reduce(self._sparse(vector))

    def _sparse(self, vector: Iterable) -> dict[int, CycNum]:
        vec = {}
        for j, x in enumerate(vector):
            if isinstance(x, CycNum) and x.order != self.order:
                raise OrderMismatch(f"entry of order {x.order}, basis of order {self.order}")
            if x:
                vec[j] = _entry(x, self.order)
        return vec


def rank(X: CycMatrix) -> int:
    basis = EchelonBasis(X.cols, X.order)
    for i in range(X.rows):
        basis.add(X.row(i))
        if basis.full:
            break
    return len(basis)


def kernel_basis(X: CycMatrix) -> list[CycVector]:
    """Basis of the right null space {v : X v = 0}, one vector per free column."""
    n, L = X.cols, X.order
    rows = [{j: x for j, x in enumerate(X.row(i)) if x} for i in range(X.rows)]
    rows = [r for r in rows if r]
    pivots: list[int] = []
    top = 0
    for col in range(n):
        piv = next((r for r in range(top, len(rows)) if col in rows[r]), None)
        if piv is None:
            continue
        rows[top], rows[piv] = rows[piv], rows[top]
        inv = rows[top][col].inverse()
        prow = {j: v * inv for j, v in rows[top].items()}
        rows[top] = prow
        for r in range(len(rows)):
            if r != top and col in rows[r]:
                rows[r] = _axpy(rows[r], rows[r][col], prow)
        pivots.append(col)
        top += 1
        if top == len(rows):
            break
    zero, one = rational(0, L), rational(1, L)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = [zero] * n
        v[free] = one
        for r, pc in enumerate(pivots):
            x = rows[r].get(free)
            if x:
                v[pc] = -x
        basis.append(CycVector(L, v))
    return basis


def span_dimension(generators: Sequence[CycMatrix]) -> int:
    """Dimension of the linear span of the matrices, viewed as flat vectors."""
    if not generators:
        return 0
    shape, order = generators[0].shape, generators[0].order
    basis = EchelonBasis(shape[0] * shape[1], order)
    for g in generators:
        if g.shape != shape:
            raise DimensionMismatch(f"generator of shape {g.shape}, expected {shape}")
        if g.order != order:
            raise OrderMismatch(f"generator of order {g.order}, expected {order}")
        basis.add(g.entries)
    return len(basis)
