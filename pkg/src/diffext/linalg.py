"""Square matrices over K = Q(t1..tm) or GF(2)(t)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import ArityMismatch, ShapeError
from .field import Derivation, Field, RatFunc


class MatrixK:
    """Immutable n x n matrix of :class:`RatFunc` entries, row-major."""

    __slots__ = ("field", "rows", "_hash")

    def __init__(self, field: Field, rows: Iterable[Iterable]):
        rows = tuple(tuple(field(x) for x in row) for row in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ShapeError("matrix must be square and non-empty")
        self.field = field
        self.rows = rows
        self._hash = None

    @classmethod
    def _raw(cls, field, rows):
        obj = cls.__new__(cls)
        obj.field, obj.rows, obj._hash = field, rows, None
        return obj

    @classmethod
    def identity(cls, field: Field, n: int) -> "MatrixK":
        z, o = field.zero, field.one
        return cls._raw(field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, field: Field, n: int) -> "MatrixK":
        z = field.zero
        return cls._raw(field, tuple((z,) * n for _ in range(n)))

    @classmethod
    def diag(cls, field: Field, entries: Sequence) -> "MatrixK":
        n = len(entries)
        z = field.zero
        return cls._raw(
            field,
            tuple(tuple(field(entries[i]) if i == j else z for j in range(n)) for i in range(n)),
        )

    @classmethod
    def unit(cls, field: Field, n: int, i: int, j: int) -> "MatrixK":
        """Matrix unit E_ij (0-based)."""
        z, o = field.zero, field.one
        return cls._raw(
            field, tuple(tuple(o if (r, c) == (i, j) else z for c in range(n)) for r in range(n))
        )

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence[RatFunc]]) -> "MatrixK":
        n = len(cols)
        return cls._raw(field, tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def _check(self, other: "MatrixK"):
        if not isinstance(other, MatrixK):
            raise TypeError(f"expected MatrixK, got {type(other).__name__}")
        if other.field != self.field:
            raise ArityMismatch(f"{self.field} vs {other.field}")
        if other.n != self.n:
            raise ShapeError(f"size {self.n} vs {other.n}")

    def __eq__(self, other):
        if not isinstance(other, MatrixK):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __add__(self, other: "MatrixK") -> "MatrixK":
        self._check(other)
        return MatrixK._raw(
            self.field, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )

    def __neg__(self) -> "MatrixK":
        return MatrixK._raw(self.field, tuple(tuple(-a for a in r) for r in self.rows))

    def __sub__(self, other: "MatrixK") -> "MatrixK":
        return self + (-other)

    def __mul__(self, other) -> "MatrixK":
        if isinstance(other, MatrixK):
            self._check(other)
            cols = list(zip(*other.rows))
            zero = self.field.zero
            out = []
            for r in self.rows:
                nz = [(k, a) for k, a in enumerate(r) if not a.is_zero()]
                row = []
                for c in cols:
                    acc = zero
                    for k, a in nz:
                        b = c[k]
                        if not b.is_zero():
                            acc = acc + a * b
                    row.append(acc)
                out.append(tuple(row))
            return MatrixK._raw(self.field, tuple(out))
        s = self.field(other)
        return MatrixK._raw(self.field, tuple(tuple(s * a for a in r) for r in self.rows))

    def __rmul__(self, other) -> "MatrixK":
        s = self.field(other)
        return MatrixK._raw(self.field, tuple(tuple(s * a for a in r) for r in self.rows))

    def __pow__(self, k: int) -> "MatrixK":
        if k < 0:
            inv = self.inverse()
            if inv is None:
                raise ZeroDivisionError("singular matrix")
            return inv ** (-k)
        out = MatrixK.identity(self.field, self.n)
        for _ in range(k):
            out = out * self
        return out

    def apply(self, vec: Sequence[RatFunc]) -> tuple[RatFunc, ...]:
        """Matrix-vector product."""
        if len(vec) != self.n:
            raise ShapeError(f"vector of length {len(vec)} for {self.n}x{self.n} matrix")
        zero = self.field.zero
        out = []
        for r in self.rows:
            acc = zero
            for a, x in zip(r, vec):
                if not a.is_zero() and not x.is_zero():
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def column(self, j: int) -> tuple[RatFunc, ...]:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "MatrixK":
        return MatrixK._raw(self.field, tuple(zip(*self.rows)))

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.rows for a in r)

    def is_identity(self) -> bool:
        return all(
            (a.is_one() if i == j else a.is_zero())
            for i, r in enumerate(self.rows)
            for j, a in enumerate(r)
        )

    def is_diagonal(self) -> bool:
        return all(a.is_zero() for i, r in enumerate(self.rows) for j, a in enumerate(r) if i != j)

    def block(self, rows: range, cols: range) -> tuple[tuple[RatFunc, ...], ...]:
        return tuple(tuple(self.rows[i][j] for j in cols) for i in rows)

    def submatrix(self, idx: range) -> "MatrixK":
        """Principal square block on the given index range."""
        return MatrixK._raw(self.field, self.block(idx, idx))

    def trace(self) -> RatFunc:
        return trace(self)

    def det(self) -> RatFunc:
        return det(self)

    def inverse(self) -> Optional["MatrixK"]:
        return inverse(self)

    def flatten(self) -> tuple[RatFunc, ...]:
        return tuple(a for r in self.rows for a in r)

    @classmethod
    def unflatten(cls, field: Field, n: int, coords: Sequence[RatFunc]) -> "MatrixK":
        if len(coords) != n * n:
            raise ShapeError(f"{len(coords)} coordinates for {n}x{n} matrix")
        return cls._raw(field, tuple(tuple(coords[i * n:(i + 1) * n]) for i in range(n)))

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.rows) + "]"

    def __repr__(self):
        return f"MatrixK{self}"


def mat_arith(A: MatrixK, B: MatrixK, op: str) -> MatrixK:
    if op == "add":
        return A + B
    if op == "mul":
        return A * B
    raise ValueError(f"unknown op {op!r}")


def trace(A: MatrixK) -> RatFunc:
    acc = A.field.zero
    for i in range(A.n):
        acc = acc + A.rows[i][i]
    return acc


def det(A: MatrixK) -> RatFunc:
    """Determinant by Bareiss fraction-free elimination."""
    n = A.n
    M = [list(r) for r in A.rows]
    sign = 1
    prev = A.field.one
    for k in range(n - 1):
        if M[k][k].is_zero():
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return A.field.zero
        pivot = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pivot - mik * M[k][j]) / prev
            M[i][k] = A.field.zero
        prev = pivot
    d = M[n - 1][n - 1]
    return d if sign == 1 else -d


def inverse(A: MatrixK) -> Optional[MatrixK]:
    """Gauss-Jordan inverse, or None when A is singular."""
    n = A.n
    field = A.field
    one, zero = field.one, field.zero
    M = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(A.rows)]
    for k in range(n):
        p = next((i for i in range(k, n) if not M[i][k].is_zero()), None)
        if p is None:
            return None
        M[k], M[p] = M[p], M[k]
        inv = M[k][k].inverse()
        M[k] = [x * inv for x in M[k]]
        for i in range(n):
            if i != k and not M[i][k].is_zero():
                f = M[i][k]
                M[i] = [x - f * y if not y.is_zero() else x for x, y in zip(M[i], M[k])]
    return MatrixK._raw(field, tuple(tuple(r[n:]) for r in M))


def det_inv_trace(A: MatrixK) -> tuple[RatFunc, Optional[MatrixK], RatFunc]:
    d = det(A)
    return d, (None if d.is_zero() else inverse(A)), trace(A)


def mat_derive(d: Derivation, A: MatrixK) -> MatrixK:
    """Apply a derivation entry-wise."""
    if d.field != A.field:
        raise ArityMismatch(f"derivation over {d.field}, matrix over {A.field}")
    return MatrixK._raw(A.field, tuple(tuple(d(a) for a in r) for r in A.rows))


@dataclass(frozen=True)
class FlagSpec:
    """Block sizes of W = K + End(V) + K; the flag is the chain of leading blocks."""

    sizes: tuple[int, ...]

    @classmethod
    def for_dim(cls, n: int) -> "FlagSpec":
        return cls((1, n * n, 1))

    @property
    def dim(self) -> int:
        return sum(self.sizes)

    def offsets(self) -> list[int]:
        out, acc = [], 0
        for s in self.sizes:
            out.append(acc)
            acc += s
        return out


def preserves_flag(p: MatrixK, flag: FlagSpec) -> bool:
    """True iff p maps each leading sum of blocks into itself.

    Equivalently every block strictly below the block diagonal vanishes.
    """
    if p.n != flag.dim:
        raise ShapeError(f"{p.n}x{p.n} matrix against flag of dimension {flag.dim}")
    offs = flag.offsets()
    for b, (start, size) in enumerate(zip(offs, flag.sizes)):
        # columns of block b may only reach rows of blocks <= b
        rows_below = range(start + size, flag.dim)
        for j in range(start, start + size):
            if any(not p.rows[i][j].is_zero() for i in rows_below):
                return False
    return True
