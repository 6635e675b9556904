"""Exact rational matrices and the linear-algebra kernel built on them.

A :class:`Matrix` keeps an integer numerator grid over a single positive
denominator, always reduced so that ``gcd(den, all numerators) == 1``.
Entries are exposed as :class:`fractions.Fraction`.  Hot loops (products,
elimination) run on Python ints only; nothing here ever rounds.
"""

from __future__ import annotations

import math
import re
from bisect import insort
from fractions import Fraction
from operator import mul
from typing import Iterable, Sequence

from .errors import InputError, ShapeError

__all__ = [
    "Matrix",
    "SpanBuilder",
    "commutator",
    "format_rational",
    "inverse",
    "is_nilpotent",
    "mat_mul",
    "matrix_from_json",
    "matrix_power",
    "matrix_to_json",
    "nullspace",
    "parse_rational",
    "rank",
    "rref",
    "vectorize",
]

_RATIONAL_RE = re.compile(r"^(-?)(\d+)(?:/(\d+))?$")


def parse_rational(text) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (lowest terms, sign on the numerator)."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational literal: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational literal: {text!r}")
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    sign, p, q = m.groups()
    num = int(p)
    if q is None:
        return Fraction(-num if sign else num)
    den = int(q)
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    if math.gcd(num, den) != 1:
        raise ValueError(f"not in lowest terms: {text!r}")
    return Fraction(-num if sign else num, den)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _normalize(num: tuple, den: int) -> tuple[tuple, int]:
    g = den
    for row in num:
        for x in row:
            if x:
                g = math.gcd(g, x)
                if g == 1:
                    return num, den
    if g == 1:
        return num, den
    return tuple(tuple(x // g for x in row) for row in num), den // g


class Matrix:
    """Immutable dense rational matrix.

    Construct from nested rows of ints, Fractions or rational strings::

        >>> Matrix([[1, "1/2"], [0, 3]])[0, 1]
        Fraction(1, 2)
    """

    __slots__ = ("rows", "cols", "_num", "_den", "_hash")

    def __init__(self, data: Sequence[Sequence]):
        rows = [list(r) for r in data]
        if not rows or not rows[0]:
            raise ShapeError("matrix must have at least one row and one column")
        cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ShapeError("ragged rows")
        fr = [[x if isinstance(x, Fraction) else
               (Fraction(x) if isinstance(x, int) else parse_rational(x))
               for x in r] for r in rows]
        den = 1
        for r in fr:
            for x in r:
                den = den * x.denominator // math.gcd(den, x.denominator)
        num = tuple(tuple(x.numerator * (den // x.denominator) for x in r) for r in fr)
        self._set(num, den)

    def _set(self, num, den):
        num, den = _normalize(num, den)
        self.rows = len(num)
        self.cols = len(num[0])
        self._num = num
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, num, den: int = 1) -> "Matrix":
        m = cls.__new__(cls)
        if den < 0:
            num = tuple(tuple(-x for x in r) for r in num)
            den = -den
        m._set(tuple(tuple(r) for r in num), den)
        return m

    # constructors -----------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls._raw(tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def diag(cls, values: Iterable) -> "Matrix":
        vals = list(values)
        n = len(vals)
        return cls([[vals[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, rows: int, cols: int, i: int, j: int) -> "Matrix":
        """Matrix unit with a single 1 at (i, j), zero-based."""
        return cls._raw(tuple(tuple(int(r == i and c == j) for c in range(cols))
                              for r in range(rows)))

    @classmethod
    def from_flat(cls, rows: int, cols: int, entries: Sequence) -> "Matrix":
        if len(entries) != rows * cols:
            raise ShapeError(f"expected {rows * cols} entries, got {len(entries)}")
        return cls([entries[i * cols:(i + 1) * cols] for i in range(rows)])

    # access -----------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def numerators(self) -> tuple:
        """Integer grid ``N`` with ``self == N / denominator``."""
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def entries(self) -> tuple[Fraction, ...]:
        d = self._den
        return tuple(Fraction(x, d) for r in self._num for x in r)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return Fraction(self._num[i][j], self._den)

    def sign(self, i: int, j: int) -> int:
        x = self._num[i][j]
        return (x > 0) - (x < 0)

    def tolist(self) -> list[list[Fraction]]:
        d = self._den
        return [[Fraction(x, d) for x in r] for r in self._num]

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return Matrix._raw(tuple(r[c0:c1] for r in self._num[r0:r1]), self._den)

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(any(r) for r in self._num)

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for r in self._num for x in r)

    def is_upper_triangular(self) -> bool:
        return all(self._num[i][j] == 0 for i in range(self.rows) for j in range(min(i, self.cols)))

    def is_diagonal(self) -> bool:
        return all(self._num[i][j] == 0 for i in range(self.rows)
                   for j in range(self.cols) if i != j)

    def is_idempotent(self) -> bool:
        return self.is_square and self @ self == self

    def trace(self) -> Fraction:
        if not self.is_square:
            raise ShapeError("trace of a non-square matrix")
        return Fraction(sum(self._num[i][i] for i in range(self.rows)), self._den)

    # arithmetic ---------------------------------------------------------
    @property
    def T(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self._num)), self._den)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        cols = tuple(zip(*other._num))
        num = tuple(tuple(sum(map(mul, r, c)) for c in cols) for r in self._num)
        return Matrix._raw(num, self._den * other._den)

    def _combine(self, other: "Matrix", sign: int) -> "Matrix":
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        da, db = self._den, other._den
        if da == db:
            num = tuple(tuple(x + sign * y for x, y in zip(r, s))
                        for r, s in zip(self._num, other._num))
            return Matrix._raw(num, da)
        g = math.gcd(da, db)
        fa, fb = db // g, da // g
        num = tuple(tuple(x * fa + sign * y * fb for x, y in zip(r, s))
                    for r, s in zip(self._num, other._num))
        return Matrix._raw(num, da * fa)

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._combine(other, 1)

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._combine(other, -1)

    def __neg__(self):
        return Matrix._raw(tuple(tuple(-x for x in r) for r in self._num), self._den)

    def __mul__(self, scalar):
        if isinstance(scalar, Matrix):
            return NotImplemented
        q = scalar if isinstance(scalar, Fraction) else Fraction(scalar)
        p = q.numerator
        return Matrix._raw(tuple(tuple(x * p for x in r) for r in self._num),
                           self._den * q.denominator)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._den == other._den and self._num == other._num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._num, self._den))
        return self._hash

    def permuted(self, perm: Sequence[int]) -> "Matrix":
        """Return ``P^T M P`` where ``P e_k = e_{perm[k]}``: entry (a, b) is M[perm[a], perm[b]]."""
        if not self.is_square or sorted(perm) != list(range(self.rows)):
            raise ShapeError("permutation does not match matrix size")
        num = self._num
        return Matrix._raw(tuple(tuple(num[i][j] for j in perm) for i in perm), self._den)

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self.tolist())
        return f"Matrix([{body}])"


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    rows = [[Fraction(0)] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.tolist()):
            rows[r0 + i][c0:c0 + b.cols] = row
        r0 += b.rows
        c0 += b.cols
    return Matrix(rows)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return a @ b


def commutator(a: Matrix, b: Matrix) -> Matrix:
    """``ab - ba`` for square matrices of equal size."""
    if not (a.is_square and b.is_square) or a.shape != b.shape:
        raise ShapeError(f"commutator needs equal square shapes, got {a.shape} and {b.shape}")
    return a @ b - b @ a


def matrix_power(m: Matrix, k: int) -> Matrix:
    if not m.is_square:
        raise ShapeError("power of a non-square matrix")
    result = Matrix.identity(m.rows)
    base = m
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def is_nilpotent(m: Matrix) -> bool:
    """True iff ``m**n == 0`` with n the size; uses repeated squaring."""
    if not m.is_square:
        raise ShapeError("nilpotency of a non-square matrix")
    n = m.rows
    p, e = m, 1
    while True:
        if p.is_zero():
            return True
        if e >= n:
            return False
        p = p @ p
        e *= 2


def vectorize(m: Matrix) -> tuple[Fraction, ...]:
    """Row-major flattening."""
    return m.entries


# ----------------------------------------------------------------------
# Elimination
# ----------------------------------------------------------------------

def _primitive(row: dict) -> dict:
    g = 0
    for x in row.values():
        g = math.gcd(g, x)
        if g == 1:
            return row
    if g > 1:
        return {c: x // g for c, x in row.items()}
    return row


def _int_rows(m: Matrix) -> list[dict]:
    return [{j: x for j, x in enumerate(r) if x} for r in m.numerators]


def _gauss_jordan(rows: list[dict]) -> tuple[list[dict], list[int]]:
    """Fraction-free Gauss-Jordan on sparse integer rows.

    Pivot choice: leftmost column that still has a nonzero entry among the
    unsettled rows, first such row in order.  Returns reduced primitive rows
    (one per pivot, in pivot order) and the pivot columns.
    """
    work = [_primitive(r) for r in rows if r]
    pivots: list[int] = []
    done: list[dict] = []
    while work:
        col = min(min(r) for r in work)
        k = next(i for i, r in enumerate(work) if col in r)
        prow = work.pop(k)
        if prow[col] < 0:
            prow = {c: -x for c, x in prow.items()}
        p = prow[col]
        rest = []
        for r in work:
            f = r.get(col)
            if f:
                r = _eliminate(r, prow, p, f)
            if r:
                rest.append(r)
        work = rest
        for i, r in enumerate(done):
            f = r.get(col)
            if f:
                done[i] = _eliminate(r, prow, p, f)
        done.append(prow)
        pivots.append(col)
    return done, pivots


def _eliminate(r: dict, prow: dict, p: int, f: int) -> dict:
    out = {c: x * p for c, x in r.items()}
    for c, y in prow.items():
        v = out.get(c, 0) - f * y
        if v:
            out[c] = v
        else:
            out.pop(c, None)
    return _primitive(out)


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row-echelon form, rank and (zero-based) pivot columns.

    The returned matrix has the same shape as ``m``; zero rows go last.
    """
    done, pivots = _gauss_jordan(_int_rows(m))
    out = []
    for r, c in zip(done, pivots):
        p = r[c]
        out.append([Fraction(r.get(j, 0), p) for j in range(m.cols)])
    out.extend([[Fraction(0)] * m.cols for _ in range(m.rows - len(out))])
    return Matrix(out), len(pivots), pivots


def rank(m: Matrix) -> int:
    return len(_gauss_jordan(_int_rows(m))[1])


def nullspace(m: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    done, pivots = _gauss_jordan(_int_rows(m))
    free = [j for j in range(m.cols) if j not in set(pivots)]
    basis = []
    for fcol in free:
        x = [Fraction(0)] * m.cols
        x[fcol] = Fraction(1)
        for r, c in zip(done, pivots):
            coeff = r.get(fcol)
            if coeff:
                x[c] = Fraction(-coeff, r[c])
        basis.append(tuple(x))
    return basis


def inverse(m: Matrix) -> Matrix:
    if not m.is_square:
        raise ShapeError("inverse of a non-square matrix")
    n = m.rows
    aug = Matrix([list(r) + [int(i == j) for j in range(n)]
                  for i, r in enumerate(m.numerators)])
    red, rk, piv = rref(aug)
    if piv[:n] != list(range(n)) or rk < n:
        raise ZeroDivisionError("matrix is singular")
    # rref of [N | I] gives [I | N^-1]; m = N/den so m^-1 = den * N^-1
    return red.submatrix(0, n, n, 2 * n) * m.denominator


class SpanBuilder:
    """Incremental row echelon basis over the integers.

    Used by the algebra closure: vectors are integer sequences (scaling
    never changes a span, so matrices enter via their numerator grids).
    """

    def __init__(self, length: int):
        self.length = length
        self._rows: dict[int, list[int]] = {}
        self._order: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._order)

    def reduce(self, vec: Sequence[int]) -> list[int]:
        v = list(vec)
        if len(v) != self.length:
            raise ShapeError(f"vector length {len(v)} != {self.length}")
        rows = self._rows
        for p in self._order:
            b = v[p]
            if b:
                row = rows[p]
                a = row[p]
                v = [a * x - b * y for x, y in zip(v, row)]
                g = math.gcd(*v)
                if g > 1:
                    v = [x // g for x in v]
        return v

    def contains(self, vec: Sequence[int]) -> bool:
        return not any(self.reduce(vec))

    def add(self, vec: Sequence[int]) -> bool:
        """Insert ``vec``; return True iff the rank grew."""
        v = self.reduce(vec)
        for p, x in enumerate(v):
            if x:
                if x < 0:
                    v = [-y for y in v]
                self._rows[p] = v
                insort(self._order, p)
                return True
        return False


def matrix_vector(m: Matrix) -> list[int]:
    """Numerator grid flattened row-major (the span-relevant vectorization)."""
    return [x for r in m.numerators for x in r]


# ----------------------------------------------------------------------
# JSON
# ----------------------------------------------------------------------

def matrix_to_json(m: Matrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[format_rational(x) for x in r] for r in m.tolist()],
    }


def matrix_from_json(obj, path: str = "$") -> Matrix:
    """Parse the ``{"rows", "cols", "entries"}`` object; errors name the JSON path."""
    if not isinstance(obj, dict):
        raise InputError("expected a matrix object", path)
    for key in ("rows", "cols", "entries"):
        if key not in obj:
            raise InputError(f"missing key {key!r}", path)
    rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    if not isinstance(rows, int) or isinstance(rows, bool) or rows < 1:
        raise InputError("rows must be a positive integer", f"{path}.rows")
    if not isinstance(cols, int) or isinstance(cols, bool) or cols < 1:
        raise InputError("cols must be a positive integer", f"{path}.cols")
    if not isinstance(entries, list) or len(entries) != rows:
        raise InputError(f"entries must be a list of {rows} rows", f"{path}.entries")
    data = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != cols:
            raise InputError(f"row must have {cols} entries", f"{path}.entries[{i}]")
        parsed = []
        for j, x in enumerate(row):
            try:
                parsed.append(parse_rational(x))
            except ValueError as exc:
                raise InputError(str(exc), f"{path}.entries[{i}][{j}]") from None
        data.append(parsed)
    return Matrix(data)
