"""Exact dense linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`. Matrices are immutable row-major
grids of fractions, and subspaces are stored by a canonical basis (reduced
column echelon form with unit pivots), so two subspaces are equal exactly
when their canonical bases are equal.

Row reduction is fraction-free: every row is scaled to integers and then
eliminated with Bareiss' exact-division update, pivoting on the first nonzero
entry of each column. Fractions only reappear in the final back substitution.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL = re.compile(r"-?[0-9]+(/[1-9][0-9]*)?")


class DimensionError(ValueError):
    """Operands have incompatible shapes or ambient dimensions."""


class SingularMatrixError(ValueError):
    pass


# ---------------------------------------------------------------------------
# scalars

def parse_scalar(text: str) -> Fraction:
    """Parse ``-?[0-9]+(/[1-9][0-9]*)?`` (surrounding whitespace ignored)."""
    s = text.strip()
    if not _RATIONAL.fullmatch(s):
        raise ValueError(f"invalid rational literal {text!r}")
    return Fraction(s)


def format_scalar(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class QParam:
    """The deformation parameter: a rational outside {0, 1, -1}.

    Such a rational is never a root of unity, so every q-integer [n] with
    n >= 1 is nonzero.
    """

    value: Fraction

    def __post_init__(self):
        v = Fraction(self.value)
        if v in (0, 1, -1):
            raise ValueError(f"q must avoid 0, 1 and -1, got {format_scalar(v)}")
        object.__setattr__(self, "value", v)

    @classmethod
    def of(cls, q) -> "QParam":
        if isinstance(q, QParam):
            return q
        if isinstance(q, str):
            return cls(parse_scalar(q))
        return cls(Fraction(q))

    def pow(self, k: int) -> Fraction:
        return self.value ** k

    @property
    def inv(self) -> Fraction:
        return 1 / self.value

    @property
    def is_positive(self) -> bool:
        return self.value > 0

    def __str__(self):
        return format_scalar(self.value)


def q_int(n: int, q) -> Fraction:
    """The q-integer ``[n] = (q^n - q^-n) / (q - q^-1)``."""
    if n < 0:
        raise ValueError("q_int is defined for n >= 0")
    qv = QParam.of(q).value
    return (qv ** n - qv ** -n) / (qv - 1 / qv)


def q_exponent(alpha: Fraction, q) -> tuple[int, int] | None:
    """Return ``(sign, i)`` with ``alpha == sign * q**i``, or None.

    Requires q > 0. The exponent is found by repeated multiplication, bounded
    by the bit length of alpha, so the search is exact and always terminates.
    """
    qv = QParam.of(q).value
    if qv <= 0:
        raise ValueError("exponent recovery needs q > 0")
    alpha = Fraction(alpha)
    if alpha == 0:
        return None
    sign = 1 if alpha > 0 else -1
    mag = abs(alpha)
    base = qv if qv > 1 else 1 / qv
    direction = 1 if qv > 1 else -1
    # base^k <= 2^(bits) bounds k by the bit length of the larger of num/den
    limit = max(mag.numerator.bit_length(), mag.denominator.bit_length()) + 1
    k, power = 0, ONE
    target = mag if mag >= 1 else 1 / mag
    while power < target and k <= limit:
        power *= base
        k += 1
    if power != target:
        return None
    i = k if mag >= 1 else -k
    return sign, direction * i


# ---------------------------------------------------------------------------
# matrices

def _as_fraction_rows(rows) -> tuple[tuple[Fraction, ...], ...]:
    out = []
    for row in rows:
        out.append(tuple(x if type(x) is Fraction else _coerce(x) for x in row))
    return tuple(out)


def _coerce(x) -> Fraction:
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, float):
        raise TypeError("floating point entries are not accepted")
    return Fraction(x)


class Matrix:
    """Immutable dense matrix of fractions."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, entries, rows: int | None = None, cols: int | None = None):
        grid = _as_fraction_rows(entries)
        if rows is None:
            rows = len(grid)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        if len(grid) != rows or any(len(r) != cols for r in grid):
            raise DimensionError(f"entries do not form a {rows}x{cols} grid")
        self._set(rows, cols, grid)

    def _set(self, rows, cols, grid):
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", grid)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, key, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, rows: int, cols: int, grid) -> "Matrix":
        m = object.__new__(cls)
        m._set(rows, cols, grid)
        return m

    # constructors
    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls._raw(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.diag([ONE] * n)

    @classmethod
    def diag(cls, values) -> "Matrix":
        vals = [_coerce(v) for v in values]
        n = len(vals)
        return cls._raw(n, n, tuple(
            tuple(vals[i] if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, columns, rows: int | None = None) -> "Matrix":
        cols = [tuple(_coerce(x) for x in c) for c in columns]
        if rows is None:
            if not cols:
                raise DimensionError("row count required for an empty column list")
            rows = len(cols[0])
        if any(len(c) != rows for c in cols):
            raise DimensionError("columns have different lengths")
        return cls._raw(rows, len(cols), tuple(zip(*cols)) if cols else tuple(() for _ in range(rows)))

    @classmethod
    def block_diag(cls, *blocks: "Matrix") -> "Matrix":
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        grid = []
        c0 = 0
        for b in blocks:
            for row in b.entries:
                grid.append((ZERO,) * c0 + row + (ZERO,) * (m - c0 - b.cols))
            c0 += b.cols
        return cls._raw(n, m, tuple(grid))

    @classmethod
    def hstack(cls, *mats: "Matrix") -> "Matrix":
        if not mats:
            raise DimensionError("nothing to stack")
        rows = mats[0].rows
        if any(m.rows != rows for m in mats):
            raise DimensionError("hstack needs equal row counts")
        grid = tuple(sum((m.entries[i] for m in mats), ()) for i in range(rows))
        return cls._raw(rows, sum(m.cols for m in mats), grid)

    # basic protocol
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.rows, self.cols, self.entries)))
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_scalar(x) for x in r) + "]" for r in self.entries)
        return f"Matrix([{body}])"

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> "Matrix":
        if self.rows == 0:
            return Matrix._raw(self.cols, 0, tuple(() for _ in range(self.cols)))
        return Matrix._raw(self.cols, self.rows, tuple(zip(*self.entries)))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    # arithmetic
    def _check_same(self, other: "Matrix"):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.entries))

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            raise TypeError("use @ for matrix products")
        c = _coerce(c)
        return Matrix._raw(self.rows, self.cols, tuple(tuple(a * c for a in r) for r in self.entries))

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Matrix":
        return self * (1 / _coerce(c))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        grid = tuple(
            tuple(sum((a * b for a, b in zip(row, col) if a and b), ZERO) for col in cols)
            for row in self.entries)
        return Matrix._raw(self.rows, other.cols, grid)

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise DimensionError("vector length does not match column count")
        return tuple(sum((a * b for a, b in zip(row, v) if a and b), ZERO) for row in self.entries)

    def __pow__(self, p: int) -> "Matrix":
        if not self.is_square:
            raise DimensionError("power of a non-square matrix")
        if p < 0:
            return self.inverse() ** (-p)
        result = Matrix.identity(self.rows)
        base = self
        while p:
            if p & 1:
                result = result @ base
            p >>= 1
            if p:
                base = base @ base
        return result

    def shifted(self, lam) -> "Matrix":
        """``self - lam * I``."""
        lam = _coerce(lam)
        return Matrix._raw(self.rows, self.cols, tuple(
            tuple(a - lam if i == j else a for j, a in enumerate(r))
            for i, r in enumerate(self.entries)))

    def rank(self) -> int:
        return len(rref(self)[1])

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise DimensionError("inverse of a non-square matrix")
        n = self.rows
        aug = Matrix.hstack(self, Matrix.identity(n))
        red, pivots = rref(aug)
        if pivots[:n] != tuple(range(n)):
            raise SingularMatrixError("matrix is singular")
        return Matrix._raw(n, n, tuple(r[n:] for r in red.entries[:n]))

    def is_invertible(self) -> bool:
        return self.is_square and self.rank() == self.rows

    def max_numerator_bits(self) -> int:
        return max((abs(x.numerator).bit_length() for r in self.entries for x in r), default=0)

    def inf_norm(self) -> Fraction:
        return max((sum((abs(x) for x in r), ZERO) for r in self.entries), default=ZERO)

    def conjugate(self, P: "Matrix", P_inv: "Matrix | None" = None) -> "Matrix":
        """``P @ self @ P^-1``."""
        if P_inv is None:
            P_inv = P.inverse()
        return P @ self @ P_inv


def subdiagonal(values) -> Matrix:
    vals = [_coerce(v) for v in values]
    n = len(vals) + 1
    return Matrix._raw(n, n, tuple(
        tuple(vals[j] if i == j + 1 else ZERO for j in range(n)) for i in range(n)))


def superdiagonal(values) -> Matrix:
    return subdiagonal(values).T


# ---------------------------------------------------------------------------
# fraction-free elimination

def _integer_rows(M: Matrix) -> list[list[int]]:
    out = []
    for row in M.entries:
        den = 1
        for x in row:
            if x.denominator != 1:
                den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([x.numerator * (den // x.denominator) for x in row])
    return out


def rref(M: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns.

    Forward elimination runs on integers (Bareiss); pivot is the first
    nonzero entry at or below the current row.
    """
    a = _integer_rows(M)
    m, n = M.rows, M.cols
    prev = 1
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        prow = a[r]
        p = prow[c]
        for i in range(r + 1, m):
            row = a[i]
            f = row[c]
            if f == 0:
                if p != prev:
                    for j in range(c + 1, n):
                        row[j] = p * row[j] // prev
                continue
            for j in range(c + 1, n):
                row[j] = (p * row[j] - f * prow[j]) // prev
            row[c] = 0
        prev = p
        pivots.append(c)
        r += 1

    # back substitution over the rationals
    red = [[Fraction(x, row[pc]) for x in row] for row, pc in zip(a[:r], pivots)]
    for k in range(r - 1, -1, -1):
        pc = pivots[k]
        pk = red[k]
        for i in range(k):
            f = red[i][pc]
            if f:
                red[i] = [x - f * y for x, y in zip(red[i], pk)]
    grid = tuple(tuple(row) for row in red) + tuple((ZERO,) * n for _ in range(m - r))
    return Matrix._raw(m, n, grid), tuple(pivots)


# ---------------------------------------------------------------------------
# subspaces

@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient held by its canonical basis.

    ``basis`` is ambient x dim, in reduced column echelon form: each column
    has a leading 1 in a distinct pivot row, and every other column is zero
    in that row. The zero subspace has dim 0 and an ambient x 0 basis.
    """

    ambient: int
    basis: Matrix

    @classmethod
    def from_matrix(cls, M: Matrix) -> "Subspace":
        """Column span of ``M``."""
        if M.cols == 0:
            return cls.zero(M.rows)
        red, pivots = rref(M.T)
        cols = red.entries[:len(pivots)]
        return cls(M.rows, Matrix.from_columns(cols, rows=M.rows))

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient: int | None = None) -> "Subspace":
        vecs = [tuple(v) for v in vectors]
        if ambient is None:
            if not vecs:
                raise DimensionError("ambient dimension needed for an empty span")
            ambient = len(vecs[0])
        return cls.from_matrix(Matrix.from_columns(vecs, rows=ambient))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, Matrix._raw(n, 0, tuple(() for _ in range(n))))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, Matrix.identity(n))

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        idx = sorted(set(indices))
        return cls.span([[1 if k == i else 0 for k in range(n)] for i in idx], ambient=n)

    @property
    def dim(self) -> int:
        return self.basis.cols

    def vectors(self) -> list[tuple[Fraction, ...]]:
        return self.basis.columns()

    @property
    def pivot_rows(self) -> tuple[int, ...]:
        out = []
        for j in range(self.dim):
            col = self.basis.column(j)
            out.append(next(i for i, x in enumerate(col) if x))
        return tuple(out)

    def __repr__(self):
        vecs = ", ".join("(" + ", ".join(format_scalar(x) for x in v) + ")" for v in self.vectors())
        return f"Subspace(ambient={self.ambient}, span{{{vecs}}})"

    def is_zero(self) -> bool:
        return self.dim == 0

    def contains(self, other: "Subspace") -> bool:
        _same_ambient([self, other])
        if other.dim == 0:
            return True
        return subspace_sum([self, other]).dim == self.dim

    def contains_vector(self, v: Sequence) -> bool:
        if all(x == 0 for x in v):
            return True
        return self.contains(Subspace.span([v], ambient=self.ambient))

    def image(self, M: Matrix) -> "Subspace":
        if M.cols != self.ambient:
            raise DimensionError("map does not act on this ambient space")
        if self.dim == 0:
            return Subspace.zero(M.rows)
        return Subspace.from_matrix(M @ self.basis)

    def coordinates(self, v: Sequence) -> tuple[Fraction, ...]:
        """Coefficients of ``v`` in the canonical basis; v must lie in the span."""
        coeffs = tuple(Fraction(v[p]) for p in self.pivot_rows)
        back = self.basis.apply(coeffs) if self.dim else (ZERO,) * self.ambient
        if tuple(back) != tuple(Fraction(x) for x in v):
            raise ValueError("vector is not in the subspace")
        return coeffs


def _same_ambient(spaces: Sequence[Subspace]) -> int:
    if not spaces:
        raise DimensionError("empty subspace list")
    n = spaces[0].ambient
    if any(s.ambient != n for s in spaces):
        raise DimensionError("subspaces live in different ambient spaces")
    return n


def kernel(M: Matrix) -> Subspace:
    """Null space ``{x : M x = 0}`` as a canonical subspace of Q^cols."""
    n = M.cols
    red, pivots = rref(M)
    pivset = set(pivots)
    vecs = []
    for f in range(n):
        if f in pivset:
            continue
        v = [ZERO] * n
        v[f] = ONE
        for k, pc in enumerate(pivots):
            v[pc] = -red.entries[k][f]
        vecs.append(v)
    if not vecs:
        return Subspace.zero(n)
    return Subspace.span(vecs, ambient=n)


def eigenspace(M: Matrix, lam) -> Subspace:
    if not M.is_square:
        raise DimensionError("eigenspace of a non-square matrix")
    return kernel(M.shifted(lam))


def subspace_sum(spaces: Sequence[Subspace]) -> Subspace:
    n = _same_ambient(spaces)
    nonzero = [s.basis for s in spaces if s.dim]
    if not nonzero:
        return Subspace.zero(n)
    return Subspace.from_matrix(Matrix.hstack(*nonzero))


def subspace_intersect(s1: Subspace, s2: Subspace) -> Subspace:
    n = _same_ambient([s1, s2])
    if s1.dim == 0 or s2.dim == 0:
        return Subspace.zero(n)
    # x in s1 ∩ s2  <=>  B1 a = B2 b  <=>  (a, b) in ker [B1 | -B2]
    ker = kernel(Matrix.hstack(s1.basis, -s2.basis))
    if ker.dim == 0:
        return Subspace.zero(n)
    a_part = Matrix._raw(s1.dim, ker.dim, ker.basis.entries[:s1.dim])
    return Subspace.from_matrix(s1.basis @ a_part)


def is_direct_sum(spaces: Sequence[Subspace]) -> bool:
    _same_ambient(spaces)
    return sum(s.dim for s in spaces) == subspace_sum(spaces).dim


def restrict_power_bijection(M: Matrix, p: int, source: Subspace, target: Subspace) -> bool:
    """Whether ``M^p`` maps ``source`` bijectively onto ``target``."""
    if not M.is_square or M.rows != source.ambient or source.ambient != target.ambient:
        raise DimensionError("map and subspaces do not share an ambient space")
    if source.dim != target.dim:
        return False
    if source.dim == 0:
        return True
    img = (M ** p) @ source.basis
    if img.rank() != source.dim:
        return False
    return target.contains(Subspace.from_matrix(img))


def matrix_with_eigenspaces(spaces: Sequence[Subspace], eigenvalues: Sequence) -> Matrix:
    """The unique matrix acting as ``eigenvalues[i]`` on ``spaces[i]``.

    The spaces must form a direct sum decomposition of the ambient space.
    """
    n = _same_ambient(spaces)
    if len(spaces) != len(eigenvalues):
        raise DimensionError("one eigenvalue per subspace required")
    P = Matrix.hstack(*[s.basis for s in spaces if s.dim]) if any(s.dim for s in spaces) \
        else Matrix.zeros(n, 0)
    if P.cols != n:
        raise DimensionError("subspaces do not decompose the ambient space")
    D = Matrix.diag([_coerce(lam) for s, lam in zip(spaces, eigenvalues) for _ in range(s.dim)])
    return P @ D @ P.inverse()


def restricted_action(M: Matrix, space: Subspace) -> Matrix:
    """Matrix of ``M`` restricted to an invariant subspace, in its canonical basis."""
    if M.shape != (space.ambient, space.ambient):
        raise DimensionError("map does not act on this ambient space")
    k = space.dim
    if k == 0:
        return Matrix.zeros(0, 0)
    img = M @ space.basis
    rows = space.pivot_rows
    # canonical basis has identity in its pivot rows, so coordinates are read off there
    coords = Matrix._raw(k, k, tuple(img.entries[p] for p in rows))
    if space.basis @ coords != img:
        raise ValueError("subspace is not invariant under the map")
    return coords


def q_power_eigenspaces(M: Matrix, q) -> tuple[dict[tuple[int, int], Subspace], bool, bool]:
    """Eigenspaces of ``M`` for every eigenvalue of the form ``±q^j``.

    Returns ``(spaces, complete, diagonalizable)`` where ``spaces`` maps
    ``(sign, j)`` to the nonzero eigenspace for ``sign * q**j``.
    ``complete`` says the generalized eigenspaces found exhaust the ambient
    space (every eigenvalue has the form ±q^j); ``diagonalizable`` says the
    eigenspaces themselves do. Requires q > 0.

    Candidates are bounded: for invertible M every eigenvalue lies between
    ``1/||M^-1||`` and ``||M||`` in absolute value (infinity norms).
    """
    qv = QParam.of(q)
    if not qv.is_positive:
        raise ValueError("eigenvalue recognition needs q > 0")
    if not M.is_square:
        raise DimensionError("eigenspaces of a non-square matrix")
    n = M.rows
    if n == 0:
        return {}, True, True
    try:
        M_inv = M.inverse()
    except SingularMatrixError:
        return {}, False, False
    bound = max(M.inf_norm(), M_inv.inf_norm(), ONE)
    base = qv.value if qv.value > 1 else qv.inv
    J, power = 0, base
    while power <= bound:
        power *= base
        J += 1
    spaces: dict[tuple[int, int], Subspace] = {}
    total = 0
    generalized = 0
    for j in range(J, -J - 1, -1):
        lam = qv.pow(j)
        for sign in (1, -1):
            sp = eigenspace(M, sign * lam)
            if sp.dim:
                spaces[(sign, j)] = sp
                total += sp.dim
                generalized += kernel(M.shifted(sign * lam) ** n).dim
    return spaces, generalized == n, total == n


def q_serre_residual(x: Matrix, y: Matrix, q) -> Matrix:
    """``x^3 y - [3] x^2 y x + [3] x y x^2 - y x^3``."""
    c = q_int(3, q)
    x2 = x @ x
    x3 = x2 @ x
    return x3 @ y - c * (x2 @ y @ x) + c * (x @ y @ x2) - y @ x3
