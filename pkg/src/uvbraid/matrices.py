"""Exact dense matrices over a rational-function field, plus block embedding.

Matrices are small here (the largest that ever occurs is degree n+1 for
modest n), so the representation is a plain tuple of tuples of
:class:`~uvbraid.scalars.RatFunc` and the algorithms favour exactness and
clarity over asymptotics:

* determinants use fraction-free Bareiss elimination after clearing each
  row to a common polynomial denominator (keeps intermediate rational
  functions from snowballing);
* inverses use Gauss-Jordan over the function field (a pivot only needs to
  be nonzero *as a rational function*, so no case analysis on parameters);
* reduced row echelon form, rank and kernel are defined only for matrices
  of constants: the rank of a symbolic matrix genuinely depends on where
  the parameters sit, so asking for it raises instead of guessing.

``block_embed`` realizes the local pattern  I_(i-1) (+) B (+) I_(m-i-k+1)
used throughout: a k x k block acting on strands i..i+k-1 of an m-strand
space, identity elsewhere.
"""

from __future__ import annotations

from .scalars import (
    G_ONE,
    G_ZERO,
    GaussianRational,
    MultiPoly,
    PolyRing,
    RatFunc,
)


class Matrix:
    """An immutable nrows x ncols matrix of rational functions over one ring."""

    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring: PolyRing, rows: tuple[tuple[RatFunc, ...], ...]):
        self.ring = ring
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rows(cls, ring: PolyRing, rows) -> Matrix:
        """Build from nested lists; entries may be ints, Fractions, Q(i)
        scalars, polynomials, variable names, or rational functions."""
        lifted = tuple(tuple(ring.rf(x) for x in row) for row in rows)
        if lifted and any(len(r) != len(lifted[0]) for r in lifted):
            raise ValueError("ragged rows")
        return cls(ring, lifted)

    @classmethod
    def identity(cls, ring: PolyRing, n: int) -> Matrix:
        one, zero = ring._rf_one, ring._rf_zero
        return cls(
            ring,
            tuple(
                tuple(one if i == j else zero for j in range(n)) for i in range(n)
            ),
        )

    @classmethod
    def zeros(cls, ring: PolyRing, nrows: int, ncols: int) -> Matrix:
        zero = ring._rf_zero
        return cls(ring, tuple((zero,) * ncols for _ in range(nrows)))

    @classmethod
    def column(cls, ring: PolyRing, entries) -> Matrix:
        return cls.from_rows(ring, [[x] for x in entries])

    @classmethod
    def row_vector(cls, ring: PolyRing, entries) -> Matrix:
        return cls.from_rows(ring, [list(entries)])

    # -- basic algebra -------------------------------------------------

    def _check_ring(self, other: Matrix):
        if self.ring.vars != other.ring.vars:
            raise ValueError("matrices live over different rings")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_ring(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in matrix addition")
        return Matrix(
            self.ring,
            tuple(
                tuple(a + b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.rows, other.rows)
            ),
        )

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def __neg__(self) -> Matrix:
        return Matrix(self.ring, tuple(tuple(-a for a in r) for r in self.rows))

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return self.scale(other)
        self._check_ring(other)
        if self.ncols != other.nrows:
            raise ValueError(
                f"shape mismatch in matrix product: {self.shape} * {other.shape}"
            )
        cols = list(zip(*other.rows))
        zero = self.ring._rf_zero
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if not (a.is_zero() or b.is_zero()):
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return Matrix(self.ring, tuple(out))

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> Matrix:
        c = self.ring.rf(c)
        return Matrix(self.ring, tuple(tuple(a * c for a in r) for r in self.rows))

    def __pow__(self, k: int) -> Matrix:
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        out = Matrix.identity(self.ring, self.nrows)
        for _ in range(k):
            out = out * self
        return out

    def transpose(self) -> Matrix:
        return Matrix(self.ring, tuple(zip(*self.rows)))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            return False
        return all(
            a == b for r1, r2 in zip(self.rows, other.rows) for a, b in zip(r1, r2)
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> RatFunc:
        i, j = ij
        return self.rows[i][j]

    def is_identity(self) -> bool:
        if self.nrows != self.ncols:
            return False
        return all(
            (a.is_one() if i == j else a.is_zero())
            for i, r in enumerate(self.rows)
            for j, a in enumerate(r)
        )

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.rows for a in r)

    # -- determinant and inverse ----------------------------------------

    def det(self) -> RatFunc:
        """Determinant via fraction-free Bareiss elimination.

        Rows are first cleared to polynomial entries (multiplying each row by
        the product of its denominators, tracked in a global scale factor), so
        the elimination itself divides polynomials exactly and never touches
        rational-function arithmetic.
        """
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        ring = self.ring
        if n == 0:
            return ring._rf_one
        scale = ring._one  # accumulated denominator polynomial
        rows: list[list[MultiPoly]] = []
        for r in self.rows:
            dens = [a.den for a in r if not a.den.is_one()]
            if not dens:
                rows.append([a.num for a in r])
                continue
            d = ring._one
            for q in dens:
                d = d * q
            rows.append([a.num * d.exact_div(a.den) for a in r])
            scale = scale * d
        sign = 1
        prev = ring._one
        for k in range(n - 1):
            if rows[k][k].is_zero():
                pivot_row = next(
                    (i for i in range(k + 1, n) if not rows[i][k].is_zero()), None
                )
                if pivot_row is None:
                    return ring._rf_zero
                rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
                sign = -sign
            pivot = rows[k][k]
            for i in range(k + 1, n):
                head = rows[i][k]
                for j in range(k + 1, n):
                    rows[i][j] = (pivot * rows[i][j] - head * rows[k][j]).exact_div(
                        prev
                    )
                rows[i][k] = ring._zero
            prev = pivot
        d = rows[n - 1][n - 1]
        if sign < 0:
            d = -d
        return RatFunc(d, scale)

    def inverse(self) -> Matrix:
        """Inverse over the rational-function field (Gauss-Jordan).

        Pivots only need to be nonzero rational functions; the result is valid
        wherever no denominator vanishes.  Raises ValueError when the matrix is
        singular as a matrix of functions.
        """
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        ident = Matrix.identity(self.ring, n)
        aug = [list(r) + list(ir) for r, ir in zip(self.rows, ident.rows)]
        for col in range(n):
            pivot_row = None
            for i in range(col, n):
                if not aug[i][col].is_zero():
                    pivot_row = i
                    if aug[i][col].is_constant():
                        break  # cheapest pivot available
            if pivot_row is None:
                raise ValueError("matrix is singular over the function field")
            aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
            inv = aug[col][col].inverse()
            aug[col] = [a * inv for a in aug[col]]
            for i in range(n):
                if i != col and not aug[i][col].is_zero():
                    f = aug[i][col]
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
        return Matrix(self.ring, tuple(tuple(row[n:]) for row in aug))

    # -- constant-matrix operations --------------------------------------

    def constant_entries(self) -> list[list[GaussianRational]]:
        """Entries as Q(i) scalars; raises ValueError if anything is symbolic."""
        out = []
        for r in self.rows:
            row = []
            for a in r:
                if not a.is_constant():
                    raise ValueError(
                        f"matrix is symbolic (entry {a}); bind parameters first"
                    )
                row.append(a.constant_value())
            out.append(row)
        return out

    def rref(self) -> Matrix:
        """Reduced row echelon form (constants only)."""
        rows, _ = const_rref(self.constant_entries())
        return Matrix.from_rows(self.ring, rows)

    def rank(self) -> int:
        _, pivots = const_rref(self.constant_entries())
        return len(pivots)

    def kernel(self) -> list[Matrix]:
        """Basis of the right kernel, as column matrices (constants only)."""
        rows, pivots = const_rref(self.constant_entries())
        n = self.ncols
        pivot_set = set(pivots)
        basis = []
        for free in range(n):
            if free in pivot_set:
                continue
            vec = [G_ZERO] * n
            vec[free] = G_ONE
            for r, p in enumerate(pivots):
                vec[p] = -rows[r][free]
            basis.append(Matrix.column(self.ring, vec))
        return basis

    # -- evaluation and rendering ----------------------------------------

    def evaluate(self, point: dict) -> Matrix:
        """Evaluate every entry at a parameter point; stays over the same ring."""
        ring = self.ring
        return Matrix(
            ring,
            tuple(
                tuple(ring.rf(a.evaluate(point)) for a in r) for r in self.rows
            ),
        )

    def to_strings(self) -> list[list[str]]:
        return [[str(a) for a in r] for r in self.rows]

    def __str__(self):
        body = "; ".join(", ".join(str(a) for a in r) for r in self.rows)
        return f"[{body}]"

    def __repr__(self):
        return f"<Matrix {self.nrows}x{self.ncols} {self}>"


def const_rref(
    rows: list[list[GaussianRational]],
) -> tuple[list[list[GaussianRational]], list[int]]:
    """RREF of a matrix of Q(i) scalars; returns (rows, pivot column indices)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if m[i][col]), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = m[r][col].inverse()
        m[r] = [a * inv for a in m[r]]
        for i in range(nrows):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return m, pivots


def block_embed(block: Matrix, pos: int, m: int) -> Matrix:
    """Embed a k x k block at strand position pos (1-based) in an m x m identity.

    The block occupies rows and columns pos .. pos+k-1.
    """
    k = block.nrows
    if block.ncols != k:
        raise ValueError("block must be square")
    if pos < 1 or pos + k - 1 > m:
        raise ValueError(
            f"block of size {k} at position {pos} does not fit in degree {m}"
        )
    out = [list(r) for r in Matrix.identity(block.ring, m).rows]
    for a in range(k):
        for b in range(k):
            out[pos - 1 + a][pos - 1 + b] = block.rows[a][b]
    return Matrix(block.ring, tuple(tuple(r) for r in out))
