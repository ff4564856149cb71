"""Exact linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`; vectors are tuples of fractions and
matrices are immutable :class:`Matrix` objects.  Subspaces are stored by their
reduced row-echelon basis, so two subspaces compare equal exactly when they
are the same subspace.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch

Vector = tuple  # tuple[Fraction, ...]

_RATIONAL = re.compile(r"^-?[0-9]+(/[1-9][0-9]*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse the ``p`` / ``p/q`` grammar used by every file format."""
    text = text.strip().replace("−", "-")
    if not _RATIONAL.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vec(*entries) -> Vector:
    """Build a vector from ints, fractions or rational strings."""
    if len(entries) == 1 and not isinstance(entries[0], (int, Fraction, str)):
        entries = tuple(entries[0])
    return tuple(parse_rational(e) if isinstance(e, str) else Fraction(e) for e in entries)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(int(j == i)) for j in range(n))


def is_zero(v: Sequence[Fraction]) -> bool:
    return not any(v)


def add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def dot(u: Vector, v: Vector) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


def lincomb(coeffs: Iterable, vectors: Sequence[Vector], n: int) -> Vector:
    out = [Fraction(0)] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                if a:
                    out[i] += c * a
    return tuple(out)


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch(f"entries do not form a {self.rows}x{self.cols} grid")

    @classmethod
    def of(cls, rows: Sequence[Sequence], cols: int | None = None) -> Matrix:
        data = tuple(vec(r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls(rows, cols, tuple(zero_vector(cols) for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(n, n, tuple(unit_vector(n, i) for i in range(n)))

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> Matrix:
        """The matrix unit E_ij (0-based) of size n."""
        return cls(n, n, tuple(unit_vector(n, j) if r == i else zero_vector(n) for r in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Vector], rows: int) -> Matrix:
        return cls(rows, len(columns), tuple(tuple(c[i] for c in columns) for i in range(rows)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> Matrix:
        return Matrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else
                      tuple(() for _ in range(self.cols)))

    def apply(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        return tuple(dot(r, v) for r in self.entries)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise DimensionMismatch("inner dimensions differ")
        cols = other.T.entries
        return Matrix(self.rows, other.cols, tuple(tuple(dot(r, c) for c in cols) for r in self.entries))

    def __add__(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(add(a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(sub(a, b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> Matrix:
        return self.scaled(-1)

    def scaled(self, c) -> Matrix:
        return Matrix(self.rows, self.cols, tuple(scale(c, r) for r in self.entries))

    def is_zero(self) -> bool:
        return all(is_zero(r) for r in self.entries)

    def flat(self) -> Vector:
        return tuple(a for r in self.entries for a in r)

    def _same_shape(self, other: Matrix) -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix shapes differ")

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(format_rational(a) for a in r) + "]" for r in self.entries) + "]"


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


def _echelon(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form; returns the nonzero rows and their pivot columns."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        pivot_row = m[r]
        for i in range(len(m)):
            f = m[i][c]
            if i != r and f:
                m[i] = [a - f * b for a, b in zip(m[i], pivot_row)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rref(m: Matrix) -> Matrix:
    """Unique reduced row-echelon form of ``m`` (zero rows kept at the bottom)."""
    rows, _ = _echelon(m.entries, m.cols)
    out = [tuple(r) for r in rows] + [zero_vector(m.cols)] * (m.rows - len(rows))
    return Matrix(m.rows, m.cols, tuple(out))


def rank(m: Matrix) -> int:
    return len(_echelon(m.entries, m.cols)[1])


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n held by its reduced row-echelon basis."""

    ambient_dim: int
    basis: tuple  # rows of the RREF basis, all nonzero

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, a in enumerate(r) if a) for r in self.basis)

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, tuple(unit_vector(n, i) for i in range(n)))

    def basis_matrix(self) -> Matrix:
        return Matrix(self.dim, self.ambient_dim, self.basis)

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def coordinates(self, v: Sequence[Fraction]) -> Vector:
        """Coordinates of ``v`` in the echelon basis; ``v`` must lie in the subspace."""
        c = tuple(v[p] for p in self.pivots)
        if tuple(v) != lincomb(c, self.basis, self.ambient_dim):
            raise ValueError("vector is not in the subspace")
        return c

    def from_coordinates(self, c: Sequence[Fraction]) -> Vector:
        return lincomb(c, self.basis, self.ambient_dim)

    def reduce(self, v: Sequence[Fraction]) -> Vector:
        """Canonical representative of ``v`` modulo the subspace (zero on pivots)."""
        out = list(v)
        for row, p in zip(self.basis, self.pivots):
            f = out[p]
            if f:
                out = [a - f * b for a, b in zip(out, row)]
        return tuple(out)

    def complement_indices(self) -> tuple[int, ...]:
        """Non-pivot coordinates; their unit vectors span a complement."""
        piv = set(self.pivots)
        return tuple(j for j in range(self.ambient_dim) if j not in piv)

    def __str__(self) -> str:
        inner = ", ".join("(" + ", ".join(format_rational(a) for a in r) + ")" for r in self.basis)
        return f"<{inner}> in Q^{self.ambient_dim}"


def span(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    rows = [vec(v) for v in vectors]
    for v in rows:
        if len(v) != ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
    basis, _ = _echelon(rows, ambient_dim)
    return Subspace(ambient_dim, tuple(tuple(r) for r in basis))


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return span(a.basis + b.basis, a.ambient_dim)


def annihilator(a: Subspace) -> Subspace:
    """All w with w . v = 0 for every v in ``a``."""
    return kernel(a.basis_matrix()) if a.dim else Subspace.full(a.ambient_dim)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    n = a.ambient_dim
    eqs = annihilator(a).basis + annihilator(b).basis
    if not eqs:
        return Subspace.full(n)
    return kernel(Matrix(len(eqs), n, eqs))


def contains(a: Subspace, v: Sequence) -> bool:
    if len(v) != a.ambient_dim:
        raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {a.ambient_dim}")
    return is_zero(a.reduce(vec(v)))


def subspace_leq(a: Subspace, b: Subspace) -> bool:
    _check_ambient(a, b)
    return all(contains(b, v) for v in a.basis)


def kernel(m: Matrix) -> Subspace:
    """Exact null space {x : m x = 0}."""
    rows, pivots = _echelon(m.entries, m.cols)
    free = [j for j in range(m.cols) if j not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * m.cols
        x[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            x[p] = -row[f]
        basis.append(x)
    return span(basis, m.cols)


def solve(m: Matrix, rhs: Sequence) -> Vector | None:
    """One solution of ``m x = rhs`` (free variables set to 0), or None."""
    if len(rhs) != m.rows:
        raise DimensionMismatch("right-hand side length differs from row count")
    aug = [tuple(r) + (Fraction(b),) for r, b in zip(m.entries, rhs)]
    rows, pivots = _echelon(aug, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for row, p in zip(rows, pivots):
        x[p] = row[-1]
    return tuple(x)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise DimensionMismatch("only square matrices are invertible")
    n = m.rows
    aug = [tuple(r) + unit_vector(n, i) for i, r in enumerate(m.entries)]
    rows, pivots = _echelon(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(rows) < n:
        raise ValueError("matrix is singular")
    return Matrix(n, n, tuple(tuple(r[n:]) for r in rows))


def charpoly(m: Matrix) -> list[Fraction]:
    """Coefficients [c_0, ..., c_n] of det(tI - m) via Faddeev-LeVerrier (monic)."""
    if m.rows != m.cols:
        raise DimensionMismatch("characteristic polynomial needs a square matrix")
    n = m.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    ident = Matrix.identity(n)
    M = Matrix.zeros(n, n)
    for k in range(1, n + 1):
        M = m @ M + ident.scaled(coeffs[n - k + 1])
        am = m @ M
        coeffs[n - k] = -sum((am[i, i] for i in range(n)), Fraction(0)) / k
    return coeffs


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def _horner(coeffs: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs: list, root) -> list:
    """Divide by (t - root); coefficients low degree first."""
    n = len(coeffs) - 1
    out = [Fraction(0)] * n
    carry = Fraction(0)
    for k in range(n, 0, -1):
        carry = coeffs[k] + carry * root
        out[k - 1] = carry
    return out


def rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """Distinct rational roots of a polynomial (low degree first) by the rational-root test."""
    poly = [Fraction(c) for c in coeffs]
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    roots: list[Fraction] = []
    if len(poly) <= 1:
        return roots
    if poly[0] == 0:
        roots.append(Fraction(0))
        while len(poly) > 1 and poly[0] == 0:
            poly.pop(0)
    lcm = math.lcm(*(c.denominator for c in poly))
    ints = [int(c * lcm) for c in poly]
    g = math.gcd(*ints)
    ints = [c // g for c in ints]
    cands = set()
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            cands.add(Fraction(p, q))
            cands.add(Fraction(-p, q))
    work = [Fraction(c) for c in ints]
    for r in sorted(cands):
        if len(work) <= 1:
            break
        if _horner(work, r) == 0:
            roots.append(r)
            while len(work) > 1 and _horner(work, r) == 0:
                work = _deflate(work, r)
    return roots


def eigen_key(x: Fraction) -> tuple[int, int]:
    """Ordering used to pick among several rational eigenvalues."""
    return (x.numerator, x.denominator)


def rational_eigenvalues(m: Matrix) -> list[tuple[Fraction, Subspace]]:
    """All rational eigenvalues with their eigenspaces, sorted by :func:`eigen_key`."""
    if m.rows != m.cols:
        raise DimensionMismatch("eigenvalues need a square matrix")
    out = []
    for lam in rational_roots(charpoly(m)):
        es = kernel(m - Matrix.identity(m.rows).scaled(lam))
        out.append((lam, es))
    return sorted(out, key=lambda p: eigen_key(p[0]))
