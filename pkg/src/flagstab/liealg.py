"""Finite-dimensional Lie algebras given by structure constants.

An algebra fixes a basis x_0, ..., x_{n-1}; elements are coordinate vectors.
Subalgebras are subspaces of that coordinate space, checked for closure when
they are built.  Representations assign a matrix to every basis element.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, NotAHomomorphism, NotAntisymmetric, NotClosed
from .exactlinalg import (
    Matrix,
    Subspace,
    Vector,
    commutator,
    contains,
    kernel,
    lincomb,
    solve,
    span,
    unit_vector,
)


class LieAlgebra:
    """Structure constants ``table[(i, j)] = {k: c_ij^k}`` meaning [x_i, x_j] = sum c_ij^k x_k.

    Pairs absent from ``table`` bracket to zero.  If only one of (i, j) and
    (j, i) is present the other is filled in by antisymmetry.  With
    ``strict=True`` (the default) a table that is not antisymmetric is
    rejected; Jacobi failures are only reported by :func:`verify`.
    """

    def __init__(self, dim: int, table: Mapping, basis_names: Sequence[str] | None = None,
                 strict: bool = True):
        self.dim = dim
        self.basis_names = tuple(basis_names) if basis_names is not None else tuple(
            f"x{i}" for i in range(dim))
        if len(self.basis_names) != dim:
            raise DimensionMismatch("one basis name per basis element is required")
        sc: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), entry in table.items():
            for idx in (i, j, *entry):
                if not 0 <= idx < dim:
                    raise DimensionMismatch(f"basis index {idx} out of range for dimension {dim}")
            row = {k: Fraction(c) for k, c in entry.items() if c}
            if row:
                sc[(i, j)] = row
        for (i, j), row in list(sc.items()):
            if (j, i) not in sc and (j, i) not in table:
                sc[(j, i)] = {k: -c for k, c in row.items()}
        self.table = sc
        if strict:
            bad = antisymmetry_violations(self)
            if bad:
                raise NotAntisymmetric(f"antisymmetry fails at basis pairs {bad}")
        # dense lookup of bracket images of basis pairs
        self._brackets = [[self._image(i, j) for j in range(dim)] for i in range(dim)]

    def _image(self, i: int, j: int) -> Vector:
        out = [Fraction(0)] * self.dim
        for k, c in self.table.get((i, j), {}).items():
            out[k] = c
        return tuple(out)

    def basis_bracket(self, i: int, j: int) -> Vector:
        return self._brackets[i][j]

    def basis(self) -> list[Vector]:
        return [unit_vector(self.dim, i) for i in range(self.dim)]

    def element(self, name: str) -> Vector:
        return unit_vector(self.dim, self.basis_names.index(name))

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, basis={list(self.basis_names)})"


def bracket(L: LieAlgebra, x: Sequence, y: Sequence) -> Vector:
    if len(x) != L.dim or len(y) != L.dim:
        raise DimensionMismatch(f"bracket arguments must have length {L.dim}")
    out = [Fraction(0)] * L.dim
    for i, a in enumerate(x):
        if not a:
            continue
        row = L._brackets[i]
        for j, b in enumerate(y):
            if not b:
                continue
            ab = a * b
            for k, c in enumerate(row[j]):
                if c:
                    out[k] += ab * c
    return tuple(out)


def antisymmetry_violations(L: LieAlgebra) -> list[tuple[int, int]]:
    bad = []
    for i in range(L.dim):
        if L.table.get((i, i)):
            bad.append((i, i))
        for j in range(i + 1, L.dim):
            a = L.table.get((i, j), {})
            b = L.table.get((j, i), {})
            if any(a.get(k, 0) != -b.get(k, 0) for k in set(a) | set(b)):
                bad.append((i, j))
    return bad


def verify(L: LieAlgebra) -> list[str]:
    """All antisymmetry and Jacobi violations on basis elements; empty iff L is a Lie algebra."""
    problems = [f"antisymmetry violated at ({i},{j})" for i, j in antisymmetry_violations(L)]
    basis = L.basis()
    for i, j, k in combinations(range(L.dim), 3):
        x, y, z = basis[i], basis[j], basis[k]
        total = [Fraction(0)] * L.dim
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            total = [s + t for s, t in zip(total, bracket(L, bracket(L, a, b), c))]
        if any(total):
            problems.append(f"Jacobi identity violated at ({i},{j},{k})")
    return problems


@dataclass(frozen=True)
class Subalgebra:
    parent: LieAlgebra = field(compare=False)
    space: Subspace

    def __post_init__(self):
        if self.space.ambient_dim != self.parent.dim:
            raise DimensionMismatch("subspace does not live in the parent's coordinate space")
        basis = self.space.basis
        for a in range(len(basis)):
            for b in range(a + 1, len(basis)):
                if not contains(self.space, bracket(self.parent, basis[a], basis[b])):
                    raise NotClosed(f"bracket of basis vectors {a} and {b} leaves the subspace")

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> tuple:
        return self.space.basis

    @classmethod
    def whole(cls, L: LieAlgebra) -> Subalgebra:
        return cls(L, Subspace.full(L.dim))

    @classmethod
    def zero(cls, L: LieAlgebra) -> Subalgebra:
        return cls(L, Subspace.zero(L.dim))

    def __contains__(self, x) -> bool:
        return contains(self.space, x)

    def __le__(self, other: Subalgebra) -> bool:
        return all(contains(other.space, v) for v in self.basis)


def bracket_span(L: LieAlgebra, a: Sequence[Vector], b: Sequence[Vector]) -> Subspace:
    return span([bracket(L, x, y) for x in a for y in b], L.dim)


def subalgebra_closure(L: LieAlgebra, generators: Iterable[Sequence]) -> Subalgebra:
    """Smallest subalgebra containing ``generators``."""
    space = span(generators, L.dim)
    while True:
        basis = space.basis
        grown = span(basis + tuple(bracket(L, basis[a], basis[b])
                                   for a in range(len(basis)) for b in range(a + 1, len(basis))),
                      L.dim)
        if grown.dim == space.dim:
            return Subalgebra(L, space)
        space = grown


def derived_series(A: Subalgebra) -> list[Subspace]:
    """A, [A,A], [[A,A],[A,A]], ... ending at 0 or at the first repeated term.

    A repeated term is listed twice, so sl_2 gives [sl_2, sl_2].
    """
    series = [A.space]
    while series[-1].dim:
        b = series[-1].basis
        nxt = bracket_span(A.parent, b, b)
        series.append(nxt)
        if nxt.dim == series[-2].dim:
            break
    return series


def is_solvable(A: Subalgebra) -> bool:
    return derived_series(A)[-1].dim == 0


class Representation:
    """Linear action of ``algebra`` on Q^module_dim: one matrix per basis element.

    The homomorphism identity rho([x_i, x_j]) = [rho(x_i), rho(x_j)] is
    checked on all basis pairs unless ``check=False``.
    """

    def __init__(self, algebra: LieAlgebra, action: Sequence[Matrix], check: bool = True):
        if len(action) != algebra.dim:
            raise DimensionMismatch("one action matrix per basis element is required")
        n = action[0].rows if action else 0
        for m in action:
            if (m.rows, m.cols) != (n, n):
                raise DimensionMismatch("action matrices must all be square of the module dimension")
        self.algebra = algebra
        self.action = tuple(action)
        self.module_dim = n
        if check:
            bad = homomorphism_violations(self)
            if bad:
                raise NotAHomomorphism(f"rho([x_i,x_j]) != [rho(x_i),rho(x_j)] at {bad}")

    def rho(self, x: Sequence) -> Matrix:
        """Matrix of the element with coordinates ``x``."""
        n = self.module_dim
        acc = [[Fraction(0)] * n for _ in range(n)]
        for c, m in zip(x, self.action):
            if not c:
                continue
            for i, row in enumerate(m.entries):
                target = acc[i]
                for j, a in enumerate(row):
                    if a:
                        target[j] += c * a
        return Matrix(n, n, tuple(tuple(r) for r in acc))

    def act(self, x: Sequence, v: Sequence) -> Vector:
        return self.rho(x).apply(v)

    def __repr__(self) -> str:
        return f"Representation({self.algebra!r}, module_dim={self.module_dim})"


def homomorphism_violations(rep: Representation) -> list[tuple[int, int]]:
    L = rep.algebra
    bad = []
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = rep.rho(L.basis_bracket(i, j))
            if lhs != commutator(rep.action[i], rep.action[j]):
                bad.append((i, j))
    return bad


def action_kernel(rep: Representation, A: Subalgebra, on: Subspace | None = None) -> Subspace:
    """{x in A : rho(x) w = 0 for all w in ``on``} (``on`` defaults to the whole module).

    The result is a subspace of the parent algebra's coordinate space.
    """
    n = rep.module_dim
    targets = on.basis if on is not None else tuple(unit_vector(n, i) for i in range(n))
    basis = A.basis
    if not basis:
        return Subspace.zero(A.parent.dim)
    # column k: concatenated images rho(a_k) w over all w
    cols = []
    for a in basis:
        m = rep.rho(a)
        cols.append(tuple(x for w in targets for x in m.apply(w)))
    rows = len(cols[0])
    if rows == 0:
        return A.space
    coeffs = kernel(Matrix.from_columns(cols, rows))
    return span([lincomb(c, basis, A.parent.dim) for c in coeffs.basis], A.parent.dim)


def is_faithful(rep: Representation, A: Subalgebra, on: Subspace | None = None) -> bool:
    return action_kernel(rep, A, on).dim == 0


def generated_submodule(rep: Representation, A: Subalgebra, seeds: Iterable[Sequence]) -> Subspace:
    """Smallest A-invariant subspace containing ``seeds``."""
    n = rep.module_dim
    mats = [rep.rho(a) for a in A.basis]
    space = span(seeds, n)
    while True:
        grown = span(space.basis + tuple(m.apply(v) for m in mats for v in space.basis), n)
        if grown.dim == space.dim:
            return space
        space = grown


def is_invariant(rep: Representation, A: Subalgebra, W: Subspace) -> bool:
    return all(contains(W, rep.act(a, w)) for a in A.basis for w in W.basis)


# -- standard fixtures -------------------------------------------------------

def from_matrices(mats: Sequence[Matrix], names: Sequence[str] | None = None) -> tuple[LieAlgebra, Representation]:
    """Lie algebra spanned by linearly independent matrices closed under commutator.

    Returns the algebra together with its defining representation.
    """
    n = mats[0].rows
    coords = Matrix.from_columns([m.flat() for m in mats], n * n)
    table = {}
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            c = solve(coords, commutator(mats[i], mats[j]).flat())
            if c is None:
                raise NotClosed(f"commutator of matrices {i} and {j} leaves their span")
            table[(i, j)] = {k: a for k, a in enumerate(c) if a}
    L = LieAlgebra(len(mats), table, names)
    return L, Representation(L, mats)


def gl_basis_index(n: int, i: int, j: int) -> int:
    """Index of E_ij (0-based) in the row-major basis of gl_n."""
    return i * n + j


def gl(n: int) -> tuple[LieAlgebra, Representation]:
    """gl_n with basis E_ij in row-major order and its natural module Q^n."""
    mats = [Matrix.unit(n, i, j) for i in range(n) for j in range(n)]
    names = [f"E{i + 1}{j + 1}" if n < 10 else f"E{i + 1}_{j + 1}" for i in range(n) for j in range(n)]
    table = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    # [E_ij, E_kl] = d_jk E_il - d_li E_kj
                    entry: dict[int, Fraction] = {}
                    if j == k:
                        entry[gl_basis_index(n, i, l)] = entry.get(gl_basis_index(n, i, l), 0) + 1
                    if l == i:
                        idx = gl_basis_index(n, k, j)
                        entry[idx] = entry.get(idx, 0) - 1
                    if any(entry.values()):
                        table[(gl_basis_index(n, i, j), gl_basis_index(n, k, l))] = entry
    L = LieAlgebra(n * n, table, names)
    return L, Representation(L, mats, check=False)


def upper_triangular(L: LieAlgebra, n: int) -> Subalgebra:
    """The Borel subalgebra of upper-triangular matrices in gl_n (as built by :func:`gl`)."""
    return Subalgebra(L, span([unit_vector(n * n, gl_basis_index(n, i, j))
                               for i in range(n) for j in range(i, n)], n * n))


def matrix_coordinates(m: Matrix) -> Vector:
    """Coordinates of an n x n matrix in gl_n's row-major basis."""
    return m.flat()


def sl2() -> tuple[LieAlgebra, Representation]:
    h = Matrix.of([[1, 0], [0, -1]])
    e = Matrix.of([[0, 1], [0, 0]])
    f = Matrix.of([[0, 0], [1, 0]])
    return from_matrices([h, e, f], ["h", "e", "f"])


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, {}, None)


def two_dim_nonabelian() -> LieAlgebra:
    """Span of x, y with [x, y] = y."""
    return LieAlgebra(2, {(0, 1): {1: 1}}, ["x", "y"])


def zero_representation(L: LieAlgebra, module_dim: int) -> Representation:
    return Representation(L, [Matrix.zeros(module_dim, module_dim)] * L.dim, check=False)


def element_of(rep: Representation, A: Subalgebra, m: Matrix) -> Vector:
    """Coordinates of the element of A acting by ``m`` (rep assumed faithful on A)."""
    cols = [rep.rho(a).flat() for a in A.basis]
    c = solve(Matrix.from_columns(cols, rep.module_dim ** 2), m.flat())
    if c is None:
        raise ValueError("matrix is not in the image of the subalgebra")
    return lincomb(c, A.basis, A.parent.dim)


__all__ = [
    "LieAlgebra", "Subalgebra", "Representation", "bracket", "verify", "subalgebra_closure",
    "derived_series", "is_solvable", "action_kernel", "is_faithful", "generated_submodule",
    "is_invariant", "gl", "sl2", "abelian", "two_dim_nonabelian", "from_matrices",
    "upper_triangular", "gl_basis_index", "zero_representation", "bracket_span",
    "matrix_coordinates", "element_of",
]
