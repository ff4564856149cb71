"""Lie's theorem as an algorithm, plus the faithful-submodule search.

Everything here is exact.  Where an eigenvalue is needed it must be
rational; otherwise :class:`FieldNotSplit` is raised.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import FieldNotSplit, NotFaithful, NotSolvable, ZeroModule
from .exactlinalg import (
    Matrix,
    Subspace,
    Vector,
    contains,
    eigen_key,
    is_zero,
    kernel,
    rational_eigenvalues,
    span,
    subspace_sum,
    unit_vector,
)
from .flags import Flag
from .liealg import (
    Representation,
    Subalgebra,
    action_kernel,
    bracket_span,
    generated_submodule,
    is_faithful,
    is_solvable,
)


@dataclass(frozen=True)
class Weight:
    """Linear functional on a subalgebra, fixed by its values on the echelon basis."""

    algebra: Subalgebra = field(compare=False)
    values: tuple  # value on each basis vector of ``algebra``

    def __call__(self, x: Sequence) -> Fraction:
        coords = self.algebra.space.coordinates(tuple(Fraction(a) for a in x))
        return sum((c * v for c, v in zip(coords, self.values)), Fraction(0))


def _weight_of(rep: Representation, A: Subalgebra, v: Vector) -> Weight:
    values = []
    k = next(i for i, a in enumerate(v) if a)
    for a in A.basis:
        image = rep.act(a, v)
        lam = image[k] / v[k]
        if image != tuple(lam * c for c in v):
            raise AssertionError("vector is not a common eigenvector")
        values.append(lam)
    return Weight(A, tuple(values))


def codim_one_ideal(A: Subalgebra) -> Subalgebra:
    """[A,A] extended by A's basis vectors in order until it has codimension 1 in A.

    Any such subspace is an ideal because it contains [A,A].  A must be
    solvable and nonzero.
    """
    b = A.basis
    space = bracket_span(A.parent, b, b)
    if space.dim == A.dim:
        raise NotSolvable("[A,A] = A")
    for v in b:
        if space.dim == A.dim - 1:
            break
        if not contains(space, v):
            space = subspace_sum(space, span([v], A.parent.dim))
    return Subalgebra(A.parent, space)


def _common_eigenvector(rep: Representation, A: Subalgebra) -> Vector:
    n = rep.module_dim
    mats = [rep.rho(a) for a in A.basis]
    if all(m.is_zero() for m in mats):
        return unit_vector(n, 0)
    ideal = codim_one_ideal(A)
    v0 = _common_eigenvector(rep, ideal)
    lam0 = _weight_of(rep, ideal, v0)
    # weight space of lam0 for the ideal; invariant under all of A
    eqs = []
    for a, lam in zip(ideal.basis, lam0.values):
        shifted = rep.rho(a) - Matrix.identity(n).scaled(lam)
        eqs.extend(shifted.entries)
    W = kernel(Matrix(len(eqs), n, tuple(eqs))) if eqs else Subspace.full(n)
    z = next(v for v in A.basis if not contains(ideal.space, v))
    rz = rep.rho(z)
    restricted = Matrix.from_columns([W.coordinates(rz.apply(w)) for w in W.basis], W.dim)
    eig = rational_eigenvalues(restricted)
    if not eig:
        raise FieldNotSplit(f"operator {restricted} on a weight space has no rational eigenvalue")
    _, space = min(eig, key=lambda p: eigen_key(p[0]))
    return W.from_coordinates(space.basis[0])


def common_eigenvector(rep: Representation, A: Subalgebra) -> tuple[Vector, Weight]:
    """A nonzero v and weight lam with rho(x) v = lam(x) v for every x in A.

    Induction on dim A: a codimension-one ideal I containing [A,A] has a
    common eigenvector by recursion; its full weight space W is stable under
    A, and an eigenvector of any z outside I restricted to W finishes.
    """
    if rep.module_dim == 0:
        raise ZeroModule("the module is zero-dimensional")
    if not is_solvable(A):
        raise NotSolvable("common eigenvectors are only guaranteed for solvable algebras")
    v = _common_eigenvector(rep, A)
    return v, _weight_of(rep, A, v)


def quotient_representation(rep: Representation, U: Subspace) -> tuple[Representation, tuple[int, ...]]:
    """Action on Q^n / U using the unit vectors at U's non-pivot coordinates as basis.

    Returns the quotient representation and those coordinate indices.
    """
    comp = U.complement_indices()
    n = rep.module_dim
    mats = []
    for m in rep.action:
        cols = []
        for c in comp:
            image = U.reduce(m.apply(unit_vector(n, c)))
            cols.append(tuple(image[i] for i in comp))
        mats.append(Matrix.from_columns(cols, len(comp)))
    return Representation(rep.algebra, mats, check=False), comp


def full_flag(rep: Representation, A: Subalgebra) -> Flag:
    """A full flag of the module whose members are all A-invariant.

    Each step takes a common eigenvector of A on V / V_i and adds its lift.
    """
    if not is_solvable(A):
        raise NotSolvable("Lie's theorem needs a solvable algebra")
    n = rep.module_dim
    chain = [Subspace.zero(n)]
    while chain[-1].dim < n:
        U = chain[-1]
        quot, comp = quotient_representation(rep, U)
        w = _common_eigenvector(quot, A)
        lift = [Fraction(0)] * n
        for c, a in zip(comp, w):
            lift[c] = a
        chain.append(subspace_sum(U, span([lift], n)))
    return Flag(n, tuple(chain))


@dataclass
class FaithfulRun:
    """Trace of the faithful-submodule search."""

    space: Subspace
    seed: Vector
    kernel_dims: list[int]
    witnesses: list[Vector]

    @property
    def enlargements(self) -> int:
        return len(self.witnesses)


def faithful_submodule_run(rep: Representation, A: Subalgebra, seed: Sequence | None = None) -> FaithfulRun:
    """Grow an A-submodule until A acts faithfully on it, recording each kernel.

    The seed defaults to the first standard basis vector.  While the kernel K
    of the action on the current submodule is nonzero, take the first basis
    vector x of K and the first standard basis vector e with x.e != 0, and
    enlarge the submodule by e.
    """
    n = rep.module_dim
    if n == 0 and A.dim:
        raise NotFaithful("a zero module is not faithful for a nonzero algebra")
    if not is_faithful(rep, A):
        raise NotFaithful("the ambient module is not faithful on the subalgebra")
    if n == 0:
        return FaithfulRun(Subspace.zero(0), (), [0], [])
    v1 = tuple(Fraction(a) for a in seed) if seed is not None else unit_vector(n, 0)
    if is_zero(v1):
        raise ValueError("seed vector must be nonzero")
    W = generated_submodule(rep, A, [v1])
    K = action_kernel(rep, A, on=W)
    dims = [K.dim]
    witnesses: list[Vector] = []
    while K.dim:
        x = K.basis[0]
        m = rep.rho(x)
        witness = next(unit_vector(n, i) for i in range(n) if not is_zero(m.column(i)))
        witnesses.append(witness)
        W = generated_submodule(rep, A, W.basis + (witness,))
        K = action_kernel(rep, A, on=W)
        if K.dim >= dims[-1]:
            raise AssertionError("kernel dimension failed to decrease")
        dims.append(K.dim)
    return FaithfulRun(W, v1, dims, witnesses)


def faithful_submodule(rep: Representation, A: Subalgebra, seed: Sequence | None = None) -> Subspace:
    return faithful_submodule_run(rep, A, seed).space
