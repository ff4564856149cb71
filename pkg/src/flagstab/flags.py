"""Flags in finite-dimensional spaces, their stabilizers, and restriction of chains."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch, InvalidFlag, NotAChain
from .exactlinalg import (
    Matrix,
    Subspace,
    annihilator,
    contains,
    dot,
    kernel,
    lincomb,
    span,
    subspace_intersect,
    subspace_leq,
    unit_vector,
)
from .liealg import Representation, Subalgebra
from .report import Report


@dataclass(frozen=True)
class Flag:
    """Strictly increasing chain of subspaces from 0 to the whole space."""

    ambient_dim: int
    chain: tuple

    def __post_init__(self):
        chain = self.chain
        if not chain:
            raise InvalidFlag("a flag has at least one member")
        for s in chain:
            if s.ambient_dim != self.ambient_dim:
                raise InvalidFlag("flag members live in different ambient spaces")
        if chain[0].dim != 0:
            raise InvalidFlag("a flag starts at the zero subspace")
        if chain[-1].dim != self.ambient_dim:
            raise InvalidFlag("a flag ends at the whole space")
        for a, b in zip(chain, chain[1:]):
            if not (a.dim < b.dim and subspace_leq(a, b)):
                raise InvalidFlag("flag members must be strictly increasing by inclusion")

    @classmethod
    def from_subspaces(cls, subspaces: Iterable[Subspace]) -> Flag:
        chain = tuple(subspaces)
        if not chain:
            raise InvalidFlag("a flag has at least one member")
        return cls(chain[0].ambient_dim, chain)

    @classmethod
    def standard(cls, n: int) -> Flag:
        return cls(n, tuple(span([unit_vector(n, i) for i in range(k)], n) for k in range(n + 1)))

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence], n: int) -> Flag:
        """Full flag whose i-th member is spanned by the first i vectors."""
        return cls(n, tuple(span(vectors[:k], n) for k in range(n + 1)))

    @property
    def is_full(self) -> bool:
        return all(b.dim - a.dim == 1 for a, b in zip(self.chain, self.chain[1:]))

    def __len__(self) -> int:
        return len(self.chain)

    def __getitem__(self, i: int) -> Subspace:
        return self.chain[i]

    def transformed(self, g: Matrix) -> Flag:
        """Image g.F of the flag under an invertible matrix."""
        return Flag(self.ambient_dim, tuple(span([g.apply(v) for v in s.basis], self.ambient_dim)
                                            for s in self.chain))


def _sorted_chain(subspaces: Iterable[Subspace]) -> tuple[list[Subspace], list[str]]:
    members = list(dict.fromkeys(subspaces))
    problems = []
    members.sort(key=lambda s: s.dim)
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            a, b = members[i], members[j]
            if not subspace_leq(a, b):
                problems.append(f"members {a} and {b} are not comparable by inclusion")
    return members, problems


def is_generalized_flag(subspaces: Iterable[Subspace]) -> Report:
    """Check the generalized-flag axioms for a finite set of subspaces.

    Over a finite-dimensional ambient the cover condition (every nonzero
    vector lies in exactly one gap between a member and its successor)
    comes down to the set containing 0 and the whole space; it is tested
    on the standard basis and on every member's basis vectors.
    """
    subspaces = list(subspaces)
    report = Report("generalized_flag")
    if not subspaces:
        report.fail("empty set of subspaces")
        return report
    n = subspaces[0].ambient_dim
    if any(s.ambient_dim != n for s in subspaces):
        report.fail("subspaces live in different ambient spaces")
        return report
    members, problems = _sorted_chain(subspaces)
    for p in problems:
        report.fail(p)
    report.fact("members", len(members))
    report.fact("dims", [s.dim for s in members])
    if problems:
        return report
    if len(members) == 1 and n > 0:
        report.fail("a lone member has neither an immediate predecessor nor a successor")
    probes = [unit_vector(n, i) for i in range(n)] + [v for s in members for v in s.basis]
    for v in probes:
        gaps = [k for k in range(1, len(members))
                if contains(members[k], v) and not contains(members[k - 1], v)]
        if len(gaps) != 1:
            report.fail(f"vector {tuple(str(a) for a in v)} lies in {len(gaps)} gaps")
    if members[0].dim != 0:
        report.fail("zero subspace missing")
    if members[-1].dim != n:
        report.fail("whole space missing")
    if report.clean:
        report.fact("maximal", all(b.dim - a.dim == 1 for a, b in zip(members, members[1:])))
    return report


def is_maximal(f: Flag | Iterable[Subspace]) -> bool:
    chain = f.chain if isinstance(f, Flag) else tuple(f)
    report = is_generalized_flag(chain)
    if not report.clean:
        raise InvalidFlag("; ".join(report.failures))
    members, _ = _sorted_chain(chain)
    return all(b.dim - a.dim == 1 for a, b in zip(members, members[1:]))


def _check_flag(f: Flag, rep: Representation) -> None:
    if not isinstance(f, Flag):
        raise InvalidFlag("expected a Flag")
    if f.ambient_dim != rep.module_dim:
        raise InvalidFlag(f"flag lives in Q^{f.ambient_dim} but the module is Q^{rep.module_dim}")


def stabilizer(f: Flag, rep: Representation, ambient: Subalgebra) -> Subalgebra:
    """{x in ambient : rho(x) F_i is contained in F_i for every member F_i}.

    Solved as one linear system in the coordinates of ``ambient``: for each
    member S, each basis vector s of S and each functional w vanishing on S,
    require w . rho(x) s = 0.
    """
    _check_flag(f, rep)
    basis = ambient.basis
    mats = [rep.rho(a) for a in basis]
    rows = []
    for s in f.chain:
        if s.dim in (0, rep.module_dim):
            continue
        ann = annihilator(s).basis
        for v in s.basis:
            images = [m.apply(v) for m in mats]
            for w in ann:
                rows.append(tuple(dot(w, im) for im in images))
    L = ambient.parent
    if not basis:
        return Subalgebra.zero(L)
    if not rows:
        return ambient
    coeffs = kernel(Matrix(len(rows), len(basis), tuple(rows)))
    return Subalgebra(L, span([lincomb(c, basis, L.dim) for c in coeffs.basis], L.dim))


def is_stabilized(f: Flag, rep: Representation, A: Subalgebra) -> bool:
    _check_flag(f, rep)
    for a in A.basis:
        m = rep.rho(a)
        for s in f.chain:
            if not all(contains(s, m.apply(v)) for v in s.basis):
                return False
    return True


def restrict_chain(subspaces: Iterable[Subspace], W: Subspace, maximal: bool = False) -> Flag:
    """Intersect a chain with W and express the distinct results in W's coordinates.

    Coordinates are taken in W's echelon basis.  The zero subspace and W
    itself are always members of the result.  With ``maximal=True`` the input
    is asserted to be a maximal chain and the result is checked to be a full
    flag of W.
    """
    subspaces = list(subspaces)
    for s in subspaces:
        if s.ambient_dim != W.ambient_dim:
            raise DimensionMismatch("chain and W live in different ambient spaces")
    members, problems = _sorted_chain(subspaces)
    if problems:
        raise NotAChain(problems[0])
    cuts = [subspace_intersect(s, W) for s in members]
    if maximal:
        if not is_maximal(members):
            raise InvalidFlag("maximality certificate supplied for a non-maximal chain")
        for a, b in zip(cuts, cuts[1:]):
            if b.dim - a.dim > 1:
                raise InvalidFlag("restriction of a maximal chain jumped by more than one")
    local = [span([W.coordinates(v) for v in c.basis], W.dim) for c in cuts]
    local = [Subspace.zero(W.dim), *local, Subspace.full(W.dim)]
    result = Flag(W.dim, tuple(dict.fromkeys(local)))
    if maximal and not result.is_full:
        raise InvalidFlag("restriction of a maximal chain is not a full flag")
    return result


def pull_back(emb: Matrix, s: Subspace) -> Subspace:
    """Preimage of s under an injective linear map ``emb``."""
    if emb.rows != s.ambient_dim:
        raise DimensionMismatch("embedding target differs from the subspace's ambient")
    # x with emb x in s  <=>  w . emb x = 0 for all w annihilating s
    eqs = [tuple(dot(w, col) for col in emb.columns()) for w in annihilator(s).basis]
    if not eqs:
        return Subspace.full(emb.cols)
    return kernel(Matrix(len(eqs), emb.cols, tuple(eqs)))


def push_forward(emb: Matrix, s: Subspace) -> Subspace:
    return span([emb.apply(v) for v in s.basis], emb.rows)


def quotient_dims(f: Flag) -> list[int]:
    return [b.dim - a.dim for a, b in zip(f.chain, f.chain[1:])]


__all__ = [
    "Flag", "is_generalized_flag", "is_maximal", "stabilizer", "is_stabilized",
    "restrict_chain", "pull_back", "push_forward", "quotient_dims",
]
