"""Finite chains of Lie algebras and modules, and a level-by-level check that a
solvable subalgebra equals the stabilizer of a compatible family of full flags.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import CapExceeded, InvalidChain
from .exactlinalg import Matrix, Subspace, inverse, lincomb, rank, span
from .flags import Flag, is_maximal, pull_back, push_forward, restrict_chain, stabilizer
from .liealg import (
    LieAlgebra,
    Representation,
    Subalgebra,
    bracket,
    derived_series,
    gl,
    gl_basis_index,
    is_solvable,
    subalgebra_closure,
    upper_triangular,
)
from .lietheorem import full_flag
from .report import Report

MAX_CHAIN = 6


@dataclass
class AlgebraChain:
    """Levels L_1 -> L_2 -> ... with modules V_1 -> V_2 -> ...

    ``embeddings[n]`` maps coordinates of L_n into L_{n+1};
    ``module_embeddings[n]`` maps V_n into V_{n+1}.  Both are validated:
    injective, bracket-preserving, and intertwining the actions.
    """

    algebras: list
    embeddings: list
    modules: list
    module_embeddings: list

    def __post_init__(self):
        n = len(self.algebras)
        if not (len(self.modules) == n and len(self.embeddings) == len(self.module_embeddings) == max(n - 1, 0)):
            raise InvalidChain("expected one module per level and one embedding pair between levels")
        for k in range(n - 1):
            problems = embedding_problems(self, k)
            if problems:
                raise InvalidChain(f"level {k + 1} -> {k + 2}: {problems[0]}")

    def __len__(self) -> int:
        return len(self.algebras)

    def module_image(self, k: int) -> Subspace:
        """Image of V_k inside V_{k+1} (0-based level k)."""
        emb = self.module_embeddings[k]
        return span(emb.columns(), emb.rows)


def embedding_problems(chain: AlgebraChain, k: int) -> list[str]:
    src, dst = chain.algebras[k], chain.algebras[k + 1]
    emb, memb = chain.embeddings[k], chain.module_embeddings[k]
    rep_src, rep_dst = chain.modules[k], chain.modules[k + 1]
    problems = []
    if (emb.rows, emb.cols) != (dst.dim, src.dim) or rank(emb) != src.dim:
        problems.append("algebra embedding is not an injective map of the right shape")
        return problems
    if (memb.rows, memb.cols) != (rep_dst.module_dim, rep_src.module_dim) or rank(memb) != rep_src.module_dim:
        problems.append("module embedding is not an injective map of the right shape")
        return problems
    basis = src.basis()
    for i in range(src.dim):
        for j in range(i + 1, src.dim):
            lhs = emb.apply(bracket(src, basis[i], basis[j]))
            rhs = bracket(dst, emb.apply(basis[i]), emb.apply(basis[j]))
            if lhs != rhs:
                problems.append(f"algebra embedding does not preserve [x{i}, x{j}]")
    for i in range(src.dim):
        up = rep_dst.rho(emb.apply(basis[i]))
        if memb @ rep_src.action[i] != up @ memb:
            problems.append(f"module embedding does not intertwine the action of x{i}")
    return problems


def _corner_embedding(n: int) -> Matrix:
    """gl_n -> gl_{n+1}, E_ij -> E_ij."""
    cols = []
    for i in range(n):
        for j in range(n):
            c = [Fraction(0)] * (n + 1) ** 2
            c[gl_basis_index(n + 1, i, j)] = Fraction(1)
            cols.append(tuple(c))
    return Matrix.from_columns(cols, (n + 1) ** 2)


def _inclusion(n: int) -> Matrix:
    """Q^n -> Q^{n+1} onto the first n coordinates."""
    return Matrix(n + 1, n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n + 1)))


def build_gl_chain(N: int) -> AlgebraChain:
    """gl_1 -> ... -> gl_N with natural modules and upper-left corner embeddings."""
    if not 1 <= N <= MAX_CHAIN:
        raise CapExceeded(f"chain length must lie in 1..{MAX_CHAIN}")
    levels = [gl(n) for n in range(1, N + 1)]
    return AlgebraChain(
        [L for L, _ in levels],
        [_corner_embedding(n) for n in range(1, N)],
        [V for _, V in levels],
        [_inclusion(n) for n in range(1, N)],
    )


def conjugated_gl_chain(N: int, g: Matrix) -> AlgebraChain:
    """The gl chain with level n acting through g_n x g_n^{-1}, g_n the leading n x n block of g.

    Module embeddings become g_{n+1} . incl . g_n^{-1}, which keeps them
    intertwining.  Every leading block of g must be invertible.
    """
    if (g.rows, g.cols) != (N, N):
        raise ValueError(f"conjugator must be {N}x{N}")
    base = build_gl_chain(N)
    blocks = [Matrix(n, n, tuple(row[:n] for row in g.entries[:n])) for n in range(1, N + 1)]
    invs = [inverse(b) for b in blocks]
    modules = [Representation(L, [b @ m @ bi for m in V.action], check=False)
               for L, V, b, bi in zip(base.algebras, base.modules, blocks, invs)]
    membs = [blocks[n] @ base.module_embeddings[n - 1] @ invs[n - 1] for n in range(1, N)]
    return AlgebraChain(base.algebras, base.embeddings, modules, membs)


def borel_subchain(chain: AlgebraChain) -> list[Subalgebra]:
    """Upper-triangular subalgebra at every level of a gl chain."""
    out = []
    for L in chain.algebras:
        n = round(L.dim ** 0.5)
        out.append(upper_triangular(L, n))
    return out


@dataclass
class CompatibleFlagFamily:
    """One full flag per level, plus the flags Lie's theorem produced before restriction."""

    flags: list
    lie_flags: list

    def compatibility_failures(self, chain: AlgebraChain) -> list[int]:
        """Levels k (0-based) where restricting flag k+1 to V_k does not give flag k."""
        return [k for k in range(len(self.flags) - 1) if not compatible(chain, self.flags, k)]


def _restrict_down(chain: AlgebraChain, upper: Flag, k: int) -> Flag:
    image = chain.module_image(k)
    restricted = restrict_chain(upper.chain, image, maximal=upper.is_full)
    # restricted members live in the image's echelon coordinates; pull back to V_k
    emb = chain.module_embeddings[k]
    members = [pull_back(emb, span([image.from_coordinates(c) for c in s.basis], emb.rows))
               for s in restricted.chain]
    return Flag(emb.cols, tuple(members))


def compatible(chain: AlgebraChain, flags: Sequence[Flag], k: int) -> bool:
    emb = chain.module_embeddings[k]
    expected = [push_forward(emb, s) for s in flags[k].chain]
    image = chain.module_image(k)
    got = restrict_chain(flags[k + 1].chain, image)
    got = [span([image.from_coordinates(c) for c in s.basis], emb.rows) for s in got.chain]
    return expected == got


def flags_per_level(chain: AlgebraChain, borels: Sequence[Subalgebra]) -> CompatibleFlagFamily:
    """Lie's theorem flag at every level, then made compatible from the top down."""
    lie = [full_flag(V, B) for V, B in zip(chain.modules, borels)]
    flags = list(lie)
    for k in range(len(flags) - 2, -1, -1):
        flags[k] = _restrict_down(chain, flags[k + 1], k)
    return CompatibleFlagFamily(flags, lie)


def verify_main_theorem(chain: AlgebraChain, borels: Sequence[Subalgebra],
                        flags: CompatibleFlagFamily) -> Report:
    """Per level: stabilizer of the flag in the whole level algebra equals the
    given subalgebra, the stabilizer is solvable, the flag is maximal, and the
    flag restricts to the flag one level down."""
    report = Report("main_theorem")
    report.fact("levels", len(chain))
    for k, (L, V, B, f) in enumerate(zip(chain.algebras, chain.modules, borels, flags.flags)):
        n = k + 1
        st = stabilizer(f, V, Subalgebra.whole(L))
        equal = st.space == B.space
        report.fact(f"level.{n}.stabilizer_dim", st.dim)
        report.fact(f"level.{n}.subalgebra_dim", B.dim)
        report.fact(f"level.{n}.stabilizer_equals_subalgebra", equal)
        if not equal:
            report.fail(f"level {n}: stabilizer (dim {st.dim}) differs from the subalgebra (dim {B.dim})")
        solvable = is_solvable(st)
        report.fact(f"level.{n}.stabilizer_solvable", solvable)
        if not solvable:
            report.fail(f"level {n}: stabilizer is not solvable")
        maximal = is_maximal(f)
        report.fact(f"level.{n}.flag_maximal", maximal)
        if not maximal:
            report.fail(f"level {n}: flag is not maximal")
        if k + 1 < len(chain):
            ok = compatible(chain, flags.flags, k)
            report.fact(f"level.{n}.compatible_with_next", ok)
            if not ok:
                report.fail(f"level {n}: flag is not the restriction of level {n + 1}")
    return report


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-5, 5), rng.randint(1, 3))


def one_step_maximality_probe(L: LieAlgebra | Subalgebra, B: Subalgebra, trials: int = 20,
                              seed: int = 0) -> Report:
    """Look for a solvable subalgebra strictly between B and the level algebra.

    Tries B plus each standard complement vector, then ``trials`` random
    rational combinations of complement vectors.  A clean report is evidence
    of maximality, not proof; a failure carries the witness in
    ``report.extras["witness"]``.
    """
    ambient = L if isinstance(L, Subalgebra) else Subalgebra.whole(L)
    parent = ambient.parent
    report = Report("maximality_probe")
    if not is_solvable(B):
        report.fail("subalgebra is not solvable")
        return report
    # complement of B inside the ambient: ambient basis vectors outside B, greedily
    comp: list = []
    space = B.space
    for v in ambient.basis:
        grown = span(space.basis + (v,), parent.dim)
        if grown.dim > space.dim:
            comp.append(v)
            space = grown
    rng = random.Random(seed)
    candidates = list(comp)
    for _ in range(trials if comp else 0):
        coeffs = [_random_rational(rng) for _ in comp]
        if not any(coeffs):
            coeffs[0] = Fraction(1)
        candidates.append(lincomb(coeffs, comp, parent.dim))
    report.fact("complement_dim", len(comp))
    report.fact("candidates", len(candidates))
    for x in candidates:
        ext = subalgebra_closure(parent, B.basis + (x,))
        if ext.dim > B.dim and is_solvable(ext):
            report.fail(f"solvable proper extension of dim {ext.dim} found")
            report.extras["witness"] = ext
            report.extras["witness_series"] = derived_series(ext)
            break
    return report
