from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flagstab.errors import NotAHomomorphism, NotAntisymmetric, NotClosed
from flagstab.exactlinalg import Matrix, Subspace, commutator, span, subspace_leq, unit_vector
from flagstab.liealg import (
    LieAlgebra,
    Representation,
    Subalgebra,
    abelian,
    action_kernel,
    bracket,
    derived_series,
    generated_submodule,
    gl_basis_index,
    is_faithful,
    is_invariant,
    is_solvable,
    matrix_coordinates,
    subalgebra_closure,
    two_dim_nonabelian,
    upper_triangular,
    verify,
)


def E(n, i, j):
    return unit_vector(n * n, gl_basis_index(n, i, j))


def as_matrix(v, n):
    return Matrix(n, n, tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n)))


class TestBracket:
    def test_sl2_relations(self, sl2_pair):
        L, _ = sl2_pair
        h, e, f = L.basis()
        assert bracket(L, h, e) == tuple(2 * a for a in e)
        assert bracket(L, h, f) == tuple(-2 * a for a in f)
        assert bracket(L, e, f) == h

    def test_abelian(self):
        L = abelian(3)
        x, y, _ = L.basis()
        assert bracket(L, x, y) == (0, 0, 0)

    def test_antisymmetric_on_basis(self, gl3):
        L, _ = gl3
        b = L.basis()
        for x, y in product(b, b):
            assert bracket(L, x, y) == tuple(-a for a in bracket(L, y, x))

    @given(st.lists(st.integers(-3, 3), min_size=9, max_size=9),
           st.lists(st.integers(-3, 3), min_size=9, max_size=9))
    def test_gl3_matches_matrix_commutator(self, x, y):
        from flagstab.liealg import gl
        L, _ = gl(3)
        xf, yf = tuple(map(Fraction, x)), tuple(map(Fraction, y))
        assert bracket(L, xf, yf) == matrix_coordinates(commutator(as_matrix(xf, 3), as_matrix(yf, 3)))


class TestVerify:
    def test_sl2_clean(self, sl2_pair):
        assert verify(sl2_pair[0]) == []

    def test_two_dim_nonabelian_clean(self):
        assert verify(two_dim_nonabelian()) == []

    def test_gl3_clean(self, gl3):
        assert verify(gl3[0]) == []

    def test_broken_antisymmetry_rejected_by_default(self):
        with pytest.raises(NotAntisymmetric):
            LieAlgebra(2, {(0, 1): {1: 1}, (1, 0): {1: 1}})

    def test_broken_antisymmetry_reported(self):
        L = LieAlgebra(2, {(0, 1): {1: 1}, (1, 0): {1: 1}}, strict=False)
        assert any("antisymm" in p for p in verify(L))

    def test_jacobi_failure(self):
        # [x,y]=z, [y,z]=x, [x,z]=x breaks Jacobi
        L = LieAlgebra(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {0: 1}})
        assert any("Jacobi" in p for p in verify(L))


class TestSubalgebra:
    def test_closure_of_offdiagonal_gl2(self, gl2):
        L, _ = gl2
        A = subalgebra_closure(L, [E(2, 0, 1), E(2, 1, 0)])
        assert A.dim == 3
        assert (E(2, 0, 0)[0] - E(2, 1, 1)[0], 0, 0, -1) in A

    def test_not_closed(self, gl2):
        L, _ = gl2
        with pytest.raises(NotClosed):
            Subalgebra(L, span([E(2, 0, 1), E(2, 1, 0)], 4))

    def test_borel_dimension(self, gl3):
        assert upper_triangular(gl3[0], 3).dim == 6

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.sampled_from([(i, j) for i in range(3) for j in range(3)]), max_size=3),
           st.lists(st.sampled_from([(i, j) for i in range(3) for j in range(3)]), max_size=2))
    def test_closure_operator_laws(self, gens, more):
        from flagstab.liealg import gl
        L, _ = gl(3)
        g = [E(3, i, j) for i, j in gens]
        A = subalgebra_closure(L, g)
        assert all(v in A for v in g)
        assert subalgebra_closure(L, A.basis).space == A.space
        B = subalgebra_closure(L, g + [E(3, i, j) for i, j in more])
        assert A <= B
        for x, y in product(A.basis, A.basis):
            assert bracket(L, x, y) in A


class TestDerivedSeries:
    def test_sl2_perfect(self, sl2_pair):
        A = Subalgebra.whole(sl2_pair[0])
        assert [s.dim for s in derived_series(A)] == [3, 3]
        assert not is_solvable(A)

    def test_two_dim(self):
        A = Subalgebra.whole(two_dim_nonabelian())
        assert [s.dim for s in derived_series(A)] == [2, 1, 0]
        assert is_solvable(A)

    def test_abelian(self):
        assert [s.dim for s in derived_series(Subalgebra.whole(abelian(4)))] == [4, 0]

    @pytest.mark.parametrize("n, dims", [(2, [3, 1, 0]), (3, [6, 3, 1, 0])])
    def test_borel_against_matrix_commutators(self, n, dims):
        from flagstab.liealg import gl
        L, _ = gl(n)
        B = upper_triangular(L, n)
        assert [s.dim for s in derived_series(B)] == dims
        # oracle: iterate spans of matrix commutators directly
        current = [as_matrix(v, n) for v in B.basis]
        got = [len(current)]
        while current:
            comm = [matrix_coordinates(commutator(a, b)) for a in current for b in current]
            s = span(comm, n * n)
            current = [as_matrix(v, n) for v in s.basis]
            got.append(s.dim)
        assert got == dims

    def test_gl2_not_solvable(self, gl2):
        assert not is_solvable(Subalgebra.whole(gl2[0]))


class TestModules:
    def test_homomorphism_check(self, sl2_pair):
        L, _ = sl2_pair
        bad = [Matrix.of([[1, 0], [0, 0]]), Matrix.of([[0, 1], [0, 0]]), Matrix.of([[0, 0], [1, 0]])]
        with pytest.raises(NotAHomomorphism):
            Representation(L, bad)

    def test_kernel_of_natural_gl_is_zero(self, gl3):
        L, V = gl3
        assert action_kernel(V, Subalgebra.whole(L)) == Subspace.zero(9)
        assert is_faithful(V, Subalgebra.whole(L))

    def test_kernel_on_submodule(self, gl3):
        L, V = gl3
        A = subalgebra_closure(L, [E(3, 0, 1)])
        line = span([unit_vector(3, 0)], 3)
        assert action_kernel(V, A, on=line) == A.space
        assert not is_faithful(V, A, on=line)

    def test_generated_submodule(self, gl3):
        L, V = gl3
        B = upper_triangular(L, 3)
        assert generated_submodule(V, B, [unit_vector(3, 1)]) == span([unit_vector(3, 0), unit_vector(3, 1)], 3)
        assert generated_submodule(V, Subalgebra.whole(L), [unit_vector(3, 2)]) == Subspace.full(3)

    def test_invariance(self, gl3):
        L, V = gl3
        B = upper_triangular(L, 3)
        assert is_invariant(V, B, span([unit_vector(3, 0)], 3))
        assert not is_invariant(V, B, span([unit_vector(3, 1)], 3))

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), min_size=1, max_size=2))
    def test_generated_submodule_is_least_invariant(self, seeds):
        from flagstab.liealg import gl
        L, V = gl(3)
        B = upper_triangular(L, 3)
        W = generated_submodule(V, B, seeds)
        assert is_invariant(V, B, W)
        seeds_space = span(seeds, 3)
        assert subspace_leq(seeds_space, W)
        # every B-invariant subspace of Q^3 is a standard-flag member
        least = next(span([unit_vector(3, i) for i in range(k)], 3) for k in range(4)
                     if subspace_leq(seeds_space, span([unit_vector(3, i) for i in range(k)], 3)))
        assert W == least
