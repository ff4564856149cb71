
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flagstab.errors import InvalidFlag, NotAChain
from flagstab.exactlinalg import Matrix, Subspace, inverse, span, unit_vector, vec
from flagstab.flags import (
    Flag,
    is_generalized_flag,
    is_maximal,
    is_stabilized,
    pull_back,
    push_forward,
    quotient_dims,
    restrict_chain,
    stabilizer,
)
from flagstab.liealg import Subalgebra, gl, gl_basis_index, is_solvable, subalgebra_closure, upper_triangular


def e(n, i):
    return unit_vector(n, i)


def E(n, i, j):
    return unit_vector(n * n, gl_basis_index(n, i, j))


def brute_stabilizer_dim(f, V, L):
    # oracle: gl_n is spanned by E_ij; for coordinate flags an element preserves
    # the flag iff each of its unit components does
    return sum(1 for x in L.basis()
               if all(s.basis == () or all(V.act(x, v) in s for v in s.basis) for s in f.chain))


class TestGeneralizedFlag:
    def test_standard(self):
        assert is_generalized_flag(Flag.standard(3).chain).clean

    def test_coarse_flag_is_flag_not_maximal(self):
        r = is_generalized_flag([Subspace.zero(3), span([e(3, 0)], 3), Subspace.full(3)])
        assert r.clean and r.facts["maximal"] == "no"

    def test_incomparable(self):
        r = is_generalized_flag([Subspace.zero(2), span([e(2, 0)], 2), span([e(2, 1)], 2), Subspace.full(2)])
        assert not r.clean

    def test_missing_zero(self):
        assert not is_generalized_flag([span([e(2, 0)], 2), Subspace.full(2)]).clean


class TestFlagObject:
    def test_validation(self):
        with pytest.raises(InvalidFlag):
            Flag(2, (Subspace.zero(2), span([e(2, 1)], 2), span([e(2, 0)], 2), Subspace.full(2)))

    def test_maximal(self):
        assert is_maximal(Flag.standard(4))
        assert not is_maximal(Flag(3, (Subspace.zero(3), span([e(3, 0)], 3), Subspace.full(3))))

    def test_quotient_dims(self):
        assert quotient_dims(Flag.standard(3)) == [1, 1, 1]


class TestStabilizer:
    def test_standard_flag_gl3(self, gl3):
        L, V = gl3
        st_ = stabilizer(Flag.standard(3), V, Subalgebra.whole(L))
        assert st_.dim == 6 == brute_stabilizer_dim(Flag.standard(3), V, L)
        assert st_.space == upper_triangular(L, 3).space

    def test_trivial_flag(self, gl2):
        L, V = gl2
        f = Flag(2, (Subspace.zero(2), Subspace.full(2)))
        assert stabilizer(f, V, Subalgebra.whole(L)).dim == 4

    def test_coarse_flag_gives_parabolic(self, gl2):
        L, V = gl2
        f = Flag(2, (Subspace.zero(2), span([e(2, 0)], 2), Subspace.full(2)))
        assert stabilizer(f, V, Subalgebra.whole(L)).dim == 3

    def test_in_subalgebra(self, gl3):
        L, V = gl3
        A = subalgebra_closure(L, [E(3, 0, 1), E(3, 1, 0)])
        st_ = stabilizer(Flag.standard(3), V, A)
        assert A.dim == 3
        assert st_ <= A and st_.dim == 2

    @settings(max_examples=15, deadline=None)
    @given(st.lists(st.integers(-2, 2), min_size=3, max_size=3))
    def test_conjugated_flag(self, low):
        # oracle: the stabilizer of g F is g b g^-1, which is solvable of dim 6
        L, V = gl(3)
        g = Matrix.of([[1, 0, 0], [low[0], 1, 0], [low[1], low[2], 1]])
        f = Flag.standard(3).transformed(g)
        st_ = stabilizer(f, V, Subalgebra.whole(L))
        gi = inverse(g)
        expected = span([tuple(a for r in (g @ Matrix.unit(3, i, j) @ gi).entries for a in r)
                         for i in range(3) for j in range(i, 3)], 9)
        assert st_.space == expected and is_solvable(st_)


class TestIsStabilized:
    def test_borel(self, gl3):
        L, V = gl3
        assert is_stabilized(Flag.standard(3), V, upper_triangular(L, 3))

    def test_lower_unit(self, gl2):
        L, V = gl2
        A = subalgebra_closure(L, [E(2, 1, 0)])
        assert not is_stabilized(Flag.standard(2), V, A)

    def test_zero_algebra(self, gl3):
        L, V = gl3
        assert is_stabilized(Flag.standard(3).transformed(Matrix.of([[0, 1, 0], [1, 0, 0], [0, 0, 1]])),
                             V, Subalgebra.zero(L))


class TestRestrict:
    def test_standard_to_plane(self):
        W = span([e(3, 0), e(3, 1)], 3)
        r = restrict_chain(Flag.standard(3).chain, W, maximal=True)
        assert [s.dim for s in r.chain] == [0, 1, 2]

    def test_transverse_plane(self):
        W = span([e(3, 1), e(3, 2)], 3)
        r = restrict_chain(Flag.standard(3).chain, W, maximal=True)
        assert [s.dim for s in r.chain] == [0, 1, 2]
        # V2 cap W = <e2>, whose coordinates in W's echelon basis are (1, 0)
        assert r[1] == span([vec(1, 0)], 2)

    def test_not_a_chain(self):
        with pytest.raises(NotAChain):
            restrict_chain([span([e(2, 0)], 2), span([e(2, 1)], 2)], Subspace.full(2))

    def test_pull_push(self):
        inc = Matrix.of([[1, 0], [0, 1], [0, 0]])
        s = span([e(3, 1), e(3, 2)], 3)
        assert pull_back(inc, s) == span([e(2, 1)], 2)
        assert push_forward(inc, span([e(2, 0)], 2)) == span([e(3, 0)], 3)

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.lists(st.integers(-2, 2), min_size=4, max_size=4), min_size=1, max_size=3))
    def test_restriction_of_full_flag_is_full(self, vecs):
        W = span(vecs, 4)
        if W.dim == 0:
            return
        r = restrict_chain(Flag.standard(4).chain, W, maximal=True)
        assert is_maximal(r) and r.ambient_dim == W.dim
