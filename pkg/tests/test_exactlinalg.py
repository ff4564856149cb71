from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from flagstab.errors import DimensionMismatch
from flagstab.exactlinalg import (
    Matrix,
    Subspace,
    charpoly,
    contains,
    format_rational,
    inverse,
    kernel,
    parse_rational,
    rational_eigenvalues,
    rref,
    solve,
    span,
    subspace_intersect,
    subspace_leq,
    subspace_sum,
    unit_vector,
    vec,
)

e = lambda n, i: unit_vector(n, i)  # noqa: E731

small = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(
        lambda r: Matrix.of(r, cols))


@st.composite
def subspace_pairs(draw):
    n = draw(st.integers(1, 5))
    a = draw(st.lists(st.lists(small, min_size=n, max_size=n), max_size=n))
    b = draw(st.lists(st.lists(small, min_size=n, max_size=n), max_size=n))
    return span(a, n), span(b, n)


class TestRationalGrammar:
    @pytest.mark.parametrize("text, value", [("3", Fraction(3)), ("-2/5", Fraction(-2, 5)),
                                             ("4/2", Fraction(2)), ("0", Fraction(0))])
    def test_parse(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize("text", ["1/0", "1.5", "", "a", "1/-2", "+3"])
    def test_reject(self, text):
        with pytest.raises(ValueError):
            parse_rational(text)

    def test_format_omits_unit_denominator(self):
        assert format_rational(Fraction(6, 3)) == "2"
        assert format_rational(Fraction(-1, 2)) == "-1/2"


class TestRref:
    def test_identity(self):
        assert rref(Matrix.identity(2)) == Matrix.identity(2)

    def test_hand_elimination(self):
        assert rref(Matrix.of([[2, 4], [1, 2]])) == Matrix.of([[1, 2], [0, 0]])

    def test_zero(self):
        assert rref(Matrix.zeros(3, 3)) == Matrix.zeros(3, 3)

    @given(matrices(3, 4))
    def test_idempotent_and_row_space(self, m):
        r = rref(m)
        assert rref(r) == r
        row_space = span(r.entries, 4)
        assert all(contains(row_space, row) for row in m.entries)
        assert row_space == span(m.entries, 4)


class TestSpan:
    def test_idempotent(self):
        s = span([e(3, 0), e(3, 0)], 3)
        assert s.dim == 1 and s.basis == (e(3, 0),)

    def test_empty(self):
        assert span([], 2) == Subspace.zero(2)

    def test_full_from_determinant(self):
        assert span([vec(1, 1), vec(1, -1)], 2) == Subspace.full(2)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            span([vec(1, 2, 3)], 2)


class TestSumIntersect:
    def test_complementary_lines(self):
        a, b = span([e(2, 0)], 2), span([e(2, 1)], 2)
        assert subspace_sum(a, b) == Subspace.full(2)
        assert subspace_intersect(a, b) == Subspace.zero(2)

    def test_idempotence(self):
        a = span([vec(1, 2, 0)], 3)
        assert subspace_sum(a, a) == a == subspace_intersect(a, a)

    def test_planes_in_three_space(self):
        a = span([e(3, 0), e(3, 1)], 3)
        b = span([e(3, 1), e(3, 2)], 3)
        assert subspace_intersect(a, b) == span([e(3, 1)], 3)

    def test_ambient_mismatch(self):
        with pytest.raises(DimensionMismatch):
            subspace_sum(Subspace.zero(2), Subspace.zero(3))

    @settings(max_examples=150)
    @given(subspace_pairs())
    def test_dimension_formula(self, pair):
        a, b = pair
        s, i = subspace_sum(a, b), subspace_intersect(a, b)
        assert a.dim + b.dim == s.dim + i.dim
        assert subspace_leq(i, a) and subspace_leq(i, b)
        assert subspace_leq(a, s) and subspace_leq(b, s)


class TestMembership:
    def test_zero_subspace(self):
        z = Subspace.zero(2)
        assert contains(z, vec(0, 0))
        assert not contains(z, vec(0, 1))

    def test_reflexive(self):
        a = span([vec(1, 2, 3)], 3)
        assert subspace_leq(a, a)

    def test_scalar_multiple(self):
        assert contains(span([vec(1, 2)], 2), vec(2, 4))
        assert not contains(span([vec(1, 2)], 2), vec(2, 3))

    def test_ambient_mismatch(self):
        with pytest.raises(DimensionMismatch):
            contains(Subspace.zero(2), vec(1, 2, 3))


class TestKernelSolve:
    def test_identity(self):
        assert kernel(Matrix.identity(3)) == Subspace.zero(3)

    def test_zero(self):
        assert kernel(Matrix.zeros(3, 3)) == Subspace.full(3)

    def test_rank_one(self):
        assert kernel(Matrix.of([[1, 1], [2, 2]])) == span([vec(1, -1)], 2)

    def test_inconsistent(self):
        assert solve(Matrix.of([[1, 1], [2, 2]]), vec(1, 3)) is None

    @given(matrices(3, 3), st.lists(small, min_size=3, max_size=3))
    def test_solution_checks(self, m, rhs):
        x = solve(m, rhs)
        if x is not None:
            assert m.apply(x) == tuple(rhs)
        for v in kernel(m).basis:
            assert not any(m.apply(v))

    def test_inverse(self):
        g = Matrix.of([[1, 0, 0], [1, 1, 0], [2, -1, 1]])
        assert g @ inverse(g) == Matrix.identity(3)


class TestEigen:
    def test_diagonal(self):
        got = rational_eigenvalues(Matrix.of([[1, 0], [0, 2]]))
        assert got == [(Fraction(1), span([e(2, 0)], 2)), (Fraction(2), span([e(2, 1)], 2))]

    def test_nilpotent(self):
        assert rational_eigenvalues(Matrix.of([[0, 1], [0, 0]])) == [(Fraction(0), span([e(2, 0)], 2))]

    def test_rotation_has_none(self):
        assert rational_eigenvalues(Matrix.of([[0, -1], [1, 0]])) == []

    @given(matrices(4, 4))
    def test_charpoly_against_sympy(self, m):
        t = sympy.Symbol("t")
        expected = sympy.Matrix([[sympy.Rational(a.numerator, a.denominator) for a in r]
                                 for r in m.entries]).charpoly(t).all_coeffs()[::-1]
        assert [sympy.Rational(c.numerator, c.denominator) for c in charpoly(m)] == expected

    @settings(max_examples=60)
    @given(matrices(3, 3))
    def test_eigenvalues_against_sympy(self, m):
        sm = sympy.Matrix([[sympy.Rational(a.numerator, a.denominator) for a in r] for r in m.entries])
        rational = sorted(r for r in sm.eigenvals() if r.is_rational)
        got = rational_eigenvalues(m)
        assert sorted(sympy.Rational(l.numerator, l.denominator) for l, _ in got) == rational
        for lam, space in got:
            shifted = m - Matrix.identity(3).scaled(lam)
            assert space.dim >= 1
            assert all(not any(shifted.apply(v)) for v in space.basis)
