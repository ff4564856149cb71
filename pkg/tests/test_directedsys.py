import pytest

from flagstab.directedsys import (
    AlgebraChain,
    CompatibleFlagFamily,
    borel_subchain,
    build_gl_chain,
    compatible,
    conjugated_gl_chain,
    flags_per_level,
    one_step_maximality_probe,
    verify_main_theorem,
)
from flagstab.errors import CapExceeded, InvalidChain
from flagstab.exactlinalg import Matrix, Subspace, span, unit_vector, vec
from flagstab.flags import Flag
from flagstab.liealg import Subalgebra, gl, gl_basis_index, subalgebra_closure, upper_triangular


@pytest.mark.parametrize("N", [1, 2, 3])
def test_build_gl_chain(N):
    chain = build_gl_chain(N)
    assert [L.dim for L in chain.algebras] == [n * n for n in range(1, N + 1)]
    assert [V.module_dim for V in chain.modules] == list(range(1, N + 1))


def test_chain_caps():
    with pytest.raises(CapExceeded):
        build_gl_chain(7)
    with pytest.raises(CapExceeded):
        build_gl_chain(0)


def test_bad_module_embedding_rejected():
    good = build_gl_chain(2)
    swap = Matrix.of([[0], [1]])  # Q -> Q^2 onto e2 does not intertwine E11
    with pytest.raises(InvalidChain):
        AlgebraChain(good.algebras, good.embeddings, good.modules, [swap])


def test_borels():
    chain = build_gl_chain(3)
    assert [B.dim for B in borel_subchain(chain)] == [1, 3, 6]


def test_flags_are_standard_and_compatible():
    chain = build_gl_chain(3)
    fam = flags_per_level(chain, borel_subchain(chain))
    assert fam.flags == [Flag.standard(n) for n in (1, 2, 3)]
    assert fam.compatibility_failures(chain) == []


@pytest.mark.parametrize("N", [2, 3, 4])
def test_main_theorem_on_gl_chain(N):
    chain = build_gl_chain(N)
    borels = borel_subchain(chain)
    report = verify_main_theorem(chain, borels, flags_per_level(chain, borels))
    assert report.clean, report.failures
    for n in range(1, N + 1):
        assert report.facts[f"level.{n}.stabilizer_dim"] == str(n * (n + 1) // 2)


def test_conjugated_chain():
    g = Matrix.of([[1, 0, 0], [1, 1, 0], [1, 1, 1]])
    chain = conjugated_gl_chain(3, g)
    borels = borel_subchain(chain)
    fam = flags_per_level(chain, borels)
    assert verify_main_theorem(chain, borels, fam).clean
    # the invariant line at level 1 is g e1 in level 2
    assert fam.flags[1][1] == span([vec(1, 1)], 2)


def test_wrong_flag_at_level_two():
    chain = build_gl_chain(3)
    borels = borel_subchain(chain)
    fam = flags_per_level(chain, borels)
    bad = Flag(2, (Subspace.zero(2), span([unit_vector(2, 1)], 2), Subspace.full(2)))
    flags = list(fam.flags)
    flags[1] = bad
    report = verify_main_theorem(chain, borels, CompatibleFlagFamily(flags, fam.lie_flags))
    assert not report.clean
    assert report.facts["level.2.stabilizer_equals_subalgebra"] == "no"
    assert not compatible(chain, flags, 1)


def test_probe_on_borel_is_clean():
    L, _ = gl(2)
    assert one_step_maximality_probe(L, upper_triangular(L, 2)).clean


def test_probe_finds_extension_of_line():
    L, _ = gl(3)
    A = subalgebra_closure(L, [unit_vector(9, gl_basis_index(3, 0, 1))])
    report = one_step_maximality_probe(L, A, trials=5)
    assert not report.clean
    assert report.extras["witness"].dim == 2


def test_probe_inside_ambient_subalgebra():
    L, _ = gl(3)
    B = upper_triangular(L, 3)
    assert one_step_maximality_probe(B, B).clean
    assert one_step_maximality_probe(Subalgebra.whole(L), B, trials=10, seed=3).clean
