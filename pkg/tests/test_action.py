import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homlie.action import (
    HomAction,
    action_from_extension,
    adjoint_action,
    coboundary_derivations,
    derivation_space,
    ideal_action,
    inner_alpha_derivations,
    is_derivation,
    module_action,
    pullback_action,
    semidirect,
    semidirect_derivation_witness,
    validate_action,
)
from homlie.core import HomLieAlgebra, HomLieError, check_hom_morphism, validate_hom_lie
from homlie.examples import heisenberg, sl2, two_dim_nonabelian
from homlie.exactla import Matrix, MatrixSpace, Subspace


def ex_d_module():
    L = two_dim_nonabelian()
    return module_action(L, Subspace.span([(1, 0)], 2))


def test_ex_d_is_module():
    act = ex_d_module()
    assert act.target.alpha.is_identity()
    assert act.table == (((0,),), ((-1,),))
    rep = validate_action(act)
    assert rep.a and rep.b and rep.c and rep.is_module


def test_adjoint_on_ideal():
    L = heisenberg()
    act = ideal_action(L, Subspace.span([(0, 1, 0), (0, 0, 1)], 3))
    assert validate_action(act).valid
    assert validate_action(adjoint_action(sl2())).valid
    assert not validate_action(adjoint_action(sl2())).is_module


def test_trivial_action_is_module():
    M = HomLieAlgebra.abelian(2, Matrix([[0, 1], [3, 0]]))
    assert validate_action(HomAction.trivial(sl2(), M)).is_module


def test_broken_action_detected():
    L = two_dim_nonabelian()
    M = HomLieAlgebra.abelian(1)
    act = HomAction.from_dict(L, M, {(0, 0): (1,)})
    rep = validate_action(act)
    assert not rep.valid


def test_semidirect_basics():
    act = ex_d_module()
    sd = semidirect(act)
    assert sd.algebra.dim == 3
    assert validate_hom_lie(sd.algebra).valid
    assert (sd.proj @ sd.section).is_identity()
    assert (sd.proj @ sd.incl).is_zero()
    assert check_hom_morphism(sd.incl, act.target, sd.algebra)
    assert check_hom_morphism(sd.proj, sd.algebra, act.actor)
    assert check_hom_morphism(sd.section, act.actor, sd.algebra)


def test_semidirect_alpha_variant():
    act = ex_d_module()
    sd = semidirect(act, act.actor.alpha)
    assert validate_hom_lie(sd.algebra).valid


def test_semidirect_degenerate():
    L = sl2()
    zero = HomLieAlgebra.zero()
    sd = semidirect(HomAction.trivial(L, zero))
    assert sd.algebra.same_structure(L)
    M = HomLieAlgebra.abelian(2)
    sd = semidirect(HomAction.trivial(zero, M))
    assert sd.algebra.same_structure(M)


def test_semidirect_rejects_bad_s():
    with pytest.raises(HomLieError):
        semidirect(ex_d_module(), Matrix.diag((1, 2)))


def test_derivations_vacuous_case():
    L = HomLieAlgebra.abelian(2)
    M = HomLieAlgebra.abelian(3)
    D = derivation_space(HomAction.trivial(L, M), Matrix.identity(2))
    assert D.dim == 6


def test_theta_is_derivation_of_semidirect():
    act = ex_d_module()
    sd = semidirect(act)
    pulled = pullback_action(act, sd.proj, sd.algebra)
    theta = semidirect_derivation_witness(act)
    assert is_derivation(pulled, theta, Matrix.identity(3))
    assert derivation_space(pulled, Matrix.identity(3)).contains(theta)


def test_sl2_derivations_all_inner():
    act = module_action(sl2(), Subspace.full(3))
    D = derivation_space(act, Matrix.identity(3))
    assert D.dim == 3
    assert D == coboundary_derivations(act)


def test_inner_alpha_derivations():
    L = sl2()
    M = HomLieAlgebra.abelian(2, Matrix.zeros(2, 2))
    assert inner_alpha_derivations(HomAction.trivial(L, M)).dim == 0
    assert inner_alpha_derivations(HomAction.trivial(L, HomLieAlgebra.abelian(2))).dim == 0
    act = ex_d_module()
    inner = inner_alpha_derivations(act)
    # x -> alpha(x) . e: e -> 0, f -> (e + f) . e = -e
    assert inner == MatrixSpace.spanned_by([Matrix([[0, -1]])], 1, 2)
    assert inner == coboundary_derivations(act)


def test_coboundaries_are_alpha_derivations():
    for act in (ex_d_module(), module_action(sl2(), Subspace.full(3))):
        assert derivation_space(act).contains_space(coboundary_derivations(act))
    M = HomLieAlgebra.abelian(1, Matrix.zeros(1, 1))
    assert coboundary_derivations(HomAction.trivial(sl2(), M)).dim == 0


class _Ext:
    def __init__(self, E, L, M, i, pi, sigma):
        self.E, self.L, self.M, self.i, self.pi, self.sigma = E, L, M, i, pi, sigma


def test_action_from_split_extension():
    act = ex_d_module()
    sd = semidirect(act)
    ext = _Ext(sd.algebra, act.actor, act.target, sd.incl, sd.proj, sd.section)
    assert action_from_extension(ext) == act
    # another section: add a multiple of i(e) to sigma(f)
    alt = Matrix.from_columns([sd.section.col(0), (1, 0, 1)], 3)
    assert action_from_extension(ext, alt) == act


def test_action_from_direct_sum_is_zero():
    L = sl2()
    M = HomLieAlgebra.abelian(2)
    sd = semidirect(HomAction.trivial(L, M))
    ext = _Ext(sd.algebra, L, M, sd.incl, sd.proj, sd.section)
    assert action_from_extension(ext) == HomAction.trivial(L, M)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_action_section_independence(offset):
    act = module_action(heisenberg(), Subspace.span([(0, 0, 1)], 3))
    sd = semidirect(act)
    ext = _Ext(sd.algebra, act.actor, act.target, sd.incl, sd.proj, sd.section)
    cols = sd.section.columns()
    alt = Matrix.from_columns(
        [(offset[0],) + cols[0][1:], (offset[1],) + cols[1][1:], cols[2]], 4
    )
    assert action_from_extension(ext, alt) == action_from_extension(ext)
