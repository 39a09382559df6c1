from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homlie.action import HomAction, adjoint_action
from homlie.cohomology import apply_differential, equivariance_residual
from homlie.core import HomLieAlgebra, HomLieError, yau_twist
from homlie.crossed import (
    AlphaCrossedExtension,
    Cat1,
    CrossedModule,
    cat1_isomorphism,
    cat1_morphism_check,
    check_crossed_morphism,
    crossed_extension_from_module,
    crossed_isomorphism,
    eta,
    eta_morphism_comparison,
    eta_section_independence,
    find_rho,
    functor_P,
    functor_P_morphism,
    functor_S,
    p_of_s_unit,
    s_of_p_unit,
    section_offsets,
    validate_alpha_crossed_extension,
    validate_cat1,
    validate_crossed,
    validate_crossed_via_semidirect,
)
from homlie.dsl import load_workspace
from homlie.examples import (
    heisenberg,
    heisenberg_crossed_extension,
    heisenberg_crossed_morphism,
    ideal_crossed_module,
    sl2,
    two_dim_nonabelian,
    volume_crossed_extension,
)
from homlie.exactla import Matrix, Subspace

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_module(name, module="M", mu="mu"):
    ws = load_workspace(FIXTURES / name)
    act = ws.module(module)
    m = ws.map(mu) if mu in ws.maps else Matrix.zeros(act.actor.dim, act.target.dim)
    return CrossedModule(act, m)


def alfa():
    return fixture_module("alfa_cm.hla")


def twisted_heisenberg():
    return yau_twist(heisenberg(), Matrix.diag([2, 3, 6]))


def standard_modules():
    gl = HomLieAlgebra.abelian(2, Matrix.identity(2))
    return {
        "heis_centre": ideal_crossed_module(heisenberg(), [(0, 0, 1)]),
        "heis_self": CrossedModule(adjoint_action(heisenberg()), Matrix.identity(3)),
        "twisted_ideal": ideal_crossed_module(twisted_heisenberg(), [(0, 1, 0), (0, 0, 1)]),
        "sl2_self": CrossedModule(adjoint_action(sl2()), Matrix.identity(3)),
        "sl2_zero": CrossedModule(HomAction.trivial(sl2(), gl), Matrix.zeros(3, 2)),
        "ex_d_zero": fixture_module("ex_action_d.hla"),
        "r2_ideal": ideal_crossed_module(two_dim_nonabelian(Matrix.identity(2)), [(1, 0)]),
    }


# --- validation ---------------------------------------------------------------


def test_alfa_fixture_is_alpha_but_not_standard():
    cm = alfa()
    std, alp = validate_crossed(cm, "standard"), validate_crossed(cm, "alpha")
    assert alp.valid and not std.valid
    assert not std.peiffer_a and not std.peiffer_b
    assert alp.image_ideal and alp.kernel_central and alp.kernel_module
    assert validate_crossed_via_semidirect(cm) is False


def test_alfa_residual_entries():
    a, b = validate_crossed(alfa(), "standard").residual_a, validate_crossed(alfa(), "standard").residual_b
    # a1 . b2 = b2 and mu(b2) = a2 while [a1, a2] = 0
    assert a[0][1] == (0, 1)
    # mu(b1) . b2 = 0, but mu(b2) . b1 = -b2 against [b2, b1] = 0
    assert b[1][0] == (0, -1, 0)


@pytest.mark.parametrize("name", sorted(standard_modules()))
def test_standard_fixtures_valid(name):
    cm = standard_modules()[name]
    rep = validate_crossed(cm, "standard")
    assert rep.valid and rep.image_ideal and rep.kernel_central and rep.kernel_module
    assert validate_crossed_via_semidirect(cm)


def test_zero_mu_module_valid_in_both_flavors():
    cm = fixture_module("ex_action_d.hla")
    assert validate_crossed(cm, "standard").valid
    assert validate_crossed(cm, "alpha").valid


def test_flavors_agree_for_identity_twists():
    for name, cm in standard_modules().items():
        if cm.L.alpha.is_identity() and cm.M.alpha.is_identity():
            assert validate_crossed(cm, "alpha").valid == validate_crossed(cm, "standard").valid, name


def test_twisted_ideal_is_not_alpha_crossed():
    # l - alpha(l) does not centralise the ideal
    assert not validate_crossed(standard_modules()["twisted_ideal"], "alpha").valid


def test_invalid_action_raises():
    L = sl2()
    bad = HomAction.from_dict(L, HomLieAlgebra.abelian(1, Matrix.identity(1)), {(0, 0): (1,)})
    cm = CrossedModule(bad, Matrix.zeros(3, 1))
    with pytest.raises(HomLieError):
        validate_crossed(cm)
    with pytest.raises(HomLieError):
        validate_crossed_via_semidirect(cm)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["heis_self", "sl2_self", "heis_centre", "r2_ideal", "sl2_zero"]),
       st.integers(-2, 2), st.integers(0, 2), st.integers(0, 2))
def test_semidirect_criterion_matches_axioms(name, k, i, j):
    cm = standard_modules()[name]
    mu = cm.mu.scale(k)
    if cm.mu.rows > i and cm.mu.cols > j:
        rows = [list(r) for r in mu.row_list()]
        rows[i][j] += 1
        mu = Matrix(rows, mu.cols)
    cm2 = CrossedModule(cm.action, mu)
    assert validate_crossed(cm2, "standard").valid == validate_crossed_via_semidirect(cm2)


def test_semidirect_criterion_on_alfa_perturbations():
    cm = alfa()
    for k in range(-2, 3):
        cm2 = CrossedModule(cm.action, cm.mu.scale(k))
        assert validate_crossed(cm2, "standard").valid == validate_crossed_via_semidirect(cm2)


# --- cat1 data and the functors -------------------------------------------------


def test_identity_cat1():
    L = heisenberg()
    c = Cat1(L, Subspace.full(3), Matrix.identity(3), Matrix.identity(3))
    assert validate_cat1(c).valid
    cm = functor_P(c)
    assert cm.M.dim == 0 and validate_crossed(cm).valid


def test_broken_cat1_flagged():
    L = heisenberg()
    s = Matrix.diag([1, 1, 2])
    c = Cat1(L, Subspace.full(3), s, Matrix.identity(3))
    rep = validate_cat1(c)
    assert not rep.s_identity_on_N and not rep.valid
    with pytest.raises(HomLieError):
        functor_P(c)


def test_kernels_must_commute():
    # heis_self with t replaced by s: kernels coincide and do not commute
    c = functor_S(standard_modules()["heis_self"])
    bad = Cat1(c.P, c.N, c.s, c.s)
    assert validate_cat1(bad).kernels_commute is False


def test_functor_S_of_zero_crossed_module():
    L = sl2()
    cm = CrossedModule(HomAction.trivial(L, HomLieAlgebra.zero()), Matrix.zeros(3, 0))
    c = functor_S(cm)
    assert c.P.same_structure(L)
    assert c.s.is_identity() and c.t.is_identity()


def test_functor_S_of_ideal_inclusion():
    cm = standard_modules()["heis_centre"]
    c = functor_S(cm)
    rep = validate_cat1(c)
    assert rep.valid
    assert c.P.dim == cm.M.dim + cm.L.dim


def test_functor_S_rejects_alpha_only():
    with pytest.raises(HomLieError):
        functor_S(alfa())


def test_functor_P_of_semidirect_cat1_gives_module_back():
    cm = standard_modules()["ex_d_zero"]
    back = functor_P(functor_S(cm))
    assert back.mu.is_zero()
    assert back.M.dim == 1 and back.L.same_structure(cm.L)
    assert back.action.table == cm.action.table


@pytest.mark.parametrize("name", sorted(standard_modules()))
def test_round_trip_P_after_S(name):
    cm = standard_modules()[name]
    c = functor_S(cm)
    assert validate_cat1(c).valid
    back, f, phi = p_of_s_unit(cm)
    assert validate_crossed(back).valid
    assert f.inverse() is not None and check_crossed_morphism(f, phi, back, cm)
    found = crossed_isomorphism(back, cm)
    assert found is not None
    g, psi = found
    assert g.inverse() is not None and check_crossed_morphism(g, psi, back, cm)


@pytest.mark.parametrize("name", sorted(standard_modules()))
def test_round_trip_S_after_P(name):
    c = functor_S(standard_modules()[name])
    back, F = s_of_p_unit(c)
    assert validate_cat1(back).valid
    assert F.inverse() is not None and cat1_morphism_check(F, back, c)
    G = cat1_isomorphism(back, c)
    assert G is not None and cat1_morphism_check(G, back, c)


def test_functor_P_on_morphisms():
    for cm in standard_modules().values():
        c = functor_S(cm)
        back, F = s_of_p_unit(c)
        f, phi = functor_P_morphism(F, back, c)
        assert check_crossed_morphism(f, phi, functor_P(back), functor_P(c))


def test_crossed_isomorphism_absent_between_different_modules():
    a = standard_modules()["heis_centre"]
    b = CrossedModule(HomAction.trivial(heisenberg(), HomLieAlgebra.abelian(1, Matrix.identity(1))), Matrix.zeros(3, 1))
    assert crossed_isomorphism(a, b) is None


def test_crossed_morphism_checks():
    cm = standard_modules()["heis_self"]
    I3 = Matrix.identity(3)
    assert check_crossed_morphism(I3, I3, cm, cm)
    zero = CrossedModule(HomAction.trivial(HomLieAlgebra.zero(), HomLieAlgebra.zero()), Matrix.zeros(0, 0))
    assert check_crossed_morphism(Matrix.zeros(0, 3), Matrix.zeros(0, 3), cm, zero)
    assert not check_crossed_morphism(I3.scale(2), I3, cm, cm)
    with pytest.raises(HomLieError):
        check_crossed_morphism(Matrix.identity(2), I3, cm, cm)


# --- alpha-crossed extensions -------------------------------------------------


def test_extension_from_alfa_fixture():
    x = crossed_extension_from_module(alfa())
    assert validate_alpha_crossed_extension(x).valid
    assert x.M.dim == 1 and x.L.dim == 0


def test_extension_from_ideal_inclusion():
    x = crossed_extension_from_module(standard_modules()["heis_centre"])
    rep = validate_alpha_crossed_extension(x)
    assert rep.valid and x.M.dim == 0 and x.L.dim == 2


def no_rho_extension():
    # N = <n1, n2>, alpha(n2) = n1, alpha(n1) = 0, mu(n2) = p with alpha(p) = 0
    N = HomLieAlgebra.abelian(2, Matrix([[0, 1], [0, 0]], 2), ("n1", "n2"))
    P = HomLieAlgebra.abelian(1, Matrix.zeros(1, 1), ("p",))
    M = HomLieAlgebra.abelian(1, Matrix.zeros(1, 1), ("m",))
    L = HomLieAlgebra.zero()
    mu = Matrix([[0, 1]], 2)
    return AlphaCrossedExtension(
        HomAction.trivial(L, M), HomAction.trivial(P, N),
        Matrix.from_columns([(1, 0)], 2), mu, Matrix.zeros(0, 1), Matrix.zeros(1, 0),
        find_rho(N, P, mu),
    )


def test_missing_rho_reported():
    x = no_rho_extension()
    assert x.rho is None
    rep = validate_alpha_crossed_extension(x)
    assert not rep.rho_section and not rep.valid
    assert rep.exact_M and rep.exact_N and rep.exact_P and rep.alpha_crossed


def test_degenerate_extension_with_zero_base():
    M = HomLieAlgebra.abelian(2, Matrix.identity(2))
    Z = HomLieAlgebra.zero()
    x = AlphaCrossedExtension(
        HomAction.trivial(Z, M), HomAction.trivial(Z, M),
        Matrix.identity(2), Matrix.zeros(0, 2), Matrix.zeros(0, 0), Matrix.zeros(0, 0), Matrix.zeros(2, 0),
    )
    assert validate_alpha_crossed_extension(x).valid
    assert eta(x).cocycle.shape == (2, 0)


def test_module_mismatch_flagged():
    x = volume_crossed_extension()
    wrong = HomAction.from_dict(x.L, x.M, {(0, 0): (1,)})
    y = AlphaCrossedExtension(wrong, x.cross, x.chi, x.mu, x.pi, x.sigma, x.rho)
    assert not validate_alpha_crossed_extension(y).module_matches


# --- eta ------------------------------------------------------------------------


ETA_FIXTURES = {
    "volume": lambda: volume_crossed_extension(1),
    "volume_graded": lambda: volume_crossed_extension(2),
    "heisenberg": heisenberg_crossed_extension,
    "heisenberg_enlarged": lambda: heisenberg_crossed_extension(extra=True),
    "alfa": lambda: crossed_extension_from_module(alfa()),
}


@pytest.mark.parametrize("name", sorted(ETA_FIXTURES))
def test_eta_cocycle_properties(name):
    x = ETA_FIXTURES[name]()
    res = eta(x)
    assert (x.mu @ res.values_in_N).is_zero()
    assert x.chi @ res.cocycle == res.values_in_N
    assert equivariance_residual(x.module, res.cocycle, 3).is_zero()
    assert apply_differential(x.module, res.cocycle, 3).is_zero()


@pytest.mark.parametrize("lam", [1, 2, 3])
def test_volume_class(lam):
    # sigma(alpha^2 l) . f over the three generators: lam^2 (x.u~ + y.v~ + z.w~) = 3 lam^2 c
    x = volume_crossed_extension(lam)
    res = eta(x)
    assert res.cocycle == Matrix([[3 * lam * lam]], 1)
    assert res.group.dim == 1 and not res.group.coboundaries.contains(res.cocycle)


def test_split_section_gives_zero_class():
    x = heisenberg_crossed_extension()
    assert eta(x).cocycle.is_zero()


def test_eta_rejects_invalid_extension():
    x = volume_crossed_extension()
    bad = HomAction.from_dict(x.P, x.N, {(0, 0): (0, 0, 0, 1), (0, 3): (1, 0, 0, 0)})
    with pytest.raises(HomLieError):
        eta(AlphaCrossedExtension(x.module, bad, x.chi, x.mu, x.pi, x.sigma, x.rho))


def test_section_independence_vacuous_and_unique():
    x = volume_crossed_extension(2)
    assert section_offsets(x) == ([], [])
    assert eta_section_independence(x, 0).ok
    assert eta_section_independence(x, 3).ok


@pytest.mark.parametrize("name", ["volume", "heisenberg", "heisenberg_enlarged"])
def test_section_independence_with_certificates(name):
    x = ETA_FIXTURES[name]()
    rep = eta_section_independence(x, 5)
    assert rep.ok and len(rep.certificates) == 5
    for theta in rep.certificates:
        assert theta is not None
        assert equivariance_residual(x.module, theta, 2).is_zero()


def test_shifted_sections_give_nonzero_coboundaries():
    x = heisenberg_crossed_extension()
    rep = eta_section_independence(x, 5)
    assert any(not t.is_zero() for t in rep.certificates)


def test_shifted_section_value():
    # sigma(b) = b + q, sigma(d) = d + p: f(a, b) = -q~ and d . f(a, b) = -p.q~ = -c
    x = heisenberg_crossed_extension()
    shift = Matrix([[0, 0, 0], [0, 0, 0], [0, 0, 0], [0, 0, 1], [0, 1, 0]], 3)
    assert eta(x, sigma=x.sigma + shift).cocycle == Matrix([[-1]], 1)


def test_morphism_gives_equal_classes():
    x, y, varphi, phi = heisenberg_crossed_morphism()
    cmp = eta_morphism_comparison(x, y, varphi, phi)
    assert cmp.equal_classes and cmp.difference_is_d2_fhat
    assert not cmp.f_hat.is_zero()


def test_morphism_comparison_rejects_non_morphism():
    x, y, varphi, phi = heisenberg_crossed_morphism()
    with pytest.raises(HomLieError):
        eta_morphism_comparison(x, y, varphi.scale(2), phi)
