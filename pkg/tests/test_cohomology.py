from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homlie.action import HomAction, coboundary_derivations, derivation_space, module_action
from homlie.cohomology import (
    apply_differential,
    cochain_basis,
    cochain_from_dict,
    cohomologous,
    cohomology_group,
    differential_matrix,
    differential_squares_to_zero,
    evaluate_cochain,
    full_differential_matrix,
    invariants,
    is_coboundary,
    is_cocycle,
    wedge_basis,
    wedge_power,
)
from homlie.core import HomLieAlgebra, HomLieError, yau_twist
from homlie.examples import gl2, heisenberg, jackson_sl2, sl2, two_dim_nonabelian
from homlie.exactla import Matrix, Subspace, vadd, vsub


def abelian_pair(aL, aM):
    L = HomLieAlgebra.abelian(aL.rows, aL)
    M = HomLieAlgebra.abelian(aM.rows, aM)
    return HomAction.trivial(L, M)


def yau_sl2_adjoint():
    s = Matrix.diag((2, Fraction(1, 2), 1))
    T = yau_twist(sl2(), s)
    return module_action(T, Subspace.full(3))


def fixtures():
    return {
        "sl2_adjoint": module_action(sl2(), Subspace.full(3)),
        "sl2_trivial": HomAction.trivial(sl2(), HomLieAlgebra.abelian(2)),
        "ex_d": module_action(two_dim_nonabelian(), Subspace.span([(1, 0)], 2)),
        "heis_centre": module_action(heisenberg(), Subspace.span([(0, 0, 1)], 3)),
        "heis_adjoint": module_action(heisenberg(), Subspace.full(3)),
        "gl2_adjoint": module_action(gl2(), Subspace.full(4)),
        "yau_sl2_adjoint": yau_sl2_adjoint(),
        "abelian_plane": abelian_pair(Matrix.identity(2), Matrix.identity(1)),
        "abelian_zero_twist": abelian_pair(Matrix.zeros(1, 1), Matrix.zeros(1, 1)),
        "abelian_nilpotent": abelian_pair(Matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]]), Matrix.zeros(2, 2)),
        "zero_module": HomAction.trivial(sl2(), HomLieAlgebra.zero()),
        "zero_algebra": HomAction.trivial(HomLieAlgebra.zero(), HomLieAlgebra.abelian(2)),
    }


FIX = fixtures()


def test_wedge_basis_order():
    assert wedge_basis(4, 2) == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    assert wedge_basis(2, 3) == ()


def test_wedge_power_is_determinant_on_top():
    A = Matrix([[1, 2, 0], [0, 1, 3], [4, 0, 1]])
    assert wedge_power(A, 3) == Matrix([[25]])
    assert wedge_power(A, 1) == A


def test_cochain_dims_identity_twist():
    act = FIX["sl2_trivial"]
    for n, expected in enumerate((2, 6, 6, 2, 0)):
        assert cochain_basis(act, n).dim == expected


def test_cochain_dims_zero_twists():
    act = FIX["abelian_zero_twist"]
    assert cochain_basis(act, 0).dim == 0
    assert cochain_basis(act, 1).dim == 1
    assert cochain_basis(act, 2).dim == 0


def test_d0_trivial_action_is_zero():
    D = differential_matrix(FIX["sl2_trivial"], 0)
    assert D.is_zero() and D.shape == (6, 2)


def _minus_d1_oracle(act, f, x, y):
    # f[x,y] - alpha(x).f(y) + alpha(y).f(x), written out directly
    L = act.actor
    fx, fy = f.apply(x), f.apply(y)
    return vadd(vsub(f.apply(L.bracket(x, y)), act.act(L.twist(x), fy)), act.act(L.twist(y), fx))


@pytest.mark.parametrize("name", ["sl2_adjoint", "ex_d", "heis_adjoint", "yau_sl2_adjoint"])
def test_d1_matches_derivation_formula(name):
    act = FIX[name]
    L = act.actor
    for f in cochain_basis(act, 1).basis():
        df = apply_differential(act, f, 1)
        for i in range(L.dim):
            for j in range(i + 1, L.dim):
                x, y = L.basis_vector(i), L.basis_vector(j)
                assert evaluate_cochain(df, [x, y], L.dim) == tuple(-a for a in _minus_d1_oracle(act, f, x, y))


def _cocycle_condition_oracle(act, w, l, l1, l2):
    L = act.actor
    a, a2 = L.twist, lambda v: L.twist(L.twist(v))
    total = (0,) * act.target.dim
    for x, y, z in ((l, l1, l2), (l2, l, l1), (l1, l2, l)):
        total = vadd(total, act.act(a2(x), evaluate_cochain(w, [y, z], L.dim)))
        total = vadd(total, evaluate_cochain(w, [a(x), L.bracket(y, z)], L.dim))
    return total


@pytest.mark.parametrize("name", ["sl2_adjoint", "ex_d", "heis_adjoint", "yau_sl2_adjoint", "gl2_adjoint"])
def test_d2_matches_cocycle_condition(name):
    act = FIX[name]
    L = act.actor
    e = [L.basis_vector(i) for i in range(L.dim)]
    for w in cochain_basis(act, 2).basis()[:6]:
        dw = apply_differential(act, w, 2)
        for I in wedge_basis(L.dim, 3):
            x, y, z = (e[k] for k in I)
            assert evaluate_cochain(dw, [x, y, z], L.dim) == _cocycle_condition_oracle(act, w, x, y, z)


@pytest.mark.parametrize("name", sorted(FIX))
def test_d_squared_zero(name):
    act = FIX[name]
    for n in range(3):
        D0 = differential_matrix(act, n)
        D1 = differential_matrix(act, n + 1)
        assert (D1 @ D0).is_zero()


def test_d_squared_zero_jackson_adjoint_type():
    act = module_action(jackson_sl2(1), Subspace.full(3))
    for n in range(3):
        assert differential_squares_to_zero(act, n)


def test_jackson_breaks_equivariance_of_d():
    act = module_action(jackson_sl2(1), Subspace.full(3))
    with pytest.raises(HomLieError):
        differential_matrix(act, 1)
    # off the equivariant cochains the composite is not zero
    assert not differential_squares_to_zero(act, 0, equivariant_only=False)


@pytest.mark.parametrize("name", sorted(FIX))
def test_d_preserves_equivariance(name):
    act = FIX[name]
    for n in range(3):
        C = cochain_basis(act, n + 1)
        for f in cochain_basis(act, n).basis():
            assert C.contains(apply_differential(act, f, n))


@pytest.mark.parametrize("name", sorted(FIX))
def test_h0_is_invariants(name):
    act = FIX[name]
    H0 = cohomology_group(act, 0)
    assert H0.dim == invariants(act).dim
    assert {tuple(v) for v in H0.cocycles.space.basis} == {tuple(v) for v in invariants(act).basis}


@pytest.mark.parametrize("name", sorted(FIX))
def test_h1_is_derivations_mod_coboundaries(name):
    act = FIX[name]
    H1 = cohomology_group(act, 1)
    Der = derivation_space(act)
    B = coboundary_derivations(act)
    assert H1.cocycles == Der
    assert H1.coboundaries == B
    assert H1.dim == Der.dim - B.dim


def test_whitehead_sl2():
    act = FIX["sl2_adjoint"]
    # brute force on all alternating maps: alpha = Id so nothing is lost
    ranks = [full_differential_matrix(act, n).rank() for n in range(4)]
    dims = [3 * len(wedge_basis(3, n)) for n in range(4)]
    h1 = (dims[1] - ranks[1]) - ranks[0]
    h2 = (dims[2] - ranks[2]) - ranks[1]
    assert h1 == 0 and h2 == 0
    assert cohomology_group(act, 1).dim == 0
    assert cohomology_group(act, 2).dim == 0


def test_zero_twist_line():
    act = FIX["abelian_zero_twist"]
    assert cohomology_group(act, 0).dim == 0
    assert cohomology_group(act, 1).dim == 1


def test_heisenberg_style_h2():
    act = FIX["abelian_plane"]
    H2 = cohomology_group(act, 2)
    assert H2.dim == 1
    w = H2.representatives[0]
    assert is_cocycle(act, w, 2)
    assert is_coboundary(act, w, 2) is None


def test_coboundary_preimage():
    act = FIX["ex_d"]
    zero = Matrix.zeros(1, 2)
    assert is_coboundary(act, zero, 1) == Matrix.zeros(1, 1)
    m = cochain_basis(act, 0).basis()[0]
    df = apply_differential(act, m.scale(3), 0)
    pre = is_coboundary(act, df, 1)
    assert pre is not None and apply_differential(act, pre, 0) == df


def test_is_cocycle_rejects_non_equivariant():
    act = FIX["abelian_zero_twist"]
    with pytest.raises(HomLieError):
        is_cocycle(act, Matrix([[1]]), 0)


def test_cohomologous():
    act = FIX["heis_adjoint"]
    C1 = cochain_basis(act, 1).basis()
    Z2 = cohomology_group(act, 2)
    w = Z2.representatives[0]
    assert cohomologous(act, w, w).is_zero()
    theta0 = C1[0].scale(2) + C1[-1]
    w2 = w + apply_differential(act, theta0, 1)
    theta = cohomologous(act, w, w2)
    assert theta is not None and w - w2 == apply_differential(act, theta, 1)
    if Z2.dim >= 2:
        assert cohomologous(act, Z2.representatives[0], Z2.representatives[1]) is None
    assert cohomologous(act, w, Matrix.zeros(*w.shape)) is None


def test_cochain_from_dict_signs():
    w = cochain_from_dict({(1, 0): (1,)}, 2, 1, 2)
    assert w == Matrix([[-1]])
    with pytest.raises(HomLieError):
        cochain_from_dict({(0, 0): (1,)}, 2, 1, 2)


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=4, max_size=4), st.lists(st.integers(-2, 2), min_size=4, max_size=4))
def test_random_abelian_complexes(aL, aM):
    act = abelian_pair(Matrix([aL[:2], aL[2:]]), Matrix([aM[:2], aM[2:]]))
    for n in range(2):
        assert (differential_matrix(act, n + 1) @ differential_matrix(act, n)).is_zero()
    H1 = cohomology_group(act, 1)
    assert H1.dim == derivation_space(act).dim - coboundary_derivations(act).dim
