"""Abelian extensions: construction from cocycles, equivalence, induced
extensions, the Baer vector-space structure and the five-term sequence.

Extensions built here are in *normal form*: ``E = M + L`` as a vector space,
``M`` first, with ``i``, ``pi`` and ``sigma`` the obvious block maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .action import (
    HomAction,
    derivation_conditions,
    derivation_space,
    pullback_action,
    semidirect,
    validate_action,
)
from .cohomology import (
    apply_differential,
    cohomologous,
    cohomology_group,
    equivariance_residual,
    wedge_basis,
    wedge_power,
)
from .core import (
    HomLieAlgebra,
    HomLieError,
    check_hom_morphism,
    ideal_closure,
    is_hom_linear,
    is_ideal,
    quotient_algebra,
    subalgebra,
    validate_hom_lie,
)
from .exactla import (
    Matrix,
    MatrixSpace,
    Subspace,
    image,
    kernel_basis,
    left_inverse,
    preimage,
    solve_affine,
    solve_affine_conditions,
    vsub,
    zero_vector,
)


@dataclass(frozen=True)
class AbelianExtension:
    """``0 -> M -i-> E -pi-> L -> 0`` with a Hom-linear section ``sigma``.

    ``action`` is the module structure of ``M`` over ``L`` the extension is
    meant to realise; it is needed for cocycle arithmetic.
    """

    M: HomLieAlgebra
    E: HomLieAlgebra
    L: HomLieAlgebra
    i: Matrix
    pi: Matrix
    sigma: Matrix
    action: Optional[HomAction] = field(default=None, compare=False)

    def module(self) -> HomAction:
        if self.action is None:
            raise HomLieError("extension carries no module structure")
        return self.action


@dataclass(frozen=True)
class ShortExactSequence:
    """``0 -> N -xi-> E -pi-> L -> 0`` with ``N`` arbitrary (used by the five-term sequence)."""

    N: HomLieAlgebra
    E: HomLieAlgebra
    L: HomLieAlgebra
    xi: Matrix
    pi: Matrix
    sigma: Matrix


def _parts(seq):
    if isinstance(seq, AbelianExtension):
        return seq.M, seq.E, seq.L, seq.i, seq.pi, seq.sigma
    return seq.N, seq.E, seq.L, seq.xi, seq.pi, seq.sigma


# --------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class ExtensionReport:
    algebra_valid: bool
    i_morphism: bool
    pi_morphism: bool
    i_injective: bool
    pi_surjective: bool
    exact: bool
    kernel_abelian: bool
    section_right_inverse: bool
    section_hom_linear: bool
    s_condition: Optional[bool] = None

    @property
    def valid(self) -> bool:
        flags = [
            self.algebra_valid, self.i_morphism, self.pi_morphism, self.i_injective,
            self.pi_surjective, self.exact, self.kernel_abelian,
            self.section_right_inverse, self.section_hom_linear,
        ]
        if self.s_condition is not None:
            flags.append(self.s_condition)
        return all(flags)

    def as_dict(self):
        return {k: getattr(self, k) for k in self.__dataclass_fields__} | {"valid": self.valid}


def _shapes_ok(M, E, L, i, pi, sigma) -> bool:
    return i.shape == (E.dim, M.dim) and pi.shape == (L.dim, E.dim) and sigma.shape == (E.dim, L.dim)


def validate_sequence(seq, s: Optional[Matrix] = None, action: Optional[HomAction] = None) -> ExtensionReport:
    N, E, L, i, pi, sigma = _parts(seq)
    if not _shapes_ok(N, E, L, i, pi, sigma):
        raise HomLieError("extension maps have inconsistent shapes")
    i_inj = i.rank() == N.dim
    pi_surj = pi.rank() == L.dim
    exact = image(i) == kernel_basis(pi) if E.dim else True
    s_cond = None
    if s is not None:
        if action is None:
            action = getattr(seq, "action", None)
        if action is None:
            raise HomLieError("the s-condition needs the module action")
        s_cond = _s_condition(N, E, L, i, sigma, s, action)
    return ExtensionReport(
        algebra_valid=validate_hom_lie(E).valid,
        i_morphism=check_hom_morphism(i, N, E),
        pi_morphism=check_hom_morphism(pi, E, L),
        i_injective=i_inj,
        pi_surjective=pi_surj,
        exact=exact,
        kernel_abelian=N.is_abelian(),
        section_right_inverse=(pi @ sigma).is_identity() if L.dim else True,
        section_hom_linear=is_hom_linear(sigma, L.alpha, E.alpha),
        s_condition=s_cond,
    )


def _s_condition(M, E, L, i, sigma, s, action) -> bool:
    scols = s.columns()
    sig = sigma.columns()
    icols = i.columns()
    for x in range(L.dim):
        for j in range(M.dim):
            lhs = E.bracket(sig[x], icols[j])
            rhs = i.apply(action.act(scols[x], M.basis_vector(j)))
            if lhs != rhs:
                return False
    return True


def validate_extension(ext: AbelianExtension, s: Optional[Matrix] = None) -> ExtensionReport:
    return validate_sequence(ext, s, ext.action)


def is_alpha_extension(ext: AbelianExtension) -> bool:
    return validate_extension(ext, ext.L.alpha).valid


# --------------------------------------------------------------------------
# sections


def find_section(pi: Matrix, alpha_X: Matrix, alpha_Y: Matrix) -> Optional[Matrix]:
    """``sigma`` with ``pi sigma = Id`` and ``alpha_X sigma = sigma alpha_Y``, or ``None``."""
    if pi.rank() != pi.rows:
        raise HomLieError("map is not surjective")
    if pi @ alpha_X != alpha_Y @ pi:
        raise HomLieError("map does not intertwine the twists")
    nX, nY = pi.cols, pi.rows

    def F(S):
        return MatrixSpace.flatten(pi @ S) + MatrixSpace.flatten(alpha_X @ S - S @ alpha_Y)

    target = MatrixSpace.flatten(Matrix.identity(nY)) + (0,) * (nX * nY)
    return solve_affine_conditions(F, target, nX, nY)


def _affine_solve(residual, rows: int, cols: int) -> Optional[Matrix]:
    """Solve ``residual(X) = 0`` for a residual that is affine in ``X``."""
    zero = Matrix.zeros(rows, cols)
    const = residual(zero)

    def linear(X):
        r = residual(X)
        return tuple(a - b for a, b in zip(r, const))

    return solve_affine_conditions(linear, tuple(-c for c in const), rows, cols)


def lift_through(ext: AbelianExtension, gamma: Matrix, Lp: HomLieAlgebra) -> Optional[Matrix]:
    """A morphism ``psi: L' -> E`` with ``pi psi = gamma``, or ``None``.

    Writes ``psi = sigma gamma + i theta``; the conditions are affine in ``theta``
    because the kernel is abelian.
    """
    M, E, L, i, pi, sigma = _parts(ext)
    if not M.is_abelian():
        raise HomLieError("kernel must be abelian")
    base = sigma @ gamma
    pairs = [(a, b) for a in range(Lp.dim) for b in range(a + 1, Lp.dim)]

    def residual(theta):
        psi = base + i @ theta
        cols = psi.columns()
        out = list(MatrixSpace.flatten(E.alpha @ psi - psi @ Lp.alpha))
        for a, b in pairs:
            out.extend(vsub(E.bracket(cols[a], cols[b]), psi.apply(Lp.structure[a][b])))
        return tuple(out)

    theta = _affine_solve(residual, M.dim, Lp.dim)
    if theta is None:
        return None
    return base + i @ theta


def find_splitting(ext: AbelianExtension) -> Optional[Matrix]:
    """A morphism section of ``pi`` or ``None``."""
    return lift_through(ext, Matrix.identity(ext.L.dim), ext.L)


# --------------------------------------------------------------------------
# cocycles and normal forms


def _normal_form_maps(nM: int, nL: int):
    n = nM + nL
    i = Matrix.vstack(Matrix.identity(nM), Matrix.zeros(nL, nM)) if nM else Matrix.zeros(n, 0)
    pi = Matrix.hstack(Matrix.zeros(nL, nM), Matrix.identity(nL)) if nL else Matrix.zeros(0, n)
    sigma = Matrix.vstack(Matrix.zeros(nM, nL), Matrix.identity(nL)) if nL else Matrix.zeros(n, 0)
    if n == 0:
        i, pi, sigma = Matrix.zeros(0, 0), Matrix.zeros(0, 0), Matrix.zeros(0, 0)
    return i, pi, sigma


def _pair_names(a, b):
    if set(a).isdisjoint(b):
        return tuple(a) + tuple(b)
    return tuple(f"{x}_M" for x in a) + tuple(f"{x}_L" for x in b)


def normal_form_algebra(M: HomLieAlgebra, L: HomLieAlgebra, mixed, w: Matrix) -> HomLieAlgebra:
    """``M + L`` with ``[l_a, m_j] = mixed[a][j]``, ``[l_a, l_b] = (w(l_a,l_b), [l_a,l_b])``."""
    nM, nL = M.dim, L.dim
    n = nM + nL
    table = [[zero_vector(n) for _ in range(n)] for _ in range(n)]
    index = {I: k for k, I in enumerate(wedge_basis(nL, 2))}
    for a in range(nL):
        for j in range(nM):
            v = tuple(mixed[a][j]) + zero_vector(nL)
            table[nM + a][j] = v
            table[j][nM + a] = tuple(-c for c in v)
        for b in range(a + 1, nL):
            v = w.col(index[(a, b)]) + L.structure[a][b]
            table[nM + a][nM + b] = v
            table[nM + b][nM + a] = tuple(-c for c in v)
    return HomLieAlgebra(table, Matrix.block_diag(M.alpha, L.alpha), _pair_names(M.names, L.names))


def cocycle_condition_holds(act: HomAction, w: Matrix) -> bool:
    return equivariance_residual(act, w, 2).is_zero() and apply_differential(act, w, 2).is_zero()


def extension_from_cocycle(act: HomAction, w: Matrix) -> AbelianExtension:
    """``M +_w L`` with ``[(m,l),(m',l')] = (a(l).m' - a(l').m + w(l,l'), [l,l'])``."""
    M, L = act.target, act.actor
    if not M.is_abelian():
        raise HomLieError("coefficients must be abelian")
    if w.shape != (M.dim, len(wedge_basis(L.dim, 2))):
        raise HomLieError("cochain has the wrong shape")
    if not equivariance_residual(act, w, 2).is_zero():
        raise HomLieError("cochain is not alpha-equivariant")
    dw = apply_differential(act, w, 2)
    if not dw.is_zero():
        raise HomLieError(f"cochain fails the cocycle identity; residual {dw!r}")
    acols = L.alpha.columns()
    mixed = [[act.act(acols[a], M.basis_vector(j)) for j in range(M.dim)] for a in range(L.dim)]
    E = normal_form_algebra(M, L, mixed, w)
    i, pi, sigma = _normal_form_maps(M.dim, L.dim)
    return AbelianExtension(M, E, L, i, pi, sigma, act)


def trivial_extension(act: HomAction, s: Optional[Matrix] = None) -> AbelianExtension:
    """``M x_s L`` with its canonical maps; ``s`` defaults to ``alpha_L``."""
    if s is None:
        s = act.actor.alpha
    sd = semidirect(act, s)
    return AbelianExtension(act.target, sd.algebra, act.actor, sd.incl, sd.proj, sd.section, act)


def cocycle_from_extension(ext: AbelianExtension, section: Optional[Matrix] = None) -> Matrix:
    """``w(x,y) = i^{-1}([sigma x, sigma y] - sigma[x,y])`` on the wedge basis."""
    M, E, L, i, pi, sigma = _parts(ext)
    if section is not None:
        sigma = section
    inv = left_inverse(i)
    scols = sigma.columns()
    cols = []
    for a, b in wedge_basis(L.dim, 2):
        v = vsub(E.bracket(scols[a], scols[b]), sigma.apply(L.structure[a][b]))
        m = inv.apply(v)
        if i.apply(m) != v:
            raise HomLieError("bracket defect of the section is not in the kernel")
        cols.append(m)
    if not cols:
        return Matrix.zeros(M.dim, 0)
    return Matrix.from_columns(cols, M.dim)


def normal_form_map(ext: AbelianExtension) -> Matrix:
    """``Psi(m, l) = i(m) + sigma(l)`` from the normal form onto ``E``."""
    if ext.E.dim == 0:
        return Matrix.zeros(0, 0)
    return Matrix.hstack(ext.i, ext.sigma) if ext.M.dim and ext.L.dim else (
        ext.i if ext.L.dim == 0 else ext.sigma)


def _same_boundary(e1: AbelianExtension, e2: AbelianExtension):
    if not (e1.M.same_structure(e2.M) and e1.L.same_structure(e2.L)):
        raise HomLieError("extensions have different kernels or bases")


def equivalence_by_solve(e1: AbelianExtension, e2: AbelianExtension) -> Optional[Matrix]:
    """Morphism ``Phi: E1 -> E2`` with ``Phi i1 = i2`` and ``pi2 Phi = pi1``, found directly.

    ``Phi(i1 m + sigma1 l) = i2 m + sigma2 l + i2 theta(l)``; affine in ``theta``.
    """
    _same_boundary(e1, e2)
    M, L = e1.M, e1.L
    Psi_inv = normal_form_map(e1).inverse()
    if Psi_inv is None:
        raise HomLieError("i and sigma do not give a basis of E")
    E1, E2 = e1.E, e2.E
    pairs = [(a, b) for a in range(E1.dim) for b in range(a + 1, E1.dim)]

    def build(theta):
        right = e2.sigma + e2.i @ theta
        blocks = [b for b in (e2.i, right) if b.cols]
        return (Matrix.hstack(*blocks) if blocks else Matrix.zeros(E2.dim, 0)) @ Psi_inv

    def residual(theta):
        Phi = build(theta)
        cols = Phi.columns()
        out = list(MatrixSpace.flatten(E2.alpha @ Phi - Phi @ E1.alpha))
        for a, b in pairs:
            out.extend(vsub(E2.bracket(cols[a], cols[b]), Phi.apply(E1.structure[a][b])))
        return tuple(out)

    theta = _affine_solve(residual, M.dim, L.dim)
    return None if theta is None else build(theta)


def equivalent_extensions(e1: AbelianExtension, e2: AbelianExtension) -> Optional[Matrix]:
    """``Phi: E1 -> E2`` realising an equivalence, or ``None``.

    For alpha-extensions with a module structure the class test is
    ``w1 - w2 = d theta`` and ``Phi`` is assembled from ``theta``; otherwise the
    morphism conditions are solved directly.
    """
    _same_boundary(e1, e2)
    act = e1.action if e1.action is not None else e2.action
    if act is None or not (is_alpha_extension(_with_action(e1, act)) and is_alpha_extension(_with_action(e2, act))):
        return equivalence_by_solve(e1, e2)
    w1 = cocycle_from_extension(e1)
    w2 = cocycle_from_extension(e2)
    theta = cohomologous(act, w1, w2, 2)
    if theta is None:
        return None
    # normal forms: phi(m, l) = (m + theta l, l); then transport through Psi
    nM, nL = e1.M.dim, e1.L.dim
    phi = Matrix.identity(nM + nL)
    if nM and nL:
        phi = Matrix.vstack(
            Matrix.hstack(Matrix.identity(nM), theta),
            Matrix.hstack(Matrix.zeros(nL, nM), Matrix.identity(nL)),
        )
    P1_inv = normal_form_map(e1).inverse()
    return normal_form_map(e2) @ phi @ P1_inv


def _with_action(ext: AbelianExtension, act: HomAction) -> AbelianExtension:
    return AbelianExtension(ext.M, ext.E, ext.L, ext.i, ext.pi, ext.sigma, act)


def is_equivalence(e1: AbelianExtension, e2: AbelianExtension, Phi: Matrix) -> bool:
    return (
        check_hom_morphism(Phi, e1.E, e2.E)
        and Phi @ e1.i == e2.i
        and e2.pi @ Phi == e1.pi
    )


# --------------------------------------------------------------------------
# induced extensions


def _module_morphism(delta: Matrix, src: HomAction, dst: HomAction) -> bool:
    if delta.shape != (dst.target.dim, src.target.dim):
        return False
    if delta @ src.target.alpha != dst.target.alpha @ delta:
        return False
    L = src.actor
    for x in range(L.dim):
        if delta @ src.basis_matrix(x) != dst.basis_matrix(x) @ delta:
            return False
    return True


def backward_induced(
    ext: AbelianExtension,
    gamma: Matrix,
    Lp: HomLieAlgebra,
    s: Optional[Matrix] = None,
    s_prime: Optional[Matrix] = None,
) -> AbelianExtension:
    """Pullback of ``pi`` along ``gamma: L' -> L``, in the normal-form basis ``M + L'``.

    Basis vector ``(m, l')`` stands for ``(i m + sigma gamma l', l')`` in ``E x_L L'``.
    """
    M, E, L, i, pi, sigma = _parts(ext)
    if gamma.shape != (L.dim, Lp.dim) or not check_hom_morphism(gamma, Lp, L):
        raise HomLieError("gamma is not a morphism into the base")
    if s is not None or s_prime is not None:
        s = L.alpha if s is None else s
        s_prime = Lp.alpha if s_prime is None else s_prime
        if gamma @ s_prime != s @ gamma:
            raise HomLieError("gamma does not intertwine s and s'")
    inv = left_inverse(i)
    lift = sigma @ gamma
    lcols = lift.columns()
    icols = i.columns()

    def m_part(e, lp):
        v = vsub(e, lift.apply(lp))
        m = inv.apply(v)
        if i.apply(m) != v:
            raise HomLieError("pullback element outside the normal form")
        return m

    nM, nL = M.dim, Lp.dim
    n = nM + nL
    table = [[zero_vector(n) for _ in range(n)] for _ in range(n)]
    zL = zero_vector(nL)
    for a in range(nM):
        for b in range(nM):
            table[a][b] = m_part(E.bracket(icols[a], icols[b]), zL) + zL
    for p in range(nL):
        for b in range(nM):
            v = m_part(E.bracket(lcols[p], icols[b]), zL) + zL
            table[nM + p][b] = v
            table[b][nM + p] = tuple(-c for c in v)
        for q in range(nL):
            lp = Lp.structure[p][q]
            table[nM + p][nM + q] = m_part(E.bracket(lcols[p], lcols[q]), lp) + lp
    acols = []
    for a in range(nM):
        acols.append(m_part(E.alpha.apply(icols[a]), zL) + zL)
    for p in range(nL):
        lp = Lp.alpha.col(p)
        acols.append(m_part(E.alpha.apply(lcols[p]), lp) + lp)
    alpha = Matrix.from_columns(acols, n) if n else Matrix.zeros(0, 0)
    Ep = HomLieAlgebra(table, alpha, _pair_names(M.names, Lp.names))
    ni, npi, nsig = _normal_form_maps(nM, nL)
    act = pullback_action(ext.action, gamma, Lp) if ext.action is not None else None
    return AbelianExtension(M, Ep, Lp, ni, npi, nsig, act)


def backward_comparison_map(ext: AbelianExtension, gamma: Matrix) -> Matrix:
    """The map ``E_gamma -> E`` of the pullback square, in the normal-form basis."""
    return Matrix.hstack(*[b for b in (ext.i, ext.sigma @ gamma) if b.cols]) if ext.E.dim else Matrix.zeros(0, 0)


def _default_s_prime(ext: AbelianExtension, s: Matrix) -> Matrix:
    if s == ext.L.alpha:
        return ext.E.alpha
    if s.is_identity():
        return Matrix.identity(ext.E.dim)
    raise HomLieError("pass s_prime explicitly for this s")


def forward_ideal(ext: AbelianExtension, delta: Matrix, target: HomAction, s_prime: Matrix):
    """``(M' x_{s'} E, T)`` with ``T = {(delta m, -i m)}``."""
    pulled = pullback_action(target, ext.pi, ext.E)
    sd = semidirect(pulled, s_prime, check=False)
    nMp = target.target.dim
    vecs = [tuple(delta.col(j)) + tuple(-c for c in ext.i.col(j)) for j in range(ext.M.dim)]
    T = Subspace.span(vecs, nMp + ext.E.dim)
    return sd.algebra, T


def forward_ideal_check(ext: AbelianExtension, delta: Matrix, target: HomAction,
                        s_prime: Optional[Matrix] = None) -> bool:
    s_prime = ext.E.alpha if s_prime is None else s_prime
    A, T = forward_ideal(ext, delta, target, s_prime)
    return is_ideal(A, T)


def forward_induced(
    ext: AbelianExtension,
    delta: Matrix,
    target: HomAction,
    s: Optional[Matrix] = None,
    s_prime: Optional[Matrix] = None,
) -> AbelianExtension:
    """``(M' x_{s'} E) / T`` in the normal-form basis ``M' + L``.

    A class ``(a, e)`` is represented by ``(a + delta i^{-1}(e - sigma pi e), pi e)``.
    """
    M, E, L, i, pi, sigma = _parts(ext)
    Mp = target.target
    if s is None:
        s = L.alpha
    if s_prime is None:
        s_prime = _default_s_prime(ext, s)
    if pi @ s_prime != s @ pi:
        raise HomLieError("s' does not lie over s")
    if not check_hom_morphism(s_prime, E, E):
        raise HomLieError("s' is not an endomorphism of E")
    if ext.action is not None and not _module_morphism(delta, ext.action, target):
        raise HomLieError("delta is not a module morphism")
    if not forward_ideal_check(ext, delta, target, s_prime):
        raise HomLieError("T is not an ideal of the semidirect product")
    inv = left_inverse(i)
    sp = sigma @ pi

    def reduce(a, e):
        m = inv.apply(vsub(e, sp.apply(e)))
        return tuple(x + y for x, y in zip(a, delta.apply(m))) + pi.apply(e)

    nMp, nL = Mp.dim, L.dim
    scols = sigma.columns()
    zero_Mp = zero_vector(nMp)
    # E acts on M' through pi; mixed bracket uses s'
    mixed = []
    for a in range(nL):
        x = pi.apply(s_prime.apply(scols[a]))
        mixed.append([target.act(x, Mp.basis_vector(j)) for j in range(nMp)])
    n = nMp + nL
    table = [[zero_vector(n) for _ in range(n)] for _ in range(n)]
    for a in range(nL):
        for j in range(nMp):
            v = tuple(mixed[a][j]) + zero_vector(nL)
            table[nMp + a][j] = v
            table[j][nMp + a] = tuple(-c for c in v)
        for b in range(nL):
            table[nMp + a][nMp + b] = reduce(zero_Mp, E.bracket(scols[a], scols[b]))
    acols = [tuple(Mp.alpha.col(j)) + zero_vector(nL) for j in range(nMp)]
    acols += [reduce(zero_Mp, E.alpha.apply(scols[a])) for a in range(nL)]
    alpha = Matrix.from_columns(acols, n) if n else Matrix.zeros(0, 0)
    Ep = HomLieAlgebra(table, alpha, _pair_names(Mp.names, L.names))
    ni, npi, nsig = _normal_form_maps(nMp, nL)
    return AbelianExtension(Mp, Ep, L, ni, npi, nsig, target)


def forward_comparison_map(ext: AbelianExtension, delta: Matrix) -> Matrix:
    """The map ``E -> ^delta E`` of the pushout square, in normal-form coordinates."""
    inv = left_inverse(ext.i)
    sp = ext.sigma @ ext.pi
    top = delta @ inv @ (Matrix.identity(ext.E.dim) - sp)
    return Matrix.vstack(top, ext.pi)


def forward_splitting_derivation(ext: AbelianExtension, delta: Matrix, target: HomAction,
                                 s_prime: Optional[Matrix] = None) -> Optional[Matrix]:
    """An ``s'``-derivation ``psi: E -> M'`` with ``psi i = delta``, or ``None``."""
    s_prime = ext.E.alpha if s_prime is None else s_prime
    pulled = pullback_action(target, ext.pi, ext.E)
    cond = derivation_conditions(pulled, s_prime)
    nMp, nE = target.target.dim, ext.E.dim

    def F(psi):
        return tuple(cond(psi)) + MatrixSpace.flatten(psi @ ext.i)

    zeros = tuple(cond(Matrix.zeros(nMp, nE)))
    return solve_affine_conditions(F, zeros + MatrixSpace.flatten(delta), nMp, nE)


# --------------------------------------------------------------------------
# Baer sum


def direct_sum_extension(e1: AbelianExtension, e2: AbelianExtension) -> AbelianExtension:
    from .core import direct_sum

    M = direct_sum(e1.M, e2.M)
    E = direct_sum(e1.E, e2.E)
    L = direct_sum(e1.L, e2.L)
    i = Matrix.block_diag(e1.i, e2.i)
    pi = Matrix.block_diag(e1.pi, e2.pi)
    sigma = Matrix.block_diag(e1.sigma, e2.sigma)
    act = None
    if e1.action is not None and e2.action is not None:
        n1, n2 = e1.M.dim, e2.M.dim
        table = []
        for x in range(e1.L.dim):
            table.append([e1.action.table[x][j] + zero_vector(n2) for j in range(n1)]
                         + [zero_vector(n1 + n2) for _ in range(n2)])
        for x in range(e2.L.dim):
            table.append([zero_vector(n1 + n2) for _ in range(n1)]
                         + [zero_vector(n1) + e2.action.table[x][j] for j in range(n2)])
        act = HomAction(L, M, table)
    return AbelianExtension(M, E, L, i, pi, sigma, act)


def baer_sum(e1: AbelianExtension, e2: AbelianExtension, method: str = "categorical") -> AbelianExtension:
    _same_boundary(e1, e2)
    act = e1.module()
    if method == "cocycle":
        return extension_from_cocycle(act, cocycle_from_extension(e1) + cocycle_from_extension(e2))
    if method != "categorical":
        raise ValueError(f"unknown method {method!r}")
    D = direct_sum_extension(e1, _with_action(e2, act))
    nL, nM = e1.L.dim, e1.M.dim
    diag = Matrix.vstack(Matrix.identity(nL), Matrix.identity(nL))
    P = backward_induced(D, diag, e1.L)
    codiag = Matrix.hstack(Matrix.identity(nM), Matrix.identity(nM))
    return forward_induced(P, codiag, act, e1.L.alpha, P.E.alpha)


def scalar_multiple(ext: AbelianExtension, k, method: str = "categorical") -> AbelianExtension:
    act = ext.module()
    if method == "cocycle":
        return extension_from_cocycle(act, cocycle_from_extension(ext).scale(k))
    if method != "categorical":
        raise ValueError(f"unknown method {method!r}")
    return forward_induced(ext, Matrix.scalar(ext.M.dim, k), act)


def baer_sum_scalar(e1: AbelianExtension, e2: AbelianExtension, k=1, method: str = "categorical"):
    """``e1 + k . e2``."""
    return baer_sum(e1, scalar_multiple(e2, k, method), method)


# --------------------------------------------------------------------------
# five-term sequence


@dataclass(frozen=True)
class AbelianisedSequence:
    Nab: HomLieAlgebra
    Q: HomLieAlgebra  # E / [N, N]
    L: HomLieAlgebra
    xi: Matrix
    pi: Matrix
    sigma: Matrix
    commutator: Subspace  # [N, N] inside E
    quotient: Matrix  # E -> Q


def abelianised_sequence(seq) -> AbelianisedSequence:
    """``0 -> N^ab -> E/[N,N] -> L -> 0``; ``[N, N]`` is the E-ideal generated by brackets in N."""
    N, E, L, xi, pi, sigma = _parts(seq)
    xcols = xi.columns()
    brackets = [E.bracket(xcols[a], xcols[b]) for a in range(N.dim) for b in range(a + 1, N.dim)]
    C = ideal_closure(E, Subspace.span(brackets, E.dim))
    Q, q = quotient_algebra(E, C)
    Nimg = Subspace.span([q.apply(c) for c in xcols], Q.dim)
    Nab, inc = subalgebra(Q, Nimg)
    # pi factors through q since C sits inside N = ker pi
    reps = [j for j in range(E.dim) if j not in set(C.pivots)]
    piQ = Matrix.from_columns([pi.col(j) for j in reps], L.dim) if reps else Matrix.zeros(L.dim, 0)
    return AbelianisedSequence(Nab, Q, L, inc, piQ, q @ sigma, C, q)


@dataclass
class FiveTermReport:
    dims: dict
    exact: dict
    der_pi: Matrix
    zeta: Matrix
    theta_star: Matrix
    pi_star: Matrix
    spaces: dict = field(default_factory=dict, repr=False)

    @property
    def all_exact(self) -> bool:
        return all(self.exact.values())

    def as_dict(self):
        return {"dims": dict(self.dims), "exact": dict(self.exact), "all_exact": self.all_exact}


def _coords_matrix(columns, space: MatrixSpace, rows: int) -> Matrix:
    cols = [space.coordinates(c) for c in columns]
    if not cols:
        return Matrix.zeros(rows, 0)
    return Matrix.from_columns(cols, rows)


def _class_coords(reps, B: MatrixSpace, w: Matrix):
    """Coordinates of the class of ``w`` against representatives ``reps`` modulo ``B``."""
    cols = [MatrixSpace.flatten(r) for r in reps] + list(B.space.basis)
    target = MatrixSpace.flatten(w)
    if not cols:
        if any(target):
            raise HomLieError("not a cocycle")
        return ()
    A = Matrix.from_columns(cols, len(target))
    x = solve_affine(A, target)
    if x is None:
        raise HomLieError("cocycle is not in the span of representatives and coboundaries")
    return tuple(x[: len(reps)])


def _preimage_space(space: MatrixSpace, fn, B: MatrixSpace) -> MatrixSpace:
    """``{f in space : fn(f) in B}``."""
    basis = space.matrices()
    if not basis:
        return space
    imgs = [MatrixSpace.flatten(fn(b)) for b in basis]
    G = Matrix.from_columns(imgs, len(imgs[0]))
    P = preimage(G, B.space)
    mats = [space.from_coordinates(v) for v in P.basis]
    return MatrixSpace.spanned_by(mats, space.rows, space.cols)


def _span(mats, rows, cols):
    return MatrixSpace.spanned_by(mats, rows, cols)


def hom_nab_space(seq, act: HomAction) -> MatrixSpace:
    """Hom-linear ``f: N -> A`` killing ``[N,N]`` with ``f([sigma x, n]) = alpha(x) . f(n)``."""
    N, E, L, xi, pi, sigma = _parts(seq)
    A = act.target
    ab = abelianised_sequence(seq)
    inv = left_inverse(xi)
    K = Subspace.span([inv.apply(c) for c in ab.commutator.basis], N.dim)
    scols = sigma.columns()
    xcols = xi.columns()
    acols = L.alpha.columns()
    inner = []
    for x in range(L.dim):
        row = []
        for n in range(N.dim):
            v = E.bracket(scols[x], xcols[n])
            row.append(inv.apply(v))
        inner.append(row)
    amats = [act.action_matrix(c) for c in acols]

    def F(f):
        out = list(MatrixSpace.flatten(f @ N.alpha - A.alpha @ f))
        for k in K.basis:
            out.extend(f.apply(k))
        cols = f.columns()
        for x in range(L.dim):
            for n in range(N.dim):
                out.extend(vsub(f.apply(inner[x][n]), amats[x].apply(cols[n])))
        return out

    from .exactla import solve_linear_conditions

    return solve_linear_conditions(F, A.dim, N.dim)


def bracket_defect(seq) -> Matrix:
    """``W(x,y) = xi^{-1}([sigma x, sigma y] - sigma[x,y])``, an N-valued 2-form on L."""
    N, E, L, xi, pi, sigma = _parts(seq)
    inv = left_inverse(xi)
    scols = sigma.columns()
    cols = []
    for a, b in wedge_basis(L.dim, 2):
        v = vsub(E.bracket(scols[a], scols[b]), sigma.apply(L.structure[a][b]))
        m = inv.apply(v)
        if xi.apply(m) != v:
            raise HomLieError("bracket defect of the section is not in the kernel")
        cols.append(m)
    return Matrix.from_columns(cols, N.dim) if cols else Matrix.zeros(N.dim, 0)


def five_term_report(seq, act: HomAction) -> FiveTermReport:
    """Exactness of ``0 -> Der(L,A) -> Der(E,A) -> Hom(N^ab,A) -> H2(L,A) -> H2(E,A)`` with ``s = alpha``."""
    N, E, L, xi, pi, sigma = _parts(seq)
    if act.actor is not L and not act.actor.same_structure(L):
        raise HomLieError("module is over a different algebra")
    rep = validate_sequence(seq)
    for flag in ("algebra_valid", "i_morphism", "pi_morphism", "i_injective", "pi_surjective",
                 "exact", "section_right_inverse", "section_hom_linear"):
        if not getattr(rep, flag):
            raise HomLieError(f"input sequence fails {flag}")
    if not validate_action(act).is_module:
        raise HomLieError("coefficients are not a module")
    A = act.target
    actE = pullback_action(act, pi, E)
    DerL = derivation_space(act)
    DerE = derivation_space(actE)
    Hom = hom_nab_space(seq, act)

    der_pi_imgs = [d @ pi for d in DerL.matrices()]
    der_pi = _coords_matrix(der_pi_imgs, DerE, DerE.dim)
    zeta_imgs = [d @ xi for d in DerE.matrices()]
    for z in zeta_imgs:
        if not Hom.contains(z):
            raise HomLieError("zeta leaves Hom(N^ab, A)")
    zeta = _coords_matrix(zeta_imgs, Hom, Hom.dim)

    W = bracket_defect(seq)
    H2L = cohomology_group(act, 2)
    H2E = cohomology_group(actE, 2)
    theta_imgs = [f @ W for f in Hom.matrices()]
    for t in theta_imgs:
        if not H2L.cocycles.contains(t):
            raise HomLieError("theta* does not produce a cocycle")
    theta_star = (
        Matrix.from_columns([_class_coords(H2L.representatives, H2L.coboundaries, t) for t in theta_imgs], H2L.dim)
        if theta_imgs else Matrix.zeros(H2L.dim, 0)
    )
    P2 = wedge_power(pi, 2)
    pi_star_cols = []
    for r in H2L.representatives:
        pulled = r @ P2
        if not H2E.cocycles.contains(pulled):
            raise HomLieError("pulled back cocycle is not a cocycle")
        pi_star_cols.append(_class_coords(H2E.representatives, H2E.coboundaries, pulled))
    pi_star = Matrix.from_columns(pi_star_cols, H2E.dim) if pi_star_cols else Matrix.zeros(H2E.dim, 0)

    # exactness, checked on representing subspaces
    exact = {}
    exact["Der(L,A)"] = der_pi.rank() == DerL.dim
    im_der_pi = _span(der_pi_imgs, A.dim, E.dim)
    ker_zeta = _preimage_space(DerE, lambda d: d @ xi, MatrixSpace(A.dim, N.dim, Subspace.zero(A.dim * N.dim)))
    exact["Der(E,A)"] = im_der_pi == ker_zeta
    im_zeta = _span(zeta_imgs, A.dim, N.dim)
    ker_theta = _preimage_space(Hom, lambda f: f @ W, H2L.coboundaries)
    exact["Hom(N^ab,A)"] = im_zeta == ker_theta
    im_theta = _span(theta_imgs, A.dim, W.cols) + H2L.coboundaries
    ker_pi = _preimage_space(H2L.cocycles, lambda w: w @ P2, H2E.coboundaries)
    exact["H2(L,A)"] = im_theta == ker_pi

    dims = {
        "Der(L,A)": DerL.dim,
        "Der(E,A)": DerE.dim,
        "Hom(N^ab,A)": Hom.dim,
        "H2(L,A)": H2L.dim,
        "H2(E,A)": H2E.dim,
        "rank Der(pi)": der_pi.rank(),
        "rank zeta": zeta.rank(),
        "rank theta*": theta_star.rank(),
        "rank pi*": pi_star.rank(),
    }
    spaces = {"DerL": DerL, "DerE": DerE, "Hom": Hom, "W": W, "H2L": H2L, "H2E": H2E}
    return FiveTermReport(dims, exact, der_pi, zeta, theta_star, pi_star, spaces)


def pi_star_by_pullback(ext: AbelianExtension, pi: Matrix, E: HomLieAlgebra) -> Matrix:
    """Cocycle of the extension pulled back along ``pi``, read with its normal-form section."""
    return cocycle_from_extension(backward_induced(ext, pi, E))


def sequence_from_extension(ext: AbelianExtension) -> ShortExactSequence:
    return ShortExactSequence(ext.M, ext.E, ext.L, ext.i, ext.pi, ext.sigma)


def sequence_from_ideal(E: HomLieAlgebra, N: Subspace, section: Optional[Matrix] = None) -> ShortExactSequence:
    """``0 -> N -> E -> E/N -> 0``; the section defaults to a Hom-linear one if it exists."""
    Nalg, xi = subalgebra(E, N)
    Q, q = quotient_algebra(E, N)
    if section is None:
        section = find_section(q, E.alpha, Q.alpha)
        if section is None:
            raise HomLieError("no Hom-linear section exists")
    return ShortExactSequence(Nalg, E, Q, xi, q, section)


__all__ = [
    "AbelianExtension",
    "AbelianisedSequence",
    "ExtensionReport",
    "FiveTermReport",
    "ShortExactSequence",
    "abelianised_sequence",
    "backward_comparison_map",
    "backward_induced",
    "baer_sum",
    "baer_sum_scalar",
    "bracket_defect",
    "cocycle_condition_holds",
    "cocycle_from_extension",
    "direct_sum_extension",
    "equivalence_by_solve",
    "equivalent_extensions",
    "extension_from_cocycle",
    "find_section",
    "find_splitting",
    "five_term_report",
    "forward_comparison_map",
    "forward_ideal",
    "forward_ideal_check",
    "forward_induced",
    "forward_splitting_derivation",
    "hom_nab_space",
    "is_alpha_extension",
    "is_equivalence",
    "lift_through",
    "normal_form_algebra",
    "normal_form_map",
    "pi_star_by_pullback",
    "scalar_multiple",
    "sequence_from_extension",
    "sequence_from_ideal",
    "trivial_extension",
    "validate_extension",
    "validate_sequence",
]
