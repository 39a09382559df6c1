"""Hom-actions, Hom-modules, semidirect products and derivation spaces."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from .core import HomLieAlgebra, HomLieError, check_hom_morphism
from .exactla import (
    ZERO,
    Matrix,
    MatrixSpace,
    Subspace,
    kernel_basis,
    left_inverse,
    solve_linear_conditions,
    vec,
    vsub,
    zero_vector,
)


class HomAction:
    """Action of ``actor`` on ``target``: ``table[i][j] = e_i . m_j``.

    ``target`` carries the twist ``alpha_M`` and the bracket of ``M`` (zero for
    a module).
    """

    __slots__ = ("actor", "target", "table", "_mats")

    def __init__(self, actor: HomLieAlgebra, target: HomLieAlgebra, table):
        n, m = actor.dim, target.dim
        table = tuple(tuple(vec(table[i][j]) for j in range(m)) for i in range(n))
        for row in table:
            for v in row:
                if len(v) != m:
                    raise HomLieError("action value has the wrong length")
        self.actor = actor
        self.target = target
        self.table = table
        # matrices of m -> e_i . m
        self._mats = tuple(
            Matrix.from_columns(list(table[i]), m) if m else Matrix.zeros(0, 0) for i in range(n)
        )

    @classmethod
    def from_dict(cls, actor: HomLieAlgebra, target: HomLieAlgebra, values: dict) -> "HomAction":
        table = [[zero_vector(target.dim) for _ in range(target.dim)] for _ in range(actor.dim)]
        for (i, j), v in values.items():
            table[i][j] = vec(v)
        return cls(actor, target, table)

    @classmethod
    def trivial(cls, actor: HomLieAlgebra, target: HomLieAlgebra) -> "HomAction":
        return cls.from_dict(actor, target, {})

    @property
    def alpha_M(self) -> Matrix:
        return self.target.alpha

    @property
    def is_abelian_target(self) -> bool:
        return self.target.is_abelian()

    def basis_matrix(self, i: int) -> Matrix:
        return self._mats[i]

    def action_matrix(self, x) -> Matrix:
        """Matrix of ``m -> x . m``."""
        m = self.target.dim
        out = [[ZERO] * m for _ in range(m)]
        for i, a in enumerate(x):
            if not a:
                continue
            for j, col in enumerate(self.table[i]):
                for k, c in enumerate(col):
                    if c:
                        out[k][j] += a * c
        return Matrix(out, m)

    def act(self, x, m):
        out = [ZERO] * self.target.dim
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.table[i]
            for j, b in enumerate(m):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] += ab * c
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, HomAction):
            return NotImplemented
        return self.actor == other.actor and self.target == other.target and self.table == other.table

    def __hash__(self):
        return hash((self.actor, self.target, self.table))

    def __repr__(self):
        return f"HomAction({self.actor.dim} on {self.target.dim})"


def adjoint_action(L: HomLieAlgebra) -> HomAction:
    """``L`` acting on itself by the bracket."""
    return HomAction(L, L, L.structure)


def ideal_action(L: HomLieAlgebra, K: Subspace, names=None) -> HomAction:
    """``L`` acting on a Hom-ideal ``K`` by the bracket; ``K`` keeps its induced bracket."""
    from .core import is_ideal, subalgebra

    if not is_ideal(L, K):
        raise HomLieError("subspace is not a Hom-ideal")
    H, _ = subalgebra(L, K, names)
    table = [[K.coordinates(L.bracket(L.basis_vector(i), b)) for b in K.basis] for i in range(L.dim)]
    return HomAction(L, H, table)


def module_action(L: HomLieAlgebra, K: Subspace, names=None) -> HomAction:
    """As :func:`ideal_action` but with the bracket on ``K`` forgotten."""
    act = ideal_action(L, K, names)
    M = HomLieAlgebra.abelian(act.target.dim, act.target.alpha, act.target.names)
    return HomAction(L, M, act.table)


def pullback_action(action: HomAction, phi: Matrix, new_actor: HomLieAlgebra) -> HomAction:
    """``x . m := phi(x) . m`` for a morphism ``phi: new_actor -> actor``."""
    if phi.shape != (action.actor.dim, new_actor.dim):
        raise HomLieError("map does not go into the acting algebra")
    cols = phi.columns()
    table = [[action.act(cols[i], action.target.basis_vector(j)) for j in range(action.target.dim)]
             for i in range(new_actor.dim)]
    return HomAction(new_actor, action.target, table)


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ActionReport:
    a: bool
    b: bool
    c: bool
    is_module: bool

    @property
    def valid(self) -> bool:
        return self.a and self.b and self.c

    def as_dict(self):
        return {"a": self.a, "b": self.b, "c": self.c, "is_module": self.is_module}


def action_residuals(act: HomAction, x, y, m, m2):
    """Residuals of the three action axioms at one choice of arguments."""
    L, M = act.actor, act.target
    aL, aM = L.twist, M.twist
    ra = vsub(
        act.act(L.bracket(x, y), aM(m)),
        vsub(act.act(aL(x), act.act(y, m)), act.act(aL(y), act.act(x, m))),
    )
    rb = vsub(
        act.act(aL(x), M.bracket(m, m2)),
        tuple(p + q for p, q in zip(M.bracket(act.act(x, m), aM(m2)), M.bracket(aM(m), act.act(x, m2)))),
    )
    rc = vsub(aM(act.act(x, m)), act.act(aL(x), aM(m)))
    return ra, rb, rc


def validate_action(act: HomAction) -> ActionReport:
    L, M = act.actor, act.target
    eL = [L.basis_vector(i) for i in range(L.dim)]
    eM = [M.basis_vector(j) for j in range(M.dim)]
    ok_a = ok_b = ok_c = True
    for i, j, k in product(range(L.dim), range(L.dim), range(M.dim)):
        ra, _, _ = action_residuals(act, eL[i], eL[j], eM[k], eM[k])
        if any(ra):
            ok_a = False
            break
    for i, k, l in product(range(L.dim), range(M.dim), range(M.dim)):
        _, rb, _ = action_residuals(act, eL[i], eL[i], eM[k], eM[l])
        if any(rb):
            ok_b = False
            break
    for i, k in product(range(L.dim), range(M.dim)):
        _, _, rc = action_residuals(act, eL[i], eL[i], eM[k], eM[k])
        if any(rc):
            ok_c = False
            break
    return ActionReport(a=ok_a, b=ok_b, c=ok_c, is_module=ok_a and ok_b and ok_c and M.is_abelian())


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SemidirectProduct:
    """``M x_s L`` with basis ``M`` first, then ``L``; the split sequence maps."""

    algebra: HomLieAlgebra
    incl: Matrix
    proj: Matrix
    section: Matrix


def semidirect(act: HomAction, s: Optional[Matrix] = None, check: bool = True) -> SemidirectProduct:
    """Bracket ``([m1,m2] + s(x1).m2 - s(x2).m1, [x1,x2])``, twist ``(alpha_M, alpha_L)``.

    ``s`` defaults to the identity.
    """
    L, M = act.actor, act.target
    nL, nM = L.dim, M.dim
    if s is None:
        s = Matrix.identity(nL)
    if check:
        if not validate_action(act).valid:
            raise HomLieError("action does not satisfy the Hom-action axioms")
        if s.shape != (nL, nL) or not check_hom_morphism(s, L, L):
            raise HomLieError("s is not an endomorphism of the acting algebra")
    n = nM + nL
    table = [[zero_vector(n) for _ in range(n)] for _ in range(n)]
    scols = s.columns()
    for a in range(nM):
        for b in range(nM):
            table[a][b] = M.structure[a][b] + zero_vector(nL)
    for i in range(nL):
        for b in range(nM):
            v = act.act(scols[i], M.basis_vector(b)) + zero_vector(nL)
            table[nM + i][b] = v
            table[b][nM + i] = tuple(-c for c in v)
        for j in range(nL):
            table[nM + i][nM + j] = zero_vector(nM) + L.structure[i][j]
    names = _pair_names(M.names, L.names)
    E = HomLieAlgebra(table, Matrix.block_diag(M.alpha, L.alpha), names)
    incl = Matrix.vstack(Matrix.identity(nM), Matrix.zeros(nL, nM)) if n else Matrix.zeros(0, 0)
    proj = Matrix.hstack(Matrix.zeros(nL, nM), Matrix.identity(nL)) if n else Matrix.zeros(0, 0)
    section = Matrix.vstack(Matrix.zeros(nM, nL), Matrix.identity(nL)) if n else Matrix.zeros(0, 0)
    if nM == 0:
        incl = Matrix.zeros(n, 0)
    if nL == 0:
        proj = Matrix.zeros(0, n)
        section = Matrix.zeros(n, 0)
    return SemidirectProduct(E, incl, proj, section)


def _pair_names(a, b):
    if set(a).isdisjoint(b):
        return tuple(a) + tuple(b)
    return tuple(f"{x}_M" for x in a) + tuple(f"{x}_L" for x in b)


# --------------------------------------------------------------------------
# derivations


def derivation_conditions(act: HomAction, s: Matrix):
    """Linear function whose zeros are the s-derivations ``L -> M``."""
    L, M = act.actor, act.target
    nL = L.dim
    smats = [act.action_matrix(c) for c in s.columns()]
    pairs = [(i, j) for i in range(nL) for j in range(i + 1, nL)]
    aL, aM = L.alpha, M.alpha

    def F(D: Matrix):
        out = []
        cols = D.columns()
        for i, j in pairs:
            r = vsub(D.apply(L.structure[i][j]),
                     vsub(smats[i].apply(cols[j]), smats[j].apply(cols[i])))
            out.extend(r)
        out.extend(MatrixSpace.flatten(aM @ D - D @ aL))
        return out

    return F


def _check_module(act: HomAction):
    if not act.target.is_abelian():
        raise HomLieError("target is not abelian, so it is not a module")
    if not validate_action(act).valid:
        raise HomLieError("action does not satisfy the Hom-action axioms")


def derivation_space(act: HomAction, s: Optional[Matrix] = None, check: bool = True) -> MatrixSpace:
    """All ``d`` with ``d[x,y] = s(x).d(y) - s(y).d(x)`` and ``d alpha_L = alpha_M d``.

    ``s`` defaults to ``alpha_L`` (the alpha-derivations); pass the identity for
    plain derivations.
    """
    L, M = act.actor, act.target
    if check:
        _check_module(act)
    if s is None:
        s = L.alpha
    return solve_linear_conditions(derivation_conditions(act, s), M.dim, L.dim)


def is_derivation(act: HomAction, d: Matrix, s: Optional[Matrix] = None) -> bool:
    if s is None:
        s = act.actor.alpha
    return not any(derivation_conditions(act, s)(d))


def fixed_vectors(alpha: Matrix) -> Subspace:
    return kernel_basis(alpha - Matrix.identity(alpha.rows))


def inner_alpha_derivations(act: HomAction) -> MatrixSpace:
    """Span of ``x -> alpha_L(x) . m`` over ``m`` fixed by ``alpha_M``."""
    L, M = act.actor, act.target
    acols = L.alpha.columns()
    mats = []
    for m in fixed_vectors(M.alpha).basis:
        mats.append(Matrix.from_columns([act.act(acols[j], m) for j in range(L.dim)], M.dim)
                    if L.dim else Matrix.zeros(M.dim, 0))
    return MatrixSpace.spanned_by(mats, M.dim, L.dim)


def coboundary_derivations(act: HomAction) -> MatrixSpace:
    """Span of ``x -> x . m`` over ``m`` fixed by ``alpha_M``; the image of ``d^0``."""
    L, M = act.actor, act.target
    mats = []
    for m in fixed_vectors(M.alpha).basis:
        mats.append(Matrix.from_columns([act.act(L.basis_vector(j), m) for j in range(L.dim)], M.dim)
                    if L.dim else Matrix.zeros(M.dim, 0))
    return MatrixSpace.spanned_by(mats, M.dim, L.dim)


def action_from_extension(ext, section: Optional[Matrix] = None) -> HomAction:
    """``x . m = i^{-1}[sigma(x), i(m)]`` for an abelian extension ``M -> E -> L``."""
    E, L, M = ext.E, ext.L, ext.M
    sigma = ext.sigma if section is None else section
    inv = left_inverse(ext.i)
    icols = ext.i.columns()
    scols = sigma.columns()
    table = []
    for x in range(L.dim):
        row = []
        for j in range(M.dim):
            v = E.bracket(scols[x], icols[j])
            w = inv.apply(v)
            if ext.i.apply(w) != v:
                raise HomLieError("bracket with the kernel leaves the kernel")
            row.append(w)
        table.append(row)
    return HomAction(L, M, table)


def semidirect_derivation_witness(act: HomAction) -> Matrix:
    """``theta(m, l) = m`` on ``M x L``, a derivation into ``M`` for the pulled-back action."""
    nM, nL = act.target.dim, act.actor.dim
    return Matrix.hstack(Matrix.identity(nM), Matrix.zeros(nM, nL))


__all__ = [
    "ActionReport",
    "HomAction",
    "SemidirectProduct",
    "action_from_extension",
    "action_residuals",
    "adjoint_action",
    "coboundary_derivations",
    "derivation_conditions",
    "derivation_space",
    "fixed_vectors",
    "ideal_action",
    "inner_alpha_derivations",
    "is_derivation",
    "module_action",
    "pullback_action",
    "semidirect",
    "semidirect_derivation_witness",
]
