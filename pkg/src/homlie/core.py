"""Hom-Lie algebras given by structure constants, and basic constructions.

A Hom-Lie algebra here is a finite-dimensional space with a skew bracket and a
linear twist ``alpha`` satisfying the twisted Jacobi identity

    [alpha x, [y, z]] + [alpha z, [x, y]] + [alpha y, [z, x]] = 0.

It is *multiplicative* when ``alpha`` preserves the bracket.  All objects are
immutable; constructions return new objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .exactla import (
    ZERO,
    Matrix,
    Subspace,
    kernel_basis,
    lin_comb,
    preimage,
    unit_vector,
    vec,
    vscale,
    vsub,
    zero_vector,
)


class HomLieError(ValueError):
    """Raised when an input violates a structural precondition."""


def _default_names(prefix: str, n: int):
    return tuple(f"{prefix}{i + 1}" for i in range(n))


class HomLieAlgebra:
    """Structure constants ``[e_i, e_j] = structure[i][j]`` plus the twist ``alpha``."""

    __slots__ = ("dim", "structure", "alpha", "names")

    def __init__(self, structure, alpha: Matrix, names: Optional[Sequence[str]] = None):
        n = alpha.rows
        if alpha.cols != n:
            raise HomLieError("alpha must be square")
        structure = tuple(tuple(vec(structure[i][j]) for j in range(n)) for i in range(n))
        for row in structure:
            for v in row:
                if len(v) != n:
                    raise HomLieError("structure constant vector has the wrong length")
        if names is None:
            names = _default_names("e", n)
        names = tuple(names)
        if len(names) != n:
            raise HomLieError("one name per basis vector is required")
        if len(set(names)) != n:
            raise HomLieError("basis names must be unique")
        self.dim = n
        self.structure = structure
        self.alpha = alpha
        self.names = names

    # construction -------------------------------------------------------

    @classmethod
    def from_brackets(cls, dim: int, brackets: dict, alpha: Optional[Matrix] = None, names=None):
        """Build from ``{(i, j): vector}``; ``[e_j, e_i]`` is filled in by skew-symmetry."""
        if alpha is None:
            alpha = Matrix.identity(dim)
        table = [[zero_vector(dim) for _ in range(dim)] for _ in range(dim)]
        given = {}
        for (i, j), v in brackets.items():
            v = vec(v)
            for key, val in (((i, j), v), ((j, i), vscale(-1, v))):
                if key in given and given[key] != val:
                    raise HomLieError(f"conflicting values for bracket {key}")
                given[key] = val
        for (i, j), v in given.items():
            if i == j and any(v):
                raise HomLieError(f"[e{i + 1}, e{i + 1}] must vanish")
            table[i][j] = v
        return cls(table, alpha, names)

    @classmethod
    def abelian(cls, dim: int, alpha: Optional[Matrix] = None, names=None):
        return cls.from_brackets(dim, {}, alpha, names)

    @classmethod
    def zero(cls):
        return cls((), Matrix.zeros(0, 0), ())

    def with_names(self, names) -> "HomLieAlgebra":
        return HomLieAlgebra(self.structure, self.alpha, names)

    # algebra ------------------------------------------------------------

    def basis_vector(self, i: int):
        return unit_vector(self.dim, i)

    def bracket(self, x: Sequence, y: Sequence):
        n = self.dim
        out = [ZERO] * n
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.structure[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] += ab * c
        return tuple(out)

    def twist(self, x: Sequence):
        return self.alpha.apply(x)

    def ad(self, x: Sequence) -> Matrix:
        """Matrix of ``y -> [x, y]``."""
        cols = [self.bracket(x, unit_vector(self.dim, j)) for j in range(self.dim)]
        return Matrix.from_columns(cols, self.dim)

    def is_abelian(self) -> bool:
        return not any(any(v) for row in self.structure for v in row)

    def __eq__(self, other):
        if not isinstance(other, HomLieAlgebra):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.structure == other.structure
            and self.alpha == other.alpha
            and self.names == other.names
        )

    def same_structure(self, other: "HomLieAlgebra") -> bool:
        """Equality ignoring basis names."""
        return self.dim == other.dim and self.structure == other.structure and self.alpha == other.alpha

    def __hash__(self):
        return hash((self.structure, self.alpha))

    def __repr__(self):
        return f"HomLieAlgebra(dim={self.dim}, names={self.names})"


# --------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class HomLieReport:
    skew: bool
    hom_jacobi: bool
    multiplicative: bool
    regular: bool

    @property
    def is_hom_lie(self) -> bool:
        return self.skew and self.hom_jacobi

    @property
    def valid(self) -> bool:
        """Hom-Lie and multiplicative, the standing convention of the library."""
        return self.skew and self.hom_jacobi and self.multiplicative

    def as_dict(self):
        return {
            "skew": self.skew,
            "hom_jacobi": self.hom_jacobi,
            "multiplicative": self.multiplicative,
            "regular": self.regular,
        }


def skew_residual_free(L: HomLieAlgebra) -> bool:
    n = L.dim
    return all(L.structure[i][j] == vscale(-1, L.structure[j][i]) for i in range(n) for j in range(n))


def hom_jacobi_residual(L: HomLieAlgebra, x, y, z):
    a = L.twist
    terms = (
        L.bracket(a(x), L.bracket(y, z)),
        L.bracket(a(z), L.bracket(x, y)),
        L.bracket(a(y), L.bracket(z, x)),
    )
    return lin_comb((1, 1, 1), terms, L.dim)


def multiplicativity_residual(L: HomLieAlgebra, x, y):
    return vsub(L.twist(L.bracket(x, y)), L.bracket(L.twist(x), L.twist(y)))


def validate_hom_lie(L: HomLieAlgebra) -> HomLieReport:
    n = L.dim
    e = [L.basis_vector(i) for i in range(n)]
    skew = skew_residual_free(L)
    hj = all(
        not any(hom_jacobi_residual(L, e[i], e[j], e[k]))
        for i, j, k in product(range(n), repeat=3)
    )
    mult = all(not any(multiplicativity_residual(L, e[i], e[j])) for i in range(n) for j in range(n))
    regular = mult and L.alpha.inverse() is not None
    return HomLieReport(skew=skew, hom_jacobi=hj, multiplicative=mult, regular=regular)


def check_hom_morphism(f: Matrix, L: HomLieAlgebra, L2: HomLieAlgebra) -> bool:
    """``f`` preserves brackets and intertwines the twists."""
    if f.shape != (L2.dim, L.dim):
        raise HomLieError(f"map of shape {f.shape} cannot go from dim {L.dim} to dim {L2.dim}")
    if f @ L.alpha != L2.alpha @ f:
        return False
    cols = f.columns()
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            if f.apply(L.structure[i][j]) != L2.bracket(cols[i], cols[j]):
                return False
    return True


def is_hom_linear(f: Matrix, alpha_src: Matrix, alpha_dst: Matrix) -> bool:
    return f @ alpha_src == alpha_dst @ f


# --------------------------------------------------------------------------
# constructions from other structures


def yau_twist(g: HomLieAlgebra, s: Matrix) -> HomLieAlgebra:
    """``(g, s o [-,-], s)`` for a Lie algebra ``g`` and a Lie endomorphism ``s``."""
    plain = HomLieAlgebra(g.structure, Matrix.identity(g.dim), g.names)
    if not validate_hom_lie(plain).is_hom_lie:
        raise HomLieError("input bracket is not a Lie bracket")
    if s.shape != (g.dim, g.dim) or not check_hom_morphism(s, plain, plain):
        raise HomLieError("twisting map is not a Lie algebra endomorphism")
    table = [[s.apply(g.structure[i][j]) for j in range(g.dim)] for i in range(g.dim)]
    return HomLieAlgebra(table, s, g.names)


def commutator_hom_lie(dim: int, mu, alpha: Matrix, names=None) -> HomLieAlgebra:
    """Commutator algebra of a multiplicative Hom-associative algebra.

    ``mu[i][j]`` is the product of the i-th and j-th basis vectors.
    """
    mu = [[vec(mu[i][j]) for j in range(dim)] for i in range(dim)]

    def mult(x, y):
        out = [ZERO] * dim
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        for k, c in enumerate(mu[i][j]):
                            if c:
                                out[k] += a * b * c
        return tuple(out)

    e = [unit_vector(dim, i) for i in range(dim)]
    for i in range(dim):
        for j in range(dim):
            if alpha.apply(mu[i][j]) != mult(alpha.apply(e[i]), alpha.apply(e[j])):
                raise HomLieError("alpha does not preserve the product")
    for i, j, k in product(range(dim), repeat=3):
        lhs = mult(alpha.apply(e[i]), mu[j][k])
        rhs = mult(mu[i][j], alpha.apply(e[k]))
        if lhs != rhs:
            raise HomLieError("product is not Hom-associative")
    table = [[vsub(mu[i][j], mu[j][i]) for j in range(dim)] for i in range(dim)]
    return HomLieAlgebra(table, alpha, names)


# --------------------------------------------------------------------------
# ideals, quotients, subalgebras


def is_subalgebra(L: HomLieAlgebra, S: Subspace) -> bool:
    if any(L.twist(b) not in S for b in S.basis):
        return False
    return all(L.bracket(a, b) in S for a in S.basis for b in S.basis)


def is_ideal(L: HomLieAlgebra, S: Subspace) -> bool:
    if S.ambient_dim != L.dim:
        raise HomLieError("subspace lives in the wrong ambient space")
    if any(L.twist(b) not in S for b in S.basis):
        return False
    return all(L.bracket(b, L.basis_vector(j)) in S for b in S.basis for j in range(L.dim))


def ideal_closure(L: HomLieAlgebra, S: Subspace) -> Subspace:
    """Smallest Hom-ideal containing ``S``."""
    U = S
    for _ in range(L.dim + 1):
        new = list(U.basis)
        new += [L.twist(b) for b in U.basis]
        new += [L.bracket(b, L.basis_vector(j)) for b in U.basis for j in range(L.dim)]
        V = Subspace.span(new, L.dim)
        if V == U:
            return U
        U = V
    return U


def quotient_projection(L: HomLieAlgebra, I: Subspace) -> Matrix:
    """Projection onto coset coordinates.

    The quotient basis is the images of the ambient basis vectors that are not
    pivots of ``I``.
    """
    reps = [j for j in range(L.dim) if j not in set(I.pivots)]
    cols = []
    for j in range(L.dim):
        r = I.reduce(unit_vector(L.dim, j))
        cols.append(tuple(r[k] for k in reps))
    return Matrix.from_columns(cols, len(reps)) if L.dim else Matrix.zeros(len(reps), 0)


def quotient_algebra(L: HomLieAlgebra, I: Subspace):
    """``(L/I, projection)``; ``I`` must be a Hom-ideal."""
    if not is_ideal(L, I):
        raise HomLieError("subspace is not a Hom-ideal")
    reps = [j for j in range(L.dim) if j not in set(I.pivots)]
    proj = quotient_projection(L, I)
    q = len(reps)
    table = [[proj.apply(L.structure[a][b]) for b in reps] for a in reps]
    alpha_cols = [proj.apply(L.alpha.col(a)) for a in reps]
    alpha = Matrix.from_columns(alpha_cols, q) if q else Matrix.zeros(0, 0)
    names = tuple(L.names[a] for a in reps)
    return HomLieAlgebra(table, alpha, names), proj


def subalgebra(L: HomLieAlgebra, S: Subspace, names=None):
    """Restrict the structure to ``S`` (canonical basis); returns ``(H, inclusion)``."""
    if not is_subalgebra(L, S):
        raise HomLieError("subspace is not a Hom-Lie subalgebra")
    k = S.dim
    basis = S.basis
    table = [[S.coordinates(L.bracket(a, b)) for b in basis] for a in basis]
    alpha_cols = [S.coordinates(L.twist(b)) for b in basis]
    alpha = Matrix.from_columns(alpha_cols, k) if k else Matrix.zeros(0, 0)
    if names is None:
        names = tuple(L.names[p] for p in S.pivots)
    incl = Matrix.from_columns(basis, L.dim) if k else Matrix.zeros(L.dim, 0)
    return HomLieAlgebra(table, alpha, names), incl


def multiplicativize(L: HomLieAlgebra):
    """Quotient by the ideal generated by ``alpha[x,y] - [alpha x, alpha y]``."""
    rep = validate_hom_lie(L)
    if not rep.is_hom_lie:
        raise HomLieError("input is not skew-symmetric with the Hom-Jacobi identity")
    gens = [
        multiplicativity_residual(L, L.basis_vector(i), L.basis_vector(j))
        for i in range(L.dim)
        for j in range(i + 1, L.dim)
    ]
    I = ideal_closure(L, Subspace.span(gens, L.dim))
    return quotient_algebra(L, I)


def commutator_and_abelianisation(L: HomLieAlgebra):
    """``([L, L], L^ab)`` with ``[L, L]`` the ideal generated by all brackets."""
    brackets = [L.structure[i][j] for i in range(L.dim) for j in range(i + 1, L.dim)]
    C = ideal_closure(L, Subspace.span(brackets, L.dim))
    Lab, _ = quotient_algebra(L, C)
    return C, Lab


def centre(L: HomLieAlgebra) -> Subspace:
    """``{x : [alpha^n x, y] = 0 for all y, n >= 0}``.

    Iterates ``V_{k+1} = V_0 & alpha^{-1}(V_k)`` until it stabilises.
    """
    n = L.dim
    if n == 0:
        return Subspace.zero(0)
    # x -> ([x, e_1], ..., [x, e_n]) stacked
    rows = []
    for j in range(n):
        adj = Matrix.from_columns([L.structure[i][j] for i in range(n)], n)
        rows.extend(adj.row_list())
    V0 = kernel_basis(Matrix(rows, n))
    V = V0
    for _ in range(n + 1):
        W = V0.intersection(preimage(L.alpha, V))
        if W == V:
            return V
        V = W
    return V


def direct_sum(A: HomLieAlgebra, B: HomLieAlgebra, names=None) -> HomLieAlgebra:
    n = A.dim + B.dim
    table = [[zero_vector(n) for _ in range(n)] for _ in range(n)]
    for i in range(A.dim):
        for j in range(A.dim):
            table[i][j] = A.structure[i][j] + zero_vector(B.dim)
    for i in range(B.dim):
        for j in range(B.dim):
            table[A.dim + i][A.dim + j] = zero_vector(A.dim) + B.structure[i][j]
    if names is None:
        names = _disjoint_names(A.names, B.names)
    return HomLieAlgebra(table, Matrix.block_diag(A.alpha, B.alpha), names)


def _disjoint_names(a, b):
    if not set(a) & set(b):
        return tuple(a) + tuple(b)
    return tuple(f"{x}_1" for x in a) + tuple(f"{x}_2" for x in b)

