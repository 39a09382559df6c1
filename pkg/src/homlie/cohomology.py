"""Twisted Chevalley-Eilenberg cochains and cohomology with module coefficients.

An ``n``-cochain is stored as a ``dim M x C(dim L, n)`` matrix whose columns are
its values on the wedge basis ``e_I``, ``I = (i_1 < ... < i_n)`` in
lexicographic order.  Degree 0 uses a single column (the empty wedge).

The differential is

    d f(x_1..x_{n+1}) = sum_i (-1)^(i+1) alpha^n(x_i) . f(x_1..^i..x_{n+1})
                      + sum_{i<j} (-1)^(i+j) f([x_i,x_j], alpha x_1, ..^i..^j.., alpha x_{n+1})

with ``alpha^n`` the n-th matrix power.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Optional

from .action import HomAction, validate_action
from .core import HomLieError
from .exactla import (
    ONE,
    ZERO,
    Matrix,
    MatrixSpace,
    Subspace,
    det,
    kernel_basis,
    solve_affine,
)


@lru_cache(maxsize=None)
def wedge_basis(dim: int, n: int) -> tuple:
    return tuple(combinations(range(dim), n))


def wedge_coordinates(vectors, dim: int) -> dict:
    """Coordinates of ``v_1 ^ ... ^ v_n`` on the wedge basis (nonzero ones only)."""
    n = len(vectors)
    if n == 0:
        return {(): ONE}
    support = sorted({k for v in vectors for k, a in enumerate(v) if a})
    out = {}
    for I in combinations(support, n):
        d = det(Matrix([[v[k] for v in vectors] for k in I], n))
        if d:
            out[I] = d
    return out


def wedge_power(A: Matrix, n: int) -> Matrix:
    """Matrix of ``A^{wedge n}`` on the lexicographic wedge bases (entries are minors)."""
    src = wedge_basis(A.cols, n)
    dst = wedge_basis(A.rows, n)
    index = {I: k for k, I in enumerate(dst)}
    cols = []
    Acols = A.columns()
    for I in src:
        col = [ZERO] * len(dst)
        for J, c in wedge_coordinates([Acols[i] for i in I], A.rows).items():
            col[index[J]] = c
        cols.append(col)
    if not src:
        return Matrix.zeros(len(dst), 0)
    return Matrix.from_columns(cols, len(dst))


def _sorted_sign(idx):
    """Sign and sorted tuple for distinct indices; sign 0 on a repeat."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if idx[a] > idx[b]:
                sign = -sign
    return sign, tuple(sorted(idx))


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CochainSpace:
    """``C^n_alpha(L, M)``: equivariant alternating maps as a matrix space."""

    degree: int
    wedge_basis: tuple
    space: MatrixSpace

    @property
    def dim(self) -> int:
        return self.space.dim

    def basis(self) -> list:
        return self.space.matrices()

    def contains(self, f: Matrix) -> bool:
        return self.space.contains(f)


def equivariance_residual(act: HomAction, f: Matrix, n: int) -> Matrix:
    """``f o alpha^{wedge n} - alpha_M o f``; degree 0 uses the identity on the empty wedge."""
    L, M = act.actor, act.target
    return f @ wedge_power(L.alpha, n) - M.alpha @ f


def cochain_basis(act: HomAction, n: int) -> CochainSpace:
    L, M = act.actor, act.target
    if n < 0:
        raise ValueError("degree must be non-negative")
    wb = wedge_basis(L.dim, n)
    cols = len(wb)
    if cols == 0:
        return CochainSpace(n, wb, MatrixSpace(M.dim, 0, Subspace.zero(0)))
    W = wedge_power(L.alpha, n)
    aM = M.alpha
    # f W - aM f = 0; flattened row-major: (f W)[k][J] = sum_I f[k][I] W[I][J]
    rows = []
    for k in range(M.dim):
        for J in range(cols):
            r = [ZERO] * (M.dim * cols)
            for I in range(cols):
                if W[I, J]:
                    r[k * cols + I] += W[I, J]
            for l in range(M.dim):
                if aM[k, l]:
                    r[l * cols + J] -= aM[k, l]
            rows.append(r)
    if not rows:
        return CochainSpace(n, wb, MatrixSpace.all(M.dim, cols))
    return CochainSpace(n, wb, MatrixSpace(M.dim, cols, kernel_basis(Matrix(rows, M.dim * cols))))


# --------------------------------------------------------------------------


class _Differential:
    """``d^n`` as a sparse rule ``(d f)_K = sum_I A_{K,I} f_I`` on all alternating maps."""

    def __init__(self, act: HomAction, n: int):
        L, M = act.actor, act.target
        self.act = act
        self.n = n
        self.src = wedge_basis(L.dim, n)
        self.dst = wedge_basis(L.dim, n + 1)
        src_index = {I: k for k, I in enumerate(self.src)}
        a_n = L.alpha.power(n)
        acts = [act.action_matrix(c) for c in a_n.columns()]
        e = [L.basis_vector(i) for i in range(L.dim)]
        alpha_cols = L.alpha.columns()
        ident = Matrix.identity(M.dim)
        rules = []
        for K in self.dst:
            terms = {}

            def add(I, mat):
                k = src_index[I]
                terms[k] = terms[k] + mat if k in terms else mat

            # action terms; positions are 1-based in the sign
            for pos, xi in enumerate(K):
                rest = K[:pos] + K[pos + 1:]
                sign = 1 if pos % 2 == 0 else -1
                add(rest, acts[xi].scale(sign))
            # bracket terms
            for p in range(len(K)):
                for q in range(p + 1, len(K)):
                    sign = -1 if (p + q) % 2 else 1  # (-1)^{(p+1)+(q+1)}
                    br = L.bracket(e[K[p]], e[K[q]])
                    if not any(br):
                        continue
                    others = [alpha_cols[K[r]] for r in range(len(K)) if r != p and r != q]
                    for I, c in wedge_coordinates([br] + others, L.dim).items():
                        add(I, ident.scale(sign * c))
            rules.append(tuple((k, m) for k, m in sorted(terms.items()) if not m.is_zero()))
        self.rules = rules

    def apply(self, f: Matrix) -> Matrix:
        M = self.act.target
        cols = f.columns()
        out = []
        for terms in self.rules:
            v = [ZERO] * M.dim
            for k, mat in terms:
                w = mat.apply(cols[k])
                for r, a in enumerate(w):
                    if a:
                        v[r] += a
            out.append(v)
        if not out:
            return Matrix.zeros(M.dim, 0)
        return Matrix.from_columns(out, M.dim)


_DIFF_CACHE: dict = {}


def _differential(act: HomAction, n: int) -> _Differential:
    key = (act, n)
    d = _DIFF_CACHE.get(key)
    if d is None:
        if len(_DIFF_CACHE) > 256:
            _DIFF_CACHE.clear()
        d = _Differential(act, n)
        _DIFF_CACHE[key] = d
    return d


def apply_differential(act: HomAction, f: Matrix, n: int) -> Matrix:
    """``d^n f`` for any alternating ``f`` (equivariance not required)."""
    if f.shape != (act.target.dim, len(wedge_basis(act.actor.dim, n))):
        raise HomLieError(f"cochain of shape {f.shape} is not of degree {n}")
    return _differential(act, n).apply(f)


def full_differential_matrix(act: HomAction, n: int) -> Matrix:
    """``d^n`` on all alternating maps, in flattened row-major coordinates."""
    M = act.target
    src = len(wedge_basis(act.actor.dim, n))
    dst = len(wedge_basis(act.actor.dim, n + 1))
    space = MatrixSpace.all(M.dim, src)
    cols = [MatrixSpace.flatten(apply_differential(act, b, n)) for b in space.matrices()]
    if not cols:
        return Matrix.zeros(M.dim * dst, 0)
    return Matrix.from_columns(cols, M.dim * dst)


def differential_matrix(act: HomAction, n: int) -> Matrix:
    """Matrix of ``d^n : C^n -> C^{n+1}`` in the canonical cochain bases.

    Raises when ``d^n`` leaves the equivariant cochains.
    """
    C0 = cochain_basis(act, n)
    C1 = cochain_basis(act, n + 1)
    cols = []
    for b in C0.basis():
        img = apply_differential(act, b, n)
        if not C1.contains(img):
            raise HomLieError(f"d^{n} does not preserve equivariant cochains")
        cols.append(C1.space.coordinates(img))
    if not cols:
        return Matrix.zeros(C1.dim, 0)
    return Matrix.from_columns(cols, C1.dim)


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CohomologyGroup:
    degree: int
    dim: int
    z_dim: int
    b_dim: int
    cocycles: MatrixSpace
    coboundaries: MatrixSpace
    representatives: list = field(default_factory=list)

    def as_dict(self):
        return {"degree": self.degree, "dim": self.dim, "z_dim": self.z_dim, "b_dim": self.b_dim}


def _require_module(act: HomAction):
    if not act.target.is_abelian():
        raise HomLieError("coefficients must be a module (abelian target)")


def cocycle_space(act: HomAction, n: int) -> MatrixSpace:
    C = cochain_basis(act, n)
    M = act.target
    cols = len(C.wedge_basis)
    if C.dim == 0:
        return MatrixSpace(M.dim, cols, Subspace.zero(M.dim * cols))
    D = differential_matrix(act, n)
    K = kernel_basis(D)
    mats = [C.space.from_coordinates(v) for v in K.basis]
    return MatrixSpace.spanned_by(mats, M.dim, cols)


def coboundary_space(act: HomAction, n: int) -> MatrixSpace:
    M = act.target
    cols = len(wedge_basis(act.actor.dim, n))
    if n == 0:
        return MatrixSpace(M.dim, cols, Subspace.zero(M.dim * cols))
    prev = cochain_basis(act, n - 1)
    mats = [apply_differential(act, b, n - 1) for b in prev.basis()]
    return MatrixSpace.spanned_by(mats, M.dim, cols)


def cohomology_group(act: HomAction, n: int) -> CohomologyGroup:
    _require_module(act)
    Z = cocycle_space(act, n)
    B = coboundary_space(act, n)
    if not Z.contains_space(B):
        raise HomLieError(f"image of d^{n - 1} is not inside ker d^{n}")
    reps = [Z.unflatten(v) for v in B.space.complement_in(Z.space)]
    return CohomologyGroup(n, Z.dim - B.dim, Z.dim, B.dim, Z, B, reps)


def invariants(act: HomAction) -> Subspace:
    """``{m : alpha_M(m) = m, x . m = 0 for all x}``."""
    L, M = act.actor, act.target
    rows = (M.alpha - Matrix.identity(M.dim)).row_list()
    for i in range(L.dim):
        rows.extend(act.basis_matrix(i).row_list())
    if not rows:
        return Subspace.full(M.dim)
    return kernel_basis(Matrix(rows, M.dim))


def _check_cochain(act: HomAction, c: Matrix, n: int):
    if c.shape != (act.target.dim, len(wedge_basis(act.actor.dim, n))):
        raise HomLieError(f"cochain of shape {c.shape} is not of degree {n}")
    if not equivariance_residual(act, c, n).is_zero():
        raise HomLieError("cochain is not alpha-equivariant")


def is_cocycle(act: HomAction, c: Matrix, n: int) -> bool:
    _check_cochain(act, c, n)
    return apply_differential(act, c, n).is_zero()


def is_coboundary(act: HomAction, c: Matrix, n: int) -> Optional[Matrix]:
    """A preimage under ``d^{n-1}`` inside ``C^{n-1}``, or ``None``."""
    _check_cochain(act, c, n)
    M = act.target
    if n == 0:
        return None if not c.is_zero() else Matrix.zeros(M.dim, 0)
    prev = cochain_basis(act, n - 1)
    if prev.dim == 0:
        return Matrix.zeros(M.dim, len(prev.wedge_basis)) if c.is_zero() else None
    images = [MatrixSpace.flatten(apply_differential(act, b, n - 1)) for b in prev.basis()]
    A = Matrix.from_columns(images, len(MatrixSpace.flatten(c)))
    x = solve_affine(A, MatrixSpace.flatten(c))
    if x is None:
        return None
    return prev.space.from_coordinates(x)


def cohomologous(act: HomAction, w: Matrix, w2: Matrix, n: int = 2) -> Optional[Matrix]:
    """``theta`` with ``w - w2 = d theta``, or ``None``."""
    for c in (w, w2):
        if not is_cocycle(act, c, n):
            raise HomLieError("input is not a cocycle")
    return is_coboundary(act, w - w2, n)


def evaluate_cochain(f: Matrix, vectors, dim: int):
    """``f(v_1, ..., v_n)`` for arbitrary vectors of ``L``."""
    index = {I: k for k, I in enumerate(wedge_basis(dim, len(vectors)))}
    cols = f.columns()
    out = [ZERO] * f.rows
    for I, c in wedge_coordinates(list(vectors), dim).items():
        for r, a in enumerate(cols[index[I]]):
            if a:
                out[r] += c * a
    return tuple(out)


def cochain_from_function(fn, dim_L: int, dim_M: int, n: int) -> Matrix:
    """Tabulate an alternating function given on basis index tuples."""
    wb = wedge_basis(dim_L, n)
    if not wb:
        return Matrix.zeros(dim_M, 0)
    return Matrix.from_columns([fn(I) for I in wb], dim_M)


def cochain_from_dict(values: dict, dim_L: int, dim_M: int, n: int) -> Matrix:
    """Cochain from ``{index tuple: value}``; unsorted keys are sorted with their sign."""
    table = {}
    for idx, v in values.items():
        sign, I = _sorted_sign(idx)
        if sign == 0:
            raise HomLieError("alternating cochain cannot have repeated arguments")
        v = tuple(sign * a for a in v)
        if I in table and table[I] != v:
            raise HomLieError(f"conflicting cochain values at {I}")
        table[I] = v
    zero = (ZERO,) * dim_M
    return cochain_from_function(lambda I: table.get(I, zero), dim_L, dim_M, n)


def module_check(act: HomAction) -> bool:
    return act.target.is_abelian() and validate_action(act).valid


def differential_squares_to_zero(act: HomAction, n: int, equivariant_only: bool = True) -> bool:
    """``d^{n+1} d^n f = 0`` for every basis cochain ``f``.

    With ``equivariant_only`` the check runs over ``C^n``; otherwise over all
    alternating ``n``-forms.  The formula is applied to ``d^n f`` even when it
    leaves the equivariant cochains (possible when alpha is not multiplicative).
    """
    if equivariant_only:
        basis = cochain_basis(act, n).basis()
    else:
        M = act.target
        basis = MatrixSpace.all(M.dim, len(wedge_basis(act.actor.dim, n))).matrices()
    return all(apply_differential(act, apply_differential(act, b, n), n + 1).is_zero() for b in basis)
