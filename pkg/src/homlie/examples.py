"""Small named algebras used throughout the tests, fixtures and docs."""

from __future__ import annotations

from fractions import Fraction

from .core import HomLieAlgebra
from .exactla import Matrix


def sl2(alpha: Matrix | None = None) -> HomLieAlgebra:
    """Basis ``e, f, h`` with ``[e,f] = h``, ``[h,e] = 2e``, ``[h,f] = -2f``."""
    return HomLieAlgebra.from_brackets(
        3,
        {(0, 1): (0, 0, 1), (2, 0): (2, 0, 0), (2, 1): (0, -2, 0)},
        alpha,
        ("e", "f", "h"),
    )


def jackson_sl2(t=1) -> HomLieAlgebra:
    """Jackson deformation of sl2 at a concrete rational ``t``, basis ``e, f, h``.

    ``[h,e] = 2e``, ``[h,f] = -2(1+t)f``, ``[e,f] = (1+t/2)h`` and
    ``alpha = diag((2+t)/(2(1+t)), 1+t/2, 1)``.
    """
    t = Fraction(t)
    brackets = {
        (2, 0): (2, 0, 0),
        (2, 1): (0, -2 - 2 * t, 0),
        (0, 1): (0, 0, 1 + t / 2),
    }
    alpha = Matrix.diag(((2 + t) / (2 * (1 + t)), 1 + t / 2, 1))
    return HomLieAlgebra.from_brackets(3, brackets, alpha, ("e", "f", "h"))


def two_dim_nonabelian(alpha: Matrix | None = None) -> HomLieAlgebra:
    """``[e, f] = e``; the default twist sends ``e -> e``, ``f -> e + f``."""
    if alpha is None:
        alpha = Matrix.from_columns([(1, 0), (1, 1)], 2)
    return HomLieAlgebra.from_brackets(2, {(0, 1): (1, 0)}, alpha, ("e", "f"))


def heisenberg() -> HomLieAlgebra:
    """``[x, y] = z`` with identity twist."""
    return HomLieAlgebra.from_brackets(3, {(0, 1): (0, 0, 1)}, None, ("x", "y", "z"))


def gl2() -> HomLieAlgebra:
    """Matrix units ``E11, E12, E21, E22`` with the commutator bracket."""
    # [Eij, Ekl] = d_jk Eil - d_li Ekj
    idx = [(0, 0), (0, 1), (1, 0), (1, 1)]
    brackets = {}
    for a, (i, j) in enumerate(idx):
        for b, (k, l) in enumerate(idx):
            if a >= b:
                continue
            v = [0, 0, 0, 0]
            if j == k:
                v[idx.index((i, l))] += 1
            if l == i:
                v[idx.index((k, j))] -= 1
            if any(v):
                brackets[(a, b)] = tuple(v)
    return HomLieAlgebra.from_brackets(4, brackets, None, ("E11", "E12", "E21", "E22"))


# --------------------------------------------------------------------------
# crossed modules and alpha-crossed extensions


def ideal_crossed_module(L: HomLieAlgebra, vectors):
    """Inclusion of the ideal spanned by ``vectors``, acting by the bracket."""
    from .action import ideal_action
    from .crossed import CrossedModule
    from .exactla import Subspace

    K = Subspace.span(vectors, L.dim)
    return CrossedModule(ideal_action(L, K), K.basis_matrix())


def free_nilpotent3(lam=1) -> HomLieAlgebra:
    """Free 2-step nilpotent algebra on ``x, y, z`` with ``u = [y,z]``, ``v = [z,x]``, ``w = [x,y]``.

    The twist scales generators by ``lam`` and brackets by ``lam^2``.
    """
    lam = Fraction(lam)
    brackets = {(1, 2): (0, 0, 0, 1, 0, 0), (2, 0): (0, 0, 0, 0, 1, 0), (0, 1): (0, 0, 0, 0, 0, 1)}
    alpha = Matrix.diag([lam] * 3 + [lam * lam] * 3)
    return HomLieAlgebra.from_brackets(6, brackets, alpha, "x y z u v w".split())


def volume_crossed_extension(lam=1):
    """``0 -> Q -> N -> F -> Q^3 -> 0`` with ``F`` free 2-step nilpotent.

    ``N`` is abelian on lifts of ``u, v, w`` and a kernel vector ``c``; the
    generators act by ``x.u~ = y.v~ = z.w~ = c``.  Its class is the volume form.
    """
    from .action import HomAction
    from .crossed import AlphaCrossedExtension, find_rho

    lam = Fraction(lam)
    P = free_nilpotent3(lam)
    N = HomLieAlgebra.abelian(4, Matrix.diag([lam**2] * 3 + [lam**3]), ("ut", "vt", "wt", "c"))
    cross = HomAction.from_dict(P, N, {(0, 0): (0, 0, 0, 1), (1, 1): (0, 0, 0, 1), (2, 2): (0, 0, 0, 1)})
    L = HomLieAlgebra.abelian(3, Matrix.scalar(3, lam), ("a", "b", "d"))
    M = HomLieAlgebra.abelian(1, Matrix.scalar(1, lam**3), ("m",))
    chi = Matrix.from_columns([(0, 0, 0, 1)], 4)
    mu = Matrix.from_columns([(0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 1), (0,) * 6], 6)
    pi = Matrix([[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]], 6)
    return AlphaCrossedExtension(HomAction.trivial(L, M), cross, chi, mu, pi, pi.T, find_rho(N, P, mu))


def _r2_line() -> HomLieAlgebra:
    return HomLieAlgebra.from_brackets(3, {(0, 1): (0, 1, 0)}, None, ("a", "b", "d"))


def heisenberg_crossed_extension(extra: bool = False):
    """``0 -> Q -> H -> L x A -> L -> 0`` with ``L = r2 + Q``, ``A = Q^2``, ``H`` Heisenberg over ``A``.

    The split section makes the class zero, but shifted sections give
    nonzero coboundaries.  ``extra`` adds a central line to both ``N`` and ``P``.
    """
    from .action import HomAction
    from .core import direct_sum
    from .crossed import AlphaCrossedExtension, find_rho

    L = _r2_line()
    k = 3 if extra else 2
    A = HomLieAlgebra.abelian(k, Matrix.identity(k), ("p", "q", "r")[:k])
    P = direct_sum(L, A)
    nN = k + 1
    names = ("pt", "qt", "c", "rt") if extra else ("pt", "qt", "c")
    bracket_c = tuple(1 if i == 2 else 0 for i in range(nN))
    N = HomLieAlgebra.from_brackets(nN, {(0, 1): bracket_c}, Matrix.identity(nN), names)
    neg_c = tuple(-x for x in bracket_c)
    cross = HomAction.from_dict(P, N, {(3, 1): bracket_c, (4, 0): neg_c})
    M = HomLieAlgebra.abelian(1, Matrix.identity(1), ("m",))
    chi = Matrix.from_columns([bracket_c], nN)
    images = [(0, 0, 0, 1, 0) + (0,) * (k - 2), (0, 0, 0, 0, 1) + (0,) * (k - 2), (0,) * (3 + k)]
    if extra:
        images.append((0, 0, 0, 0, 0, 1))
    mu = Matrix.from_columns(images, 3 + k)
    pi = Matrix.hstack(Matrix.identity(3), Matrix.zeros(3, k))
    return AlphaCrossedExtension(HomAction.trivial(L, M), cross, chi, mu, pi, pi.T, find_rho(N, P, mu))


def heisenberg_crossed_morphism():
    """``(x, y, varphi, phi)``: inclusion of the plain Heisenberg crossed extension into the enlarged one.

    ``x`` uses the section ``b -> b + q``, ``d -> d + p`` and ``y`` a shifted
    ``rho``, so both the classes' cocycles and the comparison cochain are nonzero.
    """
    x = heisenberg_crossed_extension()
    shift = Matrix([[0, 0, 0], [0, 0, 0], [0, 0, 0], [0, 0, 1], [0, 1, 0]], 3)
    x = x.with_sections(sigma=x.sigma + shift)
    y = heisenberg_crossed_extension(extra=True)
    # rho'(p) = pt + c, rho'(q) = qt - c, rho'(r) = rt
    rho = Matrix.from_columns([(1, 0, 1, 0), (0, 1, -1, 0), (0, 0, 0, 1)], 4)
    y = y.with_sections(rho=rho)
    varphi = Matrix.from_columns([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)], 4)
    phi = Matrix.vstack(Matrix.identity(5), Matrix.zeros(1, 5))
    return x, y, varphi, phi
