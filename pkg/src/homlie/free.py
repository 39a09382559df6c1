"""Free Hom-magma, free non-associative Hom-algebra and its graded Hom-Lie quotient.

Words are nested pairs: a leaf is an ``int`` (index into the Hom-set) and a
product is ``(left, right)``.  Everything is graded by leaf count and
truncated at a caller-supplied length.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from typing import Callable, Optional, Union

from .core import HomLieAlgebra, HomLieError
from .exactla import Matrix, Subspace, zero_vector

Word = Union[int, tuple]


@dataclass(frozen=True)
class HomSet:
    """A finite set with a self-map, ``alpha[i]`` the index of ``alpha(x_i)``.

    ``None`` in ``alpha`` sends the element to zero once we pass to linear
    combinations; this is how ``alpha = 0`` on generators is expressed.
    """

    elements: tuple
    alpha: tuple

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise HomLieError("duplicate elements in Hom-set")
        if len(self.alpha) != len(self.elements) or any(
            a is not None and not 0 <= a < len(self.elements) for a in self.alpha
        ):
            raise HomLieError("alpha must map the set into itself")

    @classmethod
    def from_map(cls, elements, alpha_map=None) -> "HomSet":
        """``alpha_map`` is a dict or callable on names; identity by default."""
        elements = tuple(elements)
        index = {x: k for k, x in enumerate(elements)}
        if alpha_map is None:
            return cls(elements, tuple(range(len(elements))))
        get = alpha_map.get if isinstance(alpha_map, dict) else alpha_map
        try:
            return cls(elements, tuple(None if get(x) is None else index[get(x)] for x in elements))
        except KeyError as exc:
            raise HomLieError(f"alpha leaves the set: {exc}") from None

    @property
    def size(self) -> int:
        return len(self.elements)


# --------------------------------------------------------------------------
# words


def length(w: Word) -> int:
    return 1 if isinstance(w, int) else length(w[0]) + length(w[1])


def alpha_word(X: HomSet, w: Word) -> Optional[Word]:
    """Leaf-wise action of ``alpha``; ``None`` when some leaf goes to zero."""
    if isinstance(w, int):
        return X.alpha[w]
    a, b = alpha_word(X, w[0]), alpha_word(X, w[1])
    if a is None or b is None:
        return None
    return (a, b)


def render(X: HomSet, w: Word) -> str:
    if isinstance(w, int):
        return str(X.elements[w])
    return f"({render(X, w[0])}{render(X, w[1])})"


def render_bracket(X: HomSet, w: Word) -> str:
    if isinstance(w, int):
        return str(X.elements[w])
    return f"[{render_bracket(X, w[0])},{render_bracket(X, w[1])}]"


@lru_cache(maxsize=None)
def shapes(n: int) -> tuple:
    """Binary tree shapes with ``n`` leaves, ``None`` for a leaf.

    Ordered by preorder code with internal nodes before leaves, so deeper
    left subtrees come first.
    """
    if n == 1:
        return (None,)
    out = []
    for k in range(1, n):
        for a in shapes(k):
            for b in shapes(n - k):
                out.append((a, b))
    return tuple(sorted(out, key=_shape_code))


def _shape_code(s) -> str:
    return "1" if s is None else "0" + _shape_code(s[0]) + _shape_code(s[1])


def _fill(shape, leaves, pos=0):
    if shape is None:
        return leaves[pos], pos + 1
    a, pos = _fill(shape[0], leaves, pos)
    b, pos = _fill(shape[1], leaves, pos)
    return (a, b), pos


def words_of_length(X: HomSet, n: int) -> list:
    if n < 1:
        raise ValueError("word length starts at 1")
    out = []
    for s in shapes(n):
        for leaves in cartesian(range(X.size), repeat=n):
            out.append(_fill(s, leaves)[0])
    return out


def catalan(n: int) -> int:
    c = 1
    for k in range(n):
        c = c * 2 * (2 * k + 1) // (k + 2)
    return c


@dataclass
class FreeMagma:
    """Graded pieces ``X_1, ..., X_max_len`` of the free Hom-magma."""

    X: HomSet
    max_len: int
    words: dict  # n -> list of words
    index: dict  # n -> {word: position}

    def alpha(self, w: Word) -> Word:
        return alpha_word(self.X, w)

    @staticmethod
    def product(a: Word, b: Word) -> Word:
        return (a, b)

    def counts(self):
        return {n: len(ws) for n, ws in self.words.items()}


def free_words(X: HomSet, max_len: int) -> FreeMagma:
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    words = {n: words_of_length(X, n) for n in range(1, max_len + 1)}
    index = {n: {w: k for k, w in enumerate(ws)} for n, ws in words.items()}
    return FreeMagma(X, max_len, words, index)


# --------------------------------------------------------------------------
# universal property of the magma


@dataclass(frozen=True)
class HomMagma:
    """A target for the universal map: a product and a twist on some value type."""

    mul: Callable
    alpha: Callable
    eq: Callable = field(default=lambda a, b: a == b)
    zero: object = None

    @classmethod
    def of_algebra(cls, B: HomLieAlgebra) -> "HomMagma":
        return cls(B.bracket, B.twist, zero=zero_vector(B.dim))

    @classmethod
    def of_words(cls, X: HomSet) -> "HomMagma":
        return cls(lambda a, b: (a, b), lambda w: alpha_word(X, w))


def _image_of_alpha(X: HomSet, w: Word, N: HomMagma, table):
    a = alpha_word(X, w)
    if a is None:
        if N.zero is None:
            raise HomLieError("target has no zero for generators with alpha = 0")
        return N.zero
    return table[a]


def _check_homset_map(X: HomSet, f, N: HomMagma):
    for k in range(X.size):
        if not N.eq(_image_of_alpha(X, k, N, f), N.alpha(f[k])):
            raise HomLieError(f"map does not commute with alpha at {X.elements[k]!r}")


def magma_univ_extend(X: HomSet, f, N: HomMagma, max_len: int) -> dict:
    """``F(w(a, b)) = N.mul(F a, F b)``; returns ``{word: value}`` for all words up to ``max_len``.

    ``f`` lists the images of the elements of ``X`` in order.
    """
    f = list(f)
    if len(f) != X.size:
        raise HomLieError("map must give one value per element")
    _check_homset_map(X, f, N)
    table: dict = {}

    def F(w):
        if w in table:
            return table[w]
        v = f[w] if isinstance(w, int) else N.mul(F(w[0]), F(w[1]))
        table[w] = v
        return v

    for n in range(1, max_len + 1):
        for w in words_of_length(X, n):
            F(w)
    for w, v in list(table.items()):
        if not N.eq(_image_of_alpha(X, w, N, table), N.alpha(v)):
            raise HomLieError("extension fails to intertwine alpha")
    return table


# --------------------------------------------------------------------------
# free non-associative Hom-algebra: sparse elements {word: coefficient}


def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for u, x in a.items():
        for v, y in b.items():
            w = (u, v)
            out[w] = out.get(w, 0) + x * y
    return {w: c for w, c in out.items() if c}


def _add(*terms: dict) -> dict:
    out: dict = {}
    for t in terms:
        for w, c in t.items():
            out[w] = out.get(w, 0) + c
    return {w: c for w, c in out.items() if c}


def skew_relation(a: Word, b: Word) -> dict:
    return _add({(a, b): 1}, {(b, a): 1})


def jacobi_relation(X: HomSet, a: Word, b: Word, c: Word) -> dict:
    A, B, C = ({} if alpha_word(X, w) is None else {alpha_word(X, w): 1} for w in (a, b, c))
    wa, wb, wc = {a: 1}, {b: 1}, {c: 1}
    return _add(_mul(A, _mul(wb, wc)), _mul(C, _mul(wa, wb)), _mul(B, _mul(wc, wa)))


def _compositions(n: int, parts: int):
    if parts == 1:
        if n >= 1:
            yield (n,)
        return
    for k in range(1, n - parts + 2):
        for rest in _compositions(n - k, parts - 1):
            yield (k,) + rest


@dataclass
class FreeHomLie:
    """Degree components of the free Hom-Lie algebra up to ``max_len``.

    ``relations[n]`` is ``R_n`` inside ``span(X_n)`` and ``reps[n]`` the words at
    non-pivot positions, a basis of the quotient.
    """

    X: HomSet
    max_len: int
    magma: FreeMagma
    relations: dict
    reps: dict

    def dim(self, n: int) -> int:
        return len(self.reps[n])

    def dims(self):
        return {n: self.dim(n) for n in range(1, self.max_len + 1)}

    def dense(self, el: dict, n: int):
        idx = self.magma.index[n]
        v = [Fraction(0)] * len(idx)
        for w, c in el.items():
            if length(w) != n:
                raise HomLieError("element is not homogeneous of the requested degree")
            v[idx[w]] += c
        return tuple(v)

    def reduce_word(self, w: Word):
        """Coordinates of the coset of ``w`` on ``reps[len(w)]``."""
        n = length(w)
        idx = self.magma.index[n]
        v = [Fraction(0)] * len(idx)
        v[idx[w]] = Fraction(1)
        r = self.relations[n].reduce(v)
        return tuple(r[idx[u]] for u in self.reps[n])


def free_homlie(X: HomSet, max_len: int) -> FreeHomLie:
    """Close the relation instances under multiplication, degree by degree."""
    magma = free_words(X, max_len)
    relations: dict = {}
    reps: dict = {}
    for n in range(1, max_len + 1):
        idx = magma.index[n]
        gens = []
        for p, q in _compositions(n, 2):
            for a in magma.words[p]:
                for b in magma.words[q]:
                    gens.append(skew_relation(a, b))
        for p, q, r in _compositions(n, 3):
            for a in magma.words[p]:
                for b in magma.words[q]:
                    for c in magma.words[r]:
                        gens.append(jacobi_relation(X, a, b, c))
        for k in range(2, n):
            for r_vec in relations[k].basis:
                r_el = {magma.words[k][j]: c for j, c in enumerate(r_vec) if c}
                for w in magma.words[n - k]:
                    gens.append(_mul(r_el, {w: 1}))
                    gens.append(_mul({w: 1}, r_el))
        vecs = []
        for g in gens:
            v = [Fraction(0)] * len(idx)
            for w, c in g.items():
                v[idx[w]] += c
            vecs.append(v)
        R = Subspace.span(vecs, len(idx))
        relations[n] = R
        pivots = set(R.pivots)
        reps[n] = [w for j, w in enumerate(magma.words[n]) if j not in pivots]
    return FreeHomLie(X, max_len, magma, relations, reps)


def free_homlie_degree_basis(X: HomSet, n: int) -> list:
    """Coset representatives (words) for the degree-``n`` piece."""
    if n < 1:
        raise ValueError("degree starts at 1")
    return list(free_homlie(X, n).reps[n])


# --------------------------------------------------------------------------
# truncation as a finite-dimensional Hom-Lie algebra


@dataclass
class FreeTruncation:
    """``F / F_{> bound}`` with basis the coset representatives, degree by degree."""

    free: FreeHomLie
    algebra: HomLieAlgebra
    basis_words: list
    degrees: list
    offsets: dict

    @property
    def X(self) -> HomSet:
        return self.free.X

    @property
    def bound(self) -> int:
        return self.free.max_len

    def coordinates(self, w: Optional[Word]):
        """Vector of ``w`` in the truncation (zero above the bound or for ``None``)."""
        out = list(zero_vector(len(self.basis_words)))
        if w is None:
            return tuple(out)
        n = length(w)
        if n > self.bound:
            return tuple(out)
        off = self.offsets[n]
        for k, c in enumerate(self.free.reduce_word(w)):
            out[off + k] = c
        return tuple(out)

    def generator(self, k: int):
        return self.coordinates(k)


def truncated_free_homlie(X: HomSet, bound: int) -> FreeTruncation:
    F = free_homlie(X, bound)
    words, degrees, offsets = [], [], {}
    for n in range(1, bound + 1):
        offsets[n] = len(words)
        words.extend(F.reps[n])
        degrees.extend([n] * len(F.reps[n]))
    dim = len(words)
    trunc = FreeTruncation(F, None, words, degrees, offsets)
    table = [[trunc.coordinates((a, b)) for b in words] for a in words]
    acols = [trunc.coordinates(alpha_word(X, w)) for w in words]
    alpha = Matrix.from_columns(acols, dim) if dim else Matrix.zeros(0, 0)
    names = tuple(render_bracket(X, w) for w in words)
    trunc.algebra = HomLieAlgebra(table, alpha, names)
    return trunc


@dataclass
class FreeExtension:
    """The morphism out of the truncation induced by a map of generators."""

    matrix: Matrix
    table: dict
    relations_vanish: bool
    brackets_preserved: bool
    alpha_intertwined: bool

    @property
    def valid(self) -> bool:
        return self.relations_vanish and self.brackets_preserved and self.alpha_intertwined


def free_univ_extend(X: HomSet, f, B: HomLieAlgebra, max_len: int,
                     trunc: Optional[FreeTruncation] = None) -> FreeExtension:
    """Extend ``f: X -> B`` (images of the elements, in order) over degrees ``<= max_len``.

    Brackets are compared only where the total degree stays within the bound,
    since the truncation sets longer products to zero.
    """
    if trunc is None:
        trunc = truncated_free_homlie(X, max_len)
    table = magma_univ_extend(X, [tuple(v) for v in f], HomMagma.of_algebra(B), max_len)
    F = trunc.free
    vanish = True
    for n in range(1, max_len + 1):
        words = F.magma.words[n]
        for r in F.relations[n].basis:
            total = zero_vector(B.dim)
            for j, c in enumerate(r):
                if c:
                    total = tuple(t + c * x for t, x in zip(total, table[words[j]]))
            if any(total):
                vanish = False
    cols = [table[w] for w in trunc.basis_words]
    mat = Matrix.from_columns(cols, B.dim) if cols else Matrix.zeros(B.dim, 0)
    A = trunc.algebra
    preserved = True
    for a in range(A.dim):
        for b in range(A.dim):
            if trunc.degrees[a] + trunc.degrees[b] > max_len:
                continue
            lhs = B.bracket(mat.col(a), mat.col(b))
            if lhs != mat.apply(A.structure[a][b]):
                preserved = False
    intertwined = B.alpha @ mat == mat @ A.alpha
    return FreeExtension(mat, table, vanish, preserved, intertwined)


# --------------------------------------------------------------------------
# second cohomology probe on the truncation


@dataclass
class H2Probe:
    """One verdict per tested cocycle: does the generator lift split the extension?"""

    bound: int
    cocycles_tested: int
    splittings: list
    results: list

    @property
    def split(self) -> bool:
        return all(self.results)

    def as_dict(self):
        return {"bound": self.bound, "cocycles_tested": self.cocycles_tested,
                "results": list(self.results), "split": self.split}


def free_h2_probe(trunc: FreeTruncation, act, cocycles=None) -> H2Probe:
    """Lift the generators through ``M +_w F`` and check the lift splits up to the bound.

    ``act`` is a module over ``trunc.algebra``; ``cocycles`` defaults to a
    basis of ``Z^2``.
    """
    from .cohomology import cocycle_space
    from .extension import extension_from_cocycle

    L = trunc.algebra
    if act.actor is not L and not act.actor.same_structure(L):
        raise HomLieError("module is not over the truncated free algebra")
    if cocycles is None:
        cocycles = cocycle_space(act, 2).matrices()
        if not cocycles:
            cocycles = [Matrix.zeros(act.target.dim, len(_pairs(L.dim)))]
    X = trunc.X
    splittings, results = [], []
    for w in cocycles:
        ext = extension_from_cocycle(act, w)
        gens = [ext.sigma.apply(trunc.generator(k)) for k in range(X.size)]
        lift = free_univ_extend(X, gens, ext.E, trunc.bound, trunc)
        ok = lift.valid and (ext.pi @ lift.matrix).is_identity()
        splittings.append(lift.matrix)
        results.append(ok)
    return H2Probe(trunc.bound, len(cocycles), splittings, results)


def _pairs(n):
    return [(a, b) for a in range(n) for b in range(a + 1, n)]


__all__ = [
    "FreeExtension",
    "FreeHomLie",
    "FreeMagma",
    "FreeTruncation",
    "H2Probe",
    "HomMagma",
    "HomSet",
    "Word",
    "alpha_word",
    "catalan",
    "free_h2_probe",
    "free_homlie",
    "free_homlie_degree_basis",
    "free_univ_extend",
    "free_words",
    "jacobi_relation",
    "length",
    "magma_univ_extend",
    "render",
    "render_bracket",
    "shapes",
    "skew_relation",
    "truncated_free_homlie",
    "words_of_length",
]
