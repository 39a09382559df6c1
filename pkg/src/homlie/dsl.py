"""Reader and writer for ``.hla`` workspace files.

A document is a sequence of blocks::

    // comment
    algebra L {
      basis e, f;
      bracket [e,f] = e;
      alpha e -> e;
      f -> e + f;
    }
    module M over L {
      basis m;
      alpha id;
      f . m = -m;
    }
    map w : L^2 -> M { [e,f] -> m; }

Missing brackets, twist images, action values and map values are zero.
``[y,x]`` is filled in from ``[x,y]`` by skew-symmetry.  Scalars are integers
or ``p/q``; floating literals are rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .action import HomAction
from .cohomology import wedge_basis
from .core import HomLieAlgebra
from .exactla import ZERO, Matrix, zero_vector


class DSLError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        loc = f"line {line}, column {col}: " if line else ""
        super().__init__(loc + message)


@dataclass
class ModuleDecl:
    name: str
    over: str
    action: HomAction


@dataclass
class MapDecl:
    name: str
    source: str
    target: str
    degree: int
    matrix: Matrix


@dataclass
class Workspace:
    algebras: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)

    def object(self, name: str) -> HomLieAlgebra:
        """Underlying Hom-Lie algebra of an algebra or a module."""
        if name in self.algebras:
            return self.algebras[name]
        if name in self.modules:
            return self.modules[name].action.target
        raise KeyError(name)

    def algebra(self, name: str) -> HomLieAlgebra:
        return self.algebras[name]

    def module(self, name: str) -> HomAction:
        return self.modules[name].action

    def map(self, name: str) -> Matrix:
        return self.maps[name].matrix


# --------------------------------------------------------------------------
# tokens

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>//[^\n]*)
  | (?P<float>\d+\.\d*|\.\d+|\d+[eE][+-]?\d+)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<arrow>->)
  | (?P<punct>[{}\[\],;=.+\-*/^:()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list:
    out = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise DSLError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "float":
            raise DSLError(f"floating literal {m.group()!r} not allowed; use p/q", line, col)
        elif kind not in ("ws", "comment"):
            k = "punct" if kind == "arrow" else kind
            out.append(Token(k, m.group(), line, col))
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg: str, tok: Optional[Token] = None):
        t = tok or self.tok
        raise DSLError(msg, t.line, t.col)

    def take(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind in ("punct", "ident") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            got = self.tok.text or "end of input"
            self.error(f"expected {text!r}, found {got!r}")
        return self.take()

    def ident(self) -> Token:
        if self.tok.kind != "ident":
            got = self.tok.text or "end of input"
            self.error(f"expected a name, found {got!r}")
        return self.take()

    # scalars and linear expressions -------------------------------------

    def scalar(self) -> Fraction:
        t = self.tok
        if t.kind != "num":
            self.error("expected a number")
        self.take()
        num = int(t.text)
        if self.at("/") and self.peek().kind == "num":
            self.take()
            d = self.take()
            den = int(d.text)
            if den == 0:
                self.error("zero denominator", d)
            return Fraction(num, den)
        return Fraction(num)

    def linear(self, names: dict) -> tuple:
        """``term (('+'|'-') term)*`` over the basis ``names``; returns a vector."""
        out = [ZERO] * len(names)
        sign = 1
        if self.at("-"):
            self.take()
            sign = -1
        elif self.at("+"):
            self.take()
        while True:
            self._term(names, out, sign)
            if self.at("+"):
                self.take()
                sign = 1
            elif self.at("-"):
                self.take()
                sign = -1
            else:
                return tuple(out)

    def _term(self, names, out, sign):
        coeff = Fraction(sign)
        if self.tok.kind == "num":
            coeff *= self.scalar()
            if self.at("*"):
                self.take()
            elif self.tok.kind != "ident":
                if coeff != 0:
                    self.error("a bare nonzero number is not a vector")
                return
        t = self.ident()
        if t.text not in names:
            self.error(f"unknown basis element {t.text!r}", t)
        out[names[t.text]] += coeff


# --------------------------------------------------------------------------


_RESERVED = {"basis", "bracket", "alpha"}


def _index(names) -> dict:
    return {n: i for i, n in enumerate(names)}


class _Block:
    """Accumulates the statements of an algebra or module block."""

    def __init__(self, p: _Parser, kind: str, name: Token, actor: Optional[HomLieAlgebra]):
        self.p = p
        self.kind = kind
        self.name = name
        self.actor = actor
        self.basis: Optional[list] = None
        self.brackets: dict = {}
        self.alpha: dict = {}
        self.alpha_id = False
        self.actions: dict = {}

    def names(self, tok) -> dict:
        if self.basis is None:
            self.p.error("basis must be declared first", tok)
        return _index(self.basis)

    def statement(self):
        p = self.p
        t = p.tok
        if p.at("basis"):
            p.take()
            if self.basis is not None:
                p.error("basis declared twice", t)
            names = [p.ident()]
            while p.at(","):
                p.take()
                names.append(p.ident())
            seen = set()
            for n in names:
                if n.text in seen:
                    p.error(f"duplicate basis name {n.text!r}", n)
                if n.text in _RESERVED:
                    p.error(f"{n.text!r} is reserved and cannot name a basis element", n)
                seen.add(n.text)
            self.basis = [n.text for n in names]
        elif p.at("bracket") and p.peek().text == "[":
            p.take()
            self.bracket_stmt()
        elif p.at("["):
            self.bracket_stmt()
        elif p.at("alpha"):
            p.take()
            if p.at("id") and p.peek().text == ";":
                p.take()
                self.names(t)
                self.alpha_id = True
            else:
                self.alpha_stmt()
        elif p.tok.kind == "ident" and p.peek().text == "->":
            self.alpha_stmt()
        elif self.kind == "module" and p.tok.kind == "ident" and p.peek().text == ".":
            self.action_stmt()
        else:
            p.error(f"unexpected {t.text!r} in {self.kind} block")
        p.expect(";")

    def bracket_stmt(self):
        p = self.p
        start = p.expect("[")
        names = self.names(start)
        a = p.ident()
        p.expect(",")
        b = p.ident()
        p.expect("]")
        p.expect("=")
        for n in (a, b):
            if n.text not in names:
                p.error(f"unknown basis element {n.text!r}", n)
        v = p.linear(names)
        i, j = names[a.text], names[b.text]
        if i == j:
            if any(v):
                p.error("[x,x] must be zero", start)
            return
        neg = tuple(-c for c in v)
        for key, val in (((i, j), v), ((j, i), neg)):
            if key in self.brackets and self.brackets[key] != val:
                p.error(f"conflicting bracket assignment for [{a.text},{b.text}]", start)
            self.brackets[key] = val

    def alpha_stmt(self):
        p = self.p
        x = p.ident()
        names = self.names(x)
        if x.text not in names:
            p.error(f"unknown basis element {x.text!r}", x)
        p.expect("->")
        v = p.linear(names)
        k = names[x.text]
        if k in self.alpha and self.alpha[k] != v:
            p.error(f"conflicting twist image for {x.text!r}", x)
        self.alpha[k] = v

    def action_stmt(self):
        p = self.p
        x = p.ident()
        p.expect(".")
        m = p.ident()
        names = self.names(x)
        lnames = _index(self.actor.names)
        if x.text not in lnames:
            p.error(f"unknown element {x.text!r} of the acting algebra", x)
        if m.text not in names:
            p.error(f"unknown basis element {m.text!r}", m)
        p.expect("=")
        v = p.linear(names)
        key = (lnames[x.text], names[m.text])
        if key in self.actions and self.actions[key] != v:
            p.error(f"conflicting action value for {x.text} . {m.text}", x)
        self.actions[key] = v

    def build(self) -> HomLieAlgebra:
        if self.basis is None:
            self.basis = []
        n = len(self.basis)
        if self.alpha_id:
            if self.alpha:
                self.p.error("both 'alpha id' and explicit twist images given", self.name)
            alpha = Matrix.identity(n)
        else:
            cols = [self.alpha.get(k, zero_vector(n)) for k in range(n)]
            alpha = Matrix.from_columns(cols, n) if n else Matrix.zeros(0, 0)
        table = [[self.brackets.get((i, j), zero_vector(n)) for j in range(n)] for i in range(n)]
        return HomLieAlgebra(table, alpha, tuple(self.basis))


def parse_workspace(text: str) -> Workspace:
    p = _Parser(text)
    ws = Workspace()
    taken: dict = {}

    def claim(tok):
        if tok.text in taken:
            p.error(f"name {tok.text!r} already defined", tok)
        taken[tok.text] = True

    while p.tok.kind != "eof":
        kw = p.tok
        if p.at("algebra"):
            p.take()
            name = p.ident()
            claim(name)
            blk = _Block(p, "algebra", name, None)
            p.expect("{")
            while not p.at("}"):
                if p.tok.kind == "eof":
                    p.error("unterminated block")
                blk.statement()
            p.take()
            ws.algebras[name.text] = blk.build()
        elif p.at("module"):
            p.take()
            name = p.ident()
            claim(name)
            p.expect("over")
            over = p.ident()
            if over.text not in ws.algebras:
                p.error(f"unknown algebra {over.text!r}", over)
            actor = ws.algebras[over.text]
            blk = _Block(p, "module", name, actor)
            p.expect("{")
            while not p.at("}"):
                if p.tok.kind == "eof":
                    p.error("unterminated block")
                blk.statement()
            p.take()
            M = blk.build()
            table = [[blk.actions.get((i, j), zero_vector(M.dim)) for j in range(M.dim)]
                     for i in range(actor.dim)]
            ws.modules[name.text] = ModuleDecl(name.text, over.text, HomAction(actor, M, table))
        elif p.at("map"):
            p.take()
            name = p.ident()
            claim(name)
            ws.maps[name.text] = _parse_map(p, ws, name)
        else:
            p.error(f"expected 'algebra', 'module' or 'map', found {kw.text!r}")
    return ws


def _parse_map(p: _Parser, ws: Workspace, name: Token) -> MapDecl:
    p.expect(":")
    src = p.ident()
    degree = 1
    if p.at("^"):
        p.take()
        d = p.tok
        if d.kind != "num":
            p.error("expected a degree after '^'")
        p.take()
        degree = int(d.text)
    p.expect("->")
    tgt = p.ident()
    for t in (src, tgt):
        if t.text not in ws.algebras and t.text not in ws.modules:
            p.error(f"unknown object {t.text!r}", t)
    S, T = ws.object(src.text), ws.object(tgt.text)
    snames, tnames = _index(S.names), _index(T.names)
    wb = wedge_basis(S.dim, degree)
    windex = {I: k for k, I in enumerate(wb)}
    values: dict = {}
    p.expect("{")
    while not p.at("}"):
        if p.tok.kind == "eof":
            p.error("unterminated block")
        start = p.tok
        if p.at("["):
            p.take()
            args = [p.ident()]
            while p.at(","):
                p.take()
                args.append(p.ident())
            p.expect("]")
        else:
            args = [p.ident()]
        if len(args) != degree:
            p.error(f"map of degree {degree} needs {degree} arguments", start)
        for a in args:
            if a.text not in snames:
                p.error(f"unknown basis element {a.text!r}", a)
        p.expect("->")
        v = p.linear(tnames)
        p.expect(";")
        idx = [snames[a.text] for a in args]
        if len(set(idx)) != len(idx):
            if any(v):
                p.error("alternating map must vanish on repeated arguments", start)
            continue
        sign = 1
        for x in range(len(idx)):
            for y in range(x + 1, len(idx)):
                if idx[x] > idx[y]:
                    sign = -sign
        key = windex[tuple(sorted(idx))]
        v = tuple(sign * c for c in v)
        if key in values and values[key] != v:
            p.error("conflicting map value", start)
        values[key] = v
    p.take()
    cols = [values.get(k, zero_vector(T.dim)) for k in range(len(wb))]
    mat = Matrix.from_columns(cols, T.dim) if cols else Matrix.zeros(T.dim, 0)
    return MapDecl(name.text, src.text, tgt.text, degree, mat)


# --------------------------------------------------------------------------
# emitting


def format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_linear(v, names) -> str:
    parts = []
    for c, n in zip(v, names):
        if not c:
            continue
        mag = abs(c)
        body = n if mag == 1 else f"{format_scalar(mag)}*{n}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


def _emit_body(A: HomLieAlgebra) -> list:
    lines = []
    if A.dim:
        lines.append(f"  basis {', '.join(A.names)};")
    first = True
    for i in range(A.dim):
        for j in range(i + 1, A.dim):
            v = A.structure[i][j]
            if any(v):
                kw = "bracket " if first else ""
                lines.append(f"  {kw}[{A.names[i]},{A.names[j]}] = {format_linear(v, A.names)};")
                first = False
    if A.dim and A.alpha.is_identity():
        lines.append("  alpha id;")
    else:
        first = True
        for j in range(A.dim):
            col = A.alpha.col(j)
            if any(col):
                kw = "alpha " if first else ""
                lines.append(f"  {kw}{A.names[j]} -> {format_linear(col, A.names)};")
                first = False
    return lines


def emit_workspace(ws: Workspace) -> str:
    blocks = []
    for name, A in ws.algebras.items():
        blocks.append("\n".join([f"algebra {name} {{"] + _emit_body(A) + ["}"]))
    for name, mod in ws.modules.items():
        act = mod.action
        M = act.target
        lines = [f"module {name} over {mod.over} {{"] + _emit_body(M)
        for i in range(act.actor.dim):
            for j in range(M.dim):
                v = act.table[i][j]
                if any(v):
                    lines.append(f"  {act.actor.names[i]} . {M.names[j]} = {format_linear(v, M.names)};")
        blocks.append("\n".join(lines + ["}"]))
    for name, mp in ws.maps.items():
        S, T = ws.object(mp.source), ws.object(mp.target)
        src = mp.source if mp.degree == 1 else f"{mp.source}^{mp.degree}"
        lines = [f"map {name} : {src} -> {mp.target} {{"]
        for k, I in enumerate(wedge_basis(S.dim, mp.degree)):
            col = mp.matrix.col(k)
            if any(col):
                arg = S.names[I[0]] if mp.degree == 1 else "[" + ",".join(S.names[i] for i in I) + "]"
                lines.append(f"  {arg} -> {format_linear(col, T.names)};")
        blocks.append("\n".join(lines + ["}"]))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


def load_workspace(path) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        return parse_workspace(fh.read())


__all__ = [
    "DSLError",
    "MapDecl",
    "ModuleDecl",
    "Workspace",
    "emit_workspace",
    "format_linear",
    "format_scalar",
    "load_workspace",
    "parse_workspace",
    "tokenize",
]
