"""Command-line driver: ``.hla`` workspaces in, deterministic JSON reports out.

Exit codes: 0 success, 1 negative mathematical verdict (``validate``) or
mathematically unusable input, 2 usage, file or parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from .action import validate_action
from .cohomology import cohomology_group, is_coboundary
from .core import HomLieError, check_hom_morphism, validate_hom_lie
from .crossed import (
    AlphaCrossedExtension,
    Cat1,
    CrossedModule,
    crossed_extension_from_module,
    eta,
    eta_section_independence,
    find_rho,
    functor_P,
    functor_S,
    rho_from_ambient,
    validate_alpha_crossed_extension,
    validate_cat1,
    validate_crossed,
    validate_crossed_via_semidirect,
)
from .dsl import DSLError, load_workspace
from .exactla import Matrix, Subspace
from .extension import (
    AbelianExtension,
    ShortExactSequence,
    baer_sum,
    cocycle_condition_holds,
    cocycle_from_extension,
    equivalent_extensions,
    extension_from_cocycle,
    find_section,
    five_term_report,
    validate_extension,
)
from .free import HomSet, free_homlie, free_words, render, truncated_free_homlie


class UsageError(Exception):
    """Bad arguments or names that do not resolve; exit code 2."""


# --------------------------------------------------------------------------
# serialisation


def rat(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def mat(A: Matrix):
    return [[rat(a) for a in row] for row in A.row_list()]


def vector(v):
    return [rat(a) for a in v]


def algebra_json(A):
    brackets = {}
    for i in range(A.dim):
        for j in range(i + 1, A.dim):
            v = A.structure[i][j]
            if any(v):
                brackets[f"[{A.names[i]},{A.names[j]}]"] = vector(v)
    return {"basis": list(A.names), "alpha": mat(A.alpha), "brackets": brackets}


def action_json(act):
    table = {}
    for i in range(act.actor.dim):
        for j in range(act.target.dim):
            v = act.table[i][j]
            if any(v):
                table[f"{act.actor.names[i]}.{act.target.names[j]}"] = vector(v)
    return {"actor": algebra_json(act.actor), "target": algebra_json(act.target), "action": table}


def dump(report: dict, pretty: bool) -> str:
    if pretty:
        return json.dumps(report, sort_keys=True, indent=2)
    return json.dumps(report, sort_keys=True, separators=(",", ":"))


# --------------------------------------------------------------------------
# workspace lookups


class Context:
    def __init__(self, path: str):
        p = Path(path)
        if not p.is_file():
            raise UsageError(f"file not found: {path}")
        data = p.read_bytes()
        self.digest = hashlib.sha256(data).hexdigest()
        self.ws = load_workspace(p)

    def algebra(self, name):
        try:
            return self.ws.object(name)
        except KeyError:
            raise UsageError(f"unknown algebra or module {name!r}") from None

    def module(self, name):
        if name not in self.ws.modules:
            raise UsageError(f"unknown module {name!r}")
        return self.ws.module(name)

    def map(self, name):
        if name not in self.ws.maps:
            raise UsageError(f"unknown map {name!r}")
        return self.ws.map(name)


# --------------------------------------------------------------------------
# commands


def cmd_validate(ctx: Context, args):
    algebras = {name: validate_hom_lie(A).as_dict() | {"is_hom_lie": validate_hom_lie(A).is_hom_lie}
                for name, A in ctx.ws.algebras.items()}
    modules = {}
    for name, decl in ctx.ws.modules.items():
        rep = validate_action(decl.action)
        target = validate_hom_lie(decl.action.target)
        modules[name] = rep.as_dict() | {"valid": rep.valid, "target": target.as_dict()}
    maps = {}
    for name, decl in ctx.ws.maps.items():
        if decl.degree != 1:
            continue
        maps[name] = {"morphism": check_hom_morphism(decl.matrix, ctx.algebra(decl.source), ctx.algebra(decl.target))}
    ok = all(r["is_hom_lie"] for r in algebras.values()) and all(r["valid"] for r in modules.values())
    return {"algebras": algebras, "modules": modules, "maps": maps, "valid": ok}, 0 if ok else 1


def cmd_cohomology(ctx: Context, args):
    act = ctx.module(args.module)
    over = ctx.ws.modules[args.module].over
    if args.algebra is not None and args.algebra != over:
        raise UsageError(f"module {args.module!r} is over {over!r}, not {args.algebra!r}")
    groups = {}
    for n in range(args.max_degree + 1):
        g = cohomology_group(act, n)
        groups[str(n)] = g.as_dict()
    return {"algebra": over, "module": args.module, "groups": groups}, 0


def cmd_section(ctx: Context, args):
    decl = ctx.ws.maps.get(args.map)
    if decl is None:
        raise UsageError(f"unknown map {args.map!r}")
    X, Y = ctx.algebra(decl.source), ctx.algebra(decl.target)
    s = find_section(decl.matrix, X.alpha, Y.alpha)
    out = {"map": args.map, "section": "absent" if s is None else "present"}
    if s is not None:
        out["matrix"] = mat(s)
    return out, 0


def _extension_from_file(ctx: Context, args) -> AbelianExtension:
    act = ctx.module(args.module)
    E = ctx.algebra(args.extension)
    i, pi = ctx.map(args.incl), ctx.map(args.proj)
    if args.section is not None:
        sigma = ctx.map(args.section)
    else:
        sigma = find_section(pi, E.alpha, act.actor.alpha)
        if sigma is None:
            raise HomLieError("projection has no Hom-linear section")
    return AbelianExtension(act.target, E, act.actor, i, pi, sigma, act)


def cmd_extension(ctx: Context, args):
    op = args.op
    if op == "build":
        act = ctx.module(args.module)
        w = ctx.map(args.cocycle[0])
        ok = cocycle_condition_holds(act, w)
        if not ok:
            return {"op": op, "cocycle": False}, 0
        ext = extension_from_cocycle(act, w)
        return {"op": op, "cocycle": True, "algebra": algebra_json(ext.E),
                "report": validate_extension(ext, act.actor.alpha).as_dict()}, 0
    if op == "extract":
        ext = _extension_from_file(ctx, args)
        rep = validate_extension(ext, ext.L.alpha)
        out = {"op": op, "report": rep.as_dict()}
        if rep.valid:
            w = cocycle_from_extension(ext)
            out["cocycle"] = mat(w)
            out["split"] = is_coboundary(ext.module(), w, 2) is not None
        return out, 0
    if op in ("equiv", "baer"):
        act = ctx.module(args.module)
        if len(args.cocycle) != 2:
            raise UsageError(f"{op} needs two --cocycle arguments")
        ws = [ctx.map(n) for n in args.cocycle]
        if not all(cocycle_condition_holds(act, w) for w in ws):
            return {"op": op, "cocycles": False}, 0
        e1, e2 = (extension_from_cocycle(act, w) for w in ws)
        if op == "equiv":
            Phi = equivalent_extensions(e1, e2)
            out = {"op": op, "equivalent": Phi is not None}
            if Phi is not None:
                out["map"] = mat(Phi)
            return out, 0
        cat = baer_sum(e1, e2, "categorical")
        coc = baer_sum(e1, e2, "cocycle")
        return {"op": op, "categorical_cocycle": mat(cocycle_from_extension(cat)),
                "cocycle_sum": mat(cocycle_from_extension(coc)),
                "agree": equivalent_extensions(cat, coc) is not None}, 0
    if op == "five-term":
        act = ctx.module(args.module)
        E = ctx.algebra(args.extension)
        xi, pi = ctx.map(args.incl), ctx.map(args.proj)
        N = ctx.algebra(ctx.ws.maps[args.incl].source)
        sigma = find_section(pi, E.alpha, act.actor.alpha)
        if sigma is None:
            raise HomLieError("projection has no Hom-linear section")
        rep = five_term_report(ShortExactSequence(N, E, act.actor, xi, pi, sigma), act)
        return {"op": op} | rep.as_dict(), 0
    raise UsageError(f"unknown extension operation {op!r}")


def _crossed_module(ctx, args) -> CrossedModule:
    act = ctx.module(args.module)
    mu = ctx.map(args.mu) if args.mu else Matrix.zeros(act.actor.dim, act.target.dim)
    return CrossedModule(act, mu)


def _cat1(ctx, args) -> Cat1:
    P = ctx.algebra(args.algebra)
    incl = ctx.map(args.sub)
    N = Subspace.span(incl.columns(), P.dim) if incl.cols else Subspace.zero(P.dim)
    if N.dim != incl.cols:
        raise HomLieError("inclusion of N is not injective")
    # s, t are given into the declared N; rewrite in the canonical basis of the image
    change = Matrix.from_columns([N.coordinates(c) for c in incl.columns()], N.dim) if N.dim else Matrix.zeros(0, 0)
    return Cat1(P, N, change @ ctx.map(args.s), change @ ctx.map(args.t))


def crossed_json(cm: CrossedModule):
    return action_json(cm.action) | {"mu": mat(cm.mu)}


def cmd_crossed(ctx: Context, args):
    op = args.op
    if op == "check":
        cm = _crossed_module(ctx, args)
        std, alp = validate_crossed(cm, "standard"), validate_crossed(cm, "alpha")
        return {"op": op, "standard": std.as_dict(), "alpha": alp.as_dict(),
                "via_semidirect": validate_crossed_via_semidirect(cm)}, 0
    if op == "cat1":
        return {"op": op, "report": validate_cat1(_cat1(ctx, args)).as_dict()}, 0
    if op == "functor-p":
        cm = functor_P(_cat1(ctx, args))
        return {"op": op, "crossed_module": crossed_json(cm),
                "standard": validate_crossed(cm, "standard").as_dict()}, 0
    if op == "functor-s":
        c = functor_S(_crossed_module(ctx, args))
        return {"op": op, "P": algebra_json(c.P), "N": [vector(b) for b in c.N.basis],
                "s": mat(c.s), "t": mat(c.t), "report": validate_cat1(c).as_dict()}, 0
    if op == "eta":
        x = _crossed_extension(ctx, args)
        rep = validate_alpha_crossed_extension(x)
        out = {"op": op, "report": rep.as_dict()}
        if rep.valid:
            res = eta(x)
            out["cocycle"] = mat(res.cocycle)
            out["h3"] = res.group.as_dict()
            out["zero_class"] = res.group.coboundaries.contains(res.cocycle)
            out["section_independent"] = eta_section_independence(x, args.trials).ok
        return out, 0
    raise UsageError(f"unknown crossed operation {op!r}")


def _crossed_extension(ctx, args) -> AlphaCrossedExtension:
    if args.cross is None:
        cm = _crossed_module(ctx, args)
        return crossed_extension_from_module(cm)
    mod, cross = ctx.module(args.module), ctx.module(args.cross)
    chi, mu, pi = ctx.map(args.chi), ctx.map(args.mu), ctx.map(args.pi)
    P, N = cross.actor, cross.target
    if args.sigma is not None:
        sigma = ctx.map(args.sigma)
    else:
        sigma = find_section(pi, P.alpha, mod.actor.alpha)
        if sigma is None:
            raise HomLieError("projection onto the base has no Hom-linear section")
    rho = rho_from_ambient(N, P, mu, ctx.map(args.rho)) if args.rho else find_rho(N, P, mu)
    return AlphaCrossedExtension(mod, cross, chi, mu, pi, sigma, rho)


def parse_generators(spec: str) -> HomSet:
    """``x,y`` (identity twist) or ``x->y,y->y``; ``x->0`` sends ``x`` to zero."""
    names, amap = [], {}
    for part in spec.split(","):
        part = part.strip()
        if not part:
            raise UsageError("empty generator name")
        if "->" in part:
            a, b = (s.strip() for s in part.split("->", 1))
            names.append(a)
            amap[a] = None if b == "0" else b
        else:
            names.append(part)
            amap[part] = part
    if len(set(names)) != len(names):
        raise UsageError("duplicate generator names")
    unknown = [b for b in amap.values() if b is not None and b not in names]
    if unknown:
        raise UsageError(f"unknown twist image {unknown[0]!r}")
    return HomSet.from_map(names, amap)


def cmd_free(args):
    X = parse_generators(args.generators)
    if args.max_length < 1:
        raise UsageError("--max-length must be positive")
    F = free_homlie(X, args.max_length)
    counts = free_words(X, args.max_length).counts()
    basis = {str(n): [render(X, w) for w in F.reps[n]] for n in sorted(F.reps)}
    out = {"generators": list(X.elements), "word_counts": {str(k): v for k, v in sorted(counts.items())},
           "dims": {str(k): v for k, v in sorted(F.dims().items())}, "basis": basis}
    if args.truncate:
        T = truncated_free_homlie(X, args.max_length)
        out["truncation"] = validate_hom_lie(T.algebra).as_dict()
    return out, 0


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homlie", description="Exact computations with Hom-Lie algebras.")
    p.add_argument("--pretty", action="store_true", help="indent the JSON report")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check every algebra, module and map in a file")
    v.add_argument("file")

    c = sub.add_parser("cohomology", help="dimensions of H^n for n up to a bound")
    c.add_argument("file")
    c.add_argument("--algebra")
    c.add_argument("--module", required=True)
    c.add_argument("--max-degree", type=int, default=2)

    s = sub.add_parser("section", help="search for a Hom-linear section of a surjection")
    s.add_argument("file")
    s.add_argument("--map", required=True)

    e = sub.add_parser("extension", help="abelian extensions and cocycles")
    e.add_argument("op", choices=["build", "extract", "equiv", "baer", "five-term"])
    e.add_argument("file")
    e.add_argument("--module", required=True)
    e.add_argument("--cocycle", action="append", default=[])
    e.add_argument("--extension")
    e.add_argument("--incl")
    e.add_argument("--proj")
    e.add_argument("--section")

    x = sub.add_parser("crossed", help="crossed modules, cat1 data and the eta class")
    x.add_argument("op", choices=["check", "cat1", "functor-p", "functor-s", "eta"])
    x.add_argument("file")
    x.add_argument("--module")
    x.add_argument("--mu")
    x.add_argument("--algebra")
    x.add_argument("--sub")
    x.add_argument("--s")
    x.add_argument("--t")
    x.add_argument("--cross")
    x.add_argument("--chi")
    x.add_argument("--pi")
    x.add_argument("--sigma")
    x.add_argument("--rho")
    x.add_argument("--trials", type=int, default=5)

    f = sub.add_parser("free", help="graded dimensions of the free Hom-Lie algebra")
    f.add_argument("--generators", required=True)
    f.add_argument("--max-length", type=int, required=True)
    f.add_argument("--truncate", action="store_true")
    return p


_REQUIRED = {
    ("extension", "build"): ("cocycle",),
    ("extension", "extract"): ("extension", "incl", "proj"),
    ("extension", "five-term"): ("extension", "incl", "proj"),
    ("crossed", "check"): ("module",),
    ("crossed", "functor-s"): ("module",),
    ("crossed", "cat1"): ("algebra", "sub", "s", "t"),
    ("crossed", "functor-p"): ("algebra", "sub", "s", "t"),
    ("crossed", "eta"): ("module",),
}


def run(argv) -> tuple[dict, int]:
    """Parse ``argv`` and compute; returns ``(report, exit_code)``."""
    argv = [a for a in argv if a != "--pretty"]
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in _REQUIRED.get((args.command, getattr(args, "op", None)), ()):
        if not getattr(args, name):
            raise UsageError(f"--{name} is required for {args.command} {args.op}")
    if args.command == "crossed" and args.op == "eta" and args.cross is not None:
        for name in ("chi", "mu", "pi"):
            if not getattr(args, name):
                raise UsageError(f"--{name} is required with --cross")
    if args.command == "free":
        body, code = cmd_free(args)
        return {"command": ["free"] + list(argv[argv.index("free") + 1:])} | body, code
    ctx = Context(args.file)
    handler = {
        "validate": cmd_validate,
        "cohomology": cmd_cohomology,
        "section": cmd_section,
        "extension": cmd_extension,
        "crossed": cmd_crossed,
    }[args.command]
    body, code = handler(ctx, args)
    return {"command": argv, "input_sha256": ctx.digest} | body, code


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    pretty = "--pretty" in argv
    try:
        report, code = run(argv)
    except SystemExit as exc:  # argparse usage errors
        return 2 if exc.code else 0
    except (UsageError, DSLError, OSError) as exc:
        print(f"homlie: {exc}", file=sys.stderr)
        return 2
    except HomLieError as exc:
        report, code = {"command": [a for a in argv if a != "--pretty"], "error": str(exc)}, 1
    print(dump(report, pretty))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
