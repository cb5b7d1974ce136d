"""Command-line entry point: ``operad-forge <subcommand> ...``.

Data goes to stdout, diagnostics to stderr.  Exit codes: 0 decided success,
1 decided failure, 2 undecided or budget exhausted, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import trees
from .bounds import Bounds
from .operad import TwoPointCollection, canonical_decorated_form
from .pushout import UNDECIDED, NonTermination, confluence_sample, equal_in_pushout, normalize
from .sexp import SexpError, parse_all
from .surfaces.decorations import SurfaceCodec
from .surfaces.dm import stable_marked_skeletons
from .surfaces.dualgraph import CornerCase, GraphError
from .surfaces.enumeration import stable_boundary_graphs
from .surfaces.instances import AnnDisc, FrDisc, NodAnnDisc, NodFrDisc
from .surfaces.split import hd_normalize
from .surfaces.system import check_valency, surface_pushout
from .trees import TRIVIAL, TreeError
from .wconstruction import w_canonical, w_contract, w_counit
from . import verifier

EXIT_OK, EXIT_FAIL, EXIT_UNDECIDED, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ----------------------------------------------------------------------
# instances


class _Tree:
    name = "tree"
    codec = trees.PlainCodec()

    def canonical(self, t):
        return trees.canonical_form(t) if t is not TRIVIAL else (TRIVIAL, "|")


class _Decorated:
    def __init__(self, op, codec=None):
        self.op = op
        self.name = op.name
        self.codec = codec or op

    def canonical(self, t):
        if t is TRIVIAL:
            return TRIVIAL, "|"
        return canonical_decorated_form(t, self.op)

    def check(self, t):
        for v in trees.vertices(t):
            if self.op.arity(v.dec) != v.valency:
                raise TreeError(f"decoration {self.op.encode(v.dec)} expects {self.op.arity(v.dec)} inputs, vertex has {v.valency}")


INSTANCES = {
    "tree": lambda: _Tree(),
    "two-point": lambda: _Decorated(TwoPointCollection()),
    "fr": lambda: _Decorated(FrDisc(), SurfaceCodec()),
    "nodann": lambda: _Decorated(NodAnnDisc(), SurfaceCodec()),
    "ann": lambda: _Decorated(AnnDisc(), SurfaceCodec()),
    "nodfr": lambda: _Decorated(NodFrDisc(), SurfaceCodec()),
}


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise UsageError(f"{path}: not valid UTF-8") from None


def _load(path: str, inst, allow_lengths: bool = False) -> list:
    text = _read(path)
    try:
        exprs = parse_all(text)
        out = []
        for expr in exprs:
            t = trees.tree_from_sexp(expr, inst.codec, allow_lengths)
            if hasattr(inst, "check") and t is not TRIVIAL:
                inst.check(t)
            out.append(t)
    except SexpError as exc:
        raise UsageError(f"{path}:{exc}") from None
    except (TreeError, GraphError, ValueError) as exc:
        raise UsageError(f"{path}: {exc}") from None
    if not out:
        raise UsageError(f"{path}: no tree found")
    return out


def _load_one(path: str, inst, allow_lengths: bool = False):
    items = _load(path, inst, allow_lengths)
    if len(items) != 1:
        raise UsageError(f"{path}: expected exactly one tree, found {len(items)}")
    return items[0]


def _load_pushout(path: str, sysm):
    text = _read(path)
    try:
        exprs = parse_all(text)
        if len(exprs) != 1:
            raise UsageError(f"{path}: expected exactly one element, found {len(exprs)}")
        t = trees.tree_from_sexp(exprs[0], sysm.codec)
        if t is not TRIVIAL:
            check_valency(sysm, t)
        return t
    except SexpError as exc:
        raise UsageError(f"{path}:{exc}") from None
    except (TreeError, GraphError, ValueError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _encode(inst):
    if isinstance(inst, _Tree):
        return None
    return inst.codec.encode


# ----------------------------------------------------------------------
# output


class _Out:
    def __init__(self, args):
        self.fmt = getattr(args, "format", "sexp")
        self.stream = getattr(args, "stream", False)
        self.records: list = []

    def emit(self, text: str, record: dict):
        if self.fmt == "json" and self.stream:
            sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")
        elif self.fmt == "json":
            self.records.append(record)
        else:
            sys.stdout.write(text + "\n")

    def close(self, extra: dict | None = None):
        if self.fmt == "json" and not self.stream:
            doc = {"items": self.records}
            if extra:
                doc.update(extra)
            sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")


# ----------------------------------------------------------------------
# subcommands


def cmd_parse(args) -> int:
    inst = INSTANCES[args.instance]()
    out = _Out(args)
    for t in _load(args.file, inst, args.lengths):
        s = trees.to_sexp(t, _encode(inst))
        out.emit(s, {"tree": s, "arity": trees.arity(t), "vertices": trees.n_vertices(t) if t is not TRIVIAL else 0})
    out.close()
    return EXIT_OK


def cmd_canon(args) -> int:
    inst = INSTANCES[args.instance]()
    out = _Out(args)
    for t in _load(args.file, inst, args.lengths):
        if args.lengths and isinstance(inst, _Decorated):
            node, code = w_canonical(inst.op, t)
        elif args.lengths:
            node, code = trees.canonical_form(t) if t is not TRIVIAL else (TRIVIAL, "|")
        else:
            node, code = inst.canonical(t)
        rep = trees.to_sexp(node, _encode(inst))
        out.emit(code, {"code": code, "representative": rep})
    out.close()
    return EXIT_OK


def cmd_compose(args) -> int:
    inst = INSTANCES[args.instance]()
    u = _load_one(args.left, inst, args.lengths)
    v = _load_one(args.right, inst, args.lengths)
    k = trees.arity(u)
    if not 1 <= args.index <= k:
        raise UsageError(f"compose: index {args.index} out of range for arity {k}")
    w = trees.partial_graft(u, args.index, v, new_length=Fraction(1) if args.lengths else None)
    s = trees.to_sexp(w, _encode(inst))
    out = _Out(args)
    out.emit(s, {"tree": s, "arity": trees.arity(w)})
    out.close()
    return EXIT_OK


def cmd_enum_trees(args) -> int:
    out = _Out(args)
    codes = trees.enumerate_trees(args.arity, args.max_vertices)
    for c in codes:
        out.emit(c, {"code": c})
    out.close({"count": len(codes)})
    return EXIT_OK


def cmd_enum_graphs(args) -> int:
    out = _Out(args)
    if args.kind == "dm":
        graphs = stable_marked_skeletons(args.arity, args.max_genus, args.max_vertices)
    else:
        graphs = stable_boundary_graphs(args.arity, args.max_genus, args.max_vertices)
    for g in graphs:
        out.emit(g.code, {"code": g.code, "arity": g.arity, "genus": g.genus, "nodes": g.n_nodes})
    out.close({"count": len(graphs)})
    return EXIT_OK


def _emit_doc(args, text: str, doc: dict):
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text + "\n")


def cmd_pushout(args) -> int:
    sysm = surface_pushout()
    if args.action == "nf":
        e = _load_pushout(args.file, sysm)
        try:
            r = normalize(sysm, e, args.budget)
        except NonTermination as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_UNDECIDED
        s = sysm.to_sexp(r.tree)
        _emit_doc(args, s, {"normal_form": s, "code": r.code, "steps": r.steps, "measure": r.measure})
        return EXIT_OK
    if args.action == "eq":
        a = _load_pushout(args.file, sysm)
        b = _load_pushout(args.other, sysm)
        verdict = equal_in_pushout(sysm, a, b, args.budget)
        word = "undecided" if verdict is UNDECIDED else ("equal" if verdict else "different")
        _emit_doc(args, word, {"verdict": word, "budget": args.budget})
        return EXIT_UNDECIDED if verdict is UNDECIDED else (EXIT_OK if verdict else EXIT_FAIL)
    e = _load_pushout(args.file, sysm)
    try:
        rep = confluence_sample(sysm, e, args.trials, args.seed)
    except NonTermination as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_UNDECIDED
    doc = rep.to_json()
    text = "\n".join(f"{n} {c}" for c, n in sorted(rep.outcomes.items()))
    _emit_doc(args, text, doc)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_w(args) -> int:
    inst = INSTANCES[args.instance]()
    if not isinstance(inst, _Decorated):
        raise UsageError("w: needs a decorated instance")
    op = inst.op
    out = _Out(args)
    for t in _load(args.file, inst, allow_lengths=True):
        try:
            if args.action == "contract":
                r = w_contract(op, t)
                s = trees.to_sexp(r, op.encode)
            elif args.action == "counit":
                r = w_counit(op, t)
                s = r if isinstance(r, str) else op.encode(r)
            else:
                if args.instance != "fr":
                    raise UsageError("w hd: only defined for the fr instance")
                r = hd_normalize(t)
                s = trees.to_sexp(r, op.encode)
        except (ValueError, GraphError, CornerCase) as exc:
            print(f"{args.file}: {exc}", file=sys.stderr)
            return EXIT_FAIL
        out.emit(s, {"result": s})
    out.close()
    return EXIT_OK


def _grid(text: str, flag: str):
    try:
        vals = [Fraction(x) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{flag}: expected comma-separated rationals like 0,1/2,1") from None
    if not vals:
        raise UsageError(f"{flag}: empty grid")
    return tuple(vals)


CHECK_DEFAULTS = {
    "free-split": Bounds(max_arity=3, max_genus=1, max_vertices=3),
    "w-colimit": Bounds(max_arity=3, max_genus=1, max_vertices=3, max_nodes=1),
    "canon-oracle": Bounds(max_arity=3, max_vertices=7),
}


def bounds_from_args(args) -> Bounds:
    b = CHECK_DEFAULTS.get(args.check, Bounds())
    kw = {}
    for flag, field in (("max_arity", "max_arity"), ("max_genus", "max_genus"), ("max_vertices", "max_vertices"), ("trials", "trial_count"), ("seed", "seed"), ("max_nodes", "max_nodes")):
        v = getattr(args, flag)
        if v is not None:
            kw[field] = v
    if args.grid is not None:
        kw["modulus_grid"] = _grid(args.grid, "--grid")
    if args.length_grid is not None:
        kw["length_grid"] = _grid(args.length_grid, "--length-grid")
    try:
        return b.with_(**kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_verify(args) -> int:
    b = bounds_from_args(args)
    fn = verifier.CHECKS[args.check]
    if args.check == "word-problem":
        rep = fn(b, starts=args.starts or 1000, budget=args.budget or 5000)
    elif args.check == "confluence":
        rep = fn(b, starts=args.starts or 200)
    elif args.check == "hd":
        rep = fn(b, samples=args.starts or 1000)
    elif args.check == "axioms":
        rep = fn(b)
    else:
        rep = fn(b)
    text = json.dumps(rep.to_json(timing=args.timing), sort_keys=True)
    sys.stdout.write(text + "\n")
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            raise UsageError(f"{args.out}: {exc.strerror}") from None
    print(f"{rep.check}: {rep.status}", file=sys.stderr)
    return rep.exit_code


# ----------------------------------------------------------------------
# argument parsing


def _common(p, instance: bool = True, lengths: bool = True):
    p.add_argument("--format", choices=("sexp", "json"), default="sexp")
    p.add_argument("--stream", action="store_true", help="line-delimited JSON records")
    if instance:
        p.add_argument("--instance", choices=sorted(INSTANCES), default="tree")
    if lengths:
        p.add_argument("--lengths", action="store_true", help="read W-trees with @length edges")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="operad-forge", description="Combinatorial operad engine.")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("parse", help="parse trees and print them back")
    p.add_argument("file")
    _common(p)
    p.set_defaults(fn=cmd_parse)

    p = sub.add_parser("canon", help="canonical code of each tree")
    p.add_argument("file")
    _common(p)
    p.set_defaults(fn=cmd_canon)

    p = sub.add_parser("compose", help="partial composition left o_i right")
    p.add_argument("left")
    p.add_argument("index", type=int)
    p.add_argument("right")
    _common(p)
    p.set_defaults(fn=cmd_compose)

    p = sub.add_parser("enum-trees", help="isomorphism classes of labeled trees")
    p.add_argument("--arity", type=int, required=True)
    p.add_argument("--max-vertices", type=int, default=5)
    _common(p, instance=False, lengths=False)
    p.set_defaults(fn=cmd_enum_trees)

    p = sub.add_parser("enum-graphs", help="stable tree-like dual graphs")
    p.add_argument("--arity", type=int, required=True)
    p.add_argument("--max-genus", type=int, default=3)
    p.add_argument("--max-vertices", type=int, default=5, help="components")
    p.add_argument("--kind", choices=("dg", "dm"), default="dg")
    _common(p, instance=False, lengths=False)
    p.set_defaults(fn=cmd_enum_graphs)

    p = sub.add_parser("pushout", help="the surface pushout")
    psub = p.add_subparsers(dest="action", parser_class=_Parser)
    psub.required = True
    q = psub.add_parser("nf")
    q.add_argument("file")
    q.add_argument("--budget", type=int, default=10_000)
    q.add_argument("--format", choices=("sexp", "json"), default="sexp")
    q = psub.add_parser("eq")
    q.add_argument("file")
    q.add_argument("other")
    q.add_argument("--budget", type=int, default=5_000)
    q.add_argument("--format", choices=("sexp", "json"), default="sexp")
    q = psub.add_parser("confluence")
    q.add_argument("file")
    q.add_argument("--trials", type=int, default=100)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--format", choices=("sexp", "json"), default="sexp")
    p.set_defaults(fn=cmd_pushout)

    p = sub.add_parser("w", help="W-construction operations")
    p.add_argument("action", choices=("contract", "counit", "hd"))
    p.add_argument("file")
    p.add_argument("--format", choices=("sexp", "json"), default="sexp")
    p.add_argument("--stream", action="store_true")
    p.add_argument("--instance", choices=sorted(k for k in INSTANCES if k != "tree"), default="fr")
    p.set_defaults(fn=cmd_w)

    p = sub.add_parser("verify", help="run a verification check")
    p.add_argument("check", choices=sorted(verifier.CHECKS))
    p.add_argument("--max-arity", type=int)
    p.add_argument("--max-genus", type=int)
    p.add_argument("--max-vertices", type=int)
    p.add_argument("--max-nodes", type=int)
    p.add_argument("--grid")
    p.add_argument("--length-grid")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--starts", type=int, help="seeded start elements or samples")
    p.add_argument("--budget", type=int)
    p.add_argument("--out")
    p.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte-reproducibility)")
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        for name in ("trials", "budget", "starts"):
            v = getattr(args, name, None)
            if v is not None and v < 1:
                raise UsageError(f"--{name} must be at least 1")
        return args.fn(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except (TreeError, ValueError) as exc:
        print(f"operad-forge: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
