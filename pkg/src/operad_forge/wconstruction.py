"""The W-construction: trees over an operad with lengths in [0,1] on internal edges.

A length sits on the edge from a non-root vertex to its parent.  Length-0
edges are contracted by composing in the underlying operad; grafting creates
edges of length 1.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from . import trees
from .operad import OperadInstance, counit
from .trees import TRIVIAL, Leaf, Node, TreeError


def _check_lengths(e) -> None:
    if e is TRIVIAL:
        return

    def walk(node: Node, is_root: bool):
        if is_root and node.length is not None:
            raise TreeError("the root vertex carries no edge length")
        if not is_root and node.length is None:
            raise TreeError("internal edge without a length")
        for c in node.children:
            if isinstance(c, Node):
                walk(c, False)

    walk(e, True)


def w_contract(op: OperadInstance, e):
    """Merge the endpoints of every length-0 edge, composing their decorations."""
    if e is TRIVIAL:
        return e

    def walk(node: Node) -> Node:
        kids = [c if isinstance(c, Leaf) else walk(c) for c in node.children]
        dec = node.dec
        # right to left keeps the slot numbers of earlier children valid
        for k in range(len(kids) - 1, -1, -1):
            c = kids[k]
            if isinstance(c, Node) and c.length == 0:
                dec = op.compose(dec, k + 1, c.dec)
                kids[k:k + 1] = list(c.children)
        return Node(dec, kids, node.length)

    return walk(e)


def w_compose(base, parts: Sequence):
    """Full composition; every newly created internal edge has length 1."""
    return trees.graft(base, parts, new_length=Fraction(1))


def w_partial(u, i: int, v):
    return trees.partial_graft(u, i, v, new_length=Fraction(1))


def w_counit(op: OperadInstance, e):
    """Forget lengths and compose everything."""
    return counit(op, e)


def w_canonical(op: OperadInstance, e):
    """``(representative, code)`` of the contracted element."""
    c = w_contract(op, e)
    if c is TRIVIAL:
        return c, "|"
    return trees.canonical_form(c, op.key, op.act)


class WOperad(OperadInstance):
    """W(O) as an enumerable operad.

    The unit is the trivial tree: a vertex carrying O's unit would sit on a
    length-1 edge after grafting and would not contract away.
    """

    def __init__(self, op: OperadInstance, max_vertices: int = 2):
        self.op = op
        self.name = f"W({op.name})"
        self.max_vertices = max_vertices

    def arity(self, x):
        return trees.arity(x)

    def elements(self, n, bounds):
        found = {}
        grid = [q for q in bounds.length_grid]
        for shape in trees.enumerate_tree_forms(n, self.max_vertices):
            if shape is TRIVIAL:
                found.setdefault("|", TRIVIAL)
                continue
            verts = trees.vertices(shape)
            domains = [self.op.elements(v.valency, bounds) for v in verts]
            if any(not d for d in domains):
                continue
            n_edges = len(verts) - 1
            for decs in itertools.product(*domains):
                for lens in itertools.product(grid, repeat=n_edges):
                    e = _decorate(shape, decs, lens)
                    try:
                        node, code = w_canonical(self.op, e)
                    except (ValueError, TreeError):
                        continue
                    found.setdefault(code, node)
        return [found[c] for c in sorted(found)]

    def act(self, x, sigma):
        return trees.act(x, sigma)

    def key(self, x):
        return w_canonical(self.op, x)[1]

    def size(self, x):
        return trees.n_vertices(x)

    def compose(self, x, i, y):
        return w_partial(x, i, y)

    def unit(self):
        return TRIVIAL

    def encode(self, x):
        return trees.to_sexp(x, self.op.encode)


def _decorate(shape: Node, decs, lens) -> Node:
    di = iter(decs)
    li = iter(lens)

    def walk(node: Node, is_root: bool) -> Node:
        dec = next(di)
        length = None if is_root else next(li)
        kids = [c if isinstance(c, Leaf) else walk(c, False) for c in node.children]
        return Node(dec, kids, length)

    return walk(shape, True)


def w_trees(op: OperadInstance, n: int, max_vertices: int, bounds, keep=None):
    """Every contracted W-element of arity ``n`` with at most ``max_vertices`` vertices.

    Only lengths from ``bounds.length_grid`` that are positive are used, so
    the results are already contracted.  ``keep(tree)`` filters.
    """
    grid = [q for q in bounds.length_grid if q > 0]
    found = {}
    for shape in trees.enumerate_tree_forms(n, max_vertices):
        if shape is TRIVIAL:
            continue
        verts = trees.vertices(shape)
        domains = [op.elements(v.valency, bounds) for v in verts]
        if any(not d for d in domains):
            continue
        for decs in itertools.product(*domains):
            for lens in itertools.product(grid, repeat=len(verts) - 1):
                e = _decorate(shape, decs, lens)
                if keep is not None and not keep(e):
                    continue
                node, code = trees.canonical_form(e, op.key, op.act)
                found.setdefault(code, node)
    return found


def random_w_element(op: OperadInstance, rng, n: int, max_vertices: int, bounds):
    """A random W-element with at most ``max_vertices`` vertices and lengths from the full grid."""
    domain = {}

    def elems(k):
        if k not in domain:
            domain[k] = op.elements(k, bounds)
        return domain[k]

    shapes = [s for s in trees.enumerate_tree_forms(n, max_vertices) if s is not TRIVIAL and all(elems(v.valency) for v in trees.vertices(s))]
    shape = rng.choice(shapes)
    verts = trees.vertices(shape)
    decs = [rng.choice(elems(x.valency)) for x in verts]
    lens = [rng.choice(bounds.length_grid) for _ in range(len(verts) - 1)]
    return _decorate(shape, decs, lens)
