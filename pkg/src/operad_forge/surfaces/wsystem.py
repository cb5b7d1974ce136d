"""The pushout W(NodAnn) <- W(Ann) -> W(Fr) and its comparison map to W(NodFr).

Free elements are trees of blocks, each block a W-element of one side.
Before rewriting, an element is flattened (edges between blocks get length
1, zero-length edges are contracted) and re-cut into atoms: the pieces left
after removing every length-1 edge.  An atom made only of finite annuli is
an A-image and gets oriented by its neighbours; everything else has a fixed
side.
"""

from __future__ import annotations

from fractions import Fraction

from .. import trees
from ..pushout import PushoutSystem
from ..trees import TRIVIAL, Leaf, Node
from ..wconstruction import WOperad, w_canonical, w_contract
from .decorations import Annulus, Smooth
from .instances import AnnDisc, FrDisc, NodAnnDisc, NodFrDisc, as_graph
from .moduli import ExtModulus

ONE = Fraction(1)


def _map_decs(t, fn):
    if t is TRIVIAL:
        return t

    def walk(node: Node) -> Node:
        return Node(fn(node.dec), [c if isinstance(c, Leaf) else walk(c) for c in node.children], node.length)

    return walk(t)


def _all_decs(t, pred) -> bool:
    return t is TRIVIAL or all(pred(v.dec) for v in trees.vertices(t))


def _finite(x) -> bool:
    return isinstance(x, ExtModulus) and not x.infinite


class WPushoutSystem(PushoutSystem):
    def unit_tree(self):
        return TRIVIAL


def w_surface_pushout() -> WPushoutSystem:
    P, Q, A = WOperad(NodAnnDisc()), WOperad(FrDisc()), WOperad(AnnDisc())
    sys = WPushoutSystem(
        P=P,
        Q=Q,
        A=A,
        i=lambda a: a,
        j=lambda a: _map_decs(a, lambda x: Annulus(x.value)),
        i_pre=lambda x: x if _all_decs(x, _finite) else None,
        j_pre=lambda x: _map_decs(x, lambda d: ExtModulus(d.modulus)) if _all_decs(x, lambda d: isinstance(d, Annulus)) else None,
        name="W(nodann)*W(ann)*W(fr)",
        swap_first=True,
    )
    sys.prenormalize = lambda e: atomize(sys, e)
    return sys


# ----------------------------------------------------------------------
# flattening and cutting


def flatten(e):
    """One W-tree with ``(side, value)`` decorations; edges between blocks get length 1."""
    if e is TRIVIAL:
        return TRIVIAL

    def walk(node: Node, length):
        block = node.dec.value
        side = node.dec.side
        kids = [c if isinstance(c, Leaf) else walk(c, ONE) for c in node.children]
        if block is TRIVIAL:
            k = kids[0]
            return k if isinstance(k, Leaf) else Node(k.dec, k.children, length)

        def copy(b: Node, ln):
            out = []
            for c in b.children:
                if isinstance(c, Leaf):
                    out.append(kids[c.label - 1])
                else:
                    out.append(copy(c, c.length))
            return Node((side, b.dec), out, ln)

        return copy(block, length)

    t = walk(e, None)
    if isinstance(t, Leaf):
        return TRIVIAL
    return t


class _SideOp:
    """Composition of side-tagged base decorations; only same-side pairs compose."""

    def __init__(self, sys):
        self.sys = sys

    def compose(self, x, i, y):
        if x[0] != y[0]:
            raise ValueError("zero-length edge between two sides")
        return (x[0], self.sys.op(x[0]).op.compose(x[1], i, y[1]))


def cut(sys, flat, joined, side_of):
    """Free tree of blocks: maximal sub-trees whose edges satisfy ``joined(child)``."""
    if flat is TRIVIAL:
        return TRIVIAL

    def block(root: Node) -> Node:
        ext = []

        def walk(v: Node, is_root: bool):
            kids = []
            for c in v.children:
                if isinstance(c, Node) and joined(c):
                    kids.append(walk(c, False))
                else:
                    ext.append(c)
                    kids.append(Leaf(len(ext)))
            return Node(v.dec, kids, None if is_root else v.length)

        b = walk(root, True)
        side, b = side_of(b)
        kids = [c if isinstance(c, Leaf) else block(c) for c in ext]
        return Node(sys.dec(side, b), kids)

    return block(flat)


def _content_side(b: Node):
    """Side of a tagged atom by content, with values re-typed for that side."""
    decs = [v.dec for v in trees.vertices(b)]
    if any(isinstance(x, ExtModulus) and x.infinite for _, x in decs):
        side = "P"
    elif any(isinstance(x, Smooth) for _, x in decs):
        side = "Q"
    else:
        side = "Q"

    def retype(d):
        _, x = d
        if side == "P":
            return x if isinstance(x, ExtModulus) else ExtModulus(x.modulus)
        return Annulus(x.value) if isinstance(x, ExtModulus) else x

    return side, _map_decs(b, retype)


def atomize(sys, e):
    flat = flatten(e)
    if flat is TRIVIAL:
        return TRIVIAL
    flat = w_contract(_SideOp(sys), flat)
    return cut(sys, flat, lambda c: c.length < 1, _content_side)


def from_flat(sys, flat):
    """Blocks of a side-tagged W-tree: same-side edges shorter than 1 stay inside a block."""

    def side_of(b):
        side = b.dec[0]
        return side, _map_decs(b, lambda d: d[1])

    return cut(sys, flat, lambda c: c.length < 1, side_of)


# ----------------------------------------------------------------------
# comparison with W(NodFr)

NODFR = NodFrDisc()


def to_nodfr(e):
    """The W(NodFr) element obtained by flattening and reading every piece as a graph."""
    flat = flatten(e)
    if flat is TRIVIAL:
        return TRIVIAL
    return _map_decs(flat, lambda d: as_graph(d[1]))


def nodfr_code(t) -> str:
    return w_canonical(NODFR, t)[1]


def is_protected_w(t) -> bool:
    """Every nodal piece is a nodal annulus and no atom holds both a node and a smooth piece.

    ``t`` is a contracted W-tree over boundary graphs.
    """
    if t is TRIVIAL:
        return True
    for v in trees.vertices(t):
        g = v.dec
        if g.n_nodes > 0 and not (g.n_components == 2 and g.n_nodes == 1 and g.genus == 0 and g.arity == 1):
            return False
    # atoms: components after removing length-1 edges
    def atoms(node: Node, acc: list, cur: list):
        cur.append(node.dec)
        for c in node.children:
            if isinstance(c, Node):
                if c.length < 1:
                    atoms(c, acc, cur)
                else:
                    fresh: list = []
                    acc.append(fresh)
                    atoms(c, acc, fresh)

    groups: list = [[]]
    atoms(t, groups, groups[0])
    for grp in groups:
        nodal = any(g.n_nodes > 0 for g in grp)
        smooth = any(g.modulus is None and g.n_nodes == 0 for g in grp)
        if nodal and smooth:
            return False
    return True


def w_node_count(t) -> int:
    return 0 if t is TRIVIAL else sum(v.dec.n_nodes for v in trees.vertices(t))


def w_genus(t) -> int:
    return 0 if t is TRIVIAL else sum(v.dec.genus for v in trees.vertices(t))
