"""Split surfaces: pieces cut along separating seams.

A :class:`SplitStructure` keeps the non-degenerate pieces as a tree whose
edges are seams.  Coinciding seams are recorded as counts: ``Seamed.extra``
is the number of degenerate annuli stacked on the seam above a piece, and
``leaf_extra[k-1]`` the number stacked on input ``k``.  A surface made only
of degenerate annuli is ``chain`` copies with no core.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .. import trees
from ..trees import TRIVIAL, Leaf, Node
from .decorations import Annulus, Smooth, dec_arity, encode_dec
from .dualgraph import DualGraph, GraphError, glue_pieces
from .instances import as_graph
from .moduli import ExtModulus


@dataclass(frozen=True)
class Seamed:
    piece: object
    extra: int = 0


@dataclass(frozen=True)
class SplitStructure:
    core: object  # Node over Seamed, or None
    leaf_extra: tuple = ()
    chain: int = 0

    @property
    def arity(self) -> int:
        return 1 if self.core is None else trees.arity(self.core)

    def code(self) -> str:
        if self.core is None:
            return f"(deg {self.chain})"
        _, c = trees.canonical_form(self.core, _seamed_token, _seamed_act)
        return c + " [" + " ".join(map(str, self.leaf_extra)) + "]"

    def pieces(self) -> list:
        return [] if self.core is None else [v.dec.piece for v in trees.vertices(self.core)]


def _seamed_token(s: Seamed) -> str:
    return f"{encode_dec(s.piece)}^{s.extra}"


def _seamed_act(s: Seamed, sigma) -> Seamed:
    p = s.piece
    if isinstance(p, DualGraph):
        p = p.act(sigma)
    return Seamed(p, s.extra)


def is_degenerate(x) -> bool:
    """A zero-modulus annulus, on either side."""
    if isinstance(x, Annulus):
        return x.modulus == 0
    if isinstance(x, ExtModulus):
        return not x.infinite and x.value == 0
    return False


def split_of(e) -> SplitStructure:
    """The gluing map from free elements to split structures: degenerate annuli become coinciding seams."""
    if e is TRIVIAL:
        return SplitStructure(None, (), 0)
    leaf_extra: dict[int, int] = {}

    def walk(node: Node):
        if is_degenerate(node.dec):
            c = node.children[0]
            if isinstance(c, Leaf):
                return ("chain", 1, c.label)
            r = walk(c)
            if r[0] == "chain":
                return ("chain", r[1] + 1, r[2])
            core = r[1]
            return ("core", Node(Seamed(core.dec.piece, core.dec.extra + 1), core.children))
        kids = []
        for c in node.children:
            if isinstance(c, Leaf):
                leaf_extra[c.label] = 0
                kids.append(c)
                continue
            r = walk(c)
            if r[0] == "chain":
                leaf_extra[r[2]] = r[1]
                kids.append(Leaf(r[2]))
            else:
                kids.append(r[1])
        return ("core", Node(Seamed(node.dec, 0), kids))

    r = walk(e)
    if r[0] == "chain":
        return SplitStructure(None, (), r[1])
    n = len(leaf_extra)
    return SplitStructure(r[1], tuple(leaf_extra[k] for k in range(1, n + 1)))


def dual_graph(s: SplitStructure):
    """The undecorated labeled tree: one vertex per piece and per degenerate annulus."""
    if s.core is None:
        if s.chain == 0:
            return TRIVIAL
        t = Node(None, [Leaf(1)])
        for _ in range(s.chain - 1):
            t = Node(None, [t])
        return t

    def stack(t, k):
        for _ in range(k):
            t = Node(None, [t])
        return t

    def walk(node: Node):
        kids = []
        for c in node.children:
            if isinstance(c, Leaf):
                kids.append(stack(c, s.leaf_extra[c.label - 1]))
            else:
                kids.append(walk(c))
        return stack(Node(None, kids), node.dec.extra)

    return walk(s.core)


def is_protected(s: SplitStructure) -> bool:
    """Every piece carrying a node is a nodal annulus."""
    for p in s.pieces():
        if isinstance(p, ExtModulus) and p.infinite:
            continue
        if as_graph(p).n_nodes > 0:
            return False
    return True


def erase_seams(s: SplitStructure) -> DualGraph:
    """Glue every piece along its seams and stabilize."""
    if s.core is None:
        return as_graph(Annulus(Fraction(0)))
    from .system import tree_to_graph

    return tree_to_graph(s.core, lambda d: d.piece)


# ----------------------------------------------------------------------
# independent enumeration


def enumerate_splits(n: int, max_vertices: int, pieces_of) -> dict[str, SplitStructure]:
    """All split structures of arity ``n`` whose dual graph has at most ``max_vertices`` vertices.

    ``pieces_of(k)`` lists the non-degenerate pieces with ``k`` inputs.
    """
    out: dict[str, SplitStructure] = {}
    if n == 1:
        for k in range(0, max_vertices + 1):
            s = SplitStructure(None, (), k)
            out[s.code()] = s
    for c in range(1, max_vertices + 1):
        for shape in trees.enumerate_tree_forms(n, c):
            if shape is TRIVIAL or trees.n_vertices(shape) != c:
                continue
            verts = trees.vertices(shape)
            domains = [pieces_of(v.valency) for v in verts]
            if any(not d for d in domains):
                continue
            spare = max_vertices - c
            slots = c + n  # one seam above each piece, one per input
            for extras in _compositions_upto(spare, slots):
                for decs in itertools.product(*domains):
                    core = _place(shape, decs, extras[:c])
                    s = SplitStructure(core, tuple(extras[c:]))
                    out.setdefault(s.code(), s)
    return out


def _compositions_upto(total: int, parts: int):
    for used in range(total + 1):
        for bars in itertools.combinations(range(used + parts - 1), parts - 1):
            prev, comp = -1, []
            for b in bars + (used + parts - 1,):
                comp.append(b - prev - 1)
                prev = b
            yield comp


def _place(shape: Node, decs, extras) -> Node:
    di, ei = iter(decs), iter(extras)

    def walk(node):
        d, x = next(di), next(ei)
        kids = [c if isinstance(c, Leaf) else walk(c) for c in node.children]
        return Node(Seamed(d, x), kids)

    return walk(shape)


def fr_pieces(bounds):
    """Non-degenerate framed pieces with ``k`` inputs."""

    def pieces_of(k: int):
        if k < 1:
            return []
        out = [Smooth(g, k) for g in range(bounds.max_genus + 1) if (g, k) != (0, 1)]
        if k == 1:
            out += [Annulus(q) for q in bounds.modulus_grid if q != 0]
        return out

    return pieces_of


def piece_from_graph(g: DualGraph):
    """Read a one-component boundary graph back as a framed decoration."""
    if g.n_components != 1:
        raise GraphError("a glued cluster of framed pieces must be a single component")
    if g.modulus is not None:
        return Annulus(g.modulus)
    return Smooth(g.genus, g.arity)


def hd_normalize(e):
    """Remove every zero-weight seam of a weighted split surface by gluing across it.

    ``e`` is a tree over framed pieces with a weight (length) on each seam.
    Clusters joined by zero-weight seams are glued with the geometric
    union-find gluing and re-read as a single piece.
    """
    if e is TRIVIAL:
        return e

    def walk(node: Node) -> Node:
        pieces, links, labels, boundary = [], [], {}, []

        def absorb(v: Node) -> int:
            idx = len(pieces)
            pieces.append(as_graph(v.dec))
            for slot, c in enumerate(v.children, start=1):
                if isinstance(c, Node) and c.length == 0:
                    links.append((idx, slot, absorb(c)))
                else:
                    boundary.append(c)
                    labels[(idx, slot)] = len(boundary)
            return idx

        absorb(node)
        if len(pieces) == 1:
            dec = node.dec
        else:
            dec = piece_from_graph(glue_pieces(pieces, links, labels, 0))
            if dec_arity(dec) != len(boundary):
                raise GraphError("glued cluster lost a boundary")
        kids = [c if isinstance(c, Leaf) else walk(c) for c in boundary]
        return Node(dec, kids, node.length)

    return walk(e)
