"""The surface pushout NodAnn <- Ann -> Fr and the seam-erasing map to dual graphs."""

from __future__ import annotations

from ..pushout import Dec, PushoutSystem
from ..trees import TRIVIAL, Leaf, Node, parse_tree, tree_from_sexp
from .decorations import decode_dec, encode_dec
from .dualgraph import DualGraph, glue_pieces
from .instances import (
    AnnDisc,
    FrDisc,
    NodAnnDisc,
    ann_to_fr,
    ann_to_nodann,
    as_graph,
    fr_preimage,
    nodann_preimage,
)
from .moduli import ExtModulus


class PushoutCodec:
    """Text form of side-tagged surface decorations.

    Elements of the nodal side print as ``nod`` or ``ann q side=nod``;
    framed-side elements as ``fr g=G m=M`` or ``ann q``.
    """

    def __init__(self, sys: PushoutSystem):
        self.sys = sys

    def encode(self, d: Dec) -> str:
        return encode_dec(d.value)

    def decode(self, cur):
        x = decode_dec(cur)
        if isinstance(x, DualGraph):
            from ..sexp import error_at

            raise error_at(cur.items[0] if cur.items else None, "dual graphs are not pushout decorations")
        side = "P" if isinstance(x, ExtModulus) else "Q"
        return self.sys.dec(side, x)


def surface_pushout() -> PushoutSystem:
    sys = PushoutSystem(
        P=NodAnnDisc(),
        Q=FrDisc(),
        A=AnnDisc(),
        i=ann_to_nodann,
        j=ann_to_fr,
        i_pre=nodann_preimage,
        j_pre=fr_preimage,
        name="nodann*ann*fr",
    )
    sys.codec = PushoutCodec(sys)
    return sys


def parse_element(sys: PushoutSystem, text: str):
    tree = parse_tree(text, sys.codec)
    check_valency(sys, tree)
    return tree


def element_from_sexp(sys: PushoutSystem, expr):
    tree = tree_from_sexp(expr, sys.codec)
    check_valency(sys, tree)
    return tree


def check_valency(sys, tree) -> None:
    from ..trees import TreeError, vertices

    for v in vertices(tree):
        if sys.collection.arity(v.dec) != v.valency:
            raise TreeError(f"decoration {encode_dec(v.dec.value)} expects {sys.collection.arity(v.dec)} inputs, vertex has {v.valency}")


def tree_to_graph(tree, value_of=lambda dec: dec) -> DualGraph:
    """Glue the pieces of a decorated tree along its edges (the seams) and stabilize."""
    if tree is TRIVIAL:
        from .dualgraph import UNIT_GRAPH

        return UNIT_GRAPH
    pieces: list[DualGraph] = []
    links: list[tuple[int, int, int]] = []
    leaf_labels: dict = {}

    def walk(node: Node) -> int:
        idx = len(pieces)
        pieces.append(as_graph(value_of(node.dec)))
        for slot, c in enumerate(node.children, start=1):
            if isinstance(c, Leaf):
                leaf_labels[(idx, slot)] = c.label
            else:
                links.append((idx, slot, walk(c)))
        return idx

    root = walk(tree)
    return glue_pieces(pieces, links, leaf_labels, root)


def erase_seams_free(tree) -> DualGraph:
    """The seam-erasing map on free elements over NodAnn ⊔ Fr."""
    return tree_to_graph(tree, lambda d: d.value)
