"""Discrete models of framed, nodal and marked surface operads."""

from .decorations import NODAL, Annulus, Smooth, SurfaceCodec, decode_dec, encode_dec
from .dualgraph import (
    Component,
    CornerCase,
    DualGraph,
    GraphError,
    annulus_graph,
    is_stable,
    make_graph,
    nodal_annulus_graph,
    nodfr_compose,
    parse_graph,
    smooth_graph,
    stabilize,
)
from .instances import AnnDisc, FrDisc, NodAnnDisc, NodFrDisc, as_graph
from .moduli import INF, ZERO, ExtModulus, ann_compose
