"""The Fr and cap maps between marked stable curves and surfaces with boundary.

Skeleton level only: ``fr_map`` replaces each marked point by a node to a
fresh genus-0 component carrying the matching boundary circle; ``cap_map``
turns boundary circles into marked points and stabilizes.
"""

from __future__ import annotations

from .dualgraph import Component, CornerCase, DualGraph, GraphError, dm_stabilize, is_dm_stable, make_graph
from .enumeration import dm_stable, enumerate_graphs


def fr_map(d: DualGraph) -> DualGraph:
    if d.kind != "dm":
        raise GraphError("fr_map expects a marked curve")
    if d.n_components == 1 and d.genus == 0 and d.arity == 1:
        raise CornerCase("arity-1 genus-0 curve has no stable model")
    if not is_dm_stable(d):
        raise GraphError("fr_map expects a stable marked curve")
    comps = [Component(c.genus, (), False) for c in d.comps]
    edges = list(d.edges())
    for i, c in enumerate(d.comps):
        for k in c.inputs:
            comps.append(Component(0, (k,), False))
            edges.append((i, len(comps) - 1))
        if c.out:
            comps.append(Component(0, (), True))
            edges.append((i, len(comps) - 1))
    return make_graph(comps, edges, None, "dg")


def cap_map(g: DualGraph) -> DualGraph:
    """Cap every boundary circle with a marked disc, then stabilize as a marked curve."""
    if g.kind != "dg":
        raise GraphError("cap_map expects a surface with boundary")
    comps = [Component(c.genus, c.inputs, c.out) for c in g.comps]
    raw = make_graph(comps, g.edges(), None, "dm")
    return dm_stabilize(raw)


def stable_marked_skeletons(arity: int, max_genus: int, max_components: int) -> list[DualGraph]:
    return enumerate_graphs(arity, max_genus, max_components, "dm", dm_stable)
