from fractions import Fraction

import pytest

from operad_forge import trees
from operad_forge.bounds import Bounds
from operad_forge.surfaces import (
    INF,
    Annulus,
    Component,
    CornerCase,
    ExtModulus,
    Smooth,
    annulus_graph,
    is_stable,
    make_graph,
    nodal_annulus_graph,
    nodfr_compose,
    parse_graph,
    smooth_graph,
    stabilize,
)
from operad_forge.surfaces.decorations import SurfaceCodec, parse_dec_text
from operad_forge.surfaces.dm import cap_map, fr_map, stable_marked_skeletons
from operad_forge.surfaces.dualgraph import UNIT_GRAPH, dm_graph, dm_stabilize
from operad_forge.surfaces.enumeration import stable_boundary_graphs
from operad_forge.surfaces.instances import FrDisc, NodFrDisc
from operad_forge.surfaces.split import dual_graph, erase_seams, hd_normalize, is_protected, split_of
from operad_forge.trees import Leaf, Node

H = Fraction(1, 2)


def test_moduli():
    assert ExtModulus(H) + ExtModulus(Fraction(1, 3)) == ExtModulus(Fraction(5, 6))
    assert ExtModulus(0) + ExtModulus(H) == ExtModulus(H)
    assert INF + ExtModulus(H) == INF and ExtModulus(H) + INF == INF


def test_fr_compose():
    F = FrDisc()
    assert F.compose(Smooth(1, 2), 1, Smooth(2, 1)) == Smooth(3, 2)
    assert F.compose(Annulus(0), 1, Smooth(1, 2)) == Smooth(1, 2)
    assert F.compose(Annulus(H), 1, Annulus(H)) == Annulus(1)
    with pytest.raises(ValueError):
        Smooth(0, 1)


def test_stability():
    torus = make_graph([Component(0, (1,), True), Component(1, (), False)], [(0, 1)])
    assert is_stable(torus)
    sphere = make_graph([Component(0, (), True), Component(0, (), False), Component(0, (1,), False)], [(0, 1), (1, 2)])
    assert not is_stable(sphere)
    assert stabilize(sphere) == nodal_annulus_graph()
    assert stabilize(torus) == torus
    two = make_graph(
        [Component(0, (), True), Component(0, (), False), Component(0, (), False), Component(0, (1,), False)],
        [(0, 1), (1, 2), (2, 3)],
    )
    assert stabilize(two) == nodal_annulus_graph()


def test_nodfr_compose():
    g = nodfr_compose(smooth_graph(1, 2), 2, smooth_graph(2, 1))
    assert g.n_components == 1 and g.genus == 3 and g.arity == 2
    assert nodfr_compose(nodal_annulus_graph(), 1, nodal_annulus_graph()) == nodal_annulus_graph()
    x = smooth_graph(1, 3)
    assert nodfr_compose(UNIT_GRAPH, 1, x) == x
    assert nodfr_compose(annulus_graph(H), 1, annulus_graph(H)) == annulus_graph(1)


def test_genus_additivity():
    b = Bounds(2, 1, 2)
    N = NodFrDisc()
    elems = [x for k in (1, 2) for x in N.elements(k, b)]
    for x in elems:
        for y in elems:
            for i in range(1, x.arity + 1):
                assert N.compose(x, i, y).genus == x.genus + y.genus


def test_graph_round_trip():
    for g in stable_boundary_graphs(2, 1, 3):
        assert parse_graph(g.code) == g
        assert parse_graph(g.code).code == g.code


def test_decoration_round_trip():
    for text in ["fr g=1 m=2", "ann 3/4", "nod", "ann 1/2 side=nod"]:
        assert SurfaceCodec().encode(parse_dec_text(f"({text})")) == text


def test_small_graph_counts():
    # arity 1, genus 0, up to 2 components: the nodal annulus only
    assert [g.code for g in stable_boundary_graphs(1, 0, 2)] == [nodal_annulus_graph().code]
    # arity 1, genus <= 1, one component: the one-holed torus
    assert len(stable_boundary_graphs(1, 1, 1)) == 1


def test_fr_cap():
    d = dm_graph([Component(1, (1, 2), True)], [])
    f = fr_map(d)
    assert f.n_components == 4 and cap_map(f) == d
    d2 = dm_graph([Component(1, (1,), True), Component(1, (2,), False)], [(0, 1)])
    assert cap_map(fr_map(d2)) == d2 and fr_map(d2).n_nodes == 1 + 3
    d3 = dm_graph([Component(2, (1, 2, 3), True)], [])
    assert cap_map(fr_map(d3)) == d3 and sum(c.n_boundary for c in d3.comps) == 4
    with pytest.raises(CornerCase):
        cap_map(annulus_graph(H))
    assert stable_marked_skeletons(1, 0, 4) == []


def test_dm_stabilize_contracts_spheres():
    raw = dm_graph([Component(1, (), True), Component(0, (1,), False)], [(0, 1)])
    assert dm_stabilize(raw) == dm_graph([Component(1, (1,), True)], [])


def _chain(*decs):
    t = Leaf(1)
    for d in reversed(decs):
        t = Node(d, [t])
    return t


def test_split_structures():
    s = split_of(Node(Smooth(2, 1), [Leaf(1)]))
    assert trees.n_vertices(dual_graph(s)) == 1
    one = split_of(Node(Smooth(1, 1), [Node(Smooth(1, 1), [Leaf(1)])]))
    assert trees.n_vertices(dual_graph(one)) == 2
    coinciding = split_of(_chain(Smooth(1, 1), Annulus(0), Smooth(1, 1)))
    assert trees.n_vertices(dual_graph(coinciding)) == 3
    assert coinciding.code() != one.code()


def test_protected():
    assert is_protected(split_of(_chain(Smooth(1, 1), INF, Smooth(1, 1))))
    assert is_protected(split_of(_chain(Smooth(1, 1), Smooth(2, 1))))
    nodal_torus = make_graph([Component(1, (), True), Component(0, (1,), False)], [(0, 1)])
    assert not is_protected(split_of(_chain(nodal_torus)))


def test_erase_seams():
    g = erase_seams(split_of(Node(Smooth(1, 2), [Node(Smooth(1, 1), [Leaf(1)]), Leaf(2)])))
    assert g.n_components == 1 and g.genus == 2 and g.arity == 2
    g = erase_seams(split_of(_chain(Smooth(1, 1), INF, Smooth(1, 1))))
    assert g.n_components == 2 and g.n_nodes == 1 and g.genus == 2
    assert erase_seams(split_of(Node(Smooth(2, 1), [Leaf(1)]))) == smooth_graph(2, 1)


def test_hd_normalize():
    e = Node(Smooth(1, 2), [Node(Smooth(1, 1), [Leaf(1)], Fraction(0)), Leaf(2)])
    assert hd_normalize(e) == Node(Smooth(2, 2), [Leaf(1), Leaf(2)])
    positive = Node(Smooth(1, 2), [Node(Smooth(1, 1), [Leaf(1)], H), Leaf(2)])
    assert hd_normalize(positive) == positive
