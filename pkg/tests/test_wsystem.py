from fractions import Fraction

from operad_forge import trees
from operad_forge.bounds import Bounds
from operad_forge.pushout import normalize
from operad_forge.surfaces.decorations import Annulus, Smooth
from operad_forge.surfaces.dualgraph import Component, make_graph, nodal_annulus_graph
from operad_forge.surfaces.moduli import INF, ExtModulus
from operad_forge.surfaces.wsystem import from_flat, is_protected_w, nodfr_code, to_nodfr, w_surface_pushout
from operad_forge.trees import Leaf, Node
from operad_forge.verifier import protected_w_elements, w_pushout_classes

S = w_surface_pushout()
H = Fraction(1, 2)
ONE = Fraction(1)


def flat(*items):
    """A chain from (side, value, length) triples, root first."""
    t = Leaf(1)
    for side, value, length in reversed(items):
        t = Node((side, value), [t], length)
    return t


def nf(*items):
    return normalize(S, from_flat(S, flat(*items)))


def test_half_length_annulus_between_nodes_survives():
    a = nf(("P", INF, None), ("Q", Smooth(1, 1), ONE))
    b = nf(("P", INF, None), ("P", ExtModulus(H), H), ("Q", Smooth(1, 1), ONE))
    assert a.code != b.code


def test_zero_length_annulus_is_absorbed():
    a = nf(("P", INF, None), ("Q", Smooth(1, 1), ONE))
    b = nf(("P", INF, None), ("P", ExtModulus(H), Fraction(0)), ("Q", Smooth(1, 1), ONE))
    assert a.code == b.code


def test_annulus_may_sit_on_either_side():
    a = nf(("Q", Smooth(1, 1), None), ("Q", Annulus(H), ONE), ("P", INF, ONE))
    b = nf(("Q", Smooth(1, 1), None), ("P", ExtModulus(H), ONE), ("P", INF, ONE))
    assert a.code == b.code
    c = nf(("Q", Smooth(1, 1), None), ("P", ExtModulus(Fraction(1, 4)), ONE), ("P", INF, ONE))
    assert c.code != a.code


def test_protected_predicate():
    N = nodal_annulus_graph()
    sm = make_graph([Component(1, (1,), True)], [])
    assert is_protected_w(Node(sm, [Node(N, [Leaf(1)], ONE)]))
    assert not is_protected_w(Node(sm, [Node(N, [Leaf(1)], H)]))
    nodal_torus = make_graph([Component(1, (), True), Component(0, (1,), False)], [(0, 1)])
    assert not is_protected_w(Node(nodal_torus, [Leaf(1)]))


def test_small_colimit_bijection():
    b = Bounds(max_arity=1, max_genus=1, max_vertices=2, max_nodes=1)
    nfs = w_pushout_classes(S, b)
    images = {nodfr_code(to_nodfr(t)) for t in nfs.values()}
    assert len(images) == len(nfs)
    assert images == set(protected_w_elements(b))
