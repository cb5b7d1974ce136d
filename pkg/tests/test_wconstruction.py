import random
from fractions import Fraction

from operad_forge import trees
from operad_forge.bounds import Bounds
from operad_forge.operad import counit
from operad_forge.surfaces.instances import AnnDisc, FrDisc
from operad_forge.surfaces.moduli import ExtModulus
from operad_forge.surfaces.decorations import Smooth
from operad_forge.trees import TRIVIAL, Leaf, Node
from operad_forge.wconstruction import (
    WOperad,
    random_w_element,
    w_canonical,
    w_compose,
    w_contract,
    w_counit,
    w_partial,
)

A = AnnDisc()
F = FrDisc()
H, Q = Fraction(1, 2), Fraction(1, 4)


def test_contract_zero_edge():
    e = Node(ExtModulus(H), [Node(ExtModulus(Q), [Leaf(1)], Fraction(0))])
    assert w_contract(A, e) == Node(ExtModulus(Fraction(3, 4)), [Leaf(1)])


def test_contract_identity_without_zeros():
    e = Node(ExtModulus(H), [Node(ExtModulus(Q), [Leaf(1)], H)])
    assert w_contract(A, e) == e


def test_contract_chain_equals_counit():
    e = Node(Smooth(1, 2), [Node(Smooth(0, 2), [Leaf(1), Leaf(2)], Fraction(0)), Node(Smooth(1, 1), [Leaf(3)], Fraction(0))])
    c = w_contract(F, e)
    assert trees.n_vertices(c) == 1 and c.dec == w_counit(F, e)


def test_compose_inserts_length_one():
    u = trees.corolla(2, Smooth(0, 2))
    v = trees.corolla(1, Smooth(1, 1))
    w = w_partial(u, 2, v)
    assert [x.length for x in trees.vertices(w)] == [None, Fraction(1)]
    assert w_compose(u, [TRIVIAL, v]) == w


def test_unit_element():
    W = WOperad(F)
    u = Node(Smooth(0, 2), [Leaf(1), Node(F.unit(), [Leaf(2)], Fraction(0))])
    assert w_canonical(F, u)[1] == W.key(trees.corolla(2, Smooth(0, 2)))
    x = trees.corolla(2, Smooth(1, 2))
    assert W.key(W.compose(W.unit(), 1, x)) == W.key(x)


def test_counit_is_a_morphism():
    rng = random.Random(5)
    b = Bounds(3, 1, 3)
    for _ in range(200):
        x = random_w_element(F, rng, rng.randint(1, 3), 3, b)
        y = random_w_element(F, rng, rng.randint(1, 3), 3, b)
        i = rng.randint(1, trees.arity(x))
        assert F.key(w_counit(F, w_partial(x, i, y))) == F.key(F.compose(w_counit(F, x), i, w_counit(F, y)))
        assert w_counit(F, w_contract(F, x)) == w_counit(F, x)


def test_canonical_lengths_positive():
    W = WOperad(A, 3)
    for e in W.elements(1, Bounds(1, 0, 3, modulus_grid=(0, H))):
        assert e is TRIVIAL or all(v.length is None or v.length > 0 for v in trees.vertices(e))
