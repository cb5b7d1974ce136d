import itertools

import pytest
from hypothesis import given, settings, strategies as st

from operad_forge import trees
from operad_forge.sexp import SexpError
from operad_forge.trees import TRIVIAL, TreeError, canonicalize, corolla, graft, partial_graft


def test_corollas():
    assert trees.arity(corolla(0)) == 0 and trees.n_vertices(corolla(0)) == 1
    assert trees.leaves(corolla(1)) == [1]
    assert trees.leaves(corolla(3)) == [1, 2, 3]


def test_graft_units():
    c2 = corolla(2)
    assert canonicalize(graft(c2, [TRIVIAL, TRIVIAL])) == canonicalize(c2)
    assert canonicalize(graft(TRIVIAL, [c2])) == canonicalize(c2)
    assert canonicalize(partial_graft(c2, 1, TRIVIAL)) == canonicalize(c2)


def test_graft_shape():
    t = graft(corolla(2), [corolla(1), corolla(3)])
    assert trees.n_vertices(t) == 3 and trees.arity(t) == 4
    t = partial_graft(corolla(2), 1, corolla(1))
    assert trees.n_vertices(t) == 2 and trees.arity(t) == 2


def test_sequential_identity():
    u, v, w = corolla(2), corolla(2), corolla(1)
    for i in (1, 2):
        for j in (1, 2):
            lhs = partial_graft(u, i, partial_graft(v, j, w))
            rhs = partial_graft(partial_graft(u, i, v), i - 1 + j, w)
            assert canonicalize(lhs) == canonicalize(rhs)
    # the naive bracketing is not an identity
    lhs = partial_graft(partial_graft(u, 1, v), 2, w)
    rhs = partial_graft(u, 1, partial_graft(v, 1, w))
    assert canonicalize(lhs) != canonicalize(rhs)


def test_mirror_presentations():
    a = trees.parse_tree("(_ (_ #2 #1) #3)")
    b = trees.parse_tree("(_ #3 (_ #1 #2))")
    assert canonicalize(a) == canonicalize(b)
    c = trees.parse_tree("(_ #3 (_ #1 #2) )")
    assert canonicalize(a) == canonicalize(c)
    d = trees.parse_tree("(_ (_ #1 #3) #2)")
    assert canonicalize(a) != canonicalize(d)


def test_enumeration_small():
    assert trees.enumerate_trees(1, 1) == sorted(["|", canonicalize(corolla(1))])
    assert trees.enumerate_trees(0, 1) == [canonicalize(corolla(0))]


def _orbit_count(n, max_v):
    seen = set()
    for v in range(1, max_v + 1):
        for t in trees.planar_trees(n, v):
            seen.add(canonicalize(t))
    return len(seen)


@pytest.mark.parametrize("n,v", [(2, 4), (3, 3), (0, 4), (1, 3)])
def test_enumeration_counts_against_planar_filter(n, v):
    listed = [c for c in trees.enumerate_trees(n, v) if c != "|"]
    assert len(listed) == _orbit_count(n, v)


def test_known_counts():
    # rooted unlabeled trees on 1..4 vertices: 1, 1, 2, 4
    assert len(trees.enumerate_trees(0, 4)) == 8


def test_round_trip_canonical_output():
    for t in trees.enumerate_tree_forms(3, 3):
        s = trees.to_sexp(t)
        assert trees.to_sexp(trees.parse_tree(s)) == s


def test_lengths_round_trip():
    s = "(_ (_ @1/2 #1) (_ @1 #2))"
    assert trees.to_sexp(trees.parse_tree(s, allow_lengths=True)) == s
    with pytest.raises(SexpError):
        trees.parse_tree(s)


@pytest.mark.parametrize(
    "text,line,col",
    [("(_ #1\n  (_ #x))", 2, 6), ("(_ #1", 1, 1), ("(_ #1 #1)", 1, 1)],
)
def test_parse_errors_have_positions(text, line, col):
    with pytest.raises((SexpError, TreeError)) as info:
        trees.parse_tree(text)
    if isinstance(info.value, SexpError):
        assert (info.value.line, info.value.column) == (line, col)


def test_bad_labels_rejected():
    with pytest.raises((SexpError, TreeError)):
        trees.parse_tree("(_ #1 #3)")


@st.composite
def labeled_trees(draw, max_v=5, max_n=4):
    n = draw(st.integers(0, max_n))
    v = draw(st.integers(1, max_v))
    shapes = trees.planar_shapes(v, n)
    shape = draw(st.sampled_from(shapes))
    perm = draw(st.permutations(range(1, n + 1)))
    return trees.shape_to_tree(shape, perm)


@settings(max_examples=200, deadline=None)
@given(labeled_trees(), st.data())
def test_action_laws(t, data):
    n = trees.arity(t)
    s = tuple(data.draw(st.permutations(range(1, n + 1))))
    u = tuple(data.draw(st.permutations(range(1, n + 1))))
    assert canonicalize(trees.act(t, tuple(range(1, n + 1)))) == canonicalize(t)
    lhs = trees.act(trees.act(t, s), u)
    rhs = trees.act(t, trees.compose_perm(s, u))
    assert canonicalize(lhs) == canonicalize(rhs)


@settings(max_examples=200, deadline=None)
@given(labeled_trees(), st.randoms(use_true_random=False))
def test_code_invariant_under_sibling_shuffles(t, rnd):
    def shuffle(node):
        if isinstance(node, trees.Leaf):
            return node
        kids = [shuffle(c) for c in node.children]
        rnd.shuffle(kids)
        return trees.Node(node.dec, kids)

    assert canonicalize(shuffle(t)) == canonicalize(t)


@settings(max_examples=100, deadline=None)
@given(labeled_trees(max_v=3, max_n=3), labeled_trees(max_v=3, max_n=3), labeled_trees(max_v=3, max_n=3), st.data())
def test_graft_associativity(u, v, w, data):
    if trees.arity(u) == 0 or trees.arity(v) == 0:
        return
    i = data.draw(st.integers(1, trees.arity(u)))
    j = data.draw(st.integers(1, trees.arity(v)))
    lhs = partial_graft(u, i, partial_graft(v, j, w))
    rhs = partial_graft(partial_graft(u, i, v), i - 1 + j, w)
    assert canonicalize(lhs) == canonicalize(rhs)
