import itertools
from fractions import Fraction

import pytest

from operad_forge import trees
from operad_forge.bounds import Bounds
from operad_forge.operad import (
    BudgetError,
    FreeOperad,
    OperadInstance,
    TreeOperad,
    TwoPointCollection,
    canonical_decorated,
    check_axioms,
    counit,
    free_compose,
    sign,
)
from operad_forge.surfaces.instances import AnnDisc, FrDisc
from operad_forge.surfaces.moduli import ExtModulus
from operad_forge.trees import TRIVIAL, Leaf, Node

TP = TwoPointCollection()


def test_free_compose_unit_and_shape():
    base = Node(("a", 2), [Leaf(1), Leaf(2)])
    assert free_compose(base, [TRIVIAL, TRIVIAL]) == base
    one = Node(("b", 1), [Leaf(1)])
    out = free_compose(base, [one, TRIVIAL])
    assert trees.n_vertices(out) == 2


def test_free_associativity_on_corollas():
    F = FreeOperad(TP)
    u = Node(("a", 2), [Leaf(1), Leaf(2)])
    v = Node(("b", 2), [Leaf(1), Leaf(2)])
    w = Node(("a", 1), [Leaf(1)])
    lhs = F.compose(u, 2, F.compose(v, 1, w))
    rhs = F.compose(F.compose(u, 2, v), 2, w)
    assert canonical_decorated(lhs, TP) == canonical_decorated(rhs, TP)


def test_single_vertex_code():
    a = Node(("a", 2), [Leaf(1), Leaf(2)])
    b = Node(("a", 2), [Leaf(2), Leaf(1)])
    c = Node(("b", 2), [Leaf(1), Leaf(2)])
    # swapping the two inputs twists a into b under the sign action
    assert canonical_decorated(b, TP) == canonical_decorated(c, TP)
    assert canonical_decorated(a, TP) != canonical_decorated(c, TP)


def _presentations(max_v, n):
    for v in range(1, max_v + 1):
        for t in trees.planar_trees(n, v):
            verts = trees.vertices(t)
            for letters in itertools.product("ab", repeat=len(verts)):
                it = iter(letters)

                def deco(node):
                    return Node((next(it), node.valency), [c if isinstance(c, Leaf) else deco(c) for c in node.children])

                yield deco(t)


def _moves(t):
    """Every presentation one sibling permutation away, with the sign twist."""
    out = []

    def paths(node, path):
        yield path
        for k, c in enumerate(node.children):
            if isinstance(c, Node):
                yield from paths(c, path + (k,))

    def at(node, path, fn):
        if not path:
            return fn(node)
        kids = list(node.children)
        kids[path[0]] = at(kids[path[0]], path[1:], fn)
        return Node(node.dec, kids)

    for p in list(paths(t, ())):
        def perm_at(node):
            res = []
            for pi in itertools.permutations(range(len(node.children))):
                letter, k = node.dec
                if sign([x + 1 for x in pi]) < 0:
                    letter = "b" if letter == "a" else "a"
                res.append(Node((letter, k), [node.children[x] for x in pi]))
            return res

        for variant in perm_at(_get(t, p)):
            out.append(at(t, p, lambda _n, v=variant: v))
    return out


def _get(t, path):
    for k in path:
        t = t.children[k]
    return t


@pytest.mark.parametrize("n", [0, 1, 2])
def test_decorated_orbits_match_codes(n):
    pres = {trees.to_sexp(t, lambda d: f"{d[0]}{d[1]}"): t for t in _presentations(3, n)}
    parent = {k: k for k in pres}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k, t in pres.items():
        for m in _moves(t):
            km = trees.to_sexp(m, lambda d: f"{d[0]}{d[1]}")
            parent[find(km)] = find(k)
    classes = {}
    for k, t in pres.items():
        classes.setdefault(find(k), set()).add(canonical_decorated(t, TP))
    assert all(len(c) == 1 for c in classes.values())
    codes = [next(iter(c)) for c in classes.values()]
    assert len(codes) == len(set(codes))


def test_counit_is_a_morphism_on_annuli():
    A = AnnDisc()
    chain = Node(ExtModulus(Fraction(1, 2)), [Node(ExtModulus(Fraction(1, 4)), [Node(ExtModulus(Fraction(1, 4)), [Leaf(1)])])])
    assert counit(A, chain) == ExtModulus(1)
    x = Node(ExtModulus(Fraction(1, 3)), [Leaf(1)])
    y = Node(ExtModulus(Fraction(1, 2)), [Leaf(1)])
    assert counit(A, free_compose(x, [y])) == A.compose(counit(A, x), 1, counit(A, y))


def test_counit_morphism_on_fr():
    F = FrDisc()
    b = Bounds(3, 1, 1)
    elems = [x for k in (1, 2) for x in F.elements(k, b)]
    for x in elems:
        for y in elems:
            for i in range(1, F.arity(x) + 1):
                cx = trees.corolla(F.arity(x), x)
                cy = trees.corolla(F.arity(y), y)
                assert F.key(counit(F, trees.partial_graft(cx, i, cy))) == F.key(F.compose(x, i, y))


def test_axioms_tree_and_annuli():
    assert check_axioms(TreeOperad(), Bounds(3, 0, 3), tuple_size=4).ok
    assert check_axioms(AnnDisc(), Bounds(1, 0, 1)).ok


class _Broken(OperadInstance):
    name = "broken"

    def arity(self, x):
        return 1

    def elements(self, n, bounds):
        return [0, 1, 2] if n == 1 else []

    def key(self, x):
        return str(x)

    def compose(self, x, i, y):
        return x - y  # not associative

    def unit(self):
        return 0


def test_axioms_negative_control():
    r = check_axioms(_Broken(), Bounds(1, 0, 1))
    assert not r.ok
    assert {v["check"] for v in r.violations} >= {"sequential"}
    assert all(v["tuple"] for v in r.violations)
    assert r.to_jsonl().count("\n") == len(r.violations)


def test_axioms_budget():
    with pytest.raises(BudgetError):
        check_axioms(TreeOperad(), Bounds(2, 0, 2), budget=10)
