import random
from fractions import Fraction

import pytest

from operad_forge import trees
from operad_forge.bounds import Bounds
from operad_forge.operad import OperadInstance
from operad_forge.pushout import (
    CONTRACT,
    SWAP,
    UNDECIDED,
    NonTermination,
    PushoutSystem,
    applicable_rules,
    closure,
    confluence_sample,
    equal_in_pushout,
    normal_form,
    normalize,
    reachable_classes,
    termination_measure,
)
from operad_forge.surfaces.decorations import dec_genus
from operad_forge.surfaces.system import parse_element, surface_pushout
from operad_forge.trees import TRIVIAL, Leaf, Node
from operad_forge.verifier import brute_force_classes, random_free_element

S = surface_pushout()


def el(text):
    return parse_element(S, text)


def test_annuli_add():
    assert normal_form(S, el("(ann 1/2 (ann 1/3 #1))")) == normal_form(S, el("(ann 5/6 #1)"))


def test_nodal_chain_collapses():
    assert normal_form(S, el("(nod (ann 1/2 (nod #1)))")) == normal_form(S, el("(nod #1)"))
    assert normal_form(S, el("(nod (nod (nod #1)))")) == normal_form(S, el("(nod #1)"))


def test_unit_absorbed():
    assert normal_form(S, el("(fr g=1 m=2 (ann 0 #1) #2)")) == normal_form(S, el("(fr g=1 m=2 #1 #2)"))


def test_torus_between_nodes_is_distinct():
    a = normal_form(S, el("(nod (fr g=1 m=1 (nod #1)))"))
    assert a != normal_form(S, el("(nod #1)"))
    assert a != normal_form(S, el("(fr g=1 m=1 #1)"))


def test_applicable_rules():
    two_p = el("(nod (nod #1))")
    rules = applicable_rules(S, two_p)
    assert [r.kind for r in rules] == [CONTRACT]
    single = el("(ann 1/2 side=nod #1)")
    assert [r.kind for r in applicable_rules(S, single)] == [SWAP]
    mixed = el("(fr g=1 m=1 (nod #1))")
    assert applicable_rules(S, mixed) == []


def test_equal_in_pushout():
    e = el("(ann 1/2 #1)")
    assert equal_in_pushout(S, e, el("(ann 1/2 side=nod #1)")) is True
    assert equal_in_pushout(S, e, el("(ann 1/3 #1)")) is False
    assert equal_in_pushout(S, el("(nod (ann 1/4 (nod #1)))"), el("(nod #1)")) is True


def test_closure_budget_is_undecided():
    e = el("(nod (ann 1/2 (ann 1/4 (nod #1))))")
    assert closure(S, e, 1) is None
    assert equal_in_pushout(S, e, el("(fr g=1 m=1 #1)"), budget=1) is UNDECIDED


def test_confluence_on_nodal_chain():
    r = confluence_sample(S, el("(nod (ann 1/2 (nod #1)))"), 100, 0)
    assert r.ok and list(r.outcomes.values()) == [100]


def test_termination_measure_bounds_steps():
    rng = random.Random(3)
    b = Bounds()
    for _ in range(200):
        e = random_free_element(S, rng, b)
        r = normalize(S, e)
        assert r.steps <= r.measure == termination_measure(S, e)


def test_step_budget():
    with pytest.raises(NonTermination):
        normalize(S, el("(nod (nod (nod #1)))"), step_budget=1)


def test_descent_along_grafting():
    rng = random.Random(11)
    b = Bounds(max_arity=3, max_genus=2, max_vertices=3)
    for _ in range(150):
        x = random_free_element(S, rng, b)
        y = random_free_element(S, rng, b)
        i = rng.randint(1, trees.arity(x))
        lhs = normal_form(S, trees.partial_graft(x, i, y))
        nx, ny = normalize(S, x).tree, normalize(S, y).tree
        assert lhs == normal_form(S, trees.partial_graft(nx, i, ny))


@pytest.mark.parametrize("bb", [Bounds(2, 1, 3), Bounds(3, 2, 2), Bounds(1, 3, 4)])
def test_class_table_matches_brute_force(bb):
    table = reachable_classes(S, bb, lambda d: dec_genus(d.value), bb.max_genus)
    assert set(table.cost) == brute_force_classes(S, bb)


def test_trivial_tree_is_the_unit():
    assert normal_form(S, TRIVIAL) == normal_form(S, el("(ann 0 #1)"))


class _Subtract(OperadInstance):
    """Arity-1 'operad' with a non-associative composition."""

    name = "subtract"

    def arity(self, x):
        return 1

    def elements(self, n, bounds):
        return [1, 2, 3] if n == 1 else []

    def key(self, x):
        return str(x)

    def compose(self, x, i, y):
        return x - y

    def unit(self):
        return 0


def test_confluence_negative_control():
    op = _Subtract()
    bad = PushoutSystem(op, op, op, lambda a: a, lambda a: a, lambda x: None, lambda x: None, name="bad")
    e = Node(bad.dec("P", 1), [Node(bad.dec("P", 2), [Node(bad.dec("P", 3), [Leaf(1)])])])
    r = confluence_sample(bad, e, 100, 0)
    assert not r.ok and len(r.outcomes) == 2
