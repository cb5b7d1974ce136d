"""Amalgamated pushouts P *_A Q of operads as a rewriting system on decorated trees.

Free elements are trees whose vertices carry a :class:`Dec` tagged with the
side it comes from.  Two kinds of single steps generate the identification:

* ``CONTRACT`` (~1): an edge between two vertices of the same side is
  contracted and the vertex decorations are composed in that operad.
* ``SWAP`` (~2): a vertex decorated by ``i(a)`` is relabeled ``j(a)`` or back.

``normal_form`` follows a fixed orientation of SWAP: an A-image vertex goes to
the P side exactly when one of its neighbours is a P vertex outside the image
of ``i``, and to the Q side otherwise.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Callable

from . import trees
from .operad import OperadInstance, canonical_decorated_form
from .trees import TRIVIAL, Leaf, Node

CONTRACT = "CONTRACT_SAME_SIDE"
SWAP = "SWAP_SIDE"


class _Undecided:
    __slots__ = ()

    def __repr__(self):
        return "UNDECIDED"

    def __bool__(self):
        raise TypeError("UNDECIDED has no truth value")


UNDECIDED = _Undecided()


class NonTermination(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class Dec:
    side: str
    value: object = field(compare=False)
    token: str = ""

    def __hash__(self):
        return hash((self.side, self.token))

    def __eq__(self, other):
        return isinstance(other, Dec) and self.side == other.side and self.token == other.token


@dataclass(frozen=True)
class RewriteRule:
    kind: str
    locus: tuple  # path of child positions from the root
    detail: str = ""

    def describe(self) -> str:
        where = "root" if not self.locus else ".".join(map(str, self.locus))
        return f"{self.kind}@{where}{(' ' + self.detail) if self.detail else ''}"


class PushoutSystem:
    """The diagram P <-i- A -j-> Q plus image tests.

    ``i_pre`` and ``j_pre`` return the A-preimage of a P or Q element, or
    ``None`` when there is none.  ``prenormalize`` is an optional hook applied
    before the oriented strategy; ``swap_first`` runs a SWAP pass before the
    first contraction sweep.
    """

    def __init__(
        self,
        P: OperadInstance,
        Q: OperadInstance,
        A: OperadInstance,
        i: Callable,
        j: Callable,
        i_pre: Callable,
        j_pre: Callable,
        name: str = "pushout",
        codec=None,
        prenormalize: Callable | None = None,
        swap_first: bool = False,
    ):
        self.P, self.Q, self.A = P, Q, A
        self.i, self.j = i, j
        self.i_pre, self.j_pre = i_pre, j_pre
        self.name = name
        self.codec = codec
        self.prenormalize = prenormalize
        self.swap_first = swap_first
        self.collection = SumCollection(self)

    # decorations -------------------------------------------------------
    def op(self, side: str) -> OperadInstance:
        return self.P if side == "P" else self.Q

    def dec(self, side: str, value) -> Dec:
        return Dec(side, value, side + ":" + self.op(side).key(value))

    def preimage(self, d: Dec):
        return self.i_pre(d.value) if d.side == "P" else self.j_pre(d.value)

    def genuine_p(self, d: Dec) -> bool:
        return d.side == "P" and self.i_pre(d.value) is None

    def swapped(self, d: Dec) -> Dec:
        a = self.preimage(d)
        if a is None:
            raise ValueError(f"{d.token} is not in the image of A")
        return self.dec("Q", self.j(a)) if d.side == "P" else self.dec("P", self.i(a))

    def unit_tree(self):
        return trees.corolla(1, self.dec("Q", self.Q.unit()))

    # codes -------------------------------------------------------------
    def canonical(self, e):
        """``(canonical representative, code)``; the trivial tree is the Q unit."""
        if e is TRIVIAL:
            e = self.unit_tree()
        return canonical_decorated_form(e, self.collection)

    def code(self, e) -> str:
        return self.canonical(e)[1]

    def to_sexp(self, e) -> str:
        enc = self.codec.encode if self.codec else (lambda d: d.token)
        return trees.to_sexp(e, enc)


class SumCollection(OperadInstance):
    """The collection P ⊔ Q with side-tagged decorations."""

    def __init__(self, sys: PushoutSystem):
        self.sys = sys
        self.name = f"{sys.P.name}+{sys.Q.name}"

    def arity(self, d):
        return self.sys.op(d.side).arity(d.value)

    def elements(self, n, bounds):
        return [self.sys.dec(s, x) for s in "PQ" for x in self.sys.op(s).elements(n, bounds)]

    def act(self, d, sigma):
        return self.sys.dec(d.side, self.sys.op(d.side).act(d.value, sigma))

    def key(self, d):
        return d.token


# ----------------------------------------------------------------------
# tree surgery


def _at(t: Node, path: tuple) -> Node:
    for k in path:
        t = t.children[k]
    return t


def _replace(t: Node, path: tuple, fn: Callable[[Node], Node]) -> Node:
    if not path:
        return fn(t)
    k = path[0]
    kids = list(t.children)
    kids[k] = _replace(kids[k], path[1:], fn)
    return Node(t.dec, kids, t.length)


def _vertex_paths(t) -> list[tuple]:
    if t is TRIVIAL:
        return []
    out = []
    stack = [((), t)]
    while stack:
        path, node = stack.pop()
        out.append(path)
        for k in range(len(node.children) - 1, -1, -1):
            c = node.children[k]
            if isinstance(c, Node):
                stack.append((path + (k,), c))
    return out


def contract_edge(sys: PushoutSystem, t: Node, child_path: tuple) -> Node:
    """Contract the edge above the vertex at ``child_path`` (a non-root vertex)."""
    parent_path, k = child_path[:-1], child_path[-1]

    def merge(p: Node) -> Node:
        c = p.children[k]
        if p.dec.side != c.dec.side:
            raise ValueError("contraction needs two vertices of the same side")
        side = p.dec.side
        value = sys.op(side).compose(p.dec.value, k + 1, c.dec.value)
        kids = p.children[:k] + c.children + p.children[k + 1:]
        return Node(sys.dec(side, value), kids, p.length)

    return _replace(t, parent_path, merge)


def swap_vertex(sys: PushoutSystem, t: Node, path: tuple) -> Node:
    return _replace(t, path, lambda v: Node(sys.swapped(v.dec), v.children, v.length))


def _neighbours(t: Node, path: tuple) -> list[Node]:
    v = _at(t, path)
    out = [c for c in v.children if isinstance(c, Node)]
    if path:
        out.append(_at(t, path[:-1]))
    return out


def swap_target(sys: PushoutSystem, t: Node, path: tuple) -> str:
    return "P" if any(sys.genuine_p(n.dec) for n in _neighbours(t, path)) else "Q"


def contraction_loci(t) -> list[tuple]:
    """Child paths of every same-side edge, deepest first then left to right."""
    out = []
    for path in _vertex_paths(t):
        if not path:
            continue
        v = _at(t, path)
        if _at(t, path[:-1]).dec.side == v.dec.side:
            out.append(path)
    out.sort(key=lambda p: (-len(p), p))
    return out


def forced_swaps(sys: PushoutSystem, t) -> list[tuple]:
    out = []
    for path in _vertex_paths(t):
        v = _at(t, path)
        if sys.preimage(v.dec) is None:
            continue
        if swap_target(sys, t, path) != v.dec.side:
            out.append(path)
    return out


def applicable_rules(sys: PushoutSystem, e) -> list[RewriteRule]:
    """Every contraction and every swap forced by the orientation."""
    if e is TRIVIAL:
        return []
    rules = [RewriteRule(CONTRACT, p) for p in contraction_loci(e)]
    rules += [RewriteRule(SWAP, p, f"-> {swap_target(sys, e, p)}") for p in forced_swaps(sys, e)]
    rules.sort(key=lambda r: (r.kind, r.locus))
    return rules


def apply_rule(sys: PushoutSystem, e, rule: RewriteRule):
    if rule.kind == CONTRACT:
        return contract_edge(sys, e, rule.locus)
    return swap_vertex(sys, e, rule.locus)


# ----------------------------------------------------------------------
# normal forms


@dataclass
class Normalized:
    tree: object
    code: str
    steps: int
    measure: int


def termination_measure(sys: PushoutSystem, e) -> int:
    """#vertices + #A-image vertices."""
    if e is TRIVIAL:
        return 0
    vs = trees.vertices(e)
    return len(vs) + sum(1 for v in vs if sys.preimage(v.dec) is not None)


def normalize(sys: PushoutSystem, e, step_budget: int = 10_000) -> Normalized:
    if e is TRIVIAL:
        e = sys.unit_tree()
    start = e
    if sys.prenormalize is not None:
        e = sys.prenormalize(e)
    measure = termination_measure(sys, e)
    steps = 0

    def tick():
        nonlocal steps
        steps += 1
        if steps > step_budget:
            raise NonTermination(f"step budget {step_budget} exhausted on {sys.code(start)}")

    first = True
    while True:
        if not (first and sys.swap_first):
            loci = contraction_loci(e)
            while loci:
                e = contract_edge(sys, e, loci[0])
                tick()
                loci = contraction_loci(e)
        first = False
        pending = forced_swaps(sys, e)
        if not pending:
            if contraction_loci(e):
                continue
            break
        for path in pending:
            v = _at(e, path)
            if sys.preimage(v.dec) is not None and swap_target(sys, e, path) != v.dec.side:
                e = swap_vertex(sys, e, path)
                tick()
    node, code = sys.canonical(e)
    return Normalized(node, code, steps, measure)


def normal_form(sys: PushoutSystem, e, step_budget: int = 10_000) -> str:
    return normalize(sys, e, step_budget).code


# ----------------------------------------------------------------------
# closure oracle


def single_steps(sys: PushoutSystem, e) -> list:
    """All unoriented single steps: every contraction and every swap either way."""
    out = [contract_edge(sys, e, p) for p in contraction_loci(e)]
    for path in _vertex_paths(e):
        if sys.preimage(_at(e, path).dec) is not None:
            out.append(swap_vertex(sys, e, path))
    return out


def closure(sys: PushoutSystem, e, budget: int) -> dict | None:
    """Codes reachable by single steps, or ``None`` past ``budget`` states."""
    if e is TRIVIAL:
        e = sys.unit_tree()
    seen = {sys.code(e): e}
    queue = deque([e])
    while queue:
        cur = queue.popleft()
        for nxt in single_steps(sys, cur):
            k = sys.code(nxt)
            if k not in seen:
                if len(seen) >= budget:
                    return None
                seen[k] = nxt
                queue.append(nxt)
    return seen


def equal_in_pushout(sys: PushoutSystem, e1, e2, budget: int = 5_000):
    """True iff the two closures meet; ``UNDECIDED`` when a closure exceeds ``budget``."""
    c1 = closure(sys, e1, budget)
    if c1 is None:
        return UNDECIDED
    if sys.code(e2) in c1:
        return True
    c2 = closure(sys, e2, budget)
    if c2 is None:
        return UNDECIDED
    return not c1.keys().isdisjoint(c2.keys())


# ----------------------------------------------------------------------
# confluence sampling


@dataclass
class ConfluenceReport:
    start: str
    trials: int
    seed: int
    outcomes: dict

    @property
    def ok(self) -> bool:
        return len(self.outcomes) == 1

    def to_json(self) -> dict:
        return {
            "start": self.start,
            "trials": self.trials,
            "seed": self.seed,
            "outcomes": dict(sorted(self.outcomes.items())),
            "status": "PASS" if self.ok else "FAIL",
        }


def random_maximal_run(sys: PushoutSystem, e, rng: random.Random, step_budget: int = 10_000) -> str:
    if e is TRIVIAL:
        e = sys.unit_tree()
    if sys.prenormalize is not None:
        e = sys.prenormalize(e)
    for _ in range(step_budget):
        rules = applicable_rules(sys, e)
        if not rules:
            return sys.code(e)
        e = apply_rule(sys, e, rng.choice(rules))
    raise NonTermination(f"random run exceeded {step_budget} steps")


def confluence_sample(sys: PushoutSystem, e, trials: int, seed: int) -> ConfluenceReport:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    outcomes: Counter = Counter()
    for t in range(trials):
        rng = random.Random(f"{seed}:{t}")
        outcomes[random_maximal_run(sys, e, rng)] += 1
    return ConfluenceReport(sys.code(e), trials, seed, dict(outcomes))


# ----------------------------------------------------------------------
# bounded enumeration of classes


@dataclass
class ClassTable:
    """Pushout classes reachable from free elements with at most ``max_vertices`` vertices.

    ``cost[code]`` is the fewest vertices of a free element in the class;
    ``reps[n]`` holds one normal-form tree per relabeling orbit of arity ``n``.
    """

    cost: dict
    reps: dict
    weight: dict

    def codes(self, n: int | None = None) -> list[str]:
        return sorted(c for c in self.cost if n is None or self.arity[c] == n)

    def __post_init__(self):
        self.arity = {}


def _orbit(sys: PushoutSystem, t) -> dict:
    n = trees.arity(t)
    out = {}
    for sigma in itertools.permutations(range(1, n + 1)):
        node, code = sys.canonical(trees.act(t, sigma))
        out.setdefault(code, node)
    return out


def reachable_classes(
    sys: PushoutSystem,
    bounds,
    vertex_weight: Callable = lambda d: 0,
    max_weight: int | None = None,
) -> ClassTable:
    """All classes of free elements within ``bounds`` (arity, vertices, additive weight).

    Works by dynamic programming on the vertex count: a class of cost ``c``
    is the normal form of a root decoration grafted with leaves and classes
    whose costs sum to ``c - 1``.  This is exact because normal forms descend
    along grafting; small bounds are cross-checked against brute force in the
    test suite.  Roots with a trivial symmetric action only need multisets of
    children, every other root is grafted with ordered tuples.
    """
    max_n, max_v = bounds.max_arity, bounds.max_vertices
    cost: dict[str, int] = {}
    arity_of: dict[str, int] = {}
    weight_of: dict[str, int] = {}
    reps: dict[int, list] = {n: [] for n in range(1, max_n + 1)}
    by_cost: dict[int, list] = {}  # cost -> [(tree, arity, weight)]

    def record(t, c, w):
        orbit = _orbit(sys, t)
        first = min(orbit)
        if first in cost:
            return
        n = trees.arity(t)
        for code in orbit:
            cost[code] = c
            arity_of[code] = n
            weight_of[code] = w
        reps[n].append(orbit[first])
        by_cost.setdefault(c, []).append((orbit[first], n, w))

    roots = [d for k in range(1, max_n + 1) for d in sys.collection.elements(k, bounds)]
    roots.sort(key=lambda d: d.token)
    for c in range(1, max_v + 1):
        for d in roots:
            k = sys.collection.arity(d)
            wd = vertex_weight(d)
            if max_weight is not None and wd > max_weight:
                continue
            symmetric = all(sys.collection.act(d, s) == d for s in itertools.permutations(range(1, k + 1)))
            for parts in _child_tuples(by_cost, k, c - 1, max_n, symmetric):
                w = wd + sum(p[2] for p in parts if p is not None)
                if max_weight is not None and w > max_weight:
                    continue
                kids = [TRIVIAL if p is None else p[0] for p in parts]
                base = trees.corolla(k, d)
                nf = normalize(sys, trees.graft(base, kids)).tree
                record(nf, c, w)
    table = ClassTable(cost, reps, weight_of)
    table.arity = arity_of
    return table


def _child_tuples(by_cost: dict, k: int, budget: int, max_n: int, symmetric: bool):
    """Tuples of ``k`` children (``None`` = leaf) with total cost ``budget``, total arity <= ``max_n``."""
    options = [(0, 1, None)]
    for c in sorted(by_cost):
        if c <= budget:
            options += [(c, item[1], item) for item in by_cost[c]]

    def rec(start, slots, cost_left, arity_left):
        if slots == 0:
            if cost_left == 0:
                yield ()
            return
        # every remaining slot needs arity >= 1
        for ix in range(start if symmetric else 0, len(options)):
            c, n, item = options[ix]
            if c > cost_left:
                break
            if n > arity_left - (slots - 1):
                continue
            for rest in rec(ix, slots - 1, cost_left - c, arity_left - n):
                yield (item,) + rest

    yield from (list(t) for t in rec(0, k, budget, max_n))
