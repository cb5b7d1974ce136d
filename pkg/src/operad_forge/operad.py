"""Enumerable set operads, symmetric collections, and the free operad.

An instance is any object implementing the small contract below.  Elements
are plain Python values; ``key`` must be injective on elements and is used
both for equality and as the total order required by canonical codes.

Permutations are tuples ``sigma`` with ``sigma[i-1] = sigma(i)``.  The right
action ``act(x, sigma)`` renames inputs so that input ``i`` of the result is
input ``sigma(i)`` of ``x``; this is the labeling action ``lambda -> lambda o sigma``.
"""

from __future__ import annotations

import itertools
import json
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import trees
from .trees import TRIVIAL, Leaf, Node


class BudgetError(RuntimeError):
    """An enumeration or search exceeded its configured budget."""


class OperadInstance:
    """Contract for a symmetric collection with an operad structure.

    Subclasses override the methods they need.  A bare symmetric collection
    (no composition) leaves ``compose`` and ``unit`` unimplemented.
    """

    name = "operad"

    def arity(self, x) -> int:
        raise NotImplementedError

    def elements(self, n: int, bounds) -> list:
        raise NotImplementedError

    def act(self, x, sigma: Sequence[int]):
        return x

    def key(self, x) -> str:
        raise NotImplementedError

    def size(self, x) -> int:
        """Complexity measure used to bound triple checks."""
        return 1

    def compose(self, x, i: int, y):
        raise NotImplementedError

    def unit(self):
        raise NotImplementedError

    # derived ---------------------------------------------------------------

    def gamma(self, x, parts: Sequence):
        """Full composition ``gamma(x; parts)``, built from partial compositions."""
        k = self.arity(x)
        if len(parts) != k:
            raise ValueError(f"{self.name}: arity mismatch ({k} inputs, {len(parts)} parts)")
        out = x
        for i in range(k, 0, -1):
            out = self.compose(out, i, parts[i - 1])
        return out

    def equal(self, x, y) -> bool:
        return self.key(x) == self.key(y)

    def token(self, x) -> str:
        return self.key(x)

    # serialization hooks used by the tree codec
    def encode(self, x) -> str:
        return self.token(x)

    def decode(self, cursor):
        raise NotImplementedError(f"{self.name} has no textual decoder")


# ---------------------------------------------------------------------------
# symmetric collections used as decoration domains


class TwoPointCollection(OperadInstance):
    """X_n = {a, b} in every arity.

    With ``twisted`` the symmetric group acts through the sign character
    (odd permutations swap ``a`` and ``b``); otherwise the action is trivial.
    """

    def __init__(self, twisted: bool = True, max_arity: int = 3):
        self.twisted = twisted
        self.max_arity = max_arity
        self.name = "two-point" + ("-signed" if twisted else "")

    def arity(self, x) -> int:
        return x[1]

    def elements(self, n, bounds=None):
        return [("a", n), ("b", n)] if n <= self.max_arity else []

    def act(self, x, sigma):
        if self.twisted and sign(sigma) < 0:
            return ("b" if x[0] == "a" else "a", x[1])
        return x

    def key(self, x) -> str:
        return f"{x[0]}{x[1]}"

    def decode(self, cursor):
        atom = cursor.atom("decoration")
        text = atom.text
        if len(text) < 2 or text[0] not in "ab" or not text[1:].isdigit():
            from .sexp import error_at

            raise error_at(atom, f"expected a two-point decoration like a2, got {text!r}")
        return (text[0], int(text[1:]))


def sign(sigma: Sequence[int]) -> int:
    seen = [False] * len(sigma)
    s = 1
    for i in range(len(sigma)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = sigma[j] - 1
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def all_perms(n: int):
    return list(itertools.permutations(range(1, n + 1)))


def identity(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


# ---------------------------------------------------------------------------
# decorated trees


def check_decorated(e, collection: OperadInstance) -> None:
    """Every vertex decoration must have arity equal to the vertex valency."""
    for v in trees.vertices(e):
        if collection.arity(v.dec) != v.valency:
            raise trees.TreeError(
                f"decoration {collection.key(v.dec)} has arity {collection.arity(v.dec)} "
                f"on a vertex of valency {v.valency}"
            )


def canonical_decorated(e, collection: OperadInstance) -> str:
    """Code of the class of ``e`` under non-planar isomorphisms twisting decorations."""
    return trees.canonical_form(e, collection.key, collection.act)[1]


def canonical_decorated_form(e, collection: OperadInstance):
    return trees.canonical_form(e, collection.key, collection.act)


def free_compose(base, parts: Sequence):
    return trees.graft(base, parts)


def counit(op: OperadInstance, e):
    """Compose a tree of elements of ``op`` down to a single element."""
    if e is TRIVIAL:
        return op.unit()

    def walk(node: Node):
        parts = [op.unit() if isinstance(c, Leaf) else walk(c) for c in node.children]
        return op.gamma(node.dec, parts) if parts else node.dec

    raw = walk(e)
    # input j of ``raw`` is the j-th half-edge in planar order
    planar = trees.leaves(e)
    sigma = trees.invert(planar)
    return op.act(raw, sigma)


# ---------------------------------------------------------------------------
# operads built from trees


class TreeOperad(OperadInstance):
    """Labeled rooted trees up to non-planar isomorphism, composed by grafting."""

    name = "tree"

    def arity(self, x):
        return trees.arity(x)

    def elements(self, n, bounds):
        return trees.enumerate_tree_forms(n, bounds.max_vertices)

    def act(self, x, sigma):
        return trees.act(x, sigma)

    def key(self, x):
        return trees.canonicalize(x)

    def size(self, x):
        return trees.n_vertices(x)

    def compose(self, x, i, y):
        return trees.partial_graft(x, i, y)

    def unit(self):
        return TRIVIAL


class FreeOperad(OperadInstance):
    """Free operad on a symmetric collection: decorated trees modulo twisted isomorphism."""

    def __init__(self, collection: OperadInstance):
        self.collection = collection
        self.name = f"free({collection.name})"

    def arity(self, x):
        return trees.arity(x)

    def elements(self, n, bounds):
        return enumerate_decorated(self.collection, n, bounds.max_vertices, bounds)

    def act(self, x, sigma):
        return trees.act(x, sigma)

    def key(self, x):
        return canonical_decorated(x, self.collection)

    def size(self, x):
        return trees.n_vertices(x)

    def compose(self, x, i, y):
        return trees.partial_graft(x, i, y)

    def unit(self):
        return TRIVIAL


def decorations_of(shape: Node, collection: OperadInstance, bounds) -> Iterable[Node]:
    """Every decoration of an undecorated tree by elements of matching arity."""
    verts = trees.vertices(shape)
    domains = [collection.elements(v.valency, bounds) for v in verts]
    if any(not d for d in domains):
        return
    for combo in itertools.product(*domains):
        it = iter(combo)

        def walk(node):
            dec = next(it)
            kids = [c if isinstance(c, Leaf) else walk(c) for c in node.children]
            return Node(dec, kids, node.length)

        yield walk(shape)


def enumerate_decorated(collection, n: int, max_vertices: int, bounds=None, include_trivial=True) -> list:
    """One representative per class of decorated trees with arity ``n``, sorted by code."""
    found: dict[str, object] = {}
    for shape in trees.enumerate_tree_forms(n, max_vertices):
        if shape is TRIVIAL:
            if include_trivial:
                found["|"] = TRIVIAL
            continue
        for e in decorations_of(shape, collection, bounds):
            node, code = canonical_decorated_form(e, collection)
            found.setdefault(code, node)
    return [found[c] for c in sorted(found)]


# ---------------------------------------------------------------------------
# axiom checking


@dataclass
class AxiomReport:
    instance: str
    counts: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def records(self) -> list[dict]:
        return sorted(self.violations, key=lambda r: (r["check"], json.dumps(r["tuple"])))

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.records())


def _left_block(sigma, i: int, l: int) -> tuple[int, ...]:
    """sigma' with (u.sigma) o_i v == (u o_{sigma(i)} v).sigma'."""
    p = sigma[i - 1]
    k = len(sigma)

    def pos_of_u_input(r):
        return r if r < p else r + l - 1

    out = []
    for q in range(1, k + l):
        if q < i:
            out.append(pos_of_u_input(sigma[q - 1]))
        elif q < i + l:
            out.append(p + (q - i))
        else:
            out.append(pos_of_u_input(sigma[q - l]))
    return tuple(out)


def _right_block(tau, i: int, k: int) -> tuple[int, ...]:
    """tau' with u o_i (v.tau) == (u o_i v).tau'."""
    l = len(tau)
    out = []
    for q in range(1, k + l):
        if q < i:
            out.append(q)
        elif q < i + l:
            out.append(i - 1 + tau[q - i])
        else:
            out.append(q)
    return tuple(out)


def check_axioms(
    op: OperadInstance,
    bounds,
    budget: int = 2_000_000,
    perm_arity: int = 3,
    tuple_size: int | None = None,
) -> AxiomReport:
    """Exhaustively verify the operad identities on enumerated elements.

    Elements come from ``op.elements(n, bounds)`` for ``n <= bounds.max_arity``.
    Action and unit laws are checked on every element.  Pairs (equivariance)
    and triples (associativity) are restricted to total ``size`` at most
    ``tuple_size`` when that is given.  Tuples are counted before any work
    and ``BudgetError`` is raised above ``budget``; nothing is truncated.
    """
    elems = {n: list(op.elements(n, bounds)) for n in range(0, bounds.max_arity + 1)}
    everything = [x for n in sorted(elems) for x in elems[n]]
    ar = op.arity
    sz = {id(x): op.size(x) for x in everything}
    cap = tuple_size if tuple_size is not None else float("inf")
    # sorted by size, so "every w that still fits" is a prefix
    by_size = sorted(everything, key=lambda x: sz[id(x)])
    sizes = [sz[id(x)] for x in by_size]
    pos = [x for x in by_size if ar(x) >= 1]
    pos_sizes = [sz[id(x)] for x in pos]

    def room(*xs):
        return cap - sum(sz[id(x)] for x in xs)

    def fitting(*xs):
        return by_size[: bisect_right(sizes, room(*xs))]

    def n_fitting(*xs):
        return bisect_right(sizes, room(*xs))

    seq_pairs = [(u, v) for u in pos for v in pos[: bisect_right(pos_sizes, room(u))]]
    par_pairs = [(u, v) for u in pos if ar(u) >= 2 for v in fitting(u)]
    n_seq = sum(ar(u) * ar(v) * n_fitting(u, v) for u, v in seq_pairs)
    n_par = sum(ar(u) * (ar(u) - 1) // 2 * n_fitting(u, v) for u, v in par_pairs)
    eq_pairs = [(u, v) for u in pos for v in fitting(u)]
    n_eq = sum(len(all_perms(ar(u))) * ar(u) for u, v in eq_pairs if ar(u) <= perm_arity)
    n_eq += sum(len(all_perms(ar(v))) * ar(u) for u, v in eq_pairs if ar(v) <= perm_arity)
    total = n_seq + n_par + n_eq
    if total > budget:
        raise BudgetError(f"{op.name}: {total} axiom tuples exceed the budget of {budget}")

    memo: dict = {}

    def key(x):
        try:
            k = memo.get(x)
        except TypeError:
            return op.key(x)
        if k is None:
            k = memo[x] = op.key(x)
        return k

    composed: dict = {}

    def comp(x, i, y):
        """Composition of two enumerated elements, memoized (both stay alive in ``everything``)."""
        k = (id(x), i, id(y))
        r = composed.get(k)
        if r is None:
            r = composed[k] = op.compose(x, i, y)
        return r

    report = AxiomReport(op.name)
    counts = {"action": 0, "unit": 0, "sequential": 0, "parallel": 0, "equivariance": 0}
    bad = report.violations

    def fail(check, *tup):
        bad.append({"check": check, "tuple": [t if isinstance(t, int) else key(t) for t in tup], "status": "FAIL"})

    one = op.unit()
    for x in everything:
        n = ar(x)
        if n <= perm_arity:
            if key(op.act(x, identity(n))) != key(x):
                fail("action", x)
            for s in all_perms(n):
                xs = op.act(x, s)
                for t in all_perms(n):
                    counts["action"] += 1
                    if key(op.act(xs, t)) != key(op.act(x, trees.compose_perm(s, t))):
                        fail("action", x, *s, *t)
        counts["unit"] += 1
        if key(op.compose(one, 1, x)) != key(x):
            fail("unit", x)
        for i in range(1, n + 1):
            counts["unit"] += 1
            if key(op.compose(x, i, one)) != key(x):
                fail("unit", x, i)

    for u, v in seq_pairs:
        k, l = ar(u), ar(v)
        ws = fitting(u, v)
        for i in range(1, k + 1):
            uv = comp(u, i, v)
            for w in ws:
                for j in range(1, l + 1):
                    counts["sequential"] += 1
                    lhs = op.compose(u, i, comp(v, j, w))
                    rhs = op.compose(uv, i - 1 + j, w)
                    if key(lhs) != key(rhs):
                        fail("sequential", u, i, v, j, w)

    for u, v in par_pairs:
        k, l = ar(u), ar(v)
        ws = fitting(u, v)
        for w in ws:
            for i in range(1, k + 1):
                for j in range(i + 1, k + 1):
                    counts["parallel"] += 1
                    lhs = op.compose(comp(u, j, w), i, v)
                    rhs = op.compose(comp(u, i, v), j - 1 + l, w)
                    if key(lhs) != key(rhs):
                        fail("parallel", u, i, v, j, w)

    for u, v in eq_pairs:
        k, l = ar(u), ar(v)
        if k <= perm_arity:
            for s in all_perms(k):
                us = op.act(u, s)
                for i in range(1, k + 1):
                    counts["equivariance"] += 1
                    lhs = op.compose(us, i, v)
                    rhs = op.act(comp(u, s[i - 1], v), _left_block(s, i, l))
                    if key(lhs) != key(rhs):
                        fail("equivariance-left", u, *s, i, v)
        if l <= perm_arity:
            for t in all_perms(l):
                vt = op.act(v, t)
                for i in range(1, k + 1):
                    counts["equivariance"] += 1
                    lhs = op.compose(u, i, vt)
                    rhs = op.act(comp(u, i, v), _right_block(t, i, k))
                    if key(lhs) != key(rhs):
                        fail("equivariance-right", u, i, v, *t)

    report.counts = counts
    return report
