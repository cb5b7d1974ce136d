"""Rooted planar trees of operations with labeled incoming half-edges.

A tree is either the distinguished trivial tree ``TRIVIAL`` (one edge, no
vertex) or a root :class:`Node`.  A node owns an ordered tuple of children,
each of which is a sub-node (an internal edge) or a :class:`Leaf` (an
incoming half-edge carrying its label).  The planar order at a vertex is the
order of that tuple.  Nodes may carry a decoration and, for the W-construction,
the length of the edge joining them to their parent.

All values are immutable; every operation returns a new tree.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .sexp import Atom, Cursor, SexpError, SList, error_at, parse_one


class TreeError(ValueError):
    pass


class Leaf:
    __slots__ = ("label",)

    def __init__(self, label: int):
        self.label = label

    def __eq__(self, other):
        return isinstance(other, Leaf) and other.label == self.label

    def __hash__(self):
        return hash(("leaf", self.label))

    def __repr__(self):
        return f"Leaf({self.label})"


class Node:
    __slots__ = ("dec", "children", "length", "_hash")

    def __init__(self, dec=None, children: Sequence = (), length: Fraction | None = None):
        self.dec = dec
        self.children = tuple(children)
        self.length = length
        self._hash = None

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Node)
            and hash(self) == hash(other)
            and self.dec == other.dec
            and self.length == other.length
            and self.children == other.children
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dec, self.length, self.children))
        return self._hash

    def __repr__(self):
        return f"Node({self.dec!r}, {list(self.children)!r}, length={self.length!r})"

    @property
    def valency(self) -> int:
        return len(self.children)

    def with_length(self, length: Fraction | None) -> Node:
        return Node(self.dec, self.children, length)

    def with_dec(self, dec) -> Node:
        return Node(dec, self.children, self.length)


class _Trivial:
    __slots__ = ()

    def __repr__(self):
        return "TRIVIAL"

    def __reduce__(self):
        return "TRIVIAL"


TRIVIAL = _Trivial()

Tree = "Node | _Trivial"


# ---------------------------------------------------------------------------
# basic queries


def is_trivial(t) -> bool:
    return t is TRIVIAL


def leaves(t) -> list[int]:
    """Leaf labels in planar (depth-first, left-to-right) order."""
    if t is TRIVIAL:
        return [1]
    out: list[int] = []
    stack = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, Leaf):
            out.append(item.label)
        else:
            stack.extend(reversed(item.children))
    return out


def arity(t) -> int:
    if t is TRIVIAL:
        return 1
    n = 0
    stack = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, Leaf):
            n += 1
        else:
            stack.extend(item.children)
    return n


def vertices(t) -> list[Node]:
    """Vertices in preorder."""
    if t is TRIVIAL:
        return []
    out = []
    stack = [t]
    while stack:
        node = stack.pop()
        out.append(node)
        stack.extend(c for c in reversed(node.children) if isinstance(c, Node))
    return out


def n_vertices(t) -> int:
    return len(vertices(t))


def parent_links(t) -> dict[int, int | None]:
    """Map preorder vertex index to the preorder index of its parent."""
    links: dict[int, int | None] = {}
    if t is TRIVIAL:
        return links
    counter = itertools.count()

    def walk(node, parent):
        idx = next(counter)
        links[idx] = parent
        for c in node.children:
            if isinstance(c, Node):
                walk(c, idx)

    walk(t, None)
    return links


def validate(t) -> None:
    """Raise TreeError unless the labeling is a bijection onto {1..n}."""
    if t is TRIVIAL:
        return
    if not isinstance(t, Node):
        raise TreeError(f"not a tree: {t!r}")
    if t.length is not None:
        raise TreeError("the root vertex carries no edge length")
    labels = leaves(t)
    if sorted(labels) != list(range(1, len(labels) + 1)):
        raise TreeError(f"labeling {labels} is not a bijection onto 1..{len(labels)}")


# ---------------------------------------------------------------------------
# construction and composition


def corolla(n: int, dec=None) -> Node:
    if n < 0:
        raise TreeError("arity must be non-negative")
    return Node(dec, [Leaf(i) for i in range(1, n + 1)])


def map_leaves(t, fn: Callable[[int], object]):
    """Replace each leaf by ``fn(label)``, which returns a Leaf or a Node."""
    if t is TRIVIAL:
        raise TreeError("cannot map the leaves of the trivial tree")

    def walk(node):
        kids = []
        for c in node.children:
            kids.append(fn(c.label) if isinstance(c, Leaf) else walk(c))
        return Node(node.dec, kids, node.length)

    return walk(t)


def relabel(t, mapping: dict[int, int] | Sequence[int]):
    """Rename leaf ``k`` to ``mapping[k]`` (dict) or ``mapping[k-1]`` (sequence)."""
    get = mapping.__getitem__ if isinstance(mapping, dict) else (lambda k: mapping[k - 1])
    if t is TRIVIAL:
        if get(1) != 1:
            raise TreeError("the trivial tree has a single label")
        return t
    return map_leaves(t, lambda k: Leaf(get(k)))


def invert(sigma: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma, start=1):
        inv[s - 1] = i
    return tuple(inv)


def compose_perm(sigma: Sequence[int], tau: Sequence[int]) -> tuple[int, ...]:
    """(sigma tau)(i) = sigma(tau(i))."""
    return tuple(sigma[t - 1] for t in tau)


def act(t, sigma: Sequence[int]):
    """Right symmetric action on labelings: the half-edge now labeled ``i`` was labeled ``sigma(i)``."""
    if arity(t) != len(sigma):
        raise TreeError(f"permutation of size {len(sigma)} on a tree of arity {arity(t)}")
    return relabel(t, invert(sigma))


def graft(base, parts: Sequence, new_length: Fraction | None = None):
    """Full composition: plug ``parts[i-1]`` into the half-edge of ``base`` labeled ``i``.

    Labels of the parts are concatenated left to right.  ``new_length``, when
    given, is recorded on every internal edge created by the grafting.
    """
    k = arity(base)
    if len(parts) != k:
        raise TreeError(f"arity mismatch: base has {k} inputs, got {len(parts)} parts")
    if base is TRIVIAL:
        return parts[0]
    offsets = [0]
    for p in parts:
        offsets.append(offsets[-1] + arity(p))

    def plug(label: int):
        part = parts[label - 1]
        off = offsets[label - 1]
        if part is TRIVIAL:
            return Leaf(off + 1)
        shifted = map_leaves(part, lambda j: Leaf(j + off)) if off else part
        return Node(shifted.dec, shifted.children, new_length)

    return map_leaves(base, plug)


def partial_graft(u, i: int, v, new_length: Fraction | None = None):
    """``u ∘_i v``: graft ``v`` into input ``i`` and trivial trees elsewhere."""
    k = arity(u)
    if not 1 <= i <= k:
        raise TreeError(f"index {i} out of range for arity {k}")
    parts = [TRIVIAL] * k
    parts[i - 1] = v
    return graft(u, parts, new_length)


# ---------------------------------------------------------------------------
# canonical forms


def format_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _plain_token(dec) -> str:
    return "_"


def canonical_form(
    t,
    token: Callable[[object], str] = _plain_token,
    act_dec: Callable[[object, tuple], object] | None = None,
):
    """Return ``(canonical planar representative, code)``.

    Children are sorted with half-edges first (numerically) and sub-trees after
    (by code).  When ``act_dec`` is given, re-ordering the inputs of a vertex by
    ``pi`` (new position ``i`` holds old input ``pi[i]``) replaces its
    decoration ``x`` by ``act_dec(x, pi)``; among re-orderings that tie on child
    codes the one with the smallest decoration token wins.
    """
    if t is TRIVIAL:
        return TRIVIAL, "|"
    node, code = _canon(t, token, act_dec)
    return node, code


def _canon(node: Node, token, act_dec):
    kids = []
    for c in node.children:
        if isinstance(c, Leaf):
            kids.append(((0, c.label, ""), c, f"#{c.label}"))
        else:
            cn, cc = _canon(c, token, act_dec)
            kids.append(((1, 0, cc), cn, cc))
    order = sorted(range(len(kids)), key=lambda j: kids[j][0])
    dec = node.dec
    if act_dec is not None and dec is not None and kids:
        best = None
        for pi in _tie_permutations(order, [k[0] for k in kids]):
            cand = act_dec(dec, tuple(p + 1 for p in pi))
            tok = token(cand)
            if best is None or tok < best[0]:
                best = (tok, cand, pi)
        tok, dec, order = best
    else:
        tok = token(dec)
    new_children = [kids[j][1] for j in order]
    parts = [tok]
    if node.length is not None:
        parts.append("@" + format_fraction(node.length))
    parts.extend(kids[j][2] for j in order)
    return Node(dec, new_children, node.length), "(" + " ".join(parts) + ")"


def _tie_permutations(order: list[int], keys: list):
    """All orderings consistent with ``order`` that permute only within runs of equal keys."""
    groups: list[list[int]] = []
    for j in order:
        if groups and keys[groups[-1][0]] == keys[j]:
            groups[-1].append(j)
        else:
            groups.append([j])
    if all(len(g) == 1 for g in groups):
        yield list(order)
        return
    for combo in itertools.product(*(itertools.permutations(g) for g in groups)):
        yield [j for g in combo for j in g]


def canonicalize(t) -> str:
    """Code of the non-planar isomorphism class of a labeled tree (decorations ignored)."""
    return canonical_form(t)[1]


# ---------------------------------------------------------------------------
# s-expressions


class PlainCodec:
    """Decorations of bare labeled trees: the placeholder ``_``."""

    def encode(self, dec) -> str:
        return "_"

    def decode(self, cur: Cursor):
        atom = cur.atom("decoration")
        if atom.text != "_":
            raise error_at(atom, f"expected '_' for an undecorated vertex, got {atom.text!r}")
        return None


def to_sexp(t, encode: Callable[[object], str] | None = None) -> str:
    if t is TRIVIAL:
        return "|"
    encode = encode or (lambda d: "_")

    def walk(node: Node) -> str:
        parts = [encode(node.dec)]
        if node.length is not None:
            parts.append("@" + format_fraction(node.length))
        for c in node.children:
            parts.append(f"#{c.label}" if isinstance(c, Leaf) else walk(c))
        return "(" + " ".join(parts) + ")"

    return walk(t)


def parse_fraction(text: str, item=None) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise error_at(item, f"not an exact rational: {text!r}") from None
    if "." in text or "e" in text.lower():
        raise error_at(item, f"lengths and moduli must be written p/q, got {text!r}")
    return value


def tree_from_sexp(expr, codec=None, allow_lengths: bool = False):
    codec = codec or PlainCodec()
    if isinstance(expr, Atom):
        if expr.text == "|":
            return TRIVIAL
        raise error_at(expr, f"expected a tree, got {expr.text!r}")
    tree = _node_from_sexp(expr, codec, allow_lengths, is_root=True)
    try:
        validate(tree)
    except TreeError as exc:
        raise error_at(expr, str(exc)) from None
    return tree


def _node_from_sexp(expr: SList, codec, allow_lengths: bool, is_root: bool) -> Node:
    cur = Cursor(expr.items, owner=expr)
    if cur.done():
        raise error_at(expr, "empty vertex")
    dec = codec.decode(cur)
    length = None
    nxt = cur.peek()
    if isinstance(nxt, Atom) and nxt.text.startswith("@"):
        cur.next()
        if not allow_lengths:
            raise error_at(nxt, "edge lengths are not allowed here")
        if is_root:
            raise error_at(nxt, "the root vertex carries no edge length")
        length = parse_fraction(nxt.text[1:], nxt)
        if not 0 <= length <= 1:
            raise error_at(nxt, f"edge length {nxt.text[1:]} outside [0,1]")
    elif allow_lengths and not is_root:
        raise error_at(expr, "missing @length on a non-root vertex")
    kids = []
    while not cur.done():
        item = cur.next()
        if isinstance(item, SList):
            kids.append(_node_from_sexp(item, codec, allow_lengths, is_root=False))
        elif item.text.startswith("#"):
            try:
                kids.append(Leaf(int(item.text[1:])))
            except ValueError:
                raise error_at(item, f"bad half-edge label {item.text!r}") from None
        elif item.text == "|":
            raise error_at(item, "a trivial tree cannot appear as a child; use a labeled half-edge")
        else:
            raise error_at(item, f"unexpected atom {item.text!r} among children")
    return Node(dec, kids, length)


def parse_tree(text: str, codec=None, allow_lengths: bool = False):
    return tree_from_sexp(parse_one(text), codec, allow_lengths)


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def planar_shapes(v: int, h: int) -> tuple:
    """Planar trees with exactly ``v`` vertices and ``h`` unlabeled half-edge slots.

    A shape is a tuple of items; ``None`` marks a half-edge slot and a nested
    tuple a child vertex.
    """
    if v < 1:
        return ()
    return tuple(_item_sequences(v - 1, h))


@lru_cache(maxsize=None)
def _item_sequences(v: int, h: int) -> tuple:
    out = []
    if v == 0 and h == 0:
        out.append(())
    if h > 0:
        for rest in _item_sequences(v, h - 1):
            out.append((None,) + rest)
    for v1 in range(1, v + 1):
        for h1 in range(0, h + 1):
            for sub in planar_shapes(v1, h1):
                for rest in _item_sequences(v - v1, h - h1):
                    out.append((sub,) + rest)
    return tuple(out)


def shape_to_tree(shape: tuple, labels: Sequence[int]) -> Node:
    it = iter(labels)

    def walk(s):
        return Node(None, [Leaf(next(it)) if item is None else walk(item) for item in s])

    return walk(shape)


def planar_trees(n: int, v: int) -> Iterable[Node]:
    """Every planar labeled tree with arity ``n`` and exactly ``v`` vertices."""
    for shape in planar_shapes(v, n):
        for perm in itertools.permutations(range(1, n + 1)):
            yield shape_to_tree(shape, perm)


def enumerate_tree_forms(n: int, max_vertices: int) -> list:
    """One canonical representative per isomorphism class, sorted by code."""
    if n < 0 or max_vertices < 0:
        raise TreeError("arity and vertex bound must be non-negative")
    return list(_tree_forms(n, max_vertices))


@lru_cache(maxsize=None)
def _tree_forms(n: int, max_vertices: int) -> tuple:
    found: dict[str, object] = {}
    if n == 1:
        found["|"] = TRIVIAL
    for v in range(1, max_vertices + 1):
        for shape in planar_shapes(v, n):
            seen_shape = set()
            for perm in itertools.permutations(range(1, n + 1)):
                node, code = canonical_form(shape_to_tree(shape, perm))
                if code in seen_shape:
                    continue
                seen_shape.add(code)
                found.setdefault(code, node)
    return tuple(found[c] for c in sorted(found))


def enumerate_trees(n: int, max_vertices: int) -> list[str]:
    return sorted(canonicalize(t) for t in enumerate_tree_forms(n, max_vertices))
