"""Tree-shaped dual graphs of nodal surfaces.

A dual graph has one vertex per irreducible component and one edge per node.
Each component records its genus, the labels of the input boundaries (or input
markings) it carries, and whether it carries the output.  Two kinds share the
representation:

* ``dg``: components carry parametrized boundary circles; stability is only
  required of interior components (no boundary at all).
* ``dm``: boundaries are replaced by marked points; every component must be
  stable with markings and nodes counted as special points.

Values are canonical on construction: components are stored in the preorder
of the canonically sorted tree rooted at the output component, so structural
equality is equality of the printed code.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..sexp import Atom, Cursor, SList, error_at, parse_one
from ..trees import format_fraction, parse_fraction


class GraphError(ValueError):
    pass


class CornerCase(Exception):
    """The unstable two-pointed sphere (identity of the marked-curve operad)."""


@dataclass(frozen=True, order=True)
class Component:
    genus: int
    inputs: tuple = ()
    out: bool = False

    @property
    def n_boundary(self) -> int:
        return len(self.inputs) + (1 if self.out else 0)


class DualGraph:
    __slots__ = ("comps", "parents", "modulus", "kind", "code", "_hash")

    def __init__(self, comps, parents, modulus, kind, code):
        self.comps = comps
        self.parents = parents
        self.modulus = modulus
        self.kind = kind
        self.code = code
        self._hash = hash(code)

    # ------------------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, DualGraph) and self.code == other.code

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.code < other.code

    def __repr__(self):
        return f"DualGraph({self.code})"

    def sexp(self) -> str:
        return self.code

    @property
    def arity(self) -> int:
        return sum(len(c.inputs) for c in self.comps)

    @property
    def genus(self) -> int:
        return sum(c.genus for c in self.comps)

    @property
    def n_nodes(self) -> int:
        return len(self.comps) - 1

    @property
    def n_components(self) -> int:
        return len(self.comps)

    def edges(self) -> list[tuple[int, int]]:
        return [(p, i) for i, p in enumerate(self.parents) if p is not None]

    def degree(self, i: int) -> int:
        d = sum(1 for p in self.parents if p == i)
        return d + (0 if self.parents[i] is None else 1)

    def is_annulus_shape(self) -> bool:
        return self.kind == "dg" and _annulus_shape(self.comps, [])

    def relabel(self, mapping: dict[int, int]) -> DualGraph:
        comps = [Component(c.genus, tuple(mapping[k] for k in c.inputs), c.out) for c in self.comps]
        return make_graph(comps, self.edges(), self.modulus, self.kind)

    def act(self, sigma: Sequence[int]) -> DualGraph:
        """Right action: the input now labeled i was labeled sigma(i)."""
        inv = {s: i for i, s in enumerate(sigma, start=1)}
        return self.relabel(inv)


def _annulus_shape(comps, edges) -> bool:
    return (
        len(comps) == 1
        and not edges
        and comps[0].genus == 0
        and len(comps[0].inputs) == 1
        and comps[0].out
    )


# ----------------------------------------------------------------------
# construction


def make_graph(comps: Sequence[Component], edges: Iterable[tuple[int, int]], modulus=None, kind: str = "dg") -> DualGraph:
    """Validate and canonicalize.  ``edges`` index into ``comps``."""
    comps = list(comps)
    edges = [tuple(e) for e in edges]
    n = len(comps)
    if kind not in ("dg", "dm"):
        raise GraphError(f"unknown graph kind {kind!r}")
    if n == 0:
        raise GraphError("a dual graph needs at least one component")
    if len(edges) != n - 1:
        raise GraphError("component graph is not a tree (edge count)")
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        if a == b or not (0 <= a < n and 0 <= b < n):
            raise GraphError(f"bad node between components {a} and {b}")
        adj[a].append(b)
        adj[b].append(a)
    outs = [i for i, c in enumerate(comps) if c.out]
    if len(outs) != 1:
        raise GraphError(f"exactly one component must carry the output, found {len(outs)}")
    labels = sorted(k for c in comps for k in c.inputs)
    if labels != list(range(1, len(labels) + 1)):
        raise GraphError(f"input labels {labels} are not a bijection onto 1..{len(labels)}")
    for c in comps:
        if c.genus < 0:
            raise GraphError("negative genus")
    if modulus is not None:
        if kind != "dg" or not _annulus_shape(comps, edges):
            raise GraphError("only a plain annulus carries a modulus")
        modulus = Fraction(modulus)
        if modulus < 0:
            raise GraphError("modulus must be non-negative")
    elif kind == "dg" and _annulus_shape(comps, edges):
        raise GraphError("a plain annulus must carry its modulus")

    root = outs[0]
    seen = {root}

    def canon(i, parent):
        kids = []
        for j in adj[i]:
            if j == parent:
                continue
            if j in seen:
                raise GraphError("component graph has a cycle")
            seen.add(j)
            kids.append(canon(j, i))
        kids.sort(key=lambda k: k[0])
        c = comps[i]
        token = f"({c.genus};{','.join(map(str, sorted(c.inputs)))};{int(c.out)}"
        return token + "".join(k[0] for k in kids) + ")", i, kids

    tree = canon(root, None)
    if len(seen) != n:
        raise GraphError("component graph is disconnected")

    order: list[Component] = []
    parents: list[int | None] = []

    def flatten(node, parent_pos):
        _, i, kids = node
        c = comps[i]
        pos = len(order)
        order.append(Component(c.genus, tuple(sorted(c.inputs)), c.out))
        parents.append(parent_pos)
        for k in kids:
            flatten(k, pos)

    flatten(tree, None)
    code = _print(order, parents, modulus, kind)
    return DualGraph(tuple(order), tuple(parents), modulus, kind, code)


def _print(comps, parents, modulus, kind) -> str:
    node_ids: dict[int, list[int]] = {i: [] for i in range(len(comps))}
    for i, p in enumerate(parents):
        if p is not None:
            node_ids[i].append(i)
            node_ids[p].append(i)
    parts = [kind]
    for i, c in enumerate(comps):
        bits = [f"comp g={c.genus}"]
        if c.inputs:
            bits.append("(in " + " ".join(map(str, c.inputs)) + ")")
        if c.out:
            bits.append("(out)")
        bits.extend(f"(node {k})" for k in sorted(node_ids[i]))
        if modulus is not None:
            bits.append(f"(mod {format_fraction(modulus)})")
        parts.append("(" + " ".join(bits) + ")")
    return "(" + " ".join(parts) + ")"


def smooth_graph(genus: int, inputs: int) -> DualGraph:
    return make_graph([Component(genus, tuple(range(1, inputs + 1)), True)], [])


def annulus_graph(modulus) -> DualGraph:
    return make_graph([Component(0, (1,), True)], [], Fraction(modulus))


def nodal_annulus_graph() -> DualGraph:
    return make_graph([Component(0, (), True), Component(0, (1,), False)], [(0, 1)])


UNIT_GRAPH = None  # filled below


# ----------------------------------------------------------------------
# text form


def read_components(cur: Cursor, head, kind: str) -> DualGraph:
    """Consume ``(comp ...)`` lists following a ``dg``/``dm`` tag."""
    comps: list[Component] = []
    node_ends: dict[int, list[int]] = {}
    modulus = None
    while isinstance(cur.peek(), SList) and cur.peek().items and isinstance(cur.peek().items[0], Atom) and cur.peek().items[0].text == "comp":
        item = cur.next()
        inner = Cursor(item.items[1:], owner=item)
        g_atom = inner.atom("g=<genus>")
        if not g_atom.text.startswith("g="):
            raise error_at(g_atom, f"expected g=<genus>, got {g_atom.text!r}")
        try:
            genus = int(g_atom.text[2:])
        except ValueError:
            raise error_at(g_atom, f"bad genus {g_atom.text!r}") from None
        inputs: list[int] = []
        out = False
        while not inner.done():
            sub = inner.slist("(in ...), (out), (node k) or (mod q)")
            if not sub.items or not isinstance(sub.items[0], Atom):
                raise error_at(sub, "empty component field")
            tag = sub.items[0].text
            rest = sub.items[1:]
            if any(not isinstance(r, Atom) for r in rest):
                raise error_at(sub, "component fields hold atoms only")
            if tag == "in":
                try:
                    inputs.extend(int(r.text) for r in rest)
                except ValueError:
                    raise error_at(sub, "input labels must be integers") from None
            elif tag == "out":
                if rest:
                    raise error_at(sub, "(out) takes no arguments")
                out = True
            elif tag == "node":
                if len(rest) != 1:
                    raise error_at(sub, "(node k) takes one id")
                try:
                    nid = int(rest[0].text)
                except ValueError:
                    raise error_at(rest[0], "node ids are integers") from None
                node_ends.setdefault(nid, []).append(len(comps))
            elif tag == "mod":
                if len(rest) != 1:
                    raise error_at(sub, "(mod q) takes one rational")
                modulus = parse_fraction(rest[0].text, rest[0])
            else:
                raise error_at(sub, f"unknown component field {tag!r}")
        comps.append(Component(genus, tuple(inputs), out))
    if not comps:
        raise error_at(head, f"{kind} needs at least one (comp ...)")
    edges = []
    for nid, ends in sorted(node_ends.items()):
        if len(ends) != 2:
            raise error_at(head, f"node {nid} must join exactly two components, found {len(ends)}")
        edges.append((ends[0], ends[1]))
    try:
        return make_graph(comps, edges, modulus, kind)
    except GraphError as exc:
        raise error_at(head, str(exc)) from None


def parse_graph(text: str) -> DualGraph:
    expr = parse_one(text)
    if not isinstance(expr, SList) or not expr.items or not isinstance(expr.items[0], Atom):
        raise error_at(expr, "expected (dg ...) or (dm ...)")
    head = expr.items[0]
    if head.text not in ("dg", "dm"):
        raise error_at(head, f"expected dg or dm, got {head.text!r}")
    cur = Cursor(expr.items[1:], owner=expr)
    g = read_components(cur, head, head.text)
    if not cur.done():
        raise error_at(cur.peek(), "unexpected item after components")
    return g


# ----------------------------------------------------------------------
# mutable work area


class _Work:
    """Components keyed by id with an adjacency map; used while gluing."""

    def __init__(self):
        self.genus: dict[int, int] = {}
        self.inputs: dict[int, list[int]] = {}
        self.out: dict[int, bool] = {}
        self.adj: dict[int, set[int]] = {}
        self._next = 0

    def add(self, genus, inputs=(), out=False) -> int:
        i = self._next
        self._next += 1
        self.genus[i] = genus
        self.inputs[i] = list(inputs)
        self.out[i] = out
        self.adj[i] = set()
        return i

    def link(self, a, b):
        self.adj[a].add(b)
        self.adj[b].add(a)

    def remove(self, i):
        for j in self.adj.pop(i):
            self.adj[j].discard(i)
        del self.genus[i], self.inputs[i], self.out[i]

    def load(self, g: DualGraph, shift: int = 0) -> list[int]:
        ids = [self.add(c.genus, [k + shift for k in c.inputs], c.out) for c in g.comps]
        for p, i in g.edges():
            self.link(ids[p], ids[i])
        return ids

    def freeze(self, modulus=None, kind="dg") -> DualGraph:
        keys = sorted(self.genus)
        pos = {k: n for n, k in enumerate(keys)}
        comps = [Component(self.genus[k], tuple(self.inputs[k]), self.out[k]) for k in keys]
        edges = {(min(pos[a], pos[b]), max(pos[a], pos[b])) for a in keys for b in self.adj[a]}
        return make_graph(comps, sorted(edges), modulus, kind)


def _stabilize_work(w: _Work) -> None:
    changed = True
    while changed:
        changed = False
        for i in sorted(w.genus):
            if w.inputs[i] or w.out[i]:
                continue
            n = len(w.adj[i])
            if 2 * w.genus[i] - 2 + n > 0:
                continue
            nbrs = sorted(w.adj[i])
            if n == 0:
                raise GraphError("closed component with no nodes cannot be stabilized")
            w.remove(i)
            if n == 2:
                w.link(nbrs[0], nbrs[1])
            changed = True
            break


def is_stable(g: DualGraph) -> bool:
    """Interior components (no boundary) satisfy 2g - 2 + n > 0."""
    for i, c in enumerate(g.comps):
        if c.inputs or c.out:
            continue
        if 2 * c.genus - 2 + g.degree(i) <= 0:
            return False
    return True


def is_dm_stable(g: DualGraph) -> bool:
    """Every component satisfies 2g - 2 + (markings + nodes) > 0."""
    return all(2 * c.genus - 2 + c.n_boundary + g.degree(i) > 0 for i, c in enumerate(g.comps))


def stabilize(g: DualGraph) -> DualGraph:
    """Contract unstable interior components until none remain."""
    if is_stable(g):
        return g
    w = _Work()
    w.load(g)
    _stabilize_work(w)
    return w.freeze(g.modulus, g.kind)


def nodfr_compose(x: DualGraph, i: int, y: DualGraph) -> DualGraph:
    """``x o_i y``: glue the output boundary of y to input i of x, then stabilize."""
    if x.kind != "dg" or y.kind != "dg":
        raise GraphError("boundary gluing needs two dg graphs")
    k, l = x.arity, y.arity
    if not 1 <= i <= k:
        raise GraphError(f"index {i} out of range for arity {k}")
    w = _Work()
    xs = w.load(x)
    ys = w.load(y, shift=i - 1)
    host = next(cid for cid in xs if i in w.inputs[cid])
    for cid in xs:
        w.inputs[cid] = [j if j < i else j + l - 1 for j in w.inputs[cid] if j != i]
    top = next(cid for cid in ys if w.out[cid])
    w.genus[host] += w.genus[top]
    w.inputs[host].extend(w.inputs[top])
    for nb in list(w.adj[top]):
        w.link(host, nb)
    w.remove(top)
    modulus = None
    if x.modulus is not None and y.modulus is not None:
        modulus = x.modulus + y.modulus
    _stabilize_work(w)
    return w.freeze(modulus, "dg")


def glue_pieces(pieces: Sequence[DualGraph], links: Sequence[tuple[int, int, int]], leaf_labels: dict, root: int) -> DualGraph:
    """Glue a tree of boundary graphs along seams and stabilize.

    ``links`` holds ``(parent piece, local input slot, child piece)``;
    ``leaf_labels`` maps ``(piece, local input slot)`` to a global label.
    Pieces are merged with a union-find over components, independently of
    any operad composition table.  The modulus survives only when every piece
    is a plain annulus.
    """
    parent: dict[tuple, tuple] = {}

    def find(a):
        while parent.get(a, a) != a:
            parent[a] = parent.get(parent[a], parent[a])
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    slot_comp: dict[tuple[int, int], tuple] = {}
    out_comp: dict[int, tuple] = {}
    for p, g in enumerate(pieces):
        for ci, c in enumerate(g.comps):
            for j in c.inputs:
                slot_comp[(p, j)] = (p, ci)
            if c.out:
                out_comp[p] = (p, ci)
    for p, j, child in links:
        union(slot_comp[(p, j)], out_comp[child])

    w = _Work()
    ids: dict[tuple, int] = {}
    for p, g in enumerate(pieces):
        for ci, c in enumerate(g.comps):
            r = find((p, ci))
            if r not in ids:
                ids[r] = w.add(0)
            wid = ids[r]
            w.genus[wid] += c.genus
    for (p, j), label in leaf_labels.items():
        w.inputs[ids[find(slot_comp[(p, j)])]].append(label)
    w.out[ids[find(out_comp[root])]] = True
    for p, g in enumerate(pieces):
        for a, b in g.edges():
            w.link(ids[find((p, a))], ids[find((p, b))])
    modulus = None
    if all(g.modulus is not None for g in pieces):
        modulus = sum((g.modulus for g in pieces), Fraction(0))
    _stabilize_work(w)
    return w.freeze(modulus, "dg")


# ----------------------------------------------------------------------
# marked curves


def dm_graph(comps, edges) -> DualGraph:
    return make_graph(comps, edges, None, "dm")


def dm_compose(x: DualGraph, i: int, y: DualGraph) -> DualGraph:
    """Glue the output point of y to input point i of x, creating a node."""
    if x.kind != "dm" or y.kind != "dm":
        raise GraphError("marked gluing needs two dm graphs")
    k, l = x.arity, y.arity
    if not 1 <= i <= k:
        raise GraphError(f"index {i} out of range for arity {k}")
    w = _Work()
    xs = w.load(x)
    ys = w.load(y, shift=i - 1)
    host = next(cid for cid in xs if i in w.inputs[cid])
    for cid in xs:
        w.inputs[cid] = [j if j < i else j + l - 1 for j in w.inputs[cid] if j != i]
    top = next(cid for cid in ys if w.out[cid])
    w.out[top] = False
    w.link(host, top)
    return w.freeze(None, "dm")


def dm_stabilize(g: DualGraph) -> DualGraph:
    """Contract components with 2g-2+special <= 0, moving markings to the neighbour.

    Raises ``CornerCase`` when the result would be the two-pointed sphere.
    """
    w = _Work()
    w.load(g)
    changed = True
    while changed:
        changed = False
        for i in sorted(w.genus):
            special = len(w.inputs[i]) + int(w.out[i]) + len(w.adj[i])
            if 2 * w.genus[i] - 2 + special > 0:
                continue
            nbrs = sorted(w.adj[i])
            if not nbrs:
                if special == 2:
                    raise CornerCase("two-pointed sphere has no stable model")
                raise GraphError("unstable closed curve with fewer than two special points")
            if len(nbrs) == 2:
                w.remove(i)
                w.link(nbrs[0], nbrs[1])
            else:
                nb = nbrs[0]
                w.inputs[nb].extend(w.inputs[i])
                w.out[nb] = w.out[nb] or w.out[i]
                w.remove(i)
            changed = True
            break
    return w.freeze(None, "dm")


UNIT_GRAPH = annulus_graph(0)
