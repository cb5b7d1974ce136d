"""Bounded enumeration of component trees and the dual graphs they carry.

A shape is ``(genus, n_inputs, children)`` with ``children`` a sorted tuple
of shapes; it describes a component tree rooted at the output component
before input labels are assigned.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Callable, Iterator

from .dualgraph import Component, DualGraph, make_graph


@lru_cache(maxsize=None)
def shapes(comps: int, genus: int, inputs: int) -> tuple:
    """Shapes with exactly these totals of components, genus and inputs."""
    if comps < 1:
        return ()
    out = []
    for g0 in range(genus + 1):
        for a0 in range(inputs + 1):
            for kids in forests(comps - 1, genus - g0, inputs - a0, None):
                out.append((g0, a0, kids))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def forests(comps: int, genus: int, inputs: int, cap) -> tuple:
    """Sorted multisets of shapes (each <= ``cap``) with the given totals."""
    if comps == 0:
        return ((),) if genus == 0 and inputs == 0 else ()
    out = []
    for c1 in range(1, comps + 1):
        for g1 in range(genus + 1):
            for a1 in range(inputs + 1):
                for first in shapes(c1, g1, a1):
                    if cap is not None and first > cap:
                        continue
                    for rest in forests(comps - c1, genus - g1, inputs - a1, first):
                        out.append(tuple(sorted((first,) + rest)))
    return tuple(sorted(set(out)))


def shape_stats(shape) -> Iterator[tuple[int, int, int, bool]]:
    """Yield ``(genus, n_inputs, n_children, is_root)`` for every component."""
    stack = [(shape, True)]
    while stack:
        (g, a, kids), root = stack.pop()
        yield g, a, len(kids), root
        stack.extend((k, False) for k in kids)


def labelings(shape, n: int, kind: str) -> list[DualGraph]:
    """Every labeled graph on ``shape`` (plain annuli excluded), deduplicated."""
    comps_spec = []
    edges = []

    def walk(s, parent):
        g, a, kids = s
        idx = len(comps_spec)
        comps_spec.append((g, a, parent is None))
        if parent is not None:
            edges.append((parent, idx))
        for k in kids:
            walk(k, idx)

    walk(shape, None)
    if kind == "dg" and len(comps_spec) == 1 and comps_spec[0][:2] == (0, 1):
        return []
    found = {}
    for perm in itertools.permutations(range(1, n + 1)):
        it = iter(perm)
        comps = [Component(g, tuple(sorted(next(it) for _ in range(a))), root) for g, a, root in comps_spec]
        gph = make_graph(comps, edges, None, kind)
        found.setdefault(gph.code, gph)
    return [found[c] for c in sorted(found)]


def boundary_stable(shape) -> bool:
    """Interior components (no inputs, not the root) satisfy 2g - 2 + n > 0."""
    for g, a, kids, root in shape_stats(shape):
        if a == 0 and not root and 2 * g - 2 + kids + 1 <= 0:
            return False
    return True


def input_reachable(shape) -> bool:
    """Every non-root component without children carries an input boundary."""
    return all(a > 0 or kids > 0 or root for g, a, kids, root in shape_stats(shape))


def dm_stable(shape) -> bool:
    return all(2 * g - 2 + a + 1 + kids > 0 for g, a, kids, root in shape_stats(shape))


def enumerate_graphs(
    arity: int,
    max_genus: int,
    max_components: int,
    kind: str = "dg",
    keep: Callable | None = None,
    exact_genus: int | None = None,
) -> list[DualGraph]:
    """Labeled graphs of the given arity; ``keep(shape)`` filters shapes."""
    out = []
    genera = [exact_genus] if exact_genus is not None else range(max_genus + 1)
    for c in range(1, max_components + 1):
        for g in genera:
            for s in shapes(c, g, arity):
                if keep is None or keep(s):
                    out.extend(labelings(s, arity, kind))
    return sorted(out)


def stable_boundary_graphs(arity: int, max_genus: int, max_components: int, exact_genus=None) -> list[DualGraph]:
    """Stable, input-reachable boundary graphs other than plain annuli."""

    def keep(s):
        return boundary_stable(s) and input_reachable(s)

    return enumerate_graphs(arity, max_genus, max_components, "dg", keep, exact_genus)
