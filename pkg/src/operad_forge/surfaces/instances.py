"""Discrete surface operads as enumerable instances.

``AnnDisc``     finite annuli under modulus addition (arity 1 only).
``NodAnnDisc``  annuli with the nodal annulus N = inf adjoined, N absorbing.
``FrDisc``      framed surfaces: smooth pieces plus standard annuli.
``NodFrDisc``   stable tree-like nodal surfaces, as boundary dual graphs.
"""

from __future__ import annotations

from fractions import Fraction

from ..operad import OperadInstance
from . import dualgraph as dgm
from .decorations import Annulus, Smooth, decode_dec, encode_dec
from .dualgraph import DualGraph
from .enumeration import stable_boundary_graphs
from .moduli import INF, ZERO, ExtModulus


def _check_index(k: int, i: int) -> None:
    if not 1 <= i <= k:
        raise IndexError(f"index {i} out of range for arity {k}")


class AnnDisc(OperadInstance):
    name = "ann"

    def arity(self, x):
        return 1

    def elements(self, n, bounds):
        return [ExtModulus(q) for q in bounds.modulus_grid] if n == 1 else []

    def key(self, x):
        return f"a {x}"

    def encode(self, x):
        return encode_dec(x)

    def decode(self, cur):
        return decode_dec(cur)

    def compose(self, x, i, y):
        _check_index(1, i)
        return x + y

    def unit(self):
        return ZERO


class NodAnnDisc(AnnDisc):
    name = "nodann"

    def elements(self, n, bounds):
        return super().elements(n, bounds) + [INF] if n == 1 else []

    def key(self, x):
        return encode_dec(x)


class FrDisc(OperadInstance):
    name = "fr"

    def arity(self, x):
        return x.inputs if isinstance(x, Smooth) else 1

    def elements(self, n, bounds):
        if n < 1:
            return []
        out = [Smooth(g, n) for g in range(bounds.max_genus + 1) if (g, n) != (0, 1)]
        if n == 1:
            out += [Annulus(q) for q in bounds.modulus_grid]
        return out

    def key(self, x):
        return encode_dec(x)

    def encode(self, x):
        return encode_dec(x)

    def decode(self, cur):
        return decode_dec(cur)

    def compose(self, x, i, y):
        _check_index(self.arity(x), i)
        if isinstance(x, Annulus) and isinstance(y, Annulus):
            return Annulus(x.modulus + y.modulus)
        if isinstance(x, Annulus):
            return y
        if isinstance(y, Annulus):
            return x
        return Smooth(x.genus + y.genus, x.inputs + y.inputs - 1)

    def unit(self):
        return Annulus(Fraction(0))


class NodFrDisc(OperadInstance):
    name = "nodfr"

    def arity(self, x):
        return x.arity

    def elements(self, n, bounds):
        if n < 1:
            return []
        out = stable_boundary_graphs(n, bounds.max_genus, bounds.max_vertices)
        if n == 1:
            out = [dgm.annulus_graph(q) for q in bounds.modulus_grid] + out
        return out

    def act(self, x, sigma):
        return x.act(sigma)

    def key(self, x):
        return x.code

    def size(self, x):
        return x.n_components

    def encode(self, x):
        return x.code[1:-1]

    def decode(self, cur):
        return decode_dec(cur)

    def compose(self, x, i, y):
        return dgm.nodfr_compose(x, i, y)

    def unit(self):
        return dgm.UNIT_GRAPH


def as_graph(x) -> DualGraph:
    """The boundary dual graph of a single decoration."""
    if isinstance(x, DualGraph):
        return x
    if isinstance(x, Smooth):
        return dgm.smooth_graph(x.genus, x.inputs)
    if isinstance(x, Annulus):
        return dgm.annulus_graph(x.modulus)
    if isinstance(x, ExtModulus):
        return dgm.nodal_annulus_graph() if x.infinite else dgm.annulus_graph(x.value)
    raise TypeError(f"not a surface decoration: {x!r}")


def ann_to_nodann(a: ExtModulus) -> ExtModulus:
    return a


def ann_to_fr(a: ExtModulus) -> Annulus:
    return Annulus(a.value)


def nodann_preimage(x: ExtModulus):
    return None if x.infinite else x


def fr_preimage(x):
    return ExtModulus(x.modulus) if isinstance(x, Annulus) else None
