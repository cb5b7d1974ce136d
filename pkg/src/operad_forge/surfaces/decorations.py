"""Coarse vertex decorations for surface operads and their text form.

``Smooth(g, m)``  a connected framed surface of genus g with m inputs.
``Annulus(a)``    a standard annulus of finite modulus a (the F~r side).
``ExtModulus``    an element of the nodal annuli monoid; inf is the nodal annulus N.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..sexp import Atom, Cursor, SList, error_at
from ..trees import format_fraction, parse_fraction
from .moduli import INF, ExtModulus


@dataclass(frozen=True, order=True)
class Smooth:
    genus: int
    inputs: int

    def __post_init__(self):
        if self.genus < 0 or self.inputs < 1:
            raise ValueError(f"smooth piece needs genus >= 0 and at least one input, got g={self.genus} m={self.inputs}")
        if (self.genus, self.inputs) == (0, 1):
            raise ValueError("genus 0 with one input is an annulus; use Annulus")


@dataclass(frozen=True, order=True)
class Annulus:
    modulus: Fraction

    def __post_init__(self):
        object.__setattr__(self, "modulus", Fraction(self.modulus))
        if self.modulus < 0:
            raise ValueError("annulus modulus must be non-negative")


NODAL = INF


def dec_arity(x) -> int:
    if isinstance(x, Smooth):
        return x.inputs
    if isinstance(x, (Annulus, ExtModulus)):
        return 1
    return x.arity


def dec_genus(x) -> int:
    if isinstance(x, Smooth):
        return x.genus
    if isinstance(x, (Annulus, ExtModulus)):
        return 0
    return x.genus


def encode_dec(x) -> str:
    if isinstance(x, Smooth):
        return f"fr g={x.genus} m={x.inputs}"
    if isinstance(x, Annulus):
        return f"ann {format_fraction(x.modulus)}"
    if isinstance(x, ExtModulus):
        return "nod" if x.infinite else f"ann {format_fraction(x.value)} side=nod"
    return x.sexp()


def _int_field(atom: Atom, name: str) -> int:
    prefix = name + "="
    if not atom.text.startswith(prefix):
        raise error_at(atom, f"expected {prefix}<int>, got {atom.text!r}")
    try:
        v = int(atom.text[len(prefix):])
    except ValueError:
        raise error_at(atom, f"bad integer in {atom.text!r}") from None
    return v


def decode_dec(cur: Cursor):
    """Read one decoration from the head of a vertex list."""
    head = cur.atom("decoration")
    tag = head.text
    if tag == "fr":
        g = _int_field(cur.atom("g=<genus>"), "g")
        m = _int_field(cur.atom("m=<inputs>"), "m")
        try:
            return Smooth(g, m)
        except ValueError as exc:
            raise error_at(head, str(exc)) from None
    if tag == "ann":
        item = cur.atom("modulus")
        q = parse_fraction(item.text, item)
        if q < 0:
            raise error_at(item, "modulus must be non-negative")
        nxt = cur.peek()
        if isinstance(nxt, Atom) and nxt.text.startswith("side="):
            cur.next()
            if nxt.text == "side=nod":
                return ExtModulus(q)
            if nxt.text != "side=fr":
                raise error_at(nxt, f"unknown side {nxt.text[5:]!r}")
        return Annulus(q)
    if tag == "nod":
        return INF
    if tag == "dg":
        from .dualgraph import read_components

        return read_components(cur, head, kind="dg")
    raise error_at(head, f"unknown decoration tag {tag!r}")


class SurfaceCodec:
    """Tree codec for surface decorations; checks arity against valency at parse time."""

    def encode(self, x) -> str:
        return encode_dec(x)

    def decode(self, cur: Cursor):
        return decode_dec(cur)


def parse_dec_text(text: str):
    from ..sexp import parse_one

    expr = parse_one(text)
    if not isinstance(expr, SList):
        expr = SList((expr,), expr.line, expr.column)
    cur = Cursor(expr.items, owner=expr)
    x = decode_dec(cur)
    if not cur.done():
        raise error_at(cur.peek(), "trailing tokens after decoration")
    return x
