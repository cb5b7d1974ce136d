"""Extended annulus moduli: exact non-negative rationals plus infinity."""

from __future__ import annotations

from fractions import Fraction


class ExtModulus:
    """A value in [0, inf] under addition.  ``None`` internally stands for inf."""

    __slots__ = ("value",)

    def __init__(self, value):
        if value is None or value == "inf":
            self.value = None
            return
        q = Fraction(value)
        if q < 0:
            raise ValueError(f"modulus must be non-negative, got {q}")
        self.value = q

    @property
    def infinite(self) -> bool:
        return self.value is None

    def __add__(self, other: ExtModulus) -> ExtModulus:
        if self.infinite or other.infinite:
            return INF
        return ExtModulus(self.value + other.value)

    def __eq__(self, other):
        return isinstance(other, ExtModulus) and self.value == other.value

    def __hash__(self):
        return hash(("mod", self.value))

    def __lt__(self, other):
        if self.infinite:
            return False
        return other.infinite or self.value < other.value

    def __repr__(self):
        return "ExtModulus(inf)" if self.infinite else f"ExtModulus({self.value})"

    def __str__(self):
        if self.infinite:
            return "inf"
        q = self.value
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


INF = ExtModulus(None)
ZERO = ExtModulus(0)


def ann_compose(a: ExtModulus, b: ExtModulus) -> ExtModulus:
    return a + b


def grid_sums(grid, max_terms: int) -> dict[Fraction, int]:
    """Each value reachable as a sum of 1..max_terms grid entries, mapped to the fewest terms."""
    best: dict[Fraction, int] = {}
    layer = {Fraction(0): 0}
    for k in range(1, max_terms + 1):
        nxt = {}
        for s in layer:
            for g in grid:
                t = s + Fraction(g)
                if t not in best:
                    best[t] = k
                nxt[t] = k
        layer = nxt
    return best
