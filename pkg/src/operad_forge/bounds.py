"""Enumeration bounds shared by instances, checkers and the verifier."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction


def _grid(values) -> tuple[Fraction, ...]:
    return tuple(sorted({Fraction(v) for v in values}))


@dataclass(frozen=True)
class Bounds:
    max_arity: int = 4
    max_genus: int = 3
    max_vertices: int = 5
    modulus_grid: tuple = field(default=(0, Fraction(1, 4), Fraction(1, 2), 1))
    length_grid: tuple = field(default=(0, Fraction(1, 2), 1))
    trial_count: int = 100
    seed: int = 0
    max_nodes: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "modulus_grid", _grid(self.modulus_grid))
        object.__setattr__(self, "length_grid", _grid(self.length_grid))
        if self.max_arity < 1 or self.max_vertices < 1:
            raise ValueError("max_arity and max_vertices must be at least 1")
        if self.max_genus < 0:
            raise ValueError("max_genus must be non-negative")
        if any(q < 0 for q in self.modulus_grid):
            raise ValueError("moduli must be non-negative")
        if any(not 0 <= q <= 1 for q in self.length_grid):
            raise ValueError("edge lengths live in [0, 1]")

    def with_(self, **kw) -> Bounds:
        return replace(self, **kw)

    def to_json(self) -> dict:
        d = asdict(self)
        d["modulus_grid"] = [str(q) for q in self.modulus_grid]
        d["length_grid"] = [str(q) for q in self.length_grid]
        return d
