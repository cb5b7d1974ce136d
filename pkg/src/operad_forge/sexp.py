"""Whitespace-separated s-expressions with source positions.

Atoms are maximal runs of non-whitespace, non-parenthesis characters.  Lists
remember where they opened so decoders can report line/column diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class SexpError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Atom:
    text: str
    line: int = 0
    column: int = 0

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class SList:
    items: tuple = ()
    line: int = 0
    column: int = 0

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]


def _tokens(text: str):
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line, col = line + 1, 1
            i += 1
        elif ch.isspace():
            i += 1
            col += 1
        elif ch in "()":
            yield ch, line, col
            i += 1
            col += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "()":
                j += 1
            yield text[i:j], line, col
            col += j - i
            i = j


def parse_all(text: str) -> list:
    """Parse every top-level expression in ``text``."""
    stack: list[tuple[list, int, int]] = [([], 0, 0)]
    for tok, line, col in _tokens(text):
        if tok == "(":
            stack.append(([], line, col))
        elif tok == ")":
            if len(stack) == 1:
                raise SexpError("unbalanced ')'", line, col)
            items, l0, c0 = stack.pop()
            stack[-1][0].append(SList(tuple(items), l0, c0))
        else:
            stack[-1][0].append(Atom(tok, line, col))
    if len(stack) != 1:
        _, l0, c0 = stack[-1]
        raise SexpError("unclosed '('", l0, c0)
    return stack[0][0]


def parse_one(text: str):
    items = parse_all(text)
    if len(items) != 1:
        if not items:
            raise SexpError("empty input", 1, 1)
        extra = items[1]
        raise SexpError("trailing expression after the first one", extra.line, extra.column)
    return items[0]


@dataclass
class Cursor:
    """Sequential reader over the items of one list."""

    items: tuple
    pos: int = 0
    owner: SList | None = field(default=None, repr=False)

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else None

    def next(self):
        item = self.peek()
        if item is None:
            line, col = (self.owner.line, self.owner.column) if self.owner else (0, 0)
            raise SexpError("unexpected end of list", line, col)
        self.pos += 1
        return item

    def atom(self, what: str = "atom") -> Atom:
        item = self.next()
        if not isinstance(item, Atom):
            raise SexpError(f"expected {what}, got a list", item.line, item.column)
        return item

    def slist(self, what: str = "list") -> SList:
        item = self.next()
        if not isinstance(item, SList):
            raise SexpError(f"expected {what}, got {item.text!r}", item.line, item.column)
        return item

    def done(self) -> bool:
        return self.pos >= len(self.items)


def error_at(item, message: str) -> SexpError:
    return SexpError(message, getattr(item, "line", 0), getattr(item, "column", 0))
