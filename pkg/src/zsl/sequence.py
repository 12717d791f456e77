"""Sequences over a finite group: unordered multisets of elements.

A :class:`Sequence` stores a dense multiplicity vector indexed by element
index, which doubles as its hash key.  Text form::

    (y^3)^[7] * x*y^2

Terms are separated by a ``*`` with whitespace on at least one side, so
``x*y^2`` (no spaces) is the single element ``x y^2``.
"""

from __future__ import annotations

import itertools
import math
import re
from typing import Callable, Iterable, Iterator, Optional

from .group import Group, GroupElement


class SequenceParseError(ValueError):
    def __init__(self, message: str, token: str):
        super().__init__(f"{message}: {token!r}")
        self.token = token


class Sequence:
    """Finite multiset of elements of ``group``."""

    __slots__ = ("group", "counts", "length")

    def __init__(self, group: Group, counts: Iterable[int] = ()):
        counts = tuple(counts)
        if not counts:
            counts = (0,) * group.order
        if len(counts) != group.order:
            raise ValueError(f"expected {group.order} multiplicities, got {len(counts)}")
        if any(c < 0 for c in counts):
            raise ValueError("multiplicities must be non-negative")
        self.group = group
        self.counts = counts
        self.length = sum(counts)

    @classmethod
    def from_indices(cls, group: Group, indices: Iterable[int]) -> "Sequence":
        counts = [0] * group.order
        for i in indices:
            counts[i] += 1
        return cls(group, counts)

    @classmethod
    def from_elements(cls, group: Group, elements: Iterable) -> "Sequence":
        return cls.from_indices(group, (group.index[GroupElement(*g)] for g in elements))

    @classmethod
    def from_terms(cls, group: Group, terms: Iterable[tuple]) -> "Sequence":
        """Build from ``(element, multiplicity)`` pairs."""
        counts = [0] * group.order
        for g, k in terms:
            counts[group.index[GroupElement(*g)]] += k
        return cls(group, counts)

    def __len__(self) -> int:
        return self.length

    def __eq__(self, other) -> bool:
        return isinstance(other, Sequence) and self.group == other.group and self.counts == other.counts

    def __hash__(self) -> int:
        return hash(self.counts)

    def __lt__(self, other: "Sequence") -> bool:
        return self.indices() < other.indices()

    def __repr__(self) -> str:
        return f"Sequence({format_sequence(self)!r})"

    def __str__(self) -> str:
        return format_sequence(self)

    def multiplicity(self, g) -> int:
        if not isinstance(g, int):
            g = self.group.index[GroupElement(*g)]
        return self.counts[g]

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.counts) if c]

    def indices(self) -> tuple[int, ...]:
        """Terms as a nondecreasing tuple of element indices."""
        return tuple(i for i, c in enumerate(self.counts) for _ in range(c))

    def elements(self) -> list[GroupElement]:
        return [self.group.elements[i] for i in self.indices()]

    def to_json(self) -> list[dict]:
        return [
            {"a": self.group.elements[i].a, "b": self.group.elements[i].b, "mult": c}
            for i, c in enumerate(self.counts)
            if c
        ]

    @classmethod
    def from_json(cls, group: Group, data: list[dict]) -> "Sequence":
        counts = [0] * group.order
        for term in data:
            g = _element(group, int(term["a"]), int(term["b"]), str(term))
            counts[g] += int(term.get("mult", 1))
        return cls(group, counts)


def _check_same_group(S: Sequence, T: Sequence) -> None:
    if S.group != T.group:
        raise ValueError(f"sequences over different groups: {S.group.spec} vs {T.group.spec}")


def concat(S: Sequence, T: Sequence) -> Sequence:
    _check_same_group(S, T)
    return Sequence(S.group, (a + b for a, b in zip(S.counts, T.counts)))


def divides(T: Sequence, S: Sequence) -> bool:
    _check_same_group(S, T)
    return all(a <= b for a, b in zip(T.counts, S.counts))


def remove(S: Sequence, T: Sequence) -> Sequence:
    """``S * T^[-1]``; ``T`` must divide ``S``."""
    if not divides(T, S):
        raise ValueError(f"{T} does not divide {S}")
    return Sequence(S.group, (a - b for a, b in zip(S.counts, T.counts)))


def restrict(S: Sequence, predicate: Callable[[GroupElement], bool]) -> Sequence:
    elements = S.group.elements
    return Sequence(S.group, (c if c and predicate(elements[i]) else 0 for i, c in enumerate(S.counts)))


def in_H(g: GroupElement) -> bool:
    return g.a == 0


def in_N(g: GroupElement) -> bool:
    return g.a == 1


def enumerate_multisets(
    group: Group,
    k: int,
    prune: Optional[Callable[[tuple[int, ...]], bool]] = None,
) -> Iterator[Sequence]:
    """Every multiset of size ``k``, in lexicographic order of index tuples.

    ``prune(prefix)`` is called on each proper nonempty prefix (a
    nondecreasing index tuple); returning True skips every multiset that
    extends it.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if prune is None:
        for combo in itertools.combinations_with_replacement(range(group.order), k):
            yield Sequence.from_indices(group, combo)
        return

    prefix: list[int] = []

    def rec(start: int) -> Iterator[Sequence]:
        if len(prefix) == k:
            yield Sequence.from_indices(group, prefix)
            return
        for g in range(start, group.order):
            prefix.append(g)
            if len(prefix) == k or not prune(tuple(prefix)):
                yield from rec(g)
            prefix.pop()

    yield from rec(0)


def count_multisets(order: int, k: int) -> int:
    return math.comb(order + k - 1, k)


# text grammar

_SEPARATOR = re.compile(r"\s+\*\s*|\s*\*\s+|\s*·\s*")
_TERM = re.compile(r"^\((?P<elem>[^()]*)\)\^\[(?P<mult>[^\]]*)\]$|^(?P<bare>[^()]*)$")
_ELEMENT = re.compile(r"^(?:(?P<x>x)(?:\*?(?=y))?)?(?:y(?:\^(?P<exp>-?\d+))?)?$")


def _element(group: Group, a: int, b: int, token: str) -> int:
    if group.kind == "cyclic":
        if a:
            raise SequenceParseError("cyclic groups have no x", token)
        return b % group.n
    return group.index[GroupElement(a % 2, b % group.n)]


def parse_element(group: Group, token: str) -> int:
    text = token.strip().replace(" ", "")
    if text == "1":
        return 0
    m = _ELEMENT.match(text)
    if not text or m is None:
        raise SequenceParseError("bad element", token)
    a = 1 if m.group("x") else 0
    has_y = "y" in text
    if not a and not has_y:
        raise SequenceParseError("bad element", token)
    b = int(m.group("exp")) if m.group("exp") is not None else (1 if has_y else 0)
    return _element(group, a, b, token)


def parse_sequence(group: Group, text: str) -> Sequence:
    text = text.strip()
    counts = [0] * group.order
    if not text:
        return Sequence(group, counts)
    for raw in _SEPARATOR.split(text):
        term = raw.strip()
        m = _TERM.match(term)
        if not term or m is None:
            raise SequenceParseError("bad term", raw)
        if m.group("bare") is not None:
            counts[parse_element(group, m.group("bare"))] += 1
            continue
        mult = m.group("mult").strip()
        if not mult.isdigit():
            raise SequenceParseError("bad multiplicity", mult)
        counts[parse_element(group, m.group("elem"))] += int(mult)
    return Sequence(group, counts)


def format_element(g: GroupElement) -> str:
    if g.a == 0:
        return "1" if g.b == 0 else f"y^{g.b}"
    return "x" if g.b == 0 else f"x*y^{g.b}"


def format_sequence(S: Sequence) -> str:
    parts = []
    for i, c in enumerate(S.counts):
        if not c:
            continue
        elem = format_element(S.group.elements[i])
        parts.append(elem if c == 1 else f"({elem})^[{c}]")
    return " * ".join(parts)
