"""Arithmetic in C_n x|_s C_2 and in plain cyclic groups.

Elements of the metacyclic group are pairs ``(a, b)`` standing for
``x^a y^b`` with ``x^2 = y^n = 1`` and ``y x = x y^s``.  Every finite group
used by the search code is a :class:`Group`: elements indexed
``0..order-1`` (index ``a*n + b``), identity at index 0, with the full
multiplication table built once at construction.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional


class GroupElement(NamedTuple):
    """``x^a y^b`` in canonical form, ``a`` in {0, 1} and ``0 <= b < n``."""

    a: int
    b: int


class Tag(str, enum.Enum):
    ABELIAN = "AbelianCyclicLike"
    DIHEDRAL = "Dihedral"
    METACYCLIC = "PaperMetacyclic"
    INVALID = "Invalid"


class SubTag(str, enum.Enum):
    QUASIDIHEDRAL = "Quasidihedral"
    MODULAR = "ModularMaximalCyclic"
    GENERIC = "Generic"


@dataclass(frozen=True)
class GroupClass:
    tag: Tag
    subtag: Optional[SubTag] = None

    def __str__(self) -> str:
        if self.subtag is None:
            return self.tag.value
        return f"{self.tag.value}/{self.subtag.value}"


@dataclass(frozen=True)
class MetacyclicParams:
    """The pair ``(n, s)`` with ``s`` reduced mod ``n``; see :func:`validate_params`."""

    n: int
    s: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if not 0 <= self.s < self.n:
            object.__setattr__(self, "s", self.s % self.n)

    @property
    def classification(self) -> GroupClass:
        return validate_params(self.n, self.s)

    @property
    def is_nonabelian_nondihedral(self) -> bool:
        return self.classification.tag is Tag.METACYCLIC

    @property
    def is_modular(self) -> bool:
        return self.classification.subtag is SubTag.MODULAR


def _power_of_two_exponent(n: int) -> Optional[int]:
    if n > 0 and n & (n - 1) == 0:
        return n.bit_length() - 1
    return None


def validate_params(n: int, s: int) -> GroupClass:
    """Classify the pair ``(n, s)``.

    >>> str(validate_params(8, 3))
    'PaperMetacyclic/Quasidihedral'
    >>> str(validate_params(8, 2))
    'Invalid'
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    s %= n
    if (s * s) % n != 1 % n:
        return GroupClass(Tag.INVALID)
    if s == 1 % n:
        return GroupClass(Tag.ABELIAN)
    if s == n - 1:
        return GroupClass(Tag.DIHEDRAL)
    t = _power_of_two_exponent(n)
    if t is not None and t >= 3:
        if s == 2 ** (t - 1) - 1:
            return GroupClass(Tag.METACYCLIC, SubTag.QUASIDIHEDRAL)
        if s == 2 ** (t - 1) + 1:
            return GroupClass(Tag.METACYCLIC, SubTag.MODULAR)
    return GroupClass(Tag.METACYCLIC, SubTag.GENERIC)


def _require_valid(p: MetacyclicParams) -> None:
    if p.classification.tag is Tag.INVALID:
        raise ValueError(f"s^2 != 1 mod n for (n, s) = ({p.n}, {p.s})")


def identity(p: MetacyclicParams) -> GroupElement:
    return GroupElement(0, 0)


def mul(p: MetacyclicParams, g: GroupElement, h: GroupElement) -> GroupElement:
    # (x^a y^b)(x^c y^d) = x^(a+c) y^(b s^c + d), using y^b x = x y^(b s)
    a, b = g
    c, d = h
    twist = p.s if c else 1
    return GroupElement((a + c) % 2, (b * twist + d) % p.n)


def inverse(p: MetacyclicParams, g: GroupElement) -> GroupElement:
    a, b = g
    if a == 0:
        return GroupElement(0, (-b) % p.n)
    # (x y^b)^{-1} = y^{-b} x = x y^{-b s}
    return GroupElement(1, (-b * p.s) % p.n)


def pow(p: MetacyclicParams, g: GroupElement, k: int) -> GroupElement:
    """``g^k`` by repeated squaring; negative ``k`` goes through the inverse."""
    if k < 0:
        g, k = inverse(p, g), -k
    result = identity(p)
    base = g
    while k:
        if k & 1:
            result = mul(p, result, base)
        base = mul(p, base, base)
        k >>= 1
    return result


def element_order(p: MetacyclicParams, g: GroupElement) -> int:
    e = identity(p)
    h = g
    k = 1
    while h != e:
        h = mul(p, h, g)
        k += 1
    return k


class Group:
    """A finite group of order <= 64 with a precomputed multiplication table.

    Build with :meth:`metacyclic` or :meth:`cyclic`.  Products of element
    sets are handled as integer bitmasks (bit ``i`` for element index ``i``);
    :meth:`rmul_mask` maps a mask ``M`` to ``{m h : m in M}``.
    """

    MAX_ORDER = 64

    def __init__(self, kind: str, n: int, s: int, elements: list[GroupElement], table: list[list[int]]):
        self.kind = kind
        self.n = n
        self.s = s
        self.order = len(elements)
        if self.order > self.MAX_ORDER:
            raise ValueError(f"group order {self.order} exceeds {self.MAX_ORDER}")
        self.elements = elements
        self.index = {g: i for i, g in enumerate(elements)}
        self.table = table
        self.inv = [row.index(0) for row in table]
        self.full_mask = (1 << self.order) - 1
        self._build_mask_tables()

    @classmethod
    @functools.lru_cache(maxsize=None)
    def metacyclic(cls, n: int, s: int) -> "Group":
        p = MetacyclicParams(n, s)
        _require_valid(p)
        elements = [GroupElement(a, b) for a in (0, 1) for b in range(n)]
        idx = {g: i for i, g in enumerate(elements)}
        table = [[idx[mul(p, g, h)] for h in elements] for g in elements]
        return cls("metacyclic", p.n, p.s, elements, table)

    @classmethod
    @functools.lru_cache(maxsize=None)
    def cyclic(cls, m: int) -> "Group":
        """C_m generated by ``y``; elements are ``(0, b)``."""
        if m < 1:
            raise ValueError(f"m must be >= 1, got {m}")
        elements = [GroupElement(0, b) for b in range(m)]
        table = [[(i + j) % m for j in range(m)] for i in range(m)]
        return cls("cyclic", m, 1, elements, table)

    @property
    def params(self) -> Optional[MetacyclicParams]:
        if self.kind == "metacyclic":
            return MetacyclicParams(self.n, self.s)
        return None

    @property
    def spec(self) -> str:
        if self.kind == "metacyclic":
            return f"metacyclic:n={self.n},s={self.s}"
        return f"cyclic:m={self.n}"

    def __repr__(self) -> str:
        return f"Group({self.spec!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Group) and other.spec == self.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def __reduce__(self):
        # rebuild from the spec string in worker processes instead of pickling tables
        if self.kind == "metacyclic":
            return (Group.metacyclic, (self.n, self.s))
        return (Group.cyclic, (self.n,))

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def product(self, indices) -> int:
        p = 0
        table = self.table
        for i in indices:
            p = table[p][i]
        return p

    def in_normal_subgroup(self, i: int) -> bool:
        """True for elements of H = <y>, i.e. ``a == 0``."""
        return self.elements[i].a == 0

    def _build_mask_tables(self) -> None:
        # split masks into k chunks of w <= 12 bits; one lookup row per chunk
        k = max(1, -(-self.order // 12))
        w = -(-self.order // k)
        size = 1 << w
        tables = []
        for h in range(self.order):
            rows = []
            for c in range(k):
                row = [0] * size
                for v in range(1, size):
                    low = v & -v
                    i = c * w + low.bit_length() - 1
                    img = 1 << self.table[i][h] if i < self.order else 0
                    row[v] = row[v ^ low] | img
                rows.append(row)
            tables.append(tuple(rows))
        self._mask_tables = tables
        self.rmul_mask = _make_rmul(tables, k, w)

    def mask_to_indices(self, mask: int) -> list[int]:
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    def closure(self, generators) -> set[int]:
        """Subgroup generated by the given element indices (BFS on right multiplication)."""
        seen = {0}
        frontier = [0]
        gens = list(generators)
        while frontier:
            nxt = []
            for g in frontier:
                for h in gens:
                    k = self.table[g][h]
                    if k not in seen:
                        seen.add(k)
                        nxt.append(k)
            frontier = nxt
        return seen


def _make_rmul(tables, k: int, w: int):
    low = (1 << w) - 1
    if k == 1:
        def rmul(mask: int, h: int) -> int:
            return tables[h][0][mask]
    elif k == 2:
        def rmul(mask: int, h: int) -> int:
            t0, t1 = tables[h]
            return t0[mask & low] | t1[mask >> w]
    elif k == 3:
        w2 = 2 * w

        def rmul(mask: int, h: int) -> int:
            t0, t1, t2 = tables[h]
            return t0[mask & low] | t1[mask >> w & low] | t2[mask >> w2]
    else:
        def rmul(mask: int, h: int) -> int:
            out = 0
            for row in tables[h]:
                out |= row[mask & low]
                mask >>= w
            return out
    return rmul


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)
