"""Product sets of sequences in (possibly non-abelian) groups.

For a sequence ``S`` the engine fills a table indexed by the sub-multisets
``U`` of ``S``; each entry is the bitmask of ``pi(U)``, the products of all
orderings of ``U``.  Since every ordering of ``U`` ends in some term ``h``,

    pi(U) = union over h in supp(U) of  pi(U - h) * h,   pi(empty) = {1}.

Sub-multisets are addressed in mixed radix over the sorted support, so the
table for ``S`` is a prefix of the table for ``S`` extended by its largest
element.  :mod:`zsl.search` relies on that to grow tables in place.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Optional

from .group import Group, GroupElement
from .sequence import Sequence

DEFAULT_STATE_BUDGET = 10**7


class StateBudgetExceeded(RuntimeError):
    """The DP would need more (sub-multiset, product) cells than allowed."""

    def __init__(self, needed: int, budget: int):
        super().__init__(f"DP needs {needed} states, budget is {budget}")
        self.needed = needed
        self.budget = budget


def default_state_budget() -> int:
    env = os.environ.get("ZSL_STATE_BUDGET")
    return int(env) if env else DEFAULT_STATE_BUDGET


@dataclass(frozen=True)
class ProductReport:
    pi: frozenset
    subproducts: frozenset
    product_one_free: bool
    witness: Optional[tuple] = None

    def to_json(self) -> dict:
        def fmt(elements):
            return sorted([list(g) for g in elements])

        return {
            "pi": fmt(self.pi),
            "subproducts": fmt(self.subproducts),
            "product_one_free": self.product_one_free,
            "witness": [list(g) for g in self.witness] if self.witness else None,
        }


class SubproductTable:
    """The ``pi(U)`` table over all sub-multisets ``U`` of one sequence."""

    def __init__(self, S: Sequence, state_budget: Optional[int] = None):
        group = S.group
        budget = default_state_budget() if state_budget is None else state_budget
        self.group = group
        self.support = S.support()
        self.mults = [S.counts[h] for h in self.support]
        self.strides = []
        size = 1
        for v in self.mults:
            self.strides.append(size)
            size *= v + 1
        if size * group.order > budget:
            raise StateBudgetExceeded(size * group.order, budget)
        self.size = size
        self.masks: list[int] = []
        self.first_identity: Optional[int] = None

    def fill(self, stop_at_identity: bool = False) -> "SubproductTable":
        group = self.group
        rmul = group.rmul_mask
        masks = [1]
        coords = list(zip(self.support, self.strides, self.mults))
        for idx in range(1, self.size):
            m = 0
            for h, stride, v in coords:
                if (idx // stride) % (v + 1):
                    m |= rmul(masks[idx - stride], h)
            masks.append(m)
            if m & 1 and self.first_identity is None:
                self.first_identity = idx
                if stop_at_identity:
                    break
        self.masks = masks
        return self

    def digits(self, idx: int) -> list[int]:
        return [(idx // stride) % (v + 1) for stride, v in zip(self.strides, self.mults)]

    def pi_mask(self) -> int:
        return self.masks[self.size - 1]

    def subproducts_mask(self) -> int:
        out = 0
        for m in self.masks[1:]:
            out |= m
        return out

    def trace(self, idx: int, target: int) -> list[int]:
        """An ordering of sub-multiset ``idx`` whose product is ``target``."""
        group = self.group
        order: list[int] = []
        while idx:
            for h, stride, v in zip(self.support, self.strides, self.mults):
                if not (idx // stride) % (v + 1):
                    continue
                prev = group.table[target][group.inv[h]]
                if self.masks[idx - stride] >> prev & 1:
                    order.append(h)
                    target = prev
                    idx -= stride
                    break
            else:  # pragma: no cover - table is consistent by construction
                raise AssertionError("inconsistent subproduct table")
        order.reverse()
        return order


def _elements(group: Group, mask: int) -> frozenset:
    return frozenset(group.elements[i] for i in group.mask_to_indices(mask))


def compute_products(S: Sequence, state_budget: Optional[int] = None) -> ProductReport:
    """Exact ``pi(S)`` and ``Pi(S)`` with a witness when ``1 in Pi(S)``."""
    group = S.group
    table = SubproductTable(S, state_budget).fill()
    witness = None
    if table.first_identity is not None:
        witness = tuple(group.elements[i] for i in table.trace(table.first_identity, 0))
    return ProductReport(
        pi=_elements(group, table.pi_mask()) if S.length else frozenset(),
        subproducts=_elements(group, table.subproducts_mask()),
        product_one_free=table.first_identity is None,
        witness=witness,
    )


def is_product_one_free(
    S: Sequence, state_budget: Optional[int] = None
) -> tuple[bool, Optional[tuple]]:
    """``(True, None)`` or ``(False, witness)``; stops at the first identity hit."""
    group = S.group
    if S.counts[0]:
        return False, (group.elements[0],)
    table = SubproductTable(S, state_budget).fill(stop_at_identity=True)
    if table.first_identity is None:
        return True, None
    return False, tuple(group.elements[i] for i in table.trace(table.first_identity, 0))


def brute_force_oracle(S: Sequence) -> ProductReport:
    """Every ordering of every nonempty sub-multiset, by direct enumeration."""
    if S.length > 8:
        raise ValueError(f"brute force limited to |S| <= 8, got {S.length}")
    group = S.group
    terms = S.indices()
    k = len(terms)
    pi: set[int] = set()
    sub: set[int] = set()
    witness = None
    for r in range(1, k + 1):
        for positions in itertools.combinations(range(k), r):
            for perm in itertools.permutations(positions):
                p = group.product(terms[i] for i in perm)
                sub.add(p)
                if r == k:
                    pi.add(p)
                if p == 0 and witness is None:
                    witness = tuple(group.elements[terms[i]] for i in perm)
    return ProductReport(
        pi=frozenset(group.elements[i] for i in pi),
        subproducts=frozenset(group.elements[i] for i in sub),
        product_one_free=0 not in sub,
        witness=witness,
    )


def multiply_out(group: Group, elements) -> GroupElement:
    return group.elements[group.product(group.index[GroupElement(*g)] for g in elements)]
