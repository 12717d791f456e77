"""Exhaustive depth-first search over product-one free multisets.

Multisets are grown in nondecreasing element-index order, so each one is
visited exactly once, and a branch is cut as soon as its multiset stops
being product-one free (the property is inherited by sub-multisets).

Two facts keep the search cheap:

* Rotating an ordering of ``T * g`` with product 1 so that ``g`` comes last
  still gives product 1, hence ``S * g`` is product-one free iff ``S`` is,
  ``g != 1`` and ``g^{-1}`` is not in ``Pi(S)``.
* The subproduct table of ``S * g`` (``g`` >= every index in ``S``)
  is the table of ``S`` plus one appended block (see :mod:`zsl.products`),
  so the tables live on a single stack that is truncated on backtrack.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .group import Group
from .products import StateBudgetExceeded, default_state_budget


class _Timeout(Exception):
    pass


@dataclass
class SearchResult:
    max_len: int
    by_length: list[int]
    found: dict[int, list[tuple[int, ...]]]
    first_at: dict[int, tuple[int, ...]]
    nodes: int = 0
    pruned: int = 0
    complete: bool = True
    roots_done: list[int] = field(default_factory=list)

    @property
    def deepest(self) -> int:
        return max((d for d, c in enumerate(self.by_length) if c), default=0)


class PofSearch:
    """Walk every product-one free multiset of length <= ``max_len``.

    ``collect`` lists the lengths whose multisets are stored (as
    nondecreasing index tuples); counts per length and the first multiset
    met at each length are always kept.
    """

    def __init__(
        self,
        group: Group,
        max_len: int,
        collect: Iterable[int] = (),
        state_budget: Optional[int] = None,
        deadline: Optional[float] = None,
    ):
        if max_len < 0:
            raise ValueError("max_len must be >= 0")
        self.group = group
        self.max_len = max_len
        self.collect = frozenset(collect)
        self.state_budget = default_state_budget() if state_budget is None else state_budget
        self.deadline = deadline

    def run(self, roots: Optional[Iterable[int]] = None) -> SearchResult:
        group = self.group
        result = SearchResult(
            max_len=self.max_len,
            by_length=[0] * (self.max_len + 1),
            found={d: [] for d in self.collect},
            first_at={},
        )
        self._result = result
        self._masks = [1]
        self._path: list[int] = []
        self._tick = 0
        if roots is None:
            # a partial run leaves the empty multiset to whoever merges
            self._record(0)
            roots = range(1, group.order)
        try:
            for r in sorted(roots):
                self._children(0, [], 0, only=r)
                result.roots_done.append(r)
        except _Timeout:
            result.complete = False
        return result

    def _record(self, depth: int) -> None:
        result = self._result
        result.nodes += 1
        result.by_length[depth] += 1
        path = tuple(self._path)
        if depth not in result.first_at:
            result.first_at[depth] = path
        if depth in self.collect:
            result.found[depth].append(path)

    def _children(self, start: int, support: list, pi_mask: int, only: Optional[int] = None) -> None:
        group = self.group
        inv = group.inv
        depth = len(self._path)
        result = self._result
        candidates = range(start, group.order) if only is None else (only,)
        for g in candidates:
            if g == 0 or pi_mask >> inv[g] & 1:
                result.pruned += 1
                continue
            self._path.append(g)
            self._record(depth + 1)
            if depth + 1 < self.max_len:
                self._tick += 1
                if self.deadline is not None and not self._tick & 255 and time.monotonic() > self.deadline:
                    raise _Timeout
                mark = len(self._masks)
                child_support, child_pi = self._extend(support, g, pi_mask)
                self._children(g, child_support, child_pi)
                del self._masks[mark:]
            self._path.pop()

    def _extend(self, support: list, g: int, pi_mask: int) -> tuple[list, int]:
        # support entries: (element, stride, multiplicity), sorted by element
        masks = self._masks
        rmul = self.group.rmul_mask
        if support and support[-1][0] == g:
            _, stride, c = support[-1]
            lower = support[:-1]
            child = lower + [(g, stride, c + 1)]
            base = (c + 1) * stride
        else:
            stride = len(masks)
            lower = support
            child = support + [(g, stride, 1)]
            base = stride
        if (base + stride) * self.group.order > self.state_budget:
            raise StateBudgetExceeded((base + stride) * self.group.order, self.state_budget)
        prev = base - stride
        # digit of coordinate (h, st, v) at L is nonzero iff L % (st*(v+1)) >= st
        coords = [(h, st, st * (v + 1), base - st) for h, st, v in lower]
        for L in range(stride):
            m = rmul(masks[prev + L], g)
            for h, st, period, back in coords:
                if L % period >= st:
                    m |= rmul(masks[back + L], h)
            masks.append(m)
            pi_mask |= m
        return child, pi_mask


def _run_roots(args) -> SearchResult:
    group, max_len, collect, budget, deadline, roots = args
    # time.monotonic is per-process; convert the wall-clock deadline
    local = None if deadline is None else time.monotonic() + (deadline - time.time())
    return PofSearch(group, max_len, collect, budget, local).run(roots)


def search(
    group: Group,
    max_len: int,
    collect: Iterable[int] = (),
    state_budget: Optional[int] = None,
    time_budget_ms: Optional[int] = None,
    workers: int = 1,
) -> SearchResult:
    """Run :class:`PofSearch`, optionally split by first element across processes.

    The merged result does not depend on ``workers``: counts add up, stored
    multisets are sorted and ``first_at`` keeps the lexicographically least.
    """
    collect = tuple(collect)
    budget = default_state_budget() if state_budget is None else state_budget
    if workers <= 1:
        deadline = None if time_budget_ms is None else time.monotonic() + time_budget_ms / 1000
        return PofSearch(group, max_len, collect, budget, deadline).run()

    wall_deadline = None if time_budget_ms is None else time.time() + time_budget_ms / 1000
    roots = list(range(1, group.order))
    chunks = [roots[i::workers] for i in range(workers)]
    jobs = [(group, max_len, collect, budget, wall_deadline, c) for c in chunks if c]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_run_roots, jobs))

    merged = SearchResult(
        max_len=max_len,
        by_length=[0] * (max_len + 1),
        found={d: [] for d in collect},
        first_at={},
    )
    merged.by_length[0] = 1
    merged.first_at[0] = ()
    merged.nodes = 1
    for part in parts:
        for d in range(1, max_len + 1):
            merged.by_length[d] += part.by_length[d]
        for d, items in part.found.items():
            if d != 0:
                merged.found[d].extend(items)
        for d, path in part.first_at.items():
            if d and (d not in merged.first_at or path < merged.first_at[d]):
                merged.first_at[d] = path
        merged.nodes += part.nodes
        merged.pruned += part.pruned
        merged.complete &= part.complete
        merged.roots_done.extend(part.roots_done)
    if 0 in collect:
        merged.found[0] = [()]
    for items in merged.found.values():
        items.sort()
    merged.roots_done.sort()
    return merged
