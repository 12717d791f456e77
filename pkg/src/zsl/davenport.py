"""Small Davenport constant by exhaustive pruned search."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .group import Group, Tag, validate_params
from .products import is_product_one_free
from .search import search
from .sequence import Sequence


@dataclass
class DavenportResult:
    group: Group
    d: int
    witness: Sequence
    nodes_explored: int
    pruned: int
    exhaustive: bool
    max_len_reached: bool
    by_length: list[int] = field(default_factory=list)
    runtime_ms: float = 0.0

    def to_json(self, stats: bool = True) -> dict:
        out = {
            "group": self.group.spec,
            "d": self.d,
            "witness": str(self.witness),
            "exhaustive": self.exhaustive,
            "max_len_reached": self.max_len_reached,
            "pof_count_by_length": self.by_length,
        }
        if stats:
            out["stats"] = {
                "nodes_explored": self.nodes_explored,
                "pruned": self.pruned,
                "runtime_ms": round(self.runtime_ms, 3),
            }
        return out


def small_davenport(
    group: Group,
    max_len: int,
    state_budget: Optional[int] = None,
    time_budget_ms: Optional[int] = None,
    workers: int = 1,
) -> DavenportResult:
    """Largest length of a product-one free sequence, searched up to ``max_len``.

    If a product-one free sequence of length ``max_len`` exists the answer
    is only a lower bound and ``max_len_reached`` is set.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    t0 = time.perf_counter()
    res = search(group, max_len, state_budget=state_budget, time_budget_ms=time_budget_ms, workers=workers)
    d = res.deepest
    witness = Sequence.from_indices(group, res.first_at[d])
    ok, _ = is_product_one_free(witness, state_budget)
    if not ok:  # pragma: no cover - would mean the search itself is wrong
        raise AssertionError(f"search returned a non product-one free witness {witness}")
    reached = d == max_len
    return DavenportResult(
        group=group,
        d=d,
        witness=witness,
        nodes_explored=res.nodes,
        pruned=res.pruned,
        exhaustive=res.complete and not reached,
        max_len_reached=reached,
        by_length=res.by_length,
        runtime_ms=(time.perf_counter() - t0) * 1000,
    )


def verify_davenport_claims(
    pairs: Iterable[tuple[int, int]],
    state_budget: Optional[int] = None,
    workers: int = 1,
    stats: bool = True,
) -> dict:
    """Check ``d(C_n x|_s C_2) = n`` for each pair; mismatches become falsification records."""
    records = []
    falsifications = []
    for n, s in pairs:
        if validate_params(n, s).tag is not Tag.METACYCLIC:
            raise ValueError(f"({n}, {s}) is not a non-abelian, non-dihedral pair")
        r = small_davenport(Group.metacyclic(n, s), n + 1, state_budget=state_budget, workers=workers)
        ok = r.exhaustive and r.d == n
        rec = {"n": n, "s": s, "expected": n, "d": r.d, "ok": ok, "witness": str(r.witness)}
        if stats:
            rec["stats"] = {"nodes_explored": r.nodes_explored, "pruned": r.pruned, "runtime_ms": round(r.runtime_ms, 3)}
        records.append(rec)
        if not ok:
            falsifications.append({"n": n, "s": s, "expected": n, "found": r.d, "exhaustive": r.exhaustive})
    return {"records": records, "falsifications": falsifications}
