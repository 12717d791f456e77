"""Extremal product-one free sequences of length n over C_n x|_s C_2.

The three families:

* ``I``    : ``(y^u)^[n-1] * x y^v`` with ``gcd(u, n) = 1``;
* ``IIxx`` : ``(x y^u)^[n-1] * x y^v`` with ``u`` odd, ``v`` even;
* ``IIxy`` : ``(x y^u)^[n-1] * y^v`` with ``u``, ``v`` odd;

the last two only for ``(n, s) = (2^t, 2^(t-1) + 1)``, ``t >= 3``.  The
converse (nothing else is product-one free at length n) is checked by
exhaustive search, not by re-deriving the case analysis.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Iterator, Optional

from .group import Group, GroupElement, MetacyclicParams, euler_phi
from .products import is_product_one_free
from .search import SearchResult, search
from .sequence import Sequence, format_element, format_sequence

KINDS = ("I", "IIxx", "IIxy")

CASE_NOTES = {
    "a": "|S & H| = n: S lies in the cyclic subgroup H",
    "b": "|S & H| = n-1",
    "c": "|S & H| = n-k with 2 <= k < n/2",
    "d": "|S & H| = n-k with n/2 <= k <= n",
}


@dataclass(frozen=True, order=True)
class ExtremalPattern:
    kind: str
    u: int
    v: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "u": self.u, "v": self.v}


def _params(params) -> MetacyclicParams:
    if isinstance(params, Group):
        params = params.params
    if not isinstance(params, MetacyclicParams):
        params = MetacyclicParams(*params)
    return params


def _require_nonabelian_nondihedral(p: MetacyclicParams) -> None:
    if not p.is_nonabelian_nondihedral:
        raise ValueError(f"(n, s) = ({p.n}, {p.s}) is {p.classification}; expected a non-abelian, non-dihedral pair")


def patterns(params) -> list[ExtremalPattern]:
    """Every pattern instance applicable to ``params``, in sorted order."""
    p = _params(params)
    n = p.n
    out = [ExtremalPattern("I", u, v) for u in range(n) if math.gcd(u, n) == 1 for v in range(n)]
    if p.is_modular:
        out += [ExtremalPattern("IIxx", u, v) for u in range(1, n, 2) for v in range(0, n, 2)]
        out += [ExtremalPattern("IIxy", u, v) for u in range(1, n, 2) for v in range(1, n, 2)]
    return sorted(out)


def predicted_count(params) -> int:
    """Closed form for ``len(patterns(params))``: phi(n) n, plus 2 (n/2)^2 in the modular case."""
    p = _params(params)
    count = euler_phi(p.n) * p.n
    if p.is_modular:
        count += 2 * (p.n // 2) ** 2
    return count


def realize(pattern: ExtremalPattern, params) -> Sequence:
    p = _params(params)
    group = Group.metacyclic(p.n, p.s)
    n = p.n
    heavy_a = 0 if pattern.kind == "I" else 1
    light_a = 0 if pattern.kind == "IIxy" else 1
    return Sequence.from_terms(
        group,
        [((heavy_a, pattern.u % n), n - 1), ((light_a, pattern.v % n), 1)],
    )


def match_pattern(S: Sequence, params=None) -> Optional[ExtremalPattern]:
    """The family instance ``S`` belongs to, or None.  Purely syntactic."""
    p = _params(params if params is not None else S.group)
    n = p.n
    if S.length != n:
        raise ValueError(f"match_pattern needs |S| = n = {n}, got {S.length}")
    support = S.support()
    if len(support) != 2:
        return None
    heavy, light = sorted(support, key=lambda i: -S.counts[i])
    if S.counts[heavy] != n - 1:
        return None
    h: GroupElement = S.group.elements[heavy]
    g: GroupElement = S.group.elements[light]
    if h.a == 0 and g.a == 1 and math.gcd(h.b, n) == 1:
        return ExtremalPattern("I", h.b, g.b)
    if p.is_modular and h.a == 1 and h.b % 2 == 1:
        if g.a == 1 and g.b % 2 == 0:
            return ExtremalPattern("IIxx", h.b, g.b)
        if g.a == 0 and g.b % 2 == 1:
            return ExtremalPattern("IIxy", h.b, g.b)
    return None


def verify_families_pof(params, state_budget: Optional[int] = None) -> dict:
    """Check every family instance is product-one free; failures are reported, not raised."""
    p = _params(params)
    _require_nonabelian_nondihedral(p)
    counts = {k: 0 for k in KINDS}
    failures = []
    for pat in patterns(p):
        S = realize(pat, p)
        counts[pat.kind] += 1
        ok, witness = is_product_one_free(S, state_budget)
        if not ok:
            failures.append({
                "pattern": pat.to_json(),
                "sequence": format_sequence(S),
                "witness": [list(g) for g in witness],
            })
    return {
        "params": {"n": p.n, "s": p.s},
        "class": str(p.classification),
        "families": counts,
        "checked": sum(counts.values()),
        "failures": failures,
    }


def _case_label(S: Sequence) -> str:
    n = S.length
    k = sum(c for i, c in enumerate(S.counts) if c and S.group.elements[i].a == 1)
    if k == 0:
        return "a"
    if k == 1:
        return "b"
    return "c" if 2 * k < n else "d"


def enumerate_extremal_pof(
    params,
    state_budget: Optional[int] = None,
    time_budget_ms: Optional[int] = None,
    workers: int = 1,
) -> Iterator[Sequence]:
    """Every product-one free multiset of length exactly n, in index order."""
    p = _params(params)
    res = _search_extremal(p, state_budget, time_budget_ms, workers)
    group = Group.metacyclic(p.n, p.s)
    for path in res.found[p.n]:
        yield Sequence.from_indices(group, path)


def _search_extremal(p: MetacyclicParams, state_budget, time_budget_ms, workers) -> SearchResult:
    _require_nonabelian_nondihedral(p)
    group = Group.metacyclic(p.n, p.s)
    return search(group, p.n, collect=[p.n], state_budget=state_budget, time_budget_ms=time_budget_ms, workers=workers)


def verify_theorem(
    params,
    state_budget: Optional[int] = None,
    time_budget_ms: Optional[int] = None,
    workers: int = 1,
    stats: bool = True,
    include_sequences: bool = False,
) -> dict:
    """Compare the enumerated extremal sequences with the three families.

    ``missing`` lists family members the search did not find and ``extra``
    lists product-one free sequences outside the families; both should be
    empty.  With a time budget the search may stop early; the report then
    has ``complete: false`` and lists the first elements it covered.
    """
    p = _params(params)
    t0 = time.perf_counter()
    res = _search_extremal(p, state_budget, time_budget_ms, workers)
    group = Group.metacyclic(p.n, p.s)
    found = [Sequence.from_indices(group, path) for path in res.found[p.n]]
    predicted = {realize(pat, p) for pat in patterns(p)}
    enumerated = set(found)
    formula = predicted_count(p)
    missing = sorted(predicted - enumerated)
    if not res.complete:
        # family members under roots the search never reached are not evidence
        done = set(res.roots_done)
        missing = [S for S in missing if S.indices()[0] in done]
    extra = sorted(enumerated - predicted)
    cases = {c: 0 for c in CASE_NOTES}
    for S in found:
        cases[_case_label(S)] += 1
    report = {
        "params": {"n": p.n, "s": p.s},
        "class": str(p.classification),
        "predicted_count": formula,
        "pattern_count": len(predicted),
        "enumerated_count": len(enumerated),
        "missing": [format_sequence(S) for S in missing],
        "extra": [format_sequence(S) for S in extra],
        "complete": res.complete,
        "count_by_case": cases,
        "case_notes": CASE_NOTES,
        "pof_count_by_length": res.by_length,
    }
    if not res.complete:
        report["coverage"] = {
            "roots_done": len(res.roots_done),
            "roots_total": group.order - 1,
            "first_elements_done": [format_element(group.elements[r]) for r in res.roots_done],
        }
    report["ok"] = (
        res.complete
        and not missing
        and not extra
        and formula == len(predicted) == len(enumerated)
    )
    if include_sequences:
        rows = []
        for S in found:
            pat = match_pattern(S, p)
            rows.append({
                "sequence": format_sequence(S),
                "kind": pat.kind if pat else "",
                "u": pat.u if pat else "",
                "v": pat.v if pat else "",
            })
        report["sequences"] = rows
    if stats:
        report["stats"] = {
            "nodes": res.nodes,
            "pruned": res.pruned,
            "runtime_ms": round((time.perf_counter() - t0) * 1000, 3),
        }
    return report


def generator_change_note(params, v: int = 1) -> dict:
    """Closure of ``{x, x y^v}``; for the modular groups and odd ``v`` it is the whole group."""
    p = _params(params)
    group = Group.metacyclic(p.n, p.s)
    gens = [group.index[GroupElement(1, 0)], group.index[GroupElement(1, v % p.n)]]
    closure = group.closure(gens)
    applies = p.is_modular and v % 2 == 1
    return {
        "params": {"n": p.n, "s": p.s},
        "v": v,
        "closure_size": len(closure),
        "group_order": group.order,
        "generates_group": len(closure) == group.order,
        "claim_applies": applies,
    }
