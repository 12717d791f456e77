"""Certificate checks for the structure of long product-one free sequences over C_m.

For ``S = y^{a_1} ... y^{a_k}`` product-one free over ``C_m`` with ``m >= 3``
and ``k > m/2`` three things are claimed:

1. some term has multiplicity at least
   ``max(m - 2k + 1, k - floor((m-1)/3))``;
2. some unit ``t`` has ``sum(a_i t mod m) < m`` (residues taken in ``[0, m-1]``);
3. for that ``t`` every ``1 <= j <= sum`` is the normalized sum of some subsequence.

Each claim is searched for directly; a failure is a falsification record.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .group import Group
from .search import search
from .sequence import Sequence, format_sequence

EXHAUSTIVE_MAX_M = 12


class LemmaHypothesisError(ValueError):
    """The input does not meet the hypotheses (not a lemma counterexample)."""


@dataclass
class Lemma1Certificate:
    m: int
    S: Sequence
    heavy_term: int
    multiplicity: int
    bound: int
    t: int
    residue_sum: int
    coverage: int  # bit k set iff k is a normalized subsequence sum

    @property
    def covered(self) -> bool:
        want = ((1 << (self.residue_sum + 1)) - 1) ^ 1
        return self.coverage & want == want


def _exponents(S: Sequence, m: int) -> list[int]:
    if S.group.kind != "cyclic" or S.group.n != m:
        raise LemmaHypothesisError(f"expected a sequence over C_{m}, got {S.group.spec}")
    return list(S.indices())


def subset_sums_mod(values: Iterable[int], m: int) -> int:
    """Bitmask of the nonempty subsequence sums mod m."""
    full = (1 << m) - 1
    reach = 0
    for a in values:
        a %= m
        shifted = ((reach << a) | (reach >> (m - a))) & full if a else reach
        reach |= shifted | (1 << a)
    return reach


def _require_hypotheses(S: Sequence, m: int) -> list[int]:
    exps = _exponents(S, m)
    if m < 3:
        raise LemmaHypothesisError(f"m must be >= 3, got {m}")
    if 2 * len(exps) <= m:
        raise LemmaHypothesisError(f"|S| = {len(exps)} is not > m/2 = {m / 2}")
    if subset_sums_mod(exps, m) & 1:
        raise LemmaHypothesisError(f"{format_sequence(S)} is not product-one free")
    return exps


def multiplicity_bound(m: int, length: int) -> int:
    return max(m - 2 * length + 1, length - (m - 1) // 3)


def check_multiplicity_bound(S: Sequence, m: int) -> tuple[bool, Optional[int]]:
    """``(True, b)`` with ``y^b`` the first term meeting the bound, else ``(False, None)``."""
    _require_hypotheses(S, m)
    bound = multiplicity_bound(m, S.length)
    for b, c in enumerate(S.counts):
        if c and c >= bound:
            return True, b
    return False, None


def normalized_sum(exps: Iterable[int], t: int, m: int) -> int:
    return sum(a * t % m for a in exps)


def find_normalizer(S: Sequence, m: int) -> Optional[tuple[int, int]]:
    """Smallest unit ``t`` with normalized residue sum below ``m``, with that sum."""
    exps = _require_hypotheses(S, m)
    for t in range(1, m):
        if math.gcd(t, m) != 1:
            continue
        total = normalized_sum(exps, t, m)
        if total < m:
            return t, total
    return None


def check_subsum_coverage(S: Sequence, m: int, t: int) -> bool:
    """Every ``1 <= k <= sum`` is reached by plain (not modular) sums of normalized residues."""
    exps = _exponents(S, m)
    residues = [a * t % m for a in exps]
    total = sum(residues)
    want = ((1 << (total + 1)) - 1) ^ 1
    return _plain_subset_sums(residues) & want == want


def _plain_subset_sums(values: Iterable[int]) -> int:
    reach = 1  # bit 0: the empty subsequence
    for r in values:
        reach |= reach << r
    return reach


def certify(S: Sequence, m: int) -> tuple[Optional[Lemma1Certificate], list[str]]:
    """Run all three checks; returns the certificate (if all parts were found) and failures."""
    failures = []
    ok, heavy = check_multiplicity_bound(S, m)
    if not ok:
        failures.append("multiplicity_bound")
    found = find_normalizer(S, m)
    if found is None:
        failures.append("normalizer")
        return None, failures
    t, total = found
    if not check_subsum_coverage(S, m, t):
        failures.append("coverage")
    if failures:
        return None, failures
    residues = [a * t % m for a in S.indices()]
    return (
        Lemma1Certificate(
            m=m,
            S=S,
            heavy_term=heavy,
            multiplicity=S.counts[heavy],
            bound=multiplicity_bound(m, S.length),
            t=t,
            residue_sum=total,
            coverage=_plain_subset_sums(residues),
        ),
        failures,
    )


def _long_pof_sequences(m: int) -> list[Sequence]:
    group = Group.cyclic(m)
    lengths = range(m // 2 + 1, m)
    res = search(group, m - 1, collect=lengths)
    return [Sequence.from_indices(group, p) for d in lengths for p in res.found[d]]


@dataclass
class AuditReport:
    mode: str
    per_m: dict = field(default_factory=dict)
    falsifications: list = field(default_factory=list)
    runtime_ms: float = 0.0

    def to_json(self, stats: bool = True) -> dict:
        out = {
            "mode": self.mode,
            "per_m": {str(m): v for m, v in sorted(self.per_m.items())},
            "checked": sum(v["checked"] for v in self.per_m.values()),
            "falsifications": self.falsifications,
        }
        if stats:
            out["stats"] = {"runtime_ms": round(self.runtime_ms, 3)}
        return out


def audit_lemma1(
    m_values: Iterable[int],
    mode: str = "exhaustive",
    samples: int = 10_000,
    seed: int = 0,
) -> AuditReport:
    """Certify every (exhaustive) or ``samples`` random (sample) long product-one free sequences per m.

    Samples come from :func:`random_zero_sum_free` with a uniformly drawn
    target length in ``(m/2, m-1]``; sampled sequences are not deduplicated.
    """
    if mode not in ("exhaustive", "sample"):
        raise ValueError(f"unknown mode {mode!r}")
    t0 = time.perf_counter()
    report = AuditReport(mode=mode)
    rng = random.Random(seed)
    for m in sorted(set(m_values)):
        if m < 3:
            raise ValueError(f"m must be >= 3, got {m}")
        if mode == "exhaustive":
            if m > EXHAUSTIVE_MAX_M:
                raise ValueError(f"exhaustive mode is limited to m <= {EXHAUSTIVE_MAX_M}")
            instances = _long_pof_sequences(m)
        else:
            instances = _sample(m, samples, rng)
        bad = 0
        for S in instances:
            _, failures = certify(S, m)
            if failures:
                bad += 1
                report.falsifications.append({"m": m, "sequence": format_sequence(S), "failed": failures})
        report.per_m[m] = {"checked": len(instances), "falsifications": bad}
    report.runtime_ms = (time.perf_counter() - t0) * 1000
    return report


def random_zero_sum_free(m: int, length: int, rng: random.Random) -> Optional[tuple[int, ...]]:
    """A zero-sum free multiset over C_m of the given length, by a randomized dive.

    Children are tried in random order with backtracking.  A branch is cut
    when its subsequence sums cannot stay below ``m`` values: each extra
    term adds at least one new nonzero sum.
    """
    full = (1 << m) - 1
    path: list[int] = []

    def dive(start: int, sums: int) -> bool:
        depth = len(path)
        if depth == length:
            return True
        need = length - depth - 1
        options = [g for g in range(max(start, 1), m) if not sums >> (m - g) & 1]
        rng.shuffle(options)
        for g in options:
            grown = sums | ((sums << g) | (sums >> (m - g))) & full | (1 << g)
            if grown.bit_count() + need > m - 1:
                continue
            path.append(g)
            if dive(g, grown):
                return True
            path.pop()
        return False

    return tuple(path) if dive(1, 0) else None


def _sample(m: int, samples: int, rng: random.Random) -> list[Sequence]:
    group = Group.cyclic(m)
    out = []
    while len(out) < samples:
        length = rng.randint(m // 2 + 1, m - 1)
        path = random_zero_sum_free(m, length, rng)
        if path is None:  # pragma: no cover - d(C_m) = m - 1 so every length here exists
            continue
        out.append(Sequence.from_indices(group, path))
    return out
