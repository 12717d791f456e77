"""Split ``n`` so that ``s`` acts as -1 on one factor and +1 on the other.

For a valid non-abelian, non-dihedral pair ``(n, s)`` write ``n = 2^t m``
with ``m`` odd, ``m1 = gcd(m, s+1)`` and ``m2 = gcd(m, s-1)``.  Then
``n = n1 n2`` (case A) or ``n = 2 n1 n2`` (case B) with coprime ``n1, n2``,
``s = -1 mod n1`` and ``s = 1 mod n2``.  Reducing mod ``n1`` and ``n2``
gives the projection ``k -> (k mod n1, k mod n2)``, under which
multiplication by ``s`` becomes ``(k1, k2) -> (-k1, k2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .group import Tag, validate_params


@dataclass(frozen=True)
class Factorization:
    n: int
    s: int
    n1: int
    n2: int
    case: str
    t: int
    m1: int
    m2: int

    @property
    def m(self) -> int:
        return self.n >> self.t

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "s": self.s,
            "n1": self.n1,
            "n2": self.n2,
            "case": self.case,
            "t": self.t,
            "m1": self.m1,
            "m2": self.m2,
        }

    def check(self) -> list[str]:
        """Invariant violations (empty when the factorization is sound)."""
        problems = []
        n, s, n1, n2 = self.n, self.s, self.n1, self.n2
        if math.gcd(n1, n2) != 1:
            problems.append(f"gcd(n1, n2) = {math.gcd(n1, n2)}")
        if n1 > 1 and (s + 1) % n1:
            problems.append(f"s != -1 mod n1 = {n1}")
        if n2 > 1 and (s - 1) % n2:
            problems.append(f"s != 1 mod n2 = {n2}")
        factor = 1 if self.case == "A" else 2
        if n != factor * n1 * n2:
            problems.append(f"case {self.case}: n != {factor} * n1 * n2")
        m = self.m
        if self.m1 != math.gcd(m, s + 1) or self.m2 != math.gcd(m, s - 1) or m != self.m1 * self.m2:
            problems.append("m1, m2 inconsistent with m")
        return problems


def two_adic(n: int) -> tuple[int, int]:
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    return t, n


def factor(n: int, s: int) -> Factorization:
    """Factor ``(n, s)`` following the four cases on ``t`` and ``m``."""
    if validate_params(n, s).tag is not Tag.METACYCLIC:
        raise ValueError(f"({n}, {s}) is {validate_params(n, s)}, expected a non-abelian non-dihedral pair")
    s %= n
    t, m = two_adic(n)
    m1 = math.gcd(m, s + 1)
    m2 = math.gcd(m, s - 1)
    p = 2**t

    def make(n1, n2, case):
        return Factorization(n, s, n1, n2, case, t, m1, m2)

    if t == 0:
        return make(m1, m2, "A")
    if t == 1:
        # either side can take the 2; fixed convention
        if (s + 1) % (2 * m1) == 0:
            return make(2 * m1, m2, "A")
        return make(m1, 2 * m2, "A")
    r = s % p
    if m >= 3:
        if r == p - 1:
            return make(p * m1, m2, "A")
        if r == 1:
            return make(m1, p * m2, "A")
    if t >= 3:
        half = p // 2
        if r == half - 1:
            return make(half * m1, m2, "B")
        if r == half + 1:
            return make(m1, half * m2, "B")
    raise AssertionError(f"no factorization case applies to ({n}, {s})")  # pragma: no cover


@dataclass(frozen=True)
class CrtProjection:
    n: int
    n1: int
    n2: int

    def apply(self, k: int) -> tuple[int, int]:
        return (k % self.n1, k % self.n2)

    def fibre_sizes(self) -> set[int]:
        counts: dict[tuple[int, int], int] = {}
        for k in range(self.n):
            img = self.apply(k)
            counts[img] = counts.get(img, 0) + 1
        return set(counts.values())

    def is_bijective(self) -> bool:
        return self.n == self.n1 * self.n2 and self.fibre_sizes() == {1}


def build_projection(f: Factorization) -> CrtProjection:
    return CrtProjection(f.n, f.n1, f.n2)


def apply(psi: CrtProjection, k: int) -> tuple[int, int]:
    return psi.apply(k)


def sign_flip_holds(f: Factorization) -> bool:
    psi = build_projection(f)
    for k in range(f.n):
        k1, k2 = psi.apply(k)
        if psi.apply(f.s * k) != ((-k1) % f.n1, k2 % f.n2):
            return False
    return True


def valid_twists(n: int) -> list[int]:
    """All ``s`` in ``[0, n)`` giving a non-abelian non-dihedral pair."""
    return [s for s in range(n) if validate_params(n, s).tag is Tag.METACYCLIC]


def prime_power(n: int) -> tuple[int, int] | None:
    """``(p, e)`` if ``n = p^e`` with ``e >= 1``."""
    if n < 2:
        return None
    p = next(d for d in range(2, n + 1) if n % d == 0)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return (p, e) if n == 1 else None


def is_excluded_modulus(n: int) -> bool:
    """Odd prime powers and twice odd prime powers."""
    pp = prime_power(n if n % 2 else n // 2)
    return pp is not None and pp[0] != 2
