"""Exact acceptance and fidelity analytics for the 2k+1-copy test.

All probabilities are computed with Fraction arithmetic, so every identity
checked against these functions is exact. Counts (a, b, c) say how many of
the 2k+1 copies carry attacks of class (1,0), (0,1) and (1,1); the remaining
copies are clean. Falling factorials absorb the out-of-range cases: a count
that cannot be hidden from its test group makes math.perm return 0 and the
probability collapses to 0 without special casing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Union

__all__ = [
    "DomainError",
    "ClassCounts",
    "LemmaVerdict",
    "OracleResult",
    "pass_prob",
    "joint_prob",
    "conditional_fidelity",
    "t_functionals",
    "theorem1_bound",
    "trace_bound",
    "xi",
    "lemma_check",
    "oracle",
]

Rational = Union[int, Fraction]
Weights = Union[Mapping[tuple[int, int], Rational], Iterable[tuple[tuple[int, int], Rational]]]


class DomainError(ValueError):
    """An argument lies outside the domain of the requested formula."""


@dataclass(frozen=True)
class ClassCounts:
    """Attack profile over 2k+1 copies: a, b, c copies of class (1,0), (0,1), (1,1)."""

    a: int
    b: int
    c: int
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise DomainError("k must be at least 1")
        if min(self.a, self.b, self.c) < 0:
            raise DomainError("class counts must be nonnegative")
        if self.a + self.b + self.c > 2 * self.k + 1:
            raise DomainError("class counts exceed the number of copies")


@dataclass(frozen=True)
class LemmaVerdict:
    passing: Fraction
    conditional: Fraction | None
    bound: Fraction
    premise: bool
    holds: bool


@dataclass(frozen=True)
class OracleResult:
    passing: Fraction
    joint: Fraction
    conditional: Fraction | None


def pass_prob(cc: ClassCounts) -> Fraction:
    """Probability that a uniformly partitioned run accepts the profile.

    A copy of class (1,0) must avoid group 1, class (0,1) must avoid group 2,
    and class (1,1) must land on the unmeasured third copy, which is possible
    for at most one such copy.
    """
    a, b, c, k = cc.a, cc.b, cc.c, cc.k
    if c >= 2:
        return Fraction(0)
    if c == 1:
        num = math.perm(k, a) * math.perm(k, b)
        return Fraction(num, (2 * k + 1) * math.perm(2 * k, a + b))
    num = ((k + 1) ** 2 - a * b) * math.perm(k + 1, a) * math.perm(k + 1, b)
    return Fraction(num, (k + 1) ** 2 * math.perm(2 * k + 1, a + b))


def joint_prob(a: int, b: int, k: int) -> Fraction:
    """Probability of accepting AND leaving the third copy clean (c = 0 profile)."""
    ClassCounts(a, b, 0, k)
    return Fraction(math.perm(k, a) * math.perm(k, b), math.perm(2 * k + 1, a + b))


def conditional_fidelity(a: int, b: int, k: int) -> Fraction:
    """Third-copy fidelity conditioned on acceptance, for a c = 0 profile."""
    ClassCounts(a, b, 0, k)
    if a > k + 1 or b > k + 1:
        raise DomainError("conditioning on acceptance, which has probability zero")
    return Fraction((k + 1 - a) * (k + 1 - b), (k + 1) ** 2 - a * b)


def _checked_weights(name: str, q: Weights, k: int, budget: int) -> list[tuple[int, int, Fraction]]:
    items = q.items() if isinstance(q, Mapping) else list(q)
    out = []
    total = Fraction(0)
    for (a, b), w in items:
        if a < 0 or b < 0:
            raise DomainError(f"{name} atom ({a}, {b}) has negative counts")
        if a + b > budget:
            raise DomainError(f"{name} atom ({a}, {b}) exceeds the copy budget")
        w = Fraction(w)
        if w < 0:
            raise DomainError(f"{name} weight for ({a}, {b}) is negative")
        total += w
        out.append((a, b, w))
    if total != 1:
        raise DomainError(f"{name} weights sum to {total}, expected 1")
    return out


def t_functionals(
    beta: Rational, q0: Weights, q1: Weights, k: int
) -> tuple[Fraction, Fraction, Fraction]:
    """(T1, T2, T3) for the mixture adversary (beta, Q0, Q1).

    T1 and T3 average acceptance and joint acceptance-and-clean over Q0
    (profiles without a (1,1) copy); T2 averages acceptance over Q1, where
    one (1,1) copy rides along.
    """
    if k < 1:
        raise DomainError("k must be at least 1")
    beta = Fraction(beta)
    if not 0 <= beta <= 1:
        raise DomainError("beta must be in [0, 1]")
    atoms0 = _checked_weights("q0", q0, k, 2 * k + 1)
    atoms1 = _checked_weights("q1", q1, k, 2 * k)
    t1 = sum((w * pass_prob(ClassCounts(a, b, 0, k)) for a, b, w in atoms0), Fraction(0))
    t2 = sum((w * pass_prob(ClassCounts(a, b, 1, k)) for a, b, w in atoms1), Fraction(0))
    t3 = sum((w * joint_prob(a, b, k) for a, b, w in atoms0), Fraction(0))
    return t1, t2, t3


def theorem1_bound(alpha, k: int):
    """Fidelity floor 1 - 1/(alpha(2k+1)), defined for alpha > 1/(2k+1).

    Exact inputs give an exact Fraction; float input gives a float.
    """
    if k < 1:
        raise DomainError("k must be at least 1")
    n = 2 * k + 1
    exact = Fraction(alpha)
    if exact * n <= 1:
        raise DomainError("alpha must exceed 1/(2k+1)")
    if isinstance(alpha, float):
        return 1.0 - 1.0 / (alpha * n)
    return 1 - Fraction(1, exact * n)


def trace_bound(alpha, k: int) -> float:
    """Trace-distance ceiling 1/sqrt(alpha(2k+1)) for alpha >= 1/(2k+1)."""
    if k < 0:
        raise DomainError("k must be nonnegative")
    n = 2 * k + 1
    if Fraction(alpha) * n < 1:
        raise DomainError("alpha must be at least 1/(2k+1)")
    return 1.0 / math.sqrt(float(alpha) * n)


def xi(a: int, b: int, k: int) -> Fraction:
    """Slack of the per-profile fidelity bound, scaled by (k+1)^2 - ab.

    For a c = 0 profile with positive acceptance probability p,
    conditional_fidelity - (1 - 1/((2k+1) p)) equals xi / ((k+1)^2 - ab),
    so xi >= 0 is the per-profile form of the fidelity floor.
    """
    ClassCounts(a, b, 0, k)
    if a > k + 1 or b > k + 1:
        raise DomainError("profile is never accepted, slack is undefined")
    ratio = Fraction(
        (k + 1) ** 2 * math.perm(2 * k + 1, a + b),
        (2 * k + 1) * math.perm(k + 1, a) * math.perm(k + 1, b),
    )
    return (k + 1 - a) * (k + 1 - b) - (k + 1) ** 2 + a * b + ratio


def lemma_check(beta: Rational, q0: Weights, q1: Weights, k: int, alpha: Rational) -> LemmaVerdict:
    """Check the mixture fidelity bound at threshold alpha, exactly.

    Premise: alpha > 1/(2k+1) and the mixture's acceptance probability is at
    least alpha. Conclusion: conditional fidelity >= 1 - 1/(alpha(2k+1)).
    A failed premise makes the verdict vacuously true.
    """
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    beta = Fraction(beta)
    t1, t2, t3 = t_functionals(beta, q0, q1, k)
    passing = beta * t1 + (1 - beta) * t2
    conditional = beta * t3 / passing if passing else None
    n = 2 * k + 1
    bound = 1 - Fraction(1, alpha * n)
    premise = alpha * n > 1 and passing >= alpha
    if not premise:
        holds = True
    else:
        # premise forces passing >= alpha > 0, so conditional is defined
        holds = conditional >= bound
    return LemmaVerdict(
        passing=passing, conditional=conditional, bound=bound, premise=premise, holds=holds
    )


def oracle(cc: ClassCounts) -> OracleResult:
    """Brute-force check of pass_prob / joint_prob by enumerating partitions.

    Equivalently enumerates placements of the bad copies over the 2k+1 slots
    with the partition fixed: slots 0..k-1 are group 1, k..2k-1 group 2, slot
    2k the third copy. Limited to k <= 5 to keep enumeration instant.
    """
    if cc.k > 5:
        raise DomainError("brute-force oracle is limited to k <= 5")
    a, b, c, k = cc.a, cc.b, cc.c, cc.k
    n = 2 * k + 1
    group1 = (1 << k) - 1
    group2 = ((1 << k) - 1) << k
    third = n - 1
    total = 0
    passing = 0
    joint = 0
    slots = tuple(range(n))
    for pos_a in combinations(slots, a):
        taken_a = set(pos_a)
        rest_a = [s for s in slots if s not in taken_a]
        for pos_b in combinations(rest_a, b):
            taken_b = set(pos_b)
            rest_b = [s for s in rest_a if s not in taken_b]
            for pos_c in combinations(rest_b, c):
                total += 1
                s_mask = 0
                t_mask = 0
                for p in pos_a:
                    s_mask |= 1 << p
                for p in pos_b:
                    t_mask |= 1 << p
                for p in pos_c:
                    s_mask |= 1 << p
                    t_mask |= 1 << p
                if (s_mask & group1) or (t_mask & group2):
                    continue
                passing += 1
                if not (((s_mask | t_mask) >> third) & 1):
                    joint += 1
    return OracleResult(
        passing=Fraction(passing, total),
        joint=Fraction(joint, total),
        conditional=Fraction(joint, passing) if passing else None,
    )
