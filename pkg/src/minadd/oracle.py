"""Slow reference implementations for cross-validation.

Everything here is written straight from the defining quantifiers, with
plain Python sets and explicit loops: no bitmasks, no reformulations, no
sharing with the optimized search.  The duplication is deliberate; these
are the independent oracles the fast paths are tested against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .criteria import NECESSARY, SUFFICIENT, Certificate
from .errors import CapExceeded, MarginTooSmall
from .residues import ResidueSubset
from .sets import CanonicalSet, ConditionContext, margins

#: Hard cap on the modulus; the reference enumerates all 2^T subsets.
NAIVE_T_CAP = 16


@dataclass(frozen=True)
class WindowSet:
    """An explicit finite chunk of an integer set, clipped to [lo, hi]."""

    lo: int
    hi: int
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        ms = tuple(sorted(set(self.members)))
        for v in ms:
            if not self.lo <= v <= self.hi:
                raise ValueError(f"member {v} outside window [{self.lo}, {self.hi}]")
        object.__setattr__(self, "members", ms)


@dataclass(frozen=True)
class CoverageReport:
    ok: bool
    first_uncovered: Optional[int] = None


def _subsets_lex(T: int):
    """All subsets of {0..T-1} in lexicographic order of sorted lists."""

    def rec(prefix: list[int], start: int):
        yield list(prefix)
        for k in range(start, T):
            prefix.append(k)
            yield from rec(prefix, k + 1)
            prefix.pop()

    yield from rec([], 0)


def _cond_a(T: int, X: set, Y: set, C: list[int]) -> bool:
    sums = {(c + u) % T for c in C for u in X | Y}
    return sums == set(range(T))


def _cond_b_necessary(T: int, X: set, Y: set, C: list[int]) -> bool:
    for c in C:
        if not any(
            all((c + y) % T != (cp + x) % T for cp in C for x in X) for y in Y
        ):
            return False
    return True


def _cond_b_sufficient(T: int, X: set, Y: set, C: list[int]) -> bool:
    for c in C:
        if not any(
            all(
                (c + y) % T != (cp + x) % T
                for cp in C
                if cp != c
                for x in X | Y
            )
            for y in Y
        ):
            return False
    return True


def naive_find_certificate(
    ctx: ConditionContext, variant: str = SUFFICIENT
) -> Optional[Certificate]:
    """Reference search: try every subset of Z_T by definition.

    Enumerates all subsets in lexicographic order and returns the first
    valid one.  Because validity is translation invariant, when any valid
    subset exists the first hit contains 0 (subsets starting at 0 come
    first); this is asserted rather than assumed.
    """
    T = ctx.T
    if T > NAIVE_T_CAP:
        raise CapExceeded(f"reference search capped at T={NAIVE_T_CAP}, got {T}")
    X = set(ctx.x_t.members())
    Y = set(ctx.y1_res.members())
    cond_b = _cond_b_sufficient if variant == SUFFICIENT else _cond_b_necessary
    for C in _subsets_lex(T):
        if _cond_a(T, X, Y, C) and cond_b(T, X, Y, C):
            if 0 not in C:
                raise AssertionError(
                    f"translation invariance violated: first valid subset {C}"
                )
            return Certificate(T, ResidueSubset.of(T, C), variant)
    return None


def window_sumset(a: WindowSet, b: WindowSet, lo: int, hi: int) -> WindowSet:
    """{x + y : x in a, y in b} clipped to [lo, hi]."""
    sums = {x + y for x in a.members for y in b.members if lo <= x + y <= hi}
    return WindowSet(lo, hi, tuple(sorted(sums)))


def verify_complement_window(
    d: WindowSet, s: CanonicalSet, inner_lo: int, inner_hi: int
) -> CoverageReport:
    """Check d + W covers [inner_lo, inner_hi] by direct enumeration."""
    guard = s.m + (margins(s).y0_margin if (s.y0 or s.y1) else 0)
    if d.lo > inner_lo - guard or d.hi < inner_hi + guard:
        raise MarginTooSmall(
            f"window [{d.lo}, {d.hi}] must exceed [{inner_lo}, {inner_hi}] "
            f"by at least {guard} on each side"
        )
    for n in range(inner_lo, inner_hi + 1):
        if not any(s.contains(n - e) for e in d.members):
            return CoverageReport(False, n)
    return CoverageReport(True)
