"""Shared builders for randomized and exhaustive instance sweeps."""

from __future__ import annotations

import itertools
import random

from minadd.residues import ResidueSubset
from minadd.sets import (
    BELOW,
    CanonicalSet,
    ConditionContext,
    RawSet,
    canonicalize,
    lift_period,
    window_elements,
)


def random_context(rng: random.Random, t_lo: int = 1, t_hi: int = 12) -> ConditionContext:
    """A valid condition context with disjoint periodic/exception masks."""
    T = rng.randint(t_lo, t_hi)
    full = (1 << T) - 1
    x_mask = rng.getrandbits(T)
    y_mask = rng.getrandbits(T) & ~x_mask & full
    return ConditionContext(T, ResidueSubset(T, x_mask), ResidueSubset(T, y_mask))


def random_canonical(rng: random.Random, m_max: int = 5) -> CanonicalSet:
    """A valid canonical set with a nonempty periodic part."""
    m = rng.randint(1, m_max)
    x_mask = rng.getrandbits(m) or 1
    x = ResidueSubset(m, x_mask)
    y0 = sorted(
        {
            -(rng.randint(1, 3) * m) + r
            for r in x.members()
            if rng.random() < 0.3
        }
    )
    outside = [r for r in range(m) if r not in x]
    y1 = sorted(
        {
            r + m * rng.randint(-2, 2)
            for r in outside
            if rng.random() < 0.6
        }
    )
    # distinct residues guaranteed: one element per residue class at most
    return CanonicalSet(m, x, tuple(y0), tuple(y1))


def shifted_copy(s: CanonicalSet, d: int) -> CanonicalSet:
    """Canonical form of the elementwise translate W + d."""
    ys = s.y0 + s.y1
    threshold = d + (max(ys) + 1 if ys else 0)
    threshold = max(threshold, d)
    if s.x_m:
        residues = ResidueSubset.of(
            s.m, {(r + d) % s.m for r in s.x_m.members()}
        )
        lo = min(ys) if ys else 0
        extras = ()
        if threshold - 1 - d >= lo:
            extras = tuple(
                w + d
                for w in window_elements(s, lo, threshold - 1 - d)
                if w + d < threshold
            )
        raw = RawSet(s.m, residues, threshold, extras, BELOW)
    else:
        extras = tuple(e + d for e in ys)
        raw = RawSet(
            s.m,
            ResidueSubset(s.m, 0),
            max(extras) + 1 if extras else 0,
            extras,
            BELOW,
        )
    return canonicalize(raw)


def enumerate_contexts(t_cap: int, m_range=range(1, 6)):
    """Every lifted context with T <= t_cap reachable from the given periods."""
    seen = set()
    for m in m_range:
        for k in range(1, t_cap // m + 1):
            T = k * m
            for x_bits in range(1, 1 << m):
                base = CanonicalSet(m, ResidueSubset(m, x_bits))
                lifted = lift_period(base, k)
                free = [r for r in range(T) if r not in lifted.x_t]
                for picks in itertools.chain.from_iterable(
                    itertools.combinations(free, n) for n in range(len(free) + 1)
                ):
                    y = ResidueSubset.of(T, picks)
                    key = (T, lifted.x_t.mask, y.mask)
                    if key in seen:
                        continue
                    seen.add(key)
                    yield ConditionContext(T, lifted.x_t, y)
