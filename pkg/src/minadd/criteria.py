"""Covering/witness conditions and the certificate search.

A certificate for a set in canonical form is a working modulus T (a
multiple of the period) together with a subset C of Z_T such that

  (a) C + (X_T | Y1) covers every residue mod T, and
  (b) every c in C owns an exceptional sum c + y that no other element
      can reproduce.

Condition (b) comes in two strengths.  The *necessary* form (failure
refutes existence) asks that c + y escape C + X_T.  The *sufficient* form
(success proves existence) asks that c + y escape (C \\ {c}) + (X_T | Y1).
The decision engine combines both with an increasing scan over lifted
moduli.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .errors import BudgetExceeded, ModulusMismatch, NotSingleton
from .residues import ResidueSubset, mask_members, rotate
from .sets import (
    DEFAULT_MAX_PERIOD,
    CanonicalSet,
    ConditionContext,
    lift_period,
)

log = logging.getLogger(__name__)

NECESSARY = "necessary"
SUFFICIENT = "sufficient"


@dataclass(frozen=True)
class Certificate:
    """A (T, C) pair passing condition (a) and one variant of (b).

    Normalized so that 0 is in C; among all valid normalized subsets the
    search returns the one whose sorted element list is lexicographically
    smallest.
    """

    T: int
    c: ResidueSubset
    variant: str

    def to_dict(self) -> dict:
        return {"T": self.T, "c": list(self.c.members()), "variant": self.variant}

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        return cls(d["T"], ResidueSubset.of(d["T"], d["c"]), d["variant"])


@dataclass
class SearchConfig:
    """Tuning knobs for the certificate search.

    t_max defaults to 8 * m when unset.  Subsets at moduli up to
    exhaustive_limit are scanned completely (sound for non-existence);
    beyond it a cover-driven heuristic runs under a node budget and can
    only prove existence.
    """

    t_max: Optional[int] = None
    exhaustive_limit: int = 24
    heuristic_budget: int = 200_000
    worker_count: int = 1
    max_period: int = DEFAULT_MAX_PERIOD


@dataclass
class SearchStats:
    subsets_examined: int = 0
    wall_time: float = 0.0
    budget_exhausted: bool = False

    def to_dict(self) -> dict:
        return {
            "subsets_examined": self.subsets_examined,
            "wall_time": self.wall_time,
            "budget_exhausted": self.budget_exhausted,
        }


class Outcome(Enum):
    EXISTS = "exists"
    NOT_EXISTS = "not-exists"
    UNKNOWN = "unknown"


class Reason(Enum):
    EMPTY_SET = "empty-set"
    FINITE_SET = "finite-set"
    QUASIPERIODIC = "quasiperiodic"
    NECESSARY_FAILED = "necessary-condition-failed"
    CERTIFICATE_AT_BASE = "certificate-at-base-period"
    CERTIFICATE_AT_LIFT = "certificate-at-lifted-period"
    SEARCH_EXHAUSTED = "search-exhausted"


@dataclass(frozen=True)
class Verdict:
    """Decision output: does a minimal additive complement exist?

    ``modulus`` carries the working modulus at which the deciding event
    fired (the failing modulus for NECESSARY_FAILED, the certificate's T
    for the certificate reasons, t_max for SEARCH_EXHAUSTED).
    """

    outcome: Outcome
    reason: Reason
    modulus: Optional[int] = None
    certificate: Optional[Certificate] = None
    stats: SearchStats = field(default_factory=SearchStats)

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "reason": self.reason.value,
            "modulus": self.modulus,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "stats": self.stats.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Verdict":
        cert = d.get("certificate")
        return cls(
            Outcome(d["outcome"]),
            Reason(d["reason"]),
            d.get("modulus"),
            Certificate.from_dict(cert) if cert else None,
        )


# ---------------------------------------------------------------------------
# Condition predicates


def _check_modulus(ctx: ConditionContext, c: ResidueSubset) -> None:
    if c.modulus != ctx.T:
        raise ModulusMismatch(
            f"candidate modulus {c.modulus} does not match context T={ctx.T}"
        )


def cond_a(ctx: ConditionContext, c: ResidueSubset) -> bool:
    """Covering condition: C + (X_T | Y1) hits every residue mod T."""
    _check_modulus(ctx, c)
    T = ctx.T
    u = ctx.x_t.mask | ctx.y1_res.mask
    full = (1 << T) - 1
    cover = 0
    for r in mask_members(c.mask):
        cover |= rotate(u, r, T)
        if cover == full:
            return True
    return cover == full


def cond_b_necessary(ctx: ConditionContext, c: ResidueSubset) -> bool:
    """Every c in C has some y with c + y outside C + X_T (mod T)."""
    _check_modulus(ctx, c)
    if not c.mask:
        return True  # vacuous; cond_a rules out empty C separately
    if not ctx.y1_res.mask:
        return False
    T = ctx.T
    cover_x = 0
    for r in mask_members(c.mask):
        cover_x |= rotate(ctx.x_t.mask, r, T)
    escape = ~cover_x & ((1 << T) - 1)
    return all(
        rotate(ctx.y1_res.mask, r, T) & escape for r in mask_members(c.mask)
    )


def cond_b_sufficient(ctx: ConditionContext, c: ResidueSubset) -> bool:
    """Every c in C has some y with c + y outside (C \\ {c}) + (X_T | Y1)."""
    _check_modulus(ctx, c)
    if not c.mask:
        return True
    if not ctx.y1_res.mask:
        return False
    T = ctx.T
    full = (1 << T) - 1
    u = ctx.x_t.mask | ctx.y1_res.mask
    members = mask_members(c.mask)
    rot_u = [rotate(u, r, T) for r in members]
    # forbidden for member i = union of rot_u over all other members
    n = len(members)
    prefix = [0] * (n + 1)
    for i in range(n):
        prefix[i + 1] = prefix[i] | rot_u[i]
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] | rot_u[i]
    for i, r in enumerate(members):
        forbidden = prefix[i] | suffix[i + 1]
        if not rotate(ctx.y1_res.mask, r, T) & ~forbidden & full:
            return False
    return True


def check_certificate(ctx: ConditionContext, cert: Certificate) -> bool:
    """Re-verify a certificate from scratch against its context."""
    if cert.T != ctx.T:
        return False
    b = cond_b_sufficient if cert.variant == SUFFICIENT else cond_b_necessary
    return cond_a(ctx, cert.c) and b(ctx, cert.c)


# ---------------------------------------------------------------------------
# Exhaustive search (lexicographic DFS over subsets containing 0)


def _search_branch(
    T: int,
    x_mask: int,
    y_mask: int,
    variant: str,
    prefix_mask: int,
    start: int,
) -> tuple[Optional[int], int]:
    """Scan the lex-ordered branch rooted at ``prefix_mask`` (0 included).

    Children append elements from ``start`` upward, so the DFS emits
    candidate subsets exactly in lexicographic order of their sorted
    element lists; the first valid one is the branch minimum.  Returns
    (winning mask or None, subsets examined).
    """
    full = (1 << T) - 1
    u_mask = x_mask | y_mask
    rot_u = [rotate(u_mask, r, T) for r in range(T)]
    rot_x = [rotate(x_mask, r, T) for r in range(T)]
    rot_y = [rotate(y_mask, r, T) for r in range(T)]
    # coverage that could still be added by elements >= k
    tail_u = [0] * (T + 1)
    for k in range(T - 1, -1, -1):
        tail_u[k] = tail_u[k + 1] | rot_u[k]

    necessary = variant == NECESSARY
    examined = 0

    def valid(members: list[int], cover_x: int) -> bool:
        if necessary:
            escape = ~cover_x & full
            return all(rot_y[r] & escape for r in members)
        n = len(members)
        pre = 0
        suf = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            suf[i] = suf[i + 1] | rot_u[members[i]]
        for i, r in enumerate(members):
            forbidden = pre | suf[i + 1]
            if not rot_y[r] & ~forbidden & full:
                return False
            pre |= rot_u[r]
        return True

    members = list(mask_members(prefix_mask))
    cover = 0
    cover_x = 0
    for r in members:
        cover |= rot_u[r]
        cover_x |= rot_x[r]

    def dfs(members: list[int], cover: int, cover_x: int, nxt: int) -> Optional[int]:
        nonlocal examined
        examined += 1
        if cover == full and valid(members, cover_x):
            mask = 0
            for r in members:
                mask |= 1 << r
            return mask
        for k in range(nxt, T):
            if cover | tail_u[k] != full:
                break  # elements >= k can never complete coverage
            members.append(k)
            hit = dfs(members, cover | rot_u[k], cover_x | rot_x[k], k + 1)
            members.pop()
            if hit is not None:
                return hit
        return None

    return dfs(members, cover, cover_x, start), examined


def _search_exhaustive(
    ctx: ConditionContext, variant: str, workers: int, stats: SearchStats
) -> Optional[Certificate]:
    T = ctx.T
    x_mask, y_mask = ctx.x_t.mask, ctx.y1_res.mask
    if workers <= 1 or T < 4:
        mask, examined = _search_branch(T, x_mask, y_mask, variant, 1, 1)
        stats.subsets_examined += examined
    else:
        # Branch on the second-smallest element: {0} alone, then {0, k, ...}
        # for k = 1..T-1.  Branches are contiguous lex ranges, so the first
        # branch with a hit holds the global minimum regardless of worker
        # scheduling.
        jobs = [(T, x_mask, y_mask, variant, 1, T)]  # the singleton {0}
        jobs += [(T, x_mask, y_mask, variant, 1 | (1 << k), k + 1) for k in range(1, T)]
        mask = None
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for hit, examined in pool.map(_search_branch, *zip(*jobs)):
                stats.subsets_examined += examined
                if mask is None and hit is not None:
                    mask = hit
    if mask is None:
        return None
    return Certificate(T, ResidueSubset(T, mask), variant)


# ---------------------------------------------------------------------------
# Heuristic search (cover-driven DFS for large T)


def _search_heuristic(
    ctx: ConditionContext, variant: str, budget: int, stats: SearchStats
) -> Optional[Certificate]:
    """Branch on preimages of the least uncovered residue.

    Sound for existence only: any hit is re-verified before being
    returned; exhausting the budget raises BudgetExceeded.
    """
    T = ctx.T
    full = (1 << T) - 1
    u_mask = ctx.x_t.mask | ctx.y1_res.mask
    if not u_mask:
        return None
    rot_u = [rotate(u_mask, r, T) for r in range(T)]
    b_pred = cond_b_sufficient if variant == SUFFICIENT else cond_b_necessary
    nodes = 0

    def dfs(c_mask: int, cover: int) -> Optional[int]:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"heuristic search exceeded {budget} nodes")
        if cover == full:
            cand = ResidueSubset(T, c_mask)
            if b_pred(ctx, cand):
                return c_mask
            return None
        uncovered = (~cover & full)
        r = (uncovered & -uncovered).bit_length() - 1
        # any c with r in c + U, i.e. c in r - U
        for offset in mask_members(u_mask):
            c = (r - offset) % T
            if c_mask >> c & 1:
                continue
            hit = dfs(c_mask | (1 << c), cover | rot_u[c])
            if hit is not None:
                return hit
        return None

    try:
        mask = dfs(1, rot_u[0])
    finally:
        stats.subsets_examined += nodes
    if mask is None:
        return None
    cert = Certificate(T, ResidueSubset(T, mask), variant)
    if not check_certificate(ctx, cert):
        raise AssertionError("heuristic search produced an invalid candidate")
    return cert


def find_certificate(
    ctx: ConditionContext,
    variant: str = SUFFICIENT,
    cfg: Optional[SearchConfig] = None,
    stats: Optional[SearchStats] = None,
) -> Optional[Certificate]:
    """Search for a valid C at the context's modulus.

    Below cfg.exhaustive_limit the scan is complete: None means no valid C
    exists.  Above it the heuristic runs and None (or BudgetExceeded) only
    means "not found".
    """
    if variant not in (NECESSARY, SUFFICIENT):
        raise ValueError(f"unknown variant {variant!r}")
    cfg = cfg or SearchConfig()
    stats = stats if stats is not None else SearchStats()
    t0 = time.perf_counter()
    try:
        if ctx.T <= cfg.exhaustive_limit:
            return _search_exhaustive(ctx, variant, cfg.worker_count, stats)
        return _search_heuristic(ctx, variant, cfg.heuristic_budget, stats)
    finally:
        stats.wall_time += time.perf_counter() - t0


def check_singleton(s: CanonicalSet) -> Optional[Certificate]:
    """Exact decider for a single exceptional residue class.

    When y1 occupies exactly one residue class mod m, existence of a
    minimal complement is equivalent to a certificate at T = m; None here
    means NotExists, not merely "not found".
    """
    if not s.x_m:
        raise NotSingleton("set has no periodic part")
    y1_res = ResidueSubset.reduce(s.m, s.y1) if s.y1 else ResidueSubset(s.m, 0)
    if len(y1_res) != 1:
        raise NotSingleton(
            f"expected exactly one exceptional residue class, got {len(y1_res)}"
        )
    ctx = lift_period(s, 1)
    stats = SearchStats()
    return _search_exhaustive(ctx, SUFFICIENT, 1, stats)


def decide(s: CanonicalSet, cfg: Optional[SearchConfig] = None) -> Verdict:
    """Decide whether a minimal additive complement to the set exists.

    Scans working moduli T = m, 2m, ... up to t_max.  At each exhaustively
    searchable T the necessary condition refutes (sound NotExists) and the
    sufficient condition proves (Exists with certificate); past the
    exhaustive limit only heuristic proofs of existence remain.  Unknown is
    a value, not an error.
    """
    cfg = cfg or SearchConfig()
    stats = SearchStats()
    t0 = time.perf_counter()

    def done(outcome, reason, modulus=None, certificate=None):
        stats.wall_time = time.perf_counter() - t0
        return Verdict(outcome, reason, modulus, certificate, stats)

    if s.is_empty:
        return done(Outcome.NOT_EXISTS, Reason.EMPTY_SET)
    if s.is_finite:
        # Finite nonempty sets always admit a minimal complement; no
        # certificate is produced on this branch.
        return done(Outcome.EXISTS, Reason.FINITE_SET)
    if not s.y1:
        return done(Outcome.NOT_EXISTS, Reason.QUASIPERIODIC)

    t_max = cfg.t_max if cfg.t_max is not None else 8 * s.m
    max_period = max(cfg.max_period, t_max)
    k = 1
    while k * s.m <= t_max:
        T = k * s.m
        ctx = lift_period(s, k, max_period=max_period)
        if T <= cfg.exhaustive_limit:
            nec = _search_exhaustive(ctx, NECESSARY, cfg.worker_count, stats)
            if nec is None:
                if T > s.m:
                    log.info(
                        "necessary condition failed only at lifted modulus "
                        "T=%d (base period %d)", T, s.m,
                    )
                return done(Outcome.NOT_EXISTS, Reason.NECESSARY_FAILED, T)
            suf = _search_exhaustive(ctx, SUFFICIENT, cfg.worker_count, stats)
        else:
            try:
                suf = _search_heuristic(ctx, SUFFICIENT, cfg.heuristic_budget, stats)
            except BudgetExceeded:
                stats.budget_exhausted = True
                suf = None
        if suf is not None:
            reason = (
                Reason.CERTIFICATE_AT_BASE if T == s.m else Reason.CERTIFICATE_AT_LIFT
            )
            return done(Outcome.EXISTS, reason, T, suf)
        k += 1
    return done(Outcome.UNKNOWN, Reason.SEARCH_EXHAUSTED, t_max)
