"""Inductive construction of a non-eventually-periodic set with a
minimal complement.

The construction keeps three sequences: excluded anchors d_i (the largest
negative integer the partial sumset misses), complement elements c_i, and
a growing prefix W_i of the target set, stored as maximal runs.  Each step
appends the interval [-2c_{i-1}, -2c_i - 1] minus the points -c_i + d_j,
which punches single-integer holes so consecutive elements always differ
by 1 or 2.  The free negative offset ("slack") in the choice of c_i is the
injection point for breaking eventual periodicity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .errors import ExclusionCollision, PrefixTooShort

Runs = tuple[tuple[int, int], ...]


def runs_contains(runs: Runs, n: int) -> bool:
    lo, hi = 0, len(runs) - 1
    while lo <= hi:
        mid = (lo + hi) // 2
        a, b = runs[mid]
        if n < a:
            hi = mid - 1
        elif n > b:
            lo = mid + 1
        else:
            return True
    return False


def merge_runs(intervals: Sequence[tuple[int, int]]) -> Runs:
    """Union of closed intervals as sorted, maximal, disjoint runs."""
    out: list[list[int]] = []
    for a, b in sorted(intervals):
        if out and a <= out[-1][1] + 1:
            out[-1][1] = max(out[-1][1], b)
        else:
            out.append([a, b])
    return tuple((a, b) for a, b in out)


@dataclass(frozen=True)
class GeneratorState:
    """Prefix of the construction after len(d_seq) steps."""

    d_seq: tuple[int, ...]
    c_seq: tuple[int, ...]
    runs: Runs
    slack_seq: tuple[int, ...] = ()

    @property
    def steps(self) -> int:
        return len(self.d_seq)

    @property
    def w_max(self) -> int:
        return self.runs[-1][1]

    def w_elements(self, lo: int, hi: int) -> list[int]:
        return [
            n
            for a, b in self.runs
            for n in range(max(a, lo), min(b, hi) + 1)
        ]

    def to_dict(self) -> dict:
        return {
            "d_seq": list(self.d_seq),
            "c_seq": list(self.c_seq),
            "slack_seq": list(self.slack_seq),
            "runs": [list(r) for r in self.runs],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GeneratorState":
        return cls(
            tuple(d["d_seq"]),
            tuple(d["c_seq"]),
            tuple(tuple(r) for r in d["runs"]),
            tuple(d["slack_seq"]),
        )


def initial_state() -> GeneratorState:
    """Fixed base case: d_1 = -1, c_1 = -3, W_1 = {1, ..., 12}."""
    return GeneratorState((-1,), (-3,), ((1, 12),))


def next_d(state: GeneratorState) -> int:
    """Largest negative integer missed by W_prefix + {c_1, ..., c_i}."""
    shifted = [
        (a + c, b + c) for a, b in state.runs for c in state.c_seq
    ]
    covered = merge_runs(shifted)
    n = -1
    for a, b in reversed(covered):
        if n > b:
            break
        if n >= a:
            n = a - 1
    return n


def choose_c(state: GeneratorState, d_i: int, slack: int) -> int:
    """Next complement element.

    The first term keeps c_i strictly below d_i + 2*c_{i-1} (slack >= 1);
    the second keeps every excluded point -c_i + d_j above the current
    prefix maximum, which the bare inequality alone does not guarantee on
    the very first step.
    """
    if slack < 1:
        raise ValueError(f"slack must be >= 1, got {slack}")
    c_prev = state.c_seq[-1]
    d_prev = state.d_seq[-1]
    return min(d_i + 2 * c_prev - slack, d_prev - state.w_max - 1)


def step(state: GeneratorState, slack: int = 1) -> GeneratorState:
    """One induction step: extend d, c, and the prefix runs."""
    d_i = next_d(state)
    c_i = choose_c(state, d_i, slack)
    c_prev = state.c_seq[-1]
    assert d_i <= state.d_seq[-1] - 2, "anchor sequence must drop by >= 2"

    lo, hi = -2 * c_prev, -2 * c_i - 1
    excluded = sorted(-c_i + d_j for d_j in state.d_seq)
    assert len(set(excluded)) == len(excluded)
    for p in excluded:
        if runs_contains(state.runs, p):
            raise ExclusionCollision(
                f"excluded point {p} already lies in the prefix"
            )
        if not lo < p <= -c_i - 1:
            raise ExclusionCollision(
                f"excluded point {p} outside ({lo}, {-c_i - 1}]"
            )

    pieces: list[tuple[int, int]] = list(state.runs)
    cur = lo
    for p in excluded:
        if cur <= p - 1:
            pieces.append((cur, p - 1))
        cur = p + 1
    if cur <= hi:
        pieces.append((cur, hi))

    return GeneratorState(
        state.d_seq + (d_i,),
        state.c_seq + (c_i,),
        merge_runs(pieces),
        state.slack_seq + (slack,),
    )


def generate(
    k: int, slack_fn: Callable[[int], int] = lambda i: 1
) -> GeneratorState:
    """Run k induction steps; slack_fn(i) supplies the offset at step i."""
    if k < 1:
        raise ValueError(f"step count must be >= 1, got {k}")
    state = initial_state()
    for i in range(2, k + 1):
        state = step(state, slack_fn(i))
    return state


@dataclass(frozen=True)
class GeneratorReport:
    gaps_ok: bool
    coverage_ok: bool
    first_uncovered: Optional[int]
    uniqueness_failures: tuple[str, ...]
    periodic_candidates: tuple[int, ...]

    @property
    def ok(self) -> bool:
        # The periodicity probe is heuristic and never gates the report.
        return self.gaps_ok and self.coverage_ok and not self.uniqueness_failures


def verify(
    state: GeneratorState,
    window_hi: int,
    window_lo: Optional[int] = None,
    period_max: int = 50,
) -> GeneratorReport:
    """Re-check everything the construction promises, on its prefix.

    (1) consecutive prefix elements differ by 1 or 2; (2) every integer in
    [window_lo, window_hi] is a prefix element plus some c; (3) each d_j is
    reachable from exactly the matching c_j; (4) for each candidate period,
    look for a prefix element whose translate falls into a hole — periods
    with no such violation are reported, not asserted against (a finite
    prefix cannot certify the limit property).
    """
    if state.steps < 2:
        raise PrefixTooShort("need at least two steps before verification")
    if window_hi >= -state.c_seq[-2]:
        raise PrefixTooShort(
            f"window end {window_hi} beyond authoritative bound "
            f"{-state.c_seq[-2] - 1}"
        )

    gaps_ok = all(
        state.runs[i + 1][0] - state.runs[i][1] == 2
        for i in range(len(state.runs) - 1)
    )

    lo = window_lo if window_lo is not None else state.d_seq[-1]
    coverage_ok, first_uncovered = True, None
    for n in range(lo, window_hi + 1):
        if not any(runs_contains(state.runs, n - c) for c in state.c_seq):
            coverage_ok, first_uncovered = False, n
            break

    uniqueness_failures = []
    for j, d_j in enumerate(state.d_seq):
        hits = [c for c in state.c_seq if runs_contains(state.runs, d_j - c)]
        if hits != [state.c_seq[j]]:
            uniqueness_failures.append(
                f"anchor {d_j} reached via {hits}, expected [{state.c_seq[j]}]"
            )

    holes = [state.runs[i][1] + 1 for i in range(len(state.runs) - 1)]
    w_min = state.runs[0][0]
    periodic = [
        P
        for P in range(1, period_max + 1)
        if not any(h - P >= w_min and runs_contains(state.runs, h - P) for h in holes)
    ]

    return GeneratorReport(
        gaps_ok,
        coverage_ok,
        first_uncovered,
        tuple(uniqueness_failures),
        tuple(periodic),
    )
