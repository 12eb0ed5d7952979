"""Finite descriptions of eventually periodic integer sets bounded below.

A set W bounded below with eventual period m is stored either as a raw
description (pattern + threshold + finite exceptions) or in the normalized
form

    W = (m*N + X) | Y0 | Y1,

where X is the set of periodic residue classes, Y0 is a finite set of
negative exceptions whose residues lie inside X, and Y1 is a finite set of
exceptions whose residues lie outside X.  Everything downstream (condition
checks, certificate search, witness construction) consumes the normalized
form.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    DuplicateElement,
    EmptySet,
    PeriodOverflow,
    ResidueOutOfRange,
    Y0NotNegative,
    Y0ResidueOutsideX,
    Y1ResidueInsideX,
)
from .residues import ResidueSubset

#: Default ceiling for lifted periods; guards runaway search loops.
DEFAULT_MAX_PERIOD = 4096

BELOW = "below"
ABOVE = "above"


@dataclass(frozen=True)
class RawSet:
    """User-facing description of an eventually periodic set.

    For a below-bounded set the membership rule is

        n in W  <=>  (n >= threshold and n % period in residues)
                     or n in extras,

    with every extra strictly below the threshold.  An above-bounded set is
    stored *reflected*: the fields describe -W under the same rule, and
    ``orientation`` records that the set of interest is the negation.
    """

    period: int
    residues: ResidueSubset
    threshold: int
    extras: tuple[int, ...] = ()
    orientation: str = BELOW

    def __post_init__(self) -> None:
        if self.period < 1:
            raise ValueError(f"period must be positive, got {self.period}")
        if self.residues.modulus != self.period:
            raise ValueError("residues modulus must equal period")
        if self.orientation not in (BELOW, ABOVE):
            raise ValueError(f"bad orientation {self.orientation!r}")
        extras = tuple(sorted(self.extras))
        if len(set(extras)) != len(extras):
            raise DuplicateElement(f"duplicate extras in {extras}")
        for e in extras:
            if e >= self.threshold:
                raise ValueError(
                    f"extra {e} is not below the threshold {self.threshold}"
                )
        object.__setattr__(self, "extras", extras)

    def described_contains(self, n: int) -> bool:
        """Membership in the stored (below-bounded) description."""
        if n >= self.threshold and (n % self.period) in self.residues:
            return True
        i = bisect.bisect_left(self.extras, n)
        return i < len(self.extras) and self.extras[i] == n

    def contains(self, n: int) -> bool:
        """Membership in the actual set (honors orientation)."""
        if self.orientation == ABOVE:
            return self.described_contains(-n)
        return self.described_contains(n)


def reflect(raw: RawSet) -> RawSet:
    """Flip an above-bounded description into its below-bounded negation.

    Minimal-complement existence is preserved: C + W = Z iff
    (-C) + (-W) = Z, elementwise.
    """
    if raw.orientation != ABOVE:
        raise ValueError("reflect expects an above-bounded set")
    return RawSet(raw.period, raw.residues, raw.threshold, raw.extras, BELOW)


@dataclass(frozen=True)
class CanonicalSet:
    """Normalized form (m*N + x_m) | y0 | y1, shifted by ``shift``.

    ``shift`` records the translation applied to the original set:
    W_original = W_canonical + shift.  Validation happens on construction;
    an invalid combination raises one of the specific errors below.
    """

    m: int
    x_m: ResidueSubset
    y0: tuple[int, ...] = ()
    y1: tuple[int, ...] = ()
    shift: int = 0

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ResidueOutOfRange(f"m must be positive, got {self.m}")
        if self.x_m.modulus != self.m:
            raise ResidueOutOfRange(
                f"x_m modulus {self.x_m.modulus} does not match m={self.m}"
            )
        y0 = tuple(sorted(self.y0))
        y1 = tuple(sorted(self.y1))
        for name, part in (("y0", y0), ("y1", y1)):
            if len(set(part)) != len(part):
                raise DuplicateElement(f"duplicate element in {name}={part}")
        for e in y0:
            if e >= 0:
                raise Y0NotNegative(f"y0 element {e} is not negative")
            if (e % self.m) not in self.x_m:
                raise Y0ResidueOutsideX(
                    f"y0 element {e} has residue {e % self.m} outside x_m"
                )
        for e in y1:
            if (e % self.m) in self.x_m:
                raise Y1ResidueInsideX(
                    f"y1 element {e} has residue {e % self.m} inside x_m"
                )
        object.__setattr__(self, "y0", y0)
        object.__setattr__(self, "y1", y1)

    @property
    def is_empty(self) -> bool:
        return not self.x_m and not self.y0 and not self.y1

    @property
    def is_finite(self) -> bool:
        return not self.x_m

    def contains(self, n: int) -> bool:
        """Membership in the canonical (shifted) coordinates."""
        if n >= 0 and self.x_m and (n % self.m) in self.x_m:
            return True
        return n in self.y0 or n in self.y1

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "x": list(self.x_m.members()),
            "y0": list(self.y0),
            "y1": list(self.y1),
            "shift": self.shift,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CanonicalSet":
        return cls(
            d["m"],
            ResidueSubset.of(d["m"], d["x"]),
            tuple(d["y0"]),
            tuple(d["y1"]),
            d.get("shift", 0),
        )


def validate_canonical(
    m: int,
    x: Iterable[int],
    y0: Iterable[int] = (),
    y1: Iterable[int] = (),
    shift: int = 0,
) -> CanonicalSet:
    """Validation gate: build a CanonicalSet or raise a specific error."""
    return CanonicalSet(m, ResidueSubset.of(m, x), tuple(y0), tuple(y1), shift)


def canonicalize(raw: RawSet) -> CanonicalSet:
    """Normalize a below-bounded raw description.

    The shift is the smallest multiple of the period that is >= threshold,
    which keeps the periodic residue pattern unchanged.  Every element below
    the shift becomes a finite exception, routed by its residue class.
    Membership is preserved: n in raw  <=>  n - shift in result.
    """
    if raw.orientation != BELOW:
        raise ValueError("canonicalize expects a below-bounded set; reflect first")
    m = raw.period
    if not raw.residues:
        if not raw.extras:
            raise EmptySet("set has neither a periodic pattern nor extras")
        # Finite set: no periodic part, everything is a y1-style exception.
        return CanonicalSet(m, ResidueSubset(m, 0), (), raw.extras, 0)
    shift = -(-raw.threshold // m) * m  # smallest multiple of m >= threshold
    y0: list[int] = []
    y1: list[int] = []
    # Periodic elements caught between the threshold and the shift point.
    for t in range(raw.threshold, shift):
        if (t % m) in raw.residues:
            y0.append(t - shift)
    for e in raw.extras:
        v = e - shift
        if (v % m) in raw.residues:
            y0.append(v)
        else:
            y1.append(v)
    return CanonicalSet(m, raw.residues, tuple(sorted(y0)), tuple(sorted(y1)), shift)


@dataclass(frozen=True)
class Margins:
    """Safety buffers for windowed verification, from the finite exceptions."""

    y_plus: int
    y_minus: int
    y0_margin: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "y0_margin",
            max(self.y_plus, -self.y_minus, self.y_plus - self.y_minus),
        )


def margins(s: CanonicalSet) -> Margins:
    """Margins of a canonical set; requires a nonempty exceptional part."""
    ys = s.y0 + s.y1
    if not ys:
        raise EmptySet("margins are undefined when y0 and y1 are both empty")
    return Margins(max(ys), min(ys))


def window_elements(s: CanonicalSet, lo: int, hi: int) -> list[int]:
    """All elements of the canonical set in [lo, hi], sorted."""
    if lo > hi:
        raise ValueError(f"empty window [{lo}, {hi}]")
    out = set()
    if s.x_m:
        start = max(lo, 0)
        for n in range(start, hi + 1):
            if (n % s.m) in s.x_m:
                out.add(n)
    for e in s.y0 + s.y1:
        if lo <= e <= hi:
            out.add(e)
    return sorted(out)


@dataclass(frozen=True)
class ConditionContext:
    """Arena for the covering/witness conditions at a working modulus T.

    T is a multiple of the source period, x_t the lifted periodic residues,
    y1_res the finite exceptions reduced mod T.  The two are disjoint by
    construction.
    """

    T: int
    x_t: ResidueSubset
    y1_res: ResidueSubset

    def __post_init__(self) -> None:
        if self.x_t.modulus != self.T or self.y1_res.modulus != self.T:
            raise ResidueOutOfRange("context masks must use modulus T")
        if self.x_t.mask & self.y1_res.mask:
            raise Y1ResidueInsideX(
                "lifted periodic residues and exception residues overlap"
            )

    @property
    def y1_nonempty(self) -> bool:
        return bool(self.y1_res)


def lift_period(
    s: CanonicalSet, k: int, max_period: int = DEFAULT_MAX_PERIOD
) -> ConditionContext:
    """Lift the modulus-m description to modulus T = k*m.

    The periodic residues expand to {i*m + x : 0 <= i < k, x in x_m}; the
    finite exceptions reduce mod T (negative values wrap into [0, T)).
    """
    if not s.x_m:
        raise EmptySet("cannot lift a set with no periodic part")
    if k < 1:
        raise ValueError(f"lift factor must be positive, got {k}")
    T = k * s.m
    if T > max_period:
        raise PeriodOverflow(f"lifted period {T} exceeds maximum {max_period}")
    x_mask = 0
    for i in range(k):
        x_mask |= s.x_m.mask << (i * s.m)
    return ConditionContext(
        T, ResidueSubset(T, x_mask), ResidueSubset.reduce(T, s.y1)
    )
