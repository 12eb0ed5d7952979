"""Subsets of Z_m as bitmasks.

A residue subset is stored as an integer whose bit r is set when residue r
is a member.  All the hot loops in the certificate search work directly on
these masks; the dataclass is the typed wrapper the rest of the package
passes around.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ModulusMismatch, ResidueOutOfRange


@dataclass(frozen=True)
class ResidueSubset:
    """A subset of {0, ..., modulus-1}, bit r of ``mask`` set iff r is in."""

    modulus: int
    mask: int = 0

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        if self.mask < 0 or self.mask >> self.modulus:
            raise ResidueOutOfRange(
                f"mask {self.mask:#x} has bits outside modulus {self.modulus}"
            )

    @classmethod
    def of(cls, modulus: int, members: Iterable[int]) -> "ResidueSubset":
        """Build from explicit residues; each must lie in [0, modulus)."""
        mask = 0
        for r in members:
            if not 0 <= r < modulus:
                raise ResidueOutOfRange(f"residue {r} not in [0, {modulus})")
            mask |= 1 << r
        return cls(modulus, mask)

    @classmethod
    def reduce(cls, modulus: int, values: Iterable[int]) -> "ResidueSubset":
        """Build from arbitrary integers, reduced mod modulus into [0, m)."""
        mask = 0
        for v in values:
            mask |= 1 << (v % modulus)
        return cls(modulus, mask)

    @classmethod
    def full(cls, modulus: int) -> "ResidueSubset":
        return cls(modulus, (1 << modulus) - 1)

    def members(self) -> tuple[int, ...]:
        return tuple(r for r in range(self.modulus) if self.mask >> r & 1)

    def __contains__(self, r: int) -> bool:
        return 0 <= r < self.modulus and bool(self.mask >> r & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members())

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def is_full(self) -> bool:
        return self.mask == (1 << self.modulus) - 1

    def complement(self) -> "ResidueSubset":
        return ResidueSubset(self.modulus, self.mask ^ ((1 << self.modulus) - 1))

    def union(self, other: "ResidueSubset") -> "ResidueSubset":
        self._check(other)
        return ResidueSubset(self.modulus, self.mask | other.mask)

    def intersection(self, other: "ResidueSubset") -> "ResidueSubset":
        self._check(other)
        return ResidueSubset(self.modulus, self.mask & other.mask)

    def shifted(self, k: int) -> "ResidueSubset":
        """The set {r + k mod m}; a cyclic rotation of the mask."""
        return ResidueSubset(self.modulus, rotate(self.mask, k, self.modulus))

    def sumset(self, other: "ResidueSubset") -> "ResidueSubset":
        """{a + b mod m : a in self, b in other}."""
        self._check(other)
        acc = 0
        for r in range(self.modulus):
            if self.mask >> r & 1:
                acc |= rotate(other.mask, r, self.modulus)
        return ResidueSubset(self.modulus, acc)

    def _check(self, other: "ResidueSubset") -> None:
        if self.modulus != other.modulus:
            raise ModulusMismatch(
                f"moduli differ: {self.modulus} vs {other.modulus}"
            )


def rotate(mask: int, k: int, modulus: int) -> int:
    """Cyclically shift a modulus-bit mask by k positions (adding k mod m)."""
    k %= modulus
    full = (1 << modulus) - 1
    return ((mask << k) | (mask >> (modulus - k))) & full if k else mask


def mask_members(mask: int) -> tuple[int, ...]:
    """Set bits of a mask in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)
