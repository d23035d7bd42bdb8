"""Bit-vector subsets of a finite ground set and canonical families of them.

A subset of ``{0, ..., ground-1}`` is stored as a Python int whose bit ``i``
is set iff ``i`` belongs to it.  Families keep their members sorted by that
integer value, so every enumeration in the package is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Union

from .errors import GroundMismatch


def bits_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def indices_of(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def full_mask(ground: int) -> int:
    return (1 << ground) - 1


def all_masks(ground: int) -> range:
    return range(1 << ground)


@dataclass(frozen=True)
class Subset:
    """A subset of ``range(ground)``; equality is bitwise."""

    ground: int
    bits: int

    def __post_init__(self):
        if self.ground < 0:
            raise ValueError("ground size must be non-negative")
        if self.bits < 0 or self.bits >> self.ground:
            raise ValueError(f"bits {self.bits:#x} exceed ground {self.ground}")

    @classmethod
    def of(cls, ground: int, indices: Iterable[int]) -> Subset:
        indices = list(indices)
        for i in indices:
            if not 0 <= i < ground:
                raise IndexError(f"element {i} outside ground of size {ground}")
        return cls(ground, bits_of(indices))

    @classmethod
    def empty(cls, ground: int) -> Subset:
        return cls(ground, 0)

    @classmethod
    def full(cls, ground: int) -> Subset:
        return cls(ground, full_mask(ground))

    def _check(self, other: Subset) -> None:
        if not isinstance(other, Subset):
            raise TypeError(f"expected Subset, got {type(other).__name__}")
        if other.ground != self.ground:
            raise GroundMismatch(f"ground {self.ground} vs {other.ground}")

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.ground and bool((self.bits >> i) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(indices_of(self.bits))

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __or__(self, other: Subset) -> Subset:
        self._check(other)
        return Subset(self.ground, self.bits | other.bits)

    def __and__(self, other: Subset) -> Subset:
        self._check(other)
        return Subset(self.ground, self.bits & other.bits)

    def __sub__(self, other: Subset) -> Subset:
        self._check(other)
        return Subset(self.ground, self.bits & ~other.bits)

    def __le__(self, other: Subset) -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: Subset) -> bool:
        return self <= other and self.bits != other.bits

    def complement(self) -> Subset:
        return Subset(self.ground, full_mask(self.ground) & ~self.bits)

    def tolist(self) -> list[int]:
        return indices_of(self.bits)

    def __repr__(self) -> str:
        return f"Subset({self.ground}, {{{', '.join(map(str, self))}}})"


SubsetLike = Union[Subset, int]


@dataclass(frozen=True)
class SetFamily:
    """Duplicate-free family of subsets of ``range(ground)`` in canonical order.

    ``masks`` is strictly ascending.  Build instances with
    :meth:`from_masks` or :meth:`from_subsets`, which sort and deduplicate.
    """

    ground: int
    masks: tuple[int, ...]

    def __post_init__(self):
        top = 1 << self.ground
        prev = -1
        for m in self.masks:
            if m <= prev:
                raise ValueError("masks must be strictly ascending")
            if m >= top:
                raise ValueError(f"mask {m:#x} exceeds ground {self.ground}")
            prev = m

    @classmethod
    def from_masks(cls, ground: int, masks: Iterable[int]) -> SetFamily:
        return cls(ground, tuple(sorted(set(masks))))

    @classmethod
    def from_subsets(cls, ground: int, subsets: Iterable[Subset]) -> SetFamily:
        masks = []
        for s in subsets:
            if s.ground != ground:
                raise GroundMismatch(f"member over ground {s.ground}, family over {ground}")
            masks.append(s.bits)
        return cls.from_masks(ground, masks)

    @cached_property
    def _positions(self) -> dict[int, int]:
        return {m: k for k, m in enumerate(self.masks)}

    def _mask(self, item: SubsetLike) -> int:
        if isinstance(item, Subset):
            if item.ground != self.ground:
                raise GroundMismatch(f"subset over {item.ground}, family over {self.ground}")
            return item.bits
        return item

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[Subset]:
        return (Subset(self.ground, m) for m in self.masks)

    def __getitem__(self, k: int) -> Subset:
        return Subset(self.ground, self.masks[k])

    def __contains__(self, item: SubsetLike) -> bool:
        return self._mask(item) in self._positions

    def index(self, item: SubsetLike) -> int:
        try:
            return self._positions[self._mask(item)]
        except KeyError:
            raise ValueError(f"{item!r} is not a member") from None

    def issubfamily(self, other: SetFamily) -> bool:
        if other.ground != self.ground:
            raise GroundMismatch(f"ground {self.ground} vs {other.ground}")
        return all(m in other._positions for m in self.masks)

    def union(self, other: SetFamily) -> SetFamily:
        if other.ground != self.ground:
            raise GroundMismatch(f"ground {self.ground} vs {other.ground}")
        return SetFamily.from_masks(self.ground, self.masks + other.masks)

    def tolists(self) -> list[list[int]]:
        return [indices_of(m) for m in self.masks]

    def __repr__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, indices_of(m))) + "}" for m in self.masks)
        return f"SetFamily({self.ground}, [{body}])"
