"""Ground sets and subset algebra.

Subsets are plain Python ``int`` bit masks: bit ``i`` is set iff element ``i``
of the owning :class:`GroundSet` is a member.  The width is carried by the
ground set, so the helpers here take ``n`` explicitly where it matters.
Exhaustive verification is practical for ``n <= 20``; nothing else limits ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import ContractError, InputError

Mask = int


def bits(mask: Mask) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: Mask) -> int:
    return bin(mask).count("1")


def mask_of(indices: Iterable[int]) -> Mask:
    out = 0
    for i in indices:
        out |= 1 << i
    return out


def full_mask(n: int) -> Mask:
    return (1 << n) - 1


def _check_width(n: int, *masks: Mask) -> None:
    limit = 1 << n
    for m in masks:
        if m < 0 or m >= limit:
            raise ContractError(f"mask {m:#x} does not fit a ground set of width {n}")


def union(x: Mask, y: Mask, n: int) -> Mask:
    _check_width(n, x, y)
    return x | y


def intersection(x: Mask, y: Mask, n: int) -> Mask:
    _check_width(n, x, y)
    return x & y


def difference(x: Mask, y: Mask, n: int) -> Mask:
    _check_width(n, x, y)
    return x & ~y


def symmetric_difference(x: Mask, y: Mask, n: int) -> Mask:
    _check_width(n, x, y)
    return x ^ y


def complement(x: Mask, n: int) -> Mask:
    _check_width(n, x)
    return full_mask(n) & ~x


def is_subset(x: Mask, y: Mask) -> bool:
    return x & ~y == 0


@dataclass(frozen=True)
class GroundSet:
    """An ordered list of distinct element labels.

    Element order is the order of first appearance in the input and fixes all
    iteration, tie-breaking and rendering.
    """

    names: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        index: dict[str, int] = {}
        for i, name in enumerate(names):
            if not isinstance(name, str) or not name:
                raise InputError(f"element labels must be non-empty strings, got {name!r}")
            if name in index:
                raise InputError(f"duplicate element {name}")
            index[name] = i
        object.__setattr__(self, "_index", index)

    @classmethod
    def of_size(cls, n: int, prefix: str = "") -> GroundSet:
        """Ground set labelled ``prefix0 .. prefix{n-1}`` (plain digits without a prefix)."""
        return cls(tuple(f"{prefix}{i}" for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def full(self) -> Mask:
        return full_mask(self.n)

    def __len__(self) -> int:
        return len(self.names)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"unknown element {label}") from None

    def complement(self, mask: Mask) -> Mask:
        return complement(mask, self.n)

    def parse(self, text: str) -> Mask:
        """Parse comma-separated labels into a mask; empty text is the empty set."""
        text = text.strip()
        if not text:
            return 0
        mask = 0
        for raw in text.split(","):
            label = raw.strip()
            i = self.index(label)
            if mask >> i & 1:
                raise InputError(f"duplicate element {label}")
            mask |= 1 << i
        return mask

    def labels(self, mask: Mask) -> list[str]:
        _check_width(self.n, mask)
        return [self.names[i] for i in bits(mask)]

    def format(self, mask: Mask) -> str:
        """Canonical rendering: labels in ground order, comma-separated, no spaces."""
        return ",".join(self.labels(mask))

    def subset(self, indices: Sequence[int]) -> GroundSet:
        """The ground set restricted to ``indices``, keeping their labels."""
        return GroundSet(tuple(self.names[i] for i in indices))


def subset_parse(ground: GroundSet, text: str) -> Mask:
    return ground.parse(text)


def lex_key(mask: Mask, n: int) -> int:
    """Sort key comparing membership vectors ``(x_0, .., x_{n-1})`` lexicographically."""
    out = 0
    for i in range(n):
        out = (out << 1) | (mask >> i & 1)
    return out
