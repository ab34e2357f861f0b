"""Ground sets and bitmask subset helpers.

Elements are label strings; a subset is an int bitmask under the ground
set's label order. The empty ground set is allowed: it carries the unit
function of the product structure.
"""

from __future__ import annotations

from . import caps
from .errors import ValidationError


class GroundSet:
    __slots__ = ("labels", "index", "n", "full")

    def __init__(self, labels):
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            raise ValidationError(f"duplicate labels in ground set: {labels}")
        caps.check_table(len(labels))
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "index", {x: i for i, x in enumerate(labels)})
        object.__setattr__(self, "n", len(labels))
        object.__setattr__(self, "full", (1 << len(labels)) - 1)

    def __setattr__(self, *a):
        raise AttributeError("GroundSet is immutable")

    def __eq__(self, other):
        return isinstance(other, GroundSet) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return f"GroundSet({list(self.labels)})"

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return self.n

    def mask_of(self, items) -> int:
        m = 0
        for x in items:
            try:
                m |= 1 << self.index[x]
            except KeyError:
                raise ValidationError(f"unknown label {x!r}") from None
        return m

    def members(self, mask: int):
        """Labels in a mask, in ground order."""
        return [self.labels[i] for i in range(self.n) if mask >> i & 1]

    def subsets(self):
        return range(1 << self.n)

    def restricted(self, mask: int) -> "GroundSet":
        return GroundSet(self.members(mask))

    def sorted_labels(self):
        return tuple(sorted(self.labels))


def popcount(mask: int) -> int:
    return mask.bit_count()


def bit_indices(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def submasks(mask: int):
    """All subsets of a mask, including 0 and mask itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def reindex_map(ground: GroundSet, sub: "GroundSet"):
    """For each bit position of sub, the bit position in ground."""
    return [ground.index[x] for x in sub.labels]


def project_mask(mask: int, positions) -> int:
    """Compress the given ground-set bit positions into a small mask."""
    out = 0
    for k, p in enumerate(positions):
        if mask >> p & 1:
            out |= 1 << k
    return out


def expand_mask(small: int, positions) -> int:
    out = 0
    for k, p in enumerate(positions):
        if small >> k & 1:
            out |= 1 << p
    return out
