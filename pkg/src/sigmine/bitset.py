"""Transaction-set bitsets.

Covers are plain Python ints used as bitsets: bit i is set iff transaction i
is in the set.  Arbitrary-precision ints give cheap intersection (``&``) and
population count (``int.bit_count``), and are hashable, which the
distinct-projection counter relies on.
"""

from __future__ import annotations

import numpy as np


def pack(flags: np.ndarray) -> int:
    """Pack a boolean/0-1 array into an int bitset (bit i == flags[i])."""
    arr = np.asarray(flags, dtype=bool)
    if arr.ndim != 1:
        raise ValueError("expected a 1-d array")
    return int.from_bytes(np.packbits(arr, bitorder="little").tobytes(), "little")


def unpack(mask: int, m: int) -> np.ndarray:
    """Expand an int bitset back to a boolean array of length m."""
    nbytes = (m + 7) // 8
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:m].astype(bool)


def from_indices(indices, m: int) -> int:
    """Bitset with exactly the given transaction indices set."""
    mask = 0
    for i in indices:
        if not 0 <= i < m:
            raise ValueError(f"index {i} outside [0, {m})")
        mask |= 1 << i
    return mask


def to_indices(mask: int) -> list[int]:
    """Sorted list of set bit positions."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def full(m: int) -> int:
    """Bitset with all m transactions set."""
    return (1 << m) - 1
