"""Sequences, windows, exponent pairs and the elementary l^p machinery.

A sequence is a finitely supported map from integer indices to scalars,
stored as an offset plus a contiguous block of values.  All norm
computations consume absolute values only; complex inputs are reduced to
their moduli at ingestion, real inputs keep their sign (so sequences can
be added and negated).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import ceil
from typing import Iterable, Optional

import numpy as np


@dataclass(frozen=True)
class Window:
    """The symmetric index block {m-N, ..., m+N} of odd cardinality 2N+1."""

    m: int
    N: int

    def __post_init__(self) -> None:
        if self.N < 0:
            raise ValueError(f"window radius must be >= 0, got {self.N}")

    @property
    def lo(self) -> int:
        return self.m - self.N

    @property
    def hi(self) -> int:
        return self.m + self.N

    def cardinality(self) -> int:
        return 2 * self.N + 1

    def contains(self, k: int) -> bool:
        return abs(k - self.m) <= self.N


@dataclass(frozen=True)
class Exponents:
    """A validated exponent pair with 1 <= p <= q < inf."""

    p: float
    q: float

    def __post_init__(self) -> None:
        if not (1 <= self.p <= self.q < float("inf")):
            raise ValueError(f"need 1 <= p <= q < inf, got p={self.p}, q={self.q}")

    @property
    def scaling(self) -> float:
        """The window-cardinality exponent 1/q - 1/p (always <= 0)."""
        return 1.0 / self.q - 1.0 / self.p


@dataclass(frozen=True)
class Sequence:
    """A finitely supported sequence, stored as (offset, value block).

    Entries outside [offset, offset+len-1] are implicitly zero.  The zero
    sequence is represented by an empty value block.  Instances are
    immutable and hashable; construct via :meth:`of`.
    """

    offset: int = 0
    values: tuple[float, ...] = ()

    @classmethod
    def of(cls, values: Iterable[complex], offset: int = 0) -> "Sequence":
        """Build a sequence; complex entries are reduced to their moduli."""
        out = []
        for v in values:
            if isinstance(v, complex):
                v = abs(v)
            v = float(v)
            if not np.isfinite(v):
                raise ValueError(f"sequence entries must be finite, got {v}")
            out.append(v)
        return cls(offset=int(offset), values=tuple(out))

    @classmethod
    def zero(cls) -> "Sequence":
        return cls()

    def is_zero(self) -> bool:
        return all(v == 0.0 for v in self.values)

    def __getitem__(self, k: int) -> float:
        i = k - self.offset
        if 0 <= i < len(self.values):
            return self.values[i]
        return 0.0

    def support_bounds(self) -> Optional[tuple[int, int]]:
        """Tightest interval [a, b] containing all nonzero entries, or None."""
        lo = None
        hi = None
        for i, v in enumerate(self.values):
            if v != 0.0:
                if lo is None:
                    lo = i
                hi = i
        if lo is None:
            return None
        return (self.offset + lo, self.offset + hi)

    def __add__(self, other: "Sequence") -> "Sequence":
        if not self.values:
            return other
        if not other.values:
            return self
        lo = min(self.offset, other.offset)
        hi = max(self.offset + len(self.values), other.offset + len(other.values))
        vals = [0.0] * (hi - lo)
        for i, v in enumerate(self.values):
            vals[self.offset - lo + i] += v
        for i, v in enumerate(other.values):
            vals[other.offset - lo + i] += v
        return Sequence(offset=lo, values=tuple(vals))

    def __neg__(self) -> "Sequence":
        return self.scaled(-1.0)

    def __sub__(self, other: "Sequence") -> "Sequence":
        return self + (-other)

    def scaled(self, alpha: float) -> "Sequence":
        return Sequence(offset=self.offset, values=tuple(alpha * v for v in self.values))


def support_bounds(x: Sequence) -> Optional[tuple[int, int]]:
    """Module-level alias for :meth:`Sequence.support_bounds`."""
    return x.support_bounds()


@lru_cache(maxsize=64)
def _power_prefix(x: Sequence, p: float) -> np.ndarray:
    """Prefix sums of |x_k|^p over the stored block: O(n) setup, O(1) queries."""
    block = np.abs(np.asarray(x.values, dtype=np.float64)) ** p
    return np.concatenate(([0.0], np.cumsum(block)))


def window_psum(x: Sequence, w: Window, p: float) -> float:
    """Sum of |x_k|^p over the window, via the cached prefix-sum table."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if not x.values:
        return 0.0
    lo = max(w.lo, x.offset)
    hi = min(w.hi, x.offset + len(x.values) - 1)
    if hi < lo:
        return 0.0
    prefix = _power_prefix(x, p)
    return float(prefix[hi - x.offset + 1] - prefix[lo - x.offset])


def lp_norm(x: Sequence, p: float) -> float:
    """(sum_k |x_k|^p)^(1/p) over the full support."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if not x.values:
        return 0.0
    vals = np.abs(np.asarray(x.values, dtype=np.float64))
    peak = float(np.max(vals))
    if peak == 0.0:
        return 0.0
    # Peak normalization keeps |x_k|^p away from under/overflow.
    total = float(np.sum((vals / peak) ** p))
    return peak * total ** (1.0 / p)


def enumeration_bound(x: Sequence) -> Optional[tuple[int, tuple[int, int]]]:
    """Finite window family over which every norm supremum here is attained.

    Returns (N_max, (a, b)) with N_max = ceil((b-a)/2) and [a, b] the
    support bounds, or None for the zero sequence.

    Window-reduction argument: for any window W = S_{m,N}, let [l, r] be the
    tightest interval containing supp(x) intersected with W.  The smallest
    window S_{m',N'} covering [l, r] satisfies N' <= N, has p-sum >= that of
    W (extra entries are >= 0, dropped entries were zero), and every window
    factor of the form c * (2N+1)^(-s) with s >= 0 is >= at N'.  Hence the
    supremum over all of Z x omega is attained with N <= ceil((b-a)/2) and
    m in [a, b], turning the infinite sup into an exact finite max.
    """
    sb = x.support_bounds()
    if sb is None:
        return None
    a, b = sb
    return (ceil((b - a) / 2), (a, b))


def support_block(x: Sequence) -> Optional[tuple[int, int, np.ndarray]]:
    """(a, b, |x| over [a, b]) trimmed to the support, or None for zero."""
    sb = x.support_bounds()
    if sb is None:
        return None
    a, b = sb
    i0 = a - x.offset
    block = np.abs(np.asarray(x.values[i0 : i0 + (b - a + 1)], dtype=np.float64))
    return a, b, block
