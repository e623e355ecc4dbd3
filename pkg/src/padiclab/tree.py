"""Finite windows of the regular digit tree, with level weights.

Level ``n`` of the tree holds the depth-``n`` centers; edges append one digit.
A window spans levels ``min_level..max_level`` (unit-ball windows start at 0,
enlarged windows at ``-M``).  Vertices are addressed as ``(level, rank)``
where the rank is the base-``q_res`` numeral formed by the digit string, most
significant digit first.  That makes the global index level-major and
digit-lexicographic within each level, child ranks contiguous
(``children of (n, r) = (n+1, r*q_res + d)``), and every assembled matrix
deterministic.

The Hilbert space is weighted little-l2 with level weight ``p**(-n*f)`` (the
volume of a depth-``n`` ball).
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .field_model import Center, FieldParams

__all__ = [
    "TreeWindow",
    "WeightedVector",
    "tree_window_r",
    "tree_window_f",
    "weight",
    "children",
    "weighted_inner",
]


@dataclass(frozen=True)
class TreeWindow:
    """Window of the digit tree spanning ``min_level..max_level``.

    ``min_level = 0`` models the unit ball; ``min_level = -M`` models the
    enlarged ball of radius ``p**(M/e)`` (a hard spatial cutoff).
    """

    params: FieldParams
    min_level: int
    max_level: int

    def __post_init__(self) -> None:
        if self.max_level < self.min_level:
            raise ValueError("window needs max_level >= min_level")

    # -- aliases matching the two window flavors ---------------------------
    @property
    def N(self) -> int:
        """Maximum depth."""
        return self.max_level

    @property
    def M(self) -> int:
        """Spatial cutoff exponent (0 for unit-ball windows)."""
        return -self.min_level

    # -- level layout -------------------------------------------------------
    @property
    def levels(self) -> range:
        return range(self.min_level, self.max_level + 1)

    def level_size(self, n: int) -> int:
        """Number of vertices at level ``n``: ``q_res**(n - min_level)``."""
        self._check_level(n)
        return self.params.q_res ** (n - self.min_level)

    @cached_property
    def level_offsets(self) -> tuple[int, ...]:
        """Start index of each level, plus the total as a sentinel."""
        offsets = [0]
        for n in self.levels:
            offsets.append(offsets[-1] + self.level_size(n))
        return tuple(offsets)

    @property
    def total(self) -> int:
        """Total vertex count."""
        return self.level_offsets[-1]

    def level_slice(self, n: int) -> slice:
        """Index-space slice of level ``n``."""
        i = n - self.min_level
        return slice(self.level_offsets[i], self.level_offsets[i + 1])

    def _check_level(self, n: int) -> None:
        if not self.min_level <= n <= self.max_level:
            raise ValueError(f"level {n} outside window [{self.min_level}, {self.max_level}]")

    # -- vertex addressing ----------------------------------------------------
    def index(self, n: int, rank: int) -> int:
        """Global index of vertex ``(level, rank)``."""
        if not 0 <= rank < self.level_size(n):
            raise ValueError(f"rank {rank} outside level {n}")
        return self.level_offsets[n - self.min_level] + rank

    def level_rank(self, idx: int) -> tuple[int, int]:
        """Inverse of :meth:`index`."""
        if not 0 <= idx < self.total:
            raise ValueError(f"index {idx} outside window")
        i = bisect.bisect_right(self.level_offsets, idx) - 1
        return self.min_level + i, idx - self.level_offsets[i]

    def center(self, n: int, rank: int) -> Center:
        """The digit-string center addressed by ``(level, rank)``."""
        width = n - self.min_level
        if not 0 <= rank < self.level_size(n):
            raise ValueError(f"rank {rank} outside level {n}")
        digits = [0] * width
        q = self.params.q_res
        r = rank
        for i in range(width - 1, -1, -1):
            r, digits[i] = divmod(r, q)
        return Center(self.params, self.min_level, tuple(digits))

    def rank_of_center(self, c: Center) -> tuple[int, int]:
        """Address ``(level, rank)`` of a center belonging to this window."""
        if c.params != self.params or c.start != self.min_level:
            raise ValueError("center does not belong to this window")
        self._check_level(c.depth)
        rank = 0
        for d in c.digits:
            rank = rank * self.params.q_res + d
        return c.depth, rank

    def children_ranks(self, n: int, rank: int) -> range:
        """Ranks of the ``q_res`` children at level ``n + 1``, digit-ascending."""
        q = self.params.q_res
        return range(rank * q, rank * q + q)

    def parent_rank(self, n: int, rank: int) -> int:
        """Rank of the parent at level ``n - 1``."""
        return rank // self.params.q_res

    # -- weights -----------------------------------------------------------
    def weight(self, n: int) -> Fraction:
        """Exact level weight ``p**(-n*f)`` (ball volume)."""
        self._check_level(n)
        pf = self.params.p**self.params.f
        if n >= 0:
            return Fraction(1, pf**n)
        return Fraction(pf ** (-n))

    def weight_float(self, n: int) -> float:
        return float(self.weight(n))


def tree_window_r(params: FieldParams, N: int) -> TreeWindow:
    """Unit-ball window: levels ``0..N``, ``p**(n*f)`` vertices at level n."""
    return TreeWindow(params, 0, N)


def tree_window_f(params: FieldParams, M: int, N: int) -> TreeWindow:
    """Enlarged-ball window: levels ``-M..N``, cutoff ``|x| <= p**(M/e)``."""
    if M < 0:
        raise ValueError("M must be nonnegative")
    return TreeWindow(params, -M, N)


def weight(params: FieldParams, n: int) -> Fraction:
    """Exact level weight ``p**(-n*f)`` without a window context."""
    pf = params.p**params.f
    if n >= 0:
        return Fraction(1, pf**n)
    return Fraction(pf ** (-n))


def children(window: TreeWindow, idx: int) -> list[int]:
    """Global indices of a vertex's children; empty at the deepest level."""
    n, rank = window.level_rank(idx)
    if n == window.max_level:
        return []
    return [window.index(n + 1, r) for r in window.children_ranks(n, rank)]


@dataclass(frozen=True)
class WeightedVector:
    """A vector over a window's vertices, carrying its window reference."""

    window: TreeWindow
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.values.shape != (self.window.total,):
            raise ValueError(
                f"values must have shape ({self.window.total},), got {self.values.shape}"
            )


def weighted_inner(phi: WeightedVector, psi: WeightedVector) -> complex:
    """Weighted inner product ``sum_v phi(v) * conj(psi(v)) * w(level(v))``."""
    if phi.window != psi.window:
        raise ValueError("weighted_inner requires vectors on the same window")
    window = phi.window
    acc = 0.0 + 0.0j if np.iscomplexobj(phi.values) or np.iscomplexobj(psi.values) else 0.0
    for n in window.levels:
        seg = window.level_slice(n)
        acc = acc + window.weight_float(n) * np.vdot(psi.values[seg], phi.values[seg])
    return acc
