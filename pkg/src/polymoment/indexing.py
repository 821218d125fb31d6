"""Multi-indices and row-major iteration over index boxes."""

from __future__ import annotations

import math
from itertools import product
from typing import Iterable, Iterator, Sequence, Tuple

from .errors import BoundsError, DimensionError


class MultiIndex(tuple):
    """Tuple of non-negative ints with componentwise arithmetic.

    ``+`` and ``-`` act componentwise (unlike plain tuples); subtraction
    below zero raises, which is exactly the guard the difference calculus
    needs.
    """

    def __new__(cls, entries: Iterable[int]):
        t = tuple(entries)
        if not t:
            raise DimensionError("a multi-index needs at least one axis")
        for i, e in enumerate(t):
            if not isinstance(e, int) or isinstance(e, bool) or e < 0:
                raise BoundsError(
                    "multi-index entry %r on axis %d must be a non-negative int" % (e, i)
                )
        return super().__new__(cls, t)

    @property
    def arity(self) -> int:
        return len(self)

    @property
    def degree(self) -> int:
        return sum(self)

    def __add__(self, other):
        other = _match(self, other)
        return MultiIndex(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        other = _match(self, other)
        out = []
        for i, (a, b) in enumerate(zip(self, other)):
            if a < b:
                raise BoundsError(
                    "cannot subtract %d from %d on axis %d" % (b, a, i)
                )
            out.append(a - b)
        return MultiIndex(out)

    def leq(self, other) -> bool:
        other = _match(self, other)
        return all(a <= b for a, b in zip(self, other))

    def shifted(self, axis: int, by: int = 1) -> "MultiIndex":
        if not 0 <= axis < len(self):
            raise BoundsError("axis %d out of range for arity %d" % (axis, len(self)))
        return MultiIndex(
            e + by if i == axis else e for i, e in enumerate(self)
        )

    def __repr__(self):
        return "MultiIndex(%s)" % (tuple(self),)


def as_multiindex(k, arity: int = 0) -> MultiIndex:
    if isinstance(k, MultiIndex):
        m = k
    elif isinstance(k, int):
        m = MultiIndex((k,) * max(arity, 1))
    else:
        m = MultiIndex(k)
    if arity and m.arity != arity:
        raise DimensionError("expected arity %d, got %d" % (arity, m.arity))
    return m


def _match(a: Sequence[int], b) -> Sequence[int]:
    if len(a) != len(b):
        raise DimensionError(
            "arity mismatch: %d vs %d" % (len(a), len(b))
        )
    return b


def box_range(bounds: Sequence[int]) -> Iterator[MultiIndex]:
    """All k with 0 <= k <= bounds componentwise, row-major (last axis fastest)."""
    for t in product(*(range(b + 1) for b in bounds)):
        yield MultiIndex(t)


def box_size(bounds: Sequence[int]) -> int:
    return math.prod(b + 1 for b in bounds)


def box_strides(bounds: Sequence[int]) -> Tuple[int, ...]:
    """Row-major strides for the flat layout of a (bounds+1) box."""
    strides = [1] * len(bounds)
    for i in range(len(bounds) - 2, -1, -1):
        strides[i] = strides[i + 1] * (bounds[i + 1] + 1)
    return tuple(strides)


def flat_index(k: Sequence[int], strides: Sequence[int]) -> int:
    return sum(a * s for a, s in zip(k, strides))


def multinomial_binom(k: Sequence[int], m: Sequence[int]) -> int:
    """Product of per-axis binomials C(k_l, m_l)."""
    out = 1
    for a, b in zip(k, m):
        out *= math.comb(a, b)
    return out


def shell(bounds: Sequence[int], degree: int) -> Iterator[MultiIndex]:
    """All in-box k with |k| = degree, row-major order."""
    n = len(bounds)

    def rec(axis: int, remaining: int, prefix):
        if axis == n - 1:
            if remaining <= bounds[axis]:
                yield MultiIndex(prefix + (remaining,))
            return
        top = min(bounds[axis], remaining)
        for v in range(top + 1):
            yield from rec(axis + 1, remaining - v, prefix + (v,))

    yield from rec(0, degree, ())
