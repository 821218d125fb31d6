"""Sign-pattern maximization shared by the certifiers and semivariation.

The objective is

    W(T) = max over s_1, ..., s_n in {-1, +1}^(d_l) of
           | sum_m  s_1[m_1] ... s_n[m_n] * T[m] |

for a dense tensor T.  Two reductions keep this tractable: the last
axis never needs enumeration (optimal s_n[m] is the sign of the partial
contraction coefficient), and a global flip leaves |.| unchanged, so
the leading sign of every enumerated axis is pinned to +1.  Remaining
vertices are walked in Gray-code order with incremental updates.

Everything here is generic over the scalar ring: Python ints (scaled
rationals), Fractions, and floats all work; comparisons and abs are the
only operations beyond + and -.
"""

from __future__ import annotations

import math
import random
from typing import List, Sequence, Tuple

from .errors import BudgetExceededError

#: cap on sum(dims[:-1]): the reduced enumeration stays below 2**20 vertices
ENUM_BUDGET_BITS = 20


def enumeration_bits(dims: Sequence[int]) -> int:
    return sum(dims[:-1])


def check_budget(dims: Sequence[int], what: str = "sign enumeration") -> None:
    bits = enumeration_bits(dims)
    if bits > ENUM_BUDGET_BITS:
        raise BudgetExceededError(
            "%s over dims %s needs 2^%d sign vertices (budget 2^%d); "
            "use the coordinate-ascent estimate instead"
            % (what, tuple(dims), bits, ENUM_BUDGET_BITS)
        )


def gray_flips(bits: int):
    """Positions flipped by the standard reflected Gray walk over `bits` bits."""
    for t in range(1, 1 << bits):
        yield (t & -t).bit_length() - 1


def maximize_signs(flat: Sequence, dims: Sequence[int]):
    """Exact maximum and an attaining sign assignment.

    Returns (value, signs) where signs is a tuple of per-axis tuples of
    +-1 ints.  Ties resolve to the first vertex in Gray order, so the
    result is deterministic.
    """
    dims = tuple(dims)
    if math.prod(dims) != len(flat):
        raise ValueError("flat length %d does not match dims %s" % (len(flat), dims))
    check_budget(dims)
    return _best(list(flat), dims)


def _best(flat: List, dims: Tuple[int, ...]):
    n = len(dims)
    if n == 1:
        val = None
        signs = []
        for x in flat:
            if x >= 0:
                signs.append(1)
                val = x if val is None else val + x
            else:
                signs.append(-1)
                val = -x if val is None else val - x
        return val, (tuple(signs),)

    d0 = dims[0]
    tail_dims = dims[1:]
    suffix = math.prod(tail_dims)
    slices = [flat[m * suffix:(m + 1) * suffix] for m in range(d0)]
    twice = [[x + x for x in sl] for sl in slices]

    u = slices[0]
    for sl in slices[1:]:
        u = [a + b for a, b in zip(u, sl)]
    s = [1] * d0

    best_val, best_tail = _best(u, tail_dims)
    best_head = tuple(s)
    for flip in gray_flips(d0 - 1):
        m = flip + 1
        tw = twice[m]
        if s[m] == 1:
            u = [a - b for a, b in zip(u, tw)]
            s[m] = -1
        else:
            u = [a + b for a, b in zip(u, tw)]
            s[m] = 1
        val, tail = _best(u, tail_dims)
        if val > best_val:
            best_val = val
            best_head = tuple(s)
            best_tail = tail
    return best_val, (best_head,) + best_tail


def _axis_digits(dims: Sequence[int]) -> List[List[int]]:
    """Per-axis digit of each flat row-major position."""
    size = math.prod(dims)
    digits = []
    suffix = size
    for d in dims:
        suffix //= d
        digits.append([(i // suffix) % d for i in range(size)])
    return digits


def _contract_except(flat, dims, digits, signs, axis):
    """Coefficients c_m = sum over entries with axis-digit m, weighted by
    the signs of every other axis."""
    n = len(dims)
    coeffs = [None] * dims[axis]
    ax_dig = digits[axis]
    for i, x in enumerate(flat):
        w = x
        for j in range(n):
            if j != axis and signs[j][digits[j][i]] < 0:
                w = -w
        m = ax_dig[i]
        coeffs[m] = w if coeffs[m] is None else coeffs[m] + w
    return coeffs


def coordinate_ascent(flat: Sequence, dims: Sequence[int], sweeps: int = 64,
                      restarts: int = 8, seed: int = 0):
    """Heuristic lower bound by axiswise sign ascent.

    Restart #0 starts from the all-plus assignment; the rest start from
    seeded random sign draws.  Each axis update replaces its signs by the
    signs of the contraction coefficients, which never decreases the
    objective.  Returns (value, signs) like maximize_signs; the value is
    the exact objective at the returned assignment (a certified lower
    bound when the scalars are exact).
    """
    dims = tuple(dims)
    if math.prod(dims) != len(flat):
        raise ValueError("flat length %d does not match dims %s" % (len(flat), dims))
    if sweeps < 1 or restarts < 1:
        raise ValueError("sweeps and restarts must be positive")
    flat = list(flat)
    n = len(dims)
    digits = _axis_digits(dims)
    rng = random.Random(seed)

    starts = [[[1] * d for d in dims]]
    for _ in range(restarts - 1):
        starts.append([[rng.choice((1, -1)) for _ in range(d)] for d in dims])

    best_val = None
    best_signs = None
    for signs in starts:
        for _ in range(sweeps):
            changed = False
            for axis in range(n):
                coeffs = _contract_except(flat, dims, digits, signs, axis)
                for m, c in enumerate(coeffs):
                    ns = 1 if c >= 0 else -1
                    if ns != signs[axis][m]:
                        signs[axis][m] = ns
                        changed = True
            if not changed:
                break
        coeffs = _contract_except(flat, dims, digits, signs, n - 1)
        val = None
        for m, c in enumerate(coeffs):
            signs[n - 1][m] = 1 if c >= 0 else -1
            a = c if c >= 0 else -c
            val = a if val is None else val + a
        if best_val is None or val > best_val:
            best_val = val
            best_signs = tuple(tuple(ax) for ax in signs)
    return best_val, best_signs


def evaluate_assignment(flat: Sequence, dims: Sequence[int], signs) -> object:
    """Signed contraction sum_m prod_l signs[l][m_l] * T[m] (not absed)."""
    dims = tuple(dims)
    digits = _axis_digits(dims)
    total = None
    for i, x in enumerate(flat):
        w = x
        for j in range(len(dims)):
            sj = signs[j][digits[j][i]]
            if isinstance(sj, int) and sj in (1, -1):
                if sj < 0:
                    w = -w
            else:
                w = w * sj
        total = w if total is None else total + w
    return total
