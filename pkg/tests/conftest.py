"""Shared oracle helpers for the test suite.

Everything here is written independently of the library internals:
brute-force enumerations and direct-definition evaluators that the
fast paths are checked against.
"""

import itertools
import random
from fractions import Fraction

from polymoment import MomentTensor, MultiIndex, box_range


def brute_force_weak(flat, dims):
    """Max of |sum_m prod_l s_l[m_l] * lam[m]| over ALL sign boxes.

    Enumerates the full 2^(sum dims) vertex set (no reductions), with
    per-axis partial contractions so the cost stays manageable.  Works
    on any scalar type with +, -, abs.
    """
    n = len(dims)
    # reshape flat (row-major) into nested lists
    def build(axis, offset, block):
        if axis == n:
            return flat[offset]
        sub = block // dims[axis]
        return [build(axis + 1, offset + i * sub, sub)
                for i in range(dims[axis])]

    total = 1
    for d in dims:
        total *= d
    tensor = build(0, 0, total)
    return _rec_best(tensor, dims, 0, None)


def _rec_best(u, dims, axis, best):
    if axis == len(dims):
        v = abs(u)
        return v if best is None or v > best else best
    for signs in itertools.product((1, -1), repeat=dims[axis]):
        acc = None
        for s, row in zip(signs, u):
            term = _scale_any(row, s)
            acc = term if acc is None else _add_any(acc, term)
        best = _rec_best(acc, dims, axis + 1, best)
    return best


def _scale_any(x, s):
    if isinstance(x, list):
        return [_scale_any(e, s) for e in x]
    return x * s


def _add_any(a, b):
    if isinstance(a, list):
        return [_add_any(x, y) for x, y in zip(a, b)]
    return a + b


def direct_forward_difference(mu, r, s):
    """Alternating binomial sum straight from the definition."""
    from math import comb
    n = mu.n
    total = None
    for l in box_range(r):
        sign = (-1) ** sum(l)
        c = 1
        for i in range(n):
            c *= comb(r[i], l[i])
        term = sign * c * mu[MultiIndex(tuple(s[i] + l[i] for i in range(n)))]
        total = term if total is None else total + term
    return total


def direct_bernstein(mu, k):
    """lambda_(k;m) = prod C(k_l, m_l) * nabla^(k-m) mu_m, per definition."""
    from math import comb
    out = {}
    for m in box_range(k):
        c = 1
        for i in range(mu.n):
            c *= comb(k[i], m[i])
        r = MultiIndex(tuple(k[i] - m[i] for i in range(mu.n)))
        out[m] = c * direct_forward_difference(mu, r, m)
    return out


def random_rational_tensor(rng: random.Random, bounds, denom=8, lo=-2, hi=2):
    vals = []
    for _ in box_range(MultiIndex(bounds)):
        vals.append(Fraction(rng.randint(lo * denom, hi * denom), denom))
    return MomentTensor(MultiIndex(bounds), tuple(vals), "rational")


def random_nonneg_tensor(rng: random.Random, bounds, denom=8, hi=2):
    vals = []
    for _ in box_range(MultiIndex(bounds)):
        vals.append(Fraction(rng.randint(0, hi * denom), denom))
    return MomentTensor(MultiIndex(bounds), tuple(vals), "rational")
