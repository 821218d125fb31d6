"""Pure-numpy float kernels for the sign enumeration.

Same vertex order as the exact engine (Gray walk, leading sign of each
enumerated axis pinned to +1, last axis analytic), so the two float
backends and the exact lane agree on which vertex wins a tie up to
floating-point rounding.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def sign_matrix(d: int) -> np.ndarray:
    """Rows = sign vectors of length d in Gray order, s[0] pinned to +1."""
    v = np.arange(1 << (d - 1), dtype=np.uint64)
    gray = v ^ (v >> np.uint64(1))
    if d == 1:
        return np.ones((1, 1))
    bits = ((gray[:, None] >> np.arange(d - 1, dtype=np.uint64)) & 1).astype(np.float64)
    return np.concatenate([np.ones((len(v), 1)), 1.0 - 2.0 * bits], axis=1)


def weak_enum_1d(lam: np.ndarray):
    signs = np.where(lam >= 0, 1, -1)
    return float(np.abs(lam).sum()), (tuple(int(s) for s in signs),)


def weak_enum_2d(lam: np.ndarray):
    d0, d1 = lam.shape
    s0 = sign_matrix(d0)
    c = s0 @ lam                      # (V, d1)
    vals = np.abs(c).sum(axis=1)
    b = int(np.argmax(vals))          # first maximum in Gray order
    row = c[b]
    signs1 = np.where(row >= 0, 1, -1)
    return float(vals[b]), (tuple(int(x) for x in s0[b]),
                            tuple(int(x) for x in signs1))


def weak_enum_3d(lam: np.ndarray, block: int = 1 << 14):
    d0, d1, d2 = lam.shape
    s0 = sign_matrix(d0)
    s1 = sign_matrix(d1)
    v0, v1 = s0.shape[0], s1.shape[0]
    best_val = -np.inf
    best = (0, 0)
    for lo in range(0, v0, block):
        t = np.tensordot(s0[lo:lo + block], lam, axes=(1, 0))   # (b, d1, d2)
        c = np.einsum("bij,wi->bwj", t, s1)                     # (b, V1, d2)
        vals = np.abs(c).sum(axis=2)
        idx = int(np.argmax(vals))
        i, j = divmod(idx, v1)
        if vals[i, j] > best_val:
            best_val = float(vals[i, j])
            best = (lo + i, j)
    b0, b1 = best
    row = np.einsum("i,ij->j", s1[b1], np.tensordot(s0[b0], lam, axes=(0, 0)))
    signs2 = np.where(row >= 0, 1, -1)
    return best_val, (tuple(int(x) for x in s0[b0]),
                      tuple(int(x) for x in s1[b1]),
                      tuple(int(x) for x in signs2))


def weak_enum(lam: np.ndarray):
    if lam.ndim == 1:
        return weak_enum_1d(lam)
    if lam.ndim == 2:
        return weak_enum_2d(lam)
    if lam.ndim == 3:
        return weak_enum_3d(lam)
    raise ValueError("numpy kernel supports 1 to 3 axes, got %d" % lam.ndim)
