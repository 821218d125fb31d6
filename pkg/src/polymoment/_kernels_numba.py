"""Numba-jitted float kernels for the sign enumeration.

Vertex order matches _kernels_numpy (Gray walk, leading signs pinned,
last axis analytic); the jitted loops update the partial contraction
incrementally instead of recomputing per vertex.
"""

from __future__ import annotations

import numpy as np
from numba import njit

BACKEND = "numba"


@njit(cache=True)
def _enum_2d(lam):
    d0, d1 = lam.shape
    u = lam[0].copy()
    for m in range(1, d0):
        u += lam[m]
    s = np.ones(d0, dtype=np.int8)
    best = np.abs(u).sum()
    best_vertex = 0
    total = 1 << (d0 - 1)
    for t in range(1, total):
        flip = 0
        while (t >> flip) & 1 == 0:
            flip += 1
        m = flip + 1
        if s[m] == 1:
            for j in range(d1):
                u[j] -= 2.0 * lam[m, j]
            s[m] = -1
        else:
            for j in range(d1):
                u[j] += 2.0 * lam[m, j]
            s[m] = 1
        val = 0.0
        for j in range(d1):
            val += abs(u[j])
        if val > best:
            best = val
            best_vertex = t ^ (t >> 1)
    return best, best_vertex


@njit(cache=True)
def _enum_3d(lam):
    d0, d1, d2 = lam.shape
    u = lam[0].copy()
    for m in range(1, d0):
        u += lam[m]
    s0 = np.ones(d0, dtype=np.int8)
    w = np.empty(d2, dtype=np.float64)
    best = -1.0
    best_v0 = 0
    best_v1 = 0
    total0 = 1 << (d0 - 1)
    total1 = 1 << (d1 - 1)
    for t0 in range(total0):
        if t0 > 0:
            flip = 0
            while (t0 >> flip) & 1 == 0:
                flip += 1
            m = flip + 1
            if s0[m] == 1:
                for i in range(d1):
                    for j in range(d2):
                        u[i, j] -= 2.0 * lam[m, i, j]
                s0[m] = -1
            else:
                for i in range(d1):
                    for j in range(d2):
                        u[i, j] += 2.0 * lam[m, i, j]
                s0[m] = 1
        # fresh inner Gray walk over axis 1 on the contracted matrix u
        for j in range(d2):
            acc = 0.0
            for i in range(d1):
                acc += u[i, j]
            w[j] = acc
        s1 = np.ones(d1, dtype=np.int8)
        val = 0.0
        for j in range(d2):
            val += abs(w[j])
        if val > best:
            best = val
            best_v0 = t0 ^ (t0 >> 1)
            best_v1 = 0
        for t1 in range(1, total1):
            flip = 0
            while (t1 >> flip) & 1 == 0:
                flip += 1
            m = flip + 1
            if s1[m] == 1:
                for j in range(d2):
                    w[j] -= 2.0 * u[m, j]
                s1[m] = -1
            else:
                for j in range(d2):
                    w[j] += 2.0 * u[m, j]
                s1[m] = 1
            val = 0.0
            for j in range(d2):
                val += abs(w[j])
            if val > best:
                best = val
                best_v0 = t0 ^ (t0 >> 1)
                best_v1 = t1 ^ (t1 >> 1)
    return best, best_v0, best_v1


def _signs_from_gray(code: int, d: int):
    out = [1] * d
    for j in range(d - 1):
        if (code >> j) & 1:
            out[j + 1] = -1
    return tuple(out)


def weak_enum_1d(lam: np.ndarray):
    signs = np.where(lam >= 0, 1, -1)
    return float(np.abs(lam).sum()), (tuple(int(s) for s in signs),)


def weak_enum_2d(lam: np.ndarray):
    best, vertex = _enum_2d(np.ascontiguousarray(lam, dtype=np.float64))
    s0 = _signs_from_gray(int(vertex), lam.shape[0])
    row = np.asarray(s0, dtype=np.float64) @ lam
    signs1 = np.where(row >= 0, 1, -1)
    return float(best), (s0, tuple(int(x) for x in signs1))


def weak_enum_3d(lam: np.ndarray):
    best, v0, v1 = _enum_3d(np.ascontiguousarray(lam, dtype=np.float64))
    s0 = _signs_from_gray(int(v0), lam.shape[0])
    s1 = _signs_from_gray(int(v1), lam.shape[1])
    u = np.tensordot(np.asarray(s0, dtype=np.float64), lam, axes=(0, 0))
    row = np.asarray(s1, dtype=np.float64) @ u
    signs2 = np.where(row >= 0, 1, -1)
    return float(best), (s0, s1, tuple(int(x) for x in signs2))


def weak_enum(lam: np.ndarray):
    if lam.ndim == 1:
        return weak_enum_1d(lam)
    if lam.ndim == 2:
        return weak_enum_2d(lam)
    if lam.ndim == 3:
        return weak_enum_3d(lam)
    raise ValueError("numba kernel supports 1 to 3 axes, got %d" % lam.ndim)
