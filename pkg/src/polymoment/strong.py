"""Hankel structure and strong (diagonal) reconstructions.

A multi-index sequence is Hankel when mu_{k + e_l} = mu_{k + e_{l+1}}
for every k and adjacent axis pair: the value only depends on the total
degree |k|.  Such sequences reduce to a univariate sequence nu_j on the
diagonal, and a single measure on [0, 1] solves the strong problem via
the Bernstein weights

    w_m = C(N, m) * diff^(N - m) nu_m      at nodes m / N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from .certifiers import CertificateReport, _scalar_text, bounded_constant
from .errors import (
    BoundsError,
    BoundViolationError,
    DiagonalConsistencyError,
    HankelViolationError,
    ModeError,
)
from .indexing import MultiIndex, as_multiindex, box_range, shell
from .moment_core import (
    MomentTensor,
    MonotonicityReport,
    Polynomial,
    bernstein_coefficients,
    check_completely_monotone,
    evaluate_functional,
)
from .polymeasure import DiscreteMeasure, DiscretePolymeasure
from .scalars import FLOAT, RATIONAL, close_enough


@dataclass(frozen=True)
class HankelWitness:
    k: MultiIndex
    axis: int          # compared mu_{k + e_axis} against mu_{k + e_{axis+1}}
    left: object
    right: object


@dataclass(frozen=True)
class HankelReport:
    verdict: str       # hankel | violated
    scanned_order: MultiIndex
    witness: Optional[HankelWitness]
    mode: str


@dataclass(frozen=True)
class StrongSolution:
    """Diagonal reconstruction plus the hypothesis reports that back it."""

    N: int
    measure: DiscreteMeasure
    residuals: Dict[MultiIndex, object]
    bounded: CertificateReport
    monotone: MonotonicityReport


def check_hankel(mu: MomentTensor, max_order=None) -> HankelReport:
    """Scan mu_{k+e_l} = mu_{k+e_{l+1}} over the box; first failure wins.

    The scan walks k in row-major order (last axis fastest) and axes
    left to right, comparing only pairs that stay inside the scanned
    box.  One axis is vacuously Hankel.
    """
    scan = mu.bounds if max_order is None else as_multiindex(max_order, mu.n)
    if not scan.leq(mu.bounds):
        raise BoundsError(
            "max order %s exceeds bounds %s" % (tuple(scan), tuple(mu.bounds))
        )
    if mu.n == 1:
        return HankelReport("hankel", scan, None, mu.mode)
    scale = None
    if mu.mode == FLOAT:
        scale = max(1.0, max(abs(complex(v)) for v in mu.values))
    for k in box_range(scan):
        for axis in range(mu.n - 1):
            if k[axis] + 1 > scan[axis] or k[axis + 1] + 1 > scan[axis + 1]:
                continue
            a = mu[k.shifted(axis)]
            b = mu[k.shifted(axis + 1)]
            if not close_enough(a, b, mu.mode, scale):
                return HankelReport(
                    "violated", scan, HankelWitness(k, axis, a, b), mu.mode)
    return HankelReport("hankel", scan, None, mu.mode)


def diagonal_sequence(mu: MomentTensor, J: int) -> Tuple:
    """nu_j = the common value of mu_k over |k| = j, for j = 0..J.

    Every same-degree pair is compared; a mismatch raises
    DiagonalConsistencyError carrying both indices.
    """
    if J < 0:
        raise BoundsError("diagonal length must be >= 0")
    out = []
    scale = None
    if mu.mode == FLOAT:
        scale = max(1.0, max(abs(complex(v)) for v in mu.values))
    for j in range(J + 1):
        first_k = None
        first_v = None
        for k in shell(mu.bounds, j):
            v = mu[k]
            if first_k is None:
                first_k, first_v = k, v
            elif not close_enough(first_v, v, mu.mode, scale):
                raise DiagonalConsistencyError(
                    "degree-%d moments disagree: mu_%s = %s but mu_%s = %s"
                    % (j, tuple(first_k), first_v, tuple(k), v),
                    first_k, k, first_v, v)
        if first_k is None:
            raise BoundsError(
                "no multi-index of total degree %d fits bounds %s"
                % (j, tuple(mu.bounds))
            )
        out.append(first_v)
    return tuple(out)


def reconstruct_univariate(nu: Sequence, N: int) -> DiscreteMeasure:
    """Atomic measure at nodes m/N with Bernstein weights from nu.

    Exact in rational mode.  Float inputs run the same triangle but
    large N cancels catastrophically; prefer rationals for real use.
    """
    if N < 1:
        raise BoundsError("reconstruction degree N must be >= 1")
    if len(nu) < N + 1:
        raise BoundsError(
            "need nu_0..nu_%d for degree-%d reconstruction, got %d values"
            % (N, N, len(nu))
        )
    vals = list(nu[:N + 1])
    exact = all(isinstance(v, (int, Fraction)) for v in vals)
    if exact:
        den = 1
        for v in vals:
            f = Fraction(v)
            den = den * f.denominator // math.gcd(den, f.denominator)
        cur = [int(Fraction(v) * den) for v in vals]
    else:
        den = 1
        cur = [float(v) for v in vals]
    weights: list = [None] * (N + 1)
    weights[N] = cur[-1] * math.comb(N, N)
    for r in range(1, N + 1):
        cur = [cur[i] - cur[i + 1] for i in range(len(cur) - 1)]
        weights[N - r] = cur[-1] * math.comb(N, N - r)
    if exact:
        weights = [Fraction(w, den) for w in weights]
    atoms = tuple(Fraction(m, N) for m in range(N + 1))
    return DiscreteMeasure(atoms, tuple(weights))


def reconstruct_multivariate(mu: MomentTensor, N) -> DiscretePolymeasure:
    """Product-node polymeasure with Bernstein-coefficient weights.

    Atoms are m_l / N_l per axis and the coefficient at m is
    lambda_(N; m); for Hankel input its diagonal collapses to the
    univariate reconstruction.
    """
    N = as_multiindex(N, mu.n)
    if any(e < 1 for e in N):
        raise BoundsError("each reconstruction degree must be >= 1")
    bt = bernstein_coefficients(mu, N)
    atoms = tuple(tuple(Fraction(m, N[l]) for m in range(N[l] + 1))
                  for l in range(mu.n))
    return DiscretePolymeasure(atoms, bt.values, mu.mode)


def solve_strong(mu: MomentTensor, J: int = 8, N: int = 256, *,
                 claimed_c=None) -> StrongSolution:
    """Solve the strong problem: one measure matching mu_k through t^|k|.

    Refuses (HankelViolationError) when the sequence is not Hankel, and
    (BoundViolationError) when claimed_c is given and the bounded
    constant exceeds it.  The solution reports the bounded constant and
    the monotonicity verdict up to min(bounds, J) alongside residuals
    |mu_k - sum w_m (m/N)^|k|| for every stored k with |k| <= J.
    """
    if mu.is_complex:
        raise ModeError("the strong solver works on real sequences")
    hankel = check_hankel(mu)
    if hankel.verdict != "hankel":
        raise HankelViolationError(hankel)
    hyp_order = MultiIndex(min(b, J) for b in mu.bounds)
    bounded = bounded_constant(mu, hyp_order)
    if claimed_c is not None and bounded.constant > claimed_c:
        report = CertificateReport(
            bounded.kind, bounded.scanned_order, bounded.constant,
            bounded.witness_order, bounded.witness_signs, bounded.method,
            "violated(%s)" % _scalar_text(claimed_c),
            bounded.extension_norm_bound, bounded.mode)
        raise BoundViolationError(report)
    monotone = check_completely_monotone(mu, hyp_order)
    if sum(mu.bounds) < N:
        raise BoundsError(
            "degree-%d reconstruction needs diagonal moments up to %d; "
            "bounds %s only reach total degree %d"
            % (N, N, tuple(mu.bounds), sum(mu.bounds))
        )
    nu = diagonal_sequence(mu, N)
    measure = reconstruct_univariate(nu, N)
    # grid moments of the reconstruction, one power step at a time
    residuals: Dict[MultiIndex, object] = {}
    pw = list(measure.weights)
    cur = [Fraction(1)] * len(measure.atoms) if measure.mode == RATIONAL \
        else [1.0] * len(measure.atoms)
    grid_moment = []
    for j in range(J + 1):
        if j > 0:
            cur = [c * a for c, a in zip(cur, measure.atoms)]
        total = None
        for w, c in zip(pw, cur):
            term = w * c
            total = term if total is None else total + term
        grid_moment.append(total)
    for j in range(J + 1):
        for k in shell(mu.bounds, j):
            residuals[k] = abs(mu[k] - grid_moment[j])
    return StrongSolution(N, measure, residuals, bounded, monotone)


def verify_strong_identity(measure: DiscreteMeasure, mu: MomentTensor,
                           polys: Sequence[Polynomial]):
    """|L_mu(p_1 x ... x p_n) - integral of prod p_l(t) d(measure)|."""
    lhs = evaluate_functional(mu, polys)
    rhs = None
    for a, w in zip(measure.atoms, measure.weights):
        term = w
        for p in polys:
            term = term * p(a)
        rhs = term if rhs is None else rhs + term
    return abs(lhs - rhs)


def evaluate_diagonal(mu: MomentTensor, p: Polynomial):
    """L_mu(p x p x ... x p): the moment functional on a diagonal product."""
    return evaluate_functional(mu, [p] * mu.n)
