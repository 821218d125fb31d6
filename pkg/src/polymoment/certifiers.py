"""Boundedness and weak-boundedness certificates for moment tensors.

The bounded constant at order k is the l1 mass of the Bernstein
coefficients, sum_m |lambda_(k; m)|.  The weak constant is the maximum
of |sum_m a_1[m_1] ... a_n[m_n] lambda_(k; m)| over per-axis sign boxes
|a| <= 1; multilinearity puts the maximum at a +-1 vertex, so the exact
value comes from the reduced vertex enumeration in _signopt.  A weak
certificate with constant C extends to a functional-norm bound 2^n * C.

Rational mode produces exact certificates (denominators cleared once,
enumeration on Python ints).  Float mode runs the same scan on floats
through the selected kernel backend and demotes the method to
"heuristic" whenever a coefficient is too close to zero to trust its
sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Optional, Tuple

import numpy as np

from . import _signopt, scalars
from ._backend import kernels
from .errors import BoundsError, DimensionError, ModeError
from .indexing import MultiIndex, as_multiindex, box_range, box_strides, flat_index
from .moment_core import (
    BernsteinTensor,
    MomentTensor,
    assemble_bernstein,
    difference_tables,
    scaled_integer_box,
)
from .scalars import FLOAT, FLOAT_RTOL, RATIONAL


@dataclass(frozen=True)
class SignAssignment:
    """Per-axis sign (or [-1, 1] weight) vectors for a fixed order."""

    axes: Tuple[Tuple, ...]

    def __post_init__(self):
        axes = tuple(tuple(ax) for ax in self.axes)
        if not axes:
            raise DimensionError("a sign assignment needs at least one axis")
        for i, ax in enumerate(axes):
            if not ax:
                raise DimensionError("axis %d of the sign assignment is empty" % i)
            for v in ax:
                if scalars.abs_float(v) > 1 + 1e-15:
                    raise BoundsError(
                        "sign weight %r on axis %d falls outside [-1, 1]" % (v, i)
                    )
        object.__setattr__(self, "axes", axes)

    @property
    def order(self) -> MultiIndex:
        return MultiIndex(len(ax) - 1 for ax in self.axes)

    def evaluate(self, bt: BernsteinTensor):
        """Signed contraction sum_m prod_l axes[l][m_l] * lambda_m."""
        if tuple(self.order) != tuple(bt.order):
            raise DimensionError(
                "sign assignment order %s does not match tensor order %s"
                % (tuple(self.order), tuple(bt.order))
            )
        return _signopt.evaluate_assignment(
            bt.values, tuple(d + 1 for d in bt.order), self.axes
        )


@dataclass(frozen=True)
class CertificateReport:
    kind: str                       # bounded | weak
    scanned_order: MultiIndex
    constant: object
    witness_order: Optional[MultiIndex]
    witness_signs: Optional[SignAssignment]
    method: str                     # exact | heuristic
    verdict: str                    # holds-up-to-order | violated(...) | inconclusive
    extension_norm_bound: object
    mode: str


def _scalar_text(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


def _definitely_greater(a, b, mode) -> bool:
    if mode == RATIONAL:
        return a > b
    return float(a) > float(b) + FLOAT_RTOL * max(1.0, abs(float(a)), abs(float(b)))


def _lambda_scan(mu: MomentTensor, max_order: MultiIndex
                 ) -> Iterator[Tuple[MultiIndex, list, Tuple[int, ...], bool]]:
    """Yield (k, flat lambda, dims, trusted_signs) for every k <= max_order.

    Rational mode yields scaled integers (multiply by the mu box lcm);
    float mode yields floats, trusted_signs False when some |lambda| is
    within tolerance of zero.
    """
    if mu.is_complex:
        raise ModeError("certificates run on real tensors; split complex "
                        "sequences into real and imaginary parts first")
    if mu.mode == RATIONAL:
        flat, _den = scaled_integer_box(mu, max_order)
    else:
        strides = mu.strides
        flat = [mu.values[flat_index(s, strides)] for s in box_range(max_order)]
    tables = difference_tables(flat, max_order, max_order)
    for k in box_range(max_order):
        lam = assemble_bernstein(tables, k, max_order)
        dims = tuple(e + 1 for e in k)
        if mu.mode == FLOAT:
            scale = max(1.0, max(abs(v) for v in lam))
            trusted = all(abs(v) > FLOAT_RTOL * scale or v == 0.0 for v in lam)
        else:
            trusted = True
        yield k, lam, dims, trusted


def _scan_denominator(mu: MomentTensor, max_order: MultiIndex) -> int:
    if mu.mode == RATIONAL:
        return scaled_integer_box(mu, max_order)[1]
    return 1


def _float_weak(lam: list, dims: Tuple[int, ...]):
    if len(dims) <= 3:
        arr = np.asarray(lam, dtype=np.float64).reshape(dims)
        return kernels().weak_enum(arr)
    return _signopt.maximize_signs(lam, dims)


def bounded_constant(mu: MomentTensor, max_order,
                     claimed_c=None) -> CertificateReport:
    """Max over k <= max_order of sum_m |lambda_(k; m)|, with its order.

    With claimed_c, the scan stops at the first order whose l1 mass
    exceeds the claim and reports verdict "violated(claimed_c)" with
    that order and value.
    """
    max_order = as_multiindex(max_order, mu.n)
    if not max_order.leq(mu.bounds):
        raise BoundsError(
            "max order %s exceeds bounds %s" % (tuple(max_order), tuple(mu.bounds))
        )
    den = _scan_denominator(mu, max_order)
    best = None
    best_k = None
    method = "exact"
    for k, lam, _dims, trusted in _lambda_scan(mu, max_order):
        if not trusted:
            method = "heuristic"
        s = sum(v if v >= 0 else -v for v in lam)
        if best is None or s > best:
            best = s
            best_k = k
        if claimed_c is not None:
            value = Fraction(s, den) if mu.mode == RATIONAL else float(s)
            if _definitely_greater(value, claimed_c, mu.mode):
                return CertificateReport(
                    "bounded", k, value, k, None, method,
                    "violated(%s)" % _scalar_text(claimed_c),
                    value * (2 ** mu.n), mu.mode)
    constant = Fraction(best, den) if mu.mode == RATIONAL else float(best)
    ext = constant * (2 ** mu.n)
    return CertificateReport("bounded", max_order, constant, best_k, None,
                             method, "holds-up-to-order", ext, mu.mode)


def weak_bound_exact(mu: MomentTensor, k) -> Tuple[object, SignAssignment]:
    """Exact weak constant at one order, with an attaining sign vertex.

    Raises BudgetExceededError when the reduced enumeration would pass
    2^20 vertices; weak_bound_estimate covers that regime.
    """
    k = as_multiindex(k, mu.n)
    if not k.leq(mu.bounds):
        raise BoundsError("order %s exceeds bounds %s" % (tuple(k), tuple(mu.bounds)))
    dims = tuple(e + 1 for e in k)
    _signopt.check_budget(dims, "weak bound at order %s" % (tuple(k),))
    if mu.mode == RATIONAL:
        flat, den = scaled_integer_box(mu, k)
        tables = difference_tables(flat, k, k)
        lam = assemble_bernstein(tables, k, k)
        val, signs = _signopt.maximize_signs(lam, dims)
        return Fraction(val, den), SignAssignment(signs)
    strides = mu.strides
    flat = [mu.values[flat_index(s, strides)] for s in box_range(k)]
    tables = difference_tables(flat, k, k)
    lam = assemble_bernstein(tables, k, k)
    val, signs = _float_weak(lam, dims)
    return float(val), SignAssignment(signs)


def weak_bound_estimate(mu: MomentTensor, k, budget: int = 64,
                        seed: int = 0) -> Tuple[object, SignAssignment]:
    """Coordinate-ascent lower bound on the weak constant at order k.

    `budget` caps the sweeps per restart; restart #0 is the all-plus
    assignment, the remaining 7 are seeded sign draws.  The returned
    value is the exact objective at the returned assignment, so in
    rational mode it is a certified lower bound.
    """
    k = as_multiindex(k, mu.n)
    if not k.leq(mu.bounds):
        raise BoundsError("order %s exceeds bounds %s" % (tuple(k), tuple(mu.bounds)))
    dims = tuple(e + 1 for e in k)
    if mu.mode == RATIONAL:
        flat, den = scaled_integer_box(mu, k)
    else:
        strides = mu.strides
        flat = [mu.values[flat_index(s, strides)] for s in box_range(k)]
        den = 1
    tables = difference_tables(flat, k, k)
    lam = assemble_bernstein(tables, k, k)
    val, signs = _signopt.coordinate_ascent(lam, dims, sweeps=budget,
                                            restarts=8, seed=seed)
    value = Fraction(val, den) if mu.mode == RATIONAL else float(val)
    return value, SignAssignment(signs)


def certify_weakly_bounded(mu: MomentTensor, max_order, claimed_c=None,
                           budget: int = 64, seed: int = 0) -> CertificateReport:
    """Scan every order k <= max_order and certify the weak constant.

    Orders within the enumeration budget are solved exactly; beyond it
    the coordinate-ascent estimate stands in and the verdict degrades to
    "inconclusive" (the constant may undershoot).  When claimed_c is
    given the scan stops at the first order whose value exceeds it and
    reports verdict "violated(claimed_c)" with that order as witness.
    """
    max_order = as_multiindex(max_order, mu.n)
    if not max_order.leq(mu.bounds):
        raise BoundsError(
            "max order %s exceeds bounds %s" % (tuple(max_order), tuple(mu.bounds))
        )
    den = _scan_denominator(mu, max_order)
    best = None
    best_k = None
    best_signs = None
    all_trusted = True    # float-mode sign trust
    used_estimate = False  # some order fell back to coordinate ascent
    for k, lam, dims, trusted in _lambda_scan(mu, max_order):
        all_trusted = all_trusted and trusted
        if _signopt.enumeration_bits(dims) <= _signopt.ENUM_BUDGET_BITS:
            if mu.mode == RATIONAL:
                val, signs = _signopt.maximize_signs(lam, dims)
            else:
                val, signs = _float_weak(lam, dims)
            estimated = False
        else:
            val, signs = _signopt.coordinate_ascent(lam, dims, sweeps=budget,
                                                    restarts=8, seed=seed)
            estimated = True
            used_estimate = True
        if best is None or val > best:
            best = val
            best_k = k
            best_signs = signs
        if claimed_c is not None:
            value = Fraction(val, den) if mu.mode == RATIONAL else float(val)
            if _definitely_greater(value, claimed_c, mu.mode):
                # the violating value is a certified lower bound even when
                # the ascent found it, so the violation verdict stands
                ext = value * (2 ** mu.n)
                method = "exact" if (mu.mode == RATIONAL and not estimated) \
                    else "heuristic"
                return CertificateReport(
                    "weak", k, value, k, SignAssignment(signs), method,
                    "violated(%s)" % _scalar_text(claimed_c), ext, mu.mode)
    constant = Fraction(best, den) if mu.mode == RATIONAL else float(best)
    ext = constant * (2 ** mu.n)
    method = "exact" if (mu.mode == RATIONAL and not used_estimate
                         ) or (mu.mode == FLOAT and all_trusted
                               and not used_estimate) else "heuristic"
    verdict = "inconclusive" if used_estimate else "holds-up-to-order"
    return CertificateReport("weak", max_order, constant, best_k,
                             SignAssignment(best_signs), method, verdict,
                             ext, mu.mode)


def weak_profile(mu: MomentTensor, max_order, budget: int = 64,
                 seed: int = 0) -> Dict[MultiIndex, object]:
    """Weak constant per order k <= max_order (exact where budget allows)."""
    max_order = as_multiindex(max_order, mu.n)
    if not max_order.leq(mu.bounds):
        raise BoundsError(
            "max order %s exceeds bounds %s" % (tuple(max_order), tuple(mu.bounds))
        )
    den = _scan_denominator(mu, max_order)
    out: Dict[MultiIndex, object] = {}
    for k, lam, dims, _trusted in _lambda_scan(mu, max_order):
        if _signopt.enumeration_bits(dims) <= _signopt.ENUM_BUDGET_BITS:
            if mu.mode == RATIONAL:
                val, _ = _signopt.maximize_signs(lam, dims)
            else:
                val, _ = _float_weak(lam, dims)
        else:
            val, _ = _signopt.coordinate_ascent(lam, dims, sweeps=budget,
                                                restarts=8, seed=seed)
        out[k] = Fraction(val, den) if mu.mode == RATIONAL else float(val)
    return out
