"""Truncated moment tensors and the finite-difference / Bernstein calculus.

Conventions
-----------
A moment tensor stores mu_k for every multi-index 0 <= k <= bounds
(componentwise), flat in row-major order.  The forward difference is

    diff^r mu_s = sum_{0 <= l <= r} (-1)^{|l|} C(r, l) mu_{s + l},

so diff along one axis is mu_k - mu_{k + e_l} (note the sign: constants
difference to zero, decreasing sequences difference to non-negative
values).  The Bernstein coefficients of order k are

    lambda_(k; m) = C(k, m) * diff^(k - m) mu_m,   0 <= m <= k,

and mu is completely monotone up to an order exactly when all these
tensors are entrywise non-negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import scalars
from .errors import BoundsError, DimensionError, ModeError
from .indexing import (
    MultiIndex,
    as_multiindex,
    box_range,
    box_size,
    box_strides,
    flat_index,
    multinomial_binom,
)
from .scalars import FLOAT, RATIONAL, ComplexRational, check_mode


@dataclass(frozen=True)
class MomentTensor:
    """Dense truncated multi-index sequence on a box 0 <= k <= bounds."""

    bounds: MultiIndex
    values: Tuple
    mode: str

    def __post_init__(self):
        object.__setattr__(self, "bounds", as_multiindex(self.bounds))
        check_mode(self.mode)
        vals = tuple(self.values)
        if len(vals) != box_size(self.bounds):
            raise DimensionError(
                "expected %d values for bounds %s, got %d"
                % (box_size(self.bounds), tuple(self.bounds), len(vals))
            )
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return self.bounds.arity

    @property
    def strides(self) -> Tuple[int, ...]:
        return box_strides(self.bounds)

    @property
    def is_complex(self) -> bool:
        return any(scalars.is_complex_scalar(v) for v in self.values)

    def __getitem__(self, k):
        k = as_multiindex(k, self.n)
        for axis, (a, b) in enumerate(zip(k, self.bounds)):
            if a > b:
                raise BoundsError(
                    "index %d exceeds bound %d on axis %d" % (a, b, axis)
                )
        return self.values[flat_index(k, self.strides)]

    @classmethod
    def from_function(cls, bounds, fn: Callable[[MultiIndex], object],
                      mode: str = RATIONAL) -> "MomentTensor":
        bounds = as_multiindex(bounds)
        vals = [scalars.coerce_scalar(_exactify(fn(k), mode), mode)
                for k in box_range(bounds)]
        return cls(bounds, tuple(vals), mode)

    def restrict(self, new_bounds) -> "MomentTensor":
        """Restriction to a smaller box."""
        new_bounds = as_multiindex(new_bounds, self.n)
        if not new_bounds.leq(self.bounds):
            raise BoundsError(
                "restriction bounds %s exceed stored bounds %s"
                % (tuple(new_bounds), tuple(self.bounds))
            )
        vals = [self[k] for k in box_range(new_bounds)]
        return MomentTensor(new_bounds, tuple(vals), self.mode)

    def map_values(self, fn) -> "MomentTensor":
        return replace(self, values=tuple(fn(v) for v in self.values))

    def combine(self, other: "MomentTensor", a=1, b=1) -> "MomentTensor":
        """a * self + b * other, entrywise.  Modes and bounds must match."""
        if not isinstance(other, MomentTensor):
            raise ModeError("can only combine with another MomentTensor")
        if other.mode != self.mode:
            raise ModeError("mode mismatch: %s vs %s" % (self.mode, other.mode))
        if tuple(other.bounds) != tuple(self.bounds):
            raise DimensionError("bounds mismatch in combine")
        vals = tuple(a * x + b * y for x, y in zip(self.values, other.values))
        return MomentTensor(self.bounds, vals, self.mode)

    def real_part(self) -> "MomentTensor":
        return self.map_values(
            lambda v: v.re if isinstance(v, ComplexRational)
            else (v.real if isinstance(v, complex) else v))

    def imag_part(self) -> "MomentTensor":
        zero = Fraction(0) if self.mode == RATIONAL else 0.0
        return self.map_values(
            lambda v: v.im if isinstance(v, ComplexRational)
            else (v.imag if isinstance(v, complex) else zero))


def _exactify(v, mode):
    # convenience: ints produced by user callables become Fractions
    if mode == RATIONAL and isinstance(v, int) and not isinstance(v, bool):
        return Fraction(v)
    return v


@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial, ascending coefficients, trailing zeros trimmed."""

    coefficients: Tuple

    def __post_init__(self):
        c = list(self.coefficients)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c:
            c = [Fraction(0)]
        object.__setattr__(self, "coefficients", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, t):
        acc = self.coefficients[-1]
        for c in reversed(self.coefficients[:-1]):
            acc = acc * t + c
        return acc

    def __add__(self, other):
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial(tuple(out))

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
            for i, a in enumerate(self.coefficients):
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
            return Polynomial(tuple(out))
        return Polynomial(tuple(c * other for c in self.coefficients))

    __rmul__ = __mul__

    def derivative(self) -> "Polynomial":
        if self.degree == 0:
            return Polynomial((Fraction(0),))
        return Polynomial(tuple(i * c for i, c in
                                enumerate(self.coefficients) if i > 0))

    def sup_norm_unit_interval(self, tol: float = 1e-12) -> float:
        """Numeric sup of |p| on [0, 1]: derivative roots by bisection plus endpoints.

        Reporting aid only; certificates never depend on it.
        """
        pf = [float(c) for c in self.coefficients]

        def ev(cs, t):
            acc = 0.0
            for c in reversed(cs):
                acc = acc * t + c
            return acc

        dv = [i * c for i, c in enumerate(pf) if i > 0] or [0.0]
        cands = [0.0, 1.0]
        grid = max(64, 8 * len(pf))
        prev_t, prev_v = 0.0, ev(dv, 0.0)
        for i in range(1, grid + 1):
            t = i / grid
            v = ev(dv, t)
            if prev_v == 0.0:
                cands.append(prev_t)
            elif (prev_v < 0) != (v < 0):
                lo, hi = prev_t, t
                while hi - lo > tol:
                    mid = 0.5 * (lo + hi)
                    if (ev(dv, lo) < 0) != (ev(dv, mid) < 0):
                        hi = mid
                    else:
                        lo = mid
                cands.append(0.5 * (lo + hi))
            prev_t, prev_v = t, v
        return max(abs(ev(pf, t)) for t in cands)

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, j: int, c=1) -> "Polynomial":
        return cls(tuple([0] * j + [c]))


@dataclass(frozen=True)
class BernsteinTensor:
    """Coefficients lambda_(k; m) for all 0 <= m <= order, row-major."""

    order: MultiIndex
    values: Tuple
    mode: str

    def __post_init__(self):
        object.__setattr__(self, "order", as_multiindex(self.order))
        check_mode(self.mode)
        vals = tuple(self.values)
        if len(vals) != box_size(self.order):
            raise DimensionError(
                "expected %d coefficients for order %s, got %d"
                % (box_size(self.order), tuple(self.order), len(vals))
            )
        object.__setattr__(self, "values", vals)

    def __getitem__(self, m):
        m = as_multiindex(m, self.order.arity)
        for axis, (a, b) in enumerate(zip(m, self.order)):
            if a > b:
                raise BoundsError(
                    "index %d exceeds order %d on axis %d" % (a, b, axis)
                )
        return self.values[flat_index(m, box_strides(self.order))]

    def abs_sum(self):
        if self.mode == RATIONAL:
            return sum((abs(v) for v in self.values), Fraction(0))
        return float(sum(abs(v) for v in self.values))

    def min_value(self):
        return min(self.values)

    def entrywise_nonnegative(self, tol=None) -> bool:
        if self.mode == RATIONAL:
            return all(v >= 0 for v in self.values)
        t = 0.0 if tol is None else tol
        return all(v >= -t for v in self.values)


@dataclass(frozen=True)
class MonotonicityReport:
    """Outcome of the complete-monotonicity scan."""

    verdict: str                 # completely-monotone | violated | indeterminate
    scanned_order: MultiIndex
    witness: Optional[Tuple[MultiIndex, MultiIndex]]
    value: Optional[object]
    mode: str


def forward_difference(mu: MomentTensor, r, s):
    """diff^r mu_s by direct alternating summation (exact in rational mode)."""
    r = as_multiindex(r, mu.n)
    s = as_multiindex(s, mu.n)
    if not (r + s).leq(mu.bounds):
        axis = next(
            i for i, (ri, si, bi) in enumerate(zip(r, s, mu.bounds)) if ri + si > bi
        )
        raise BoundsError(
            "axis %d: difference order %d at base %d exceeds bound %d"
            % (axis, r[axis], s[axis], mu.bounds[axis])
        )
    total = None
    for l in box_range(r):
        term = multinomial_binom(r, l) * mu[s + l]
        if l.degree % 2:
            term = -term
        total = term if total is None else total + term
    return total


def _axis_difference(flat: List, bounds: Sequence[int], axis: int):
    nb = list(bounds)
    nb[axis] -= 1
    strides = box_strides(bounds)
    step = strides[axis]
    out = []
    for s in box_range(nb):
        i = flat_index(s, strides)
        out.append(flat[i] - flat[i + step])
    return out, tuple(nb)


def difference_tables(flat: Sequence, bounds: Sequence[int],
                      max_order: Sequence[int]) -> Dict[MultiIndex, List]:
    """All tables T_r[s] = diff^r x_s for r <= max_order, s <= max_order - r.

    Input is any flat row-major box of scalars with ring arithmetic
    (Fractions, scaled ints, floats); output maps r to a flat row-major
    table with bounds max_order - r.
    """
    bounds = tuple(bounds)
    max_order = tuple(max_order)
    if any(m > b for m, b in zip(max_order, bounds)):
        raise BoundsError(
            "max order %s exceeds stored bounds %s" % (max_order, bounds)
        )
    strides = box_strides(bounds)
    base = [flat[flat_index(s, strides)] for s in box_range(max_order)]
    tables: Dict[MultiIndex, List] = {MultiIndex([0] * len(bounds)): base}
    table_bounds: Dict[MultiIndex, Tuple[int, ...]] = {
        MultiIndex([0] * len(bounds)): max_order
    }
    for r in box_range(max_order):
        if r.degree == 0:
            continue
        axis = next(i for i, e in enumerate(r) if e > 0)
        prev = r.shifted(axis, -1)
        tab, nb = _axis_difference(tables[prev], table_bounds[prev], axis)
        tables[r] = tab
        table_bounds[r] = nb
    return tables


def _binom_row(k: Sequence[int]) -> Dict[Tuple[int, ...], int]:
    return {tuple(m): multinomial_binom(k, m) for m in box_range(k)}


def assemble_bernstein(tables: Dict[MultiIndex, List], k: MultiIndex,
                       table_max: MultiIndex) -> List:
    """Flat lambda_(k; m) over the box m <= k, from precomputed tables.

    `table_max` is the max_order the tables were built with; table r
    spans the box <= table_max - r.
    """
    out = []
    for m in box_range(k):
        r = k - m
        tb = table_max - r
        out.append(multinomial_binom(k, m) *
                   tables[r][flat_index(m, box_strides(tb))])
    return out


def bernstein_coefficients(mu: MomentTensor, k) -> BernsteinTensor:
    """The tensor lambda_(k; m) = C(k, m) diff^(k-m) mu_m, 0 <= m <= k."""
    k = as_multiindex(k, mu.n)
    if not k.leq(mu.bounds):
        raise BoundsError(
            "order %s exceeds bounds %s" % (tuple(k), tuple(mu.bounds))
        )
    tables = difference_tables(mu.values, mu.bounds, k)
    return BernsteinTensor(k, tuple(assemble_bernstein(tables, k, k)), mu.mode)


def scaled_integer_box(mu: MomentTensor, max_order) -> Tuple[List[int], int]:
    """Clear denominators on the sub-box <= max_order: returns (D * mu, D).

    Rational mode only.  Signs and ratios survive, so scans and sign
    optimizations can run on Python ints.
    """
    if mu.mode != RATIONAL:
        raise ModeError("integer scaling needs rational mode")
    max_order = as_multiindex(max_order, mu.n)
    strides = mu.strides
    vals = [mu.values[flat_index(s, strides)] for s in box_range(max_order)]
    den = 1
    for v in vals:
        if isinstance(v, ComplexRational):
            raise ModeError("integer scaling needs real scalars")
        den = den * v.denominator // math.gcd(den, v.denominator)
    return [int(v * den) for v in vals], den


def check_completely_monotone(mu: MomentTensor, max_order) -> MonotonicityReport:
    """Scan diff^r mu_s >= 0 over every r + s <= max_order.

    Witness is the first failing (r, s) in row-major order on r, then s.
    Float mode calls |value| < 1e-9 * max(1, max |mu|) indeterminate.
    """
    max_order = as_multiindex(max_order, mu.n)
    if not max_order.leq(mu.bounds):
        raise BoundsError(
            "max order %s exceeds bounds %s" % (tuple(max_order), tuple(mu.bounds))
        )
    if mu.is_complex:
        raise ModeError("complete monotonicity is defined for real sequences")

    if mu.mode == RATIONAL:
        flat, _den = scaled_integer_box(mu, max_order)
        tol = 0
    else:
        strides = mu.strides
        flat = [mu.values[flat_index(s, strides)] for s in box_range(max_order)]
        tol = scalars.FLOAT_RTOL * max(1.0, max(abs(v) for v in flat))

    tables = difference_tables(flat, max_order, max_order)
    borderline = None
    for r in box_range(max_order):
        tab = tables[r]
        tb = max_order - r
        for j, s in enumerate(box_range(tb)):
            v = tab[j]
            if v < -tol:
                true_value = forward_difference(mu, r, s)
                return MonotonicityReport("violated", max_order, (r, s),
                                          true_value, mu.mode)
            if tol and v < tol and borderline is None:
                borderline = (r, s, v)
    if borderline is not None:
        r, s, v = borderline
        return MonotonicityReport("indeterminate", max_order, (r, s), v, mu.mode)
    return MonotonicityReport("completely-monotone", max_order, None, None, mu.mode)


def evaluate_functional(mu: MomentTensor, polys: Sequence[Polynomial]):
    """Value of the moment functional on a product of univariate polynomials.

    L(p_1 x ... x p_n) = sum over coefficient tuples of
    prod_l c_{l, j_l} * mu_j; exact when everything is rational.
    """
    if len(polys) != mu.n:
        raise DimensionError(
            "expected %d polynomials, got %d" % (mu.n, len(polys))
        )
    for axis, p in enumerate(polys):
        if p.degree > mu.bounds[axis]:
            raise BoundsError(
                "polynomial degree %d exceeds bound %d on axis %d"
                % (p.degree, mu.bounds[axis], axis)
            )
    total = None
    for j in box_range([p.degree for p in polys]):
        c = polys[0].coefficients[j[0]]
        for l in range(1, len(polys)):
            c = c * polys[l].coefficients[j[l]]
        term = c * mu[j]
        total = term if total is None else total + term
    return total


def bernstein_polynomial(p: Polynomial, N: int) -> Polynomial:
    """Degree-N Bernstein approximant of p on [0, 1], expanded exactly.

    B_N(p)(t) = sum_m p(m/N) C(N, m) t^m (1 - t)^(N - m).
    """
    if N < 0:
        raise BoundsError("Bernstein degree must be >= 0")
    if N == 0:
        return Polynomial((p(Fraction(0)),))
    out = [0] * (N + 1)
    for m in range(N + 1):
        w = p(Fraction(m, N)) * math.comb(N, m)
        if w == 0:
            continue
        # t^m (1-t)^(N-m) expanded by the binomial theorem
        for j in range(N - m + 1):
            c = math.comb(N - m, j)
            out[m + j] += w * (c if j % 2 == 0 else -c)
    return Polynomial(tuple(out))
