"""Atomic polymeasures on the unit cube: the test-bench side of the package.

A discrete polymeasure assigns a coefficient to every tuple of per-axis
atoms; moments, variation, semivariation and product integrals are all
finite sums, so they serve as ground truth for the certificate lane.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Mapping, Sequence, Tuple

from . import _signopt, scalars
from .errors import BoundsError, DimensionError, InputError, ModeError
from .indexing import MultiIndex, as_multiindex, box_range, box_size, box_strides, flat_index
from .moment_core import MomentTensor
from .scalars import FLOAT, RATIONAL, ComplexRational, check_mode


def _check_atoms(atoms) -> Tuple[Tuple[Fraction, ...], ...]:
    out = []
    for axis, ax in enumerate(atoms):
        row = tuple(Fraction(a) for a in ax)
        if not row:
            raise DimensionError("axis %d has no atoms" % axis)
        for a in row:
            if a < 0 or a > 1:
                raise BoundsError("atom %s on axis %d falls outside [0, 1]" % (a, axis))
        if any(b <= a for a, b in zip(row, row[1:])):
            raise InputError("atoms on axis %d must be strictly increasing" % axis)
        out.append(row)
    if not out:
        raise DimensionError("a polymeasure needs at least one axis")
    return tuple(out)


@dataclass(frozen=True)
class DiscretePolymeasure:
    """Finitely supported polymeasure: per-axis atoms plus a dense
    coefficient tensor over atom tuples (row-major)."""

    atoms: Tuple[Tuple[Fraction, ...], ...]
    coeffs: Tuple
    mode: str

    def __post_init__(self):
        object.__setattr__(self, "atoms", _check_atoms(self.atoms))
        check_mode(self.mode)
        co = tuple(self.coeffs)
        if len(co) != math.prod(self.dims):
            raise DimensionError(
                "expected %d coefficients for atom counts %s, got %d"
                % (math.prod(self.dims), self.dims, len(co))
            )
        if self.mode == RATIONAL:
            for c in co:
                if not scalars.is_exact(c):
                    raise ModeError("rational mode needs exact coefficients, got %r" % (c,))
        object.__setattr__(self, "coeffs", co)

    @property
    def n(self) -> int:
        return len(self.atoms)

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(len(ax) for ax in self.atoms)

    @property
    def is_complex(self) -> bool:
        return any(scalars.is_complex_scalar(c) for c in self.coeffs)

    def coeff(self, idx) -> object:
        idx = tuple(idx)
        if len(idx) != self.n:
            raise DimensionError("index arity %d, expected %d" % (len(idx), self.n))
        for axis, (i, d) in enumerate(zip(idx, self.dims)):
            if not 0 <= i < d:
                raise BoundsError("atom index %d out of range on axis %d" % (i, axis))
        strides = box_strides(tuple(d - 1 for d in self.dims))
        return self.coeffs[flat_index(idx, strides)]


@dataclass(frozen=True)
class DiscreteMeasure:
    """Signed atomic measure on [0, 1]: the one-axis case."""

    atoms: Tuple[Fraction, ...]
    weights: Tuple

    def __post_init__(self):
        object.__setattr__(self, "atoms", _check_atoms([self.atoms])[0])
        w = tuple(self.weights)
        if len(w) != len(self.atoms):
            raise DimensionError(
                "got %d weights for %d atoms" % (len(w), len(self.atoms))
            )
        object.__setattr__(self, "weights", w)

    @property
    def mode(self) -> str:
        return RATIONAL if all(scalars.is_exact(w) for w in self.weights) else FLOAT

    def total_variation(self):
        return sum(abs(w) for w in self.weights)

    def moment(self, j: int):
        if j < 0:
            raise BoundsError("moment degree must be >= 0")
        total = None
        for a, w in zip(self.atoms, self.weights):
            term = w * a ** j
            total = term if total is None else total + term
        return total

    def integrate(self, f: Callable):
        total = None
        for a, w in zip(self.atoms, self.weights):
            term = w * f(a)
            total = term if total is None else total + term
        return total

    def as_polymeasure(self) -> DiscretePolymeasure:
        return DiscretePolymeasure((self.atoms,), self.weights, self.mode)


def moments(gamma: DiscretePolymeasure, bounds) -> MomentTensor:
    """Moment tensor mu_k = sum over atom tuples coeff * prod atom^k_l.

    Contracted one axis at a time against per-axis power tables, exact
    in rational mode.
    """
    bounds = as_multiindex(bounds, gamma.n)
    # power tables: pw[l][j][a] = atoms[l][a] ** j
    pw = []
    for l, ax in enumerate(gamma.atoms):
        rows = [[Fraction(1)] * len(ax)]
        for _j in range(bounds[l]):
            rows.append([p * a for p, a in zip(rows[-1], ax)])
        pw.append(rows)
    cur = list(gamma.coeffs)
    cur_dims = list(gamma.dims)
    for axis in range(gamma.n - 1, -1, -1):
        table = pw[axis]
        d = cur_dims[axis]
        inner = math.prod(cur_dims[axis + 1:]) if axis + 1 < len(cur_dims) else 1
        outer = math.prod(cur_dims[:axis]) if axis > 0 else 1
        nd = bounds[axis] + 1
        new = [None] * (outer * nd * inner)
        for o in range(outer):
            base_in = o * d * inner
            base_out = o * nd * inner
            for j in range(nd):
                row = table[j]
                for i in range(inner):
                    acc = None
                    for a in range(d):
                        term = cur[base_in + a * inner + i] * row[a]
                        acc = term if acc is None else acc + term
                    new[base_out + j * inner + i] = acc
        cur = new
        cur_dims[axis] = nd
    vals = cur
    if gamma.mode == FLOAT:
        vals = [complex(v) if scalars.is_complex_scalar(v) else float(v)
                for v in vals]
    return MomentTensor(bounds, tuple(vals), gamma.mode)


def variation(gamma: DiscretePolymeasure):
    """l1 mass of the coefficients (complex coefficients: sum of moduli)."""
    if gamma.is_complex:
        return float(sum(scalars.abs_float(c) for c in gamma.coeffs))
    if gamma.mode == RATIONAL:
        return sum((abs(c) for c in gamma.coeffs), Fraction(0))
    return float(sum(abs(c) for c in gamma.coeffs))


def _int_scaled_coeffs(gamma: DiscretePolymeasure) -> Tuple[list, int]:
    den = 1
    for c in gamma.coeffs:
        f = Fraction(c)
        den = den * f.denominator // math.gcd(den, f.denominator)
    return [int(Fraction(c) * den) for c in gamma.coeffs], den


def semivariation(gamma: DiscretePolymeasure):
    """Sup of |sum s_1[a_1] ... s_n[a_n] coeff_a| over per-axis signs.

    Real coefficients only (the complex sup over phases is a different
    optimization; see the harmonizable module).  Exact in rational mode;
    beyond the enumeration budget a coordinate-ascent lower bound is
    returned and flagged through warnings.warn.
    """
    val, _signs = semivariation_signs(gamma)
    return val


def semivariation_signs(gamma: DiscretePolymeasure):
    if gamma.is_complex:
        raise ModeError("semivariation of complex coefficients is not a "
                        "sign-vertex problem; use the bimeasure estimator")
    dims = gamma.dims
    if gamma.mode == RATIONAL:
        flat, den = _int_scaled_coeffs(gamma)
    else:
        flat = [float(c) for c in gamma.coeffs]
        den = 1
    if _signopt.enumeration_bits(dims) > _signopt.ENUM_BUDGET_BITS:
        warnings.warn("semivariation enumeration over dims %s exceeds the "
                      "budget; returning a coordinate-ascent lower bound"
                      % (dims,), RuntimeWarning, stacklevel=2)
        val, signs = _signopt.coordinate_ascent(flat, dims)
    else:
        val, signs = _signopt.maximize_signs(flat, dims)
    value = Fraction(val, den) if gamma.mode == RATIONAL else float(val)
    return value, signs


def integrate(gamma: DiscretePolymeasure, tables: Sequence[Mapping]):
    """Product integral sum over atom tuples coeff * prod f_l(atom_l).

    `tables` holds one mapping per axis from atom to function value; a
    missing atom is an InputError naming the axis and the atom.
    """
    if len(tables) != gamma.n:
        raise DimensionError(
            "expected %d value tables, got %d" % (gamma.n, len(tables))
        )
    per_axis = []
    for axis, (ax, tab) in enumerate(zip(gamma.atoms, tables)):
        row = []
        for a in ax:
            if a not in tab:
                raise InputError(
                    "axis %d: no value for atom %s in the integrand table" % (axis, a)
                )
            row.append(tab[a])
        per_axis.append(row)
    strides = box_strides(tuple(d - 1 for d in gamma.dims))
    total = None
    for idx in box_range(tuple(d - 1 for d in gamma.dims)):
        c = gamma.coeffs[flat_index(idx, strides)]
        for axis, i in enumerate(idx):
            c = c * per_axis[axis][i]
        total = c if total is None else total + c
    return total


def random_polymeasure(n: int, atoms_per_axis, coeff_range=(-2, 2),
                       seed: int = 0, atom_grid: int = 64,
                       coeff_denominator: int = 16) -> DiscretePolymeasure:
    """Seeded random rational polymeasure for oracle runs.

    Atoms are distinct points i/atom_grid; coefficients are rationals
    with the given denominator drawn uniformly from coeff_range.
    """
    if n < 1:
        raise DimensionError("need at least one axis")
    counts = ([int(atoms_per_axis)] * n if isinstance(atoms_per_axis, int)
              else [int(c) for c in atoms_per_axis])
    if len(counts) != n:
        raise DimensionError("atoms_per_axis must be an int or length-n sequence")
    rng = random.Random(seed)
    atoms = []
    for c in counts:
        if not 1 <= c <= atom_grid + 1:
            raise InputError("cannot place %d distinct atoms on a grid of %d"
                             % (c, atom_grid + 1))
        picks = sorted(rng.sample(range(atom_grid + 1), c))
        atoms.append(tuple(Fraction(p, atom_grid) for p in picks))
    lo = Fraction(coeff_range[0])
    hi = Fraction(coeff_range[1])
    if hi < lo:
        raise InputError("empty coefficient range")
    lo_t = math.ceil(lo * coeff_denominator)
    hi_t = math.floor(hi * coeff_denominator)
    coeffs = tuple(Fraction(rng.randint(lo_t, hi_t), coeff_denominator)
                   for _ in range(math.prod(counts)))
    return DiscretePolymeasure(tuple(atoms), coeffs, RATIONAL)
