"""Scalar arithmetic for the two computation modes.

Mode "rational" stores `fractions.Fraction` (and `ComplexRational` for
complex data); mode "float" stores Python floats / complex.  Every
function that must choose a tolerance or a branch on mode goes through
the helpers here so the two lanes cannot drift apart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ModeError, SchemaError

RATIONAL = "rational"
FLOAT = "float"
MODES = (RATIONAL, FLOAT)

#: relative tolerance used by every float-mode comparison
FLOAT_RTOL = 1e-9

Real = Union[Fraction, int, float]


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ModeError("unknown mode %r (expected 'rational' or 'float')" % (mode,))
    return mode


@dataclass(frozen=True)
class ComplexRational:
    """Exact complex scalar with Fraction real and imaginary parts."""

    re: Fraction
    im: Fraction

    def __add__(self, other):
        o = as_complex_rational(other)
        return ComplexRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = as_complex_rational(other)
        return ComplexRational(self.re - o.re, self.im - o.im)

    def __mul__(self, other):
        o = as_complex_rational(other)
        return ComplexRational(self.re * o.re - self.im * o.im,
                               self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return ComplexRational(-self.re, -self.im)

    def conjugate(self) -> "ComplexRational":
        return ComplexRational(self.re, -self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __eq__(self, other):
        if isinstance(other, ComplexRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __abs__(self) -> float:
        return math.hypot(float(self.re), float(self.im))

    def __repr__(self):
        return "ComplexRational(%s, %s)" % (self.re, self.im)


#: the four exact powers of i, index = exponent mod 4
I_POWERS = (
    ComplexRational(Fraction(1), Fraction(0)),
    ComplexRational(Fraction(0), Fraction(1)),
    ComplexRational(Fraction(-1), Fraction(0)),
    ComplexRational(Fraction(0), Fraction(-1)),
)


def as_complex_rational(x) -> ComplexRational:
    if isinstance(x, ComplexRational):
        return x
    if isinstance(x, (int, Fraction)):
        return ComplexRational(Fraction(x), Fraction(0))
    raise ModeError("cannot treat %r as an exact complex scalar" % (x,))


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, ComplexRational))


def is_complex_scalar(x) -> bool:
    return isinstance(x, (complex, ComplexRational)) and not isinstance(x, float)


def scalar_mode(x) -> str:
    if isinstance(x, (Fraction, int, ComplexRational)):
        return RATIONAL
    if isinstance(x, (float, complex)):
        return FLOAT
    raise ModeError("unsupported scalar type %r" % (type(x).__name__,))


def coerce_scalar(x, mode: str):
    """Bring a parsed scalar into the requested mode, complex allowed."""
    if mode == RATIONAL:
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, ComplexRational):
            return x.re if x.im == 0 else x
        raise ModeError("mode 'rational' requires exact scalars, got %r" % (x,))
    if isinstance(x, ComplexRational):
        return complex(x)
    if isinstance(x, (int, Fraction)):
        return float(x)
    if isinstance(x, (float, complex)):
        return x
    raise ModeError("unsupported scalar %r" % (x,))


def abs_float(x) -> float:
    """|x| as a float (complex modulus), for any supported scalar."""
    if isinstance(x, (ComplexRational, complex)):
        return abs(x)
    return abs(float(x))


def parse_rational(text) -> Fraction:
    """Parse "p/q" (or "p", or an int) into a Fraction."""
    if isinstance(text, bool):
        raise SchemaError("expected a rational, got a bool")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError("bad rational %r: %s" % (text, exc)) from exc
    raise SchemaError("expected a rational string, got %r" % (text,))


def parse_scalar(value, mode: str = None):
    """Parse a JSON scalar: "p/q" / number / {"re":..,"im":..}.

    Without a mode, strings parse as exact rationals, bare numbers as
    floats, and complex dicts follow their parts.
    """
    if isinstance(value, dict):
        if set(value) != {"re", "im"}:
            raise SchemaError("complex scalar must have exactly keys re, im")
        re = parse_scalar(value["re"], mode)
        im = parse_scalar(value["im"], mode)
        if isinstance(re, Fraction) and isinstance(im, Fraction):
            c = ComplexRational(re, im)
            return c.re if c.im == 0 else c
        return complex(re, im)
    if mode is None:
        if isinstance(value, bool):
            raise SchemaError("expected a number, got a bool")
        if isinstance(value, (str, int)):
            return parse_rational(value)
        if isinstance(value, float):
            return value
        raise SchemaError("expected a scalar, got %r" % (value,))
    if mode == RATIONAL:
        return parse_rational(value)
    if isinstance(value, bool):
        raise SchemaError("expected a number, got a bool")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        # tolerate rational strings in float mode
        return float(parse_rational(value))
    raise SchemaError("expected a float scalar, got %r" % (value,))


def render_scalar(x):
    """JSON form of a scalar: Fraction -> "p/q" string, floats stay floats."""
    if isinstance(x, ComplexRational):
        return {"re": render_scalar(x.re), "im": render_scalar(x.im)}
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, bool):
        raise ModeError("bool is not a scalar")
    if isinstance(x, int):
        return str(Fraction(x))
    return float(x)


def close_enough(a, b, mode: str, scale=None) -> bool:
    """Equality in rational mode, relative 1e-9 comparison in float mode."""
    if mode == RATIONAL:
        return a == b
    ref = max(abs_float(a), abs_float(b), 1.0 if scale is None else float(scale))
    return abs_float(a - b) <= FLOAT_RTOL * ref
