"""Exact scalars: arbitrary-precision rationals and dual numbers.

The base field is the rationals, represented by fractions.Fraction
(always reduced, denominator positive, zero is 0/1).  Dual numbers
a + b*eps with eps**2 = 0 support ring operations and equality only;
they are not a field and the row reduction in linalg.py rejects them.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_INT_RE = re.compile(r"^[+-]?\d+$")
_FRAC_RE = re.compile(r"^([+-]?\d+)/(\d+)$")


def parse_scalar(text: str) -> Fraction:
    """Parse "p" or "p/q" with q > 0 and gcd(|p|, q) = 1.

    Non-reduced inputs such as "2/4" are rejected rather than normalised,
    so files carry canonical scalars only.
    """
    s = text.strip()
    if _INT_RE.match(s):
        return Fraction(int(s))
    m = _FRAC_RE.match(s)
    if not m:
        raise ValueError(f"malformed scalar {text!r}")
    p, q = int(m.group(1)), int(m.group(2))
    if q == 0:
        raise ValueError(f"zero denominator in scalar {text!r}")
    if gcd(abs(p), q) != 1:
        raise ValueError(f"non-reduced scalar {text!r}")
    return Fraction(p, q)


def format_scalar(x) -> str:
    if isinstance(x, DualScalar):
        return format_dual(x)
    return str(x)


class DualScalar:
    """Element a + b*eps of Q[eps]/(eps^2)."""

    __slots__ = ("val", "eps")

    def __init__(self, val, eps=ZERO):
        self.val = Fraction(val)
        self.eps = Fraction(eps)

    def __bool__(self):
        return bool(self.val) or bool(self.eps)

    def __eq__(self, other):
        if isinstance(other, DualScalar):
            return self.val == other.val and self.eps == other.eps
        if isinstance(other, (Fraction, int)):
            return self.val == other and not self.eps
        return NotImplemented

    def __hash__(self):
        if not self.eps:
            return hash(self.val)
        return hash((self.val, self.eps))

    def __add__(self, other):
        if isinstance(other, DualScalar):
            return DualScalar(self.val + other.val, self.eps + other.eps)
        if isinstance(other, (Fraction, int)):
            return DualScalar(self.val + other, self.eps)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return DualScalar(-self.val, -self.eps)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, DualScalar):
            # (a + b eps)(c + d eps) = ac + (ad + bc) eps, exactly
            return DualScalar(
                self.val * other.val, self.val * other.eps + self.eps * other.val
            )
        if isinstance(other, (Fraction, int)):
            return DualScalar(self.val * other, self.eps * other)
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self):
        return f"DualScalar({self.val!r}, {self.eps!r})"


def format_dual(x: DualScalar) -> str:
    if not x.eps:
        return str(x.val)
    return f"{x.val}+{x.eps}@eps"


def parse_dual(text: str):
    """Parse a scalar that may carry an eps part ("p/q+r/s@eps")."""
    s = text.strip()
    if s.endswith("@eps"):
        head, _, _ = s.rpartition("@")
        a, sep, b = head.rpartition("+")
        if not sep:
            raise ValueError(f"malformed dual scalar {text!r}")
        return DualScalar(parse_scalar(a), parse_scalar(b))
    return parse_scalar(s)


def lift_dual(x) -> DualScalar:
    """Embed a rational into the dual numbers."""
    if isinstance(x, DualScalar):
        return x
    return DualScalar(x)


def is_dual(x) -> bool:
    return isinstance(x, DualScalar)
