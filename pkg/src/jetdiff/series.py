"""Truncated power series in ``t`` with explicit precision.

Coefficients are Fractions or :class:`DiffPoly` values (for symbolic
parameters).  ``prec`` is the number of coefficients that are known; ``None``
marks an exact polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Optional, Sequence

from .algebra import DiffPoly


class PrecisionError(ValueError):
    """Raised when a result would need coefficients beyond the known precision."""


def _zero(c) -> bool:
    return c == 0


def _min_prec(p, q):
    if p is None:
        return q
    if q is None:
        return p
    return min(p, q)


class TruncSeries:
    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs: Sequence, prec: Optional[int] = None):
        cs = [c if isinstance(c, DiffPoly) else Fraction(c) for c in coeffs]
        if prec is not None:
            if prec < 0:
                raise PrecisionError("negative precision")
            cs = cs[:prec]
        while cs and _zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)
        self.prec = prec

    @classmethod
    def poly(cls, coeffs: Sequence) -> "TruncSeries":
        return cls(coeffs, None)

    @classmethod
    def from_function(cls, f, prec: int) -> "TruncSeries":
        return cls([f(n) for n in range(prec)], prec)

    @classmethod
    def exp(cls, prec: int, rate=1) -> "TruncSeries":
        return cls([Fraction(rate) ** n / factorial(n) for n in range(prec)], prec)

    @property
    def is_exact(self) -> bool:
        return self.prec is None

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        if n < 0:
            return Fraction(0)
        if self.prec is not None and n >= self.prec:
            raise PrecisionError(f"coefficient t^{n} unknown (precision {self.prec})")
        return self.coeffs[n] if n < len(self.coeffs) else Fraction(0)

    def truncate(self, prec: int) -> "TruncSeries":
        return TruncSeries(self.coeffs, _min_prec(self.prec, prec))

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self.coeffs

    def _coerce(self, other):
        if isinstance(other, TruncSeries):
            return other
        if isinstance(other, (int, Fraction, DiffPoly)):
            return TruncSeries([other], None)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = _min_prec(self.prec, other.prec)
        n = max(len(self.coeffs), len(other.coeffs))
        if prec is not None:
            n = min(n, prec)
        out = []
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else 0
            b = other.coeffs[i] if i < len(other.coeffs) else 0
            out.append(a + b)
        return TruncSeries(out, prec)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = _min_prec(self.prec, other.prec)
        n = len(self.coeffs) + len(other.coeffs) - 1
        if prec is not None:
            n = min(n, prec)
        out = []
        for k in range(max(n, 0)):
            s = 0
            for i in range(max(0, k - len(other.coeffs) + 1), min(k, len(self.coeffs) - 1) + 1):
                a = self.coeffs[i]
                b = other.coeffs[k - i]
                if not _zero(a) and not _zero(b):
                    s = s + a * b
            out.append(s)
        return TruncSeries(out, prec)

    __rmul__ = __mul__

    def derivative(self) -> "TruncSeries":
        prec = None if self.prec is None else self.prec - 1
        if prec is not None and prec <= 0:
            raise PrecisionError("derivative of a series with no known terms beyond t^0")
        return TruncSeries([c * k for k, c in enumerate(self.coeffs) if k > 0], prec)

    def nth_derivative(self, n: int) -> "TruncSeries":
        s = self
        for _ in range(n):
            s = s.derivative()
        return s

    def inverse(self, prec: Optional[int] = None) -> "TruncSeries":
        """Multiplicative inverse; exact polynomials need an explicit ``prec``."""
        prec = _min_prec(self.prec, prec)
        if prec is None:
            if len(self.coeffs) == 1:
                return TruncSeries([_invert(self.coeffs[0])], None)
            raise PrecisionError("inverse of a non-constant polynomial needs a precision")
        c0 = self[0] if prec > 0 else Fraction(1)
        if _zero(c0):
            raise ZeroDivisionError("series is not a unit (zero constant term)")
        inv0 = _invert(c0)
        out = [inv0]
        for k in range(1, prec):
            s = 0
            for i in range(1, min(k, len(self.coeffs) - 1) + 1):
                s = s + self.coeffs[i] * out[k - i]
            out.append(-s * inv0)
        return TruncSeries(out, prec)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse(self.prec)

    def value_at(self, point) -> Fraction:
        """Evaluate an exact polynomial at a rational point."""
        if self.prec is not None and point != 0:
            raise PrecisionError("truncated series can only be evaluated at 0")
        if point == 0:
            return self[0]
        total = 0
        for c in reversed(self.coeffs):
            total = total * point + c
        return total

    def recenter(self, point) -> "TruncSeries":
        """Taylor coefficients of an exact polynomial about ``point``."""
        if point == 0:
            return self
        if self.prec is not None:
            raise PrecisionError("only exact polynomials can be re-expanded")
        out = [Fraction(0)] * len(self.coeffs)
        point = Fraction(point)
        cur = list(self.coeffs)
        # repeated synthetic division by (t - point)
        for k in range(len(out)):
            acc = Fraction(0)
            nxt = []
            for c in reversed(cur):
                acc = acc * point + c
                nxt.append(acc)
            out[k] = nxt[-1]
            cur = list(reversed(nxt[:-1]))
        return TruncSeries(out, None)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return self.coeffs == other.coeffs and self.prec == other.prec

    def __hash__(self):
        return hash((self.coeffs, self.prec))

    def __repr__(self):
        tail = "" if self.prec is None else f" + O(t^{self.prec})"
        return f"TruncSeries({[str(c) for c in self.coeffs]}{tail})"


def _invert(c):
    if isinstance(c, DiffPoly):
        if not c.is_constant():
            raise ValueError(f"cannot invert symbolic coefficient {c}")
        c = c.constant_value()
    if c == 0:
        raise ZeroDivisionError("division by zero")
    return 1 / Fraction(c)
