"""Partitions, classical and generalized Wronskians, Schur determinants.

Conventions used throughout:

* For ``m`` functions, ``W_lambda`` is the determinant whose row ``j``
  (``0 <= j <= m-1``) holds the derivatives of order ``j + lambda_{m-1-j}``.
  The empty partition gives the classical Wronskian and
  ``D W = W_(1)``.
* ``schur_delta(lam, x)`` is ``det(x[lam_{r-j} + j - i])`` over
  ``0 <= i, j <= r`` with ``r + 1 = len(lam)``, ``x_0 = 1`` and ``x_{<0} = 0``
  (rows indexed by ``i``).  In the complete homogeneous variables this is the
  Jacobi-Trudi determinant, e.g. ``delta((2, 1)) = x1*x2 - x3``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from .algebra import DiffPoly, param, poly, total_derivative, xi
from .linalg import det, solve
from .series import PrecisionError, TruncSeries


class VanishingWronskianError(ZeroDivisionError):
    """The Wronskian vanishes where it has to be inverted."""


@dataclass(frozen=True, order=True)
class Partition:
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise ValueError("partition parts must be nonnegative")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Read ``[2,1]``, ``2,1``, ``()`` or ``[]``."""
        body = text.strip().strip("[]()").strip()
        if not body:
            return cls(())
        if not re.fullmatch(r"\d+(\s*,\s*\d+)*", body):
            raise ValueError(f"bad partition {text!r}")
        return cls(tuple(int(p) for p in body.split(",")))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def padded(self, m: int) -> Tuple[int, ...]:
        if len(self.parts) > m:
            raise ValueError(f"partition {self} has more than {m} parts")
        return self.parts + (0,) * (m - len(self.parts))

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > c) for c in range(self.parts[0])))

    def hook_lengths(self) -> List[int]:
        """Hook length of every box, row by row."""
        conj = self.conjugate().parts
        return [self.parts[r] - c + conj[c] - r - 1
                for r in range(len(self.parts)) for c in range(self.parts[r])]

    def syt_count(self) -> int:
        """Number of standard Young tableaux, |lambda|! / prod(hooks)."""
        n, d = factorial(self.weight), prod(self.hook_lengths())
        assert n % d == 0
        return n // d

    def __str__(self):
        return "[" + ",".join(map(str, self.parts)) + "]"


def hook_lengths(lam: Partition) -> List[int]:
    return lam.hook_lengths()


def syt_count(lam: Partition) -> int:
    return lam.syt_count()


def partitions(n: int, max_parts: Optional[int] = None, max_part: Optional[int] = None) -> Iterator[Partition]:
    """Partitions of n in reverse lexicographic order: (n), (n-1, 1), ..., (1^n)."""
    if max_part is None:
        max_part = n
    if max_parts is None:
        max_parts = n
    if n == 0:
        yield Partition(())
        return
    if max_parts == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, max_parts - 1, first):
            yield Partition((first,) + rest.parts)


# -- Wronskians ---------------------------------------------------------

Func = Union[DiffPoly, TruncSeries]


def indeterminates(m: int) -> List[DiffPoly]:
    """m differential indeterminates f1, ..., fm (order-0 jet variables)."""
    return [xi(i) for i in range(1, m + 1)]


def _check_tuple(fs: Sequence[Func]) -> str:
    if not fs:
        raise ValueError("need at least one function")
    if all(isinstance(f, DiffPoly) for f in fs):
        return "symbolic"
    if all(isinstance(f, TruncSeries) for f in fs):
        return "series"
    raise TypeError("function tuple must be all DiffPoly or all TruncSeries")


def _derivative_table(fs: Sequence[Func], max_order: int) -> List[List[Func]]:
    kind = _check_tuple(fs)
    table = []
    for f in fs:
        col = [f]
        for _ in range(max_order):
            if kind == "symbolic":
                col.append(total_derivative(col[-1]))
            else:
                try:
                    col.append(col[-1].derivative())
                except PrecisionError as exc:
                    raise PrecisionError(
                        f"series truncation too low for derivative order {max_order}") from exc
        table.append(col)
    return table


def generalized_wronskian(lam: Partition, fs: Sequence[Func]) -> Func:
    """W_lambda(fs): row j uses derivative order j + lambda_{m-1-j}."""
    m = len(fs)
    shifts = Partition(tuple(lam)).padded(m)
    orders = [j + shifts[m - 1 - j] for j in range(m)]
    table = _derivative_table(fs, max(orders))
    mat = [[table[i][orders[j]] for i in range(m)] for j in range(m)]
    d = det(mat)
    if isinstance(d, (int, Fraction)):
        # every expansion term vanished; keep the ring and the precision
        if isinstance(fs[0], DiffPoly):
            return DiffPoly.const(d)
        precs = [e.prec for row in mat for e in row if e.prec is not None]
        return TruncSeries([d], min(precs) if precs else None)
    return d


def wronskian(fs: Sequence[Func]) -> Func:
    return generalized_wronskian(Partition(()), fs)


@dataclass
class HookRow:
    partition: Partition
    coefficient: Fraction
    c_lambda: int

    @property
    def match(self) -> bool:
        return self.coefficient == self.c_lambda


@dataclass
class HookReport:
    m: int
    k: int
    rows: List[HookRow]
    residual: DiffPoly

    @property
    def ok(self) -> bool:
        return self.residual.is_zero() and all(r.match for r in self.rows)


def hook_expansion_report(m: int, k: int) -> HookReport:
    """Expand D^k W(f1..fm) in the basis W_lambda, |lambda| = k, at most m parts.

    The coefficients are found by exact linear solve over the monomials, and
    compared with the standard tableau count of each partition.
    """
    if m < 1 or k < 0:
        raise ValueError("need m >= 1 and k >= 0")
    fs = indeterminates(m)
    target = wronskian(fs)
    for _ in range(k):
        target = total_derivative(target)
    lams = list(partitions(k, max_parts=m))
    cols = [generalized_wronskian(lam, fs) for lam in lams]
    monos = sorted({mm for p in cols + [target] for mm in p.terms})
    rows = [[c.coeff(mm) for c in cols] for mm in monos]
    rhs = [target.coeff(mm) for mm in monos]
    x = solve(rows, rhs, len(cols))
    if x is None:
        x = [Fraction(0)] * len(cols)
    residual = target - sum((c * xv for c, xv in zip(cols, x)), DiffPoly())
    return HookReport(m, k, [HookRow(lam, xv, lam.syt_count()) for lam, xv in zip(lams, x)], residual)


# -- Schur determinants and the b-sequence ------------------------------

def x_sym(i: int) -> DiffPoly:
    return param("x", i)


def schur_delta(lam: Partition, x: Optional[Sequence] = None):
    """det(x[lam_{r-j} + j - i]); ``x`` defaults to the symbols x1, x2, ...

    ``x[0]`` is taken as 1 regardless of the sequence and negative indices as 0.
    """
    lam = Partition(tuple(lam))
    parts = lam.parts
    r = len(parts) - 1

    def entry(idx: int):
        if idx < 0:
            return Fraction(0)
        if idx == 0:
            return Fraction(1)
        if x is None:
            return x_sym(idx)
        if idx >= len(x):
            raise ValueError(f"schur_delta needs x[{idx}]")
        return x[idx]

    mat = [[entry(parts[r - j] + j - i) for j in range(r + 1)] for i in range(r + 1)]
    return det(mat)


def b_from_a(a: Sequence, n: int) -> List:
    """Coefficients b_0..b_n of 1 / (1 - a_1 t + a_2 t^2 - ... ) up to t^n."""
    b = [Fraction(1)]
    for j in range(1, n + 1):
        s = 0
        for i in range(1, min(j, len(a)) + 1):
            term = a[i - 1] * b[j - i]
            s = s + term if i % 2 else s - term
        b.append(s)
    return b


@dataclass
class GiambelliReport:
    partition: Partition
    point: Fraction
    w0: Fraction
    a: List[Fraction]
    b: List[Fraction]
    w_lambda: Fraction
    delta: Fraction
    constant_coefficients: bool

    @property
    def rhs(self) -> Fraction:
        return self.delta * self.w0

    @property
    def residual(self) -> Fraction:
        return self.w_lambda - self.rhs

    @property
    def holds(self) -> bool:
        return self.residual == 0


def giambelli_report(lam: Partition, fs: Sequence[TruncSeries], point=0, a_prec: int = 6) -> GiambelliReport:
    """Compare W_lambda(f) with Delta_lambda(b) W_0(f) at ``point``.

    a_k = W_(1^k) / W_0 for k = 1..m, and b is the inverse series of
    1 - a_1 t + a_2 t^2 - ... built from the values of the a_k at the point.
    ``constant_coefficients`` records whether every a_k is constant through
    ``a_prec`` terms, i.e. whether f solves a constant coefficient equation.
    """
    lam = Partition(tuple(lam))
    m = len(fs)
    lam.padded(m)
    point = Fraction(point)
    fs = [f.recenter(point) for f in fs]
    w0 = wronskian(fs)
    if w0[0] == 0:
        raise VanishingWronskianError(f"W_0 vanishes at t = {point}")
    a_series = []
    for k in range(1, m + 1):
        wk = generalized_wronskian(Partition((1,) * k), fs)
        prec = a_prec if w0.prec is None else min(a_prec, w0.prec)
        a_series.append(wk.truncate(prec) / w0.truncate(prec) if wk.prec is None else wk / w0)
    a_vals = [Fraction(s[0]) for s in a_series]
    constant = all(all(s[n] == 0 for n in range(1, s.prec or 1)) for s in a_series)
    b = b_from_a(a_vals, max(lam.weight, 1) + len(lam))
    delta = Fraction(schur_delta(lam, b))
    wl = generalized_wronskian(lam, fs)
    return GiambelliReport(lam, point, Fraction(w0[0]), a_vals, b, Fraction(wl[0]), delta, constant)
