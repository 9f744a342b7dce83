"""Picard-type constructions on truncated series over the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import List, Optional, Sequence

from .algebra import DiffPoly, Var, param, param_var, poly, substitute, total_derivative, xi, JET
from .linalg import det, exact_nullspace, rank
from .series import TruncSeries
from .wronskian import (Partition, VanishingWronskianError, b_from_a, generalized_wronskian,
                        indeterminates, wronskian)

DEFAULT_PREC = 16


@dataclass(frozen=True)
class LinearODE:
    """Monic y^(n) + a_1 y^(n-1) + ... + a_n y = 0."""

    coeffs: tuple

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def alternating(self) -> list:
        """Coefficients in the y^(n) - a_1 y^(n-1) + ... + (-1)^n a_n y form."""
        return [c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs, start=1)]

    @classmethod
    def from_alternating(cls, a: Sequence) -> "LinearODE":
        return cls(tuple(c if i % 2 == 0 else -c for i, c in enumerate(a, start=1)))

    def apply(self, y: TruncSeries) -> TruncSeries:
        n = self.order
        derivs = [y]
        for _ in range(n):
            derivs.append(derivs[-1].derivative())
        out = derivs[n]
        for i, c in enumerate(self.coeffs, start=1):
            out = out + c * derivs[n - i]
        return out

    def is_zero(self) -> bool:
        return all(_series_zero(c) for c in self.coeffs)

    def __str__(self):
        n = self.order
        parts = [_dname(n)]
        for i, c in enumerate(self.coeffs, start=1):
            if _series_zero(c):
                continue
            parts.append(f"({_sstr(c)})*{_dname(n - i)}")
        return " + ".join(parts) + " = 0"


def _dname(j: int) -> str:
    return "y" + "'" * j if j <= 3 else f"y^({j})"


def _series_zero(c) -> bool:
    return c.is_zero() if isinstance(c, TruncSeries) else c == 0


def _sstr(c) -> str:
    if isinstance(c, TruncSeries):
        body = " + ".join(f"{x}*t^{i}" for i, x in enumerate(c.coeffs) if x != 0) or "0"
        return body if c.prec is None else f"{body} + O(t^{c.prec})"
    return str(c)


def ode_from_solutions(us: Sequence[TruncSeries], prec: Optional[int] = None) -> LinearODE:
    """Monic operator L(y) = W(y, u_1..u_n) / W(u_1..u_n) with series coefficients.

    Expanding W(y, u) along the y column, the coefficient of y^(n-i) is
    a_i = (-1)^i W_(1^i)(u) / W(u).  Exact polynomial inputs are truncated to
    ``prec`` terms (default 16) before dividing.
    """
    us = list(us)
    n = len(us)
    if n == 0:
        raise ValueError("need at least one solution")
    if all(u.is_exact for u in us) and prec is None:
        prec = DEFAULT_PREC
    if prec is not None:
        us = [u.truncate(prec) for u in us]
    w = wronskian(us)
    if w.prec is not None and w.prec == 0 or w[0] == 0:
        raise VanishingWronskianError("W(u_1..u_n) is not a unit at t = 0")
    coeffs = []
    for i in range(1, n + 1):
        wi = generalized_wronskian(Partition((1,) * i), us)
        a = wi / w
        coeffs.append(-a if i % 2 else a)
    return LinearODE(tuple(coeffs))


def series_solution(a: Sequence, n: int) -> TruncSeries:
    """xi_0 = sum_j b_j t^j / j! for xi^(r+1) - a_1 xi^(r) + ... = 0, known through t^n."""
    if n < len(a):
        raise ValueError("truncation order must be at least r + 1")
    b = b_from_a(list(a), n)
    return TruncSeries([bj * Fraction(1, factorial(j)) for j, bj in enumerate(b)], n + 1)


def alternating_residual(a: Sequence, xi_: TruncSeries) -> TruncSeries:
    """xi^(r+1) - a_1 xi^(r) + ... + (-1)^(r+1) a_(r+1) xi."""
    return LinearODE.from_alternating(a).apply(xi_)


@dataclass
class DependenceResult:
    dependent: bool
    wronskian: TruncSeries
    rank: int
    relation: Optional[List[Fraction]]
    agrees: bool

    @property
    def verdict(self) -> str:
        return "dependent" if self.dependent else "independent"


def dependence_test(us: Sequence[TruncSeries]) -> DependenceResult:
    """Wronskian test for linear dependence over constants, checked against the rank."""
    us = list(us)
    if not all(u.is_exact for u in us):
        raise ValueError("dependence_test needs exact polynomials")
    w = wronskian(us)
    dependent = w.is_zero()
    width = max((len(u.coeffs) for u in us), default=0)
    rows = [[u[d] for u in us] for d in range(width)]
    r = rank([list(u.coeffs) + [0] * (width - len(u.coeffs)) for u in us]) if width else 0
    null = exact_nullspace(rows, len(us))
    relation = null[0] if null else None
    return DependenceResult(dependent, w, r, relation, dependent == (r < len(us)))


def c_sym(i: int, j: int) -> DiffPoly:
    return param("c", i, j)


def constant_matrix_action(p: DiffPoly, c: Sequence[Sequence]) -> DiffPoly:
    """g.f_i^(k) = sum_j c_ij f_j^(k) on every derivative order."""
    assignment = {}
    for v in p.variables():
        if v.kind != JET:
            continue
        if v.i > len(c):
            raise ValueError(f"matrix too small for component {v.i}")
        assignment[v] = sum((poly(c[v.i - 1][j]) * xi(j + 1, v.j) for j in range(len(c))), DiffPoly())
    return substitute(p, assignment)


@dataclass
class GaloisScalingReport:
    m: int
    matrix: list
    det: DiffPoly
    lhs: DiffPoly
    rhs: DiffPoly

    @property
    def residual(self) -> DiffPoly:
        return self.lhs - self.rhs

    @property
    def holds(self) -> bool:
        return self.residual.is_zero()


def galois_scaling_check(m: int, matrix: Optional[Sequence[Sequence]] = None) -> GaloisScalingReport:
    """W(c xi) = det(c) W(xi) for a constant matrix (symbolic c_ij by default)."""
    if m < 1:
        raise ValueError("m must be positive")
    if matrix is None:
        matrix = [[c_sym(i, j) for j in range(1, m + 1)] for i in range(1, m + 1)]
    matrix = [[poly(x) for x in row] for row in matrix]
    if len(matrix) != m or any(len(r) != m for r in matrix):
        raise ValueError("matrix must be m x m")
    fs = indeterminates(m)
    transformed = [sum((matrix[i][j] * fs[j] for j in range(m)), DiffPoly()) for i in range(m)]
    lhs = wronskian(transformed)
    d = det(matrix)
    d = poly(d)
    return GaloisScalingReport(m, matrix, d, lhs, d * wronskian(fs))
