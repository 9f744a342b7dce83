"""Reparametrizations of (C, 0) acting on k-jets of curves.

A reparametrization ``phi(t) = a_1 t + ... + a_k t^k`` acts on the jet of ``f``
by ``f -> f o phi``.  With the raw derivatives ``g_j = (f o phi)^(j)(0)`` this is

    g_j / j! = sum_i (f^(i)(0) / i!) * M[i][j],   M[i][j] = [t^j] phi(t)^i,

i.e. the factorial-normalized row vector times the upper triangular matrix
``M`` whose diagonal is ``a_1^i``.

Composition convention: ``compose_reparam(phi, psi)`` is ``phi(psi(t))`` and
``action_matrix(phi o psi) = action_matrix(phi) @ action_matrix(psi)``, so that
acting with ``phi o psi`` equals acting with ``phi`` first and then ``psi``
(a right action: ``f o (phi o psi) = (f o phi) o psi``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import List, Optional, Sequence, Tuple

from .algebra import DiffPoly, Var, jet_var, param, poly, substitute, weighted_degree, MIXED

LAMBDA = param("lam")


def a_sym(m: int) -> DiffPoly:
    return param("a", m)


@dataclass(frozen=True)
class Reparam:
    """Truncated series a_1 t + ... + a_k t^k; coefficients are rationals or DiffPoly."""

    coeffs: Tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("reparametrization needs order k >= 1")
        cs = tuple(c if isinstance(c, DiffPoly) else Fraction(c) for c in self.coeffs)
        if not isinstance(cs[0], DiffPoly) and cs[0] == 0:
            raise ValueError("a_1 must be invertible")
        object.__setattr__(self, "coeffs", cs)

    @property
    def k(self) -> int:
        return len(self.coeffs)

    @property
    def unipotent(self) -> bool:
        return self.coeffs[0] == 1

    @classmethod
    def identity(cls, k: int) -> "Reparam":
        return cls((1,) + (0,) * (k - 1))

    @classmethod
    def scaling(cls, lam, k: int) -> "Reparam":
        return cls((lam,) + (0,) * (k - 1))

    @classmethod
    def symbolic(cls, k: int, unipotent: bool = False) -> "Reparam":
        first = 1 if unipotent else a_sym(1)
        return cls((first,) + tuple(a_sym(m) for m in range(2, k + 1)))

    def series(self) -> List:
        """Coefficient list indexed by the power of t (index 0 is 0)."""
        return [Fraction(0)] + list(self.coeffs)


def _trunc_mul(p: Sequence, q: Sequence, k: int) -> List:
    out = [Fraction(0)] * (k + 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j in range(0, k + 1 - i):
            b = q[j] if j < len(q) else 0
            if b == 0:
                continue
            out[i + j] = out[i + j] + a * b
    return out


def _powers(phi: Reparam) -> List[List]:
    """powers[i] = coefficients of phi(t)^i truncated at t^k, for i = 0..k."""
    k = phi.k
    s = phi.series()
    pw = [[Fraction(1)] + [Fraction(0)] * k]
    for _ in range(k):
        pw.append(_trunc_mul(pw[-1], s, k))
    return pw


def action_matrix(phi: Reparam) -> Tuple[Tuple[DiffPoly, ...], ...]:
    """k x k matrix with entry (i, j) (1-based) = [t^j] phi(t)^i."""
    pw = _powers(phi)
    k = phi.k
    return tuple(tuple(poly(pw[i][j]) for j in range(1, k + 1)) for i in range(1, k + 1))


def compose_reparam(phi: Reparam, psi: Reparam) -> Reparam:
    """phi(psi(t)) truncated at t^k."""
    if phi.k != psi.k:
        raise ValueError("reparametrizations must have the same order")
    pw = _powers(psi)
    k = phi.k
    out = [Fraction(0)] * (k + 1)
    for i, a in enumerate(phi.coeffs, start=1):
        if a == 0:
            continue
        for j in range(k + 1):
            if pw[i][j] != 0:
                out[j] = out[j] + a * pw[i][j]
    return Reparam(tuple(_simplify(c) for c in out[1:]))


def _simplify(c):
    if isinstance(c, DiffPoly) and c.is_constant():
        return c.constant_value()
    return c


@dataclass(frozen=True)
class Jet:
    """Raw derivatives f_i^(j)(0); ``entries[i-1][j-1]`` for 1 <= i <= n, 1 <= j <= k."""

    entries: Tuple[Tuple, ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        if not rows or len({len(r) for r in rows}) != 1 or not rows[0]:
            raise ValueError("jet entries must form a nonempty n x k array")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def k(self) -> int:
        return len(self.entries[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i - 1][j - 1]

    @classmethod
    def symbolic(cls, n: int, k: int) -> "Jet":
        from .algebra import xi
        return cls(tuple(tuple(xi(i, j) for j in range(1, k + 1)) for i in range(1, n + 1)))

    def point(self) -> dict:
        """Assignment of the canonical jet variables to this jet's entries."""
        return {jet_var(i, j): self[i, j] for i in range(1, self.n + 1) for j in range(1, self.k + 1)}


def act_on_jet(phi: Reparam, jet: Jet) -> Jet:
    """The jet of f o phi."""
    if phi.k != jet.k:
        raise ValueError(f"order mismatch: reparametrization k={phi.k}, jet k={jet.k}")
    k = phi.k
    mat = _powers(phi)
    rows = []
    for i in range(1, jet.n + 1):
        normalized = [jet[i, l] * Fraction(1, factorial(l)) for l in range(1, k + 1)]
        row = []
        for j in range(1, k + 1):
            s = 0
            for l in range(1, j + 1):
                if mat[l][j] != 0:
                    s = s + normalized[l - 1] * mat[l][j]
            row.append(_simplify(s * factorial(j)) if isinstance(s, DiffPoly) else Fraction(s) * factorial(j))
        rows.append(tuple(row))
    return Jet(tuple(rows))


def act_on_poly(phi: Reparam, q: DiffPoly) -> DiffPoly:
    """Q(f o phi) expressed in the canonical jet variables.

    Order-0 variables are left alone since phi(0) = 0 fixes the base point.
    """
    order = q.max_order()
    if order > phi.k:
        raise ValueError(f"polynomial uses derivative order {order} > k={phi.k}")
    comps = [v.i for v in q.variables() if v.is_jet]
    if not comps:
        return q
    jet = act_on_jet(phi, Jet.symbolic(max(comps), phi.k))
    assignment = {jet_var(i, j): poly(jet[i, j]) for i in range(1, jet.n + 1) for j in range(1, jet.k + 1)}
    return substitute(q, assignment)


@dataclass(frozen=True)
class InvarianceResult:
    holds: bool
    residual: DiffPoly
    mode: str
    weight: Optional[int]
    k: int

    def __bool__(self):
        return self.holds


def is_invariant(q: DiffPoly, mode: str = "unipotent", weight: Optional[int] = None,
                 k: Optional[int] = None) -> InvarianceResult:
    """Decide Q(f o phi) = a_1^m Q(f) symbolically in a_1, ..., a_k.

    ``mode="unipotent"`` fixes a_1 = 1; ``mode="weighted"`` keeps a_1 symbolic
    and uses ``weight`` (default: the weighted degree of ``q``).  The residual
    ``act(phi, Q) - a_1^m Q`` is returned as the witness.
    """
    if k is None:
        k = max(q.max_order(), 1)
    if mode == "unipotent":
        phi = Reparam.symbolic(k, unipotent=True)
        residual = act_on_poly(phi, q) - q
        w = None
    elif mode == "weighted":
        wq = weighted_degree(q)
        if wq == MIXED:
            raise ValueError("weighted invariance needs an isobaric polynomial")
        w = wq if weight is None else weight
        phi = Reparam.symbolic(k)
        residual = act_on_poly(phi, q) - a_sym(1) ** w * q
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return InvarianceResult(residual.is_zero(), residual, mode, w, k)
