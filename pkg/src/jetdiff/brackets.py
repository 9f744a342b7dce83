"""Invariant brackets, the Q_k tower, invariant bases and algebra membership."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .algebra import (MIXED, DiffPoly, Monomial, jet_var, mono_key, render,
                      total_derivative, weighted_degree, xi)
from .jets import a_sym, act_on_poly, Reparam
from .linalg import exact_nullspace, rank, solve

DEFAULT_MAX_MONOMIALS = 20000


class SizeLimitError(RuntimeError):
    pass


def max_monomials() -> int:
    """Size guard, overridable with JETDIFF_MAX_MONOMIALS."""
    return int(os.environ.get("JETDIFF_MAX_MONOMIALS", DEFAULT_MAX_MONOMIALS))


def _positive_weight(p: DiffPoly, what: str) -> int:
    w = weighted_degree(p)
    if w == MIXED:
        raise ValueError(f"{what} is not isobaric")
    if w == 0 or p.is_zero():
        raise ValueError(f"{what} has weighted degree 0")
    return w


def bracket(p: DiffPoly, q: DiffPoly) -> DiffPoly:
    """[P, Q] = (1/deg Q) P DQ - (1/deg P) Q DP.

    This normalization cancels the phi'' terms that appear when P and Q of
    different weights are pulled back by a reparametrization, so brackets of
    invariants are invariant; for equal weights it is (1/deg)(P DQ - Q DP).
    """
    dp = _positive_weight(p, "P")
    dq = _positive_weight(q, "Q")
    return p * total_derivative(q) * Fraction(1, dq) - q * total_derivative(p) * Fraction(1, dp)


def nabla(j: int) -> DiffPoly:
    """The first invariant operator f -> f_j'."""
    return xi(j, 1)


def qk_tower(n: int, k: int) -> Dict[int, Dict[Tuple[int, ...], DiffPoly]]:
    """Levels 2..k of Q_l = [f', Q_{l-1}].

    Level 2 holds ``[nabla_i, nabla_j]`` for ``i < j`` under key ``(i, j)``;
    level ``l`` holds ``bracket(nabla_i, c)`` under key ``(i,) + key(c)`` for
    every component ``c`` of level ``l - 1`` and every ``i``.
    """
    if n < 2 or k < 2:
        raise ValueError("qk_tower needs n >= 2 and k >= 2")
    tower: Dict[int, Dict[Tuple[int, ...], DiffPoly]] = {}
    tower[2] = {(i, j): bracket(nabla(i), nabla(j))
                for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    for level in range(3, k + 1):
        tower[level] = {(i,) + key: bracket(nabla(i), c)
                        for key, c in tower[level - 1].items() for i in range(1, n + 1)}
    return tower


# -- invariant bases ------------------------------------------------------

def weighted_monomials(n: int, k: int, m: int, limit: Optional[int] = None) -> List[Monomial]:
    """All monomials of weighted degree m in f_i^(j), 1 <= i <= n, 1 <= j <= k, in canonical order."""
    if limit is None:
        limit = max_monomials()
    vars_ = [jet_var(i, j) for i in range(1, n + 1) for j in range(1, k + 1)]
    out: List[Monomial] = []

    def rec(idx: int, remaining: int, acc: list):
        if remaining == 0:
            out.append(tuple(acc))
            if len(out) > limit:
                raise SizeLimitError(f"more than {limit} monomials of weight {m}; "
                                     "raise JETDIFF_MAX_MONOMIALS to continue")
            return
        if idx == len(vars_):
            return
        v = vars_[idx]
        for e in range(remaining // v.j, -1, -1):
            rec(idx + 1, remaining - e * v.j, acc + [(v, e)] if e else acc)

    rec(0, m, [])
    return sorted(out, key=mono_key)


@dataclass
class GradedCandidate:
    n: int
    k: int
    m: int
    basis: List[Monomial]
    coeffs: List[Fraction]

    def poly(self) -> DiffPoly:
        return DiffPoly({mono: c for mono, c in zip(self.basis, self.coeffs) if c})

    def __str__(self):
        return render(self.poly())


def invariant_basis(n: int, k: int, m: int, mode: str = "unipotent") -> List[GradedCandidate]:
    """Basis of the weight-m invariants in the jet variables of orders 1..k.

    The invariance identity act(phi, Q) = a_1^m Q (a_1 = 1 in unipotent mode)
    is imposed on a generic combination of the weight-m monomials with
    a_1..a_k symbolic; matching coefficients of every (a-monomial x
    jet-monomial) gives a linear system whose nullspace is returned.
    """
    if mode not in ("unipotent", "weighted"):
        raise ValueError(f"unknown mode {mode!r}")
    basis = weighted_monomials(n, k, m)
    if m == 0:
        return [GradedCandidate(n, k, 0, basis, [Fraction(1)])]
    phi = Reparam.symbolic(k, unipotent=(mode == "unipotent"))
    scale = DiffPoly.const(1) if mode == "unipotent" else a_sym(1) ** m
    columns = []
    for mono in basis:
        q = DiffPoly.monomial(mono)
        columns.append(act_on_poly(phi, q) - scale * q)
    eq_index: Dict[Monomial, int] = {}
    rows: List[Dict[int, Fraction]] = []
    for col, diff in enumerate(columns):
        for mono, c in diff.terms.items():
            r = eq_index.get(mono)
            if r is None:
                r = eq_index[mono] = len(rows)
                rows.append({})
            rows[r][col] = c
    if len(rows) > max_monomials() * 10:
        raise SizeLimitError(f"invariance system has {len(rows)} equations")
    ordered = [rows[eq_index[mono]] for mono in sorted(eq_index, key=mono_key)]
    null = exact_nullspace(ordered, len(basis))
    return [GradedCandidate(n, k, m, basis, v) for v in null]


# -- membership -----------------------------------------------------------

@dataclass
class MembershipResult:
    member: bool
    weight: int
    products: List[Tuple[int, ...]]
    certificate: List[Tuple[Fraction, Tuple[int, ...]]] = field(default_factory=list)
    span_rank: int = 0
    note: str = ""


def _exponent_vectors(weights: Sequence[int], target: int) -> Iterator[Tuple[int, ...]]:
    def rec(idx: int, remaining: int):
        if idx == len(weights):
            if remaining == 0:
                yield ()
            return
        for e in range(remaining // weights[idx], -1, -1):
            for rest in rec(idx + 1, remaining - e * weights[idx]):
                yield (e,) + rest
    yield from rec(0, target)


def expressibility_check(q: DiffPoly, generators: Sequence[DiffPoly],
                         max_weight: Optional[int] = None) -> MembershipResult:
    """Is Q a rational combination of products of generators of weight deg Q?

    This is polynomial membership at bounded degree only; a negative answer
    says nothing about algebraic dependence over the generated algebra.
    """
    wq = weighted_degree(q)
    if wq == MIXED:
        raise ValueError("Q is not isobaric")
    weights = [_positive_weight(g, f"generator {i}") for i, g in enumerate(generators)]
    if max_weight is not None and max_weight < wq:
        raise ValueError(f"max_weight {max_weight} < weighted degree {wq}")
    exps = []
    for e in _exponent_vectors(weights, wq):
        exps.append(e)
        if len(exps) > max_monomials():
            raise SizeLimitError("too many generator products")
    prods = []
    for e in exps:
        p = DiffPoly.const(1)
        for g, k in zip(generators, e):
            if k:
                p = p * g ** k
        prods.append(p)
    monos = sorted({mm for p in prods + [q] for mm in p.terms}, key=mono_key)
    rows = [{i: p.coeff(mm) for i, p in enumerate(prods) if p.coeff(mm)} for mm in monos]
    rhs = [q.coeff(mm) for mm in monos]
    r = rank(rows) if rows else 0
    x = solve(rows, rhs, len(prods)) if prods else None
    if q.is_zero():
        x = [Fraction(0)] * len(prods)
    if x is None:
        return MembershipResult(
            False, wq, exps, [], r,
            f"no combination of the {len(exps)} generator products of weight {wq} "
            f"(span rank {r}) equals Q; polynomial non-membership does not rule out "
            "algebraic dependence on the generators")
    cert = [(c, e) for c, e in zip(x, exps) if c]
    return MembershipResult(True, wq, exps, cert, r, "")


def certificate_poly(generators: Sequence[DiffPoly], cert) -> DiffPoly:
    """Re-expand a membership certificate."""
    total = DiffPoly()
    for c, e in cert:
        p = DiffPoly.const(c)
        for g, k in zip(generators, e):
            p = p * g ** k
        total = total + p
    return total
