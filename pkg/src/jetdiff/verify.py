"""The identity suite run by ``jetdiff verify-all``.

Every check is exact.  Random inputs come from fixed seeds so the report is
byte-for-byte reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List

from .algebra import T, DiffPoly, collect, evaluate, param, render, weighted_degree, xi
from .brackets import bracket, expressibility_check, invariant_basis, qk_tower, weighted_monomials
from .jets import LAMBDA, Jet, Reparam, a_sym, act_on_jet, act_on_poly, action_matrix, is_invariant
from .linalg import rank, solve
from .picard import (alternating_residual, dependence_test, galois_scaling_check,
                     ode_from_solutions, series_solution)
from .series import TruncSeries
from .wronskian import (Partition, generalized_wronskian, giambelli_report,
                        hook_expansion_report, indeterminates, total_derivative, wronskian)


@dataclass
class Criterion:
    number: int
    name: str
    ok: bool = True
    checks: int = 0
    detail: str = ""
    witness: list = field(default_factory=list)

    def check(self, cond: bool, witness=None):
        self.checks += 1
        if not cond:
            self.ok = False
            if witness is not None and len(self.witness) < 5:
                self.witness.append(witness)


def _rat(rng: random.Random, lo=-5, hi=5) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, 3))


def _poly_series(rng: random.Random, degree: int) -> TruncSeries:
    return TruncSeries.poly([_rat(rng) for _ in range(degree + 1)])


W2 = xi(1, 1) * xi(2, 2) - xi(2, 1) * xi(1, 2)


def c1_action_matrix() -> Criterion:
    c = Criterion(1, "action matrix")
    a1, a2, a3 = a_sym(1), a_sym(2), a_sym(3)
    expected = ((a1, a2, a3), (DiffPoly(), a1 ** 2, 2 * a1 * a2), (DiffPoly(), DiffPoly(), a1 ** 3))
    got = action_matrix(Reparam.symbolic(3))
    c.check(got == expected, {"k": 3, "matrix": [[render(e) for e in row] for row in got]})
    for k in range(1, 6):
        phi = Reparam.symbolic(k)
        series = sum((a_sym(m) * DiffPoly.var(T) ** m for m in range(1, k + 1)), DiffPoly())
        mat = action_matrix(phi)
        power = DiffPoly.const(1)
        for i in range(1, k + 1):
            power = power * series
            for j in range(1, k + 1):
                want = collect(power, [T]).get(((T, j),), DiffPoly())
                c.check(mat[i - 1][j - 1] == want, {"k": k, "entry": [i, j]})
    c.detail = "k=3 display and k<=5 series powers"
    return c


def c2_scaling() -> Criterion:
    c = Criterion(2, "C*-action homogeneity")
    rng = random.Random(2)
    for trial in range(20):
        m = rng.randint(1, 6)
        n, k = rng.randint(1, 3), min(m, 3)
        monos = weighted_monomials(n, k, m)
        picks = rng.sample(monos, min(len(monos), 4))
        q = DiffPoly({mono: rng.randint(1, 9) * rng.choice((-1, 1)) for mono in picks})
        lhs = act_on_poly(Reparam.scaling(LAMBDA, k), q)
        c.check(weighted_degree(q) == m and lhs == LAMBDA ** m * q,
                {"trial": trial, "Q": render(q), "residual": render(lhs - LAMBDA ** m * q)})
    c.detail = "20 random isobaric Q, weight <= 6"
    return c


def c3_wronskian_invariance() -> Criterion:
    c = Criterion(3, "Wronskian weighted invariance")
    res = is_invariant(W2, "weighted", weight=3)
    c.check(res.holds, {"residual": render(res.residual)})
    c.detail = "act(phi, W) = a1^3 W with a1, a2 symbolic"
    return c


def _spot_check(q: DiffPoly, n: int, k: int, rng: random.Random, trials: int) -> List:
    bad = []
    for _ in range(trials):
        phi = Reparam((1,) + tuple(_rat(rng) for _ in range(k - 1)))
        jet = Jet(tuple(tuple(_rat(rng) for _ in range(k)) for _ in range(n)))
        moved = act_on_jet(phi, jet)
        if evaluate(q, moved.point()) != evaluate(q, jet.point()):
            bad.append({"phi": [str(a) for a in phi.coeffs]})
    return bad


def c4_invariant_dimensions() -> Criterion:
    c = Criterion(4, "invariant dimensions")
    rng = random.Random(4)
    b1 = invariant_basis(2, 2, 1)
    c.check(len(b1) == 2, {"n,k,m": [2, 2, 1], "dimension": len(b1)})
    b3 = invariant_basis(2, 2, 3)
    c.check(len(b3) == 5, {"n,k,m": [2, 2, 3], "dimension": len(b3)})
    polys = [b.poly() for b in b3]
    monos = sorted({mm for p in polys + [W2] for mm in p.terms})
    x = solve([[p.coeff(mm) for p in polys] for mm in monos], [W2.coeff(mm) for mm in monos], len(polys))
    c.check(x is not None, {"W in span": False})
    for cand in b1 + b3:
        bad = _spot_check(cand.poly(), 2, 2, rng, 50)
        c.check(not bad, {"candidate": str(cand), "failures": bad[:2]})
    c.detail = "dims 2 and 5, W in span, 50 numeric unipotent checks each"
    return c


def c5_brackets() -> Criterion:
    c = Criterion(5, "bracket base case and Q_k tower")
    for j in range(1, 4):
        for k in range(1, 4):
            want = xi(j, 1) * xi(k, 2) - xi(j, 2) * xi(k, 1)
            got = bracket(xi(j, 1), xi(k, 1))
            c.check(got == want, {"j,k": [j, k], "got": render(got)})
    for n in (2, 3):
        tower = qk_tower(n, 4)
        for level, comps in tower.items():
            for key, comp in comps.items():
                res = is_invariant(comp, "unipotent", k=level)
                c.check(res.holds, {"n": n, "level": level, "index": list(key),
                                    "residual": render(res.residual)})
    c.detail = "[f_j', f_k'] base case; all components n<=3, level<=4 invariant"
    return c


def c6_membership() -> Criterion:
    c = Criterion(6, "membership in <f1', f2', W>")
    gens = [xi(1, 1), xi(2, 1), W2]
    for cand in invariant_basis(2, 2, 3):
        res = expressibility_check(cand.poly(), gens, 3)
        c.check(res.member, {"candidate": str(cand), "note": res.note})
    c.detail = "five weight-3 invariants with certificates"
    return c


def c7_hook() -> Criterion:
    c = Criterion(7, "hook-length expansion of D^k W")
    for m in range(2, 5):
        for k in range(1, 5):
            rep = hook_expansion_report(m, k)
            c.check(rep.ok, {"m": m, "k": k, "coefficients": {
                str(r.partition): [str(r.coefficient), r.c_lambda] for r in rep.rows}})
    fs = indeterminates(3)
    d3 = total_derivative(total_derivative(total_derivative(wronskian(fs))))
    rhs = (generalized_wronskian(Partition((3,)), fs) + 2 * generalized_wronskian(Partition((2, 1)), fs)
           + generalized_wronskian(Partition((1, 1, 1)), fs))
    c.check(d3 == rhs, {"D^3 W - rhs": render(d3 - rhs)})
    c.detail = "m<=4, k<=4; D^3 W = W_(3) + 2 W_(2,1) + W_(1,1,1)"
    return c


def _random_unit_tuple(rng: random.Random, m: int, degree: int) -> List[TruncSeries]:
    while True:
        fs = [_poly_series(rng, degree) for _ in range(m)]
        if wronskian(fs)[0] != 0:
            return fs


def c8_giambelli() -> Criterion:
    c = Criterion(8, "Giambelli formula on random polynomial tuples")
    rng = random.Random(8)
    for m, degree in ((2, 6), (3, 8)):
        for trial in range(3):
            fs = _random_unit_tuple(rng, m, degree)
            for lam in ((1,), (2,), (1, 1), (2, 1)):
                rep = giambelli_report(Partition(lam), fs)
                c.check(rep.holds, {"m": m, "trial": trial, "lambda": list(lam),
                                    "W_lambda": str(rep.w_lambda), "Delta*W0": str(rep.rhs),
                                    "a_k constant": rep.constant_coefficients})
    c.detail = "lambda in (1),(2),(1,1),(2,1); m = 2, 3"
    return c


def c9_series_solution() -> Criterion:
    c = Criterion(9, "series solution of the alternating equation")
    for r in range(3):
        a = [param("a", i) for i in range(1, r + 2)]
        xi0 = series_solution(a, 10)
        res = alternating_residual(a, xi0)
        c.check(res.prec >= 8 and res.is_zero(), {"r": r, "prec": res.prec})
    x = series_solution([param("a", 1)], 10)
    c.check(all(x[n] == param("a", 1) ** n / _fact(n) for n in range(11)), {"r": 0})
    e = series_solution([Fraction(1)], 10)
    c.check(e == TruncSeries.exp(11), {"exp": [str(v) for v in e.coeffs]})
    c.detail = "symbolic a, r<=2, N=10, residual zero through t^7"
    return c


def _fact(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def c10_picard() -> Criterion:
    c = Criterion(10, "Picard operator from solutions")
    cubic = ode_from_solutions([TruncSeries.poly([1]), TruncSeries.poly([0, 1]), TruncSeries.poly([0, 0, 1])])
    c.check(cubic.order == 3 and cubic.is_zero(), {"operator": str(cubic)})
    ex = ode_from_solutions([TruncSeries.exp(12)])
    c.check(ex.order == 1 and ex.coeffs[0] == TruncSeries([-1], ex.coeffs[0].prec), {"operator": str(ex)})
    rng = random.Random(10)
    for trial in range(30):
        m = rng.randint(1, 3)
        us = _random_unit_tuple(rng, m, rng.randint(m, 5))
        op = ode_from_solutions(us, prec=14)
        for j, u in enumerate(us):
            res = op.apply(u.truncate(14))
            c.check(res.is_zero(), {"trial": trial, "solution": j, "prec": res.prec})
    c.detail = "(1,t,t^2), exp, 30 random tuples"
    return c


def c11_dependence() -> Criterion:
    c = Criterion(11, "Wronskian dependence criterion vs rank")
    rng = random.Random(11)
    for trial in range(100):
        m = rng.randint(1, 4)
        us = [_poly_series(rng, rng.randint(0, 4)) for _ in range(m)]
        if trial % 2 == 0 and m >= 2:
            coef = [_rat(rng) for _ in range(m - 1)]
            us[-1] = sum((cf * u for cf, u in zip(coef, us)), TruncSeries.poly([0]))
        res = dependence_test(us)
        width = max(len(u.coeffs) for u in us)
        r = rank([[u[d] for d in range(width)] for u in us]) if width else 0
        c.check(res.dependent == (r < m), {"trial": trial, "verdict": res.verdict, "rank": r, "m": m})
        if trial % 2 == 0 and m >= 2:
            c.check(res.dependent, {"trial": trial, "constructed": "dependent"})
    c.detail = "100 random tuples, half built dependent"
    return c


def c12_galois() -> Criterion:
    c = Criterion(12, "constant-matrix scaling of W")
    for m in range(1, 4):
        rep = galois_scaling_check(m)
        c.check(rep.holds, {"m": m, "residual": render(rep.residual)})
    c.detail = "W(c xi) = det(c) W(xi), symbolic c, m<=3"
    return c


CRITERIA: List[Callable[[], Criterion]] = [
    c1_action_matrix, c2_scaling, c3_wronskian_invariance, c4_invariant_dimensions,
    c5_brackets, c6_membership, c7_hook, c8_giambelli, c9_series_solution,
    c10_picard, c11_dependence, c12_galois,
]


def verify_all() -> List[Criterion]:
    return [f() for f in CRITERIA]
