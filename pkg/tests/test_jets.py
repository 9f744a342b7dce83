import random
from fractions import Fraction

import pytest
import sympy

from jetdiff.algebra import T, DiffPoly, collect, jet_var, param, poly, weighted_degree, xi
from jetdiff.brackets import weighted_monomials
from jetdiff.jets import (LAMBDA, Jet, Reparam, a_sym, act_on_jet, act_on_poly, action_matrix,
                          compose_reparam, is_invariant)

from conftest import rand_rat


def series_power_matrix(k):
    """[t^j] phi^i by multiplying the symbolic series out with t as a variable."""
    phi = sum((a_sym(m) * DiffPoly.var(T) ** m for m in range(1, k + 1)), DiffPoly())
    rows, power = [], DiffPoly.const(1)
    for i in range(1, k + 1):
        power = power * phi
        parts = collect(power, [T])
        rows.append(tuple(parts.get(((T, j),), DiffPoly()) for j in range(1, k + 1)))
    return tuple(rows)


def matmul(x, y):
    n = len(x)
    return tuple(tuple(sum((x[i][l] * y[l][j] for l in range(n)), DiffPoly()) for j in range(n))
                 for i in range(n))


def test_identity_matrix():
    m = action_matrix(Reparam.identity(4))
    assert all(m[i][j] == (1 if i == j else 0) for i in range(4) for j in range(4))


def test_k3_matrix_display():
    a1, a2, a3 = a_sym(1), a_sym(2), a_sym(3)
    assert action_matrix(Reparam.symbolic(3)) == (
        (a1, a2, a3), (DiffPoly(), a1 ** 2, 2 * a1 * a2), (DiffPoly(), DiffPoly(), a1 ** 3))


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_matrix_matches_series_powers(k):
    assert action_matrix(Reparam.symbolic(k)) == series_power_matrix(k)


@pytest.mark.parametrize("k", range(1, 7))
def test_upper_triangular_with_power_diagonal(k):
    m = action_matrix(Reparam.symbolic(k))
    for i in range(k):
        assert m[i][i] == a_sym(1) ** (i + 1)
        assert all(m[i][j].is_zero() for j in range(i))


def test_compose_identity():
    phi = Reparam((2, Fraction(1, 3), -1))
    assert compose_reparam(phi, Reparam.identity(3)) == phi
    assert compose_reparam(Reparam.identity(3), phi) == phi


def test_compose_unipotent_k2_adds():
    p, q = Fraction(3, 2), Fraction(-5)
    out = compose_reparam(Reparam((1, p)), Reparam((1, q)))
    assert out == Reparam((1, p + q))
    assert out.unipotent


def test_compose_matrix_convention_symbolic():
    phi = Reparam.symbolic(3)
    psi = Reparam(tuple(param("b", m) for m in (1, 2, 3)))
    left = action_matrix(compose_reparam(phi, psi))
    assert left == matmul(action_matrix(phi), action_matrix(psi))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_action_compatibility(k):
    rng = random.Random(k)
    phi = Reparam.symbolic(k)
    psi = Reparam(tuple(rand_rat(rng) or 1 for _ in range(k)))
    jet = Jet.symbolic(2, k)
    once = act_on_jet(compose_reparam(phi, psi), jet)
    twice = act_on_jet(psi, act_on_jet(phi, jet))
    assert all(poly(once[i, j]) == poly(twice[i, j]) for i in (1, 2) for j in range(1, k + 1))


def test_scaling_action():
    jet = Jet.symbolic(2, 4)
    moved = act_on_jet(Reparam.scaling(LAMBDA, 4), jet)
    for i in (1, 2):
        for j in range(1, 5):
            assert moved[i, j] == LAMBDA ** j * xi(i, j)


def test_identity_action_on_jet():
    jet = Jet(((1, 2, 3), (Fraction(1, 2), 0, -1)))
    assert act_on_jet(Reparam.identity(3), jet) == jet


def test_k2_unipotent_action():
    moved = act_on_jet(Reparam((1, a_sym(2))), Jet.symbolic(1, 2))
    assert moved[1, 1] == xi(1, 1)
    assert moved[1, 2] == xi(1, 2) + 2 * a_sym(2) * xi(1, 1)


def test_chain_rule_oracle():
    rng = random.Random(3)
    t = sympy.symbols("t")
    for _ in range(8):
        k = rng.randint(1, 4)
        phi = Reparam(tuple(rand_rat(rng) or 1 for _ in range(k)))
        jet = Jet(tuple(tuple(rand_rat(rng) for _ in range(k)) for _ in range(2)))
        phi_t = sum(sympy.Rational(str(a)) * t ** (m + 1) for m, a in enumerate(phi.coeffs))
        moved = act_on_jet(phi, jet)
        for i in (1, 2):
            f = sum(sympy.Rational(str(jet[i, j])) * t ** j / sympy.factorial(j) for j in range(1, k + 1))
            g = f.subs(t, phi_t)
            for j in range(1, k + 1):
                assert Fraction(str(sympy.diff(g, t, j).subs(t, 0))) == moved[i, j]


def test_leading_term_is_a1_power():
    # the order-k derivative picks up a_1^k, not a_1
    moved = act_on_jet(Reparam.symbolic(3), Jet.symbolic(1, 3))
    coeff = collect(poly(moved[1, 3]), [jet_var(1, 3)])[((jet_var(1, 3), 1),)]
    assert coeff == a_sym(1) ** 3


def test_act_on_constant_and_scaling():
    assert act_on_poly(Reparam.symbolic(2), DiffPoly.const(5)) == 5
    q = xi(1, 1) * xi(2, 2) + 3 * xi(2, 1) ** 3
    assert act_on_poly(Reparam.scaling(LAMBDA, 2), q) == LAMBDA ** 3 * q


def test_wronskian_of_derivatives_unipotent():
    w = xi(1, 1) * xi(2, 2) - xi(2, 1) * xi(1, 2)
    assert act_on_poly(Reparam((1, a_sym(2))), w) == w


def test_act_rejects_high_order():
    with pytest.raises(ValueError):
        act_on_poly(Reparam.symbolic(2), xi(1, 3))


def test_is_invariant_examples():
    assert is_invariant(xi(1, 1), "weighted", weight=1).holds
    res = is_invariant(xi(1, 2), "unipotent")
    assert not res.holds
    assert res.residual == 2 * a_sym(2) * xi(1, 1)
    w = xi(1, 1) * xi(2, 2) - xi(2, 1) * xi(1, 2)
    assert is_invariant(w, "weighted", weight=3).holds
    assert not is_invariant(w, "weighted", weight=2).holds


def test_is_invariant_rejects_mixed():
    with pytest.raises(ValueError):
        is_invariant(xi(1, 1) + xi(1, 2), "weighted")


def test_weighted_implies_unipotent():
    rng = random.Random(5)
    for m in range(1, 5):
        for mono in weighted_monomials(2, 3, m):
            q = DiffPoly.monomial(mono)
            if is_invariant(q, "weighted", k=3).holds:
                assert is_invariant(q, "unipotent", k=3).holds


def test_random_isobaric_homogeneity():
    rng = random.Random(11)
    for _ in range(10):
        m = rng.randint(1, 6)
        monos = weighted_monomials(2, 3, m)
        q = DiffPoly({mm: rng.randint(-4, 4) or 1 for mm in rng.sample(monos, min(3, len(monos)))})
        assert weighted_degree(q) == m
        assert act_on_poly(Reparam.scaling(LAMBDA, 3), q) == LAMBDA ** m * q
