"""Exact differential polynomials over the rationals.

A :class:`DiffPoly` is a sparse map from monomials to :class:`fractions.Fraction`
coefficients.  Variables come in two kinds:

* jet variables ``f<i>^(j)``: component ``i >= 1``, derivative order ``j >= 0``;
  the total derivative sends order ``j`` to ``j + 1``;
* parameters (``a<m>``, ``c<i>_<j>``, ``x<i>``, ``b<i>``, ``t``, ``lam``), which
  are constants for the total derivative except ``t`` whose derivative is 1.

A monomial is a tuple of ``(Var, exponent)`` pairs sorted by variable, so that
equal polynomials always have identical term maps.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, NamedTuple, Tuple, Union

JET = 0
PARAM = 1

PARAM_NAMES = ("a", "b", "c", "x", "t", "lam")


class Var(NamedTuple):
    """A variable symbol; tuple order is the canonical variable order."""

    kind: int
    name: str
    i: int
    j: int

    @property
    def is_jet(self) -> bool:
        return self.kind == JET

    @property
    def weight(self) -> int:
        return self.j if self.kind == JET else 0

    def __str__(self) -> str:
        if self.kind == JET:
            if self.j <= 3:
                return f"f{self.i}" + "'" * self.j
            return f"f{self.i}^({self.j})"
        s = self.name
        if self.i >= 0:
            s += str(self.i)
        if self.j >= 0:
            s += f"_{self.j}"
        return s


def jet_var(i: int, j: int = 0) -> Var:
    if i < 1 or j < 0:
        raise ValueError(f"invalid jet variable f{i}^({j})")
    return Var(JET, "f", i, j)


def param_var(name: str, i: int = -1, j: int = -1) -> Var:
    if name not in PARAM_NAMES:
        raise ValueError(f"unknown parameter name {name!r}")
    return Var(PARAM, name, i, j)


T = param_var("t")

Monomial = Tuple[Tuple[Var, int], ...]
ONE: Monomial = ()
Scalar = Union[int, Fraction]


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_weight(m: Monomial) -> int:
    return sum(v.weight * e for v, e in m)


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_key(m: Monomial):
    """Graded order: weighted degree, then total degree, then variables."""
    return (mono_weight(m), mono_degree(m), m)


def render_monomial(m: Monomial) -> str:
    return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in m)


class DiffPoly:
    """Immutable polynomial in jet variables and parameters with rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[tuple(m)] = clean.get(tuple(m), Fraction(0)) + c
            clean = {m: c for m, c in clean.items() if c}
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "DiffPoly":
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Scalar) -> "DiffPoly":
        c = Fraction(c)
        return cls._raw({ONE: c} if c else {})

    @classmethod
    def var(cls, v: Var) -> "DiffPoly":
        return cls._raw({((v, 1),): Fraction(1)})

    @classmethod
    def monomial(cls, m: Monomial, c: Scalar = 1) -> "DiffPoly":
        return cls._raw({m: Fraction(c)} if c else {})

    # -- inspection -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return self.terms.get(ONE, Fraction(0))

    def coeff(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def max_order(self) -> int:
        """Highest jet derivative order occurring (-1 if no jet variable)."""
        return max((v.j for v in self.variables() if v.is_jet), default=-1)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: mono_key(mc[0]))

    def __len__(self):
        return len(self.terms)

    # -- arithmetic -----------------------------------------------------

    @staticmethod
    def _coerce(other) -> "DiffPoly":
        if isinstance(other, DiffPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return DiffPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self.terms) < len(other.terms):
            small, big = self.terms, other.terms
        else:
            small, big = other.terms, self.terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return DiffPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return DiffPoly._raw({m: -c for m, c in self.terms.items()})

    def __pos__(self):
        return self

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
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return DiffPoly._raw({})
            return DiffPoly._raw({m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return DiffPoly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, DiffPoly):
            other = other.constant_value()
        other = Fraction(other)
        if not other:
            raise ZeroDivisionError("division of DiffPoly by zero")
        return self * (1 / other)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = DiffPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, DiffPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == DiffPoly.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"DiffPoly({render(self)!r})"


def render(p: DiffPoly) -> str:
    """Canonical text form; the parser in :mod:`jetdiff.expr` reads it back."""
    if not p.terms:
        return "0"
    parts = []
    for m, c in p.sorted_terms():
        neg = c < 0
        a = -c if neg else c
        if not m:
            body = str(a)
        elif a == 1:
            body = render_monomial(m)
        else:
            body = f"{a}*{render_monomial(m)}"
        if not parts:
            parts.append("-" + body if neg else body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def poly(x) -> DiffPoly:
    """Coerce an int, Fraction, Var or DiffPoly to a DiffPoly."""
    if isinstance(x, DiffPoly):
        return x
    if isinstance(x, Var):
        return DiffPoly.var(x)
    return DiffPoly.const(x)


def xi(i: int, j: int = 0) -> DiffPoly:
    """The jet variable of component ``i`` and derivative order ``j``."""
    return DiffPoly.var(jet_var(i, j))


def param(name: str, i: int = -1, j: int = -1) -> DiffPoly:
    return DiffPoly.var(param_var(name, i, j))


def poly_arith(lhs: DiffPoly, rhs: DiffPoly, op: str) -> DiffPoly:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown op {op!r}")


def _derive_var(v: Var) -> DiffPoly:
    if v.kind == JET:
        return DiffPoly.var(Var(JET, v.name, v.i, v.j + 1))
    if v == T:
        return DiffPoly.const(1)
    return DiffPoly._raw({})


def total_derivative(p: DiffPoly) -> DiffPoly:
    """Total derivative: raises every jet order by one, d(t) = 1, parameters are constant."""
    out: Dict[Monomial, Fraction] = {}
    for m, c in p.terms.items():
        for idx, (v, e) in enumerate(m):
            dv = _derive_var(v)
            if not dv.terms:
                continue
            rest = m[:idx] + ((v, e - 1),) + m[idx + 1:] if e > 1 else m[:idx] + m[idx + 1:]
            for dm, dc in dv.terms.items():
                mm = mono_mul(rest, dm)
                out[mm] = out.get(mm, 0) + c * e * dc
    return DiffPoly._raw({m: c for m, c in out.items() if c})


def nth_derivative(p: DiffPoly, n: int) -> DiffPoly:
    for _ in range(n):
        p = total_derivative(p)
    return p


MIXED = "mixed"


def weighted_degree(x: Union[DiffPoly, Monomial]) -> Union[int, str]:
    """Weight of a monomial, or the common weight of an isobaric polynomial.

    Returns ``"mixed"`` for a polynomial whose terms have different weights.
    The zero polynomial has weight 0.
    """
    if not isinstance(x, DiffPoly):
        return mono_weight(x)
    weights = {mono_weight(m) for m in x.terms}
    if not weights:
        return 0
    if len(weights) > 1:
        return MIXED
    return weights.pop()


def substitute(p: DiffPoly, assignment: Mapping[Var, DiffPoly]) -> DiffPoly:
    """Ring homomorphism sending each assigned variable to its image."""
    cache: Dict[Tuple[Var, int], DiffPoly] = {}

    def power(v: Var, e: int) -> DiffPoly:
        key = (v, e)
        if key not in cache:
            if e == 1:
                cache[key] = poly(assignment[v])
            else:
                cache[key] = power(v, e - 1) * power(v, 1)
        return cache[key]

    out = DiffPoly._raw({})
    for m, c in p.terms.items():
        keep: list = []
        term = DiffPoly.const(c)
        for v, e in m:
            if v in assignment:
                term = term * power(v, e)
            else:
                keep.append((v, e))
        if keep:
            term = term * DiffPoly.monomial(tuple(keep))
        out = out + term
    return out


class MissingVariableError(KeyError):
    def __init__(self, var: Var):
        super().__init__(f"no value given for variable {var}")
        self.var = var

    def __str__(self):
        return self.args[0]


def evaluate(p: DiffPoly, point: Mapping[Var, Scalar]) -> Fraction:
    total = Fraction(0)
    for m, c in p.terms.items():
        val = c
        for v, e in m:
            if v not in point:
                raise MissingVariableError(v)
            val *= Fraction(point[v]) ** e
        total += val
    return total


def collect(p: DiffPoly, vars_: Iterable[Var]) -> Dict[Monomial, DiffPoly]:
    """Split ``p`` as a polynomial in ``vars_`` with DiffPoly coefficients."""
    sel = set(vars_)
    out: Dict[Monomial, Dict[Monomial, Fraction]] = {}
    for m, c in p.terms.items():
        outer = tuple((v, e) for v, e in m if v in sel)
        inner = tuple((v, e) for v, e in m if v not in sel)
        out.setdefault(outer, {})[inner] = c
    return {k: DiffPoly._raw(v) for k, v in out.items()}
