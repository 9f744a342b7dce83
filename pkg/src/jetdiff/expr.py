"""Parser for the text form of differential polynomials.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*       # '/' only by a nonzero constant
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT | '^' '(' INT ')')?
    atom   := INT | VAR | '(' expr ')'
    VAR    := 'f' INT PRIMES? | 'f' INT '^(' INT ')' | PARAM
    PARAM  := ('a' | 'b' | 'c' | 'x' | 't' | 'lam') INT? ('_' INT)?

``f<i>^(j)`` written directly after the variable is a derivative order; a
power of a derivative is written ``f1^(3)^2``.  At most three primes are
accepted.  :func:`jetdiff.algebra.render` produces text this parser reads back.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Optional, Tuple

from .algebra import DiffPoly, PARAM_NAMES, jet_var, param_var

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z]+(?:\d+)?(?:_\d+)?)
  | (?P<op>[-+*/^()'])
""", re.VERBOSE)


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}: {text!r}")


class UnknownVariableError(ValueError):
    def __init__(self, name: str, pos: int):
        self.name = name
        self.pos = pos
        super().__init__(f"unknown variable {name!r} at position {pos}")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


_IDENT = re.compile(r"([A-Za-z]+)(\d+)?(?:_(\d+))?")


class _Parser:
    def __init__(self, text: str, max_component: Optional[int]):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.max_component = max_component

    def peek(self, value: Optional[str] = None, kind: Optional[str] = None) -> bool:
        k, v, _ = self.toks[self.i]
        return (value is None or v == value) and (kind is None or k == kind)

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        k, v, p = self.take()
        if v != value:
            raise ExprSyntaxError(f"expected {value!r}, found {v or 'end of input'!r}", self.text, p)

    def fail(self, message: str):
        raise ExprSyntaxError(message, self.text, self.toks[self.i][2])

    def parse(self) -> DiffPoly:
        if self.peek(kind="end"):
            self.fail("empty expression")
        p = self.expr()
        if not self.peek(kind="end"):
            self.fail(f"unexpected {self.toks[self.i][1]!r}")
        return p

    def expr(self) -> DiffPoly:
        p = self.term()
        while self.peek("+") or self.peek("-"):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> DiffPoly:
        p = self.unary()
        while self.peek("*") or self.peek("/"):
            _, op, pos = self.take()
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise ExprSyntaxError("division only by a nonzero constant", self.text, pos)
                p = p / q.constant_value()
        return p

    def unary(self) -> DiffPoly:
        if self.peek("-"):
            self.take()
            return -self.unary()
        if self.peek("+"):
            self.take()
            return self.unary()
        return self.power()

    def _int(self) -> int:
        k, v, p = self.take()
        if k != "num":
            raise ExprSyntaxError("expected an integer", self.text, p)
        return int(v)

    def power(self) -> DiffPoly:
        base = self.atom()
        while self.peek("^"):
            self.take()
            if self.peek("("):
                self.take()
                e = self._int()
                self.expect(")")
            else:
                e = self._int()
            base = base ** e
        return base

    def atom(self) -> DiffPoly:
        k, v, p = self.take()
        if k == "num":
            return DiffPoly.const(int(v))
        if v == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if k == "ident":
            return self.variable(v, p)
        raise ExprSyntaxError(f"unexpected {v or 'end of input'!r}", self.text, p)

    def variable(self, name: str, pos: int) -> DiffPoly:
        m = _IDENT.fullmatch(name)
        letters, idx, sub = m.group(1), m.group(2), m.group(3)
        if letters == "f" and idx is not None and sub is None:
            comp = int(idx)
            if comp < 1 or (self.max_component is not None and comp > self.max_component):
                raise UnknownVariableError(name, pos)
            order = 0
            while self.peek("'"):
                self.take()
                order += 1
            if order > 3:
                raise ExprSyntaxError("more than three primes; write f<i>^(j)", self.text, pos)
            if order == 0 and self.peek("^") and self.toks[self.i + 1][1] == "(":
                self.take()
                self.take()
                order = self._int()
                self.expect(")")
            return DiffPoly.var(jet_var(comp, order))
        if letters in PARAM_NAMES:
            if self.peek("'"):
                self.fail("primes apply only to f<i> variables")
            return DiffPoly.var(param_var(letters, int(idx) if idx else -1, int(sub) if sub else -1))
        raise UnknownVariableError(name, pos)


def parse_expr(text: str, max_component: Optional[int] = None) -> DiffPoly:
    """Parse ``text`` into a :class:`DiffPoly`.

    ``max_component`` bounds the admissible ``f<i>`` indices.
    """
    return _Parser(text, max_component).parse()


def parse_rational(text: str) -> Fraction:
    p = parse_expr(text)
    if not p.is_constant():
        raise ValueError(f"not a rational number: {text!r}")
    return p.constant_value()
