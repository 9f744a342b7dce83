"""Exact sparse Gauss-Jordan elimination over the rationals.

Rows are sparse vectors ``{column: Fraction}``.  Rows are absorbed in input
order; a row that survives reduction gets its lowest nonzero column as pivot
and is scaled so the pivot is 1.  The pivot rows are kept fully reduced, so the
result is the reduced row echelon form and does not depend on anything except
the input order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

SparseRow = Dict[int, Fraction]


def _as_sparse(row) -> SparseRow:
    if isinstance(row, Mapping):
        items = row.items()
    else:
        items = enumerate(row)
    return {c: Fraction(v) for c, v in items if v}


def rref(rows: Iterable) -> Dict[int, SparseRow]:
    """Reduced row echelon form as ``{pivot column: normalized row}``."""
    pivots: Dict[int, SparseRow] = {}
    for raw in rows:
        row = _as_sparse(raw)
        for c in [c for c in row if c in pivots]:
            f = row.get(c)
            if not f:
                continue
            for cc, vv in pivots[c].items():
                s = row.get(cc, 0) - f * vv
                if s:
                    row[cc] = s
                else:
                    row.pop(cc, None)
        if not row:
            continue
        p = min(row)
        inv = 1 / row[p]
        row = {c: v * inv for c, v in row.items()}
        for other in pivots.values():
            f = other.get(p)
            if not f:
                continue
            for cc, vv in row.items():
                s = other.get(cc, 0) - f * vv
                if s:
                    other[cc] = s
                else:
                    other.pop(cc, None)
        pivots[p] = row
    return dict(sorted(pivots.items()))


def rank(rows: Iterable) -> int:
    return len(rref(rows))


def exact_nullspace(rows: Iterable, width: int) -> List[List[Fraction]]:
    """Basis of ``{x : A x = 0}``, one vector per free column in increasing order.

    The vector for free column ``f`` has ``x_f = 1``, zero at the other free
    columns, and ``x_p = -R[p][f]`` at each pivot ``p``.
    """
    rows = list(rows)
    for r in rows:
        if not isinstance(r, Mapping) and len(r) != width:
            raise ValueError("all rows must have the same length")
    piv = rref(rows)
    basis = []
    for f in range(width):
        if f in piv:
            continue
        v = [Fraction(0)] * width
        v[f] = Fraction(1)
        for p, row in piv.items():
            if f in row:
                v[p] = -row[f]
        basis.append(v)
    return basis


def solve(rows: Sequence, rhs: Sequence, width: int) -> Optional[List[Fraction]]:
    """A particular solution of ``A x = rhs`` (free variables set to 0), or None."""
    aug = []
    for r, b in zip(rows, rhs):
        s = _as_sparse(r)
        if b:
            s[width] = Fraction(b)
        aug.append(s)
    piv = rref(aug)
    if width in piv:
        return None
    x = [Fraction(0)] * width
    for p, row in piv.items():
        x[p] = row.get(width, Fraction(0))
    return x


def mat_vec(rows: Sequence, x: Sequence) -> List[Fraction]:
    out = []
    for r in rows:
        items = r.items() if isinstance(r, Mapping) else enumerate(r)
        out.append(sum((Fraction(v) * x[c] for c, v in items), Fraction(0)))
    return out


def det(matrix: Sequence[Sequence]):
    """Determinant by cofactor expansion over column subsets.

    Works over any commutative ring whose elements support ``+ - *`` (rationals,
    :class:`DiffPoly`, truncated series); no division is used.
    """
    n = len(matrix)
    if n == 0:
        return 1
    memo: Dict[Tuple[int, int], object] = {}

    # minor over rows [r, n) and the column set encoded in mask
    def minor(r: int, mask: int):
        if r == n:
            return 1
        key = (r, mask)
        if key in memo:
            return memo[key]
        total = None
        sign = 1
        for c in range(n):
            if mask >> c & 1:
                continue
            entry = matrix[r][c]
            if _is_zero(entry):
                sign = -sign
                continue
            sub = minor(r + 1, mask | 1 << c)
            if not _is_zero(sub):
                term = entry * sub
                if total is None:
                    total = term if sign > 0 else -term
                else:
                    total = total + term if sign > 0 else total - term
            sign = -sign
        if total is None:
            total = 0
        memo[key] = total
        return total

    return minor(0, 0)


def _is_zero(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return x == 0
    return x.is_zero()
