"""Exact sparse linear algebra over the rationals.

Vectors are dicts ``{column: Fraction}`` holding nonzero entries only.  The
matrices met here (relations, intersection functionals) have a handful of
nonzeros per row, so elimination keeps rows sparse.
"""
from __future__ import annotations

from fractions import Fraction


def sparse(row) -> dict:
    """Drop zeros and coerce to Fraction; accepts a dict or a dense sequence."""
    items = row.items() if isinstance(row, dict) else enumerate(row)
    return {c: Fraction(v) for c, v in items if v}


def dot(u: dict, v: dict):
    if len(u) > len(v):
        u, v = v, u
    return sum((x * v[c] for c, x in u.items() if c in v), Fraction(0))


def axpy(y: dict, a, x: dict) -> None:
    """In place ``y += a * x``."""
    for c, v in x.items():
        s = y.get(c, 0) + a * v
        if s:
            y[c] = s
        else:
            y.pop(c, None)


class Echelon:
    """Reduced row echelon basis grown one row at a time.

    Pivots are the leftmost nonzero column of each new row, so the pivot set
    depends only on the order in which rows are added.  Every stored row has
    a 1 at its pivot and 0 at every other pivot.
    """

    def __init__(self, rows=()):
        self.rows: dict[int, dict] = {}
        for r in rows:
            self.add(r)

    @property
    def rank(self):
        return len(self.rows)

    @property
    def pivots(self):
        return sorted(self.rows)

    def reduce(self, v) -> dict:
        """Canonical representative of ``v`` modulo the span: zero on pivots."""
        w = sparse(v)
        for c in [c for c in w if c in self.rows]:
            a = w.get(c)
            if a:
                axpy(w, -a, self.rows[c])
        return w

    def add(self, v) -> bool:
        w = self.reduce(v)
        if not w:
            return False
        piv = min(w)
        inv = 1 / w[piv]
        w = {c: x * inv for c, x in w.items()}
        for row in self.rows.values():
            a = row.get(piv)
            if a:
                axpy(row, -a, w)
        self.rows[piv] = w
        return True

    def contains(self, v) -> bool:
        return not self.reduce(v)


def rank(rows) -> int:
    return Echelon(rows).rank


def nullspace(rows, ncols: int) -> list[dict]:
    """Basis of ``{x : r . x = 0 for every row r}`` in ``Q^ncols``."""
    ech = Echelon(rows)
    basis = []
    for f in range(ncols):
        if f in ech.rows:
            continue
        x = {f: Fraction(1)}
        for p, row in ech.rows.items():
            a = row.get(f)
            if a:
                x[p] = -a
        basis.append(x)
    return basis


def to_dense(v: dict, ncols: int) -> list:
    return [v.get(c, Fraction(0)) for c in range(ncols)]
