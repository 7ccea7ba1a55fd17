"""Exact sparse linear algebra over the rationals.

Rows are dicts ``column -> Fraction``; columns are arbitrary hashable keys.
Elimination is incremental Gauss-Jordan, so the pivot rows are always in
reduced form and results are deterministic for a fixed column order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Sequence

_RHS = ("__rhs__",)


class RowReducer:
    """Accumulates rows and maintains a reduced row-echelon basis of their span."""

    def __init__(self, columns: Sequence[Hashable]):
        self.order = {c: i for i, c in enumerate(columns)}
        self.order[_RHS] = len(self.order)
        self.pivots: dict = {}  # pivot column -> row with a 1 at that column

    def _reduce(self, row: dict) -> dict:
        row = {c: v for c, v in row.items() if v}
        for col in [c for c in row if c in self.pivots]:
            v = row.get(col)
            if not v:
                continue
            for c, pv in self.pivots[col].items():
                nv = row.get(c, 0) - v * pv
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; returns True if it increased the rank."""
        row = self._reduce(row)
        # reducing may introduce new pivot columns from other pivot rows; repeat
        while any(c in self.pivots for c in row):
            row = self._reduce(row)
        if not row:
            return False
        unknown = [c for c in row if c not in self.order]
        if unknown:
            raise KeyError(f"columns not declared: {unknown[:3]}")
        col = min(row, key=self.order.__getitem__)
        inv = 1 / Fraction(row[col])
        row = {c: v * inv for c, v in row.items()}
        for pc, prow in self.pivots.items():
            v = prow.get(col)
            if v:
                for c, rv in row.items():
                    nv = prow.get(c, 0) - v * rv
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        self.pivots[col] = row
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def inconsistent(self) -> bool:
        return _RHS in self.pivots


def rank(rows: Iterable[dict], columns: Sequence[Hashable]) -> int:
    red = RowReducer(columns)
    for r in rows:
        red.add(r)
    return red.rank


def nullspace(rows: Iterable[dict], columns: Sequence[Hashable]) -> list:
    """Basis of {v : row . v = 0 for all rows}, one vector per free column."""
    red = RowReducer(columns)
    for r in rows:
        red.add(r)
    return _kernel_basis(red, columns)


def _kernel_basis(red: RowReducer, columns) -> list:
    basis = []
    for free in columns:
        if free in red.pivots:
            continue
        v = {free: Fraction(1)}
        for pc, prow in red.pivots.items():
            c = prow.get(free)
            if c:
                v[pc] = -c
        basis.append(v)
    return basis


def solve(rows: Sequence[dict], rhs: Sequence, columns: Sequence[Hashable]):
    """Solve ``rows . v = rhs``.

    Returns ``(particular, kernel)`` where ``particular`` sets every free
    column to zero, or ``(None, kernel)`` if the system is inconsistent.
    """
    red = RowReducer(columns)
    for row, b in zip(rows, rhs):
        r = dict(row)
        if b:
            r[_RHS] = -Fraction(b)
        red.add(r)
    kernel = _kernel_basis(red, columns)
    if red.inconsistent():
        return None, kernel
    sol = {}
    for pc, prow in red.pivots.items():
        b = prow.get(_RHS)
        if b:
            sol[pc] = -b
    return sol, kernel
