"""Exact connection coefficients c_{n,k,l} for the modified Taylor bases.

Row n holds c_{n,k,0..n+1} with c_{n,k,0} = 1 and, for 1 <= l <= n,

    c_{n,k,l} = c_{n,k,l-1} / (k - 1) + c_{n-1,k,l}.

The last entry c_{n,k,n+1} is free and fixed by a boundary rule.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import BoundaryLengthError, TableMismatchError, WeightError

N_MAX = 64


class Boundary(Enum):
    ZERO = "zero"
    BINOMIAL = "binomial"
    CUSTOM = "custom"


def binomial_boundary(n, k):
    """(k-1)^-(n+1) C(2n+1, n+1); equals C(2n+1, n+1) at k = 2."""
    return Fraction(math.comb(2 * n + 1, n + 1), (k - 1) ** (n + 1))


@dataclass(frozen=True)
class ConnectionTable:
    weight: int
    boundary: Boundary
    rows: tuple
    custom: tuple = ()

    @property
    def n_max(self):
        return len(self.rows) - 1

    def __getitem__(self, index):
        n, l = index
        if l < 0:
            return Fraction(0)
        return self.rows[n][l]

    def row(self, n):
        return list(self.rows[n])


def solve_table(k, boundary=Boundary.ZERO, n_max=7, custom=None):
    """Fill the table row by row; the boundary entry is written last in each row."""
    if k < 2 or k % 2:
        raise WeightError("connection tables need even k >= 2")
    if not 0 <= n_max <= N_MAX:
        raise ValueError(f"n_max must lie in [0, {N_MAX}]")
    boundary = Boundary(boundary)
    if boundary is Boundary.CUSTOM:
        custom = tuple(Fraction(c) for c in (custom or ()))
        if len(custom) < n_max + 1:
            raise BoundaryLengthError(f"need {n_max + 1} boundary values, got {len(custom)}")
    else:
        custom = ()
    inv = Fraction(1, k - 1)
    rows = []
    for n in range(n_max + 1):
        row = [Fraction(1)]
        for l in range(1, n + 1):
            row.append(row[l - 1] * inv + rows[n - 1][l])
        if boundary is Boundary.ZERO:
            row.append(Fraction(0))
        elif boundary is Boundary.BINOMIAL:
            row.append(binomial_boundary(n, k))
        else:
            row.append(custom[n])
        rows.append(tuple(row))
    return ConnectionTable(k, boundary, tuple(rows), custom)


def closed_form_binomial(n, k, l):
    """(k-1)^-l C(n+l, l), valid for 0 <= l <= n+1."""
    return Fraction(math.comb(n + l, l), (k - 1) ** l)


def recurrence_residuals(table):
    """Exact residual of every interior entry; all zero for a valid table."""
    k = table.weight
    out = []
    for n in range(table.n_max + 1):
        for l in range(1, n + 1):
            lhs = table[n, l]
            rhs = table[n, l - 1] / (k - 1) + table[n - 1, l]
            out.append(lhs - rhs)
    return out


def catalan_diagonal(table):
    """Diagonal c_{n,2,n} of the weight-2 zero-boundary table."""
    if table.weight != 2 or table.boundary is not Boundary.ZERO:
        raise TableMismatchError("diagonal is defined for the k = 2 zero-boundary table")
    return [table[n, n] for n in range(table.n_max + 1)]


def catalan(n):
    return math.comb(2 * n, n) // (n + 1)


def table_to_csv(table):
    """CSV with header n,l,numerator,denominator; bit-exact."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "l", "numerator", "denominator"])
    for n, row in enumerate(table.rows):
        for l, c in enumerate(row):
            w.writerow([n, l, c.numerator, c.denominator])
    return buf.getvalue()


def table_from_csv(text, weight, boundary=Boundary.CUSTOM):
    rows = {}
    for rec in csv.DictReader(io.StringIO(text)):
        rows.setdefault(int(rec["n"]), {})[int(rec["l"])] = Fraction(
            int(rec["numerator"]), int(rec["denominator"]))
    out = tuple(tuple(rows[n][l] for l in sorted(rows[n])) for n in sorted(rows))
    return ConnectionTable(weight, Boundary(boundary), out, tuple(r[-1] for r in out))
