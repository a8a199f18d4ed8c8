"""Exact two-phase simplex over the rationals (Bland's rule)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ._linalg import as_fraction

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | float | None
    x: tuple[Fraction, ...] | None = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    piv = T[r][c]
    T[r] = [x / piv for x in T[r]]
    row = T[r]
    for i in range(len(T)):
        if i != r:
            f = T[i][c]
            if f != 0:
                T[i] = [a - f * b for a, b in zip(T[i], row)]
    basis[r] = c


def _run(T, basis, cost, allowed) -> str:
    """Maximize ``cost . z`` from a feasible basis. Mutates T and basis."""
    m = len(T)
    while True:
        entering = None
        for j in allowed:
            if j in basis:
                continue
            rc = cost[j] - sum((cost[basis[i]] * T[i][j] for i in range(m)), Fraction(0))
            if rc > 0:
                entering = j
                break
        if entering is None:
            return OPTIMAL
        best = None
        for i in range(m):
            a = T[i][entering]
            if a > 0:
                key = (T[i][-1] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return UNBOUNDED
        _pivot(T, basis, best[1], entering)


def exact_lp(
    maximize: Sequence,
    constraints: Sequence[tuple[Sequence, object]],
    nonneg: Sequence[bool] | None = None,
) -> LPResult:
    """Maximize ``<maximize, x>`` subject to ``<a, x> <= b`` for each ``(a, b)``.

    Variables are free unless flagged in ``nonneg``. Returns the optimum with
    an optimal vertex witness, or an UNBOUNDED/INFEASIBLE status.
    """
    c = [as_fraction(v) for v in maximize]
    n = len(c)
    nonneg = list(nonneg) if nonneg is not None else [False] * n
    rows = [([as_fraction(v) for v in a], as_fraction(b)) for a, b in constraints]
    for a, _ in rows:
        if len(a) != n:
            raise ValueError("constraint dimension mismatch")

    # column layout: for each variable x_k one (nonneg) or two (free) columns
    col_of: list[tuple[int, int | None]] = []
    ncols = 0
    for k in range(n):
        if nonneg[k]:
            col_of.append((ncols, None))
            ncols += 1
        else:
            col_of.append((ncols, ncols + 1))
            ncols += 2
    m = len(rows)
    n_struct = ncols
    slack0 = n_struct
    art0 = slack0 + m
    n_art = sum(1 for _, b in rows if b < 0)
    width = art0 + n_art
    T: list[list[Fraction]] = []
    basis: list[int] = []
    art = art0
    for i, (a, b) in enumerate(rows):
        line = [Fraction(0)] * (width + 1)
        for k, (p, q) in enumerate(col_of):
            line[p] = a[k]
            if q is not None:
                line[q] = -a[k]
        line[slack0 + i] = Fraction(1)
        line[-1] = b
        if b < 0:
            line = [-x for x in line]
            line[art] = Fraction(1)
            basis.append(art)
            art += 1
        else:
            basis.append(slack0 + i)
        T.append(line)

    if n_art:
        cost1 = [Fraction(0)] * art0 + [Fraction(-1)] * n_art
        _run(T, basis, cost1, list(range(width)))
        if sum((T[i][-1] for i in range(m) if basis[i] >= art0), Fraction(0)) != 0:
            return LPResult(INFEASIBLE, None)
        # drive remaining (zero-level) artificials out of the basis
        for i in range(m):
            if basis[i] >= art0:
                j = next((j for j in range(art0) if T[i][j] != 0), None)
                if j is not None:
                    _pivot(T, basis, i, j)
        keep = [i for i in range(m) if basis[i] < art0]
        T = [T[i][:art0] + [T[i][-1]] for i in keep]
        basis = [basis[i] for i in keep]

    cost = [Fraction(0)] * art0
    for k, (p, q) in enumerate(col_of):
        cost[p] = c[k]
        if q is not None:
            cost[q] = -c[k]
    status = _run(T, basis, cost, list(range(art0)))
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, math.inf)
    z = [Fraction(0)] * art0
    for i, j in enumerate(basis):
        z[j] = T[i][-1]
    x = tuple(z[p] - (z[q] if q is not None else 0) for p, q in col_of)
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult(OPTIMAL, value, x)
