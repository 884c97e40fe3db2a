"""Exact feasibility of the positive kernel cone.

Decides whether ker(N) meets the strictly positive orthant, returning a
rational witness with every entry >= 1 when it does.  Since the cone is
invariant under scaling, {N w = 0, w >= 1} is feasible exactly when a
strictly positive kernel vector exists, and the bound 1 keeps the whole
problem rational (no symbolic epsilon).

The decision runs a phase-1 simplex on {N v = -N 1, v >= 0} (from the
substitution v = w - 1) with Bland's anti-cycling rule, so termination is
guaranteed.  Witnesses are re-validated exactly before being returned; no
infeasibility certificate is produced.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .ratmat import RatMatrix

_ZERO = Fraction(0)
_ONE = Fraction(1)


class ConeStatus(str, Enum):
    POSITIVE_VECTOR_EXISTS = "positive_vector_exists"
    EMPTY = "empty"


@dataclass(frozen=True)
class ConeResult:
    status: ConeStatus
    witness: Optional[tuple[Fraction, ...]]

    @property
    def exists(self) -> bool:
        return self.status is ConeStatus.POSITIVE_VECTOR_EXISTS


def _phase_one_simplex(a_rows: list[list[Fraction]], rhs: list[Fraction], nvars: int):
    """Minimize the sum of artificials for {A v = rhs, v >= 0}.

    Returns the attained optimum and the v part of the final basic
    solution.  Bland's rule: entering column is the lowest index with a
    negative reduced cost; the leaving row is the one whose basic
    variable has the lowest index among the minimum-ratio ties.
    """
    m = len(a_rows)
    # make rhs nonnegative so the artificial basis is feasible
    tableau = []
    for i in range(m):
        row = list(a_rows[i])
        b = rhs[i]
        if b < 0:
            row = [-x for x in row]
            b = -b
        row.extend(_ONE if k == i else _ZERO for k in range(m))
        row.append(b)
        tableau.append(row)
    ncols = nvars + m
    basis = list(range(nvars, nvars + m))
    # reduced costs for cost vector (0,...,0,1,...,1) under the artificial basis
    cost = [
        (_ONE if j >= nvars else _ZERO) - sum(tableau[i][j] for i in range(m))
        for j in range(ncols)
    ]
    objective = sum(tableau[i][-1] for i in range(m))

    while True:
        entering = next((j for j in range(ncols) if cost[j] < 0), None)
        if entering is None:
            break
        leaving = -1
        best_ratio = None
        for i in range(m):
            coeff = tableau[i][entering]
            if coeff > 0:
                ratio = tableau[i][-1] / coeff
                if best_ratio is None or ratio < best_ratio or (
                    ratio == best_ratio and basis[i] < basis[leaving]
                ):
                    best_ratio = ratio
                    leaving = i
        if leaving < 0:
            # phase-1 objective is bounded below by zero, so this is unreachable
            raise RuntimeError("unbounded phase-1 objective")
        piv_row = tableau[leaving]
        piv = piv_row[entering]
        if piv != 1:
            tableau[leaving] = piv_row = [x / piv for x in piv_row]
        for i in range(m):
            if i != leaving:
                f = tableau[i][entering]
                if f:
                    row = tableau[i]
                    tableau[i] = [x - f * y for x, y in zip(row, piv_row)]
        f = cost[entering]
        if f:
            cost = [x - f * y for x, y in zip(cost, piv_row[:-1])]
            objective += f * piv_row[-1]
        basis[leaving] = entering

    solution = [_ZERO] * nvars
    for i, var in enumerate(basis):
        if var < nvars:
            solution[var] = tableau[i][-1]
    return objective, solution


def positive_kernel_vector(n_mat: RatMatrix) -> ConeResult:
    """Decide ker(n_mat) ∩ R^r_{>0} ≠ ∅, with an exact witness.

    The witness, when it exists, satisfies n_mat @ w = 0 and w_i >= 1
    componentwise (validated before returning).
    """
    r = n_mat.cols
    if r < 1:
        raise ValueError("cone feasibility needs at least one column")
    if n_mat.rows == 0:
        return ConeResult(ConeStatus.POSITIVE_VECTOR_EXISTS, (_ONE,) * r)

    a_rows = n_mat.to_rows()
    rhs = [-sum(row) for row in a_rows]
    optimum, v = _phase_one_simplex(a_rows, rhs, r)
    if optimum != 0:
        return ConeResult(ConeStatus.EMPTY, None)
    w = tuple(x + 1 for x in v)
    residual = n_mat.mul_vec(w)
    if any(residual) or min(w) < 1:
        raise RuntimeError("simplex produced an invalid cone witness")
    return ConeResult(ConeStatus.POSITIVE_VECTOR_EXISTS, w)
