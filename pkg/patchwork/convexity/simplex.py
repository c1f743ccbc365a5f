from __future__ import annotations

import logging
from fractions import Fraction
from typing import Optional, Sequence

from subtypes import Enum

logger = logging.getLogger(__name__)


class Enums:
    class Status(Enum):
        GO_ON, OPTIMAL, UNBOUNDED = "go_on", "optimal", "unbounded"


class SimplexTableau:
    """
    Compact dictionary-form tableau over exact rationals for 'maximize c.x subject to Ax <= b, x >= 0' with b >= 0, so the slack basis is feasible from the start.
    Each basic variable reads basic_i = b_i - sum_l A_il * x_nonbasic_l, and the objective reads value + sum_l c_l * x_nonbasic_l.
    Variables 0..n-1 are the structural ones, n..n+m-1 the slacks of the m rows. Pivoting follows Bland's rule, so it cannot cycle.
    """

    def __init__(self, A: Sequence[Sequence[Fraction]], b: Sequence[Fraction], c: Sequence[Fraction]) -> None:
        self.m, self.n = len(A), len(c)
        if any(len(row) != self.n for row in A) or len(b) != self.m:
            raise ValueError(f"Tableau dimensions do not agree: {self.m} rows, {len(b)} bounds, {self.n} costs.")
        if any(bound < 0 for bound in b):
            raise ValueError("The slack basis is only feasible for nonnegative bounds.")

        self.A = [[Fraction(value) for value in row] for row in A]
        self.b, self.c = [Fraction(value) for value in b], [Fraction(value) for value in c]
        self.value = Fraction(0)
        self.nb_vars, self.b_vars = list(range(self.n)), list(range(self.n, self.n + self.m))
        self.pivots = 0

    def __repr__(self) -> str:
        return f"{type(self).__name__}(rows={self.m}, columns={self.n}, value={self.value}, pivots={self.pivots})"

    def pivot(self, i: int, j: int) -> None:
        piv = self.A[i][j]
        delta = self.c[j] / piv
        logger.debug(f"pivot {self.b_vars[i]} -> {self.nb_vars[j]} at ({i},{j}), primal step {self.b[i] / piv}, dual step {delta}")

        self.value += delta * self.b[i]
        for l in range(self.n):
            self.c[l] -= delta * self.A[i][l]
        self.c[j] = -delta

        row = self.A[i]
        for l in range(self.n):
            row[l] = 1 / piv if l == j else row[l] / piv
        self.b[i] /= piv

        for k in range(self.m):
            if k != i and (f := self.A[k][j]):
                other = self.A[k]
                for l in range(self.n):
                    other[l] = -f / piv if l == j else other[l] - f * row[l]
                self.b[k] -= f * self.b[i]

        self.nb_vars[j], self.b_vars[i] = self.b_vars[i], self.nb_vars[j]
        self.pivots += 1

    def bland_primal_step(self) -> Enums.Status:
        try:
            _, j = min((self.nb_vars[j], j) for j in range(self.n) if self.c[j] > 0)
        except ValueError:
            return Enums.Status.OPTIMAL

        try:
            _, _, i = min((self.b[i] / self.A[i][j], self.b_vars[i], i) for i in range(self.m) if self.A[i][j] > 0)
        except ValueError:
            return Enums.Status.UNBOUNDED

        self.pivot(i, j)
        return Enums.Status.GO_ON

    def bland_primal(self, max_pivots: Optional[int] = None) -> Enums.Status:
        while (status := self.bland_primal_step()) == Enums.Status.GO_ON:
            if max_pivots is not None and self.pivots >= max_pivots:
                raise RuntimeError(f"Simplex did not terminate within {max_pivots} pivots.")

        logger.debug(f"simplex finished with status {status} after {self.pivots} pivots, objective {self.value}")
        return status

    def primal_solution(self) -> list[Fraction]:
        solution = [Fraction(0)] * self.n
        for i, var in enumerate(self.b_vars):
            if var < self.n:
                solution[var] = self.b[i]
        return solution

    def dual_solution(self) -> list[Fraction]:
        """Row multipliers y >= 0 with y.A >= c and y.b equal to the optimum, read off the reduced costs of the nonbasic slacks."""
        duals = [Fraction(0)] * self.m
        for j, var in enumerate(self.nb_vars):
            if var >= self.n:
                duals[var - self.n] = -self.c[j]
        return duals
