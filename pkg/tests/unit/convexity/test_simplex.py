from fractions import Fraction

import pytest

from patchwork.convexity.simplex import Enums, SimplexTableau


class TestSimplexTableau:
    def test_optimum(self):
        tableau = SimplexTableau([[1, 2], [3, 1]], [4, 6], [1, 1])
        assert tableau.bland_primal() == Enums.Status.OPTIMAL
        assert tableau.value == Fraction(14, 5)
        assert tableau.primal_solution() == [Fraction(8, 5), Fraction(6, 5)]

    def test_duals_certify_the_optimum(self):
        A, b = [[1, 2], [3, 1]], [4, 6]
        tableau = SimplexTableau(A, b, [1, 1])
        tableau.bland_primal()
        duals = tableau.dual_solution()
        assert duals == [Fraction(2, 5), Fraction(1, 5)]
        assert sum(y * bound for y, bound in zip(duals, b)) == tableau.value
        assert all(sum(y * row[column] for y, row in zip(duals, A)) >= 1 for column in range(2))

    def test_unbounded(self):
        assert SimplexTableau([[-1, 1]], [1], [1, 0]).bland_primal() == Enums.Status.UNBOUNDED

    def test_zero_objective_is_immediately_optimal(self):
        tableau = SimplexTableau([[1, 1]], [0], [0, 0])
        assert tableau.bland_primal() == Enums.Status.OPTIMAL
        assert tableau.pivots == 0

    def test_negative_bound(self):
        with pytest.raises(ValueError):
            SimplexTableau([[1]], [-1], [1])

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            SimplexTableau([[1, 2]], [1], [1])
