"""Unit tests for the integer-lattice part of holo_core.covering."""

from __future__ import annotations

import numpy as np
import pytest
import sympy

from holo_core.covering import (
    as_int_matrix,
    determinantal_divisors,
    extend_lattice_basis,
    matmul,
    smith_normal_form,
    split_abelian,
)
from holo_core.errors import InvalidDataError, TorsionObstructionError


def _check_snf(m: list[list[int]]) -> list[int]:
    snf = smith_normal_form(m)
    assert matmul(matmul(snf.U, m), snf.V) == snf.D
    assert abs(sympy.Matrix(snf.U).det()) == 1
    assert abs(sympy.Matrix(snf.V).det()) == 1
    rows = len(m)
    assert matmul(snf.U, snf.U_inv) == [[int(i == j) for j in range(rows)] for i in range(rows)]
    return snf.invariants


@pytest.mark.unit
class TestSmithNormalForm:
    def test_textbook_example(self) -> None:
        m = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
        assert _check_snf(m) == [2, 6, 12]

    def test_rectangular(self) -> None:
        assert _check_snf([[2, 0, 0], [0, 3, 0]]) == [1, 6]

    def test_zero_matrix(self) -> None:
        assert _check_snf([[0, 0], [0, 0]]) == [0, 0]

    def test_diagonal_two_three(self) -> None:
        assert _check_snf([[2, 0], [0, 3]]) == [1, 6]

    def test_two_by_two(self) -> None:
        assert _check_snf([[2, 4], [6, 8]]) == [2, 4]

    def test_one_by_one_negative(self) -> None:
        assert _check_snf([[-5]]) == [5]

    def test_exact_for_large_entries(self) -> None:
        big = 10**30
        assert _check_snf([[big, 0], [0, big + 1]]) == [1, big * (big + 1)]

    def test_matches_determinantal_divisors(self) -> None:
        rng = np.random.default_rng(2)
        for _ in range(25):
            rows, cols = (int(v) for v in rng.integers(1, 5, size=2))
            m = rng.integers(-9, 10, size=(rows, cols)).tolist()
            nonzero = [d for d in _check_snf(m) if d]
            assert nonzero == determinantal_divisors(m)

    def test_accepts_numpy(self) -> None:
        assert smith_normal_form(np.array([[4, 6]])).invariants == [2]

    def test_rejects_fractions(self) -> None:
        with pytest.raises(InvalidDataError):
            as_int_matrix([[1.5, 2]])

    def test_rejects_ragged(self) -> None:
        with pytest.raises(InvalidDataError):
            as_int_matrix([[1, 2], [3]])


@pytest.mark.unit
class TestSplitAbelian:
    def test_torsion_plus_free(self) -> None:
        assert split_abelian([[2, 0], [0, 0]]) == ([2], 1)

    def test_cyclic(self) -> None:
        assert split_abelian([[4, 6]]) == ([2], 0)

    def test_no_relations(self) -> None:
        assert split_abelian([], k=3) == ([], 3)


@pytest.mark.unit
class TestExtendLatticeBasis:
    def test_independent_generators_come_first(self) -> None:
        c = [[1, 0], [2, 1], [3, 5]]
        basis = extend_lattice_basis(c)
        assert abs(sympy.Matrix(basis).det()) == 1
        assert [row[:2] for row in basis] == c

    def test_dependent_generators(self) -> None:
        c = [[1, 2], [1, 2], [0, 0]]
        basis = sympy.Matrix(extend_lattice_basis(c))
        assert abs(basis.det()) == 1
        coords = basis.inv() * sympy.Matrix(c)
        assert coords[1:, :].is_zero_matrix

    def test_torsion_is_an_obstruction(self) -> None:
        with pytest.raises(TorsionObstructionError) as exc_info:
            extend_lattice_basis([[2], [0]])
        assert exc_info.value.invariants == [2]

    def test_empty_generators(self) -> None:
        assert extend_lattice_basis([[], []]) == [[1, 0], [0, 1]]
