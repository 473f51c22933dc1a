#!/usr/bin/env python
# -*- coding: utf-8 -*-
import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from raagy.algebra.linalg import is_prime, nullspace_mod_p, rank_mod_p, row_reduce, solve_affine

PRIMES = st.sampled_from([2, 3, 5, 7])


def matrices(rows=st.integers(0, 4), cols=st.integers(1, 4)):
    return st.tuples(rows, cols).flatmap(
        lambda shape: st.lists(
            st.lists(st.integers(-20, 20), min_size=shape[1], max_size=shape[1]),
            min_size=shape[0], max_size=shape[0],
        ).map(lambda data: np.array(data, dtype=np.int64).reshape(shape))
    )


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_row_reduce_known_example():
    rref, pivots = row_reduce(np.array([[2, 4], [1, 1]]), 3)
    assert pivots == (0, 1)
    assert rref.tolist() == [[1, 0], [0, 1]]


def test_rank_of_empty_matrix_is_zero():
    assert rank_mod_p(np.zeros((0, 3), dtype=np.int64), 5) == 0


def test_rank_depends_on_characteristic():
    mat = np.array([[1, 1], [1, -1]])
    assert rank_mod_p(mat, 2) == 1
    assert rank_mod_p(mat, 3) == 2


def test_inconsistent_system_has_no_solution():
    a = np.array([[1, 1], [2, 2]])
    assert solve_affine(a, np.array([1, 0]), 5) is None


def test_system_without_rows_uses_num_cols():
    solution = solve_affine(np.zeros((0, 2), dtype=np.int64), np.zeros(0, dtype=np.int64), 3, num_cols=2)
    assert solution.dimension == 2
    assert solution.count == 9
    assert len(list(solution)) == 9


@settings(max_examples=60, deadline=None)
@given(matrices(), PRIMES)
def test_every_enumerated_solution_solves_the_system(a, p):
    rng = np.random.default_rng(0)
    x0 = rng.integers(0, p, size=a.shape[1])
    b = (a @ x0) % p
    solution = solve_affine(a, b, p, num_cols=a.shape[1])
    assert solution is not None
    assert solution.dimension == a.shape[1] - rank_mod_p(a, p)
    for x in solution:
        assert ((a @ x - b) % p == 0).all()


@settings(max_examples=60, deadline=None)
@given(matrices(), PRIMES)
def test_nullspace_vectors_are_independent_and_annihilated(a, p):
    basis = nullspace_mod_p(a, p)
    for v in basis:
        assert ((a @ v) % p == 0).all()
    if basis:
        assert rank_mod_p(np.stack(basis), p) == len(basis)
