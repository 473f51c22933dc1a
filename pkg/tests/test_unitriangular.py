#!/usr/bin/env python
# -*- coding: utf-8 -*-
import itertools
import pickle

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from raagy.algebra.unitriangular import (
    BarElement, UniTriMatrix, block_decompose, block_diagonal, check_banded, commutator, equal_mod_center,
    force_zero_band, has_zero_band_shape, inv, is_banded, jordan_normalize, mul, power, power_conjugator,
    solve_conjugation,
)
from raagy.core.errors import InputError, PreconditionError


@st.composite
def unitriangular(draw, size=None, p=None, superdiagonal=None):
    size = draw(st.integers(2, 6)) if size is None else size
    p = draw(st.sampled_from([2, 3, 5])) if p is None else p
    entries = {}
    for i, j in itertools.combinations(range(1, size + 1), 2):
        if j == i + 1 and superdiagonal is not None:
            entries[(i, j)] = superdiagonal
        else:
            entries[(i, j)] = draw(st.integers(0, p - 1))
    return UniTriMatrix.from_entries(size, p, entries)


def test_constructor_validation():
    with pytest.raises(InputError):
        UniTriMatrix([[1, 0], [1, 1]], 3)
    with pytest.raises(InputError):
        UniTriMatrix([[2, 0], [0, 1]], 3)
    with pytest.raises(InputError):
        UniTriMatrix([[1, 0], [0, 1]], 4)
    with pytest.raises(InputError):
        UniTriMatrix.identity(17, 3)


def test_jordan_power_is_central():
    for p in (2, 3, 5):
        a = UniTriMatrix.jordan(p + 1, p)
        assert power(a, p) == UniTriMatrix.from_entries(p + 1, p, {(1, p + 1): 1})
        assert power(a, p).is_central()
    with pytest.raises(InputError):
        power(UniTriMatrix.jordan(3, 3), -1)


def test_mixed_sizes_are_rejected():
    with pytest.raises(InputError):
        UniTriMatrix.identity(3, 3) @ UniTriMatrix.identity(4, 3)


def test_dict_and_pickle_round_trip():
    m = UniTriMatrix.from_entries(4, 5, {(1, 2): 3, (2, 4): 1})
    assert UniTriMatrix.from_dict(m.to_dict()) == m
    assert pickle.loads(pickle.dumps(m)) == m
    with pytest.raises(InputError):
        UniTriMatrix.from_dict({'rows': [[1]], 'p': 3, 'n': 2})


def test_bar_element_forgets_corner():
    m = UniTriMatrix.jordan(4, 3)
    shifted = m.with_entry(1, 4, 2)
    assert equal_mod_center(m, shifted)
    assert BarElement.of(m) == BarElement.of(shifted)
    assert not equal_mod_center(m, m.with_entry(1, 3, 1))


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_group_laws(data):
    a = data.draw(unitriangular())
    b = data.draw(unitriangular(size=a.size, p=a.p))
    c = data.draw(unitriangular(size=a.size, p=a.p))
    identity = UniTriMatrix.identity(a.size, a.p)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, inv(a)) == identity == mul(inv(a), a)
    assert a @ a.inv() == identity
    assert (a @ b).inv() == b.inv() @ a.inv()
    assert commutator(a, b).inv() == commutator(b, a)
    assert a ** 3 == a @ a @ a
    assert a ** -1 == a.inv()


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_jordan_normalize_conjugates_to_jordan(data):
    size = data.draw(st.integers(4, 6))
    p = data.draw(st.sampled_from([2, 3, 5]))
    x = data.draw(unitriangular(size=size, p=p, superdiagonal=1))
    y = data.draw(unitriangular(size=size, p=p))
    result = jordan_normalize({'x': x, 'y': y}, 'x')
    assert result.images['x'] == UniTriMatrix.jordan(size, p)
    assert result.images['y'] == y.conjugate_by(result.conjugator)
    assert result.conjugator.entry(1, 1) == 1


def test_jordan_normalize_preconditions():
    with pytest.raises(InputError):
        jordan_normalize({'x': UniTriMatrix.jordan(3, 3)}, 'x')
    with pytest.raises(InputError):
        jordan_normalize({'x': UniTriMatrix.from_superdiagonal([1, 2, 1], 3)}, 'x')
    with pytest.raises(InputError):
        jordan_normalize({'x': UniTriMatrix.jordan(4, 3)}, 'y')


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_banded_lemma(data):
    size = data.draw(st.integers(4, 6))
    p = data.draw(st.sampled_from([2, 3, 5]))
    a = UniTriMatrix.jordan(size, p)
    b = data.draw(unitriangular(size=size, p=p))
    profile = check_banded(b, a)
    assert (profile is not None) == commutator(a, b).is_central()
    if profile is not None:
        assert is_banded(b)


def test_banded_profile_of_jordan_power():
    a = UniTriMatrix.jordan(5, 3)
    profile = check_banded(a ** 2, a)
    assert profile.bands == (2, 1)
    assert profile.upper == (0, 0)
    assert check_banded(UniTriMatrix.from_entries(5, 3, {(2, 3): 1}), a) is None
    with pytest.raises(InputError):
        check_banded(a, UniTriMatrix.identity(5, 3))


def test_zero_band_lemma():
    c = UniTriMatrix.from_superdiagonal([1, 0, 1], 3)
    assert has_zero_band_shape(c)
    assert force_zero_band(UniTriMatrix.identity(4, 3), c)
    with pytest.raises(PreconditionError):
        force_zero_band(UniTriMatrix.from_superdiagonal([1, 0, 0], 3), c)
    with pytest.raises(PreconditionError):
        force_zero_band(UniTriMatrix.identity(4, 3), UniTriMatrix.jordan(4, 3))
    with pytest.raises(PreconditionError):
        force_zero_band(UniTriMatrix.identity(3, 3), UniTriMatrix.from_superdiagonal([1, 1], 3))


def test_zero_band_lemma_exhaustive_over_small_group():
    """𝕌₅(F₂) 上全部满足假设的 (B, C) 都没有反例"""
    p, size = 2, 5
    checked = 0
    for b1, b2, b14, b25, b15 in itertools.product(range(p), repeat=5):
        entries = {(i, i + 1): b1 for i in range(1, size)}
        entries.update({(i, i + 2): b2 for i in range(1, size - 1)})
        entries.update({(1, 4): b14, (2, 5): b25, (1, 5): b15})
        b = UniTriMatrix.from_entries(size, p, entries)
        for c13, c24, c35, c14, c25, c15 in itertools.product(range(p), repeat=6):
            c = UniTriMatrix.from_entries(size, p, {
                (1, 2): 1, (4, 5): 1,
                (1, 3): c13, (2, 4): c24, (3, 5): c35, (1, 4): c14, (2, 5): c25, (1, 5): c15,
            })
            if commutator(c, b).is_central():
                assert force_zero_band(b, c)
                checked += 1
    assert checked > 0


def test_solve_conjugation_centralizer():
    a = UniTriMatrix.jordan(4, 3)
    solutions = solve_conjugation(a, 1)
    assert len(solutions) == 27
    for b in solutions:
        assert b @ a == a @ b
    assert len(solve_conjugation(a, 1, limit=1)) == 1


def test_solve_conjugation_with_constraints():
    a = UniTriMatrix.jordan(4, 3)
    solutions = solve_conjugation(a, 4, {(i, i + 1): 0 for i in range(1, 4)})
    assert solutions
    for b in solutions:
        assert b @ a == power(a, 4) @ b
        assert b.superdiagonal() == (0, 0, 0)
    with pytest.raises(InputError):
        solve_conjugation(a, 1, {(2, 1): 0})


def test_solve_conjugation_limit_keeps_lexicographic_prefix():
    a = UniTriMatrix.jordan(4, 3)
    constraints = {(i, i + 1): 0 for i in range(1, 4)}
    for e, cons in ((1, None), (4, constraints)):
        solutions = solve_conjugation(a, e, cons)
        keys = [tuple(b.entry(i, j) for i, j in itertools.combinations(range(1, 5), 2)) for b in solutions]
        assert keys == sorted(keys)
        for limit in (1, 2, 5):
            assert solve_conjugation(a, e, cons, limit=limit) == solutions[:limit]


def test_block_decompose_run_lengths():
    blocks = block_decompose(UniTriMatrix.from_superdiagonal([2, 2, 0, 2], 3))
    assert [(b.start, b.size) for b in blocks] == [(1, 3), (4, 2)]
    leading = block_decompose(UniTriMatrix.from_superdiagonal([0, 1], 3))
    assert [(b.start, b.size) for b in leading] == [(1, 1), (2, 2)]
    with pytest.raises(InputError):
        block_decompose(UniTriMatrix.jordan(3, 3) ** 2)


@pytest.mark.parametrize('superdiagonal, p, q', [
    ((1, 1, 1), 3, 3),
    ((1, 2, 0, 1, 1, 1), 3, 3),
    ((1, 1, 1, 1, 1), 5, 5),
    ((1, 1, 1, 1), 2, 4),
    ((1, 0, 1), 2, 4),
])
def test_power_conjugator(superdiagonal, p, q):
    a = UniTriMatrix.from_superdiagonal(superdiagonal, p)
    b = power_conjugator(a, q)
    assert commutator(b, a) == power(a, q)
    assert not any(b.superdiagonal())
    pieces = [block.matrix(p) for block in block_decompose(a)]
    assert block_diagonal(pieces, p) == a


def test_superdiagonal_readout_helpers():
    m = UniTriMatrix.from_superdiagonal([1, 0, 2], 3)
    assert m.superdiagonal() == (1, 0, 2)
    assert m.is_superdiagonal_only()
    assert not (UniTriMatrix.jordan(4, 3) ** 2).is_superdiagonal_only()
    assert np.array_equal(m.array, np.array([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 2], [0, 0, 0, 1]]))


def random_unitriangular(rng, size, p, superdiagonal=None):
    data = np.triu(rng.integers(0, p, (size, size)), 1) + np.eye(size, dtype=np.int64)
    if superdiagonal is not None:
        for i in range(size - 1):
            data[i, i + 1] = superdiagonal
    return UniTriMatrix(data, p)


@pytest.mark.slow
@pytest.mark.parametrize('size, p', [(4, 3), (5, 2)])
def test_banded_lemma_exhaustive(size, p):
    a = UniTriMatrix.jordan(size, p)
    positions = list(itertools.combinations(range(1, size + 1), 2))
    central = 0
    for values in itertools.product(range(p), repeat=len(positions)):
        b = UniTriMatrix.from_entries(size, p, dict(zip(positions, values)))
        profile = check_banded(b, a)
        assert (profile is not None) == commutator(a, b).is_central()
        if profile is not None:
            assert is_banded(b)
            assert all(b.entry(i, i + k) == b.entry(1, 1 + k)
                       for k in range(1, size - 2) for i in range(1, size - k + 1))
            central += 1
    assert central > 0


@pytest.mark.slow
@pytest.mark.parametrize('p', [3, 5])
@pytest.mark.parametrize('n', [3, 4, 5])
def test_jordan_normalize_random_inputs(p, n):
    rng = np.random.default_rng(p * 10 + n)
    jordan = UniTriMatrix.jordan(n + 1, p)
    for _ in range(1000):
        x = random_unitriangular(rng, n + 1, p, superdiagonal=1)
        y = random_unitriangular(rng, n + 1, p)
        result = jordan_normalize({'x': x, 'y': y}, 'x')
        m = result.conjugator
        assert x @ m == m @ jordan
        assert m @ result.images['y'] == y @ m


@pytest.mark.slow
@pytest.mark.parametrize('p, q', [(3, 3), (2, 4), (3, 9)])
def test_power_of_unipotent_is_frobenius(p, q):
    rng = np.random.default_rng(q)
    for _ in range(1000):
        size = int(rng.integers(2, 8))
        m = random_unitriangular(rng, size, p)
        nil = (m.array - np.eye(size, dtype=np.int64)) % p
        nil_power = np.eye(size, dtype=np.int64)
        expected = UniTriMatrix.identity(size, p)
        for _ in range(q):
            nil_power = (nil_power @ nil) % p
            expected = expected @ m
        assert m ** q == expected
        assert np.array_equal((m ** q).array, (np.eye(size, dtype=np.int64) + nil_power) % p)
