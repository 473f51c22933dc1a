#!/usr/bin/env python
# -*- coding: utf-8 -*-
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from raagy.algebra.digraph import Digraph, cliques
from raagy.algebra.exterior import (
    Cochain1, ExteriorElement, Prime, build_algebra, consecutive_cups_vanish, cup, graded_dimensions,
    kernel_basis, kernel_generated_by_cups, relator_correspondence, restrict, restriction_map, wedge,
)
from raagy.core.errors import InputError
from raagy.corpus import get_entry


def cochains(g, p):
    return st.lists(st.integers(0, p - 1), min_size=len(g), max_size=len(g)).map(
        lambda values: Cochain1.from_values(g, p, values)
    )


def test_prime_validation():
    assert Prime(2, 2).q == 4
    assert Prime(3).to_dict() == {'p': 3, 'f': 1, 'q': 3}
    with pytest.raises(InputError):
        Prime(2)
    with pytest.raises(InputError):
        Prime(4)
    with pytest.raises(InputError):
        Prime(3, 0)


def test_cochain_arithmetic():
    g = get_entry('disjoint-tails-converging').digraph
    alpha = Cochain1.combination(g, 3, {'u': 1, 'v': 1})
    beta = Cochain1.dual(g, 3, 'u')
    assert (alpha - beta) == Cochain1.dual(g, 3, 'v')
    assert (2 * alpha).as_dict() == {'u': 2, 'v': 2, 'w': 0}
    assert (3 * alpha).is_zero()
    assert repr(alpha) == 'u+v'
    with pytest.raises(InputError):
        Cochain1(g, 3, {'u': 1})
    with pytest.raises(InputError):
        Cochain1.dual(g, 3, 'x')


def test_hilbert_series():
    assert build_algebra(get_entry('single-vertex').digraph, Prime(3)).hilbert_series == [1, 1]
    assert build_algebra(get_entry('empty').digraph, Prime(3)).hilbert_series == [1]
    assert build_algebra(get_entry('sinkhole-with-chain').digraph, Prime(3)).hilbert_series == [1, 4, 5, 2]
    assert build_algebra(get_entry('three-sinkholes').digraph, Prime(5)).hilbert_series == [1, 8, 12, 5, 1]
    assert build_algebra(get_entry('three-sinkholes').digraph, Prime(5), max_degree=2).hilbert_series == [1, 8, 12]


def test_degree_two_dimension_matches_relators(chain_digraph):
    table = relator_correspondence(chain_digraph, Prime(3))
    assert len(table) == build_algebra(chain_digraph, Prime(3)).dimension(2)
    assert table[('v1', 'v2')] == ('r[v2,v1]', -1)
    assert table[('v3', 'v4')] == ('r[v3,v4]', 1)


def test_wedge_sign_and_non_clique_vanishing():
    g = get_entry('disjoint-tails-converging').digraph
    u = ExteriorElement.from_cochain(Cochain1.dual(g, 5, 'u'))
    v = ExteriorElement.from_cochain(Cochain1.dual(g, 5, 'v'))
    w = ExteriorElement.from_cochain(Cochain1.dual(g, 5, 'w'))
    assert wedge(u, v).is_zero()
    assert (u ^ w) == ExteriorElement.basis_element(g, 5, ('u', 'w'))
    assert (w ^ u).coefficient(('u', 'w')) == 4
    assert (w ^ u) == -(u ^ w)
    assert (u ^ u).is_zero()


def test_exterior_element_rejects_non_cliques():
    g = get_entry('disjoint-tails-converging').digraph
    with pytest.raises(InputError):
        ExteriorElement(g, 3, 2, {('u', 'v'): 1})
    with pytest.raises(InputError):
        ExteriorElement(g, 3, 2, {('u',): 1})


def test_cup_uses_edge_orientation_free_formula():
    g = get_entry('single-edge').digraph
    product = cup(Cochain1.dual(g, 3, 'v'), Cochain1.dual(g, 3, 'w'))
    assert product.to_dict() == {'{v,w}': 1}
    assert cup(Cochain1.dual(g, 3, 'w'), Cochain1.dual(g, 3, 'v')).to_dict() == {'{v,w}': 2}


def test_consecutive_cups():
    g = get_entry('single-edge').digraph
    v, w = Cochain1.dual(g, 3, 'v'), Cochain1.dual(g, 3, 'w')
    assert consecutive_cups_vanish([v, v, 2 * v])
    assert not consecutive_cups_vanish([v, v, w])
    with pytest.raises(InputError):
        consecutive_cups_vanish([v])


def test_restriction_and_kernels(three_sinkholes):
    alpha = Cochain1.combination(three_sinkholes, 3, {'u2': 1, 'w2': 2})
    restricted = restrict(alpha, ['u2', 'u5', 'w2'])
    assert restricted.as_dict() == {'u2': 1, 'u5': 0, 'w2': 2}

    kernel = kernel_basis(three_sinkholes, 3, ['u2', 'u5'], 2)
    assert len(kernel) == len(cliques(three_sinkholes, 2)) - 1
    assert ExteriorElement.basis_element(three_sinkholes, 3, ('u2', 'u5')) not in kernel

    rmap = restriction_map(three_sinkholes, 3, ['u1', 'u3', 'u4'])
    assert rmap.to_dict()['kernel1'] == ['u2', 'u5', 'w1', 'w2', 'w3']
    assert kernel_generated_by_cups(three_sinkholes, 3, ['u1', 'u3', 'u4'])


def test_restrict_degree_two():
    g = get_entry('path-three').digraph
    x = ExteriorElement(g, 3, 2, {('a', 'b'): 1, ('b', 'c'): 2})
    assert restrict(x, ['a', 'b']).to_dict() == {'{a,b}': 1}


def test_graded_dimensions_reports_agreement():
    square = get_entry('square-special-clique').digraph
    assert graded_dimensions(square, Prime(3))['cohomology_agrees'] == 'all degrees'
    chain = get_entry('sinkhole-with-chain').digraph
    assert graded_dimensions(chain, Prime(3))['cohomology_agrees'] == 'degrees <= 2'


GRAPH = Digraph.build(['a', 'b', 'c', 'd'], one_way=[('a', 'b'), ('c', 'b')], two_way=[('a', 'c'), ('c', 'd')])


@settings(max_examples=100, deadline=None)
@given(cochains(GRAPH, 5), cochains(GRAPH, 5))
def test_cup_is_graded_commutative(a, b):
    assert cup(a, b) == -cup(b, a)
    assert cup(a, a).is_zero()
    assert cup(a, b) == wedge(ExteriorElement.from_cochain(a), ExteriorElement.from_cochain(b))


@settings(max_examples=50, deadline=None)
@given(cochains(GRAPH, 3), cochains(GRAPH, 3), cochains(GRAPH, 3))
def test_wedge_is_associative_and_bilinear(a, b, c):
    x, y, z = (ExteriorElement.from_cochain(t) for t in (a, b, c))
    assert wedge(wedge(x, y), z) == wedge(x, wedge(y, z))
    assert cup(a + b, c) == cup(a, c) + cup(b, c)
