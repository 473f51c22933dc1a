#!/usr/bin/env python
# -*- coding: utf-8 -*-
import itertools

import numpy as np
import pytest

from raagy.algebra.digraph import Digraph, canonicalize, classify, enumerate_digraphs, find_obstructions
from raagy.algebra.exterior import Cochain1, Prime, consecutive_cups_vanish
from raagy.algebra.massey import (
    ConstructionRoute, MasseyQuery, MasseyStatus, SearchBudget, construct_vanishing_hom, designated_sequence,
    massey_status, obstruction_witness, search_bar_representation, search_order, search_representation,
    strong_vanishing_report, verify_witness, witness_type_61, witness_type_62,
)
from raagy.algebra.raag import GeneratorAssignment
from raagy.algebra.unitriangular import UniTriMatrix
from raagy.core.errors import InputError, PreconditionError, ResourceLimitError
from raagy.corpus import get_entry


@pytest.fixture
def converging():
    return get_entry('disjoint-tails-converging').digraph


@pytest.fixture
def essential_query(converging, q3):
    alpha = Cochain1.combination(converging, 3, {'u': 1, 'v': 1})
    beta = Cochain1.dual(converging, 3, 'u')
    return MasseyQuery.build(converging, q3, [alpha, beta, alpha])


def test_query_validation(converging, q3):
    alpha = Cochain1.dual(converging, 3, 'u')
    with pytest.raises(InputError):
        MasseyQuery.build(converging, q3, [alpha])
    other = Cochain1.dual(get_entry('single-edge').digraph, 3, 'v')
    with pytest.raises(InputError):
        MasseyQuery.build(converging, q3, [alpha, other])
    with pytest.raises(InputError):
        MasseyQuery.build(converging, q3, [Cochain1.dual(converging, 5, 'u')] * 3)
    with pytest.raises(ResourceLimitError):
        MasseyQuery.build(converging, q3, [alpha] * 16)


def test_budget_validation():
    with pytest.raises(InputError):
        SearchBudget(max_assignments=0)
    budget = SearchBudget()
    assert budget.max_assignments > 0 and budget.jobs == 1


def test_search_order_puts_tails_first():
    g = Digraph(['w', 'u', 'v'], [('u', 'w'), ('v', 'w')])
    assert search_order(g) == ('u', 'v', 'w')


def test_designated_sequence_is_essential(essential_query):
    verdict = massey_status(essential_query)
    assert verdict.status is MasseyStatus.ESSENTIAL
    assert verdict.full_search.exhausted
    assert verdict.bar_witness.mod_center
    assert verify_witness(essential_query, verdict.bar_witness).ok
    data = verdict.to_dict()
    assert data['status'] == 'Essential'
    assert data['n'] == 3 and data['p'] == 3
    assert data['sequence'][1] == {'u': 1, 'v': 0, 'w': 0}


def test_small_budget_is_indeterminate(essential_query):
    verdict = massey_status(essential_query, SearchBudget(max_assignments=1))
    assert verdict.status is MasseyStatus.INDETERMINATE
    assert verdict.full_search.indeterminate


def test_zero_cochain_vanishes(converging, q3):
    alpha = Cochain1.combination(converging, 3, {'u': 1, 'v': 1})
    query = MasseyQuery.build(converging, q3, [alpha, Cochain1.zero(converging, 3), alpha])
    verdict = massey_status(query)
    assert verdict.status is MasseyStatus.VANISHES
    assert verdict.full_search.route == 'zero-block'
    assert verify_witness(query, verdict.witness).ok


def test_nonzero_cup_is_not_defined(q3):
    g = get_entry('single-edge').digraph
    v, w = Cochain1.dual(g, 3, 'v'), Cochain1.dual(g, 3, 'w')
    verdict = massey_status(MasseyQuery.build(g, q3, [v, w, v]))
    assert verdict.status is MasseyStatus.NOT_DEFINED
    assert verdict.bar_search.exhausted
    assert verdict.witness is None


def test_pairs_follow_the_cup(q3):
    g = get_entry('single-edge').digraph
    v, w = Cochain1.dual(g, 3, 'v'), Cochain1.dual(g, 3, 'w')
    essential = massey_status(MasseyQuery.build(g, q3, [v, w]))
    assert essential.status is MasseyStatus.ESSENTIAL
    assert essential.to_dict()['cup'] == {'{v,w}': 1}
    vanishing = massey_status(MasseyQuery.build(g, q3, [v, 2 * v]))
    assert vanishing.status is MasseyStatus.VANISHES
    assert vanishing.cup.is_zero()


def test_search_entry_points(essential_query):
    assert search_representation(essential_query).exhausted
    bar = search_bar_representation(essential_query)
    assert bar.found is not None and bar.found.mod_center
    assert bar.to_dict()['found'] is True


def test_witness_type_61(converging, q3):
    witness = witness_type_61(converging, ('u', 'v', 'w'), q3)
    assert witness['u'] == UniTriMatrix.jordan(4, 3)
    assert witness['v'] == UniTriMatrix.from_entries(4, 3, {(1, 2): 1, (3, 4): 1})
    assert witness['w'].is_identity()
    ob = find_obstructions(converging)[0]
    query, bar_witness = obstruction_witness(converging, ob, q3)
    assert bar_witness == witness
    assert verify_witness(query, witness).ok


def test_witness_type_62(q3):
    g = get_entry('joined-tails-one-way-forward').digraph
    witness = witness_type_62(g, ('u', 'v', 'w'), q3)
    query = MasseyQuery.build(g, q3, [Cochain1.combination(g, 3, {'u': 1, 'v': 1})] * 3)
    assert verify_witness(query, witness).ok
    with pytest.raises(PreconditionError):
        witness_type_61(g, ('u', 'v', 'w'), q3)


def test_witness_readout_mismatch_is_reported(essential_query):
    g = essential_query.digraph
    identity = GeneratorAssignment.constant(g.vertices, UniTriMatrix.identity(4, 3))
    check = verify_witness(essential_query, identity)
    assert check.relators.ok
    assert not check.ok
    assert (1, 'u') in check.readout_mismatches
    with pytest.raises(InputError):
        verify_witness(essential_query, GeneratorAssignment.constant(g.vertices, UniTriMatrix.identity(3, 3)))


def test_designated_sequence_length_follows_q(converging):
    ob = find_obstructions(converging)[0]
    seq = designated_sequence(converging, ob, Prime(5))
    assert len(seq) == 5
    assert seq[0] == seq[-1] == Cochain1.combination(converging, 5, {'u': 1, 'v': 1})
    assert all(alpha == Cochain1.dual(converging, 5, 'u') for alpha in seq[1:-1])


def test_direct_construction_on_special_clique(q3):
    g = get_entry('square-special-clique').digraph
    alpha = Cochain1.combination(g, 3, {'a': 1, 'b': 1, 'd': 1})
    result = construct_vanishing_hom(g, q3, [alpha, alpha, alpha])
    assert result.route is ConstructionRoute.DIRECT
    assert dict(result.cases) == {'b': 'case2', 'c': 'case2'}
    query = MasseyQuery.build(g, q3, [alpha, alpha, alpha])
    assert verify_witness(query, result.assignment).ok


def test_direct_construction_case_one(q3):
    g = get_entry('complete-special-d2').digraph
    alpha = Cochain1.dual(g, 3, 'w')
    result = construct_vanishing_hom(g, q3, [alpha, alpha, alpha])
    assert result.route is ConstructionRoute.DIRECT
    assert result.cases == (('w', 'case1'),)


def test_construction_preconditions(q3, chain_digraph):
    alpha = Cochain1.dual(chain_digraph, 3, 'v3')
    with pytest.raises(PreconditionError):
        construct_vanishing_hom(chain_digraph, q3, [alpha, alpha, alpha])
    g = get_entry('square-special-clique').digraph
    a, b = Cochain1.dual(g, 3, 'a'), Cochain1.dual(g, 3, 'b')
    with pytest.raises(PreconditionError):
        construct_vanishing_hom(g, q3, [a, b, a])


def test_zero_terms_split_into_blocks(q3):
    g = get_entry('single-edge').digraph
    w_star, zero, v_star = Cochain1.dual(g, 3, 'w'), Cochain1.zero(g, 3), Cochain1.dual(g, 3, 'v')
    result = construct_vanishing_hom(g, q3, [w_star, zero, v_star])
    assert result.route is ConstructionRoute.ZERO_BLOCK
    assert not result.searched
    assert result.search is None
    assert result.reason is None
    assert verify_witness(MasseyQuery.build(g, q3, [w_star, zero, v_star]), result.assignment).ok


def test_zero_block_segments_are_built_directly(q3):
    g = get_entry('single-edge').digraph
    w_star, zero, v_star = Cochain1.dual(g, 3, 'w'), Cochain1.zero(g, 3), Cochain1.dual(g, 3, 'v')
    sequence = [w_star, w_star, zero, v_star]
    result = construct_vanishing_hom(g, q3, sequence)
    assert result.route is ConstructionRoute.ZERO_BLOCK
    assert not result.searched
    assert result.cases == (('w', 'case1'),)
    assert result.assignment.size == 5
    assert verify_witness(MasseyQuery.build(g, q3, sequence), result.assignment).ok


def test_strong_vanishing_holds_on_special_clique(q3):
    report = strong_vanishing_report(get_entry('single-edge').digraph, q3, 3)
    assert report.holds
    assert report.exhaustive
    assert report.checked == report.vanished
    assert report.constructed + report.fallbacks == report.vanished
    assert report.to_dict()['total_sequences'] == 3 ** 6


def test_strong_vanishing_fails_without_special_clique(converging, q3):
    ob = find_obstructions(converging)[0]
    report = strong_vanishing_report(converging, q3, 3, max_failures=1,
                                     priority=[designated_sequence(converging, ob, q3)])
    assert not report.holds
    assert report.stopped_early
    assert report.checked == 1
    assert report.failures[0].verdict.status is MasseyStatus.ESSENTIAL


def test_strong_vanishing_sampling_is_reproducible(q3):
    g = get_entry('single-edge').digraph
    first = strong_vanishing_report(g, q3, 3, sample=20, seed=7)
    second = strong_vanishing_report(g, q3, 3, sample=20, seed=7)
    assert first.sampled and not first.exhaustive
    assert first.checked == second.checked == 20
    assert first.to_dict() == second.to_dict()


def test_strong_vanishing_sequence_budget(q3):
    report = strong_vanishing_report(get_entry('single-edge').digraph, q3, 3, SearchBudget(max_sequences=5))
    assert report.checked == 5
    assert not report.exhaustive


def test_strong_vanishing_limits(q3):
    with pytest.raises(InputError):
        strong_vanishing_report(get_entry('single-edge').digraph, q3, 2)
    big = Digraph([f"x{i}" for i in range(9)])
    with pytest.raises(ResourceLimitError):
        strong_vanishing_report(big, q3, 3)


@pytest.mark.slow
def test_parallel_search_matches_serial(essential_query):
    serial = massey_status(essential_query)
    parallel = massey_status(essential_query, SearchBudget(jobs=2))
    assert parallel.status is serial.status is MasseyStatus.ESSENTIAL
    assert parallel.full_search.exhausted


OBSTRUCTION_ENTRIES = [
    'disjoint-tails-converging', 'disjoint-tails-outgoing', 'disjoint-tails-undirected',
    'joined-tails-one-way-forward', 'joined-tails-one-way-backward', 'joined-tails-one-way-mutual',
    'joined-tails-two-way-forward', 'joined-tails-two-way-backward', 'joined-tails-two-way-mutual',
]


@pytest.mark.slow
@pytest.mark.parametrize('p, f', [(3, 1), (2, 2)])
@pytest.mark.parametrize('name', OBSTRUCTION_ENTRIES)
def test_obstruction_sequences_are_essential(name, p, f):
    g = get_entry(name).digraph
    pr = Prime(p, f)
    for ob in find_obstructions(g):
        query, witness = obstruction_witness(g, ob, pr)
        assert witness.size == pr.q + 1
        assert verify_witness(query, witness).ok
        verdict = massey_status(query)
        assert verdict.status is MasseyStatus.ESSENTIAL
        assert verdict.full_search.exhausted
        assert verdict.full_search.found is None


def special_clique_classes(max_vertices):
    """不超过 max_vertices 个顶点的 special-clique 有向图，每个同构类取规范代表"""
    seen = {}
    for n in range(1, max_vertices + 1):
        for g in enumerate_digraphs(n):
            if classify(g).verdict.is_special_clique:
                canonical = canonicalize(g)
                seen.setdefault((n, tuple(sorted(canonical.edges))), canonical)
    return list(seen.values())


def compatible_sequences(g, p, n):
    cochains = [Cochain1.from_values(g, p, list(values)) for values in itertools.product(range(p), repeat=len(g))]
    for seq in itertools.product(cochains, repeat=n):
        if consecutive_cups_vanish(seq):
            yield seq


@pytest.mark.slow
def test_direct_construction_sweep_over_small_special_cliques(q3):
    checked = 0
    for g in special_clique_classes(3):
        for seq in compatible_sequences(g, 3, 3):
            result = construct_vanishing_hom(g, q3, seq)
            assert result.assignment is not None
            assert verify_witness(MasseyQuery.build(g, q3, seq), result.assignment).ok
            checked += 1
    assert checked > 0


@pytest.mark.slow
def test_direct_construction_samples_on_four_vertices(q3):
    for g in special_clique_classes(4):
        if len(g) < 4:
            continue
        report = strong_vanishing_report(g, q3, 3, sample=200, seed=11)
        assert report.holds
        assert report.checked == report.vanished == 200
        assert report.indeterminate == 0


@pytest.mark.slow
def test_direct_construction_agrees_with_search(q3):
    rng = np.random.default_rng(2024)
    classes = special_clique_classes(4)
    agreed = 0
    while agreed < 50:
        g = classes[int(rng.integers(len(classes)))]
        seq = [Cochain1.from_values(g, 3, rng.integers(0, 3, len(g)).tolist()) for _ in range(3)]
        if not consecutive_cups_vanish(seq):
            continue
        query = MasseyQuery.build(g, q3, seq)
        constructed = construct_vanishing_hom(g, q3, seq)
        searched = search_representation(query)
        assert constructed.assignment is not None
        assert searched.found is not None
        assert verify_witness(query, searched.found).ok
        agreed += 1
