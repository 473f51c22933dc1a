#!/usr/bin/env python
# -*- coding: utf-8 -*-
import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from raagy.algebra.digraph import (
    Digraph, ObstructionKind, Pattern, Verdict, canonicalize, check_obstruction, classify, clique_number,
    cliques, connected_components, count_digraphs, enumerate_digraphs, find_obstructions, find_patching,
    induced, is_complete, is_sinkhole_literal, patching_decomposition, scan_forbidden, star, to_dot,
    special_vertices, underlying, vertex_class,
)
from raagy.core.errors import InputError, PreconditionError, ResourceLimitError
from raagy.corpus import get_entry, load_corpus


def digraphs(max_vertices=4):
    """按枚举编码随机抽取带标号有向图"""
    return st.integers(0, max_vertices).flatmap(
        lambda n: st.integers(0, count_digraphs(n) - 1).map(lambda i: next(enumerate_digraphs(n, i, i + 1)))
    )


def test_rejects_loops_duplicates_and_unknown_endpoints():
    with pytest.raises(InputError):
        Digraph(['a', 'a'])
    with pytest.raises(InputError):
        Digraph(['a'], [('a', 'a')])
    with pytest.raises(InputError):
        Digraph(['a'], [('a', 'b')])


def test_duplicate_edges_are_merged():
    g = Digraph(['a', 'b'], [('a', 'b'), ('a', 'b')])
    assert g.edges == frozenset({('a', 'b')})


def test_dict_round_trip(chain_digraph):
    assert Digraph.from_dict(chain_digraph.to_dict()) == chain_digraph


def test_vertex_classes_of_chain(chain_digraph):
    assert str(vertex_class(chain_digraph, 'v1')) == 'Special{sinkhole=true}'
    assert str(vertex_class(chain_digraph, 'v2')) == 'Special{sinkhole=false}'
    assert vertex_class(chain_digraph, 'v3').is_ordinary
    assert vertex_class(chain_digraph, 'v4').is_ordinary
    with pytest.raises(InputError):
        vertex_class(chain_digraph, 'v9')


def test_literal_sinkhole_predicate_is_weaker(chain_digraph):
    assert is_sinkhole_literal(chain_digraph, 'v2')
    assert not vertex_class(chain_digraph, 'v2').sinkhole


def test_chain_violations(chain_digraph):
    violations = scan_forbidden(chain_digraph)
    found = {(pv.pattern, pv.witness) for pv in violations}
    assert (Pattern.SPECIAL_WITH_OUT_EDGE, ('v3', 'v2', 'v1')) in found
    assert (Pattern.NON_CLIQUE_STAR, ('v2', 'v1', 'v4')) in found
    assert classify(chain_digraph).verdict is Verdict.NOT_SPECIAL


def test_squares():
    assert classify(get_entry('square-not-special').digraph).verdict is Verdict.NOT_SPECIAL
    center = classify(get_entry('square-special-not-clique').digraph)
    assert center.verdict is Verdict.SPECIAL_NOT_CLIQUE
    assert [(pv.pattern, pv.witness) for pv in center.violations] == [
        (Pattern.NON_CLIQUE_STAR, ('a', 'b', 'd'))
    ]
    right = classify(get_entry('square-special-clique').digraph)
    assert right.verdict is Verdict.SPECIAL_CLIQUE
    assert right.violations == ()


def test_corpus_verdicts_match():
    for entry in load_corpus():
        assert classify(entry.digraph).verdict is entry.expected, entry.name


def test_cliques(chain_digraph, three_sinkholes):
    assert len(cliques(chain_digraph, 2)) == len(chain_digraph.edge_classes()) == 5
    assert cliques(chain_digraph, 3) == [('v1', 'v2', 'v3'), ('v1', 'v3', 'v4')]
    assert cliques(chain_digraph, 0) == [()]
    triangles = cliques(three_sinkholes, 3)
    assert ('u1', 'u3', 'u4') in triangles
    assert ('u1', 'u3', 'w1') in triangles
    assert clique_number(three_sinkholes) == 4
    with pytest.raises(InputError):
        cliques(chain_digraph, -1)


def test_underlying_and_star():
    g = get_entry('directed-triangle-cycle').digraph
    assert is_complete(underlying(g))
    assert all(underlying(g).is_two_way(a, b) for a, b in itertools.combinations(g.vertices, 2))
    assert star(get_entry('path-three').digraph, 'a').vertices == ('a', 'b')


def test_patching_decomposition_of_three_sinkholes(three_sinkholes):
    decomposition = patching_decomposition(three_sinkholes)
    assert decomposition.core == ('u1', 'u2', 'u3', 'u4', 'u5')
    assert [(piece.special, piece.overlap) for piece in decomposition.pieces] == [
        ('w1', ('u1', 'u3', 'u4')),
        ('w2', ('u2', 'u5')),
        ('w3', ('u5',)),
    ]
    assert decomposition.reassemble(three_sinkholes) == three_sinkholes


def test_patching_decomposition_of_right_square():
    g = get_entry('square-special-clique').digraph
    decomposition = patching_decomposition(g)
    assert decomposition.core == ('a', 'd')
    assert [piece.star for piece in decomposition.pieces] == [('a', 'b', 'd'), ('a', 'c', 'd')]


def test_patching_decomposition_requires_special_clique(chain_digraph):
    with pytest.raises(PreconditionError) as info:
        patching_decomposition(chain_digraph)
    assert info.value.violation is not None


def test_find_patching(chain_digraph):
    patching = find_patching(chain_digraph)
    assert patching.as_sets() == (
        frozenset({'v1', 'v2', 'v3'}), frozenset({'v1', 'v3', 'v4'}), frozenset({'v1', 'v3'})
    )
    assert find_patching(get_entry('complete-special-d2').digraph) is None


def test_connected_components():
    g = Digraph(['a', 'b', 'c', 'd'], [('c', 'd')])
    assert connected_components(g) == [('a',), ('b',), ('c', 'd')]


def test_obstructions_of_converging_tails():
    g = get_entry('disjoint-tails-converging').digraph
    obstructions = find_obstructions(g)
    assert obstructions[0].kind is ObstructionKind.DISJOINT_TAILS
    assert obstructions[0].roles == ('u', 'v', 'w')
    check_obstruction(g, ('u', 'v', 'w'), ObstructionKind.DISJOINT_TAILS)
    with pytest.raises(PreconditionError):
        check_obstruction(g, ('u', 'v', 'w'), ObstructionKind.JOINED_TAILS)


def test_joined_tails_obstruction():
    g = get_entry('joined-tails-one-way-forward').digraph
    kinds = {(ob.kind, ob.roles) for ob in find_obstructions(g)}
    assert (ObstructionKind.JOINED_TAILS, ('u', 'v', 'w')) in kinds


def test_enumeration_counts():
    assert len(list(enumerate_digraphs(2))) == 4
    assert len(list(enumerate_digraphs(3))) == 64
    assert len(list(enumerate_digraphs(3, 10, 20))) == 10
    with pytest.raises(ResourceLimitError):
        next(enumerate_digraphs(7))


def test_canonicalize_relabelings_agree(chain_digraph):
    renamed = {'v1': 'v3', 'v2': 'v1', 'v3': 'v4', 'v4': 'v2'}
    relabeled = Digraph(
        ['v1', 'v2', 'v3', 'v4'],
        [(renamed[t], renamed[h]) for t, h in chain_digraph.edges],
    )
    assert canonicalize(relabeled) == canonicalize(chain_digraph)


def test_to_dot_marks_special_vertices():
    dot = to_dot(get_entry('single-edge').digraph, 'edge')
    assert '"w" [style=filled];' in dot
    assert '"v" -> "w";' in dot
    undirected = to_dot(get_entry('path-three').digraph)
    assert '[dir=none]' in undirected


@settings(max_examples=200, deadline=None)
@given(digraphs())
def test_scan_agrees_with_definition(g):
    # classify 本身会在两种判定不一致时抛出 ConsistencyError
    verdict = classify(g).verdict
    assert (not find_obstructions(g)) == verdict.is_special_clique


@settings(max_examples=100, deadline=None)
@given(digraphs())
def test_canonical_form_is_invariant_under_reversal_of_order(g):
    reversed_order = Digraph(tuple(reversed(g.vertices)), g.edges)
    assert canonicalize(reversed_order) == canonicalize(g)


@settings(max_examples=100, deadline=None)
@given(digraphs(), st.data())
def test_induced_subgraph_keeps_only_inner_edges(g, data):
    subset = data.draw(st.sets(st.sampled_from(g.vertices))) if g.vertices else set()
    h = induced(g, subset)
    assert set(h.vertices) == set(subset)
    assert h.edges == {e for e in g.edges if e[0] in subset and e[1] in subset}


@pytest.mark.slow
@pytest.mark.parametrize('n', [3, 4])
def test_classification_exhaustive(n):
    counts = {verdict: 0 for verdict in Verdict}
    for g in enumerate_digraphs(n):
        classification = classify(g)
        verdict = classification.verdict
        counts[verdict] += 1
        assert (not classification.violations) == verdict.is_special_clique
        assert (not find_obstructions(g)) == verdict.is_special_clique
        if verdict is Verdict.SPECIAL_CLIQUE:
            specials = special_vertices(g)
            assert specials
            assert not any(g.adjacent(a, b) for a, b in itertools.combinations(specials, 2))
        assert classify(canonicalize(g)).verdict is verdict
    assert sum(counts.values()) == count_digraphs(n)
    assert all(counts.values())
