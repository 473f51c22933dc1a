#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Raagy代数模块：有向图、外代数、上单位三角矩阵、RAAG 表示与 Massey 积"""

from raagy.algebra.digraph import (
    Digraph, Verdict, Pattern, PatternViolation, Classification, ObstructionKind, Obstruction,
    vertex_class, classify, scan_forbidden, star, induced, underlying, cliques,
    patching_decomposition, find_patching, find_obstructions, enumerate_digraphs, canonicalize, to_dot,
)
from raagy.algebra.exterior import (
    Prime, Cochain1, ExteriorElement, build_algebra, wedge, cup, consecutive_cups_vanish,
    restrict, kernel_basis, restriction_map, relator_correspondence,
)
from raagy.algebra.unitriangular import UniTriMatrix, BarElement, center_project
from raagy.algebra.raag import (
    Relator, RaagPresentation, GeneratorAssignment, presentation, evaluate_relator,
    verify_assignment, clique_subgroup_presentation,
)
from raagy.algebra.massey import (
    MasseyQuery, MasseyStatus, MasseyVerdict, SearchBudget, SearchOutcome,
    search_bar_representation, search_representation, massey_status,
    witness_type_61, witness_type_62, construct_vanishing_hom, strong_vanishing_report,
)

__all__ = [
    'Digraph', 'Verdict', 'Pattern', 'PatternViolation', 'Classification', 'ObstructionKind', 'Obstruction',
    'vertex_class', 'classify', 'scan_forbidden', 'star', 'induced', 'underlying', 'cliques',
    'patching_decomposition', 'find_patching', 'find_obstructions', 'enumerate_digraphs', 'canonicalize',
    'to_dot',
    'Prime', 'Cochain1', 'ExteriorElement', 'build_algebra', 'wedge', 'cup', 'consecutive_cups_vanish',
    'restrict', 'kernel_basis', 'restriction_map', 'relator_correspondence',
    'UniTriMatrix', 'BarElement', 'center_project',
    'Relator', 'RaagPresentation', 'GeneratorAssignment', 'presentation', 'evaluate_relator',
    'verify_assignment', 'clique_subgroup_presentation',
    'MasseyQuery', 'MasseyStatus', 'MasseyVerdict', 'SearchBudget', 'SearchOutcome',
    'search_bar_representation', 'search_representation', 'massey_status',
    'witness_type_61', 'witness_type_62', 'construct_vanishing_hom', 'strong_vanishing_report',
]
