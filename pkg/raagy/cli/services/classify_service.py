#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""有向图分类、外代数与群表示的服务层"""

import logging
from collections import Counter
from typing import Dict, Iterable, Optional

from raagy.algebra.digraph import (
    Digraph, Verdict, canonicalize, classify, count_digraphs, enumerate_digraphs, find_obstructions,
    find_patching, is_sinkhole_literal, patching_decomposition, vertex_class,
)
from raagy.algebra.exterior import (
    Prime, build_algebra, graded_dimensions, kernel_generated_by_cups, relator_correspondence,
    restriction_map,
)
from raagy.algebra.raag import clique_subgroup_presentation, free_factors, presentation
from raagy.core.errors import ConsistencyError

logger = logging.getLogger(__name__)


class ClassifyService:
    """有向图相关命令的服务类"""

    @staticmethod
    def classify(g: Digraph, expected: Optional[Verdict] = None) -> Dict:
        """分类报告：判定、禁止三元组、顶点分类、拼接分解

        Raises:
            ConsistencyError: 给出了 expected 且与计算结果不同
        """
        classification = classify(g)
        verdict = classification.verdict
        report = classification.to_dict()
        report['vertices'] = {
            v: dict(vertex_class(g, v).to_dict(), sinkhole_literal=is_sinkhole_literal(g, v))
            for v in g.vertices
        }
        report['obstructions'] = [ob.to_dict() for ob in find_obstructions(g)]
        report['patching_decomposition'] = (
            patching_decomposition(g).to_dict() if verdict.is_special_clique else None
        )
        patching = find_patching(g)
        report['patching'] = patching.to_dict() if patching else None

        if expected is not None:
            report['expected'] = expected.value
            if expected is not verdict:
                raise ConsistencyError(
                    f"分类结果 {verdict.value} 与预期 {expected.value} 不符",
                    certificate={'digraph': g.to_dict(), 'report': report},
                )
        logger.debug(f"分类完成: {verdict.value}, {len(classification.violations)} 个禁止三元组")
        return report

    @staticmethod
    def algebra(g: Digraph, pr: Prime, max_degree: Optional[int] = None,
                sub: Optional[Iterable[str]] = None) -> Dict:
        """外 Stanley–Reisner 代数的维数、基与二次部分的关系子对应

        Raises:
            ConsistencyError: dim Λ₂ 与关系子个数不一致
        """
        algebra = build_algebra(g, pr, max_degree)
        pres = presentation(g, pr)
        table = relator_correspondence(g, pr)
        dim2 = build_algebra(g, pr, 2).dimension(2)
        if dim2 != len(pres.relators):
            raise ConsistencyError(
                f"dim Λ₂ = {dim2} 与关系子个数 {len(pres.relators)} 不一致",
                certificate={'digraph': g.to_dict()},
            )

        report = algebra.to_dict()
        report['dimensions'] = {str(k): d for k, d in enumerate(algebra.hilbert_series)}
        report['degree2_relators'] = [
            {'element': '{' + ','.join(key) + '}', 'relator': rid, 'sign': sign}
            for key, (rid, sign) in table.items()
        ]
        report['relator_count'] = len(pres.relators)
        report['cohomology_agrees'] = graded_dimensions(g, pr, max_degree)['cohomology_agrees']
        if sub is not None:
            verts = g.check_vertices(sub)
            restriction = restriction_map(g, pr.p, verts).to_dict()
            restriction['kernel_generated_by_cups'] = kernel_generated_by_cups(g, pr.p, verts)
            report['restriction'] = restriction
        return report

    @staticmethod
    def presentation(g: Digraph, pr: Prime, sub: Optional[Iterable[str]] = None) -> Dict:
        """群表示：生成元、关系子与自由积因子；给出 sub 时附带团子群的表示"""
        pres = presentation(g, pr)
        report = pres.to_dict()
        report['free_factors'] = [list(factor.generators) for factor in free_factors(pres)]
        if sub is not None:
            report['clique_subgroup'] = clique_subgroup_presentation(pres, sub).to_dict()
        return report

    @staticmethod
    def enumerate(n: int, start: int = 0, stop: Optional[int] = None, canonical: bool = False) -> Dict:
        """枚举 n 个顶点上的有向图并统计分类；canonical 时按同构类去重"""
        verdicts = Counter()
        digraphs = []
        seen = set()
        for g in enumerate_digraphs(n, start, stop):
            if canonical:
                g = canonicalize(g)
                if g in seen:
                    continue
                seen.add(g)
            verdict = classify(g).verdict
            verdicts[verdict.value] += 1
            digraphs.append({'digraph': g.to_dict(), 'verdict': verdict.value})
        return {
            'n': n,
            'total': count_digraphs(n),
            'listed': len(digraphs),
            'canonical': canonical,
            'verdicts': {v.value: verdicts.get(v.value, 0) for v in Verdict},
            'digraphs': digraphs,
        }
