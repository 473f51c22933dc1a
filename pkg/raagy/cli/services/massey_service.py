#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Massey 积判定、强消失报告与见证复核的服务层"""

import logging
from typing import Dict, Optional, Sequence, Tuple

from raagy.algebra.digraph import Digraph, find_obstructions
from raagy.algebra.exterior import Cochain1, Prime
from raagy.algebra.massey import (
    MasseyQuery, MasseyStatus, MasseyVerdict, SearchBudget, designated_sequence, massey_status,
    strong_vanishing_report, verify_witness,
)
from raagy.algebra.raag import GeneratorAssignment
from raagy.core.context import get_suite_notes
from raagy.core.errors import InputError
from raagy.core.progress import set_progress
from raagy.core.suite import suite

logger = logging.getLogger(__name__)

WITNESS_FIELDS = ('witness', 'bar_witness')


def query_from_document(document: Dict) -> MasseyQuery:
    """从判定结果或见证文件中重建查询

    Raises:
        InputError: 缺少 digraph、p 或 sequence 字段
    """
    if not isinstance(document, dict):
        raise InputError("见证文件必须是对象")
    missing = [key for key in ('digraph', 'p', 'sequence') if key not in document]
    if missing:
        raise InputError(f"见证文件缺少字段: {', '.join(missing)}")
    g = Digraph.from_dict(document['digraph'])
    pr = Prime(document['p'], document.get('f', 1))
    if not isinstance(document['sequence'], list):
        raise InputError("sequence 必须是列表")
    sequence = [Cochain1.combination(g, pr.p, terms) for terms in document['sequence']]
    return MasseyQuery.build(g, pr, sequence)


class MasseyService:
    """Massey 积相关命令的服务类"""

    @staticmethod
    def default_sequence(g: Digraph, pr: Prime) -> Tuple[Cochain1, ...]:
        """未给出序列时取第一个阻碍三元组的指定序列

        Raises:
            InputError: 有向图是 special-clique，没有阻碍三元组
        """
        obstructions = find_obstructions(g)
        if not obstructions:
            raise InputError("有向图是 special-clique，没有默认序列，请给出序列表达式")
        return designated_sequence(g, obstructions[0], pr)

    @staticmethod
    def massey(g: Digraph, pr: Prime, sequence: Sequence[Cochain1],
               budget: Optional[SearchBudget] = None) -> MasseyVerdict:
        query = MasseyQuery.build(g, pr, sequence)
        verdict = massey_status(query, budget)
        logger.info(f"Massey 积判定: n={query.n}, q={pr.q}, 状态 {verdict.status.value}")
        return verdict

    @staticmethod
    @suite('strong-vanishing', name='强消失报告')
    def strong_vanishing(g: Digraph, pr: Prime, n: int, budget: Optional[SearchBudget] = None,
                         sample: Optional[int] = None, seed: Optional[int] = None) -> Dict:
        """检查长度 n 的相邻杯积为零的序列是否全部消失"""
        set_progress(0, f"开始检查 n={n}, q={pr.q}")
        report = strong_vanishing_report(g, pr, n, budget, sample=sample, seed=seed)
        set_progress(100, f"共检查 {report.checked} 个序列")
        data = report.to_dict()
        data['holds'] = report.holds
        data['notes'] = get_suite_notes()
        return data

    @staticmethod
    def verify_witness_document(document: Dict) -> Dict:
        """独立复核 massey 或 verify-theorem 输出的见证

        每个见证字段都重新计算关系子缺陷与超对角线读数；声称 Vanishes 时
        还要求存在一个不取中心商的见证。

        Raises:
            InputError: 文件中没有可复核的见证
        """
        query = query_from_document(document)
        checks = []
        has_full = False
        for key in WITNESS_FIELDS:
            if not document.get(key):
                continue
            assignment = GeneratorAssignment.from_dict(document[key])
            check = verify_witness(query, assignment)
            has_full = has_full or (check.ok and not assignment.mod_center)
            checks.append(dict(check.to_dict(), field=key, mod_center=assignment.mod_center))
        if not checks:
            raise InputError("文件中没有可复核的见证")

        status = document.get('status')
        claim_supported = status != MasseyStatus.VANISHES.value or has_full
        return {
            'ok': claim_supported and all(c['ok'] for c in checks),
            'status': status,
            'claim_supported': claim_supported,
            'query': query.to_dict(),
            'checks': checks,
        }
