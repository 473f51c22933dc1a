#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""定理一致性验证套件

对每个有向图交叉检查三件事：
1. 分类是否为 special-clique；
2. 是否存在本质的 Massey 积（非 special-clique 时用阻碍三元组的显式见证加全表示穷尽搜索证明）；
3. 强 n-Massey 消失性质是否成立。
special-clique ⇔ 强消失无失败 ⇔ 不存在本质的 Massey 积，任何不一致都记录反例证书。
"""

import logging
import os
from typing import Dict, List, Optional

from raagy.algebra.digraph import Digraph, classify, enumerate_digraphs, find_obstructions
from raagy.algebra.exterior import Prime
from raagy.algebra.massey import (
    MAX_COCHAINS, MasseyStatus, SearchBudget, obstruction_witness, search_representation,
    strong_vanishing_report, verify_witness,
)
from raagy.cli.source import InputSource, load_sources
from raagy.core.config import get_config
from raagy.core.context import get_suite_notes, get_suite_run_id
from raagy.core.errors import ConsistencyError, InputError
from raagy.core.json_utils import json
from raagy.core.notes import add_error, add_info, add_warning
from raagy.core.progress import set_progress
from raagy.core.suite import suite
from raagy.corpus import load_corpus

logger = logging.getLogger(__name__)

SCOPES = ('exhaustive', 'corpus', 'file')
MAX_SUITE_VERTICES = 5

CONSISTENT = 'consistent'
INCONSISTENT = 'inconsistent'
PARTIAL = 'partial'


def _essential_check(g: Digraph, pr: Prime, budget: SearchBudget, result: Dict, problems: List[str]):
    """非 special-clique：校验显式中心商见证并穷尽全表示搜索

    Returns:
        (指定序列, 是否证明为本质)；预算耗尽时第二项为 None
    """
    obstructions = find_obstructions(g)
    if not obstructions:
        problems.append("不是 special-clique 却没有阻碍三元组")
        return None, None
    ob = obstructions[0]
    query, bar_witness = obstruction_witness(g, ob, pr)
    check = verify_witness(query, bar_witness)
    full = search_representation(query, budget)
    result['obstruction'] = ob.to_dict()
    result['witness'] = dict(
        query.to_dict(),
        status=MasseyStatus.ESSENTIAL.value,
        witness=None,
        bar_witness=bar_witness.to_dict(),
        full_search=full.to_dict(),
        obstruction=ob.to_dict(),
    )
    if not check.ok:
        problems.append(f"阻碍三元组 {ob.roles} 的显式见证未通过复核")
    if full.found is not None:
        problems.append("指定序列存在全表示，Massey 积不是本质的")
        return query.sequence, False
    if not full.exhausted:
        return query.sequence, None
    return query.sequence, check.ok


def check_digraph(g: Digraph, pr: Prime, n: int, budget: SearchBudget,
                  expected=None) -> Dict:
    """单个有向图的三方一致性检查"""
    verdict = classify(g).verdict
    special_clique = verdict.is_special_clique
    result = {'digraph': g.to_dict(), 'verdict': verdict.value, 'special_clique': special_clique}
    problems: List[str] = []
    partial = False

    if expected is not None:
        result['expected'] = expected.value
        if expected is not verdict:
            problems.append(f"分类结果 {verdict.value} 与预期 {expected.value} 不符")

    try:
        priority = ()
        if special_clique:
            essential = False
        else:
            designated, essential = _essential_check(g, pr, budget, result, problems)
            if essential is None:
                partial = True
            if designated is not None and len(designated) == n:
                priority = (designated,)

        report = strong_vanishing_report(g, pr, n, budget, max_failures=1, priority=priority)
        fails = bool(report.failures)
        result['strong_vanishing'] = {
            'holds': report.holds,
            'checked': report.checked,
            'failures': [f.to_dict() for f in report.failures],
            'exhaustive': report.exhaustive,
            'indeterminate': report.indeterminate,
            'fallbacks': report.fallbacks,
        }
        if special_clique:
            if fails:
                problems.append("special-clique 有向图上存在不消失的序列")
            elif not report.exhaustive:
                partial = True
        elif n == pr.q and not fails:
            if report.exhaustive:
                problems.append("非 special-clique 有向图满足强消失性质")
            else:
                partial = True
        result['essential_exists'] = essential
    except ConsistencyError as e:
        problems.append(str(e))
        result['certificate'] = e.certificate

    if problems:
        status = INCONSISTENT
    elif partial:
        status = PARTIAL
    else:
        status = CONSISTENT
    result['status'] = status
    result['problems'] = problems
    return result


def _scope_sources(scope: str, vertices: int, source: Optional[str]) -> List[InputSource]:
    if scope == 'exhaustive':
        if not 1 <= vertices <= MAX_SUITE_VERTICES:
            raise InputError(f"穷尽范围只支持 1..{MAX_SUITE_VERTICES} 个顶点，收到 {vertices}")
        return [InputSource(f"enum-{vertices}-{i}", g) for i, g in enumerate(enumerate_digraphs(vertices))]
    if scope == 'corpus':
        return [InputSource.from_entry(entry) for entry in load_corpus()]
    if scope == 'file':
        if not source:
            raise InputError("file 范围需要给出输入文件")
        return load_sources(source)
    raise InputError(f"未知范围: {scope}，可选 {', '.join(SCOPES)}")


def _desk_scale(g: Digraph, pr: Prime) -> bool:
    return 0 < len(g) <= MAX_SUITE_VERTICES and pr.p ** len(g) <= MAX_COCHAINS


def _emit_witness(result: Dict, name: str, index: int) -> Optional[str]:
    if 'witness' not in result:
        return None
    directory = os.path.join(get_config().report_dir, 'witnesses', get_suite_run_id() or 'standalone')
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, f"{index:04d}-{name}.json")
    with open(path, 'w', encoding='utf-8') as f:
        f.write(json.dumps(result['witness']))
    return path


class TheoremService:
    """定理一致性验证的服务类"""

    @staticmethod
    @suite('verify-theorem', name='定理一致性验证')
    def verify_theorem(scope: str, pr: Prime, n: Optional[int] = None, budget: Optional[SearchBudget] = None,
                       vertices: int = 3, source: Optional[str] = None, emit_witnesses: bool = False) -> Dict:
        """在给定范围内对每个有向图做三方一致性检查

        Args:
            scope: exhaustive（vertices 个顶点上的全部有向图）/ corpus / file
            pr: 素数与指数
            n: 强消失检查的序列长度，默认 q
            budget: 搜索预算
            vertices: exhaustive 范围的顶点数
            source: file 范围的输入文件
            emit_witnesses: 把每个见证写入报告目录

        Returns:
            汇总报告；inconsistent 非零表示发现反例或程序错误
        """
        n = n if n is not None else pr.q
        if n < 3:
            raise InputError(f"n 必须 ≥ 3，收到 {n}")
        budget = budget or SearchBudget()
        sources = _scope_sources(scope, vertices, source)
        if n != pr.q:
            add_info(f"n={n} 与 q={pr.q} 不同：非 special-clique 有向图的强消失结果只作记录")

        results = []
        counts = {CONSISTENT: 0, INCONSISTENT: 0, PARTIAL: 0}
        skipped = []
        total = len(sources)
        for index, item in enumerate(sources):
            if not _desk_scale(item.digraph, pr):
                skipped.append(item.name)
                add_info(f"跳过 {item.name}：{len(item.digraph)} 个顶点超出检查规模")
                continue
            result = check_digraph(item.digraph, pr, n, budget, item.expected)
            result['name'] = item.name
            counts[result['status']] += 1
            if result['status'] == INCONSISTENT:
                add_error(f"{item.name} 不一致: {'; '.join(result['problems'])}")
            elif result['status'] == PARTIAL:
                add_warning(f"{item.name} 预算耗尽，结果不完整")
            if emit_witnesses:
                result['witness_file'] = _emit_witness(result, item.name, index)
            results.append(result)
            set_progress(int((index + 1) * 100 / total), f"已检查 {index + 1}/{total} 个有向图")

        logger.info(f"定理验证: {counts[CONSISTENT]} 一致, {counts[INCONSISTENT]} 不一致, {counts[PARTIAL]} 不完整")
        return {
            'scope': scope,
            'prime': pr.to_dict(),
            'n': n,
            'total': total,
            'checked': len(results),
            'skipped': skipped,
            **counts,
            'results': results,
            'notes': get_suite_notes(),
        }
