"""
Raagy 多步骤校验示例
演示如何用套件把分类、Massey 积判定与强消失检查串成一次完整的校验
"""

from raagy import (
    Cochain1, MasseyQuery, Prime, SearchBudget, classify, construct_vanishing_hom, find_obstructions,
    get_run_logger, massey_status, notes, patching_decomposition, set_progress, strong_vanishing_report,
    suite,
)
from raagy.algebra.massey import designated_sequence
from raagy.core.json_utils import json
from raagy.corpus import get_entry


# ============ 校验步骤 ============

def describe_digraph(name: str) -> dict:
    """分类语料中的有向图，special-clique 时给出拼接分解"""
    logger = get_run_logger()
    g = get_entry(name).digraph
    classification = classify(g)
    logger.info(f"{name}: {classification.verdict.value}")

    result = {'name': name, 'verdict': classification.verdict.value}
    if classification.verdict.is_special_clique:
        result['decomposition'] = patching_decomposition(g).to_dict()
    else:
        result['violations'] = [v.to_dict() for v in classification.violations]
    return result


def essential_product(name: str, pr: Prime) -> dict:
    """取第一个阻碍三元组的指定序列并判定其 Massey 积"""
    logger = get_run_logger()
    g = get_entry(name).digraph
    obstructions = find_obstructions(g)
    if not obstructions:
        notes.add_warning(f"{name} 是 special-clique，没有本质的 Massey 积")
        return {'name': name, 'status': None}

    ob = obstructions[0]
    sequence = designated_sequence(g, ob, pr)
    set_progress(20, f"{name}: 判定 {ob.kind.value} {ob.roles}")
    verdict = massey_status(MasseyQuery.build(g, pr, sequence))
    logger.info(f"{name}: 状态 {verdict.status.value}")
    return {'name': name, 'sequence': [repr(alpha) for alpha in sequence], 'status': verdict.status.value}


def explicit_vanishing(name: str, pr: Prime, terms: list) -> dict:
    """在 special-clique 有向图上直接构造使 Massey 积消失的表示"""
    g = get_entry(name).digraph
    sequence = [Cochain1.combination(g, pr.p, t) for t in terms]
    result = construct_vanishing_hom(g, pr, sequence)
    if result.is_fallback:
        notes.add_info(f"{name}: 直接构造回退到搜索（{result.reason}）")
    return {'name': name, 'route': result.route.value, 'cases': [list(c) for c in result.cases]}


# ============ 定义套件 ============

@suite('example-walkthrough', name='示例校验')
def walkthrough(p: int = 3) -> dict:
    """
    示例校验套件

    步骤：
    1. 分类两个有向图
    2. 在非 special-clique 有向图上判定本质的 Massey 积
    3. 在 special-clique 有向图上直接构造消失表示
    4. 抽样检查强消失性质

    Args:
        p: 素数

    Returns:
        各步骤的结果
    """
    pr = Prime(p)
    logger = get_run_logger()
    logger.info(f"示例开始，q={pr.q}")

    set_progress(0, "分类有向图")
    described = [describe_digraph(name) for name in ('square-special-clique', 'disjoint-tails-converging')]

    essential = essential_product('disjoint-tails-converging', pr)

    set_progress(50, "构造消失表示")
    vanishing = explicit_vanishing('square-special-clique', pr, [{'a': 1, 'b': 1, 'd': 1}] * 3)

    set_progress(70, "抽样检查强消失性质")
    report = strong_vanishing_report(get_entry('single-edge').digraph, pr, 3,
                                     SearchBudget(max_sequences=200), sample=50, seed=1)

    set_progress(100, "示例完成")
    return {
        'classified': described,
        'essential': essential,
        'vanishing': vanishing,
        'strong_vanishing': {'checked': report.checked, 'holds': report.holds},
    }


# ============ 主程序 ============

if __name__ == '__main__':
    print(json.dumps(walkthrough()))
