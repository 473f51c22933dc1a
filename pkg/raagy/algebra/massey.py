#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Massey 积的判定

通过 Dwyer 对应把 n 重 Massey 积 ⟨α₁,…,α_n⟩ 的定义性与消失性转化为
U_{n+1}(F_p)（或其中心商）中超对角线给定的表示的存在性：
- search_bar_representation / search_representation: 受预算约束的穷举搜索，附带穷尽证书
- massey_status: NotDefined / Vanishes / Essential / Indeterminate
- witness_type_61 / witness_type_62: 非 special-clique 三元组上的显式中心商见证
- construct_vanishing_hom: special-clique 有向图上的直接构造（失败时回退到搜索）
- strong_vanishing_report: 对全部相邻杯积为零的序列检查消失性

搜索按生成元逐个赋值：超对角线由序列固定，其余自由元素中与已赋值生成元
之间的关系是线性的部分（交换关系、作为头的共轭关系）先解线性方程组，
剩下的非线性关系（作为尾的共轭关系）逐个候选检查。
"""

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from raagy.algebra.digraph import (
    Digraph, Obstruction, ObstructionKind, check_obstruction, classify, special_vertices,
)
from raagy.algebra.exterior import Cochain1, ExteriorElement, Prime, consecutive_cups_vanish, cup
from raagy.algebra.linalg import AffineSolution, rank_mod_p, solve_affine
from raagy.algebra.raag import (
    GeneratorAssignment, RaagPresentation, VerificationResult, presentation, verify_assignment,
)
from raagy.algebra.unitriangular import (
    MAX_SIZE, UniTriMatrix, block_diagonal, free_positions, identity_array, mat_pow,
    power_conjugator, strict_upper_positions,
)
from raagy.core.config import get_config
from raagy.core.errors import ConsistencyError, InputError, PreconditionError, ResourceLimitError
from raagy.core.notes import add_warning
from raagy.core.progress import set_progress

logger = logging.getLogger(__name__)


class MasseyStatus(Enum):
    NOT_DEFINED = 'NotDefined'
    VANISHES = 'Vanishes'
    ESSENTIAL = 'Essential'
    INDETERMINATE = 'Indeterminate'

    @property
    def is_defined(self) -> bool:
        return self in (MasseyStatus.VANISHES, MasseyStatus.ESSENTIAL)


@dataclass(frozen=True)
class MasseyQuery:
    """n 重 Massey 积 ⟨α₁,…,α_n⟩ 的查询

    Raises:
        InputError: n < 2，或某个 α_i 不属于表示的有向图与素数
        ResourceLimitError: n + 1 超过支持的矩阵阶数
    """
    presentation: RaagPresentation
    sequence: Tuple[Cochain1, ...]

    def __post_init__(self):
        sequence = tuple(self.sequence)
        object.__setattr__(self, 'sequence', sequence)
        if len(sequence) < 2:
            raise InputError(f"Massey 积至少需要 2 个上同调类，收到 {len(sequence)}")
        if len(sequence) + 1 > MAX_SIZE:
            raise ResourceLimitError(f"n={len(sequence)} 超过支持的矩阵阶数 {MAX_SIZE}")
        if not len(self.presentation.digraph):
            raise InputError("有向图没有顶点")
        for alpha in sequence:
            if alpha.digraph != self.presentation.digraph or alpha.p != self.presentation.prime.p:
                raise InputError(f"上链 {alpha!r} 不属于查询的有向图或素数")

    @classmethod
    def build(cls, g: Digraph, pr: Prime, sequence: Sequence[Cochain1]) -> 'MasseyQuery':
        return cls(presentation(g, pr), tuple(sequence))

    @property
    def n(self) -> int:
        return len(self.sequence)

    @property
    def digraph(self) -> Digraph:
        return self.presentation.digraph

    @property
    def prime(self) -> Prime:
        return self.presentation.prime

    def segment(self, start: int, stop: int) -> 'MasseyQuery':
        return MasseyQuery(self.presentation, self.sequence[start:stop])

    def to_dict(self) -> dict:
        return {
            'n': self.n,
            'p': self.prime.p,
            'f': self.prime.f,
            'sequence': [alpha.as_dict() for alpha in self.sequence],
            'digraph': self.digraph.to_dict(),
        }


@dataclass(frozen=True)
class SearchBudget:
    """搜索预算

    max_assignments: 搜索中检查的候选矩阵总数上限
    jobs: 并行进程数；大于 1 时按第一个生成元的候选划分搜索空间
    deterministic: 并行时取编号最小的成功分区，使结果与进程数无关
    max_sequences: 强消失报告检查的序列数上限
    未给出的上限取自全局配置。
    """
    max_assignments: Optional[int] = None
    jobs: Optional[int] = None
    deterministic: bool = True
    max_sequences: Optional[int] = None

    def __post_init__(self):
        config = get_config()
        if self.max_assignments is None:
            object.__setattr__(self, 'max_assignments', config.search_budget)
        if self.jobs is None:
            object.__setattr__(self, 'jobs', config.search_max_workers)
        if self.max_sequences is None:
            object.__setattr__(self, 'max_sequences', config.sequence_budget)
        if self.max_assignments < 1 or self.jobs < 1 or self.max_sequences < 1:
            raise InputError("预算与并行数必须为正整数")

    def to_dict(self) -> dict:
        return {
            'max_assignments': self.max_assignments,
            'jobs': self.jobs,
            'deterministic': self.deterministic,
            'max_sequences': self.max_sequences,
        }


@dataclass(frozen=True)
class SearchOutcome:
    """一次搜索的结果与证书

    found 为 None 且 exhausted 为 True 时是不存在性的证明，examined 为检查过的候选数；
    found 为 None 且 exhausted 为 False 时预算耗尽，结果不确定。
    """
    found: Optional[GeneratorAssignment]
    examined: int
    exhausted: bool
    mod_center: bool
    order: Tuple[str, ...] = ()
    free_entries: int = 0
    space_exponent: int = 0
    linear_generators: Tuple[str, ...] = ()
    route: str = 'search'
    budget: int = 0

    @property
    def indeterminate(self) -> bool:
        return self.found is None and not self.exhausted

    def to_dict(self) -> dict:
        return {
            'found': self.found is not None,
            'examined': self.examined,
            'exhausted': self.exhausted,
            'mod_center': self.mod_center,
            'order': list(self.order),
            'free_entries': self.free_entries,
            'space_exponent': self.space_exponent,
            'linear_generators': list(self.linear_generators),
            'route': self.route,
            'budget': self.budget,
        }


# 搜索计划

def search_order(g: Digraph) -> Tuple[str, ...]:
    """生成元的赋值顺序：沿单向边尾在头之前，并列或成环时按顶点全序"""
    placed: List[str] = []
    done = set()
    remaining = list(g.vertices)
    while remaining:
        ready = [v for v in remaining if all(t in done for t in g.one_way_in(v))]
        pick = ready[0] if ready else remaining[0]
        placed.append(pick)
        done.add(pick)
        remaining.remove(pick)
    return tuple(placed)


@dataclass(frozen=True)
class _Plan:
    p: int
    exponent: int
    size: int
    mod_center: bool
    order: Tuple[str, ...]
    base: Dict[str, np.ndarray]
    free_rows: np.ndarray
    free_cols: np.ndarray
    units: np.ndarray
    eq_rows: np.ndarray
    eq_cols: np.ndarray
    # 与更早赋值的生成元之间的关系
    commute_with: Dict[str, Tuple[str, ...]]
    heads_over: Dict[str, Tuple[str, ...]]
    tails_under: Dict[str, Tuple[str, ...]]

    @property
    def free_count(self) -> int:
        return len(self.free_rows)

    @property
    def linear_generators(self) -> Tuple[str, ...]:
        return tuple(g for g in self.order if self.commute_with[g] or self.heads_over[g])

    def matrix(self, g: str, vector: np.ndarray) -> np.ndarray:
        data = self.base[g].copy()
        data[self.free_rows, self.free_cols] = vector
        return data


def _build_plan(query: MasseyQuery, mod_center: bool) -> _Plan:
    g = query.digraph
    p = query.prime.p
    size = query.n + 1
    order = search_order(g)
    position = {v: i for i, v in enumerate(order)}

    base = {}
    for v in g.vertices:
        data = identity_array(size)
        for i, alpha in enumerate(query.sequence):
            data[i, i + 1] = alpha(v)
        base[v] = data

    free = free_positions(size, mod_center)
    units = np.zeros((len(free), size, size), dtype=np.int64)
    for k, (i, j) in enumerate(free):
        units[k, i, j] = 1
    equations = strict_upper_positions(size, mod_center)

    commute_with = {v: [] for v in g.vertices}
    heads_over = {v: [] for v in g.vertices}
    tails_under = {v: [] for v in g.vertices}
    for edge in g.edge_classes():
        tail, head = edge.tail, edge.head
        later = tail if position[tail] > position[head] else head
        if not edge.is_directed:
            commute_with[later].append(head if later == tail else tail)
        elif later == head:
            heads_over[head].append(tail)
        else:
            tails_under[tail].append(head)

    def ordered(table):
        return {v: tuple(sorted(others, key=position.__getitem__)) for v, others in table.items()}

    return _Plan(
        p=p,
        exponent=1 + query.prime.q,
        size=size,
        mod_center=mod_center,
        order=order,
        base=base,
        free_rows=np.array([i for i, _ in free], dtype=np.intp),
        free_cols=np.array([j for _, j in free], dtype=np.intp),
        units=units,
        eq_rows=np.array([i for i, _ in equations], dtype=np.intp),
        eq_cols=np.array([j for _, j in equations], dtype=np.intp),
        commute_with=ordered(commute_with),
        heads_over=ordered(heads_over),
        tails_under=ordered(tails_under),
    )


class _BudgetExhausted(Exception):
    pass


class _Search:
    """单个分区上的深度优先搜索"""

    def __init__(self, plan: _Plan, limit: int):
        self.plan = plan
        self.limit = limit
        self.examined = 0

    def candidates(self, g: str, chosen: Dict[str, np.ndarray]) -> Optional[AffineSolution]:
        """g 的自由元素满足全部线性约束的仿射解空间"""
        plan = self.plan
        p = plan.p
        coeff_blocks = []
        const_blocks = []
        base = plan.base[g]

        def add(left: np.ndarray, right: np.ndarray):
            # 约束 X·left − right·X = 0
            const = base @ left - right @ base
            coeff = plan.units @ left - right @ plan.units
            coeff_blocks.append((coeff[:, plan.eq_rows, plan.eq_cols].T) % p)
            const_blocks.append((-const[plan.eq_rows, plan.eq_cols]) % p)

        for h in plan.commute_with[g]:
            add(chosen[h], chosen[h])
        for v in plan.heads_over[g]:
            add(chosen[v], mat_pow(chosen[v], plan.exponent, p))

        if coeff_blocks:
            a = np.vstack(coeff_blocks)
            b = np.concatenate(const_blocks)
        else:
            a = np.zeros((0, plan.free_count), dtype=np.int64)
            b = np.zeros(0, dtype=np.int64)
        return solve_affine(a, b, p, num_cols=plan.free_count)

    def admissible(self, g: str, x: np.ndarray, chosen: Dict[str, np.ndarray]) -> bool:
        """g 作为尾时的非线性共轭关系 W·X = X^{1+q}·W"""
        plan = self.plan
        for w in plan.tails_under[g]:
            head = chosen[w]
            defect = (head @ x - mat_pow(x, plan.exponent, plan.p) @ head) % plan.p
            if defect[plan.eq_rows, plan.eq_cols].any():
                return False
        return True

    def run(self, start: int = 0, stop: Optional[int] = None) -> Optional[Dict[str, np.ndarray]]:
        return self._descend(0, {}, start, stop)

    def _descend(self, depth: int, chosen: Dict[str, np.ndarray],
                 start: int = 0, stop: Optional[int] = None) -> Optional[Dict[str, np.ndarray]]:
        plan = self.plan
        if depth == len(plan.order):
            return dict(chosen)
        g = plan.order[depth]
        solution = self.candidates(g, chosen)
        if solution is None:
            return None
        vectors: Iterator[np.ndarray] = iter(solution)
        if depth == 0:
            vectors = itertools.islice(vectors, start, stop)
        for vector in vectors:
            self.examined += 1
            if self.examined > self.limit:
                raise _BudgetExhausted()
            x = plan.matrix(g, vector)
            if not self.admissible(g, x, chosen):
                continue
            chosen[g] = x
            found = self._descend(depth + 1, chosen)
            if found is not None:
                return found
            del chosen[g]
        return None


def _search_partition(plan: _Plan, limit: int, start: int = 0,
                      stop: Optional[int] = None) -> Tuple[Optional[Dict[str, np.ndarray]], int, bool]:
    """返回 (找到的赋值, 检查数, 是否完整覆盖分区)；供进程池调用"""
    search = _Search(plan, limit)
    try:
        found = search.run(start, stop)
    except _BudgetExhausted:
        return None, search.limit, False
    return found, search.examined, True


def _parallel_search(plan: _Plan, budget: SearchBudget) -> Tuple[Optional[Dict[str, np.ndarray]], int, bool]:
    """按第一个生成元的候选下标连续划分，每个分区分得预算的相应份额"""
    total = plan.p ** plan.free_count
    parts = min(budget.jobs, total)
    chunk = math.ceil(total / parts)
    ranges = [(i * chunk, min(total, (i + 1) * chunk)) for i in range(parts) if i * chunk < total]
    share = math.ceil(budget.max_assignments / len(ranges))
    logger.debug(f"并行搜索: {len(ranges)} 个分区，每个分区预算 {share}")

    results = {}
    with ProcessPoolExecutor(max_workers=budget.jobs) as executor:
        futures = {
            executor.submit(_search_partition, plan, share, start, stop): index
            for index, (start, stop) in enumerate(ranges)
        }
        for future in as_completed(futures):
            index = futures[future]
            results[index] = future.result()
            if not budget.deterministic and results[index][0] is not None:
                for pending in futures:
                    pending.cancel()
                break

    examined = sum(r[1] for r in results.values())
    complete = len(results) == len(ranges) and all(r[2] for r in results.values())
    for index in sorted(results):
        if results[index][0] is not None:
            return results[index][0], examined, complete
    return None, examined, complete


def _wrap_assignment(arrays: Dict[str, np.ndarray], p: int, order: Sequence[str],
                     mod_center: bool) -> GeneratorAssignment:
    return GeneratorAssignment({v: UniTriMatrix(arrays[v], p) for v in order}, mod_center)


def _plan_search(query: MasseyQuery, budget: SearchBudget, mod_center: bool) -> SearchOutcome:
    plan = _build_plan(query, mod_center)
    if budget.jobs > 1:
        arrays, examined, complete = _parallel_search(plan, budget)
    else:
        arrays, examined, complete = _search_partition(plan, budget.max_assignments)

    found = None
    if arrays is not None:
        found = _wrap_assignment(arrays, plan.p, query.digraph.vertices, mod_center)
        result = verify_assignment(query.presentation, found)
        if not result.ok:
            raise ConsistencyError(
                f"搜索返回的赋值未通过关系子 {result.relator.rid} 的校验",
                certificate={'query': query.to_dict(), 'assignment': found.to_dict()},
            )
    logger.debug(f"搜索结束: n={query.n}, mod_center={mod_center}, 检查 {examined} 个候选, "
                 f"{'找到' if found else ('穷尽' if complete else '预算耗尽')}")
    return SearchOutcome(
        found=found,
        examined=examined,
        exhausted=found is None and complete,
        mod_center=mod_center,
        order=plan.order,
        free_entries=plan.free_count,
        space_exponent=plan.free_count * len(plan.order),
        linear_generators=plan.linear_generators,
        budget=budget.max_assignments,
    )


# 零块构造

def _segments(query: MasseyQuery) -> List[Tuple[int, int]]:
    """在零上链处切开序列，返回各段的 [start, stop)"""
    segments = []
    start = 0
    for i, alpha in enumerate(query.sequence):
        if alpha.is_zero():
            segments.append((start, i))
            start = i + 1
    segments.append((start, query.n))
    return segments


SegmentSolver = Callable[[MasseyQuery], Tuple[Optional[GeneratorAssignment], int]]


def _assemble_zero_blocks(query: MasseyQuery, solve: SegmentSolver) -> Optional[Tuple[GeneratorAssignment, int]]:
    """某个 α_i = 0 时，把各段的全表示按块对角拼接

    长度为 0 的段对应 1 阶块，长度为 1 的段对应 U₂ 中的矩阵，更长的段交给 solve。
    某段没有全表示时返回 None。

    Returns:
        (拼接后的全表示, 各段检查的候选总数)
    """
    g = query.digraph
    p = query.prime.p
    blocks: Dict[str, List[UniTriMatrix]] = {v: [] for v in g.vertices}
    examined = 0
    for start, stop in _segments(query):
        length = stop - start
        if length == 0:
            for v in g.vertices:
                blocks[v].append(UniTriMatrix.identity(1, p))
        elif length == 1:
            alpha = query.sequence[start]
            for v in g.vertices:
                blocks[v].append(UniTriMatrix.from_superdiagonal([alpha(v)], p))
        else:
            found, count = solve(query.segment(start, stop))
            examined += count
            if found is None:
                logger.debug(f"零块构造: 段 [{start}, {stop}) 没有全表示")
                return None
            for v in g.vertices:
                blocks[v].append(found[v])

    full = GeneratorAssignment({v: block_diagonal(blocks[v], p) for v in g.vertices})
    result = verify_assignment(query.presentation, full)
    if not result.ok:
        raise ConsistencyError(
            f"零块构造未通过关系子 {result.relator.rid} 的校验",
            certificate={'query': query.to_dict(), 'assignment': full.to_dict()},
        )
    return full, examined


def _zero_block_search(query: MasseyQuery, budget: SearchBudget, mod_center: bool) -> Optional[SearchOutcome]:
    """零块构造，更长的段递归搜索；某段无解时返回 None，由调用方转入整体搜索"""
    def solve(segment: MasseyQuery):
        outcome = search_representation(segment, budget)
        return outcome.found, outcome.examined

    assembled = _assemble_zero_blocks(query, solve)
    if assembled is None:
        return None
    full, examined = assembled
    return SearchOutcome(
        found=full.project() if mod_center else full,
        examined=examined,
        exhausted=False,
        mod_center=mod_center,
        order=search_order(query.digraph),
        route='zero-block',
        budget=budget.max_assignments,
    )


def _search(query: MasseyQuery, budget: Optional[SearchBudget], mod_center: bool) -> SearchOutcome:
    budget = budget or SearchBudget()
    if any(alpha.is_zero() for alpha in query.sequence):
        outcome = _zero_block_search(query, budget, mod_center)
        if outcome is not None:
            return outcome
    return _plan_search(query, budget, mod_center)


def search_bar_representation(query: MasseyQuery, budget: Optional[SearchBudget] = None) -> SearchOutcome:
    """搜索 ρ̄: G → Ū_{n+1}，使 ρ̄_{i,i+1} = α_i

    代表元的角元取 0，关系子缺陷只需属于中心。

    Returns:
        SearchOutcome；found 为中心商层面的赋值，或 None 并附穷尽/预算耗尽标记
    """
    return _search(query, budget, mod_center=True)


def search_representation(query: MasseyQuery, budget: Optional[SearchBudget] = None) -> SearchOutcome:
    """搜索 ρ: G → U_{n+1}，使 ρ_{i,i+1} = α_i，全部关系子精确成立"""
    return _search(query, budget, mod_center=False)


# 判定

@dataclass(frozen=True)
class MasseyVerdict:
    """Massey 积的判定结果

    Vanishes 携带全表示 witness；Essential 携带中心商见证与全搜索的穷尽证书；
    NotDefined 携带中心商搜索的穷尽证书。n = 2 时附带杯积 cup。
    """
    status: MasseyStatus
    query: MasseyQuery
    budget: SearchBudget
    witness: Optional[GeneratorAssignment] = None
    bar_witness: Optional[GeneratorAssignment] = None
    full_search: Optional[SearchOutcome] = None
    bar_search: Optional[SearchOutcome] = None
    cup: Optional[ExteriorElement] = None

    def to_dict(self) -> dict:
        data = {'status': self.status.value}
        data.update(self.query.to_dict())
        data['witness'] = self.witness.to_dict() if self.witness else None
        data['bar_witness'] = self.bar_witness.to_dict() if self.bar_witness else None
        data['full_search'] = self.full_search.to_dict() if self.full_search else None
        data['bar_search'] = self.bar_search.to_dict() if self.bar_search else None
        data['budget'] = self.budget.to_dict()
        if self.cup is not None:
            data['cup'] = self.cup.to_dict()
        return data


def _status_from_full(query: MasseyQuery, budget: SearchBudget, full: SearchOutcome) -> MasseyVerdict:
    if full.found is not None:
        bar_witness = full.found.project()
        if not verify_assignment(query.presentation, bar_witness).ok:
            raise ConsistencyError(
                "全表示投影到中心商后不再是同态",
                certificate={'query': query.to_dict(), 'assignment': full.found.to_dict()},
            )
        return MasseyVerdict(MasseyStatus.VANISHES, query, budget, witness=full.found,
                             bar_witness=bar_witness, full_search=full)
    if not full.exhausted:
        return MasseyVerdict(MasseyStatus.INDETERMINATE, query, budget, full_search=full)

    bar = search_bar_representation(query, budget)
    if bar.found is not None:
        if not consecutive_cups_vanish(query.sequence):
            raise ConsistencyError(
                "Massey 积有定义但相邻杯积不全为零",
                certificate={'query': query.to_dict(), 'assignment': bar.found.to_dict()},
            )
        return MasseyVerdict(MasseyStatus.ESSENTIAL, query, budget, witness=bar.found,
                             bar_witness=bar.found, full_search=full, bar_search=bar)
    status = MasseyStatus.NOT_DEFINED if bar.exhausted else MasseyStatus.INDETERMINATE
    return MasseyVerdict(status, query, budget, full_search=full, bar_search=bar)


def _pair_status(query: MasseyQuery, budget: SearchBudget) -> MasseyVerdict:
    """n = 2：⟨α₁,α₂⟩ = {α₁⌣α₂}，状态由杯积决定，搜索结果用于交叉校验"""
    product = cup(*query.sequence)
    full = search_representation(query, budget)
    if product.is_zero():
        if full.exhausted:
            raise ConsistencyError("杯积为零但不存在 U₃ 表示", certificate=query.to_dict())
        bar_witness = full.found.project() if full.found else None
        return MasseyVerdict(MasseyStatus.VANISHES, query, budget, witness=full.found,
                             bar_witness=bar_witness, full_search=full, cup=product)
    if full.found is not None:
        raise ConsistencyError(
            "杯积非零却找到了 U₃ 表示",
            certificate={'query': query.to_dict(), 'assignment': full.found.to_dict()},
        )
    bar = search_bar_representation(query, budget)
    return MasseyVerdict(MasseyStatus.ESSENTIAL, query, budget, witness=bar.found,
                         bar_witness=bar.found, full_search=full, bar_search=bar, cup=product)


def massey_status(query: MasseyQuery, budget: Optional[SearchBudget] = None) -> MasseyVerdict:
    """判定 ⟨α₁,…,α_n⟩ 是无定义、消失还是本质的

    相邻杯积不全为零时只做中心商搜索（有定义则为内部矛盾）；否则先做全表示搜索，
    失败且穷尽后再做中心商搜索。

    Raises:
        ConsistencyError: 搜索结果与杯积条件矛盾
    """
    budget = budget or SearchBudget()
    if query.n == 2:
        return _pair_status(query, budget)

    if not consecutive_cups_vanish(query.sequence):
        bar = search_bar_representation(query, budget)
        if bar.found is not None:
            raise ConsistencyError(
                "Massey 积有定义但相邻杯积不全为零",
                certificate={'query': query.to_dict(), 'assignment': bar.found.to_dict()},
            )
        status = MasseyStatus.NOT_DEFINED if bar.exhausted else MasseyStatus.INDETERMINATE
        return MasseyVerdict(status, query, budget, bar_search=bar)

    return _status_from_full(query, budget, search_representation(query, budget))


@dataclass(frozen=True)
class WitnessCheck:
    """独立复核一个见证：关系子缺陷与超对角线读数"""
    relators: VerificationResult
    readout_mismatches: Tuple[Tuple[int, str], ...]

    @property
    def ok(self) -> bool:
        return self.relators.ok and not self.readout_mismatches

    def to_dict(self) -> dict:
        return {
            'ok': self.ok,
            'relators': self.relators.to_dict(),
            'readout_mismatches': [{'i': i, 'vertex': v} for i, v in self.readout_mismatches],
        }


def verify_witness(query: MasseyQuery, assignment: GeneratorAssignment) -> WitnessCheck:
    """检查赋值定义同态，且每个 ρ_{i,i+1} 等于 α_i

    Raises:
        InputError: 矩阵阶数不等于 n + 1
    """
    if assignment.size != query.n + 1:
        raise InputError(f"见证矩阵阶数 {assignment.size} 与 n+1={query.n + 1} 不符")
    relators = verify_assignment(query.presentation, assignment)
    mismatches = []
    for i, alpha in enumerate(query.sequence, start=1):
        readout = assignment.superdiagonal_readout(i)
        for v in query.digraph.vertices:
            if readout[v] != alpha(v):
                mismatches.append((i, v))
    return WitnessCheck(relators=relators, readout_mismatches=tuple(mismatches))


# 非 special-clique 三元组上的见证

def _witness_size(pr: Prime) -> int:
    size = pr.q + 1
    if size > MAX_SIZE:
        raise ResourceLimitError(f"q={pr.q} 需要 {size} 阶矩阵，超过上限 {MAX_SIZE}")
    return size


def _checked_bar_witness(g: Digraph, pr: Prime, images: Dict[str, UniTriMatrix]) -> GeneratorAssignment:
    assignment = GeneratorAssignment(images, mod_center=True)
    result = verify_assignment(presentation(g, pr), assignment)
    if not result.ok:
        raise ConsistencyError(
            f"显式见证未通过关系子 {result.relator.rid}",
            certificate={'digraph': g.to_dict(), 'assignment': assignment.to_dict()},
        )
    return assignment


def witness_type_61(g: Digraph, roles: Sequence[str], pr: Prime) -> GeneratorAssignment:
    """不相交尾三元组 (u, v, w) 上的中心商见证

    u ↦ A（超对角线全 1），v ↦ C = I + E_{1,2} + E_{q,q+1}，其余顶点 ↦ I。

    Raises:
        PreconditionError: 角色不构成不相交尾构型
    """
    ob = check_obstruction(g, roles, ObstructionKind.DISJOINT_TAILS)
    size = _witness_size(pr)
    identity = UniTriMatrix.identity(size, pr.p)
    images = {x: identity for x in g.vertices}
    images[ob.u] = UniTriMatrix.jordan(size, pr.p)
    images[ob.v] = UniTriMatrix.from_entries(size, pr.p, {(1, 2): 1, (pr.q, pr.q + 1): 1})
    return _checked_bar_witness(g, pr, images)


def witness_type_62(g: Digraph, roles: Sequence[str], pr: Prime) -> GeneratorAssignment:
    """相连尾三元组 (u, v, w) 上的中心商见证：u, v ↦ A，其余顶点 ↦ I

    Raises:
        PreconditionError: 角色不构成相连尾构型
    """
    ob = check_obstruction(g, roles, ObstructionKind.JOINED_TAILS)
    size = _witness_size(pr)
    identity = UniTriMatrix.identity(size, pr.p)
    jordan = UniTriMatrix.jordan(size, pr.p)
    images = {x: identity for x in g.vertices}
    images[ob.u] = jordan
    images[ob.v] = jordan
    return _checked_bar_witness(g, pr, images)


def designated_sequence(g: Digraph, ob: Obstruction, pr: Prime) -> Tuple[Cochain1, ...]:
    """阻碍三元组对应的 q 重本质 Massey 积序列

    不相交尾: (α, β, …, β, α)，β 重复 q−2 次；相连尾: (α, …, α)，共 q 项。
    其中 α = u* + v*，β = u*。
    """
    alpha = Cochain1.combination(g, pr.p, {ob.u: 1, ob.v: 1})
    if ob.kind is ObstructionKind.DISJOINT_TAILS:
        beta = Cochain1.dual(g, pr.p, ob.u)
        return (alpha,) + (beta,) * (pr.q - 2) + (alpha,)
    return (alpha,) * pr.q


def obstruction_witness(g: Digraph, ob: Obstruction, pr: Prime) -> Tuple[MasseyQuery, GeneratorAssignment]:
    """阻碍三元组的序列查询及其中心商见证"""
    query = MasseyQuery.build(g, pr, designated_sequence(g, ob, pr))
    if ob.kind is ObstructionKind.DISJOINT_TAILS:
        witness = witness_type_61(g, ob.roles, pr)
    else:
        witness = witness_type_62(g, ob.roles, pr)
    return query, witness


# special-clique 上的直接构造

class ConstructionRoute(Enum):
    DIRECT = 'direct'
    ZERO_BLOCK = 'zero-block'
    FALLBACK = 'fallback'


@dataclass(frozen=True)
class VanishingResult:
    """construct_vanishing_hom 的结果

    assignment 为 None 只发生在回退搜索预算耗尽时。
    cases 记录每个特殊顶点走的分支 ('case1' / 'case2')；零块路线按段依次记录。
    零块路线中有段回退到搜索时，reason 给出各段的原因。
    """
    assignment: Optional[GeneratorAssignment]
    route: ConstructionRoute
    reason: Optional[str] = None
    cases: Tuple[Tuple[str, str], ...] = ()
    search: Optional[SearchOutcome] = None

    @property
    def is_fallback(self) -> bool:
        return self.route is ConstructionRoute.FALLBACK

    @property
    def searched(self) -> bool:
        """整体或某一段用到了回退搜索"""
        return self.is_fallback or (self.route is ConstructionRoute.ZERO_BLOCK and self.reason is not None)

    def to_dict(self) -> dict:
        return {
            'route': self.route.value,
            'reason': self.reason,
            'cases': [{'special': w, 'case': c} for w, c in self.cases],
            'assignment': self.assignment.to_dict() if self.assignment else None,
            'search': self.search.to_dict() if self.search else None,
        }


class _ConstructionConflict(Exception):
    pass


def _direct_construction(query: MasseyQuery) -> Tuple[Dict[str, UniTriMatrix], List[Tuple[str, str]]]:
    g = query.digraph
    p, q = query.prime.p, query.prime.q
    seq = query.sequence
    images = {v: UniTriMatrix.from_superdiagonal([alpha(v) for alpha in seq], p) for v in g.vertices}
    replaced_by: Dict[str, str] = {}
    cases = []

    for w in special_vertices(g):
        star = g.sort((w,) + g.neighbors(w))
        restrictions = np.array([[alpha(x) for x in star] for alpha in seq], dtype=np.int64)
        rank = rank_mod_p(restrictions, p)
        if rank > 1:
            raise _ConstructionConflict(f"{w} 的星图上各 α_i 的限制张成 {rank} 维空间")
        if rank == 0:
            cases.append((w, 'case1'))
            continue

        bar_row = next(row for row in restrictions if row.any())
        bar = {x: int(value) for x, value in zip(star, bar_row)}
        ordinary = [x for x in star if x != w]
        base = next((x for x in ordinary if bar[x]), None)
        if base is None:
            cases.append((w, 'case1'))
            continue

        inverse = pow(bar[base], -1, p)
        a_u = images[base]
        if not a_u.is_superdiagonal_only():
            raise _ConstructionConflict(f"{base} 的矩阵已被替换为非超对角形式，无法逐块构造 B")
        for x in ordinary:
            replacement = a_u ** (bar[x] * inverse % p)
            if x in replaced_by and images[x] != replacement:
                raise _ConstructionConflict(f"{x} 在 {replaced_by[x]} 与 {w} 的星图中得到不同的矩阵")
            images[x] = replacement
            replaced_by.setdefault(x, w)
        images[w] = power_conjugator(a_u, q) @ (a_u ** (bar[w] * inverse % p))
        cases.append((w, 'case2'))
    return images, cases


def _fallback(query: MasseyQuery, budget: Optional[SearchBudget], reason: str,
              cases: Sequence[Tuple[str, str]] = ()) -> VanishingResult:
    add_warning(f"直接构造失败，转入搜索: {reason}")
    outcome = search_representation(query, budget)
    if outcome.found is not None:
        return VanishingResult(outcome.found, ConstructionRoute.FALLBACK, reason, tuple(cases), outcome)
    if outcome.exhausted:
        raise ConsistencyError(
            "special-clique 有向图上相邻杯积为零的序列没有全表示（强消失性质的反例）",
            certificate={'query': query.to_dict(), 'search': outcome.to_dict(), 'reason': reason},
        )
    return VanishingResult(None, ConstructionRoute.FALLBACK, reason, tuple(cases), outcome)


def construct_vanishing_hom(g: Digraph, pr: Prime, seq: Sequence[Cochain1],
                            budget: Optional[SearchBudget] = None) -> VanishingResult:
    """在 special-clique 有向图上构造 ρ: G → U_{n+1}，使 ρ_{i,i+1} = α_i

    普通顶点取 A(v) = I + Σ α_i(v) E_{i,i+1}。对每个特殊顶点 w：
    星图上的限制全在普通顶点处为零时保留 A(w)（Case 1）；否则取最小的
    ᾱ(u) ≠ 0 的普通顶点 u，把星图中的普通顶点换成 A(u) 的幂，并令
    A'(w) = B·A(u)^{ᾱ(w)/ᾱ(u)}，其中 [B, A(u)] = A(u)^q（Case 2）。
    某个 α_i = 0 时先在零处切段，各段分别构造后按块对角拼接。
    限制的秩大于 1、星图重叠处矩阵冲突或校验失败时回退到搜索。

    Raises:
        PreconditionError: 有向图不是 special-clique，或相邻杯积不全为零
        ConsistencyError: 回退搜索穷尽仍无解
    """
    classification = classify(g)
    if not classification.verdict.is_special_clique:
        raise PreconditionError(
            f"有向图不是 special-clique（{classification.verdict.value}）",
            violation=classification.violations[0],
        )
    query = MasseyQuery.build(g, pr, seq)
    if not consecutive_cups_vanish(query.sequence):
        raise PreconditionError("序列的相邻杯积不全为零")
    return _construct(query, budget)


def _construct(query: MasseyQuery, budget: Optional[SearchBudget]) -> VanishingResult:
    if any(alpha.is_zero() for alpha in query.sequence):
        return _construct_zero_blocks(query, budget)
    try:
        images, cases = _direct_construction(query)
    except _ConstructionConflict as e:
        return _fallback(query, budget, str(e))

    assignment = GeneratorAssignment(images)
    check = verify_witness(query, assignment)
    if not check.ok:
        failing = check.relators.relator.rid if not check.relators.ok else '超对角线读数'
        return _fallback(query, budget, f"直接构造未通过校验: {failing}", cases)
    return VanishingResult(assignment, ConstructionRoute.DIRECT, cases=tuple(cases))


def _construct_zero_blocks(query: MasseyQuery, budget: Optional[SearchBudget]) -> VanishingResult:
    """含零项的序列：各段分别直接构造，再按块对角拼接"""
    cases: List[Tuple[str, str]] = []
    segment_fallbacks: List[str] = []

    def solve(segment: MasseyQuery):
        result = _construct(segment, budget)
        cases.extend(result.cases)
        if result.is_fallback:
            segment_fallbacks.append(result.reason)
        examined = result.search.examined if result.search else 0
        return result.assignment, examined

    assembled = _assemble_zero_blocks(query, solve)
    if assembled is None:
        return _fallback(query, budget, "零块构造的某一段没有得到全表示", cases)
    reason = '; '.join(segment_fallbacks) if segment_fallbacks else None
    return VanishingResult(assembled[0], ConstructionRoute.ZERO_BLOCK, reason, tuple(cases))


# 强消失报告

@dataclass(frozen=True)
class SequenceFailure:
    sequence: Tuple[Cochain1, ...]
    verdict: MasseyVerdict

    def to_dict(self) -> dict:
        return {
            'sequence': [alpha.as_dict() for alpha in self.sequence],
            'status': self.verdict.status.value,
            'full_search': self.verdict.full_search.to_dict() if self.verdict.full_search else None,
        }


@dataclass(frozen=True)
class StrongVanishingReport:
    """强 n-Massey 消失性质的检查报告

    exhaustive 为 True 时 checked 覆盖了全部相邻杯积为零的序列。
    """
    digraph: Digraph
    prime: Prime
    n: int
    total_sequences: int
    checked: int
    vanished: int
    constructed: int
    fallbacks: int
    zero_block: int
    indeterminate: int
    failures: Tuple[SequenceFailure, ...]
    exhaustive: bool
    sampled: bool = False
    seed: Optional[int] = None
    stopped_early: bool = False

    @property
    def holds(self) -> bool:
        return not self.failures and not self.indeterminate

    def to_dict(self) -> dict:
        return {
            'digraph': self.digraph.to_dict(),
            'prime': self.prime.to_dict(),
            'n': self.n,
            'total_sequences': self.total_sequences,
            'checked': self.checked,
            'vanished': self.vanished,
            'constructed': self.constructed,
            'fallbacks': self.fallbacks,
            'zero_block': self.zero_block,
            'indeterminate': self.indeterminate,
            'failures': [f.to_dict() for f in self.failures],
            'exhaustive': self.exhaustive,
            'sampled': self.sampled,
            'seed': self.seed,
            'stopped_early': self.stopped_early,
        }


MAX_COCHAINS = 6561


def _all_cochains(g: Digraph, p: int) -> np.ndarray:
    if p ** len(g) > MAX_COCHAINS:
        raise ResourceLimitError(f"H¹ 有 {p ** len(g)} 个元素，超过枚举上限 {MAX_COCHAINS}")
    return np.array(list(itertools.product(range(p), repeat=len(g))), dtype=np.int64).reshape(-1, len(g))


def _cup_compatibility(g: Digraph, p: int, cochains: np.ndarray) -> np.ndarray:
    """compat[a, b] 为 True 当且仅当 cochains[a] ⌣ cochains[b] = 0"""
    count = len(cochains)
    compat = np.ones((count, count), dtype=bool)
    for edge in g.edge_classes():
        i, j = g.index(edge.tail), g.index(edge.head)
        coefficient = np.outer(cochains[:, i], cochains[:, j]) - np.outer(cochains[:, j], cochains[:, i])
        compat &= (coefficient % p) == 0
    return compat


def _compatible_sequences(compat: np.ndarray, n: int) -> Iterator[Tuple[int, ...]]:
    """按字典序生成相邻两项相容的下标序列"""
    successors = [tuple(int(b) for b in np.nonzero(row)[0]) for row in compat]

    def extend(prefix: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        if len(prefix) == n:
            yield prefix
            return
        for b in successors[prefix[-1]]:
            yield from extend(prefix + (b,))

    for a in range(len(compat)):
        yield from extend((a,))


def _sampled_sequences(compat: np.ndarray, n: int, count: int, seed: Optional[int]) -> Iterator[Tuple[int, ...]]:
    """随机游走抽样：α₁ 均匀，α_{i+1} 在与 α_i 相容的上链中均匀"""
    rng = np.random.default_rng(seed)
    successors = [np.nonzero(row)[0] for row in compat]
    for _ in range(count):
        sequence = [int(rng.integers(len(compat)))]
        while len(sequence) < n:
            sequence.append(int(rng.choice(successors[sequence[-1]])))
        yield tuple(sequence)


def strong_vanishing_report(g: Digraph, pr: Prime, n: int, budget: Optional[SearchBudget] = None, *,
                            max_failures: Optional[int] = None, sample: Optional[int] = None,
                            seed: Optional[int] = None,
                            priority: Sequence[Sequence[Cochain1]] = ()) -> StrongVanishingReport:
    """检查全部（或抽样的）相邻杯积为零的长度 n 序列是否都给出消失的 Massey 积

    special-clique 输入走直接构造，其他输入走搜索。priority 中的序列最先检查。
    超过 budget.max_sequences 时报告标记为非穷尽。

    Raises:
        InputError: n < 3
    """
    if n < 3:
        raise InputError(f"强消失报告要求 n ≥ 3，收到 {n}")
    budget = budget or SearchBudget()
    p = pr.p
    pres = presentation(g, pr)
    special_clique = classify(g).verdict.is_special_clique
    cochains = _all_cochains(g, p)
    compat = _cup_compatibility(g, p, cochains)
    total = p ** (len(g) * n)
    limit = budget.max_sequences

    def as_sequence(indices: Tuple[int, ...]) -> Tuple[Cochain1, ...]:
        return tuple(Cochain1.from_values(g, p, cochains[i].tolist()) for i in indices)

    def chained() -> Iterator[Tuple[Cochain1, ...]]:
        seen = set()
        for seq in priority:
            seq = tuple(seq)
            if len(seq) == n and consecutive_cups_vanish(seq):
                seen.add(tuple(alpha.values for alpha in seq))
                yield seq
        source = _sampled_sequences(compat, n, sample, seed) if sample else _compatible_sequences(compat, n)
        for indices in source:
            seq = as_sequence(indices)
            if tuple(alpha.values for alpha in seq) in seen:
                continue
            yield seq

    counts = {'checked': 0, 'vanished': 0, 'constructed': 0, 'fallbacks': 0, 'zero_block': 0, 'indeterminate': 0}
    failures: List[SequenceFailure] = []
    exhaustive = not sample
    stopped_early = False
    target = min(limit, sample) if sample else limit

    for seq in chained():
        if counts['checked'] >= target:
            exhaustive = False
            break
        counts['checked'] += 1
        if any(alpha.is_zero() for alpha in seq):
            counts['zero_block'] += 1
        query = MasseyQuery(pres, seq)

        if special_clique:
            result = _construct(query, budget)
            if result.assignment is None:
                counts['indeterminate'] += 1
                continue
            counts['vanished'] += 1
            counts['fallbacks' if result.searched else 'constructed'] += 1
        else:
            full = search_representation(query, budget)
            if full.found is not None:
                counts['vanished'] += 1
            elif full.exhausted:
                failures.append(SequenceFailure(seq, _status_from_full(query, budget, full)))
                if max_failures is not None and len(failures) >= max_failures:
                    stopped_early = True
                    exhaustive = False
                    break
            else:
                counts['indeterminate'] += 1

        if counts['checked'] % 500 == 0:
            set_progress(min(99, counts['checked'] * 100 // target), f"已检查 {counts['checked']} 个序列")

    if counts['indeterminate']:
        exhaustive = False
    logger.info(f"强消失报告: {counts['checked']} 个序列，{len(failures)} 个失败，"
                f"{'穷尽' if exhaustive else '非穷尽'}")
    return StrongVanishingReport(
        digraph=g,
        prime=pr,
        n=n,
        total_sequences=total,
        failures=tuple(failures),
        exhaustive=exhaustive,
        sampled=bool(sample),
        seed=seed,
        stopped_early=stopped_early,
        **counts,
    )
