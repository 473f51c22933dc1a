#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""定向 pro-p 直角 Artin 群的表示

由 (Γ, q) 构造生成元与关系子：无向边 {u,v} 给出 [u,v] = 1，
单向边 (v,w) 给出 w v w⁻¹ = v^{1+q}。有限群 U_{n+1}(F_p) 中的生成元赋值
当且仅当所有关系子的缺陷平凡时定义同态。
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Mapping, Optional, Tuple

from raagy.algebra.digraph import Digraph, classify, connected_components, induced, is_clique
from raagy.algebra.exterior import Prime, relator_id
from raagy.algebra.unitriangular import UniTriMatrix, center_project, commutator
from raagy.core.errors import InputError, PreconditionError

logger = logging.getLogger(__name__)


class RelatorKind(Enum):
    COMMUTE = 'commute'
    CONJUGATE = 'conjugate'


@dataclass(frozen=True)
class Relator:
    """一条关系子

    COMMUTE: tail、head 为按全序排列的两个端点，关系 [tail, head] = 1。
    CONJUGATE: 单向边 (tail, head)，关系 head·tail·head⁻¹ = tail^{exponent}，exponent = 1 + q。
    """
    kind: RelatorKind
    tail: str
    head: str
    exponent: int = 1

    @property
    def rid(self) -> str:
        return relator_id(self.tail, self.head)

    @property
    def generators(self) -> Tuple[str, str]:
        return self.tail, self.head

    def word(self) -> str:
        if self.kind is RelatorKind.COMMUTE:
            return f"[{self.tail},{self.head}]"
        return f"[{self.head},{self.tail}]{self.tail}^-{self.exponent - 1}"

    def to_dict(self) -> dict:
        data = {'id': self.rid, 'kind': self.kind.value, 'word': self.word()}
        if self.kind is RelatorKind.COMMUTE:
            data['generators'] = [self.tail, self.head]
        else:
            data.update({'head': self.head, 'tail': self.tail, 'exponent': self.exponent})
        return data


@dataclass(frozen=True)
class RaagPresentation:
    digraph: Digraph
    prime: Prime
    generators: Tuple[str, ...]
    relators: Tuple[Relator, ...]

    @property
    def q(self) -> int:
        return self.prime.q

    def relator(self, rid: str) -> Relator:
        for r in self.relators:
            if r.rid == rid:
                return r
        raise InputError(f"未知关系子: {rid}")

    def to_dict(self) -> dict:
        return {
            'prime': self.prime.to_dict(),
            'generators': list(self.generators),
            'relators': [r.to_dict() for r in self.relators],
        }


def presentation(g: Digraph, pr: Prime) -> RaagPresentation:
    """每个 |E| 元素一条关系子，顺序与 edge_classes 一致"""
    relators = []
    for edge in g.edge_classes():
        if edge.is_directed:
            relators.append(Relator(RelatorKind.CONJUGATE, edge.tail, edge.head, 1 + pr.q))
        else:
            relators.append(Relator(RelatorKind.COMMUTE, edge.tail, edge.head))
    return RaagPresentation(digraph=g, prime=pr, generators=g.vertices, relators=tuple(relators))


def complete_special_digraph(d: int) -> Digraph:
    """d 个两两相连的普通顶点 v1..vd 与一个汇点 w，每个 vi→w"""
    if d < 0:
        raise InputError(f"d 必须非负: {d}")
    ordinary = [f"v{i + 1}" for i in range(d)]
    two_way = [(a, b) for i, a in enumerate(ordinary) for b in ordinary[i + 1:]]
    return Digraph.build(ordinary + ['w'], one_way=[(v, 'w') for v in ordinary], two_way=two_way)


@dataclass(frozen=True, eq=False)
class GeneratorAssignment:
    """生成元 → 矩阵；mod_center 时矩阵视为中心商的代表元（角元归一为 0）

    Raises:
        InputError: 矩阵尺寸或模数不一致
    """
    images: Mapping[str, UniTriMatrix]
    mod_center: bool = False

    def __post_init__(self):
        images = dict(self.images)
        if not images:
            raise InputError("赋值不能为空")
        first = next(iter(images.values()))
        for name, matrix in images.items():
            if matrix.size != first.size or matrix.p != first.p:
                raise InputError(f"生成元 {name} 的矩阵尺寸或模数与其他生成元不一致")
        if self.mod_center:
            images = {name: center_project(m).representative for name, m in images.items()}
        object.__setattr__(self, 'images', images)

    @classmethod
    def constant(cls, generators, matrix: UniTriMatrix, mod_center: bool = False) -> 'GeneratorAssignment':
        return cls({g: matrix for g in generators}, mod_center)

    @property
    def size(self) -> int:
        return next(iter(self.images.values())).size

    @property
    def p(self) -> int:
        return next(iter(self.images.values())).p

    def __getitem__(self, generator: str) -> UniTriMatrix:
        try:
            return self.images[generator]
        except KeyError:
            raise InputError(f"生成元 {generator} 没有赋值") from None

    def superdiagonal_readout(self, i: int) -> Dict[str, int]:
        """ρ_{i,i+1}：每个生成元像的第 i 个超对角元（1 起始）"""
        return {name: m.entry(i, i + 1) for name, m in self.images.items()}

    def conjugate_by(self, m: UniTriMatrix) -> 'GeneratorAssignment':
        return GeneratorAssignment({name: x.conjugate_by(m) for name, x in self.images.items()}, self.mod_center)

    def project(self) -> 'GeneratorAssignment':
        """投影到中心商"""
        return GeneratorAssignment(self.images, mod_center=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GeneratorAssignment):
            return NotImplemented
        return self.mod_center == other.mod_center and self.images == other.images

    def __hash__(self) -> int:
        return hash((self.mod_center, tuple(sorted(self.images.items(), key=lambda kv: kv[0]))))

    def to_dict(self) -> dict:
        return {
            'mod_center': self.mod_center,
            'images': {name: m.to_dict() for name, m in self.images.items()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'GeneratorAssignment':
        if not isinstance(data, dict) or 'images' not in data:
            raise InputError("赋值JSON必须包含 images 字段")
        images = {name: UniTriMatrix.from_dict(m) for name, m in data['images'].items()}
        return cls(images, bool(data.get('mod_center', False)))


def evaluate_relator(r: Relator, a: GeneratorAssignment) -> UniTriMatrix:
    """关系子缺陷 LHS·RHS⁻¹

    COMMUTE: [A_u, A_v]；CONJUGATE: (A_w A_v A_w⁻¹)·(A_v^{1+q})⁻¹。

    Raises:
        InputError: 缺少生成元的赋值
    """
    if r.kind is RelatorKind.COMMUTE:
        return commutator(a[r.tail], a[r.head])
    w, v = a[r.head], a[r.tail]
    return w @ v @ w.inv() @ (v ** r.exponent).inv()


def _trivial(defect: UniTriMatrix, mod_center: bool) -> bool:
    return defect.is_central() if mod_center else defect.is_identity()


@dataclass(frozen=True)
class VerificationResult:
    """ok 为 True 时所有缺陷平凡；否则 relator/defect 给出第一条失败的关系子"""
    ok: bool
    relator: Optional[Relator] = None
    defect: Optional[UniTriMatrix] = None
    statuses: Tuple[Tuple[str, bool], ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        data = {'ok': self.ok, 'relators': [{'id': rid, 'ok': ok} for rid, ok in self.statuses]}
        if not self.ok:
            data['failing_relator'] = self.relator.to_dict()
            data['defect'] = self.defect.to_dict()
        return data


def verify_assignment(pres: RaagPresentation, a: GeneratorAssignment) -> VerificationResult:
    """按关系子顺序检查全部缺陷；mod_center 时缺陷只需属于中心

    Raises:
        InputError: 赋值缺少或多出生成元，或模数与表示不符
    """
    missing = [g for g in pres.generators if g not in a.images]
    extra = sorted(g for g in a.images if g not in pres.digraph)
    if missing or extra:
        raise InputError(f"赋值与生成元不符（缺少 {missing}，多出 {extra}）")
    if a.p != pres.prime.p:
        raise InputError(f"赋值的模数 {a.p} 与表示的 p={pres.prime.p} 不一致")

    statuses = []
    first_failure = None
    for r in pres.relators:
        defect = evaluate_relator(r, a)
        ok = _trivial(defect, a.mod_center)
        statuses.append((r.rid, ok))
        if not ok and first_failure is None:
            first_failure = (r, defect)
    if first_failure is None:
        return VerificationResult(ok=True, statuses=tuple(statuses))
    logger.debug(f"关系子 {first_failure[0].rid} 未满足")
    return VerificationResult(ok=False, relator=first_failure[0], defect=first_failure[1], statuses=tuple(statuses))


def clique_subgroup_presentation(pres: RaagPresentation, sub) -> RaagPresentation:
    """团 sub 上诱导子图的表示，其生成元可视为环境群的子群生成元

    Raises:
        PreconditionError: 环境有向图不是 special，或 sub 不是团
    """
    g = pres.digraph
    verdict = classify(g).verdict
    if not verdict.is_special:
        raise PreconditionError(f"环境有向图必须是 special，当前为 {verdict.value}")
    verts = g.check_vertices(sub)
    if not is_clique(g, verts):
        raise PreconditionError(f"{list(verts)} 不是团")
    return presentation(induced(g, verts), pres.prime)


def free_factors(pres: RaagPresentation) -> List[RaagPresentation]:
    """按 |Γ| 的连通分支拆成自由积因子"""
    return [presentation(induced(pres.digraph, c), pres.prime) for c in connected_components(pres.digraph)]
