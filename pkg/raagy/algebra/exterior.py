#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""外 Stanley–Reisner F_p 代数

以团为基的分次代数 Λ(Γ*)、一维上链、杯积模型与限制映射。
基中的团一律按顶点全序排序，符号由排序置换的奇偶性给出。
"""

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from raagy.algebra.digraph import Digraph, classify, clique_number, cliques, induced
from raagy.algebra.linalg import is_prime, rank_mod_p
from raagy.core.errors import InputError


@dataclass(frozen=True)
class Prime:
    """素数 p 与指数 f，q = p^f

    Raises:
        InputError: p 不是素数，f < 1，或 p = 2 且 f = 1
    """
    p: int
    f: int = 1

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise InputError(f"p={self.p} 不是素数")
        if not isinstance(self.f, int) or self.f < 1:
            raise InputError(f"指数 f={self.f} 必须 ≥ 1")
        if self.p == 2 and self.f < 2:
            raise InputError("p=2 时要求 f ≥ 2")

    @property
    def q(self) -> int:
        return self.p ** self.f

    def to_dict(self) -> dict:
        return {'p': self.p, 'f': self.f, 'q': self.q}


def relator_id(tail: str, head: str) -> str:
    """关系子 r_{tail,head} 的标识；无向边按全序取 (较小, 较大)"""
    return f"r[{tail},{head}]"


def _check_same_parent(x, y):
    if x.digraph != y.digraph or x.p != y.p:
        raise InputError("两个元素不属于同一个有向图与素数")


class Cochain1:
    """一维上同调类：每个顶点一个模 p 剩余

    Args:
        digraph: 所在有向图
        p: 素数模
        coefficients: 顶点 → 系数，键集必须恰为全部顶点

    Raises:
        InputError: 缺少或多出顶点
    """

    __slots__ = ('digraph', 'p', 'values')

    def __init__(self, digraph: Digraph, p: int, coefficients: Mapping[str, int]):
        keys = set(coefficients)
        missing = [v for v in digraph.vertices if v not in keys]
        extra = sorted(k for k in keys if k not in digraph)
        if missing or extra:
            raise InputError(f"上链的定义域必须恰为顶点集（缺少 {missing}，多出 {extra}）")
        self.digraph = digraph
        self.p = p
        self.values = tuple(int(coefficients[v]) % p for v in digraph.vertices)

    @classmethod
    def from_values(cls, digraph: Digraph, p: int, values: Sequence[int]) -> 'Cochain1':
        if len(values) != len(digraph):
            raise InputError("系数个数与顶点数不一致")
        return cls(digraph, p, dict(zip(digraph.vertices, values)))

    @classmethod
    def zero(cls, digraph: Digraph, p: int) -> 'Cochain1':
        return cls.from_values(digraph, p, [0] * len(digraph))

    @classmethod
    def dual(cls, digraph: Digraph, p: int, v: str) -> 'Cochain1':
        """对偶基元素 v*"""
        digraph.index(v)
        return cls(digraph, p, {x: int(x == v) for x in digraph.vertices})

    @classmethod
    def combination(cls, digraph: Digraph, p: int, terms: Mapping[str, int]) -> 'Cochain1':
        """线性组合 Σ c_v v*，未出现的顶点系数为 0"""
        for v in terms:
            digraph.index(v)
        return cls(digraph, p, {v: terms.get(v, 0) for v in digraph.vertices})

    def __call__(self, v: str) -> int:
        return self.values[self.digraph.index(v)]

    def as_dict(self) -> Dict[str, int]:
        return dict(zip(self.digraph.vertices, self.values))

    def is_zero(self) -> bool:
        return not any(self.values)

    def __add__(self, other: 'Cochain1') -> 'Cochain1':
        _check_same_parent(self, other)
        return Cochain1.from_values(self.digraph, self.p, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: 'Cochain1') -> 'Cochain1':
        return self + (-other)

    def __neg__(self) -> 'Cochain1':
        return self.scale(-1)

    def scale(self, c: int) -> 'Cochain1':
        return Cochain1.from_values(self.digraph, self.p, [c * a for a in self.values])

    def __rmul__(self, c: int) -> 'Cochain1':
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain1):
            return NotImplemented
        return self.digraph == other.digraph and self.p == other.p and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.digraph, self.p, self.values))

    def __repr__(self) -> str:
        terms = []
        for v, c in zip(self.digraph.vertices, self.values):
            if c:
                terms.append(v if c == 1 else f"{c}{v}")
        return '+'.join(terms) if terms else '0'

    def to_dict(self) -> Dict[str, int]:
        return self.as_dict()


def _sort_with_sign(g: Digraph, key: Sequence[str]) -> Tuple[Tuple[str, ...], int]:
    """把顶点序列排序，返回 (排序结果, 置换符号)；有重复顶点时符号为 0"""
    if len(set(key)) != len(key):
        return tuple(key), 0
    positions = [g.index(v) for v in key]
    inversions = sum(1 for i, j in itertools.combinations(range(len(positions)), 2) if positions[i] > positions[j])
    return g.sort(key), (-1 if inversions % 2 else 1)


def _clique_label(clique: Sequence[str]) -> str:
    return '{' + ','.join(clique) + '}'


class ExteriorElement:
    """Λ_k(Γ*) 中的齐次元素，以 k-团为基

    键可以按任意顺序给出，构造时按全序排序并乘以置换符号。

    Raises:
        InputError: 键的大小与次数不符，或键不是团
    """

    __slots__ = ('digraph', 'p', 'degree', 'coefficients')

    def __init__(self, digraph: Digraph, p: int, degree: int, coefficients: Mapping[Iterable[str], int] = None):
        normalized: Dict[Tuple[str, ...], int] = {}
        for key, coeff in (coefficients or {}).items():
            key = tuple(key)
            if len(key) != degree:
                raise InputError(f"基元素 {key} 的大小与次数 {degree} 不符")
            digraph.check_vertices(key)
            ordered, sign = _sort_with_sign(digraph, key)
            if sign == 0:
                continue
            if not all(digraph.adjacent(a, b) for a, b in itertools.combinations(ordered, 2)):
                raise InputError(f"{_clique_label(ordered)} 不是团")
            normalized[ordered] = (normalized.get(ordered, 0) + sign * int(coeff)) % p
        self.digraph = digraph
        self.p = p
        self.degree = degree
        self.coefficients = {
            k: normalized[k]
            for k in sorted(normalized, key=lambda c: tuple(digraph.index(v) for v in c))
            if normalized[k]
        }

    @classmethod
    def basis_element(cls, digraph: Digraph, p: int, clique: Sequence[str]) -> 'ExteriorElement':
        return cls(digraph, p, len(clique), {tuple(clique): 1})

    @classmethod
    def unit(cls, digraph: Digraph, p: int) -> 'ExteriorElement':
        return cls(digraph, p, 0, {(): 1})

    @classmethod
    def from_cochain(cls, c: Cochain1) -> 'ExteriorElement':
        return cls(c.digraph, c.p, 1, {(v,): a for v, a in c.as_dict().items()})

    def coefficient(self, clique: Sequence[str]) -> int:
        ordered, sign = _sort_with_sign(self.digraph, tuple(clique))
        return (sign * self.coefficients.get(ordered, 0)) % self.p

    def is_zero(self) -> bool:
        return not self.coefficients

    def _check_compatible(self, other: 'ExteriorElement'):
        _check_same_parent(self, other)
        if self.degree != other.degree:
            raise InputError("只能相加同次元素")

    def __add__(self, other: 'ExteriorElement') -> 'ExteriorElement':
        self._check_compatible(other)
        merged = dict(self.coefficients)
        for k, c in other.coefficients.items():
            merged[k] = merged.get(k, 0) + c
        return ExteriorElement(self.digraph, self.p, self.degree, merged)

    def __neg__(self) -> 'ExteriorElement':
        return self.scale(-1)

    def __sub__(self, other: 'ExteriorElement') -> 'ExteriorElement':
        return self + (-other)

    def scale(self, c: int) -> 'ExteriorElement':
        return ExteriorElement(self.digraph, self.p, self.degree, {k: c * v for k, v in self.coefficients.items()})

    def __rmul__(self, c: int) -> 'ExteriorElement':
        return self.scale(c)

    def __xor__(self, other: 'ExteriorElement') -> 'ExteriorElement':
        return wedge(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        return (self.digraph == other.digraph and self.p == other.p
                and self.degree == other.degree and self.coefficients == other.coefficients)

    def __hash__(self) -> int:
        return hash((self.digraph, self.p, self.degree, tuple(self.coefficients.items())))

    def __repr__(self) -> str:
        if not self.coefficients:
            return f"0 (degree {self.degree})"
        return ' + '.join(f"{c}*{_clique_label(k)}" for k, c in self.coefficients.items())

    def to_dict(self) -> Dict[str, int]:
        return {_clique_label(k): c for k, c in self.coefficients.items()}


def wedge(x: ExteriorElement, y: ExteriorElement) -> ExteriorElement:
    """外积；支撑相交或并集不是团的基乘积为 0

    Raises:
        InputError: 两个元素不属于同一个代数
    """
    _check_same_parent(x, y)
    g = x.digraph
    result: Dict[Tuple[str, ...], int] = {}
    for s, a in x.coefficients.items():
        for t, b in y.coefficients.items():
            ordered, sign = _sort_with_sign(g, s + t)
            if sign == 0:
                continue
            if not all(g.adjacent(u, v) for u, v in itertools.product(s, t)):
                continue
            result[ordered] = result.get(ordered, 0) + sign * a * b
    return ExteriorElement(g, x.p, x.degree + y.degree, result)


@dataclass(frozen=True)
class AlgebraBasis:
    """Λ(Γ*) 的分次基：bases[k] 是全部 k-团"""
    digraph: Digraph
    prime: Prime
    bases: Tuple[Tuple[Tuple[str, ...], ...], ...]

    def dimension(self, k: int) -> int:
        return len(self.bases[k]) if 0 <= k < len(self.bases) else 0

    @property
    def hilbert_series(self) -> List[int]:
        return [len(b) for b in self.bases]

    def basis(self, k: int) -> List[ExteriorElement]:
        if not 0 <= k < len(self.bases):
            return []
        return [ExteriorElement.basis_element(self.digraph, self.prime.p, c) for c in self.bases[k]]

    def to_dict(self) -> dict:
        return {
            'prime': self.prime.to_dict(),
            'hilbert_series': self.hilbert_series,
            'basis': {str(k): [_clique_label(c) for c in b] for k, b in enumerate(self.bases)},
        }


def build_algebra(g: Digraph, pr: Prime, max_degree: Optional[int] = None) -> AlgebraBasis:
    """构造分次基；k 次部分的维数等于 k-团的个数，超过团数的次数为 0"""
    top = clique_number(g)
    if max_degree is not None:
        top = min(top, max_degree)
    return AlgebraBasis(digraph=g, prime=pr, bases=tuple(tuple(cliques(g, k)) for k in range(top + 1)))


def cup(a: Cochain1, b: Cochain1) -> ExteriorElement:
    """杯积：边 {v,w}（v 在前）上的系数为 a(v)b(w) − a(w)b(v)，非边上的项舍弃"""
    _check_same_parent(a, b)
    g = a.digraph
    coefficients = {}
    for edge in g.edge_classes():
        v, w = g.sort((edge.tail, edge.head))
        value = a(v) * b(w) - a(w) * b(v)
        if value % a.p:
            coefficients[(v, w)] = value
    return ExteriorElement(g, a.p, 2, coefficients)


def consecutive_cups_vanish(seq: Sequence[Cochain1]) -> bool:
    """α_i ⌣ α_{i+1} = 0 对所有 i 成立

    Raises:
        InputError: 序列长度小于 2
    """
    if len(seq) < 2:
        raise InputError("序列长度至少为 2")
    return all(cup(a, b).is_zero() for a, b in zip(seq, seq[1:]))


def restrict(x, sub: Iterable[str]):
    """限制到诱导子图：一维上链丢弃 sub 之外的坐标，高次元素丢弃不在 sub 内的团"""
    g = x.digraph
    target = induced(g, sub)
    keep = set(target.vertices)
    if isinstance(x, Cochain1):
        return Cochain1(target, x.p, {v: x(v) for v in target.vertices})
    if isinstance(x, ExteriorElement):
        return ExteriorElement(
            target, x.p, x.degree,
            {k: c for k, c in x.coefficients.items() if set(k) <= keep},
        )
    raise InputError(f"无法限制类型 {type(x).__name__}")


def kernel_basis(g: Digraph, p: int, sub: Iterable[str], degree: int) -> List[ExteriorElement]:
    """限制映射在给定次数的核：不含于 sub 的团对应的基元素"""
    keep = set(g.check_vertices(sub))
    return [
        ExteriorElement.basis_element(g, p, c)
        for c in cliques(g, degree)
        if not set(c) <= keep
    ]


@dataclass(frozen=True)
class RestrictionMap:
    ambient: Digraph
    sub_vertices: Tuple[str, ...]
    kernel1: Tuple[ExteriorElement, ...]
    kernel2: Tuple[ExteriorElement, ...]

    def to_dict(self) -> dict:
        return {
            'sub_vertices': list(self.sub_vertices),
            'kernel1': [list(e.coefficients)[0][0] for e in self.kernel1],
            'kernel2': [_clique_label(list(e.coefficients)[0]) for e in self.kernel2],
        }


def restriction_map(g: Digraph, p: int, sub: Iterable[str]) -> RestrictionMap:
    verts = g.check_vertices(sub)
    return RestrictionMap(
        ambient=g,
        sub_vertices=verts,
        kernel1=tuple(kernel_basis(g, p, verts, 1)),
        kernel2=tuple(kernel_basis(g, p, verts, 2)),
    )


def _degree2_vector(x: ExteriorElement, edges: Sequence[Tuple[str, str]]) -> np.ndarray:
    return np.array([x.coefficients.get(e, 0) for e in edges], dtype=np.int64)


def kernel_generated_by_cups(g: Digraph, p: int, sub: Iterable[str]) -> bool:
    """检验 Ker(res²) = H¹ ⌣ Ker(res¹)"""
    rmap = restriction_map(g, p, sub)
    edges = cliques(g, 2)
    if not edges:
        return True
    outside = [v for v in g.vertices if v not in rmap.sub_vertices]
    generators = [
        _degree2_vector(cup(Cochain1.dual(g, p, x), Cochain1.dual(g, p, v)), edges)
        for x in g.vertices
        for v in outside
    ]
    kernel = [_degree2_vector(k, edges) for k in rmap.kernel2]
    a = np.array(generators, dtype=np.int64).reshape(-1, len(edges))
    b = np.array(kernel, dtype=np.int64).reshape(-1, len(edges))
    rank_a = rank_mod_p(a, p)
    rank_b = rank_mod_p(b, p)
    return rank_a == rank_b == rank_mod_p(np.vstack([a, b]), p)


def relator_correspondence(g: Digraph, pr: Prime) -> Dict[Tuple[str, str], Tuple[str, int]]:
    """二次基元素 {v,w} → (关系子标识, 符号)；单向边符号为 −1，无向边为 +1"""
    table = {}
    for edge in g.edge_classes():
        key = g.sort((edge.tail, edge.head))
        if edge.is_directed:
            table[key] = (relator_id(edge.tail, edge.head), -1)
        else:
            table[key] = (relator_id(edge.tail, edge.head), 1)
    return table


def graded_dimensions(g: Digraph, pr: Prime, max_degree: Optional[int] = None) -> dict:
    """各次数 Λ_k 的维数，并说明上同调在哪些次数与之一致（仅为说明性输出）"""
    algebra = build_algebra(g, pr, max_degree)
    special_clique = classify(g).verdict.is_special_clique
    return {
        'hilbert_series': algebra.hilbert_series,
        'cohomology_agrees': 'all degrees' if special_clique else 'degrees <= 2',
        'special_clique': special_clique,
    }
