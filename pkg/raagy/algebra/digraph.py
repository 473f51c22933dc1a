#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""有向图模块

有向图表示、顶点分类（普通 / 特殊 / 汇点）、按定义与按禁止三元组两种方式的分类、
星图、团、拼接分解，以及穷举枚举与规范化。
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from raagy.core.errors import ConsistencyError, InputError, PreconditionError, ResourceLimitError

logger = logging.getLogger(__name__)

MAX_ENUMERATE_VERTICES = 6
MAX_CANONICAL_VERTICES = 8


class Digraph:
    """有限无环路有向图

    顶点是字符串，构造时给出的顺序即全序；所有集合类输出都按该顺序排序。
    无向边记作两个方向的有序对。实例不可变。

    Args:
        vertices: 顶点序列（不可重复）
        edges: 有序对 (tail, head) 的可迭代对象，重复项自动合并

    Raises:
        InputError: 顶点重复、环路、端点不存在
    """

    __slots__ = ('_vertices', '_index', '_edges', '_out', '_in')

    def __init__(self, vertices: Iterable[str], edges: Iterable[Sequence[str]] = ()):
        verts = tuple(vertices)
        for v in verts:
            if not isinstance(v, str) or not v:
                raise InputError(f"顶点标识必须是非空字符串: {v!r}")
        index = {v: i for i, v in enumerate(verts)}
        if len(index) != len(verts):
            raise InputError("顶点列表存在重复")

        edge_set = set()
        for edge in edges:
            if len(edge) != 2:
                raise InputError(f"边必须是有序对: {edge!r}")
            tail, head = edge[0], edge[1]
            if tail not in index or head not in index:
                raise InputError(f"边 ({tail}, {head}) 的端点不在顶点集中")
            if tail == head:
                raise InputError(f"不允许环路: ({tail}, {head})")
            edge_set.add((tail, head))

        out_map: Dict[str, set] = {v: set() for v in verts}
        in_map: Dict[str, set] = {v: set() for v in verts}
        for tail, head in edge_set:
            out_map[tail].add(head)
            in_map[head].add(tail)

        self._vertices = verts
        self._index = index
        self._edges = frozenset(edge_set)
        self._out = {v: frozenset(s) for v, s in out_map.items()}
        self._in = {v: frozenset(s) for v, s in in_map.items()}

    @classmethod
    def build(cls, vertices: Iterable[str], one_way: Iterable[Sequence[str]] = (),
              two_way: Iterable[Sequence[str]] = ()) -> 'Digraph':
        """按单向边与无向边分别给出边集的便捷构造"""
        edges = [tuple(e) for e in one_way]
        for a, b in two_way:
            edges.append((a, b))
            edges.append((b, a))
        return cls(vertices, edges)

    @classmethod
    def from_dict(cls, data: dict) -> 'Digraph':
        """从 {"vertices": [...], "edges": [[tail, head], ...]} 构造"""
        if not isinstance(data, dict) or 'vertices' not in data:
            raise InputError("有向图JSON必须包含 vertices 字段")
        edges = data.get('edges', [])
        if not isinstance(data['vertices'], list) or not isinstance(edges, list):
            raise InputError("vertices 与 edges 必须是列表")
        return cls(data['vertices'], [tuple(e) for e in edges])

    def to_dict(self) -> dict:
        return {
            'vertices': list(self._vertices),
            'edges': [list(e) for e in sorted(self._edges, key=self._edge_key)],
        }

    # 基本访问

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> FrozenSet[Tuple[str, str]]:
        return self._edges

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v) -> bool:
        return v in self._index

    def __eq__(self, other) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, self._edges))

    def __repr__(self) -> str:
        return f"Digraph(vertices={list(self._vertices)}, edges={self.to_dict()['edges']})"

    def __getstate__(self):
        return {'vertices': self._vertices, 'edges': tuple(self._edges)}

    def __setstate__(self, state):
        self.__init__(state['vertices'], state['edges'])

    def index(self, v: str) -> int:
        """顶点在全序中的位置

        Raises:
            InputError: 未知顶点
        """
        try:
            return self._index[v]
        except KeyError:
            raise InputError(f"未知顶点: {v}") from None

    def check_vertices(self, vertices: Iterable[str]) -> Tuple[str, ...]:
        """校验并按全序排序一组顶点"""
        unique = set(vertices)
        for v in unique:
            self.index(v)
        return tuple(sorted(unique, key=self._index.__getitem__))

    def sort(self, vertices: Iterable[str]) -> Tuple[str, ...]:
        return tuple(sorted(vertices, key=self._index.__getitem__))

    def _edge_key(self, edge):
        return self._index[edge[0]], self._index[edge[1]]

    def has_edge(self, tail: str, head: str) -> bool:
        return (tail, head) in self._edges

    def adjacent(self, a: str, b: str) -> bool:
        """a, b 之间至少有一个方向的边"""
        return (a, b) in self._edges or (b, a) in self._edges

    def is_one_way(self, tail: str, head: str) -> bool:
        """(tail, head) 是单向边"""
        return (tail, head) in self._edges and (head, tail) not in self._edges

    def is_two_way(self, a: str, b: str) -> bool:
        return (a, b) in self._edges and (b, a) in self._edges

    def neighbors(self, v: str) -> Tuple[str, ...]:
        self.index(v)
        return self.sort(self._out[v] | self._in[v])

    def one_way_in(self, v: str) -> Tuple[str, ...]:
        """以 v 为头的单向边的尾"""
        return self.sort(t for t in self._in[v] if t not in self._out[v])

    def one_way_out(self, v: str) -> Tuple[str, ...]:
        return self.sort(h for h in self._out[v] if h not in self._in[v])

    def edge_classes(self) -> Tuple['Edge', ...]:
        """|E|：每个无序相邻对一条，按 (较小端, 较大端) 的全序排列"""
        seen = set()
        result = []
        for tail, head in sorted(self._edges, key=self._edge_key):
            a, b = self.sort((tail, head))
            if (a, b) in seen:
                continue
            seen.add((a, b))
            if self.is_two_way(a, b):
                result.append(Edge(EdgeKind.UNDIRECTED, a, b))
            elif self.has_edge(a, b):
                result.append(Edge(EdgeKind.DIRECTED, a, b))
            else:
                result.append(Edge(EdgeKind.DIRECTED, b, a))
        result.sort(key=lambda e: tuple(sorted((self._index[e.tail], self._index[e.head]))))
        return tuple(result)

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self._vertices)
        graph.add_edges_from(self._edges)
        return graph

    def underlying_graph(self) -> nx.Graph:
        """|Γ| 作为 networkx 无向图"""
        graph = nx.Graph()
        graph.add_nodes_from(self._vertices)
        graph.add_edges_from(self._edges)
        return graph


class EdgeKind(Enum):
    UNDIRECTED = 'undirected'
    DIRECTED = 'directed'


@dataclass(frozen=True)
class Edge:
    """|E| 中的一个元素；无向边的 tail/head 按全序排列，有向边为 (尾, 头)"""
    kind: EdgeKind
    tail: str
    head: str

    @property
    def is_directed(self) -> bool:
        return self.kind is EdgeKind.DIRECTED

    def to_dict(self) -> dict:
        return {'kind': self.kind.value, 'tail': self.tail, 'head': self.head}


@dataclass(frozen=True)
class VertexClass:
    """顶点分类：普通，或特殊（附带是否为汇点）"""
    special: bool
    sinkhole: bool = False

    @property
    def is_ordinary(self) -> bool:
        return not self.special

    def to_dict(self) -> dict:
        if not self.special:
            return {'tag': 'Ordinary'}
        return {'tag': 'Special', 'sinkhole': self.sinkhole}

    def __str__(self) -> str:
        if not self.special:
            return 'Ordinary'
        return f"Special{{sinkhole={'true' if self.sinkhole else 'false'}}}"


ORDINARY = VertexClass(special=False)


class Verdict(Enum):
    UNDIGRAPH = 'Undigraph'
    SPECIAL_CLIQUE = 'SpecialClique'
    SPECIAL_NOT_CLIQUE = 'SpecialNotClique'
    NOT_SPECIAL = 'NotSpecial'

    @property
    def is_special(self) -> bool:
        return self is not Verdict.NOT_SPECIAL

    @property
    def is_special_clique(self) -> bool:
        return self in (Verdict.UNDIGRAPH, Verdict.SPECIAL_CLIQUE)


class Pattern(Enum):
    SPECIAL_WITH_OUT_EDGE = 'SpecialWithOutEdge'
    SPECIAL_ON_UNDIRECTED_EDGE = 'SpecialOnUndirectedEdge'
    NON_CLIQUE_STAR = 'NonCliqueStar'


@dataclass(frozen=True)
class PatternViolation:
    """禁止三元组 (a, b, c)，b 是中间的特殊顶点

    SpecialWithOutEdge: a→b 与 b→c 均为单向边
    SpecialOnUndirectedEdge: a→b 单向、b-c 无向
    NonCliqueStar: a→b←c 均为单向，a 与 c 不相邻（a 在全序中较小）
    """
    pattern: Pattern
    witness: Tuple[str, str, str]

    def to_dict(self) -> dict:
        return {'pattern': self.pattern.value, 'witness': list(self.witness)}


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    violations: Tuple[PatternViolation, ...]

    def to_dict(self) -> dict:
        return {'verdict': self.verdict.value, 'violations': [v.to_dict() for v in self.violations]}


@dataclass(frozen=True)
class StarPiece:
    """拼接分解中的一块：特殊顶点、它的星图顶点、与核心的重叠团"""
    special: str
    star: Tuple[str, ...]
    overlap: Tuple[str, ...]

    def to_dict(self) -> dict:
        return {'special': self.special, 'star': list(self.star), 'overlap': list(self.overlap)}


@dataclass(frozen=True)
class PatchingDecomposition:
    core: Tuple[str, ...]
    pieces: Tuple[StarPiece, ...]

    def reassemble(self, g: Digraph) -> Digraph:
        """把核心与各星图的诱导子图重新拼接"""
        vertices = set(self.core)
        edges = set(induced(g, self.core).edges)
        for piece in self.pieces:
            vertices.update(piece.star)
            edges.update(induced(g, piece.star).edges)
        return Digraph(g.sort(vertices), edges)

    def to_dict(self) -> dict:
        return {'core': list(self.core), 'pieces': [piece.to_dict() for piece in self.pieces]}


@dataclass(frozen=True)
class Patching:
    """Γ 是 Γ₁、Γ₂ 沿 Γ' 的拼接"""
    first: Tuple[str, ...]
    second: Tuple[str, ...]
    overlap: Tuple[str, ...]

    def as_sets(self) -> Tuple[FrozenSet[str], FrozenSet[str], FrozenSet[str]]:
        return frozenset(self.first), frozenset(self.second), frozenset(self.overlap)

    def to_dict(self) -> dict:
        return {'first': list(self.first), 'second': list(self.second), 'overlap': list(self.overlap)}


class ObstructionKind(Enum):
    # u→w 单向，v 与 w 相邻，u 与 v 不相邻
    DISJOINT_TAILS = 'disjoint-tails'
    # u→w 单向，u 与 v 相邻，(w, v) 是边
    JOINED_TAILS = 'joined-tails'


@dataclass(frozen=True)
class Obstruction:
    """非 special-clique 的诱导三元组及其角色 (u, v, w)"""
    kind: ObstructionKind
    u: str
    v: str
    w: str

    @property
    def roles(self) -> Tuple[str, str, str]:
        return self.u, self.v, self.w

    def to_dict(self) -> dict:
        return {'kind': self.kind.value, 'u': self.u, 'v': self.v, 'w': self.w}


# 顶点分类

def vertex_class(g: Digraph, v: str) -> VertexClass:
    """按定义对顶点分类

    特殊顶点：至少是一条单向边的头。
    汇点：特殊顶点，且所有关联边都是射入的单向边。

    Raises:
        InputError: 未知顶点
    """
    g.index(v)
    if not g.one_way_in(v):
        return ORDINARY
    sinkhole = not g._out[v]
    return VertexClass(special=True, sinkhole=sinkhole)


def is_sinkhole_literal(g: Digraph, w: str) -> bool:
    """字面定义的汇点谓词：w 特殊，且对每个 (v, w) ∈ E 都有 (w, v) ∉ E

    只排除无向边，不排除射出的单向边，比 vertex_class 的判定弱。
    """
    g.index(w)
    if not g.one_way_in(w):
        return False
    return all(not g.has_edge(w, v) for v in g._in[w])


def special_vertices(g: Digraph) -> Tuple[str, ...]:
    return tuple(v for v in g.vertices if g.one_way_in(v))


def ordinary_vertices(g: Digraph) -> Tuple[str, ...]:
    return tuple(v for v in g.vertices if not g.one_way_in(v))


# 子图

def induced(g: Digraph, subset: Iterable[str]) -> Digraph:
    """诱导子图，保留 subset 内部的全部边"""
    verts = g.check_vertices(subset)
    keep = set(verts)
    return Digraph(verts, [e for e in g.edges if e[0] in keep and e[1] in keep])


def star(g: Digraph, v: str) -> Digraph:
    """St(v)：v 与其全部相邻顶点上的诱导子图"""
    return induced(g, (v,) + g.neighbors(v))


def underlying(g: Digraph) -> Digraph:
    """把每条单向边替换为双向边"""
    edges = set(g.edges)
    edges.update((h, t) for t, h in g.edges)
    return Digraph(g.vertices, edges)


def is_complete(g: Digraph) -> bool:
    return all(g.adjacent(a, b) for a, b in itertools.combinations(g.vertices, 2))


def is_clique(g: Digraph, subset: Iterable[str]) -> bool:
    verts = g.check_vertices(subset)
    return all(g.adjacent(a, b) for a, b in itertools.combinations(verts, 2))


def connected_components(g: Digraph) -> List[Tuple[str, ...]]:
    """|Γ| 的连通分支，按各分支最小顶点排序"""
    components = [g.sort(c) for c in nx.connected_components(g.underlying_graph())]
    components.sort(key=lambda c: g.index(c[0]))
    return components


def cliques(g: Digraph, k: int) -> List[Tuple[str, ...]]:
    """全部 k-团，按全序的字典序排列

    k = 0 时返回唯一的空团。
    """
    if k < 0:
        raise InputError(f"团的大小不能为负: {k}")
    if k == 0:
        return [()]
    found = [
        g.sort(c) for c in nx.enumerate_all_cliques(g.underlying_graph()) if len(c) == k
    ]
    found.sort(key=lambda c: tuple(g.index(v) for v in c))
    return found


def clique_number(g: Digraph) -> int:
    if not g.vertices:
        return 0
    return max(len(c) for c in nx.find_cliques(g.underlying_graph()))


# 分类

def scan_forbidden(g: Digraph) -> List[PatternViolation]:
    """枚举所有诱导出禁止构型的三元组

    返回顺序确定：先按模式，再按见证三元组在全序下的位置。
    """
    violations = []
    for b in g.vertices:
        tails = g.one_way_in(b)
        if not tails:
            continue
        out_one_way = g.one_way_out(b)
        two_way = [c for c in g.neighbors(b) if g.is_two_way(b, c)]
        for a in tails:
            for c in out_one_way:
                violations.append(PatternViolation(Pattern.SPECIAL_WITH_OUT_EDGE, (a, b, c)))
            for c in two_way:
                violations.append(PatternViolation(Pattern.SPECIAL_ON_UNDIRECTED_EDGE, (a, b, c)))
        for a, c in itertools.combinations(tails, 2):
            if not g.adjacent(a, c):
                violations.append(PatternViolation(Pattern.NON_CLIQUE_STAR, (a, b, c)))

    order = {pattern: i for i, pattern in enumerate(Pattern)}
    violations.sort(key=lambda pv: (order[pv.pattern], tuple(g.index(x) for x in pv.witness)))
    return violations


def classify(g: Digraph) -> Classification:
    """按定义分类，并附上独立的禁止三元组扫描结果

    Raises:
        ConsistencyError: 两种判定不一致
    """
    specials = special_vertices(g)
    if not specials:
        verdict = Verdict.UNDIGRAPH
    elif not all(vertex_class(g, w).sinkhole for w in specials):
        verdict = Verdict.NOT_SPECIAL
    elif all(is_complete(star(g, w)) for w in specials):
        verdict = Verdict.SPECIAL_CLIQUE
    else:
        verdict = Verdict.SPECIAL_NOT_CLIQUE

    violations = scan_forbidden(g)
    special_by_scan = not any(pv.pattern is not Pattern.NON_CLIQUE_STAR for pv in violations)
    if special_by_scan != verdict.is_special or (not violations) != verdict.is_special_clique:
        raise ConsistencyError(
            f"定义分类 {verdict.value} 与禁止模式扫描不一致",
            certificate={'digraph': g.to_dict(), 'violations': [pv.to_dict() for pv in violations]},
        )
    return Classification(verdict=verdict, violations=tuple(violations))


def find_obstructions(g: Digraph) -> List[Obstruction]:
    """枚举诱导三元组 (u, v, w)，它们见证 Γ 不是 special-clique

    DISJOINT_TAILS: u→w 单向，v 与 w 相邻，u 与 v 不相邻。
    JOINED_TAILS: u→w 单向，u 与 v 相邻，(w, v) ∈ E。
    """
    found = []
    for w in g.vertices:
        for u in g.one_way_in(w):
            for v in g.vertices:
                if v in (u, w):
                    continue
                if g.adjacent(v, w) and not g.adjacent(u, v):
                    found.append(Obstruction(ObstructionKind.DISJOINT_TAILS, u, v, w))
                elif g.adjacent(u, v) and g.has_edge(w, v):
                    found.append(Obstruction(ObstructionKind.JOINED_TAILS, u, v, w))
    found.sort(key=lambda ob: (ob.kind is not ObstructionKind.DISJOINT_TAILS,
                               g.index(ob.u), g.index(ob.v), g.index(ob.w)))
    return found


def check_obstruction(g: Digraph, roles: Sequence[str], kind: ObstructionKind) -> Obstruction:
    """校验三个角色确实构成给定类型的阻碍

    Raises:
        PreconditionError: 角色不匹配
    """
    u, v, w = roles
    g.check_vertices((u, v, w))
    if len({u, v, w}) != 3:
        raise PreconditionError(f"角色必须是三个不同的顶点: {roles}")
    if not g.is_one_way(u, w):
        raise PreconditionError(f"({u}, {w}) 不是单向边")
    if kind is ObstructionKind.DISJOINT_TAILS:
        ok = g.adjacent(v, w) and not g.adjacent(u, v)
    else:
        ok = g.adjacent(u, v) and g.has_edge(w, v)
    if not ok:
        raise PreconditionError(f"三元组 ({u}, {v}, {w}) 不构成 {kind.value} 构型")
    return Obstruction(kind, u, v, w)


# 拼接

def patching_decomposition(g: Digraph) -> PatchingDecomposition:
    """special-clique 有向图的拼接分解：核心为全部普通顶点，每个特殊顶点一块星图

    Raises:
        PreconditionError: 有向图不是 special-clique，错误中带一个违反的三元组
    """
    classification = classify(g)
    if not classification.verdict.is_special_clique:
        violation = classification.violations[0]
        raise PreconditionError(
            f"有向图不是 special-clique（{classification.verdict.value}），"
            f"违反模式 {violation.pattern.value} {violation.witness}",
            violation=violation,
        )
    core = ordinary_vertices(g)
    pieces = []
    for w in special_vertices(g):
        star_vertices = (w,) + g.neighbors(w)
        pieces.append(StarPiece(special=w, star=g.sort(star_vertices), overlap=g.neighbors(w)))
    return PatchingDecomposition(core=core, pieces=tuple(pieces))


def find_patching(g: Digraph) -> Optional[Patching]:
    """寻找把 Γ 写成两个真诱导子图拼接的方式

    按重叠集合从小到大、同大小按字典序搜索，返回第一个解。
    去掉重叠后若剩余顶点不连通，则含最小顶点的分支并入第一块，其余并入第二块。
    """
    vertices = g.vertices
    graph = g.underlying_graph()
    for size in range(0, max(len(vertices) - 1, 0)):
        for overlap in itertools.combinations(vertices, size):
            rest = [v for v in vertices if v not in overlap]
            components = list(nx.connected_components(graph.subgraph(rest)))
            if len(components) < 2:
                continue
            components.sort(key=lambda c: min(g.index(v) for v in c))
            first = g.sort(set(overlap) | components[0])
            second = g.sort(set(overlap).union(*components[1:]))
            return Patching(first=first, second=second, overlap=tuple(overlap))
    return None


# 枚举与规范化

def _default_names(n: int) -> Tuple[str, ...]:
    return tuple(f"v{i + 1}" for i in range(n))


def count_digraphs(n: int) -> int:
    return 4 ** (n * (n - 1) // 2)


def enumerate_digraphs(n: int, start: int = 0, stop: Optional[int] = None,
                       names: Optional[Sequence[str]] = None) -> Iterator[Digraph]:
    """枚举 n 个带标号顶点上的全部 4^C(n,2) 个有向图

    每个无序对有四种状态：无边 / 正向 / 反向 / 双向。第 index 个有向图
    由 index 的四进制展开决定，因此任意下标区间都可以独立重建。

    Raises:
        ResourceLimitError: n 超过上限
    """
    if n < 0 or n > MAX_ENUMERATE_VERTICES:
        raise ResourceLimitError(f"枚举只支持 0..{MAX_ENUMERATE_VERTICES} 个顶点，收到 {n}")
    vertices = tuple(names) if names is not None else _default_names(n)
    if len(vertices) != n:
        raise InputError("顶点名个数与 n 不一致")
    pairs = list(itertools.combinations(vertices, 2))
    total = count_digraphs(n)
    stop = total if stop is None else min(stop, total)
    for index in range(start, stop):
        edges = []
        code = index
        for a, b in pairs:
            state = code % 4
            code //= 4
            if state & 1:
                edges.append((a, b))
            if state & 2:
                edges.append((b, a))
        yield Digraph(vertices, edges)


def canonicalize(g: Digraph) -> Digraph:
    """通过穷举置换返回字典序最小的同构像，顶点重命名为 v1..vn

    Raises:
        ResourceLimitError: 顶点超过上限
    """
    n = len(g)
    if n > MAX_CANONICAL_VERTICES:
        raise ResourceLimitError(f"规范化只支持不超过 {MAX_CANONICAL_VERTICES} 个顶点，收到 {n}")
    verts = g.vertices
    adjacency = [[1 if g.has_edge(a, b) else 0 for b in verts] for a in verts]
    cells = [(i, j) for i in range(n) for j in range(n) if i != j]

    best_key = None
    best_perm = None
    for perm in itertools.permutations(range(n)):
        key = tuple(adjacency[perm[i]][perm[j]] for i, j in cells)
        if best_key is None or key < best_key:
            best_key, best_perm = key, perm

    names = _default_names(n)
    edges = []
    if best_perm is not None:
        for i, j in cells:
            if adjacency[best_perm[i]][best_perm[j]]:
                edges.append((names[i], names[j]))
    return Digraph(names, edges)


# 导出

def to_dot(g: Digraph, name: str = 'G') -> str:
    """DOT 导出：单向边为有向弧，双向边为一条 dir=none 边，特殊顶点填充样式"""
    lines = [f'digraph "{name}" {{']
    for v in g.vertices:
        if g.one_way_in(v):
            lines.append(f'  "{v}" [style=filled];')
        else:
            lines.append(f'  "{v}";')
    for edge in g.edge_classes():
        if edge.is_directed:
            lines.append(f'  "{edge.tail}" -> "{edge.head}";')
        else:
            lines.append(f'  "{edge.tail}" -> "{edge.head}" [dir=none];')
    lines.append('}')
    return '\n'.join(lines) + '\n'
