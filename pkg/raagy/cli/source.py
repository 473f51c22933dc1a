#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""命令行输入：JSON 文件路径或语料条目名"""

import os
from dataclasses import dataclass
from typing import Any, List, Optional

from raagy.algebra.digraph import Digraph, Verdict
from raagy.core.errors import InputError
from raagy.core.json_utils import json
from raagy.corpus import CorpusEntry, get_entry


@dataclass(frozen=True)
class InputSource:
    name: str
    digraph: Digraph
    expected: Optional[Verdict] = None

    @classmethod
    def from_entry(cls, entry: CorpusEntry) -> 'InputSource':
        return cls(entry.name, entry.digraph, entry.expected)


def read_json_file(path: str) -> Any:
    """读取 JSON 文件；只含空白的文件视为空有向图

    Raises:
        ParseError: 文本不是合法 JSON
    """
    with open(path, 'r', encoding='utf-8') as f:
        text = f.read()
    if not text.strip():
        return {'vertices': [], 'edges': []}
    return json.loads(text)


def _sources_from_document(document: Any, origin: str) -> List[InputSource]:
    if isinstance(document, dict) and 'entries' in document:
        return [InputSource.from_entry(CorpusEntry.from_dict(item)) for item in document['entries']]
    if isinstance(document, dict) and 'vertices' in document:
        return [InputSource(origin, Digraph.from_dict(document))]
    if isinstance(document, list):
        return [InputSource(f"{origin}[{i}]", Digraph.from_dict(item)) for i, item in enumerate(document)]
    raise InputError(f"{origin} 既不是有向图，也不是有向图列表或语料文件")


def load_sources(source: str) -> List[InputSource]:
    """文件可以是单个有向图、有向图列表或语料格式；不是已存在的文件时按语料条目名查找"""
    if os.path.isfile(source):
        return _sources_from_document(read_json_file(source), os.path.basename(source))
    return [InputSource.from_entry(get_entry(source))]


def load_source(source: str) -> InputSource:
    """
    Raises:
        InputError: 输入包含多个有向图
    """
    sources = load_sources(source)
    if len(sources) != 1:
        raise InputError(f"{source} 包含 {len(sources)} 个有向图，此命令只接受一个")
    return sources[0]
