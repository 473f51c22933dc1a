#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""内置有向图语料

语料随包发布（corpus.json），带版本号；设置 RAAG_CORPUS_DIR 或
configure(corpus_dir=...) 后改为从该目录读取。
"""

import glob
import logging
import os
from dataclasses import dataclass
from importlib import resources
from typing import Dict, List, Optional

from raagy.algebra.digraph import Digraph, Verdict
from raagy.core.config import get_config
from raagy.core.errors import InputError, ParseError
from raagy.core.json_utils import json

logger = logging.getLogger(__name__)

CORPUS_FILE = 'corpus.json'
CORPUS_VERSION = 1


@dataclass(frozen=True)
class CorpusEntry:
    """语料条目：名称、有向图、预期分类与出处说明"""
    name: str
    digraph: Digraph
    expected: Verdict
    provenance: str

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'expected': self.expected.value,
            'provenance': self.provenance,
            'digraph': self.digraph.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'CorpusEntry':
        """
        Raises:
            InputError: 缺少字段或预期分类未知
        """
        if not isinstance(data, dict):
            raise InputError(f"语料条目必须是对象: {data!r}")
        missing = [key for key in ('name', 'expected', 'digraph') if key not in data]
        if missing:
            raise InputError(f"语料条目缺少字段: {', '.join(missing)}")
        try:
            expected = Verdict(data['expected'])
        except ValueError:
            raise InputError(f"语料条目 {data['name']} 的预期分类未知: {data['expected']}") from None
        return cls(
            name=str(data['name']),
            digraph=Digraph.from_dict(data['digraph']),
            expected=expected,
            provenance=str(data.get('provenance', '')),
        )


def _parse_document(text: str, source: str) -> List[CorpusEntry]:
    document = json.loads(text)
    if not isinstance(document, dict) or not isinstance(document.get('entries'), list):
        raise ParseError(f"语料文件 {source} 必须是带 entries 列表的对象")
    version = document.get('version')
    if version != CORPUS_VERSION:
        raise InputError(f"语料文件 {source} 的版本 {version} 不受支持，需要 {CORPUS_VERSION}")
    return [CorpusEntry.from_dict(item) for item in document['entries']]


def _read_directory(corpus_dir: str) -> List[CorpusEntry]:
    if not os.path.isdir(corpus_dir):
        raise InputError(f"语料目录不存在: {corpus_dir}")
    preferred = os.path.join(corpus_dir, CORPUS_FILE)
    paths = [preferred] if os.path.isfile(preferred) else sorted(glob.glob(os.path.join(corpus_dir, '*.json')))
    if not paths:
        raise InputError(f"语料目录 {corpus_dir} 中没有 JSON 文件")
    entries = []
    for path in paths:
        with open(path, 'r', encoding='utf-8') as f:
            entries.extend(_parse_document(f.read(), path))
    return entries


def load_corpus(corpus_dir: Optional[str] = None) -> List[CorpusEntry]:
    """读取语料

    Args:
        corpus_dir: 语料目录；默认取配置中的 corpus_dir，两者都为空时读内置语料

    Returns:
        按文件中顺序排列的条目列表

    Raises:
        ParseError: JSON 不合法
        InputError: 条目不合法或名称重复
    """
    corpus_dir = corpus_dir or get_config().corpus_dir
    if corpus_dir:
        logger.info(f"从目录加载语料: {corpus_dir}")
        entries = _read_directory(corpus_dir)
    else:
        text = resources.files(__package__).joinpath(CORPUS_FILE).read_text(encoding='utf-8')
        entries = _parse_document(text, CORPUS_FILE)

    seen = set()
    for entry in entries:
        if entry.name in seen:
            raise InputError(f"语料条目名称重复: {entry.name}")
        seen.add(entry.name)
    return entries


def corpus_index(corpus_dir: Optional[str] = None) -> Dict[str, CorpusEntry]:
    return {entry.name: entry for entry in load_corpus(corpus_dir)}


def get_entry(name: str, corpus_dir: Optional[str] = None) -> CorpusEntry:
    """按名称取语料条目

    Raises:
        InputError: 没有该名称的条目
    """
    index = corpus_index(corpus_dir)
    try:
        return index[name]
    except KeyError:
        raise InputError(f"语料中没有条目 {name}，可用条目: {', '.join(index)}") from None
