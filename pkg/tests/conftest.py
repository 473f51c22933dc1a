#!/usr/bin/env python
# -*- coding: utf-8 -*-
import pytest

from raagy.algebra.digraph import Digraph
from raagy.algebra.exterior import Prime
from raagy.core.config import configure
from raagy.corpus import get_entry


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """每个测试使用独立的数据目录，默认不写日志文件"""
    monkeypatch.delenv('RAAG_CORPUS_DIR', raising=False)
    monkeypatch.delenv('RAAGY_DATA_DIR', raising=False)
    return configure(data_dir=str(tmp_path), log_to_file=False)


@pytest.fixture
def q3():
    return Prime(3)


@pytest.fixture
def chain_digraph() -> Digraph:
    """v1 是汇点，v2 特殊但不是汇点，v3-v4 无向"""
    return get_entry('sinkhole-with-chain').digraph


@pytest.fixture
def three_sinkholes() -> Digraph:
    return get_entry('three-sinkholes').digraph
