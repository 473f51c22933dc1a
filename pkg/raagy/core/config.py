#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Raagy配置模块"""

import os
from dataclasses import dataclass, field
from typing import Optional


def _env_corpus_dir() -> Optional[str]:
    return os.environ.get('RAAG_CORPUS_DIR') or None


@dataclass
class RaagyConfig:
    """Raagy配置类"""
    # 数据目录，默认为当前工作目录下的 data 文件夹
    data_dir: str = field(
        default_factory=lambda: os.environ.get('RAAGY_DATA_DIR') or os.path.join(os.getcwd(), 'data')
    )

    # 语料目录，设置后覆盖内置语料
    corpus_dir: Optional[str] = field(default_factory=_env_corpus_dir)

    # 有限域默认参数
    default_p: int = 3
    default_f: int = 1

    # 搜索预算
    search_budget: int = 5_000_000  # 单次表示搜索最多检查的赋值数
    sequence_budget: int = 600_000  # 强消失报告最多枚举的序列数
    search_max_workers: int = 1  # 搜索分区的进程池大小

    # 日志配置
    log_to_file: bool = True
    log_level: str = 'INFO'

    @property
    def log_dir(self) -> str:
        """日志目录"""
        return os.path.join(self.data_dir, 'log')

    @property
    def report_dir(self) -> str:
        """报告与见证文件目录"""
        return os.path.join(self.data_dir, 'reports')


# 全局配置实例
_config: Optional[RaagyConfig] = None


def get_config() -> RaagyConfig:
    """获取全局配置"""
    global _config
    if _config is None:
        _config = RaagyConfig()
    return _config


def configure(data_dir: Optional[str] = None, **overrides) -> RaagyConfig:
    """配置Raagy

    Args:
        data_dir: 数据目录路径，默认为当前工作目录下的 data 文件夹
        **overrides: 其余 RaagyConfig 字段，例如 search_budget、corpus_dir

    Returns:
        RaagyConfig: 配置对象

    Raises:
        ValueError: 出现未知配置项
    """
    global _config
    known = RaagyConfig.__dataclass_fields__
    unknown = [key for key in overrides if key not in known]
    if unknown:
        raise ValueError(f"未知配置项: {', '.join(sorted(unknown))}")
    if data_dir is not None:
        overrides['data_dir'] = data_dir
    _config = RaagyConfig(**overrides)
    return _config
