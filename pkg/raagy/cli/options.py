#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""命令行运行参数"""

import argparse
from dataclasses import dataclass
from typing import Optional

from raagy.algebra.exterior import Prime
from raagy.algebra.massey import SearchBudget
from raagy.core.config import get_config
from raagy.core.errors import InputError

FORMATS = ('json', 'text', 'dot')


@dataclass(frozen=True)
class RunConfig:
    """一次命令调用的参数

    Raises:
        InputError: p 不是素数、p = 2 而 f < 2、输出格式未知、数值参数非正
    """
    p: int
    f: int
    n: Optional[int] = None
    budget: Optional[int] = None
    jobs: Optional[int] = None
    max_sequences: Optional[int] = None
    format: str = 'json'
    seed: Optional[int] = None
    sample: Optional[int] = None
    output: Optional[str] = None

    def __post_init__(self):
        Prime(self.p, self.f)
        if self.format not in FORMATS:
            raise InputError(f"未知输出格式: {self.format}")
        for name in ('n', 'budget', 'jobs', 'max_sequences', 'sample'):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise InputError(f"--{name.replace('_', '-')} 必须为正整数，收到 {value}")

    @property
    def prime(self) -> Prime:
        return Prime(self.p, self.f)

    @property
    def search_budget(self) -> SearchBudget:
        return SearchBudget(max_assignments=self.budget, jobs=self.jobs, max_sequences=self.max_sequences)

    @classmethod
    def from_args(cls, args: argparse.Namespace, default_format: str = 'json') -> 'RunConfig':
        config = get_config()
        return cls(
            p=args.p if args.p is not None else config.default_p,
            f=args.f if args.f is not None else config.default_f,
            n=getattr(args, 'n', None),
            budget=args.budget,
            jobs=args.jobs,
            max_sequences=args.max_sequences,
            format=args.format or default_format,
            seed=args.seed,
            sample=args.sample,
            output=args.output,
        )


def common_arguments() -> argparse.ArgumentParser:
    """所有子命令共享的参数"""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument('--p', type=int, default=None, help='素数 p（默认取配置 default_p）')
    parent.add_argument('--f', type=int, default=None, help='指数 f，q = p^f（p=2 时需 ≥ 2）')
    parent.add_argument('--budget', type=int, default=None, help='单次表示搜索检查的候选数上限')
    parent.add_argument('--jobs', type=int, default=None, help='搜索分区的并行进程数')
    parent.add_argument('--max-sequences', type=int, default=None, help='强消失报告检查的序列数上限')
    parent.add_argument('--format', choices=FORMATS, default=None, help='输出格式（默认 json，export-dot 默认 dot）')
    parent.add_argument('--seed', type=int, default=None, help='抽样随机种子')
    parent.add_argument('--sample', type=int, default=None, help='抽样检查的序列数（不穷尽）')
    parent.add_argument('--output', '-o', default=None, help='结果写入文件而不是标准输出')
    parent.add_argument('--data-dir', default=None, help='数据目录（日志与报告）')
    parent.add_argument('--log-level', default=None, help='日志级别，例如 DEBUG')
    return parent
