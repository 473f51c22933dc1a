#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""命令控制器：每个子命令一个 cmd_* 函数

控制器只负责把参数交给服务层、渲染结果并给出退出码；
异常由 main 统一转换为退出码。
"""

import argparse
import os
from typing import Any, Optional

from raagy.algebra.digraph import to_dot
from raagy.algebra.massey import MasseyStatus
from raagy.cli.options import RunConfig
from raagy.cli.sequence import format_sequence, parse_sequence
from raagy.cli.services import ClassifyService, MasseyService, TheoremService
from raagy.cli.source import load_source, read_json_file
from raagy.core.errors import InputError
from raagy.core.json_utils import json
from raagy.core.logger import get_logger

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INDETERMINATE = 3
EXIT_INCONSISTENT = 4


def render_text(value: Any, indent: int = 0) -> str:
    """把嵌套的字典与列表渲染为缩进文本"""
    pad = '  ' * indent
    value = json.loads(json.dumps(value))
    if isinstance(value, dict):
        lines = []
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {item}")
        return '\n'.join(lines)
    if isinstance(value, list):
        lines = []
        for item in value:
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}-")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {item}")
        return '\n'.join(lines)
    return f"{pad}{value}"


def emit(config: RunConfig, payload: Any, dot: Optional[str] = None):
    """按输出格式写到标准输出或 --output 文件"""
    if config.format == 'dot':
        if dot is None:
            raise InputError("此命令不支持 dot 输出")
        text = dot
    elif config.format == 'text':
        text = render_text(payload) + '\n'
    else:
        text = json.dumps(payload) + '\n'

    if config.output:
        directory = os.path.dirname(os.path.abspath(config.output))
        os.makedirs(directory, exist_ok=True)
        with open(config.output, 'w', encoding='utf-8') as f:
            f.write(text)
        get_logger('cli').info(f"结果已写入 {config.output}")
    else:
        print(text, end='')


def _vertex_list(text: Optional[str]):
    if text is None:
        return None
    return [v.strip() for v in text.split(',') if v.strip()]


def cmd_classify(args: argparse.Namespace) -> int:
    """分类报告；输入为语料条目时与预期分类比对"""
    config = RunConfig.from_args(args)
    item = load_source(args.source)
    report = ClassifyService.classify(item.digraph, item.expected)
    report['name'] = item.name
    emit(config, report, dot=to_dot(item.digraph, item.name))
    return EXIT_OK


def cmd_algebra(args: argparse.Namespace) -> int:
    config = RunConfig.from_args(args)
    item = load_source(args.source)
    report = ClassifyService.algebra(item.digraph, config.prime, args.max_degree, _vertex_list(args.sub))
    report['name'] = item.name
    emit(config, report)
    return EXIT_OK


def cmd_presentation(args: argparse.Namespace) -> int:
    config = RunConfig.from_args(args)
    item = load_source(args.source)
    report = ClassifyService.presentation(item.digraph, config.prime, _vertex_list(args.sub))
    report['name'] = item.name
    emit(config, report)
    return EXIT_OK


def cmd_massey(args: argparse.Namespace) -> int:
    """Massey 积判定；Indeterminate 返回独立的退出码"""
    config = RunConfig.from_args(args)
    item = load_source(args.source)
    pr = config.prime
    if args.sequence:
        sequence = parse_sequence(args.sequence, item.digraph, pr.p)
    else:
        sequence = MasseyService.default_sequence(item.digraph, pr)
    verdict = MasseyService.massey(item.digraph, pr, sequence, config.search_budget)
    report = verdict.to_dict()
    report['name'] = item.name
    report['sequence_text'] = format_sequence(sequence)
    emit(config, report)
    return EXIT_INDETERMINATE if verdict.status is MasseyStatus.INDETERMINATE else EXIT_OK


def cmd_strong_vanishing(args: argparse.Namespace) -> int:
    config = RunConfig.from_args(args)
    item = load_source(args.source)
    n = config.n if config.n is not None else 3
    report = MasseyService.strong_vanishing(item.digraph, config.prime, n, config.search_budget,
                                            sample=config.sample, seed=config.seed)
    report['name'] = item.name
    emit(config, report)
    return EXIT_INDETERMINATE if report['indeterminate'] else EXIT_OK


def cmd_verify_theorem(args: argparse.Namespace) -> int:
    """三方一致性套件；任何不一致返回 4，预算耗尽返回 3"""
    config = RunConfig.from_args(args)
    report = TheoremService.verify_theorem(
        args.scope, config.prime, config.n, config.search_budget,
        vertices=args.vertices, source=args.input, emit_witnesses=args.emit_witnesses,
    )
    emit(config, report)
    if report['inconsistent']:
        return EXIT_INCONSISTENT
    if report['partial']:
        return EXIT_INDETERMINATE
    return EXIT_OK


def cmd_verify_witness(args: argparse.Namespace) -> int:
    """独立复核见证文件；不通过返回 4"""
    config = RunConfig.from_args(args)
    result = MasseyService.verify_witness_document(read_json_file(args.witness))
    result['file'] = args.witness
    emit(config, result)
    return EXIT_OK if result['ok'] else EXIT_INCONSISTENT


def cmd_enumerate(args: argparse.Namespace) -> int:
    config = RunConfig.from_args(args)
    report = ClassifyService.enumerate(args.vertices, args.start, args.stop, args.canonical)
    emit(config, report)
    return EXIT_OK


def cmd_export_dot(args: argparse.Namespace) -> int:
    config = RunConfig.from_args(args, default_format='dot')
    item = load_source(args.source)
    dot = to_dot(item.digraph, item.name)
    if config.format == 'dot':
        emit(config, None, dot=dot)
    else:
        emit(config, {'name': item.name, 'dot': dot}, dot=dot)
    return EXIT_OK
