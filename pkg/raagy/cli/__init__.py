#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Raagy命令行入口

退出码：0 成功/一致，2 输入或解析错误，3 预算耗尽结果不确定，4 数学不一致或见证复核失败。
"""

import argparse
import dataclasses
import sys
from typing import List, Optional

from raagy.cli import commands
from raagy.cli.options import common_arguments
from raagy.cli.services.theorem_service import SCOPES
from raagy.core.config import configure, get_config
from raagy.core.errors import ConsistencyError, InputError, ParseError, PreconditionError, ResourceLimitError
from raagy.core.json_utils import json
from raagy.core.logger import cleanup_all_run_loggers, get_logger


def create_parser() -> argparse.ArgumentParser:
    """构建命令行解析器"""
    common = common_arguments()
    parser = argparse.ArgumentParser(
        prog='raagy',
        description='有向图、定向 pro-p 直角 Artin 群与 Massey 积的计算工具',
    )
    subparsers = parser.add_subparsers(dest='command', required=True)

    def add(name, handler, help_text):
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.set_defaults(handler=handler)
        return sub

    sub = add('classify', commands.cmd_classify, '分类有向图并给出禁止三元组与拼接分解')
    sub.add_argument('source', help='有向图 JSON 文件或语料条目名')

    sub = add('algebra', commands.cmd_algebra, '外 Stanley-Reisner 代数的 Hilbert 级数与基')
    sub.add_argument('source', help='有向图 JSON 文件或语料条目名')
    sub.add_argument('--max-degree', type=int, default=None, help='最高次数')
    sub.add_argument('--sub', default=None, help='限制映射的子图顶点，逗号分隔')

    sub = add('presentation', commands.cmd_presentation, '定向 pro-p 直角 Artin 群的表示')
    sub.add_argument('source', help='有向图 JSON 文件或语料条目名')
    sub.add_argument('--sub', default=None, help='团子群的顶点，逗号分隔')

    sub = add('massey', commands.cmd_massey, '判定 n 重 Massey 积')
    sub.add_argument('source', help='有向图 JSON 文件或语料条目名')
    sub.add_argument('sequence', nargs='?', default=None,
                     help='序列表达式，例如 "u+v, u, u+v"；省略时取第一个阻碍三元组的指定序列')

    sub = add('strong-vanishing', commands.cmd_strong_vanishing, '检查强 n-Massey 消失性质')
    sub.add_argument('source', help='有向图 JSON 文件或语料条目名')
    sub.add_argument('--n', type=int, default=None, help='序列长度，默认 3')

    sub = add('verify-theorem', commands.cmd_verify_theorem, '分类、本质 Massey 积与强消失的三方一致性验证')
    sub.add_argument('scope', choices=SCOPES, help='exhaustive / corpus / file')
    sub.add_argument('--n', type=int, default=None, help='强消失检查的序列长度，默认 q')
    sub.add_argument('--vertices', type=int, default=3, help='exhaustive 范围的顶点数')
    sub.add_argument('--input', default=None, help='file 范围的输入文件')
    sub.add_argument('--emit-witnesses', action='store_true', help='把见证写入报告目录')

    sub = add('verify-witness', commands.cmd_verify_witness, '独立复核见证文件')
    sub.add_argument('witness', help='massey 或 verify-theorem 输出的见证 JSON')

    sub = add('enumerate', commands.cmd_enumerate, '枚举带标号的有向图并统计分类')
    sub.add_argument('--vertices', type=int, required=True, help='顶点数')
    sub.add_argument('--start', type=int, default=0, help='起始下标')
    sub.add_argument('--stop', type=int, default=None, help='结束下标（不含）')
    sub.add_argument('--canonical', action='store_true', help='按同构类去重')

    sub = add('export-dot', commands.cmd_export_dot, '导出 DOT')
    sub.add_argument('source', help='有向图 JSON 文件或语料条目名')

    return parser


def _apply_global_options(args: argparse.Namespace):
    overrides = {}
    if args.data_dir:
        overrides['data_dir'] = args.data_dir
    if args.log_level:
        overrides['log_level'] = args.log_level.upper()
    if overrides:
        settings = dataclasses.asdict(get_config())
        settings.update(overrides)
        configure(**settings)


def main(argv: Optional[List[str]] = None) -> int:
    """命令行主函数，返回退出码"""
    parser = create_parser()
    args = parser.parse_args(argv)
    _apply_global_options(args)
    logger = get_logger('cli')
    logger.info(f"执行命令: {args.command}")

    try:
        return args.handler(args)
    except ParseError as e:
        _report_error(e, commands.EXIT_INPUT, position=e.position)
        return commands.EXIT_INPUT
    except (InputError, PreconditionError, ResourceLimitError) as e:
        _report_error(e, commands.EXIT_INPUT)
        return commands.EXIT_INPUT
    except ConsistencyError as e:
        logger.error(f"内部一致性检查失败: {e}")
        _report_error(e, commands.EXIT_INCONSISTENT, certificate=e.certificate)
        return commands.EXIT_INCONSISTENT
    except OSError as e:
        _report_error(e, commands.EXIT_INPUT)
        return commands.EXIT_INPUT
    finally:
        cleanup_all_run_loggers()


def _report_error(error: Exception, code: int, **extra):
    payload = {'error': type(error).__name__, 'message': str(error), 'exit_code': code}
    payload.update({k: v for k, v in extra.items() if v is not None})
    get_logger('cli').warning(f"{payload['error']}: {payload['message']}")
    print(json.dumps_line(payload), file=sys.stderr)
