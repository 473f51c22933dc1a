#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Raagy核心模块：配置、日志、套件上下文、JSON 与异常

目录一律通过 get_config() 读取，configure() 之后立即生效。
"""
