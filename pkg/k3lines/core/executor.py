#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
并行执行模块

搜索步骤内的 fork-join：候选在进程池中并行评估，结果按输入顺序返回，
合并与去重由调用方顺序完成。

Author: K3 Lines Team
Date: 2024
"""

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

from k3lines.core.config import settings

T = TypeVar("T")
R = TypeVar("R")

# 小于该数量的批次直接在本进程内执行
_MIN_PARALLEL_BATCH = 8


def resolve_workers(workers: Optional[int] = None) -> int:
    """解析工作进程数：显式参数优先，其次环境变量"""
    if workers is not None and workers > 0:
        return workers
    return settings.K3LINES_WORKERS


def parallel_map(
    fn: Callable[[T], R], items: Sequence[T], workers: Optional[int] = None
) -> List[R]:
    """按输入顺序返回 fn 在 items 上的结果

    fn 必须是可 pickle 的模块级函数。
    """
    n_workers = resolve_workers(workers)
    if n_workers <= 1 or len(items) < _MIN_PARALLEL_BATCH:
        return [fn(item) for item in items]

    chunksize = max(1, len(items) // (4 * n_workers))
    with ProcessPoolExecutor(max_workers=n_workers) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))


__all__ = ["parallel_map", "resolve_workers"]
