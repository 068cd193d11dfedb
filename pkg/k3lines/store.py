#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
结果存储模块

采集到的几何配置追加写入 JSONL 文件，旁边的 .index.json 记录规范键到行号的映射。
写入由单个后台线程完成，搜索进程只向队列提交记录；相同规范键只写一次。

Author: K3 Lines Team
Date: 2024
"""

import json
import queue
import threading
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Set, Tuple, Union

from pydantic import BaseModel, Field, ValidationError

from k3lines.admiss import SaturationRecord
from k3lines.core.exceptions import ConfigError
from shared.utils.logger import get_logger

logger = get_logger(__name__)

_STOP = object()


class ResultRecord(BaseModel):
    """一个几何配置：直线图、带例外除子的扩图与来源"""

    key: str
    line_count: int = Field(ge=0)
    exceptional_count: int = Field(ge=0)
    kernel_order: int = Field(default=1, ge=1)
    graph: Dict[str, Any]
    extended: Optional[Dict[str, Any]] = None
    campaign: str = "default"
    source: Optional[str] = None

    @classmethod
    def from_saturation(
        cls, record: SaturationRecord, campaign: str = "default", source: Optional[str] = None
    ) -> "ResultRecord":
        return cls(
            key=record.key,
            line_count=record.line_count,
            exceptional_count=record.exceptional_count,
            kernel_order=record.kernel_order,
            graph=record.graph.to_json(),
            extended=record.extended.to_json(),
            campaign=campaign,
            source=source,
        )

    @property
    def sort_key(self) -> tuple:
        return (-self.line_count, -self.exceptional_count, self.key)


class ResultsStore:
    """JSONL 结果存储

    用作上下文管理器：进入时启动写线程，退出时排空队列并写出索引。
    """

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self.index_path = self.path.with_name(self.path.name + ".index.json")
        self._index: Dict[str, int] = {}
        self._lines = 0
        self._pending: Set[str] = set()
        self._lock = threading.Lock()
        self._queue: "queue.Queue[Any]" = queue.Queue()
        self._thread: Optional[threading.Thread] = None
        self._error: Optional[BaseException] = None
        self._load_index()

    # ---------- 索引 ----------

    def _load_index(self) -> None:
        if self.index_path.exists():
            try:
                data = json.loads(self.index_path.read_text(encoding="utf-8"))
                self._index = {str(k): int(v) for k, v in data["index"].items()}
                self._lines = int(data["lines"])
                return
            except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                logger.warning("index unreadable, rebuilding", path=str(self.index_path), error=str(exc))
        for lineno, record in self._iter_numbered():
            self._index.setdefault(record.key, lineno)
            self._lines = lineno

    def _write_index(self) -> None:
        self.index_path.parent.mkdir(parents=True, exist_ok=True)
        with self._lock:
            payload = {"lines": self._lines, "index": dict(sorted(self._index.items()))}
        self.index_path.write_text(json.dumps(payload), encoding="utf-8")

    # ---------- 写线程 ----------

    def start(self) -> "ResultsStore":
        if self._thread is None:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self._thread = threading.Thread(target=self._writer, name="k3lines-store", daemon=True)
            self._thread.start()
        return self

    def _writer(self) -> None:
        with self.path.open("a", encoding="utf-8") as handle:
            while True:
                item = self._queue.get()
                try:
                    if item is _STOP:
                        return
                    handle.write(item.model_dump_json() + "\n")
                    handle.flush()
                    with self._lock:
                        self._lines += 1
                        self._index[item.key] = self._lines
                        self._pending.discard(item.key)
                except OSError as exc:
                    self._error = exc
                    logger.error("result write failed", path=str(self.path), error=str(exc))
                finally:
                    self._queue.task_done()

    def close(self) -> None:
        if self._thread is not None:
            self._queue.put(_STOP)
            self._thread.join()
            self._thread = None
        self._write_index()
        if self._error is not None:
            raise ConfigError(f"结果写入失败: {self._error}", {"path": str(self.path)})

    def __enter__(self) -> "ResultsStore":
        return self.start()

    def __exit__(self, *exc_info: Any) -> None:
        self.close()

    # ---------- 接口 ----------

    def put(self, record: ResultRecord) -> bool:
        """提交记录；规范键已存在时返回 False"""
        with self._lock:
            if record.key in self._index or record.key in self._pending:
                return False
            self._pending.add(record.key)
        if self._thread is None:
            self.start()
        self._queue.put(record)
        return True

    def put_saturation(self, record: SaturationRecord, campaign: str = "default", source: Optional[str] = None) -> bool:
        return self.put(ResultRecord.from_saturation(record, campaign, source))

    def __contains__(self, key: object) -> bool:
        with self._lock:
            return key in self._index or key in self._pending

    def __len__(self) -> int:
        with self._lock:
            return len(self._index.keys() | self._pending)

    def iter_records(self) -> Iterator[ResultRecord]:
        for _, record in self._iter_numbered():
            yield record

    def _iter_numbered(self) -> Iterator[Tuple[int, ResultRecord]]:
        if not self.path.exists():
            return
        with self.path.open(encoding="utf-8") as handle:
            for lineno, line in enumerate(handle, 1):
                if not line.strip():
                    continue
                try:
                    yield lineno, ResultRecord.model_validate_json(line)
                except ValidationError as exc:
                    raise ConfigError(
                        "结果文件记录格式错误", {"path": str(self.path), "line": lineno, "error": str(exc)}
                    ) from exc

    def query(
        self,
        min_lines: Optional[int] = None,
        min_exceptional: Optional[int] = None,
        campaign: Optional[str] = None,
    ) -> List[ResultRecord]:
        """按线数降序、例外除子数降序、规范键升序返回满足条件的记录"""
        seen: Set[str] = set()
        result = []
        for record in self.iter_records():
            if record.key in seen:
                continue
            seen.add(record.key)
            if campaign is not None and record.campaign != campaign:
                continue
            if min_lines is not None and record.line_count < min_lines:
                continue
            if min_exceptional is not None and record.exceptional_count < min_exceptional:
                continue
            result.append(record)
        result.sort(key=lambda r: r.sort_key)
        return result


__all__ = ["ResultRecord", "ResultsStore"]
