#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
命令行入口

命令：
- analyze <file>：单个配置图的检验组合、秩、围长类别、束分解与饱和列表
- campaign <config>：运行搜索战役（检查点续跑、结果存储、报告）
- report <store>：按线数与例外除子数过滤结果存储

退出码：0 成功，2 校验错误，3 战役断言失败。

Author: K3 Lines Team
Date: 2024
"""

import json
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import typer
from rich.console import Console
from rich.table import Table

from k3lines import __version__
from k3lines.admiss import BatteryMode, kernel_saturations, saturation_list, test_battery
from k3lines.checkpoint import CheckpointManager
from k3lines.core.config import settings
from k3lines.core.exceptions import GraphError, K3LinesError
from k3lines.fano import ConfigGraph, decompose_pencil, girth_class, minimal_fibers
from k3lines.girthsearch import campaign_astral, campaign_pentagonal, campaign_quadrangular
from k3lines.report import CampaignReport
from k3lines.store import ResultRecord, ResultsStore
from k3lines.trig.campaign import campaign_smooth, campaign_triangular
from shared.config.campaign_config import CampaignConfig
from shared.utils.logger import configure_logging, get_logger

logger = get_logger(__name__)

app = typer.Typer(name="k3lines", help="K3 四次曲面直线配置的格论分类工具", no_args_is_help=True)
console = Console()

_CAMPAIGNS: Dict[str, Callable[..., CampaignReport]] = {
    "triangular": campaign_triangular,
    "smooth": campaign_smooth,
    "quadrangular": campaign_quadrangular,
    "pentagonal": campaign_pentagonal,
    "astral": campaign_astral,
}


def _fail(exc: K3LinesError) -> "typer.Exit":
    logger.error("command failed", error=exc.__class__.__name__, message=exc.message, details=exc.details)
    console.print(f"[bold red]{exc.__class__.__name__}[/bold red]: {exc.message}")
    return typer.Exit(code=getattr(exc, "exit_code", 1) or 1)


@app.callback()
def main(
    log_level: str = typer.Option(settings.LOG_LEVEL, "--log-level", help="日志级别"),
    log_format: str = typer.Option(settings.LOG_FORMAT, "--log-format", help="console 或 json"),
) -> None:
    configure_logging(log_level, log_format)


@app.command()
def version() -> None:
    """显示版本"""
    console.print(f"k3lines {__version__}")


# ==================== analyze ====================


def analyze_graph(graph: ConfigGraph, mode: BatteryMode = BatteryMode.SINGULAR) -> Dict[str, Any]:
    """单个图的完整分析结果（JSON 友好）"""
    verdict = test_battery(graph, mode, check_geometric=True)
    result: Dict[str, Any] = {
        "lines": graph.line_count,
        "exceptional": graph.exceptional_count,
        "battery": verdict.to_dict(),
    }
    try:
        result["girth_class"] = girth_class(graph)
    except GraphError:
        result["girth_class"] = None

    result["pencils"] = []
    for label, fiber in minimal_fibers(graph):
        pencil = decompose_pencil(graph, fiber)
        result["pencils"].append({"fiber_type": str(label), **pencil.to_json()})

    result["completions"] = []
    result["saturations"] = []
    if verdict.hyperbolic and verdict.subgeometric:
        if verdict.rank == 20:
            result["saturations"] = [
                {k: v for k, v in record.to_dict().items() if k not in ("graph", "extended")}
                for record in saturation_list(graph, mode=mode)
            ]
        else:
            for ext, sat in kernel_saturations(graph, mode):
                result["completions"].append(
                    {"kernel_order": ext.kernel_order, "lines": sat.n, "graph": sat.to_json()}
                )
    return result


def _print_analysis(path: Path, result: Dict[str, Any]) -> None:
    battery = result["battery"]
    table = Table(title=f"{path.name}: {result['lines']} 条直线")
    table.add_column("检验")
    table.add_column("结果")
    for name in ("hyperbolic", "admissible", "extensible", "subgeometric", "geometric", "acceptable"):
        table.add_row(name, str(battery[name]))
    table.add_row("rank", str(battery["rank"]))
    table.add_row("failed_test", str(battery["failed_test"]))
    table.add_row("girth class", str(result["girth_class"]))
    console.print(table)

    if result["pencils"]:
        pencils = Table(title="最小纤维的束分解")
        for column in ("fiber", "type", "|P|", "|sec*|", "multiple"):
            pencils.add_column(column)
        for item in result["pencils"]:
            multiple = [v for v, m in item["multiplicity"].items() if m >= 2]
            pencils.add_row(
                str(item["fiber"]), item["fiber_type"], str(len(item["pencil"])), str(len(item["sec_star"])), str(multiple)
            )
        console.print(pencils)

    if result["completions"]:
        completions = Table(title="核饱和")
        completions.add_column("|K|")
        completions.add_column("lines")
        for item in result["completions"]:
            completions.add_row(str(item["kernel_order"]), str(item["lines"]))
        console.print(completions)

    if result["saturations"]:
        _print_records("饱和列表", result["saturations"])


@app.command()
def analyze(
    graph_file: Path = typer.Argument(..., help="配置图 JSON 文件"),
    smooth: bool = typer.Option(False, "--smooth", help="使用光滑检验组合"),
    as_json: bool = typer.Option(False, "--json", help="输出 JSON"),
) -> None:
    """分析单个配置图"""
    mode = BatteryMode.SMOOTH if smooth else BatteryMode.SINGULAR
    try:
        try:
            graph = ConfigGraph.load(graph_file)
        except OSError as exc:
            raise GraphError(f"无法读取图文件: {exc}", {"path": str(graph_file)}) from exc
        result = analyze_graph(graph, mode)
    except K3LinesError as exc:
        raise _fail(exc) from exc
    if as_json:
        typer.echo(json.dumps(result, sort_keys=True, ensure_ascii=False))
    else:
        _print_analysis(graph_file, result)


# ==================== campaign ====================


def run_campaign(config: CampaignConfig, resume: bool = True) -> CampaignReport:
    """按配置运行战役；采集记录写入 store_path（若给出）"""
    checkpoint = CheckpointManager(config.checkpoint_path, config.config_hash(), config.campaign_id)
    runner = _CAMPAIGNS[config.kind]
    if config.store_path is None:
        return runner(config, checkpoint=checkpoint, resume=resume)
    with ResultsStore(config.store_path) as store:
        def sink(record: Any) -> None:
            store.put_saturation(record, campaign=config.campaign_id, source=config.kind)

        return runner(config, checkpoint=checkpoint, sink=sink, resume=resume)


@app.command()
def campaign(
    config_file: Path = typer.Argument(..., help="战役配置 JSON 文件"),
    resume: bool = typer.Option(True, "--resume/--no-resume", help="从检查点续跑"),
    workers: Optional[int] = typer.Option(None, "--workers", min=1, help="并行进程数，缺省取 K3LINES_WORKERS"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="报告 JSON 输出路径"),
) -> None:
    """运行搜索战役"""
    try:
        config = CampaignConfig.from_file(config_file)
        if workers is not None:
            config = config.model_copy(update={"workers": workers})
        logger.info("campaign starting", kind=config.kind, campaign_id=config.campaign_id, resume=resume)
        report = run_campaign(config, resume)
    except K3LinesError as exc:
        raise _fail(exc) from exc

    if output is not None:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(json.dumps(report.to_json(), sort_keys=True, indent=2, ensure_ascii=False), encoding="utf-8")

    summary = report.summary()
    table = Table(title=f"{config.kind} 战役 {config.campaign_id}")
    table.add_column("项目")
    table.add_column("值")
    for name, value in summary.items():
        table.add_row(name, str(value))
    table.add_row("nodes_evaluated", str(report.nodes_evaluated))
    table.add_row("wall_clock_seconds", f"{report.wall_clock or 0.0:.2f}")
    console.print(table)


# ==================== report ====================


def _print_records(title: str, rows: List[Dict[str, Any]]) -> None:
    table = Table(title=title)
    for column in ("key", "lines", "exceptional", "|K|"):
        table.add_column(column)
    for row in rows:
        table.add_row(
            str(row["key"])[:16], str(row["line_count"]), str(row["exceptional_count"]), str(row["kernel_order"])
        )
    console.print(table)


def _row(record: ResultRecord) -> Dict[str, Any]:
    return {
        "key": record.key,
        "line_count": record.line_count,
        "exceptional_count": record.exceptional_count,
        "kernel_order": record.kernel_order,
        "campaign": record.campaign,
        "source": record.source,
    }


@app.command()
def report(
    store_path: Path = typer.Argument(..., help="结果存储 JSONL 文件"),
    min_lines: Optional[int] = typer.Option(None, "--min-lines", help="线数下限"),
    min_exc: Optional[int] = typer.Option(None, "--min-exc", help="例外除子数下限"),
    campaign_id: Optional[str] = typer.Option(None, "--campaign", help="只显示该战役的记录"),
    as_json: bool = typer.Option(False, "--json", help="输出 JSON"),
) -> None:
    """过滤并列出结果存储中的记录"""
    try:
        records = ResultsStore(store_path).query(min_lines, min_exc, campaign_id)
    except K3LinesError as exc:
        raise _fail(exc) from exc
    rows = [_row(r) for r in records]
    if as_json:
        typer.echo(json.dumps(rows, sort_keys=True, ensure_ascii=False))
    else:
        _print_records(f"{store_path.name}: {len(rows)} 条记录", rows)


__all__ = ["app", "analyze_graph", "run_campaign"]
