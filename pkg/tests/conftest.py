# K3 Lines - 测试配置文件
# 包含 pytest 的全局配置和 fixtures

import json
import os
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Generator

import pytest

# 添加项目根目录到 Python 路径
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

# 测试环境配置
os.environ.setdefault("LOG_LEVEL", "WARNING")
os.environ.setdefault("LOG_FORMAT", "console")
os.environ.setdefault("K3LINES_WORKERS", "1")

from k3lines.admiss import clear_caches  # noqa: E402
from k3lines.fano import ConfigGraph  # noqa: E402


@pytest.fixture(autouse=True)
def fresh_caches() -> Generator[None, None, None]:
    """每个测试使用空的判定缓存"""
    clear_caches()
    yield
    clear_caches()


@pytest.fixture
def single_line() -> ConfigGraph:
    """单条直线"""
    return ConfigGraph.path(1)


@pytest.fixture
def triangle() -> ConfigGraph:
    """三角形 Ã₂"""
    return ConfigGraph.cycle(3)


@pytest.fixture
def square() -> ConfigGraph:
    """四边形 Ã₃"""
    return ConfigGraph.cycle(4)


@pytest.fixture
def write_json(tmp_path: Path) -> Callable[[str, Any], Path]:
    """把对象写成 tmp_path 下的 JSON 文件"""

    def _write(name: str, payload: Any) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def toy_triangular_config(tmp_path: Path) -> Dict[str, Any]:
    """缩小规模的三角形战役配置"""
    return {
        "kind": "triangular",
        "campaign_id": "toy-trig",
        "toy": True,
        "threshold": 10,
        "min_pencil_size": 3,
        "max_pattern_size": 3,
        "valency_cap": 8,
        "harvest": {"min_lines": 100, "min_exceptional": 100},
        "checkpoint_path": str(tmp_path / "trig.ckpt.json"),
    }


@pytest.fixture
def toy_quadrangular_config(tmp_path: Path) -> Dict[str, Any]:
    """缩小规模的四边形战役配置（只跑生成束，不跑标准图起点）"""
    return {
        "kind": "quadrangular",
        "campaign_id": "toy-quad",
        "toy": True,
        "seeds": [],
        "target_size": 7,
        "min_pencil_size": 4,
        "generated_pencil_size": 5,
        "max_support": 2,
        "harvest": {"min_lines": 100, "min_exceptional": 100},
        "checkpoint_path": str(tmp_path / "quad.ckpt.json"),
    }


# 测试配置
def pytest_configure(config):
    """pytest 配置"""
    config.addinivalue_line("markers", "unit: 标记单元测试")
    config.addinivalue_line("markers", "integration: 标记集成测试")
    config.addinivalue_line("markers", "slow: 标记慢速测试")
    config.addinivalue_line("markers", "performance: 标记性能测试")


# 测试收集配置
def pytest_collection_modifyitems(config, items):
    """修改测试收集配置"""
    # 为没有标记的测试添加 unit 标记
    for item in items:
        if not any(
            mark.name in ["unit", "integration", "performance"]
            for mark in item.iter_markers()
        ):
            item.add_marker(pytest.mark.unit)
