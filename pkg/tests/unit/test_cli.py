# K3 Lines - 命令行单元测试
# 测试 analyze、report 与 campaign 命令的输出与退出码

import json

from typer.testing import CliRunner

from k3lines import __version__
from k3lines.admiss import BatteryMode
from k3lines.cli import analyze_graph, app
from k3lines.store import ResultRecord, ResultsStore

runner = CliRunner()


class TestAnalyze:
    """analyze 命令测试类"""

    def test_single_line_json(self, write_json, single_line):
        """测试单线的 JSON 分析结果"""
        path = write_json("line.json", single_line.to_json())
        result = runner.invoke(app, ["analyze", str(path), "--json"])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["lines"] == 1
        assert data["battery"]["acceptable"]
        assert data["battery"]["rank"] == 2
        assert data["completions"]
        assert data["saturations"] == []

    def test_json_matches_library(self, write_json, triangle):
        """测试 JSON 输出与 analyze_graph 一致"""
        path = write_json("triangle.json", triangle.to_json())
        result = runner.invoke(app, ["analyze", str(path), "--json", "--smooth"])
        assert result.exit_code == 0
        expected = json.loads(json.dumps(analyze_graph(triangle, BatteryMode.SMOOTH), sort_keys=True))
        assert json.loads(result.stdout) == expected
        assert expected["girth_class"] == "triangular"
        assert any(c["kernel_order"] == 1 and c["lines"] == 4 for c in expected["completions"])

    def test_pencil_section(self, triangle):
        """测试最小纤维的束分解"""
        result = analyze_graph(triangle.add_vertex([0]))
        assert [p["fiber_type"] for p in result["pencils"]] == ["~A2"]

    def test_table_output(self, write_json, single_line):
        """测试表格输出"""
        path = write_json("line.json", single_line.to_json())
        result = runner.invoke(app, ["analyze", str(path)])
        assert result.exit_code == 0
        assert "acceptable" in result.stdout

    def test_bad_graph_file(self, write_json):
        """测试格式错误的图文件以退出码 2 结束"""
        path = write_json("bad.json", {"edges": [[0, 1]]})
        result = runner.invoke(app, ["analyze", str(path)])
        assert result.exit_code == 2

    def test_missing_graph_file(self, tmp_path):
        """测试不存在的图文件以退出码 2 结束"""
        result = runner.invoke(app, ["analyze", str(tmp_path / "absent.json")])
        assert result.exit_code == 2


class TestReport:
    """report 命令测试类"""

    def test_empty_store(self, tmp_path):
        """测试空存储"""
        result = runner.invoke(app, ["report", str(tmp_path / "results.jsonl"), "--json"])
        assert result.exit_code == 0
        assert json.loads(result.stdout) == []

    def test_filters(self, tmp_path, single_line):
        """测试过滤条件与排序"""
        path = tmp_path / "results.jsonl"
        with ResultsStore(path) as store:
            for key, lines, exc in (("a", 50, 0), ("b", 56, 2), ("c", 48, 8)):
                store.put(
                    ResultRecord(
                        key=key, line_count=lines, exceptional_count=exc, graph=single_line.to_json(), campaign="t"
                    )
                )
        result = runner.invoke(app, ["report", str(path), "--min-lines", "49", "--json"])
        assert result.exit_code == 0
        assert [row["key"] for row in json.loads(result.stdout)] == ["b", "a"]

        result = runner.invoke(app, ["report", str(path), "--min-exc", "6", "--json"])
        assert [row["key"] for row in json.loads(result.stdout)] == ["c"]

        result = runner.invoke(app, ["report", str(path), "--campaign", "other", "--json"])
        assert json.loads(result.stdout) == []


class TestCampaignCommand:
    """campaign 命令的错误路径测试类"""

    def test_invalid_config(self, write_json):
        """测试配置校验失败以退出码 2 结束"""
        path = write_json("bad.json", {"kind": "hexagonal"})
        result = runner.invoke(app, ["campaign", str(path)])
        assert result.exit_code == 2

    def test_version(self):
        """测试版本命令"""
        result = runner.invoke(app, ["version"])
        assert result.exit_code == 0
        assert __version__ in result.stdout
