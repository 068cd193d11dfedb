# K3 Lines - 检查点、结果存储与报告单元测试
# 测试检查点续跑与拒绝、结果去重与查询、报告汇总与预期断言

import json

import pytest

from k3lines.checkpoint import CHECKPOINT_VERSION, CheckpointManager
from k3lines.core.exceptions import CampaignAssertionError, CheckpointVersionError, ConfigError
from k3lines.fano import ConfigGraph
from k3lines.report import CampaignReport, UnitFragment, UnitRunner
from k3lines.store import ResultRecord, ResultsStore
from k3lines.trig.extend import Harvester


def _record(key, lines, exceptional=0, campaign="default"):
    return ResultRecord(
        key=key,
        line_count=lines,
        exceptional_count=exceptional,
        graph=ConfigGraph.path(1).to_json(),
        campaign=campaign,
    )


def _summary(key, lines, exceptional=0):
    return {"key": key, "line_count": lines, "exceptional_count": exceptional, "kernel_order": 1}


class TestCheckpoint:
    """检查点测试类"""

    def test_resume_restores_fragments(self, tmp_path):
        """测试完成的单元在续跑时被恢复"""
        path = tmp_path / "run.ckpt.json"
        manager = CheckpointManager(path, "hash-a", "run")
        manager.load()
        manager.complete("unit-1", {"value": 1})

        again = CheckpointManager(path, "hash-a", "run")
        state = again.load()
        assert state.completed == ["unit-1"]
        assert again.is_done("unit-1")
        assert again.fragment("unit-1") == {"value": 1}

    def test_no_resume_starts_fresh(self, tmp_path):
        """测试 resume 为假时忽略已有检查点"""
        path = tmp_path / "run.ckpt.json"
        manager = CheckpointManager(path, "hash-a")
        manager.complete("unit-1", {})
        again = CheckpointManager(path, "hash-a")
        again.load(resume=False)
        assert not again.is_done("unit-1")

    def test_hash_mismatch_rejected(self, tmp_path):
        """测试配置哈希不匹配时拒绝续跑"""
        path = tmp_path / "run.ckpt.json"
        CheckpointManager(path, "hash-a").complete("unit-1", {})
        with pytest.raises(CheckpointVersionError) as exc_info:
            CheckpointManager(path, "hash-b").load()
        assert exc_info.value.exit_code == 2

    def test_version_mismatch_rejected(self, write_json):
        """测试版本号不匹配时拒绝续跑"""
        path = write_json("old.ckpt.json", {"version": CHECKPOINT_VERSION + 1, "config_hash": "hash-a"})
        with pytest.raises(CheckpointVersionError):
            CheckpointManager(path, "hash-a").load()

    def test_unreadable_checkpoint(self, tmp_path):
        """测试无法解析的检查点"""
        path = tmp_path / "broken.ckpt.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ConfigError):
            CheckpointManager(path, "hash-a").load()

    def test_in_memory_checkpoint(self, tmp_path):
        """测试 path 为 None 时不落盘"""
        manager = CheckpointManager(None, "hash-a")
        manager.complete("unit-1", {"value": 2})
        assert manager.is_done("unit-1")
        assert list(tmp_path.iterdir()) == []

    def test_no_temporary_files_left(self, tmp_path):
        """测试原子写入后只留下检查点文件"""
        path = tmp_path / "run.ckpt.json"
        manager = CheckpointManager(path, "hash-a")
        for i in range(3):
            manager.complete(f"unit-{i}", {"i": i})
        assert [p.name for p in tmp_path.iterdir()] == ["run.ckpt.json"]
        assert len(json.loads(path.read_text(encoding="utf-8"))["completed"]) == 3


class TestResultsStore:
    """结果存储测试类"""

    def test_missing_store_is_empty(self, tmp_path):
        """测试不存在的存储查询为空"""
        store = ResultsStore(tmp_path / "absent.jsonl")
        assert store.query() == []
        assert len(store) == 0

    def test_duplicates_written_once(self, tmp_path):
        """测试相同规范键只写一次"""
        path = tmp_path / "results.jsonl"
        with ResultsStore(path) as store:
            assert store.put(_record("k1", 10))
            assert not store.put(_record("k1", 10))
        assert len(path.read_text(encoding="utf-8").splitlines()) == 1

        reopened = ResultsStore(path)
        assert "k1" in reopened
        assert not reopened.put(_record("k1", 10))
        reopened.close()

    def test_index_rebuilt_when_missing(self, tmp_path):
        """测试索引文件缺失时从 JSONL 重建"""
        path = tmp_path / "results.jsonl"
        with ResultsStore(path) as store:
            store.put(_record("k1", 10))
            store.put(_record("k2", 12))
        (tmp_path / "results.jsonl.index.json").unlink()
        assert len(ResultsStore(path)) == 2

    def test_query_order_and_filters(self, tmp_path):
        """测试查询按线数、例外除子数降序排列并过滤"""
        path = tmp_path / "results.jsonl"
        with ResultsStore(path) as store:
            store.put(_record("a", 10, 0, campaign="one"))
            store.put(_record("b", 12, 1, campaign="one"))
            store.put(_record("c", 12, 3, campaign="two"))
        store = ResultsStore(path)
        assert [r.key for r in store.query()] == ["c", "b", "a"]
        assert [r.key for r in store.query(min_lines=11)] == ["c", "b"]
        assert [r.key for r in store.query(min_exceptional=2)] == ["c"]
        assert [r.key for r in store.query(campaign="one")] == ["b", "a"]

    def test_malformed_line(self, tmp_path):
        """测试格式错误的记录行"""
        path = tmp_path / "results.jsonl"
        path.write_text('{"key": "x"}\n', encoding="utf-8")
        with pytest.raises(ConfigError):
            ResultsStore(path).query()


class TestCampaignReport:
    """战役报告测试类"""

    def _report(self):
        report = CampaignReport("triangular", "run", "hash-a")
        report.add(UnitFragment("u1", ruled_out=[{"set": "x"}], harvested=[_summary("k1", 50, 2)], max_size=30))
        report.add(UnitFragment("u2", harvested=[_summary("k1", 50, 2), _summary("k2", 56, 0)], max_size=31))
        return report.finish()

    def test_summary(self):
        """测试汇总字段"""
        summary = self._report().summary()
        assert summary["units"] == 2
        assert summary["ruled_out"] == 1
        assert summary["harvested"] == 2
        assert summary["max_lines"] == 56
        assert summary["max_size"] == 31
        assert summary["all_ruled_out"]

    def test_harvested_sorted_and_merged(self):
        """测试采集记录去重并按线数降序"""
        assert [r["key"] for r in self._report().harvested] == ["k2", "k1"]

    def test_body_is_deterministic(self):
        """测试 body 与时间无关"""
        first = self._report()
        second = self._report()
        assert first.body_bytes() == second.body_bytes()
        assert "started_at" in first.to_json()["header"]

    def test_check_expected(self):
        """测试预期结果比较"""
        report = self._report()
        assert report.check_expected({"all_ruled_out": True, "harvested": 2}) == []
        assert report.check_expected({"harvested_above": {"lines": 52, "count": 1}}) == []
        mismatches = report.check_expected({"survivors": 1, "bogus": 0})
        assert len(mismatches) == 2

    def test_assert_expected(self):
        """测试预期不符时抛出断言错误"""
        with pytest.raises(CampaignAssertionError) as exc_info:
            self._report().assert_expected({"max_lines": 60})
        assert exc_info.value.exit_code == 3


class TestUnitRunner:
    """工作单元推进测试类"""

    def test_completed_units_are_restored(self):
        """测试已完成的单元不再执行"""
        checkpoint = CheckpointManager(None, "hash-a")
        calls = []

        def work(fragment):
            calls.append(fragment.unit)
            fragment.ruled_out.append({"set": fragment.unit})

        first = CampaignReport("triangular")
        UnitRunner(first, checkpoint, Harvester(), lambda: 0).run("u1", work)
        second = CampaignReport("triangular")
        UnitRunner(second, checkpoint, Harvester(), lambda: 0).run("u1", work)

        assert calls == ["u1"]
        assert second.resumed_units == 1
        assert first.body_bytes() == second.body_bytes()
