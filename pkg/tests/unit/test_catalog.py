# K3 Lines - 束目录单元测试
# 测试 Dynkin 记号解析、标准图、小规模束生成与目录读写校验

import pytest

from k3lines.catalog import (
    PencilRecord,
    dynkin_graph,
    generate_small_pencils,
    load_catalog,
    parse_label,
    save_catalog,
)
from k3lines.core.exceptions import CatalogValidationError, GraphError, PreconditionError
from k3lines.fano import PARABOLIC, ConfigGraph, DynkinLabel, classify_graph, dynkin_type


class TestLabels:
    """Dynkin 记号测试类"""

    def test_parse(self):
        """测试记号解析"""
        assert parse_label("~A3") == DynkinLabel("A", 3, affine=True)
        assert parse_label("D5") == DynkinLabel("D", 5)
        assert parse_label(" ~E8 ") == DynkinLabel("E", 8, affine=True)

    @pytest.mark.parametrize("text", ["E9", "~A1", "D3", "X3", "A"])
    def test_parse_rejects(self, text):
        """测试不存在或不是简单图的类型"""
        with pytest.raises(GraphError):
            parse_label(text)

    @pytest.mark.parametrize("text", ["A3", "D5", "E6", "E8", "~A2", "~A5", "~D4", "~D6", "~E6", "~E7", "~E8"])
    def test_standard_graphs(self, text):
        """测试标准图的 Dynkin 类型与记号一致"""
        label = parse_label(text)
        assert dynkin_type(dynkin_graph(label)) == label


class TestGeneration:
    """小规模束生成测试类"""

    def test_bare_triangle(self):
        """测试大小 3 时只有三角形本身"""
        records = generate_small_pencils("~A2", 3)
        assert len(records) == 1
        assert records[0].fiber == [0, 1, 2]
        assert records[0].size == 3

    def test_larger_pencils(self):
        """测试大小 6 的束都是抛物的且互不同构"""
        records = generate_small_pencils("~A2", 6)
        assert len(records) > 1
        assert all(classify_graph(r.config_graph) == PARABOLIC for r in records)
        assert len({r.source for r in records}) == len(records)
        assert all(r.source.startswith("generated:~A2") for r in records)

    def test_fiber_larger_than_budget(self):
        """测试纤维本身超过大小上限时为空"""
        assert generate_small_pencils("~E8", 8) == []

    def test_size_cap(self):
        """测试大小上限 14"""
        with pytest.raises(PreconditionError):
            generate_small_pencils("~A2", 15)

    def test_fiber_must_be_affine(self):
        """测试纤维必须是仿射类型"""
        with pytest.raises(PreconditionError):
            generate_small_pencils("A3", 6)


class TestCatalogIO:
    """目录读写测试类"""

    def test_empty_file(self, tmp_path):
        """测试空目录"""
        path = tmp_path / "empty.jsonl"
        path.write_text("", encoding="utf-8")
        assert load_catalog(path) == []

    def test_round_trip(self, tmp_path):
        """测试保存后读取得到相同的束"""
        records = generate_small_pencils("~A3", 6)
        path = tmp_path / "pencils.jsonl"
        assert save_catalog(path, records) == len(records)
        loaded = load_catalog(path)
        assert [r.graph for r in loaded] == [r.graph for r in records]
        assert [r.fiber for r in loaded] == [r.fiber for r in records]

    def test_missing_file(self, tmp_path):
        """测试目录文件不存在"""
        with pytest.raises(CatalogValidationError):
            load_catalog(tmp_path / "absent.jsonl")

    def test_hyperbolic_record_rejected(self, tmp_path, triangle):
        """测试非抛物的束图被拒绝，错误中注明记录位置"""
        record = PencilRecord(fiber_type="~A2", graph=triangle.add_vertex([0]).to_json(), source="hand")
        path = tmp_path / "bad.jsonl"
        save_catalog(path, [record])
        with pytest.raises(CatalogValidationError) as exc_info:
            load_catalog(path)
        assert exc_info.value.details["check"] == "parabolic"
        assert exc_info.value.details["record"] == "bad.jsonl:1"
        assert exc_info.value.exit_code == 2

    def test_fiber_type_mismatch(self, triangle):
        """测试声明的纤维类型与束图不符"""
        record = PencilRecord(fiber_type="~A3", graph=triangle.to_json())
        with pytest.raises(CatalogValidationError):
            record.validated()

    def test_non_affine_fiber_type(self):
        """测试纤维类型不是仿射的"""
        with pytest.raises(CatalogValidationError):
            PencilRecord(fiber_type="A3", graph=ConfigGraph.path(3).to_json()).validated()

    def test_malformed_line(self, tmp_path):
        """测试格式错误的记录行"""
        path = tmp_path / "broken.jsonl"
        path.write_text('{"fiber_type": "~A2"}\n', encoding="utf-8")
        with pytest.raises(CatalogValidationError):
            load_catalog(path)

    def test_fiber_is_derived(self, triangle):
        """测试缺省 fiber 时从束图中找出纤维并排在最前"""
        graph = ConfigGraph.path(1).disjoint_union(triangle)
        record = PencilRecord(fiber_type="~A2", graph=graph.to_json()).validated()
        assert sorted(record.fiber) == [1, 2, 3]
        normalized, fiber = record.normalized()
        assert fiber == (0, 1, 2)
        assert str(dynkin_type(normalized.induced(list(fiber)))) == "~A2"
