# K3 Lines - 多模式驱动单元测试
# 测试多模式分层调度、充足结论的传播以及与逐个模式扩张的一致性

from k3lines.fano import Pattern
from k3lines.trig.driver import COMPUTED, multi_pattern_driver
from k3lines.trig.extend import (
    A1,
    A2,
    Constraint,
    Polysection,
    SearchNode,
    SectionLists,
    TriangularExtender,
    extend_by_set,
)

FIBER = (0, 1, 2)
WIDE = frozenset({0, 1})


def _wide(node: SearchNode) -> bool:
    return WIDE in node.provenance[1].supports


class ScriptedExtender(TriangularExtender):
    """A₂ 层的前两步给出 Γ₂′ 与 Γ₂″，此后两图分别至多再添加 3 条与 4 条多截线"""

    def __init__(self):
        super().__init__(check_lemmas=False)

    def expand(self, node, kind, lists, constraint):
        self.nodes_evaluated += 1
        depth = len(node.provenance)
        if depth < 2:
            if kind != A2:
                return [], lists
            options = [[(0,), (0,)]] if depth == 0 else [[(0,), (0,)], [(0, 1), (0,)]]
        else:
            cap = 4 if _wide(node) else 3
            if depth - 2 >= cap:
                return [], lists
            options = [[(0,), (0,)]] if kind == A2 else [[(0,)]]
        return [node.child(Polysection.make(kind, supports)) for supports in options], lists


def _scripted_lists() -> SectionLists:
    return SectionLists(
        (frozenset({0}),),
        polysections={
            A2: (Polysection.make(A2, [(0,), (0,)]),),
            A1: (Polysection.make(A1, [(0,)]),),
        },
    )


class TestLayeredSchedule:
    """分层调度测试类"""

    PATTERNS = (Pattern(0, 0, 2, 6), Pattern(0, 0, 3, 4), Pattern(0, 0, 4, 2))

    def test_worked_schedule(self, triangle):
        """测试 Γ₂′ 在第 4 步、Γ₂″ 在第 5 步终止时前两个模式被排除"""
        constraint = Constraint.for_fixed(FIBER, (0,))
        report = multi_pattern_driver(
            ScriptedExtender(), SearchNode.root(triangle), self.PATTERNS, constraint, _scripted_lists()
        )
        first, second, third = self.PATTERNS
        assert report.verdicts[first].ample
        assert report.verdicts[second].ample
        assert not report.verdicts[third].ample
        assert set(report.ample_patterns) == {first, second}
        assert report.surviving_patterns == [third]

    def test_narrow_branch_is_dropped(self, triangle):
        """测试存活的图全部经过 Γ₂″"""
        constraint = Constraint.for_fixed(FIBER, (0,))
        report = multi_pattern_driver(
            ScriptedExtender(), SearchNode.root(triangle), self.PATTERNS, constraint, _scripted_lists()
        )
        survivors = report.survivors(self.PATTERNS[2])
        assert len(survivors) == 1
        assert _wide(survivors[0])
        assert survivors[0].added_pattern == self.PATTERNS[2]

    def test_verdicts_match_independent_runs(self, triangle):
        """测试与逐个模式的 extend_by_set 结论一致"""
        constraint = Constraint.for_fixed(FIBER, (0,))
        root = SearchNode.root(triangle)
        report = multi_pattern_driver(ScriptedExtender(), root, self.PATTERNS, constraint, _scripted_lists())
        for pattern in self.PATTERNS:
            single = ScriptedExtender().extend_by_set(root, pattern, constraint, _scripted_lists())
            assert report.verdicts[pattern].ample == single.ample
            assert {n.key(constraint) for n in report.survivors(pattern)} == {
                n.key(constraint) for n in single.survivors
            }

    def test_shared_prefixes_are_reused(self, triangle):
        """测试共享前缀只展开一次"""
        constraint = Constraint.for_fixed(FIBER, (0,))
        extender = ScriptedExtender()
        multi_pattern_driver(extender, SearchNode.root(triangle), self.PATTERNS, constraint, _scripted_lists())
        separate = 0
        for pattern in self.PATTERNS:
            single = ScriptedExtender()
            single.extend_by_set(SearchNode.root(triangle), pattern, constraint, _scripted_lists())
            separate += single.nodes_evaluated
        assert extender.nodes_evaluated < separate


class TestSinglePattern:
    """单个模式测试类"""

    def test_single_pattern_matches_extend_by_set(self, triangle):
        """测试单个模式的结果与 extend_by_set 相同"""
        constraint = Constraint.for_fixed(FIBER, (0,))
        pattern = Pattern(0, 0, 0, 1)
        report = multi_pattern_driver(TriangularExtender(), SearchNode.root(triangle), [pattern], constraint)
        direct = extend_by_set(triangle, pattern, fixed=(0,))
        verdict = report.verdicts[pattern]
        assert not verdict.ample
        assert not direct.ample
        assert verdict.decided_by == COMPUTED
        assert [n.graph.n for n in verdict.survivors] == [n.graph.n for n in direct.survivors] == [4]

    def test_no_patterns(self, triangle):
        """测试空模式列表"""
        constraint = Constraint.for_fixed(FIBER, (0,))
        report = multi_pattern_driver(TriangularExtender(), SearchNode.root(triangle), [], constraint)
        assert report.verdicts == {}
        assert report.to_json()["patterns"] == []
