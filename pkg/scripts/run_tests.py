#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
K3 Lines - 测试运行脚本
按测试类型组装 pytest 命令，生成覆盖率与 JUnit 报告

Author: K3 Lines Team
Date: 2024
"""

import argparse
import shutil
import subprocess
import sys
from pathlib import Path
from typing import List, Optional

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

COVERAGE_TARGETS = ["--cov=k3lines", "--cov=shared"]


class TestRunner:
    """测试运行器类"""

    __test__ = False

    def __init__(self, project_root: Path):
        self.project_root = project_root
        self.reports_dir = project_root / "reports"
        self.reports_dir.mkdir(exist_ok=True)
        (self.reports_dir / "coverage").mkdir(exist_ok=True)

    def run_command(self, cmd: List[str], description: str) -> bool:
        """运行命令并返回是否成功"""
        print(f"\n🚀 {description}")
        print(f"执行命令: {' '.join(cmd)}")
        print("-" * 60)
        result = subprocess.run(cmd, cwd=self.project_root, check=False)
        if result.returncode == 0:
            print(f"\n✅ {description} 成功完成")
            return True
        print(f"\n❌ {description} 失败 (退出码: {result.returncode})")
        return False

    def _pytest(self, target: str, verbose: bool, marker: Optional[str] = None) -> List[str]:
        cmd = [sys.executable, "-m", "pytest", target]
        if verbose:
            cmd.extend(["-v", "-s"])
        if marker:
            cmd.extend(["-m", marker])
        return cmd

    def _coverage(self, name: str) -> List[str]:
        return COVERAGE_TARGETS + [
            f"--cov-report=html:reports/coverage/{name}",
            "--cov-report=term-missing",
            f"--cov-report=xml:reports/coverage/{name}_coverage.xml",
        ]

    def run_unit_tests(self, verbose: bool = False, coverage: bool = True) -> bool:
        """运行单元测试"""
        cmd = self._pytest("tests/unit/", verbose, "unit")
        if coverage:
            cmd.extend(self._coverage("unit"))
        cmd.append("--junitxml=reports/unit_tests.xml")
        return self.run_command(cmd, "单元测试")

    def run_integration_tests(self, verbose: bool = False) -> bool:
        """运行集成测试（缩小规模的战役）"""
        cmd = self._pytest("tests/integration/", verbose, "integration")
        cmd.append("--junitxml=reports/integration_tests.xml")
        return self.run_command(cmd, "集成测试")

    def run_performance_tests(self, verbose: bool = False) -> bool:
        """运行性能测试"""
        cmd = self._pytest("tests/performance/", verbose, "performance")
        cmd.extend(["--junitxml=reports/performance_tests.xml", "--durations=0"])
        return self.run_command(cmd, "性能测试")

    def run_all_tests(self, verbose: bool = False, parallel: bool = False, fast: bool = False) -> bool:
        """运行所有测试，fast 时跳过慢速测试"""
        cmd = self._pytest("tests/", verbose, "not slow" if fast else None)
        if parallel:
            cmd.extend(["-n", "auto"])
        cmd.extend(self._coverage("all"))
        cmd.append("--junitxml=reports/all_tests.xml")
        return self.run_command(cmd, "所有测试")

    def run_specific_tests(self, test_path: str, markers: Optional[List[str]] = None, verbose: bool = False) -> bool:
        """运行指定的测试"""
        marker = " and ".join(markers) if markers else None
        cmd = self._pytest(test_path, verbose, marker)
        return self.run_command(cmd, f"指定测试: {test_path}")

    def run_failed_tests(self, verbose: bool = False) -> bool:
        """重新运行失败的测试"""
        cmd = [sys.executable, "-m", "pytest", "--lf"]
        if verbose:
            cmd.extend(["-v", "-s"])
        return self.run_command(cmd, "重新运行失败的测试")

    def clean_cache(self) -> bool:
        """清理测试缓存"""
        for name in (".pytest_cache", ".coverage", "htmlcov", "tests.log"):
            path = self.project_root / name
            if path.is_file():
                path.unlink()
                print(f"删除文件: {path}")
            elif path.exists():
                shutil.rmtree(path)
                print(f"删除目录: {path}")
        for cache in self.project_root.rglob("__pycache__"):
            if "examples" not in cache.parts:
                shutil.rmtree(cache, ignore_errors=True)
        print("\n🧹 测试缓存清理完成")
        return True


def main():
    """主函数"""
    parser = argparse.ArgumentParser(
        description="K3 Lines 测试运行器",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例用法:
  python scripts/run_tests.py --unit -v          # 详细运行单元测试
  python scripts/run_tests.py --all --fast       # 跳过慢速测试
  python scripts/run_tests.py --specific tests/unit/test_intlat.py
        """,
    )

    test_group = parser.add_mutually_exclusive_group()
    test_group.add_argument("--unit", action="store_true", help="运行单元测试")
    test_group.add_argument("--integration", action="store_true", help="运行集成测试")
    test_group.add_argument("--performance", action="store_true", help="运行性能测试")
    test_group.add_argument("--all", action="store_true", help="运行所有测试")
    test_group.add_argument("--failed", action="store_true", help="重新运行失败的测试")
    test_group.add_argument("--specific", type=str, help="运行指定路径的测试")

    parser.add_argument("-v", "--verbose", action="store_true", help="详细输出")
    parser.add_argument("--parallel", action="store_true", help="并行运行测试（pytest-xdist）")
    parser.add_argument("--fast", action="store_true", help="跳过标记为 slow 的测试")
    parser.add_argument("--no-coverage", action="store_true", help="跳过覆盖率统计")
    parser.add_argument("--markers", nargs="+", help="指定测试标记")
    parser.add_argument("--clean", action="store_true", help="清理测试缓存")

    args = parser.parse_args()
    runner = TestRunner(project_root)

    if args.clean:
        runner.clean_cache()
        return

    if args.integration:
        success = runner.run_integration_tests(args.verbose)
    elif args.performance:
        success = runner.run_performance_tests(args.verbose)
    elif args.all:
        success = runner.run_all_tests(args.verbose, args.parallel, args.fast)
    elif args.failed:
        success = runner.run_failed_tests(args.verbose)
    elif args.specific:
        success = runner.run_specific_tests(args.specific, args.markers, args.verbose)
    else:
        success = runner.run_unit_tests(args.verbose, not args.no_coverage)

    if success:
        print(f"\n🎉 测试执行成功！报告目录: {runner.reports_dir}")
        sys.exit(0)
    print(f"\n💥 测试执行失败！报告目录: {runner.reports_dir}")
    sys.exit(1)


if __name__ == "__main__":
    main()
