"""
工具函数
日志初始化、JSON 持久化、种子派生与目录汇总统计
"""
import os
import json
import logging
from datetime import datetime
from typing import Dict, List, Optional

import numpy as np

from config import DATA_DIR, LOG_DIR

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'
SUMMARY_FILE = 'catalog_summary.json'
TEST_SUMMARY_FILE = 'test_summary.json'


def setup_logging(console_level: int = logging.INFO) -> None:
    """
    每个进程只配置一次：文件日志 + 控制台日志
    """
    root = logging.getLogger()
    if getattr(setup_logging, "_configured", False):
        for handler in root.handlers:
            if getattr(handler, "_caustic_console", False):
                handler.setLevel(console_level)
        return
    log_path = os.path.join(LOG_DIR, f'caustics_{datetime.now().strftime("%Y%m%d")}.log')
    file_handler = logging.FileHandler(log_path, encoding='utf-8')
    file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    console = logging.StreamHandler()
    console.setFormatter(logging.Formatter(LOG_FORMAT))
    console.setLevel(console_level)
    console._caustic_console = True
    root.setLevel(logging.INFO)
    root.addHandler(file_handler)
    root.addHandler(console)
    setup_logging._configured = True


def save_json(data, name: str) -> str:
    """保存到 data 目录，返回文件路径"""
    path = name if os.path.isabs(name) else os.path.join(DATA_DIR, name)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(data, f, ensure_ascii=False, indent=2)
    return path


def load_json(name: str, default=None):
    path = name if os.path.isabs(name) else os.path.join(DATA_DIR, name)
    if os.path.exists(path):
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    return default


def derive_seeds(master: int, count: int) -> List[int]:
    """
    由主种子确定性地派生子种子（与并发调度顺序无关）
    """
    children = np.random.SeedSequence(int(master)).spawn(count)
    return [int(child.generate_state(1, dtype=np.uint32)[0]) for child in children]


def make_rng(seed: int, index: Optional[int] = None) -> np.random.Generator:
    """按 (seed, index) 构造独立的随机数生成器"""
    if index is None:
        return np.random.default_rng(np.random.SeedSequence(int(seed)))
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(index)]))


def get_statistics(test_mode: bool = False) -> Dict:
    """
    从目录汇总文件获取统计信息
    """
    summary = load_json(TEST_SUMMARY_FILE if test_mode else SUMMARY_FILE)
    if not summary:
        return {
            'total_entries': 0,
            'passed_count': 0,
            'failed_count': 0,
            'sources_checked': 0,
            'collisions': 0,
        }

    results = summary.get('results', [])
    passed = sum(1 for r in results if r.get('success'))
    sources = sum(len(r.get('sources', [])) for r in results)
    collisions = sum(r.get('collisions', 0) for r in results)
    return {
        'total_entries': len(results),
        'passed_count': passed,
        'failed_count': len(results) - passed,
        'sources_checked': sources,
        'collisions': collisions,
    }


def print_statistics(test_mode: bool = False):
    """
    打印统计信息
    """
    stats = get_statistics(test_mode)

    print("\n" + "="*50)
    print("焦散验证统计信息")
    print("="*50)
    print(f"目录曲线数: {stats.get('total_entries', 0)}")
    print(f"验证通过: {stats.get('passed_count', 0)}")
    print(f"验证失败: {stats.get('failed_count', 0)}")
    print(f"检验光源数: {stats.get('sources_checked', 0)}")
    print(f"确认碰撞数: {stats.get('collisions', 0)}")
    print("="*50 + "\n")


if __name__ == "__main__":
    print_statistics()
