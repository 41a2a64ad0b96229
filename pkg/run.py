"""
命令行入口
compute / invariants / verify / catalog / trace / badsource
退出码：0 成功，1 验证不符，2 用法或解析错误，3 计算失败
"""
import argparse
import json
import logging
import sys
import traceback
from typing import Dict, List, Optional

import pandas as pd

from algebra import format_poly, parse_poly
from config import BIRATIONALITY_SAMPLES, DEFAULT_SEED, TRACE_RESOLUTION
from errors import CausticError, ParseError
from harness import CausticVerifier, bad_source_curve, check_source, generic_source, run_catalog, summary_table, verify_formulas
from implicitize import dual_curve
from localinv import invariant_bundle
from numericlab import TraceSegment, birationality_test, real_trace
from projgeom import ProjPoint
from utils import print_statistics, setup_logging

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_FAILURE = 0, 1, 2, 3


class UsageError(Exception):
    pass


SOURCE_HELP = "[a:b:c] 或 random；默认 random，即按 --seed 抽取一个一般光源"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="run.py", description="反射焦散的计算与验证")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, curve=True):
        if curve:
            p.add_argument("--curve", required=True, help="齐次多项式，例如 x^2+y^2-z^2")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--out", default=None, help="输出文件（默认标准输出）")

    p = sub.add_parser("compute", help="计算焦散及其对偶的方程并与公式比较")
    common(p)
    p.add_argument("--source", default="random", help=SOURCE_HELP)
    p.add_argument("--samples", type=int, default=BIRATIONALITY_SAMPLES)
    p.add_argument("--format", choices=("json", "text", "csv", "svg"), default="json")

    p = sub.add_parser("invariants", help="只计算公式右端的不变量")
    common(p)
    p.add_argument("--source", default="random", help=SOURCE_HELP)
    p.add_argument("--format", choices=("json", "text", "csv", "svg"), default="json")

    p = sub.add_parser("verify", help="公式检验（不符时换光源重试）与双有理性检验")
    common(p)
    p.add_argument("--source", default="random", help=SOURCE_HELP)
    p.add_argument("--samples", type=int, default=BIRATIONALITY_SAMPLES)
    p.add_argument("--format", choices=("json", "text", "csv", "svg"), default="json")

    p = sub.add_parser("catalog", help="验证整个目录")
    common(p, curve=False)
    p.add_argument("--entries", default=None, help="逗号分隔的曲线名（测试模式）")
    p.add_argument("--sequential", action="store_true", help="不使用进程池")
    p.add_argument("--format", choices=("json", "text", "csv", "svg"), default="json")

    p = sub.add_parser("trace", help="导出焦散的实迹")
    common(p)
    p.add_argument("--source", required=True)
    p.add_argument("--window", default="-2,2,-2,2", help="x0,x1,y0,y1")
    p.add_argument("--samples", type=int, default=TRACE_RESOLUTION)
    p.add_argument("--format", choices=("json", "text", "csv", "svg"), default="json")

    p = sub.add_parser("badsource", help="坏光源曲线的次数上界")
    common(p)
    p.add_argument("--point", required=True, help="曲线上的点 [a:b:c]")
    p.add_argument("--format", choices=("json", "text", "csv", "svg"), default="json")
    return parser


# ---------------------------------------------------------------------------
# 输入
# ---------------------------------------------------------------------------

def _read_source(F, text: str, seed: int) -> ProjPoint:
    if text.strip().lower() == "random":
        return generic_source(F, seed=seed)
    return ProjPoint.parse(text)


def _parse_window(text: str):
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError("--window 需要 x0,x1,y0,y1 四个数")
    try:
        x0, x1, y0, y1 = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"--window 无法解析: {text}")
    if not (x0 < x1 and y0 < y1):
        raise UsageError("--window 要求 x0 < x1 且 y0 < y1")
    return x0, x1, y0, y1


# ---------------------------------------------------------------------------
# 输出
# ---------------------------------------------------------------------------

def _flatten(data: Dict, prefix: str = "") -> List:
    rows = []
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            rows += _flatten(value, name + ".")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            for k, item in enumerate(value):
                rows += _flatten(item, f"{name}[{k}].")
        else:
            rows.append((name, value))
    return rows


def render_text(title: str, data: Dict) -> str:
    rows = _flatten(data)
    width = max((len(k) for k, _ in rows), default=0)
    lines = ["=" * 60, title, "=" * 60]
    lines += [f"{k.ljust(width)}: {v}" for k, v in rows]
    lines.append("=" * 60)
    return "\n".join(lines) + "\n"


def render_json(data: Dict) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2) + "\n"


def trace_frame(segments: List[TraceSegment]) -> pd.DataFrame:
    rows = [{'segment': s.segment_id, 'x': x, 'y': y} for s in segments for x, y in s.points]
    return pd.DataFrame(rows, columns=['segment', 'x', 'y'])


def render_svg(segments: List[TraceSegment], window) -> str:
    """每段一个 path；y 轴翻转使上方为正"""
    x0, x1, y0, y1 = window
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0:g} {-y1:g} {x1 - x0:g} {y1 - y0:g}">',
    ]
    for s in segments:
        pts = [f"{x:.6f} {-y:.6f}" for x, y in s.points]
        d = "M " + " L ".join(pts) if len(pts) > 1 else f"M {pts[0]} Z"
        lines.append(f'  <path id="segment-{s.segment_id}" d="{d}" fill="none" stroke="black" '
                     f'stroke-width="{(x1 - x0) / 500:g}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, 'w', encoding='utf-8') as f:
            f.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# 子命令
# ---------------------------------------------------------------------------

def _source_report(args, F, check, birationality: Optional[Dict], warnings: List[str]) -> Dict:
    item = check.to_dict()
    for image in (check.caustic, check.dual):
        warnings += [f"剥离伪因子 {format_poly(h)}（{reason}）" for h, reason in image.stripped_factors]
    report = {
        'curve': format_poly(F),
        'source': item['source'],
        'seed': args.seed,
        'invariants': item['invariants'],
        'predicted': item['predicted'],
        'computed': item['computed'],
        'match': item['match'],
        'birationality': birationality,
        'caustic_equation': item['caustic_equation'],
        'dual_equation': item['dual_equation'],
        'warnings': warnings,
    }
    return report


def _birationality(F, S, args) -> Dict:
    r = birationality_test(F, S, n=args.samples, seed=args.seed)
    return {'verdict': r.verdict, 'samples': r.sample_count}


def cmd_compute(args) -> int:
    F = parse_poly(args.curve)
    S = _read_source(F, args.source, args.seed)
    d_dual = dual_curve(F, seed=args.seed).degree
    check = check_source(F, S, d_dual, seed=args.seed)
    warnings: List[str] = []
    birationality = _birationality(F, S, args)
    if birationality['verdict'] != "injective":
        warnings.append(f"双有理性抽样: {birationality['verdict']}")
    report = _source_report(args, F, check, birationality, warnings)
    _write_report(args, "焦散计算", report)
    return EXIT_OK if check.report.matched else EXIT_MISMATCH


def cmd_verify(args) -> int:
    F = parse_poly(args.curve)
    S = _read_source(F, args.source, args.seed)
    check = verify_formulas(F, S, seed=args.seed)
    warnings: List[str] = []
    if check.attempts > 1:
        warnings.append(f"公式在第 {check.attempts} 个光源下才一致")
    birationality = CausticVerifier(args.seed, samples=args.samples).check_birationality(
        F, check.report.source, args.seed)
    if birationality['verdict'] != "injective":
        warnings.append(f"双有理性抽样: {birationality['verdict']}（重抽 {birationality['redraws']} 次）")
    report = _source_report(args, F, check, {'verdict': birationality['verdict'],
                                             'samples': birationality['samples']}, warnings)
    _write_report(args, "公式验证", report)
    ok = check.report.matched and not birationality['persistent']
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_invariants(args) -> int:
    F = parse_poly(args.curve)
    S = _read_source(F, args.source, args.seed)
    d_dual = dual_curve(F, seed=args.seed).degree
    bundle = invariant_bundle(F, S, d_dual, seed=args.seed)
    report = {
        'curve': format_poly(F),
        'source': str(S),
        'seed': args.seed,
        'invariants': bundle.invariants(),
        'predicted': {'degree': bundle.predicted_degree, 'class': bundle.predicted_class},
        'warnings': [],
    }
    _write_report(args, "曲线不变量", report)
    return EXIT_OK


def cmd_catalog(args) -> int:
    entries = [e.strip() for e in args.entries.split(",") if e.strip()] if args.entries else None
    summary = run_catalog(args.seed, entries=entries, parallel=not args.sequential)
    if args.format == "text":
        text = render_text("焦散目录验证", {k: v for k, v in summary.items() if k != 'results'})
        text += summary_table(summary).to_string(index=False) + "\n"
        _emit(text, args.out)
        print_statistics(test_mode=entries is not None)
    else:
        _emit(render_json(summary), args.out)
    return EXIT_OK if summary['failed_count'] == 0 else EXIT_MISMATCH


def cmd_trace(args) -> int:
    window = _parse_window(args.window)
    F = parse_poly(args.curve)
    S = _read_source(F, args.source, args.seed)
    segments = real_trace(F, S, window, resolution=args.samples)
    if args.format == "csv":
        _emit(trace_frame(segments).to_csv(index=False), args.out)
    elif args.format == "svg":
        _emit(render_svg(segments, window), args.out)
    else:
        data = {
            'curve': format_poly(F),
            'source': str(S),
            'window': list(window),
            'segments': [{'id': s.segment_id, 'points': [list(p) for p in s.points]} for s in segments],
        }
        if args.format == "text":
            _emit(render_text("焦散实迹", {k: v for k, v in data.items() if k != 'segments'})
                  + f"segments: {len(segments)}\n", args.out)
        else:
            _emit(render_json(data), args.out)
    return EXIT_OK


def cmd_badsource(args) -> int:
    F = parse_poly(args.curve)
    m = ProjPoint.parse(args.point)
    bad = bad_source_curve(F, m, seed=args.seed)
    report = {'curve': format_poly(F), 'seed': args.seed, **bad.to_dict(), 'warnings': []}
    _write_report(args, "坏光源曲线", report)
    return EXIT_OK if bad.within_bound else EXIT_MISMATCH


def _write_report(args, title: str, report: Dict):
    if args.format == "text":
        _emit(render_text(title, report), args.out)
    else:
        _emit(render_json(report), args.out)


HANDLERS = {
    "compute": cmd_compute,
    "invariants": cmd_invariants,
    "verify": cmd_verify,
    "catalog": cmd_catalog,
    "trace": cmd_trace,
    "badsource": cmd_badsource,
}


def _diagnostic(code: str, message: str):
    text = " ".join(str(message).split())
    sys.stderr.write(f"error={code} reason={text}\n")


def main(argv: Optional[List[str]] = None) -> int:
    setup_logging(logging.WARNING)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse 自己打印了用法
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    if args.format in ("csv", "svg") and args.command != "trace":
        _diagnostic("usage", f"--format {args.format} 只能用于 trace")
        return EXIT_USAGE

    try:
        return HANDLERS[args.command](args)
    except UsageError as e:
        _diagnostic("usage", e)
        return EXIT_USAGE
    except ParseError as e:
        sys.stderr.write(e.diagnostic() + "\n")
        return EXIT_USAGE
    except CausticError as e:
        sys.stderr.write(e.diagnostic() + "\n")
        return EXIT_FAILURE
    except KeyboardInterrupt:
        _diagnostic("interrupted", "用户中断")
        return EXIT_FAILURE
    except Exception as e:
        logger.error(f"发生错误: {e}\n{traceback.format_exc()}")
        _diagnostic("internal", e)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
