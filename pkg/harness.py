"""
端到端验证
一般位置光源的选取、次数与类数公式的双路线检验、坏光源曲线的次数上界，以及目录驱动
"""
import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import pandas as pd
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement
from tqdm import tqdm

from algebra import (
    UVW, evaluate_at, format_poly, parse_poly, restrict_to_line, square_free_part, total_degree,
)
from catalog_data import CATALOG, CATALOG_NAMES
from config import (
    BAD_SOURCE_POINTS, BIRATIONALITY_SAMPLES, COLLISION_REDRAWS, DEFAULT_SEED, FORMULA_RETRIES,
    MAX_WORKERS, SOURCE_DRAWS, SOURCE_HEIGHT, SOURCES_PER_ENTRY,
)
from errors import CausticError, GenericSourceError, InstabilityError, LineComponentError, PreconditionError
from implicitize import ImageCurve, caustic_dual_implicit, caustic_implicit, dual_curve, image_curve, quetelet_dandelin
from localinv import InvariantReport, invariant_bundle, multiplicity_at
from numericlab import birationality_test
from projgeom import I_POINT, J_POINT, ProjPoint, curve_degree, in_C0, normal_line, tangent_line, tau_components
from utils import SUMMARY_FILE, TEST_SUMMARY_FILE, derive_seeds, make_rng, save_json, setup_logging

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# 一般位置光源
# ---------------------------------------------------------------------------

def on_isotropic_tangent(F: PolyElement, S: ProjPoint, P: ProjPoint) -> bool:
    """
    直线 (S P) 是否在某处与曲线相切
    F 限制在直线上后，P 处的根先按重数 μ_P 除掉：剩下的重数超过 μ_P 说明直线是 P 处某个分支的切线，
    其余的根再有重根说明直线在别处相切或经过别的奇点
    参数 s = 0 对应 P，S 不在曲线上，所以 s 的最高次系数非零
    """
    try:
        poly = restrict_to_line(F, S, P).dehomogenized()
    except LineComponentError:
        return True
    s = poly.ring.gens[0]
    at_p = min(monom[0] for monom in poly.itermonoms())
    if at_p > multiplicity_at(F, P):
        return True
    rest = poly.quo(s ** at_p)
    return rest.gcd(rest.diff(s)).degree() > 0


def is_generic_source(F: PolyElement, S: ProjPoint) -> Tuple[bool, str]:
    if S.is_at_infinity():
        return False, "at_infinity"
    if not evaluate_at(F, S.coords):
        return False, "on_curve"
    for name, P in (("I", I_POINT), ("J", J_POINT)):
        if on_isotropic_tangent(F, S, P):
            return False, f"isotropic_tangent_{name}"
    return True, "generic"


def generic_source(F: PolyElement, seed: int = DEFAULT_SEED, draws: int = SOURCE_DRAWS) -> ProjPoint:
    """在 z = 1 中随机抽取实有理点，直到它不在曲线上、也不在任何迷向切线上"""
    rng = make_rng(seed)
    for k in range(draws):
        a, b = (int(v) for v in rng.integers(-SOURCE_HEIGHT, SOURCE_HEIGHT + 1, size=2))
        q = int(rng.integers(1, SOURCE_HEIGHT + 1))
        S = ProjPoint((QQ(a, q), QQ(b, q), 1))
        ok, reason = is_generic_source(F, S)
        if ok:
            logger.info(f"接受光源 {S}（第 {k + 1} 次抽取）")
            return S
        logger.info(f"拒绝光源 {S}: {reason}")
    raise GenericSourceError(f"{draws} 次抽取都没有找到一般位置的光源")


# ---------------------------------------------------------------------------
# 公式检验
# ---------------------------------------------------------------------------

@dataclass
class SourceCheck:
    """一个光源下的双路线结果"""

    report: InvariantReport
    caustic: ImageCurve
    dual: ImageCurve
    attempts: int = 1

    def to_dict(self) -> Dict:
        r = self.report
        return {
            'source': str(r.source),
            'invariants': r.invariants(),
            'predicted': {'degree': r.predicted_degree, 'class': r.predicted_class},
            'computed': {'degree': r.computed_degree, 'class': r.computed_class},
            'match': {'degree': r.degree_match, 'class': r.class_match},
            'with_multiplicity': {
                'degree': r.degree_with_multiplicity, 'class': r.class_with_multiplicity,
                'phi_map_degree': r.phi_map_degree, 'rho_map_degree': r.rho_map_degree,
            },
            'caustic_equation': format_poly(self.caustic.equation),
            'dual_equation': format_poly(self.dual.equation),
            'attempts': self.attempts,
        }


def _map_degree(image: ImageCurve) -> int:
    if image.map_degree is None:
        raise InstabilityError(
            f"纤维计数 {image.numeric_degree} 不是像曲线次数 {image.degree} 的整数倍",
            tally={'numeric': image.numeric_degree, 'degree': image.degree},
        )
    return image.map_degree


def check_source(F: PolyElement, S: ProjPoint, d_dual: int, seed: int = DEFAULT_SEED) -> SourceCheck:
    """固定光源：公式预测 vs 消元计算"""
    report = invariant_bundle(F, S, d_dual, seed)
    caustic = caustic_implicit(F, S, seed=seed)
    dual = caustic_dual_implicit(F, S, seed=seed)
    for what, image in (("焦散", caustic), ("焦散的对偶", dual)):
        if not image.certified:
            raise InstabilityError(
                f"{what}的消元次数 {image.degree} 未通过数值认证（纤维计数 {image.numeric_degree}）",
                tally={'numeric': image.numeric_degree, 'degree': image.degree},
            )
    report.set_computed(caustic.degree, dual.degree)
    report.phi_map_degree = _map_degree(caustic)
    report.rho_map_degree = _map_degree(dual)
    report.degree_with_multiplicity = caustic.numeric_degree
    report.class_with_multiplicity = dual.numeric_degree
    return SourceCheck(report, caustic, dual)


def verify_formulas(F: PolyElement, S: ProjPoint, seed: int = DEFAULT_SEED,
                    d_dual: Optional[int] = None, retries: int = FORMULA_RETRIES) -> SourceCheck:
    """
    次数公式 3d + f0 - t_I - t_J 与类数公式 2d∨ + d - g - μ_I - μ_J
    不符时换新的一般光源重试
    """
    if d_dual is None:
        d_dual = dual_curve(F, seed=seed).degree
    check = check_source(F, S, d_dual, seed)
    for k in range(retries):
        if check.report.matched:
            break
        logger.warning(
            f"光源 {check.report.source} 下公式不符（次数 {check.report.computed_degree} vs "
            f"{check.report.predicted_degree}，类数 {check.report.computed_class} vs "
            f"{check.report.predicted_class}），换光源重试"
        )
        S2 = generic_source(F, seed=seed + 7919 * (k + 1))
        check = check_source(F, S2, d_dual, seed)
        check.attempts = k + 2
    return check


def biduality_holds(F: PolyElement, dual: Optional[ImageCurve] = None, seed: int = DEFAULT_SEED) -> bool:
    """对偶曲线的对偶回到原曲线（按变量位置比较首一方程）"""
    if dual is None:
        dual = dual_curve(F, seed=seed)
    back = dual_curve(dual.equation, seed=seed)
    return back.equation == UVW.from_dict(dict(F.monic()))


# ---------------------------------------------------------------------------
# 坏光源曲线
# ---------------------------------------------------------------------------

@dataclass
class BadSourceReport:
    point: ProjPoint
    equation: PolyElement
    degree: int
    bound: int
    tau_degree: int

    @property
    def within_bound(self) -> bool:
        return self.degree <= self.bound

    def to_dict(self) -> Dict:
        return {
            'point': str(self.point),
            'equation': format_poly(self.equation),
            'degree': self.degree,
            'tau_degree': self.tau_degree,
            'bound': self.bound,
            'within_bound': self.within_bound,
        }


def _line_form(line) -> PolyElement:
    return sum((UVW.ground_new(c) * g for c, g in zip(line.coords, UVW.gens)), UVW.zero)


def bad_source_curve(F: PolyElement, m: ProjPoint, seed: int = DEFAULT_SEED) -> BadSourceReport:
    """
    τ_m(C) 的闭包、m 处切线与法线之并
    次数不超过 2d² + 2
    """
    if not in_C0(F, m):
        raise PreconditionError(f"点 {m} 不在 C_0 中", reason="not_in_C0")
    d = curve_degree(F)
    tau_image = image_curve(F, tau_components(F, m), seed=seed)
    product = tau_image.equation * _line_form(tangent_line(F, m)) * _line_form(normal_line(F, m))
    equation = square_free_part(product)
    report = BadSourceReport(m, equation, total_degree(equation), 2 * d * d + 2, tau_image.degree)
    logger.info(f"坏光源曲线 @ {m}: 次数 {report.degree}（τ 像 {report.tau_degree}，上界 {report.bound}）")
    return report


# ---------------------------------------------------------------------------
# 目录驱动
# ---------------------------------------------------------------------------

class CausticVerifier:
    """目录曲线的焦散验证器"""

    def __init__(self, seed: int = DEFAULT_SEED, sources_per_entry: int = SOURCES_PER_ENTRY,
                 samples: int = BIRATIONALITY_SAMPLES, bad_source_points: int = BAD_SOURCE_POINTS):
        setup_logging()
        self.seed = seed
        self.sources_per_entry = sources_per_entry
        self.samples = samples
        self.bad_source_points = bad_source_points

    def check_birationality(self, F: PolyElement, S: ProjPoint, seed: int) -> Dict:
        """
        抽样检验；出现碰撞时再独立抽取光源，
        碰撞在 COLLISION_REDRAWS 个光源下都持续存在才算失败
        """
        report = birationality_test(F, S, n=self.samples, seed=seed)
        out = report.to_dict()
        out['redraws'] = 0
        out['persistent'] = False
        if report.verdict != "collision_found":
            return out
        for k in range(COLLISION_REDRAWS):
            S2 = generic_source(F, seed=seed + 104729 * (k + 1))
            again = birationality_test(F, S2, n=self.samples, seed=seed + k + 1)
            out['redraws'] = k + 1
            if again.verdict != "collision_found":
                logger.warning(f"光源 {S} 下的碰撞在光源 {S2} 下消失")
                return out
        out['persistent'] = True
        logger.error(f"碰撞在 {COLLISION_REDRAWS} 个独立光源下持续存在")
        return out

    def verify_entry(self, entry: Dict, seed: int) -> Dict:
        """
        验证单条目录曲线
        """
        name = entry['name']
        logger.info(f"开始验证 {name}: {entry['curve']}")

        result = {
            'name': name,
            'curve': entry['curve'],
            'seed': seed,
            'success': False,
            'd_dual': None,
            'biduality': None,
            'sources': [],
            'collisions': 0,
            'quetelet_dandelin': None,
            'bad_source': [],
            'errors': [],
        }

        try:
            F = parse_poly(entry['curve'])
            dual = dual_curve(F, seed=seed)
            result['d_dual'] = dual.degree
            result['biduality'] = biduality_holds(F, dual, seed)
            if not result['biduality']:
                result['errors'].append("对偶的对偶与原曲线不一致")

            for k, source_seed in enumerate(derive_seeds(seed, self.sources_per_entry)):
                try:
                    S = generic_source(F, seed=source_seed)
                    check = verify_formulas(F, S, seed=source_seed, d_dual=dual.degree)
                    item = check.to_dict()
                    item['birationality'] = self.check_birationality(F, check.report.source, source_seed)
                    if item['birationality']['persistent']:
                        result['collisions'] += 1
                        result['errors'].append(f"光源 {item['source']}: 碰撞持续存在")
                    result['sources'].append(item)
                    if not check.report.matched:
                        result['errors'].append(f"光源 {item['source']}: 公式不符")
                except CausticError as e:
                    error_msg = f"光源 #{k}: {e.diagnostic()}"
                    result['errors'].append(error_msg)
                    logger.error(f"{name}: {error_msg}")

            if entry.get('quetelet_dandelin') and result['sources']:
                S = ProjPoint.parse(result['sources'][0]['source'])
                result['quetelet_dandelin'] = quetelet_dandelin(F, S, seed=seed)
                if not result['quetelet_dandelin']['match']:
                    result['errors'].append("正交曲线的渐屈线与焦散不一致")

            for text in entry.get('points', [])[:self.bad_source_points]:
                try:
                    bad = bad_source_curve(F, ProjPoint.parse(text), seed=seed)
                    result['bad_source'].append(bad.to_dict())
                    if not bad.within_bound:
                        result['errors'].append(f"坏光源曲线 @ {text}: 次数 {bad.degree} 超过 {bad.bound}")
                except CausticError as e:
                    error_msg = f"坏光源曲线 @ {text}: {e.diagnostic()}"
                    result['errors'].append(error_msg)
                    logger.error(f"{name}: {error_msg}")

        except CausticError as e:
            error_msg = f"验证失败: {e.diagnostic()}"
            result['errors'].append(error_msg)
            logger.error(f"{name}: {error_msg}")

        result['success'] = not result['errors'] and len(result['sources']) == self.sources_per_entry
        if result['success']:
            logger.info(f"{name}: 验证通过")
        else:
            logger.warning(f"{name}: 验证未通过（{len(result['errors'])} 个错误）")
        return result

    def run(self, entries: Optional[List[str]] = None, parallel: bool = True) -> Dict:
        """
        运行目录验证

        Args:
            entries: 只验证这些曲线（测试模式），None 表示整个目录
            parallel: 是否用进程池并发
        """
        test_mode = entries is not None
        names = list(entries) if test_mode else list(CATALOG_NAMES)
        unknown = [n for n in names if n not in CATALOG_NAMES]
        if unknown:
            raise PreconditionError(f"目录中没有这些曲线: {', '.join(unknown)}", reason="unknown_entry")
        # 种子按目录位置派生，与子集选择和完成顺序无关
        seeds = dict(zip(CATALOG_NAMES, derive_seeds(self.seed, len(CATALOG))))
        todo = [e for e in CATALOG if e['name'] in names]
        logger.info(f"开始验证 {len(todo)} 条目录曲线（主种子 {self.seed}）")

        results = []
        if not parallel or len(todo) == 1:
            for entry in tqdm(todo, desc="验证进度"):
                results.append(self.verify_entry(entry, seeds[entry['name']]))
        else:
            futures = {}
            with ProcessPoolExecutor(max_workers=MAX_WORKERS) as executor:
                for entry in todo:
                    futures[executor.submit(_verify_entry_job, self.seed, entry, seeds[entry['name']])] = entry['name']
                for future in tqdm(as_completed(futures), total=len(futures), desc="验证进度"):
                    name = futures[future]
                    try:
                        results.append(future.result())
                    except Exception as e:
                        logger.error(f"{name}: 并发任务失败: {e}")
                        results.append({'name': name, 'success': False, 'sources': [], 'collisions': 0,
                                        'errors': [f"并发任务失败: {e}"]})
        order = {n: k for k, n in enumerate(CATALOG_NAMES)}
        results.sort(key=lambda r: order[r['name']])

        passed = sum(1 for r in results if r['success'])
        logger.info(f"验证完成！通过: {passed}/{len(results)}")
        summary = {
            'seed': self.seed,
            'test_mode': test_mode,
            'total_entries': len(results),
            'passed_count': passed,
            'failed_count': len(results) - passed,
            'results': results,
        }
        save_json(summary, TEST_SUMMARY_FILE if test_mode else SUMMARY_FILE)
        return summary


def _verify_entry_job(seed: int, entry: Dict, entry_seed: int) -> Dict:
    return CausticVerifier(seed).verify_entry(entry, entry_seed)


def run_catalog(seed: int = DEFAULT_SEED, entries: Optional[List[str]] = None, parallel: bool = True) -> Dict:
    return CausticVerifier(seed).run(entries=entries, parallel=parallel)


def summary_table(summary: Dict) -> pd.DataFrame:
    """每个 (曲线, 光源) 一行的汇总表"""
    rows = []
    for r in summary.get('results', []):
        for s in r.get('sources', []):
            rows.append({
                'curve': r['name'],
                'source': s['source'],
                'predicted_degree': s['predicted']['degree'],
                'computed_degree': s['computed']['degree'],
                'predicted_class': s['predicted']['class'],
                'computed_class': s['computed']['class'],
                'birationality': s['birationality']['verdict'],
            })
        if not r.get('sources'):
            rows.append({'curve': r['name'], 'source': None})
    return pd.DataFrame(rows)
