"""
浮点数值部分
曲线采样、同时迭代求根、双有理性抽样检验、数值次数判定与实迹提取
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
from sympy.polys.rings import PolyElement

from algebra import (
    Y, dehomogenize, evaluate_at, resultant, to_complex, to_univariate, total_degree,
)
from config import (
    BASE_POINT_TOL, BIRATIONALITY_SAMPLES, COLLISION_TOL, DEFAULT_SEED, DK_MAX_ITER, DK_TOL,
    GRADIENT_TOL, IMAG_TOL, LINE_TOL, MAX_RETRIES, NUMERIC_MATCH_TOL, NUMERIC_TRIALS,
    SAMPLE_ATTEMPT_FACTOR, SAMPLE_RESIDUAL, TRACE_RESOLUTION,
)
from errors import (
    DegenerateCausticError, DegenerateImageError, InstabilityError, PreconditionError,
)
from projgeom import (
    ProjPoint, gradient, phi_components, random_matrix, rho_components,
    substitute_linear,
)
from utils import make_rng

logger = logging.getLogger(__name__)


class NumericPoly:
    """多项式的浮点形式：指数矩阵与复系数向量"""

    def __init__(self, p: PolyElement):
        terms = list(p.iterterms())
        nvars = p.ring.ngens
        self.exps = np.array([m for m, _ in terms], dtype=int).reshape(len(terms), nvars)
        self.coeffs = np.array([to_complex(c) for _, c in terms], dtype=complex)
        self.degree = int(self.exps.sum(axis=1).max()) if terms else 0

    def _monomials(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=complex))
        return np.prod(pts[:, None, :] ** self.exps[None, :, :], axis=2)

    def __call__(self, points) -> np.ndarray:
        if not len(self.coeffs):
            return np.zeros(len(np.atleast_2d(points)), dtype=complex)
        return self._monomials(points) @ self.coeffs

    def relative(self, points) -> np.ndarray:
        """|p(x)| / Σ |c|·|x^α|，与坐标缩放无关的后向误差"""
        if not len(self.coeffs):
            return np.zeros(len(np.atleast_2d(points)))
        mons = self._monomials(points)
        scale = np.abs(mons) @ np.abs(self.coeffs)
        value = np.abs(mons @ self.coeffs)
        return value / np.where(scale > 0, scale, 1.0)


class NumericMap:
    def __init__(self, triple: Sequence[PolyElement]):
        self.components = [NumericPoly(c) for c in triple]

    def __call__(self, points) -> np.ndarray:
        return np.stack([c(points) for c in self.components], axis=-1)


def normalize_rows(v: np.ndarray) -> np.ndarray:
    """最大模坐标归一为 1"""
    v = np.atleast_2d(np.asarray(v, dtype=complex))
    idx = np.argmax(np.abs(v), axis=1)
    pivot = v[np.arange(len(v)), idx]
    pivot = np.where(pivot == 0, 1.0, pivot)
    return v / pivot[:, None]


def unit_rows(v: np.ndarray) -> np.ndarray:
    v = np.atleast_2d(np.asarray(v, dtype=complex))
    norms = np.linalg.norm(v, axis=1)
    return v / np.where(norms > 0, norms, 1.0)[:, None]


def projective_distance(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """单位化后外积的模，两点射影相同时为 0"""
    return np.linalg.norm(np.cross(unit_rows(a), unit_rows(b)), axis=-1)


# ---------------------------------------------------------------------------
# 求根
# ---------------------------------------------------------------------------

def durand_kerner(coeffs: Sequence[complex], tol: float = DK_TOL, max_iter: int = DK_MAX_ITER) -> np.ndarray:
    """
    同时迭代（Weierstrass/Durand–Kerner）求全部根
    coeffs 为升幂系数，不收敛时抛出 InstabilityError
    """
    a = np.trim_zeros(np.asarray(coeffs, dtype=complex), "b")
    n = len(a) - 1
    if n < 1:
        return np.zeros(0, dtype=complex)
    a = a / a[-1]
    desc = a[::-1]
    if n == 1:
        return np.array([-a[0]])
    # Cauchy 根界上的初值
    radius = 1 + np.max(np.abs(a[:-1]))
    z = radius * (0.4 + 0.9j) ** np.arange(n)
    scale_coeffs = np.abs(desc)
    for _ in range(max_iter):
        values = np.polyval(desc, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        denom = np.prod(diff, axis=1)
        if np.any(denom == 0):
            z = z + 1e-9 * (1 + 1j)
            continue
        z = z - values / denom
        scale = np.polyval(scale_coeffs, np.abs(z))
        if np.all(np.abs(np.polyval(desc, z)) <= tol * np.maximum(scale, 1e-300)):
            return z
    raise InstabilityError(f"同时迭代 {max_iter} 步未收敛（次数 {n}）")


# ---------------------------------------------------------------------------
# 采样
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NumericPoint:
    coords: Tuple[complex, complex, complex]
    residual: float

    def as_array(self) -> np.ndarray:
        return np.array(self.coords, dtype=complex)


def _slice_coefficients(F: PolyElement, x0: complex) -> np.ndarray:
    """F(x0, y, 1) 的升幂系数"""
    dy = F.degree(1)
    out = np.zeros(max(dy, 0) + 1, dtype=complex)
    for (a, b, _), c in F.iterterms():
        out[b] += to_complex(c) * x0 ** a
    return out


def sample_curve(F: PolyElement, n: int, seed: int = DEFAULT_SEED,
                 real: bool = False) -> List[NumericPoint]:
    """
    在 z=1 坐标卡中随机取 x，解一元切片得到曲线上的点，只保留 C_0 中的点
    第 k 个切片使用由 (seed, k) 派生的生成器
    """
    if total_degree(F) < 1:
        raise PreconditionError("常数多项式不定义曲线")
    if F.degree(1) < 1:
        raise PreconditionError("曲线方程不含 y，无法按 x 切片采样", reason="bad_chart")
    f_num = NumericPoly(F)
    grads = [NumericPoly(g) for g in gradient(F)]
    points: List[NumericPoint] = []
    for k in range(n * SAMPLE_ATTEMPT_FACTOR):
        rng = make_rng(seed, k)
        x0 = complex(rng.normal(), 0.0 if real else rng.normal())
        try:
            ys = durand_kerner(_slice_coefficients(F, x0))
        except InstabilityError:
            logger.warning(f"切片 x={x0:.4g} 求根不收敛，丢弃")
            continue
        for y in ys:
            p = normalize_rows([x0, y, 1.0])[0]
            residual = float(f_num.relative(p)[0])
            if residual >= SAMPLE_RESIDUAL:
                continue
            g = np.array([gr(p)[0] for gr in grads])
            gnorm = np.linalg.norm(g)
            size = np.linalg.norm(p) ** max(total_degree(F) - 1, 0)
            if gnorm < GRADIENT_TOL * max(size, 1.0):
                continue
            # C_0：F_x² + F_y² ≠ 0
            if abs(g[0] ** 2 + g[1] ** 2) < GRADIENT_TOL * gnorm ** 2:
                continue
            points.append(NumericPoint(tuple(complex(c) for c in p), residual))
            if len(points) == n:
                return points
    raise PreconditionError(f"{n * SAMPLE_ATTEMPT_FACTOR} 次切片后只得到 {len(points)} 个可用点",
                            reason="too_few_samples")


# ---------------------------------------------------------------------------
# 双有理性
# ---------------------------------------------------------------------------

@dataclass
class BirationalityReport:
    sample_count: int
    distinct_images: int
    collisions: List[dict] = field(default_factory=list)
    verdict: str = "injective"
    phi_collisions: int = 0
    base_points: int = 0

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "samples": self.sample_count,
            "distinct_images": self.distinct_images,
            "collisions": len(self.collisions),
            "phi_collisions": self.phi_collisions,
            "base_points": self.base_points,
        }


def _reflected_lines(F: PolyElement, S: ProjPoint, pts: np.ndarray) -> np.ndarray:
    """直接由几何定义数值计算反射线 m ∧ σ_{T_m}(S)"""
    grads = np.stack([NumericPoly(g)(pts) for g in gradient(F)], axis=-1)
    s = np.array([to_complex(c) for c in S.coords])
    a, b = grads[:, 0], grads[:, 1]
    ell = grads @ s
    q = a * a + b * b
    sigma = np.stack([q * s[0] - 2 * ell * a, q * s[1] - 2 * ell * b, q * s[2]], axis=-1)
    return np.cross(pts, sigma)


def _close_pairs(images: np.ndarray, tol: float) -> List[Tuple[int, int]]:
    u = unit_rows(images)
    dist = np.linalg.norm(np.cross(u[:, None, :], u[None, :, :]), axis=-1)
    i, j = np.nonzero(np.triu(dist < tol, k=1))
    return list(zip(i.tolist(), j.tolist()))


def birationality_test(F: PolyElement, S: ProjPoint, n: int = BIRATIONALITY_SAMPLES,
                       seed: int = DEFAULT_SEED, tol: float = COLLISION_TOL) -> BirationalityReport:
    """
    抽样检验 ρ（以及 Φ）在曲线上是否单射
    疑似碰撞要求两条反射线在 LINE_TOL 内一致才算确认
    """
    samples = sample_curve(F, n, seed)
    pts = np.array([s.coords for s in samples], dtype=complex)
    phi = NumericMap(phi_components(F, S))(pts)

    # 映射各分量都接近零的点视为基点，不参与比较
    rho_map = [NumericPoly(c) for c in rho_components(F, S)]
    base = np.all(np.stack([c.relative(pts) for c in rho_map], axis=-1) < BASE_POINT_TOL, axis=1)
    rho = np.stack([c(pts) for c in rho_map], axis=-1)
    keep = np.nonzero(~base)[0]
    report = BirationalityReport(sample_count=len(samples), distinct_images=0, base_points=int(base.sum()))
    if len(keep) * 2 < len(samples):
        report.verdict = "inconclusive"
        report.distinct_images = len(keep)
        logger.warning(f"过多样本落在基点上（{report.base_points}/{len(samples)}），结论不确定")
        return report

    pts, rho, phi = pts[keep], rho[keep], phi[keep]
    lines = _reflected_lines(F, S, pts)
    duplicates = set()
    for i, j in _close_pairs(rho, tol):
        if projective_distance(pts[i], pts[j])[0] < tol:
            # 同一点被采到两次
            duplicates.add(j)
            continue
        if projective_distance(lines[i], lines[j])[0] < LINE_TOL:
            report.collisions.append({
                "pair": [int(keep[i]), int(keep[j])],
                "points": [_fmt_vec(pts[i]), _fmt_vec(pts[j])],
                "line": _fmt_vec(normalize_rows(lines[i])[0]),
            })
            duplicates.add(j)
    report.phi_collisions = sum(1 for i, j in _close_pairs(phi, tol)
                                if projective_distance(pts[i], pts[j])[0] >= tol)
    report.distinct_images = len(pts) - len(duplicates)
    report.verdict = "injective" if not report.collisions else "collision_found"
    logger.info(f"双有理性抽样 {len(samples)} 点：{report.verdict}，Φ 疑似碰撞 {report.phi_collisions}")
    return report


def _fmt_vec(v) -> List[str]:
    return [f"{complex(c).real:.12g}{complex(c).imag:+.12g}j" for c in v]


# ---------------------------------------------------------------------------
# 数值次数
# ---------------------------------------------------------------------------

def _generic_chart(F: PolyElement, M: Sequence[PolyElement], rng):
    for _ in range(MAX_RETRIES):
        A = random_matrix(rng)
        G = substitute_linear(F, A)
        if evaluate_at(G, (0, 1, 0)):
            return A, G, [substitute_linear(c, A) for c in M]
    raise InstabilityError("找不到 y 方向首一的随机坐标卡")


def _fiber_count(F: PolyElement, M: Sequence[PolyElement], rng) -> int:
    """随机直线 L 的原像中非基点的个数（带重数）"""
    _, G, MA = _generic_chart(F, M, rng)
    f = dehomogenize(G)
    maps = [dehomogenize(c) for c in MA]
    base = None
    for c in maps:
        if not c:
            continue
        r = to_univariate(resultant(f, c, Y))
        if r:
            base = r if base is None else base.gcd(r)
    if base is None:
        raise DegenerateImageError("映射在曲线上恒为零")

    coeffs = [int(v) for v in rng.integers(-20, 21, size=3)]
    if not any(coeffs):
        coeffs[0] = 1
    g = sum((c * m for c, m in zip(coeffs, maps)), f.ring.zero)
    if not g:
        raise DegenerateImageError("随机直线的拉回为零")
    R = to_univariate(resultant(f, g, Y))
    if not R:
        raise DegenerateImageError("映射在曲线上为常值，像是一个点")
    if base.degree() > 0:
        while True:
            h = R.gcd(base)
            if h.degree() < 1:
                break
            R = R.exquo(h)
    if R.degree() < 1:
        return 0
    roots = durand_kerner([to_complex(c) for c in reversed(R.to_dense())])
    g_num = NumericPoly(g)
    count = 0
    for x in roots:
        ys = durand_kerner(_slice_coefficients(f, x))
        pts = np.array([[x, y, 1.0] for y in ys], dtype=complex)
        if len(pts) and np.min(g_num.relative(pts)) < NUMERIC_MATCH_TOL:
            count += 1
    return count


def numeric_degree(F: PolyElement, M: Sequence[PolyElement], trials: int = NUMERIC_TRIALS,
                   seed: int = DEFAULT_SEED) -> int:
    """多条随机直线下纤维个数的多数票"""
    tally: Counter = Counter()
    for t in range(trials):
        tally[_fiber_count(F, M, make_rng(seed, t))] += 1
    value, votes = tally.most_common(1)[0]
    if votes * 2 <= trials:
        raise InstabilityError(f"数值次数不稳定: {dict(tally)}", tally={str(k): v for k, v in tally.items()})
    logger.info(f"数值次数 {value}（票数 {votes}/{trials}）")
    return value


# ---------------------------------------------------------------------------
# 实迹
# ---------------------------------------------------------------------------

@dataclass
class TraceSegment:
    segment_id: int
    points: List[Tuple[float, float]]


def _real_roots(coeffs: np.ndarray) -> np.ndarray:
    roots = durand_kerner(coeffs)
    scale = np.maximum(np.abs(roots), 1.0)
    return np.sort(roots[np.abs(roots.imag) < IMAG_TOL * scale].real)


def real_trace(F: PolyElement, S: ProjPoint, window: Tuple[float, float, float, float],
               resolution: int = TRACE_RESOLUTION) -> List[TraceSegment]:
    """
    窗口内曲线实点经 Φ 映射后的折线段
    点按 x 递增、同一实根序号串联；像为非实点、落在无穷远或窗外时断开
    """
    if not all(c.y == 0 for c in F.itercoeffs()):
        raise PreconditionError("实迹要求实系数曲线", reason="not_real")
    x0, x1, y0, y1 = window
    try:
        phi = NumericMap(phi_components(F, S))
    except DegenerateCausticError as exc:
        if exc.point is None or not exc.point[2]:
            raise
        p = exc.point.normalized()
        return [TraceSegment(0, [(to_complex(p[0]).real, to_complex(p[1]).real)])]

    if F.degree(1) < 1:
        raise PreconditionError("曲线方程不含 y，无法按 x 切片", reason="bad_chart")
    segments: List[TraceSegment] = []
    open_runs: dict = {}
    previous_count = -1
    for x in np.linspace(x0, x1, resolution):
        try:
            ys = _real_roots(_slice_coefficients(F, complex(x)))
        except InstabilityError:
            ys = np.zeros(0)
        ys = ys[(ys >= y0) & (ys <= y1)]
        if len(ys) != previous_count:
            open_runs = {}
            previous_count = len(ys)
        for j, y in enumerate(ys):
            pt = np.array([[x, y, 1.0]], dtype=complex)
            img = phi(pt)[0]
            ok = abs(img[2]) > BASE_POINT_TOL * max(np.max(np.abs(img)), 1e-300)
            if ok:
                u, v = img[0] / img[2], img[1] / img[2]
                ok = abs(u.imag) < IMAG_TOL * max(abs(u), 1.0) and abs(v.imag) < IMAG_TOL * max(abs(v), 1.0)
                ok = ok and x0 <= u.real <= x1 and y0 <= v.real <= y1
            if not ok:
                open_runs.pop(j, None)
                continue
            if j not in open_runs:
                open_runs[j] = TraceSegment(len(segments), [])
                segments.append(open_runs[j])
            open_runs[j].points.append((float(u.real), float(v.real)))
    segments = [s for s in segments if len(s.points) >= 2]
    if not segments:
        raise PreconditionError("窗口内没有找到实点", reason="no_real_points")
    for k, s in enumerate(segments):
        s.segment_id = k
    logger.info(f"实迹: {len(segments)} 段，{sum(len(s.points) for s in segments)} 个点")
    return segments
