"""
消元引擎
有理映射下曲线像的隐式方程：焦散 (Φ)、焦散的对偶 (ρ)、对偶曲线 (梯度映射)，
以及垂足曲线、正交曲线与渐屈线
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import grlex, lex
from sympy.polys.rings import PolyElement, ring

from algebra import (
    UVW, XYZ, content_in, coprime_split, dehomogenize, divides, format_poly, gcd, is_homogeneous,
    rename_variables, resultant, square_free_part, total_degree,
)
from config import DEFAULT_SEED, MAX_RETRIES, RESULTANT_BEZOUT_LIMIT
from errors import ChartFailureError, DegenerateImageError, InstabilityError, PreconditionError
from numericlab import numeric_degree
from projgeom import (
    PolyTriple, ProjPoint, apply_matrix, evolute_components, gradient, matrix_inverse, phi_components,
    random_matrix, reduce_content, rho_components, sigma_components, substitute_linear,
)
from utils import make_rng

logger = logging.getLogger(__name__)

# 仿射坐标卡中的消元环：源变量 x, y 与目标仿射坐标 v = u1/u0, w = u2/u0
XYVW, *_ = ring("x,y,v,w", QQ_I, grlex)
_X, _Y, _V, _W = 0, 1, 2, 3


@dataclass(frozen=True)
class RationalMapP2:
    """P² 到 P² 的有理映射，三个分量次数相同且没有公因式"""

    components: PolyTriple

    def __post_init__(self):
        comps = tuple(self.components)
        if len(comps) != 3 or not any(comps):
            raise PreconditionError("有理映射需要三个不全为零的分量")
        R = next(c for c in comps if c).ring
        if R is not XYZ:
            comps = tuple(rename_variables(c, XYZ) for c in comps)
        degrees = {total_degree(c) for c in comps if c}
        if len(degrees) != 1 or not all(is_homogeneous(c) for c in comps if c):
            raise PreconditionError("有理映射的分量必须是同次齐次多项式", reason="not_homogeneous")
        object.__setattr__(self, "components", reduce_content(comps))

    @property
    def degree(self) -> int:
        return total_degree(next(c for c in self.components if c))

    @classmethod
    def identity(cls) -> "RationalMapP2":
        return cls(XYZ.gens)

    @classmethod
    def gradient_of(cls, F: PolyElement) -> "RationalMapP2":
        return cls(gradient(F))


@dataclass
class ImageCurve:
    """像曲线的方程（u, v, w 中无平方），以及证书信息"""

    equation: PolyElement
    degree: int
    certified: bool
    stripped_factors: List[Tuple[PolyElement, str]] = field(default_factory=list)
    numeric_degree: Optional[int] = None
    map_degree: Optional[int] = None
    method: str = "resultant"

    def to_dict(self) -> Dict:
        return {
            'equation': format_poly(self.equation),
            'degree': self.degree,
            'certified': self.certified,
            'stripped_factors': [
                {'factor': format_poly(h), 'reason': reason} for h, reason in self.stripped_factors
            ],
            'numeric_degree': self.numeric_degree,
            'map_degree': self.map_degree,
            'method': self.method,
        }


def _source_curve(F: PolyElement) -> PolyElement:
    """任何三变量环里的曲线都搬到 (x, y, z)"""
    if not F or F.is_ground:
        raise PreconditionError("曲线方程不能是常数")
    if not is_homogeneous(F):
        raise PreconditionError("曲线方程必须是齐次多项式", reason="not_homogeneous")
    return F if F.ring is XYZ else rename_variables(F, XYZ)


class _Pullback:
    """
    h ↦ h∘M mod F 的正规形
    单个除式的余式是唯一的，所以 F | h∘M 当且仅当正规形为零
    """

    def __init__(self, F: PolyElement, components: Sequence[PolyElement]):
        self.F = F
        self.components = components
        self.powers = [[F.ring.one] for _ in range(3)]

    def power(self, k: int, e: int) -> PolyElement:
        cache = self.powers[k]
        while len(cache) <= e:
            cache.append((cache[-1] * self.components[k]).rem(self.F))
        return cache[e]

    def monomial(self, exps: Tuple[int, int, int]) -> PolyElement:
        a, b, c = exps
        return ((self.power(0, a) * self.power(1, b)).rem(self.F) * self.power(2, c)).rem(self.F)

    def compose(self, h: PolyElement) -> PolyElement:
        total = self.F.ring.zero
        for exps, coeff in h.iterterms():
            total += self.monomial(exps).mul_ground(coeff)
        return total

    def vanishes(self, h: PolyElement) -> bool:
        return not self.compose(h)


def _require_nondegenerate(F: PolyElement, M: RationalMapP2):
    comps = M.components
    if all(not c.rem(F) for c in comps):
        raise DegenerateImageError("映射的各分量在曲线上恒为零")
    if all(c.is_ground for c in comps):
        point = ProjPoint(tuple(c.LC if c else QQ_I.zero for c in comps))
        raise DegenerateImageError(f"常值映射，像是一个点 {point}", point=point)


# ---------------------------------------------------------------------------
# 结式路线
# ---------------------------------------------------------------------------

def _reduce_in_y(p: PolyElement, f: PolyElement) -> PolyElement:
    """f 关于 y 首一（首项系数为常数）时，p 对 f 的 y 向余式"""
    R = p.ring
    order = [R.symbols[_Y]] + [s for i, s in enumerate(R.symbols) if i != _Y]
    R2 = R.clone(symbols=order, order=lex)
    return p.set_ring(R2).rem(f.set_ring(R2)).set_ring(R)


def _homogenize_target(H: PolyElement) -> PolyElement:
    """v, w 的多项式齐次化为 (u, v, w) 中的形式"""
    D = total_degree(H)
    return UVW.from_dict({(D - m[_V] - m[_W], m[_V], m[_W]): c for m, c in H.iterterms()})


def _linear_root(p: PolyElement, k: int):
    """p 的无平方部分是 k 号变量的一次式时返回其根"""
    q = square_free_part(p)
    if q.degree(k) != 1:
        return None
    gen = q.ring.gens[k]
    c0, c1 = q.coeff_wrt(gen, 0), q.coeff_wrt(gen, 1)
    return -c0.LC / c1.LC if c0 else QQ_I.zero


def _eliminate_chart(F: PolyElement, comps: Sequence[PolyElement], rng) -> Optional[PolyElement]:
    """
    一个随机坐标卡中的迭代结式
    失败（首项退化或结式为零）时返回 None
    """
    A = random_matrix(rng)
    B = random_matrix(rng)
    G = substitute_linear(F, A)
    if not G.coeff_wrt(G.ring.gens[_Y], total_degree(G)):
        return None
    MA = [substitute_linear(c, A) for c in comps]
    # 目标坐标变换 u' = B u
    N = [sum((MA[j].mul_ground(QQ_I(B[i][j], 0)) for j in range(3)), XYZ.zero) for i in range(3)]
    f = dehomogenize(G)
    n = [_reduce_in_y(dehomogenize(c), f) for c in N]
    f4 = f.set_ring(XYVW)
    n4 = [c.set_ring(XYVW) for c in n]
    v, w = XYVW.gens[_V], XYVW.gens[_W]

    P1 = resultant(f4, n4[1] - v * n4[0], _Y)
    P2 = resultant(f4, n4[2] - w * n4[0], _Y)
    if not P1 or not P2:
        return None
    P1 = P1.exquo(content_in(P1, _V))
    P2 = P2.exquo(content_in(P2, _W))
    if P1.degree(_X) <= 0 and P2.degree(_X) <= 0:
        v0, w0 = _linear_root(P1, _V), _linear_root(P2, _W)
        point = None
        if v0 is not None and w0 is not None:
            point = apply_matrix(matrix_inverse(B), ProjPoint((1, v0, w0)))
        raise DegenerateImageError(f"映射在曲线上为常值，像是一个点 {point}", point=point)
    H = resultant(P1, P2, _X)
    if not H:
        return None
    logger.info(f"坐标卡消元：结式次数 {total_degree(P1)}, {total_degree(P2)} → {total_degree(H)}")
    # 原坐标下 H(u) = H_B(B u)
    return square_free_part(substitute_linear(_homogenize_target(H), B))


def _resultant_image(F: PolyElement, M: RationalMapP2, rng) -> Tuple[PolyElement, List]:
    charts: List[PolyElement] = []
    failures = 0
    while len(charts) < 2:
        H = _eliminate_chart(F, M.components, rng)
        if H is None:
            failures += 1
            logger.warning(f"坐标卡消元失败（第 {failures} 次），重新抽取")
            if failures >= MAX_RETRIES:
                raise ChartFailureError(f"连续 {failures} 个随机坐标卡的消元结果为零")
            continue
        charts.append(H)

    H1, H2 = charts
    common = gcd(H1, H2)
    pullback = _Pullback(F, M.components)
    kept, stripped = [], []
    for h in coprime_split([H1, H2]):
        if not divides(h, common):
            stripped.append((h, "chart_dependent"))
        elif pullback.vanishes(h):
            kept.append(h)
        else:
            stripped.append((h, "not_on_image"))
    for h, reason in stripped:
        logger.info(f"剥离伪因子（{reason}）: 次数 {total_degree(h)}")
    if not kept:
        raise ChartFailureError("没有因子通过整除证书")
    equation = UVW.one
    for h in kept:
        equation *= h
    return equation.monic(), stripped


# ---------------------------------------------------------------------------
# 正规形核路线
# ---------------------------------------------------------------------------

def _vanishing_forms(pullback: _Pullback, D: int) -> Tuple[List[Tuple[int, int, int]], List]:
    """D 次形式中满足 h∘M ≡ 0 (mod F) 的解空间的一组基"""
    monos = [(a, b, D - a - b) for a in range(D, -1, -1) for b in range(D - a, -1, -1)]
    images = [pullback.monomial(m) for m in monos]
    basis = sorted({mon for img in images for mon in img.itermonoms()}, reverse=True)
    if not basis:
        return monos, []
    index = {mon: k for k, mon in enumerate(basis)}
    rows = [[QQ_I.zero] * len(monos) for _ in basis]
    for j, img in enumerate(images):
        for mon, c in img.iterterms():
            rows[index[mon]][j] = c
    return monos, DomainMatrix(rows, (len(basis), len(monos)), QQ_I).nullspace().to_list()


def _kernel_image(F: PolyElement, M: RationalMapP2) -> PolyElement:
    """
    从 1 次起逐次求在像上为零的形式，第一个非零解空间的次数就是像的次数
    搜索到贝祖上界 deg(M)·deg(F) 为止，与数值纤维计数无关
    """
    bound = kernel_degree_bound(F, M)
    pullback = _Pullback(F, M.components)
    for D in range(1, bound + 1):
        monos, null = _vanishing_forms(pullback, D)
        if not null:
            continue
        logger.info(f"核路线：{D} 次形式 {len(monos)} 个，零空间维数 {len(null)}")
        H = None
        for vec in null:
            p = UVW.from_dict({monos[j]: c for j, c in enumerate(vec) if c})
            H = p.monic() if H is None else gcd(H, p)
        return square_free_part(H)
    raise InstabilityError(f"直到贝祖上界 {bound} 次都没有在像上为零的方程")


# ---------------------------------------------------------------------------
# 公开接口
# ---------------------------------------------------------------------------

def kernel_degree_bound(F: PolyElement, M: RationalMapP2) -> int:
    return total_degree(F) * M.degree


def choose_method(F: PolyElement, M: RationalMapP2) -> str:
    return "resultant" if total_degree(F) * M.degree <= RESULTANT_BEZOUT_LIMIT else "kernel"


def image_curve(F: PolyElement, M, seed: int = DEFAULT_SEED, method: str = "auto") -> ImageCurve:
    """
    V(F) 在有理映射 M 下的像的 Zariski 闭包
    数值纤维计数与消元次数一致时 certified 为真
    """
    F = _source_curve(F)
    M = M if isinstance(M, RationalMapP2) else RationalMapP2(tuple(M))
    _require_nondegenerate(F, M)
    if method == "auto":
        method = choose_method(F, M)
    if method not in ("resultant", "kernel"):
        raise PreconditionError(f"未知的消元路线 {method}", reason="unknown_method")

    image = None
    for attempt in range(MAX_RETRIES):
        nd = numeric_degree(F, M.components, seed=seed + attempt)
        if nd == 0:
            raise DegenerateImageError("随机直线的原像中没有非基点，像是一个点")
        if method == "kernel":
            equation, stripped = _kernel_image(F, M), []
        else:
            equation, stripped = _resultant_image(F, M, make_rng(seed, attempt))
        degree = total_degree(equation)
        map_degree = nd // degree if nd % degree == 0 else None
        image = ImageCurve(equation, degree, nd == degree, stripped, nd, map_degree, method)
        if image.certified:
            logger.info(f"像曲线次数 {degree}，数值次数一致")
            return image
        if map_degree and map_degree > 1:
            # 映射在曲线上不是双有理的，重试不会改变结论
            logger.warning(f"像曲线次数 {degree}，纤维计数 {nd}，映射次数 {map_degree}")
            return image
        logger.warning(f"消元次数 {degree} 与数值次数 {nd} 不符，换坐标卡重试（第 {attempt + 1} 次）")
    logger.error(f"消元次数与数值次数持续不符: {image.degree} vs {image.numeric_degree}")
    return image


def dual_curve(G: PolyElement, seed: int = DEFAULT_SEED, method: str = "auto") -> ImageCurve:
    """梯度映射下的像，即对偶曲线（直线坐标 u, v, w）"""
    G = _source_curve(G)
    if total_degree(G) == 1:
        point = ProjPoint(tuple(G.coeff(g) for g in XYZ.gens))
        raise DegenerateImageError(f"直线的对偶是一个点 {point}", point=point)
    if square_free_part(G) != G.monic():
        raise PreconditionError("对偶曲线要求方程无平方因子", reason="not_square_free")
    return image_curve(G, RationalMapP2.gradient_of(G), seed=seed, method=method)


def caustic_implicit(F: PolyElement, S: ProjPoint, seed: int = DEFAULT_SEED, method: str = "auto") -> ImageCurve:
    """焦散 Σ_S(C)：Φ_{F,S} 的像"""
    F = _source_curve(F)
    return image_curve(F, phi_components(F, S), seed=seed, method=method)


def caustic_dual_implicit(F: PolyElement, S: ProjPoint, seed: int = DEFAULT_SEED,
                          method: str = "auto") -> ImageCurve:
    """焦散的对偶：ρ_{F,S} 的像，次数就是焦散的类数"""
    F = _source_curve(F)
    return image_curve(F, rho_components(F, S), seed=seed, method=method)


def _require_finite_source(S: ProjPoint):
    if S.is_at_infinity():
        raise PreconditionError("光源不能在无穷远", reason="source_at_infinity")


def orthotomic(F: PolyElement, S: ProjPoint, seed: int = DEFAULT_SEED, method: str = "auto") -> ImageCurve:
    """S 关于各切线的反射点的轨迹"""
    _require_finite_source(S)
    F = _source_curve(F)
    return image_curve(F, sigma_components(F, S), seed=seed, method=method)


def pedal(F: PolyElement, S: ProjPoint, seed: int = DEFAULT_SEED, method: str = "auto") -> ImageCurve:
    """S 到各切线的垂足的轨迹，即 S 与 σ_{T_m}(S) 的中点"""
    _require_finite_source(S)
    F = _source_curve(F)
    s = S.normalized().coords
    sx, sy, q = sigma_components(F, S.normalized())
    comps = (q.mul_ground(s[0]) + sx, q.mul_ground(s[1]) + sy, 2 * q)
    return image_curve(F, comps, seed=seed, method=method)


def evolute(G: PolyElement, seed: int = DEFAULT_SEED, method: str = "auto") -> ImageCurve:
    """法线族的包络"""
    G = _source_curve(G)
    return image_curve(G, evolute_components(G), seed=seed, method=method)


def quetelet_dandelin(F: PolyElement, S: ProjPoint, seed: int = DEFAULT_SEED) -> Dict:
    """
    焦散与"正交曲线的渐屈线"两条路线的交叉验证
    两个方程都是首一无平方的，直接比较
    """
    _require_finite_source(S)
    caustic = caustic_implicit(F, S, seed=seed)
    ortho = orthotomic(F, S, seed=seed)
    via_evolute = evolute(ortho.equation, seed=seed)
    match = caustic.equation == via_evolute.equation
    if match:
        logger.info(f"正交曲线路线与焦散一致（次数 {caustic.degree}）")
    else:
        logger.error(f"正交曲线路线与焦散不一致: {caustic.degree} vs {via_evolute.degree}")
    return {
        'match': match,
        'caustic_degree': caustic.degree,
        'orthotomic_degree': ortho.degree,
        'evolute_degree': via_evolute.degree,
    }
