"""
曲线的局部不变量
重数 μ_P、分支分解（有理 Newton–Puiseux）、拐分支计数 f0、切触数 t_P 与无穷远切触数 g
"""
import logging
from dataclasses import dataclass, field
from math import comb, gcd as igcd
from typing import Dict, Iterator, List, Optional, Tuple

from sympy.polys.domains import QQ_I
from sympy.polys.rings import PolyElement

from algebra import (
    T, T_RING, X, Y, GaussianExtension, bezout_pair, coefficient_field, common_field, cross3, dehomogenize,
    evaluate_at, extension_field, extension_root, factor_roots, field_pow, format_scalar, is_homogeneous,
    is_real, line_ring, linear_root, multiplicity_at_root, resultant, restrict_to_line, scalar_field,
    simplify_scalar, specialize, to_univariate, total_degree,
)
from config import DEFAULT_SEED, MAX_RETRIES, TRUNCATION_FACTOR
from errors import (
    CausticError, ChartFailureError, ExtensionTowerError, LineComponentError, PreconditionError,
    TruncationError,
)
from projgeom import (
    I_POINT, J_POINT, LINE_AT_INFINITY, Matrix3, ProjLine, ProjPoint, apply_matrix,
    curve_degree, gradient_at, random_matrix, substitute_linear, tangent_line,
)
from utils import make_rng

logger = logging.getLogger(__name__)

LocalPoly = Dict[Tuple[int, int], object]

# 坐标卡优先级：z=1，其次 y=1，最后 x=1
_CHART_ORDER = (2, 1, 0)
_OTHER_INDICES = {2: (0, 1), 1: (0, 2), 0: (1, 2)}


@dataclass(frozen=True)
class PuiseuxPrefix:
    """
    截断的有理 Puiseux 参数化（剪切后的局部坐标）
    X = x_coeff * T^x_exp，Y = Σ c * T^e
    """

    x_coeff: object
    x_exp: int
    y_terms: Tuple[Tuple[int, object], ...]
    shear: int
    exact: bool

    def describe(self) -> str:
        ys = " + ".join(f"{format_scalar(c)}*T^{e}" for e, c in self.y_terms) or "0"
        tail = "" if self.exact else " + ..."
        return f"X = {format_scalar(self.x_coeff)}*T^{self.x_exp}, Y = {ys}{tail}"


@dataclass(frozen=True)
class CurveBranch:
    """点 P 处的一个分支；conjugates > 1 表示一组在 Q(i) 上共轭的分支，只保留一个代表"""

    center: ProjPoint
    mult: int
    tangent: ProjLine
    tangent_order: int
    series_prefix: Optional[PuiseuxPrefix] = None
    conjugates: int = 1

    def is_inflectional(self) -> bool:
        return self.tangent_order > 2 * self.mult


@dataclass
class InvariantReport:
    d: int
    d_dual: int
    f0: int
    t_I: int
    t_J: int
    g: int
    mu_I: int
    mu_J: int
    predicted_degree: int
    predicted_class: int
    source: ProjPoint
    computed_degree: Optional[int] = None
    computed_class: Optional[int] = None
    degree_match: Optional[bool] = None
    class_match: Optional[bool] = None
    phi_map_degree: Optional[int] = None
    rho_map_degree: Optional[int] = None
    degree_with_multiplicity: Optional[int] = None
    class_with_multiplicity: Optional[int] = None

    def invariants(self) -> Dict[str, int]:
        return {
            "d": self.d, "d_dual": self.d_dual, "f0": self.f0, "t_I": self.t_I, "t_J": self.t_J,
            "g": self.g, "mu_I": self.mu_I, "mu_J": self.mu_J,
        }

    def set_computed(self, degree: int, klass: int):
        self.computed_degree = degree
        self.computed_class = klass
        self.degree_match = degree == self.predicted_degree
        self.class_match = klass == self.predicted_class

    @property
    def matched(self) -> bool:
        return bool(self.degree_match and self.class_match)


# ---------------------------------------------------------------------------
# 局部展开
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LocalChart:
    point: Tuple  # 归一化后 chart 分量为 1
    chart: int
    others: Tuple[int, int]


def _local_chart(P: ProjPoint) -> LocalChart:
    common_field(P.coords)
    for c in _CHART_ORDER:
        if P[c]:
            coords = tuple(simplify_scalar(v / P[c]) for v in P.coords)
            return LocalChart(coords, c, _OTHER_INDICES[c])
    raise PreconditionError("射影点坐标全为零")


def _add(poly: LocalPoly, key: Tuple[int, int], value):
    total = simplify_scalar(poly.get(key, QQ_I.zero) + value)
    if total:
        poly[key] = total
    else:
        poly.pop(key, None)


def _binomial_row(p, e: int) -> List:
    """(p + X)^e 的系数：C(e,k) p^(e-k)"""
    return [comb(e, k) * field_pow(p, e - k) for k in range(e + 1)]


def local_expansion(F: PolyElement, P: ProjPoint) -> Tuple[LocalPoly, LocalChart]:
    """把 P 平移到原点后的仿射方程 H(X, Y)"""
    if not is_homogeneous(F):
        raise PreconditionError("曲线方程必须是齐次多项式")
    chart = _local_chart(P)
    i1, i2 = chart.others
    p1, p2 = chart.point[i1], chart.point[i2]
    rows: Dict[Tuple[int, int], List] = {}

    def row(which, p, e):
        if (which, e) not in rows:
            rows[(which, e)] = _binomial_row(p, e)
        return rows[(which, e)]

    H: LocalPoly = {}
    for monom, coeff in F.iterterms():
        r1 = row(1, p1, monom[i1])
        r2 = row(2, p2, monom[i2])
        for a, ca in enumerate(r1):
            if not ca:
                continue
            for b, cb in enumerate(r2):
                if cb:
                    _add(H, (a, b), coeff * ca * cb)
    return H, chart


def _order(H: LocalPoly) -> int:
    return min(a + b for a, b in H) if H else 0


def multiplicity_at(F: PolyElement, P: ProjPoint) -> int:
    """μ_P(C)：局部方程最低次项的次数，P 不在曲线上时为 0"""
    H, _ = local_expansion(F, P)
    if (0, 0) in H:
        return 0
    return _order(H)


# ---------------------------------------------------------------------------
# 有理 Newton–Puiseux
# ---------------------------------------------------------------------------

def _shear(H: LocalPoly, c: int) -> LocalPoly:
    """X <- X + c*Y"""
    if not c:
        return dict(H)
    out: LocalPoly = {}
    for (a, b), coeff in H.items():
        for k in range(a + 1):
            _add(out, (k, b + a - k), coeff * comb(a, k) * c ** (a - k))
    return out


def _choose_shear(H: LocalPoly, mu: int) -> int:
    """最小的 c ≥ 0 使最低次型满足 h_μ(c, 1) ≠ 0，即剪切后 X=0 不是切线"""
    lowest = [(a, coeff) for (a, b), coeff in H.items() if a + b == mu]
    for c in range(mu + 2):
        value = QQ_I.zero
        for a, coeff in lowest:
            value = coeff * c ** a + value
        if simplify_scalar(value):
            return c
    raise PreconditionError("最低次型恒为零")


def _edges(H: LocalPoly, r: int, bmin: int) -> Iterator[Tuple[int, int, int, PolyElement]]:
    """
    从 (0, r) 往下到 b = bmin 的 Newton 多边形各边
    逐条给出 (q, m, l, φ)：边上的点满足 q*a + m*b = l
    """
    a0, b0 = 0, r
    while b0 > bmin:
        best = None
        for (a, b) in H:
            if b >= b0:
                continue
            da, db = a - a0, b0 - b
            if best is None:
                best = (da, db, a, b)
                continue
            lhs, rhs = da * best[1], best[0] * db
            if lhs < rhs or (lhs == rhs and b < best[3]):
                best = (da, db, a, b)
        da, db, a1, b1 = best
        g = igcd(da, db)
        q, m = db // g, da // g
        l = q * a0 + m * b0
        coeffs = {(b - b1) // q: coeff for (a, b), coeff in H.items() if b1 <= b <= b0 and q * a + m * b == l}
        R = line_ring(coefficient_field(tuple(coeffs.values())))
        yield q, m, l, R.from_dict({(k,): c for k, c in coeffs.items()})
        a0, b0 = a1, b1


def _square_free(phi: PolyElement) -> PolyElement:
    g = phi.gcd(phi.diff(phi.ring.gens[0]))
    return phi if g.degree() <= 0 else phi.quo(g)


def _to_t_ring(phi: PolyElement) -> PolyElement:
    return T_RING.from_dict(dict(phi))


def _edge_roots(phi: PolyElement, ext: Optional[GaussianExtension]) -> List[Tuple[object, int]]:
    """边多项式的根 [(ξ, 共轭个数)]，只允许一层代数扩张"""
    phi_field = common_field(phi.itercoeffs())
    if phi_field is None and ext is None:
        return [(root, conj) for root, _, conj in factor_roots(_to_t_ring(phi))]
    sqf = _square_free(phi)
    if sqf.degree() == 1:
        return [(linear_root(sqf), 1)]
    if phi_field is None:
        # 系数在 Q(i) 中：一次因子照常，与当前扩张相同的二次因子在扩张内分裂
        roots = []
        _, factors = _to_t_ring(phi).factor_list()
        for fac, _ in factors:
            fac = fac.monic()
            if fac.degree() == 1:
                roots.append((extension_root(fac), 1))
            elif fac.degree() == 2 and extension_field(fac) == ext:
                gen = ext.generator
                b = fac.get((1,), QQ_I.zero)
                roots.append((gen, 1))
                roots.append((simplify_scalar(-gen - b), 1))
            else:
                raise ExtensionTowerError("边多项式的根需要第二层代数扩张")
        return roots
    raise ExtensionTowerError("扩张上的边多项式不能分解为一次因子，需要第二层代数扩张")


def _transform(H: LocalPoly, xi, q: int, m: int, l: int, u: int, v: int) -> LocalPoly:
    """H(ξ^v S^q, S^m (ξ^u + Y')) / S^l"""
    powers: Dict[int, object] = {}

    def xi_pow(n):
        if n not in powers:
            powers[n] = field_pow(xi, n)
        return powers[n]

    out: LocalPoly = {}
    for (a, b), coeff in H.items():
        base = q * a + m * b - l
        for j in range(b + 1):
            _add(out, (base, j), coeff * comb(b, j) * xi_pow(v * a + u * (b - j)))
    return out


@dataclass
class _Chain:
    """X0 = lam * T^N，Y0 = Σ terms + kappa * T^M * Y"""

    lam: object
    N: int
    terms: Dict[int, object]
    kappa: object
    M: int
    conjugates: int = 1
    ext: Optional[GaussianExtension] = None

    def advance(self, xi, q: int, m: int, u: int, v: int, conj: int) -> "_Chain":
        terms = {q * e: simplify_scalar(c * field_pow(xi, v * e)) for e, c in self.terms.items()}
        shift = field_pow(xi, v * self.M)
        terms[q * self.M + m] = simplify_scalar(self.kappa * shift * field_pow(xi, u))
        ext = self.ext if self.ext is not None else scalar_field(xi)
        return _Chain(
            lam=simplify_scalar(self.lam * field_pow(xi, v * self.N)),
            N=q * self.N,
            terms=terms,
            kappa=simplify_scalar(self.kappa * shift),
            M=q * self.M + m,
            conjugates=self.conjugates * conj,
            ext=ext,
        )


class _NewtonPuiseux:
    """逐条边展开，直到 Y 的一次项系数非零（隐函数定理接管）"""

    def __init__(self, budget: int):
        self.budget = budget
        self.steps = 0
        self.leaves: List[Tuple[_Chain, Optional[int], object]] = []

    def run(self, H: LocalPoly, chain: _Chain):
        r = min(b for (a, b) in H if a == 0)
        if r == 1:
            k0 = min((a for (a, b) in H if b == 0), default=None)
            g0 = None if k0 is None else simplify_scalar(-H[(k0, 0)] / H[(0, 1)])
            self.leaves.append((chain, k0, g0))
            return
        bmin = min(b for (_, b) in H)
        if bmin > 1:
            raise PreconditionError("局部方程含重复分支，曲线不是既约的", reason="not_reduced")
        if bmin == 1:
            # Y 整除 H：Y = 0 是这一层的一个精确分支
            self.leaves.append((chain, None, None))
        for q, m, l, phi in _edges(H, r, bmin):
            u, v = bezout_pair(q, m)
            for xi, conj in _edge_roots(phi, chain.ext):
                self.steps += 1
                if self.steps > self.budget:
                    raise TruncationError(f"Newton 迭代超过预算 {self.budget} 步，切触阶未能确定")
                self.run(_transform(H, xi, q, m, l, u, v), chain.advance(xi, q, m, u, v, conj))


def _tangent_coords(chart: LocalChart, a1, c: int) -> Tuple:
    """剪切坐标中的切方向 (1, a1) 映回射影直线"""
    i1, i2 = chart.others
    p1, p2 = chart.point[i1], chart.point[i2]
    dx = simplify_scalar(1 + a1 * c)
    L = [QQ_I.zero] * 3
    L[i1] = a1
    L[i2] = simplify_scalar(-dx)
    L[chart.chart] = simplify_scalar(dx * p2 - a1 * p1)
    return tuple(L)


def _finish_branch(P: ProjPoint, chart: LocalChart, shear: int, chain: _Chain, k0, g0) -> CurveBranch:
    a1 = simplify_scalar(chain.terms.get(chain.N, QQ_I.zero) / chain.lam)
    candidates = [e for e, c in chain.terms.items() if e != chain.N and c]
    if k0 is not None:
        candidates.append(chain.M + k0)
    if not candidates:
        raise LineComponentError(f"点 {P} 处的切线是曲线的分支")
    y_terms = sorted(chain.terms.items())
    if g0 is not None:
        y_terms.append((chain.M + k0, simplify_scalar(chain.kappa * g0)))
    prefix = PuiseuxPrefix(chain.lam, chain.N, tuple(y_terms), shear, exact=k0 is None)
    return CurveBranch(
        center=P,
        mult=chain.N,
        tangent=ProjLine(_tangent_coords(chart, a1, shear)),
        tangent_order=min(candidates),
        series_prefix=prefix,
        conjugates=chain.conjugates,
    )


def _second_point(line: ProjLine, P: ProjPoint) -> ProjPoint:
    """直线上一个与 P 不同的点"""
    for basis in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        c = cross3(line.coords, basis)
        if any(c) and any(cross3(c, P.coords)):
            return ProjPoint(c)
    raise PreconditionError("找不到直线上的第二个点")


def branches_at(F: PolyElement, P: ProjPoint, truncation: Optional[int] = None) -> List[CurveBranch]:
    """
    P 处的分支分解
    光滑点直接由切线与曲线的相交重数给出切触阶，奇点走 Newton–Puiseux
    """
    H, chart = local_expansion(F, P)
    if (0, 0) in H:
        raise PreconditionError(f"点 {P} 不在曲线上", reason="not_on_curve")
    mu = _order(H)
    if mu == 1:
        tangent = ProjLine(gradient_at(F, P))
        form = restrict_to_line(F, P, _second_point(tangent, P))
        order = multiplicity_at_root(form, (1, 0))
        return [CurveBranch(center=P, mult=1, tangent=tangent, tangent_order=order)]

    d = total_degree(F)
    budget = truncation if truncation is not None else TRUNCATION_FACTOR * d * d
    shear = _choose_shear(H, mu)
    solver = _NewtonPuiseux(budget)
    ext = common_field(P.coords)
    solver.run(_shear(H, shear), _Chain(QQ_I.one, 1, {}, QQ_I.one, 0, 1, ext))
    branches = [_finish_branch(P, chart, shear, chain, k0, g0) for chain, k0, g0 in solver.leaves]
    total = sum(b.mult * b.conjugates for b in branches)
    if total != mu:
        raise CausticError(f"点 {P} 处分支重数之和 {total} 与 μ={mu} 不符")
    logger.info(f"点 {P}: μ={mu}，{len(branches)} 组分支，Newton 迭代 {solver.steps} 步")
    return branches


# ---------------------------------------------------------------------------
# 全局轨迹：无穷远点、奇点、Hessian
# ---------------------------------------------------------------------------

def infinity_points(F: PolyElement) -> List[Tuple[ProjPoint, int, int]]:
    """
    C ∩ ℓ_∞：[(点, i_P(C, ℓ_∞), 共轭个数)]
    ℓ_∞ 是分支时抛出 LineComponentError
    """
    d = curve_degree(F)
    form = restrict_to_line(F, (1, 0, 0), (0, 1, 0))
    points = []
    at_x = multiplicity_at_root(form, (1, 0))
    if at_x:
        points.append((ProjPoint((1, 0, 0)), at_x, 1))
    poly = T_RING.from_dict({(k,): c for k, c in enumerate(form.coeffs) if c})
    for root, mult, conj in factor_roots(poly):
        points.append((ProjPoint((root, 1, 0)), mult, conj))
    if sum(i * conj for _, i, conj in points) != d:
        raise CausticError("与无穷远直线的交点重数之和不等于次数")
    return points


def contact_infinity(F: PolyElement) -> int:
    """g = Σ_{P ∈ C∩ℓ_∞} (i_P(C, ℓ_∞) - μ_P(C)) = d - Σ μ_P"""
    d = curve_degree(F)
    total = sum(conj * multiplicity_at(F, pt) for pt, _, conj in infinity_points(F))
    return d - total


def hessian(F: PolyElement) -> PolyElement:
    R = F.ring
    m = [[F.diff(a).diff(b) for b in R.gens] for a in R.gens]
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _slice_y(f: PolyElement, x0) -> PolyElement:
    """f(x0, y) 作为 y 的一元多项式（f 不含 z）"""
    R = line_ring(coefficient_field((x0,)))
    s = R.gens[0]
    out = R.zero
    for (a, b, _), c in f.iterterms():
        out += R.ground_new(simplify_scalar(c * field_pow(x0, a))) * s ** b
    return out


@dataclass(frozen=True)
class SingularPoint:
    point: ProjPoint
    conjugates: int
    factor: PolyElement  # 随机坐标卡中 x 坐标的不可约因式


@dataclass
class CurveAnalysis:
    """一次随机坐标卡下的整体分析结果"""

    matrix: Matrix3
    singular: List[SingularPoint] = field(default_factory=list)
    hessian_total: int = 0
    singular_hessian: int = 0

    @property
    def smooth_flex(self) -> int:
        return self.hessian_total - self.singular_hessian


def _chart_is_generic(G: PolyElement, d: int) -> bool:
    """[1:0:0]、[0:1:0] 不在曲线上，且与无穷远直线横截相交"""
    if not evaluate_at(G, (1, 0, 0)) or not evaluate_at(G, (0, 1, 0)):
        return False
    g = to_univariate(specialize(G, {1: 1, 2: 0}))
    if g.degree() != d:
        return False
    return g.gcd(g.diff(T)).degree() == 0


def _analyze_in_chart(F: PolyElement, A: Matrix3) -> Optional[CurveAnalysis]:
    d = total_degree(F)
    G = substitute_linear(F, A)
    if not _chart_is_generic(G, d):
        return None
    f = dehomogenize(G)
    fx, fy = f.diff(X), f.diff(Y)
    r1, r2 = resultant(f, fx, 1), resultant(f, fy, 1)
    if not r1 or not r2:
        return None
    analysis = CurveAnalysis(matrix=A)

    h = dehomogenize(hessian(G)) if d >= 3 else None
    if h is not None:
        R = to_univariate(resultant(f, h, 1))
        if R.degree() != 3 * d * (d - 2):
            return None
        analysis.hessian_total = 3 * d * (d - 2)

    sing = to_univariate(r1).gcd(to_univariate(r2))
    if sing.degree() > 0:
        _, factors = sing.factor_list()
        for psi, _ in factors:
            x0 = extension_root(psi)
            fs = _slice_y(f, x0)
            common = fs.gcd(_slice_y(fx, x0).gcd(_slice_y(fy, x0)))
            if common.degree() <= 0:
                continue
            common = _square_free(common)
            if common.degree() > 1:
                return None
            y0 = linear_root(common)
            if h is not None:
                if _square_free(fs.gcd(_slice_y(h, x0))).degree() != 1:
                    return None
                r = 0
                rest = R
                while rest.degree() >= psi.degree() and not rest.rem(psi):
                    rest = rest.exquo(psi)
                    r += 1
                analysis.singular_hessian += r * psi.degree()
            point = apply_matrix(A, ProjPoint((x0, y0, 1)))
            analysis.singular.append(SingularPoint(point, psi.degree(), psi))
    return analysis


def analyze_curve(F: PolyElement, seed: int = DEFAULT_SEED) -> CurveAnalysis:
    """在随机坐标卡中用结式找奇点与 Hessian 交点"""
    curve_degree(F)
    rng = make_rng(seed, 0)
    for attempt in range(MAX_RETRIES):
        A = random_matrix(rng)
        analysis = _analyze_in_chart(F, A)
        if analysis is not None:
            logger.info(f"坐标卡 {A}: 奇点 {len(analysis.singular)} 组，光滑拐点贡献 {analysis.smooth_flex}")
            return analysis
        logger.warning(f"坐标卡 {A} 不够一般，重试（第 {attempt + 1} 次）")
    raise ChartFailureError(f"{MAX_RETRIES} 个随机坐标卡都不够一般")


def singular_points(F: PolyElement, seed: int = DEFAULT_SEED) -> List[SingularPoint]:
    return analyze_curve(F, seed).singular


def flex_count(F: PolyElement, seed: int = DEFAULT_SEED) -> int:
    """光滑点上 Σ (i_P(C, T_P C) - 2)"""
    return analyze_curve(F, seed).smooth_flex


def f0(F: PolyElement, seed: int = DEFAULT_SEED, truncation: Optional[int] = None) -> int:
    """不与无穷远直线相切的拐分支的超出量之和 Σ (i - 2e)"""
    analysis = analyze_curve(F, seed)
    total = analysis.smooth_flex
    for pt, contact, conj in infinity_points(F):
        if contact > 2 and multiplicity_at(F, pt) == 1 and tangent_line(F, pt) == LINE_AT_INFINITY:
            total -= (contact - 2) * conj
    for sp in analysis.singular:
        for br in branches_at(F, sp.point, truncation):
            if br.is_inflectional() and br.tangent != LINE_AT_INFINITY:
                total += (br.tangent_order - 2 * br.mult) * br.conjugates * sp.conjugates
    return total


def t_at(F: PolyElement, P: ProjPoint, truncation: Optional[int] = None) -> int:
    """t_P：P 处切线为 ℓ_∞ 的分支重数之和"""
    if not P.is_at_infinity():
        raise PreconditionError(f"点 {P} 不在无穷远直线上")
    if not multiplicity_at(F, P):
        return 0
    return sum(b.mult * b.conjugates for b in branches_at(F, P, truncation)
               if b.tangent == LINE_AT_INFINITY)


def has_real_coefficients(F: PolyElement) -> bool:
    return all(is_real(c) for c in F.itercoeffs())


def invariant_bundle(F: PolyElement, S: ProjPoint, d_dual: int, seed: int = DEFAULT_SEED) -> InvariantReport:
    """按次数与类数公式汇总右端各量"""
    d = curve_degree(F)
    mu_I, t_I = multiplicity_at(F, I_POINT), t_at(F, I_POINT)
    if has_real_coefficients(F):
        # J 是 I 的共轭
        mu_J, t_J = mu_I, t_I
    else:
        mu_J, t_J = multiplicity_at(F, J_POINT), t_at(F, J_POINT)
    g = contact_infinity(F)
    flex = f0(F, seed)
    report = InvariantReport(
        d=d, d_dual=d_dual, f0=flex, t_I=t_I, t_J=t_J, g=g, mu_I=mu_I, mu_J=mu_J,
        predicted_degree=3 * d + flex - t_I - t_J,
        predicted_class=2 * d_dual + d - g - mu_I - mu_J,
        source=S,
    )
    logger.info(f"不变量: {report.invariants()}，预测次数 {report.predicted_degree}，预测类数 {report.predicted_class}")
    return report
