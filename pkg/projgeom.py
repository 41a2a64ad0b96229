"""
射影平面几何
点与直线、join/meet、正交对称 σ_D、切线与法线、反射线，以及映射 ρ、Φ、τ 的多项式分量
"""
import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement

from algebra import (
    XYZ, as_scalar, conjugate_scalar, cross3, dot3, evaluate_at, format_scalar, gcd, is_extension, is_homogeneous,
    parse_scalar, simplify_scalar, total_degree,
)
from config import CHART_HEIGHT
from errors import (
    DegenerateCausticError, DegenerateError, EqualArgumentsError, IsotropicMirrorError,
    ParseError, PreconditionError, SingularPointError,
)

logger = logging.getLogger(__name__)

PolyTriple = Tuple[PolyElement, PolyElement, PolyElement]


def _normalize(coords: Tuple) -> Tuple:
    """最后一个非零坐标归一为 1"""
    coords = tuple(simplify_scalar(c) for c in coords)
    for c in reversed(coords):
        if c:
            return tuple(simplify_scalar(x / c) for x in coords)
    return coords


@dataclass(frozen=True, eq=False)
class ProjPoint:
    """射影点，坐标只在相差非零倍数的意义下有意义"""

    coords: Tuple

    def __post_init__(self):
        coords = tuple(simplify_scalar(as_scalar(c)) for c in self.coords)
        if len(coords) != 3 or not any(coords):
            raise PreconditionError("射影坐标必须是不全为零的三元组")
        object.__setattr__(self, "coords", coords)

    def normalized(self) -> "ProjPoint":
        return type(self)(_normalize(self.coords))

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return not any(cross3(self.coords, other.coords))

    def __hash__(self):
        return hash(self.normalized().coords)

    def __getitem__(self, k):
        return self.coords[k]

    def __iter__(self):
        return iter(self.coords)

    def __str__(self):
        return "[" + ":".join(format_scalar(c) for c in self.coords) + "]"

    __repr__ = __str__

    def conjugate(self) -> "ProjPoint":
        return type(self)(tuple(conjugate_scalar(c) for c in self.coords))

    def is_rational(self) -> bool:
        """坐标都在 Q(i) 中"""
        return not any(is_extension(c) for c in self.coords)

    def is_at_infinity(self) -> bool:
        return not self.coords[2]

    @classmethod
    def parse(cls, text: str) -> "ProjPoint":
        return cls(_parse_triple(text))


class ProjLine(ProjPoint):
    """直线 V(a x + b y + c z)，系数三元组同样只在倍数意义下有意义"""


def _parse_triple(text: str) -> Tuple:
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError("点必须写成 [a:b:c] 的形式", 0)
    parts = s[1:-1].split(":")
    if len(parts) != 3:
        raise ParseError("点必须恰好有三个坐标", 0)
    coords = []
    offset = text.index("[") + 1
    for part in parts:
        try:
            coords.append(parse_scalar(part))
        except ParseError as exc:
            raise ParseError(f"坐标 '{part.strip()}' 无法解析", offset + exc.position) from exc
        offset += len(part) + 1
    if not any(coords):
        raise ParseError("射影坐标不能全为零", 0)
    return tuple(coords)


I_POINT = ProjPoint((1, QQ_I(0, 1), 0))
J_POINT = ProjPoint((1, QQ_I(0, -1), 0))
LINE_AT_INFINITY = ProjLine((0, 0, 1))


def incidence(point: ProjPoint, line: ProjLine):
    return dot3(point.coords, line.coords)


def join(p: ProjPoint, q: ProjPoint) -> ProjLine:
    """过两点的直线"""
    c = cross3(p.coords, q.coords)
    if not any(c):
        raise EqualArgumentsError("join 的两个点射影相同")
    return ProjLine(c)


def meet(l1: ProjLine, l2: ProjLine) -> ProjPoint:
    """两直线的交点"""
    c = cross3(l1.coords, l2.coords)
    if not any(c):
        raise EqualArgumentsError("meet 的两条直线射影相同")
    return ProjPoint(c)


def reflect_point(D: ProjLine, p: ProjPoint) -> ProjPoint:
    """
    关于直线 D 的正交对称 σ_D
    (a²+b²)·p - 2·(a p0 + b p1 + c p2)·(a, b, 0)，是固定 D 上每一点的对合
    """
    a, b, _ = D.coords
    n = simplify_scalar(a * a + b * b)
    if not n:
        raise IsotropicMirrorError("镜面方向迷向（a²+b²=0），σ_D 无定义", reason="isotropic_mirror")
    ell = dot3(D.coords, p.coords)
    image = (n * p[0] - 2 * ell * a, n * p[1] - 2 * ell * b, n * p[2])
    image = tuple(simplify_scalar(c) for c in image)
    if not any(image):
        raise DegenerateError("对称像为零向量")
    return ProjPoint(image)


def gradient(F: PolyElement) -> PolyTriple:
    R = F.ring
    return tuple(F.diff(g) for g in R.gens)


def gradient_at(F: PolyElement, m: ProjPoint) -> Tuple:
    return tuple(evaluate_at(g, m.coords) for g in gradient(F))


def _require_on_curve(F: PolyElement, m: ProjPoint):
    if evaluate_at(F, m.coords):
        raise PreconditionError(f"点 {m} 不在曲线上", reason="not_on_curve")


def tangent_line(F: PolyElement, m: ProjPoint) -> ProjLine:
    _require_on_curve(F, m)
    g = gradient_at(F, m)
    if not any(g):
        raise SingularPointError(f"点 {m} 处梯度为零（奇点）", reason="singular_point")
    return ProjLine(g)


def normal_line(F: PolyElement, m: ProjPoint) -> ProjLine:
    """过 m 与 [F_x(m):F_y(m):0] 的直线"""
    _require_on_curve(F, m)
    fx, fy, fz = gradient_at(F, m)
    if not fx and not fy:
        if not fz:
            raise SingularPointError(f"点 {m} 处梯度为零（奇点）", reason="singular_point")
        raise PreconditionError(f"点 {m} 处切线为无穷远直线，法线无定义", reason="normal_undefined")
    foot = ProjPoint((fx, fy, 0))
    if foot == m:
        raise PreconditionError(f"点 {m} 与 [F_x:F_y:0] 重合，法线无定义", reason="normal_undefined")
    return join(m, foot)


def in_C0(F: PolyElement, m: ProjPoint) -> bool:
    """F_x(m)² + F_y(m)² ≠ 0"""
    _require_on_curve(F, m)
    fx, fy, _ = gradient_at(F, m)
    return bool(simplify_scalar(fx * fx + fy * fy))


def reflected_line(F: PolyElement, S: ProjPoint, m: ProjPoint) -> ProjLine:
    """反射线 (m σ_{T_m C}(S))"""
    if not in_C0(F, m):
        raise PreconditionError(f"点 {m} 不在 C_0 中", reason="not_in_C0")
    if m == S:
        raise PreconditionError("光源与曲线上的点重合", reason="source_on_point")
    image = reflect_point(tangent_line(F, m), S)
    if image == m:
        raise PreconditionError("光源的对称像与 m 重合，反射线无定义", reason="reflection_hits_point")
    return join(m, image)


# ---------------------------------------------------------------------------
# 多项式三元组
# ---------------------------------------------------------------------------

def constant_triple(p: ProjPoint, R=XYZ) -> PolyTriple:
    if not p.is_rational():
        raise PreconditionError("符号构造只支持 Q(i) 坐标")
    return tuple(R.ground_new(c) for c in p.coords)


def reduce_content(triple: Sequence[PolyElement]) -> PolyTriple:
    """除去三个分量的公因式"""
    g = None
    for c in triple:
        if c:
            g = c.monic() if g is None else gcd(g, c)
    if g is None:
        return tuple(triple)
    if g.is_ground:
        # 只把数值公因子规范掉：让第一个非零分量首一
        lead = next(c for c in triple if c).LC
        return tuple(c.quo_ground(lead) for c in triple)
    out = tuple(c.exquo(g) for c in triple)
    lead = next(c for c in out if c).LC
    return tuple(c.quo_ground(lead) for c in out)


def triple_at(triple: Sequence[PolyElement], m: ProjPoint) -> Tuple:
    return tuple(evaluate_at(c, m.coords) for c in triple)


def sigma_components(F: PolyElement, S: ProjPoint) -> PolyTriple:
    """m ↦ σ_{T_m C}(S) 的符号形式"""
    fx, fy, fz = gradient(F)
    s = constant_triple(S, F.ring)
    q = fx ** 2 + fy ** 2
    ell = s[0] * fx + s[1] * fy + s[2] * fz
    return (q * s[0] - 2 * ell * fx, q * s[1] - 2 * ell * fy, q * s[2])


def rho_components(F: PolyElement, S: ProjPoint) -> PolyTriple:
    """ρ_{F,S}：反射线的直线坐标，次数 2d-1（约去公因式前）"""
    m = F.ring.gens
    return reduce_content(cross3(m, sigma_components(F, S)))


def tangent_direction(F: PolyElement) -> PolyTriple:
    """t(m) = ∇F(m) ∧ m，切线上异于 m 的点"""
    return cross3(gradient(F), F.ring.gens)


def jacobian_apply(triple: Sequence[PolyElement], vec: Sequence[PolyElement]) -> PolyTriple:
    gens = triple[0].ring.gens
    return tuple(sum((c.diff(g) * v for g, v in zip(gens, vec)), triple[0].ring.zero) for c in triple)


def envelope_components(F: PolyElement, lines: Sequence[PolyElement], raw: bool = False) -> PolyTriple:
    """
    直线族 L(m) 的包络特征点 L ∧ (J_L · t)
    raw=True 时返回约去公因式之前的分量
    """
    t = tangent_direction(F)
    moved = jacobian_apply(lines, t)
    result = cross3(tuple(lines), moved)
    return result if raw else reduce_content(result)


def _check_envelope(F: PolyElement, comps: PolyTriple, what: str) -> PolyTriple:
    if not any(comps) or all(not c.rem(F) for c in comps):
        raise DegenerateCausticError(f"{what}在曲线上恒为零，构造退化")
    if all(c.is_ground for c in comps):
        point = ProjPoint(tuple(c.LC if c else QQ_I.zero for c in comps))
        raise DegenerateCausticError(f"{what}退化为一个点 {point}", point=point)
    return comps


def phi_components(F: PolyElement, S: ProjPoint) -> PolyTriple:
    """焦散映射 Φ_{F,S} = ρ ∧ (Jρ · t)，约去公因式"""
    return _check_envelope(F, envelope_components(F, rho_components(F, S)), "焦散映射 Φ ")


def normal_components(F: PolyElement) -> PolyTriple:
    """法线族 m ↦ m ∧ [F_x:F_y:0]"""
    fx, fy, _ = gradient(F)
    return reduce_content(cross3(F.ring.gens, (fx, fy, F.ring.zero)))


def evolute_components(F: PolyElement) -> PolyTriple:
    """渐屈线映射：法线族的包络特征点"""
    return _check_envelope(F, envelope_components(F, normal_components(F)), "渐屈线映射 ")


def tau(F: PolyElement, m: ProjPoint, m2: ProjPoint) -> ProjPoint:
    """τ_m(m2) = (m ∧ σ_{T_m}(m2)) ∧ (m2 ∧ σ_{T_{m2}}(m))"""
    if not in_C0(F, m) or not in_C0(F, m2):
        raise PreconditionError("τ 要求两个点都在 C_0 中", reason="not_in_C0")
    if m == m2:
        raise EqualArgumentsError("τ 的两个点相同")
    t1, t2 = tangent_line(F, m), tangent_line(F, m2)
    n1, n2 = normal_line(F, m), normal_line(F, m2)
    if {t1, n1} & {t2, n2}:
        raise PreconditionError("两点的切线/法线重合，τ 无定义", reason="tau_excluded")
    a = cross3(m.coords, reflect_point(t1, m2).coords)
    b = cross3(m2.coords, reflect_point(t2, m).coords)
    if not any(a) or not any(b):
        raise DegenerateError("τ 的外积因子为零")
    point = cross3(a, b)
    if not any(point):
        raise DegenerateError("τ 的两条直线重合")
    return ProjPoint(point)


def tau_components(F: PolyElement, m: ProjPoint) -> PolyTriple:
    """τ_m 作为 m2 的有理映射，约去公因式后次数不超过 2d"""
    R = F.ring
    mc = constant_triple(m, R)
    a, b, c = (R.ground_new(v) for v in tangent_line(F, m).coords)
    n = a * a + b * b
    x = R.gens
    ell = a * x[0] + b * x[1] + c * x[2]
    sigma_m = (n * x[0] - 2 * ell * a, n * x[1] - 2 * ell * b, n * x[2])
    first = cross3(mc, sigma_m)
    fx, fy, fz = gradient(F)
    q = fx ** 2 + fy ** 2
    ell2 = mc[0] * fx + mc[1] * fy + mc[2] * fz
    sigma_m2 = (q * mc[0] - 2 * ell2 * fx, q * mc[1] - 2 * ell2 * fy, q * mc[2])
    second = cross3(x, sigma_m2)
    return reduce_content(cross3(first, second))


# ---------------------------------------------------------------------------
# 射影变换与欧氏运动
# ---------------------------------------------------------------------------

Matrix3 = Tuple[Tuple, Tuple, Tuple]


def matrix_inverse(A: Matrix3) -> Matrix3:
    M = DomainMatrix([[as_scalar(c) for c in row] for row in A], (3, 3), QQ_I)
    inv = M.inv().to_list()
    return tuple(tuple(row) for row in inv)


def apply_matrix(A: Matrix3, p: ProjPoint) -> ProjPoint:
    return ProjPoint(tuple(dot3(row, p.coords) for row in A))


def substitute_linear(F: PolyElement, A: Matrix3) -> PolyElement:
    """F(A·x)"""
    R = F.ring
    gens = R.gens
    images = [sum((R.ground_new(as_scalar(c)) * g for c, g in zip(row, gens)), R.zero) for row in A]
    return F.compose(list(zip(gens, images)))


def transform_curve(F: PolyElement, A: Matrix3) -> PolyElement:
    """曲线 V(F) 在变换 A 下的像 V(F∘A⁻¹)"""
    return substitute_linear(F, matrix_inverse(A))


def pythagorean_rotation(p: int, q: int) -> Matrix3:
    """绕原点的有理旋转，cos = (p²-q²)/(p²+q²)，sin = 2pq/(p²+q²)"""
    n = p * p + q * q
    c, s = QQ(p * p - q * q, n), QQ(2 * p * q, n)
    return ((c, -s, 0), (s, c, 0), (0, 0, 1))


def rotation(c, s) -> Matrix3:
    """绕原点的旋转，要求 c² + s² = 1（有理或高斯有理）"""
    c, s = as_scalar(c), as_scalar(s)
    if c * c + s * s != QQ_I.one:
        raise PreconditionError("旋转矩阵要求 c² + s² = 1", reason="not_a_rotation")
    return ((c, -s, 0), (s, c, 0), (0, 0, 1))


def translation(a, b) -> Matrix3:
    return ((1, 0, a), (0, 1, b), (0, 0, 1))


def apply_motion(F: PolyElement, A: Matrix3) -> PolyElement:
    """欧氏运动作用于曲线，结果首一化"""
    G = transform_curve(F, A)
    return G.monic() if G else G


def homothety_matrix(S: ProjPoint, k) -> Matrix3:
    """以仿射点 S 为中心、比为 k 的位似"""
    if S.is_at_infinity():
        raise PreconditionError("位似中心不能在无穷远", reason="source_at_infinity")
    s = S.normalized().coords
    k = as_scalar(k)
    return ((k, 0, (1 - k) * s[0]), (0, k, (1 - k) * s[1]), (0, 0, 1))


def homothety(G: PolyElement, S: ProjPoint, k) -> PolyElement:
    return transform_curve(G, homothety_matrix(S, k))


def curve_degree(F: PolyElement) -> int:
    if not is_homogeneous(F):
        raise PreconditionError("曲线方程必须是齐次多项式")
    return total_degree(F)


def _int_det(A: Matrix3) -> int:
    (a, b, c), (d, e, f), (g, h, i) = A
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def random_matrix(rng, height: int = CHART_HEIGHT) -> Matrix3:
    """元素在 [-height, height] 中的随机可逆整数矩阵"""
    while True:
        entries = [int(v) for v in rng.integers(-height, height + 1, size=9)]
        A = (tuple(entries[0:3]), tuple(entries[3:6]), tuple(entries[6:9]))
        if _int_det(A):
            return A
