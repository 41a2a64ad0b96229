"""
精确代数内核
高斯有理数 Q(i)、单层代数扩张 Q(i)[t]/(q)、稀疏多元多项式（sympy PolyRing）以及多项式文本解析
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import Poly
from sympy.core.intfunc import igcdex
from sympy.polys.agca.extensions import ExtensionElement, FiniteExtension
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.domains.gaussiandomains import GaussianRational
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing, ring

from errors import ExtensionTowerError, LineComponentError, ParseError, PreconditionError

logger = logging.getLogger(__name__)

MPoly = PolyElement

# 规范项序：分次字典序 x > y > z（u > v > w）
XYZ, X, Y, Z = ring("x,y,z", QQ_I, grlex)
UVW, U, V, W = ring("u,v,w", QQ_I, grlex)
# 扩张的模多项式与一元辅助多项式都放在这个环里
T_RING, T = ring("t", QQ_I, grlex)

ZERO_DEGREE = float("-inf")  # 零多项式的次数

VARIABLE_NAMES = ("x", "y", "z", "u", "v", "w")


# ---------------------------------------------------------------------------
# 标量
# ---------------------------------------------------------------------------

def gauss(re, im=0) -> GaussianRational:
    """构造高斯有理数 re + im*i"""
    if isinstance(re, GaussianRational) and not im:
        return re
    return QQ_I(QQ.convert(re), QQ.convert(im))


def as_scalar(c):
    """整数、有理数、高斯有理数统一为 Q(i) 元素，扩张元素原样返回"""
    if isinstance(c, (GaussianRational, ExtensionElement)):
        return c
    if QQ.of_type(c):
        return QQ_I(c, 0)
    return QQ_I.convert(c)


def conj(q: GaussianRational) -> GaussianRational:
    return QQ_I(q.x, -q.y)


def is_real(q) -> bool:
    return isinstance(q, GaussianRational) and not q.y


def rational_str(q) -> str:
    """精确有理数的文本 p 或 p/q"""
    n, d = int(QQ.numer(q)), int(QQ.denom(q))
    return str(n) if d == 1 else f"{n}/{d}"


def to_complex(q: GaussianRational) -> complex:
    re = int(QQ.numer(q.x)) / int(QQ.denom(q.x))
    im = int(QQ.numer(q.y)) / int(QQ.denom(q.y))
    return complex(re, im)


class GaussianExtension(FiniteExtension):
    """
    单层代数扩张 K = Q(i)[t]/(q(t))，q 首一不可约
    在 sympy 有限扩张上补两件事：高斯有理数的转换，以及域上的除法（quo 不是多项式整除）
    """

    # 其他域按这个名字查到 from_MonogenicFiniteExtension，把常数元素转换回来
    alias = "MonogenicFiniteExtension"

    def __init__(self, modulus: PolyElement):
        self.t_modulus = modulus.monic()
        super().__init__(Poly.from_dict(dict(self.t_modulus), T_RING.symbols[0], domain=QQ_I))

    def convert(self, f, base=None):
        if isinstance(f, ExtensionElement) and f.ext == self:
            return f
        if isinstance(f, (int, GaussianRational)) or QQ.of_type(f):
            return ExtensionElement(self.ring.new(as_scalar(f)), self)
        return super().convert(f, base)

    def exquo(self, a, b):
        return a / b

    quo = exquo

    def gcd(self, a, b):
        return self.one if a or b else self.zero

    def is_positive(self, a):
        return False

    def is_nonpositive(self, a):
        return False

    def is_nonnegative(self, a):
        return True

    def element(self, p: PolyElement) -> ExtensionElement:
        """T_RING 中的多项式在 K 中的像"""
        rep = self.ring.new({monom: c for monom, c in p.iterterms()})
        return ExtensionElement(rep % self.mod, self)

    def representative(self, a: ExtensionElement) -> PolyElement:
        """次数小于 deg q 的代表元，放回 T_RING"""
        dense = a.rep.to_list()
        n = len(dense) - 1
        return T_RING.from_dict({(n - k,): c for k, c in enumerate(dense) if c})


_EXTENSIONS: Dict[Tuple, GaussianExtension] = {}


def extension_field(modulus: PolyElement) -> GaussianExtension:
    """同一个模多项式只构造一次扩张"""
    q = to_univariate(modulus).monic()
    key = tuple(q.terms())
    if key not in _EXTENSIONS:
        _EXTENSIONS[key] = GaussianExtension(q)
    return _EXTENSIONS[key]


Scalar = Union[GaussianRational, ExtensionElement]


def is_extension(a) -> bool:
    return isinstance(a, ExtensionElement)


def simplify_scalar(a):
    """常数代表元的扩张元素退化为高斯有理数"""
    if isinstance(a, ExtensionElement):
        if not a:
            return QQ_I.zero
        if a.is_ground:
            return QQ_I.convert(a.to_ground())
        return a
    if isinstance(a, int):
        return QQ_I.convert(a)
    return a


def scalar_field(a) -> Optional[GaussianExtension]:
    return a.ext if isinstance(a, ExtensionElement) else None


def common_field(values) -> Optional[GaussianExtension]:
    """一组标量所在的唯一扩张；全部在 Q(i) 中时返回 None"""
    found = None
    for a in values:
        K = scalar_field(a)
        if K is None:
            continue
        if found is None:
            found = K
        elif found != K:
            raise ExtensionTowerError(
                f"坐标分属两个不同的代数扩张: {format_poly(found.t_modulus)} 与 {format_poly(K.t_modulus)}")
    return found


def coefficient_field(values):
    """容纳一组标量的系数域：Q(i) 或它们共同的扩张"""
    K = common_field(values)
    return QQ_I if K is None else K


def conj_poly(p: PolyElement) -> PolyElement:
    return p.ring.from_dict({monom: conj(c) for monom, c in p.iterterms()})


def conjugate_scalar(a):
    """复共轭；扩张元素落到共轭模多项式定义的扩张里"""
    if isinstance(a, ExtensionElement):
        K = a.ext
        bar = extension_field(conj_poly(K.t_modulus))
        return simplify_scalar(bar.element(conj_poly(K.representative(a))))
    return conj(as_scalar(a))


def field_pow(a, n: int):
    if n >= 0:
        return a ** n
    return (QQ_I.one / a) ** (-n)


def to_univariate(p: PolyElement) -> PolyElement:
    """把至多含一个变量的多项式改写为 T_RING 中的一元多项式"""
    used = {k for monom in p.itermonoms() for k, e in enumerate(monom) if e}
    if len(used) > 1:
        raise PreconditionError("多项式含有多个变量，不是一元多项式")
    k = used.pop() if used else 0
    return T_RING.from_dict({(monom[k],): c for monom, c in p.iterterms()})


def extension_root(factor: PolyElement):
    """不可约因子的一个根：一次因子给出 Q(i) 中的根，否则给出扩张的生成元"""
    q = to_univariate(factor).monic()
    if q.degree() < 1:
        raise PreconditionError("常数多项式没有根")
    if q.degree() == 1:
        return -q.get(T_RING.zero_monom, QQ_I.zero)
    return extension_field(q).generator


def factor_roots(p: PolyElement) -> List[Tuple[object, int, int]]:
    """
    一元多项式在 Q(i) 上分解后的根
    返回 [(根, 重数, 共轭个数)]，次数大于 1 的不可约因子只给出生成元一个代表
    """
    q = to_univariate(p)
    if q.degree() < 1:
        return []
    _, factors = q.factor_list()
    roots = []
    for fac, mult in factors:
        roots.append((extension_root(fac), mult, fac.degree()))
    return roots


# ---------------------------------------------------------------------------
# 多项式基本操作
# ---------------------------------------------------------------------------

def poly_ring(names: Sequence[str]) -> PolyRing:
    names = tuple(names)
    if names == ("x", "y", "z"):
        return XYZ
    if names == ("u", "v", "w"):
        return UVW
    return PolyRing(names, QQ_I, grlex)


def var_index(R: PolyRing, name) -> int:
    if isinstance(name, int):
        return name
    if isinstance(name, PolyElement):
        return R.gens.index(name)
    names = [str(s) for s in R.symbols]
    if name not in names:
        raise PreconditionError(f"变量 {name} 不在多项式环 {names} 中")
    return names.index(name)


def total_degree(p: PolyElement):
    if not p:
        return ZERO_DEGREE
    return max(sum(monom) for monom in p.itermonoms())


def is_homogeneous(p: PolyElement) -> bool:
    return len({sum(monom) for monom in p.itermonoms()}) <= 1


def euler_defect(F: PolyElement) -> PolyElement:
    """x*F_x + y*F_y + z*F_z - d*F，齐次多项式应恒为零"""
    R = F.ring
    d = total_degree(F)
    if not F:
        return F
    acc = R.zero
    for gen in R.gens:
        acc += gen * F.diff(gen)
    return acc - F * d


def specialize(p: PolyElement, assignment: Dict[int, object]) -> PolyElement:
    """把若干变量同时代换为多项式或常数，结果仍在原环中"""
    R = p.ring
    pairs = []
    for k, value in assignment.items():
        if not isinstance(value, PolyElement):
            value = R.ground_new(as_scalar(value))
        pairs.append((R.gens[k], value))
    return p.compose(pairs)


def dehomogenize(p: PolyElement, index: int = 2) -> PolyElement:
    return specialize(p, {index: 1})


def relabel(p: PolyElement, R: PolyRing) -> PolyElement:
    """按变量名把多项式搬到另一个环（变量可以增减，被删除的变量必须不出现）"""
    return p.set_ring(R)


def rename_variables(p: PolyElement, R: PolyRing) -> PolyElement:
    """按变量位置把多项式搬到另一个同变量数的环，例如 (x,y,z) -> (u,v,w)"""
    return R.from_dict(dict(p))


def evaluate_at(p: PolyElement, values: Sequence) -> object:
    """在一组标量（高斯有理数或扩张元素）处求值"""
    cache: Dict[Tuple[int, int], object] = {}

    def power(k, e):
        key = (k, e)
        if key not in cache:
            cache[key] = values[k] ** e
        return cache[key]

    total = QQ_I.zero
    for monom, coeff in p.iterterms():
        term = coeff
        for k, e in enumerate(monom):
            if e:
                term = power(k, e) * term
        total = term + total
    return simplify_scalar(total)


def resultant(p: PolyElement, q: PolyElement, var) -> PolyElement:
    """
    关于变量 var 的结式（子结式 PRS）
    结果是其余变量的多项式，仍放在原来的环里
    """
    if not p or not q:
        raise PreconditionError("结式的输入不能为零多项式")
    R = p.ring
    k = var_index(R, var)
    dp, dq = p.degree(k), q.degree(k)
    if dp <= 0 and dq <= 0:
        raise PreconditionError(f"两个多项式都不含变量 {R.symbols[k]}")
    if dp == 0:
        return p ** dq
    if dq == 0:
        return q ** dp
    order = [R.symbols[k]] + [s for i, s in enumerate(R.symbols) if i != k]
    R2 = R.clone(symbols=order)
    res = p.set_ring(R2).resultant(q.set_ring(R2))
    if isinstance(res, PolyElement):
        return res.set_ring(R)
    return R.ground_new(res)


def sylvester_resultant(p: PolyElement, q: PolyElement, var) -> PolyElement:
    """Sylvester 行列式展开的结式，小次数时用来与子结式结果互相校验"""
    R = p.ring
    k = var_index(R, var)
    gen = R.gens[k]
    n, m = p.degree(k), q.degree(k)
    if n <= 0 or m <= 0:
        return resultant(p, q, var)
    a = [p.coeff_wrt(gen, n - j) for j in range(n + 1)]
    b = [q.coeff_wrt(gen, m - j) for j in range(m + 1)]
    size = n + m
    rows = []
    for r in range(m):
        rows.append([R.zero] * r + a + [R.zero] * (size - n - 1 - r))
    for r in range(n):
        rows.append([R.zero] * r + b + [R.zero] * (size - m - 1 - r))
    return DomainMatrix(rows, (size, size), R.to_domain()).det()


def gcd(p: PolyElement, q: PolyElement) -> PolyElement:
    """首一化的最大公因式"""
    if not p and not q:
        raise PreconditionError("gcd 的输入不能都为零")
    if not p:
        return q.monic()
    if not q:
        return p.monic()
    return p.gcd(q).monic()


def exact_quotient(g: PolyElement, f: PolyElement) -> PolyElement:
    return g.exquo(f)


def square_free_part(p: PolyElement) -> PolyElement:
    """p / gcd(p, p_x, p_y, ...)，零点集不变"""
    if not p:
        raise PreconditionError("零多项式没有无平方部分")
    g = p
    for gen in p.ring.gens:
        dp = p.diff(gen)
        if dp:
            g = gcd(g, dp)
    return exact_quotient(p, g).monic()


def divides(f: PolyElement, g: PolyElement) -> bool:
    """多元试除，余式为零即整除"""
    if not f:
        raise PreconditionError("除式不能为零多项式")
    if not g:
        return True
    return not g.rem(f)


def content_in(p: PolyElement, var) -> PolyElement:
    """把 p 看成 var 的多项式时各系数的最大公因式"""
    R = p.ring
    k = var_index(R, var)
    gen = R.gens[k]
    cont = R.zero
    for j in range(max(p.degree(k), 0) + 1):
        c = p.coeff_wrt(gen, j)
        if c:
            cont = gcd(cont, c) if cont else c.monic()
            if cont.is_ground:
                return R.one
    return cont if cont else R.one


def coprime_split(polys: Sequence[PolyElement]) -> List[PolyElement]:
    """
    gcd 级联：把一组无平方多项式拆成两两互素的因子
    每个输入都是输出中若干因子的乘积
    """
    pieces = [p.monic() for p in polys if p and not p.is_ground]
    # 每次拆分都严格降低总次数，循环必然终止
    changed = True
    while changed:
        changed = False
        for i in range(len(pieces)):
            for j in range(i + 1, len(pieces)):
                g = gcd(pieces[i], pieces[j])
                if not g.is_ground:
                    a = exact_quotient(pieces[i], g)
                    b = exact_quotient(pieces[j], g)
                    pieces = [p for k, p in enumerate(pieces) if k not in (i, j)]
                    pieces += [q for q in (g, a, b) if not q.is_ground]
                    changed = True
                    break
            if changed:
                break
    return sorted((p.monic() for p in pieces), key=lambda p: (total_degree(p), format_poly(p)))


# ---------------------------------------------------------------------------
# 三维向量（射影坐标）
# ---------------------------------------------------------------------------

def cross3(a: Sequence, b: Sequence) -> Tuple:
    return (simplify_scalar(a[1] * b[2] - a[2] * b[1]),
            simplify_scalar(a[2] * b[0] - a[0] * b[2]),
            simplify_scalar(a[0] * b[1] - a[1] * b[0]))


def dot3(a: Sequence, b: Sequence):
    return simplify_scalar(a[0] * b[0] + a[1] * b[1] + a[2] * b[2])


def _coords(p) -> Tuple:
    return tuple(getattr(p, "coords", p))


# ---------------------------------------------------------------------------
# 直线上的限制与二元型
# ---------------------------------------------------------------------------

def line_ring(K=QQ_I) -> PolyRing:
    """直线参数 s 的一元多项式环，系数域为 Q(i) 或它的单层扩张"""
    return PolyRing(("s",), K, grlex)


def linear_root(p: PolyElement):
    """一次一元多项式 c1*s + c0 的根"""
    if p.degree() != 1:
        raise PreconditionError("只能对一次多项式直接求根")
    c0 = p.get(p.ring.zero_monom, p.ring.domain.zero)
    return simplify_scalar(-c0 / p.LC)


@dataclass(frozen=True)
class BinaryForm:
    """二元型 Σ coeffs[k] * s^k * t^(degree-k)"""

    coeffs: Tuple
    degree: int

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def dehomogenized(self, extra: Sequence = ()) -> PolyElement:
        """t = 1 时关于 s 的一元多项式；extra 中的标量也要落在系数域里"""
        R = line_ring(coefficient_field(tuple(self.coeffs) + tuple(extra)))
        return R.from_dict({(k,): c for k, c in enumerate(self.coeffs) if c})


def restrict_to_line(F: PolyElement, A, B) -> BinaryForm:
    """
    F(s*A + t*B) 作为 (s, t) 的二元型
    参数 [s:t] = [1:0] 对应 A，[0:1] 对应 B
    """
    a, b = _coords(A), _coords(B)
    if not any(cross3(a, b)):
        raise PreconditionError("直线的两个定义点射影相同", reason="equal_points")
    if not is_homogeneous(F):
        raise PreconditionError("限制到直线要求齐次多项式")
    n = total_degree(F)
    R = line_ring(coefficient_field(a + b))
    s = R.gens[0]
    # 第 k 个坐标沿直线为 b_k + s*a_k
    linear = [R.ground_new(a[k]) * s + R.ground_new(b[k]) for k in range(3)]
    cache: Dict[Tuple[int, int], PolyElement] = {}

    def power(k, e):
        if (k, e) not in cache:
            cache[(k, e)] = linear[k] ** e
        return cache[(k, e)]

    total = R.zero
    for monom, coeff in F.iterterms():
        term = R.ground_new(coeff)
        for k, e in enumerate(monom):
            if e:
                term = term * power(k, e)
        total += term
    if not total:
        raise LineComponentError("曲线在该直线上恒为零，直线是曲线的分支")
    coeffs = tuple(simplify_scalar(total.get((k,), R.domain.zero)) for k in range(n + 1))
    return BinaryForm(coeffs, n)


def multiplicity_at_root(bform: BinaryForm, root: Tuple) -> int:
    """二元型在参数 [s0:t0] 处的根重数，反复做精确除法得到"""
    if bform.is_zero():
        raise PreconditionError("二元型为零")
    s0, t0 = (simplify_scalar(as_scalar(c)) for c in root)
    if not t0:
        top = max(k for k, c in enumerate(bform.coeffs) if c)
        return bform.degree - top
    r = simplify_scalar(s0 / t0)
    poly = bform.dehomogenized((r,))
    R = poly.ring
    factor = R.gens[0] - R.ground_new(r)
    count = 0
    while poly.degree() > 0:
        quo, rem = divmod(poly, factor)
        if rem:
            break
        poly = quo
        count += 1
    return count


# ---------------------------------------------------------------------------
# 文本格式
# ---------------------------------------------------------------------------

def _imag_str(im) -> str:
    if im == QQ.one:
        return "i"
    if im == -QQ.one:
        return "-i"
    return f"{rational_str(im)}*i"


def format_scalar(c) -> str:
    if isinstance(c, ExtensionElement):
        return f"[{format_poly(c.ext.representative(c))} mod {format_poly(c.ext.t_modulus)}]"
    c = as_scalar(c)
    re, im = c.x, c.y
    if not im:
        return rational_str(re)
    if not re:
        return _imag_str(im)
    sign = "+" if im > 0 else "-"
    return f"({rational_str(re)}{sign}{_imag_str(abs(im))})"


def _is_negative(c: GaussianRational) -> bool:
    return (not c.y and c.x < 0) or (not c.x and c.y < 0)


def format_poly(p: PolyElement) -> str:
    """按规范项序输出，可被 parse_poly 重新读入"""
    if not p:
        return "0"
    names = [str(s) for s in p.ring.symbols]
    parts = []
    for monom, coeff in p.terms():
        negative = _is_negative(coeff)
        mag = -coeff if negative else coeff
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, monom) if e)
        if mono:
            body = mono if mag == QQ_I.one else f"{format_scalar(mag)}*{mono}"
        else:
            body = format_scalar(mag)
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts)


# ---------------------------------------------------------------------------
# 解析器（优先级爬升）
# ---------------------------------------------------------------------------

_OPERATORS = {
    "+": (1, "left"),
    "-": (1, "left"),
    "*": (2, "left"),
    "/": (2, "left"),
    "^": (4, "right"),
}
_UNARY_PREC = 3  # 一元负号比乘方弱：-x^2 = -(x^2)


def _tokenize(text: str) -> List[Tuple[str, object, int]]:
    if not text.isascii():
        raise ParseError("只支持 ASCII 字符", 0)
    tokens = []
    idx = 0
    n = len(text)
    while idx < n:
        c = text[idx]
        if c.isspace():
            idx += 1
            continue
        if c.isdigit():
            start = idx
            while idx < n and text[idx].isdigit():
                idx += 1
            if idx < n and (text[idx].isalpha() or text[idx] == "("):
                raise ParseError("不允许隐式乘法，请写成 2*x 的形式", idx)
            tokens.append(("num", int(text[start:idx]), start))
            continue
        if c.isalpha():
            start = idx
            while idx < n and text[idx].isalnum():
                idx += 1
            tokens.append(("id", text[start:idx], start))
            continue
        if c in _OPERATORS or c in "()":
            tokens.append(("op", c, idx))
            idx += 1
            continue
        raise ParseError(f"无法识别的字符 '{c}'", idx)
    tokens.append(("end", None, n))
    return tokens


class _PolyParser:
    def __init__(self, text: str, R: PolyRing):
        self.R = R
        self.names = [str(s) for s in R.symbols]
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> PolyElement:
        result = self.expression(0)
        kind, value, where = self.peek()
        if kind != "end":
            raise ParseError(f"多余的记号 '{value}'，不允许隐式乘法", where)
        return result

    def atom(self) -> PolyElement:
        kind, value, where = self.advance()
        if kind == "end":
            raise ParseError("输入意外结束", where)
        if kind == "num":
            return self.R(value)
        if kind == "id":
            if value == "i":
                return self.R.ground_new(QQ_I(0, 1))
            if value in self.names:
                return self.R.gens[self.names.index(value)]
            raise ParseError(f"未知变量 '{value}'", where)
        if value in ("-", "+"):
            operand = self.expression(_UNARY_PREC)
            return -operand if value == "-" else operand
        if value == "(":
            inner = self.expression(0)
            kind2, value2, where2 = self.advance()
            if value2 != ")":
                raise ParseError("缺少右括号", where2)
            return inner
        raise ParseError(f"意外的记号 '{value}'", where)

    def expression(self, min_prec: int) -> PolyElement:
        lhs = self.atom()
        while True:
            kind, op, where = self.peek()
            if kind != "op" or op not in _OPERATORS:
                return lhs
            prec, assoc = _OPERATORS[op]
            if prec < min_prec:
                return lhs
            self.advance()
            rhs = self.expression(prec + 1 if assoc == "left" else prec)
            lhs = self.apply(op, lhs, rhs, where)

    def apply(self, op: str, lhs: PolyElement, rhs: PolyElement, where: int) -> PolyElement:
        if op == "+":
            return lhs + rhs
        if op == "-":
            return lhs - rhs
        if op == "*":
            return lhs * rhs
        if op == "/":
            if not rhs.is_ground:
                raise ParseError("只允许除以常数", where)
            if not rhs:
                raise ParseError("系数中出现除以零", where)
            return lhs.quo_ground(rhs.LC)
        # 乘方
        if not rhs.is_ground:
            raise ParseError("指数必须是非负整数", where)
        e = rhs.LC
        if e.y or QQ.denom(e.x) != 1 or e.x < 0:
            raise ParseError("指数必须是非负整数", where)
        return lhs ** int(QQ.numer(e.x))


def parse_poly(text: str, vars: Sequence[str] = ("x", "y", "z")) -> PolyElement:
    """按文法解析多项式文本，系数为高斯有理数"""
    R = poly_ring(vars)
    return _PolyParser(text, R).parse()


def parse_scalar(text: str) -> GaussianRational:
    p = parse_poly(text)
    if not p.is_ground:
        raise ParseError(f"'{text}' 不是常数", 0)
    return p.LC if p else QQ_I.zero




def bezout_pair(q: int, m: int) -> Tuple[int, int]:
    """返回 (u, v) 使 u*q - v*m = 1，要求 q, m 互素"""
    if q == 1:
        return 1, 0
    a, b, g = igcdex(q, m)
    if g != 1:
        raise PreconditionError(f"{q} 与 {m} 不互素")
    u, v = int(a), int(-b)
    # 调整到 u, v 都非负，代换中只出现非负幂
    while u < 0 or v < 0:
        u, v = u + m, v + q
    return u, v
