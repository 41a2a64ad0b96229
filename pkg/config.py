"""
配置文件
"""
import os

# 基础配置
BASE_DIR = os.path.dirname(os.path.abspath(__file__))
LOG_DIR = os.path.join(BASE_DIR, "logs")
DATA_DIR = os.path.join(BASE_DIR, "data")

# 创建必要的目录
for directory in [LOG_DIR, DATA_DIR]:
    os.makedirs(directory, exist_ok=True)

# 数值容差
COLLISION_TOL = 1e-8  # 双有理性抽样的碰撞阈值（归一化坐标）
LINE_TOL = 1e-10  # 碰撞确认：两条反射线一致的阈值
SAMPLE_RESIDUAL = 1e-10  # 采样点 |F| 的接受阈值
BASE_POINT_TOL = 1e-10  # 判定基点：映射各分量同时小于该值
DK_TOL = 1e-12  # 同时迭代求根的残差目标
DK_MAX_ITER = 200  # 同时迭代求根的最大迭代次数
IMAG_TOL = 1e-8  # 实迹中判定像点为实点的虚部阈值
GRADIENT_TOL = 1e-6  # 采样点相对梯度下限，低于它视为靠近奇点
NUMERIC_MATCH_TOL = 1e-6  # 数值根与精确多项式零点的匹配阈值

# 重试与随机抽取
MAX_RETRIES = 3  # 每个消元阶段的最大重试次数
CHART_HEIGHT = 5  # 随机坐标变换矩阵元素的高度（不超过 100）
SOURCE_DRAWS = 100  # 挑选一般光源的最多抽取次数
SOURCE_HEIGHT = 50  # 光源坐标的高度上限
SOURCES_PER_ENTRY = 3  # 每条目录曲线验证的光源个数
FORMULA_RETRIES = 2  # 公式不符时额外尝试的光源个数
COLLISION_REDRAWS = 5  # 碰撞在多少个独立光源下持续存在才判定失败

# 规模参数
TRUNCATION_FACTOR = 4  # Puiseux 迭代预算为 TRUNCATION_FACTOR * d^2
BIRATIONALITY_SAMPLES = 200  # 双有理性抽样点数
NUMERIC_TRIALS = 5  # 数值次数判定的随机直线条数
BAD_SOURCE_POINTS = 10  # 每条曲线检验坏光源曲线的存储点个数
SAMPLE_ATTEMPT_FACTOR = 10  # 采样最多尝试 n * SAMPLE_ATTEMPT_FACTOR 次
TRACE_RESOLUTION = 400  # 实迹默认采样分辨率

# 并发配置
MAX_WORKERS = min(4, os.cpu_count() or 1)  # 目录并发进程数

# 默认随机种子
DEFAULT_SEED = 7

# 消元路线
RESULTANT_BEZOUT_LIMIT = 12  # d * deg(M) 不超过该值时走结式路线，否则走模 F 正规形的核路线
