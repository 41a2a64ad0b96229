"""
异常定义
每个异常带有稳定的 code，命令行诊断行会输出它
"""
from typing import Optional


class CausticError(Exception):
    """所有计算错误的基类"""

    code = "error"

    def __init__(self, message: str = ""):
        super().__init__(message)
        self.message = message

    def diagnostic(self) -> str:
        """一行可机读的诊断信息"""
        text = " ".join(str(self.message).split())
        return f"error={self.code} reason={text}"


class ParseError(CausticError):
    """多项式或点的文本无法解析"""

    code = "parse"

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message}（位置 {position}）")
        self.position = position


class PreconditionError(CausticError):
    """违反了操作的前置条件"""

    code = "precondition"

    def __init__(self, message: str, reason: Optional[str] = None):
        super().__init__(message)
        self.reason = reason or self.code


class SingularPointError(PreconditionError):
    code = "singular_point"


class IsotropicMirrorError(PreconditionError):
    code = "isotropic_mirror"


class EqualArgumentsError(PreconditionError):
    code = "equal_arguments"


class LineComponentError(PreconditionError):
    """直线是曲线的分支，无法继续"""

    code = "line_component"


class DegenerateError(CausticError):
    code = "degenerate"


class DegenerateImageError(DegenerateError):
    """有理映射在曲线上为常值，像是一个点"""

    code = "degenerate_image"

    def __init__(self, message: str, point=None):
        super().__init__(message)
        self.point = point


class DegenerateCausticError(DegenerateImageError):
    """焦散退化为一个点"""

    code = "degenerate_caustic"


class ExtensionTowerError(CausticError):
    """需要第二层代数扩张"""

    code = "extension_tower"


class TruncationError(CausticError):
    """Puiseux 迭代预算耗尽"""

    code = "truncation"


class ChartFailureError(CausticError):
    """多次随机坐标卡消元仍然失败"""

    code = "chart_failure"


class InstabilityError(CausticError):
    """数值计数不稳定或求根不收敛"""

    code = "instability"

    def __init__(self, message: str, tally: Optional[dict] = None):
        super().__init__(message)
        self.tally = tally or {}


class GenericSourceError(CausticError):
    """在抽取预算内找不到一般位置的光源"""

    code = "generic_source"
