"""
异常定义
"""


class PhyloError(Exception):
    """本项目所有错误的基类"""


class PhnParseError(PhyloError):
    """`.phn` 文本语法错误，带行列号"""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class NetworkValidationError(PhyloError):
    """图不满足有根近二叉系统发生网络的定义"""

    def __init__(self, report, message: str = "network validation failed"):
        rules = ", ".join(sorted(set(report.rules())))
        super().__init__(f"{message}: {rules}")
        self.report = report


class VertexSurgeryError(PhyloError):
    """删除根、叶或未知顶点"""


class NotTreeBasedError(PhyloError):
    """存在 W-fence，无法构造细分树"""

    def __init__(self, n_w: int):
        super().__init__(f"network has {n_w} W-fence(s); it is not tree-based")
        self.n_w = n_w


class ResolutionError(PhyloError):
    """消解失败：不是共享顶点，或 n_m、n_w 没有各减 1，或剩余图不是合法网络"""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class FastPathInapplicableError(PhyloError):
    """不存在 W_N 饱和的 M-W 匹配"""

    def __init__(self, matching):
        super().__init__(
            f"no W-saturated M-W matching: maximum matching has "
            f"{matching.size} of {matching.n_w} W-fences"
        )
        self.matching = matching


class GenerationError(PhyloError):
    """随机生成参数无法实现"""


class TrailShapeError(PhyloError, ValueError):
    """边序列不是交替的 zig-zag 链"""
