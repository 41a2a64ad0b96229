"""
验证目录：镜面曲线（均为 Q(i) 上不可约、次数 ≥ 2）
每条曲线附带若干个 C_0 上的精确点，用于检验坏光源曲线的次数上界
"""
# quetelet_dandelin: 是否做"正交曲线的渐屈线"交叉验证（三次曲线的正交曲线次数太高，只在二次曲线上做）
CATALOG = [
    {
        "name": "circle",
        "curve": "x^2+y^2-z^2",
        "notes": "单位圆，I、J 都在曲线上",
        "expected": {"degree": 6, "class": 4},
        "quetelet_dandelin": True,
        "points": [
            "[1:0:1]", "[0:1:1]", "[-1:0:1]", "[0:-1:1]", "[3:4:5]",
            "[4:3:5]", "[-3:4:5]", "[3:-4:5]", "[5:12:13]", "[8:15:17]",
        ],
    },
    {
        "name": "ellipse",
        "curve": "x^2+2*y^2-z^2",
        "notes": "椭圆，与无穷远直线横截相交于两个非循环点",
        "expected": {"degree": 6, "class": 6},
        "quetelet_dandelin": True,
        "points": [
            "[1:0:1]", "[-1:0:1]", "[1:2:3]", "[1:-2:3]", "[-1:2:3]",
            "[-1:-2:3]", "[7:4:9]", "[7:-4:9]", "[-7:4:9]", "[-17:6:19]",
        ],
    },
    {
        "name": "parabola",
        "curve": "y*z-x^2",
        "notes": "抛物线，与无穷远直线相切于 [0:1:0]",
        "expected": {"degree": 6, "class": 5},
        "quetelet_dandelin": True,
        # [t:t^2:1]
        "points": [
            "[0:0:1]", "[1:1:1]", "[-1:1:1]", "[2:4:1]", "[-2:4:1]",
            "[3:9:1]", "[-3:9:1]", "[1/2:1/4:1]", "[-1/2:1/4:1]", "[i:-1:1]",
        ],
    },
    {
        "name": "cuspidal_cubic",
        "curve": "y^2*z-x^3",
        "notes": "尖点三次曲线，尖点 [0:0:1]，拐点 [0:1:0]",
        "expected": {"degree": 9, "class": 7},
        "quetelet_dandelin": False,
        # [t^2:t^3:1]
        "points": [
            "[1:1:1]", "[1:-1:1]", "[4:8:1]", "[4:-8:1]", "[9:27:1]",
            "[9:-27:1]", "[1/4:1/8:1]", "[1/4:-1/8:1]", "[1/9:1/27:1]", "[-1:-i:1]",
        ],
    },
    {
        "name": "nodal_cubic",
        "curve": "y^2*z-x^2*z-x^3",
        "notes": "结点三次曲线，结点 [0:0:1]，三个光滑拐点；期望值由两条路线互相印证",
        "expected": {"degree": 11, "class": 9},
        "quetelet_dandelin": False,
        "points": [
            "[-1:0:1]", "[3:6:1]", "[3:-6:1]", "[8:24:1]", "[8:-24:1]",
            "[-6:-3:8]", "[-6:3:8]", "[-2:-2*i:1]", "[-24:-8:27]", "[10:15:8]",
        ],
    },
]

CATALOG_NAMES = [entry["name"] for entry in CATALOG]

# 测试模式只跑二次曲线
TEST_ENTRIES = ["circle", "parabola"]
