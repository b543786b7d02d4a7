"""Reference optima for the exponent program, used by --verify and tests.

These are the published reference values the optimizer is expected to
reproduce: the exponent grid over (D, K), the high-precision K=1 series
used for the advantage curve, and the K=1 parameter blocks (inner
variables and level fractions) that certify each K=1 optimum.
"""

# Exponent T_D of the layered search, by (D, K).
TABLE_T: dict[tuple[int, int], float] = {
    (1, 1): 1.86793, (2, 1): 2.76625, (3, 1): 3.68995, (4, 1): 4.63206, (5, 1): 5.58735, (6, 1): 6.55223,
    (1, 2): 1.82562, (2, 2): 2.67843, (3, 2): 3.55933, (4, 2): 4.46334, (5, 2): 5.38554, (6, 2): 6.32193,
    (1, 3): 1.81819, (2, 3): 2.66198, (3, 3): 3.53322, (4, 3): 4.42759, (5, 3): 5.34059, (6, 3): 6.26840,
    (1, 4): 1.81707, (2, 4): 2.65939, (3, 4): 3.52893, (4, 4): 4.42148, (5, 4): 5.33263, (6, 4): 6.25862,
    (1, 5): 1.81692, (2, 5): 2.65908, (3, 5): 3.52836, (4, 5): 4.42064, (5, 5): 5.33149, (6, 5): 6.25720,
}

# Full-precision K=1 exponents for D = 1..18 (advantage curve data).
FIGURE_T: dict[int, float] = {
    1: 1.8679291102114184,
    2: 2.7662504942190176,
    3: 3.6899390889963155,
    4: 4.632054318702819,
    5: 5.5873596338697835,
    6: 6.55222537443972,
    7: 7.524152471011434,
    8: 8.501400896330647,
    9: 9.482736621759516,
    10: 10.467266858165571,
    11: 11.454333012714129,
    12: 12.443440344113888,
    13: 13.43421095829736,
    14: 14.426351815325729,
    15: 15.419632547557956,
    16: 16.41386980382098,
    17: 17.408916012469916,
    18: 18.404651188768383,
}

# K=1 optimal parameter blocks: exponents T_1..T_D, the precalculation
# variable x, the two search variables (x_{1,1}, x_{1,2}), and the level
# fractions alpha_{1,1..D}.
K1_PARAMS: dict[int, dict] = {
    1: {
        "T": [1.86793],
        "x": 0.464808,
        "xs": (6.0606, 0.104715),
        "alpha": [0.317317],
    },
    2: {
        "T": [1.87788, 2.76626],
        "x": 0.595073,
        "xs": (5.74769, 0.12725),
        "alpha": [0.314447, 0.337219],
    },
    3: {
        "T": [1.89454, 2.77944, 3.68995],
        "x": 0.684299,
        "xs": (5.41613, 0.146775),
        "alpha": [0.310059, 0.336865, 0.351627],
    },
    4: {
        "T": [1.91039, 2.80346, 3.7035, 4.63207],
        "x": 0.747046,
        "xs": (5.11625, 0.163892),
        "alpha": [0.306472, 0.335557, 0.351929, 0.362866],
    },
    5: {
        "T": [1.92386, 2.828, 3.72975, 4.64486, 5.58737],
        "x": 0.792588,
        "xs": (4.8582, 0.178964),
        "alpha": [0.304026, 0.334429, 0.351624, 0.36331, 0.371992],
    },
    6: {
        "T": [1.93495, 2.85009, 3.75806, 4.6709, 5.600, 6.55224],
        "x": 0.826544,
        "xs": (4.63595, 0.192435),
        "alpha": [0.302631, 0.333786, 0.351339, 0.363364, 0.372425, 0.379599],
    },
}
