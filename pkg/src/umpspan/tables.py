"""Published reference values for uMPS(2,2,d), transcribed for golden checks.

SPAN_DIMS[d] = (D_0..D_{floor(d/2)}, total span dimension, ambient dimension)
IDEAL_K2[d] = ideal degree-2 dims D_3..D_d
IDEAL_K3[d] = ideal degree-3 dims D_3..D_{floor(3d/2)}
"""

SPAN_DIMS = {
    8: ([1, 1, 4, 5, 7], 29, 30),
    9: ([1, 1, 4, 6, 8], 40, 46),
    10: ([1, 1, 5, 7, 11, 11], 61, 78),
    11: ([1, 1, 5, 8, 12, 14], 82, 126),
    12: ([1, 1, 6, 9, 15, 17, 20], 118, 224),
    13: ([1, 1, 6, 10, 16, 20, 23], 154, 380),
    14: ([1, 1, 7, 11, 19, 23, 29, 29], 211, 687),
    15: ([1, 1, 7, 12, 20, 26, 32, 35], 268, 1224),
    16: ([1, 1, 8, 13, 23, 29, 38, 41, 45], 353, 2250),
    17: ([1, 1, 8, 14, 24, 32, 41, 47, 51], 438, 4112),
    18: ([1, 1, 9, 15, 27, 35, 47, 53, 61, 61], 559, 7685),
    19: ([1, 1, 9, 16, 28, 38, 50, 59, 67, 71], 680, 14310),
    20: ([1, 1, 10, 17, 31, 41, 56, 65, 77, 81, 86], 846, 27012),
}

IDEAL_K2 = {
    6: [0, 1, 1, 2],
    7: [0, 1, 3, 6, 7],
    8: [0, 5, 10, 25, 32, 42],
    9: [1, 7, 21, 48, 79, 110, 119],
    10: [1, 14, 38, 100, 176, 290, 360, 408],
}

IDEAL_K3 = {
    6: [0, 1, 2, 8, 11, 17, 17],
    7: [0, 1, 4, 15, 29, 49, 67, 77],
    8: [0, 5, 14, 51, 101, 198, 292, 414, 478, 532],
    9: [1, 7, 26, 83, 191, 388, 671, 1039, 1431, 1784, 1983],
}

IDEAL_TABLES = {2: IDEAL_K2, 3: IDEAL_K3}

# the ideal tables start at weight 3
IDEAL_FIRST_WEIGHT = 3


def span_row_length(d: int) -> int:
    return d // 2 + 1


def ideal_last_weight(d: int, k: int) -> int:
    return (k * d) // 2
