"""Reference values transcribed verbatim from the reference tables.

Entries are kept exactly as printed, typos included; ``KNOWN_TYPOS`` lists the
cells that are known to be misprinted so that comparisons can flag them
instead of silently matching or silently failing.
"""

# m -> [(n, k), ...] in printed order
PRINTED_K_GRID = {
    1: [
        (12, 5), (16, 6), (20, 7), (24, 8), (28, 9), (32, 11),
        (34, 11), (36, 12), (38, 12), (42, 13), (46, 14), (50, 15),
        (54, 16), (58, 17), (62, 19), (64, 19), (66, 20), (68, 20),
        (70, 21), (72, 21), (74, 22), (76, 22), (80, 23), (84, 24),
        (88, 25), (92, 26), (96, 27), (100, 28), (128, 36), (250, 66),
        (500, 129), (600, 155), (1000, 255), (5000, 1256), (10000, 2507), (40000, 10008),
    ],
    2: [
        (16, 7), (18, 8), (20, 9), (22, 9), (26, 10), (30, 11),
        (32, 12), (34, 13), (36, 13), (40, 14), (44, 15), (46, 16),
        (48, 17), (50, 17), (54, 18), (58, 19), (62, 20), (64, 21),
        (66, 22), (68, 22), (70, 23), (72, 23), (76, 24), (80, 25),
        (84, 26), (88, 27), (90, 28), (92, 29), (94, 29), (96, 30),
        (98, 30), (100, 31), (250, 66), (500, 133), (1000, 259), (10000, 2512),
    ],
    3: [
        (20, 9), (22, 10), (26, 11), (28, 12), (30, 13), (32, 13),
        (36, 14), (38, 15), (42, 16), (44, 17), (46, 18), (48, 18),
        (52, 19), (56, 20), (58, 21), (60, 22), (62, 22), (66, 23),
        (70, 24), (72, 25), (74, 26), (76, 26), (78, 27), (80, 27),
        (84, 28), (88, 29), (92, 30), (94, 31), (96, 32), (98, 32),
        (100, 33), (198, 59), (250, 72), (500, 136), (1000, 263), (10000, 2518),
    ],
    4: [
        (26, 12), (28, 13), (30, 14), (32, 14), (34, 15), (36, 16),
        (38, 16), (42, 17), (44, 18), (48, 19), (50, 20), (52, 21),
        (54, 21), (58, 22), (60, 23), (62, 24), (64, 24), (68, 25),
        (70, 26), (72, 27), (74, 27), (76, 28), (82, 29), (84, 30),
        (86, 31), (88, 31), (92, 32), (96, 33), (100, 34), (122, 41),
        (148, 48), (200, 61), (250, 75), (500, 139), (1000, 266), (10000, 2523),
    ],
    5: [
        (30, 14), (32, 15), (34, 16), (36, 16), (38, 17), (40, 18),
        (42, 18), (44, 19), (46, 20), (48, 20), (50, 21), (52, 22),
        (54, 22), (56, 23), (58, 24), (60, 24), (62, 25), (64, 25),
        (66, 26), (70, 27), (72, 28), (74, 28), (76, 29), (80, 30),
        (84, 31), (86, 32), (88, 33), (90, 33), (94, 34), (96, 35),
        (98, 36), (100, 36), (250, 77), (500, 142), (1000, 269), (10000, 2523),
    ],
    6: [
        (34, 16), (40, 19), (42, 19), (46, 21), (48, 21), (52, 23),
        (54, 23), (58, 25), (60, 25), (64, 27), (66, 27), (70, 28),
        (76, 30), (80, 32), (82, 32), (86, 33), (90, 35), (100, 38),
    ],
    7: [
        (38, 18), (44, 21), (46, 21), (52, 23), (58, 26), (60, 26),
        (64, 28), (66, 28), (70, 30), (72, 30), (76, 31), (82, 33),
        (86, 35), (88, 35), (92, 36), (98, 38), (100, 39), (102, 40),
    ],
    8: [
        (44, 21), (50, 23), (56, 26), (58, 26), (64, 28), (70, 30),
        (76, 32), (82, 34), (88, 36), (92, 38), (94, 38), (98, 40),
        (100, 40), (200, 69), (248, 83), (250, 83), (500, 150), (1000, 279),
    ],
    9: [
        (48, 23), (54, 26), (56, 26), (62, 28), (68, 31), (70, 31),
        (76, 33), (82, 35), (88, 37), (94, 39), (98, 41), (100, 41),
        (104, 43), (150, 57), (250, 85), (252, 86), (500, 152), (100, 282),
    ],
    10: [
        (52, 25), (60, 28), (66, 31), (68, 31), (74, 33), (80, 36),
        (82, 36), (86, 38), (88, 38), (94, 40), (100, 42), (148, 57),
        (152, 59), (200, 73), (250, 87), (300, 101), (500, 154), (1000, 284),
    ],
    100: [
        (428, 213), (500, 245), (600, 287), (1000, 429), (2000, 733), (3000, 1013),
        (4000, 1285), (5000, 1551), (6000, 1814), (7000, 2076), (8000, 2336), (10000, 2852),
        (20000, 5402), (30000, 7932), (40000, 10452), (50000, 12968),
    ],
}

# m -> smallest even n whose construction reaches 2^(n-1) - 2^(n/2-1) - 2^(n/2-2)
PRINTED_MIN_N = {
    1: 12, 2: 16, 3: 20, 4: 12, 5: 30, 6: 34, 7: 38, 8: 44,
    9: 48, 10: 52, 11: 56, 12: 60, 13: 64, 14: 70, 15: 74, 16: 78,
    17: 82, 18: 86, 19: 90, 20: 94, 21: 100, 22: 104, 23: 108, 24: 112,
    25: 116, 26: 120, 27: 122, 28: 128, 29: 134, 30: 138, 31: 142, 32: 144,
    33: 150, 34: 154, 35: 158, 36: 162, 37: 166, 38: 170, 39: 176, 40: 180,
    41: 184, 42: 188, 43: 192, 44: 196, 45: 200, 46: 204, 47: 208, 48: 212,
    49: 216, 50: 222, 51: 226, 52: 230, 53: 234, 54: 238, 55: 242, 56: 246,
    57: 250, 58: 254, 59: 258, 60: 262, 61: 266, 62: 270, 63: 276, 64: 280,
    65: 284, 66: 288, 67: 292, 68: 296, 69: 300, 70: 304, 71: 308, 72: 312,
    73: 316, 74: 320, 75: 324, 76: 326, 77: 334, 78: 338, 79: 342, 80: 346,
    81: 350, 82: 354, 83: 358, 84: 362, 85: 366, 86: 370, 87: 374, 88: 378,
    89: 382, 90: 386, 91: 390, 92: 396, 93: 400, 94: 404, 95: 408, 96: 412,
    97: 416, 98: 420, 99: 424, 100: 428,
}

# (n, m, exponents) with N_f = 2^e0 - 2^e1 - 2^e2
PRINTED_NL_TABLE = [
    (24, 1, (23, 11, 7)), (28, 1, (27, 13, 8)), (54, 1, (53, 26, 15)),
    (58, 1, (58, 28, 16)), (30, 2, (29, 14, 10)), (44, 2, (43, 21, 14)),
    (62, 2, (61, 30, 19)), (88, 2, (87, 43, 26)), (20, 3, (19, 9, 8)),
    (36, 3, (35, 17, 13)), (62, 3, (61, 30, 21)), (92, 3, (91, 45, 29)),
    (42, 5, (41, 20, 17)), (74, 5, (73, 36, 27)), (52, 7, (51, 25, 22)),
    (70, 8, (69, 34, 29)), (62, 9, (61, 30, 27)), (74, 10, (73, 36, 32)),
]

# (n, m, d, exponents) with N_f = 2^e0 - sum(2^e for e in exponents[1:])
PRINTED_PROFILES = [
    (32, 1, 26, (31, 15, 9, 7, 6)), (36, 1, 27, (35, 17, 10, 9)),
    (62, 1, 53, (61, 30, 17, 10, 9)), (66, 1, 55, (65, 32, 18, 16, 11)),
    (70, 1, 52, (69, 34, 19, 18)), (74, 1, 55, (73, 36, 20, 19)),
    (20, 2, 15, (19, 9, 7, 6)), (34, 2, 24, (33, 16, 11, 10)),
    (48, 2, 34, (47, 23, 15, 14)), (66, 2, 47, (65, 32, 20, 19)),
    (70, 2, 50, (69, 34, 21, 20)), (92, 2, 67, (91, 45, 27, 25)),
    (96, 2, 69, (95, 47, 28, 27)), (100, 2, 72, (99, 49, 29, 28)),
    (30, 3, 20, (29, 14, 11, 10)), (46, 3, 33, (45, 22, 16, 13)),
    (60, 3, 41, (59, 29, 20, 19)), (74, 3, 52, (73, 36, 24, 22)),
    (78, 3, 54, (77, 38, 25, 24)), (96, 3, 67, (95, 47, 30, 29)),
    (30, 4, 19, (29, 14, 12, 11)), (36, 4, 24, (35, 17, 14, 12)),
    (52, 4, 34, (51, 25, 19, 18)), (62, 4, 41, (61, 30, 22, 21)),
    (72, 4, 51, (71, 35, 25, 22, 21)), (86, 4, 59, (85, 42, 29, 27)),
    (40, 6, 25, (39, 19, 17, 15)), (46, 6, 28, (45, 22, 19, 18)),
    (52, 6, 32, (51, 25, 21, 20)), (58, 6, 36, (57, 28, 23, 22)),
    (44, 7, 26, (43, 21, 19, 18)), (58, 7, 38, (57, 28, 24, 22, 20)),
    (70, 7, 44, (69, 34, 28, 26)), (56, 8, 33, (55, 27, 24, 23)),
    (54, 9, 31, (53, 26, 24, 23)), (68, 9, 40, (67, 33, 29, 28)),
    (66, 10, 38, (65, 32, 29, 28)), (86, 10, 51, (85, 42, 36, 35)),
]

# m -> minimal even n0 such that the direct sum with a 15- or 9-variable
# function beats 2^(n-1) - 2^((n-1)/2)
PRINTED_DIRECT_SUM_N0 = {1: 20, 2: 26, 3: 32, 4: 38, 5: 42, 6: 48, 7: 52, 8: 58, 9: 62, 10: 68}

# Misprints confirmed by recomputation. Keys identify the printed cell.
KNOWN_TYPOS = {
    ("nl_table", 58, 1): "leading exponent printed as 2^58, must be 2^57",
    ("min_n", 4): "printed n=12, inconsistent with the k grid (m=4 starts at n=26)",
    ("k_grid", 9, 100, 282): "n printed as 100, the cell belongs to n=1000",
}
