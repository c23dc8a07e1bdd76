"""Reference period matrices Y (Π = iY) used as acceptance fixtures."""
import math

WELL_SEPARATED = [
    (2, (math.sqrt(2),), [[1.42594, -0.409423], [-0.409423, 0.818846]]),
    (2, (2.0,), [[1.25352, -0.497668], [-0.497668, 0.995336]]),
    (
        3,
        (2.0, 3.0),
        [
            [1.39658, -0.687212, 0.371981],
            [-0.687212, 1.2467, -0.495331],
            [0.371981, -0.495331, 0.994534],
        ],
    ),
    (
        4,
        (2.0, 3.0, 4.0),
        [
            [1.49592, -0.805976, 0.529694, -0.309252],
            [-0.805976, 1.3887, -0.683972, 0.370541],
            [0.529694, -0.683972, 1.24537, -0.494738],
            [-0.309252, 0.370541, -0.494738, 0.99427],
        ],
    ),
]

# Matched to a relative tolerance rather than 5e-5 absolute.
WIDE = (
    3,
    (2.0, 100.0),
    [
        [1.0086, -0.915883, 0.869095],
        [-0.915883, 1.82283, -1.28051],
        [0.869095, -1.28051, 1.99277],
    ],
)

CLUSTERED = [
    (2, (1.0001,), [[3.87984, -0.131086], [-0.131086, 0.262171]]),
    (
        3,
        (1.00001, 1.0001),
        [
            [1.61889, -0.996731, 0.0052455],
            [-0.996731, 1.00002, -0.00525414],
            [0.00524596, -0.00525459, 1.59888],
        ],
    ),
    (
        4,
        (1.00001, 1.0001, 1.001),
        [
            [3.19594, -2.99265, 0.161826, -0.141682],
            [-2.99265, 4.42015, -0.161842, 0.141696],
            [0.161828, -0.161844, 0.323658, -0.283311],
            [-0.141685, 0.141699, -0.283311, 0.861195],
        ],
    ),
    (
        4,
        (1.001, 1.01, 100.0),
        [
            [1.00423, -0.996561, 0.912285, -0.9105],
            [-0.996562, 2.58767, -0.957418, 0.954779],
            [0.912286, -0.957419, 1.82628, -1.79174],
            [-0.9105, 0.95478, -1.79174, 2.38377],
        ],
    ),
    (
        4,
        (1.001, 1000.0, 1e7),
        [
            [1.00004, -0.99103, 0.990938, -0.990902],
            [-0.991031, 5.08919, -2.10865, 1.95408],
            [0.990937, -2.10865, 2.29095, -1.9742],
            [-0.990902, 1.95408, -1.9742, 1.98199],
        ],
    ),
]

# Well-separated parameter sets (all gaps ≥ 0.1) across genera 2…6.
GRID = [
    (2, (1.1,)),
    (2, (1.5,)),
    (2, (2.0,)),
    (2, (4.0,)),
    (2, (10.0,)),
    (3, (1.5, 2.0)),
    (3, (2.0, 3.0)),
    (3, (1.2, 5.0)),
    (3, (3.0, 7.5)),
    (4, (2.0, 3.0, 4.0)),
    (4, (1.3, 1.6, 2.2)),
    (4, (1.5, 4.0, 9.0)),
    (4, (1.1, 1.2, 1.3)),
    (5, (1.5, 2.0, 2.5, 3.0)),
    (5, (2.0, 3.0, 5.0, 8.0)),
    (5, (1.2, 1.4, 1.8, 2.6)),
    (6, (1.5, 2.0, 2.5, 3.0, 3.5)),
    (6, (2.0, 3.0, 4.0, 5.0, 6.0)),
    (6, (1.2, 1.5, 2.0, 3.0, 5.0)),
    (6, (1.1, 1.3, 1.6, 2.0, 2.5)),
]
