"""Published summary tables used as aggregation-arithmetic fixtures.

These numbers are reproduced from the result tables of the original
study this methodology comes from. The program corpus behind them
(datasets 1-5: student-written C programs; dataset 6: programs by
experienced authors) was never published, so the per-dataset similarity
values below CANNOT be recomputed from anything in this repository.
They are used strictly to regression-test the aggregation arithmetic:
cross-dataset averages, the totally-different baseline, and the
normalized indices derived from them.

Each table lists one row per 5x5 dataset with the group means for the
programmer-specific grouping, the application-specific grouping, and
three totally-different groupings, plus the printed Average and
Normalized rows and the 3x3 dataset-6 row (whose totally-different
value is already aggregated over its two groupings).
"""

from dataclasses import dataclass

from asmsim.metrics import MetricKind


@dataclass(frozen=True)
class DatasetSixRow:
    programmer: float
    application: float
    td: float
    norm_programmer: float
    norm_application: float


@dataclass(frozen=True)
class ReferenceTable:
    metric: MetricKind
    decimals: int  # precision the table prints averages at
    programmer: tuple[float, ...]
    application: tuple[float, ...]
    td: tuple[tuple[float, ...], ...]  # three grouping columns
    avg_programmer: float
    avg_application: float
    avg_td: float
    norm_programmer: float
    norm_application: float
    dataset6: DatasetSixRow


EXISTENCE = ReferenceTable(
    metric=MetricKind.JACCARD,
    decimals=4,
    programmer=(0.4453, 0.5075, 0.4594, 0.4554, 0.4971),
    application=(0.6697, 0.6699, 0.6829, 0.6816, 0.6623),
    td=(
        (0.4557, 0.5057, 0.4613, 0.4617, 0.4885),
        (0.4465, 0.5003, 0.4566, 0.4493, 0.4889),
        (0.4500, 0.5055, 0.4655, 0.4638, 0.4815),
    ),
    avg_programmer=0.4729,
    avg_application=0.6733,
    avg_td=0.4720,
    norm_programmer=1.002,
    norm_application=1.426,
    dataset6=DatasetSixRow(0.4879, 0.6592, 0.4932, 0.989, 1.337),
)

FREQUENCY = ReferenceTable(
    metric=MetricKind.COSINE,
    decimals=3,
    programmer=(0.797, 0.776, 0.778, 0.812, 0.773),
    application=(0.87, 0.827, 0.879, 0.916, 0.852),
    td=(
        (0.798, 0.755, 0.776, 0.815, 0.785),
        (0.784, 0.755, 0.776, 0.806, 0.793),
        (0.791, 0.764, 0.77, 0.81, 0.777),
    ),
    avg_programmer=0.787,
    avg_application=0.869,
    avg_td=0.784,
    norm_programmer=1.005,
    norm_application=1.109,
    dataset6=DatasetSixRow(0.691, 0.764, 0.648, 1.066, 1.179),
)

PATTERNS_TWO = ReferenceTable(
    metric=MetricKind.EUCLIDEAN2,
    decimals=2,
    programmer=(7.95, 8.19, 7.89, 8.23, 8.22),
    application=(6.43, 6.8, 6.03, 6.27, 6.65),
    td=(
        (8.02, 8.24, 7.89, 8.2, 8.31),
        (8.09, 8.3, 7.96, 8.27, 8.2),
        (8.07, 8.22, 7.97, 8.19, 8.3),
    ),
    avg_programmer=8.10,
    avg_application=6.44,
    avg_td=8.15,
    norm_programmer=1.007,
    norm_application=1.266,
    dataset6=DatasetSixRow(9.39, 8.53, 9.44, 1.005, 1.107),
)

PATTERNS_THREE = ReferenceTable(
    metric=MetricKind.EUCLIDEAN3,
    decimals=2,
    programmer=(8.59, 9.2, 8.8, 9.26, 9.25),
    application=(7.32, 8.1, 7.34, 7.54, 8.04),
    td=(
        (8.67, 9.27, 8.81, 9.28, 9.36),
        (8.73, 9.28, 8.87, 9.29, 9.31),
        (8.68, 9.24, 8.85, 9.3, 9.39),
    ),
    avg_programmer=9.02,
    avg_application=7.67,
    avg_td=9.09,
    norm_programmer=1.007,
    norm_application=1.185,
    dataset6=DatasetSixRow(11.01, 10.28, 11.11, 1.009, 1.081),
)

ALL_TABLES = (EXISTENCE, FREQUENCY, PATTERNS_TWO, PATTERNS_THREE)
