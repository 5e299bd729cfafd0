"""Per-system bias statistics over comparison units.

Each unit yields a signed difference (left mean minus right mean: female
minus male, or African American minus European American). A system's
differences for one dimension are pooled into a single paired t-test, then
classified into one of three bias groups.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .pairing import ComparisonUnit, Dimension, Task
from .predictions import PredictionSet
from .tdist import student_t_two_tailed_p


class StatsContractError(ValueError):
    pass


class BiasGroup(enum.Enum):
    NOT_SIGNIFICANT = "NotSignificant"
    LEFT_HIGHER = "LeftHigher"
    RIGHT_HIGHER = "RightHigher"


GROUP_LABELS = {
    Dimension.GENDER: {
        BiasGroup.NOT_SIGNIFICANT: "F=M not significant",
        BiasGroup.LEFT_HIGHER: "F↑-M↓ significant",
        BiasGroup.RIGHT_HIGHER: "F↓-M↑ significant",
    },
    Dimension.RACE: {
        BiasGroup.NOT_SIGNIFICANT: "AA=EA not significant",
        BiasGroup.LEFT_HIGHER: "AA↑-EA↓ significant",
        BiasGroup.RIGHT_HIGHER: "AA↓-EA↑ significant",
    },
}


@dataclass(frozen=True)
class PairDelta:
    unit: ComparisonUnit
    left_mean: float
    right_mean: float

    @property
    def delta(self) -> float:
        return self.left_mean - self.right_mean


@dataclass(frozen=True)
class TestResult:
    n: int
    mean_delta: float
    t_statistic: float
    degrees_of_freedom: int
    p_value: float
    significant: bool
    threshold: float

    __test__ = False  # not a pytest class


@dataclass(frozen=True)
class BoxStats:
    q1: float
    median: float
    q3: float
    whisker_low: float
    whisker_high: float

    @property
    def iqr(self) -> float:
        return self.q3 - self.q1


@dataclass(frozen=True)
class SystemBiasSummary:
    system_id: str
    task: Task
    dimension: Dimension
    test: TestResult
    group: BiasGroup
    avg_delta_pos: Optional[float]
    avg_delta_neg: Optional[float]
    delta_spread: float
    box: BoxStats


def _mean(xs: Sequence[float]) -> float:
    return math.fsum(xs) / len(xs)


def compute_deltas(units: Sequence[ComparisonUnit], predictions: PredictionSet) -> list[PairDelta]:
    s = predictions.scores
    return [PairDelta(u, _mean([s[i] for i in u.left_ids]), _mean([s[i] for i in u.right_ids]))
            for u in units]


def bonferroni_threshold(alpha: float, n_assessments: int) -> float:
    if not 0.0 < alpha < 1.0:
        raise StatsContractError(f"alpha must lie in (0, 1), got {alpha}")
    if n_assessments < 1:
        raise StatsContractError(f"need at least one assessment, got {n_assessments}")
    return alpha / n_assessments


def one_sample_t(deltas: Sequence[float]) -> tuple[float, float]:
    """(mean, t) for H0: mean difference is zero. sd = 0 gives t = 0 or +-inf."""
    n = len(deltas)
    if n < 2:
        raise StatsContractError(f"t-test needs at least 2 differences, got {n}")
    m = _mean(deltas)
    scale = max(abs(d) for d in deltas)
    if scale == 0.0:
        return m, 0.0
    # t is scale-free; normalizing keeps squares of tiny differences out of the subnormal range
    xs = [d / scale for d in deltas]
    ms = _mean(xs)
    var = math.fsum((x - ms) ** 2 for x in xs) / (n - 1)
    if var == 0.0:
        return m, (0.0 if ms == 0.0 else math.copysign(math.inf, ms))
    return m, ms / math.sqrt(var / n)


def paired_two_sample_t(left: Sequence[float], right: Sequence[float]) -> float:
    """Paired t from the two samples' moments, without forming differences."""
    n = len(left)
    if n != len(right):
        raise StatsContractError("paired samples differ in length")
    if n < 2:
        raise StatsContractError(f"t-test needs at least 2 pairs, got {n}")
    ml, mr = _mean(left), _mean(right)
    sll = math.fsum((x - ml) ** 2 for x in left)
    srr = math.fsum((y - mr) ** 2 for y in right)
    slr = math.fsum((x - ml) * (y - mr) for x, y in zip(left, right))
    var = (sll + srr - 2.0 * slr) / (n - 1)
    diff = ml - mr
    if var <= 0.0:
        return 0.0 if diff == 0.0 else math.copysign(math.inf, diff)
    return diff / math.sqrt(var / n)


def paired_t_test(deltas: Sequence[float], corrected_alpha: float) -> TestResult:
    n = len(deltas)
    m, t = one_sample_t(deltas)
    df = n - 1
    if math.isinf(t):
        p = 0.0
    else:
        p = student_t_two_tailed_p(t, df)
    return TestResult(n, m, t, df, p, p < corrected_alpha, corrected_alpha)


def _interp_quantile(sorted_xs: Sequence[float], q: float) -> float:
    h = (len(sorted_xs) - 1) * q
    lo = math.floor(h)
    hi = min(lo + 1, len(sorted_xs) - 1)
    return sorted_xs[lo] + (h - lo) * (sorted_xs[hi] - sorted_xs[lo])


def box_stats(deltas: Sequence[float]) -> BoxStats:
    """Quartiles by linear interpolation; whiskers reach the furthest point within 1.5 IQR."""
    if not deltas:
        raise StatsContractError("box_stats needs at least one value")
    xs = sorted(deltas)
    q1, med, q3 = (_interp_quantile(xs, q) for q in (0.25, 0.5, 0.75))
    iqr = q3 - q1
    lo_fence, hi_fence = q1 - 1.5 * iqr, q3 + 1.5 * iqr
    low = min(x for x in xs if x >= lo_fence)
    high = max(x for x in xs if x <= hi_fence)
    return BoxStats(q1, med, q3, low, high)


def classify_and_summarize(deltas: Sequence[float], test: TestResult, *, system_id: str = "",
                           task: Task = Task.VALENCE,
                           dimension: Dimension = Dimension.GENDER) -> SystemBiasSummary:
    if not test.significant:
        group = BiasGroup.NOT_SIGNIFICANT
    elif test.mean_delta > 0:
        group = BiasGroup.LEFT_HIGHER
    else:
        group = BiasGroup.RIGHT_HIGHER
    pos = [d for d in deltas if d > 0]
    neg = [d for d in deltas if d < 0]
    return SystemBiasSummary(
        system_id=system_id,
        task=task,
        dimension=dimension,
        test=test,
        group=group,
        avg_delta_pos=_mean(pos) if pos else None,
        avg_delta_neg=_mean(neg) if neg else None,
        delta_spread=max(deltas) - min(deltas),
        box=box_stats(deltas),
    )


def analyze_system(units: Sequence[ComparisonUnit], predictions: PredictionSet,
                   dimension: Dimension, corrected_alpha: float) -> tuple[SystemBiasSummary, list[PairDelta]]:
    pair_deltas = compute_deltas([u for u in units if u.dimension is dimension], predictions)
    ds = [p.delta for p in pair_deltas]
    test = paired_t_test(ds, corrected_alpha)
    summary = classify_and_summarize(ds, test, system_id=predictions.system_id,
                                     task=predictions.task, dimension=dimension)
    return summary, pair_deltas


@dataclass
class GroupRow:
    label: str
    group: Optional[BiasGroup]  # None for the "All" row
    count: int
    mean_pos: Optional[float]
    mean_neg: Optional[float]


@dataclass
class GroupTable:
    task: Task
    dimension: Dimension
    rows: list[GroupRow] = field(default_factory=list)


def aggregate_groups(summaries: Sequence[SystemBiasSummary], task: Optional[Task] = None,
                     dimension: Optional[Dimension] = None) -> GroupTable:
    """Group-level means of the per-system averages, plus an All row."""
    if summaries:
        task = task or summaries[0].task
        dimension = dimension or summaries[0].dimension
    if task is None or dimension is None:
        raise StatsContractError("empty summary list needs an explicit task and dimension")
    for s in summaries:
        if s.task is not task or s.dimension is not dimension:
            raise StatsContractError("summaries mix tasks or dimensions")

    def row(label, group, members):
        pos = [m.avg_delta_pos for m in members if m.avg_delta_pos is not None]
        neg = [m.avg_delta_neg for m in members if m.avg_delta_neg is not None]
        return GroupRow(label, group, len(members),
                        _mean(pos) if pos else None, _mean(neg) if neg else None)

    labels = GROUP_LABELS[dimension]
    table = GroupTable(task, dimension)
    for g in BiasGroup:
        table.rows.append(row(labels[g], g, [s for s in summaries if s.group is g]))
    table.rows.append(row("All", None, list(summaries)))
    return table
