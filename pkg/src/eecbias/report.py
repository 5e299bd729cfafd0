"""Batch analysis over a directory of prediction files, and its output files."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .corpus import Corpus
from .pairing import (
    Dimension,
    SubsetSpec,
    Task,
    build_gender_comparisons,
    build_race_comparisons,
    filter_comparisons,
)
from .predictions import (
    PredictionError,
    PredictionSet,
    parse_prediction_filename,
    validate_predictions,
)
from .stats import (
    GROUP_LABELS,
    BiasGroup,
    BoxStats,
    GroupTable,
    PairDelta,
    SystemBiasSummary,
    TestResult,
    aggregate_groups,
    analyze_system,
    bonferroni_threshold,
)

TASK_TITLES = {
    Task.ANGER: "Anger intensity prediction",
    Task.FEAR: "Fear intensity prediction",
    Task.JOY: "Joy intensity prediction",
    Task.SADNESS: "Sadness intensity prediction",
    Task.VALENCE: "Valence prediction",
}

SUMMARY_COLUMNS = ("system", "task", "dimension", "n", "mean_delta", "t", "df", "p", "significant",
                   "group", "avg_delta_pos", "avg_delta_neg", "spread",
                   "q1", "median", "q3", "whisker_low", "whisker_high")


class AnalysisError(RuntimeError):
    pass


@dataclass
class AnalysisRun:
    alpha: float
    corrections: int
    threshold: float
    subset: str
    summaries: list[SystemBiasSummary] = field(default_factory=list)
    deltas: dict[tuple[str, Task, Dimension], list[PairDelta]] = field(default_factory=dict)
    diagnostics: list[dict] = field(default_factory=list)

    def group_tables(self) -> list[GroupTable]:
        return group_tables(self.summaries)


def group_tables(summaries: Sequence[SystemBiasSummary]) -> list[GroupTable]:
    tables = []
    for dim in Dimension:
        for task in Task:
            members = [s for s in summaries if s.task is task and s.dimension is dim]
            if members:
                tables.append(aggregate_groups(members, task, dim))
    return tables


def load_prediction_dir(corpus: Corpus, directory: Path,
                        tasks: Optional[Iterable[Task]] = None) -> tuple[list[PredictionSet], list[dict]]:
    sets, diags = [], []
    if not Path(directory).is_dir():
        raise FileNotFoundError(f"predictions directory {directory} does not exist")
    for path in sorted(Path(directory).glob("*.csv")):
        try:
            system_id, task = parse_prediction_filename(path.name)
        except PredictionError as exc:
            diags.append({"file": path.name, "kind": "filename", "message": str(exc)})
            continue
        if tasks is not None and task not in tasks:
            continue
        try:
            sets.append(validate_predictions(path, corpus, system_id, task))
        except PredictionError as exc:
            diags.append({"file": path.name, "kind": type(exc).__name__, "message": str(exc)})
    return sets, diags


def run_analysis(corpus: Corpus, prediction_sets: Sequence[PredictionSet], *,
                 subset: str = "full", alpha: float = 0.05,
                 corrections: Optional[int] = None,
                 dimensions: Sequence[Dimension] = (Dimension.GENDER, Dimension.RACE),
                 diagnostics: Optional[list[dict]] = None) -> AnalysisRun:
    """Analyze every prediction set on every dimension.

    The Bonferroni denominator defaults to (prediction sets analyzed) x
    (dimensions analyzed).
    """
    diagnostics = list(diagnostics or [])
    usable = []
    for ps in sorted(prediction_sets, key=lambda p: (p.system_id, list(Task).index(p.task))):
        if subset == "emotion-matched" and ps.task.emotion is None:
            diagnostics.append({"file": f"{ps.system_id}.{ps.task.value}.csv", "kind": "subset",
                                "message": "emotion-matched subset is undefined for valence"})
            continue
        usable.append(ps)
    if not usable:
        raise AnalysisError("no valid prediction sets to analyze")

    n_corr = corrections if corrections is not None else len(usable) * len(dimensions)
    threshold = bonferroni_threshold(alpha, n_corr)
    run = AnalysisRun(alpha, n_corr, threshold, subset, diagnostics=diagnostics)

    all_units = {Dimension.GENDER: build_gender_comparisons(corpus),
                 Dimension.RACE: build_race_comparisons(corpus)}
    for ps in usable:
        spec = SubsetSpec.emotion_matched(ps.task) if subset == "emotion-matched" else SubsetSpec(subset)
        for dim in dimensions:
            units = filter_comparisons(all_units[dim], spec)
            summary, pds = analyze_system(units, ps, dim, threshold)
            run.summaries.append(summary)
            run.deltas[(ps.system_id, ps.task, dim)] = pds
    run.summaries.sort(key=_summary_key)
    return run


def _summary_key(s: SystemBiasSummary):
    return (list(Dimension).index(s.dimension), list(Task).index(s.task), s.system_id)


# ----------------------------------------------------------------- writing


def _num(x: Optional[float]) -> str:
    if x is None:
        return ""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(float(x))


def _json_num(x: Optional[float]):
    if x is None:
        return None
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(x)


def summary_record(s: SystemBiasSummary) -> dict:
    t, b = s.test, s.box
    return {
        "system": s.system_id, "task": s.task.value, "dimension": s.dimension.value,
        "n": t.n, "mean_delta": t.mean_delta, "t": t.t_statistic, "df": t.degrees_of_freedom,
        "p": t.p_value, "significant": t.significant, "group": s.group.value,
        "avg_delta_pos": s.avg_delta_pos, "avg_delta_neg": s.avg_delta_neg, "spread": s.delta_spread,
        "q1": b.q1, "median": b.median, "q3": b.q3,
        "whisker_low": b.whisker_low, "whisker_high": b.whisker_high,
    }


def _csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float) or v is None:
        return _num(v)
    return str(v)


def summaries_csv(summaries: Sequence[SystemBiasSummary]) -> str:
    return _csv(SUMMARY_COLUMNS,
                ([_cell(summary_record(s)[c]) for c in SUMMARY_COLUMNS] for s in summaries))


def summaries_json(summaries: Sequence[SystemBiasSummary]) -> str:
    recs = []
    for s in summaries:
        r = summary_record(s)
        recs.append({k: (_json_num(v) if isinstance(v, float) or v is None else v) for k, v in r.items()})
    return json.dumps(recs, indent=1) + "\n"


def group_records(tables: Sequence[GroupTable]) -> list[dict]:
    return [{"task": t.task.value, "dimension": t.dimension.value, "group": r.label,
             "count": r.count, "mean_pos": r.mean_pos, "mean_neg": r.mean_neg}
            for t in tables for r in t.rows]


def groups_csv(tables: Sequence[GroupTable]) -> str:
    cols = ("task", "dimension", "group", "count", "mean_pos", "mean_neg")
    return _csv(cols, ([_cell(r[c]) for c in cols] for r in group_records(tables)))


def plot_records(run: AnalysisRun) -> list[dict]:
    groups = {(s.system_id, s.task, s.dimension): s.group for s in run.summaries}
    out = []
    for s in run.summaries:
        for pd in run.deltas[(s.system_id, s.task, s.dimension)]:
            out.append({"system": s.system_id, "task": s.task.value, "dimension": s.dimension.value,
                        "unit": pd.unit.unit_id, "delta": pd.delta,
                        "group": groups[(s.system_id, s.task, s.dimension)].value})
    return out


def plot_csv(run: AnalysisRun) -> str:
    cols = ("system", "task", "dimension", "unit", "delta", "group")
    return _csv(cols, ([_cell(r[c]) for c in cols] for r in plot_records(run)))


def _fmt3(x: Optional[float]) -> str:
    return "-" if x is None else f"{x:.3f}"


def render_report(summaries: Sequence[SystemBiasSummary], meta: dict) -> str:
    lines = [
        f"alpha = {meta['alpha']}, corrections = {meta['corrections']}, "
        f"threshold = {meta['alpha']}/{meta['corrections']} = {meta['threshold']:.6e}",
        f"subset = {meta['subset']}",
        "",
    ]
    for table in group_tables(summaries):
        labels = GROUP_LABELS[table.dimension]
        pos_col = labels[BiasGroup.LEFT_HIGHER].replace(" significant", "")
        neg_col = labels[BiasGroup.RIGHT_HIGHER].replace(" significant", "")
        lines.append(f"[{table.dimension.value}] {TASK_TITLES[table.task]}")
        lines.append(f"    {'Bias group':<26}{'#Subm.':>7}{pos_col:>10}{neg_col:>10}")
        for r in table.rows:
            lines.append(f"    {r.label:<26}{r.count:>7}{_fmt3(r.mean_pos):>10}{_fmt3(r.mean_neg):>10}")
        lines.append("")
    lines.append("Per-system results")
    lines.append(f"    {'system':<20}{'task':<9}{'dim':<8}{'n':>6}{'mean':>9}{'p':>15}  group")
    for s in summaries:
        lines.append(f"    {s.system_id:<20}{s.task.value:<9}{s.dimension.value:<8}{s.test.n:>6}"
                     f"{s.test.mean_delta:>9.3f}{s.test.p_value:>15.6e}  "
                     f"{GROUP_LABELS[s.dimension][s.group]}")
    return "\n".join(lines) + "\n"


def run_meta(run: AnalysisRun) -> dict:
    return {"alpha": run.alpha, "corrections": run.corrections, "threshold": run.threshold,
            "subset": run.subset}


def write_outputs(run: AnalysisRun, out_dir: Path, fmt: str = "csv") -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    tables = run.group_tables()
    files = {"meta.json": json.dumps(run_meta(run), indent=1) + "\n",
             "diagnostics.json": json.dumps(run.diagnostics, indent=1) + "\n",
             "report.txt": render_report(run.summaries, run_meta(run))}
    if fmt == "json":
        files["summary.json"] = summaries_json(run.summaries)
        files["groups.json"] = json.dumps(group_records(tables), indent=1) + "\n"
        files["plot_data.json"] = json.dumps(plot_records(run)) + "\n"
    else:
        files["summary.csv"] = summaries_csv(run.summaries)
        files["groups.csv"] = groups_csv(tables)
        files["plot_data.csv"] = plot_csv(run)
    written = []
    for name, text in files.items():
        path = out_dir / name
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        written.append(path)
    return written


# ----------------------------------------------------------------- reading


def _parse_num(v) -> Optional[float]:
    if v is None or v == "":
        return None
    return float(v)


def summary_from_record(r: dict) -> SystemBiasSummary:
    dim = Dimension(r["dimension"])
    sig = r["significant"]
    if isinstance(sig, str):
        sig = sig == "true"
    n = int(r["n"])
    test = TestResult(n, _parse_num(r["mean_delta"]), _parse_num(r["t"]), int(r["df"]),
                      _parse_num(r["p"]), bool(sig), math.nan)
    box = BoxStats(*(_parse_num(r[k]) for k in ("q1", "median", "q3", "whisker_low", "whisker_high")))
    return SystemBiasSummary(r["system"], Task(r["task"]), dim, test, BiasGroup(r["group"]),
                             _parse_num(r["avg_delta_pos"]), _parse_num(r["avg_delta_neg"]),
                             _parse_num(r["spread"]), box)


def read_summaries(out_dir: Path) -> list[SystemBiasSummary]:
    out_dir = Path(out_dir)
    if (out_dir / "summary.json").exists():
        recs = json.loads((out_dir / "summary.json").read_text(encoding="utf-8"))
    elif (out_dir / "summary.csv").exists():
        with open(out_dir / "summary.csv", encoding="utf-8", newline="") as fh:
            recs = list(csv.DictReader(fh))
    else:
        raise FileNotFoundError(f"no summary.json or summary.csv in {out_dir}")
    return sorted((summary_from_record(r) for r in recs), key=_summary_key)
