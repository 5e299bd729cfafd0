"""Prediction files: one ``ID,Score`` row per corpus sentence."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Union

from .corpus import Corpus
from .pairing import Task

PREDICTION_HEADER = ("ID", "Score")


class PredictionError(ValueError):
    pass


class PredictionFormatError(PredictionError):
    pass


class MissingIdsError(PredictionError):
    def __init__(self, missing: list[str]):
        self.missing = missing
        super().__init__(f"{len(missing)} missing ids: {', '.join(missing)}")


class DuplicateIdError(PredictionError):
    def __init__(self, duplicates: list[str]):
        self.duplicates = duplicates
        super().__init__(f"duplicate ids: {', '.join(duplicates)}")


class UnknownIdError(PredictionError):
    def __init__(self, unknown: list[str]):
        self.unknown = unknown
        super().__init__(f"ids not in corpus: {', '.join(unknown)}")


class ScoreRangeError(PredictionError):
    def __init__(self, rows: list[tuple[int, str, str]]):
        self.rows = rows
        desc = "; ".join(f"row {n} ({sid}): {raw}" for n, sid, raw in rows)
        super().__init__(f"scores outside [0, 1]: {desc}")


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    message: str
    ids: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {"kind": self.kind, "message": self.message, "ids": list(self.ids)}


@dataclass
class PredictionSet:
    system_id: str
    task: Task
    scores: dict[str, float] = field(default_factory=dict)


def parse_prediction_csv(text: str) -> list[tuple[int, str, str]]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != PREDICTION_HEADER:
        raise PredictionFormatError("expected header ID,Score")
    rows = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 2:
            raise PredictionFormatError(f"row {lineno}: expected 2 fields, got {len(row)}")
        rows.append((lineno, row[0].strip(), row[1].strip()))
    return rows


def check_rows(rows: Iterable[tuple[int, str, str]], corpus_ids: Iterable[str]) -> list[Diagnostic]:
    """Every problem in a parsed prediction file, grouped by kind."""
    known = set(corpus_ids)
    seen: dict[str, int] = {}
    dups, unknown, bad = [], [], []
    for lineno, sid, raw in rows:
        if sid in seen:
            dups.append(sid)
        seen[sid] = lineno
        if sid not in known:
            unknown.append(sid)
        try:
            v = float(raw)
        except ValueError:
            v = math.nan
        if not (0.0 <= v <= 1.0):
            bad.append((lineno, sid, raw))
    missing = sorted(known - seen.keys())
    out = []
    if missing:
        out.append(Diagnostic("missing", str(MissingIdsError(missing)), tuple(missing)))
    if dups:
        out.append(Diagnostic("duplicate", str(DuplicateIdError(dups)), tuple(dups)))
    if unknown:
        out.append(Diagnostic("unknown", str(UnknownIdError(unknown)), tuple(unknown)))
    if bad:
        out.append(Diagnostic("range", str(ScoreRangeError(bad)), tuple(s for _, s, _ in bad)))
    return out


def validate_predictions(source: Union[str, Path], corpus: Corpus, system_id: str,
                         task: Task) -> PredictionSet:
    """Read a prediction file and insist it covers the corpus exactly."""
    text = Path(source).read_text(encoding="utf-8")
    return predictions_from_text(text, corpus, system_id, task)


def predictions_from_text(text: str, corpus: Corpus, system_id: str, task: Task) -> PredictionSet:
    rows = parse_prediction_csv(text)
    known = set(corpus.ids)
    seen: set[str] = set()
    dups = []
    for _, sid, _ in rows:
        if sid in seen:
            dups.append(sid)
        seen.add(sid)
    if dups:
        raise DuplicateIdError(dups)
    unknown = [sid for _, sid, _ in rows if sid not in known]
    if unknown:
        raise UnknownIdError(unknown)
    bad = []
    scores = {}
    for lineno, sid, raw in rows:
        try:
            v = float(raw)
        except ValueError:
            v = math.nan
        if not (0.0 <= v <= 1.0):
            bad.append((lineno, sid, raw))
        scores[sid] = v
    if bad:
        raise ScoreRangeError(bad)
    missing = sorted(known - scores.keys())
    if missing:
        raise MissingIdsError(missing)
    return PredictionSet(system_id, task, scores)


def prediction_filename(system_id: str, task: Task) -> str:
    return f"{system_id}.{task.value}.csv"


def parse_prediction_filename(name: str) -> tuple[str, Task]:
    stem = name[:-4] if name.endswith(".csv") else name
    system_id, _, task = stem.rpartition(".")
    if not system_id:
        raise PredictionFormatError(f"{name}: expected SYSTEM.TASK.csv")
    try:
        return system_id, Task(task)
    except ValueError:
        raise PredictionFormatError(f"{name}: unknown task {task!r}") from None


def write_predictions(pred: PredictionSet, corpus_ids: Iterable[str], directory: Union[str, Path]) -> Path:
    path = Path(directory) / prediction_filename(pred.system_id, pred.task)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(PREDICTION_HEADER)
    for sid in corpus_ids:
        w.writerow((sid, repr(pred.scores[sid])))
    path.write_text(buf.getvalue(), encoding="utf-8")
    return path

