"""Gender and race comparison units over a generated corpus.

A unit is a pair of sentence-id sets taken from one (template, emotion word)
instantiation. Units hold ids rather than scores so the same pairing can be
applied to any number of prediction files.
"""

from __future__ import annotations

import enum
import json
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .corpus import Corpus, SentenceRecord, parse_sentence_id, sentence_id
from .lexicons import Emotion, Gender, PersonKind, Race


class Dimension(enum.Enum):
    GENDER = "gender"
    RACE = "race"


class UnitKind(enum.Enum):
    NOUN_PHRASE_PAIR = "NounPhrasePair"
    NAME_AVERAGE = "NameAverage"


class Task(enum.Enum):
    ANGER = "anger"
    FEAR = "fear"
    JOY = "joy"
    SADNESS = "sadness"
    VALENCE = "valence"

    @property
    def emotion(self) -> Optional[Emotion]:
        return None if self is Task.VALENCE else Emotion(self.value.capitalize())


class PairingIntegrityError(ValueError):
    pass


@dataclass(frozen=True)
class ComparisonUnit:
    dimension: Dimension
    template_id: int
    emotion_index: Optional[int]
    emotion_word: Optional[str]
    emotion: Optional[Emotion]
    left_ids: tuple[str, ...]
    right_ids: tuple[str, ...]
    kind: UnitKind
    pair_id: Optional[str] = None

    @property
    def unit_id(self) -> str:
        e = "--" if self.emotion_index is None else f"{self.emotion_index:02d}"
        tail = self.pair_id if self.kind is UnitKind.NOUN_PHRASE_PAIR else "names"
        return f"{self.dimension.value}:t{self.template_id:02d}-e{e}:{tail}"


def _instantiations(corpus: Corpus):
    groups: dict[tuple[int, Optional[int]], list[SentenceRecord]] = defaultdict(list)
    for r in corpus.records:
        groups[(r.template_id, r.emotion_index)].append(r)
    return sorted(groups.items(), key=lambda kv: (kv[0][0], kv[0][1] or 0))


def _check_complete(corpus: Corpus, key, present: set[str]) -> None:
    template_id, emotion_index = key
    expected = {sentence_id(template_id, i, emotion_index)
                for i in range(1, len(corpus.lexicons.persons) + 1)}
    missing = sorted(expected - present)
    if not missing:
        return
    persons = corpus.lexicons.persons
    index = {p: i for i, p in enumerate(persons, start=1)}
    orphans = set()
    for sid in missing:
        gone = persons[parse_sentence_id(sid)[1] - 1]
        if gone.kind is PersonKind.NOUN_PHRASE:
            partners = [q for q in persons if q.pair_id == gone.pair_id and q is not gone]
            orphans.update(sentence_id(template_id, index[q], emotion_index) for q in partners)
        else:
            # a missing name unbalances every name-average unit of the instantiation
            orphans.update(sentence_id(template_id, index[q], emotion_index)
                           for q in persons if q.kind is PersonKind.GIVEN_NAME)
    orphans = sorted(orphans & present)
    raise PairingIntegrityError(
        f"instantiation t{template_id:02d}-e{emotion_index or '--'} is missing {', '.join(missing)}; "
        f"orphaned: {', '.join(orphans) if orphans else 'none'}")


def _unit(dimension, key, records, left, right, kind, pair_id=None) -> ComparisonUnit:
    word = records[0].emotion_word
    return ComparisonUnit(
        dimension=dimension,
        template_id=key[0],
        emotion_index=key[1],
        emotion_word=word.surface if word else None,
        emotion=word.emotion if word else None,
        left_ids=tuple(r.id for r in left),
        right_ids=tuple(r.id for r in right),
        kind=kind,
        pair_id=pair_id,
    )


def build_gender_comparisons(corpus: Corpus) -> list[ComparisonUnit]:
    """Per instantiation: one unit per noun-phrase pair, then one name-average unit."""
    units = []
    for key, records in _instantiations(corpus):
        _check_complete(corpus, key, {r.id for r in records})
        pairs: dict[str, dict[Gender, SentenceRecord]] = {}
        for r in records:
            if r.person.kind is PersonKind.NOUN_PHRASE:
                pairs.setdefault(r.person.pair_id, {})[r.gender] = r
        for pid, members in pairs.items():
            units.append(_unit(Dimension.GENDER, key, records, [members[Gender.FEMALE]],
                               [members[Gender.MALE]], UnitKind.NOUN_PHRASE_PAIR, pid))
        names = [r for r in records if r.person.kind is PersonKind.GIVEN_NAME]
        female = [r for r in names if r.gender is Gender.FEMALE]
        male = [r for r in names if r.gender is Gender.MALE]
        if female and male:
            units.append(_unit(Dimension.GENDER, key, records, female, male, UnitKind.NAME_AVERAGE))
    return units


def build_race_comparisons(corpus: Corpus) -> list[ComparisonUnit]:
    """Per instantiation: all African American names vs all European American names."""
    units = []
    for key, records in _instantiations(corpus):
        _check_complete(corpus, key, {r.id for r in records})
        aa = [r for r in records if r.race is Race.AFRICAN_AMERICAN]
        ea = [r for r in records if r.race is Race.EUROPEAN_AMERICAN]
        if aa and ea:
            units.append(_unit(Dimension.RACE, key, records, aa, ea, UnitKind.NAME_AVERAGE))
    return units


def build_comparisons(corpus: Corpus, dimension: Dimension) -> list[ComparisonUnit]:
    if dimension is Dimension.GENDER:
        return build_gender_comparisons(corpus)
    return build_race_comparisons(corpus)


@dataclass(frozen=True)
class SubsetSpec:
    kind: str = "full"  # full | neutral | emotion-matched
    task: Optional[Task] = None

    KINDS = ("full", "neutral", "emotion-matched")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown subset {self.kind!r}")
        if self.kind == "emotion-matched":
            if self.task is None:
                raise ValueError("emotion-matched subset needs a task")
            if self.task.emotion is None:
                raise ValueError(f"task {self.task.value} has no matching emotion category")

    @classmethod
    def full(cls) -> "SubsetSpec":
        return cls("full")

    @classmethod
    def neutral(cls) -> "SubsetSpec":
        return cls("neutral")

    @classmethod
    def emotion_matched(cls, task: Task) -> "SubsetSpec":
        return cls("emotion-matched", task)


def filter_comparisons(units: Sequence[ComparisonUnit], subset: SubsetSpec) -> list[ComparisonUnit]:
    if subset.kind == "full":
        return list(units)
    if subset.kind == "neutral":
        return [u for u in units if u.emotion is None]
    target = subset.task.emotion
    return [u for u in units if u.emotion is target]


def dump_units(units: Iterable[ComparisonUnit], path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for u in units:
            fh.write(json.dumps({
                "unit": u.unit_id,
                "dimension": u.dimension.value,
                "kind": u.kind.value,
                "template": u.template_id,
                "emotion_word": u.emotion_word,
                "left_ids": list(u.left_ids),
                "right_ids": list(u.right_ids),
            }) + "\n")
