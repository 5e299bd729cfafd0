"""Template expansion and the corpus file format."""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Union

from .lexicons import (
    VOWELS,
    EmotionWord,
    Gender,
    Lexicons,
    PersonTerm,
    Race,
    Template,
)

CORPUS_HEADER = ("ID", "Sentence", "Template", "Person", "Gender", "Race", "EmotionWord", "Emotion")

_ID_RE = re.compile(r"^t(\d{2})-p(\d{2})-e(\d{2}|--)$")


class TemplateContractError(ValueError):
    pass


class CorpusFormatError(ValueError):
    pass


@dataclass(frozen=True)
class SentenceRecord:
    id: str
    text: str
    template_id: int
    person_index: int  # 1-based position in the person lexicon
    emotion_index: Optional[int]  # 1-based position within the template's register
    person: PersonTerm
    emotion_word: Optional[EmotionWord]

    @property
    def gender(self) -> Gender:
        return self.person.gender

    @property
    def race(self) -> Race:
        return self.person.race


@dataclass(frozen=True)
class Corpus:
    records: tuple[SentenceRecord, ...]
    lexicons: Lexicons

    @property
    def fingerprint(self) -> str:
        return self.lexicons.fingerprint

    @property
    def ids(self) -> list[str]:
        return [r.id for r in self.records]

    def __len__(self) -> int:
        return len(self.records)

    def by_id(self) -> dict[str, SentenceRecord]:
        return {r.id: r for r in self.records}


def sentence_id(template_id: int, person_index: int, emotion_index: Optional[int]) -> str:
    e = "--" if emotion_index is None else f"{emotion_index:02d}"
    return f"t{template_id:02d}-p{person_index:02d}-e{e}"


def parse_sentence_id(sid: str) -> tuple[int, int, Optional[int]]:
    m = _ID_RE.match(sid)
    if not m:
        raise CorpusFormatError(f"malformed sentence id {sid!r}")
    e = None if m.group(3) == "--" else int(m.group(3))
    return int(m.group(1)), int(m.group(2)), e


def realized_person(template: Template, person: PersonTerm) -> str:
    return person.form(template.person_role)


def expand_template(template: Template, person: PersonTerm,
                    emotion_word: Optional[EmotionWord] = None) -> str:
    if template.has_emotion:
        if emotion_word is None:
            raise TemplateContractError(f"template {template.id} needs an emotion word")
        if emotion_word.register is not template.emotion_register:
            raise TemplateContractError(
                f"template {template.id} takes {template.emotion_register.value} words, "
                f"got {emotion_word.surface!r} ({emotion_word.register.value})")
    elif emotion_word is not None:
        raise TemplateContractError(f"template {template.id} has no emotion slot")

    text = template.pattern.replace("{person}", realized_person(template, person))
    if template.has_reflexive:
        text = text.replace("{reflexive}",
                            "herself" if person.gender is Gender.FEMALE else "himself")
    if emotion_word is not None:
        if template.has_article_before_emotion:
            # orthographic rule; words like "honest" or "unique" are not handled
            article = "an" if emotion_word.surface[0].lower() in VOWELS else "a"
            text = text.replace("{article}", article)
        text = text.replace("{emotion}", emotion_word.surface)
    text = text.strip().rstrip(".") + "."
    return text[0].upper() + text[1:]


def generate_corpus(lexicons: Lexicons, template_ids: Optional[Iterable[int]] = None) -> Corpus:
    """Expand every template x person (x emotion word of the matching register).

    Records are ordered by template id, then person lexicon order, then
    emotion lexicon order.
    """
    if template_ids is not None:
        lexicons = lexicons.restrict(template_ids)
    records = []
    for template in sorted(lexicons.templates, key=lambda t: t.id):
        words = lexicons.emotions_for(template.emotion_register) if template.has_emotion else (None,)
        for p_idx, person in enumerate(lexicons.persons, start=1):
            for e_idx, word in enumerate(words, start=1):
                eidx = e_idx if word is not None else None
                records.append(SentenceRecord(
                    id=sentence_id(template.id, p_idx, eidx),
                    text=expand_template(template, person, word),
                    template_id=template.id,
                    person_index=p_idx,
                    emotion_index=eidx,
                    person=person,
                    emotion_word=word,
                ))
    return Corpus(tuple(records), lexicons)


def corpus_rows(corpus: Corpus):
    for r in corpus.records:
        t = corpus.lexicons.template(r.template_id)
        yield (r.id, r.text, str(r.template_id), realized_person(t, r.person),
               r.gender.value, r.race.value,
               r.emotion_word.surface if r.emotion_word else "",
               r.emotion_word.emotion.value if r.emotion_word else "")


def corpus_to_csv(corpus: Corpus) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CORPUS_HEADER)
    w.writerows(corpus_rows(corpus))
    return buf.getvalue()


def emit_corpus(corpus: Corpus, destination: Union[str, Path]) -> Path:
    dest = Path(destination)
    with open(dest, "w", encoding="utf-8", newline="") as fh:
        fh.write(corpus_to_csv(corpus))
    return dest


def read_corpus(path: Union[str, Path], lexicons: Lexicons) -> Corpus:
    """Re-load a corpus file against the lexicons that produced it.

    Every row is re-expanded and must reproduce the stored sentence.
    """
    templates = {t.id: t for t in lexicons.templates}
    records = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != CORPUS_HEADER:
            raise CorpusFormatError(f"{path}: expected header {','.join(CORPUS_HEADER)}")
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(CORPUS_HEADER):
                raise CorpusFormatError(f"{path}:{lineno}: expected {len(CORPUS_HEADER)} fields")
            tid, pidx, eidx = parse_sentence_id(row[0])
            if tid not in templates or not 1 <= pidx <= len(lexicons.persons):
                raise CorpusFormatError(f"{path}:{lineno}: id {row[0]} outside the lexicons")
            template = templates[tid]
            person = lexicons.persons[pidx - 1]
            word = None
            if eidx is not None:
                if not template.has_emotion:
                    raise CorpusFormatError(f"{path}:{lineno}: id {row[0]} has an emotion index")
                words = lexicons.emotions_for(template.emotion_register)
                if not 1 <= eidx <= len(words):
                    raise CorpusFormatError(f"{path}:{lineno}: emotion index out of range")
                word = words[eidx - 1]
            try:
                text = expand_template(template, person, word)
            except TemplateContractError as exc:
                raise CorpusFormatError(f"{path}:{lineno}: {exc}") from None
            if text != row[1] or str(tid) != row[2]:
                raise CorpusFormatError(f"{path}:{lineno}: row does not match lexicons")
            records.append(SentenceRecord(row[0], text, tid, pidx, eidx, person, word))
    ids = [r.id for r in records]
    if len(set(ids)) != len(ids):
        raise CorpusFormatError(f"{path}: duplicate sentence ids")
    return Corpus(tuple(records), lexicons)


def expected_corpus_size(lexicons: Lexicons) -> int:
    n = 0
    for t in lexicons.templates:
        per = len(lexicons.emotions_for(t.emotion_register)) if t.has_emotion else 1
        n += len(lexicons.persons) * per
    return n
