"""Person terms, emotion words and sentence templates.

Lexicons live in tab-separated text files so new term lists can be added
without touching code. The defaults shipped in ``eecbias/data`` hold the
original corpus lists.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

PathLike = Union[str, Path]

PERSONS_FILE = "persons.tsv"
EMOTIONS_FILE = "emotions.tsv"
TEMPLATES_FILE = "templates.tsv"

VOWELS = frozenset("aeiou")


class Gender(enum.Enum):
    FEMALE = "Female"
    MALE = "Male"


class Race(enum.Enum):
    AFRICAN_AMERICAN = "AfricanAmerican"
    EUROPEAN_AMERICAN = "EuropeanAmerican"
    UNSPECIFIED = "Unspecified"


class PersonKind(enum.Enum):
    GIVEN_NAME = "GivenName"
    NOUN_PHRASE = "NounPhrase"


class Emotion(enum.Enum):
    ANGER = "Anger"
    FEAR = "Fear"
    JOY = "Joy"
    SADNESS = "Sadness"


class Register(enum.Enum):
    STATE = "State"
    SITUATION = "Situation"


class PersonRole(enum.Enum):
    SUBJECT = "Subject"
    OBJECT = "Object"


class LexiconError(ValueError):
    pass


class LexiconParseError(LexiconError):
    def __init__(self, path, lineno: int, message: str):
        self.path = str(path)
        self.lineno = lineno
        super().__init__(f"{self.path}:{lineno}: {message}")


class LexiconValidationError(LexiconError):
    """A lexicon parsed fine but breaks one of the structural rules."""

    def __init__(self, rule: str, detail: str = ""):
        self.rule = rule
        super().__init__(f"{rule}: {detail}" if detail else rule)


@dataclass(frozen=True)
class PersonTerm:
    surface: str
    subject_form: str
    object_form: str
    gender: Gender
    race: Race
    kind: PersonKind
    pair_id: Optional[str] = None

    def form(self, role: PersonRole) -> str:
        return self.subject_form if role is PersonRole.SUBJECT else self.object_form


@dataclass(frozen=True)
class EmotionWord:
    surface: str
    emotion: Emotion
    register: Register


@dataclass(frozen=True)
class Template:
    id: int
    pattern: str
    emotion_register: Optional[Register]
    person_role: PersonRole
    has_reflexive: bool = False
    has_article_before_emotion: bool = False

    @property
    def has_emotion(self) -> bool:
        return self.emotion_register is not None


@dataclass(frozen=True)
class Lexicons:
    persons: tuple[PersonTerm, ...]
    emotions: tuple[EmotionWord, ...]
    templates: tuple[Template, ...]

    def emotions_for(self, register: Register) -> tuple[EmotionWord, ...]:
        return tuple(e for e in self.emotions if e.register is register)

    def template(self, template_id: int) -> Template:
        for t in self.templates:
            if t.id == template_id:
                return t
        raise KeyError(template_id)

    def restrict(self, template_ids: Iterable[int]) -> "Lexicons":
        keep = set(template_ids)
        unknown = keep - {t.id for t in self.templates}
        if unknown:
            raise KeyError(f"unknown template ids {sorted(unknown)}")
        return Lexicons(self.persons, self.emotions,
                        tuple(t for t in self.templates if t.id in keep))

    @property
    def fingerprint(self) -> str:
        h = hashlib.sha256()
        for p in self.persons:
            h.update(_row(p.surface, p.subject_form, p.object_form, p.gender.value,
                          p.race.value, p.kind.value, p.pair_id or "-"))
        h.update(b"\x1e")
        for e in self.emotions:
            h.update(_row(e.surface, e.emotion.value, e.register.value))
        h.update(b"\x1e")
        for t in self.templates:
            h.update(_row(str(t.id), t.pattern, _register_name(t.emotion_register),
                          t.person_role.value, str(t.has_reflexive), str(t.has_article_before_emotion)))
        return h.hexdigest()


def _row(*fields: str) -> bytes:
    return ("\t".join(fields) + "\n").encode("utf-8")


def _register_name(register: Optional[Register]) -> str:
    return "None" if register is None else register.value


# ---------------------------------------------------------------- parsing


def _read_rows(path: PathLike, header: Sequence[str]) -> list[tuple[int, list[str]]]:
    text = Path(path).read_text(encoding="utf-8")
    rows = []
    seen_header = False
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = [f.strip() for f in line.split("\t")]
        if not seen_header:
            if fields != list(header):
                raise LexiconParseError(path, lineno, f"expected header {'|'.join(header)}")
            seen_header = True
            continue
        if len(fields) != len(header):
            raise LexiconParseError(path, lineno,
                                    f"expected {len(header)} tab-separated fields, got {len(fields)}")
        rows.append((lineno, fields))
    if not seen_header:
        raise LexiconParseError(path, 1, "missing header line")
    return rows


def _enum(cls, value: str, path, lineno: int):
    try:
        return cls(value)
    except ValueError:
        allowed = ", ".join(m.value for m in cls)
        raise LexiconParseError(path, lineno, f"{value!r} is not one of {allowed}") from None


def _bool(value: str, path, lineno: int) -> bool:
    v = value.lower()
    if v in ("true", "yes", "1"):
        return True
    if v in ("false", "no", "0"):
        return False
    raise LexiconParseError(path, lineno, f"{value!r} is not a boolean")


PERSON_HEADER = ("surface", "subject_form", "object_form", "gender", "race", "kind", "pair_id")
EMOTION_HEADER = ("surface", "emotion", "register")
TEMPLATE_HEADER = ("id", "pattern", "emotion_register", "person_role",
                   "has_reflexive", "has_article_before_emotion")


def parse_persons(path: PathLike) -> tuple[PersonTerm, ...]:
    out = []
    for lineno, f in _read_rows(path, PERSON_HEADER):
        surface, subj, obj = f[0], f[1], f[2]
        if not surface or not subj or not obj:
            raise LexiconParseError(path, lineno, "empty person form")
        pair_id = f[6] if f[6] not in ("", "-") else None
        out.append(PersonTerm(surface, subj, obj,
                              _enum(Gender, f[3], path, lineno),
                              _enum(Race, f[4], path, lineno),
                              _enum(PersonKind, f[5], path, lineno),
                              pair_id))
    return tuple(out)


def parse_emotions(path: PathLike) -> tuple[EmotionWord, ...]:
    out = []
    for lineno, f in _read_rows(path, EMOTION_HEADER):
        if not f[0]:
            raise LexiconParseError(path, lineno, "empty emotion word")
        out.append(EmotionWord(f[0], _enum(Emotion, f[1], path, lineno),
                               _enum(Register, f[2], path, lineno)))
    return tuple(out)


def parse_templates(path: PathLike) -> tuple[Template, ...]:
    out = []
    for lineno, f in _read_rows(path, TEMPLATE_HEADER):
        try:
            tid = int(f[0])
        except ValueError:
            raise LexiconParseError(path, lineno, f"template id {f[0]!r} is not an integer") from None
        register = None if f[2] == "None" else _enum(Register, f[2], path, lineno)
        out.append(Template(tid, f[1], register,
                            _enum(PersonRole, f[3], path, lineno),
                            _bool(f[4], path, lineno),
                            _bool(f[5], path, lineno)))
    return tuple(out)


# ------------------------------------------------------------- validation


def validate(lex: Lexicons) -> Lexicons:
    """Check the structural rules; raise LexiconValidationError on the first break."""
    persons, emotions, templates = lex.persons, lex.emotions, lex.templates
    if not persons:
        raise LexiconValidationError("empty person lexicon")

    surfaces = [p.surface for p in persons]
    dup = {s for s in surfaces if surfaces.count(s) > 1}
    if dup:
        raise LexiconValidationError("duplicate person term", ", ".join(sorted(dup)))

    pairs: dict[str, list[PersonTerm]] = {}
    for p in persons:
        if p.kind is PersonKind.GIVEN_NAME:
            if p.pair_id is not None:
                raise LexiconValidationError("given name has pair id", p.surface)
            if p.race is Race.UNSPECIFIED:
                raise LexiconValidationError("given name needs a race", p.surface)
        else:
            if p.race is not Race.UNSPECIFIED:
                raise LexiconValidationError("noun phrase must not carry a race", p.surface)
            if p.pair_id is None:
                raise LexiconValidationError("unpaired noun phrase", p.surface)
            pairs.setdefault(p.pair_id, []).append(p)
    for pid, members in pairs.items():
        genders = sorted(m.gender.value for m in members)
        if genders != ["Female", "Male"]:
            raise LexiconValidationError(
                "unpaired noun phrase", f"pair {pid}: {', '.join(m.surface for m in members)}")

    for register in Register:
        words = [e.surface for e in emotions if e.register is register]
        dup = {w for w in words if words.count(w) > 1}
        if dup:
            raise LexiconValidationError("duplicate emotion word in register",
                                         f"{register.value}: {', '.join(sorted(dup))}")

    ids = [t.id for t in templates]
    if len(set(ids)) != len(ids):
        raise LexiconValidationError("duplicate template id")
    for t in templates:
        if t.id < 1 or t.id > 99:
            raise LexiconValidationError("template id out of range 1-99", str(t.id))
        if t.pattern.count("{person}") != 1:
            raise LexiconValidationError("template needs exactly one person slot", str(t.id))
        if ("{emotion}" in t.pattern) != t.has_emotion:
            raise LexiconValidationError("emotion slot does not match emotion register", str(t.id))
        if ("{reflexive}" in t.pattern) != t.has_reflexive:
            raise LexiconValidationError("reflexive slot does not match flag", str(t.id))
        if ("{article}" in t.pattern) != t.has_article_before_emotion:
            raise LexiconValidationError("article slot does not match flag", str(t.id))
        if t.has_article_before_emotion and "{article} {emotion}" not in t.pattern:
            raise LexiconValidationError("article must directly precede the emotion slot", str(t.id))
        if t.has_emotion and not lex.emotions_for(t.emotion_register):
            raise LexiconValidationError("no emotion words for register",
                                         f"template {t.id}, {t.emotion_register.value}")
    return lex


def default_lexicon_dir() -> Path:
    return Path(str(resources.files("eecbias") / "data"))


def load_lexicons(directory: Optional[PathLike] = None, *,
                  persons: Optional[PathLike] = None,
                  emotions: Optional[PathLike] = None,
                  templates: Optional[PathLike] = None) -> Lexicons:
    """Load and validate lexicons.

    Files come from ``directory`` when it holds them, otherwise from the
    embedded defaults; explicit per-file paths win over both.
    """
    defaults = default_lexicon_dir()

    def pick(explicit, name):
        if explicit is not None:
            return Path(explicit)
        if directory is not None and (Path(directory) / name).exists():
            return Path(directory) / name
        return defaults / name

    lex = Lexicons(parse_persons(pick(persons, PERSONS_FILE)),
                   parse_emotions(pick(emotions, EMOTIONS_FILE)),
                   parse_templates(pick(templates, TEMPLATES_FILE)))
    return validate(lex)
