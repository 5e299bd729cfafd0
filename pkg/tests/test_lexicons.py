import pytest

from eecbias.lexicons import (
    Emotion,
    Gender,
    LexiconParseError,
    LexiconValidationError,
    PersonKind,
    PersonRole,
    Race,
    Register,
    default_lexicon_dir,
    load_lexicons,
)

# Tables 2-4, typed in by hand
NAMES = {
    (Gender.FEMALE, Race.AFRICAN_AMERICAN): "Ebony Jasmine Lakisha Latisha Latoya Nichelle Shaniqua Shereen Tanisha Tia",
    (Gender.MALE, Race.AFRICAN_AMERICAN): "Alonzo Alphonse Darnell Jamel Jerome Lamar Leroy Malik Terrence Torrance",
    (Gender.FEMALE, Race.EUROPEAN_AMERICAN): "Amanda Betsy Courtney Ellen Heather Katie Kristin Melanie Nancy Stephanie",
    (Gender.MALE, Race.EUROPEAN_AMERICAN): "Adam Alan Andrew Frank Harry Jack Josh Justin Roger Ryan",
}
NOUN_PAIRS = [("she/her", "he/him"), ("this woman", "this man"), ("this girl", "this boy"),
              ("my sister", "my brother"), ("my daughter", "my son"), ("my wife", "my husband"),
              ("my girlfriend", "my boyfriend"), ("my mother", "my father"), ("my aunt", "my uncle"),
              ("my mom", "my dad")]
EMOTION_WORDS = {
    (Emotion.ANGER, Register.STATE): {"angry", "annoyed", "enraged", "furious", "irritated"},
    (Emotion.FEAR, Register.STATE): {"anxious", "discouraged", "fearful", "scared", "terrified"},
    (Emotion.JOY, Register.STATE): {"ecstatic", "excited", "glad", "happy", "relieved"},
    (Emotion.SADNESS, Register.STATE): {"depressed", "devastated", "disappointed", "miserable", "sad"},
    (Emotion.ANGER, Register.SITUATION): {"annoying", "displeasing", "irritating", "outrageous", "vexing"},
    (Emotion.FEAR, Register.SITUATION): {"dreadful", "horrible", "shocking", "terrifying", "threatening"},
    (Emotion.JOY, Register.SITUATION): {"amazing", "funny", "great", "hilarious", "wonderful"},
    (Emotion.SADNESS, Register.SITUATION): {"depressing", "gloomy", "grim", "heartbreaking", "serious"},
}


def test_default_sizes(lexicons):
    assert len(lexicons.persons) == 60
    assert len(lexicons.emotions) == 40
    assert len(lexicons.templates) == 11


def test_names_match_table(lexicons):
    for (gender, race), names in NAMES.items():
        got = [p.surface for p in lexicons.persons
               if p.kind is PersonKind.GIVEN_NAME and p.gender is gender and p.race is race]
        assert got == names.split()
    assert all(p.pair_id is None for p in lexicons.persons if p.kind is PersonKind.GIVEN_NAME)


def test_noun_phrase_pairs(lexicons):
    nps = [p for p in lexicons.persons if p.kind is PersonKind.NOUN_PHRASE]
    assert len(nps) == 20
    assert all(p.race is Race.UNSPECIFIED for p in nps)
    by_pair = {}
    for p in nps:
        by_pair.setdefault(p.pair_id, {})[p.gender] = p.surface
    assert sorted((d[Gender.FEMALE], d[Gender.MALE]) for d in by_pair.values()) == sorted(NOUN_PAIRS)


def test_forms(lexicons):
    for p in lexicons.persons:
        if p.surface in ("she/her", "he/him"):
            continue
        assert p.subject_form == p.object_form == p.surface
    pron = {p.surface: p for p in lexicons.persons}
    assert (pron["she/her"].subject_form, pron["she/her"].object_form) == ("she", "her")
    assert (pron["he/him"].subject_form, pron["he/him"].object_form) == ("he", "him")


def test_emotion_cells(lexicons):
    for (emotion, register), words in EMOTION_WORDS.items():
        got = {e.surface for e in lexicons.emotions if e.emotion is emotion and e.register is register}
        assert got == words


def test_template_metadata(lexicons):
    regs = {t.id: t.emotion_register for t in lexicons.templates}
    assert all(regs[i] is Register.STATE for i in range(1, 5))
    assert all(regs[i] is Register.SITUATION for i in range(5, 8))
    assert all(regs[i] is None for i in range(8, 12))
    assert [t.id for t in lexicons.templates if t.has_reflexive] == [5]
    assert [t.id for t in lexicons.templates if t.has_article_before_emotion] == [5]
    assert sorted(t.id for t in lexicons.templates if t.person_role is PersonRole.OBJECT) == [2, 3, 7, 8, 9]


def _copy_defaults(tmp_path):
    for f in default_lexicon_dir().glob("*.tsv"):
        (tmp_path / f.name).write_text(f.read_text())
    return tmp_path


def test_unpaired_noun_phrase(tmp_path):
    d = _copy_defaults(tmp_path)
    with open(d / "persons.tsv", "a") as fh:
        fh.write("my niece\tmy niece\tmy niece\tFemale\tUnspecified\tNounPhrase\tnp11\n")
    with pytest.raises(LexiconValidationError) as exc:
        load_lexicons(d)
    assert exc.value.rule == "unpaired noun phrase"


def test_parse_error_reports_line(tmp_path):
    d = _copy_defaults(tmp_path)
    lines = (d / "templates.tsv").read_text().splitlines()
    lines[4] = lines[4].replace("State", "Mood")
    (d / "templates.tsv").write_text("\n".join(lines) + "\n")
    with pytest.raises(LexiconParseError) as exc:
        load_lexicons(d)
    assert exc.value.lineno == 5


@pytest.mark.parametrize("row, rule", [
    ("Zed\tZed\tZed\tMale\tUnspecified\tGivenName\t-", "given name needs a race"),
    ("Zed\tZed\tZed\tMale\tEuropeanAmerican\tGivenName\tnp01", "given name has pair id"),
    ("Ebony\tEbony\tEbony\tFemale\tAfricanAmerican\tGivenName\t-", "duplicate person term"),
])
def test_person_rules(tmp_path, row, rule):
    d = _copy_defaults(tmp_path)
    with open(d / "persons.tsv", "a") as fh:
        fh.write(row + "\n")
    with pytest.raises(LexiconValidationError) as exc:
        load_lexicons(d)
    assert exc.value.rule == rule


def test_template_slot_mismatch(tmp_path):
    d = _copy_defaults(tmp_path)
    with open(d / "templates.tsv", "a") as fh:
        fh.write("12\t{person} feels {emotion}.\tNone\tSubject\tfalse\tfalse\n")
    with pytest.raises(LexiconValidationError, match="emotion slot"):
        load_lexicons(d)


def test_fingerprint_tracks_content(tmp_path, lexicons):
    d = _copy_defaults(tmp_path)
    assert load_lexicons(d).fingerprint == lexicons.fingerprint
    with open(d / "emotions.tsv", "a") as fh:
        fh.write("elated\tJoy\tState\n")
    assert load_lexicons(d).fingerprint != lexicons.fingerprint
