import json

import pytest

from eecbias.cli import main
from eecbias.lexicons import default_lexicon_dir


def run(*argv):
    return main([str(a) for a in argv])


@pytest.fixture(scope="module")
def synth_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("preds")
    assert run("synth", "--out", d, "--task", "anger", "--system", "fair", "--seed", "1") == 0
    assert run("synth", "--out", d, "--task", "anger", "--system", "fem", "--seed", "2",
               "--gender-shift", "0.05") == 0
    assert run("synth", "--out", d, "--task", "anger", "--system", "male", "--seed", "3",
               "--gender-shift", "-0.05") == 0
    return d


def test_generate(tmp_path, capsys):
    assert run("generate", "--out", tmp_path) == 0
    first = (tmp_path / "eec.csv").read_bytes()
    assert first.count(b"\n") == 8641
    assert run("generate", "--out", tmp_path) == 0
    assert (tmp_path / "eec.csv").read_bytes() == first
    assert "8640" in capsys.readouterr().out


def test_generate_bad_templates(tmp_path, capsys):
    bad = tmp_path / "custom.tsv"
    bad.write_text("id\tpattern\temotion_register\tperson_role\thas_reflexive\thas_article_before_emotion\n"
                   "1\t{person} feels.\tNone\n")
    assert run("generate", "--templates", bad, "--out", tmp_path) == 1
    assert "custom.tsv:2" in capsys.readouterr().err


def test_generate_missing_lexicon_file(tmp_path):
    assert run("generate", "--templates", tmp_path / "nope.tsv", "--out", tmp_path) == 2


def test_validate_clean(capsys):
    assert run("validate") == 0
    assert json.loads(capsys.readouterr().out) == []


def test_validate_missing_ids(tmp_path, synth_dir, capsys):
    src = (synth_dir / "fair.anger.csv").read_text().splitlines()
    (tmp_path / "short.anger.csv").write_text("\n".join(src[:-10]) + "\n")
    assert run("validate", "--predictions", tmp_path) == 1
    diags = json.loads(capsys.readouterr().out)
    assert len(diags) == 1 and diags[0]["kind"] == "missing" and len(diags[0]["ids"]) == 10


def test_validate_corpus_count(tmp_path, capsys):
    run("generate", "--out", tmp_path)
    lines = (tmp_path / "eec.csv").read_text().splitlines()
    (tmp_path / "eec.csv").write_text("\n".join(lines[:-5]) + "\n")
    capsys.readouterr()
    assert run("validate", "--corpus", tmp_path / "eec.csv") == 1
    diags = json.loads(capsys.readouterr().out)
    assert [d["kind"] for d in diags] == ["integrity"]


def test_analyze_three_groups(tmp_path, synth_dir):
    out = tmp_path / "res"
    assert run("analyze", "--predictions", synth_dir, "--out", out) == 0
    groups = (out / "groups.csv").read_text().splitlines()
    gender_anger = [g.split(",") for g in groups[1:] if g.startswith("anger,gender")]
    assert [int(r[3]) for r in gender_anger] == [1, 1, 1, 3]
    summary = (out / "summary.csv").read_text().splitlines()
    assert summary[0].startswith("system,task,dimension,n,mean_delta,t,df,p,significant,group")
    plot = (out / "plot_data.csv").read_text().splitlines()
    assert len(plot) == 1 + 3 * (1584 + 144)
    meta = json.loads((out / "meta.json").read_text())
    assert meta["corrections"] == 6


def test_analyze_neutral_subset(tmp_path, synth_dir):
    out = tmp_path / "res"
    assert run("analyze", "--predictions", synth_dir, "--out", out, "--subset", "neutral",
               "--format", "json") == 0
    rows = json.loads((out / "summary.json").read_text())
    assert {r["n"] for r in rows if r["dimension"] == "gender"} == {44}
    assert {r["n"] for r in rows if r["dimension"] == "race"} == {4}


def test_analyze_threshold_header(tmp_path, synth_dir):
    out = tmp_path / "res"
    assert run("analyze", "--predictions", synth_dir, "--out", out,
               "--alpha", "0.05", "--corrections", "438") == 0
    header = (out / "report.txt").read_text().splitlines()[0]
    assert "threshold = 0.05/438 = 1.141553e-04" in header


def test_analyze_skips_invalid(tmp_path, synth_dir, capsys):
    d = tmp_path / "p"
    d.mkdir()
    (d / "good.anger.csv").write_text((synth_dir / "fem.anger.csv").read_text())
    (d / "bad.anger.csv").write_text("ID,Score\nt01-p01-e01,0.5\n")
    assert run("analyze", "--predictions", d, "--out", tmp_path / "res") == 0
    diags = json.loads((tmp_path / "res" / "diagnostics.json").read_text())
    assert diags[0]["file"] == "bad.anger.csv"
    (d / "good.anger.csv").unlink()
    assert run("analyze", "--predictions", d, "--out", tmp_path / "res2") == 1


def test_analyze_emotion_matched_skips_valence(tmp_path, synth_dir):
    d = tmp_path / "p"
    d.mkdir()
    (d / "fem.anger.csv").write_text((synth_dir / "fem.anger.csv").read_text())
    (d / "fem.valence.csv").write_text((synth_dir / "fem.anger.csv").read_text())
    out = tmp_path / "res"
    assert run("analyze", "--predictions", d, "--out", out, "--subset", "emotion-matched") == 0
    summary = (out / "summary.csv").read_text().splitlines()[1:]
    assert all(",anger," in s for s in summary)
    assert {s.split(",")[3] for s in summary if ",gender," in s} == {"385"}


def test_analyze_missing_dir(tmp_path):
    assert run("analyze", "--predictions", tmp_path / "nope", "--out", tmp_path) == 2


def test_report_rerender(tmp_path, synth_dir, capsys):
    out = tmp_path / "res"
    run("analyze", "--predictions", synth_dir, "--out", out)
    original = (out / "report.txt").read_text()
    (out / "report.txt").unlink()
    capsys.readouterr()
    assert run("report", "--out", out) == 0
    assert (out / "report.txt").read_text() == original
    assert "F=M not significant" in capsys.readouterr().out


def test_dump_units(tmp_path, synth_dir):
    run("analyze", "--predictions", synth_dir, "--out", tmp_path, "--dump-units", tmp_path / "u.jsonl")
    assert len((tmp_path / "u.jsonl").read_text().splitlines()) == 1584 + 144


def test_lexicon_dir_flag(tmp_path):
    for f in default_lexicon_dir().glob("*.tsv"):
        (tmp_path / f.name).write_text(f.read_text())
    with open(tmp_path / "emotions.tsv", "a") as fh:
        fh.write("elated\tJoy\tState\n")
    assert run("generate", "--lexicons", tmp_path, "--out", tmp_path) == 0
    # 60 persons x 21 state words x 4 templates + 60 x 20 x 3 + 60 x 4
    assert (tmp_path / "eec.csv").read_text().count("\n") == 1 + 60 * 21 * 4 + 60 * 20 * 3 + 240
