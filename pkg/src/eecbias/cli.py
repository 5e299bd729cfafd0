"""Command-line entry point: generate, validate, synth, analyze, report."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .corpus import CorpusFormatError, emit_corpus, expected_corpus_size, generate_corpus, read_corpus
from .lexicons import LexiconError, load_lexicons
from .pairing import PairingIntegrityError, Task, build_gender_comparisons, build_race_comparisons, dump_units
from .predictions import PredictionError, check_rows, parse_prediction_csv, parse_prediction_filename, write_predictions
from .report import AnalysisError, load_prediction_dir, read_summaries, render_report, run_analysis, write_outputs
from .stats import StatsContractError
from .synth import BiasSpec, synth_predictions

log = logging.getLogger("eecbias")

EXIT_OK, EXIT_VALIDATION, EXIT_IO = 0, 1, 2
CORPUS_FILENAME = "eec.csv"

VALIDATION_ERRORS = (LexiconError, CorpusFormatError, PredictionError, PairingIntegrityError,
                     StatsContractError, AnalysisError, ValueError)


@dataclass
class RunConfig:
    lexicons: Optional[Path] = None
    persons: Optional[Path] = None
    emotions: Optional[Path] = None
    templates: Optional[Path] = None
    predictions: Optional[Path] = None
    tasks: tuple[Task, ...] = tuple(Task)
    subset: str = "full"
    alpha: float = 0.05
    corrections: Optional[int] = None
    out: Path = Path(".")
    fmt: str = "csv"

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"--alpha must lie in (0, 1), got {self.alpha}")
        if self.corrections is not None and self.corrections < 1:
            raise ValueError("--corrections must be >= 1")

    def lexicon_set(self):
        return load_lexicons(self.lexicons, persons=self.persons, emotions=self.emotions,
                             templates=self.templates)


def _tasks(value: str) -> tuple[Task, ...]:
    return tuple(Task) if value == "all" else (Task(value),)


def config_from_args(args) -> RunConfig:
    return RunConfig(
        lexicons=args.lexicons, persons=args.persons, emotions=args.emotions, templates=args.templates,
        predictions=getattr(args, "predictions", None),
        tasks=_tasks(getattr(args, "task", "all")),
        subset=getattr(args, "subset", "full"),
        alpha=getattr(args, "alpha", 0.05),
        corrections=getattr(args, "corrections", None),
        out=args.out, fmt=getattr(args, "format", "csv"),
    )


def cmd_generate(cfg: RunConfig) -> int:
    lex = cfg.lexicon_set()
    corpus = generate_corpus(lex)
    cfg.out.mkdir(parents=True, exist_ok=True)
    path = emit_corpus(corpus, cfg.out / CORPUS_FILENAME)
    print(f"wrote {len(corpus)} sentences to {path}")
    return EXIT_OK


def cmd_synth(cfg: RunConfig, args) -> int:
    corpus = generate_corpus(cfg.lexicon_set())
    cfg.out.mkdir(parents=True, exist_ok=True)
    count = args.count
    for i in range(count):
        system_id = args.system if count == 1 else f"{args.system}-{i:03d}"
        for task in cfg.tasks:
            spec = BiasSpec(gender_shift=args.gender_shift, race_shift=args.race_shift,
                            noise_sd=args.noise, seed=args.seed + i * len(Task) + list(Task).index(task))
            path = write_predictions(synth_predictions(corpus, spec, system_id, task), corpus.ids, cfg.out)
            log.info("wrote %s", path)
    print(f"wrote {count * len(cfg.tasks)} prediction files to {cfg.out}")
    return EXIT_OK


def validate_diagnostics(cfg: RunConfig, corpus_file: Optional[Path] = None) -> list[dict]:
    diags: list[dict] = []
    try:
        lex = cfg.lexicon_set()
    except LexiconError as exc:
        return [{"kind": "lexicon", "message": str(exc)}]
    corpus = generate_corpus(lex)
    expected = expected_corpus_size(lex)
    if len(corpus) != expected:
        diags.append({"kind": "integrity", "message": f"corpus has {len(corpus)} sentences, expected {expected}"})
    with tempfile.TemporaryDirectory() as tmp:
        path = emit_corpus(corpus, Path(tmp) / CORPUS_FILENAME)
        again = read_corpus(path, lex)
        if again != corpus or again.fingerprint != corpus.fingerprint:
            diags.append({"kind": "roundtrip", "message": "corpus does not survive emit/read"})
    if corpus_file is not None:
        try:
            stored = read_corpus(corpus_file, lex)
        except CorpusFormatError as exc:
            diags.append({"kind": "corpus", "message": str(exc)})
        else:
            if len(stored) != expected:
                diags.append({"kind": "integrity", "file": str(corpus_file),
                              "message": f"corpus file has {len(stored)} sentences, expected {expected}"})
    try:
        build_gender_comparisons(corpus)
        build_race_comparisons(corpus)
    except PairingIntegrityError as exc:
        diags.append({"kind": "pairing", "message": str(exc)})
    if cfg.predictions is not None:
        if not cfg.predictions.is_dir():
            raise FileNotFoundError(f"predictions directory {cfg.predictions} does not exist")
        for path in sorted(cfg.predictions.glob("*.csv")):
            try:
                parse_prediction_filename(path.name)
                rows = parse_prediction_csv(path.read_text(encoding="utf-8"))
            except PredictionError as exc:
                diags.append({"file": path.name, "kind": "format", "message": str(exc)})
                continue
            for d in check_rows(rows, corpus.ids):
                diags.append({"file": path.name, **d.as_dict()})
    return diags


def cmd_validate(cfg: RunConfig, corpus_file: Optional[Path] = None) -> int:
    diags = validate_diagnostics(cfg, corpus_file)
    print(json.dumps(diags, indent=1))
    return EXIT_VALIDATION if diags else EXIT_OK


def cmd_analyze(cfg: RunConfig, dump: Optional[Path] = None) -> int:
    if cfg.predictions is None:
        raise ValueError("analyze needs --predictions DIR")
    corpus = generate_corpus(cfg.lexicon_set())
    sets, diags = load_prediction_dir(corpus, cfg.predictions, cfg.tasks)
    for d in diags:
        log.warning("skipping %s: %s", d["file"], d["message"])
    run = run_analysis(corpus, sets, subset=cfg.subset, alpha=cfg.alpha,
                       corrections=cfg.corrections, diagnostics=diags)
    write_outputs(run, cfg.out, cfg.fmt)
    if dump is not None:
        dump_units(build_gender_comparisons(corpus) + build_race_comparisons(corpus), dump)
    print(f"analyzed {len(sets)} prediction sets; threshold {run.alpha}/{run.corrections} "
          f"= {run.threshold:.6e}; results in {cfg.out}")
    return EXIT_OK


def cmd_report(cfg: RunConfig) -> int:
    meta = json.loads((cfg.out / "meta.json").read_text(encoding="utf-8"))
    text = render_report(read_summaries(cfg.out), meta)
    (cfg.out / "report.txt").write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eecbias", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--lexicons", type=Path, help="directory with persons/emotions/templates .tsv")
        sp.add_argument("--persons", type=Path)
        sp.add_argument("--emotions", type=Path)
        sp.add_argument("--templates", type=Path)
        sp.add_argument("--out", type=Path, default=Path("."))

    def task_arg(sp):
        sp.add_argument("--task", default="all", choices=[t.value for t in Task] + ["all"])

    common(sub.add_parser("generate", help="write the corpus as eec.csv"))

    sp = sub.add_parser("validate", help="check lexicons, corpus round-trip and prediction files")
    common(sp)
    sp.add_argument("--predictions", type=Path)
    sp.add_argument("--corpus", type=Path, help="existing corpus file to check")

    sp = sub.add_parser("synth", help="write synthetic prediction files with injected bias")
    common(sp)
    task_arg(sp)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--gender-shift", type=float, default=0.0)
    sp.add_argument("--race-shift", type=float, default=0.0)
    sp.add_argument("--noise", type=float, default=0.01)
    sp.add_argument("--system", default="synthetic")
    sp.add_argument("--count", type=int, default=1, help="number of systems (seeds advance per system)")

    sp = sub.add_parser("analyze", help="bias statistics for a directory of prediction files")
    common(sp)
    task_arg(sp)
    sp.add_argument("--predictions", type=Path, required=True)
    sp.add_argument("--subset", default="full", choices=["full", "neutral", "emotion-matched"])
    sp.add_argument("--alpha", type=float, default=0.05)
    sp.add_argument("--corrections", type=int)
    sp.add_argument("--format", default="csv", choices=["csv", "json"])
    sp.add_argument("--dump-units", type=Path, help="write comparison units as JSON lines")

    common(sub.add_parser("report", help="re-render report.txt from saved results in --out"))
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg = config_from_args(args)
        if args.command == "generate":
            return cmd_generate(cfg)
        if args.command == "validate":
            return cmd_validate(cfg, args.corpus)
        if args.command == "synth":
            return cmd_synth(cfg, args)
        if args.command == "analyze":
            return cmd_analyze(cfg, args.dump_units)
        return cmd_report(cfg)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
