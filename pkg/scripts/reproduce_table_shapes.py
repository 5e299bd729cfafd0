"""Build a small mixed population of synthetic systems and print the group tables."""

import argparse
import random

from eecbias import generate_corpus, load_lexicons
from eecbias.pairing import Task
from eecbias.report import render_report, run_analysis, run_meta
from eecbias.synth import BiasSpec, synth_predictions


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--systems", type=int, default=12)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--task", default="anger", choices=[t.value for t in Task])
    args = ap.parse_args()

    rng = random.Random(args.seed)
    corpus = generate_corpus(load_lexicons())
    sets = []
    for i in range(args.systems):
        spec = BiasSpec(gender_shift=rng.choice([0.0, 0.0, 0.02, -0.02]),
                        race_shift=rng.choice([0.0, 0.01, -0.01]),
                        noise_sd=0.02, seed=args.seed + i)
        sets.append(synth_predictions(corpus, spec, f"sys{i:02d}", Task(args.task)))
    run = run_analysis(corpus, sets)
    print(render_report(run.summaries, run_meta(run)), end="")


if __name__ == "__main__":
    main()
