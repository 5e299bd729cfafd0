"""Detection power and false-positive rate of the gender test over a grid of injected shifts.

    python3 scripts/run_power_study.py --seeds 100 --shifts 0 0.005 0.01 0.02 0.05
"""

import argparse

from eecbias import generate_corpus, load_lexicons
from eecbias.pairing import Dimension, Task
from eecbias.report import run_analysis
from eecbias.stats import BiasGroup
from eecbias.synth import BiasSpec, synth_predictions


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=100)
    ap.add_argument("--shifts", type=float, nargs="+", default=[0.0, 0.005, 0.01, 0.02, 0.05])
    ap.add_argument("--noise", type=float, default=0.01)
    ap.add_argument("--alpha", type=float, default=0.05)
    args = ap.parse_args()

    corpus = generate_corpus(load_lexicons())
    print(f"{'shift':>8} {'left':>6} {'right':>6} {'n.s.':>6} {'race flags':>10}")
    for shift in args.shifts:
        sets = [synth_predictions(corpus, BiasSpec(gender_shift=shift, noise_sd=args.noise, seed=s),
                                  f"s{s:03d}", Task.VALENCE) for s in range(args.seeds)]
        run = run_analysis(corpus, sets, alpha=args.alpha)
        g = [s.group for s in run.summaries if s.dimension is Dimension.GENDER]
        race = sum(s.test.significant for s in run.summaries if s.dimension is Dimension.RACE)
        print(f"{shift:8.3f} {g.count(BiasGroup.LEFT_HIGHER):6d} {g.count(BiasGroup.RIGHT_HIGHER):6d} "
              f"{g.count(BiasGroup.NOT_SIGNIFICANT):6d} {race:10d}")


if __name__ == "__main__":
    main()
