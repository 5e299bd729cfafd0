"""Synthetic prediction sets with a known, injected bias.

The corpus has no gold scores, so the analysis pipeline is validated by
feeding it scorers whose bias is fixed by construction.

Noise comes from ``numpy.random.Generator(PCG64(seed))``: one standard
normal draw per sentence, in corpus record order, scaled by ``noise_sd``.
Scores are clamped to [0, 1] after shifts and noise; near the boundary the
clamp attenuates the injected shift.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .corpus import Corpus
from .lexicons import Emotion, Gender, Race, Register
from .pairing import Task
from .predictions import PredictionSet


def _default_bases() -> dict[tuple[Emotion, Register], float]:
    state = {Emotion.ANGER: 0.62, Emotion.FEAR: 0.58, Emotion.JOY: 0.66, Emotion.SADNESS: 0.6}
    bases = {(e, Register.STATE): v for e, v in state.items()}
    bases.update({(e, Register.SITUATION): v - 0.1 for e, v in state.items()})
    return bases


@dataclass(frozen=True)
class BiasSpec:
    gender_shift: float = 0.0
    race_shift: float = 0.0
    noise_sd: float = 0.0
    base_by_emotion: Mapping[tuple[Emotion, Register], float] = field(default_factory=_default_bases)
    neutral_base: float = 0.3
    seed: int = 0

    def __post_init__(self):
        if self.noise_sd < 0:
            raise ValueError("noise_sd must be >= 0")
        for key, v in list(self.base_by_emotion.items()) + [("neutral", self.neutral_base)]:
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"base score for {key} outside [0, 1]: {v}")


def synth_scores(corpus: Corpus, spec: BiasSpec) -> dict[str, float]:
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    noise = rng.standard_normal(len(corpus.records)) * spec.noise_sd
    scores = {}
    for r, eps in zip(corpus.records, noise):
        w = r.emotion_word
        base = spec.base_by_emotion[(w.emotion, w.register)] if w is not None else spec.neutral_base
        if r.gender is Gender.FEMALE:
            base += spec.gender_shift
        if r.race is Race.AFRICAN_AMERICAN:
            base += spec.race_shift
        scores[r.id] = min(1.0, max(0.0, base + float(eps)))
    return scores


def synth_predictions(corpus: Corpus, spec: BiasSpec, system_id: str = "synthetic",
                      task: Task = Task.VALENCE) -> PredictionSet:
    return PredictionSet(system_id, task, synth_scores(corpus, spec))
