"""Data model for crowd-annotated emotion clips.

A dataset couples three things: clip metadata (actor, sentence, intended
emotion), per-modality annotation vote counts, and per-clip feature
sequences. Everything downstream (difficulty scoring, curricula, training)
operates on this model; raw audio or video is never touched.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import ConfigError, IntegrityError


class Emotion(Enum):
    """The six emotion categories, in fixed alphabetical order."""

    ANG = "ANG"
    DIS = "DIS"
    FEA = "FEA"
    HAP = "HAP"
    NEU = "NEU"
    SAD = "SAD"


EMOTIONS: tuple[Emotion, ...] = tuple(Emotion)
EMOTION_INDEX: dict[Emotion, int] = {e: i for i, e in enumerate(EMOTIONS)}


def parse_emotion(token: str) -> Emotion:
    """Strict parse; tokens must be exactly the six three-letter codes."""
    try:
        return Emotion(token)
    except ValueError:
        raise ValueError(f"unknown emotion token {token!r}") from None


class Modality(Enum):
    AUDIO = "audio"
    VIDEO = "video"
    MULTIMODAL = "multimodal"


def parse_modality(token: str) -> Modality:
    try:
        return Modality(token.lower())
    except ValueError:
        raise ValueError(f"unknown modality token {token!r}") from None


@dataclass(frozen=True)
class Clip:
    clip_id: str
    actor_id: str
    sentence_id: str
    intended: Emotion


@dataclass(frozen=True)
class VoteRecord:
    """Annotation vote counts for one clip under one modality."""

    clip_id: str
    modality: Modality
    counts: dict[Emotion, int]
    n_total: int

    def __post_init__(self):
        missing = [e.value for e in EMOTIONS if e not in self.counts]
        if missing:
            raise IntegrityError(f"clip {self.clip_id}: missing vote counts for {missing}")
        for e in EMOTIONS:
            c = self.counts[e]
            if not isinstance(c, int) or c < 0:
                raise IntegrityError(f"clip {self.clip_id}: bad vote count {c!r} for {e.value}")
        if self.n_total < 1:
            raise IntegrityError(f"clip {self.clip_id}: total ratings must be >= 1")
        total = sum(self.counts[e] for e in EMOTIONS)
        if total != self.n_total:
            raise IntegrityError(
                f"clip {self.clip_id}: votes sum to {total} but N is declared {self.n_total}"
            )

    def proportions(self) -> np.ndarray:
        """Empirical vote distribution over EMOTIONS order."""
        return np.array([self.counts[e] for e in EMOTIONS], dtype=np.float64) / self.n_total


@dataclass(frozen=True)
class FeatureSequence:
    """T x D feature matrix for one clip; D is fixed per dataset."""

    clip_id: str
    frames: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.frames, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise IntegrityError(f"clip {self.clip_id}: features must be a T x D matrix with T, D >= 1")
        if not np.all(np.isfinite(arr)):
            raise IntegrityError(f"clip {self.clip_id}: features contain non-finite values")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "frames", arr)

    @property
    def n_frames(self) -> int:
        return self.frames.shape[0]

    @property
    def dim(self) -> int:
        return self.frames.shape[1]


@dataclass
class Dataset:
    """Immutable-after-construction collection of clips, votes and features.

    Safe to share read-only across workers; loaders and generators are
    single-threaded.
    """

    clips: list[Clip]
    votes: list[VoteRecord]
    features: dict[str, FeatureSequence] = field(default_factory=dict)

    def __post_init__(self):
        self._by_id: dict[str, Clip] = {}
        for clip in self.clips:
            if clip.clip_id in self._by_id:
                raise IntegrityError(f"duplicate clip_id {clip.clip_id!r}")
            self._by_id[clip.clip_id] = clip
        self._votes_by_key: dict[tuple[str, Modality], VoteRecord] = {}
        for rec in self.votes:
            if rec.clip_id not in self._by_id:
                raise IntegrityError(f"vote record references unknown clip {rec.clip_id!r}")
            key = (rec.clip_id, rec.modality)
            if key in self._votes_by_key:
                raise IntegrityError(
                    f"duplicate vote record for clip {rec.clip_id!r}, modality {rec.modality.value}"
                )
            self._votes_by_key[key] = rec
        dim = None
        for clip_id, seq in self.features.items():
            if clip_id not in self._by_id:
                raise IntegrityError(f"features reference unknown clip {clip_id!r}")
            if seq.clip_id != clip_id:
                raise IntegrityError(f"feature record for {seq.clip_id!r} filed under {clip_id!r}")
            if dim is None:
                dim = seq.dim
            elif seq.dim != dim:
                raise IntegrityError(
                    f"clip {clip_id}: feature dimension {seq.dim} differs from dataset dimension {dim}"
                )
        self._feature_dim = dim

    def __len__(self) -> int:
        return len(self.clips)

    @property
    def clip_ids(self) -> list[str]:
        return [c.clip_id for c in self.clips]

    @property
    def feature_dim(self) -> int | None:
        return self._feature_dim

    def clip(self, clip_id: str) -> Clip:
        try:
            return self._by_id[clip_id]
        except KeyError:
            raise IntegrityError(f"unknown clip {clip_id!r}") from None

    def vote(self, clip_id: str, modality: Modality) -> VoteRecord:
        try:
            return self._votes_by_key[(clip_id, modality)]
        except KeyError:
            raise IntegrityError(
                f"clip {clip_id!r} has no vote record for modality {modality.value}"
            ) from None

    def has_vote(self, clip_id: str, modality: Modality) -> bool:
        return (clip_id, modality) in self._votes_by_key

    def modalities(self) -> list[Modality]:
        present = {rec.modality for rec in self.votes}
        return [m for m in Modality if m in present]

    def feature(self, clip_id: str) -> FeatureSequence:
        try:
            return self.features[clip_id]
        except KeyError:
            raise IntegrityError(f"clip {clip_id!r} has no features") from None


def _ceil_count(fraction: float, size: int) -> int:
    # 1e-9 guard so mathematically integral products (0.7 * 10) do not round up
    return max(0, math.ceil(fraction * size - 1e-9))


def split_train_test(
    dataset: Dataset, train_fraction: float, seed: int
) -> tuple[set[str], set[str]]:
    """Stratified split: within each (actor, intended emotion) group, a seeded
    shuffle sends ceil(train_fraction * group_size) clips to train.

    Deterministic for a fixed seed regardless of clip order in the dataset;
    the two sets partition the full clip set.
    """
    if not 0.0 < train_fraction < 1.0:
        raise ConfigError(f"train_fraction must be in (0, 1), got {train_fraction}")
    groups: dict[tuple[str, str], list[str]] = {}
    for clip in dataset.clips:
        groups.setdefault((clip.actor_id, clip.intended.value), []).append(clip.clip_id)
    rng = np.random.default_rng(seed)
    train: set[str] = set()
    test: set[str] = set()
    for key in sorted(groups):
        members = sorted(groups[key])
        order = rng.permutation(len(members))
        n_train = _ceil_count(train_fraction, len(members))
        chosen = {members[i] for i in order[:n_train]}
        train |= chosen
        test |= set(members) - chosen
    return train, test
