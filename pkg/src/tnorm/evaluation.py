"""Precision, recall and F-measure against gold OOV -> IV mappings."""

from __future__ import annotations

import csv
import logging
from dataclasses import asdict, dataclass
from os import PathLike
from typing import Iterable, Mapping, Sequence, TextIO, Union

import numpy as np

from tnorm.matcher import MatchParams, MatchResult, match_all
from tnorm.similarity import ComponentMatrix, SimilarityWeights
from tnorm.textsim import normalize_word

log = logging.getLogger(__name__)

SWEEP_HEADER = ["t", "precision", "recall", "f_measure", "predicted", "correct", "gold_total"]


class GoldDataset:
    """One gold IV word per OOV word."""

    def __init__(self, mappings: Mapping[str, str]):
        for oov, iv in mappings.items():
            if oov == iv:
                raise ValueError(f"gold OOV word {oov!r} maps to itself")
        self.mappings = dict(mappings)

    def __len__(self) -> int:
        return len(self.mappings)

    def __contains__(self, oov: object) -> bool:
        return oov in self.mappings

    def __getitem__(self, oov: str) -> str:
        return self.mappings[oov]

    def oov_words(self) -> list[str]:
        return list(self.mappings)

    def iv_words(self) -> set[str]:
        return set(self.mappings.values())

    def subset(self, oov_words: Iterable[str]) -> "GoldDataset":
        return GoldDataset({o: self.mappings[o] for o in oov_words})


def load_gold(source: Union[str, PathLike, TextIO]) -> GoldDataset:
    """Read ``oov<TAB>iv`` lines.

    Identity mappings, multi-token entries and repeated OOV words are skipped
    with a warning; any other malformed line is an error.
    """
    if isinstance(source, (str, PathLike)):
        with open(source, encoding="utf-8") as fh:
            return _parse_gold(fh, str(source))
    return _parse_gold(source, getattr(source, "name", "<gold>"))


def _parse_gold(lines: Iterable[str], name: str) -> GoldDataset:
    mappings: dict[str, str] = {}
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ValueError(f"{name}:{lineno}: expected oov<TAB>iv")
        oov, iv = normalize_word(parts[0]), normalize_word(parts[1])
        if not oov or not iv:
            raise ValueError(f"{name}:{lineno}: empty field")
        if any(ch.isspace() for ch in oov + iv):
            log.warning("%s:%d: multi-token mapping skipped", name, lineno)
        elif oov == iv:
            log.warning("%s:%d: identity mapping %r skipped", name, lineno, oov)
        elif oov in mappings:
            log.warning("%s:%d: repeated OOV %r skipped", name, lineno, oov)
        else:
            mappings[oov] = iv
    return GoldDataset(mappings)


@dataclass(frozen=True)
class EvalReport:
    precision: float
    recall: float
    f_measure: float
    predicted: int
    correct: int
    gold_total: int

    @classmethod
    def from_counts(cls, predicted: int, correct: int, gold_total: int) -> "EvalReport":
        # precision is 0 (not undefined) when nothing was predicted
        p = correct / predicted if predicted else 0.0
        r = correct / gold_total if gold_total else 0.0
        f = 2 * p * r / (p + r) if p + r > 0 else 0.0
        return cls(p, r, f, int(predicted), int(correct), int(gold_total))

    def to_dict(self) -> dict:
        return asdict(self)


def evaluate(result: MatchResult, gold: GoldDataset) -> EvalReport:
    """Score rank-1 predictions of a ``k == 1`` match result."""
    if result.k != 1:
        raise ValueError("evaluation is defined for single (k=1) mappings only")
    best = result.best()
    correct = sum(1 for oov, iv in best.items() if gold.mappings.get(oov) == iv)
    return EvalReport.from_counts(len(best), correct, len(gold))


def gold_columns(matrix: ComponentMatrix, gold: GoldDataset) -> np.ndarray:
    """Column of each row's gold IV word; -2 where unreachable or not gold."""
    col_of = {w: k for k, w in enumerate(matrix.iv_index)}
    return np.array([col_of.get(gold.mappings.get(o, ""), -2) for o in matrix.oov_index],
                    dtype=np.int64)


def threshold_sweep(matrix: ComponentMatrix, weights: SimilarityWeights, gold: GoldDataset,
                    t_values: Sequence[float]) -> list[tuple[float, EvalReport]]:
    """Evaluate K=1 matching at each threshold, reusing one top-1 pass."""
    t_values = list(t_values)
    if any(b <= a for a, b in zip(t_values, t_values[1:])):
        raise ValueError("t_values must be strictly ascending")
    for t in t_values:
        MatchParams(weights, t)  # validates the range
    best, col = matrix.top1(*weights.as_tuple())
    hit = col == gold_columns(matrix, gold)
    out = []
    for t in t_values:
        kept = best >= t
        out.append((t, EvalReport.from_counts(int(kept.sum()), int((kept & hit).sum()), len(gold))))
    return out


def direct_sweep(matrix: ComponentMatrix, weights: SimilarityWeights, gold: GoldDataset,
                 t_values: Sequence[float]) -> list[tuple[float, EvalReport]]:
    """Same as :func:`threshold_sweep` but re-matching at every threshold."""
    return [(t, evaluate(match_all(matrix, MatchParams(weights, t)), gold)) for t in t_values]


def write_sweep_csv(rows: Sequence[tuple[float, EvalReport]], out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for t, rep in rows:
        writer.writerow([f"{t:g}", f"{rep.precision:.6f}", f"{rep.recall:.6f}",
                         f"{rep.f_measure:.6f}", rep.predicted, rep.correct, rep.gold_total])
