"""Grid search over (w_c, w_p, w_s, t) and the train/test experiment protocols.

Every grid point is scored by K=1 matching on a cached component matrix.  For
one weight triple the best IV per row does not depend on the threshold, so a
single top-1 pass serves all thresholds of that triple.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from tnorm import probe
from tnorm.evaluation import EvalReport, GoldDataset, evaluate, gold_columns
from tnorm.matcher import MatchParams, match_all
from tnorm.similarity import ComponentMatrix, SimilarityWeights

log = logging.getLogger(__name__)

PROTOCOLS = ("cv2", "split20", "cross")

# The method is often summarized as "under 10,000 evaluations" for step 0.1,
# but the literal grid has 11^3 * 9 - 9 = 11,970 points; we count honestly.
GRID_NOTE = ("evaluated_points counts every non-zero weight triple at every threshold "
             "(11,970 for the default step-0.1 grid)")


def _axis(start: float, stop: float, step: float) -> tuple[float, ...]:
    n = int(round((stop - start) / step))
    return tuple(round(start + i * step, 10) for i in range(n + 1))


@dataclass(frozen=True)
class GridSpec:
    weight_values: tuple[float, ...] = _axis(0.0, 1.0, 0.1)
    t_values: tuple[float, ...] = _axis(0.1, 0.9, 0.1)

    def __post_init__(self):
        object.__setattr__(self, "weight_values", tuple(self.weight_values))
        object.__setattr__(self, "t_values", tuple(self.t_values))
        w, t = self.weight_values, self.t_values
        if not w or not t:
            raise ValueError("grid axes must be non-empty")
        if any(b <= a for a, b in zip(w, w[1:])) or any(b <= a for a, b in zip(t, t[1:])):
            raise ValueError("grid axes must be strictly ascending")
        if w[0] < 0 or w[-1] > 1 or not any(v > 0 for v in w):
            raise ValueError("weights must lie in [0, 1] with at least one positive value")
        if t[0] <= 0 or t[-1] >= 1:
            raise ValueError("thresholds must lie strictly inside (0, 1)")

    @classmethod
    def with_step(cls, step: float) -> "GridSpec":
        """Weights 0..1 and thresholds step..1-step, both in increments of ``step``."""
        if not 0 < step <= 0.5:
            raise ValueError("step must be in (0, 0.5]")
        return cls(_axis(0.0, 1.0, step), _axis(step, 1.0 - step, step))

    @property
    def size(self) -> int:
        """Grid points evaluated: all weight triples except (0,0,0), times thresholds."""
        n = len(self.weight_values)
        zero = 1 if self.weight_values[0] == 0 else 0
        return (n ** 3 - zero) * len(self.t_values)


@dataclass(frozen=True)
class TunedParams:
    weights: SimilarityWeights
    t: float
    training_f: float
    training_report: EvalReport
    evaluated_points: int
    recomputations: int = 0
    seed: Optional[int] = None

    def match_params(self) -> MatchParams:
        return MatchParams(self.weights, self.t, 1)

    def to_json(self) -> dict:
        return {
            "w_c": self.weights.w_c, "w_p": self.weights.w_p, "w_s": self.weights.w_s,
            "t": self.t, "f_measure": self.training_f,
            "evaluated_points": self.evaluated_points, "seed": self.seed,
            "precision": self.training_report.precision,
            "recall": self.training_report.recall,
            "predicted": self.training_report.predicted,
            "correct": self.training_report.correct,
            "gold_total": self.training_report.gold_total,
            "component_recomputations": self.recomputations,
            "note": GRID_NOTE,
        }

    @classmethod
    def from_json(cls, data: dict) -> "TunedParams":
        report = EvalReport.from_counts(data.get("predicted", 0), data.get("correct", 0),
                                        data.get("gold_total", 0))
        return cls(SimilarityWeights(data["w_c"], data["w_p"], data["w_s"]), data["t"],
                   data.get("f_measure", report.f_measure), report,
                   data.get("evaluated_points", 0), data.get("component_recomputations", 0),
                   data.get("seed"))


class _Search:
    """Scan-order search keeping the first point with the highest F.

    F = 2*correct / (predicted + gold_total) is compared as an exact fraction,
    so equal-F ties never depend on rounding.
    """

    def __init__(self, matrix: ComponentMatrix, gold: GoldDataset):
        rows = set(matrix.oov_index)
        missing = [o for o in gold.oov_words() if o not in rows]
        if missing:
            raise ValueError(f"{len(missing)} gold OOV words are not rows of the matrix, "
                             f"e.g. {missing[0]!r}")
        self.matrix = matrix
        self.gold_total = len(gold)
        self.gold_col = gold_columns(matrix, gold)
        self.points = 0
        self.best: Optional[tuple] = None  # (num, den, weights, t, predicted, correct)

    def offer(self, weights: tuple[float, float, float], t_values: Sequence[float]) -> None:
        best_score, best_col = self.matrix.top1(*weights)
        hit = best_col == self.gold_col
        for t in t_values:
            kept = best_score >= t
            predicted = int(kept.sum())
            correct = int((kept & hit).sum())
            self.points += 1
            num, den = 2 * correct, predicted + self.gold_total
            if self.best is None or num * self.best[1] > self.best[0] * den:
                self.best = (num, den, weights, t, predicted, correct)

    def result(self, seed: Optional[int], recomputations: int) -> TunedParams:
        _, _, weights, t, predicted, correct = self.best
        report = EvalReport.from_counts(predicted, correct, self.gold_total)
        return TunedParams(SimilarityWeights(*weights), t, report.f_measure, report,
                           self.points, recomputations, seed)


def _weight_triples(axes):
    for triple in itertools.product(*axes):
        if any(v > 0 for v in triple):
            yield triple


def grid_search(matrix: ComponentMatrix, gold: GoldDataset, grid: GridSpec = GridSpec(),
                seed: Optional[int] = None) -> TunedParams:
    """Exhaustive F-measure maximization over ``grid`` with K=1 matching.

    Scan order is w_c, w_p, w_s, t (outermost first, each ascending); the
    first maximum wins.
    """
    if len(gold) == 0:
        raise ValueError("gold dataset is empty")
    search = _Search(matrix, gold)
    before = probe.total()
    for triple in _weight_triples([grid.weight_values] * 3):
        search.offer(triple, grid.t_values)
    return search.result(seed, probe.total() - before)


def _refined_axis(center: float, step: float, radius: int, lo: float, hi: float,
                  inclusive: bool) -> list[float]:
    values = [round(center + i * step, 10) for i in range(-radius, radius + 1)]
    if inclusive:
        return [v for v in values if lo <= v <= hi]
    return [v for v in values if lo < v < hi]


def refine(matrix: ComponentMatrix, gold: GoldDataset, coarse: TunedParams,
           step: float = 0.01, radius: int = 5) -> TunedParams:
    """Second, finer grid pass of ``radius`` steps around the coarse optimum.

    The coarse point is evaluated first, so the result is never worse and a
    flat neighbourhood returns the coarse point unchanged.
    """
    search = _Search(matrix, gold)
    before = probe.total()
    w = coarse.weights.as_tuple()
    search.offer(w, [coarse.t])
    axes = [_refined_axis(v, step, radius, 0.0, 1.0, True) for v in w]
    t_axis = _refined_axis(coarse.t, step, radius, 0.0, 1.0, False)
    for triple in _weight_triples(axes):
        search.offer(triple, t_axis)
    search.points += coarse.evaluated_points
    return search.result(coarse.seed, coarse.recomputations + probe.total() - before)


@dataclass
class RunRecord:
    train_words: list[str]
    test_words: list[str]
    tuned: TunedParams
    test_report: EvalReport

    def to_json(self) -> dict:
        return {
            "train_size": len(self.train_words), "test_size": len(self.test_words),
            "w_c": self.tuned.weights.w_c, "w_p": self.tuned.weights.w_p,
            "w_s": self.tuned.weights.w_s, "t": self.tuned.t,
            "train_f_measure": self.tuned.training_f,
            "evaluated_points": self.tuned.evaluated_points,
            **{f"test_{k}": v for k, v in self.test_report.to_dict().items()},
        }


@dataclass
class ExperimentReport:
    protocol: str
    seed: int
    runs: list[RunRecord] = field(default_factory=list)

    def _mean(self, f) -> float:
        return float(np.mean([f(r) for r in self.runs]))

    @property
    def mean_params(self) -> tuple[float, float, float, float]:
        """Arithmetic mean of each run's optimal (w_c, w_p, w_s, t)."""
        return (self._mean(lambda r: r.tuned.weights.w_c), self._mean(lambda r: r.tuned.weights.w_p),
                self._mean(lambda r: r.tuned.weights.w_s), self._mean(lambda r: r.tuned.t))

    @property
    def mean_scores(self) -> tuple[float, float, float]:
        return (self._mean(lambda r: r.test_report.precision),
                self._mean(lambda r: r.test_report.recall),
                self._mean(lambda r: r.test_report.f_measure))

    def table_row(self) -> dict:
        """Averaged row: parameters plus percentages rounded to one decimal."""
        wc, wp, ws, t = self.mean_params
        p, r, f = self.mean_scores
        return {
            "exp": {"cv2": 1, "split20": 2, "cross": 3}[self.protocol],
            "params": [round(wc, 2), round(wp, 2), round(ws, 2), round(t, 2)],
            "Pre": round(100 * p, 1), "Rec": round(100 * r, 1), "Fme": round(100 * f, 1),
        }

    def format_row(self) -> str:
        row = self.table_row()
        params = ", ".join(f"{v:g}" for v in row["params"])
        return f"{row['exp']} | {params} | {row['Pre']:.1f} | {row['Rec']:.1f} | {row['Fme']:.1f}"

    def to_json(self) -> dict:
        return {
            "protocol": self.protocol, "seed": self.seed,
            "table_row": self.table_row(),
            "runs": [r.to_json() for r in self.runs],
            "note": GRID_NOTE,
        }


def split_cv2(words: Sequence[str], rng: np.random.Generator) -> list[tuple[list[str], list[str]]]:
    """Two folds; each serves once as training set, once as test set."""
    perm = [words[i] for i in rng.permutation(len(words))]
    half = len(perm) // 2
    a, b = perm[:half], perm[half:]
    return [(a, b), (b, a)]


def split_train_fraction(words: Sequence[str], rng: np.random.Generator, runs: int = 5,
                         train_fraction: float = 0.2) -> list[tuple[list[str], list[str]]]:
    n_train = max(1, int(round(train_fraction * len(words))))
    if n_train >= len(words):
        raise ValueError("too few gold mappings to hold out a test set")
    out = []
    for _ in range(runs):
        perm = [words[i] for i in rng.permutation(len(words))]
        out.append((perm[:n_train], perm[n_train:]))
    return out


def run_experiment(protocol: str, primary_gold: GoldDataset,
                   secondary_gold: Optional[GoldDataset],
                   matrix_builder: Callable[[list[str]], ComponentMatrix],
                   seed: int = 0, grid: GridSpec = GridSpec(), refined: bool = False,
                   runs: int = 5, train_fraction: float = 0.2) -> ExperimentReport:
    """Tune on training mappings and score the held-out ones.

    ``cv2``: 2-fold cross-validation.  ``split20``: ``runs`` random splits
    tuning on ``train_fraction`` of the mappings.  ``cross``: tune on
    ``secondary_gold``, test on ``primary_gold``.  ``matrix_builder`` is called
    once with every OOV word involved and must return their component matrix.
    """
    if protocol not in PROTOCOLS:
        raise ValueError(f"unknown protocol {protocol!r}; expected one of {PROTOCOLS}")
    if (protocol == "cross") != (secondary_gold is not None):
        raise ValueError("the cross protocol needs a secondary gold set; the others must not get one")
    if len(primary_gold) < 2:
        raise ValueError("primary gold set needs at least two mappings")

    words = sorted(primary_gold.oov_words())
    rng = np.random.default_rng(seed)
    if protocol == "cv2":
        splits = [(tr, te, primary_gold, primary_gold) for tr, te in split_cv2(words, rng)]
    elif protocol == "split20":
        splits = [(tr, te, primary_gold, primary_gold)
                  for tr, te in split_train_fraction(words, rng, runs, train_fraction)]
    else:
        splits = [(sorted(secondary_gold.oov_words()), words, secondary_gold, primary_gold)]

    everything = sorted({w for tr, te, _, _ in splits for w in tr + te})
    matrix = matrix_builder(everything)
    report = ExperimentReport(protocol, seed)
    for train, test, train_src, test_src in splits:
        train_gold = train_src.subset(train)
        tuned = grid_search(matrix.select_rows(train), train_gold, grid, seed)
        if refined:
            tuned = refine(matrix.select_rows(train), train_gold, tuned)
        result = match_all(matrix.select_rows(test), tuned.match_params())
        report.runs.append(RunRecord(list(train), list(test), tuned,
                                     evaluate(result, test_src.subset(test))))
        log.info("%s run %d: train F=%.4f test F=%.4f", protocol, len(report.runs),
                 tuned.training_f, report.runs[-1].test_report.f_measure)
    return report
