"""Thresholded K-nearest-neighbour matching of OOV words to IV words.

Each OOV word keeps its ``K`` most similar IV words whose overall similarity
reaches the threshold.  Ties are broken by the IV word itself (ascending), so
results never depend on column order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Sequence, TextIO

import numpy as np

from tnorm.similarity import ComponentMatrix, ComponentTriple, SimilarityWeights, combine


@dataclass(frozen=True)
class MatchParams:
    weights: SimilarityWeights
    threshold: float
    k: int = 1

    def __post_init__(self):
        if not 0.0 < self.threshold < 1.0:
            raise ValueError(f"threshold must lie strictly inside (0, 1), got {self.threshold}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")


@dataclass
class MatchResult:
    """Ranked IV candidates per OOV word; unmatched words map to ``[]``."""

    matches: dict[str, list[tuple[str, float]]]
    k: int = 1
    _best: Optional[dict[str, str]] = field(default=None, repr=False, compare=False)

    def __getitem__(self, oov: str) -> list[tuple[str, float]]:
        return self.matches[oov]

    def __contains__(self, oov: object) -> bool:
        return oov in self.matches

    def __iter__(self) -> Iterator[str]:
        return iter(self.matches)

    def __len__(self) -> int:
        return len(self.matches)

    def items(self):
        return self.matches.items()

    def best(self) -> dict[str, str]:
        """Rank-1 IV word of every matched OOV word."""
        if self._best is None:
            self._best = {o: c[0][0] for o, c in self.matches.items() if c}
        return self._best

    @property
    def matched_count(self) -> int:
        return sum(1 for c in self.matches.values() if c)

    def write_tsv(self, out: TextIO) -> None:
        """One ``oov<TAB>iv<TAB>score`` line per emitted pair."""
        for oov, cands in self.matches.items():
            for iv, score in cands:
                out.write(f"{oov}\t{iv}\t{score:.6f}\n")

    @classmethod
    def read_tsv(cls, lines: Iterable[str], name: str = "<predictions>") -> "MatchResult":
        matches: dict[str, list[tuple[str, float]]] = {}
        for lineno, line in enumerate(lines, 1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ValueError(f"{name}:{lineno}: expected oov<TAB>iv<TAB>score")
            try:
                score = float(parts[2])
            except ValueError:
                raise ValueError(f"{name}:{lineno}: bad score {parts[2]!r}") from None
            matches.setdefault(parts[0].lower(), []).append((parts[1].lower(), score))
        k = max((len(c) for c in matches.values()), default=1)
        return cls(matches, k=k)


def _rank(scores: np.ndarray, iv_index: Sequence[str], iv_rank: np.ndarray,
          params: MatchParams) -> list[tuple[str, float]]:
    keep = np.flatnonzero(scores >= params.threshold)
    if keep.size == 0:
        return []
    order = np.lexsort((iv_rank[keep], -scores[keep]))[: params.k]
    return [(iv_index[c], float(scores[c])) for c in keep[order]]


def _lexicographic_rank(iv_index: Sequence[str]) -> np.ndarray:
    order = sorted(range(len(iv_index)), key=iv_index.__getitem__)
    rank = np.empty(len(iv_index), dtype=np.int64)
    rank[order] = np.arange(len(iv_index))
    return rank


def match_word(row: Sequence[ComponentTriple], iv_index: Sequence[str],
               params: MatchParams) -> list[tuple[str, float]]:
    """Top-``k`` IV words for one OOV row of component triples."""
    if len(row) != len(iv_index):
        raise ValueError("row length must equal the number of IV words")
    scores = np.array([combine(t, params.weights) for t in row], dtype=np.float64)
    return _rank(scores, iv_index, _lexicographic_rank(iv_index), params)


def match_all(matrix: ComponentMatrix, params: MatchParams) -> MatchResult:
    """Match every OOV row of ``matrix``; output follows the matrix row order."""
    iv = matrix.iv_index
    if params.k == 1:
        best, col = matrix.top1(*params.weights.as_tuple())
        matches = {
            o: ([(iv[c], float(s))] if c >= 0 and s >= params.threshold else [])
            for o, s, c in zip(matrix.oov_index, best, col)
        }
        return MatchResult(matches, k=1)
    scores = matrix.combined(params.weights)
    matches = {o: _rank(scores[j], iv, matrix.iv_rank, params)
               for j, o in enumerate(matrix.oov_index)}
    return MatchResult(matches, k=params.k)


def apply_normalization(tokens: Iterable[str], iv_set: set[str] | frozenset[str],
                        result: MatchResult | Mapping[str, list]) -> list[str]:
    """Replace each matched OOV token by its rank-1 IV word."""
    out = []
    for tok in tokens:
        if tok in iv_set:
            out.append(tok)
            continue
        cands = result[tok] if tok in result else []
        out.append(cands[0][0] if cands else tok)
    return out
