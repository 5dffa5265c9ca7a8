"""Weighted combination of contextual, phonetic and string similarity.

The overall similarity of an OOV/IV pair is the weighted mean of its defined
components.  An undefined component (no embedding, no phonetic code) simply
drops out of both numerator and denominator.

:class:`ComponentMatrix` caches the three components for every OOV x IV pair
so that matching under new weights or thresholds never recomputes them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from tnorm import _kernels, probe
from tnorm.embeddings import EmbeddingStore, contextual_similarity, contextual_similarity_matrix
from tnorm.phonetics import DEFAULT_MAX_CODE_LEN, encode, phonetic_similarity
from tnorm.textsim import string_similarity, string_similarity_matrix


@dataclass(frozen=True)
class ComponentTriple:
    contextual: Optional[float]
    phonetic: Optional[float]
    string: float


@dataclass(frozen=True)
class SimilarityWeights:
    w_c: float
    w_p: float
    w_s: float

    def __post_init__(self):
        for name in ("w_c", "w_p", "w_s"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name}={value} outside [0, 1]")
        if self.w_c == self.w_p == self.w_s == 0.0:
            raise ValueError("at least one weight must be positive")

    @classmethod
    def parse(cls, text: str) -> "SimilarityWeights":
        """Parse ``"wc,wp,ws"``."""
        parts = text.split(",")
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated weights, got {text!r}")
        return cls(*(float(p) for p in parts))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.w_c, self.w_p, self.w_s)

    def canonical(self) -> tuple[float, float, float]:
        return canonical_weights(self.w_c, self.w_p, self.w_s)


# Combined scores are rounded to multiples of this.  Scores that are equal
# (or equal to a threshold) in exact arithmetic then compare equal despite
# rounding in the weighted sum, e.g. (0.2 * 2/3 + 0.1 * 1/6) / 0.3 == 0.5.
SCORE_QUANTUM = 1e-12
_SCORE_SCALE = 1e12  # 1 / SCORE_QUANTUM, the literal used by the kernels

# ratios closer than this to a fraction with a small denominator snap to it
_SNAP_DENOMINATOR = 10_000
_SNAP_TOL = 1e-12


@lru_cache(maxsize=65536)
def canonical_weights(w_c: float, w_p: float, w_s: float) -> tuple[float, float, float]:
    """Scale-free form of a weight triple: each weight divided by the largest.

    The weighted mean is scale invariant in exact arithmetic but not in
    floating point, where ``c * w`` can shift scores by an ulp and flip ties.
    Ratios are snapped to nearby small-denominator fractions, so (0.1, 0, 0.1),
    (1, 0, 1) and (0.37, 0, 0.37) all combine with exactly (1.0, 0.0, 1.0).
    """
    top = max(w_c, w_p, w_s)
    if top <= 0.0:
        raise ValueError("at least one weight must be positive")
    out = []
    for w in (w_c, w_p, w_s):
        r = w / top
        snapped = Fraction(r).limit_denominator(_SNAP_DENOMINATOR)
        out.append(float(snapped) if abs(float(snapped) - r) <= _SNAP_TOL else r)
    return tuple(out)


def combine(triple: ComponentTriple, weights: SimilarityWeights) -> float:
    """Weighted mean of the defined components; 0 if no weight survives."""
    w_c, w_p, w_s = weights.canonical()
    # Operation order matches _kernels.combine_scalar exactly.
    num = 0.0
    den = 0.0
    if triple.contextual is not None:
        num += w_c * triple.contextual
        den += w_c
    if triple.phonetic is not None:
        num += w_p * triple.phonetic
        den += w_p
    num += w_s * triple.string
    den += w_s
    if den > 0.0:
        return float(np.rint(num / den * _SCORE_SCALE) / _SCORE_SCALE)
    return 0.0


def component_triple(o: str, i: str, store: EmbeddingStore,
                     max_code_len: Optional[int] = DEFAULT_MAX_CODE_LEN) -> ComponentTriple:
    """All three similarities of one pair, computed from scratch."""
    if not o or not i:
        raise ValueError("words must be non-empty")
    return ComponentTriple(
        contextual=contextual_similarity(store, o, i),
        phonetic=phonetic_similarity(o, i, max_code_len),
        string=string_similarity(o, i),
    )


class ComponentMatrix:
    """Dense OOV x IV cache of component similarities.

    Undefined entries of :attr:`contextual` and :attr:`phonetic` hold 0 and
    are flagged False in the matching ``*_defined`` mask.
    """

    def __init__(self, oov_index: Sequence[str], iv_index: Sequence[str],
                 contextual: np.ndarray, contextual_defined: np.ndarray,
                 phonetic: np.ndarray, phonetic_defined: np.ndarray,
                 string: np.ndarray):
        self.oov_index = list(oov_index)
        self.iv_index = list(iv_index)
        shape = (len(self.oov_index), len(self.iv_index))
        arrays = [contextual, contextual_defined, phonetic, phonetic_defined, string]
        if any(np.shape(a) != shape for a in arrays):
            raise ValueError(f"component arrays must have shape {shape}")
        self.contextual = np.ascontiguousarray(contextual, dtype=np.float64)
        self.contextual_defined = np.ascontiguousarray(contextual_defined, dtype=np.bool_)
        self.phonetic = np.ascontiguousarray(phonetic, dtype=np.float64)
        self.phonetic_defined = np.ascontiguousarray(phonetic_defined, dtype=np.bool_)
        self.string = np.ascontiguousarray(string, dtype=np.float64)
        for a in (self.contextual, self.contextual_defined, self.phonetic,
                  self.phonetic_defined, self.string):
            a.flags.writeable = False
        self._oov_pos = {w: j for j, w in enumerate(self.oov_index)}
        # lexicographic rank of each IV column, used for tie-breaking
        order = sorted(range(shape[1]), key=self.iv_index.__getitem__)
        self.iv_rank = np.empty(shape[1], dtype=np.int64)
        self.iv_rank[order] = np.arange(shape[1])

    @classmethod
    def from_triples(cls, oov_index: Sequence[str], iv_index: Sequence[str],
                     triples: Sequence[Sequence[ComponentTriple]]) -> "ComponentMatrix":
        """Assemble a matrix from nested rows of triples (mostly for tests)."""
        ctx = np.array([[t.contextual if t.contextual is not None else 0.0 for t in row] for row in triples])
        ctx_ok = np.array([[t.contextual is not None for t in row] for row in triples], dtype=bool)
        pho = np.array([[t.phonetic if t.phonetic is not None else 0.0 for t in row] for row in triples])
        pho_ok = np.array([[t.phonetic is not None for t in row] for row in triples], dtype=bool)
        sss = np.array([[t.string for t in row] for row in triples])
        shape = (len(oov_index), len(iv_index))
        return cls(oov_index, iv_index, *(a.reshape(shape) for a in (ctx, ctx_ok, pho, pho_ok, sss)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.string.shape

    def row_of(self, oov: str) -> int:
        return self._oov_pos[oov]

    def triple(self, j: int, k: int) -> ComponentTriple:
        return ComponentTriple(
            contextual=float(self.contextual[j, k]) if self.contextual_defined[j, k] else None,
            phonetic=float(self.phonetic[j, k]) if self.phonetic_defined[j, k] else None,
            string=float(self.string[j, k]),
        )

    def select_rows(self, oov_words: Sequence[str]) -> "ComponentMatrix":
        """Sub-matrix restricted to ``oov_words`` (in that order)."""
        rows = np.array([self._oov_pos[w] for w in oov_words], dtype=np.int64)
        return ComponentMatrix(
            [self.oov_index[r] for r in rows], self.iv_index,
            self.contextual[rows], self.contextual_defined[rows],
            self.phonetic[rows], self.phonetic_defined[rows], self.string[rows],
        )

    def combined(self, weights: SimilarityWeights) -> np.ndarray:
        """Overall similarity of every pair under ``weights``."""
        return _kernels.combine_matrix(self.contextual, self.contextual_defined,
                                       self.phonetic, self.phonetic_defined, self.string,
                                       *weights.canonical())

    def top1(self, w_c: float, w_p: float, w_s: float) -> tuple[np.ndarray, np.ndarray]:
        """Per-row best overall score and its IV column (ties: smallest IV word)."""
        if not self.iv_index:
            n = len(self.oov_index)
            return np.full(n, -1.0), np.full(n, -1, dtype=np.int64)
        return _kernels.top1_per_row(self.contextual, self.contextual_defined,
                                     self.phonetic, self.phonetic_defined, self.string,
                                     self.iv_rank, *canonical_weights(w_c, w_p, w_s))


def _code_indices(words, max_code_len, code_pos, codes):
    primary = np.full(len(words), -1, dtype=np.int64)
    alternate = np.full(len(words), -1, dtype=np.int64)
    for r, w in enumerate(words):
        found = encode(w, max_code_len).codes()
        for slot, code in zip((primary, alternate), found):
            if code not in code_pos:
                code_pos[code] = len(codes)
                codes.append(code)
            slot[r] = code_pos[code]
    return primary, alternate


def phonetic_similarity_matrix(rows: Sequence[str], cols: Sequence[str],
                               max_code_len: Optional[int] = DEFAULT_MAX_CODE_LEN
                               ) -> tuple[np.ndarray, np.ndarray]:
    """Dense phonetic similarity plus defined-mask; undefined entries hold 0."""
    row_pos: dict[str, int] = {}
    row_codes: list[str] = []
    col_pos: dict[str, int] = {}
    col_codes: list[str] = []
    a_pri, a_alt = _code_indices(rows, max_code_len, row_pos, row_codes)
    b_pri, b_alt = _code_indices(cols, max_code_len, col_pos, col_codes)
    probe.record("phonetic", len(rows) * len(cols))
    if not row_codes or not col_codes:
        return np.zeros((len(rows), len(cols))), np.zeros((len(rows), len(cols)), dtype=bool)
    code_sim = string_similarity_matrix(row_codes, col_codes)
    sims = _kernels.best_code_similarity(code_sim, a_pri, a_alt, b_pri, b_alt)
    defined = sims >= 0.0
    sims[~defined] = 0.0
    return sims, defined


def build_component_matrix(oov: Sequence[str], iv: Sequence[str], store: EmbeddingStore,
                           max_code_len: Optional[int] = DEFAULT_MAX_CODE_LEN) -> ComponentMatrix:
    """Compute every component similarity between ``oov`` and ``iv`` words.

    Both word lists must be non-empty and free of duplicates.
    """
    oov, iv = list(oov), list(iv)
    if not oov or not iv:
        raise ValueError("OOV and IV word lists must be non-empty")
    if len(set(oov)) != len(oov) or len(set(iv)) != len(iv):
        raise ValueError("OOV and IV word lists must be deduplicated")
    ctx, ctx_ok = contextual_similarity_matrix(store, oov, iv)
    pho, pho_ok = phonetic_similarity_matrix(oov, iv, max_code_len)
    sss = string_similarity_matrix(oov, iv)
    return ComponentMatrix(oov, iv, ctx, ctx_ok, pho, pho_ok, sss)
