"""Pre-trained word vectors in the plain text format and contextual similarity."""

from __future__ import annotations

import io
import logging
from os import PathLike
from typing import BinaryIO, Iterable, Mapping, Optional, TextIO, Union

import numpy as np

from tnorm import _kernels, probe
from tnorm.textsim import normalize_word

log = logging.getLogger(__name__)


class EmbeddingFormatError(ValueError):
    """Malformed vector file; the message names the offending line."""


class EmbeddingStore:
    """Immutable word -> vector table with precomputed norms.

    Zero-norm vectors are never stored, so every stored word has a
    well-defined cosine with every other.
    """

    def __init__(self, words: Iterable[str], vectors: np.ndarray, *,
                 duplicates: int = 0, skipped_zero: int = 0):
        vectors = np.ascontiguousarray(vectors, dtype=np.float64)
        if vectors.ndim != 2:
            raise ValueError("vectors must be a 2-d array")
        words = list(words)
        if len(words) != vectors.shape[0]:
            raise ValueError("one vector per word required")
        norms = np.sqrt(np.einsum("ij,ij->i", vectors, vectors))
        if np.any(norms == 0):
            raise ValueError("zero-norm vectors cannot be stored")
        self.index = {w: i for i, w in enumerate(words)}
        if len(self.index) != len(words):
            raise ValueError("duplicate words")
        self.vectors = vectors
        self.norms = norms
        self.vectors.flags.writeable = False
        self.norms.flags.writeable = False
        self.duplicates = duplicates
        self.skipped_zero = skipped_zero

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Iterable[float]]) -> "EmbeddingStore":
        words = [normalize_word(w) for w in mapping]
        return cls(words, np.array([list(v) for v in mapping.values()], dtype=np.float64))

    @property
    def dimension(self) -> int:
        return self.vectors.shape[1]

    def __len__(self) -> int:
        return len(self.index)

    def __contains__(self, word: str) -> bool:
        return word in self.index

    def row(self, word: str) -> int:
        """Row of ``word`` in :attr:`vectors`, or -1 when absent."""
        return self.index.get(word, -1)

    def vector(self, word: str) -> np.ndarray:
        return self.vectors[self.index[word]]


def _open_text(source) -> tuple[TextIO, bool]:
    if isinstance(source, (str, PathLike)):
        return open(source, encoding="utf-8"), True
    if isinstance(source, io.TextIOBase):
        return source, False
    return io.TextIOWrapper(source, encoding="utf-8"), False


def load_embeddings(source: Union[str, PathLike, BinaryIO, TextIO]) -> EmbeddingStore:
    """Read vectors in the word2vec/GloVe text format.

    An optional ``<count> <dimension>`` header line is recognized.  Words
    are lowercased; the first occurrence of a duplicate wins.  Zero vectors
    are skipped with a warning.

    Raises:
        EmbeddingFormatError: on a dimension mismatch, an unparseable or
            non-finite number, or a file without vectors.
    """
    stream, owned = _open_text(source)
    name = getattr(stream, "name", "<stream>")
    words: list[str] = []
    rows: list[np.ndarray] = []
    seen: set[str] = set()
    dim: Optional[int] = None
    duplicates = skipped_zero = 0
    try:
        for lineno, line in enumerate(stream, 1):
            parts = line.split()
            if not parts:
                continue
            if lineno == 1 and len(parts) == 2 and all(p.isdigit() for p in parts):
                dim = int(parts[1])
                continue
            if len(parts) < 2:
                raise EmbeddingFormatError(f"{name}:{lineno}: no vector values")
            if dim is None:
                dim = len(parts) - 1
            elif len(parts) - 1 != dim:
                raise EmbeddingFormatError(
                    f"{name}:{lineno}: expected {dim} values, found {len(parts) - 1}")
            try:
                vec = np.array([float(x) for x in parts[1:]], dtype=np.float64)
            except ValueError as exc:
                raise EmbeddingFormatError(f"{name}:{lineno}: {exc}") from None
            if not np.all(np.isfinite(vec)):
                raise EmbeddingFormatError(f"{name}:{lineno}: non-finite value")
            word = normalize_word(parts[0])
            if word in seen:
                duplicates += 1
                continue
            if float(np.dot(vec, vec)) == 0.0:
                skipped_zero += 1
                log.warning("%s:%d: zero vector for %r skipped", name, lineno, word)
                continue
            seen.add(word)
            words.append(word)
            rows.append(vec)
    finally:
        if owned:
            stream.close()
    if not rows:
        raise EmbeddingFormatError(f"{name}: no vectors found")
    if duplicates:
        log.warning("%s: %d duplicate words ignored (first occurrence kept)", name, duplicates)
    return EmbeddingStore(words, np.vstack(rows), duplicates=duplicates, skipped_zero=skipped_zero)


def contextual_similarity(store: EmbeddingStore, a: str, b: str) -> Optional[float]:
    """Cosine of the two word vectors, clamped below at 0.

    ``None`` when either word has no vector.
    """
    ia, ib = store.row(a), store.row(b)
    if ia < 0 or ib < 0:
        return None
    probe.record("contextual")
    if ia == ib:
        return 1.0
    return float(_kernels.clamped_cosine(store.vectors[ia], store.norms[ia],
                                         store.vectors[ib], store.norms[ib]))


def contextual_similarity_matrix(store: EmbeddingStore, rows: list[str],
                                 cols: list[str]) -> tuple[np.ndarray, np.ndarray]:
    """Dense clamped cosines plus a defined-mask; undefined entries hold 0."""
    a = np.array([store.row(w) for w in rows], dtype=np.int64)
    b = np.array([store.row(w) for w in cols], dtype=np.int64)
    probe.record("contextual", len(rows) * len(cols))
    sims = _kernels.cosine_matrix(store.vectors, store.norms, a, b)
    defined = ~np.isnan(sims)
    sims[~defined] = 0.0
    return sims, defined
