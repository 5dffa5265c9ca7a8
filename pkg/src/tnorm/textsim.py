"""String distance primitives and the normalized LCS string similarity.

Words are compared code point by code point.  Callers lowercase words once at
ingestion (see :func:`normalize_word`); the primitives never touch case.
"""

from __future__ import annotations

import unicodedata
from typing import Sequence

import numpy as np

from tnorm import _kernels, probe


def normalize_word(text: str) -> str:
    """NFC-normalize and lowercase a raw token."""
    return unicodedata.normalize("NFC", text).strip().lower()


def levenshtein(a: str, b: str) -> int:
    """Minimum number of single-character edits turning ``a`` into ``b``."""
    if len(a) < len(b):
        a, b = b, a
    row = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        diag, row[0] = row[0], i
        for j, cb in enumerate(b, 1):
            up = row[j]
            row[j] = diag if ca == cb else 1 + min(diag, up, row[j - 1])
            diag = up
    return row[-1]


def lcs_len(a: str, b: str) -> int:
    """Length of the longest common (not necessarily contiguous) subsequence."""
    if len(a) < len(b):
        a, b = b, a
    row = [0] * (len(b) + 1)
    for ca in a:
        diag = 0
        for j, cb in enumerate(b, 1):
            up = row[j]
            row[j] = diag + 1 if ca == cb else max(up, row[j - 1])
            diag = up
    return row[-1]


def string_similarity(a: str, b: str) -> float:
    """Normalized LCS similarity ``lcs / (min(len) + levenshtein)``.

    Lies in [0, 1] and equals 1 exactly when ``a == b``.

    Raises:
        ValueError: if either word is empty.
    """
    if not a or not b:
        raise ValueError("string_similarity requires two non-empty words")
    probe.record("string")
    return lcs_len(a, b) / (min(len(a), len(b)) + levenshtein(a, b))


def encode_code_points(words: Sequence[str]) -> tuple[np.ndarray, np.ndarray]:
    """Pack words into a zero-padded int32 code point array plus lengths."""
    lengths = np.fromiter((len(w) for w in words), dtype=np.int64, count=len(words))
    width = int(lengths.max()) if len(words) else 0
    codes = np.zeros((len(words), max(width, 1)), dtype=np.int32)
    for r, w in enumerate(words):
        codes[r, : len(w)] = [ord(ch) for ch in w]
    return codes, lengths


def string_similarity_matrix(rows: Sequence[str], cols: Sequence[str]) -> np.ndarray:
    """Dense ``len(rows) x len(cols)`` matrix of :func:`string_similarity`."""
    if any(not w for w in rows) or any(not w for w in cols):
        raise ValueError("string_similarity requires non-empty words")
    if not rows or not cols:
        return np.zeros((len(rows), len(cols)))
    a_codes, a_lens = encode_code_points(rows)
    b_codes, b_lens = encode_code_points(cols)
    probe.record("string", len(rows) * len(cols))
    return _kernels.string_similarity_matrix(a_codes, a_lens, b_codes, b_lens)
