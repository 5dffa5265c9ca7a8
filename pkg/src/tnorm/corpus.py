"""Lexicon loading, tweet tokenization and the IV/OOV vocabulary split.

Tokenization rules live here and only here:

* whitespace-separated chunks starting with ``@`` or ``#`` and URL-shaped
  chunks are dropped whole;
* tokens are maximal runs of letters, digits and apostrophes, lowercased;
* tokens without a letter are dropped.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from os import PathLike
from typing import Callable, Iterable, Iterator, Union

from tnorm.textsim import normalize_word

_CHUNK = re.compile(r"\S+")
_TOKEN = re.compile(r"(?:[^\W_]|')+")
_URL = re.compile(r"^(?:[a-z][a-z0-9+.-]*://|www\.)|^[^\s/]+\.(?:com|org|net|co|ly|io|gl)(?:/|$)",
                  re.IGNORECASE)


def load_lexicon(path: Union[str, PathLike]) -> frozenset[str]:
    """One word per line; blank lines and ``#`` comments are skipped."""
    try:
        with open(path, encoding="utf-8") as fh:
            words = {normalize_word(line) for line in fh
                     if line.strip() and not line.lstrip().startswith("#")}
    except OSError as exc:
        raise OSError(f"cannot read lexicon {path}: {exc.strerror or exc}") from exc
    words.discard("")
    if not words:
        raise ValueError(f"empty lexicon: {path}")
    return frozenset(words)


def _is_skipped_chunk(chunk: str) -> bool:
    return chunk[0] in "@#" or bool(_URL.search(chunk))


def token_spans(line: str) -> Iterator[tuple[int, int, str]]:
    """``(start, end, token)`` for every kept token of ``line``."""
    for chunk in _CHUNK.finditer(line):
        if _is_skipped_chunk(chunk.group()):
            continue
        for m in _TOKEN.finditer(chunk.group()):
            raw = m.group()
            if any(ch.isalpha() for ch in raw):
                yield chunk.start() + m.start(), chunk.start() + m.end(), normalize_word(raw)


def tokenize(line: str) -> list[str]:
    return [tok for _, _, tok in token_spans(line)]


@dataclass
class VocabularySplit:
    iv: set[str] = field(default_factory=set)
    oov: set[str] = field(default_factory=set)
    token_counts: Counter = field(default_factory=Counter)


def split_corpus(lines: Iterable[str], lexicon: Iterable[str]) -> VocabularySplit:
    """Route every kept token to the IV set if it is in ``lexicon``, else OOV."""
    lexicon = lexicon if isinstance(lexicon, (set, frozenset)) else set(lexicon)
    split = VocabularySplit()
    for line in lines:
        for tok in tokenize(line):
            split.token_counts[tok] += 1
            (split.iv if tok in lexicon else split.oov).add(tok)
    return split


def rewrite_line(line: str, replace: Callable[[str], str]) -> str:
    """Substitute tokens in place, leaving all other text untouched."""
    pieces, last = [], 0
    for start, end, tok in token_spans(line):
        new = replace(tok)
        if new != tok:
            pieces.append(line[last:start])
            pieces.append(new)
            last = end
    pieces.append(line[last:])
    return "".join(pieces)
