"""Call counters for the component similarity computations.

Every scalar or batched evaluation of a string, phonetic or contextual
similarity adds the number of word pairs it scored to ``calls``.  The tuner
snapshots the total around a grid search to prove the search only re-reads
the cached component matrix.
"""

from collections import Counter

calls: Counter = Counter()


def record(kind: str, pairs: int = 1) -> None:
    calls[kind] += pairs


def total() -> int:
    return sum(calls.values())


def reset() -> None:
    calls.clear()
