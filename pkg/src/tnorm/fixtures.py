"""Bundled toy data: a 52-word lexicon, 16-d vectors and two gold sets.

Gold sets ``"a"`` and ``"b"`` have disjoint OOV words and share the lexicon,
so together they support the cross-dataset protocol.  Regenerate with
``tests/data/make_toy_fixture.py``.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from tnorm.corpus import load_lexicon
from tnorm.embeddings import EmbeddingStore, load_embeddings
from tnorm.evaluation import GoldDataset, load_gold
from tnorm.similarity import ComponentMatrix, build_component_matrix


def toy_path(name: str) -> Path:
    """Path of a bundled file: ``lexicon``, ``embeddings``, ``gold_a`` or ``gold_b``."""
    files = {"lexicon": "toy_lexicon.txt", "embeddings": "toy_embeddings.txt",
             "gold_a": "toy_gold_a.tsv", "gold_b": "toy_gold_b.tsv"}
    if name not in files:
        raise KeyError(f"unknown fixture file {name!r}; expected one of {sorted(files)}")
    return Path(str(resources.files("tnorm") / "data" / files[name]))


@dataclass
class ToyFixture:
    lexicon: frozenset[str]
    store: EmbeddingStore
    gold: GoldDataset

    def matrix(self, oov_words=None) -> ComponentMatrix:
        oov = sorted(self.gold.oov_words()) if oov_words is None else list(oov_words)
        return build_component_matrix(oov, sorted(self.lexicon), self.store)


def load_toy(gold: str = "a") -> ToyFixture:
    return ToyFixture(load_lexicon(toy_path("lexicon")), load_embeddings(toy_path("embeddings")),
                      load_gold(toy_path(f"gold_{gold}")))
