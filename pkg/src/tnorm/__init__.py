"""Nearest-neighbour text normalization with tuned similarity weights.

Out-of-vocabulary words are matched to their most similar in-vocabulary words
under a weighted mix of contextual (embedding cosine), phonetic (Double
Metaphone) and string (normalized LCS) similarity; the weights and the match
threshold are found by grid search on labelled mappings.
"""

from tnorm.corpus import VocabularySplit, load_lexicon, split_corpus, tokenize
from tnorm.embeddings import EmbeddingStore, contextual_similarity, load_embeddings
from tnorm.evaluation import EvalReport, GoldDataset, evaluate, load_gold, threshold_sweep
from tnorm.fixtures import load_toy, toy_path
from tnorm.matcher import MatchParams, MatchResult, apply_normalization, match_all, match_word
from tnorm.phonetics import PhoneticCodes, encode, phonetic_similarity
from tnorm.similarity import (ComponentMatrix, ComponentTriple, SimilarityWeights,
                              build_component_matrix, combine, component_triple)
from tnorm.textsim import lcs_len, levenshtein, string_similarity
from tnorm.tuner import (ExperimentReport, GridSpec, TunedParams, grid_search, refine,
                         run_experiment)

__version__ = "0.1.0"
