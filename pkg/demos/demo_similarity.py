"""
Three views of word similarity
==============================

An OOV word such as ``nite`` is compared with an IV word such as ``night``
through its spelling, its sound and the contexts it appears in.
"""

####################################################################
# Spelling: normalized LCS similarity
# -----------------------------------
# The longest common subsequence rewards shared letters in order; the edit
# distance in the denominator penalizes everything else.
from tnorm.textsim import lcs_len, levenshtein, string_similarity

for oov, iv in [("nite", "night"), ("tmrw", "tomorrow"), ("sum1", "someone"), ("r", "are")]:
    print(f"{oov:>5} {iv:<9} lcs={lcs_len(oov, iv)} lev={levenshtein(oov, iv)} "
          f"S_s={string_similarity(oov, iv):.3f}")

####################################################################
# Sound: Double Metaphone codes
# -----------------------------
# Words are compared through their codes, so ``nite`` and ``night`` become
# identical.  A word without letters has no code at all.
from tnorm.phonetics import encode, phonetic_similarity

for w in ["nite", "night", "smith", "schmidt", "gr8", "123"]:
    print(w, encode(w))
print("S_p(nite, night) =", phonetic_similarity("nite", "night"))
print("S_p(123, be)     =", phonetic_similarity("123", "be"))

####################################################################
# Context: cosine of word vectors
# -------------------------------
# The bundled toy vectors put each noisy spelling near its standard form.
from tnorm.embeddings import contextual_similarity
from tnorm.fixtures import load_toy

toy = load_toy("a")
for oov, iv in [("gr8", "great"), ("gr8", "school"), ("sum1", "someone")]:
    print(oov, iv, contextual_similarity(toy.store, oov, iv))

####################################################################
# Putting them together
# ---------------------
# Undefined components drop out of the weighted mean instead of counting
# as zero.
from tnorm.similarity import ComponentTriple, SimilarityWeights, combine, component_triple

w = SimilarityWeights(0.9, 0.4, 0.7)
print(combine(ComponentTriple(None, 0.5, 1.0), w))
for oov, iv in [("gr8", "great"), ("sum1", "someone"), ("nite", "night")]:
    tr = component_triple(oov, iv, toy.store)
    print(f"{oov:>5} {iv:<8} {tr}  S={combine(tr, w):.3f}")
