"""
Normalizing running text
========================

The full loop on a few made-up messages: split the vocabulary, match the
OOV words, and rewrite the text.
"""

from tnorm.corpus import rewrite_line, split_corpus
from tnorm.fixtures import load_toy
from tnorm.matcher import MatchParams, match_all
from tnorm.similarity import SimilarityWeights, build_component_matrix

toy = load_toy("a")

messages = [
    "gud nite ppl, c u tmrw @sam",
    "thx 4 the bday msg!! luv u",
    "skool ovr thru the wknd http://t.co/xyz #friday",
]

####################################################################
# Mentions, hashtags and links are never touched
split = split_corpus(messages, toy.lexicon)
print("IV: ", sorted(split.iv))
print("OOV:", sorted(split.oov))

####################################################################
# Match every OOV word against the whole lexicon
oov = sorted(split.oov)
matrix = build_component_matrix(oov, sorted(toy.lexicon), toy.store)
result = match_all(matrix, MatchParams(SimilarityWeights(0.7, 0.5, 0.3), 0.5))
for word in oov:
    print(f"{word:>6} -> {result[word]}")

####################################################################
# Unmatched words pass through unchanged
best = result.best()
for line in messages:
    print(rewrite_line(line, lambda tok: best.get(tok, tok)))
