"""
Precision, recall and the threshold
===================================

With weights fixed at (1, 0, 1) we raise the threshold ``t`` and watch the
toy gold set.  Low thresholds let wrong guesses through; high ones throw
away right ones.  F peaks in between.
"""

import numpy as np

from tnorm.evaluation import threshold_sweep
from tnorm.fixtures import load_toy
from tnorm.similarity import SimilarityWeights

toy = load_toy("a")
matrix = toy.matrix()
print("gold mappings:", len(toy.gold), " matrix:", matrix.shape)

####################################################################
# One top-1 pass serves all thresholds
t_values = np.round(np.arange(0.1, 1.0, 0.1), 1)
rows = threshold_sweep(matrix, SimilarityWeights(1, 0, 1), toy.gold, t_values)

print(" t    P      R      F")
for t, rep in rows:
    bar = "#" * int(round(40 * rep.f_measure))
    print(f"{t:.1f}  {rep.precision:.3f}  {rep.recall:.3f}  {rep.f_measure:.3f}  {bar}")

####################################################################
# Recall can only fall as ``t`` rises; the F peak sits strictly inside
f = [rep.f_measure for _, rep in rows]
print("best t:", t_values[int(np.argmax(f))])
