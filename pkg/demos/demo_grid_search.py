"""
Tuning weights and threshold
============================

Grid search scores every (w_c, w_p, w_s, t) on a cached component matrix.
Nothing about the words is recomputed while it runs.
"""

from tnorm import probe
from tnorm.fixtures import load_toy
from tnorm.tuner import grid_search, refine, run_experiment

toy = load_toy("a")
matrix = toy.matrix()

####################################################################
# The default grid: weights 0..1 and thresholds 0.1..0.9 in steps of 0.1
before = probe.total()
coarse = grid_search(matrix, toy.gold, seed=0)
print(coarse.weights, "t =", coarse.t)
print("F =", round(coarse.training_f, 4), "points =", coarse.evaluated_points)
print("components recomputed during search:", probe.total() - before)

####################################################################
# A finer pass around the optimum never does worse
fine = refine(matrix, toy.gold, coarse)
print(fine.weights, "t =", fine.t, "F =", round(fine.training_f, 4))

####################################################################
# Held-out evaluation
# -------------------
# Two-fold cross-validation, five 20/80 splits, and tuning on the second
# gold set before testing on the first.
toy_b = load_toy("b")
lexicon = sorted(toy.lexicon)

from tnorm.similarity import build_component_matrix


def build(oov_words):
    return build_component_matrix(oov_words, lexicon, toy.store)


print("exp | w_c, w_p, w_s, t | Pre | Rec | Fme")
for protocol, other in [("cv2", None), ("split20", None), ("cross", toy_b.gold)]:
    report = run_experiment(protocol, toy.gold, other, build, seed=0)
    print(report.format_row())
