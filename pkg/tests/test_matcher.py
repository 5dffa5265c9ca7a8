import io

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_matrix
from oracles import match_ref
from tnorm.matcher import MatchParams, MatchResult, apply_normalization, match_all, match_word
from tnorm.similarity import ComponentMatrix, ComponentTriple, SimilarityWeights, combine

W_S = SimilarityWeights(0, 0, 1)


def string_only(scores):
    return [ComponentTriple(None, None, s) for s in scores]


def test_lexicographic_tie_break():
    row = string_only([0.9, 0.5, 0.9])
    assert match_word(row, ["bee", "cat", "ant"], MatchParams(W_S, 0.6, 1)) == [("ant", 0.9)]


def test_all_below_threshold():
    assert match_word(string_only([0.1, 0.2]), ["a", "b"], MatchParams(W_S, 0.5)) == []


def test_top_two_in_order():
    row = string_only([0.9, 0.8, 0.7])
    got = match_word(row, ["x", "y", "z"], MatchParams(W_S, 0.75, 2))
    assert got == [("x", 0.9), ("y", 0.8)]


def test_row_length_checked():
    with pytest.raises(ValueError):
        match_word(string_only([0.5]), ["a", "b"], MatchParams(W_S, 0.5))


@pytest.mark.parametrize("t", [0.0, 1.0, -0.1])
def test_threshold_open_interval(t):
    with pytest.raises(ValueError):
        MatchParams(W_S, t)


def test_k_positive():
    with pytest.raises(ValueError):
        MatchParams(W_S, 0.5, 0)


def test_one_matched_one_not():
    m = ComponentMatrix.from_triples(["hi", "lo"], ["a"], [string_only([0.8]), string_only([0.2])])
    res = match_all(m, MatchParams(W_S, 0.5))
    assert res.matches == {"hi": [("a", 0.8)], "lo": []}
    assert res.matched_count == 1 and res.best() == {"hi": "a"}


def oracle(matrix, params):
    return {o: match_ref([matrix.triple(j, k) for k in range(matrix.shape[1])], matrix.iv_index,
                         lambda tr: combine(tr, params.weights), params.threshold, params.k)
            for j, o in enumerate(matrix.oov_index)}


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 20), st.integers(1, 50),
       st.sampled_from([None, 2, 4]), st.integers(1, 4))
def test_match_all_equals_exhaustive(seed, n_oov, n_iv, levels, k):
    rng = np.random.default_rng(seed)
    m = random_matrix(rng, n_oov, n_iv, levels)
    w = SimilarityWeights(*(rng.integers(0, 11, 3).clip(min=[0, 0, 1]) / 10))
    t = float(rng.choice([0.1, 0.25, 0.5, 0.75]))
    params = MatchParams(w, t, k)
    assert match_all(m, params).matches == oracle(m, params)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.05, 1.0))
def test_scaling_invariance(seed, c):
    rng = np.random.default_rng(seed)
    m = random_matrix(rng, 10, 30, levels=4)
    w = rng.integers(1, 11, 3) / 10
    for k in (1, 3):
        a = match_all(m, MatchParams(SimilarityWeights(*w), 0.5, k))
        b = match_all(m, MatchParams(SimilarityWeights(*(c * w)), 0.5, k))
        assert a.matches == b.matches


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_threshold_monotone_match_count(seed):
    rng = np.random.default_rng(seed)
    m = random_matrix(rng, 15, 20, levels=5)
    w = SimilarityWeights(0.5, 0.2, 1.0)
    counts = [match_all(m, MatchParams(w, t / 10, 2)).matched_count for t in range(1, 10)]
    assert counts == sorted(counts, reverse=True)


def test_emitted_pairs_are_valid():
    rng = np.random.default_rng(11)
    m = random_matrix(rng, 20, 40, levels=3)
    params = MatchParams(SimilarityWeights(1, 1, 1), 0.4, 5)
    for cands in match_all(m, params).matches.values():
        scores = [s for _, s in cands]
        assert len(cands) <= 5 and all(s >= 0.4 for s in scores)
        assert scores == sorted(scores, reverse=True)
        assert len({iv for iv, _ in cands}) == len(cands)


def test_column_order_irrelevant():
    rng = np.random.default_rng(5)
    m = random_matrix(rng, 8, 25, levels=2)
    perm = rng.permutation(25)
    shuffled = ComponentMatrix(m.oov_index, [m.iv_index[p] for p in perm],
                               m.contextual[:, perm], m.contextual_defined[:, perm],
                               m.phonetic[:, perm], m.phonetic_defined[:, perm], m.string[:, perm])
    for k in (1, 4):
        params = MatchParams(SimilarityWeights(1, 1, 1), 0.3, k)
        assert match_all(m, params).matches == match_all(shuffled, params).matches


def test_apply_normalization():
    res = MatchResult({"r": [("are", 0.7)], "u": [("you", 0.8)], "zz": []})
    assert apply_normalization(["r", "u", "ok"], {"ok"}, res) == ["are", "you", "ok"]
    assert apply_normalization(["zz", "qq", "ok"], {"ok"}, res) == ["zz", "qq", "ok"]
    assert apply_normalization(["r"], {"ok"}, MatchResult({"r": []})) == ["r"]


def test_tsv_round_trip():
    res = MatchResult({"r": [("are", 0.5), ("our", 0.25)], "u": [("you", 1.0)], "x": []}, k=2)
    buf = io.StringIO()
    res.write_tsv(buf)
    assert buf.getvalue() == "r\tare\t0.500000\nr\tour\t0.250000\nu\tyou\t1.000000\n"
    back = MatchResult.read_tsv(io.StringIO(buf.getvalue()))
    assert back.k == 2 and back.best() == res.best()


def test_tsv_errors():
    with pytest.raises(ValueError, match=":1:"):
        MatchResult.read_tsv(["a\tb\n"])
    with pytest.raises(ValueError, match="bad score"):
        MatchResult.read_tsv(["a\tb\tx\n"])
