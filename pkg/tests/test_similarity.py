import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import combine_ref
from tnorm.embeddings import EmbeddingStore
from tnorm.similarity import (ComponentMatrix, ComponentTriple, SimilarityWeights,
                              build_component_matrix, combine, component_triple)

unit = st.floats(0, 1)
maybe = st.none() | unit
triples = st.builds(ComponentTriple, maybe, maybe, unit)
# subnormal weights underflow w*v to 0; keep positive weights above 1e-6
wval = st.just(0.0) | st.floats(1e-6, 1)
weights = st.tuples(wval, wval, wval).filter(lambda w: any(w)).map(lambda w: SimilarityWeights(*w))


def test_worked_example():
    s = combine(ComponentTriple(None, 0.5, 1.0), SimilarityWeights(0.9, 0.4, 0.7))
    assert s == pytest.approx(0.9 / 1.1, abs=1e-12)


def test_exact_rational_scores_survive_rounding():
    # (0.2 * 2/3 + 0.1 * 1/6) / 0.3 is exactly 0.5
    tr = ComponentTriple(None, 2 / 3, 1 / 6)
    assert combine(tr, SimilarityWeights(0.3, 0.2, 0.1)) == 0.5
    assert combine(tr, SimilarityWeights(0.9, 0.6, 0.3)) == 0.5


def test_zero_weight_fallback():
    # only the undefined component carries weight
    assert combine(ComponentTriple(None, 0.9, 0.9), SimilarityWeights(1, 0, 0)) == 0.0
    assert combine(ComponentTriple(None, None, 0.3), SimilarityWeights(1, 1, 0)) == 0.0


def test_weight_validation():
    with pytest.raises(ValueError):
        SimilarityWeights(0, 0, 0)
    with pytest.raises(ValueError):
        SimilarityWeights(1.5, 0, 0)
    assert SimilarityWeights.parse("0.9,0.4,0.7") == SimilarityWeights(0.9, 0.4, 0.7)
    with pytest.raises(ValueError):
        SimilarityWeights.parse("1,2")


@settings(max_examples=500)
@given(triples, weights)
def test_matches_exact_oracle_and_range(tr, w):
    s = combine(tr, w)
    assert 0.0 <= s <= 1.0
    # scores are quantized to 1e-12
    assert s == pytest.approx(float(combine_ref(tr, w.as_tuple())), abs=1e-12)


@given(triples, weights, st.floats(0.01, 1))
def test_scale_invariance(tr, w, c):
    scaled = SimilarityWeights(*(c * x for x in w.as_tuple()))
    if not any(scaled.as_tuple()):
        return
    assert combine(tr, scaled) == pytest.approx(combine(tr, w), abs=1e-12)


@given(triples, weights, st.sampled_from(["contextual", "phonetic", "string"]), unit)
def test_monotone_in_each_component(tr, w, which, bump):
    old = getattr(tr, which)
    if old is None:
        return
    higher = ComponentTriple(**{**tr.__dict__, which: max(old, bump)})
    assert combine(higher, w) >= combine(tr, w) - 1e-15


@pytest.fixture(scope="module")
def small_world():
    rng = np.random.default_rng(7)
    iv = sorted({"".join(rng.choice(list("abcdeinorstu"), rng.integers(2, 8))) for _ in range(60)})[:50]
    oov = ["".join(rng.choice(list("abcdeinorstu0123"), rng.integers(1, 6))) for _ in range(40)]
    oov = [w for w in dict.fromkeys(oov) if w not in iv][:19] + ["123"]
    embedded = [w for w in iv + oov if rng.random() < 0.7]
    store = EmbeddingStore(embedded, rng.normal(size=(len(embedded), 8)))
    return oov, iv, store


def test_matrix_equals_recomputation(small_world):
    oov, iv, store = small_world
    assert len(oov) == 20 and len(iv) == 50
    m = build_component_matrix(oov, iv, store)
    assert m.shape == (20, 50)
    for j, o in enumerate(oov):
        for k, i in enumerate(iv):
            assert m.triple(j, k) == component_triple(o, i, store)


def test_tiny_matrices():
    store = EmbeddingStore.from_mapping({"nite": [1, 1], "night": [1, 0.9], "knight": [-1, 0]})
    m = build_component_matrix(["nite"], ["night"], store)
    assert m.shape == (1, 1)
    assert m.triple(0, 0) == component_triple("nite", "night", store)
    m = build_component_matrix(["nite", "123"], ["night", "knight", "nit"], store)
    assert m.triple(1, 0).phonetic is None and m.triple(1, 0).contextual is None
    assert m.triple(0, 1).contextual == 0.0
    assert m.triple(0, 2).contextual is None


def test_build_rejects_bad_lists():
    store = EmbeddingStore.from_mapping({"a": [1.0]})
    with pytest.raises(ValueError):
        build_component_matrix([], ["a"], store)
    with pytest.raises(ValueError):
        build_component_matrix(["x", "x"], ["a"], store)


def test_combined_matches_scalar_bitwise(small_world):
    oov, iv, store = small_world
    m = build_component_matrix(oov, iv, store)
    w = SimilarityWeights(0.3, 0.7, 0.2)
    s = m.combined(w)
    for j in range(len(oov)):
        for k in range(len(iv)):
            assert s[j, k] == combine(m.triple(j, k), w)


def test_from_triples_round_trip():
    rows = [[ComponentTriple(None, 0.5, 0.25), ComponentTriple(0.75, None, 1.0)]]
    m = ComponentMatrix.from_triples(["o"], ["a", "b"], rows)
    assert [m.triple(0, k) for k in range(2)] == rows[0]
    assert not m.string.flags.writeable


def test_canonical_weights():
    from tnorm.similarity import canonical_weights
    assert canonical_weights(0.1, 0.0, 0.1) == (1.0, 0.0, 1.0)
    assert canonical_weights(0.37, 0.0, 0.37) == (1.0, 0.0, 1.0)
    assert canonical_weights(0.3, 0.7, 0.2) == canonical_weights(0.3 * 0.37, 0.7 * 0.37, 0.2 * 0.37)
    assert canonical_weights(0.3, 0.7, 0.2) == (3 / 7, 1.0, 2 / 7)


@given(triples, st.tuples(*[st.integers(0, 10)] * 3).filter(any), st.floats(0.01, 1))
def test_grid_weights_scale_bitwise(tr, w, c):
    w = [x / 10 for x in w]
    assert combine(tr, SimilarityWeights(*w)) == combine(tr, SimilarityWeights(*(c * x for x in w)))
