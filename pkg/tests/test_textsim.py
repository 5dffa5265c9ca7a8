from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import lcs_ref, levenshtein_ref, string_similarity_ref
from tnorm.textsim import (lcs_len, levenshtein, normalize_word, string_similarity,
                           string_similarity_matrix)

words = st.text(alphabet="abcdefgh", min_size=1, max_size=10)
any_words = st.text(alphabet=st.characters(blacklist_categories=("Cs",)), min_size=1, max_size=8)


@pytest.mark.parametrize("a, b, lev, lcs", [
    ("kitten", "sitting", 3, 4),
    ("sum1", "someone", 5, 2),
    ("r", "are", 2, 1),
    ("abc", "abc", 0, 3),
    ("", "abc", 3, 0),
])
def test_known_values(a, b, lev, lcs):
    assert levenshtein(a, b) == lev
    assert lcs_len(a, b) == lcs


def test_worked_similarity_values():
    assert string_similarity("sum1", "someone") == pytest.approx(2 / 9)
    assert string_similarity("r", "are") == pytest.approx(1 / 3)
    assert string_similarity("nite", "night") == float(string_similarity_ref("nite", "night"))


def test_empty_word_rejected():
    with pytest.raises(ValueError):
        string_similarity("", "a")


@settings(max_examples=300)
@given(words, words)
def test_matches_recursive_oracle(a, b):
    assert levenshtein(a, b) == levenshtein_ref(a, b)
    assert lcs_len(a, b) == lcs_ref(a, b)
    assert string_similarity(a, b) == float(string_similarity_ref(a, b))


@given(any_words, any_words)
def test_symmetry_and_range(a, b):
    s = string_similarity(a, b)
    assert s == string_similarity(b, a)
    assert 0.0 <= s <= 1.0
    assert (s == 1.0) == (a == b)


@given(words, words, words)
def test_levenshtein_triangle(a, b, c):
    assert levenshtein(a, c) <= levenshtein(a, b) + levenshtein(b, c)


@given(words, words)
def test_distance_bounds(a, b):
    d = levenshtein(a, b)
    assert abs(len(a) - len(b)) <= d <= max(len(a), len(b))
    assert lcs_len(a, b) <= min(len(a), len(b))


def test_code_points_not_bytes():
    # one code point each, several UTF-8 bytes
    assert levenshtein("é", "e") == 1
    assert string_similarity("😀a", "😀a") == 1.0
    assert lcs_len("naïve", "naive") == 4


def test_normalize_word_nfc_lower():
    assert normalize_word(" Café ") == "café"


def test_matrix_matches_scalar():
    rng = np.random.default_rng(3)
    alphabet = list("abcdeé😀")
    rows = ["".join(rng.choice(alphabet, rng.integers(1, 9))) for _ in range(15)]
    cols = ["".join(rng.choice(alphabet, rng.integers(1, 9))) for _ in range(20)]
    m = string_similarity_matrix(rows, cols)
    expected = [[string_similarity(a, b) for b in cols] for a in rows]
    assert np.array_equal(m, np.array(expected))


def test_frozen_values():
    # exact rationals from the recursive oracle
    assert string_similarity_ref("tmrw", "tomorrow") == Fraction(4, 8)
    assert string_similarity("tmrw", "tomorrow") == 0.5
