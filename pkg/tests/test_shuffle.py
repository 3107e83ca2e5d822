import random
from itertools import product

import pytest

from qshuffle.exactq import LaurentPoly
from qshuffle.rootdata import DimVector
from qshuffle.shuffle import (
    ShuffleElt,
    bracket_scalar,
    good_words_bruteforce,
    left_delete,
    lyndon_bracket,
    right_delete,
    shuffle_by_cosets,
    shuffle_mul,
    shuffle_words,
    sigma,
    theta_sigma,
    xi_word,
)
from qshuffle.words import good_words

from . import oracles

q = LaurentPoly.q
W = ShuffleElt.word


def test_small_products():
    assert shuffle_mul(W((1,)), W((1,))) == W((1, 1), 1 + q(-2))
    assert shuffle_mul(W((3,)), W((1,))) == W((3, 1)) + W((1, 3), q(1))
    x = W((3, 1)) + W((1,), q(2))
    assert shuffle_mul(x, W(())) == x


def test_products_match_interleaving_oracle():
    letters = (-3, -1, 1, 3)
    words = [w for n in range(3) for w in product(letters, repeat=n)]
    for a in words:
        for b in words:
            expected = oracles.shuffle_pair(a, b)
            assert dict(shuffle_words(a, b)) == expected
            assert shuffle_by_cosets(a, b).terms == expected


def test_associative():
    rng = random.Random(3)
    letters = (-1, 1, 3)
    for _ in range(30):
        a, b, c = (tuple(rng.choice(letters) for _ in range(rng.randint(0, 2))) for _ in range(3))
        x, y, z = W(a), W(b), W(c)
        assert shuffle_mul(shuffle_mul(x, y), z) == shuffle_mul(x, shuffle_mul(y, z))


def test_deletions():
    assert right_delete(1, W((3, 1))) == W((3,))
    assert left_delete(1, W((3, 1))) == ShuffleElt()
    assert right_delete(1, W(())) == ShuffleElt()


def test_reversal_anti_automorphism():
    assert sigma(W((3, 1))) == W((1, 3))
    assert theta_sigma(W((3, 1))) == W((-1, -3))
    rng = random.Random(5)
    for _ in range(20):
        a = tuple(rng.choice((-1, 1, 3)) for _ in range(rng.randint(0, 3)))
        b = tuple(rng.choice((-1, 1, 3)) for _ in range(rng.randint(0, 3)))
        assert sigma(shuffle_mul(W(a), W(b))) == shuffle_mul(sigma(W(b)), sigma(W(a)))


def test_xi():
    assert xi_word((1, 3)) == W((1, 3)) + W((3, 1), q(1))
    assert xi_word(()) == W(())
    assert xi_word((1, 1)) == W((1, 1), 1 + q(-2))


def test_brackets():
    assert lyndon_bracket((1,)).terms == {(1,): LaurentPoly(1)}
    br = lyndon_bracket((3, 1))
    assert br.terms == {(1, 3): LaurentPoly(1), (3, 1): -q(-1)}
    assert bracket_scalar((3, 1)) == q(1) - q(-1)


def test_good_words_bruteforce_small():
    assert good_words_bruteforce(DimVector({1: 1, 3: 1})) == sorted([(3, 1), (1, 3)], key=lambda w: w[::-1])
    assert good_words_bruteforce(DimVector({1: 1})) == [(1,)]
    assert good_words_bruteforce(DimVector({1: 2})) == [(1, 1)]


@pytest.mark.parametrize("beta", [{1: 1, 3: 1, 5: 1}, {1: 2, 3: 1}, {-1: 1, 1: 1, 3: 1}, {1: 2, 3: 2}])
def test_good_words_enumeration_matches_rank(beta):
    beta = DimVector(beta)
    assert good_words(beta) == good_words_bruteforce(beta)
