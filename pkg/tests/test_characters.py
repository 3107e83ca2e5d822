import pytest

from qshuffle.characters import (
    CharacterError,
    costandard_peel,
    dim_table,
    peel,
    simple_chars,
    split_multiplicity,
    std_char,
)
from qshuffle.exactq import LaurentPoly
from qshuffle.rootdata import DimVector, self_dual_weights
from qshuffle.thetamod import ThetaElt, empty
from qshuffle.words import antilex_key

q = LaurentPoly.q
B1 = DimVector({1: 1, -1: 1})
B2 = DimVector({1: 2, -1: 2})


def test_standard_small():
    assert std_char((1,)) == ThetaElt({(1,): 1, (-1,): 1})
    assert std_char(()) == empty()


def test_single_root_table():
    t = simple_chars(B1)
    assert t.words == [(1,)]
    assert t.simples[(1,)] == ThetaElt({(1,): 1, (-1,): 1})
    assert [[str(c) for c in row] for row in t.decomp_matrix()] == [["1"]]


def test_golden_table_two_a1():
    t = simple_chars(B2)
    assert t.words == [(1, -1), (1, 1)]
    two = q(1) + q(-1)
    assert t.simples[(1, -1)] == ThetaElt({(-1, -1): two, (1, -1): two})
    assert t.simples[(1, 1)] == ThetaElt({(-1, 1): two, (1, 1): two})
    assert [[str(c) for c in row] for row in t.decomp_matrix()] == [["1", "0"], ["q", "1"]]


def test_trivial_weight():
    t = simple_chars(DimVector())
    assert t.words == [()]
    assert dim_table(DimVector())["simples"] == 1


def test_simple_counts():
    assert dim_table(B1)["simples"] == 1
    assert dim_table(B2)["simples"] == 2


def test_split_multiplicity():
    kappa = q(1) + q(-1)
    g = q(2) + 2 + q(-2) + (q(1) + q(3)) * kappa
    d = split_multiplicity(g, kappa)
    assert d == q(1) + q(3)
    assert (g - d * kappa).bar() == g - d * kappa
    with pytest.raises(CharacterError):
        split_multiplicity(q(1), kappa)


def test_peel_rejects_wrong_top_word():
    chars = {(1,): ThetaElt({(-1,): 1})}
    with pytest.raises(CharacterError):
        peel([(1,)], chars, antilex_key)


@pytest.mark.parametrize("beta", self_dual_weights([1, 3], 2))
def test_costandard_peel_agrees(beta):
    simples, _ = costandard_peel(beta)
    assert simples == simple_chars(beta).simples


def test_csv_and_json_outputs():
    t = simple_chars(B2)
    assert t.to_csv().splitlines()[0] == "word,standard,simple,\"1,-1\",\"1,1\""
    assert t.to_json()["decomp"] == [["1", "0"], ["q", "1"]]
