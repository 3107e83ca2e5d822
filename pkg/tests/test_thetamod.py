from itertools import product

import pytest

from qshuffle.bases import theta_kappa
from qshuffle.exactq import LaurentPoly
from qshuffle.rootdata import DimVector, self_dual_weights, tkpf
from qshuffle.shuffle import ShuffleElt, shuffle_mul, xi_word
from qshuffle.thetamod import (
    ThetaElt,
    axiom_suite,
    costandard_elt,
    ek_apply,
    ek_relation_defects,
    empty,
    qder2_defect,
    right_delete_mod,
    standard_elt,
    star,
    star_recursive,
    t_exponent,
    repeat_shift,
    t_tau_degree,
    theta_good_bruteforce,
    theta_lyndon,
    theta_monomial,
)
from qshuffle.words import antilex_key, theta_good_words, xi

from . import oracles

q = LaurentPoly.q
A1 = DimVector({1: 1})


def test_action_of_one_letter():
    assert star(empty(), ShuffleElt.word((1,))) == ThetaElt({(1,): 1, (-1,): 1})
    at_a1 = star(empty(A1), ShuffleElt.word((1,)))
    assert at_a1 == ThetaElt({(1,): 1, (-1,): q(1)}, A1)
    u = ThetaElt({(3, 1): q(2)}, A1)
    assert star(u, ShuffleElt.word(())) == u


@pytest.mark.parametrize("lam", [{}, {1: 1}, {1: 1, 3: 2}])
def test_coset_sum_matches_letter_recursion(lam):
    lam = DimVector(lam)
    letters = (-3, -1, 1, 3)
    words = [w for n in range(3) for w in product(letters, repeat=n)]
    for a in words:
        u = ThetaElt.word(a, framing=lam)
        for b in words:
            if len(a) + len(b) <= 4:
                assert star(u, xi_word(b), lam) == star_recursive(u, b, lam)


@pytest.mark.parametrize("lam", [{}, {1: 1}, {-1: 1, 3: 1}])
def test_monomials_match_oracle(lam):
    for n in range(4):
        for w in product((-3, -1, 1, 3), repeat=n):
            assert theta_monomial(w, DimVector(lam)).terms == oracles.theta_monomial(w, lam)


def test_module_axiom():
    report = axiom_suite(3, 3, {1: 1}, seed=11, samples=40)
    assert report["failures"] == []
    assert report["checked"] > 50


def test_deletion_examples():
    u = ThetaElt.word((1, -1))
    assert right_delete_mod(-1, u) == ThetaElt.word((1,))
    assert right_delete_mod(1, u) == ThetaElt()
    assert right_delete_mod(1, empty()) == ThetaElt()


def test_ek_small_values():
    e = empty()
    assert ek_apply("E", 1, ek_apply("F", 1, e)) == e
    assert ek_apply("T", 1, e) == e
    assert ek_apply("E", 1, ek_apply("F", -1, e)) == e


@pytest.mark.parametrize("lam", [{}, {1: 1, 3: 1}])
def test_ek_relations_on_short_words(lam):
    lam = DimVector(lam)
    letters = [-3, -1, 1, 3]
    for n in range(3):
        for w in product(letters, repeat=n):
            assert ek_relation_defects(ThetaElt.word(w, framing=lam), letters) == []


def test_twisted_derivation():
    lam = DimVector({1: 1})
    for v in [(), (1,), (3, -1)]:
        for z in [(1,), (1, 3), (-1, 1)]:
            for i in (-1, 1, 3):
                assert not qder2_defect(ThetaElt.word(v, framing=lam), ShuffleElt.word(z), i)


def test_theta_good_small():
    assert theta_good_bruteforce(DimVector({1: 1, -1: 1})) == [(1,)]
    assert theta_good_bruteforce(DimVector()) == [()]
    assert set(theta_good_bruteforce(DimVector({1: 2, -1: 2}))) == {(1, 1), (1, -1)}


def test_framed_theta_good_count_is_independent_of_brute_force_method():
    beta = DimVector({1: 2, -1: 2, 3: 1, -3: 1})
    lam = DimVector({1: 1})
    exact = theta_good_bruteforce(beta, lam, method="exact")
    modular = theta_good_bruteforce(beta, lam, method="modular", seed=2)
    assert exact == modular


def test_monomial_and_lyndon_elements():
    assert theta_monomial((1,)) == ThetaElt({(1,): 1, (-1,): 1})
    assert theta_monomial(()) == empty()
    lyn = theta_lyndon(xi(1))
    assert lyn.min_word(antilex_key) == xi(1) or lyn.coeff(xi(1))


def test_standard_examples():
    assert standard_elt((1,)) == ThetaElt({(1,): 1, (-1,): 1})
    assert standard_elt(()) == empty()
    s = standard_elt(xi(1))
    assert s.max_word(antilex_key) == xi(1)
    assert s.coeff(xi(1)) == theta_kappa(xi(1)) == q(1) + q(-1)


@pytest.mark.parametrize("beta", self_dual_weights([1, 3, 5], 3))
def test_standard_and_costandard_highest_words(beta):
    for nu in theta_good_words(beta):
        std = standard_elt(nu)
        assert std.max_word(antilex_key) == nu
        assert std.coeff(nu) == theta_kappa(nu)
        cost = costandard_elt(nu)
        assert cost.max_word(antilex_key) == nu
        assert cost.coeff(nu) == theta_kappa(nu)
        assert t_exponent(nu) == t_tau_degree(nu)


def test_costandard_single_letter():
    c = costandard_elt((1,))
    assert c.max_word(antilex_key) == (1,)
    assert set(c.terms) == {(1,), (-1,)}


@pytest.mark.parametrize("nu, shift", [((1, 1), 1), ((1, 1, 1), 3), ((3, 1, 3, 1), 1),
                                       ((1, -1, 1, -1), 2), ((1, -1, 1, -1, 1, -1), 6)])
def test_repeated_factors_shift_t(nu, shift):
    # a repeated symmetric factor shifts t twice as much as a plain one
    assert repeat_shift(nu) == shift
    assert t_exponent(nu) == t_tau_degree(nu)
