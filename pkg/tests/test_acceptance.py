"""Acceptance criteria 1-10.  Each test records a PASS/FAIL line that is
printed in the terminal summary, together with its runtime and budget."""

import io
import json
import os
import subprocess
import sys
from itertools import combinations_with_replacement, product

from qshuffle import cli, oklrsym
from qshuffle.bases import _check_unitriangular, theta_kappa, weight_space
from qshuffle.characters import costandard_peel, lexprime_top_words, simple_chars, symmetric
from qshuffle.exactq import LaurentPoly
from qshuffle.rootdata import DimVector, n_of, self_dual_weights, tkpf
from qshuffle.shuffle import (
    ShuffleElt,
    good_words_bruteforce,
    lyndon_bracket,
    shuffle_mul,
    xi_eval,
    xi_word,
)
from qshuffle.thetamod import ThetaElt, ek_suite, empty, star, star_recursive, theta_good_bruteforce
from qshuffle.words import (
    antilex_key,
    descending,
    good_lyndon_words,
    is_lyndon,
    is_theta_lyndon,
    lyndon_factorize,
    theta_good_words,
    weight,
)

from . import oracles

q = LaurentPoly.q
WEIGHTS_3 = self_dual_weights([1, 3, 5, 7], 3)
FRAMINGS = [{}, {1: 1}, {1: 1, 3: 2}]


def odd(window):
    return [k for k in range(-window, window + 1) if k % 2]


def test_criterion_1_orders_and_lyndon_words(criterion):
    with criterion(1, "good Lyndon words, necklaces, bracket minima", limit=10):
        letters = odd(5)
        for lo in letters:
            for hi in letters:
                if lo > hi:
                    continue
                beta = DimVector.root(lo, hi)
                brute = [w for w in good_words_bruteforce(beta, method="modular") if oracles.is_lyndon(w)]
                assert brute == [descending(hi, lo)] == good_lyndon_words(beta), (lo, hi)
        # no good Lyndon word for a weight that is not an A root
        for beta in (DimVector({1: 1, 5: 1}), DimVector({1: 2}), DimVector({-1: 1, 1: 1, 5: 1})):
            brute = [w for w in good_words_bruteforce(beta, method="modular") if oracles.is_lyndon(w)]
            assert brute == good_lyndon_words(beta) == []
        for length in range(1, 7):
            for rep, members in oracles.necklace_classes(letters, length).items():
                count = sum(1 for w in members if is_lyndon(w))
                assert count == (1 if oracles.aperiodic(rep) else 0), rep
        for lo in letters:
            for hi in letters:
                if lo <= hi and (hi - lo) // 2 + 1 <= 5:
                    nu = descending(hi, lo)
                    image = xi_eval(lyndon_bracket(nu))
                    assert image.min_word(antilex_key) == nu


def test_criterion_2_theta_good_counts(criterion):
    with criterion(2, "theta-good count = tkpf, enumeration and rank", limit=120):
        weights = self_dual_weights([1, 3, 5, 7], 4)
        assert len(weights) == 69
        for beta in weights:
            expected = oracles.kostant_count(beta)
            assert tkpf(beta) == expected
            assert len(theta_good_words(beta)) == expected, beta
            ranked = theta_good_bruteforce(beta, method="modular")
            assert ranked == theta_good_words(beta), beta


def test_criterion_3_exact_values(criterion):
    with criterion(3, "exact small products and coset sum vs recursion"):
        assert shuffle_mul(ShuffleElt.word((1,)), ShuffleElt.word((1,))) == ShuffleElt.word((1, 1), 1 + q(-2))
        assert star(empty(), ShuffleElt.word((1,))) == ThetaElt({(1,): 1, (-1,): 1})
        a1 = DimVector({1: 1})
        assert star(empty(a1), ShuffleElt.word((1,))) == ThetaElt({(1,): 1, (-1,): q(1)}, a1)
        letters = odd(3)
        words = [w for n in range(4) for w in product(letters, repeat=n)]
        for lam in FRAMINGS:
            lam = DimVector(lam)
            for a in words:
                u = ThetaElt.word(a, framing=lam)
                for b in words:
                    if len(a) + len(b) <= 4:
                        assert star(u, xi_word(b), lam) == star_recursive(u, b, lam), (a, b, lam)
        for a in words:
            for b in words:
                if len(a) + len(b) <= 5:
                    assert shuffle_mul(ShuffleElt.word(a), ShuffleElt.word(b)).terms == oracles.shuffle_pair(a, b)


def stated_lyndon_diagonal(word):
    """prod over Lyndon factors f of (-1)^(len f - 1) q^(-N(|f|))."""
    out = LaurentPoly.monomial(0)
    for f in lyndon_factorize(word):
        out = out * LaurentPoly.monomial(-n_of(weight(f)), (-1) ** (len(f) - 1))
    return out


def test_criterion_4_basis_triangularity(criterion):
    with criterion(4, "basis triangularity ledger, |beta|_theta <= 3", limit=300):
        assert len(WEIGHTS_3) == 34
        wrong_diagonal = []
        for beta in WEIGHTS_3:
            ws = weight_space(beta)
            words = ws.words
            lyn = ws.lyndon_matrix
            for i, nu in enumerate(words):
                assert all(lyn[i][j].is_zero() for j in range(i))
                if lyn[i][i] != stated_lyndon_diagonal(nu):
                    wrong_diagonal.append((str(beta), nu, str(lyn[i][i]), str(stated_lyndon_diagonal(nu))))
            _check_unitriangular(ws.bar_pbw_matrix, "bar(theta-P)")
            can = ws.canonical_pbw
            _check_unitriangular(can, "theta-b in theta-P")
            for i in range(len(words)):
                for j in range(i + 1, len(words)):
                    if not can[i][j].is_zero():
                        assert can[i][j].to_laurent().min_exp() >= 1
            rows = ws.canonical_matrix
            elements = ws.elements("canonical")
            for nu in words:
                assert ws.bar_lower(elements[nu]) == elements[nu]
            for i in range(len(words)):
                for j in range(len(words)):
                    assert ws.pair(rows[i], rows[j]).at_zero() == (1 if i == j else 0)
        total = sum(len(weight_space(beta).words) for beta in WEIGHTS_3)
        assert not wrong_diagonal, (f"{len(wrong_diagonal)} of {total} Lyndon-to-monomial diagonal entries differ "
                                    f"from prod (-1)^(len-1) q^-N, e.g. {wrong_diagonal[:3]}")


def test_criterion_5_dual_bases(criterion):
    with criterion(5, "dual canonical highest words and agreement with dual PBW"):
        for beta in WEIGHTS_3:
            ws = weight_space(beta)
            dual_can = ws.elements("dual_canonical")
            dual_pbw = ws.elements("dual_pbw")
            for nu in ws.words:
                b = dual_can[nu]
                assert b.max_word(antilex_key) == nu
                assert b.coeff(nu) == theta_kappa(nu)
                if is_theta_lyndon(nu) or symmetric(nu):
                    assert b == dual_pbw[nu], nu


def test_criterion_6_characters(criterion):
    with criterion(6, "character suite, |beta|_theta <= 3", limit=300):
        for beta in WEIGHTS_3:
            table = simple_chars(beta)  # checks triangularity, positivity, bar symmetry, highest words, count
            for (nu, mu), m in table.decomp.items():
                assert all(c > 0 for _, c in m.items())
                assert (m == 1) if nu == mu else antilex_key(mu) < antilex_key(nu)
            for nu, ch in table.simples.items():
                assert ch.map_coeffs(lambda c: c.bar()) == ch
                assert ch.max_word(antilex_key) == nu and ch.coeff(nu) == theta_kappa(nu)
            assert len(table.simples) == tkpf(beta)
            peeled, _ = costandard_peel(beta)
            assert peeled == table.simples
            dual = weight_space(beta).elements("dual_canonical")
            for nu in table.words:
                if symmetric(nu):
                    assert table.simples[nu] == dual[nu]
        # Peeling costandards under the opposite-letter lexicographic order
        # needs nu to be the top word of its costandard in that order.  First
        # letters come in +/- twin pairs, so only positive first letters count.
        wrong = [(str(beta), nu, top) for beta in WEIGHTS_3
                 for nu, top in lexprime_top_words(beta).items() if top != nu]
        total = sum(len(theta_good_words(beta)) for beta in WEIGHTS_3)
        assert not wrong, f"{len(wrong)} of {total} costandards have another top word, e.g. {wrong[:3]}"


def _plain_weights(window, max_size):
    out = set()
    for n in range(1, max_size + 1):
        for combo in combinations_with_replacement(odd(window), n):
            d = {}
            for k in combo:
                d[k] = d.get(k, 0) + 1
            out.add(DimVector(d))
    return sorted(out)


def _bad(rows):
    return [(r["family"], r["case"], r["weight_word"]) for r in rows if r["status"] != "pass"]


def test_criterion_7_klr_relations(criterion):
    with criterion(7, "KLR and orientifold KLR relations, grading audit", limit=600):
        weights = self_dual_weights([1, 3], 3)
        assert len(weights) == 9
        for lam in FRAMINGS:
            for beta in weights:
                assert _bad(oklrsym.verify_relations(beta, lam, 6)) == [], (beta, lam)
                audit = oklrsym.verify_grading(beta, lam, max_deg=6)
                assert audit["consistent"] and _bad(audit["rows"]) == [], (beta, lam)
        for beta in _plain_weights(3, 3):
            assert _bad(oklrsym.verify_relations(beta, None, 6, mode="klr")) == [], beta
            audit = oklrsym.verify_grading(beta, None, mode="klr", max_deg=6)
            assert audit["consistent"] and _bad(audit["rows"]) == [], beta


def test_criterion_8_pbw_surrogate(criterion):
    with criterion(8, "PBW independence and degenerate detection, n <= 2", limit=120):
        weights = [DimVector()] + self_dual_weights([1, 3], 2)
        for lam in FRAMINGS:
            for beta in weights:
                rep = oklrsym.verify_pbw_independence(beta, lam, max_deg=5)
                assert rep["status"] == "independent", (beta, lam, rep)
        for lam in (None, {1: 1}):
            bad = oklrsym.verify_pbw_independence(DimVector({1: 1, -1: 1}), lam,
                                                  params=oklrsym.degenerate_params(lam))
            assert bad["status"] == "dependent"
            assert not bad["perfection"]["V3"]


def test_criterion_9_ek_identities(criterion):
    with criterion(9, "EK cross relation, T-conjugation, q-Serre on words of length <= 4"):
        for lam in ({}, {1: 1, 3: 1}):
            report = ek_suite(4, 3, lam)
            assert report["words"] == 341
            assert report["failures"] == [], report["failures"][:5]


COMMANDS = [
    ["words", "enum", "--weight", "1:2,-1:2", "--kind", "theta-good"],
    ["shuffle", "mul", "1", "1"],
    ["shuffle", "star", "1", "3,1", "--lambda", "1"],
    ["char", "dims", "--weight", "1:1,-1:1"],
    ["basis", "--weight", "1:2,-1:2,3:1,-3:1", "--kind", "dual-canonical"],
    ["char", "decomp", "--weight", "1:1,-1:1,3:1,-3:1,5:1,-5:1"],
    ["verify", "klr", "--n", "2", "--lambda", "1", "--max-degree", "3"],
]


def _run(argv):
    out = io.StringIO()
    code = cli.run(argv, out=out, err=io.StringIO())
    return code, out.getvalue()


def test_criterion_10_determinism_and_cache(criterion, tmp_path):
    with criterion(10, "byte-identical reruns and cache reload = recompute"):
        for argv in COMMANDS:
            for fmt in ("json", "table", "csv"):
                first = _run(argv + ["--format", fmt])
                assert first[0] == 0, argv
                assert _run(argv + ["--format", fmt]) == first
        # separate processes with different hash seeds
        outputs = set()
        for seed in ("0", "1", "12345"):
            env = dict(os.environ, PYTHONHASHSEED=seed)
            res = subprocess.run([sys.executable, "-m", "qshuffle.cli", "char", "simple", "--weight",
                                  "1:2,-1:2,3:1,-3:1", "--format", "json"], capture_output=True, env=env, check=True)
            outputs.add(res.stdout)
        assert len(outputs) == 1
        cache = str(tmp_path / "cache")
        for beta in WEIGHTS_3:
            weight = str(beta)
            for kind in ("monomial", "lyndon", "pbw", "canonical", "dual-canonical"):
                argv = ["basis", f"--weight={weight}", "--kind", kind, "--format", "json"]
                fresh = _run(argv)
                assert fresh[0] == 0, argv
                assert _run(argv + ["--cache-dir", cache]) == fresh
                assert _run(argv + ["--cache-dir", cache]) == fresh
            for what in ("simple", "decomp", "dims", "standard"):
                argv = ["char", what, f"--weight={weight}", "--format", "json"]
                fresh = _run(argv)
                assert fresh[0] == 0, argv
                assert _run(argv + ["--cache-dir", cache]) == fresh
                assert _run(argv + ["--cache-dir", cache]) == fresh
        # a tampered entry is detected and replaced
        victim = sorted((tmp_path / "cache").iterdir())[0]
        blob = json.loads(victim.read_text())
        blob["payload"]["weight"] = "tampered"
        victim.write_text(json.dumps(blob))
        payload = cli.cached(cache, blob["key"]["kind"], blob["key"]["weight"], lambda: {"recomputed": True})
        assert payload == {"recomputed": True}
