"""Graded characters of standard, costandard and simple modules at zero framing.

Simple characters come out of a peeling recursion on standard characters;
the structural facts they should satisfy (unitriangular positive
decomposition numbers, bar symmetry, highest word and its coefficient) are
checked as the recursion runs.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .bases import theta_kappa, weight_space
from .exactq import ONE, ZERO, InexactDivision, LaurentPoly, exact_div
from .rootdata import DimVector, tkpf
from .thetamod import ThetaElt, costandard_elt, standard_elt
from .words import (
    antilex_key,
    format_word,
    lexprime_key,
    sort_words,
    theta_good_words,
    theta_reverse,
    lyndon_factorize,
    is_theta_lyndon,
)


class CharacterError(ArithmeticError):
    def __init__(self, message, table=None):
        super().__init__(message)
        self.table = table


def std_char(word):
    return standard_elt(word)


def costd_char(word):
    return costandard_elt(word)


def bar_char(u):
    return u.map_coeffs(lambda c: c.bar())


def is_positive(c):
    return all(v > 0 for _, v in c.items())


@dataclass
class CharTable:
    weight: DimVector
    words: list
    standards: dict
    simples: dict
    decomp: dict = field(default_factory=dict)
    costandards: dict = field(default_factory=dict)

    def decomp_entry(self, nu, mu):
        return self.decomp.get((nu, mu), ZERO)

    def decomp_matrix(self):
        return [[self.decomp_entry(nu, mu) for mu in self.words] for nu in self.words]

    def to_json(self):
        return {
            "weight": str(self.weight),
            "words": [format_word(w) for w in self.words],
            "standards": {format_word(w): self.standards[w].terms_json() for w in self.words},
            "simples": {format_word(w): self.simples[w].terms_json() for w in self.words},
            "decomp": [[str(c) for c in row] for row in self.decomp_matrix()],
        }

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["word", "standard", "simple"] + [format_word(w) for w in self.words])
        for nu, row in zip(self.words, self.decomp_matrix()):
            writer.writerow([format_word(nu), _char_str(self.standards[nu]), _char_str(self.simples[nu])]
                            + [str(c) for c in row])
        return buf.getvalue()


def _char_str(u):
    return " + ".join(f"({u.coeff(w)})*[{format_word(w)}]" for w in u.words()) or "0"


def split_multiplicity(g, kappa, side=1):
    """Write g = d * kappa + x with x bar-invariant and d in qZ[q] (side=1)
    or q^-1 Z[q^-1] (side=-1); returns d.  kappa must be bar-invariant."""
    try:
        diff = exact_div(g - g.bar(), kappa)
    except InexactDivision:
        raise CharacterError(f"{g} is not a bar-symmetric part plus a multiple of {kappa}") from None
    return LaurentPoly({e: c for e, c in diff.items() if e * side > 0})


def peel(words, chars, key, side=1):
    """Peel characters into bar-invariant pieces.

    ``words`` must be ascending in ``key``; each character must have its
    ``key``-largest word equal to its label.  For each label nu and each
    finished mu below it (largest first), the multiplicity d of simples[mu]
    is the unique element of qZ[q] (or q^-1 Z[q^-1] when side=-1) leaving a
    bar-invariant coefficient of mu.  Returns (simples, multiplicities).
    """
    simples, mult = {}, {}
    done = []
    for nu in words:
        r = chars[nu]
        top = r.max_word(key=key)
        if top != nu:
            raise CharacterError(f"character for {format_word(nu)} has top word {format_word(top or ())}")
        for mu in sorted(done, key=key, reverse=True):
            c = r.coeff(mu)
            if not c:
                continue
            m = split_multiplicity(c, theta_kappa(mu), side)
            if m:
                mult[(nu, mu)] = m
                r = r - simples[mu].scale(m)
        mult[(nu, nu)] = ONE
        if r.max_word(key=key) != nu:
            raise CharacterError(f"peeling {format_word(nu)} removed its own top word")
        simples[nu] = r
        done.append(nu)
    return simples, mult


def simple_chars(beta):
    beta = DimVector(beta)
    words = theta_good_words(beta)
    stds = {nu: std_char(nu) for nu in words}
    simples, mult = peel(words, stds, antilex_key)
    table = CharTable(beta, words, stds, simples, mult)
    check_table(table)
    return table


def check_table(table):
    """Raise CharacterError unless the structural properties hold."""
    for (nu, mu), m in table.decomp.items():
        if nu == mu and m != ONE:
            raise CharacterError(f"diagonal decomposition entry {m} at {format_word(nu)}", table)
        if nu != mu and antilex_key(mu) > antilex_key(nu):
            raise CharacterError("decomposition matrix is not triangular", table)
        if not is_positive(m):
            raise CharacterError(f"decomposition entry {m} at ({format_word(nu)}, {format_word(mu)}) is not in N[q, q^-1]", table)
    for nu, ch in table.simples.items():
        if bar_char(ch) != ch:
            raise CharacterError(f"simple character {format_word(nu)} is not bar-symmetric", table)
        if ch.max_word(antilex_key) != nu or ch.coeff(nu) != theta_kappa(nu):
            raise CharacterError(f"simple character {format_word(nu)} has the wrong highest word", table)
        if any(not is_positive(c) for _, c in ch.terms.items()):
            raise CharacterError(f"simple character {format_word(nu)} has a non-positive coefficient", table)
    if len(table.simples) != tkpf(table.weight):
        raise CharacterError("number of simples differs from the Kostant partition count", table)


def costandard_peel(beta, key=antilex_key, side=-1):
    """Peel costandard characters in the order ``key``; returns (simples, mult)."""
    words = sorted(theta_good_words(beta), key=key)
    costs = {nu: costd_char(nu) for nu in words}
    return peel(words, costs, key, side)


def lexprime_top_words(beta):
    """For each theta-good nu, the largest word of the costandard character
    under the opposite-letter lexicographic order (restricted to words with a
    positive first letter)."""
    out = {}
    for nu in theta_good_words(beta):
        terms = [w for w in costd_char(nu).terms if w and w[0] > 0] or list(costd_char(nu).terms)
        out[nu] = max(terms, key=lexprime_key)
    return out


def symmetric(word):
    return all(theta_reverse(f) == f for f in lyndon_factorize(word))


def dual_canonical_agreement(beta):
    """{nu: simples[nu] == theta-b*_nu} for every theta-good nu of ``beta``."""
    table = simple_chars(beta)
    dual = weight_space(beta).elements("dual_canonical")
    return {nu: table.simples[nu] == dual[nu] for nu in table.words}


def graded_dim(u):
    total = LaurentPoly()
    for _, c in u.terms.items():
        total = total + c
    return total


def dim_table(beta):
    beta = DimVector(beta)
    table = simple_chars(beta)
    rows = []
    for nu in table.words:
        dim = graded_dim(table.simples[nu])
        at_one = dim.evaluate(1)
        assert at_one.denominator == 1
        rows.append({"word": format_word(nu), "dim": str(dim), "dim_at_1": int(at_one)})
    expected = tkpf(beta)
    if len(rows) != expected:
        raise CharacterError(f"{len(rows)} simples but tkpf = {expected}")
    return {"weight": str(beta), "simples": len(rows), "tkpf": expected, "rows": rows,
            "total_dim_at_1": sum(r["dim_at_1"] for r in rows)}


def lyndon_or_symmetric(word):
    return is_theta_lyndon(word) or symmetric(word)
