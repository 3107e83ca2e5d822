"""The theta-twisted shuffle module and its Enomoto-Kashiwara operators.

A module element is a sum of words with Laurent coefficients together with
a framing vector ``lam``.  The shuffle algebra acts on the right through
signed shuffles: letters of the right factor may be theta-flipped, in which
case they travel to the front in reversed order.
"""

from __future__ import annotations

from functools import lru_cache

from .exactq import ONE, InexactDivision, LaurentPoly, exact_div, qfact
from .linalg import leading_words
from .rootdata import DimVector, cartan, theta
from .shuffle import (
    FreeElt,
    LinComb,
    ShuffleElt,
    _add_into,
    as_shuffle,
    lyndon_bracket,
    shuffle_mul,
    shuffle_words,
    xi_word,
)
from .words import (
    antilex_key,
    compose,
    coset_reps,
    factor_multiplicities,
    format_word,
    lexprime_key,
    lyndon_factorize,
    s as s_k,
    s0,
    signed_length,
    sort_words,
    theta_reverse,
    theta_weight,
    weyl_act,
    words_of_theta_weight,
)

ZERO_FRAMING = DimVector()


class ThetaElt(LinComb):
    __slots__ = ("framing",)

    def __init__(self, terms=None, framing=ZERO_FRAMING):
        super().__init__(terms)
        self.framing = DimVector(framing)

    @classmethod
    def _raw(cls, d, framing=ZERO_FRAMING):
        obj = cls.__new__(cls)
        obj.terms = d
        obj.framing = framing
        return obj

    def _like(self, d):
        return ThetaElt._raw(d, self.framing)

    @classmethod
    def word(cls, w, coeff=ONE, framing=ZERO_FRAMING):
        return cls._raw({tuple(w): coeff if isinstance(coeff, LaurentPoly) else LaurentPoly(coeff)},
                        DimVector(framing))

    def __eq__(self, other):
        if isinstance(other, ThetaElt):
            return self.terms == other.terms and self.framing == other.framing
        return super().__eq__(other)

    __hash__ = LinComb.__hash__

    def weight(self):
        ws = {theta_weight(w) for w in self.terms}
        if len(ws) > 1:
            raise ValueError("inhomogeneous module element")
        return ws.pop() if ws else DimVector()

    def to_json(self):
        return {"framing": str(self.framing), "weight": str(self.weight()), "terms": self.terms_json()}

    @classmethod
    def from_json(cls, obj):
        from .words import parse_word

        return cls({parse_word(t["word"]): LaurentPoly.from_json(t["coeff"]) for t in obj["terms"]},
                   DimVector.parse(obj["framing"]))


def empty(framing=ZERO_FRAMING):
    return ThetaElt.word((), framing=framing)


def theta_framing(lam):
    lam = DimVector(lam)
    return lam + lam.theta()


def framing_pairing(lam, i):
    """theta-lambda . i, with theta-lambda = lam + theta(lam)."""
    return theta_framing(lam).dot_letter(i)


def _coerce_framing(u, lam):
    if lam is not None:
        return DimVector(lam)
    return u.framing if isinstance(u, ThetaElt) else ZERO_FRAMING


# -- the action --------------------------------------------------------------------

def signed_shuffle_degree(perm, letters, m, tl_dot):
    """Exponent d(nu, nu', w) for the signed shuffle ``perm`` of nu nu'.

    Sums cartan(i_a, i_b) over inverted pairs a < b, cartan(theta(i_a), i_b)
    over pairs with w(-a) > w(b), and subtracts theta-lambda . i_b for
    every flipped letter of the right factor.
    """
    n = len(letters)
    d = 0
    for a in range(n):
        wa = perm[a]
        ia = letters[a]
        for b in range(a + 1, n):
            wb = perm[b]
            if wa > wb:
                d += cartan(ia, letters[b])
            if -wa > wb:
                d += cartan(-ia, letters[b])
    for b in range(m, n):
        if perm[b] < 0:
            d -= tl_dot(letters[b])
    return d


@lru_cache(maxsize=200000)
def star_words(nu, nu2, lam):
    """nu * nu2 for words, by direct summation over signed shuffles."""
    tl = theta_framing(lam)
    letters = nu + nu2
    m = len(nu)
    d = {}
    for perm in coset_reps("hyperoct", m, len(nu2)):
        deg = signed_shuffle_degree(perm, letters, m, tl.dot_letter)
        _add_into(d, weyl_act(perm, letters), LaurentPoly.q(-deg))
    return tuple(d.items())


@lru_cache(maxsize=400000)
def star_letter_word(nu, i, lam):
    """nu * i = nu o i + q^(theta-lambda.i - i.|nu|) theta(i) o nu."""
    d = dict(shuffle_words(nu, (i,)))
    shift = framing_pairing(lam, i) - sum(cartan(i, a) for a in nu)
    for w, c in shuffle_words((theta(i),), nu):
        _add_into(d, w, c.shift(shift))
    return tuple(d.items())


def star(u, x, lam=None):
    """Right action of a shuffle-algebra element on a module element."""
    lam = _coerce_framing(u, lam)
    if not isinstance(u, LinComb):
        u = ThetaElt.word(tuple(u), framing=lam)
    x = as_shuffle(x)
    d = {}
    for w1, c1 in u.terms.items():
        for w2, c2 in x.terms.items():
            c = c1 * c2
            for w, cw in star_words(w1, w2, lam):
                _add_into(d, w, cw * c)
    return ThetaElt._raw(d, lam)


def star_letter(u, i, lam=None):
    """F_i: act by the single letter ``i`` using the insertion recursion."""
    lam = _coerce_framing(u, lam)
    d = {}
    for w1, c1 in u.terms.items():
        for w, cw in star_letter_word(w1, i, lam):
            _add_into(d, w, cw * c1)
    return ThetaElt._raw(d, lam)


def star_recursive(u, word, lam=None):
    """u * Xi(word), computed one letter at a time (independent oracle)."""
    lam = _coerce_framing(u, lam)
    for i in word:
        u = star_letter(u, i, lam)
    return u


# -- monomial, Lyndon and brute-force goodness ------------------------------------

@lru_cache(maxsize=200000)
def _theta_monomial(word, lam):
    if not word:
        return (((), ONE),)
    prev = ThetaElt._raw(dict(_theta_monomial(word[:-1], lam)), lam)
    return tuple(star_letter(prev, word[-1], lam).terms.items())


def theta_monomial(word, lam=ZERO_FRAMING):
    """theta-m_nu = empty * Xi(nu)."""
    lam = DimVector(lam)
    return ThetaElt._raw(dict(_theta_monomial(tuple(word), lam)), lam)


def theta_xi(u, lam=ZERO_FRAMING):
    """Image of a free-algebra element (or a word) under empty * Xi(-)."""
    lam = DimVector(lam)
    if isinstance(u, tuple):
        return theta_monomial(u, lam)
    d = {}
    for w, c in u.terms.items():
        for ww, cw in _theta_monomial(w, lam):
            _add_into(d, ww, cw * c)
    return ThetaElt._raw(d, lam)


def theta_lyndon(word, lam=ZERO_FRAMING, sign=None):
    """theta-l_nu = empty * Xi([nu])."""
    return theta_xi(lyndon_bracket(tuple(word), sign), lam)


def theta_good_bruteforce(beta, lam=ZERO_FRAMING, method="exact", seed=0):
    """Leading words of the span of all theta-monomials of theta-weight beta."""
    lam = DimVector(lam)
    rows = (dict(_theta_monomial(mu, lam)) for mu in words_of_theta_weight(beta))
    return sort_words(leading_words(rows, antilex_key, method=method, seed=seed))


def right_delete_mod(i, u):
    d = {}
    for w, c in u.terms.items():
        if w and w[-1] == i:
            _add_into(d, w[:-1], c)
    return ThetaElt._raw(d, u.framing)


# -- standard and costandard elements ------------------------------------------------

def theta_s(word):
    """Number of symmetric Lyndon factors, counted with multiplicity."""
    return sum(1 for f in lyndon_factorize(word) if theta_reverse(f) == f)


def plain_s(word):
    return sum(n * (n - 1) // 2 for _, n in factor_multiplicities(word))


def theta_kappa(word):
    from .bases import theta_kappa as tk

    return tk(word)


def standard_elt(word):
    """theta-Delta_nu = q^(theta_s) empty * Delta_nu with Delta_nu = q^(s) f_k o ... o f_1.

    Both shifts are positive powers here because a repeated letter shuffles
    with coefficient 1 + q^-2; this makes the coefficient of nu equal to
    theta-kappa_nu.
    """
    word = tuple(word)
    prod = ShuffleElt.word(())
    for f in lyndon_factorize(word):
        prod = shuffle_mul(prod, ShuffleElt.word(f))
    shift = plain_s(word) + theta_s(word)
    return star(empty(), prod).scale(LaurentPoly.q(shift))


def costandard_raw(word):
    """empty * (theta_w(f_k) o ... o theta_w(f_1)), before normalisation."""
    word = tuple(word)
    prod = ShuffleElt.word(())
    for f in lyndon_factorize(word):
        prod = shuffle_mul(prod, ShuffleElt.word(theta_reverse(f)))
    return star(empty(), prod)


def costandard_shift(word):
    """The exponent -theta_s - t making the coefficient of nu equal theta-kappa."""
    raw = costandard_raw(word)
    target = theta_kappa(word)
    c = raw.coeff(word)
    try:
        ratio = exact_div(target, c)
    except InexactDivision:
        ratio = None
    if ratio is None or len(ratio) != 1 or ratio.lead() != 1:
        raise ValueError(f"coefficient {c} of {format_word(word)} is not a power of q times {target}")
    return ratio.min_exp()


def t_exponent(word):
    """t(nu) pinned by the costandard normalisation."""
    return -costandard_shift(word) - theta_s(word)


def _tau_degree(j, y, tl):
    if j == 0:
        return -2 if y[0] == theta(y[0]) else tl[y[0]]
    a, b = y[j - 1], y[j]
    return -2 if a == b else -cartan(a, b)


def tau_w_degree(perm, word, lam=ZERO_FRAMING):
    """Degree of tau_w e(word) along a reduced expression of the signed permutation."""
    n = len(perm)
    tl = theta_framing(lam)
    total = 0
    w = tuple(perm)
    y = tuple(word)
    while signed_length(w) > 0:
        for j in range(n):
            sj = s0(n) if j == 0 else s_k(j, n)
            shorter = compose(w, sj)
            if signed_length(shorter) < signed_length(w):
                total += _tau_degree(j, y, tl)
                y = weyl_act(sj, y)
                w = shorter
                break
    return total


def costandard_coset_rep(word):
    """Longest minimal-length representative for the parabolic subgroup given
    by the Lyndon factor lengths, and the word it is applied to."""
    factors = lyndon_factorize(word)
    n = len(word)
    block_rev = []
    pos = 0
    for f in factors:
        block_rev += [pos + len(f) - i for i in range(len(f))]
        pos += len(f)
    w = compose(tuple(-l for l in range(1, n + 1)), tuple(block_rev))
    x = tuple(c for f in factors for c in theta_reverse(f))
    return w, x


def repeat_shift(word):
    """n(n-1)/2 per repeated Lyndon factor, doubled for symmetric factors."""
    return sum(n * (n - 1) // 2 * (2 if theta_reverse(f) == f else 1)
               for f, n in factor_multiplicities(word))


def t_tau_degree(word):
    """Diagnostic for t(nu): the tau_w degree plus :func:`repeat_shift`.
    Compare with :func:`t_exponent`, which is pinned by normalisation."""
    w, x = costandard_coset_rep(tuple(word))
    return tau_w_degree(w, x) + repeat_shift(word)


def costandard_elt(word):
    word = tuple(word)
    return costandard_raw(word).scale(LaurentPoly.q(costandard_shift(word)))


def max_word_prime(u):
    return u.max_word(key=lexprime_key)


# -- Enomoto-Kashiwara operators ---------------------------------------------------

def ek_apply(gen, i, u):
    """Apply E_i (right deletion), F_i (action of the letter) or T_i (weight scalar)."""
    if gen == "E":
        return right_delete_mod(i, u)
    if gen == "F":
        return star_letter(u, i)
    if gen == "T":
        return t_scale(i, u, 1)
    if gen == "Tinv":
        return t_scale(i, u, -1)
    raise ValueError(f"unknown generator {gen!r}")


def t_scale(i, u, power=1):
    d = {}
    tl = theta_framing(u.framing)
    for w, c in u.terms.items():
        e = tl.dot_letter(i) - theta_weight(w).dot_letter(i)
        d[w] = c.shift(power * e)
    return ThetaElt._raw(d, u.framing)


def divided_power(gen, i, k, u):
    for _ in range(k):
        u = ek_apply(gen, i, u)
    if k > 1:
        fk = qfact(k)
        u = u.map_coeffs(lambda c: exact_div(c, fk))
    return u


def serre_combination(gen, i, j, u):
    """sum_{a+b = 1 - i.j} (-1)^a X_i^(a) X_j X_i^(b) applied to u."""
    total = ThetaElt._raw({}, u.framing)
    top = 1 - cartan(i, j)
    for a in range(top + 1):
        b = top - a
        v = divided_power(gen, i, b, u)
        v = ek_apply(gen, j, v)
        v = divided_power(gen, i, a, v)
        total = total + (v if a % 2 == 0 else -v)
    return total


def ek_relation_defects(u, letters):
    """Check the EK relations on ``u``; returns a list of (relation, detail)."""
    failures = []
    for i in letters:
        Tu = ek_apply("T", i, u)
        if ek_apply("T", theta(i), u) != Tu:
            failures.append(("T_theta", (i,)))
        for j in letters:
            # commuting T's
            if ek_apply("T", i, ek_apply("T", j, u)) != ek_apply("T", j, Tu):
                failures.append(("T_commute", (i, j)))
            # T-conjugation of E and F
            e_exp = cartan(i, j) + cartan(theta(i), j)
            lhs = ek_apply("T", i, ek_apply("E", j, ek_apply("Tinv", i, u)))
            if lhs != ek_apply("E", j, u).scale(LaurentPoly.q(e_exp)):
                failures.append(("T_conj_E", (i, j)))
            lhs = ek_apply("T", i, ek_apply("F", j, ek_apply("Tinv", i, u)))
            if lhs != ek_apply("F", j, u).scale(LaurentPoly.q(-e_exp)):
                failures.append(("T_conj_F", (i, j)))
            # E_i F_j = q^(-i.j) F_j E_i + delta_ij + delta_{theta(i) j} T_i
            lhs = ek_apply("E", i, ek_apply("F", j, u))
            rhs = ek_apply("F", j, ek_apply("E", i, u)).scale(LaurentPoly.q(-cartan(i, j)))
            if i == j:
                rhs = rhs + u
            if theta(i) == j:
                rhs = rhs + Tu
            if lhs != rhs:
                failures.append(("EF_cross", (i, j)))
    return failures


def serre_defects(u, letters, gens=("E", "F")):
    failures = []
    for gen in gens:
        for i in letters:
            for j in letters:
                if i != j and serre_combination(gen, i, j, u):
                    failures.append((f"{gen}_serre", (i, j)))
    return failures


def qder2_defect(v, z, i):
    """E_i(v * z) minus the three-term expansion of the twisted derivation law."""
    from .shuffle import left_delete, right_delete

    lam = v.framing
    lhs = right_delete_mod(i, star(v, z, lam))
    zw = as_shuffle(z).weight()
    rhs = star(right_delete_mod(i, v), z, lam).scale(LaurentPoly.q(-DimVector({i: 1}).dot(zw)))
    rhs = rhs + star(v, right_delete(i, z), lam)
    ez = left_delete(theta(i), z)
    if ez:
        mu_v_i = theta_framing(lam).dot_letter(i) - v.weight().dot_letter(i)
        e = -ez.weight().dot_letter(i) + mu_v_i
        rhs = rhs + star(v, ez, lam).scale(LaurentPoly.q(e))
    return lhs - rhs


def window_letters(window):
    return [k for k in range(-window, window + 1) if k % 2]


def ek_suite(max_len=4, window=3, lam=None, serre=True):
    """EK identities on every word of length <= max_len over the window.

    The cross relation, T-conjugation and F-Serre are checked on single
    words; E-Serre only holds on the module itself, so it is checked on the
    theta-monomials of the same words.
    """
    from .words import all_words

    lam = DimVector(lam or {})
    letters = window_letters(window)
    failures = []
    count = 0
    for length in range(max_len + 1):
        for w in all_words(letters, length):
            u = ThetaElt.word(w, framing=lam)
            count += 1
            for name, ij in ek_relation_defects(u, letters):
                failures.append({"relation": name, "letters": list(ij), "word": format_word(w)})
            if serre:
                for name, ij in serre_defects(u, letters, ("F",)):
                    failures.append({"relation": name, "letters": list(ij), "word": format_word(w)})
                m = theta_monomial(w, lam)
                for name, ij in serre_defects(m, letters, ("E",)):
                    failures.append({"relation": name, "letters": list(ij), "word": f"m({format_word(w)})"})
    return {"words": count, "letters": letters, "framing": str(lam), "failures": failures}


def axiom_suite(max_len=3, window=3, lam=None, seed=0, samples=20):
    """Associativity of the shuffle product, the module axiom
    (u * x) * y = u * (x o y), and agreement of the coset sum with the
    letter recursion; exhaustive on short words plus seeded random sums."""
    import random

    from .words import all_words

    lam = DimVector(lam or {})
    letters = window_letters(window)
    words = [w for n in range(max_len + 1) for w in all_words(letters, n)]
    short = [w for w in words if len(w) <= max(1, max_len - 1)]
    failures = []
    checked = 0
    for a in short:
        for b in short:
            if len(a) + len(b) > max_len:
                continue
            checked += 1
            u = ThetaElt.word(a, framing=lam)
            if star(u, xi_word(b), lam) != star_recursive(u, b, lam):
                failures.append({"axiom": "coset_vs_recursion", "words": [format_word(a), format_word(b)]})
    rng = random.Random(seed)
    for _ in range(samples):
        a, b, c = (rng.choice(short) for _ in range(3))
        if len(a) + len(b) + len(c) > max_len + 2:
            continue
        checked += 1
        x, y, z = ShuffleElt.word(a), ShuffleElt.word(b), ShuffleElt.word(c)
        if shuffle_mul(shuffle_mul(x, y), z) != shuffle_mul(x, shuffle_mul(y, z)):
            failures.append({"axiom": "associativity", "words": [format_word(a), format_word(b), format_word(c)]})
        u = ThetaElt.word(a, framing=lam)
        if star(star(u, y, lam), z, lam) != star(u, shuffle_mul(y, z), lam):
            failures.append({"axiom": "module", "words": [format_word(a), format_word(b), format_word(c)]})
    return {"checked": checked, "framing": str(lam), "seed": seed, "failures": failures}
