"""The quantum shuffle algebra on words in odd letters.

Elements are finite sums of words with Laurent-polynomial coefficients.
The product is the q-twisted shuffle: a letter ``b`` of the right factor
that ends up in front of a letter ``a`` of the left factor costs
``q^(-cartan(a, b))``.
"""

from __future__ import annotations

from functools import lru_cache

from .exactq import ONE, LaurentPoly
from .linalg import leading_words
from .rootdata import DimVector, cartan
from .words import (
    antilex_key,
    format_word,
    is_lyndon,
    lyndon_factorize,
    parse_word,
    sort_words,
    standard_factorize,
    theta_reverse,
    weight,
    words_of_weight,
)


def _add_into(acc, word, coeff):
    if not coeff:
        return
    cur = acc.get(word)
    if cur is None:
        acc[word] = coeff
    else:
        s = cur + coeff
        if s:
            acc[word] = s
        else:
            del acc[word]


class LinComb:
    """Finite formal sum of words with Laurent-polynomial coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        d = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for w, c in items:
                c = c if isinstance(c, LaurentPoly) else LaurentPoly(c)
                _add_into(d, tuple(w), c)
        self.terms = d

    @classmethod
    def _raw(cls, d, *args):
        obj = cls.__new__(cls)
        obj.terms = d
        return obj

    @classmethod
    def word(cls, w, coeff=ONE):
        return cls({tuple(w): coeff})

    def _like(self, d):
        return type(self)._raw(d)

    def coeff(self, w):
        return self.terms.get(tuple(w), LaurentPoly())

    def words(self):
        return sort_words(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, LinComb):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        d = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(d, w, c)
        return self._like(d)

    def __neg__(self):
        return self._like({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = c if isinstance(c, LaurentPoly) else LaurentPoly(c)
        if not c:
            return self._like({})
        return self._like({w: v * c for w, v in self.terms.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, LaurentPoly)):
            return self.scale(c)
        return NotImplemented

    def map_coeffs(self, f):
        d = {}
        for w, c in self.terms.items():
            v = f(c)
            if v:
                d[w] = v
        return self._like(d)

    def map_words(self, f):
        d = {}
        for w, c in self.terms.items():
            _add_into(d, f(w), c)
        return self._like(d)

    def max_word(self, key=antilex_key):
        return max(self.terms, key=key) if self.terms else None

    def min_word(self, key=antilex_key):
        return min(self.terms, key=key) if self.terms else None

    def weight(self):
        ws = {weight(w) for w in self.terms}
        if len(ws) > 1:
            raise ValueError("inhomogeneous element")
        return ws.pop() if ws else DimVector()

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in self.words():
            c = self.terms[w]
            parts.append(f"({c})*[{format_word(w)}]")
        return " + ".join(parts)

    def terms_json(self):
        return [{"word": format_word(w), "coeff": self.terms[w].to_json()} for w in self.words()]

    def to_json(self):
        wt = self.weight() if self.terms else DimVector()
        return {"weight": str(wt), "terms": self.terms_json()}

    @classmethod
    def from_json(cls, obj):
        return cls({parse_word(t["word"]): LaurentPoly.from_json(t["coeff"]) for t in obj["terms"]})


class ShuffleElt(LinComb):
    __slots__ = ()

    def __mul__(self, other):
        return shuffle_mul(self, other)


class FreeElt(LinComb):
    """Element of the free algebra; words multiply by concatenation."""

    __slots__ = ()

    def __mul__(self, other):
        d = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _add_into(d, w1 + w2, c1 * c2)
        return FreeElt._raw(d)


EMPTY = ()


def as_shuffle(x):
    if isinstance(x, ShuffleElt):
        return x
    if isinstance(x, LinComb):
        return ShuffleElt._raw(dict(x.terms))
    return ShuffleElt.word(tuple(x))


@lru_cache(maxsize=200000)
def shuffle_words(a, b):
    """a o b for words, as a tuple of (word, LaurentPoly) pairs.

    Recursion on the last letters: the result either ends with the last
    letter of ``b`` or with the last letter ``x`` of ``a``; in the second
    case every letter of ``b`` sits in front of ``x``.
    """
    if not a:
        return ((b, ONE),)
    if not b:
        return ((a, ONE),)
    x = a[-1]
    y = b[-1]
    d = {}
    for w, c in shuffle_words(a, b[:-1]):
        _add_into(d, w + (y,), c)
    shift = -sum(cartan(x, j) for j in b)
    for w, c in shuffle_words(a[:-1], b):
        _add_into(d, w + (x,), c.shift(shift))
    return tuple(d.items())


def shuffle_mul(x, y):
    x = as_shuffle(x)
    y = as_shuffle(y)
    d = {}
    for w1, c1 in x.terms.items():
        for w2, c2 in y.terms.items():
            c = c1 * c2
            for w, cw in shuffle_words(w1, w2):
                _add_into(d, w, cw * c)
    return ShuffleElt._raw(d)


def shuffle_by_cosets(w1, w2):
    """The same product evaluated literally as a sum over unsigned shuffles;
    kept as an independent check of :func:`shuffle_words`."""
    from .words import coset_reps, weyl_act

    m, k = len(w1), len(w2)
    letters = w1 + w2
    d = {}
    for perm in coset_reps("sym", m, k):
        deg = 0
        for a in range(m):
            for b in range(m, m + k):
                if perm[a] > perm[b]:
                    deg += cartan(letters[a], letters[b])
        _add_into(d, weyl_act(perm, letters), LaurentPoly.q(-deg))
    return ShuffleElt._raw(d)


def left_delete(i, x):
    d = {}
    for w, c in as_shuffle(x).terms.items():
        if w and w[0] == i:
            _add_into(d, w[1:], c)
    return type(x)._raw(d) if isinstance(x, LinComb) else ShuffleElt._raw(d)


def right_delete(i, x):
    d = {}
    for w, c in as_shuffle(x).terms.items():
        if w and w[-1] == i:
            _add_into(d, w[:-1], c)
    return type(x)._raw(d) if isinstance(x, LinComb) else ShuffleElt._raw(d)


def sigma(x):
    return as_shuffle(x).map_words(lambda w: tuple(reversed(w)))


def theta_sigma(x):
    return as_shuffle(x).map_words(theta_reverse)


@lru_cache(maxsize=100000)
def _xi_word(word):
    if len(word) <= 1:
        return ((word, ONE),)
    return tuple(shuffle_mul(ShuffleElt._raw(dict(_xi_word(word[:-1]))), ShuffleElt.word(word[-1:])).terms.items())


def xi_word(word):
    return ShuffleElt._raw(dict(_xi_word(tuple(word))))


def xi_eval(u):
    """Evaluate a free-algebra element letter by letter in the shuffle algebra."""
    if isinstance(u, tuple):
        return xi_word(u)
    d = {}
    for w, c in u.terms.items():
        for ww, cw in _xi_word(w):
            _add_into(d, ww, cw * c)
    return ShuffleElt._raw(d)


# Exponent sign in [x, y]_q = xy - q^(sign * |x|.|y|) yx.  The default +1
# makes the shuffle image of a good Lyndon bracket a multiple of the word.
BRACKET_SIGN = 1


def q_commutator(x, y, sign=None):
    sign = BRACKET_SIGN if sign is None else sign
    wx = x.weight()
    wy = y.weight()
    return x * y - (y * x).scale(LaurentPoly.q(sign * wx.dot(wy)))


@lru_cache(maxsize=None)
def _bracket_lyndon(word, sign):
    if len(word) == 1:
        return FreeElt.word(word)
    left, right = standard_factorize(word)
    return q_commutator(_bracket_lyndon(right, sign), _bracket_lyndon(left, sign), sign)


def lyndon_bracket(word, sign=None):
    """[nu] in the free algebra: nested q-commutators along standard
    factorisations, multiplied over the Lyndon factors."""
    sign = BRACKET_SIGN if sign is None else sign
    word = tuple(word)
    if not word:
        return FreeElt.word(())
    if is_lyndon(word):
        return _bracket_lyndon(word, sign)
    result = FreeElt.word(())
    for f in lyndon_factorize(word):
        result = result * _bracket_lyndon(f, sign)
    return result


def bracket_scalar(word, sign=None):
    """For a good Lyndon word, the scalar c with Xi([word]) = c * word."""
    image = xi_eval(lyndon_bracket(word, sign))
    if set(image.terms) != {tuple(word)}:
        raise ValueError(f"shuffle image of [{format_word(word)}] is not a multiple of the word")
    return image.coeff(word)


def good_words_bruteforce(beta, method="exact", seed=0):
    """Leading words of the span of Xi(mu) over all compositions mu of beta."""
    rows = (xi_word(mu).terms for mu in words_of_weight(beta))
    return sort_words(leading_words(rows, antilex_key, method=method, seed=seed))
