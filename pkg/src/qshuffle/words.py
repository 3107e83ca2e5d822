"""Words in odd letters: orders, Lyndon factorisations, good and theta-good
words, and the (signed) permutation actions used by shuffle products.

Words are plain tuples of odd integers.  The empty word is ``()``.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

from .rootdata import DimVector, check_letter, theta

# The anti-lexicographic order reads words from the right.  It is the one
# swappable convention in the package; the tag is embedded in cache keys.
ORDER_TAG = "antilex-right-smaller-letter-shorter-tail"


def antilex_key(word):
    return tuple(reversed(word))


def lexprime_key(word):
    return tuple(-k for k in word)


ORDER_KEYS = {"antilex": antilex_key, "lexprime": lexprime_key}


def compare(order, a, b):
    """Return -1, 0 or 1 comparing ``a`` and ``b`` in the named order."""
    key = ORDER_KEYS[order]
    ka, kb = key(a), key(b)
    return (ka > kb) - (ka < kb)


def word_max(words, order="antilex"):
    return max(words, key=ORDER_KEYS[order])


def word_min(words, order="antilex"):
    return min(words, key=ORDER_KEYS[order])


def sort_words(words, order="antilex", reverse=False):
    return sorted(words, key=ORDER_KEYS[order], reverse=reverse)


# -- text form ---------------------------------------------------------------

def format_word(word):
    return ",".join(str(k) for k in word)


def parse_word(text):
    text = text.strip()
    if text in ("", "()", "∅", "empty"):
        return ()
    letters = []
    pos = 0
    for part in text.split(","):
        piece = part.strip()
        try:
            letters.append(check_letter(int(piece)))
        except ValueError:
            raise ValueError(f"malformed letter {piece!r} at position {pos} in word {text!r}") from None
        pos += len(part) + 1
    return tuple(letters)


def weight(word):
    return DimVector.of_word(word)


def theta_weight(word):
    return DimVector.theta_of_word(word)


# -- Weyl group actions ---------------------------------------------------------

def theta_reverse(word):
    """theta(nu_n) ... theta(nu_1): the action of the longest signed shuffle."""
    return tuple(-k for k in reversed(word))


def reverse(word):
    return tuple(reversed(word))


def weyl_act(perm, word):
    """Apply a signed permutation (window notation, 1-based images) to a word.

    Position |w(j)| of the result carries nu_j, theta-applied when w(j) < 0.
    """
    if len(perm) != len(word):
        raise ValueError("signed permutation and word have different lengths")
    out = [0] * len(word)
    for j, image in enumerate(perm):
        out[abs(image) - 1] = word[j] if image > 0 else theta(word[j])
    return tuple(out)


def s0(n):
    return (-1,) + tuple(range(2, n + 1))


def s(k, n):
    images = list(range(1, n + 1))
    images[k - 1], images[k] = images[k], images[k - 1]
    return tuple(images)


def theta_longest(n):
    """The signed permutation l -> -(n - l + 1)."""
    return tuple(-(n - l + 1) for l in range(1, n + 1))


def compose(u, v):
    """(u v)(l) = u(v(l)) for signed permutations in window notation."""
    return tuple(u[abs(x) - 1] if x > 0 else -u[abs(x) - 1] for x in v)


def inverse(w):
    out = [0] * len(w)
    for j, image in enumerate(w, start=1):
        out[abs(image) - 1] = j if image > 0 else -j
    return tuple(out)


def signed_length(w):
    """Coxeter length of a signed permutation in type B."""
    n = len(w)
    inv = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])
    neg_pairs = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] + w[j] < 0)
    negs = sum(1 for x in w if x < 0)
    return inv + neg_pairs + negs


def coset_reps(kind, m, k):
    """Shortest left coset representatives for S_m x S_k in S_{m+k} ("sym")
    or W_m x S_k in W_{m+k} ("hyperoct").

    The hyperoctahedral representatives send the first m positions to
    increasing positive positions and the last k positions to an increasing
    sequence of signed positions; the negative ones therefore form a prefix
    of the second block and land in reversed order.
    """
    n = m + k
    positions = range(1, n + 1)
    flips = range(k + 1) if kind == "hyperoct" else (0,)
    if kind not in ("sym", "hyperoct"):
        raise ValueError(f"unknown coset kind {kind!r}")
    for f in flips:
        for first in combinations(positions, m):
            rest = [p for p in positions if p not in first]
            for flipped in combinations(rest, f):
                unflipped = [p for p in rest if p not in flipped]
                images = list(first) + [-p for p in reversed(flipped)] + unflipped
                yield tuple(images)


def coset_count(kind, m, k):
    return comb(m + k, k) * (2 ** k if kind == "hyperoct" else 1)


# -- Lyndon words ------------------------------------------------------------------

def is_lyndon(word, key=antilex_key):
    """Nontrivial and strictly smaller than every proper left factor."""
    if not word:
        return False
    kw = key(word)
    return all(kw < key(word[:i]) for i in range(1, len(word)))


def lyndon_factorize(word):
    """Unique factorisation nu = f_k ... f_1 into Lyndon words with the
    rightmost factor largest; returned left to right.

    Under the anti-lexicographic order a word is Lyndon exactly when its
    reversal is Lyndon in the usual lexicographic sense, so this is Duval's
    algorithm run on the reversed word.
    """
    rev = list(reversed(word))
    n = len(rev)
    factors = []
    i = 0
    while i < n:
        j, k = i + 1, i
        while j < n and rev[k] <= rev[j]:
            k = i if rev[k] < rev[j] else k + 1
            j += 1
        while i <= k:
            factors.append(tuple(reversed(rev[i:i + j - k])))
            i += j - k
    return list(reversed(factors))


def standard_factorize(word):
    """(nu_(1), nu_(2)) with nu_(2) the longest proper Lyndon right factor."""
    if len(word) < 2 or not is_lyndon(word):
        raise ValueError(f"standard factorisation needs a Lyndon word of length >= 2, got {format_word(word)}")
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return word[:i], word[i:]
    raise AssertionError("a single letter is always a Lyndon right factor")


# -- good and theta-good words ----------------------------------------------------

def descending(hi, lo):
    return tuple(range(hi, lo - 1, -2))


def is_good_lyndon(word):
    """Good Lyndon words are the descending runs k, k-2, ..., m."""
    return len(word) > 0 and all(word[i] - word[i + 1] == 2 for i in range(len(word) - 1))


def good_lyndon_words(beta):
    beta = DimVector(beta)
    supp = beta.support()
    if not supp or any(m != 1 for _, m in beta.items()):
        return []
    lo, hi = supp[0], supp[-1]
    if supp != list(range(lo, hi + 1, 2)):
        return []
    return [descending(hi, lo)]


def is_good(word):
    return all(is_good_lyndon(f) for f in lyndon_factorize(word))


def _a_roots_in(beta):
    supp = set(beta.support())
    roots = []
    for lo in sorted(supp):
        hi = lo
        while hi in supp:
            roots.append(descending(hi, lo))
            hi += 2
    return roots


def _products(beta, factors, weight_of):
    """All words that are non-increasing (right to left) products of the
    given Lyndon factors with total weight ``beta``."""
    factors = sort_words(factors)
    out = []

    def rec(rest, start, acc):
        if not rest:
            # acc is in ascending order; leftmost factor smallest
            out.append(tuple(x for f in acc for x in f))
            return
        for idx in range(start, len(factors)):
            w = weight_of(factors[idx])
            if rest.contains(w):
                acc.append(factors[idx])
                rec(rest - w, idx, acc)
                acc.pop()

    rec(DimVector(beta), 0, [])
    return sort_words(out)


def good_words(beta):
    return _products(beta, _a_roots_in(DimVector(beta)), weight)


def is_theta_lyndon(word):
    return is_good_lyndon(word) and antilex_key(word) >= antilex_key(theta_reverse(word))


def is_symmetric_lyndon(word):
    return is_theta_lyndon(word) and theta_reverse(word) == word


def theta_lyndon_words(beta=None, window=None):
    """theta-Lyndon words, either of theta-weight ``beta`` or all with letters
    in ``window`` (a bound on |k|)."""
    if beta is not None:
        beta = DimVector(beta)
        return [w for w in _theta_lyndon_inside(beta) if theta_weight(w) == beta]
    letters = [k for k in range(-window, window + 1) if k % 2]
    out = [descending(hi, lo) for hi in letters for lo in letters if lo <= hi and lo + hi >= 0]
    return sort_words(out)


def _theta_lyndon_inside(beta):
    return [w for w in _a_roots_in(beta) if is_theta_lyndon(w) and beta.contains(theta_weight(w))]


def theta_good_words(beta, lam=None):
    """theta-good words of theta-weight ``beta`` for zero framing."""
    if lam is not None and DimVector(lam):
        raise ValueError("explicit enumeration only covers zero framing; use thetamod.theta_good_bruteforce")
    beta = DimVector(beta)
    return _products(beta, _theta_lyndon_inside(beta), theta_weight)


def is_theta_good_lambda0(word):
    return all(is_theta_lyndon(f) for f in lyndon_factorize(word))


def split_symmetric(word):
    """(nu^theta, nu_theta): the symmetric and the non-symmetric Lyndon factors."""
    sym, nonsym = [], []
    for f in lyndon_factorize(word):
        (sym if theta_reverse(f) == f else nonsym).append(f)
    return tuple(x for f in sym for x in f), tuple(x for f in nonsym for x in f)


def xi(k):
    """The symmetric theta-Lyndon word 2k-1, 2k-3, ..., -2k+1."""
    if k < 1:
        raise ValueError("xi(k) needs k >= 1")
    return descending(2 * k - 1, -2 * k + 1)


def factor_multiplicities(word):
    """Lyndon factors grouped as [(factor, multiplicity)], left to right."""
    groups = []
    for f in lyndon_factorize(word):
        if groups and groups[-1][0] == f:
            groups[-1][1] += 1
        else:
            groups.append([f, 1])
    return [(f, n) for f, n in groups]


def all_words(letters, length):
    if length == 0:
        return [()]
    return [w + (k,) for w in all_words(letters, length - 1) for k in letters]


def words_of_weight(beta):
    """All compositions of ``beta`` (ordinary weight)."""
    beta = DimVector(beta)
    out = []

    def rec(rest, acc):
        if not rest:
            out.append(tuple(acc))
            return
        for k, _ in rest.items():
            acc.append(k)
            rec(rest - DimVector({k: 1}), acc)
            acc.pop()

    rec(beta, [])
    return sort_words(out)


def words_of_theta_weight(beta):
    """All words whose theta-weight is ``beta`` (isotropic compositions)."""
    beta = DimVector(beta)
    half = {}
    for k, m in beta.items():
        if k > 0:
            half[k] = m
    out = []

    def rec(rest, acc):
        if not any(rest.values()):
            out.append(tuple(acc))
            return
        for k in sorted(rest):
            if rest[k]:
                rest[k] -= 1
                for letter in (k, -k):
                    acc.append(letter)
                    rec(rest, acc)
                    acc.pop()
                rest[k] += 1

    if not beta.is_self_dual():
        return []
    rec(half, [])
    return sort_words(out)
