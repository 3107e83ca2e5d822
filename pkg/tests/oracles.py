"""Brute-force reference implementations used to freeze expected values.

These deliberately avoid the package's algorithms: shuffles are enumerated
as position subsets, Lyndon words are tested against every rotation, root
multisets are counted by plain recursion.
"""

from itertools import combinations, product

from qshuffle.exactq import LaurentPoly
from qshuffle.rootdata import DimVector, cartan


def bilinear(i, j):
    if i == j:
        return 2
    return -1 if abs(i - j) == 2 else 0


def shuffle_pair(a, b):
    """{word: LaurentPoly} for a o b by enumerating interleavings."""
    n = len(a) + len(b)
    out = {}
    for pos in combinations(range(n), len(b)):
        pos_set = set(pos)
        word, ia, ib = [], 0, 0
        exp = 0
        for p in range(n):
            if p in pos_set:
                word.append(b[ib])
                # b[ib] sits in front of every a letter not yet placed
                exp -= sum(bilinear(x, b[ib]) for x in a[ia:])
                ib += 1
            else:
                word.append(a[ia])
                ia += 1
        w = tuple(word)
        out[w] = out.get(w, LaurentPoly()) + LaurentPoly.q(exp)
    return {w: c for w, c in out.items() if c}


def lc_add(acc, d, scale=None):
    for w, c in d.items():
        c = c * scale if scale is not None else c
        acc[w] = acc.get(w, LaurentPoly()) + c
        if not acc[w]:
            del acc[w]
    return acc


def star_letter(terms, i, tl):
    """Module action of one letter: u * i = u o i + q^(tl.i - i.|u|) theta(i) o u."""
    out = {}
    for w, c in terms.items():
        lc_add(out, shuffle_pair(w, (i,)), c)
        shift = sum(m * bilinear(k, i) for k, m in tl.items()) - sum(bilinear(i, x) for x in w)
        lc_add(out, shuffle_pair((-i,), w), c * LaurentPoly.q(shift))
    return out


def theta_monomial(word, lam=None):
    lam = DimVector(lam or {})
    tl = (lam + lam.theta()).as_dict()
    terms = {(): LaurentPoly(1)}
    for i in word:
        terms = star_letter(terms, i, tl)
    return terms


def antilex(w):
    return tuple(reversed(w))


def is_lyndon(w):
    if not w:
        return False
    rots = [w[k:] + w[:k] for k in range(1, len(w))]
    return all(antilex(w) < antilex(r) for r in rots)


def aperiodic(w):
    return all(w[k:] + w[:k] != w for k in range(1, len(w)))


def necklace_classes(letters, length):
    seen = {}
    for w in product(letters, repeat=length):
        rep = min(w[k:] + w[:k] for k in range(length))
        seen.setdefault(rep, []).append(w)
    return seen


def bc_positive_roots(window):
    """Self-dual vectors of the BC roots: beta_{lo,hi} + theta(beta_{lo,hi}),
    deduplicated as vectors."""
    letters = [k for k in range(-window, window + 1) if k % 2]
    roots = set()
    for lo in letters:
        for hi in letters:
            if lo <= hi:
                d = {}
                for k in range(lo, hi + 1, 2):
                    d[k] = d.get(k, 0) + 1
                    d[-k] = d.get(-k, 0) + 1
                roots.add(DimVector(d))
    return sorted(roots, key=lambda v: v.items())


def count_partitions(beta, roots):
    roots = [r for r in roots if beta.contains(r)]

    def rec(rest, idx):
        if not rest:
            return 1
        total = 0
        for j in range(idx, len(roots)):
            if rest.contains(roots[j]):
                total += rec(rest - roots[j], j)
        return total

    return rec(DimVector(beta), 0)


def kostant_count(beta, window=9):
    return count_partitions(DimVector(beta), bc_positive_roots(window))


def rank_over_q_at(rows, words, point):
    """Rank of the coefficient matrix evaluated at q = point (exact Fractions)."""
    from fractions import Fraction

    mat = [[Fraction(r.get(w, LaurentPoly()).evaluate(point)) if w in r else Fraction(0) for w in words] for r in rows]
    rank, col = 0, 0
    m = len(mat)
    ncol = len(words)
    while rank < m and col < ncol:
        piv = next((i for i in range(rank, m) if mat[i][col]), None)
        if piv is None:
            col += 1
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for i in range(m):
            if i != rank and mat[i][col]:
                f = mat[i][col] / mat[rank][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
        col += 1
    return rank
