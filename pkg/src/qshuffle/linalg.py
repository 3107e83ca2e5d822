"""Row reduction over Z[q, q^-1] and Q(q), plus a modular shortcut.

Rows are sparse dicts ``{word: coefficient}``.  Pivoting always uses the
largest word of a row in a caller-supplied order, so the pivot words of the
echelon form are exactly the leading words of the row space.
"""

from __future__ import annotations

import random

from .exactq import ONE, LaurentPoly, RationalQ, exact_div, laurent_gcd

MERSENNE_61 = (1 << 61) - 1


def _primitive(row):
    g = None
    for c in row.values():
        g = c if g is None else laurent_gcd(g, c)
        if g.is_unit() or g == ONE:
            return row
    if g is None or g.is_unit():
        return row
    return {w: exact_div(c, g) for w, c in row.items()}


def echelon_exact(rows, key):
    """Fraction-free elimination over Z[q, q^-1].

    Each incoming row is reduced against the pivot rows found so far by
    cross-multiplication (a*r - c*P) followed by removal of the common
    Laurent-polynomial content, which keeps entries small.  Returns the list
    of pivot rows, keyed by their leading word, in the order found.
    """
    pivots = {}
    for row in rows:
        r = {w: c for w, c in row.items() if c}
        while r:
            lead = max(r, key=key)
            prow = pivots.get(lead)
            if prow is None:
                pivots[lead] = _primitive(r)
                break
            a = prow[lead]
            c = r[lead]
            new = {}
            for w, v in r.items():
                new[w] = v * a
            for w, v in prow.items():
                nv = new.get(w, LaurentPoly()) - v * c
                if nv:
                    new[w] = nv
                else:
                    new.pop(w, None)
            r = _primitive(new) if new else new
    return pivots


def echelon_mod(rows, key, p=MERSENNE_61, point=None, seed=0):
    """Elimination after evaluating q at a random point modulo a prime.

    Leading-word sets agree with the exact computation unless the point is
    a root of one of finitely many nonzero polynomials.
    """
    if point is None:
        point = random.Random(seed).randrange(2, p - 1)
    inv = pow(point, -1, p)
    cache = {}

    def ev(poly):
        total = 0
        for e, c in poly.items():
            x = cache.get(e)
            if x is None:
                x = pow(point, e, p) if e >= 0 else pow(inv, -e, p)
                cache[e] = x
            total += c * x
        return total % p

    # rows are keyed by the order key itself so the pivot search is a plain max
    pivots = {}
    words = {}
    for row in rows:
        r = {}
        for w, c in row.items():
            v = ev(c) if isinstance(c, LaurentPoly) else c % p
            if v:
                k = key(w)
                words[k] = w
                r[k] = v
        while r:
            lead = max(r)
            prow = pivots.get(lead)
            if prow is None:
                scale = pow(r[lead], -1, p)
                pivots[lead] = {w: v * scale % p for w, v in r.items()}
                break
            c = r[lead]
            for w, v in prow.items():
                nv = (r.get(w, 0) - c * v) % p
                if nv:
                    r[w] = nv
                else:
                    r.pop(w, None)
    return {words[k]: {words[kk]: v for kk, v in row.items()} for k, row in pivots.items()}


def leading_words(rows, key, method="exact", seed=0):
    rows = list(rows)
    if method == "exact":
        return set(echelon_exact(rows, key))
    if method == "modular":
        return set(echelon_mod(rows, key, seed=seed))
    raise ValueError(f"unknown elimination method {method!r}")


# -- dense linear algebra over Q(q) ----------------------------------------------

def rq(x):
    return RationalQ.coerce(x)


def solve_rq(matrix, rhs_columns):
    """Solve M X = B over Q(q) by Gauss-Jordan elimination.

    ``matrix`` is a square list of lists, ``rhs_columns`` a list of lists
    with the same number of rows.  Raises ``ValueError`` if M is singular.
    """
    n = len(matrix)
    m = len(rhs_columns[0]) if rhs_columns else 0
    a = [[rq(x) for x in row] + [rq(x) for x in rhs] for row, rhs in zip(matrix, rhs_columns)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inverse()
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and not a[r][col].is_zero():
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:n + m] for row in a]


def inverse_rq(matrix):
    n = len(matrix)
    ident = [[RationalQ(1) if i == j else RationalQ(0) for j in range(n)] for i in range(n)]
    return solve_rq(matrix, ident)


def matmul_rq(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = RationalQ(0)
            for t in range(k):
                if not (a[i][t] == 0 or b[t][j] == 0):
                    s = s + rq(a[i][t]) * rq(b[t][j])
            row.append(s)
        out.append(row)
    return out


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []
