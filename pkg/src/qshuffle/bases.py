"""PBW, canonical and dual bases of the zero-framing module in word coordinates.

Lower-module vectors are kept in theta-monomial coordinates: a dict from
theta-good words mu to Q(q) coefficients c_mu, meaning sum c_mu theta-m_mu.
Each theta-m_mu is the image of an F-monomial applied to the highest weight
vector, so the bar involution conjugates these coordinates.

The pairing satisfies pair(theta-m_nu, y) = coefficient of the word nu in y.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .exactq import ONE, LaurentPoly, RationalQ, exact_div, qdblfact, qfact
from .linalg import inverse_rq, matmul_rq, rq, solve_rq, transpose
from .rootdata import DimVector, n_of
from .shuffle import _add_into
from .thetamod import ThetaElt, theta_lyndon, theta_monomial
from .words import (
    factor_multiplicities,
    format_word,
    lyndon_factorize,
    theta_reverse,
    theta_good_words,
    weight,
)


class BasisError(ArithmeticError):
    """A structural property of a basis computation failed; carries the matrix."""

    def __init__(self, message, matrix=None):
        super().__init__(message)
        self.matrix = matrix


def kappa(word):
    out = ONE
    for _, n in factor_multiplicities(word):
        out = out * qfact(n)
    return out


def theta_kappa(word):
    out = ONE
    for f, n in factor_multiplicities(word):
        out = out * (qdblfact(2 * n) if theta_reverse(f) == f else qfact(n))
    return out


def bracket_diagonal(word):
    """Coefficient of theta-m_nu in theta-l_nu: prod (-1)^(len-1) q^N(|f|)."""
    out = ONE
    for f in lyndon_factorize(word):
        out = out * LaurentPoly.monomial(n_of(weight(f)), (-1) ** (len(f) - 1))
    return out


def trans_ml_diagonal(word):
    """Diagonal of theta-m in theta-l coordinates: prod (-1)^(len-1) q^-N(|f|)."""
    return bracket_diagonal(word) ** -1


def pbw_elt(word):
    """theta-P_nu in word coordinates.

    theta-l_nu divided by theta-kappa_nu and by the unit bracket_diagonal(nu),
    so that its theta-m_nu coordinate is exactly 1/theta-kappa_nu.
    """
    word = tuple(word)
    tk = theta_kappa(word)
    unit = bracket_diagonal(word) ** -1
    return theta_lyndon(word).map_coeffs(lambda c: exact_div(c, tk) * unit)


def lower_to_words(coords, mono):
    """sum c_mu theta-m_mu as a ThetaElt; coefficients must come out Laurent."""
    acc = {}
    for mu, c in coords.items():
        c = rq(c)
        if c.is_zero():
            continue
        for w, cw in mono[mu].terms.items():
            cur = acc.get(w)
            acc[w] = c * cw if cur is None else cur + c * cw
    d = {}
    for w, c in acc.items():
        if not c.is_zero():
            d[w] = c.to_laurent()
    return ThetaElt._raw(d)


class WeightSpace:
    """All basis data for one self-dual weight at zero framing."""

    def __init__(self, beta):
        self.beta = DimVector(beta)
        self.words = theta_good_words(self.beta)
        self.index = {w: i for i, w in enumerate(self.words)}
        self.mono = {w: theta_monomial(w) for w in self.words}
        n = len(self.words)
        # gram[i][j] = pair(theta-m_i, theta-m_j) = coefficient of word i in theta-m_j
        self.gram = [[self.mono[self.words[j]].coeff(self.words[i]) for j in range(n)] for i in range(n)]
        self._gram_inv = None

    def __len__(self):
        return len(self.words)

    # -- coordinates --------------------------------------------------------------
    def gram_inverse(self):
        if self._gram_inv is None:
            self._gram_inv = inverse_rq(self.gram)
        return self._gram_inv

    def expand(self, y):
        """theta-m coordinates of ``y``; raises if ``y`` is not in the module."""
        vals = [rq(y.coeff(w)) for w in self.words]
        ginv = self.gram_inverse()
        coords = [sum((ginv[i][j] * vals[j] for j in range(len(vals))), RationalQ(0))
                  for i in range(len(vals))]
        back = lower_to_words(dict(zip(self.words, coords)), self.mono)
        if back != ThetaElt._raw(dict(y.terms)):
            raise BasisError("element is not in the span of the theta-monomials")
        return coords

    def to_words(self, coords):
        return lower_to_words(dict(zip(self.words, coords)), self.mono)

    def pair(self, x, y):
        """pair of two lower vectors given in theta-m coordinates."""
        n = len(self.words)
        total = RationalQ(0)
        for i in range(n):
            if x[i].is_zero():
                continue
            for j in range(n):
                if not y[j].is_zero() and self.gram[i][j]:
                    total = total + x[i] * y[j] * self.gram[i][j]
        return total

    def pair_words(self, x, y):
        """pair(x, y) with x in theta-m coordinates and y a word-coordinate element."""
        total = RationalQ(0)
        for i, w in enumerate(self.words):
            c = y.coeff(w)
            if c and not x[i].is_zero():
                total = total + x[i] * c
        return total

    def bar_lower(self, y):
        coords = [c.bar() for c in self.expand(y)]
        return self.to_words(coords)

    # -- transition matrices (rows = basis vectors, columns = theta-m_mu) ----------
    @property
    def lyndon_matrix(self):
        if not hasattr(self, "_lyn"):
            self._lyn = [self.expand(theta_lyndon(w)) for w in self.words]
        return self._lyn

    @property
    def pbw_matrix(self):
        if not hasattr(self, "_pbw"):
            rows = []
            for w, row in zip(self.words, self.lyndon_matrix):
                scale = RationalQ(ONE, theta_kappa(w) * bracket_diagonal(w))
                rows.append([c * scale for c in row])
            self._pbw = rows
        return self._pbw

    @property
    def bar_pbw_matrix(self):
        """D with bar(theta-P_nu) = sum_mu D[nu][mu] theta-P_mu."""
        if not hasattr(self, "_barpbw"):
            a = self.pbw_matrix
            abar = [[c.bar() for c in row] for row in a]
            self._barpbw = matmul_rq(abar, inverse_rq(a))
        return self._barpbw

    @property
    def canonical_pbw(self):
        """C with theta-b_nu = sum_mu C[nu][mu] theta-P_mu (unitriangular)."""
        if not hasattr(self, "_can"):
            self._can = _canonical_solve(self.bar_pbw_matrix)
        return self._can

    @property
    def canonical_matrix(self):
        return matmul_rq(self.canonical_pbw, self.pbw_matrix)

    def dual_matrix(self, rows):
        """theta-m coordinates of the basis dual to the given lower basis."""
        # pair(row_nu, y_mu) = delta  with y_mu = sum b theta-m: rows . G . b = e
        prod = matmul_rq(rows, self.gram)
        return transpose(inverse_rq(prod))

    def elements(self, kind):
        rows = {
            "monomial": None,
            "lyndon": self.lyndon_matrix,
            "pbw": self.pbw_matrix,
            "canonical": None,
            "dual_pbw": None,
            "dual_canonical": None,
        }
        if kind not in rows:
            raise ValueError(f"unknown basis kind {kind!r}")
        if kind == "monomial":
            return {w: self.mono[w] for w in self.words}
        if kind == "lyndon":
            return {w: theta_lyndon(w) for w in self.words}
        if kind == "pbw":
            return {w: pbw_elt(w) for w in self.words}
        if kind == "canonical":
            m = self.canonical_matrix
        elif kind == "dual_pbw":
            m = self.dual_matrix(self.pbw_matrix)
        else:
            m = self.dual_matrix(self.canonical_matrix)
        return {w: self.to_words(row) for w, row in zip(self.words, m)}

    def family(self, kind):
        entries = self.elements(kind)
        transitions = {}
        if kind in ("canonical", "dual_canonical"):
            transitions["to_pbw"] = self.canonical_pbw
        if kind in ("pbw", "dual_pbw"):
            transitions["bar_pbw"] = self.bar_pbw_matrix
        if kind == "lyndon":
            transitions["to_monomial"] = self.lyndon_matrix
        return BasisFamily(kind, self.beta, list(self.words), entries, transitions)


def _canonical_solve(dmat):
    """Triangular solve for C: rows C[nu] = e_nu + sum_{mu > nu} p_mu C[mu],
    p_mu in qZ[q], bar-invariant under the PBW bar matrix ``dmat``."""
    n = len(dmat)
    zero, one = RationalQ(0), RationalQ(1)
    _check_unitriangular(dmat, "bar(theta-P) in theta-P coordinates")
    can = [None] * n
    for v in range(n - 1, -1, -1):
        # r = bar(P_v) - P_v, expressed in the canonical vectors above v
        r = [dmat[v][j] - (one if j == v else zero) for j in range(n)]
        p = [zero] * n
        for mu in range(v + 1, n):
            c = r[mu]
            if c.is_zero():
                continue
            c = c.to_laurent()
            pos = LaurentPoly({e: a for e, a in c.items() if e > 0})
            if pos - pos.bar() != c:
                raise BasisError(f"bar correction {c} is not of the form p - bar(p)", dmat)
            p[mu] = rq(pos)
            r = [x - rq(c) * y for x, y in zip(r, can[mu])]
        if any(not x.is_zero() for x in r):
            raise BasisError("bar correction did not reduce to zero", dmat)
        row = [one if j == v else zero for j in range(n)]
        for mu in range(v + 1, n):
            if not p[mu].is_zero():
                row = [x + p[mu] * y for x, y in zip(row, can[mu])]
        can[v] = row
    for v in range(n):
        for mu in range(v + 1, n):
            c = can[v][mu]
            if not c.is_zero():
                lc = c.to_laurent()
                if lc.min_exp() < 1:
                    raise BasisError(f"canonical coefficient {lc} not in qZ[q]", can)
    return can


def _check_unitriangular(m, what):
    n = len(m)
    for i in range(n):
        if m[i][i] != 1:
            raise BasisError(f"{what}: diagonal entry {m[i][i]} at {i}", m)
        for j in range(i):
            if not m[i][j].is_zero():
                raise BasisError(f"{what}: entry below the diagonal at ({i}, {j})", m)
        for j in range(i + 1, n):
            if not m[i][j].is_laurent():
                raise BasisError(f"{what}: entry {m[i][j]} is not a Laurent polynomial", m)


def is_upper_unitriangular_laurent(m):
    try:
        _check_unitriangular(m, "matrix")
    except BasisError:
        return False
    return True


@lru_cache(maxsize=256)
def weight_space(beta):
    return WeightSpace(DimVector(beta))


@dataclass
class BasisFamily:
    kind: str
    weight: DimVector
    words: list
    entries: dict
    transitions: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "kind": self.kind,
            "weight": str(self.weight),
            "index": [format_word(w) for w in self.words],
            "elements": [{"word": format_word(w), "terms": self.entries[w].terms_json()} for w in self.words],
            "transitions": {name: [[matrix_entry_json(c) for c in row] for row in m]
                            for name, m in sorted(self.transitions.items())},
        }


def matrix_entry_json(c):
    c = rq(c)
    if c.is_laurent():
        return str(c.to_laurent())
    return str(c)


def canonical_basis(beta):
    return weight_space(beta).family("canonical")


def dual_bases(beta):
    ws = weight_space(beta)
    return ws.family("dual_pbw"), ws.family("dual_canonical")
