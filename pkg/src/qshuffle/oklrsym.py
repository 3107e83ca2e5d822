"""KLR and orientifold KLR algebras acting on their polynomial representation.

Everything is exact over the integers.  Polynomials in x_1..x_n are dicts
{exponent tuple: int}; a vector of the representation is a dict
{word: polynomial}.  Generators act as linear maps computed monomial by
monomial and cached.

Letters are odd integers with theta(k) = -k, so no letter is theta-fixed and
the fixed-letter branches of the defining formulas never fire.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .rootdata import DimVector, cartan, theta
from .words import compose, format_word, s as s_k, s0, signed_length, theta_reverse, weyl_act, words_of_theta_weight, words_of_weight

PRIME = (1 << 61) - 1


# -- polynomials ------------------------------------------------------------------------

def padd_into(acc, p, c=1):
    for e, v in p.items():
        nv = acc.get(e, 0) + c * v
        if nv:
            acc[e] = nv
        else:
            acc.pop(e, None)
    return acc


def padd(p, q, c=1):
    return padd_into(dict(p), q, c)


def pmul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            nv = out.get(e, 0) + c1 * c2
            if nv:
                out[e] = nv
            else:
                out.pop(e, None)
    return out


def pconst(n, c=1):
    return {(0,) * n: c} if c else {}


def pvar(n, l, sign=1):
    """sign * x_l (1-based)."""
    e = [0] * n
    e[l - 1] = 1
    return {tuple(e): sign}


def ppow(p, k, n):
    out = pconst(n)
    for _ in range(k):
        out = pmul(out, p)
    return out


def psubs(p, images, n):
    """Substitute polynomials for the variables of ``p``."""
    out = {}
    cache = {}
    for e, c in p.items():
        term = pconst(n, c)
        for idx, k in enumerate(e):
            if k:
                key = (idx, k)
                if key not in cache:
                    cache[key] = ppow(images[idx], k, n)
                term = pmul(term, cache[key])
        padd_into(out, term)
    return out


def pswap(p, k):
    """s_k: exchange x_k and x_{k+1}."""
    out = {}
    for e, c in p.items():
        e = list(e)
        e[k - 1], e[k] = e[k], e[k - 1]
        out[tuple(e)] = c
    return out


def pflip(p):
    """s_0: x_1 -> -x_1."""
    return {e: (-c if e[0] % 2 else c) for e, c in p.items()}


def pdiv_linear(p, a, b, eps):
    """Exact quotient of p by (x_a - eps * x_b); raises if not divisible."""
    if not p:
        return {}
    groups = {}
    for e, c in p.items():
        m = e[a - 1]
        rest = list(e)
        rest[a - 1] = 0
        groups.setdefault(m, {})[tuple(rest)] = c
    top = max(groups)
    quotient = {}
    carry = {}
    for m in range(top, 0, -1):
        cm = padd(groups.get(m, {}), carry)
        # q_{m-1} = c_m + r q_m, with r = eps x_b
        for e, c in cm.items():
            ee = list(e)
            ee[a - 1] = m - 1
            quotient[tuple(ee)] = quotient.get(tuple(ee), 0) + c
        carry = {}
        for e, c in cm.items():
            ee = list(e)
            ee[b - 1] += 1
            carry[tuple(ee)] = eps * c
    remainder = padd(groups.get(0, {}), carry)
    if remainder:
        raise ArithmeticError("polynomial is not divisible by the linear form")
    return {e: c for e, c in quotient.items() if c}


def pdiv_var(p, a):
    out = {}
    for e, c in p.items():
        if e[a - 1] == 0:
            raise ArithmeticError("polynomial is not divisible by the variable")
        ee = list(e)
        ee[a - 1] -= 1
        out[tuple(ee)] = c
    return out


def divided_difference(p, k):
    """(s_k(p) - p) / (x_k - x_{k+1})."""
    return pdiv_linear(padd(pswap(p, k), p, -1), k, k + 1, 1)


def pdegrees(p):
    return {sum(e) for e in p}


class MultiPoly:
    """Thin immutable wrapper used at the API boundary."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {tuple(e): Fraction(c) for e, c in (terms or {}).items() if c}

    @classmethod
    def var(cls, n, l):
        return cls(n, pvar(n, l))

    def __add__(self, other):
        return MultiPoly(self.n, padd(self.terms, other.terms))

    def __sub__(self, other):
        return MultiPoly(self.n, padd(self.terms, other.terms, -1))

    def __mul__(self, other):
        return MultiPoly(self.n, pmul(self.terms, other.terms))

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MultiPoly({self.n}, {self.terms})"


def monomials(n, max_deg):
    out = []
    for d in range(max_deg + 1):
        for e in product(range(d + 1), repeat=n):
            if sum(e) == d:
                out.append(e)
    return out


# -- parameters --------------------------------------------------------------------------

def quiver_arrows(i, j):
    """a_ij: one arrow i -> i+2."""
    return 1 if j == i + 2 else 0


class QuiverParams:
    """P_ij(u,v) = (v-u)^a_ij for i != j and P_i(u) = (-u)^lambda(i)."""

    def __init__(self, lam=None):
        self.lam = DimVector(lam or {})
        for i in range(-9, 10, 2):
            for j in range(-9, 10, 2):
                assert quiver_arrows(i, j) == quiver_arrows(theta(j), theta(i))

    def P(self, i, j):
        if i == j:
            return {}
        a = quiver_arrows(i, j)
        return ppow({(0, 1): 1, (1, 0): -1}, a, 2)

    def Pv(self, i):
        if i == theta(i):
            return {}
        return ppow({(1,): -1}, self.lam[i], 1)

    def Q(self, i, j):
        return pmul(self.P(i, j), psubs(self.P(j, i), [pvar(2, 2), pvar(2, 1)], 2))

    def Qv(self, i):
        return pmul(self.Pv(i), psubs(self.Pv(theta(i)), [pvar(1, 1, -1)], 1))

    def declared_tau0(self, i):
        return (self.lam + self.lam.theta())[i]


class CustomParams(QuiverParams):
    """Quiver parameters with hand-supplied Q_i overriding the derived vector."""

    def __init__(self, lam=None, qv=None):
        super().__init__(lam)
        self._qv = dict(qv or {})

    def Qv(self, i):
        if i in self._qv:
            return self._qv[i]
        return super().Qv(i)


def perfection_report(params, letters):
    """Which of (M1)-(M4), (V1)-(V3) hold over the given letters."""
    def swap_uv(p):
        return psubs(p, [pvar(2, 2), pvar(2, 1)], 2)

    def neg_swap(p):
        return psubs(p, [pvar(2, 2, -1), pvar(2, 1, -1)], 2)

    letters = sorted(set(letters) | {theta(i) for i in letters})
    res = {
        "M1": all(not params.Q(i, i) for i in letters),
        "M2": all(params.Q(i, j) == neg_swap(params.Q(theta(j), theta(i))) for i in letters for j in letters),
        "M3": all(params.Q(i, j) for i in letters for j in letters if i != j),
        "M4": all(params.Q(i, j) == swap_uv(params.Q(j, i)) for i in letters for j in letters),
        "V1": all(not params.Qv(i) for i in letters if i == theta(i)),
        "V2": all(params.Qv(i) for i in letters if i != theta(i)),
        "V3": all(params.Qv(i) == psubs(params.Qv(theta(i)), [pvar(1, 1, -1)], 1) for i in letters),
    }
    return res


# -- the representation --------------------------------------------------------------------

class PolyRep:
    """The polynomial representation of R(beta) ("klr") or theta-R(beta; lambda) ("oklr")."""

    def __init__(self, beta, params, mode="oklr"):
        self.beta = DimVector(beta)
        self.params = params
        self.mode = mode
        if mode == "oklr":
            self.words = words_of_theta_weight(self.beta)
            self.n = self.beta.theta_size()
        elif mode == "klr":
            self.words = words_of_weight(self.beta)
            self.n = self.beta.size()
        else:
            raise ValueError(f"unknown mode {mode!r}")
        self.word_set = set(self.words)
        self._cache = {}

    @property
    def tau_range(self):
        return range(0 if self.mode == "oklr" else 1, self.n)

    def check_k(self, k):
        if k not in self.tau_range:
            raise IndexError(f"tau_{k} is not a generator for n = {self.n} in {self.mode} mode")

    def check_l(self, l):
        if not 1 <= l <= self.n:
            raise IndexError(f"x_{l} is out of range for n = {self.n}")

    def tau_mono(self, k, nu, e):
        key = (k, nu, e)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        n = self.n
        f = {e: 1}
        if k == 0:
            i = nu[0]
            if i == theta(i):
                out = {nu: pdiv_var(padd(pflip(f), f, -1), 1)}
            else:
                pi = psubs(self.params.Pv(i), [pvar(n, 1)], n)
                out = {weyl_act(s0(n), nu): pmul(pi, pflip(f))}
        else:
            i, j = nu[k - 1], nu[k]
            if i == j:
                out = {nu: divided_difference(f, k)}
            else:
                pij = psubs(self.params.P(i, j), [pvar(n, k), pvar(n, k + 1)], n)
                out = {weyl_act(s_k(k, n), nu): pmul(pij, pswap(f, k))}
        out = {w: p for w, p in out.items() if p}
        self._cache[key] = out
        return out

    def tau(self, k, vec):
        self.check_k(k)
        out = {}
        for nu, p in vec.items():
            for e, c in p.items():
                for w, q in self.tau_mono(k, nu, e).items():
                    padd_into(out.setdefault(w, {}), q, c)
        return _clean(out)

    def x(self, l, vec, sign=1):
        self.check_l(l)
        out = {}
        for nu, p in vec.items():
            q = {}
            for e, c in p.items():
                ee = list(e)
                ee[l - 1] += 1
                q[tuple(ee)] = sign * c
            out[nu] = q
        return _clean(out)

    def mul_poly(self, poly, vec):
        """Multiply every component by a polynomial in x_1..x_n."""
        return _clean({nu: pmul(poly, p) for nu, p in vec.items()})

    def e(self, nu, vec):
        nu = tuple(nu)
        return {nu: vec[nu]} if nu in vec and vec[nu] else {}


def _clean(vec):
    return {w: p for w, p in vec.items() if p}


def vadd(a, b, c=1):
    out = {w: dict(p) for w, p in a.items()}
    for w, p in b.items():
        padd_into(out.setdefault(w, {}), p, c)
    return _clean(out)


def vscale(a, c):
    return {w: {e: c * v for e, v in p.items()} for w, p in a.items()} if c else {}


# -- generator providers (identity and symmetry maps) ---------------------------------------

class Generators:
    """Images of the generators of the source algebra as operators on a representation."""

    name = "identity"

    def __init__(self, rep):
        self.rep = rep
        self.n = rep.n

    def word(self, nu):
        return tuple(nu)

    def e(self, nu, vec):
        return self.rep.e(self.word(nu), vec)

    def x(self, l, vec):
        return self.rep.x(l, vec)

    def tau(self, k, vec):
        return self.rep.tau(k, vec)

    def x_image(self, l):
        return pvar(self.n, l)

    def poly(self, p, vec):
        """Apply a polynomial in the source x's."""
        images = [self.x_image(l) for l in range(1, self.n + 1)]
        return self.rep.mul_poly(psubs(p, images, self.n), vec)


class InvKLR(Generators):
    """e(nu) -> e(w_0 nu), x_l -> x_{n-l+1}, tau_k -> -tau_{n-k}."""

    name = "inv_klr"

    def word(self, nu):
        return tuple(reversed(nu))

    def x(self, l, vec):
        return self.rep.x(self.n - l + 1, vec)

    def x_image(self, l):
        return pvar(self.n, self.n - l + 1)

    def tau(self, k, vec):
        return vscale(self.rep.tau(self.n - k, vec), -1)


class InvKLRTheta(InvKLR):
    """R(beta) -> R(theta beta): e(nu) -> e(theta-w nu), x_l -> -x_{n-l+1}, tau_k -> -tau_{n-k}."""

    name = "inv_klr_theta"

    def word(self, nu):
        return theta_reverse(nu)

    def x(self, l, vec):
        return self.rep.x(self.n - l + 1, vec, -1)

    def x_image(self, l):
        return pvar(self.n, self.n - l + 1, -1)


class InvOKLR(Generators):
    """e(nu) -> e(theta w_0 nu), x_l -> -x_l, tau_k -> -tau_k (0 <= k < n)."""

    name = "inv_oklr"

    def word(self, nu):
        return tuple(theta(i) for i in nu)

    def x(self, l, vec):
        return self.rep.x(l, vec, -1)

    def x_image(self, l):
        return pvar(self.n, l, -1)

    def tau(self, k, vec):
        return vscale(self.rep.tau(k, vec), -1)


# -- relations -------------------------------------------------------------------------------

@dataclass
class Relation:
    family: str
    case: str
    nu: tuple
    lhs: object
    rhs: object


def _subs_xy(p2, a, b, n):
    """Bivariate p(u, v) with u -> a, v -> b (polynomials in n variables)."""
    return psubs(p2, [a, b], n)


def relations(rep, gens=None, source_words=None):
    """All relation instances of the (orientifold) KLR definition, each
    ending in e(nu) on the right."""
    g = gens or Generators(rep)
    params = rep.params
    n = rep.n
    X = lambda l, sign=1: pvar(n, l, sign)
    words = source_words if source_words is not None else rep.words
    out = []
    ks = range(1, n)
    for nu in words:
        E = lambda v, nu=nu: g.e(nu, v)
        # idempotents
        for nu2 in words:
            out.append(Relation("idempotent", f"e({format_word(nu2)})e(nu)", nu,
                                lambda v, nu2=nu2, E=E: g.e(nu2, E(v)),
                                (lambda v, E=E: E(v)) if nu2 == nu else (lambda v: {})))
        for l in range(1, n + 1):
            out.append(Relation("idempotent", f"x{l}e", nu,
                                lambda v, l=l, E=E: g.x(l, E(v)), lambda v, l=l, nu=nu: g.e(nu, g.x(l, v))))
        for k in ks:
            snu = weyl_act(s_k(k, n), nu)
            out.append(Relation("idempotent", f"tau{k}e", nu,
                                lambda v, k=k, E=E: g.tau(k, E(v)),
                                lambda v, k=k, snu=snu, E=E: g.e(snu, g.tau(k, E(v)))))
        if rep.mode == "oklr":
            snu = weyl_act(s0(n), nu)
            out.append(Relation("idempotent", "tau0e", nu,
                                lambda v, E=E: g.tau(0, E(v)),
                                lambda v, snu=snu, E=E: g.e(snu, g.tau(0, E(v)))))
        # polynomial
        for l in range(1, n + 1):
            for l2 in range(l + 1, n + 1):
                out.append(Relation("polynomial", f"x{l}x{l2}", nu,
                                    lambda v, l=l, l2=l2, E=E: g.x(l, g.x(l2, E(v))),
                                    lambda v, l=l, l2=l2, E=E: g.x(l2, g.x(l, E(v)))))
        # quadratic
        for k in ks:
            qk = _subs_xy(params.Q(nu[k - 1], nu[k]), X(k + 1), X(k), n)
            out.append(Relation("quadratic", f"tau{k}^2", nu,
                                lambda v, k=k, E=E: g.tau(k, g.tau(k, E(v))),
                                lambda v, qk=qk, E=E: g.poly(qk, E(v))))
        if rep.mode == "oklr":
            q0 = psubs(params.Qv(nu[0]), [X(1, -1)], n)
            out.append(Relation("quadratic", "tau0^2", nu,
                                lambda v, E=E: g.tau(0, g.tau(0, E(v))),
                                lambda v, q0=q0, E=E: g.poly(q0, E(v))))
        # braid
        for k in ks:
            for k2 in ks:
                if k2 > k + 1:
                    out.append(Relation("braid", f"tau{k}tau{k2}", nu,
                                        lambda v, k=k, k2=k2, E=E: g.tau(k, g.tau(k2, E(v))),
                                        lambda v, k=k, k2=k2, E=E: g.tau(k2, g.tau(k, E(v)))))
        if rep.mode == "oklr":
            for k in range(2, n):
                out.append(Relation("braid", f"tau0tau{k}", nu,
                                    lambda v, k=k, E=E: g.tau(0, g.tau(k, E(v))),
                                    lambda v, k=k, E=E: g.tau(k, g.tau(0, E(v)))))
        for k in range(1, n - 1):
            lhs = lambda v, k=k, E=E: vadd(g.tau(k + 1, g.tau(k, g.tau(k + 1, E(v)))),
                                           g.tau(k, g.tau(k + 1, g.tau(k, E(v)))), -1)
            if nu[k - 1] == nu[k + 1]:
                qq = params.Q(nu[k - 1], nu[k])
                num = padd(_subs_xy(qq, X(k + 1), X(k), n), _subs_xy(qq, X(k + 1), X(k + 2), n), -1)
                corr = pdiv_linear(num, k, k + 2, 1)
                rhs = lambda v, corr=corr, E=E: g.poly(corr, E(v))
            else:
                rhs = lambda v: {}
            out.append(Relation("braid", f"tau{k + 1}tau{k}tau{k + 1}", nu, lhs, rhs))
        if rep.mode == "oklr" and n >= 2:
            i, j = nu[0], nu[1]
            lhs = lambda v, E=E: vadd(g.tau(1, g.tau(0, g.tau(1, g.tau(0, E(v))))),
                                      g.tau(0, g.tau(1, g.tau(0, g.tau(1, E(v))))), -1)
            if i != j and j == theta(i):
                num = padd(psubs(params.Qv(j), [X(2)], n), psubs(params.Qv(i), [X(1)], n), -1)
                corr = pdiv_linear(num, 1, 2, -1)
                rhs = lambda v, corr=corr, E=E: g.poly(corr, g.tau(1, E(v)))
                case = "(tau1tau0)^2 theta-pair"
            elif i == theta(i) or j == theta(j):
                raise NotImplementedError("theta-fixed letters do not occur for odd letters")
            else:
                rhs = lambda v: {}
                case = "(tau1tau0)^2 generic"
            out.append(Relation("braid", case, nu, lhs, rhs))
        # mixed
        for k in ks:
            for l in range(1, n + 1):
                sl = k + 1 if l == k else k if l == k + 1 else l
                if nu[k - 1] == nu[k] and l == k:
                    rhs = lambda v, E=E: vscale(E(v), -1)
                elif nu[k - 1] == nu[k] and l == k + 1:
                    rhs = lambda v, E=E: E(v)
                else:
                    rhs = lambda v: {}
                out.append(Relation("mixed", f"tau{k}x{l}", nu,
                                    lambda v, k=k, l=l, sl=sl, E=E: vadd(g.tau(k, g.x(l, E(v))), g.x(sl, g.tau(k, E(v))), -1),
                                    rhs))
        if rep.mode == "oklr":
            out.append(Relation("mixed", "tau0x1", nu,
                                lambda v, E=E: vadd(g.tau(0, g.x(1, E(v))), g.x(1, g.tau(0, E(v)))),
                                lambda v: {}))
            for l in range(2, n + 1):
                out.append(Relation("mixed", f"tau0x{l}", nu,
                                    lambda v, l=l, E=E: g.tau(0, g.x(l, E(v))),
                                    lambda v, l=l, E=E: g.x(l, g.tau(0, E(v)))))
    return out


def _vec_json(vec):
    return {format_word(w): {",".join(map(str, e)): c for e, c in sorted(p.items())} for w, p in sorted(vec.items())}


def verify_relations(beta, lam=None, max_deg=6, mode="oklr", params=None, gens_cls=Generators):
    """Check every relation instance on every monomial of degree <= max_deg.

    Returns a list of report rows {family, case, weight_word, status, witness?},
    one per (family, case, nu).
    """
    params = params or QuiverParams(lam)
    rep = PolyRep(beta, params, mode)
    if gens_cls in (InvKLRTheta,):
        source = PolyRep(DimVector(beta).theta(), params, mode)
        gens = gens_cls(rep)
        rels = relations(source, gens)
    else:
        gens = gens_cls(rep)
        rels = relations(rep, gens)
    monos = monomials(rep.n, max_deg)
    rows = []
    for rel in rels:
        target = gens.word(rel.nu)
        status, witness = "pass", None
        for e in monos:
            v = {target: {e: 1}}
            diff = vadd(rel.lhs(v), rel.rhs(v), -1)
            if diff:
                status = "fail"
                witness = {"input": {format_word(target): ",".join(map(str, e))}, "difference": _vec_json(diff)}
                break
        row = {"family": rel.family, "case": rel.case, "weight_word": format_word(rel.nu), "status": status}
        if witness:
            row["witness"] = witness
        rows.append(row)
    return rows


def verify_symmetry_maps(beta, lam=None, max_deg=4):
    """Each symmetry map applied to the generators satisfies every relation."""
    report = {}
    report["identity"] = verify_relations(beta, lam, max_deg, "oklr")
    report["inv_oklr"] = verify_relations(beta, lam, max_deg, "oklr", gens_cls=InvOKLR)
    plain = DimVector(beta)
    report["inv_klr"] = verify_relations(plain, None, max_deg, "klr", gens_cls=InvKLR)
    report["inv_klr_theta"] = verify_relations(plain, None, max_deg, "klr", gens_cls=InvKLRTheta)
    return report


# -- grading ----------------------------------------------------------------------------------

def declared_degree(rep, gen, k, nu):
    if gen == "x":
        return 2
    if k == 0:
        i = nu[0]
        return -2 if i == theta(i) else rep.params.declared_tau0(i)
    i, j = nu[k - 1], nu[k]
    return -2 if i == j else -cartan(i, j)


def verify_grading(beta, lam=None, mode="oklr", max_deg=4, params=None):
    """Grading audit.

    Polynomial degree counts twice.  The representation is graded after
    shifting each component P_nu by an offset d(nu); the offsets are found
    by a walk over the orbit and must be consistent.  Every generator must
    then send each monomial to a homogeneous vector of exactly the declared
    degree shift.
    """
    params = params or QuiverParams(lam)
    rep = PolyRep(beta, params, mode)
    n = rep.n
    rows = []
    if not rep.words:
        return {"offsets": {}, "rows": rows}

    def raw_shift(k, nu):
        if k == 0:
            return 2 * params.lam[nu[0]]
        return 2 * quiver_arrows(nu[k - 1], nu[k])

    offsets = {rep.words[0]: 0}
    queue = [rep.words[0]]
    consistent = True
    while queue:
        nu = queue.pop()
        for k in rep.tau_range:
            if k > 0 and nu[k - 1] == nu[k]:
                continue
            w = weyl_act(s0(n) if k == 0 else s_k(k, n), nu)
            d = offsets[nu] + declared_degree(rep, "tau", k, nu) - raw_shift(k, nu)
            if w not in offsets:
                offsets[w] = d
                queue.append(w)
            elif offsets[w] != d:
                consistent = False
                rows.append({"family": "grading", "case": f"offset tau{k}", "weight_word": format_word(nu),
                             "status": "fail", "witness": {"expected": d, "found": offsets[w]}})
    for nu in rep.words:
        for gen, ks in (("x", range(1, n + 1)), ("tau", rep.tau_range)):
            for k in ks:
                status, witness = "pass", None
                for e in monomials(n, max_deg):
                    v = {nu: {e: 1}}
                    out = rep.x(k, v) if gen == "x" else rep.tau(k, v)
                    for w, p in out.items():
                        degs = {2 * d + offsets.get(w, 0) for d in pdegrees(p)}
                        expected = 2 * sum(e) + offsets.get(nu, 0) + declared_degree(rep, gen, k, nu)
                        if degs != {expected}:
                            status = "fail"
                            witness = {"input": ",".join(map(str, e)), "degrees": sorted(degs), "expected": expected}
                            break
                    if status == "fail":
                        break
                row = {"family": "grading", "case": f"{gen}{k}", "weight_word": format_word(nu), "status": status}
                if witness:
                    row["witness"] = witness
                rows.append(row)
    return {"offsets": {format_word(w): d for w, d in sorted(offsets.items())}, "consistent": consistent,
            "rows": rows}


# -- PBW independence -------------------------------------------------------------------------

def weyl_elements(n, with_s0=True):
    """{signed permutation: lexicographically least reduced word}."""
    gens = list(range(0 if with_s0 else 1, n))
    identity = tuple(range(1, n + 1))
    found = {identity: ()}
    if n == 0:
        return found
    max_len = n * n if with_s0 else n * (n - 1) // 2
    for length in range(1, max_len + 1):
        for word in product(gens, repeat=length):
            w = identity
            for g in word:
                w = compose(w, s0(n) if g == 0 else s_k(g, n))
            if w not in found and signed_length(w) == length:
                found[w] = word
    return found


def apply_tau_word(rep, word, vec):
    for k in reversed(word):
        vec = rep.tau(k, vec)
    return vec


def overlap_witnesses(params, letters):
    """(Q_theta(i)(-x) - Q_i(x)) for each letter: tau_0^3 e(nu) computed two ways
    forces this multiple of tau_0 e(nu) to vanish.  Also the hermitian overlap
    Q_ij(v,u) - Q_ji(u,v) from tau_k^3."""
    out = {}
    for i in letters:
        w = padd(psubs(params.Qv(theta(i)), [pvar(1, 1, -1)], 1), params.Qv(i), -1)
        if w:
            out[f"tau0 at {i}"] = w
        for j in letters:
            h = padd(params.Q(i, j), psubs(params.Q(j, i), [pvar(2, 2), pvar(2, 1)], 2), -1)
            if h:
                out[f"tau at ({i},{j})"] = h
    return out


def rank_mod_p(rows, p=PRIME):
    pivots = {}
    rank = 0
    for row in rows:
        r = {k: v % p for k, v in row.items() if v % p}
        while r:
            lead = max(r)
            if lead not in pivots:
                inv = pow(r[lead], -1, p)
                pivots[lead] = {k: v * inv % p for k, v in r.items()}
                rank += 1
                break
            c = r[lead]
            for k, v in pivots[lead].items():
                nv = (r.get(k, 0) - c * v) % p
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return rank


def kernel_vector(rows):
    """A rational combination of rows that vanishes, or None."""
    rows = [{k: Fraction(v) for k, v in r.items()} for r in rows]
    basis = []  # (pivot, row, combination)
    for idx, row in enumerate(rows):
        r = dict(row)
        comb = {idx: Fraction(1)}
        for lead, prow, pcomb in basis:
            c = r.get(lead)
            if c:
                for k, v in prow.items():
                    nv = r.get(k, 0) - c * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
                for k, v in pcomb.items():
                    comb[k] = comb.get(k, 0) - c * v
        if not r:
            return {k: v for k, v in comb.items() if v}
        lead = max(r)
        inv = 1 / r[lead]
        basis.append((lead, {k: v * inv for k, v in r.items()}, {k: v * inv for k, v in comb.items()}))
    return None


def verify_pbw_independence(beta, lam=None, max_deg=6, x_deg=2, params=None):
    """PBW surrogate for n <= 2.

    First the overlap witnesses: any nonzero one is a nonzero combination of
    PBW elements that vanishes in the algebra, so independence fails.  Then
    the elements tau_w x^a e(nu) (|a| <= x_deg) are evaluated on monomials of
    degree <= max_deg in the polynomial representation; full rank modulo a
    prime certifies independence over the rationals.
    """
    params = params or QuiverParams(lam)
    rep = PolyRep(beta, params, "oklr")
    if rep.n > 2:
        raise ValueError("PBW surrogate is limited to n <= 2")
    letters = sorted({i for w in rep.words for i in w})
    witnesses = overlap_witnesses(params, letters)
    report = {"weight": str(rep.beta), "n": rep.n, "perfection": perfection_report(params, letters or [1])}
    if witnesses:
        report["status"] = "dependent"
        report["witness"] = {k: {",".join(map(str, e)): c for e, c in sorted(v.items())} for k, v in sorted(witnesses.items())}
        return report
    elements = weyl_elements(rep.n)
    monos_in = monomials(rep.n, max_deg)
    xs = monomials(rep.n, x_deg)
    total_rows = 0
    for nu in rep.words:
        rows, labels = [], []
        for w, word in sorted(elements.items(), key=lambda t: (len(t[1]), t[1])):
            for a in xs:
                row = {}
                for col, e in enumerate(monos_in):
                    f = {tuple(x + y for x, y in zip(a, e)): 1}
                    out = apply_tau_word(rep, word, {nu: f})
                    for w2, p in out.items():
                        for e2, c in p.items():
                            row[(col, w2, e2)] = c
                rows.append(row)
                labels.append((word, a))
        total_rows += len(rows)
        if rank_mod_p(rows) < len(rows):
            kv = kernel_vector(rows)
            report["status"] = "dependent"
            report["witness"] = {"word": format_word(nu),
                                 "combination": [{"tau": list(labels[i][0]), "x": list(labels[i][1]), "coeff": str(c)}
                                                 for i, c in sorted(kv.items())] if kv else None}
            return report
    report["status"] = "independent"
    report["elements"] = total_rows
    return report


def reduced_expression_dependence(beta, lam, max_deg=3):
    """Compare tau_w for the two reduced words of the longest element of W_2."""
    rep = PolyRep(beta, QuiverParams(lam), "oklr")
    if rep.n != 2:
        raise ValueError("needs n = 2")
    out = {}
    for nu in rep.words:
        diffs = 0
        for e in monomials(2, max_deg):
            v = {nu: {e: 1}}
            a = apply_tau_word(rep, (0, 1, 0, 1), v)
            b = apply_tau_word(rep, (1, 0, 1, 0), v)
            if vadd(a, b, -1):
                diffs += 1
        out[format_word(nu)] = diffs
    return out


def degenerate_params(lam=None, letter=1, extra=None):
    """Quiver parameters with Q_letter replaced by a non-self-conjugate polynomial."""
    base = QuiverParams(lam)
    q = padd(base.Qv(letter), extra if extra is not None else {(0,): 1})
    return CustomParams(lam, {letter: q})
