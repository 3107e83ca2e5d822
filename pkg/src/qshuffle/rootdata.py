"""Root data for the A-infinity alphabet with the involution k -> -k.

Letters are odd integers; the simple root alpha_k is identified with k.
"""

from __future__ import annotations

from functools import lru_cache


def check_letter(k):
    if not isinstance(k, int) or k % 2 == 0:
        raise ValueError(f"letters are odd integers, got {k!r}")
    return k


def theta(k):
    return -k


def cartan(i, j):
    if i == j:
        return 2
    if abs(i - j) == 2:
        return -1
    return 0


class DimVector:
    """A finitely supported vector of nonnegative multiplicities indexed by letters."""

    __slots__ = ("_items", "_hash")

    def __init__(self, mult=None):
        if mult is None:
            mult = {}
        elif isinstance(mult, DimVector):
            mult = dict(mult._items)
        items = []
        for k, m in mult.items():
            check_letter(k)
            if m < 0:
                raise ValueError(f"negative multiplicity {m} at letter {k}")
            if m:
                items.append((k, m))
        self._items = tuple(sorted(items))
        self._hash = hash(self._items)

    @classmethod
    def of_word(cls, word):
        d = {}
        for k in word:
            d[k] = d.get(k, 0) + 1
        return cls(d)

    @classmethod
    def theta_of_word(cls, word):
        """The self-dual weight sum(alpha + theta(alpha)) of a word."""
        d = {}
        for k in word:
            d[k] = d.get(k, 0) + 1
            d[-k] = d.get(-k, 0) + 1
        return cls(d)

    @classmethod
    def root(cls, lo, hi):
        """beta_{lo,hi} = alpha_lo + alpha_{lo+2} + ... + alpha_hi."""
        if lo > hi:
            raise ValueError("lo must not exceed hi")
        return cls({k: 1 for k in range(check_letter(lo), hi + 1, 2)})

    def __getitem__(self, k):
        for kk, m in self._items:
            if kk == k:
                return m
        return 0

    def items(self):
        return self._items

    def as_dict(self):
        return dict(self._items)

    def support(self):
        return [k for k, _ in self._items]

    def __eq__(self, other):
        return isinstance(other, DimVector) and self._items == other._items

    def __lt__(self, other):
        return self._items < other._items

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return bool(self._items)

    def __add__(self, other):
        d = dict(self._items)
        for k, m in other._items:
            d[k] = d.get(k, 0) + m
        return DimVector(d)

    def __sub__(self, other):
        d = dict(self._items)
        for k, m in other._items:
            d[k] = d.get(k, 0) - m
        return DimVector(d)

    def __rmul__(self, n):
        return DimVector({k: n * m for k, m in self._items})

    def contains(self, other):
        return all(self[k] >= m for k, m in other._items)

    def size(self):
        return sum(m for _, m in self._items)

    def theta_size(self):
        """|beta|_theta = |beta| / 2 for a self-dual vector."""
        return self.size() // 2

    def theta(self):
        return DimVector({-k: m for k, m in self._items})

    def is_self_dual(self):
        return self == self.theta()

    def dot(self, other):
        total = 0
        for k, m in self._items:
            for l, n in other._items:
                c = cartan(k, l)
                if c:
                    total += c * m * n
        return total

    def dot_letter(self, i):
        return sum(m * cartan(k, i) for k, m in self._items)

    def __str__(self):
        return ",".join(f"{k}:{m}" for k, m in self._items)

    def __repr__(self):
        return f"DimVector({str(self)!r})"

    @classmethod
    def parse(cls, text):
        """Parse ``"1:2,-1:2"``; a bare letter means multiplicity one."""
        text = text.strip()
        if not text or text in ("0", "-"):
            return cls()
        d = {}
        pos = 0
        for part in text.split(","):
            piece = part.strip()
            try:
                if ":" in piece:
                    k, m = piece.split(":")
                    k, m = int(k), int(m)
                else:
                    k, m = int(piece), 1
                check_letter(k)
                if m < 0:
                    raise ValueError
            except ValueError:
                raise ValueError(f"malformed weight entry {piece!r} at position {pos} in {text!r}") from None
            d[k] = d.get(k, 0) + m
            pos += len(part) + 1
        return cls(d)


def n_of(beta):
    """N(beta) = (beta.beta - sum_i c_i (i.i)) / 2."""
    return (beta.dot(beta) - 2 * beta.size()) // 2


def symmetrize(beta):
    return beta + beta.theta()


def bc_roots_in(beta):
    """Positive BC roots (as self-dual vectors) lying inside ``beta``.

    Each is returned once, keyed by its representative A root (lo, hi) with
    lo + hi >= 0.
    """
    supp = set(beta.support())
    roots = []
    for lo in sorted(supp):
        hi = lo
        while hi in supp:
            if lo + hi >= 0:
                vec = symmetrize(DimVector.root(lo, hi))
                if beta.contains(vec):
                    roots.append(((lo, hi), vec))
            hi += 2
    return roots


def tkpf(beta):
    """Number of multisets of positive BC roots summing to ``beta``."""
    beta = DimVector(beta)
    if not beta:
        return 1
    if not beta.is_self_dual():
        return 0
    roots = [vec for _, vec in bc_roots_in(beta)]
    return _count(beta, tuple(roots))


@lru_cache(maxsize=None)
def _count(rest, roots):
    if not rest:
        return 1
    # the smallest letter of ``rest`` must be covered by some root; take the
    # roots in a fixed order and decide the multiplicity of the first one
    if not roots:
        return 0
    first, others = roots[0], roots[1:]
    total = 0
    current = rest
    while True:
        total += _count(current, others)
        if not current.contains(first):
            break
        current = current - first
    return total


def self_dual_weights(letters, max_theta_size):
    """All nonzero self-dual weights built from the positive letters given,
    with |beta|_theta <= max_theta_size."""
    pos = sorted({abs(k) for k in letters})
    out = []

    def rec(idx, acc, size):
        if idx == len(pos):
            if size:
                out.append(DimVector(acc))
            return
        k = pos[idx]
        for m in range(0, max_theta_size - size + 1):
            if m:
                acc[k] = m
                acc[-k] = m
            rec(idx + 1, acc, size + m)
            acc.pop(k, None)
            acc.pop(-k, None)

    rec(0, {}, 0)
    return sorted(out, key=lambda b: (b.theta_size(), b.items()))
