"""Finite Cartan data, Weyl word combinatorics, and double-word indexing.

Conventions
-----------
* Dynkin diagrams are numbered in the Bourbaki convention; letters in words
  are the 1-based node labels.
* Weights are integer tuples in the fundamental-weight basis, roots are
  integer tuples in the simple-root basis.
* Positions inside words and inside the combined double-word index set are
  0-based throughout the library.
* The bilinear form is normalized so that short roots have squared length 2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Iterator, Sequence

from . import linalg


class InvalidCartanType(ValueError):
    """(family, rank) does not name a finite simple type."""


class NonReducedWordError(ValueError):
    """A word required to be reduced is not."""


class _Sentinel:
    """Totally ordered infinity used by predecessor/successor functions."""

    __slots__ = ("_sign",)

    def __init__(self, sign: int):
        self._sign = sign

    def __lt__(self, other):
        if other is self:
            return False
        return self._sign < 0

    def __gt__(self, other):
        if other is self:
            return False
        return self._sign > 0

    def __le__(self, other):
        return self is other or self < other

    def __ge__(self, other):
        return self is other or self > other

    def __repr__(self):
        return "-inf" if self._sign < 0 else "+inf"


NEG_INF = _Sentinel(-1)
POS_INF = _Sentinel(+1)

Weight = tuple[int, ...]
Root = tuple[int, ...]
Word = tuple[int, ...]


@dataclass(frozen=True)
class CartanData:
    """Cartan matrix, symmetrizers and exact weight pairings of a finite type."""

    family: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]      # c[i][j] = <alpha_i^vee, alpha_j>, 0-based
    d: tuple[int, ...]                       # d_i = |alpha_i|^2 / 2
    pairing_ww: tuple[tuple[Q, ...], ...]    # <w_i, w_j>, exact rationals

    def pair_alpha(self, a: Sequence[int], b: Sequence[int]) -> int:
        """<x, y> for root-lattice vectors in simple-root coordinates."""
        total = 0
        for i in range(self.rank):
            if a[i] == 0:
                continue
            for j in range(self.rank):
                total += a[i] * b[j] * self.d[i] * self.cartan[i][j]
        return total

    def pair_weight(self, mu: Sequence[int], nu: Sequence[int]) -> Q:
        """<mu, nu> for weights in fundamental-weight coordinates."""
        return sum(
            Q(mu[i]) * Q(nu[j]) * self.pairing_ww[i][j]
            for i in range(self.rank)
            for j in range(self.rank)
        )

    def alpha_in_weights(self, i: int) -> Weight:
        """Fundamental-weight coordinates of alpha_i (0-based i)."""
        return tuple(self.cartan[j][i] for j in range(self.rank))

    def weight_to_root(self, mu: Sequence[int]) -> tuple[Q, ...]:
        """Simple-root coordinates of a weight (exact, possibly non-integer)."""
        # mu_j = sum_i c_{ji} a_i, so the alpha-coordinates solve C a = mu
        cinv = linalg.mat_inv(linalg.mat(self.cartan))
        return linalg.mat_vec(cinv, mu)

    def root_to_weight(self, a: Sequence[int]) -> Weight:
        mu = [0] * self.rank
        for i in range(self.rank):
            for j in range(self.rank):
                mu[j] += a[i] * self.cartan[j][i]
        return tuple(mu)


def _chain_edges(n: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(n - 1)]


_E_EDGES = {
    6: [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)],
    7: [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 3)],
    8: [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)],
}


def cartan_init(family: str, rank: int) -> CartanData:
    """Build the Cartan datum of a finite simple type, exactly.

    Valid types: A_n (n>=1), B_n (n>=2), C_n (n>=3), D_n (n>=4),
    E_6..E_8, F_4, G_2.
    """
    fam = family.upper()
    n = rank
    ok = {
        "A": n >= 1, "B": n >= 2, "C": n >= 3, "D": n >= 4,
        "E": n in (6, 7, 8), "F": n == 4, "G": n == 2,
    }.get(fam, False)
    if not ok:
        raise InvalidCartanType(f"no finite type {family}{rank}")

    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def edge(i, j, cij=-1, cji=-1):
        c[i][j] = cij
        c[j][i] = cji

    d = [1] * n
    if fam == "A":
        for i, j in _chain_edges(n):
            edge(i, j)
    elif fam == "B":
        # alpha_n short
        for i, j in _chain_edges(n):
            edge(i, j)
        edge(n - 2, n - 1, -1, -2)
        d = [2] * (n - 1) + [1]
    elif fam == "C":
        # alpha_n long
        for i, j in _chain_edges(n):
            edge(i, j)
        edge(n - 2, n - 1, -2, -1)
        d = [1] * (n - 1) + [2]
    elif fam == "D":
        for i, j in _chain_edges(n - 1):
            edge(i, j)
        edge(n - 3, n - 1)
    elif fam == "E":
        for i, j in _E_EDGES[n]:
            edge(i, j)
    elif fam == "F":
        edge(0, 1)
        edge(1, 2, -1, -2)
        edge(2, 3)
        d = [2, 2, 1, 1]
    elif fam == "G":
        edge(0, 1, -3, -1)
        d = [1, 3]

    # symmetrizability d_i c_ij = d_j c_ji must hold by construction
    for i in range(n):
        for j in range(n):
            assert d[i] * c[i][j] == d[j] * c[j][i]

    # <w_i, w_j> from C^{-T} D, where <alpha_i, w_j> = d_i delta_ij
    cmat = linalg.mat(c)
    cinv_t = linalg.transpose(linalg.mat_inv(cmat))
    pairing = tuple(
        tuple(cinv_t[i][j] * d[j] for j in range(n)) for i in range(n)
    )
    for i in range(n):
        for j in range(n):
            assert pairing[i][j] == pairing[j][i]

    return CartanData(fam, n, tuple(tuple(r) for r in c), tuple(d), pairing)


def reflect(cartan: CartanData, i: int, mu: Sequence[int]) -> Weight:
    """Simple reflection s_i on a weight (1-based letter i)."""
    if not 1 <= i <= cartan.rank:
        raise IndexError(f"letter {i} out of range 1..{cartan.rank}")
    coef = mu[i - 1]
    alpha = cartan.alpha_in_weights(i - 1)
    return tuple(m - coef * a for m, a in zip(mu, alpha))


def reflect_root(cartan: CartanData, i: int, a: Sequence[int]) -> Root:
    """Simple reflection s_i on a root-lattice vector in root coordinates."""
    if not 1 <= i <= cartan.rank:
        raise IndexError(f"letter {i} out of range 1..{cartan.rank}")
    coef = sum(cartan.cartan[i - 1][j] * a[j] for j in range(cartan.rank))
    out = list(a)
    out[i - 1] -= coef
    return tuple(out)


def act_word_on_weight(cartan: CartanData, word: Sequence[int], mu: Sequence[int]) -> Weight:
    """Apply w = s_{i_1} ... s_{i_N} to a weight (leftmost letter acts last)."""
    out = tuple(mu)
    for letter in reversed(word):
        out = reflect(cartan, letter, out)
    return out


def word_roots(cartan: CartanData, word: Sequence[int]) -> list[Root]:
    """Roots beta_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k}) of a word."""
    roots: list[Root] = []
    for k, letter in enumerate(word):
        a: Root = tuple(1 if j == letter - 1 else 0 for j in range(cartan.rank))
        for prev in reversed(word[:k]):
            a = reflect_root(cartan, prev, a)
        roots.append(a)
    return roots


def is_reduced(cartan: CartanData, word: Sequence[int]) -> bool:
    """A word is reduced iff its beta_k are pairwise distinct positive roots."""
    roots = word_roots(cartan, word)
    seen = set()
    for a in roots:
        if not (all(x >= 0 for x in a) and any(x > 0 for x in a)):
            return False
        if a in seen:
            return False
        seen.add(a)
    return True


def enumerate_reduced_words(cartan: CartanData, max_len: int) -> list[Word]:
    """All reduced words of length <= max_len, shortest first, lexicographic."""
    out: list[Word] = [()]
    frontier: list[Word] = [()]
    for _ in range(max_len):
        nxt: list[Word] = []
        for w in frontier:
            for letter in range(1, cartan.rank + 1):
                cand = w + (letter,)
                if is_reduced(cartan, cand):
                    nxt.append(cand)
        out.extend(nxt)
        frontier = nxt
    return out


def pred_succ(eta: Sequence[int]):
    """Predecessor/successor maps of a level function on 0-based positions."""
    n = len(eta)
    p: list = [NEG_INF] * n
    s: list = [POS_INF] * n
    last: dict[int, int] = {}
    for k in range(n):
        if eta[k] in last:
            p[k] = last[eta[k]]
            s[last[eta[k]]] = k
        last[eta[k]] = k
    return tuple(p), tuple(s)


def order_functions(p: Sequence, s: Sequence):
    """Chain-length counters O_- and O_+ obtained by iterating p and s."""
    n = len(p)
    o_minus = []
    o_plus = []
    for k in range(n):
        m = 0
        j = k
        while p[j] is not NEG_INF:
            j = p[j]
            m += 1
        o_minus.append(m)
        m = 0
        j = k
        while s[j] is not POS_INF:
            j = s[j]
            m += 1
        o_plus.append(m)
    return tuple(o_minus), tuple(o_plus)


@dataclass(frozen=True)
class DoubleWordData:
    """Indexing data of the combined word attached to a pair (w, u).

    Positions 0..N-1 carry the w-letters in reversed order, positions
    N..N+M-1 the u-letters in natural order; eta[k] is the letter at
    position k, and p, s, o_minus, o_plus are its chain functions.
    """

    cartan: CartanData
    w_word: Word
    u_word: Word
    eta: tuple[int, ...]
    p: tuple
    s: tuple
    o_minus: tuple[int, ...]
    o_plus: tuple[int, ...]
    epsilon: tuple[int, ...]
    beta: tuple[Root, ...]
    beta_prime: tuple[Root, ...]
    support: frozenset[int]

    @property
    def n_w(self) -> int:
        return len(self.w_word)

    @property
    def n_u(self) -> int:
        return len(self.u_word)

    @property
    def size(self) -> int:
        return len(self.eta)

    def root_at(self, k: int) -> Root:
        """beta_{|k|} resp. beta'_{|k|} at combined position k."""
        if k < self.n_w:
            return self.beta[self.n_w - 1 - k]
        return self.beta_prime[k - self.n_w]

    def degree_at(self, k: int) -> Root:
        """Root-lattice degree of the generator at position k."""
        a = self.root_at(k)
        return tuple(-x for x in a) if k < self.n_w else a

    def frozen_count(self) -> int:
        return sum(1 for k in range(self.size) if self.s[k] is POS_INF)


def eta_machinery(cartan: CartanData, w_word: Sequence[int], u_word: Sequence[int]) -> DoubleWordData:
    """Level function and chain data for the double word of (w, u)."""
    w = tuple(w_word)
    u = tuple(u_word)
    for word, name in ((w, "w"), (u, "u")):
        if not is_reduced(cartan, word):
            raise NonReducedWordError(f"{name} word {word} is not reduced")
    nw, nu = len(w), len(u)
    eta = tuple(w[nw - 1 - k] for k in range(nw)) + u
    p, s = pred_succ(eta)
    o_minus, o_plus = order_functions(p, s)
    epsilon = tuple(-1 if k < nw else 1 for k in range(nw + nu))
    return DoubleWordData(
        cartan=cartan,
        w_word=w,
        u_word=u,
        eta=eta,
        p=p,
        s=s,
        o_minus=o_minus,
        o_plus=o_plus,
        epsilon=epsilon,
        beta=tuple(word_roots(cartan, w)),
        beta_prime=tuple(word_roots(cartan, u)),
        support=frozenset(eta),
    )


# ---------------------------------------------------------------------------
# Permutations with interval-initial segments
# ---------------------------------------------------------------------------

Perm = tuple[int, ...]


def xi_is_member(perm: Sequence[int]) -> bool:
    """Whether sigma([0,k]) is an integer interval for every k."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        return False
    if n == 0:
        return True
    lo = hi = perm[0]
    for k in range(1, n):
        v = perm[k]
        if v == hi + 1:
            hi = v
        elif v == lo - 1:
            lo = v
        else:
            return False
    return True


def xi_enumerate(n: int) -> Iterator[Perm]:
    """The 2^(n-1) interval permutations, in binary-choice order.

    Choice bits are read from the most significant position: bit 0 extends
    the image interval upward ("max"), bit 1 extends it downward ("min").
    """
    if n < 1:
        raise ValueError("n must be positive")
    for code in range(1 << (n - 1)):
        vals = [0]
        lo = hi = 0
        for k in range(n - 1):
            bit = (code >> (n - 2 - k)) & 1
            if bit == 0:
                hi += 1
                vals.append(hi)
            else:
                lo -= 1
                vals.append(lo)
        yield tuple(v - lo for v in vals)


def gamma_subset(n: int) -> list[Perm]:
    """The permutations [i+1..j, i, j+1..n, i-1..1] (1-based reading), deduplicated."""
    out: list[Perm] = []
    seen = set()
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            seq = list(range(i + 1, j + 1)) + [i] + list(range(j + 1, n + 1)) + list(range(i - 1, 0, -1))
            perm = tuple(x - 1 for x in seq)
            if perm not in seen:
                seen.add(perm)
                out.append(perm)
    return out


class NotIntervalPermutation(ValueError):
    pass


def sigma_chain(eta: Sequence[int], p: Sequence, s: Sequence, sigma: Sequence[int], k: int):
    """Chain of the permuted presentation at position k.

    Returns (case, n, chain): case is "pred" when sigma(0) <= sigma(k) (the
    chain is a predecessor chain ending at sigma(k)) and "succ" otherwise,
    n is the number of chain steps, and chain lists the original indices in
    increasing order.
    """
    if not xi_is_member(sigma):
        raise NotIntervalPermutation(f"{sigma} fails the interval test")
    head = set(sigma[: k + 1])
    target = eta[sigma[k]]
    chain = sorted(i for i in head if eta[i] == target)
    # the intersection must be a contiguous run of the eta-class
    for a, b in itertools.pairwise(chain):
        if s[a] != b:
            raise AssertionError("chain is not contiguous in its level class")
    if sigma[0] <= sigma[k]:
        assert chain[-1] == sigma[k]
        return "pred", len(chain) - 1, tuple(chain)
    assert chain[0] == sigma[k]
    return "succ", len(chain) - 1, tuple(chain)


def ebar_vector(eta: Sequence[int], p: Sequence, s: Sequence, sigma: Sequence[int], k: int) -> tuple[int, ...]:
    """0/1 indicator vector of the chain of sigma at position k."""
    _, _, chain = sigma_chain(eta, p, s, sigma, k)
    n = len(eta)
    out = [0] * n
    for i in chain:
        out[i] = 1
    return tuple(out)
