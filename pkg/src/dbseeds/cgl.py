"""Normal-form engine for explicitly presented iterated skew polynomial algebras.

A presentation consists of generator count n, the v-exponent matrix of the
commutation scalars, and straightening tails T_{kj} supported strictly
between j and k, encoding  x_k x_j = lambda_{kj} x_j x_k + T_{kj}  for k > j.
Elements are kept in the PBW basis x_1^{m_1} ... x_n^{m_n}.

The engine validates presentations by a randomized associativity audit and
validates caller-supplied chain elements (the c_k of the prime-element
recursion) through leading-term and homogeneity assertions; it never
searches for them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Mapping, Sequence

from .coxeter import NEG_INF, POS_INF, order_functions, pred_succ
from .qtorus import VLaurent, scr


class PresentationError(ValueError):
    pass


class RewriteBudgetExceeded(RuntimeError):
    """A product exceeded the rewrite budget; the tails are suspect."""


Exponent = tuple[int, ...]


class NFPoly:
    """Normal-form element: finite map from PBW exponent vectors to scalars."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exponent, VLaurent] | None = None):
        clean: dict[Exponent, VLaurent] = {}
        if terms:
            for f, c in terms.items():
                key = tuple(int(x) for x in f)
                if any(x < 0 for x in key):
                    raise ValueError("PBW exponents must be nonnegative")
                cur = clean.get(key)
                c = cur + c if cur is not None else c
                if c.is_zero():
                    clean.pop(key, None)
                else:
                    clean[key] = c
        self._terms = clean

    @classmethod
    def zero(cls) -> "NFPoly":
        return cls()

    @classmethod
    def one(cls, n: int) -> "NFPoly":
        return cls({(0,) * n: VLaurent.one()})

    @classmethod
    def monomial(cls, f: Sequence[int], coef: VLaurent | None = None) -> "NFPoly":
        return cls({tuple(f): coef if coef is not None else VLaurent.one()})

    @classmethod
    def generator(cls, n: int, i: int) -> "NFPoly":
        return cls.monomial(tuple(1 if t == i else 0 for t in range(n)))

    @property
    def terms(self) -> dict[Exponent, VLaurent]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "NFPoly") -> "NFPoly":
        out = dict(self._terms)
        for f, c in other._terms.items():
            out[f] = out[f] + c if f in out else c
        return NFPoly(out)

    def __neg__(self) -> "NFPoly":
        return NFPoly({f: -c for f, c in self._terms.items()})

    def __sub__(self, other: "NFPoly") -> "NFPoly":
        return self + (-other)

    def scale(self, coef: VLaurent) -> "NFPoly":
        return NFPoly({f: c * coef for f, c in self._terms.items()})

    def support_indices(self) -> set[int]:
        out: set[int] = set()
        for f in self._terms:
            out.update(i for i, x in enumerate(f) if x)
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, NFPoly) and self._terms == other._terms

    def __repr__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"({c})*x^{f}" for f, c in sorted(self._terms.items(), key=lambda t: _revlex_key(t[0])))


def _revlex_key(f: Exponent) -> tuple[int, ...]:
    return tuple(reversed(f))


def leading_term(a: NFPoly) -> tuple[VLaurent, Exponent]:
    """Maximal term in the order comparing exponents from the last generator down."""
    if a.is_zero():
        raise ValueError("zero element has no leading term")
    f = max(a._terms, key=_revlex_key)
    return a._terms[f], f


@dataclass(frozen=True)
class CGLPresentation:
    """Presented skew polynomial algebra with level and degree bookkeeping."""

    n: int
    lambda_exp: tuple[tuple[int, ...], ...]       # v-exponents, skew-symmetric
    tails: dict[tuple[int, int], NFPoly]          # (k, j) with k > j; absent = 0
    eta: tuple[int, ...]
    degrees: tuple[tuple[int, ...], ...]
    lambda_star_vexp: tuple[int, ...]
    rewrite_budget: int = 10**6

    def __post_init__(self):
        for i in range(self.n):
            if self.lambda_exp[i][i] != 0:
                raise PresentationError("lambda exponents must vanish on the diagonal")
            for j in range(i):
                if self.lambda_exp[i][j] != -self.lambda_exp[j][i]:
                    raise PresentationError("lambda exponents must be skew-symmetric")
        for (k, j), tail in self.tails.items():
            if not k > j:
                raise PresentationError("tails are indexed by pairs k > j")
            inside = set(range(j + 1, k))
            if not tail.support_indices() <= inside:
                raise PresentationError(f"tail ({k},{j}) leaves the open interval")
            want = tuple(a + b for a, b in zip(self.degrees[k], self.degrees[j]))
            for f in tail.terms:
                if self.monomial_degree(f) != want:
                    raise PresentationError(f"tail ({k},{j}) is not degree-homogeneous")

    @property
    def nu_exp(self) -> tuple[tuple[Q, ...], ...]:
        return tuple(tuple(Q(x, 2) for x in row) for row in self.lambda_exp)

    def pred_succ(self):
        return pred_succ(self.eta)

    def monomial_degree(self, f: Sequence[int]) -> tuple[int, ...]:
        width = len(self.degrees[0]) if self.degrees else 0
        out = [0] * width
        for i, m in enumerate(f):
            if m:
                for t in range(width):
                    out[t] += m * self.degrees[i][t]
        return tuple(out)

    def poly_degree(self, a: NFPoly) -> tuple[int, ...]:
        """Common degree of a homogeneous element; raises if mixed."""
        degs = {self.monomial_degree(f) for f in a.terms}
        if len(degs) != 1:
            raise PresentationError(f"element is not homogeneous: degrees {degs}")
        return degs.pop()


def _word_of(f: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for i, m in enumerate(f):
        out.extend([i] * m)
    return tuple(out)


def _normalize_word(pres: CGLPresentation, word: tuple[int, ...], coef: VLaurent, budget: list[int]) -> NFPoly:
    """Straighten one coefficient-word pair into the PBW basis."""
    out: dict[Exponent, VLaurent] = {}
    stack: list[tuple[VLaurent, tuple[int, ...]]] = [(coef, word)]
    while stack:
        c, w = stack.pop()
        t = next((i for i in range(len(w) - 1) if w[i] > w[i + 1]), None)
        if t is None:
            f = [0] * pres.n
            for i in w:
                f[i] += 1
            key = tuple(f)
            out[key] = out[key] + c if key in out else c
            continue
        budget[0] -= 1
        if budget[0] < 0:
            raise RewriteBudgetExceeded("rewrite budget exhausted; check the presentation tails")
        k, j = w[t], w[t + 1]
        swapped = w[:t] + (j, k) + w[t + 2:]
        stack.append((c * VLaurent.v_power(pres.lambda_exp[k][j]), swapped))
        tail = pres.tails.get((k, j))
        if tail is not None:
            for g, cg in tail.terms.items():
                stack.append((c * cg, w[:t] + _word_of(g) + w[t + 2:]))
    return NFPoly(out)


def nf_mul(pres: CGLPresentation, a: NFPoly, b: NFPoly) -> NFPoly:
    """Product in normal form; associative, unit-preserving, budget-guarded."""
    budget = [pres.rewrite_budget]
    total = NFPoly.zero()
    for f, cf in a.terms.items():
        for g, cg in b.terms.items():
            total = total + _normalize_word(pres, _word_of(f) + _word_of(g), cf * cg, budget)
    return total


def nf_mul_all(pres: CGLPresentation, factors: Sequence[NFPoly]) -> NFPoly:
    out = NFPoly.one(pres.n)
    for x in factors:
        out = nf_mul(pres, out, x)
    return out


def audit_presentation(pres: CGLPresentation, trials: int = 200, max_degree: int = 3, seed: int = 0) -> None:
    """Randomized associativity audit; raises PresentationError on failure."""
    rng = random.Random(seed)

    def rand_monomial() -> NFPoly:
        f = [0] * pres.n
        for _ in range(rng.randint(0, max_degree)):
            f[rng.randrange(pres.n)] += 1
        return NFPoly.monomial(tuple(f))

    for _ in range(trials):
        a, b, c = rand_monomial(), rand_monomial(), rand_monomial()
        left = nf_mul(pres, nf_mul(pres, a, b), c)
        right = nf_mul(pres, a, nf_mul(pres, b, c))
        if left != right:
            raise PresentationError(f"associativity fails on {a}, {b}, {c}")


def xcomm_check(pres: CGLPresentation, f: Sequence[int]) -> bool:
    """Leading term of the reverse-ordered monomial against the symmetrization scalar."""
    factors = []
    for i in range(pres.n - 1, -1, -1):
        for _ in range(f[i]):
            factors.append(NFPoly.generator(pres.n, i))
    prod = nf_mul_all(pres, factors)
    coef, exp = leading_term(prod)
    return exp == tuple(f) and coef == scr(pres.lambda_exp, f)


def quasi_commutation_scalar(pres: CGLPresentation, a: NFPoly, b: NFPoly) -> VLaurent | None:
    """The v-power z with a b = z b a, or None when they do not quasi-commute."""
    ab = nf_mul(pres, a, b)
    ba = nf_mul(pres, b, a)
    if ab.is_zero() or ba.is_zero():
        return VLaurent.one() if ab.is_zero() and ba.is_zero() else None
    c1, f1 = leading_term(ab)
    c2, f2 = leading_term(ba)
    if f1 != f2:
        return None
    e = min(c1.terms) - min(c2.terms)
    z = VLaurent.v_power(e)
    return z if ab == ba.scale(z) else None


# ---------------------------------------------------------------------------
# Chain elements
# ---------------------------------------------------------------------------

CTable = dict[tuple[int, int], NFPoly]


def interval_y(pres: CGLPresentation, i: int, m: int, c_table: CTable) -> NFPoly:
    """Chain element with leading term x_i x_{s(i)} ... x_{s^m(i)}.

    Built by the recursion  y_[i, s^l(i)] = y_[i, s^{l-1}(i)] x_{s^l(i)} - c,
    with the caller-supplied c validated through homogeneity and the
    leading-term formula.
    """
    p, s = pres.pred_succ()
    y = NFPoly.generator(pres.n, i)
    chain = [i]
    j = i
    for _ in range(m):
        j = s[j]
        if j is POS_INF:
            raise PresentationError(f"chain out of range: s^{m}({i}) does not exist")
        chain.append(j)
        c = c_table.get((i, j))
        if c is None:
            raise PresentationError(f"missing chain element c[{(i, j)}]")
        y = nf_mul(pres, y, NFPoly.generator(pres.n, j)) - c
    want_deg = tuple(
        sum(pres.degrees[t][a] for t in chain) for a in range(len(pres.degrees[0]))
    )
    if pres.poly_degree(y) != want_deg:
        raise PresentationError(f"chain element [{i},{j}] has wrong degree")
    coef, exp = leading_term(y)
    lead = [0] * pres.n
    for t in chain:
        lead[t] += 1
    if exp != tuple(lead) or coef != VLaurent.one():
        raise PresentationError(f"chain element [{i},{j}] has wrong leading term")
    return y


def y_elements(pres: CGLPresentation, c_table, check_normality: bool = True) -> list[NFPoly]:
    """The full prime-element chain y_0, ..., y_{n-1} of the presentation.

    Chain inputs may be keyed either by (start, end) pairs or simply by the
    end index k (the start of a full chain is determined by k).
    """
    p, s = pres.pred_succ()
    o_minus, _ = order_functions(p, s)

    def root_of(k: int) -> int:
        while p[k] is not NEG_INF:
            k = p[k]
        return k

    table: CTable = {}
    for key, val in c_table.items():
        table[(root_of(key), key) if isinstance(key, int) else key] = val

    out = []
    for k in range(pres.n):
        root = root_of(k)
        y = interval_y(pres, root, o_minus[k], table)
        if check_normality:
            for j in range(k + 1):
                if quasi_commutation_scalar(pres, y, NFPoly.generator(pres.n, j)) is None:
                    raise PresentationError(f"y_{k} does not normalize x_{j}")
        out.append(y)
    return out


def interval_exponent(pres: CGLPresentation, i: int, m: int) -> tuple[int, ...]:
    """Indicator vector of the chain i, s(i), ..., s^m(i)."""
    _, s = pres.pred_succ()
    out = [0] * pres.n
    j = i
    out[j] = 1
    for _ in range(m):
        j = s[j]
        if j is POS_INF:
            raise PresentationError("chain out of range")
        out[j] += 1
    return tuple(out)


def u_element(pres: CGLPresentation, c_table: CTable, i: int, m: int) -> NFPoly:
    """Normal element of the open interval produced by two chain elements.

    For m >= 1 with s^m(i) in range:
        u = y_[i, s^{m-1}(i)] y_[s(i), s^m(i)]
            - Omega_lambda(e_i, e_[s(i), s^{m-1}(i)]) y_[s(i), s^{m-1}(i)] y_[i, s^m(i)]
    with the empty-interval conventions for m = 1.  The support is asserted
    to lie strictly between i and s^m(i).
    """
    _, s = pres.pred_succ()
    si = s[i]
    if si is POS_INF:
        raise PresentationError(f"index {i} has no successor")
    y_left = interval_y(pres, i, m - 1, c_table)
    y_right = interval_y(pres, si, m - 1, c_table)
    y_full = interval_y(pres, i, m, c_table)
    if m == 1:
        y_mid = NFPoly.one(pres.n)
        omega_e = Q(0)
    else:
        mid_vec = interval_exponent(pres, si, m - 2)
        y_mid = interval_y(pres, si, m - 2, c_table)
        omega_e = sum(Q(pres.lambda_exp[i][t]) * mid_vec[t] for t in range(pres.n))
    u = nf_mul(pres, y_left, y_right) - nf_mul(pres, y_mid, y_full).scale(VLaurent.v_power(omega_e))
    top = interval_exponent(pres, i, m)
    hi = max(t for t, x in enumerate(top) if x)
    inside = set(range(i + 1, hi))
    if u.is_zero():
        raise PresentationError(f"interval element [{i},{hi}] vanishes")
    if not u.support_indices() <= inside:
        raise PresentationError(f"interval element [{i},{hi}] leaves the open interval")
    pres.poly_degree(u)
    return u


def cond_holds(pres: CGLPresentation, c_table: CTable, i: int) -> bool:
    """Leading-coefficient normalization of the one-step interval element."""
    u = u_element(pres, c_table, i, 1)
    coef, f = leading_term(u)
    shifted = tuple(x - (1 if t == i else 0) for t, x in enumerate(f))
    return coef == scr(pres.nu_exp, shifted)


def rescale_scalar_identity(pres: CGLPresentation, c_table: CTable, i: int, m: int) -> bool:
    """Leading coefficient of the m-step interval element against its predicted scalar."""
    u = u_element(pres, c_table, i, m)
    coef, f = leading_term(u)
    _, s = pres.pred_succ()
    tail_vec = interval_exponent(pres, s[i], m - 1)
    shifted = tuple(x - (1 if t == i else 0) for t, x in enumerate(f))
    predicted = scr(pres.nu_exp, tail_vec).inverse() ** 2 * scr(pres.nu_exp, shifted)
    return coef == predicted


# ---------------------------------------------------------------------------
# Rescaling
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RescaleReport:
    y_scalars: tuple[VLaurent, ...]
    u_scalars: dict[tuple[int, int], VLaurent]


def rescale(pres: CGLPresentation, t: Sequence[VLaurent]) -> tuple[CGLPresentation, RescaleReport]:
    """Presentation on the rescaled generators t_j x_j, with induced scalars.

    The commutation exponents do not change; every tail picks up t_k t_j and
    is rewritten in the scaled generators.  The report carries the scalars
    by which the chain elements y and the interval elements u transform.
    """
    if len(t) != pres.n:
        raise PresentationError("one unit per generator required")
    for z in t:
        e, c = z.monomial_parts()
        if c == 0:
            raise PresentationError("rescaling units must be nonzero monomials")

    def monomial_factor(f: Sequence[int]) -> VLaurent:
        out = VLaurent.one()
        for ti, mi in zip(t, f):
            out = out * ti ** (-mi)
        return out

    new_tails = {}
    for (k, j), tail in pres.tails.items():
        new_tails[(k, j)] = NFPoly(
            {f: c * t[k] * t[j] * monomial_factor(f) for f, c in tail.terms.items()}
        )
    new_pres = CGLPresentation(
        n=pres.n,
        lambda_exp=pres.lambda_exp,
        tails=new_tails,
        eta=pres.eta,
        degrees=pres.degrees,
        lambda_star_vexp=pres.lambda_star_vexp,
        rewrite_budget=pres.rewrite_budget,
    )
    p, s = pres.pred_succ()
    o_minus, o_plus = order_functions(p, s)
    y_scalars = []
    for k in range(pres.n):
        z = VLaurent.one()
        j = k
        while True:
            z = z * t[j]
            if p[j] is NEG_INF:
                break
            j = p[j]
        y_scalars.append(z)
    u_scalars: dict[tuple[int, int], VLaurent] = {}
    for i in range(pres.n):
        j = i
        for m in range(1, o_plus[i] + 1):
            j = s[j]
            z = t[i] * t[j]
            mid = i
            for _ in range(m - 1):
                mid = s[mid]
                z = z * t[mid] * t[mid]
            u_scalars[(i, m)] = z
    return new_pres, RescaleReport(tuple(y_scalars), u_scalars)


def rescale_c_table(pres: CGLPresentation, c_table: CTable, t: Sequence[VLaurent]) -> CTable:
    """Chain-element inputs matching a rescaled presentation."""
    _, s = pres.pred_succ()

    def chain_product(i: int, end: int) -> VLaurent:
        z = t[i]
        j = i
        while j != end:
            j = s[j]
            z = z * t[j]
        return z

    def monomial_factor(f: Sequence[int]) -> VLaurent:
        out = VLaurent.one()
        for ti, mi in zip(t, f):
            out = out * ti ** (-mi)
        return out

    out: CTable = {}
    for (i, end), c in c_table.items():
        z = chain_product(i, end)
        out[(i, end)] = NFPoly({f: coef * z * monomial_factor(f) for f, coef in c.terms.items()})
    return out


# ---------------------------------------------------------------------------
# Shipped presentations
# ---------------------------------------------------------------------------


def sl2_presentation() -> tuple[CGLPresentation, CTable]:
    """Two generators with  x_2 x_1 = q^2 x_1 x_2 + (1 - q^2)."""
    one_minus_q2 = VLaurent({0: 1, 4: -1})
    pres = CGLPresentation(
        n=2,
        lambda_exp=((0, -4), (4, 0)),
        tails={(1, 0): NFPoly({(0, 0): one_minus_q2})},
        eta=(1, 1),
        degrees=((-1,), (1,)),
        lambda_star_vexp=(4, 4),
    )
    c_table: CTable = {(0, 1): NFPoly.one(2)}
    return pres, c_table


def a2_presentation() -> tuple[CGLPresentation, CTable]:
    """Four-generator double-cell fragment with a three-step level chain.

    Generators x_1, x_2, x_3 span the longest-word cell of rank two, x_4 is
    the extra column generator; levels are (1, 2, 1, 1), so the first level
    class has a two-step successor chain, which is what the multi-step
    interval-element identities need.
    """
    one_minus_q2 = VLaurent({0: 1, 4: -1})
    kappa_prime = VLaurent({-1: 1, 3: -1})   # v^{-1} - v^3
    pres = CGLPresentation(
        n=4,
        lambda_exp=(
            (0, 2, -2, 2),
            (-2, 0, 2, -2),
            (2, -2, 0, -4),
            (-2, 2, 4, 0),
        ),
        tails={
            (2, 0): NFPoly({(0, 1, 0, 0): kappa_prime}),
            (3, 2): NFPoly({(0, 0, 0, 0): one_minus_q2}),
        },
        eta=(1, 2, 1, 1),
        degrees=((0, -1), (-1, -1), (-1, 0), (1, 0)),
        lambda_star_vexp=(4, 4, 4, 4),
    )
    c_table: CTable = {
        (0, 2): NFPoly({(0, 1, 0, 0): VLaurent.v_power(1)}),
        (2, 3): NFPoly.one(4),
        (0, 3): NFPoly({(1, 0, 0, 0): VLaurent.one()}),
    }
    return pres, c_table


def shipped_presentations() -> dict[str, tuple[CGLPresentation, CTable]]:
    return {"sl2": sl2_presentation(), "a2": a2_presentation()}


# ---------------------------------------------------------------------------
# The rank-one worked example
# ---------------------------------------------------------------------------


def sl2_example() -> dict:
    """Build and verify the rank-one example end to end.

    Checks, by normal-form arithmetic: the defining relation, the frozen
    chain element q(Y- Y+ - 1) shared by both seeds, the exchange relation
    Y+ Y- = q p + 1, the commutation p Y- = q^2 Y- p matching the seed
    frame, and the mutation exchanging the two cluster variables.
    """
    from . import dbc
    from .coxeter import cartan_init
    from .seedcore import mutate_seed

    pres, c_table = sl2_presentation()
    audit_presentation(pres, trials=60, max_degree=3, seed=7)
    x1 = NFPoly.generator(2, 0)   # Y-
    x2 = NFPoly.generator(2, 1)   # Y+

    # defining relation
    q2 = VLaurent.q_power(2)
    rel = nf_mul(pres, x2, x1) - nf_mul(pres, x1, x2).scale(q2) - NFPoly({(0, 0): VLaurent({0: 1, 4: -1})})
    assert rel.is_zero()

    ys = y_elements(pres, c_table)
    y2 = ys[1]                                    # Y- Y+ - 1
    normalizer = scr(pres.nu_exp, (1, 1))         # the chain's symmetrization scalar, q
    assert normalizer == VLaurent.q_power(1)
    p_elem = y2.scale(normalizer)                 # q (Y- Y+ - 1), the frozen variable
    assert p_elem == NFPoly({(1, 1): VLaurent.q_power(1), (0, 0): VLaurent.q_power(1).scale(-1)})

    # exchange relation Y+ Y- = q p + 1
    lhs = nf_mul(pres, x2, x1)
    rhs = p_elem.scale(VLaurent.q_power(1)) + NFPoly.one(2)
    assert lhs == rhs

    # commutation p Y- = q^2 Y- p, the value the seed frame must reproduce
    z = quasi_commutation_scalar(pres, p_elem, x1)
    assert z == VLaurent.q_power(2)

    cartan = cartan_init("A", 1)
    bow = dbc.bowtie_build(cartan, (1,), (1,))
    seed_id = dbc.sigma_seed(bow, (0, 1)).seed
    seed_swap = dbc.sigma_seed(bow, (1, 0)).seed
    assert seed_id.frame.psi[1][0] == 2
    assert seed_id.exchange.column(0) == (0, 1)

    # mutation at the first index exchanges the two cluster variables:
    # matrix level ...
    mutated = mutate_seed(seed_id, 0)
    assert mutated.frame.psi == seed_swap.frame.psi
    assert mutated.exchange == seed_swap.exchange
    assert mutated.degrees == seed_swap.degrees
    # ... and value level: the cleared form of M(-e1+e2) + M(-e1) = Y+ is
    # exactly the exchange relation checked above.

    return {
        "presentation": pres,
        "c_table": c_table,
        "frozen": p_elem,
        "seed_id": seed_id,
        "seed_swap": seed_swap,
        "exchange_relation": (lhs, rhs),
        "commutation": z,
    }
