"""Seed constructors for the double-cell algebras of a pair (w, u).

Everything is exact: scalar matrices are stored through their v-exponents
(v = sqrt(q)), frames as skew-symmetric rational exponent matrices, and
exchange matrices over the integers.

Sign conventions for the generator scalar matrix are fixed by the iterated
skew polynomial presentation (the w-block acts through h(beta), the u-block
through h(-beta')) and are audited by the rewriting engine's associativity
check; see tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Literal, Sequence

from . import linalg
from .coxeter import (
    NEG_INF,
    POS_INF,
    CartanData,
    DoubleWordData,
    NotIntervalPermutation,
    Perm,
    act_word_on_weight,
    ebar_vector,
    eta_machinery,
    pred_succ,
    sigma_chain,
    xi_is_member,
)
from .qtorus import FrameMatrix, frame_restrict
from .seedcore import ExchangeMatrix, QuantumSeed


class OracleError(ValueError):
    """The exchange-column linear system has no unique integer solution."""


@dataclass(frozen=True)
class BowtiePresentation:
    """Scalar matrix, symmetrization data and degrees of the double-cell algebra."""

    cartan: CartanData
    dwd: DoubleWordData
    lambda_exp: tuple[tuple[int, ...], ...]   # v-exponents of lambda_{kj}
    nu_exp: tuple[tuple[Q, ...], ...]         # half of lambda_exp
    lambda_star_vexp: tuple[int, ...]         # v-exponent of lambda*_k = q_{eta(k)}^2
    degrees: tuple[tuple[int, ...], ...]      # root-lattice degree per generator

    @property
    def size(self) -> int:
        return self.dwd.size

    def nu_frame(self) -> FrameMatrix:
        return FrameMatrix(self.nu_exp)


def bowtie_build(cartan: CartanData, w_word: Sequence[int], u_word: Sequence[int]) -> BowtiePresentation:
    """Exponent matrix and degrees of the presentation attached to (w, u).

    With positions k ordered as in the double word (w reversed, then u),
    the v-exponent of lambda_{kj} for j < k is

        -2<beta_|k|, beta_|j|>    on the w-block,
        -2<beta'_|k|, beta'_|j|>  on the u-block,
        +2<beta'_|k|, beta_|j|>   on the mixed block,

    which is what the h(beta)/h(-beta') action of the presentation gives.
    """
    dwd = eta_machinery(cartan, w_word, u_word)
    n = dwd.size
    nw = dwd.n_w
    lam = [[0] * n for _ in range(n)]
    for k in range(n):
        for j in range(k):
            pairing = cartan.pair_alpha(dwd.root_at(k), dwd.root_at(j))
            if k < nw:
                e = -2 * pairing
            elif j >= nw:
                e = -2 * pairing
            else:
                e = 2 * pairing
            lam[k][j] = e
            lam[j][k] = -e
    lam_t = tuple(tuple(r) for r in lam)
    nu = tuple(tuple(Q(x, 2) for x in row) for row in lam_t)
    star = tuple(4 * cartan.d[dwd.eta[k] - 1] for k in range(n))
    degrees = tuple(dwd.degree_at(k) for k in range(n))
    return BowtiePresentation(cartan, dwd, lam_t, nu, star, degrees)


# ---------------------------------------------------------------------------
# Frames and degrees of the permuted seeds
# ---------------------------------------------------------------------------


def w0_permutation(dwd: DoubleWordData) -> Perm:
    """The permutation reversing the w-block and fixing the u-block."""
    nw, n = dwd.n_w, dwd.size
    return tuple(range(nw - 1, -1, -1)) + tuple(range(nw, n))


def ex_sigma(dwd: DoubleWordData, sigma: Perm) -> tuple[int, ...]:
    """Positions with a later position of the same level."""
    eta = dwd.eta
    n = dwd.size
    return tuple(
        l for l in range(n)
        if any(eta[sigma[k]] == eta[sigma[l]] for k in range(l + 1, n))
    )


def ebar_vectors(dwd: DoubleWordData, sigma: Perm) -> tuple[tuple[int, ...], ...]:
    return tuple(ebar_vector(dwd.eta, dwd.p, dwd.s, sigma, k) for k in range(dwd.size))


def sigma_frame(pres: BowtiePresentation, sigma: Perm) -> FrameMatrix:
    """Frame of the seed attached to sigma, by congruence along the chain vectors."""
    ebars = ebar_vectors(pres.dwd, sigma)
    if not ebars:
        return FrameMatrix(())
    return frame_restrict(pres.nu_frame(), ebars)


def sigma_frame_product(pres: BowtiePresentation, sigma: Perm) -> FrameMatrix:
    """Same frame through the raw double-product formula, as an independent path."""
    if not xi_is_member(sigma):
        raise NotIntervalPermutation(str(sigma))
    dwd = pres.dwd
    n = dwd.size
    psi = [[Q(0)] * n for _ in range(n)]
    for k in range(n):
        support_k = [i for i in sigma[: k + 1] if dwd.eta[i] == dwd.eta[sigma[k]]]
        for j in range(n):
            support_j = [l for l in sigma[: j + 1] if dwd.eta[l] == dwd.eta[sigma[j]]]
            psi[k][j] = sum(pres.nu_exp[i][l] for i in support_k for l in support_j)
    return FrameMatrix(tuple(tuple(row) for row in psi))


def sigma_degrees(pres: BowtiePresentation, sigma: Perm) -> tuple[tuple[int, ...], ...]:
    """Root-lattice degree of each permuted cluster variable (chain sums)."""
    dwd = pres.dwd
    out = []
    for k in range(dwd.size):
        _, _, chain = sigma_chain(dwd.eta, dwd.p, dwd.s, sigma, k)
        deg = [0] * pres.cartan.rank
        for i in chain:
            for t, x in enumerate(dwd.degree_at(i)):
                deg[t] += x
        out.append(tuple(deg))
    return tuple(out)


def chain_matrix(dwd: DoubleWordData, sigma: Perm) -> linalg.Mat:
    """Columns are the chain indicator vectors of sigma (unimodular)."""
    cols = ebar_vectors(dwd, sigma)
    n = dwd.size
    return tuple(tuple(Q(cols[k][j]) for k in range(n)) for j in range(n))


# ---------------------------------------------------------------------------
# Exchange matrices
# ---------------------------------------------------------------------------


def bfz_matrix(dwd: DoubleWordData) -> ExchangeMatrix:
    """Case-by-case exchange matrix of the double word, on the reversed-w order.

    Rows and columns are indexed by positions of the w-reversing seed; the
    level of position j is the j-th letter of the double word itself.
    """
    n = dwd.size
    w0 = w0_permutation(dwd)
    letters = tuple(dwd.eta[w0[j]] for j in range(n))
    p1, s1 = pred_succ(letters)
    eps = dwd.epsilon
    c = dwd.cartan.cartan
    ex = tuple(l for l in range(n) if s1[l] is not POS_INF)

    def entry(j: int, k: int) -> int:
        if p1[k] is not NEG_INF and j == p1[k]:
            return -eps[k]
        if s1[k] is not POS_INF and j == s1[k]:
            return eps[j]
        cjk = c[letters[j] - 1][letters[k] - 1]
        sj, sk = s1[j], s1[k]
        if j < k:
            if (k < sj and sj < sk and eps[k] == eps[sj]) or (
                k < sk and sk < sj and eps[k] == -eps[sk]
            ):
                return -eps[k] * cjk
        if k < j:
            if (j < sk and sk < sj and eps[j] == eps[sk]) or (
                j < sj and sj < sk and eps[j] == -eps[sj]
            ):
                return eps[j] * cjk
        return 0

    cols = tuple(tuple(entry(j, k) for j in range(n)) for k in ex)
    return ExchangeMatrix(n, ex, cols)


def _unimodular_transport(z_target: linalg.Mat, z_source: linalg.Mat, v: Sequence[int]) -> tuple[int, ...]:
    """Integer solution of z_target x = z_source v."""
    rhs = linalg.mat_vec(z_source, v)
    sol = linalg.solve_unique(z_target, rhs)
    return linalg.as_int_vec(sol)


def b_columns(dwd: DoubleWordData, bfz: ExchangeMatrix) -> ExchangeMatrix:
    """Exchange matrix of the identity-order seed from the reversed-w one.

    Columns are transported through the chain bases of the two orders and
    combined per the position of the successor: a column of the reversed
    order for u-block indices, a negated single column when the successor
    stays in the w-block, and the full accumulated chain when it crosses
    into the u-block.
    """
    n, nw = dwd.size, dwd.n_w
    w0 = w0_permutation(dwd)
    z_id = chain_matrix(dwd, tuple(range(n)))
    z_w0 = chain_matrix(dwd, w0)
    ex = tuple(l for l in range(n) if dwd.s[l] is not POS_INF)
    cols = []
    for l in ex:
        if l >= nw:
            combined = list(bfz.column(l))
            sign = 1
        elif dwd.s[l] < nw:
            combined = list(bfz.column(nw - 1 - dwd.s[l]))
            sign = -1
        else:
            combined = [0] * n
            j = l
            while j is not NEG_INF:
                for t, x in enumerate(bfz.column(nw - 1 - j)):
                    combined[t] += x
                j = dwd.p[j]
            sign = 1
        vec = [sign * x for x in combined]
        cols.append(_unimodular_transport(z_id, z_w0, vec))
    return ExchangeMatrix(n, ex, tuple(cols))


def btau_columns(dwd: DoubleWordData, sigma: Perm, b_id: ExchangeMatrix) -> ExchangeMatrix:
    """Exchange matrix of the sigma-seed from the identity-order columns.

    For each exchangeable position l, the next position of the same level
    determines a successor or predecessor chain at the level of original
    indices; the corresponding identity columns are summed and transported
    through the chain bases.
    """
    if not xi_is_member(sigma):
        raise NotIntervalPermutation(str(sigma))
    n = dwd.size
    eta, p, s = dwd.eta, dwd.p, dwd.s
    z_id = chain_matrix(dwd, tuple(range(n)))
    z_sigma = chain_matrix(dwd, sigma)
    ex = ex_sigma(dwd, sigma)
    cols = []
    for l in ex:
        k = next(j for j in range(l + 1, n) if eta[sigma[j]] == eta[sigma[l]])
        start, target = sigma[l], sigma[k]
        # walk the successor orbit first, else the predecessor orbit
        route = []
        j, hops = start, 0
        while j is not POS_INF and j != target:
            j = s[j]
            hops += 1
        if j == target:
            summed = [0] * n
            j = start
            for _ in range(hops):
                for t, x in enumerate(b_id.column(j)):
                    summed[t] += x
                j = s[j]
            sign = 1
        else:
            j, hops = start, 0
            while j is not NEG_INF and j != target:
                j = p[j]
                hops += 1
            if j != target:
                raise OracleError("next same-level index is in neither chain orbit")
            summed = [0] * n
            j = start
            for _ in range(hops):
                j = p[j]
                for t, x in enumerate(b_id.column(j)):
                    summed[t] += x
            sign = -1
        vec = [sign * x for x in summed]
        cols.append(_unimodular_transport(z_sigma, z_id, vec))
    return ExchangeMatrix(n, ex, tuple(cols))


def solve_b_oracle(
    pres: BowtiePresentation,
    sigma: Perm,
    l: int,
    frame: FrameMatrix | None = None,
    degrees: Sequence[Sequence[int]] | None = None,
) -> tuple[int, ...]:
    """Exchange column at position l from its defining linear system.

    Solves, exactly over the rationals, for the unique vector b with
    frame-exponent <b, e_j> = 2 d delta_{jl} and vanishing degree pairing,
    then certifies integrality.  Used as the independent oracle against the
    closed-form column constructions.
    """
    dwd = pres.dwd
    n = dwd.size
    if l not in ex_sigma(dwd, sigma):
        raise OracleError(f"position {l} is not exchangeable for this permutation")
    fr = frame if frame is not None else sigma_frame(pres, sigma)
    degs = degrees if degrees is not None else sigma_degrees(pres, sigma)
    d_val = pres.cartan.d[dwd.eta[sigma[l]] - 1]

    rows = [list(fr.psi[j]) for j in range(n)]
    rhs = [Q(-2 * d_val) if j == l else Q(0) for j in range(n)]
    width = pres.cartan.rank
    for t in range(width):
        rows.append([Q(degs[j][t]) for j in range(n)])
        rhs.append(Q(0))
    try:
        sol = linalg.solve_unique(linalg.mat(rows), rhs)
        return linalg.as_int_vec(sol)
    except (linalg.LinearSolveError, ValueError) as exc:
        raise OracleError(f"no unique integer exchange column at {l}: {exc}") from None


# ---------------------------------------------------------------------------
# Assembled seeds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SigmaSeedData:
    sigma: Perm
    ebar: tuple[tuple[int, ...], ...]
    z_id: tuple[tuple[int, ...], ...]
    z_sigma: tuple[tuple[int, ...], ...]
    ex: tuple[int, ...]
    seed: QuantumSeed


def sigma_seed(pres: BowtiePresentation, sigma: Perm, columns: Literal["btau", "oracle"] = "btau") -> SigmaSeedData:
    """Full seed (frame, exchange, degrees) attached to an interval permutation."""
    dwd = pres.dwd
    n = dwd.size
    frame = sigma_frame(pres, sigma)
    product = sigma_frame_product(pres, sigma)
    assert frame.psi == product.psi, "chain congruence and product formula disagree"
    degrees = sigma_degrees(pres, sigma)
    ex = ex_sigma(dwd, sigma)
    if columns == "oracle":
        cols = tuple(solve_b_oracle(pres, sigma, l, frame, degrees) for l in ex)
        b = ExchangeMatrix(n, ex, cols)
    else:
        b_id = b_columns(dwd, bfz_matrix(dwd))
        b = btau_columns(dwd, sigma, b_id)
    d_vec = tuple(pres.cartan.d[dwd.eta[sigma[k]] - 1] for k in range(n))
    seed = QuantumSeed(
        frame=frame,
        exchange=b,
        inv=frozenset(),
        degrees=degrees,
        d=d_vec,
    )
    z_id = tuple(tuple(int(x) for x in row) for row in chain_matrix(dwd, tuple(range(n))))
    z_sig = tuple(tuple(int(x) for x in row) for row in chain_matrix(dwd, sigma))
    return SigmaSeedData(tuple(sigma), ebar_vectors(dwd, sigma), z_id, z_sig, ex, seed)


# ---------------------------------------------------------------------------
# The seeds on the full quantum coordinate ring (with the torus part)
# ---------------------------------------------------------------------------

Variant = Literal["plain", "modified"]
Convention = Literal["bz-labels", "mbz-labels"]
LabelMode = Literal["prefix", "suffix"]
DegreeComponent = Literal["first", "second"]


@dataclass(frozen=True)
class BZSeedData:
    """Quantum-minor seed on [0, r+N+M): labels, frame, exchange, degrees."""

    cartan: CartanData
    w_word: tuple[int, ...]
    u_word: tuple[int, ...]
    variant: Variant
    labels: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]   # (gamma_k, delta_k)
    eta: tuple[int, ...]
    p: tuple
    s: tuple
    ex: tuple[int, ...]
    inv: frozenset[int]
    degrees_first: tuple[tuple[int, ...], ...]    # -gamma_k in weight coords
    degrees_second: tuple[tuple[int, ...], ...]   # +delta_k in weight coords
    seed: QuantumSeed


def bz_seed(
    cartan: CartanData,
    u_word: Sequence[int],
    w_word: Sequence[int],
    variant: Variant = "plain",
    convention: Convention = "bz-labels",
    u_label_mode: LabelMode = "prefix",
    degree_component: DegreeComponent = "first",
) -> BZSeedData:
    """Seed with quantum-minor labels for the double word 1..r, w, u.

    The frame exponents are the pairing differences of the weight labels;
    `convention` selects which variant's labels feed that formula (the two
    choices differ by a global sign).  `u_label_mode` selects between the
    prefix subwords u_{<=k} and the reversed-suffix reading for the u-block
    labels; the cross-check against the reversed-w seed arbitrates both
    flags, and the shipped defaults are the ones that pass it.
    """
    w = tuple(w_word)
    u = tuple(u_word)
    dwd = eta_machinery(cartan, w, u)   # validates reducedness
    r = cartan.rank
    nw, nu = len(w), len(u)
    n = r + nw + nu
    w_inv = tuple(reversed(w))

    def fundamental(i: int) -> tuple[int, ...]:
        return tuple(1 if t == i - 1 else 0 for t in range(r))

    def plain_label(k: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        if k < r:
            mu = fundamental(k + 1)
            return mu, act_word_on_weight(cartan, w_inv, mu)
        if k < r + nw:
            idx = k - r   # 0-based position in w
            mu = fundamental(w[idx])
            prefix = w_inv[: nw - 1 - idx]
            return mu, act_word_on_weight(cartan, prefix, mu)
        idx = k - r - nw
        mu = fundamental(u[idx])
        if u_label_mode == "prefix":
            word = u[: idx + 1]
        else:
            word = u[idx:]
        return act_word_on_weight(cartan, word, mu), mu

    plain = tuple(plain_label(k) for k in range(n))
    labels = plain if variant == "plain" else tuple((d, g) for g, d in plain)

    frame_source = plain if convention == "bz-labels" else tuple((d, g) for g, d in plain)
    psi = [[Q(0)] * n for _ in range(n)]
    for j in range(n):
        for k in range(j):
            gj, dj = frame_source[j]
            gk, dk = frame_source[k]
            mu_jk = cartan.pair_weight(gj, gk) - cartan.pair_weight(dj, dk)
            psi[j][k] = mu_jk
            psi[k][j] = -mu_jk
    frame = FrameMatrix(tuple(tuple(row) for row in psi))

    eta = tuple(range(1, r + 1)) + w + u
    p, s = pred_succ(eta)
    eps = tuple(1 if k < r + nw else -1 for k in range(n))
    c = cartan.cartan
    ex = tuple(k for k in range(r, n) if s[k] is not POS_INF)

    def entry(j: int, k: int) -> int:
        if p[k] is not NEG_INF and j == p[k]:
            return -eps[k]
        if s[k] is not POS_INF and j == s[k]:
            return eps[j]
        cjk = c[eta[j] - 1][eta[k] - 1]
        sj, sk = s[j], s[k]
        if j < k:
            if (k < sj and sj < sk and eps[k] == eps[sj]) or (
                k <= r + nw - 1 and r + nw - 1 < sk and sk < sj
            ):
                return -eps[k] * cjk
        if k < j:
            if (j < sk and sk < sj and eps[j] == eps[sk]) or (
                j <= r + nw - 1 and r + nw - 1 < sj and sj < sk
            ):
                return eps[j] * cjk
        return 0

    cols = tuple(tuple(entry(j, k) for j in range(n)) for k in ex)
    exchange = ExchangeMatrix(n, ex, cols)

    deg_first = tuple(tuple(-x for x in labels[k][0]) for k in range(n))
    deg_second = tuple(labels[k][1] for k in range(n))
    seed = QuantumSeed(
        frame=frame,
        exchange=exchange,
        inv=frozenset(set(range(n)) - set(ex)),
        degrees=deg_first if degree_component == "first" else deg_second,
        d=tuple(cartan.d[eta[k] - 1] for k in range(n)),
    )
    return BZSeedData(
        cartan=cartan,
        w_word=w,
        u_word=u,
        variant=variant,
        labels=labels,
        eta=eta,
        p=p,
        s=s,
        ex=ex,
        inv=seed.inv,
        degrees_first=deg_first,
        degrees_second=deg_second,
        seed=seed,
    )


@dataclass(frozen=True)
class ConnectionsReport:
    ok: bool
    frame_match: bool
    exchange_match: bool
    ex_match: bool
    detail: str


def connections_check(
    cartan: CartanData,
    w_word: Sequence[int],
    u_word: Sequence[int],
    convention: Convention = "bz-labels",
    u_label_mode: LabelMode = "prefix",
    degree_component: DegreeComponent = "first",
) -> ConnectionsReport:
    """Cross-verification of the two seed pipelines for one pair (w, u).

    Builds the reversed-w seed on the reduced cell and, independently, the
    modified minor-labelled seed; reduces the latter by its first r frozen
    variables, applies the antiisomorphism transform, shifts indices, and
    compares frames and exchange matrices entrywise.
    """
    from .seedcore import antiiso_transform, graded_reduce

    pres = bowtie_build(cartan, w_word, u_word)
    dwd = pres.dwd
    w0 = w0_permutation(dwd)
    bar = sigma_seed(pres, w0)
    bar_b = bfz_matrix(dwd)
    if bar.seed.exchange != bar_b:
        return ConnectionsReport(False, False, False, False, "column pipeline does not reproduce the reversed-w matrix")

    mbz = bz_seed(
        cartan,
        u_word=u_word,
        w_word=w_word,
        variant="modified",
        convention=convention,
        u_label_mode=u_label_mode,
        degree_component=degree_component,
    )
    from .seedcore import ReductionError, check_compatible

    pre = check_compatible(mbz.seed)
    if not pre.ok:
        return ConnectionsReport(False, False, False, False, f"minor-labelled seed incompatible: {pre}")
    try:
        reduced = graded_reduce(mbz.seed, cartan.rank)
    except ReductionError as exc:
        return ConnectionsReport(False, False, False, False, f"reduction failed: {exc}")
    transformed = antiiso_transform(reduced)

    frame_match = transformed.frame.psi == bar.seed.frame.psi
    ex_match = transformed.ex == bar.seed.ex
    exchange_match = ex_match and all(
        transformed.exchange.column(k) == bar.seed.exchange.column(k) for k in bar.seed.ex
    )
    ok = frame_match and exchange_match
    detail = "" if ok else f"frame_match={frame_match} exchange_match={exchange_match}"
    return ConnectionsReport(ok, frame_match, exchange_match, ex_match, detail)
