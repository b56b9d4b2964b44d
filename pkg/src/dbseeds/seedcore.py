"""Quantum seeds at matrix level: compatibility, mutation, reindexing,
the antiisomorphism transform, and graded reduction.

A seed here is a frame exponent matrix together with an integer exchange
matrix, per-index degree vectors in some lattice, and a symmetrizer vector.
Cluster-variable values never appear at this level.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction as Q
from typing import Sequence

from . import linalg
from .qtorus import FrameMatrix


class NotExchangeable(ValueError):
    pass


class IncompatibleSeed(ValueError):
    pass


class ReductionError(ValueError):
    pass


@dataclass(frozen=True)
class ExchangeMatrix:
    """Integer n x |ex| matrix whose columns are keyed by exchangeable indices."""

    n: int
    ex: tuple[int, ...]                       # ordered, 0-based
    cols: tuple[tuple[int, ...], ...]         # cols[i] is the column of ex[i]

    def __post_init__(self):
        if len(self.ex) != len(self.cols):
            raise ValueError("one column per exchangeable index required")
        for c in self.cols:
            if len(c) != self.n:
                raise ValueError("column length must equal n")

    def column(self, k: int) -> tuple[int, ...]:
        try:
            return self.cols[self.ex.index(k)]
        except ValueError:
            raise NotExchangeable(f"index {k} is not exchangeable") from None

    def entry(self, j: int, k: int) -> int:
        return self.column(k)[j]

    def principal_part(self) -> list[list[int]]:
        return [[self.column(k)[j] for k in self.ex] for j in self.ex]

    def is_skew_symmetrizable(self, d: Sequence[int]) -> bool:
        for j in self.ex:
            for k in self.ex:
                if d[j] * self.entry(j, k) != -d[k] * self.entry(k, j):
                    return False
        return True

    def negate(self) -> "ExchangeMatrix":
        return ExchangeMatrix(self.n, self.ex, tuple(tuple(-x for x in c) for c in self.cols))


@dataclass(frozen=True)
class QuantumSeed:
    """Frame + exchange matrix + frozen data + degrees + symmetrizers."""

    frame: FrameMatrix
    exchange: ExchangeMatrix
    inv: frozenset[int]
    degrees: tuple[tuple[int, ...], ...]      # one lattice vector per index
    d: tuple[int, ...]

    @property
    def size(self) -> int:
        return self.frame.size

    @property
    def ex(self) -> tuple[int, ...]:
        return self.exchange.ex


@dataclass(frozen=True)
class CompatReport:
    ok: bool
    orthogonality_failures: tuple[tuple[int, int], ...]   # (k, j) with psi(b^k, e_j) != 0
    value_exponents: dict[int, Q]                         # psi(b^k, e_k) per k in ex
    degenerate: tuple[int, ...]                           # k with psi(b^k, e_k) == 0
    degree_failures: tuple[int, ...]                      # k with nonzero degree balance


def _basis(n: int, k: int) -> tuple[int, ...]:
    return tuple(1 if i == k else 0 for i in range(n))


def degree_balance(seed: QuantumSeed, k: int) -> tuple[int, ...]:
    """Sum_j b^k_j * degrees_j, which must vanish for a graded seed."""
    b = seed.exchange.column(k)
    width = len(seed.degrees[0]) if seed.degrees else 0
    out = [0] * width
    for j in range(seed.size):
        if b[j]:
            for t in range(width):
                out[t] += b[j] * seed.degrees[j][t]
    return tuple(out)


def check_compatible(seed: QuantumSeed) -> CompatReport:
    """Frame/exchange compatibility and degree balance, reported per column."""
    n = seed.size
    orth = []
    values: dict[int, Q] = {}
    degenerate = []
    bad_degrees = []
    for k in seed.ex:
        b = seed.exchange.column(k)
        for j in range(n):
            e = seed.frame.omega_exp(b, _basis(n, j))
            if j == k:
                values[k] = e
                if e == 0:
                    degenerate.append(k)
            elif e != 0:
                orth.append((k, j))
        if any(x != 0 for x in degree_balance(seed, k)):
            bad_degrees.append(k)
    ok = not orth and not degenerate and not bad_degrees
    return CompatReport(ok, tuple(orth), values, tuple(degenerate), tuple(bad_degrees))


def mutate_exchange(b: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """Matrix mutation in direction k; involutive."""
    col_k = b.column(k)
    new_cols = []
    for idx, j in enumerate(b.ex):
        col_j = b.cols[idx]
        if j == k:
            new_cols.append(tuple(-x for x in col_j))
            continue
        bkj = col_j[k]
        new = []
        for i in range(b.n):
            if i == k:
                new.append(-col_j[i])
            else:
                bik = col_k[i]
                new.append(col_j[i] + max(bik, 0) * max(bkj, 0) - max(-bik, 0) * max(-bkj, 0))
        new_cols.append(tuple(new))
    return ExchangeMatrix(b.n, b.ex, tuple(new_cols))


def _mutation_basis(seed: QuantumSeed, k: int, sign: int) -> list[tuple[int, ...]]:
    n = seed.size
    b = seed.exchange.column(k)
    basis = []
    for j in range(n):
        if j != k:
            basis.append(_basis(n, j))
        else:
            g = [0] * n
            g[k] = -1
            for i in range(n):
                if i != k:
                    g[i] += max(sign * b[i], 0)
            basis.append(tuple(g))
    return basis


def mutate_seed(seed: QuantumSeed, k: int) -> QuantumSeed:
    """Seed mutation in direction k: frame, exchange matrix and degrees.

    The frame transform is the basis change e_k -> -e_k + sum [b_ik]_+ e_i;
    the opposite sign choice gives the same frame for a compatible seed,
    which is asserted.
    """
    report = check_compatible(seed)
    if not report.ok:
        raise IncompatibleSeed(f"mutation of an incompatible seed: {report}")
    if k not in seed.ex:
        raise NotExchangeable(f"index {k} is not exchangeable")

    plus = _mutation_basis(seed, k, +1)
    minus = _mutation_basis(seed, k, -1)
    psi_plus = tuple(
        tuple(seed.frame.omega_exp(a, b) for b in plus) for a in plus
    )
    psi_minus = tuple(
        tuple(seed.frame.omega_exp(a, b) for b in minus) for a in minus
    )
    assert psi_plus == psi_minus, "frame mutation must not depend on the sign choice"
    new_frame = FrameMatrix(psi_plus)

    b = seed.exchange.column(k)
    width = len(seed.degrees[0]) if seed.degrees else 0
    new_deg = list(seed.degrees)
    mutated = [-seed.degrees[k][t] for t in range(width)]
    for i in range(seed.size):
        if i != k and b[i] > 0:
            for t in range(width):
                mutated[t] += b[i] * seed.degrees[i][t]
    new_deg[k] = tuple(mutated)

    out = QuantumSeed(
        frame=new_frame,
        exchange=mutate_exchange(seed.exchange, k),
        inv=seed.inv,
        degrees=tuple(new_deg),
        d=seed.d,
    )
    after = check_compatible(out)
    if not after.ok:
        raise IncompatibleSeed("mutation destroyed compatibility; construction bug")
    return out


def reindex(seed: QuantumSeed, tau: Sequence[int]) -> QuantumSeed:
    """Right action of a permutation: position j of the result carries tau(j)."""
    n = seed.size
    if sorted(tau) != list(range(n)):
        raise ValueError("tau must be a permutation of 0..n-1")
    inverse = [0] * n
    for j, v in enumerate(tau):
        inverse[v] = j
    new_frame = seed.frame.reindex(tau)
    new_ex = tuple(sorted(inverse[k] for k in seed.ex))
    new_cols = tuple(
        tuple(seed.exchange.column(tau[kp])[tau[j]] for j in range(n)) for kp in new_ex
    )
    return QuantumSeed(
        frame=new_frame,
        exchange=ExchangeMatrix(n, new_ex, new_cols),
        inv=frozenset(inverse[k] for k in seed.inv),
        degrees=tuple(seed.degrees[tau[j]] for j in range(n)),
        d=tuple(seed.d[tau[j]] for j in range(n)),
    )


def antiiso_transform(seed: QuantumSeed) -> QuantumSeed:
    """Matrix shadow of an algebra antiisomorphism: psi -> -psi, B -> -B."""
    return replace(seed, frame=seed.frame.negate(), exchange=seed.exchange.negate())


def graded_reduce(seed: QuantumSeed, n_reduce: int, degree_table: Sequence[Sequence[int]] | None = None) -> QuantumSeed:
    """Quotient a graded seed by its first n_reduce frozen, invertible indices.

    degree_table[k] is the grading degree of cluster variable k; the degrees
    of the first n_reduce variables must span every degree with integer
    coordinates.  The result lives on the remaining indices, with all
    degrees zero.
    """
    if n_reduce == 0:
        return seed
    n = seed.size
    table = seed.degrees if degree_table is None else tuple(tuple(v) for v in degree_table)
    if len(table) != n:
        raise ReductionError("degree table must cover every index")
    head = set(range(n_reduce))
    if head & set(seed.ex):
        raise ReductionError("reduced indices must be frozen")
    if not head <= seed.inv:
        raise ReductionError("reduced indices must be invertible")

    phi = linalg.mat([table[i] for i in range(n_reduce)])
    shifts: list[tuple[int, ...]] = []
    for k in range(n_reduce, n):
        try:
            c = linalg.solve_unique(linalg.transpose(phi), table[k])
            shifts.append(linalg.as_int_vec(c))
        except (linalg.LinearSolveError, ValueError) as exc:
            raise ReductionError(
                f"degree of index {k} is not an integer combination of the leading degrees: {exc}"
            ) from None

    vectors = []
    for k in range(n_reduce, n):
        g = [Q(0)] * n
        g[k] = Q(1)
        for i, c in enumerate(shifts[k - n_reduce]):
            g[i] -= c
        vectors.append(tuple(g))
    new_psi = tuple(
        tuple(seed.frame.omega_exp(a, b) for b in vectors) for a in vectors
    )

    new_ex = tuple(k - n_reduce for k in seed.ex)
    new_cols = tuple(
        tuple(seed.exchange.column(k)[j] for j in range(n_reduce, n)) for k in seed.ex
    )
    width = len(seed.degrees[0]) if seed.degrees else 0
    out = QuantumSeed(
        frame=FrameMatrix(new_psi),
        exchange=ExchangeMatrix(n - n_reduce, new_ex, new_cols),
        inv=frozenset(k - n_reduce for k in seed.inv if k >= n_reduce),
        degrees=tuple((0,) * width for _ in range(n - n_reduce)),
        d=seed.d[n_reduce:],
    )
    report = check_compatible(out)
    if not report.ok:
        raise ReductionError("reduction destroyed compatibility; construction bug")
    return out
