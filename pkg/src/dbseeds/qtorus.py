"""Exact quantum-torus arithmetic over a formal unit v = sqrt(q).

Scalars live in the Laurent ring Q[v^e : e rational]; frames record the
exponent matrix psi of a multiplicatively skew-symmetric matrix via
r_{kj} = v^{psi_{kj}}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Mapping, Sequence

from . import linalg


class DimensionMismatch(ValueError):
    pass


class FrameMismatch(ValueError):
    """Arithmetic across two different frames is refused, never coerced."""


class VLaurent:
    """Finite rational-coefficient sum of rational powers of v."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | None = None):
        clean: dict[Q, Q] = {}
        if terms:
            for e, c in terms.items():
                e, c = Q(e), Q(c)
                if c != 0:
                    clean[e] = clean.get(e, Q(0)) + c
        self._terms = {e: c for e, c in clean.items() if c != 0}

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls) -> "VLaurent":
        return cls()

    @classmethod
    def one(cls) -> "VLaurent":
        return cls({Q(0): Q(1)})

    @classmethod
    def v_power(cls, e, coef=1) -> "VLaurent":
        return cls({Q(e): Q(coef)})

    @classmethod
    def q_power(cls, e, coef=1) -> "VLaurent":
        return cls({2 * Q(e): Q(coef)})

    # -- structure ----------------------------------------------------
    @property
    def terms(self) -> dict[Q, Q]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def monomial_parts(self) -> tuple[Q, Q]:
        """(exponent, coefficient) of a one-term scalar."""
        if not self.is_monomial():
            raise ValueError(f"not a single v-power: {self}")
        ((e, c),) = self._terms.items()
        return e, c

    # -- ring operations ----------------------------------------------
    def __add__(self, other: "VLaurent") -> "VLaurent":
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Q(0)) + c
        return VLaurent(out)

    def __neg__(self) -> "VLaurent":
        return VLaurent({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "VLaurent") -> "VLaurent":
        return self + (-other)

    def __mul__(self, other: "VLaurent") -> "VLaurent":
        out: dict[Q, Q] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, Q(0)) + c1 * c2
        return VLaurent(out)

    def scale(self, coef) -> "VLaurent":
        c0 = Q(coef)
        return VLaurent({e: c * c0 for e, c in self._terms.items()})

    def inverse(self) -> "VLaurent":
        e, c = self.monomial_parts()
        return VLaurent({-e: 1 / c})

    def __pow__(self, n: int) -> "VLaurent":
        if n < 0:
            return self.inverse() ** (-n)
        out = VLaurent.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, VLaurent) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        if not self._terms:
            return "0"
        bits = [f"{c}*v^{e}" for e, c in sorted(self._terms.items())]
        return " + ".join(bits)


@dataclass(frozen=True)
class FrameMatrix:
    """Exponent matrix psi of a multiplicatively skew-symmetric matrix."""

    psi: tuple[tuple[Q, ...], ...]

    def __post_init__(self):
        n = len(self.psi)
        for i in range(n):
            if len(self.psi[i]) != n:
                raise DimensionMismatch("psi must be square")
            if self.psi[i][i] != 0:
                raise ValueError("psi must vanish on the diagonal")
            for j in range(i):
                if self.psi[i][j] != -self.psi[j][i]:
                    raise ValueError("psi must be skew-symmetric")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "FrameMatrix":
        return cls(tuple(tuple(Q(x) for x in r) for r in rows))

    @property
    def size(self) -> int:
        return len(self.psi)

    def omega_exp(self, f: Sequence, g: Sequence) -> Q:
        """v-exponent of the bicharacter at (f, g), i.e. f^T psi g."""
        if len(f) != self.size or len(g) != self.size:
            raise DimensionMismatch("vector length does not match frame size")
        return linalg.bilinear(f, self.psi, g)

    def reindex(self, tau: Sequence[int]) -> "FrameMatrix":
        """psi'_{jk} = psi_{tau(j), tau(k)}."""
        return FrameMatrix(
            tuple(tuple(self.psi[tau[j]][tau[k]] for k in range(self.size)) for j in range(self.size))
        )

    def negate(self) -> "FrameMatrix":
        return FrameMatrix(tuple(tuple(-x for x in row) for row in self.psi))


def bicharacter(frame: FrameMatrix, f: Sequence, g: Sequence) -> VLaurent:
    """The scalar Omega(f, g) = v^(f^T psi g), a single v-power."""
    return VLaurent.v_power(frame.omega_exp(f, g))


def scr(exp_matrix: Sequence[Sequence], f: Sequence) -> VLaurent:
    """Symmetrization scalar: product over j < k of lambda_{jk}^(-f_j f_k).

    exp_matrix supplies the v-exponents of the skew-symmetric scalar matrix.
    """
    n = len(f)
    if len(exp_matrix) != n:
        raise DimensionMismatch("matrix size does not match vector length")
    e = Q(0)
    for j in range(n):
        if f[j] == 0:
            continue
        for k in range(j + 1, n):
            if f[k] != 0:
                e -= Q(f[j]) * Q(f[k]) * Q(exp_matrix[j][k])
    return VLaurent.v_power(e)


def frame_restrict(frame: FrameMatrix, vectors: Sequence[Sequence]) -> FrameMatrix:
    """Frame of the sublattice spanned by the given independent vectors."""
    vecs = [tuple(Q(x) for x in v) for v in vectors]
    if linalg.rank(tuple(vecs)) != len(vecs):
        raise ValueError("restriction vectors are linearly dependent")
    return FrameMatrix(
        tuple(tuple(frame.omega_exp(a, b) for b in vecs) for a in vecs)
    )


class TorusElement:
    """Finite sum of scaled basis monomials M(f) of a based quantum torus."""

    __slots__ = ("frame", "_terms")

    def __init__(self, frame: FrameMatrix, terms: Mapping | None = None):
        self.frame = frame
        clean: dict[tuple[int, ...], VLaurent] = {}
        if terms:
            for f, c in terms.items():
                key = tuple(int(x) for x in f)
                if len(key) != frame.size:
                    raise DimensionMismatch("lattice vector length mismatch")
                c = c if isinstance(c, VLaurent) else VLaurent({Q(0): Q(c)})
                if key in clean:
                    c = clean[key] + c
                if not c.is_zero():
                    clean[key] = c
                elif key in clean:
                    del clean[key]
        self._terms = clean

    @classmethod
    def monomial(cls, frame: FrameMatrix, f: Sequence[int], coef: VLaurent | None = None) -> "TorusElement":
        return cls(frame, {tuple(f): coef if coef is not None else VLaurent.one()})

    @classmethod
    def unit(cls, frame: FrameMatrix) -> "TorusElement":
        return cls.monomial(frame, (0,) * frame.size)

    @property
    def terms(self) -> dict[tuple[int, ...], VLaurent]:
        return dict(self._terms)

    def _check(self, other: "TorusElement"):
        if self.frame is not other.frame and self.frame != other.frame:
            raise FrameMismatch("elements live over different frames")

    def __add__(self, other: "TorusElement") -> "TorusElement":
        self._check(other)
        out = dict(self._terms)
        for f, c in other._terms.items():
            out[f] = out[f] + c if f in out else c
        return TorusElement(self.frame, out)

    def __neg__(self) -> "TorusElement":
        return TorusElement(self.frame, {f: -c for f, c in self._terms.items()})

    def __sub__(self, other: "TorusElement") -> "TorusElement":
        return self + (-other)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TorusElement)
            and self.frame == other.frame
            and self._terms == other._terms
        )

    def __repr__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"({c})*M{f}" for f, c in sorted(self._terms.items()))


def torus_mul(a: TorusElement, b: TorusElement) -> TorusElement:
    """Bilinear extension of M(f) M(g) = Omega(f, g) M(f + g)."""
    a._check(b)
    frame = a.frame
    out: dict[tuple[int, ...], VLaurent] = {}
    for f, cf in a._terms.items():
        for g, cg in b._terms.items():
            h = tuple(x + y for x, y in zip(f, g))
            c = cf * cg * bicharacter(frame, f, g)
            out[h] = out[h] + c if h in out else c
    return TorusElement(frame, out)
