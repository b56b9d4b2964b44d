import random
from fractions import Fraction as Q

import pytest

from dbseeds.qtorus import (
    DimensionMismatch,
    FrameMatrix,
    FrameMismatch,
    TorusElement,
    VLaurent,
    bicharacter,
    frame_restrict,
    scr,
    torus_mul,
)

PSI = FrameMatrix.from_rows([[0, 2], [-2, 0]])


def test_vlaurent_arithmetic():
    a = VLaurent({0: 1, 2: -1})
    b = VLaurent({2: 1})
    assert a + b == VLaurent({0: 1})
    assert a * b == VLaurent({2: 1, 4: -1})
    assert (a - a).is_zero()
    assert VLaurent.v_power(3).inverse() == VLaurent.v_power(-3)
    assert VLaurent.q_power(1) == VLaurent.v_power(2)


def test_vlaurent_rational_exponents():
    z = VLaurent.v_power(Q(1, 2))
    assert (z * z) == VLaurent.v_power(1)


def test_bicharacter_examples():
    assert bicharacter(PSI, (1, 0), (1, 0)) == VLaurent.one()
    assert bicharacter(PSI, (1, 0), (0, 1)) == VLaurent.q_power(1)
    assert bicharacter(PSI, (1, 1), (0, 1)) == VLaurent.q_power(1)


def test_bicharacter_skew():
    rng = random.Random(5)
    for _ in range(50):
        f = tuple(rng.randint(-3, 3) for _ in range(2))
        g = tuple(rng.randint(-3, 3) for _ in range(2))
        assert bicharacter(PSI, f, g) * bicharacter(PSI, g, f) == VLaurent.one()
        assert bicharacter(PSI, f, f) == VLaurent.one()


def test_bicharacter_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        bicharacter(PSI, (1, 0, 0), (0, 1))


def test_torus_unit_and_product():
    m1 = TorusElement.monomial(PSI, (1, 0))
    m2 = TorusElement.monomial(PSI, (0, 1))
    assert torus_mul(m1, TorusElement.unit(PSI)) == m1
    # with psi_12 = 2, skew-symmetry forces M(e_2) M(e_1) = q^{-1} M(e_1+e_2)
    prod = torus_mul(m2, m1)
    assert prod.terms == {(1, 1): VLaurent.q_power(-1)}
    assert torus_mul(m1, m2).terms == {(1, 1): VLaurent.q_power(1)}


def test_torus_square_of_sum():
    m1 = TorusElement.monomial(PSI, (1, 0))
    m2 = TorusElement.monomial(PSI, (0, 1))
    s = m1 + m2
    sq = torus_mul(s, s)
    q = VLaurent.q_power(1)
    assert sq.terms == {
        (2, 0): VLaurent.one(),
        (1, 1): q + q.inverse(),
        (0, 2): VLaurent.one(),
    }


def test_torus_frame_mismatch():
    other = FrameMatrix.from_rows([[0, 4], [-4, 0]])
    with pytest.raises(FrameMismatch):
        torus_mul(TorusElement.unit(PSI), TorusElement.unit(other))


def test_torus_mul_associative_random():
    rng = random.Random(11)
    for n in (2, 3, 6):
        psi_rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i):
                e = rng.randint(-3, 3)
                psi_rows[i][j] = e
                psi_rows[j][i] = -e
        frame = FrameMatrix.from_rows(psi_rows)

        def rand_elem():
            return TorusElement(
                frame,
                {
                    tuple(rng.randint(-2, 2) for _ in range(n)): VLaurent.v_power(rng.randint(-2, 2))
                    for _ in range(rng.randint(1, 4))
                },
            )

        for _ in range(30):
            a, b, c = rand_elem(), rand_elem(), rand_elem()
            assert torus_mul(torus_mul(a, b), c) == torus_mul(a, torus_mul(b, c))


def test_scr_examples():
    lam = [[0, 2], [-2, 0]]
    assert scr(lam, (1, 0)) == VLaurent.one()
    assert scr(lam, (0, 1)) == VLaurent.one()
    assert scr(lam, (1, 1)) == VLaurent.v_power(-2)
    assert scr(lam, (2, 2)) == VLaurent.v_power(-8)


def test_frame_restrict():
    same = frame_restrict(PSI, [(1, 0), (0, 1)])
    assert same.psi == PSI.psi
    cong = frame_restrict(PSI, [(1, 0), (1, 1)])
    assert cong.psi == PSI.psi
    flipped = frame_restrict(PSI, [(0, 1), (1, 0)])
    assert flipped.psi[0][1] == -2


def test_frame_restrict_rejects_dependent():
    with pytest.raises(ValueError):
        frame_restrict(PSI, [(1, 1), (2, 2)])


def test_frame_validation():
    with pytest.raises(ValueError):
        FrameMatrix.from_rows([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        FrameMatrix.from_rows([[1, 0], [0, 1]])
