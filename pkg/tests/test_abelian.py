import random
from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, strategies as st

from relfm.abelian import (
    P,
    AbelianTrivialContext,
    EndContext,
    IsomMatrix,
    dagger,
    factor_u0,
    factor_u_pp,
    in_u0,
    is_isometric,
    is_symmetric,
    pp_word_product,
    u_iso_pp,
    xi,
)
from relfm.errors import (
    ContextMismatchError,
    InvalidContextError,
    NotInU0Error,
    NotIsometricError,
    ShapeMismatchError,
    WrongModeError,
)
from relfm.groups import FGAbelian
from relfm.lattice import SL2Matrix


def M(a, b, c, d):
    return IsomMatrix(a, b, c, d)


# Z[i] acting on Z^2; the transpose is complex conjugation
GAUSS = EndContext.represented_ring(2, {"i": [[0, -1], [1, 0]]})
I2 = sympy.ImmutableMatrix([[0, -1], [1, 0]])


def test_dagger_examples():
    assert dagger(M(1, 0, 0, 1)) == M(1, 0, 0, 1)
    assert dagger(M(2, 3, 5, 7)) == M(7, -3, -5, 2)


def test_isometric_examples():
    assert is_isometric(M(0, -1, 1, 0))
    assert is_isometric(M(1, 1, 0, 1))
    assert not is_isometric(M(2, 0, 0, 1))
    assert not is_isometric(M(0, 1, 1, 0))


def test_u_iso_pp():
    assert u_iso_pp(M(0, -1, 1, 0)) == SL2Matrix(0, -1, 1, 0)
    with pytest.raises(NotIsometricError):
        u_iso_pp(M(2, 0, 0, 1))
    with pytest.raises(WrongModeError):
        u_iso_pp(IsomMatrix.identity(GAUSS))


def test_factor_u_pp_examples():
    assert factor_u_pp(SL2Matrix(1, -1, 0, 1)) == (("P", -1), ("Q", 1), ("P", 1))
    assert pp_word_product(factor_u_pp(SL2Matrix(-1, 0, 0, -1))) == SL2Matrix(-1, 0, 0, -1)
    assert P ** 4 == SL2Matrix(1, 0, 0, 1)


def test_factor_u_pp_exhaustive_small():
    for a, b, c, d in product(range(-3, 4), repeat=4):
        if a * d - b * c == 1:
            m = SL2Matrix(a, b, c, d)
            assert pp_word_product(factor_u_pp(m)) == m


def test_in_u0_and_xi():
    assert in_u0(M(0, -1, 1, 0))
    assert not in_u0(M(1, 0, 0, 1))
    assert xi(M(0, -1, 1, 0)) == ((0, 1), (1, 0))
    assert xi(M(1, 1, -1, 0)) == ((1, -1), (-1, 0))
    assert xi(M(3, 2, 4, 3)) == ((Fraction(3, 2), Fraction(-1, 2)), (Fraction(-1, 2), Fraction(3, 2)))
    with pytest.raises(NotInU0Error):
        xi(M(1, 0, 0, 1))


def test_factor_u0_pp():
    for f in (M(1, 0, 0, 1), M(0, -1, 1, 0), M(1, 5, 0, 1), M(-1, 0, 0, -1)):
        g, h = factor_u0(f)
        assert g @ h == f and in_u0(g) and in_u0(h)
    # alpha an isogeny: h = J; otherwise h = K
    assert factor_u0(M(2, 1, 1, 1))[1] == M(0, -1, 1, 0)
    assert factor_u0(M(0, -1, 1, 0))[1] == M(1, -1, 1, 0)
    with pytest.raises(NotIsometricError):
        factor_u0(M(2, 0, 0, 1))


def test_integer_entries_only():
    with pytest.raises(ShapeMismatchError):
        M(1.5, 0, 0, 1)


ent = st.integers(-1000, 1000)
mats = st.builds(M, ent, ent, ent, ent)


@given(mats, mats)
def test_dagger_involution_and_antihom(f, g):
    assert dagger(dagger(f)) == f
    assert dagger(f @ g) == dagger(g) @ dagger(f)


@given(mats)
def test_pp_isometric_iff_det_one(f):
    assert is_isometric(f) == (f.det() == 1)


# represented ring


def gauss(a, b):
    return a * sympy.eye(2) + b * I2


def G(a, b, c, d):
    return IsomMatrix(gauss(*a), gauss(*b), gauss(*c), gauss(*d), GAUSS)


def test_represented_ring_hat_is_conjugation():
    assert GAUSS.hat(gauss(2, 3)) == gauss(2, -3)
    assert GAUSS.hat(gauss(1, 0)) == gauss(1, 0)


def test_represented_ring_isometries():
    f = G((0, 0), (0, -1), (1, 0), (0, 0))  # [[0, -i], [1, 0]]
    assert not is_isometric(f)
    f = G((0, 0), (0, -1), (0, 1), (0, 0))  # [[0, -i], [i, 0]]
    assert is_isometric(f)
    assert in_u0(f)
    assert is_symmetric(GAUSS, xi(f))
    g, h = factor_u0(f)
    assert g @ h == f and in_u0(g) and in_u0(h)
    assert is_isometric(G((0, 1), (0, 0), (0, 0), (0, 1)))  # diag(i, i)
    assert not is_isometric(G((0, 1), (0, 0), (0, 0), (0, -1)))  # diag(i, -i)
    # without isometry the slope datum need not be symmetric
    g = G((1, 0), (0, 1), (0, 0), (1, 0))  # [[1, i], [0, 1]]
    assert not is_isometric(g)
    assert not is_symmetric(GAUSS, xi(g))


def test_represented_ring_non_isogeny():
    ctx = EndContext.represented_ring(2, {})
    f = IsomMatrix(1, [[1, 1], [0, 0]], 0, 1, ctx)
    assert not in_u0(f)
    with pytest.raises(NotInU0Error):
        xi(f)


def test_represented_ring_validation():
    with pytest.raises(InvalidContextError):
        EndContext.represented_ring(2, {}, [[2, 0], [0, 1]])
    with pytest.raises(InvalidContextError):
        # transpose conjugated by a non-symmetric P does not square to the identity
        EndContext.represented_ring(2, {"x": [[1, 2], [3, 4]]}, [[1, 1], [0, 1]])
    with pytest.raises(ShapeMismatchError):
        IsomMatrix(1, [[1]], 0, 1, GAUSS)
    with pytest.raises(ContextMismatchError):
        IsomMatrix.identity(GAUSS) @ M(1, 0, 0, 1)


@given(st.lists(st.integers(-5, 5), min_size=8, max_size=8),
       st.lists(st.integers(-5, 5), min_size=8, max_size=8))
def test_represented_dagger_antihom(u, v):
    f = G(*zip(u[::2], u[1::2]))
    g = G(*zip(v[::2], v[1::2]))
    assert dagger(dagger(f)) == f
    assert dagger(f @ g) == dagger(g) @ dagger(f)


# abelian trivial transforms


def abelian_ctx():
    return AbelianTrivialContext(FGAbelian(1), FGAbelian(2), FGAbelian(1))


def test_compose_abelian_example():
    ctx = abelian_ctx()
    t = ctx.element(2, (1,), (0, 3), (5,)) * ctx.element(3, (4,), (1, -3), (0,))
    assert t == ctx.element(5, (5,), (1, 0), (5,))


def test_abelian_context_mismatch():
    other = AbelianTrivialContext(FGAbelian(1), FGAbelian(1), FGAbelian(1))
    with pytest.raises(ContextMismatchError):
        abelian_ctx().identity() * other.identity()


def test_abelian_group_laws():
    ctx = AbelianTrivialContext(FGAbelian(1, (2,)), FGAbelian(2), FGAbelian(0, (5,)))
    rng = random.Random(5)

    def rand():
        r = lambda n: [rng.randint(-30, 30) for _ in range(n)]
        return ctx.element(rng.randint(-30, 30), r(2), r(2), r(1))

    for _ in range(200):
        x, y, z = rand(), rand(), rand()
        assert (x * y) * z == x * (y * z)
        assert x * y == y * x
        assert x * ctx.inverse(x) == ctx.identity()
