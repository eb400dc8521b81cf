import pytest
from hypothesis import given, strategies as st

from relfm import oracle
from relfm.errors import DeterminantError, OrientationReversingError
from relfm.lattice import (
    IDENTITY,
    KClass,
    SL2Matrix,
    apply,
    euler_form,
    invert,
    multiply,
    power,
    transvection_decomposition,
)

B = SL2Matrix(1, 0, 1, 1)
A = SL2Matrix(-1, 1, 0, -1)

ints = st.integers(min_value=-10**12, max_value=10**12)
classes = st.builds(KClass, ints, ints)


@st.composite
def sl2(draw, bound=10**6):
    # product of random transvections; entries unbounded but exact
    m = IDENTITY
    for kind, k in draw(st.lists(st.tuples(st.booleans(), st.integers(-bound, bound)), max_size=6)):
        m = m @ (SL2Matrix(1, 0, k, 1) if kind else SL2Matrix(1, k, 0, 1))
    if draw(st.booleans()):
        m = -m
    return m


def test_euler_examples():
    # (1,0),(0,1): chi(O_C, O_x) = 1 via the oracle
    assert oracle.skyscraper_chi() == 1
    assert euler_form(KClass(1, 0), KClass(0, 1)) == 1
    assert euler_form(KClass(2, 3), KClass(2, 3)) == 0
    assert oracle.line_bundle_chi(2, 5) == 3
    assert euler_form(KClass(1, 2), KClass(1, 5)) == 3


def test_apply_examples():
    assert apply(IDENTITY, KClass(7, -3)) == KClass(7, -3)
    assert apply(B, KClass(1, 0)) == KClass(1, 1)
    # O_x -> I_x: rank 1 and chi(I_x) = chi(O_C) - chi(O_x) = -1
    assert apply(A, KClass(0, 1)) == KClass(1, -1)


def test_multiply_examples():
    m = SL2Matrix(3, 2, 4, 3)
    assert multiply(IDENTITY, m) == m
    assert multiply(B, B) == SL2Matrix(1, 0, 2, 1)
    assert multiply(multiply(B, A), B) == SL2Matrix(0, 1, -1, 0)


def test_invert_examples():
    assert invert(IDENTITY) == IDENTITY
    assert invert(B) == SL2Matrix(1, 0, -1, 1)
    assert invert(SL2Matrix(2, 1, 1, 1)) == SL2Matrix(1, -1, -1, 2)
    assert multiply(SL2Matrix(2, 1, 1, 1), SL2Matrix(1, -1, -1, 2)) == IDENTITY


def test_determinant_rejected():
    with pytest.raises(OrientationReversingError):
        SL2Matrix(-1, 1, 0, 1)
    with pytest.raises(DeterminantError) as info:
        SL2Matrix(2, 0, 0, 1)
    assert not isinstance(info.value, OrientationReversingError)


def test_unbounded_entries():
    big = 2**200
    m = SL2Matrix(1, big, 0, 1)
    assert power(m, 3) == SL2Matrix(1, 3 * big, 0, 1)
    assert apply(m, KClass(0, 1)).rank == big


def test_immutable():
    with pytest.raises(AttributeError):
        IDENTITY.a = 5


@given(classes, classes)
def test_euler_antisymmetric(v, w):
    assert euler_form(v, v) == 0
    assert euler_form(v, w) == -euler_form(w, v)


@given(classes, classes, classes)
def test_euler_bilinear(u, v, w):
    assert euler_form(u + v, w) == euler_form(u, w) + euler_form(v, w)
    assert euler_form(w, u + v) == euler_form(w, u) + euler_form(w, v)


@given(sl2(), classes, classes)
def test_symplectic_invariance(m, v, w):
    assert euler_form(apply(m, v), apply(m, w)) == euler_form(v, w)


@given(sl2(), sl2(), classes)
def test_group_action(m1, m2, v):
    assert apply(multiply(m1, m2), v) == apply(m1, apply(m2, v))


@given(sl2())
def test_inverse(m):
    assert multiply(m, invert(m)) == IDENTITY == multiply(invert(m), m)


@given(sl2(), st.integers(-40, 40))
def test_power_matches_repeated_product(m, n):
    expected = IDENTITY
    for _ in range(abs(n)):
        expected = multiply(expected, m if n > 0 else invert(m))
    assert power(m, n) == expected


@given(sl2(bound=10**30))
def test_transvection_decomposition(m):
    ops, e = transvection_decomposition(m)
    prod = IDENTITY
    for kind, k in ops:
        prod = prod @ (SL2Matrix(1, 0, k, 1) if kind == "L" else SL2Matrix(1, k, 0, 1))
    assert (prod if e == 1 else -prod) == m
    assert all(k != 0 for _, k in ops)
    assert all(ops[i][0] != ops[i + 1][0] for i in range(len(ops) - 1))
