import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hqcf.gf import (
    DEFAULT_MODULI,
    FieldElem,
    FieldError,
    elem_arith,
    frobenius,
    make_field,
    units,
)

FIELD_PARAMS = [(2, 1), (2, 2), (2, 3), (2, 4), (2, 8), (3, 1), (5, 1), (7, 1), (3, 2)]
# no built-in default for F_9; x^2 + 1 is irreducible since -1 is not a square mod 3
EXTRA_MODULI = {(3, 2): (1, 0, 1)}


def field(p, s):
    return make_field(p, s, EXTRA_MODULI.get((p, s)))


def naive_polymulmod(a, b, mod, p):
    """Schoolbook product of coefficient lists, reduced by a monic modulus."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    s = len(mod) - 1
    for k in range(len(prod) - 1, s - 1, -1):
        c = prod[k]
        if c:
            for i in range(s + 1):
                prod[k - s + i] = (prod[k - s + i] - c * mod[i]) % p
    return (prod + [0] * s)[:s]


@st.composite
def field_and_elems(draw, n=2):
    F = field(*draw(st.sampled_from(FIELD_PARAMS)))
    return (F,) + tuple(F(draw(st.integers(0, F.q - 1))) for _ in range(n))


# -- make_field ----------------------------------------------------------------


def test_f2_elements():
    F = make_field(2, 1)
    assert F.q == 2
    assert [e.value for e in F.elements()] == [0, 1]


def test_f4_default_modulus_irreducible_by_brute_force():
    F = make_field(2, 2)
    mod = F.modulus
    assert len(mod) == 3 and mod[-1] == 1
    # a reducible quadratic is a product of two of the degree-1 polys x, x + 1
    for a, b in itertools.product((0, 1), repeat=2):
        product = [(a * b) % 2, (a + b) % 2, 1]
        assert tuple(product) != tuple(mod)


@pytest.mark.parametrize("s", sorted(k for p, k in DEFAULT_MODULI if p == 2))
def test_default_moduli_irreducible(s):
    F = make_field(2, s)
    # brute force: the multiplicative group has order q - 1, every unit has an inverse
    for a in range(1, F.q):
        assert F.mul(a, F.inv(a)) == 1
    # and there are no zero divisors
    table = F._mul[1:, 1:]
    assert (table != 0).all()


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        make_field(2, 2, (1, 0, 1))  # (x + 1)^2
    with pytest.raises(FieldError):
        make_field(2, 2, (0, 0, 1))  # x^2


@pytest.mark.parametrize(
    "args",
    [(4, 1), (1, 1), (2, 0), (2, 3, (1, 1, 1)), (2, 2, (1, 1, 0))],
)
def test_bad_parameters(args):
    with pytest.raises(FieldError):
        make_field(*args)


def test_explicit_modulus_matches_default():
    F = make_field(2, 3, DEFAULT_MODULI[(2, 3)])
    assert F is make_field(2, 3)


def test_alternative_modulus():
    F = make_field(2, 3, (1, 0, 1, 1))  # x^3 + x^2 + 1
    assert F.q == 8
    g = F.gen
    assert g**7 == F.one


# -- elem_arith -----------------------------------------------------------------


def test_f4_generator_square():
    F = make_field(2, 2)
    g = F.gen
    assert g.value == 2
    assert elem_arith(g, g, "mul") == g + F.one
    assert (g * g).value == 3


def test_char2_self_addition():
    for s in (1, 2, 3, 4):
        F = make_field(2, s)
        for a in F.elements():
            assert elem_arith(a, a, "add") == F.zero


def test_division_by_zero():
    F = make_field(2, 2)
    with pytest.raises(ZeroDivisionError):
        elem_arith(F.one, F.zero, "div")
    with pytest.raises(ZeroDivisionError):
        F.zero.inverse()


def test_mixed_fields():
    with pytest.raises(FieldError):
        make_field(2, 2).one + make_field(2, 3).one
    with pytest.raises(ValueError):
        elem_arith(make_field(2, 1).one, make_field(2, 1).one, "pow")


def test_element_index_range():
    F = make_field(2, 2)
    with pytest.raises(FieldError):
        FieldElem(F, 4)
    assert F(3).coeffs == (1, 1)


@pytest.mark.parametrize("p,s", [(2, 2), (2, 3), (2, 4), (3, 2)])
def test_mul_table_against_schoolbook(p, s):
    F = field(p, s)
    digits = [F(v).coeffs for v in range(F.q)]
    for a, b in itertools.product(range(F.q), repeat=2):
        want = naive_polymulmod(list(digits[a]), list(digits[b]), list(F.modulus), p)
        assert F(F.mul(a, b)).coeffs == tuple(want)


@given(field_and_elems(3))
def test_field_axioms(data):
    F, a, b, c = data
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == F.zero
    assert a + (-a) == F.zero
    if b:
        assert (a / b) * b == a
        assert b * b.inverse() == F.one


@given(field_and_elems(2))
def test_vector_ops_match_scalar(data):
    F, a, b = data
    va = np.array([a.value, b.value])
    vb = np.array([b.value, a.value])
    assert list(F.vadd(va, vb)) == [(a + b).value, (b + a).value]
    assert list(F.vmul(va, vb)) == [(a * b).value, (b * a).value]
    assert list(F.vsub(va, vb)) == [(a - b).value, (b - a).value]


@given(field_and_elems(1), st.lists(st.integers(0, 255), min_size=1, max_size=12))
def test_vsum_matches_fold(data, raw):
    F = data[0]
    vals = np.array([v % F.q for v in raw])
    acc = F.zero
    for v in vals:
        acc = acc + F(int(v))
    assert int(F.vsum(vals)) == acc.value


# -- frobenius ------------------------------------------------------------------


@pytest.mark.parametrize("s", [1, 2, 3])
@pytest.mark.parametrize("r", [2, 4, 8])
def test_frobenius_fixed_points(s, r):
    F = make_field(2, s)
    assert frobenius(F.one, r) == F.one
    assert frobenius(F.zero, r) == F.zero


def test_frobenius_f4():
    F = make_field(2, 2)
    g = F.gen
    assert frobenius(g, 2) == g + F.one
    assert frobenius(g, 4) == g  # x^q = x


@given(field_and_elems(2), st.integers(1, 3))
def test_frobenius_is_ring_map(data, t):
    F, a, b = data
    r = F.p**t
    assert frobenius(a + b, r) == frobenius(a, r) + frobenius(b, r)
    assert frobenius(a * b, r) == frobenius(a, r) * frobenius(b, r)
    assert frobenius(a, r) == a**r


def test_frobenius_requires_power_of_p():
    F = make_field(2, 2)
    with pytest.raises(ValueError):
        frobenius(F.gen, 3)
    with pytest.raises(ValueError):
        frobenius(F.gen, 6)


def test_frobenius_table_vectorised():
    F = make_field(2, 3)
    tab = F.frobenius_table(4)
    assert [int(tab[v]) for v in range(8)] == [(F(v) ** 4).value for v in range(8)]


# -- units ------------------------------------------------------------------------


@pytest.mark.parametrize("s,count", [(1, 1), (2, 3), (3, 7)])
def test_units_count(s, count):
    us = units(make_field(2, s))
    assert len(us) == count
    assert all(u for u in us)


def test_units_f2():
    assert [u.value for u in units(make_field(2, 1))] == [1]


def test_int_coercion_maps_to_prime_field():
    F = make_field(3, 1)
    assert F.one * 2 == F(2)
    assert 2 - F.one == F.one
    G = make_field(2, 2)
    assert G.gen * 3 == G.gen  # 3 = 1 in characteristic 2
