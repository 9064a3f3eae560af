import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oscnet.gf import Field, FieldError, enumerate_elements, field_new, is_irreducible, smallest_irreducible

SMALL_ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]


@pytest.fixture(scope="module", params=SMALL_ORDERS, ids=lambda q: f"GF{q}")
def field(request):
    return Field.of_order(request.param)


def test_prime_field():
    f = field_new(2, 1)
    assert f.q == 2 and f.p == 2 and f.m == 1


def test_gf4_default_irreducible():
    assert field_new(2, 2).irreducible == (1, 1, 1)


def test_composite_characteristic_rejected():
    with pytest.raises(FieldError):
        field_new(4, 1)


def test_reducible_polynomial_rejected():
    # x^2 + 1 = (x + 1)^2 over GF(2)
    with pytest.raises(FieldError):
        Field(2, 2, [1, 0, 1])


def test_order_cap():
    with pytest.raises(FieldError):
        Field(2, 21)


def test_of_order_rejects_non_prime_power():
    with pytest.raises(FieldError):
        Field.of_order(6)


def _reducible_set(p, m):
    """Monic degree-m polynomials that factor, by multiplying all lower-degree monic pairs."""
    def monics(deg):
        for low in itertools.product(range(p), repeat=deg):
            yield list(low) + [1]

    out = set()
    for a_deg in range(1, m // 2 + 1):
        for a in monics(a_deg):
            for b in monics(m - a_deg):
                prod = [0] * (m + 1)
                for i, x in enumerate(a):
                    for j, y in enumerate(b):
                        prod[i + j] = (prod[i + j] + x * y) % p
                out.add(tuple(prod))
    return out


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_irreducibility_against_product_enumeration(p, m):
    reducible = _reducible_set(p, m)
    irreducible = []
    for low in itertools.product(range(p), repeat=m):
        poly = tuple(low) + (1,)
        assert is_irreducible(poly, p) == (poly not in reducible)
        if poly not in reducible:
            irreducible.append(poly)
    # smallest integer code sum(c_i p^i) over the lower coefficients
    best = min(irreducible, key=lambda c: sum(ci * p**i for i, ci in enumerate(c[:-1])))
    assert smallest_irreducible(p, m) == best


def test_gf8_default_is_x3_x_1():
    assert Field(2, 3).irreducible == (1, 1, 0, 1)


def test_gf9_default_is_x2_plus_1():
    assert Field(3, 2).irreducible == (1, 0, 1)


def test_char2_add():
    f = Field(2)
    assert f(1) + f(1) == f.zero


def test_gf4_x_times_x():
    f = Field(2, 2)
    x = f([0, 1])
    assert x * x == f([1, 1])


def test_gf5_inverse_of_2():
    f = Field(5)
    assert f(2).inverse() == f(3)


def test_inverse_of_zero_raises(field):
    with pytest.raises(ZeroDivisionError):
        field.zero.inverse()


def test_mixed_fields_rejected():
    a, b = Field(2, 2).one, Field(2).one
    with pytest.raises(FieldError):
        a + b
    with pytest.raises(FieldError):
        a * b


def test_enumeration_order():
    assert [e.value for e in enumerate_elements(Field(2))] == [0, 1]
    assert [e.value for e in enumerate_elements(Field(3))] == [0, 1, 2]
    f4 = Field(2, 2)
    assert [e.coeffs for e in enumerate_elements(f4)] == [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert [repr(e) for e in enumerate_elements(f4)] == ["0", "1", "x", "1 + x"]


def test_enumeration_distinct(field):
    els = field.elements()
    assert len(els) == field.q == len(set(els))
    assert els[0] == field.zero


def _schoolbook_mul(field, a, b):
    """Independent polynomial product reduced by the defining polynomial."""
    p, m, irr = field.p, field.m, field.irreducible
    ca, cb = field.coeffs(a), field.coeffs(b)
    prod = [0] * (2 * m - 1)
    for i in range(m):
        for j in range(m):
            prod[i + j] += ca[i] * cb[j]
    for t in range(2 * m - 2, m - 1, -1):
        c = prod[t] % p
        prod[t] = 0
        for s in range(m):
            prod[t - m + s] -= c * irr[s]
    return field.from_coeffs([c % p for c in prod[:m]])


def test_mul_matches_schoolbook(field):
    q = field.q
    codes = np.arange(q)
    table = field.mul(codes[:, None], codes[None, :])
    for a in range(q):
        for b in range(q):
            assert table[a, b] == _schoolbook_mul(field, a, b)


def test_add_matches_digitwise(field):
    q, p = field.q, field.p
    for a in range(q):
        for b in range(q):
            want = field.from_coeffs([(x + y) % p for x, y in zip(field.coeffs(a), field.coeffs(b))])
            assert field.add(a, b) == want


def test_field_axioms_exhaustive():
    for q in [2, 3, 4, 5, 8, 9]:
        f = Field.of_order(q)
        els = f.elements()
        for a in els:
            assert a + (-a) == f.zero
            if a:
                assert a * a.inverse() == f.one
        for a, b, c in itertools.product(els, repeat=3):
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
        for a, b in itertools.product(els, repeat=2):
            assert a + b == b + a and a * b == b * a


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16, 27, 32, 49, 64, 81, 121, 125, 128, 243, 256])
def test_fermat(q):
    f = Field.of_order(q)
    nonzero = np.arange(1, q)
    assert np.all(f.pow(nonzero, q - 1) == 1)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([4, 8, 9, 25, 27, 49, 1024, 3**7]), st.data())
def test_field_axioms_random(q, data):
    f = Field.of_order(q)
    a, b, c = (f(data.draw(st.integers(0, q - 1))) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - b + b == a
    if b:
        assert (a / b) * b == a


def test_pow_square_and_multiply():
    f = Field(3, 2)
    x = f([0, 1])
    acc = f.one
    for e in range(20):
        assert x**e == acc
        acc = acc * x


def test_text_form_roundtrip():
    f = Field(2, 2)
    assert str(f([1, 1])) == "11"
    assert str(f([0, 1])) == "01"
    for e in f.elements():
        assert f.from_text(str(e)) == e.value
    g = Field(37)
    assert g.from_text(g.to_text(36)) == 36
    with pytest.raises(FieldError):
        f.from_text("2")
    with pytest.raises(FieldError):
        f.from_text("111")


def test_elements_immutable():
    e = Field(3).one
    with pytest.raises(AttributeError):
        e.value = 2
