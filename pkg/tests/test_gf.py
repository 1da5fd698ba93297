import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem

from embcodes.gf import FIELD_CAP, GF, arith, field_create, field_of_order, frobenius, is_irreducible, relative_norm

SMALL = [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3), (5, 1), (2, 4), (7, 1), (5, 2), (2, 6)]


def sympy_mul(F: GF, a: int, b: int) -> int:
    # sympy polynomials are highest degree first
    pa = list(reversed(F.coeffs(a)))
    pb = list(reversed(F.coeffs(b)))
    mod = list(reversed(F.modulus))
    r = gf_rem(gf_mul(pa, pb, F.p, ZZ), mod, F.p, ZZ)
    coeffs = [int(c) % F.p for c in reversed(r)]
    return F.from_coeffs(coeffs)


def test_field_create_examples():
    assert field_create(2, 1).modulus == (0, 1)
    assert field_create(2, 2).modulus == (1, 1, 1)  # x^2 + x + 1
    assert field_create(3, 1).q == 3
    assert field_create(3, 2).modulus == (1, 0, 1)  # x^2 + 1


def test_field_create_errors():
    with pytest.raises(ValueError):
        field_create(4, 1)
    with pytest.raises(ValueError):
        field_create(2, 0)
    with pytest.raises(ValueError):
        GF(2, 21)  # beyond the cap
    assert FIELD_CAP >= 2**20
    assert field_create(2, 20).q == 2**20


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        GF(2, 2, modulus=(1, 0, 1))  # (x+1)^2


@pytest.mark.parametrize("p,h", [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (2, 8)])
def test_modulus_is_smallest_irreducible(p, h):
    F = field_create(p, h)
    assert gf_irreducible_p(list(reversed(F.modulus)), p, ZZ)
    # every monic candidate with a smaller index is reducible
    for low in itertools.product(range(p), repeat=h):
        cand = tuple(low) + (1,)
        if sum(c * p**i for i, c in enumerate(low)) >= sum(c * p**i for i, c in enumerate(F.modulus[:-1])):
            continue
        assert not gf_irreducible_p(list(reversed(cand)), p, ZZ)


@pytest.mark.parametrize("p,h", [(2, 5), (3, 4), (7, 2), (2, 9)])
def test_irreducibility_against_sympy(p, h):
    for low in itertools.product(range(p), repeat=h):
        cand = tuple(low) + (1,)
        assert is_irreducible(cand, p) == gf_irreducible_p(list(reversed(cand)), p, ZZ)


def test_arith_examples():
    F4 = field_create(2, 2)
    x, x1 = F4(2), F4(3)  # x and x+1
    assert arith(x, x1, "mul") == F4(1)
    F3 = field_create(3, 1)
    assert arith(F3(2), F3(2), "add") == F3(1)
    F2 = field_create(2, 1)
    assert arith(F2(1), F2(1), "div") == F2(1)


def test_arith_errors():
    F4, F2 = field_create(2, 2), field_create(2, 1)
    with pytest.raises(ZeroDivisionError):
        arith(F4(1), F4(0), "div")
    with pytest.raises(ValueError):
        arith(F4(1), F2(1), "add")
    with pytest.raises(ValueError):
        arith(F4(1), F4(1), "pow")


@pytest.mark.parametrize("p,h", SMALL)
def test_tables_match_sympy(p, h):
    F = field_create(p, h)
    rng = np.random.default_rng(p * 100 + h)
    pairs = rng.integers(0, F.q, size=(200, 2))
    for a, b in pairs.tolist():
        assert F.mul(a, b) == sympy_mul(F, a, b)
        assert F.add(a, b) == F.from_coeffs([(x + y) % p for x, y in zip(F.coeffs(a), F.coeffs(b))])


def test_large_field_without_tables():
    F = field_create(2, 20)
    assert not F.has_tables
    rng = np.random.default_rng(7)
    for a, b in rng.integers(1, F.q, size=(20, 2)).tolist():
        assert F.mul(a, b) == sympy_mul(F, a, b)
        assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("p,h", [(2, 2), (3, 2), (2, 4), (5, 2), (2, 8), (3, 5)])
def test_multiplicative_group(p, h):
    F = field_create(p, h)
    for a in range(1, F.q):
        assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, F.q - 1) == 1


def test_frobenius_examples():
    F4 = field_create(2, 2)
    x = F4(2)
    assert frobenius(x, 1) == F4(3)
    assert frobenius(frobenius(x, 1), 1) == x
    for a in F4:
        assert frobenius(a, 0) == a


@pytest.mark.parametrize("p,h", [(2, 2), (2, 3), (3, 2), (2, 4), (2, 6), (3, 3)])
def test_frobenius_is_automorphism(p, h):
    F = field_create(p, h)
    for j in range(h + 1):
        t = F.frobenius_table(j)
        assert sorted(t.tolist()) == list(range(F.q))
        a, b = np.meshgrid(np.arange(F.q), np.arange(F.q))
        assert np.array_equal(t[F.add(a, b)], F.add(t[a], t[b]))
        assert np.array_equal(t[F.mul(a, b)], F.mul(t[a], t[b]))
    assert np.array_equal(F.frobenius_table(h), np.arange(F.q))


def test_relative_norm_examples():
    F4 = field_create(2, 2)
    assert relative_norm(F4(2)) == F4(1)
    assert relative_norm(F4(0)) == F4(0)
    assert relative_norm(F4(1)) == F4(1)
    with pytest.raises(ValueError):
        relative_norm(field_create(2, 3)(1))


@pytest.mark.parametrize("q2", [4, 9, 16, 25, 64, 81, 256])
def test_relative_norm_properties(q2):
    F = field_of_order(q2)
    norms = [F.relative_norm(a) for a in range(F.q)]
    # lands in the fixed field of conjugation
    assert all(F.conj(v) == v for v in norms)
    sub = {a for a in range(F.q) if F.conj(a) == a}
    assert len(sub) == F.sub_order
    assert set(norms[1:]) == sub - {0}
    rng = np.random.default_rng(q2)
    for a, b in rng.integers(0, F.q, size=(100, 2)).tolist():
        assert norms[F.mul(a, b)] == F.mul(norms[a], norms[b])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_field_axioms(ph, data):
    F = field_create(*ph)
    el = st.integers(0, F.q - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.sub(F.add(a, b), b) == a
    assert F.add(a, F.neg(a)) == 0
    if b:
        assert F.mul(F.div(a, b), b) == a


def test_field_element_operators():
    F9 = field_create(3, 2)
    a, b = F9(4), F9(7)
    assert (a + b) - b == a
    assert (a * b) / b == a
    assert a * a.inverse() == F9(1)
    assert a**8 == F9(1)
    assert -a + a == F9(0)
    assert a.coeffs == (1, 1)
    with pytest.raises(ValueError):
        F9(9)


def test_vectorised_ops_match_scalar():
    F = field_create(2, 3)
    a = np.arange(F.q)
    for b in range(F.q):
        assert F.mul(a, b).tolist() == [F.mul(int(x), b) for x in a]
