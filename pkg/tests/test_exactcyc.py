import cmath
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ppcount.exactcyc import CycInt, MixedOrder, NotRational, cyc_as_integer, cyc_to_complex

PRIMES = [2, 3, 5, 7, 11, 13]
z = CycInt.from_root


def test_root_sum():
    assert z(3, 1) + z(3, 2) == -1


def test_root_product():
    assert z(5, 1) * z(5, 4) == 1


def test_hand_expansion():
    # (1 + z)(1 + z^6) = 2 + z + z^6, with z^6 = -(1 + z + ... + z^5)
    lhs = (1 + z(7, 1)) * (1 + z(7, 6))
    assert lhs == CycInt(7, [2, 1, 0, 0, 0, 0, 1])
    assert lhs.coeffs == (1, 0, -1, -1, -1, -1)


def test_p2_is_integers():
    assert z(2, 1) == -1
    assert z(2, 1).coeffs == (-1,)
    assert (z(2, 1) * z(2, 1)) == 1


def test_non_prime_order():
    with pytest.raises(ValueError):
        z(4, 1)


def test_to_complex():
    assert abs(cyc_to_complex(z(3, 1) + z(3, 2)) - (-1)) < 1e-12


def test_as_integer():
    assert cyc_as_integer(CycInt(5)) == 0
    assert (z(3, 1) + z(3, 2)).as_integer() == -1
    with pytest.raises(NotRational):
        z(5, 1).as_integer()


def test_mixed_order():
    with pytest.raises(MixedOrder):
        z(3, 1) + z(5, 1)


def test_conj_and_abs2():
    s = 1 + z(5, 1) + z(5, 4)
    assert s.conj() == s
    w = z(7, 2)
    assert w.conj() == z(7, 5)
    assert w.abs2() == 1


def _rand(p, rng, size=20):
    return CycInt(p, [rng.randint(-size, size) for _ in range(p - 1)])


@pytest.mark.parametrize("p", PRIMES)
def test_ring_axioms_random(p):
    rng = random.Random(p)
    one = CycInt.from_int(p, 1)
    for _ in range(10_000 if p <= 7 else 3_000):
        a, b, c = _rand(p, rng), _rand(p, rng), _rand(p, rng)
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * one == a
        assert a - a == 0


@pytest.mark.parametrize("p", PRIMES)
def test_complex_homomorphism(p):
    rng = random.Random(100 + p)
    for _ in range(2_000):
        a, b = _rand(p, rng), _rand(p, rng)
        assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-9 * max(1, abs(complex(a * b)))
        assert abs(complex(a + b) - complex(a) - complex(b)) < 1e-9


@pytest.mark.parametrize("p", PRIMES)
def test_root_powers(p):
    for k in range(2 * p):
        assert abs(complex(z(p, k)) - cmath.exp(2j * math.pi * k / p)) < 1e-12
        assert z(p, k) ** p == 1


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=4, max_size=4),
       st.lists(st.integers(-50, 50), min_size=4, max_size=4))
def test_p5_matches_full_polynomial_product(a, b):
    # independent route: multiply in Z[x]/(x^5 - 1) and evaluate numerically
    x, y = CycInt(5, a), CycInt(5, b)
    full = [0] * 5
    for i in range(4):
        for j in range(4):
            full[(i + j) % 5] += a[i] * b[j]
    w = cmath.exp(2j * math.pi / 5)
    assert abs(complex(x * y) - sum(c * w**k for k, c in enumerate(full))) < 1e-7


@given(st.integers(-10**30, 10**30), st.integers(-10**30, 10**30))
def test_big_integers_exact(m, n):
    assert (CycInt.from_int(13, m) * n).as_integer() == m * n


def test_galois_invariance_of_norm():
    a = 1 + 2 * z(7, 1) - z(7, 3)
    norm = a
    for j in range(2, 7):
        norm = norm * a.galois(j)
    assert norm.is_rational()
