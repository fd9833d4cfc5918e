import pytest

from lsl.field import GF, is_prime, least_irreducible


def test_modulus_choices():
    assert GF(2).modulus == (0, 1)  # x itself for prime fields
    assert GF(2, 2).modulus == (1, 1, 1)  # x^2 + x + 1
    assert GF(3).modulus == (0, 1)


def test_field_sizes():
    assert GF(2).q == 2
    assert GF(2, 2).q == 4
    assert GF(3).q == 3
    assert GF(5, 2).q == 25


def test_rejects_bad_parameters():
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(ValueError):
        GF(2, 0)
    with pytest.raises(ValueError):
        GF(2, 17)
    with pytest.raises(ValueError):
        GF(257, 3)  # order past 2**16


def test_is_prime():
    primes = [2, 3, 5, 7, 11, 13, 65521]
    for p in primes:
        assert is_prime(p)
    for n in [0, 1, 4, 9, 15, 65536]:
        assert not is_prime(n)


def test_least_irreducible_is_irreducible():
    # spot-check the scan never returns a factorable modulus
    for p, e in [(2, 3), (2, 4), (3, 2), (3, 3), (5, 2)]:
        m = least_irreducible(p, e)
        assert len(m) == e + 1 and m[-1] == 1
        # no roots in GF(p) for degree >= 2
        for a in range(p):
            val = 0
            for c in reversed(m):
                val = (val * a + c) % p
            assert val != 0 or e == 1


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (13, 1), (3, 2), (7, 1), (11, 1), (2, 4)])
def test_field_axioms_exhaustive(p, e):
    f = GF(p, e)
    if f.q > 16:
        pytest.skip("exhaustive check capped at q=16")
    els = list(f.elements())
    for a in els:
        assert f.add(a, 0) == a
        assert f.mul(a, 1) == a
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
            assert f.pow(a, f.q - 1) == 1
    for a in els:
        for b in els:
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
            for c in els:
                assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_gf4_multiplication_table():
    f = GF(2, 2)
    # encoding: 2 = x, 3 = x + 1; modulo x^2 + x + 1
    assert f.mul(2, 2) == 3
    assert f.mul(2, 3) == 1
    assert f.mul(3, 3) == 2


def test_extension_addition_is_componentwise():
    f = GF(3, 2)
    # 1 + x plus 2 + x = (1+2) + (1+1)x = 2x -> encoding 2*3 = 6
    a = 1 + 3  # 1 + x
    b = 2 + 3  # 2 + x
    assert f.add(a, b) == 6


def test_shared_instances():
    assert GF(2, 2) is GF(2, 2)
    assert GF(2) == GF(2, 1)
