"""Exact arithmetic in small finite fields GF(p^e).

An element is encoded as an integer in [0, p^e): the base-p digits of the
encoding, least significant digit first, are the coefficients of its residue
polynomial modulo a fixed monic irreducible polynomial of degree e.  The
modulus is the first irreducible in the deterministic scan order given by
that same digit encoding, so a (p, e) pair always yields the same field.

Multiplication in proper extensions goes through log/antilog tables over a
primitive element, which keeps q = p^e capped at 2**16.
"""

from __future__ import annotations

from functools import lru_cache


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# Polynomials over GF(p) are tuples of ints, lowest degree first, with no
# trailing zeros; the zero polynomial is the empty tuple.


def _trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_mod(a: tuple[int, ...], m: tuple[int, ...], p: int) -> tuple[int, ...]:
    # m must be monic
    r = list(a)
    dm = len(m) - 1
    while len(r) - 1 >= dm and r:
        lead = r[-1]
        if lead:
            shift = len(r) - 1 - dm
            for i, mi in enumerate(m):
                r[shift + i] = (r[shift + i] - lead * mi) % p
        r.pop()
    return _trim(r)


def _monic_of_index(idx: int, p: int, degree: int) -> tuple[int, ...]:
    """The monic degree-d polynomial whose lower coefficients encode idx."""
    coeffs = []
    n = idx
    for _ in range(degree):
        coeffs.append(n % p)
        n //= p
    coeffs.append(1)
    return tuple(coeffs)


def _is_irreducible(m: tuple[int, ...], p: int) -> bool:
    degree = len(m) - 1
    if degree == 1:
        return True
    if m[0] == 0:
        return False
    for d in range(1, degree // 2 + 1):
        for idx in range(p**d):
            g = _monic_of_index(idx, p, d)
            if not _poly_mod(m, g, p):
                return False
    return True


def least_irreducible(p: int, e: int) -> tuple[int, ...]:
    for idx in range(p**e):
        m = _monic_of_index(idx, p, e)
        if _is_irreducible(m, p):
            return m
    raise AssertionError(f"no irreducible of degree {e} over GF({p})")


class Field:
    """GF(p^e) with integer-encoded elements.

    Use the :func:`GF` factory so equal parameters share one instance.
    """

    __slots__ = ("p", "e", "q", "modulus", "_exp", "_log")

    def __init__(self, p: int, e: int = 1):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if not 1 <= e <= 16:
            raise ValueError(f"extension degree e={e} outside [1, 16]")
        q = p**e
        if q > 1 << 16:
            raise ValueError(f"field order {q} exceeds 2**16")
        self.p = p
        self.e = e
        self.q = q
        self.modulus = least_irreducible(p, e)
        if e > 1:
            self._build_tables()
        else:
            self._exp = None
            self._log = None

    # ------------------------------------------------------------------

    def _encode(self, coeffs: tuple[int, ...]) -> int:
        n = 0
        for c in reversed(coeffs):
            n = n * self.p + c
        return n

    def _decode(self, n: int) -> tuple[int, ...]:
        coeffs = []
        while n:
            coeffs.append(n % self.p)
            n //= self.p
        return tuple(coeffs)

    def _mul_raw(self, a: int, b: int) -> int:
        prod = _poly_mul(self._decode(a), self._decode(b), self.p)
        return self._encode(_poly_mod(prod, self.modulus, self.p))

    def _build_tables(self) -> None:
        q = self.q
        for g in range(2, q):
            exp = [0] * (q - 1)
            log = [-1] * q
            val = 1
            ok = True
            for i in range(q - 1):
                if log[val] != -1:
                    ok = False
                    break
                exp[i] = val
                log[val] = i
                val = self._mul_raw(val, g)
            if ok and val == 1:
                self._exp = exp
                self._log = log
                return
        raise AssertionError("no primitive element found")

    # ------------------------------------------------------------------

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        mult = 1
        while a or b:
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.e == 1:
            return (-a) % self.p
        p = self.p
        out = 0
        mult = 1
        while a:
            out += ((-a) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a = self.inv(a)
            n = -n
        out = 1
        while n:
            if n & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            n >>= 1
        return out

    # ------------------------------------------------------------------

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self) -> int:
        return hash((self.p, self.e))


@lru_cache(maxsize=None)
def GF(p: int, e: int = 1) -> Field:
    """The canonical GF(p^e) instance for these parameters."""
    return Field(p, e)
