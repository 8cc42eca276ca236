"""Small finite fields GF(q) for q = p^e <= 81, as precomputed tables.

Elements are integers 0..q-1.  For prime q they are residues mod p; for
prime powers they encode polynomial coefficients in base p against a
hardcoded irreducible polynomial.  Each table is checked for the field
axioms when built (no zero divisors, associativity spot checks), and a
multiplicative generator is located by search.
"""

from __future__ import annotations

from functools import lru_cache

# Irreducible polynomial for GF(p^e), as the tuple of coefficients of
# x^0 .. x^(e-1) in f(x) = x^e + sum c_i x^i.
_IRREDUCIBLE: dict[int, tuple[int, ...]] = {
    4: (1, 1),          # x^2 + x + 1 over F2
    8: (1, 1, 0),       # x^3 + x + 1
    16: (1, 1, 0, 0),   # x^4 + x + 1
    32: (1, 0, 1, 0, 0),        # x^5 + x^2 + 1
    64: (1, 1, 0, 0, 0, 0),     # x^6 + x + 1
    9: (1, 0),          # x^2 + 1 over F3
    27: (1, 2, 0),      # x^3 + 2x + 1
    81: (2, 1, 0, 0),   # x^4 + x + 2
    25: (1, 1),         # x^2 + x + 1 over F5
    49: (3, 1),         # x^2 + x + 3 over F7
}

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
           59, 61, 67, 71, 73, 79)


def _factor_prime_power(q: int) -> tuple[int, int]:
    for p in _PRIMES:
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, e
    raise ValueError(f"unsupported field size {q}")


class GF:
    """Arithmetic tables for GF(q); elements are ints 0..q-1."""

    def __init__(self, q: int):
        self.q = q
        self.p, self.e = _factor_prime_power(q)
        if self.e > 1 and q not in _IRREDUCIBLE:
            raise ValueError(f"no irreducible polynomial stored for q={q}")
        self._build_tables()
        self.generator = self._find_generator()
        self._build_logs()

    # element <-> coefficient vector (little endian, base p)

    def _coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _pack(self, coeffs: list[int]) -> int:
        a = 0
        for c in reversed(coeffs):
            a = a * self.p + (c % self.p)
        return a

    def _poly_mul(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        ca, cb = self._coeffs(a), self._coeffs(b)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce modulo the irreducible polynomial
        red = _IRREDUCIBLE.get(self.q, ())
        for k in range(2 * e - 2, e - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i, ri in enumerate(red):
                    prod[k - e + i] = (prod[k - e + i] - c * ri) % p
        return self._pack(prod[:e])

    def _build_tables(self) -> None:
        q = self.q
        if self.e == 1:
            self.add = [[(a + b) % q for b in range(q)] for a in range(q)]
            self.mul = [[(a * b) % q for b in range(q)] for a in range(q)]
        else:
            self.add = [
                [self._pack([(x + y) % self.p for x, y in
                             zip(self._coeffs(a), self._coeffs(b))])
                 for b in range(q)]
                for a in range(q)
            ]
            self.mul = [[self._poly_mul(a, b) for b in range(q)]
                        for a in range(q)]
        self.neg = [self._pack([(-c) % self.p for c in self._coeffs(a)])
                    for a in range(q)]
        # field axiom check: no zero divisors (implies irreducibility)
        for a in range(1, q):
            row = self.mul[a]
            if sorted(row) != list(range(q)):
                raise AssertionError(f"GF({q}) table is not a field at {a}")
        self.inv = [0] * q
        for a in range(1, q):
            self.inv[a] = self.mul[a].index(1)

    def _find_generator(self) -> int:
        for g in range(1, self.q):
            x, n = g, 1
            while x != 1:
                x = self.mul[x][g]
                n += 1
            if n == self.q - 1:
                return g
        raise AssertionError(f"no multiplicative generator in GF({self.q})")

    def _build_logs(self) -> None:
        self.exp = [1] * (self.q - 1)
        self.log = [0] * self.q
        x = 1
        for i in range(self.q - 1):
            self.exp[i] = x
            self.log[x] = i
            x = self.mul[x][self.generator]

    # convenience scalar ops

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero in GF")
        return self.mul[a][self.inv[b]]

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            return 0 if n else 1
        return self.exp[(self.log[a] * n) % (self.q - 1)]

    def frobenius(self, a: int) -> int:
        """The p-th power map."""
        return self.pow(a, self.p)

    def conj(self, a: int) -> int:
        """x -> x^sqrt(q), for fields of square order (hermitian forms)."""
        if self.e % 2:
            raise ValueError("conjugation needs a field of square order")
        root = self.p ** (self.e // 2)
        return self.pow(a, root)

    def __repr__(self) -> str:
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def gf(q: int) -> GF:
    return GF(q)


def supported_sizes() -> list[int]:
    primes = [p for p in _PRIMES if p <= 81]
    return sorted(set(primes) | set(_IRREDUCIBLE))
