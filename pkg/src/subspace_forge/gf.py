"""Exact arithmetic in finite fields GF(p^m).

Field elements are plain integers ("codes") in [0, q).  The code of the
polynomial a_0 + a_1 x + ... + a_{m-1} x^{m-1} over GF(p) is the packed
base-p integer sum(a_i * p^i).  Keeping elements as ints makes them
hashable and cheap to store in the hot verifier loops; all structure
lives in the Field object, which carries the modulus, the primitive
element and (for small q) precomputed operation tables.

Field construction is deterministic: the modulus is the
lexicographically smallest monic irreducible polynomial of degree m
(coefficients compared low-degree-first) and gamma is the smallest code
of multiplicative order q-1.
"""

from __future__ import annotations

DEFAULT_SIZE_GUARD = 1 << 20

# Full q x q add/mul tables are built below this order; above it,
# operations fall back to on-the-fly polynomial arithmetic.
_TABLE_MAX_Q = 512


class SizeGuardError(RuntimeError):
    """A requested computation exceeds the configured size guard."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _poly_divides(div: tuple[int, ...], poly: tuple[int, ...], p: int) -> bool:
    """True iff the monic polynomial `div` divides `poly` over GF(p).

    Polynomials are coefficient tuples, low degree first, leading
    coefficient nonzero.
    """
    rem = list(poly)
    dd = len(div) - 1
    while len(rem) - 1 >= dd and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < dd:
            break
        shift = len(rem) - 1 - dd
        lead = rem[-1]  # div is monic, so the quotient coefficient is lead
        for i, c in enumerate(div):
            rem[shift + i] = (rem[shift + i] - lead * c) % p
    return not any(rem)


def _is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Trial division by all monic polynomials of degree <= deg/2."""
    deg = len(poly) - 1
    if deg == 1:
        return True
    if poly[0] == 0:  # divisible by x
        return False
    for d in range(1, deg // 2 + 1):
        # monic candidates of degree d: coefficients c_0..c_{d-1} free
        for packed in range(p**d):
            cand = []
            t = packed
            for _ in range(d):
                cand.append(t % p)
                t //= p
            cand.append(1)
            if _poly_divides(tuple(cand), poly, p):
                return False
    return True


def _smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m over GF(p).

    Coefficient tuples (a_0, ..., a_{m-1}, 1) are compared low-degree-first.
    """
    if m == 1:
        return (0, 1)  # the polynomial x
    digits = [0] * m
    while True:
        poly = tuple(digits) + (1,)
        if _is_irreducible(poly, p):
            return poly
        # lexicographic successor: last coefficient varies fastest
        for i in range(m - 1, -1, -1):
            digits[i] += 1
            if digits[i] < p:
                break
            digits[i] = 0
        else:
            raise AssertionError("no irreducible polynomial found")


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class Field:
    """The finite field GF(p^m) with a designated primitive element.

    Elements are integer codes in [0, q); code 0 is the additive and
    code 1 the multiplicative identity.  Instances are immutable after
    construction and safe to share across threads.
    """

    __slots__ = ("p", "m", "q", "modulus", "gamma", "_add", "_mul", "_neg", "_inv")

    def __init__(self, p: int, m: int, modulus: tuple[int, ...], gamma: int | None = None):
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        if m < 1:
            raise ValueError(f"extension degree must be >= 1, got {m}")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be a monic polynomial of degree m")
        if not _is_irreducible(modulus, p):
            raise ValueError("modulus is reducible over GF(p)")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = modulus
        self._add = self._mul = self._neg = self._inv = None
        if self.q <= _TABLE_MAX_Q:
            self._build_tables()
        if gamma is None:
            gamma = self._find_primitive()
        else:
            gamma = int(gamma)
            if self.element_order(gamma) != self.q - 1:
                raise ValueError(f"gamma={gamma} does not have order q-1")
        self.gamma = gamma

    # -- encoding ------------------------------------------------------

    def decode(self, a: int) -> tuple[int, ...]:
        """Base-p digits (a_0, ..., a_{m-1}) of the code a."""
        digits = []
        for _ in range(self.m):
            digits.append(a % self.p)
            a //= self.p
        return tuple(digits)

    def encode(self, digits) -> int:
        code = 0
        for d in reversed(tuple(digits)):
            code = code * self.p + d % self.p
        return code

    # -- raw polynomial arithmetic (used to seed tables / large q) -----

    def _add_raw(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        da, db = self.decode(a), self.decode(b)
        return self.encode((x + y) % self.p for x, y in zip(da, db))

    def _neg_raw(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        return self.encode(-x % self.p for x in self.decode(a))

    def _mul_raw(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        da, db = self.decode(a), self.decode(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        # reduce by the monic modulus
        for i in range(len(prod) - 1, self.m - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(self.m):
                    prod[i - self.m + j] = (prod[i - self.m + j] - c * self.modulus[j]) % self.p
        return self.encode(prod[: self.m])

    def _build_tables(self):
        q = self.q
        self._add = [[self._add_raw(a, b) for b in range(q)] for a in range(q)]
        self._mul = [[self._mul_raw(a, b) for b in range(q)] for a in range(q)]
        self._neg = [self._neg_raw(a) for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    inv[a] = b
                    break
        self._inv = inv

    # -- public operations ---------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return self._add[a][b]
        return self._add_raw(a, b)

    def neg(self, a: int) -> int:
        if self._neg is not None:
            return self._neg[a]
        return self._neg_raw(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul is not None:
            return self._mul[a][b]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self._inv is not None:
            return self._inv[a]
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        """a**e by square-and-multiply; negative e inverts first."""
        if e < 0:
            a = self.inv(a)
            e = -e
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def elements(self) -> range:
        """All q element codes in increasing order."""
        return range(self.q)

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        order = 1
        x = a
        while x != 1:
            x = self.mul(x, a)
            order += 1
        return order

    def _find_primitive(self) -> int:
        if self.q == 2:
            return 1
        factors = _prime_factors(self.q - 1)
        for cand in range(2, self.q):
            if all(self.pow(cand, (self.q - 1) // f) != 1 for f in factors):
                return cand
        raise AssertionError("no primitive element found")

    # -- table accessors for hot loops -----------------------------------

    @property
    def mul_table(self):
        """q x q multiplication table (list of row lists), built on demand."""
        if self._mul is None:
            self._mul = [[self._mul_raw(a, b) for b in range(self.q)] for a in range(self.q)]
        return self._mul

    @property
    def add_table(self):
        """q x q addition table (list of row lists), built on demand."""
        if self._add is None:
            self._add = [[self._add_raw(a, b) for b in range(self.q)] for a in range(self.q)]
        return self._add

    @property
    def sub_table(self):
        """q x q subtraction table, built on demand."""
        return [[self.sub(a, b) for b in range(self.q)] for a in range(self.q)]

    # -- identity / serialization ----------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.m == other.m
            and self.modulus == other.modulus
            and self.gamma == other.gamma
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus, self.gamma))

    def __repr__(self):
        if self.m == 1:
            return f"Field(GF({self.p}))"
        return f"Field(GF({self.p}^{self.m}), modulus={list(self.modulus)})"

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus), "gamma": self.gamma}

    @classmethod
    def from_json(cls, obj: dict) -> "Field":
        return cls(int(obj["p"]), int(obj["m"]), tuple(obj["modulus"]), int(obj["gamma"]))


def make_field(p: int, m: int = 1, size_guard: int | None = DEFAULT_SIZE_GUARD) -> Field:
    """Build GF(p^m) with the canonical modulus and primitive element.

    Deterministic: identical inputs yield identical Field values.  The
    guard rejects q = p^m above `size_guard` (default 2^20) to prevent
    accidental blowup; pass None to disable.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if m < 1:
        raise ValueError(f"extension degree must be >= 1, got {m}")
    if size_guard is not None and p**m > size_guard:
        raise SizeGuardError(f"q = {p}^{m} exceeds the size guard {size_guard}")
    return Field(p, m, _smallest_irreducible(p, m))


def field_from_order(q: int, size_guard: int | None = DEFAULT_SIZE_GUARD) -> Field:
    """Build GF(q) for a prime power q, factoring q as p^m."""
    if q < 2:
        raise ValueError(f"field order must be >= 2, got {q}")
    for p in range(2, q + 1):
        if q % p == 0:
            m = 0
            t = q
            while t % p == 0:
                t //= p
                m += 1
            if t != 1:
                raise ValueError(f"{q} is not a prime power")
            return make_field(p, m, size_guard)
    raise ValueError(f"{q} is not a prime power")
