"""Arithmetic in finite fields F_{p^h}.

Elements are the integers ``0 .. q-1``.  The base-``p`` digits of an element,
constant term first, are the coefficients of its polynomial representative
modulo the field's defining polynomial.  This integer is also the element's
position in the canonical enumeration order, so ``range(q)`` enumerates the
field.

Vectorised operations accept numpy integer arrays; scalar operations accept
and return plain ints.  For ``q <= TABLE_LIMIT`` full addition and
multiplication tables are cached, larger fields fall back to exp/log tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

#: Largest field order accepted by :func:`field_create`.
FIELD_CAP = 1 << 20
#: Fields up to this order get dense q x q operation tables.
TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, h)`` with ``q == p**h``; raise ``ValueError`` otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(f for f in range(2, q + 1) if q % f == 0)
    h, r = 0, q
    while r % p == 0:
        r //= p
        h += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, h


# -- polynomials over Z_p: coefficient lists, constant term first -------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_powmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(a, m, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), m, p)
        base = _poly_mod(_poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p (constant term first)."""
    f = _trim([c % p for c in coeffs])
    h = len(f) - 1
    if h < 1 or f[-1] != 1:
        raise ValueError("expected a monic polynomial of degree >= 1")
    if h == 1:
        return True
    x = [0, 1]
    if _poly_sub(_poly_powmod(x, p**h, f, p), x, p):
        return False
    for r in _prime_factors(h):
        g = _poly_gcd(f, _poly_sub(_poly_powmod(x, p ** (h // r), f, p), x, p), p)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p: int, h: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree ``h`` over F_p.

    Candidates are ordered by the integer whose base-``p`` digits are the
    lower ``h`` coefficients (constant term least significant).
    """
    for low in range(p**h):
        coeffs = [(low // p**i) % p for i in range(h)] + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# -- the field ---------------------------------------------------------------

class GF:
    """The finite field F_{p^h} with an explicit defining polynomial.

    Instances are immutable and compare equal when ``p``, ``h`` and the
    modulus agree.  Construct through :func:`field_create`.
    """

    def __init__(self, p: int, h: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if h < 1:
            raise ValueError(f"extension degree must be >= 1, got {h}")
        if p**h > FIELD_CAP:
            raise ValueError(f"field order {p}^{h} exceeds the cap {FIELD_CAP}")
        if modulus is None:
            modulus = smallest_irreducible(p, h)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != h + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree h")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.h = h
        self.q = p**h
        self.modulus = modulus
        self._key = (p, h, modulus)
        if self.q <= TABLE_LIMIT:
            self._build_tables()

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.h})" if self.h > 1 else f"GF({self.p})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, int(value))

    def __iter__(self) -> Iterator["FieldElement"]:
        return (FieldElement(self, v) for v in range(self.q))

    # -- representation -----------------------------------------------------

    def digits(self, a) -> np.ndarray:
        """Coefficient vectors of ``a`` (last axis, constant term first)."""
        a = np.asarray(a, dtype=np.int64)
        out = np.empty(a.shape + (self.h,), dtype=np.int64)
        r = a.copy()
        for i in range(self.h):
            out[..., i] = r % self.p
            r //= self.p
        return out

    def from_digits(self, d) -> np.ndarray:
        d = np.asarray(d, dtype=np.int64) % self.p
        weights = self.p ** np.arange(self.h, dtype=np.int64)
        return (d * weights).sum(axis=-1)

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.digits(int(a)))

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.h:
            raise ValueError("too many coefficients")
        return int(sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs)))

    # -- scalar polynomial arithmetic (table-free reference path) ------------

    def _poly_mul_elem(self, a: int, b: int) -> int:
        if self.h == 1:
            return a * b % self.p
        if self.p == 2:
            mod = self.from_coeffs(self.modulus[:-1]) | (1 << self.h)
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> self.h:
                    a ^= mod
            return r
        prod = _poly_mod(
            _poly_mul(list(self.coeffs(a)), list(self.coeffs(b)), self.p),
            list(self.modulus),
            self.p,
        )
        return self.from_coeffs(prod)

    @cached_property
    def _exp_log(self) -> tuple[np.ndarray, np.ndarray]:
        order = self.q - 1
        factors = _prime_factors(order)
        for g in range(1, self.q):
            if all(self._poly_pow_elem(g, order // r) != 1 for r in factors):
                break
        exp = np.empty(2 * order, dtype=np.int64)
        log = np.zeros(self.q, dtype=np.int64)
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._poly_mul_elem(x, g)
        exp[order:] = exp[:order]
        return exp, log

    def _poly_pow_elem(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._poly_mul_elem(result, base)
            base = self._poly_mul_elem(base, base)
            e >>= 1
        return result

    def _build_tables(self) -> None:
        q = self.q
        d = self.digits(np.arange(q))
        add = self.from_digits(d[:, None, :] + d[None, :, :])
        neg = self.from_digits(-d)
        if q == 2:
            mul = np.array([[0, 0], [0, 1]], dtype=np.int64)
        else:
            exp, log = self._exp_log
            la = log[:, None] + log[None, :]
            mul = exp[la]
            mul[0, :] = 0
            mul[:, 0] = 0
        inv = np.zeros(q, dtype=np.int64)
        rows, cols = np.nonzero(mul == 1)
        inv[rows] = cols
        sub = add[:, neg]
        for t in (add, sub, mul, neg, inv):
            t.setflags(write=False)
        self.add_table, self.sub_table, self.mul_table = add, sub, mul
        self.neg_table, self.inv_table = neg, inv
        # nested lists are markedly faster than numpy for scalar lookups
        self._addl = add.tolist()
        self._subl = sub.tolist()
        self._mull = mul.tolist()
        self._negl = neg.tolist()
        self._invl = inv.tolist()

    @property
    def has_tables(self) -> bool:
        return self.q <= TABLE_LIMIT

    # -- element-wise operations (ints or arrays) ----------------------------

    def add(self, a, b):
        if self.has_tables:
            if type(a) is int and type(b) is int:
                return self._addl[a][b]
            return self.add_table[a, b]
        if self.h == 1:
            return _ret(a, b, (np.asarray(a) + np.asarray(b)) % self.p)
        return _ret(a, b, self.from_digits(self.digits(a) + self.digits(b)))

    def neg(self, a):
        if self.has_tables:
            return self._negl[a] if type(a) is int else self.neg_table[a]
        if self.h == 1:
            return _ret(a, a, (-np.asarray(a)) % self.p)
        return _ret(a, a, self.from_digits(-self.digits(a)))

    def sub(self, a, b):
        if self.has_tables:
            if type(a) is int and type(b) is int:
                return self._subl[a][b]
            return self.sub_table[a, b]
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.has_tables:
            if type(a) is int and type(b) is int:
                return self._mull[a][b]
            return self.mul_table[a, b]
        if self.h == 1:
            return _ret(a, b, (np.asarray(a, dtype=np.int64) * np.asarray(b)) % self.p)
        exp, log = self._exp_log
        a_, b_ = np.asarray(a), np.asarray(b)
        out = np.where((a_ == 0) | (b_ == 0), 0, exp[log[a_] + log[b_]])
        return _ret(a, b, out)

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.has_tables:
            return self._invl[a] if type(a) is int else self.inv_table[a]
        exp, log = self._exp_log
        return _ret(a, a, exp[(self.q - 1 - log[np.asarray(a)]) % (self.q - 1)])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        a = int(a)
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return int(result)

    # -- automorphisms ------------------------------------------------------

    def frobenius_table(self, j: int) -> np.ndarray:
        """Permutation ``a -> a**(p**j)`` of all field elements."""
        return self._frob_tables(j % self.h)

    def _frob_tables(self, j: int) -> np.ndarray:
        cache = self.__dict__.setdefault("_frob_cache", {})
        if j not in cache:
            e = self.p**j
            table = np.array([self.pow(a, e) for a in range(self.q)], dtype=np.int64)
            table.setflags(write=False)
            cache[j] = table
        return cache[j]

    def frobenius(self, a, j: int):
        """``a**(p**j)``; accepts ints or arrays."""
        table = self.frobenius_table(j)
        if type(a) is int or isinstance(a, np.integer):
            return int(table[int(a)])
        return table[np.asarray(a)]

    def conj(self, a):
        """The involutory automorphism ``a -> a**sqrt(q)`` (needs even ``h``)."""
        if self.h % 2:
            raise ValueError(f"{self!r} has no subfield of index 2")
        return self.frobenius(a, self.h // 2)

    @property
    def sub_order(self) -> int:
        """Order of the index-2 subfield."""
        if self.h % 2:
            raise ValueError(f"{self!r} has no subfield of index 2")
        return self.p ** (self.h // 2)

    def relative_norm(self, a: int) -> int:
        """Norm to the index-2 subfield: ``a**(sqrt(q) + 1)``."""
        return self.pow(int(a), self.sub_order + 1)


def _ret(a, b, out):
    if type(a) is int and type(b) is int:
        return int(out)
    return out


def field_create(p: int, h: int = 1) -> GF:
    """Field F_{p^h} defined by the smallest irreducible monic polynomial."""
    return _field_cache(p, h)


_FIELDS: dict[tuple[int, int], GF] = {}


def _field_cache(p: int, h: int) -> GF:
    key = (p, h)
    if key not in _FIELDS:
        _FIELDS[key] = GF(p, h)
    return _FIELDS[key]


def field_of_order(q: int) -> GF:
    return field_create(*prime_power(q))


@dataclass(frozen=True)
class FieldElement:
    """A single element of a :class:`GF`, with operator overloading."""

    field: GF
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"{self.value} is not an element of {self.field!r}")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("operands belong to different fields")
            return other.value
        if isinstance(other, int):
            return other % self.field.p  # integers embed via the prime field
        return NotImplemented

    def _wrap(self, v) -> "FieldElement":
        return FieldElement(self.field, int(v))

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.value, o))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.field!r}({self.value})"

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def frobenius(self, j: int) -> "FieldElement":
        return self._wrap(self.field.frobenius(self.value, j))

    def norm(self) -> "FieldElement":
        return self._wrap(self.field.relative_norm(self.value))


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Apply ``op`` in {"add", "sub", "mul", "div"} to two elements."""
    if a.field != b.field:
        raise ValueError("operands belong to different fields")
    try:
        fn = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return fn(b)


def frobenius(a: FieldElement, j: int) -> FieldElement:
    return a.frobenius(j)


def relative_norm(a: FieldElement) -> FieldElement:
    return a.norm()
