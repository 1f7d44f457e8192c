"""Exact arithmetic in finite fields F_{p^s}.

Elements are encoded by an integer index in [0, q): the base-p digits of the
index are the coordinates in the power basis of the modulus, lowest power
first.  In F_4 with modulus x^2 + x + 1 the elements are 0, 1, 2 (= g) and
3 (= g + 1).

Every field precomputes its addition and multiplication tables, so bulk
arithmetic on numpy index arrays is a table lookup.  Polynomials and series
in :mod:`hqcf.polyser` rely on the vector helpers defined here.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

__all__ = [
    "FieldError",
    "FieldDesc",
    "FieldElem",
    "DEFAULT_MODULI",
    "make_field",
    "elem_arith",
    "frobenius",
    "units",
    "is_power_of",
]

MAX_ORDER = 1024


class FieldError(ValueError):
    """Invalid field description or mixed-field operation."""


# Monic irreducible moduli over F_p, coefficients lowest degree first.
DEFAULT_MODULI = {
    (2, 1): (0, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 1): (0, 1),
    (5, 1): (0, 1),
    (7, 1): (0, 1),
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def is_power_of(r: int, p: int) -> bool:
    """True when r = p^t for some t >= 0."""
    if r < 1:
        return False
    while r % p == 0:
        r //= p
    return r == 1


def _poly_mod_p(a: list[int], m: list[int], p: int) -> list[int]:
    # remainder of a by the monic m over F_p, both lowest degree first
    a = list(a)
    dm = len(m) - 1
    for k in range(len(a) - 1, dm - 1, -1):
        c = a[k] % p
        if c:
            for i in range(dm + 1):
                a[k - dm + i] = (a[k - dm + i] - c * m[i]) % p
    r = [x % p for x in a[:dm]]
    return r


def _is_irreducible(m: tuple[int, ...], p: int) -> bool:
    s = len(m) - 1
    if s == 1:
        return True
    for d in range(1, s // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not any(_poly_mod_p(list(m), divisor, p)):
                return False
    return True


class FieldDesc:
    """The finite field F_q, q = p^s, with precomputed tables.

    Instances are cached by :func:`make_field`; two descriptions are equal
    when p, s and the modulus agree.
    """

    def __init__(self, p: int, s: int, modulus: tuple[int, ...]):
        self.p = p
        self.s = s
        self.modulus = tuple(modulus)
        self.q = p**s
        self._build_tables()

    def _build_tables(self) -> None:
        p, s, q = self.p, self.s, self.q
        idx = np.arange(q)
        weights = p ** np.arange(s)
        self._weights = weights
        # digits[x, k] = coordinate of g^k in element x
        self._digits = (idx[:, None] // weights[None, :]) % p

        # times_g[x] = g * x, reduced by the monic modulus
        if s == 1:
            times_g_digits = None
        else:
            d = self._digits
            top = d[:, s - 1]
            shifted = np.zeros_like(d)
            shifted[:, 1:] = d[:, : s - 1]
            m = np.array(self.modulus[:s])
            times_g_digits = (shifted - top[:, None] * m[None, :]) % p

        # basis_prod[k][x] = digits of g^k * x
        basis_prod = [self._digits]
        for _ in range(1, s):
            prev = basis_prod[-1] @ weights
            basis_prod.append(times_g_digits[prev])
        prod_digits = np.zeros((q, q, s), dtype=np.int64)
        for k in range(s):
            # y_k * (g^k x)
            prod_digits += self._digits[None, :, k, None] * basis_prod[k][:, None, :]
        self._mul = ((prod_digits % p) @ weights).astype(np.int64)

        if p == 2:
            self._add = idx[:, None] ^ idx[None, :]
            self._neg = idx.copy()
        else:
            sum_digits = (self._digits[:, None, :] + self._digits[None, :, :]) % p
            self._add = (sum_digits @ weights).astype(np.int64)
            self._neg = (((-self._digits) % p) @ weights).astype(np.int64)

        inv = np.zeros(q, dtype=np.int64)
        rows, cols = np.nonzero(self._mul == 1)
        inv[rows] = cols
        self._inv = inv

    # -- identity ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, FieldDesc):
            return NotImplemented
        return (self.p, self.s, self.modulus) == (other.p, other.s, other.modulus)

    def __hash__(self):
        return hash((self.p, self.s, self.modulus))

    def __repr__(self):
        return f"FieldDesc(p={self.p}, s={self.s}, modulus={self.modulus})"

    # -- scalar operations on indices -------------------------------------
    def add(self, a: int, b: int) -> int:
        return int(self._add[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self._add[a, self._neg[b]])

    def neg(self, a: int) -> int:
        return int(self._neg[a])

    def mul(self, a: int, b: int) -> int:
        return int(self._mul[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return int(self._inv[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    # -- vector operations on index arrays -------------------------------
    def vadd(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self._add[a, b]

    def vsub(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self._add[a, self._neg[b]]

    def vneg(self, a):
        if self.p == 2:
            return np.asarray(a)
        return self._neg[a]

    def vmul(self, a, b):
        return self._mul[a, b]

    def vinv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._inv[a]

    def vsum(self, a, axis=0):
        """Field sum of an index array along ``axis``."""
        a = np.asarray(a)
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        digits = self._digits[a].sum(axis=axis) % self.p
        return digits @ self._weights

    def vpow_frobenius(self, a, r: int):
        """Elementwise a^r for r a power of p (a field automorphism)."""
        out = np.asarray(a)
        table = self.frobenius_table(r)
        return table[out]

    @functools.lru_cache(maxsize=None)
    def frobenius_table(self, r: int) -> np.ndarray:
        if not is_power_of(r, self.p):
            raise FieldError(f"{r} is not a power of p = {self.p}")
        table = np.arange(self.q)
        e = r
        if self.p == 2:
            while e > 1:
                table = self._mul[table, table]
                e //= 2
            return table
        # generic p: x -> x^p is applied t times
        while e > 1:
            acc = np.ones(self.q, dtype=np.int64)
            for _ in range(self.p):
                acc = self._mul[acc, table]
            table = acc
            e //= self.p
        return table

    # -- convenience ------------------------------------------------------
    def __call__(self, n: int) -> "FieldElem":
        return FieldElem(self, n)

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    @property
    def gen(self) -> "FieldElem":
        """The class of x modulo the modulus (index p); equals 0 when s = 1."""
        if self.s == 1:
            return FieldElem(self, 0)
        return FieldElem(self, self.p)

    def elements(self) -> list["FieldElem"]:
        return [FieldElem(self, i) for i in range(self.q)]


@functools.lru_cache(maxsize=None)
def _cached_field(p: int, s: int, modulus: tuple[int, ...]) -> FieldDesc:
    return FieldDesc(p, s, modulus)


def make_field(p: int, s: int = 1, modulus=None) -> FieldDesc:
    """Return the field F_{p^s}.

    ``modulus`` is a monic irreducible polynomial of degree s over F_p given
    as a coefficient sequence (lowest degree first) or as a
    :class:`~hqcf.polyser.Poly`.  When omitted, a built-in table is used for
    p = 2, s <= 8 and p in {3, 5, 7}, s = 1.
    """
    if not isinstance(p, int) or not _is_prime(p):
        raise FieldError(f"characteristic {p!r} is not prime")
    if not isinstance(s, int) or s < 1:
        raise FieldError(f"extension degree must be >= 1, got {s!r}")
    if p**s > MAX_ORDER:
        raise FieldError(f"field order {p}^{s} exceeds supported maximum {MAX_ORDER}")
    if modulus is None:
        if s == 1:
            modulus = (0, 1)
        elif (p, s) in DEFAULT_MODULI:
            modulus = DEFAULT_MODULI[(p, s)]
        else:
            raise FieldError(f"no default modulus for p={p}, s={s}; pass one explicitly")
    else:
        if hasattr(modulus, "coeffs"):
            if modulus.field.s != 1 or modulus.field.p != p:
                raise FieldError("modulus must have coefficients in F_p")
            modulus = tuple(int(c) for c in modulus.coeffs)
        modulus = tuple(int(c) % p for c in modulus)
        while len(modulus) > 1 and modulus[-1] == 0:
            modulus = modulus[:-1]
    if len(modulus) - 1 != s:
        raise FieldError(f"modulus degree {len(modulus) - 1} != s = {s}")
    if modulus[-1] != 1:
        raise FieldError("modulus must be monic")
    if not _is_irreducible(modulus, p):
        raise FieldError(f"modulus {modulus} is reducible over F_{p}")
    return _cached_field(p, s, modulus)


class FieldElem:
    """An element of a :class:`FieldDesc`, stored by its index."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldDesc, value):
        if isinstance(value, FieldElem):
            if value.field != field:
                raise FieldError("element belongs to a different field")
            value = value.value
        value = int(value)
        if not 0 <= value < field.q:
            raise FieldError(f"index {value} outside [0, {field.q})")
        self.field = field
        self.value = value

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Coordinates in the power basis, lowest power first."""
        return tuple(int(c) for c in self.field._digits[self.value])

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldError("operation on elements of different fields")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.field.from_int(int(other))
        return NotImplemented

    def _wrap(self, v: int) -> "FieldElem":
        return FieldElem(self.field, v)

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.sub(b, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.div(b, self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def inverse(self) -> "FieldElem":
        return self._wrap(self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == self.field.from_int(int(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __repr__(self):
        return f"FieldElem({self.value}, q={self.field.q})"

    def __str__(self):
        return str(self.value)


def elem_arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    """Apply ``op`` in {"add", "sub", "mul", "div"} to two field elements."""
    if a.field != b.field:
        raise FieldError("operation on elements of different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def frobenius(a: FieldElem, r: int) -> FieldElem:
    """Return a^r where r must be a power of the characteristic."""
    if not is_power_of(r, a.field.p):
        raise FieldError(f"{r} is not a power of p = {a.field.p}")
    return FieldElem(a.field, int(a.field.frobenius_table(r)[a.value]))


def units(field: FieldDesc) -> list[FieldElem]:
    """All q - 1 nonzero elements in increasing index order."""
    return [FieldElem(field, i) for i in range(1, field.q)]
