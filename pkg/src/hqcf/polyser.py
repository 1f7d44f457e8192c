"""Polynomials over F_q and truncated Laurent series in 1/T.

A :class:`LaurentSeries` stores its coefficients from the top exponent
downwards together with ``known_below``: every exponent >= known_below is
correct, everything below is unknown.  Exact series (polynomials, finite
sums) have ``known_below = -inf``.  All arithmetic propagates the bound
pessimistically, so a consumer can always check how much of a result is
certified.

The "valuation" of a series is its top exponent k0, i.e. |a| = |T|^k0.
"""

from __future__ import annotations

import math

import numpy as np

from .gf import FieldDesc, FieldElem, FieldError, is_power_of

__all__ = [
    "NEG_INF",
    "PrecisionError",
    "Poly",
    "LaurentSeries",
    "poly_arith",
    "poly_gcd",
    "series_from_rational",
    "series_inv",
    "series_frobenius",
    "polynomial_part",
]

NEG_INF = -math.inf


class PrecisionError(ArithmeticError):
    """The tracked precision is too low for the requested operation."""


def _as_index_array(field: FieldDesc, coeffs) -> np.ndarray:
    out = []
    for c in coeffs:
        if isinstance(c, FieldElem):
            if c.field != field:
                raise FieldError("coefficient from a different field")
            out.append(c.value)
        else:
            c = int(c)
            if not 0 <= c < field.q:
                raise FieldError(f"coefficient index {c} outside [0, {field.q})")
            out.append(c)
    return np.array(out, dtype=np.int64)


def _conv(field: FieldDesc, a: np.ndarray, b: np.ndarray, n: int | None = None) -> np.ndarray:
    """First ``n`` coefficients of the product of two coefficient arrays."""
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return np.zeros(0 if n is None else n, dtype=np.int64)
    full = la + lb - 1
    n = full if n is None else n
    a = a[: min(la, n)]
    b = b[: min(lb, n)]
    width = min(full, n)
    out = np.zeros(n, dtype=np.int64)
    nz = np.flatnonzero(a)
    if len(nz) == 0 or not b.any():
        return out
    prods = field._mul[a[nz][:, None], b[None, :]]
    cols = nz[:, None] + np.arange(len(b))[None, :]
    keep = cols < width
    rows = np.broadcast_to(np.arange(len(nz))[:, None], cols.shape)
    grid = np.zeros((len(nz), width), dtype=np.int64)
    grid[rows[keep], cols[keep]] = prods[keep]
    out[:width] = field.vsum(grid, axis=0)
    return out


def _ps_inverse(field: FieldDesc, c: np.ndarray, n: int) -> np.ndarray:
    """Inverse of a power series c[0] + c[1] X + ... modulo X^n (c[0] != 0)."""
    w = np.array([field.inv(int(c[0]))], dtype=np.int64)
    two = field.from_int(2)
    k = 1
    while k < n:
        k = min(2 * k, n)
        t = _conv(field, c[:k], w, k)
        u = field.vneg(t).copy()
        u[0] = field.add(int(u[0]), two)
        w = _conv(field, w, u, k)
    return w[:n]


class Poly:
    """Dense univariate polynomial in T over a finite field.

    ``coeffs`` holds element indices, lowest degree first, with no trailing
    zeros.  The zero polynomial has degree ``NEG_INF``.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldDesc, coeffs=()):
        arr = coeffs if isinstance(coeffs, np.ndarray) else _as_index_array(field, coeffs)
        arr = np.asarray(arr, dtype=np.int64)
        nz = np.flatnonzero(arr)
        arr = arr[: nz[-1] + 1] if len(nz) else arr[:0]
        arr.setflags(write=False)
        self.field = field
        self.coeffs = arr

    # -- constructors -----------------------------------------------------
    @classmethod
    def T(cls, field: FieldDesc) -> "Poly":
        return cls(field, [0, 1])

    @classmethod
    def const(cls, field: FieldDesc, c) -> "Poly":
        return cls(field, [c])

    @classmethod
    def monomial(cls, field: FieldDesc, c, k: int) -> "Poly":
        arr = np.zeros(k + 1, dtype=np.int64)
        arr[k] = c.value if isinstance(c, FieldElem) else int(c)
        return cls(field, arr)

    # -- basic properties -------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if len(self.coeffs) else NEG_INF

    @property
    def lc(self) -> FieldElem:
        if not len(self.coeffs):
            return self.field.zero
        return FieldElem(self.field, int(self.coeffs[-1]))

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    def __getitem__(self, k: int) -> FieldElem:
        if 0 <= k < len(self.coeffs):
            return FieldElem(self.field, int(self.coeffs[k]))
        return self.field.zero

    def __len__(self):
        return len(self.coeffs)

    def _check(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldError("polynomials over different fields")
            return other
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldError("scalar from a different field")
            return Poly(self.field, [other.value])
        if isinstance(other, (int, np.integer)):
            return Poly(self.field, [self.field.from_int(int(other))])
        return NotImplemented

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        out = np.zeros(n, dtype=np.int64)
        out[: len(a)] = a
        out[: len(b)] = self.field.vadd(out[: len(b)], b)
        return Poly(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, self.field.vneg(self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Poly(self.field, _conv(self.field, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        """Multiply by a scalar given as a FieldElem or an element index."""
        c = c.value if isinstance(c, FieldElem) else int(c)
        return Poly(self.field, self.field.vmul(c, self.coeffs))

    def shift(self, k: int) -> "Poly":
        """Multiply by T^k (k >= 0)."""
        if self.is_zero():
            return self
        return Poly(self.field, np.concatenate([np.zeros(k, dtype=np.int64), self.coeffs]))

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = self.coeffs.copy()
        db = other.degree
        da = self.degree
        if da < db:
            return Poly(F, []), self
        b = other.coeffs
        inv_lc = F.inv(int(b[-1]))
        quo = np.zeros(da - db + 1, dtype=np.int64)
        for k in range(da - db, -1, -1):
            c = int(rem[k + db])
            if c == 0:
                continue
            c = F.mul(c, inv_lc)
            quo[k] = c
            rem[k : k + db + 1] = F.vsub(rem[k : k + db + 1], F.vmul(c, b))
        return Poly(F, quo), Poly(F, rem[:db] if db > 0 else rem[:0])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def frobenius(self, r: int) -> "Poly":
        """P^r computed coefficientwise (r a power of p)."""
        if not is_power_of(r, self.field.p):
            raise FieldError(f"{r} is not a power of p = {self.field.p}")
        if self.is_zero():
            return self
        out = np.zeros(r * (len(self.coeffs) - 1) + 1, dtype=np.int64)
        out[::r] = self.field.frobenius_table(r)[self.coeffs]
        return Poly(self.field, out)

    def monic(self) -> "Poly":
        return self.scale(self.lc.inverse())

    # -- comparison / display ----------------------------------------------
    def __eq__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.field, tuple(self.coeffs.tolist())))

    def to_list(self) -> list[int]:
        return self.coeffs.tolist()

    def __repr__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = int(self.coeffs[k])
            if not c:
                continue
            mono = "" if k == 0 else ("T" if k == 1 else f"T^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a if a.is_zero() else a.monic()


def poly_arith(a: Poly, b: Poly, op: str):
    """Apply ``op`` in {"add", "sub", "mul", "divmod"}."""
    if a.field != b.field:
        raise FieldError("polynomials over different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divmod":
        return divmod(a, b)
    raise ValueError(f"unknown operation {op!r}")


class LaurentSeries:
    """Truncated formal series sum_{k <= top} a_k T^k over F_q.

    ``coeffs[i]`` is the coefficient of T^(top - i).  For an inexact series
    the array covers exactly the exponents top .. known_below.  The series is
    normalised so the first stored coefficient is nonzero; a series whose
    known coefficients all vanish is "zero at this precision" and has an
    empty coefficient array.
    """

    __slots__ = ("field", "top", "coeffs", "known_below")

    def __init__(self, field: FieldDesc, top: int, coeffs, known_below=NEG_INF):
        arr = coeffs if isinstance(coeffs, np.ndarray) else _as_index_array(field, coeffs)
        arr = np.asarray(arr, dtype=np.int64)
        if known_below != NEG_INF:
            known_below = int(known_below)
            n = top - known_below + 1
            if n <= 0:
                arr = arr[:0]
            elif len(arr) >= n:
                arr = arr[:n]
            else:
                arr = np.concatenate([arr, np.zeros(n - len(arr), dtype=np.int64)])
        nz = np.flatnonzero(arr)
        if len(nz) == 0:
            arr = arr[:0]
            top = known_below - 1 if known_below != NEG_INF else 0
        else:
            top = top - int(nz[0])
            if known_below == NEG_INF:
                arr = arr[nz[0] : nz[-1] + 1]
            else:
                arr = arr[nz[0] :]
        arr.setflags(write=False)
        self.field = field
        self.top = int(top)
        self.coeffs = arr
        self.known_below = known_below

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, field: FieldDesc, known_below=NEG_INF) -> "LaurentSeries":
        return cls(field, 0, [], known_below)

    @classmethod
    def from_poly(cls, P: Poly) -> "LaurentSeries":
        if P.is_zero():
            return cls.zero(P.field)
        return cls(P.field, P.degree, P.coeffs[::-1].copy())

    @classmethod
    def from_terms(cls, field: FieldDesc, terms: dict, known_below=NEG_INF) -> "LaurentSeries":
        """Build from a mapping exponent -> coefficient."""
        terms = {k: v for k, v in terms.items() if (v.value if isinstance(v, FieldElem) else int(v))}
        if not terms:
            return cls.zero(field, known_below)
        top = max(terms)
        bottom = min(terms) if known_below == NEG_INF else known_below
        arr = np.zeros(top - bottom + 1, dtype=np.int64)
        for k, v in terms.items():
            if k >= bottom:
                arr[top - k] = v.value if isinstance(v, FieldElem) else int(v)
        return cls(field, top, arr, known_below)

    @classmethod
    def monomial(cls, field: FieldDesc, c, k: int) -> "LaurentSeries":
        return cls.from_terms(field, {k: c})

    # -- properties -------------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.known_below == NEG_INF

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return len(self.coeffs) == 0

    @property
    def valuation(self):
        """Top exponent k0 with |a| = |T|^k0; ``NEG_INF`` for a zero series."""
        return self.top if len(self.coeffs) else NEG_INF

    degree = valuation

    @property
    def bottom(self):
        """Lowest exponent covered by the coefficient array."""
        return self.top - len(self.coeffs) + 1

    @property
    def upper_bound(self):
        """An exponent bound e with |a| <= |T|^e."""
        if len(self.coeffs):
            return self.top
        return self.known_below - 1

    @property
    def precision(self):
        """Number of known coefficients from the top exponent down."""
        if self.is_exact:
            return math.inf
        return max(0, self.upper_bound - self.known_below + 1)

    def coeff(self, k: int) -> int:
        """Index of the coefficient of T^k."""
        if k < self.known_below:
            raise PrecisionError(f"coefficient of T^{k} is below the known region ({self.known_below})")
        if not len(self.coeffs) or k > self.top or k < self.bottom:
            return 0
        return int(self.coeffs[self.top - k])

    def grid(self, top: int, bottom: int) -> np.ndarray:
        """Coefficients for exponents top, top-1, ..., bottom (zero padded)."""
        n = top - bottom + 1
        out = np.zeros(max(n, 0), dtype=np.int64)
        if not len(self.coeffs) or n <= 0:
            return out
        hi = min(top, self.top)
        lo = max(bottom, self.bottom)
        if hi >= lo:
            out[top - hi : top - lo + 1] = self.coeffs[self.top - hi : self.top - lo + 1]
        return out

    def truncate(self, known_below: int) -> "LaurentSeries":
        """Forget every coefficient below ``known_below``."""
        kb = max(self.known_below, known_below)
        return LaurentSeries(self.field, self.top, self.coeffs, kb)

    def items(self):
        """(exponent, index) pairs of the nonzero known terms, decreasing."""
        return [(self.top - i, int(c)) for i, c in enumerate(self.coeffs) if c]

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            if other.field != self.field:
                raise FieldError("series over different fields")
            return other
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldError("series over different fields")
            return LaurentSeries.from_poly(other)
        if isinstance(other, FieldElem):
            return LaurentSeries.from_poly(Poly.const(self.field, other))
        if isinstance(other, (int, np.integer)):
            return LaurentSeries.from_poly(Poly.const(self.field, self.field.from_int(int(other))))
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        kb = max(self.known_below, other.known_below)
        parts = [s for s in (self, other) if len(s.coeffs)]
        if not parts:
            return LaurentSeries.zero(self.field, kb)
        top = max(s.top for s in parts)
        bottom = kb if kb != NEG_INF else min(s.bottom for s in parts)
        if bottom > top:
            return LaurentSeries.zero(self.field, kb)
        a = self.grid(top, bottom)
        b = other.grid(top, bottom)
        return LaurentSeries(self.field, top, self.field.vadd(a, b), kb)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.field, self.top, self.field.vneg(self.coeffs), self.known_below)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        ua, ub = self.upper_bound, other.upper_bound
        kb = max(ua + other.known_below, ub + self.known_below)
        if not len(self.coeffs) or not len(other.coeffs):
            return LaurentSeries.zero(self.field, kb)
        top = self.top + other.top
        n = None if kb == NEG_INF else top - kb + 1
        if n is not None and n <= 0:
            return LaurentSeries.zero(self.field, kb)
        prod = _conv(self.field, self.coeffs, other.coeffs, n)
        return LaurentSeries(self.field, top, prod, kb)

    __rmul__ = __mul__

    def scale(self, c) -> "LaurentSeries":
        c = c.value if isinstance(c, FieldElem) else int(c)
        if c == 0:
            return LaurentSeries.zero(self.field)
        return LaurentSeries(self.field, self.top, self.field.vmul(c, self.coeffs), self.known_below)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by T^k."""
        kb = self.known_below + k
        return LaurentSeries(self.field, self.top + k, self.coeffs, kb)

    def inverse(self, prec: int | None = None) -> "LaurentSeries":
        """Multiplicative inverse; ``prec`` is needed only for exact non-monomials."""
        return series_inv(self, prec)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        prec = None
        if other.is_exact and len(other.coeffs) > 1:
            if self.is_exact:
                raise PrecisionError("exact / exact needs an explicit precision; use series_from_rational")
            prec = self.precision
        return self * series_inv(other, prec)

    def __pow__(self, e: int) -> "LaurentSeries":
        if e < 0:
            return series_inv(self) ** (-e)
        result = LaurentSeries.from_poly(Poly.const(self.field, 1))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def frobenius(self, r: int) -> "LaurentSeries":
        return series_frobenius(self, r)

    def agreement(self, other) -> float:
        """Exponent bound below which self and other may differ.

        Returns the valuation of the difference when it is nonzero at the
        known precision, otherwise ``known_below - 1`` of the difference.
        """
        d = self - other
        return d.upper_bound

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.field == other.field
            and self.top == other.top
            and self.known_below == other.known_below
            and np.array_equal(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.field, self.top, self.known_below, tuple(self.coeffs.tolist())))

    def __repr__(self):
        terms = []
        for k, c in self.items()[:8]:
            if k == 0:
                terms.append(str(c))
                continue
            mono = "T" if k == 1 else f"T^{k}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
        if len(self.items()) > 8:
            terms.append("...")
        body = " + ".join(terms) if terms else "0"
        if self.is_exact:
            return f"LaurentSeries({body})"
        return f"LaurentSeries({body} + O(T^{self.known_below - 1}))"


def series_from_rational(P: Poly, Q: Poly, prec: int) -> LaurentSeries:
    """Expansion of P/Q in powers of 1/T with ``prec`` correct coefficients.

    The result is correct down to exponent deg(P) - deg(Q) - prec + 1; when Q
    is a monomial the expansion is finite and returned exactly.
    """
    if P.field != Q.field:
        raise FieldError("polynomials over different fields")
    if Q.is_zero():
        raise ZeroDivisionError("series of P/0")
    if prec < 1:
        raise ValueError("prec must be >= 1")
    F = P.field
    if P.is_zero():
        return LaurentSeries.zero(F)
    top = P.degree - Q.degree
    if np.count_nonzero(Q.coeffs) == 1:
        c = F.inv(int(Q.coeffs[-1]))
        return LaurentSeries(F, P.degree, F.vmul(c, P.coeffs[::-1]), NEG_INF).shift(-Q.degree)
    qrev = Q.coeffs[::-1]
    prev = P.coeffs[::-1]
    w = _ps_inverse(F, qrev, prec)
    out = _conv(F, prev, w, prec)
    return LaurentSeries(F, top, out, top - prec + 1)


def series_inv(a: LaurentSeries, prec: int | None = None) -> LaurentSeries:
    """Inverse of a nonzero series.

    The relative precision is preserved: if ``a`` has N known coefficients,
    so does the result.  Exact monomials invert exactly; other exact inputs
    need ``prec`` (number of coefficients wanted).
    """
    if a.is_zero():
        raise PrecisionError("series is zero at the known precision; cannot invert")
    F = a.field
    if a.is_exact:
        if len(a.coeffs) == 1:
            c = F.inv(int(a.coeffs[0]))
            return LaurentSeries(F, -a.top, [c])
        if prec is None:
            raise PrecisionError("inverse of an exact series needs a target precision")
        n = prec
    else:
        n = a.precision
        if prec is not None:
            n = min(n, prec)
    w = _ps_inverse(F, a.coeffs[:n], n)
    return LaurentSeries(F, -a.top, w, -a.top - n + 1)


def series_frobenius(a: LaurentSeries, r: int) -> LaurentSeries:
    """a^r coefficientwise: exponent k goes to rk, coefficient c to c^r."""
    F = a.field
    if not is_power_of(r, F.p):
        raise FieldError(f"{r} is not a power of p = {F.p}")
    kb = a.known_below * r if a.known_below != NEG_INF else NEG_INF
    if not len(a.coeffs):
        return LaurentSeries.zero(F, kb)
    out = np.zeros(r * (len(a.coeffs) - 1) + 1, dtype=np.int64)
    out[::r] = F.frobenius_table(r)[a.coeffs]
    return LaurentSeries(F, a.top * r, out, kb)


def polynomial_part(a: LaurentSeries) -> tuple[Poly, bool]:
    """Integral part of ``a`` and whether ``a`` lies in F(q)^+ (degree >= 1)."""
    if a.known_below > 0:
        raise PrecisionError("integral part is not within the known region")
    F = a.field
    if not len(a.coeffs) or a.top < 0:
        return Poly(F, []), False
    coeffs = a.grid(a.top, 0)[::-1].copy()
    P = Poly(F, coeffs)
    return P, a.top >= 1
