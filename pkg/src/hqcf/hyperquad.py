"""Hyperquadratic continued fractions in characteristic 2 with quotients λT.

The family is parameterised by q = 2^s, r = 2^t (t >= 1), a length ℓ >= 1 and
a vector (λ_1, ..., λ_ℓ, ε_1, ε_2) of nonzero elements of F_q.  Its member
α = [λ_1 T, λ_2 T, ...] is the root in F(q)^+ of

    y_ℓ X^(r+1) + x_ℓ X^r + (ε_1 y_(ℓ-1) F_(r-1) + ε_2 y_ℓ F_(r-2)) X
        + ε_2 x_ℓ F_(r-2) + ε_1 x_(ℓ-1) F_(r-1) = 0,

where x, y are the continuants of (λ_1 T, ..., λ_ℓ T) and F_n are the
polynomials F_0 = 1, F_1 = T, F_(n+1) = T F_n + F_(n-1).

Two independent routes to the quotients live here: the closed recursion for
the λ sequence (:func:`theorem_lambda_stream`) and a fixed-point solver for
the root of the equation (:func:`root_fixed_point`) whose expansion can be
compared against it.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .contfrac import cf_value, continuants
from .gf import FieldDesc, FieldElem, FieldError, is_power_of, make_field
from .polyser import NEG_INF, LaurentSeries, Poly, PrecisionError, series_from_rational

__all__ = [
    "SpecError",
    "ContractionStall",
    "HyperquadSpec",
    "HyperquadEquation",
    "OmegaRingElem",
    "RootResidual",
    "Lemma3State",
    "fib_poly",
    "lemma1_closed_form",
    "lemma1_closed_form_check",
    "lemma1_identity_check",
    "build_equation",
    "build_equation_E",
    "involution",
    "lemma3_step",
    "lambda_index",
    "iter_lambdas",
    "theorem_lambda_stream",
    "lemma3_lambda_stream",
    "root_fixed_point",
    "verify_root",
    "default_precision",
]


class SpecError(ValueError):
    """Invalid family parameters."""


class ContractionStall(RuntimeError):
    """The fixed-point iteration stopped gaining precision."""


def lift(P: Poly, field: FieldDesc) -> Poly:
    """Map a polynomial over the prime field F_p into F_q[T]."""
    if P.field == field:
        return P
    if P.field.s != 1 or P.field.p != field.p:
        raise FieldError("can only lift from the prime subfield")
    # prime-field element c has index c in any extension of F_p
    return Poly(field, P.coeffs.copy())


# -- the polynomials F_n and their closed forms ---------------------------------


@functools.lru_cache(maxsize=None)
def _fib_table(p: int, n: int) -> tuple:
    F = make_field(p)
    T = Poly.T(F)
    seq = [Poly.const(F, 1), T]
    while len(seq) <= n:
        seq.append(T * seq[-1] + seq[-2])
    return tuple(seq[: n + 1])


def fib_poly(n: int, p: int = 2) -> Poly:
    """F_n over F_p: F_0 = 1, F_1 = T, F_(n+1) = T F_n + F_(n-1)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _fib_table(p, n)[n]


def lemma1_closed_form(p: int, t: int) -> Poly:
    """T^(r-1) when p = 2, (T^2 + 4)^((r-1)/2) when p > 2, with r = p^t."""
    F = make_field(p)
    r = p**t
    T = Poly.T(F)
    if p == 2:
        return Poly.monomial(F, 1, r - 1)
    return (T * T + Poly.const(F, 4 % p)) ** ((r - 1) // 2)


def lemma1_closed_form_check(p: int, t: int) -> dict:
    if t < 1:
        raise ValueError("t must be >= 1")
    r = p**t
    lhs = fib_poly(r - 1, p)
    rhs = lemma1_closed_form(p, t)
    return {
        "p": p,
        "t": t,
        "r": r,
        "passed": lhs == rhs,
        "F_r_minus_1": lhs.to_list(),
        "closed_form": rhs.to_list(),
    }


class OmegaRingElem:
    """u + v ω in F_p[T][ω] / (ω^2 - T ω - 1)."""

    __slots__ = ("u", "v")

    def __init__(self, u: Poly, v: Poly):
        if u.field != v.field:
            raise FieldError("components over different fields")
        self.u = u
        self.v = v

    @property
    def field(self) -> FieldDesc:
        return self.u.field

    @classmethod
    def from_poly(cls, P: Poly) -> "OmegaRingElem":
        return cls(P, Poly(P.field, []))

    @classmethod
    def omega(cls, field: FieldDesc) -> "OmegaRingElem":
        return cls(Poly(field, []), Poly.const(field, 1))

    @classmethod
    def omega_inv(cls, field: FieldDesc) -> "OmegaRingElem":
        # ω (ω - T) = ω^2 - T ω = 1
        return cls(-Poly.T(field), Poly.const(field, 1))

    def __add__(self, other):
        return OmegaRingElem(self.u + other.u, self.v + other.v)

    def __sub__(self, other):
        return OmegaRingElem(self.u - other.u, self.v - other.v)

    def __neg__(self):
        return OmegaRingElem(-self.u, -self.v)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return OmegaRingElem(self.u * other, self.v * other)
        T = Poly.T(self.field)
        vv = self.v * other.v
        return OmegaRingElem(
            self.u * other.u + vv,
            self.u * other.v + self.v * other.u + T * vv,
        )

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = OmegaRingElem.from_poly(Poly.const(self.field, 1))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, OmegaRingElem):
            return NotImplemented
        return self.u == other.u and self.v == other.v

    def __repr__(self):
        return f"({self.u!r}) + ({self.v!r})ω"


def lemma1_identity_check(n_max: int, p: int = 2) -> dict:
    """Check F_(n-1) (ω + ω^-1) = ω^n - (-ω^-1)^n for 1 <= n <= n_max."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    F = make_field(p)
    w = OmegaRingElem.omega(F)
    winv = OmegaRingElem.omega_inv(F)
    s = w + winv
    mwinv = -winv
    failures = []
    wn, mn = OmegaRingElem.from_poly(Poly.const(F, 1)), OmegaRingElem.from_poly(Poly.const(F, 1))
    T = Poly.T(F)
    omegas = [wn - mn]  # Ω_0 = 0
    for n in range(1, n_max + 1):
        wn, mn = wn * w, mn * mwinv
        omega_n = wn - mn
        omegas.append(omega_n)
        if s * fib_poly(n - 1, p) != omega_n:
            failures.append(n)
        if n >= 2 and omegas[n - 1] * T + omegas[n - 2] != omega_n:
            failures.append(("recurrence", n))
    return {"p": p, "n_max": n_max, "passed": not failures, "failures": failures}


# -- parameters and equations ------------------------------------------------


@dataclass(frozen=True)
class HyperquadSpec:
    """Parameters (q = 2^s, r = 2^t, ℓ, λ_1..λ_ℓ, ε_1, ε_2) of one family member."""

    field: FieldDesc
    t: int
    lambdas: tuple
    eps1: FieldElem
    eps2: FieldElem

    def __post_init__(self):
        F = self.field
        if F.p != 2:
            raise SpecError("the family lives in characteristic 2")
        if self.t < 1:
            raise SpecError("t must be >= 1")
        if len(self.lambdas) < 1:
            raise SpecError("need ell >= 1 initial values")
        object.__setattr__(self, "lambdas", tuple(self.lambdas))
        for name, v in [("eps1", self.eps1), ("eps2", self.eps2)] + [
            (f"lambda_{i + 1}", v) for i, v in enumerate(self.lambdas)
        ]:
            if not isinstance(v, FieldElem) or v.field != F:
                raise SpecError(f"{name} is not an element of F_{F.q}")
            if not v:
                raise SpecError(f"{name} must be a unit (nonzero)")

    @classmethod
    def from_indices(cls, s: int, t: int, lambdas: Sequence[int], eps1: int, eps2: int) -> "HyperquadSpec":
        F = make_field(2, s)
        try:
            elems = [F(v) for v in lambdas]
            e1, e2 = F(eps1), F(eps2)
        except FieldError as exc:
            raise SpecError(str(exc)) from exc
        return cls(F, t, tuple(elems), e1, e2)

    @classmethod
    def random(cls, s: int, t: int, ell: int, rng: np.random.Generator) -> "HyperquadSpec":
        q = 2**s
        vals = rng.integers(1, q, size=ell + 2).tolist()
        return cls.from_indices(s, t, vals[:ell], vals[ell], vals[ell + 1])

    @property
    def s(self) -> int:
        return self.field.s

    @property
    def r(self) -> int:
        return 2**self.t

    @property
    def ell(self) -> int:
        return len(self.lambdas)

    def quotients(self) -> list:
        """A_ℓ = (λ_1 T, ..., λ_ℓ T)."""
        T = Poly.T(self.field)
        return [T.scale(lam) for lam in self.lambdas]

    @property
    def P(self) -> Poly:
        return lift(fib_poly(self.r - 1, 2), self.field).scale(self.eps1)

    @property
    def Q(self) -> Poly:
        return lift(fib_poly(self.r - 2, 2), self.field).scale(self.eps2)

    def to_json(self) -> dict:
        return {
            "p": 2,
            "s": self.s,
            "t": self.t,
            "ell": self.ell,
            "lambdas": [lam.value for lam in self.lambdas],
            "eps1": self.eps1.value,
            "eps2": self.eps2.value,
        }

    @classmethod
    def from_json(cls, data: dict) -> "HyperquadSpec":
        if data.get("p", 2) != 2:
            raise SpecError("p must be 2")
        if "ell" in data and data["ell"] != len(data["lambdas"]):
            raise SpecError("ell does not match the number of lambdas")
        return cls.from_indices(data["s"], data["t"], data["lambdas"], data["eps1"], data["eps2"])


@dataclass(frozen=True)
class HyperquadEquation:
    """A X^(r+1) + B X^r + C X + D = 0."""

    A: Poly
    B: Poly
    C: Poly
    D: Poly
    r: int

    def evaluate(self, alpha: LaurentSeries) -> LaurentSeries:
        """The residual A α^(r+1) + B α^r + C α + D as a series."""
        ar = alpha.frobenius(self.r) if is_power_of(self.r, alpha.field.p) else alpha**self.r
        return ar * alpha * self.A + ar * self.B + alpha * self.C + self.D

    def residual_at(self, x: Poly, y: Poly):
        """Valuation of the residual at the rational point x/y (exact)."""
        F = x.field
        xr = x.frobenius(self.r) if is_power_of(self.r, F.p) else x**self.r
        yr = y.frobenius(self.r) if is_power_of(self.r, F.p) else y**self.r
        num = xr * (self.A * x + self.B * y) + yr * (self.C * x + self.D * y)
        if num.is_zero():
            return NEG_INF
        return num.degree - (self.r + 1) * y.degree

    def coefficients(self) -> tuple:
        return (self.A, self.B, self.C, self.D)

    def to_json(self) -> dict:
        return {"r": self.r, "coefficients": [c.to_list() for c in self.coefficients()]}

    def __repr__(self):
        r = self.r
        parts = []
        for c, x in ((self.A, f"X^{r + 1}"), (self.B, f"X^{r}"), (self.C, "X"), (self.D, "")):
            if c.is_zero():
                continue
            s = repr(c)
            if not x:
                parts.append(s)
            elif s == "1":
                parts.append(x)
            else:
                parts.append(f"({s})*{x}" if "+" in s else f"{s}*{x}")
        return " + ".join(parts) or "0"


def build_equation(A_ell: Sequence[Poly], r: int, P: Poly, Q: Poly) -> HyperquadEquation:
    """Equation of the type-(r, ℓ, P, Q) continued fraction with head A_ell.

    y_ℓ X^(r+1) - x_ℓ X^r + (y_(ℓ-1) P - y_ℓ Q) X + x_ℓ Q - x_(ℓ-1) P, with
    general signs (they collapse in characteristic 2).
    """
    if not A_ell:
        raise SpecError("A_ell must be nonempty")
    F = A_ell[0].field
    if not is_power_of(r, F.p) or r < 1:
        raise SpecError(f"r = {r} is not a power of p = {F.p}")
    if any(a.degree <= 0 for a in A_ell):
        raise SpecError("every quotient of A_ell must have positive degree")
    if not (Q.degree < P.degree < r):
        raise SpecError("need deg(Q) < deg(P) < r")
    tab = continuants(A_ell)
    ell = len(A_ell)
    x, x1, y, y1 = tab.x[ell], tab.x[ell - 1], tab.y[ell], tab.y[ell - 1]
    return HyperquadEquation(y, -x, y1 * P - y * Q, x * Q - x1 * P, r)


def build_equation_E(spec: HyperquadSpec) -> HyperquadEquation:
    """The characteristic-2 equation of the family member ``spec``."""
    F = spec.field
    r = spec.r
    tab = continuants(spec.quotients())
    ell = spec.ell
    x, x1, y, y1 = tab.x[ell], tab.x[ell - 1], tab.y[ell], tab.y[ell - 1]
    Fr1 = lift(fib_poly(r - 1), F)
    Fr2 = lift(fib_poly(r - 2), F)
    C = (y1 * Fr1).scale(spec.eps1) + (y * Fr2).scale(spec.eps2)
    D = (x * Fr2).scale(spec.eps2) + (x1 * Fr1).scale(spec.eps1)
    return HyperquadEquation(y, x, C, D, r)


# -- the λ recursion -----------------------------------------------------------


def involution(e1: FieldElem, e2: FieldElem) -> tuple:
    """f(x, y) = (x y^-2, y^-1); f(f(x, y)) = (x, y)."""
    inv2 = e2.inverse()
    return e1 * inv2 * inv2, inv2


class Lemma3State(NamedTuple):
    """Relation α_i^r = ε_1 F_(r-1) α_j + ε_2 F_(r-2) between complete quotients."""

    eps1: FieldElem
    eps2: FieldElem
    i: int
    j: int


def lemma3_step(state: Lemma3State, lam_i: FieldElem, r: int):
    """Quotients a_j .. a_(j+r-1) forced by the relation, and the next relation.

    a_j = ε_1^-1 λ_i^r T, a_(j+k) = (ε_2/ε_1)^((-1)^k) T for 1 <= k <= r-1,
    and α_(i+1)^r = ε_1 ε_2^-2 F_(r-1) α_(j+r) + ε_2^-1 F_(r-2).
    """
    e1, e2, i, j = state
    if not (1 <= i < j):
        raise ValueError("need 1 <= i < j")
    F = e1.field
    T = Poly.T(F)
    ratio = e2 / e1
    coeffs = [lam_i**r / e1]
    for k in range(1, r):
        coeffs.append(ratio if k % 2 == 0 else ratio.inverse())
    quotients = [T.scale(c) for c in coeffs]
    n1, n2 = involution(e1, e2)
    return quotients, Lemma3State(n1, n2, i + 1, j + r)


def lambda_index(n: int, ell: int, r: int) -> tuple:
    """Write n > ℓ uniquely as ℓ + r m + i with m >= 0 and 1 <= i <= r."""
    if n <= ell:
        raise ValueError("n must exceed ell")
    m, i0 = divmod(n - ell - 1, r)
    return m, i0 + 1


def iter_lambdas(spec: HyperquadSpec) -> Iterator[FieldElem]:
    """Unbounded stream λ_1, λ_2, ... of leading coefficients."""
    r, ell = spec.r, spec.ell
    e1, e2 = spec.eps1, spec.eps2
    ratio = e2 / e1
    head = {0: ratio * e2.inverse(), 1: ratio * e2}  # (ε_2/ε_1) ε_2^((-1)^(m+1)) by parity of m
    alt = {0: ratio.inverse(), 1: ratio}  # (ε_1/ε_2)^((-1)^i) by parity of i
    seen = []
    n = 0
    while True:
        n += 1
        if n <= ell:
            lam = spec.lambdas[n - 1]
        else:
            m, i = lambda_index(n, ell, r)
            if i == 1:
                lam = head[m % 2] * seen[m] ** r
            else:
                lam = alt[i % 2]
        seen.append(lam)
        yield lam


def theorem_lambda_stream(spec: HyperquadSpec, N: int) -> list:
    """λ_1, ..., λ_N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    out = []
    for lam in iter_lambdas(spec):
        out.append(lam)
        if len(out) == N:
            return out


def lemma3_lambda_stream(spec: HyperquadSpec, N: int) -> list:
    """λ_1..λ_N obtained by chaining :func:`lemma3_step` from (i, j) = (1, ℓ + 1)."""
    lams = list(spec.lambdas)
    state = Lemma3State(spec.eps1, spec.eps2, 1, spec.ell + 1)
    while len(lams) < N:
        quotients, state = lemma3_step(state, lams[state.i - 1], spec.r)
        lams.extend(a.lc for a in quotients)
    return lams[:N]


# -- the independent root oracle -------------------------------------------------


def default_precision(N: int, spec: HyperquadSpec, margin: int = 8) -> int:
    """Coefficients of α needed to certify N quotients of degree 1."""
    return 2 * N + spec.r * spec.ell + margin


def root_fixed_point(spec: HyperquadSpec, prec: int, max_iter: int = 64) -> LaurentSeries:
    """Root of the family equation in F(q)^+, known to ``prec`` coefficients.

    Iterates β -> [λ_1 T, ..., λ_ℓ T, (β^r - Q) / P] from β_0 = x_ℓ / y_ℓ.
    Two successive iterates agreeing to |T|^d certify the newer one down to
    exponent d + 1, since the map contracts distances to the root.
    """
    if prec < 1:
        raise ValueError("prec must be >= 1")
    F = spec.field
    r = spec.r
    A = spec.quotients()
    P, Q = spec.P, spec.Q
    tab = continuants(A)
    ell = spec.ell
    target = 2 - prec
    floor = target - (2 * ell + r + 8)
    beta = series_from_rational(tab.x[ell], tab.y[ell], 1 - floor + 1)
    certified = math.inf
    for _ in range(max_iter):
        tail = ((beta.frobenius(r) - Q) / P).truncate(floor)
        new = cf_value(A, tail).truncate(floor)
        bound = max(new.known_below, new.agreement(beta) + 1)
        if bound <= target:
            return new.truncate(bound)
        if bound >= certified:
            raise ContractionStall(f"agreement stalled at exponent {bound}")
        certified = bound
        beta = new
    raise ContractionStall(f"no convergence after {max_iter} iterations")


class RootResidual(NamedTuple):
    """Residual of an equation at a series.

    When ``zero_at_precision`` is set, ``valuation`` is only an upper bound
    (known_below - 1); otherwise it is the exact top exponent.
    """

    valuation: float
    known_below: float
    zero_at_precision: bool


def verify_root(alpha: LaurentSeries, eq: HyperquadEquation) -> RootResidual:
    if alpha.is_zero():
        raise ValueError("alpha must be nonzero")
    if alpha.known_below > 0:
        raise PrecisionError("alpha is not known down to its integral part")
    res = eq.evaluate(alpha)
    if res.is_zero():
        return RootResidual(res.known_below - 1, res.known_below, True)
    return RootResidual(res.valuation, res.known_below, False)
