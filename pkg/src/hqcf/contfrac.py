"""Continued fractions in F(q): expansion, continuants, evaluation.

Notation follows the usual convention: ``[a_1, a_2, ..., a_n]`` with
continuants ``x_n = <a_1, ..., a_n>`` and ``y_n = <a_2, ..., a_n>`` so that
``x_n / y_n`` is the n-th convergent, seeded by ``x_0 = 1, y_0 = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .polyser import NEG_INF, LaurentSeries, Poly, PrecisionError, polynomial_part, series_from_rational

__all__ = [
    "ContFrac",
    "ContinuantTable",
    "continuant",
    "continuants",
    "cf_expand",
    "cf_eval",
    "cf_value",
    "lemma2_extend",
    "periodicity_detect",
]

RATIONAL = "rational"
PRECISION = "precision"
LIMIT = "max_quotients"


@dataclass(frozen=True)
class ContFrac:
    """Partial quotients plus the reason the expansion stopped.

    ``stop`` is "rational" (exact zero remainder, the expansion is complete),
    "precision" (the input ran out of certified coefficients) or
    "max_quotients" (the caller's limit was reached first).
    """

    quotients: tuple
    stop: str

    @property
    def complete(self) -> bool:
        return self.stop == RATIONAL

    def __len__(self):
        return len(self.quotients)

    def __getitem__(self, i):
        return self.quotients[i]

    def to_json(self) -> dict:
        return {
            "quotients": [q.to_list() for q in self.quotients],
            "complete": self.complete,
            "stop": self.stop,
        }


@dataclass
class ContinuantTable:
    """x[k] = <a_1..a_k>, y[k] = <a_2..a_k> for 0 <= k <= n."""

    x: list = field(default_factory=list)
    y: list = field(default_factory=list)

    def __len__(self):
        return len(self.x) - 1

    def determinant(self, n: int) -> Poly:
        """x_n y_{n-1} - x_{n-1} y_n, which equals (-1)^n."""
        return self.x[n] * self.y[n - 1] - self.x[n - 1] * self.y[n]


def _one_like(fld) -> Poly:
    return Poly.const(fld, 1)


def continuant(seq: Sequence[Poly], fld=None) -> Poly:
    """<a_1, ..., a_n>, with the empty continuant equal to 1."""
    if not seq:
        if fld is None:
            raise ValueError("field needed for the empty continuant")
        return _one_like(fld)
    F = seq[0].field
    prev, cur = Poly(F, []), _one_like(F)
    for a in seq:
        prev, cur = cur, a * cur + prev
    return cur


def continuants(quotients: Sequence[Poly]) -> ContinuantTable:
    if not quotients:
        raise ValueError("at least one quotient is needed to fix the field")
    F = quotients[0].field
    one, zero = _one_like(F), Poly(F, [])
    x = [one]
    y = [zero]
    xm, ym = zero, one  # x_{-1}, y_{-1}
    for a in quotients:
        xn = a * x[-1] + xm
        yn = a * y[-1] + ym
        xm, ym = x[-1], y[-1]
        x.append(xn)
        y.append(yn)
    return ContinuantTable(x, y)


def cf_value(quotients: Sequence[Poly], tail: LaurentSeries) -> LaurentSeries:
    """[a_1, ..., a_n, tail] as a series."""
    if not quotients:
        return tail
    tab = continuants(quotients)
    n = len(quotients)
    num = tail * tab.x[n] + tab.x[n - 1]
    den = tail * tab.y[n] + tab.y[n - 1]
    return num / den


def _expand_euclid(alpha: LaurentSeries, max_quotients: int) -> ContFrac:
    F = alpha.field
    kb = alpha.known_below
    if kb != NEG_INF and kb > 0:
        return ContFrac((), PRECISION)
    if alpha.is_zero():
        # zero has no partial quotients beyond the integral part 0
        if alpha.is_exact:
            return ContFrac((Poly(F, []),), RATIONAL)
        return ContFrac((Poly(F, []),), RATIONAL if kb == NEG_INF else PRECISION)
    bottom = alpha.bottom if kb == NEG_INF else kb
    shift = max(0, -bottom)
    # alpha (truncated) = num / T^shift
    num = Poly(F, alpha.grid(alpha.top, alpha.top - (alpha.top + shift))[::-1].copy())
    den = Poly.monomial(F, 1, shift)
    quotients = []
    y_prev, y_cur = _one_like(F), Poly(F, [])
    while len(quotients) < max_quotients:
        a, rem = divmod(num, den)
        y_next = a * y_cur + y_prev
        if kb != NEG_INF and 2 * max(y_next.degree, 0) > -kb:
            return ContFrac(tuple(quotients), PRECISION)
        quotients.append(a)
        y_prev, y_cur = y_cur, y_next
        if rem.is_zero():
            return ContFrac(tuple(quotients), RATIONAL if kb == NEG_INF else PRECISION)
        num, den = den, rem
    return ContFrac(tuple(quotients), LIMIT)


def _expand_series(alpha: LaurentSeries, max_quotients: int) -> ContFrac:
    if alpha.is_exact:
        return _expand_euclid(alpha, max_quotients)
    quotients = []
    cur = alpha
    while len(quotients) < max_quotients:
        if cur.known_below > 0:
            return ContFrac(tuple(quotients), PRECISION)
        a, _ = polynomial_part(cur)
        quotients.append(a)
        rem = cur - a
        if rem.is_zero():
            return ContFrac(tuple(quotients), PRECISION)
        cur = rem.inverse()
    return ContFrac(tuple(quotients), LIMIT)


def cf_expand(
    alpha: LaurentSeries,
    max_quotients: int,
    *,
    method: str = "euclid",
    require_plus: bool = False,
) -> ContFrac:
    """Continued fraction expansion of ``alpha`` with certified quotients.

    ``method="series"`` runs the textbook loop (integral part, subtract,
    invert) on the series itself.  ``method="euclid"`` runs the Euclidean
    algorithm on the exact rational truncation num/T^m of ``alpha`` and keeps
    quotient n only while |alpha - truncation| < |y_n|^-2, which is exactly
    the condition for the two to share their first n quotients.  Both return
    the same certified prefix; the Euclidean route avoids series inversions.
    """
    if require_plus and (alpha.is_zero() or alpha.valuation < 1):
        raise ValueError("first partial quotient has degree <= 0; alpha is not in F(q)^+")
    if method == "euclid":
        return _expand_euclid(alpha, max_quotients)
    if method == "series":
        return _expand_series(alpha, max_quotients)
    raise ValueError(f"unknown method {method!r}")


def cf_eval(quotients: Sequence[Poly], prec: int, *, as_truncation: bool = False) -> LaurentSeries:
    """Series of the convergent x_n/y_n with ``prec`` coefficients.

    With ``as_truncation=True`` the quotients are read as the head of a longer
    expansion and ``known_below`` is capped at the convergent error bound:
    |alpha - x_n/y_n| = |y_n|^-2 |a_{n+1}|^-1 <= |T|^(-2 deg y_n - 1).
    """
    tab = continuants(quotients)
    n = len(quotients)
    s = series_from_rational(tab.x[n], tab.y[n], prec)
    if as_truncation:
        s = s.truncate(-2 * tab.y[n].degree if n > 1 else 0)
    return s


def lemma2_extend(xs: Sequence[Poly], x: LaurentSeries, prec: int | None = None):
    """Rewrite [[x_1..x_n], x] as [x_1, ..., x_n, y].

    Returns ``(quotients, y)`` with
    y = (-1)^(n-1) <x_2..x_n>^-2 x - <x_2..x_{n-1}> <x_2..x_n>^-1,
    where the empty continuant (n = 2) is 1.
    """
    n = len(xs)
    if n < 2:
        raise ValueError("need n >= 2 quotients")
    F = xs[0].field
    K = continuant(list(xs[1:]), F)
    Kp = continuant(list(xs[1:-1]), F)
    if K.is_zero():
        raise ZeroDivisionError("continuant <x_2..x_n> vanishes")
    if prec is None:
        if x.is_exact:
            raise PrecisionError("an exact tail needs an explicit precision")
        prec = x.precision + 2 * max(K.degree, 0) + 1
    term = x * series_from_rational(_one_like(F), K * K, prec)
    if (n - 1) % 2:
        term = -term
    y = term - series_from_rational(Kp, K, prec)
    return list(xs), y


def periodicity_detect(quotients: Sequence, *, min_reps: int = 3, max_preperiod: int | None = None):
    """Smallest (preperiod, period) consistent with the prefix, or None.

    A report needs at least ``min_reps`` full periods after the preperiod,
    and the preperiod may not exceed half the prefix (by default), so the
    periodic part always dominates.  This is evidence from a finite prefix,
    not a proof of periodicity.
    """
    L = len(quotients)
    if L < 4:
        raise ValueError("prefix must have length >= 4")
    if max_preperiod is None:
        max_preperiod = L // 2
    best = None
    for period in range(1, L // min_reps + 1):
        # smallest k such that q[i] == q[i + period] for all k <= i < L - period
        k = L - period
        while k > 0 and quotients[k - 1] == quotients[k - 1 + period]:
            k -= 1
        if k > max_preperiod or L - k < min_reps * period:
            continue
        if best is None or (k + period, period) < (sum(best), best[1]):
            best = (k, period)
    return best
