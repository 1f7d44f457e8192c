"""Randomised and exhaustive checks of the identities behind the construction.

Each function returns a plain dict with a ``passed`` flag so the results can
be collected into reports; nothing here raises on a failed identity.
"""

from __future__ import annotations

import numpy as np

from .contfrac import cf_value, continuant, lemma2_extend
from .gf import make_field, units
from .hyperquad import fib_poly, involution, lift
from .polyser import LaurentSeries, Poly, series_from_rational

__all__ = [
    "random_poly",
    "random_tail",
    "lemma2_instance",
    "lemma2_trials",
    "involution_check",
    "continuant_scaling_check",
    "fib_continuant_check",
]

LEMMA2_FIELDS = ((2, 1), (2, 2), (2, 3), (3, 1), (5, 1))


def random_poly(field, degree: int, rng: np.random.Generator) -> Poly:
    """Random polynomial of exactly the given degree."""
    coeffs = rng.integers(0, field.q, size=degree + 1)
    coeffs[-1] = rng.integers(1, field.q)
    return Poly(field, coeffs)


def random_tail(field, top: int, n: int, rng: np.random.Generator) -> LaurentSeries:
    """Random series with exact valuation ``top`` and n known coefficients."""
    coeffs = rng.integers(0, field.q, size=n)
    coeffs[0] = rng.integers(1, field.q)
    return LaurentSeries(field, top, coeffs, top - n + 1)


def lemma2_instance(xs, x: LaurentSeries) -> dict:
    """Compare [[x_1..x_n], x] with [x_1..x_n, y] as series."""
    F = x.field
    n = len(xs)
    prec = x.precision + 4 * sum(max(a.degree, 0) for a in xs) + 8
    num = continuant(list(xs), F)
    den = continuant(list(xs[1:]), F)
    lhs = series_from_rational(num, den, prec) + x.inverse()
    _, y = lemma2_extend(xs, x)
    rhs = cf_value(xs, y)
    diff = lhs - rhs
    # the tail is only known to x.precision relative coefficients, so that
    # many coefficients of agreement below the top of the lhs is the maximum
    agreed = lhs.top - diff.known_below + 1
    return {
        "n": n,
        "passed": bool(diff.is_zero() and agreed >= x.precision),
        "agreed_coefficients": agreed,
        "known_below": diff.known_below,
    }


def lemma2_trials(trials: int, seed: int, *, tail_coeffs: int = 40) -> dict:
    """Random instances: n in 2..6, quotients of degree 1..2, random tails."""
    rng = np.random.default_rng(seed)
    failures = []
    worst = None
    for k in range(trials):
        p, s = LEMMA2_FIELDS[rng.integers(len(LEMMA2_FIELDS))]
        F = make_field(p, s)
        n = int(rng.integers(2, 7))
        xs = [random_poly(F, int(rng.integers(1, 3)), rng) for _ in range(n)]
        x = random_tail(F, int(rng.integers(1, 3)), tail_coeffs, rng)
        out = lemma2_instance(xs, x)
        worst = out["agreed_coefficients"] if worst is None else min(worst, out["agreed_coefficients"])
        if not out["passed"]:
            failures.append({"trial": k, "p": p, "s": s, **out})
    return {
        "trials": trials,
        "seed": seed,
        "passed": not failures,
        "failures": failures,
        "min_agreed_coefficients": worst,
    }


def involution_check(field) -> dict:
    """f(f(x, y)) = (x, y) for every pair of units."""
    bad = []
    us = units(field)
    for a in us:
        for b in us:
            if involution(*involution(a, b)) != (a, b):
                bad.append((a.value, b.value))
    return {"q": field.q, "pairs": len(us) ** 2, "passed": not bad, "failures": bad}


def continuant_scaling_check(field, max_len: int = 10) -> dict:
    """<cT, c^-1 T, ..., cT> = c <T..T> (odd length), even length gives <T..T>."""
    T = Poly.T(field)
    bad = []
    for c in units(field):
        for n in range(1, max_len + 1):
            seq = [T.scale(c if k % 2 == 0 else c.inverse()) for k in range(n)]
            plain = lift(fib_poly(n, field.p), field)
            want = plain.scale(c) if n % 2 else plain
            if continuant(seq) != want:
                bad.append((c.value, n))
    return {"q": field.q, "max_len": max_len, "passed": not bad, "failures": bad}


def fib_continuant_check(n_max: int = 20, p: int = 2) -> dict:
    """F_n = <T, ..., T> with n copies of T."""
    F = make_field(p)
    T = Poly.T(F)
    bad = [n for n in range(n_max + 1) if continuant([T] * n, F) != fib_poly(n, p)]
    return {"p": p, "n_max": n_max, "passed": not bad, "failures": bad}
