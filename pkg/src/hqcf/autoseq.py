"""Automaticity of the leading-coefficient sequence λ_1, λ_2, ...

The generating series θ = Σ λ_i T^-i is algebraic over F_q(T) exactly when
the sequence is 2-automatic.  For r = 2 the family has an explicit
quadratic description of θ (through an Artin-Schreier element ρ); for larger
r a relation θ^r + A θ + B = 0 is only expected, so the search here reports
evidence and nothing more.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gf import FieldDesc, FieldElem
from .hyperquad import HyperquadSpec, theorem_lambda_stream
from .polyser import LaurentSeries, Poly, PrecisionError, poly_gcd, series_from_rational

__all__ = [
    "RelationCandidate",
    "KernelReport",
    "theta_series",
    "theta_r2_closed_form_check",
    "default_degree_bound",
    "frobenius_affine_search",
    "validate_relation",
    "pkernel_explore",
    "nullspace",
]


def theta_series(lambdas: Sequence[FieldElem]) -> LaurentSeries:
    """Σ_{i=1..N} λ_i T^-i, known down to T^-N."""
    if len(lambdas) < 1:
        raise ValueError("need at least one coefficient")
    F = lambdas[0].field
    return LaurentSeries(F, -1, [lam.value for lam in lambdas], -len(lambdas))


def theta_r2_closed_form_check(spec: HyperquadSpec, prec: int = 200) -> dict:
    """Solve the r = 2 decomposition of θ for ρ and test ρ^2 + ρ + c = 0.

    θ = Σ_{i<=ℓ} λ_i T^-i + (ε_1/ε_2) T^-ℓ (T+1)^-2 (ε_2^((-1)^ℓ) T + 1)
        + (ε_1/ε_2) ε_2^((-1)^ℓ) T^(ℓ-1) ρ
    with c = T^-2ℓ Σ_{i<=ℓ} (1 + λ_i^2 (ε_2/ε_1)^2 ε_2^((-1)^i - (-1)^ℓ)) T^(-2i+2).
    """
    if spec.r != 2:
        raise ValueError("the closed form is stated for r = 2 only")
    F = spec.field
    ell = spec.ell
    e1, e2 = spec.eps1, spec.eps2
    if prec < 2 * ell + 4:
        raise PrecisionError(f"prec must be at least {2 * ell + 4}")
    lams = theorem_lambda_stream(spec, prec)
    theta = theta_series(lams)
    T = Poly.T(F)
    one = Poly.const(F, 1)
    sign_l = 1 if ell % 2 == 0 else -1

    head = LaurentSeries.from_terms(F, {-i: lams[i - 1] for i in range(1, ell + 1)})
    num = (T.scale(e2**sign_l) + one).scale(e1 / e2)
    den = Poly.monomial(F, 1, ell) * (T + one) ** 2
    middle = series_from_rational(num, den, prec + ell + 4)
    kappa = (e1 / e2) * e2**sign_l
    rho = (theta - head - middle).shift(-(ell - 1)).scale(kappa.inverse())

    c_terms = {}
    for i in range(1, ell + 1):
        sign_i = 1 if i % 2 == 0 else -1
        val = 1 + lams[i - 1] ** 2 * (e2 / e1) ** 2 * e2 ** (sign_i - sign_l)
        c_terms[-2 * ell - 2 * i + 2] = val
    c = LaurentSeries.from_terms(F, c_terms)
    residual = rho.frobenius(2) + rho + c
    passed = residual.is_zero() and residual.known_below <= -(prec - 2 * ell - 4)
    return {
        "spec": spec.to_json(),
        "prec": prec,
        "passed": bool(passed),
        "residual_known_below": residual.known_below,
        "residual_valuation": residual.upper_bound,
        "rho_head": rho.items()[:8],
    }


def nullspace(field: FieldDesc, M: np.ndarray) -> list:
    """Basis of {v : M v = 0} over F_q by exact row reduction."""
    M = np.array(M, dtype=np.int64)
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if not len(nz):
            continue
        k = r + nz[0]
        if k != r:
            M[[r, k]] = M[[k, r]]
        M[r] = field.vmul(field.inv(int(M[r, c])), M[r])
        others = np.flatnonzero(M[:, c])
        others = others[others != r]
        if len(others):
            M[others] = field.vsub(M[others], field._mul[M[others, c][:, None], M[r][None, :]])
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for row, pc in enumerate(pivots):
            v[pc] = field.neg(int(M[row, f]))
        basis.append(v)
    return basis


@dataclass(frozen=True)
class RelationCandidate:
    """A_0 θ^r + A_1 θ + B_1 = 0, i.e. θ^r + A θ + B = 0 with A = A_1/A_0, B = B_1/A_0."""

    A0: Poly
    A1: Poly
    B1: Poly
    r: int
    residual_valuation: float
    degree_bound: int
    nullity: int

    @property
    def A(self) -> tuple:
        return (self.A1, self.A0)

    @property
    def B(self) -> tuple:
        return (self.B1, self.A0)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "A": {"num": self.A1.to_list(), "den": self.A0.to_list()},
            "B": {"num": self.B1.to_list(), "den": self.A0.to_list()},
            "residual_valuation": self.residual_valuation,
            "degree_bound": self.degree_bound,
            "nullity": self.nullity,
        }


def default_degree_bound(ell: int, r: int) -> int:
    """3ℓ + r + 1: the r = 2 relation needs degree up to 3ℓ + 3."""
    return 3 * ell + r + 1


def validate_relation(theta: LaurentSeries, A0: Poly, A1: Poly, B1: Poly, r: int) -> LaurentSeries:
    """Residual A_0 θ^r + A_1 θ + B_1 recomputed from scratch."""
    return theta.frobenius(r) * A0 + theta * A1 + B1


def frobenius_affine_search(theta: LaurentSeries, r: int, degree_bound: int):
    """Look for A_0 θ^r + A_1 θ + B_1 = 0 with all degrees <= degree_bound.

    Matches coefficients on the known range of θ and solves the homogeneous
    system exactly over F_q.  Returns a :class:`RelationCandidate` (made
    primitive, A_0 monic) or None when only relations with A_0 = 0 exist.
    """
    if r < 2:
        raise ValueError("r must be >= 2")
    F = theta.field
    D = degree_bound
    if D < 0:
        raise ValueError("degree_bound must be >= 0")
    need = 4 * D + 2 * r * D
    if theta.precision < need:
        raise PrecisionError(f"θ needs at least {need} known coefficients, has {theta.precision}")
    theta_r = theta.frobenius(r)
    hi = D + max(theta.upper_bound, theta_r.upper_bound, 0)
    lo = D + max(theta.known_below, theta_r.known_below)
    cols = []
    for base in (theta_r, theta):
        for k in range(D + 1):
            cols.append(base.shift(k).grid(hi, lo))
    for k in range(D + 1):
        cols.append(LaurentSeries.monomial(F, 1, k).grid(hi, lo))
    M = np.array(cols, dtype=np.int64).T
    basis = nullspace(F, M)
    best = None
    for v in basis:
        A0 = Poly(F, v[: D + 1])
        if A0.is_zero():
            continue
        A1 = Poly(F, v[D + 1 : 2 * D + 2])
        B1 = Poly(F, v[2 * D + 2 :])
        g = poly_gcd(poly_gcd(A0, A1), B1)
        A0, A1, B1 = A0 // g, A1 // g, B1 // g
        c = A0.lc.inverse()
        A0, A1, B1 = A0.scale(c), A1.scale(c), B1.scale(c)
        res = validate_relation(theta, A0, A1, B1, r)
        key = (A0.degree, res.upper_bound)
        if best is None or key < best[0]:
            best = (key, A0, A1, B1, res.upper_bound)
    if best is None:
        return None
    _, A0, A1, B1, resv = best
    return RelationCandidate(A0, A1, B1, r, resv, D, len(basis))


@dataclass(frozen=True)
class KernelReport:
    """Distinct p-kernel subsequence prefixes up to a given depth.

    ``class_counts[k]`` is the number of classes among all subsequences
    n -> s(p^j n + i) with j <= k.  Subsequences are compared on their common
    index range only; ``truncated`` is set when the shortest one compared is
    below ``min_length`` terms, i.e. the prefix limits the comparison.
    """

    p: int
    depth: int
    prefix_length: int
    classes: int
    class_counts: tuple
    min_compare_length: int
    truncated: bool

    def stable_from(self, k: int) -> bool:
        """True when the class count no longer changes from depth k on."""
        return len(set(self.class_counts[k:])) == 1

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "depth": self.depth,
            "prefix_length": self.prefix_length,
            "classes": self.classes,
            "class_counts": list(self.class_counts),
            "min_compare_length": self.min_compare_length,
            "truncated": self.truncated,
        }


def pkernel_explore(seq: Sequence, p: int, depth: int, *, min_length: int = 32) -> KernelReport:
    """Count p-kernel classes of ``seq`` (indexed from 0) up to ``depth``.

    For the λ stream pass s(n) = λ_(n+1); a shift of index does not change
    whether a sequence is automatic.
    """
    values = np.array([int(v) for v in seq], dtype=np.int64)
    L = len(values)
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if p**depth > L:
        raise ValueError(f"prefix of length {L} is too short for depth {depth} (needs {p**depth})")
    reps: list = []
    counts = []
    shortest = L
    for k in range(depth + 1):
        step = p**k
        for j in range(step):
            sub = values[j::step]
            shortest = min(shortest, len(sub))
            for rep in reps:
                n = min(len(rep), len(sub))
                if np.array_equal(rep[:n], sub[:n]):
                    break
            else:
                reps.append(sub)
        counts.append(len(reps))
    return KernelReport(
        p=p,
        depth=depth,
        prefix_length=L,
        classes=counts[-1],
        class_counts=tuple(counts),
        min_compare_length=int(shortest),
        truncated=shortest < min_length,
    )
