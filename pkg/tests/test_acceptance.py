"""Acceptance criteria, each at its stated tolerance.

Every test prints one ``PASS``/``FAIL``/``REPORT`` line.  Run with

    pytest tests/test_acceptance.py -v -s

or directly as ``python3 tests/test_acceptance.py`` for just the summary lines.
"""

from __future__ import annotations

import time

import numpy as np
import pytest

from hqcf import cli
from hqcf.autoseq import (
    default_degree_bound,
    frobenius_affine_search,
    theta_r2_closed_form_check,
    theta_series,
    validate_relation,
)
from hqcf.checks import lemma2_trials
from hqcf.contfrac import cf_expand, continuants, periodicity_detect
from hqcf.hyperquad import (
    HyperquadSpec,
    build_equation_E,
    default_precision,
    lemma1_closed_form_check,
    lemma1_identity_check,
    root_fixed_point,
    theorem_lambda_stream,
)
from hqcf.polyser import LaurentSeries, Poly

N_QUOTIENTS = 200
SPECS_PER_CELL = 25


def report(num, ok, detail):
    tag = "PASS" if ok is True else "FAIL" if ok is False else "REPORT"
    line = f"[acceptance {num}] {tag}: {detail}"
    print(line)
    return line


def criterion1_specs():
    for s in (1, 2, 3):
        for t in (1, 2, 3):
            for ell in (1, 2, 3, 4):
                for k in range(SPECS_PER_CELL):
                    rng = np.random.default_rng([s, t, ell, k])
                    yield HyperquadSpec.random(s, t, ell, rng)


_sweep_cache = {}


def oracle_sweep():
    """Criteria 1 and 5 share one pass over the 900 specs."""
    if _sweep_cache:
        return _sweep_cache
    start = time.perf_counter()
    mismatched, not_decreasing, count = [], [], 0
    for spec in criterion1_specs():
        count += 1
        lams = theorem_lambda_stream(spec, N_QUOTIENTS)
        T = Poly.T(spec.field)
        expected = [T.scale(lam) for lam in lams]
        alpha = root_fixed_point(spec, default_precision(N_QUOTIENTS, spec))
        cf = cf_expand(alpha, N_QUOTIENTS)
        if list(cf.quotients) != expected:
            mismatched.append(spec.to_json())
        eq = build_equation_E(spec)
        tab = continuants(expected[:100])
        vals = [eq.residual_at(tab.x[n], tab.y[n]) for n in range(5, 101)]
        if not all(b < a for a, b in zip(vals, vals[1:])):
            not_decreasing.append(spec.to_json())
    _sweep_cache.update(
        count=count,
        mismatched=mismatched,
        not_decreasing=not_decreasing,
        seconds=time.perf_counter() - start,
    )
    return _sweep_cache


def check_1():
    sw = oracle_sweep()
    ok = sw["count"] == 900 and not sw["mismatched"] and sw["seconds"] < 300
    return ok, (
        f"oracle equivalence, {sw['count']} specs x {N_QUOTIENTS} quotients, "
        f"{len(sw['mismatched'])} mismatching specs, {sw['seconds']:.1f}s (limit 300s)"
    )


def check_2():
    cases = [(2, t) for t in (1, 2, 3)] + [(p, t) for p in (3, 5, 7) for t in (1, 2)]
    bad = [(p, t) for p, t in cases if not lemma1_closed_form_check(p, t)["passed"]]
    return not bad, f"closed forms of F_(r-1), {len(cases)} cases, failures {bad}"


def check_3():
    reps = [lemma1_identity_check(50, p) for p in (2, 3)]
    bad = [(r["p"], r["failures"]) for r in reps if not r["passed"]]
    return not bad, f"ring identity for n <= 50, p in (2, 3), failures {bad}"


def check_4():
    rep = lemma2_trials(500, seed=20240)
    return rep["passed"], (
        f"500 random instances, {len(rep['failures'])} failures, "
        f"min agreement {rep['min_agreed_coefficients']} coefficients (tail precision 40)"
    )


def check_5():
    sw = oracle_sweep()
    ok = sw["count"] == 900 and not sw["not_decreasing"]
    return ok, (
        f"residual valuation strictly decreasing on n = 5..100 for "
        f"{sw['count'] - len(sw['not_decreasing'])}/{sw['count']} specs"
    )


def check_6():
    bad = []
    cases = 0
    for t in (1, 2, 3):
        for ell in (1, 2, 3, 4):
            cases += 1
            spec = HyperquadSpec.from_indices(1, t, [1] * ell, 1, 1)
            F = spec.field
            T = Poly.T(F)
            lams = theorem_lambda_stream(spec, 100)
            quotients = [T.scale(lam) for lam in lams]
            alpha = root_fixed_point(spec, 120)
            # the quadratic is known as far as α^2 and Tα are: down to top + known_below
            quad = alpha * alpha + alpha * LaurentSeries.from_poly(T) + LaurentSeries.monomial(F, 1, 0)
            ok = (
                all(lam.value == 1 for lam in lams)
                and periodicity_detect(quotients) == (0, 1)
                and quad.is_zero()
                and quad.known_below <= alpha.top + alpha.known_below
            )
            if not ok:
                bad.append((t, ell))
    return not bad, f"q = 2 degenerate case, {cases} specs, failures {bad}"


def check_7():
    bad = []
    for k in range(50):
        s = (1, 2, 3)[k % 3]
        rng = np.random.default_rng([7, k])
        ell = int(rng.integers(1, 5))
        spec = HyperquadSpec.random(s, 1, ell, rng)
        closed = theta_r2_closed_form_check(spec, 200)
        D = default_degree_bound(spec.ell, 2)
        theta = theta_series(theorem_lambda_stream(spec, 4 * D + 4 * D + 16))
        rel = frobenius_affine_search(theta, 2, D)
        # an independent recomputation must vanish on every coefficient that
        # the known part of θ determines
        exhausted = False
        if rel is not None:
            res = validate_relation(theta, rel.A0, rel.A1, rel.B1, 2)
            exhausted = res.is_zero() and res.known_below <= theta.known_below + D
        if not (closed["passed"] and exhausted):
            bad.append(spec.to_json())
    return not bad, f"r = 2 closed form and relation search, 50 specs over F_2, F_4, F_8, failures {len(bad)}"


EXPLORE_SPECS = [
    (2, 2, [1], 2, 2),
    (2, 2, [3, 1], 2, 3),
    (3, 2, [1, 5], 3, 6),
    (1, 3, [1], 1, 1),
    (2, 3, [2], 3, 2),
    (3, 3, [4, 2, 7], 5, 1),
]


def check_8():
    rows = []
    for s, t, lams, e1, e2 in EXPLORE_SPECS:
        cfg = cli.RunConfig("analyze", s=s, t=t, lambdas=lams, eps=[e1, e2], depth=8)
        result, _ = cli.cmd_analyze(cfg)
        kern = result["kernel"]
        rel = result["relation_search"]
        assert rel["label"] == "conjecture evidence"
        assert kern["label"].startswith("evidence")
        assert kern["prefix_length"] == 2**14
        rows.append(
            f"(q={2**s}, r={2**t}, lambdas={lams}, eps=({e1},{e2})) relation "
            f"{'found' if rel['found'] else 'none'} at D={rel['degree_bound']}, "
            f"kernel counts {kern['class_counts']}, stable 6..8: {kern['stable_depth_6_to_8']}"
        )
    return None, "r in (4, 8) exploration (evidence only)\n    " + "\n    ".join(rows)


def check_9(tmp_dir):
    argvs = [
        ["generate", "--s", "2", "--t", "1", "--lambdas", "1", "--eps", "2", "2", "--n", "6"],
        ["verify", "--s", "2", "--t", "2", "--lambdas", "1", "2", "3", "--eps", "1", "3", "--n", "200"],
        ["suite", "--trials", "1000", "--seed", "42"],
        ["analyze", "--s", "2", "--t", "2", "--lambdas", "3", "1", "--eps", "2", "3", "--format", "json"],
    ]
    bad = []
    for argv in argvs:
        outs = []
        for rep in range(2):
            path = f"{tmp_dir}/{argv[0]}-{rep}.out"
            cli.main(argv + ["--out", path])
            with open(path, "rb") as fh:
                outs.append(fh.read())
        if outs[0] != outs[1] or not outs[0]:
            bad.append(argv[0])
    return not bad, f"byte-identical reruns of {len(argvs)} commands, differing: {bad}"


@pytest.fixture
def show(capsys):
    def _show(num, ok, detail):
        with capsys.disabled():
            print()
            report(num, ok, detail)

    return _show


@pytest.mark.slow
def test_criterion_1_oracle_equivalence(show):
    ok, detail = check_1()
    show(1, ok, detail)
    assert ok, detail


def test_criterion_2_lemma1_closed_forms(show):
    ok, detail = check_2()
    show(2, ok, detail)
    assert ok, detail


def test_criterion_3_lemma1_ring_identity(show):
    ok, detail = check_3()
    show(3, ok, detail)
    assert ok, detail


def test_criterion_4_lemma2_random_instances(show):
    ok, detail = check_4()
    show(4, ok, detail)
    assert ok, detail


@pytest.mark.slow
def test_criterion_5_residual_decay(show):
    ok, detail = check_5()
    show(5, ok, detail)
    assert ok, detail


def test_criterion_6_degenerate_q2(show):
    ok, detail = check_6()
    show(6, ok, detail)
    assert ok, detail


def test_criterion_7_r2_closed_form_and_relation(show):
    ok, detail = check_7()
    show(7, ok, detail)
    assert ok, detail


def test_criterion_8_conjecture_exploration(show):
    ok, detail = check_8()
    show(8, ok, detail)


def test_criterion_9_determinism(show, tmp_path):
    ok, detail = check_9(tmp_path)
    show(9, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    import tempfile

    with tempfile.TemporaryDirectory() as d:
        for num, fn in enumerate([check_1, check_2, check_3, check_4, check_5, check_6, check_7, check_8], 1):
            report(num, *fn())
        report(9, *check_9(d))
