"""Command-line front end.

    hqcf generate --s 2 --t 1 --ell 1 --lambdas 1 --eps 2 2 --n 6
    hqcf verify   --s 2 --t 2 --ell 3 --lambdas 1 2 3 --eps 1 3 --n 200
    hqcf suite    --trials 200 --seed 42
    hqcf analyze  --s 2 --t 1 --ell 1 --lambdas 1 --eps 2 2 --depth 8

Field elements are given by their integer index (see :mod:`hqcf.gf`).
Reports are deterministic functions of the arguments.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import checks
from .autoseq import (
    default_degree_bound,
    frobenius_affine_search,
    pkernel_explore,
    theta_r2_closed_form_check,
    theta_series,
)
from .contfrac import cf_expand, continuants, periodicity_detect
from .gf import make_field
from .hyperquad import (
    HyperquadSpec,
    SpecError,
    build_equation_E,
    default_precision,
    lemma1_closed_form_check,
    lemma1_identity_check,
    root_fixed_point,
    theorem_lambda_stream,
    verify_root,
)
from .polyser import Poly

SCHEMA = 1

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_PRECISION = 3


@dataclass
class RunConfig:
    command: str
    s: int = 1
    t: int = 1
    ell: int | None = None
    lambdas: list = field(default_factory=lambda: [1])
    eps: list = field(default_factory=lambda: [1, 1])
    n: int = 20
    prec: int | None = None
    seed: int = 0
    trials: int = 100
    depth: int = 8
    degree_bound: int | None = None
    self_test_fail: bool = False
    format: str = "text"
    out: str | None = None

    def spec(self) -> HyperquadSpec:
        if self.ell is not None and self.ell != len(self.lambdas):
            raise SpecError(f"--ell {self.ell} but {len(self.lambdas)} lambdas given")
        if len(self.eps) != 2:
            raise SpecError("--eps takes exactly two values")
        return HyperquadSpec.from_indices(self.s, self.t, self.lambdas, self.eps[0], self.eps[1])

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("out")
        d.pop("format")
        return d


def _jsonable(obj):
    if isinstance(obj, float):
        if math.isinf(obj):
            return "-inf" if obj < 0 else "inf"
        return obj
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


# -- commands ------------------------------------------------------------------


def cmd_generate(cfg: RunConfig) -> tuple[dict, int]:
    spec = cfg.spec()
    lams = theorem_lambda_stream(spec, cfg.n)
    T = Poly.T(spec.field)
    quotients = [T.scale(lam) for lam in lams]
    eq = build_equation_E(spec)
    period = periodicity_detect(quotients) if cfg.n >= 4 else None
    result = {
        "spec": spec.to_json(),
        "lambdas": [lam.value for lam in lams],
        "quotients": [q.to_list() for q in quotients],
        "equation": eq.to_json(),
        "equation_text": repr(eq),
        "periodicity": list(period) if period else None,
    }
    return result, EXIT_OK


def cmd_verify(cfg: RunConfig) -> tuple[dict, int]:
    spec = cfg.spec()
    N = cfg.n
    prec = cfg.prec if cfg.prec is not None else default_precision(N, spec)
    alpha = root_fixed_point(spec, prec)
    cf = cf_expand(alpha, N)
    lams = theorem_lambda_stream(spec, N)
    T = Poly.T(spec.field)
    mismatches = [
        i + 1 for i, (a, lam) in enumerate(zip(cf.quotients, lams)) if a != T.scale(lam)
    ]
    eq = build_equation_E(spec)
    tab = continuants([T.scale(lam) for lam in lams])
    n_res = min(N, 100)
    residuals = [eq.residual_at(tab.x[n], tab.y[n]) for n in range(1, n_res + 1)]
    tail = residuals[4:]
    decreasing = all(b < a for a, b in zip(tail, tail[1:]))
    root_res = verify_root(alpha, eq)
    certified = len(cf)
    if mismatches:
        status, code = "mismatch", EXIT_MISMATCH
    elif certified < N:
        status, code = "precision_exhausted", EXIT_PRECISION
    else:
        status, code = "match", EXIT_OK
    result = {
        "spec": spec.to_json(),
        "prec": prec,
        "requested": N,
        "certified": certified,
        "matched": certified - len(mismatches),
        "mismatches": mismatches,
        "status": status,
        "root_known_below": alpha.known_below,
        "root_residual": root_res._asdict(),
        "convergent_residual_valuations": residuals,
        "residuals_strictly_decreasing_from_5": decreasing,
    }
    return result, code


def cmd_suite(cfg: RunConfig) -> tuple[dict, int]:
    lemma1 = []
    for p in (2, 3, 5, 7):
        for t in (1, 2, 3):
            rep = lemma1_closed_form_check(p, t)
            if cfg.self_test_fail and (p, t) == (2, 1):
                # perturbed reference: T + 1 instead of T
                rep["closed_form"] = [1] + rep["closed_form"][1:]
                rep["passed"] = rep["F_r_minus_1"] == rep["closed_form"]
            lemma1.append({k: rep[k] for k in ("p", "t", "r", "passed")})
    identity = [lemma1_identity_check(50, p) for p in (2, 3, 5, 7)]
    lemma2 = checks.lemma2_trials(cfg.trials, cfg.seed)
    fields = [make_field(2, s) for s in (1, 2, 3)]
    inv = [checks.involution_check(F) for F in fields]
    scaling = [checks.continuant_scaling_check(F) for F in fields]
    fib = [checks.fib_continuant_check(20, p) for p in (2, 3)]
    suites = {
        "lemma1_closed_form": {"passed": all(r["passed"] for r in lemma1), "cases": lemma1},
        "lemma1_identity": {"passed": all(r["passed"] for r in identity), "cases": identity},
        "lemma2": lemma2,
        "involution": {"passed": all(r["passed"] for r in inv), "cases": inv},
        "continuant_scaling": {"passed": all(r["passed"] for r in scaling), "cases": scaling},
        "fib_continuant": {"passed": all(r["passed"] for r in fib), "cases": fib},
    }
    ok = all(s["passed"] for s in suites.values())
    return {"passed": ok, "suites": suites}, EXIT_OK if ok else EXIT_MISMATCH


def cmd_analyze(cfg: RunConfig) -> tuple[dict, int]:
    spec = cfg.spec()
    r = spec.r
    D = cfg.degree_bound if cfg.degree_bound is not None else default_degree_bound(spec.ell, r)
    prefix = max(2 ** (cfg.depth + 6), cfg.n)
    lams = theorem_lambda_stream(spec, prefix)
    n_theta = max(cfg.n, 4 * D + 2 * r * D + 16)
    theta = theta_series(lams[:n_theta])
    result = {"spec": spec.to_json(), "status": "proved case (r = 2)" if r == 2 else "conjecture evidence"}
    result["theta_head"] = theta.items()[:16]
    if r == 2:
        ck = theta_r2_closed_form_check(spec, max(cfg.n, 200))
        result["r2_closed_form"] = {k: ck[k] for k in ("passed", "prec", "residual_known_below")}
    rel = frobenius_affine_search(theta, r, D)
    result["relation_search"] = {
        "degree_bound": D,
        "theta_coefficients": n_theta,
        "found": rel is not None,
        "candidate": rel.to_json() if rel else None,
        "label": "proved case" if r == 2 else "conjecture evidence",
    }
    kernel = pkernel_explore([lam.value for lam in lams[:prefix]], 2, cfg.depth)
    kj = kernel.to_json()
    if cfg.depth >= 8:
        kj["stable_depth_6_to_8"] = kernel.class_counts[6] == kernel.class_counts[7] == kernel.class_counts[8]
    kj["label"] = "evidence only (finite prefix)"
    result["kernel"] = kj
    T = Poly.T(spec.field)
    head = [T.scale(lam) for lam in lams[: max(cfg.n, 4)]]
    period = periodicity_detect(head)
    result["periodicity"] = list(period) if period else None
    code = EXIT_OK
    if r == 2 and (not result["r2_closed_form"]["passed"] or rel is None):
        code = EXIT_MISMATCH
    return result, code


COMMANDS = {
    "generate": cmd_generate,
    "verify": cmd_verify,
    "suite": cmd_suite,
    "analyze": cmd_analyze,
}


# -- rendering -------------------------------------------------------------------


def render(cfg: RunConfig, result: dict, code: int) -> str:
    report = {"schema": SCHEMA, "command": cfg.command, "config": cfg.echo(), "exit_status": code, "result": result}
    report = _jsonable(report)
    if cfg.format == "json":
        return json.dumps(report, indent=2) + "\n"
    lines = [f"hqcf {cfg.command} (schema {SCHEMA})"]
    lines.append("config: " + json.dumps(report["config"]))
    _render_text(report["result"], lines, "")
    lines.append(f"exit status: {code}")
    return "\n".join(lines) + "\n"


def _render_text(obj, lines, indent):
    for k, v in obj.items():
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            _render_text(v, lines, indent + "  ")
        elif isinstance(v, list) and len(v) > 24:
            lines.append(f"{indent}{k}: {json.dumps(v[:24])[:-1]}, ... ({len(v)} items)]")
        else:
            lines.append(f"{indent}{k}: {json.dumps(v)}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hqcf", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--s", type=int, default=1, help="q = 2^s")
    common.add_argument("--t", type=int, default=1, help="r = 2^t")
    common.add_argument("--ell", type=int, default=None)
    common.add_argument("--lambdas", type=int, nargs="+", default=[1])
    common.add_argument("--eps", type=int, nargs=2, default=[1, 1])
    common.add_argument("--n", type=int, default=20)
    common.add_argument("--prec", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--depth", type=int, default=8)
    common.add_argument("--degree-bound", type=int, default=None)
    common.add_argument("--self-test-fail", action="store_true")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", default=None)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**{k.replace("-", "_"): v for k, v in vars(args).items()})
    try:
        result, code = COMMANDS[cfg.command](cfg)
    except SpecError as exc:
        print(f"hqcf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(cfg, result, code)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
