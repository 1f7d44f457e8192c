# %% [markdown]
# # Is the coefficient sequence automatic?
#
# θ = Σ λ_i T^-i is algebraic over F_q(T) exactly when (λ_i) is 2-automatic.
# For r = 2 there is an explicit description of θ; for larger r we can only
# collect evidence: a relation θ^r + Aθ + B = 0 found on a finite prefix, and
# the number of distinct 2-kernel subsequences at growing depth.

# %%
from hqcf import (
    HyperquadSpec,
    frobenius_affine_search,
    pkernel_explore,
    theorem_lambda_stream,
    theta_r2_closed_form_check,
    theta_series,
)
from hqcf.autoseq import default_degree_bound

spec = HyperquadSpec.from_indices(2, 1, [3, 1], 2, 3)  # r = 2
rep = theta_r2_closed_form_check(spec, 200)
print("Artin-Schreier residual vanishes:", rep["passed"], "known below", rep["residual_known_below"])

D = default_degree_bound(spec.ell, spec.r)
theta = theta_series(theorem_lambda_stream(spec, 8 * D + 16))
rel = frobenius_affine_search(theta, 2, D)
print("relation θ^2 + Aθ + B = 0 with")
print(f"  A = ({rel.A1}) / ({rel.A0})")
print(f"  B = ({rel.B1}) / ({rel.A0})")

# %% [markdown]
# r = 4 and r = 8: evidence only.

# %%
for s, t, lams, e1, e2 in [(2, 2, [1], 2, 2), (3, 2, [1, 5], 3, 6), (2, 3, [2], 3, 2)]:
    sp = HyperquadSpec.from_indices(s, t, lams, e1, e2)
    D = default_degree_bound(sp.ell, sp.r)
    stream = theorem_lambda_stream(sp, 2**14)
    theta = theta_series(stream[: 4 * D + 2 * sp.r * D + 16])
    rel = frobenius_affine_search(theta, sp.r, D)
    kern = pkernel_explore([lam.value for lam in stream], 2, 8)
    print(
        f"q={sp.field.q} r={sp.r}: relation {'found' if rel else 'not found'} (D={D}),",
        f"kernel classes by depth {kern.class_counts}",
    )
