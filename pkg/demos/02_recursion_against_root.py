# %% [markdown]
# # The partial quotients of a hyperquadratic power series
#
# A family member is fixed by q = 2^s, r = 2^t and the units
# (λ_1..λ_ℓ, ε_1, ε_2).  The leading coefficients λ_n of every later partial
# quotient follow from a short recursion; here we compare that recursion
# against the continued fraction expansion of the actual root.

# %%
import numpy as np

from hqcf import (
    HyperquadSpec,
    build_equation_E,
    cf_expand,
    root_fixed_point,
    theorem_lambda_stream,
    verify_root,
)
from hqcf.hyperquad import default_precision

spec = HyperquadSpec.from_indices(3, 2, [1, 5], 3, 6)  # q = 8, r = 4, ℓ = 2
eq = build_equation_E(spec)
print("equation:", eq, "= 0")

# %% [markdown]
# The recursion, evaluated lazily.

# %%
lams = theorem_lambda_stream(spec, 40)
print([lam.value for lam in lams])

# %% [markdown]
# The root, computed independently by iterating
# β -> [λ_1 T, ..., λ_ℓ T, (β^r - Q) / P] until successive iterates agree.

# %%
N = 200
alpha = root_fixed_point(spec, default_precision(N, spec))
print("root known to", alpha.precision, "coefficients")
print("residual:", verify_root(alpha, eq))

cf = cf_expand(alpha, N)
got = [a.lc.value for a in cf.quotients]
want = [lam.value for lam in theorem_lambda_stream(spec, N)]
print("all", N, "quotients have the form λT:", all(a.degree == 1 and a[0].value == 0 for a in cf.quotients))
print("recursion matches the expansion:", got == want)

# %% [markdown]
# A small sweep over random members.

# %%
rng = np.random.default_rng(0)
bad = 0
for _ in range(20):
    sp = HyperquadSpec.random(int(rng.integers(1, 4)), int(rng.integers(1, 4)), int(rng.integers(1, 5)), rng)
    a = root_fixed_point(sp, default_precision(100, sp))
    bad += [q.lc for q in cf_expand(a, 100).quotients] != theorem_lambda_stream(sp, 100)
print("mismatching specs:", bad)
