# %% [markdown]
# # Finite fields, series, and the golden ratio of F_2(T)
#
# Elements of F_q are small integers: the base-p digits of the index are the
# coordinates in the power basis of the field modulus.  In F_4 the generator
# g is 2 and g + 1 is 3.

# %%
from hqcf import LaurentSeries, Poly, cf_expand, continuants, make_field, series_from_rational

F4 = make_field(2, 2)
g = F4.gen
print("modulus of F_4:", F4.modulus)
print("g*g =", g * g, " g^3 =", g**3)
print("vectorised product table row for g:", F4._mul[2])

# %% [markdown]
# Polynomials in T and series in 1/T.  A series carries the exponent below
# which nothing is known, so every result states its own precision.

# %%
F2 = make_field(2)
T = Poly.T(F2)
one = Poly.const(F2, 1)
s = series_from_rational(T, T + one, 10)
print(s)
print("known below exponent", s.known_below)

# %% [markdown]
# ω = [T, T, T, ...] satisfies ω² + Tω + 1 = 0.  The convergents are
# quotients of consecutive F_n polynomials.

# %%
tab = continuants([T] * 30)
omega = series_from_rational(tab.x[30], tab.y[30], 40)
print("ω ≈", omega)
check = omega * omega + omega * LaurentSeries.from_poly(T) + LaurentSeries.from_poly(one)
print("ω² + Tω + 1 is zero to precision:", check.is_zero(), "known below", check.known_below)

# %% [markdown]
# Expanding the 40-coefficient series recovers only the quotients the
# precision can certify, then stops and says why.

# %%
cf = cf_expand(omega, 100)
print(len(cf), "quotients, stop reason:", cf.stop)
