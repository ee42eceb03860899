# %% [markdown]
# # The comb: capacity as a continued fraction
#
# A stem hangs below `z0`; tooth `n` leaves the stem at `w_n` and ends `b`
# edges later at `z_n`.  Seen from `z0`, each tooth adds one step of
# `phi(x) = 1 / (1 + 1/(beta + x))` with `beta = 1/b`.

# %%
from fractions import Fraction

from treecap.capacity import cap_condenser, cap_recursive
from treecap.families import CombSpec, delta_n, gamma_inf, gamma_n, gen_comb

for N in (1, 2, 5, 20):
    Z = gen_comb(CombSpec(depth0=6, N=N, b=4))
    z0 = Z.nodes[0]
    rest = [w for w in Z if w != z0]
    print(N, cap_recursive(z0, rest, exact=True), gamma_n(Fraction(1, 4), N))

# %% [markdown]
# The iterates increase to the fixed point and sit above the affine lower
# bound `delta_N`.

# %%
beta = 0.01
for N in (10, 100, 1000):
    print(N, delta_n(beta, N), gamma_n(beta, N), gamma_inf(beta))

# %% [markdown]
# The solver and the series-parallel recursion agree on the large comb.

# %%
Z = gen_comb(CombSpec(10, 100, 100))
z0 = Z.nodes[0]
rest = [w for w in Z if w != z0]
print(cap_recursive(z0, rest), cap_condenser({z0}, rest, Z.hull).cap)
