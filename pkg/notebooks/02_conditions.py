# %% [markdown]
# # Tree conditions on the example families
#
# The comb keeps the capacity condition bounded while the weak simple
# condition blows up at `z0`: every tooth tip has an unobstructed view of it.

# %%
import math

from treecap.conditions import check_all, weak_simple_at
from treecap.families import CantorSpec, CombSpec, gen_cantor, gen_comb

Z = gen_comb(CombSpec(10, 100, 100))
z0 = Z.nodes[0]
print("weak simple at z0:", weak_simple_at(z0, Z))
print("sum form:        ", 10 * math.fsum(1 / (110 + n) for n in range(1, 101)))
for r in check_all(Z):
    print(r.kind, r.best_constant)

# %% [markdown]
# Growing the comb with `N = b = depth0^1.5` makes `d(z0) Cap` grow too.

# %%
from treecap.capacity import cap_recursive

for d0 in (16, 25, 36):
    N = round(d0 ** 1.5)
    Z = gen_comb(CombSpec(d0, N, N))
    z0 = Z.nodes[0]
    print(d0, N, d0 * cap_recursive(z0, [w for w in Z if w != z0]))

# %% [markdown]
# Cantor sequences satisfy everything with modest constants.

# %%
for N in (2, 3, 4, 5):
    Z = gen_cantor(CantorSpec(2, 4, N))
    print(N, {r.kind: round(float(r.best_constant), 4) for r in check_all(Z)})
