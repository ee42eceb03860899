# %% [markdown]
# # Interpolating with disjointly supported pieces
#
# Each point gets a potential `K_z` equal to 1 at `z`, 0 at the other
# points and at one cut per landing segment.  Supports never overlap, so
# any data is interpolated exactly and the energy adds up term by term.

# %%
import random

from treecap.dirichlet import b2_norm_sq
from treecap.families import CantorSpec, gen_cantor
from treecap.interpolate import build_disjoint_family, interpolate_family

Z = gen_cantor(CantorSpec(2, 4, 4))
F = build_disjoint_family(Z)
print("norm constant C':", F.norm_constant)
print("stopping constant:", F.stopping_constant)

rng = random.Random(0)
xi = {z: rng.uniform(-1, 1) for z in Z}
f = interpolate_family(F, xi)
print(max(abs(f[z] - xi[z]) for z in Z))
print(b2_norm_sq(f), sum(xi[z] ** 2 * F.norm_sq[z] for z in Z))

# %% [markdown]
# A sequence where no disjoint family reaches the `2 gamma` stopping bound:
# a deep point below a long stem and a side point branching halfway down.
# Any admissible `K_w` has to climb from 0 to 1 on its own segment, which
# costs more than `gamma(w, Z)` allows.

# %%
from treecap.tree import TreeSeq

z1 = "0" * 100
w = "0" * 49 + "1" + "0" * 10
F = build_disjoint_family(TreeSeq.from_nodes([z1, w]))
for z in (z1, w):
    print(len(z) + 1, F.stopping_max[z], 2 * F.gamma[z])

# %% [markdown]
# The ramp interpolant at a single point, and its constant on Cantor data.

# %%
from treecap.interpolate import weaksim_interpolant

Z = gen_cantor(CantorSpec(2, 6, 3))
print(max(weaksim_interpolant(z, Z).constant for z in Z))
