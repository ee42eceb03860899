"""Interpolating families with disjointly supported building blocks.

Construction of the family (:func:`build_disjoint_family`)
-----------------------------------------------------------
The root is adjoined to ``Z`` as ``z_0`` and the remaining points are taken
in order of depth.  Each ``z`` lands on the hull of its predecessors at
``xi(z)``; the *landing segments* ``(xi(z), z]`` partition the edges of the
hull.  Every landing segment gets one cut point ``Q_z``, the first node ``y``
walking down from ``xi(z)`` with ``3 d(y, xi(z)) >= d(xi(z), z)``.

``K_z`` is the energy minimizer with ``K_z = 1`` at ``z`` and ``0`` at every
other point of ``Z`` and at every cut point.  Removing the pinned nodes cuts
the hull into pieces each touching at most one point of ``Z``, so ``K_z``
lives on the pieces next to ``z``: the ``K_z`` have pairwise disjoint
supports, interpolate the Kronecker data exactly and are harmonic off the
pinned nodes.  The parent side of a segment uses ``(xi(z), Q_z]``, the child
side ``(Q_z, z]``.
"""

from __future__ import annotations

import math
import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .capacity import cap_recursive
from .dirichlet import (EdgeFn, PotentialFn, b2_norm_sq, difference,
                        dirichlet_solve, edge_differences, harmonic_residual)
from .tree import (ROOT, NodeId, TreeSeq, depth, dist, geodesic,
                   is_stopping_region, order_key)


class SeparationError(ValueError):
    """The sequence is too tightly packed for a disjointly supported family."""


class KeyMismatchError(ValueError):
    pass


@dataclass
class LandingData:
    xi: dict[NodeId, NodeId]
    lengths: dict[NodeId, int]
    eta_lower_bound: float


def landing_points(Z: TreeSeq | Iterable[NodeId]) -> LandingData:
    """Landing point of each non-root point on the hull of the earlier ones.

    Points are processed in order of depth with the root adjoined as
    ``z_0``; ``xi(z)`` is the deepest node of ``[o, z]`` already covered.
    """
    nodes = sorted(Z, key=order_key)
    if not nodes:
        raise ValueError("landing points of an empty sequence")
    covered = {ROOT}
    xi, lengths = {}, {}
    for z in nodes:
        if z == ROOT:
            continue
        k = len(z)
        while z[:k] not in covered:
            k -= 1
        xi[z] = z[:k]
        lengths[z] = len(z) - k
        covered.update(z[:j] for j in range(k + 1, len(z) + 1))
    eta = min((Fraction(lengths[z], depth(z)) for z in xi), default=Fraction(0))
    return LandingData(xi, lengths, float(eta))


def cut_point(xi: NodeId, z: NodeId) -> NodeId:
    """First node ``y`` on ``[xi, z]`` with ``3 d(y, xi) >= d(xi, z)``."""
    L = len(z) - len(xi)
    return z[: len(xi) + -(-L // 3)]


@dataclass
class InterpolantFamily:
    """Disjointly supported ``K_z`` with ``K_z(w) = delta_{zw}`` on ``Z``.

    ``members[z]`` holds ``K_z`` on the nodes where it can be nonzero (plus
    the pinned nodes bounding them); it vanishes elsewhere on the tree.
    """

    sequence: TreeSeq
    root_adjoined: bool
    xi: dict[NodeId, NodeId]
    cuts: dict[NodeId, NodeId]
    members: dict[NodeId, PotentialFn] = field(repr=False)
    k: dict[NodeId, EdgeFn] = field(repr=False)
    gamma: dict[NodeId, float] = field(repr=False)
    norm_sq: dict[NodeId, float] = field(repr=False)
    stopping_max: dict[NodeId, float] = field(repr=False)
    short_landings: list[NodeId] = field(default_factory=list)

    @property
    def supports(self) -> dict[NodeId, frozenset]:
        return {z: frozenset(kz) for z, kz in self.k.items()}

    @property
    def norm_constant(self) -> float:
        """Smallest ``C'`` with ``||K_z||^2 <= C' gamma(z, Z)`` for every member."""
        return max(float(self.norm_sq[z] / self.gamma[z]) for z in self.members)

    @property
    def stopping_constant(self) -> float:
        """Largest ratio of an antichain sum of ``|k_z|`` to ``gamma(z, Z)``."""
        return max(float(self.stopping_max[z] / self.gamma[z]) for z in self.members)


def build_disjoint_family(Z: TreeSeq, exact: bool = False) -> InterpolantFamily:
    """Build the disjointly supported family described in the module docstring.

    ``gamma`` is measured on ``Z`` with the root adjoined, the setting in
    which the family is built (every ``K_z`` vanishes at the root).  Landing
    segments of length one cannot hold a cut; the landing point itself is
    pinned instead, which fails only when it is a point of ``Z``.
    """
    if len(Z) == 0:
        raise ValueError("empty sequence")
    root_adjoined = ROOT not in Z
    Zaug = Z.with_root()
    land = landing_points(Zaug)
    pts = Zaug.points

    cuts, short = {}, []
    for z, x in land.xi.items():
        L = land.lengths[z]
        if L < 3:
            short.append(z)
        if L >= 2:
            cuts[z] = cut_point(x, z)
        elif x in pts and not (x == ROOT and root_adjoined):
            raise SeparationError(
                f"{z!r} is a child of the sequence point {x!r}; "
                "no disjointly supported family exists")
        else:
            cuts[z] = x
    pins = set(pts) | set(cuts.values())

    hull = Zaug.hull
    comp = _free_components(hull, pins)
    members, ks, gam, norms, stops = {}, {}, {}, {}, {}
    one = Fraction(1) if exact else 1.0
    for z in Z:
        dom = {z}
        for n in _neighbours(z, hull):
            if n in pins:
                dom.add(n)
            else:
                nodes, bdry = comp[n]
                dom |= nodes
                dom |= bdry
        boundary = {p: (one if p == z else 0 * one) for p in dom if p in pins}
        K = dirichlet_solve(dom, boundary)
        kz = edge_differences(K)
        members[z] = K
        ks[z] = kz
        norms[z] = b2_norm_sq(K) if z == ROOT else _sum_sq(kz.values(), exact)
        others = [w for w in Zaug if w != z]
        gam[z] = cap_recursive(z, others, exact=exact)
        stops[z] = max_stopping_sum(kz)
    _check_disjoint(ks)
    return InterpolantFamily(Z, root_adjoined, land.xi, cuts, members, ks, gam,
                             norms, stops, sorted(short, key=order_key))


def _sum_sq(values, exact):
    values = list(values)
    if exact:
        return sum((v * v for v in values), Fraction(0))
    return math.fsum(v * v for v in values)


def _neighbours(x: NodeId, hull) -> list[NodeId]:
    out = [c for c in (x + "0", x + "1") if c in hull]
    if x:
        out.append(x[:-1])
    return out


def _free_components(hull, pins) -> dict[NodeId, tuple[frozenset, frozenset]]:
    """Map each free node to (its component, the pinned nodes bounding it)."""
    label: dict[NodeId, NodeId] = {}
    out = {}
    for x in sorted(hull, key=len):
        if x in pins or x in label:
            continue
        nodes, bdry, stack = {x}, set(), [x]
        label[x] = x
        while stack:
            v = stack.pop()
            for n in _neighbours(v, hull):
                if n in pins:
                    bdry.add(n)
                elif n not in label:
                    label[n] = x
                    nodes.add(n)
                    stack.append(n)
        entry = (frozenset(nodes), frozenset(bdry))
        for v in nodes:
            out[v] = entry
    return out


def _check_disjoint(ks: Mapping[NodeId, EdgeFn]) -> None:
    owner: dict[NodeId, NodeId] = {}
    for z, kz in ks.items():
        for x in kz:
            if x in owner:
                raise AssertionError(f"supports of K_{owner[x]!r} and K_{z!r} meet at {x!r}")
            owner[x] = z


def stopping_sum(k: Mapping[NodeId, float], S: Iterable[NodeId]):
    """``sum |k(x)|`` over a stopping region ``S``."""
    S = list(S)
    if not is_stopping_region(S):
        raise ValueError("not a stopping region")
    vals = [abs(k.get(x, 0)) for x in S]
    if any(isinstance(v, Fraction) for v in vals):
        return sum(vals, Fraction(0))
    return math.fsum(vals)


def _support_forest(support: Iterable[NodeId]) -> dict[NodeId, NodeId | None]:
    """Nearest strict ancestor of each support node within the support."""
    sup = set(support)
    parent = {}
    for x in sup:
        p = None
        for j in range(len(x) - 1, -1, -1):
            if x[:j] in sup:
                p = x[:j]
                break
        parent[x] = p
    return parent


def max_stopping_sum(k: Mapping[NodeId, float]):
    """Maximum of :func:`stopping_sum` over all stopping regions.

    The weights are nonnegative, so the maximum is attained on a maximal
    antichain; on a forest it follows from
    ``best(x) = max(|k(x)|, sum of best over the forest children of x)``.
    """
    parent = _support_forest(k)
    kids = defaultdict(list)
    roots = []
    for x, p in parent.items():
        (roots if p is None else kids[p]).append(x)
    best = {}
    for x in sorted(parent, key=len, reverse=True):
        below = sum((best[c] for c in kids[x]), 0 * abs(k[x]))
        best[x] = max(abs(k[x]), below)
    return sum((best[r] for r in roots), 0 * sum(abs(v) for v in k.values()))


def maximal_antichains(nodes: Iterable[NodeId]):
    """Every maximal antichain of a finite node set (exponential; small inputs only)."""
    parent = _support_forest(nodes)
    kids = defaultdict(list)
    roots = []
    for x, p in parent.items():
        (roots if p is None else kids[p]).append(x)

    def of(x):
        # a maximal antichain of the subtree at x is {x} or a combination over its children
        out = [[x]]
        if kids[x]:
            combos = [[]]
            for c in sorted(kids[x]):
                combos = [a + b for a in combos for b in of(c)]
            out.extend(combos)
        return out

    combos = [[]]
    for r in sorted(roots):
        combos = [a + b for a in combos for b in of(r)]
    return combos


def random_stopping_region(nodes: Iterable[NodeId], rng: random.Random) -> list[NodeId]:
    """A random maximal antichain of ``nodes``: flip a coin at each forest node."""
    parent = _support_forest(nodes)
    kids = defaultdict(list)
    roots = []
    for x, p in parent.items():
        (roots if p is None else kids[p]).append(x)
    out, stack = [], sorted(roots)
    while stack:
        x = stack.pop()
        if not kids[x] or rng.random() < 0.3:
            out.append(x)
        else:
            stack.extend(sorted(kids[x]))
    return out


def interpolate_family(family: InterpolantFamily, values: Mapping[NodeId, float]) -> PotentialFn:
    """``f = sum_j values[z_j] K_{z_j}`` on the hull of the sequence.

    The members have disjoint supports, so each node takes its value from at
    most one of them and ``f(z_j) = values[z_j]`` holds exactly.
    """
    if set(values) != set(family.members):
        raise KeyMismatchError("interpolation data must be keyed exactly by the sequence")
    zero = 0 * next(iter(values.values()), 0)
    f = {x: zero for x in family.sequence.with_root().hull}
    for z, K in family.members.items():
        c = values[z]
        for x, v in K.items():
            if v != 0:
                f[x] = c * v
    return f


@dataclass
class WeakSimInterpolant:
    """``f = Ih`` with ``f(z0) = 1``, ``f = 0`` on the rest of ``Z``, ``f(o) = 0``."""

    z0: NodeId
    f: PotentialFn = field(repr=False)
    h: EdgeFn = field(repr=False)
    energy: float
    constant: float
    stem_top: NodeId
    branch: str
    sep_constant: float
    landings: dict[NodeId, NodeId] = field(repr=False)
    violations: list[str] = field(default_factory=list)


def _exact_sep_constant(Z: TreeSeq) -> Fraction:
    return min(Fraction(dist(a, b), depth(a)) for a in Z for b in Z if a != b)


def weaksim_interpolant(z0: NodeId, Z: TreeSeq, sep_constant=None,
                        exact: bool = False) -> WeakSimInterpolant:
    """Explicit admissible function for ``gamma(z0, Z)`` built from ramps.

    A ramp rises from 0 to 1 along ``(w, z0]``.  If every other point of
    ``Z`` lies below ``z0`` then ``w = o``; otherwise ``w`` is the ancestor
    of ``z0`` with ``d(w, z0) = floor(c d(z0))`` (clamped to
    ``[1, d(z0) - 1]``), ``c`` being the separation constant.  Points of
    ``Z`` with an unobstructed view of ``z0`` are then visited by depth;
    each lands on the tree built so far at some ``xi`` and gets a linear
    ramp from ``f(xi)`` down to 0 along ``(xi, z]``.

    Problems with the hypotheses are listed in ``violations``; the
    construction always runs to the end.
    """
    if z0 not in Z:
        raise ValueError(f"{z0!r} is not a point of the sequence")
    if z0 == ROOT:
        raise ValueError("the root cannot be interpolated with f(o) = 0")
    violations = []
    one = Fraction(1) if exact else 1.0
    others = [v for v in Z if v != z0]
    if sep_constant is None:
        c = _exact_sep_constant(Z) if others else Fraction(1)
    else:
        c = Fraction(sep_constant)

    if all(v.startswith(z0) for v in others):
        branch, m = "shadow", len(z0)
    else:
        branch = "general"
        m = math.floor(c * depth(z0))
        m = min(max(m, 1), len(z0))
    w = z0[: len(z0) - m]

    F: dict[NodeId, float] = {}
    for j in range(m + 1):
        F[z0[: len(w) + j]] = one * j / m if exact else j / m
    for v in others:
        if v in F and F[v] != 0:
            violations.append(f"point {v!r} sits on the ramp below the stem top")

    pts = Z.points
    visible = [v for v in others if not any(x in pts for x in geodesic(z0, v)[1:-1])]
    landings = {}
    ratios = []
    for v in sorted(visible, key=order_key):
        if not v.startswith(w) or v == w or v in F:
            continue
        k = len(v)
        while v[:k] not in F:
            k -= 1
        xi = v[:k]
        L = len(v) - k
        landings[v] = xi
        ratios.append(Fraction(L, depth(v)))
        top = F[xi]
        for j in range(1, L + 1):
            F[v[: k + j]] = top * (L - j) / L
    if ratios and min(ratios) < c / 2:
        violations.append(
            f"landing ratio {float(min(ratios)):.4g} below half the separation "
            f"constant {float(c):.4g}")

    dom = sorted(Z.hull | set(F), key=len)
    f = {}
    for x in dom:
        if x in F:
            f[x] = F[x]
        else:
            f[x] = f[x[:-1]] if x else 0 * one
    if f[z0] != 1:
        violations.append(f"f(z0) = {f[z0]!r}")
    bad = [v for v in others if f[v] != 0]
    if bad:
        violations.append(f"f does not vanish at {len(bad)} point(s), e.g. {bad[0]!r}")
    h = difference(f)
    en = _sum_sq(h.values(), exact)
    return WeakSimInterpolant(z0, f, h, en, depth(z0) * en, w, branch,
                              float(c) if not exact else c, landings, violations)
