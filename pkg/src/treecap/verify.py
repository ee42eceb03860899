"""Re-check a serialized interpolant family from its JSON form alone.

Nothing here calls the construction.  Capacities come from the Dirichlet
solve on the hull and the stopping-region maximum is recomputed node by node
on the binary tree, with exhaustive enumeration of maximal antichains where
their number is small.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .capacity import cap_condenser
from .dirichlet import edge_differences, harmonic_residual
from .io import SchemaError, parse_numbers_map
from .tree import ROOT, TreeSeq, hull, is_stopping_region

MAX_ENUMERATED = 20000


@dataclass
class Check:
    name: str
    passed: bool
    value: float | None = None
    detail: str = ""


@dataclass
class VerifyReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, *args, **kw):
        self.checks.append(Check(*args, **kw))

    def to_json(self) -> dict:
        return {"passed": self.passed,
                "checks": [{"name": c.name, "passed": c.passed,
                            "value": None if c.value is None else float(c.value),
                            "detail": c.detail} for c in self.checks]}


def _abs_total(vals):
    vals = [abs(v) for v in vals]
    if any(isinstance(v, Fraction) for v in vals):
        return sum(vals, Fraction(0))
    return math.fsum(vals)


def antichain_max(k: dict) -> float:
    """Max of ``sum |k|`` over antichains, by recursion over the binary tree."""
    if not k:
        return 0.0
    nodes = hull(k)
    best = {}
    for x in sorted(nodes, key=len, reverse=True):
        kids = [best[c] for c in (x + "0", x + "1") if c in best]
        here = abs(k.get(x, 0)) if x else 0
        below = _abs_total(kids) if kids else 0
        best[x] = max(here, below)
    return best[ROOT]


def _count_antichains(forest_kids, roots):
    def count(x):
        prod = 1
        for c in forest_kids.get(x, ()):
            prod *= count(c)
        return 1 + prod if forest_kids.get(x) else 1
    total = 1
    for r in roots:
        total *= count(r)
    return total


def _forest(nodes):
    nodes = set(nodes)
    kids, roots = {}, []
    for x in sorted(nodes):
        p = next((x[:j] for j in range(len(x) - 1, -1, -1) if x[:j] in nodes), None)
        if p is None:
            roots.append(x)
        else:
            kids.setdefault(p, []).append(x)
    return kids, roots


def _enumerate(kids, roots):
    def of(x):
        out = [[x]]
        if kids.get(x):
            combos = [[]]
            for c in kids[x]:
                combos = [a + b for a in combos for b in of(c)]
            out.extend(combos)
        return out
    combos = [[]]
    for r in roots:
        combos = [a + b for a in combos for b in of(r)]
    return combos


def verify_family(obj: dict, seed: int = 0, regions: int = 500,
                  tol: float = 1e-9) -> VerifyReport:
    """Re-derive every family invariant; the report lists each check."""
    if obj.get("kind") != "interpolant_family":
        raise SchemaError("not an interpolant family")
    Z = TreeSeq.from_nodes(obj["sequence"])
    members = {z: parse_numbers_map(K) for z, K in obj["members"].items()}
    rep = VerifyReport()
    rep.add("members_keyed_by_sequence", set(members) == Z.points)
    if set(members) != Z.points:
        return rep

    def val(K, x):
        return K.get(x, 0)

    bad = [(z, w) for z in Z for w in Z if val(members[z], w) != (1 if z == w else 0)]
    rep.add("kronecker_exact", not bad, detail=f"{len(bad)} mismatches")

    ks = {z: edge_differences(K) for z, K in members.items()}
    full_hull = Z.with_root().hull
    # K vanishes off its stored domain, so edges leaving it carry -K(x)
    for z, K in members.items():
        for x, v in K.items():
            for c in (x + "0", x + "1"):
                if v != 0 and c not in K and c in full_hull:
                    ks[z][c] = -v
            if x and x[:-1] not in K and v != 0:
                ks[z][x] = v
    seen, overlap = {}, 0
    for z, kz in ks.items():
        for x in kz:
            if x in seen:
                overlap += 1
            seen[x] = z
    rep.add("supports_disjoint", overlap == 0, detail=f"{overlap} shared nodes")

    worst_h = 0.0
    for z, K in members.items():
        omega = set(ks[z]) - Z.points
        for x in omega:
            nb = [x[:-1], x + "0", x + "1"] if x else []
            if nb and all(n in omega for n in nb):
                full = {n: val(K, n) for n in [x, *nb]}
                worst_h = max(worst_h, abs(float(harmonic_residual(full, x))))
    rep.add("harmonic_on_support_interior", worst_h <= tol, worst_h)

    Zaug = Z.with_root()
    gam, norms, stops = {}, {}, {}
    for z in Z:
        gam[z] = cap_condenser({z}, [w for w in Zaug if w != z], Zaug.hull).cap
        root = members[z].get(ROOT, 0)
        norms[z] = math.fsum(float(v) ** 2 for v in [root, *ks[z].values()])
        stops[z] = antichain_max(ks[z])
    cprime = max(norms[z] / gam[z] for z in Z)
    claimed = obj.get("norm_constant")
    rep.add("norm_constant_finite", math.isfinite(cprime), cprime)
    if claimed is not None:
        rep.add("norm_constant_matches_claim",
                abs(cprime - claimed) <= tol * max(1.0, abs(claimed)), cprime)

    worst = max(float(stops[z]) - 2 * gam[z] for z in Z)
    rep.add("stopping_bound_2gamma", worst <= tol, worst,
            detail="max over antichains of sum|k_z| minus 2 gamma(z, Z)")

    rng = random.Random(seed)
    worst_rand, enum_worst, enumerated = -math.inf, -math.inf, 0
    for z in Z:
        kz = ks[z]
        if not kz:
            continue
        kids, roots = _forest(kz)
        for _ in range(regions):
            S, stack = [], list(roots)
            while stack:
                x = stack.pop()
                if not kids.get(x) or rng.random() < 0.3:
                    S.append(x)
                else:
                    stack.extend(kids[x])
            assert is_stopping_region(S)
            worst_rand = max(worst_rand, float(_abs_total(kz[x] for x in S)) - 2 * gam[z])
        if len(kz) <= 2000 and _count_antichains(kids, roots) <= MAX_ENUMERATED:
            enumerated += 1
            for S in _enumerate(kids, roots):
                s = float(_abs_total(kz[x] for x in S))
                enum_worst = max(enum_worst, s - 2 * gam[z])
                if s > float(stops[z]) + tol:
                    rep.add("antichain_max_consistent", False, s)
    rep.add("stopping_random_regions", worst_rand <= tol, worst_rand)
    if enumerated:
        rep.add("stopping_exhaustive", enum_worst <= tol, enum_worst,
                detail=f"{enumerated} supports enumerated")
    return rep
