"""Best constants for the tree-side conditions on a finite sequence.

Each checker returns a :class:`ConditionReport` whose ``witness`` re-evaluates
to ``best_constant`` exactly through the matching ``*_at`` function.  Sums
go through ``math.fsum`` (or exact ``Fraction`` arithmetic) so the value at a
node does not depend on the order in which it was accumulated.
"""

from __future__ import annotations

import csv
import io
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .capacity import tree_capacity_constant
from .tree import NodeId, TreeSeq, canonical_measure, depth, dist, minimal_points

KINDS = ("tree_sep", "simple", "weak_simple", "tree_cap")


@dataclass
class ConditionReport:
    kind: str
    best_constant: float
    witness: NodeId | tuple[NodeId, NodeId]
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        num = lambda v: str(v) if isinstance(v, Fraction) else float(v)
        return {
            "kind": self.kind,
            "best_constant": num(self.best_constant),
            "witness": list(self.witness) if isinstance(self.witness, tuple) else self.witness,
            "extra": {k: num(v) if isinstance(v, (int, float, Fraction)) else v
                      for k, v in sorted(self.extra.items())},
        }


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "best_constant", "witness"])
    for r in reports:
        wit = "|".join(r.witness) if isinstance(r.witness, tuple) else r.witness
        w.writerow([r.kind, repr(float(r.best_constant)), wit])
    return buf.getvalue()


def _total(values):
    values = list(values)
    if any(isinstance(v, Fraction) for v in values):
        return sum(values, Fraction(0))
    return math.fsum(values)


def tree_sep_at(z: NodeId, w: NodeId, edge_normalized: bool = False) -> float:
    """``dist(z, w) / d(z)``, or ``dist(z, w) / dist(o, z)`` when ``edge_normalized``."""
    return dist(z, w) / (len(z) if edge_normalized else depth(z))


def check_tree_sep(Z: TreeSeq) -> ConditionReport:
    """Largest ``c`` with ``dist(z, w) >= c d(z)`` for all ordered pairs.

    ``extra['edge_normalized']`` repeats the computation with ``d(o, z) =
    d(z) - 1`` in place of ``d(z)`` (the root, if present, is skipped there).
    """
    if len(Z) < 2:
        raise ValueError("separation needs at least two points")
    best = best_edge = None
    for z in Z:
        for w in Z:
            if z == w:
                continue
            v = tree_sep_at(z, w)
            if best is None or v < best[0]:
                best = (v, (z, w))
            if z:
                ve = tree_sep_at(z, w, edge_normalized=True)
                if best_edge is None or ve < best_edge[0]:
                    best_edge = (ve, (z, w))
    extra = {}
    if best_edge is not None:
        extra = {"edge_normalized": best_edge[0],
                 "edge_normalized_witness": "|".join(best_edge[1])}
    return ConditionReport("tree_sep", best[0], best[1], extra)


def _shadow_sums(Z: TreeSeq, mu: Mapping[NodeId, float], minimal_only: bool):
    per_node = defaultdict(list)
    pts = Z.points
    for z in Z:
        w = mu.get(z, 0)
        if minimal_only:
            # z is seen from its strict ancestors up to and including the first point of Z
            for k in range(len(z) - 1, -1, -1):
                per_node[z[:k]].append(w)
                if z[:k] in pts:
                    break
        else:
            for k in range(len(z) + 1):
                per_node[z[:k]].append(w)
    return per_node


def simple_at(alpha: NodeId, Z: TreeSeq, mu: Mapping[NodeId, float] | None = None) -> float:
    """``d(alpha) mu(S(alpha) & Z)``."""
    mu = canonical_measure(Z) if mu is None else mu
    return depth(alpha) * _total(mu.get(z, 0) for z in Z if z.startswith(alpha))


def weak_simple_at(alpha: NodeId, Z: TreeSeq, mu: Mapping[NodeId, float] | None = None) -> float:
    """``d(alpha)`` times the mass of the points with an unobstructed view of ``alpha``."""
    mu = canonical_measure(Z) if mu is None else mu
    return depth(alpha) * _total(mu.get(z, 0) for z in minimal_points(alpha, Z))


def _best(per_node) -> tuple[float, NodeId]:
    best = None
    for a in sorted(per_node, key=lambda a: (len(a), a)):
        v = depth(a) * _total(per_node[a])
        if best is None or v > best[0]:
            best = (v, a)
    return best


def check_simple(Z: TreeSeq, mu: Mapping[NodeId, float] | None = None) -> ConditionReport:
    """Best ``C`` in ``mu(S(a)) <= C / d(a)`` over the hull."""
    mu = canonical_measure(Z) if mu is None else mu
    if not len(Z):
        return ConditionReport("simple", 0.0, "")
    v, a = _best(_shadow_sums(Z, mu, minimal_only=False))
    return ConditionReport("simple", v, a)


def check_weak_simple(Z: TreeSeq, mu: Mapping[NodeId, float] | None = None) -> ConditionReport:
    """Best constant of the weak simple condition over the hull."""
    mu = canonical_measure(Z) if mu is None else mu
    per_node = _shadow_sums(Z, mu, minimal_only=True)
    if not per_node:
        return ConditionReport("weak_simple", 0.0, "")
    v, a = _best(per_node)
    return ConditionReport("weak_simple", v, a)


def check_tree_cap(Z: TreeSeq, exact: bool = False, method: str = "recursive") -> ConditionReport:
    """Best ``C`` in ``gamma(a, Z) <= C / d(a)``, attained at the witness."""
    v, a = tree_capacity_constant(Z, exact=exact, method=method)
    return ConditionReport("tree_cap", v, a, {"method": method})


def check_all(Z: TreeSeq, mu=None, exact: bool = False) -> list[ConditionReport]:
    return [check_tree_sep(Z), check_simple(Z, mu), check_weak_simple(Z, mu),
            check_tree_cap(Z, exact=exact)]
